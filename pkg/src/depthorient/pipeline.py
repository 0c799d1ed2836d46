"""End-to-end orientation estimation for single inputs and frame sequences.

Mode resolution prefers a provided depth map; the defocus path runs on the
grayscale image and stops at the coarse estimate (fine refinement needs a
depth map). Degenerate inputs surface as low-confidence results rather than
errors.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .coarse import coarse_orientation, quadrant_magnitudes, sector_magnitudes
from .defocus import (BlurProfile, DefocusConfig, GrayImage,
                      defocus_coarse_orientation, quadrant_blur_profile)
from .errors import DegenerateInputError
from .grid import DepthMap, canonicalize_angle
from .refine import CostProfile, RefineConfig, fine_search

MODES = ("auto", "depth", "defocus")


@dataclass
class EstimateInput:
    depth: DepthMap | None = None
    image: GrayImage | None = None
    mode: str = "auto"
    invert_depth: bool = False

    def __post_init__(self):
        if self.depth is None and self.image is None:
            raise ValueError("need a depth map or an image")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "depth" and self.depth is None:
            raise ValueError("mode 'depth' requires a depth map")
        if self.mode == "defocus" and self.image is None:
            raise ValueError("mode 'defocus' requires an image")


@dataclass
class OrientationResult:
    coarse_deg: float
    fine_deg: float | None
    confident: bool
    mode: str
    cost_profile: CostProfile | None = None
    blur_profile: BlurProfile | None = None
    runtime_ms: float = 0.0


@dataclass
class VideoResult:
    per_frame: list
    aggregate_deg: float
    agreement: float


def invert_disparity(depth: DepthMap) -> DepthMap:
    """Disparity -> depth: reciprocal, then min-shifted to non-negative."""
    vals = np.zeros_like(depth.values)
    if depth.valid.any():
        inv = 1.0 / (depth.values[depth.valid] + 1e-9)
        vals[depth.valid] = inv - inv.min()
    return DepthMap(vals, depth.valid.copy())


def estimate_orientation(inp: EstimateInput,
                         refine_cfg: RefineConfig | None = None,
                         defocus_cfg: DefocusConfig | None = None) -> OrientationResult:
    """Run the coarse and (depth path only) fine stages on one input."""
    t0 = time.perf_counter()
    mode = inp.mode
    if mode == "auto":
        mode = "depth" if inp.depth is not None else "defocus"

    if mode == "defocus":
        profile = quadrant_blur_profile(inp.image, defocus_cfg)
        est = defocus_coarse_orientation(profile)
        return OrientationResult(
            coarse_deg=est.theta_c, fine_deg=None, confident=est.confident,
            mode=mode, blur_profile=profile,
            runtime_ms=(time.perf_counter() - t0) * 1000.0)

    depth = invert_disparity(inp.depth) if inp.invert_depth else inp.depth
    try:
        mags = quadrant_magnitudes(depth)
    except DegenerateInputError:
        return OrientationResult(
            coarse_deg=0.0, fine_deg=None, confident=False, mode=mode,
            runtime_ms=(time.perf_counter() - t0) * 1000.0)
    est = coarse_orientation(mags)
    est.sector_magnitudes = sector_magnitudes(depth)

    fine = None
    cost_profile = None
    confident = True
    try:
        cost_profile = fine_search(depth, est, refine_cfg)
        fine = cost_profile.best
    except DegenerateInputError:
        confident = False
    return OrientationResult(
        coarse_deg=est.theta_c, fine_deg=fine, confident=confident, mode=mode,
        cost_profile=cost_profile,
        runtime_ms=(time.perf_counter() - t0) * 1000.0)


def estimate_video(frames, refine_cfg: RefineConfig | None = None,
                   defocus_cfg: DefocusConfig | None = None) -> VideoResult:
    """Independent per-frame estimation plus majority-vote aggregation.

    The vote runs over fine angles when every frame has one, otherwise over
    coarse angles; ties break toward the smallest canonical angle.
    """
    frames = list(frames)
    if not frames:
        raise ValueError("frame list is empty")
    results = [estimate_orientation(f, refine_cfg, defocus_cfg) for f in frames]
    if all(r.fine_deg is not None for r in results):
        angles = [canonicalize_angle(r.fine_deg) for r in results]
    else:
        angles = [canonicalize_angle(r.coarse_deg) for r in results]
    counts = Counter(angles)
    top = max(counts.values())
    aggregate = min(a for a, n in counts.items() if n == top)
    return VideoResult(per_frame=results, aggregate_deg=aggregate,
                       agreement=counts[aggregate] / len(angles))
