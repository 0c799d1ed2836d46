"""Coarse orientation from per-quadrant defocus blur when depth is absent.

Each quadrant's blur intensity comes from a deterministic gradient-energy
proxy: the inverse of the median per-patch mean of thresholded intensity
differences. Stronger blur kills small gradients, so blurrier (farther)
regions score higher. When the quadrant intensities are too close to call,
the noise threshold tau is scaled down by gamma and the profile recomputed
until the spread clears epsilon or the iteration budget runs out.

The proxy is a pluggable seam: quadrant_blur_profile accepts any estimator
with the same signature, so a true blur-kernel method can be substituted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .coarse import (REGION_ANGLE, REGION_PRIORITY, CoarseEstimate, Region,
                     RegionMagnitudes, region_masks)
from .grid import canonicalize_angle

_B_CAP = 1.0 / 1e-6  # degenerate intensity when nothing survives


@dataclass
class GrayImage:
    """Row-major luminance grid with intensities in [0, 1]."""

    intensity: np.ndarray

    def __post_init__(self):
        self.intensity = np.asarray(self.intensity, dtype=np.float64)
        if self.intensity.ndim != 2 or self.intensity.size == 0:
            raise ValueError("intensity must be a non-empty 2-D grid")
        if not np.all(np.isfinite(self.intensity)):
            raise ValueError("intensities must be finite")
        if self.intensity.min() < 0 or self.intensity.max() > 1:
            raise ValueError("intensities must lie in [0, 1]")

    @property
    def height(self) -> int:
        return self.intensity.shape[0]

    @property
    def width(self) -> int:
        return self.intensity.shape[1]


@dataclass
class DefocusConfig:
    tau: float = 0.05
    gamma: float = 0.9
    epsilon: float = 0.02
    max_iterations: int = 20
    patch_size: int = 16
    contrast_floor: float = 0.01

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must be in (0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass
class BlurProfile:
    b_top: float
    b_bottom: float
    b_left: float
    b_right: float
    spread: float
    confident: bool
    tau_final: float
    iterations: int
    farthest: Region
    counts: dict = field(default_factory=dict)

    def value(self, region: Region) -> float:
        return {Region.TOP: self.b_top, Region.BOTTOM: self.b_bottom,
                Region.LEFT: self.b_left, Region.RIGHT: self.b_right}[region]


class BlurIntensity(NamedTuple):
    value: float
    patches: int  # patches that passed the contrast floor; 0 flags degenerate


def _region_patches(mask: np.ndarray, patch: int):
    """Top-left anchored patch tiles lying entirely inside the region."""
    h, w = mask.shape
    out = []
    for r0 in range(0, h - patch + 1, patch):
        for c0 in range(0, w - patch + 1, patch):
            if mask[r0:r0 + patch, c0:c0 + patch].all():
                out.append((r0, c0))
    return out


def blur_intensity_proxy(img: GrayImage, region_mask: np.ndarray, tau: float,
                         cfg: DefocusConfig) -> BlurIntensity:
    """Inverse median patch gradient, with sub-tau differences suppressed.

    Patches whose raw contrast (max - min intensity) falls below the contrast
    floor are discarded; a surviving patch whose thresholded difference set is
    empty contributes gradient 0.
    """
    if not region_mask.any():
        raise ValueError("region is empty")
    grads = []
    for r0, c0 in _region_patches(region_mask, cfg.patch_size):
        tile = img.intensity[r0:r0 + cfg.patch_size, c0:c0 + cfg.patch_size]
        if float(tile.max() - tile.min()) < cfg.contrast_floor:
            continue
        diffs = np.concatenate([
            np.abs(np.diff(tile, axis=0)).ravel(),
            np.abs(np.diff(tile, axis=1)).ravel(),
        ])
        kept = diffs[diffs >= tau]
        grads.append(float(kept.mean()) if kept.size else 0.0)
    if not grads:
        return BlurIntensity(_B_CAP, 0)
    return BlurIntensity(1.0 / (float(np.median(grads)) + 1e-6), len(grads))


def quadrant_blur_profile(img: GrayImage, cfg: DefocusConfig | None = None,
                          estimator: Callable = blur_intensity_proxy) -> BlurProfile:
    """Blur intensity per quadrant with the dynamic tau adjustment loop.

    Recomputes the four intensities at tau' = tau * gamma while their spread
    stays below epsilon, up to max_iterations adjustments.
    """
    cfg = cfg or DefocusConfig()
    masks = region_masks(img.height, img.width)
    for region, mask in masks.items():
        if not _region_patches(mask, cfg.patch_size):
            raise ValueError(
                f"image {img.width}x{img.height} too small for one "
                f"{cfg.patch_size}x{cfg.patch_size} patch in the {region.name} quadrant")

    tau = cfg.tau
    iterations = 0
    while True:
        results = {r: estimator(img, masks[r], tau, cfg) for r in REGION_PRIORITY}
        values = [results[r].value for r in REGION_PRIORITY]
        spread = max(values) - min(values)
        if spread >= cfg.epsilon:
            confident = True
            break
        if iterations >= cfg.max_iterations:
            confident = False
            break
        tau *= cfg.gamma
        iterations += 1

    farthest = max(REGION_PRIORITY, key=lambda r: results[r].value)
    return BlurProfile(
        b_top=results[Region.TOP].value,
        b_bottom=results[Region.BOTTOM].value,
        b_left=results[Region.LEFT].value,
        b_right=results[Region.RIGHT].value,
        spread=spread,
        confident=confident,
        tau_final=tau,
        iterations=iterations,
        farthest=farthest,
        counts={r: results[r].patches for r in REGION_PRIORITY},
    )


def defocus_coarse_orientation(profile: BlurProfile) -> CoarseEstimate:
    """Map the blurriest (farthest) quadrant to the coarse rotation class."""
    theta = REGION_ANGLE[profile.farthest]
    mags = RegionMagnitudes(top=profile.b_top, bottom=profile.b_bottom,
                            left=profile.b_left, right=profile.b_right,
                            counts=dict(profile.counts))
    return CoarseEstimate(
        theta_c=theta,
        magnitudes=mags,
        search_lo=canonicalize_angle(theta - 45.0),
        search_hi=canonicalize_angle(theta + 45.0),
        confident=profile.confident,
    )
