"""Fine orientation scoring: vertical-gradient and mirror-symmetry costs.

Each candidate angle is scored on the depth map with that rotation undone.
The gradient score averages absolute per-box mean vertical differences over
non-overlapping boxes; the symmetry score averages absolute differences of
horizontally mirrored pixel pairs. Both are count-normalized so angles that
invalidate more area are not trivially favored, min-max normalized across
the candidate set, and combined as a weighted cost whose argmin is the fine
orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .coarse import CoarseEstimate
from .errors import DegenerateInputError
from .grid import DepthMap, canonicalize_angle, min_max_normalize, rotate_arbitrary


@dataclass
class RefineConfig:
    """Weights and granularity of the fine search."""

    alpha: float = 0.8
    beta: float = 0.2
    step_deg: float = 10.0
    box_size: int = 10
    normalize_scores: bool = True
    box_valid_fraction: float = 1.0

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.alpha + self.beta <= 0:
            raise ValueError("weights must be non-negative and not both zero")
        if self.step_deg <= 0:
            raise ValueError("step_deg must be positive")
        if self.box_size < 2:
            raise ValueError("box_size must be at least 2")
        if not 0 < self.box_valid_fraction <= 1:
            raise ValueError("box_valid_fraction must be in (0, 1]")


class BoxGradientScore(NamedTuple):
    value: float
    boxes: int  # participating boxes; 0 flags a degenerate score


class MirrorScore(NamedTuple):
    value: float
    pairs: int  # valid mirror pairs; 0 flags a degenerate score


@dataclass
class CandidateScore:
    angle: float
    dgc_raw: float
    hsa_raw: float
    dgc_norm: float
    hsa_norm: float
    combined: float


@dataclass
class CostProfile:
    candidates: list
    best: float
    degenerate: bool = False


def dgc_score(depth: DepthMap, box_size: int = 10,
              box_valid_fraction: float = 1.0) -> BoxGradientScore:
    """Average absolute per-box mean vertical forward difference.

    Boxes tile the map from the top-left corner; partial boxes at the right
    and bottom edges are discarded. A box participates only when its valid
    fraction reaches ``box_valid_fraction``; within a box only pairs with both
    pixels valid contribute to the mean.
    """
    h, w = depth.values.shape
    nby, nbx = h // box_size, w // box_size
    if nby == 0 or nbx == 0:
        return BoxGradientScore(0.0, 0)
    hh, ww = nby * box_size, nbx * box_size
    vals = depth.values[:hh, :ww].reshape(nby, box_size, nbx, box_size)
    msk = depth.valid[:hh, :ww].reshape(nby, box_size, nbx, box_size)

    pair_ok = msk[:, 1:, :, :] & msk[:, :-1, :, :]
    diffs = (vals[:, 1:, :, :] - vals[:, :-1, :, :]) * pair_ok
    pair_counts = pair_ok.sum(axis=(1, 3))
    valid_frac = msk.sum(axis=(1, 3)) / float(box_size * box_size)
    participating = valid_frac >= box_valid_fraction

    n = int(participating.sum())
    if n == 0:
        return BoxGradientScore(0.0, 0)
    sums = diffs.sum(axis=(1, 3))
    means = np.zeros_like(sums)
    has_pairs = pair_counts > 0
    means[has_pairs] = sums[has_pairs] / pair_counts[has_pairs]
    return BoxGradientScore(float(np.abs(means[participating]).sum() / n), n)


def hsa_score(depth: DepthMap) -> MirrorScore:
    """Average absolute difference over horizontally mirrored valid pairs.

    Pixel (r, c) in the left half pairs with (r, W-1-c); the center column of
    odd-width maps is excluded.
    """
    w = depth.width
    half = w // 2
    if half == 0:
        return MirrorScore(0.0, 0)
    left = depth.values[:, :half]
    right = depth.values[:, w - half:][:, ::-1]
    ok = depth.valid[:, :half] & depth.valid[:, w - half:][:, ::-1]
    n = int(ok.sum())
    if n == 0:
        return MirrorScore(0.0, 0)
    return MirrorScore(float(np.abs(left - right)[ok].sum() / n), n)


def combined_cost(dgc_list, hsa_list, cfg: RefineConfig | None = None) -> list:
    """Weighted sum alpha*DGC + beta*HSA, optionally min-max normalized first."""
    cfg = cfg or RefineConfig()
    if len(dgc_list) != len(hsa_list):
        raise ValueError("score lists must have equal length")
    if len(dgc_list) == 0:
        raise ValueError("score lists must be non-empty")
    if cfg.normalize_scores:
        dgc_list = min_max_normalize(dgc_list)
        hsa_list = min_max_normalize(hsa_list)
    return [cfg.alpha * d + cfg.beta * s for d, s in zip(dgc_list, hsa_list)]


def candidate_angles(coarse: CoarseEstimate, step_deg: float) -> list:
    """Grid of candidate angles centered on the coarse class, within +/-45.

    Anchoring the grid on theta_c keeps every 10-degree ground-truth label
    reachable; interval endpoints appear only when the step divides 45.
    """
    k = int(np.floor(45.0 / step_deg + 1e-9))
    raw = [coarse.theta_c + i * step_deg for i in range(-k, k + 1)]
    seen, out = set(), []
    for a in raw:
        c = canonicalize_angle(a)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def fine_search(depth: DepthMap, coarse: CoarseEstimate,
                cfg: RefineConfig | None = None) -> CostProfile:
    """Score every candidate and return the combined-cost argmin.

    Candidate theta means "the image was rotated by theta", so scoring
    applies the inverse rotation -theta. Ties go to the smallest canonical
    angle. Raises DegenerateInputError only when every candidate is
    degenerate for both scores.
    """
    cfg = cfg or RefineConfig()
    angles = candidate_angles(coarse, cfg.step_deg)
    dgc_raw, hsa_raw, degenerate = [], [], []
    for theta in angles:
        undone = rotate_arbitrary(depth, -theta)
        d = dgc_score(undone, cfg.box_size, cfg.box_valid_fraction)
        s = hsa_score(undone)
        dgc_raw.append(d.value)
        hsa_raw.append(s.value)
        degenerate.append(d.boxes == 0 and s.pairs == 0)
    if all(degenerate):
        raise DegenerateInputError("every candidate angle scored degenerate")

    dgc_n = min_max_normalize(dgc_raw) if cfg.normalize_scores else list(dgc_raw)
    hsa_n = min_max_normalize(hsa_raw) if cfg.normalize_scores else list(hsa_raw)
    combined = [cfg.alpha * d + cfg.beta * s for d, s in zip(dgc_n, hsa_n)]

    cands = [CandidateScore(a, dr, sr, dn, sn, c)
             for a, dr, sr, dn, sn, c in
             zip(angles, dgc_raw, hsa_raw, dgc_n, hsa_n, combined)]
    best = min(cands, key=lambda c: (c.combined, c.angle)).angle
    return CostProfile(candidates=cands, best=best, degenerate=any(degenerate))
