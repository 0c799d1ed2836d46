"""Depth-map grid representation, rotation, and angle utilities.

A depth map is a rectangular grid of non-negative depth values (larger =
farther from the camera) with a per-pixel validity mask. Rotation keeps the
output frame the same size as the input, so regions that leave the frame (or
sample from outside it) become invalid instead of being padded with a fill
value. Angles are degrees, counter-clockwise positive, canonical in [0, 360).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def canonicalize_angle(deg: float) -> float:
    """Reduce an angle in degrees to its canonical representative in [0, 360)."""
    if not math.isfinite(deg):
        raise ValueError(f"angle must be finite, got {deg!r}")
    r = float(deg) % 360.0
    # tiny negative inputs can round the modulo up to exactly 360.0
    return 0.0 if r == 360.0 else r


def circular_distance(a: float, b: float) -> float:
    """Shortest arc between two angles, in degrees, in [0, 180]."""
    d = abs(canonicalize_angle(a) - canonicalize_angle(b)) % 360.0
    return min(d, 360.0 - d)


def angle_in_interval(a: float, lo: float, hi: float) -> bool:
    """True if angle ``a`` lies on the CCW arc from ``lo`` to ``hi`` (inclusive)."""
    span = (canonicalize_angle(hi) - canonicalize_angle(lo)) % 360.0
    off = (canonicalize_angle(a) - canonicalize_angle(lo)) % 360.0
    return off <= span + 1e-9


@dataclass
class DepthMap:
    """Row-major depth grid with a validity mask of the same shape.

    Invalid pixels hold the value 0 and are excluded from every sum or mean
    computed downstream.
    """

    values: np.ndarray
    valid: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.size == 0:
            raise ValueError("depth values must be a non-empty 2-D grid")
        if self.valid is None:
            self.valid = np.ones(self.values.shape, dtype=bool)
        else:
            self.valid = np.asarray(self.valid, dtype=bool)
        if self.valid.shape != self.values.shape:
            raise ValueError(
                f"validity mask shape {self.valid.shape} does not match "
                f"values shape {self.values.shape}"
            )
        picked = self.values[self.valid]
        if picked.size and (not np.all(np.isfinite(picked)) or picked.min() < 0):
            raise ValueError("valid depth entries must be finite and non-negative")
        if not self.valid.all():
            self.values = np.where(self.valid, self.values, 0.0)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def valid_count(self) -> int:
        return int(self.valid.sum())

    def copy(self) -> "DepthMap":
        return DepthMap(self.values.copy(), self.valid.copy())


def rotate90(depth: DepthMap, quarter_turns: int) -> DepthMap:
    """Exact counter-clockwise rotation by multiples of 90 degrees.

    Pure index permutation: no interpolation, validity permuted identically,
    dimensions swap for odd quarter-turn counts.
    """
    k = int(quarter_turns) % 4
    if k == 0:
        return depth.copy()
    return DepthMap(np.rot90(depth.values, k).copy(), np.rot90(depth.valid, k).copy())


def rotate_arbitrary(depth: DepthMap, angle_deg: float) -> DepthMap:
    """Rotate CCW by an arbitrary angle about the grid center, same-size output.

    Bilinear resampling by inverse mapping. An output pixel is valid only when
    every input pixel that contributes with nonzero weight is in bounds and
    valid, so interpolation never leaks across the invalid border. Multiples
    of 90 degrees are delegated to :func:`rotate90` whenever the permutation
    preserves the frame shape (always for 0/180, square maps for 90/270).
    """
    ang = canonicalize_angle(angle_deg)
    if ang % 90.0 == 0.0:
        k = int(ang // 90.0)
        if k % 2 == 0 or depth.width == depth.height:
            return rotate90(depth, k)

    h, w = depth.values.shape
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    theta = math.radians(ang)
    cos_t, sin_t = math.cos(theta), math.sin(theta)

    rows, cols = np.mgrid[0:h, 0:w]
    dx = cols - cx
    dy = rows - cy
    # Inverse of the forward CCW map (screen coordinates, y down).
    x_src = cx + dx * cos_t - dy * sin_t
    y_src = cy + dx * sin_t + dy * cos_t

    x0 = np.floor(x_src).astype(np.int64)
    y0 = np.floor(y_src).astype(np.int64)
    fx = x_src - x0
    fy = y_src - y0

    def corner(xi, yi):
        inb = (xi >= 0) & (xi < w) & (yi >= 0) & (yi < h)
        xc = np.clip(xi, 0, w - 1)
        yc = np.clip(yi, 0, h - 1)
        return np.where(inb, depth.values[yc, xc], 0.0), inb & depth.valid[yc, xc]

    v00, ok00 = corner(x0, y0)
    v10, ok10 = corner(x0 + 1, y0)
    v01, ok01 = corner(x0, y0 + 1)
    v11, ok11 = corner(x0 + 1, y0 + 1)
    # Separable form: exact on constant maps, and a corner's term vanishes
    # exactly when its bilinear weight is zero (fx, fy are always in [0, 1),
    # so only fx == 0 / fy == 0 drop corners from the contributing set).
    out_vals = (v00 + fx * (v10 - v00) + fy * (v01 - v00)
                + fx * fy * (v00 - v10 - v01 + v11))
    out_valid = (ok00
                 & (ok10 | (fx == 0.0))
                 & (ok01 | (fy == 0.0))
                 & (ok11 | (fx * fy == 0.0)))
    out_vals = np.where(out_valid, out_vals, 0.0)
    return DepthMap(out_vals, out_valid)


def min_max_normalize(values) -> list:
    """Affine map sending min -> 0 and max -> 1; constant input maps to all 0."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot normalize an empty list")
    if not np.all(np.isfinite(arr)):
        raise ValueError("cannot normalize non-finite values")
    lo, hi = float(arr.min()), float(arr.max())
    if hi == lo:
        return [0.0] * arr.size
    return list((arr - lo) / (hi - lo))
