"""Coarse orientation from the spatial distribution of depth.

The frame is split into four triangular regions (top/bottom/left/right)
bounded by the image diagonals; the region holding the largest mean depth
names the coarse rotation class in {0, 90, 180, 270} and fixes the +/-45
degree fine-search interval around it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .errors import DegenerateInputError
from .grid import DepthMap, canonicalize_angle


class Region(IntEnum):
    TOP = 0
    BOTTOM = 1
    LEFT = 2
    RIGHT = 3
    NONE = 4


# Argmax tie-break priority and the quadrant -> rotation-undergone mapping
# (CCW convention: far content in the left region means the image was
# rotated left, i.e. by +90).
REGION_PRIORITY = (Region.TOP, Region.LEFT, Region.BOTTOM, Region.RIGHT)
REGION_ANGLE = {Region.TOP: 0.0, Region.LEFT: 90.0, Region.BOTTOM: 180.0, Region.RIGHT: 270.0}


@dataclass
class RegionMagnitudes:
    """Mean valid depth per region plus the valid-pixel count behind each mean."""

    top: float
    bottom: float
    left: float
    right: float
    counts: dict = field(default_factory=dict)

    def value(self, region: Region) -> float:
        return {Region.TOP: self.top, Region.BOTTOM: self.bottom,
                Region.LEFT: self.left, Region.RIGHT: self.right}[region]


@dataclass
class CoarseEstimate:
    """Coarse rotation class and the fine-search interval centered on it."""

    theta_c: float
    magnitudes: RegionMagnitudes | None
    search_lo: float
    search_hi: float
    sector_magnitudes: list | None = None
    confident: bool = True


def _normalized_offsets(height: int, width: int):
    """Per-pixel center offsets normalized to the unit square, y down."""
    rows, cols = np.mgrid[0:height, 0:width]
    dy = (rows - (height - 1) / 2.0) / (height / 2.0)
    dx = (cols - (width - 1) / 2.0) / (width / 2.0)
    return dx, dy


def partition_quadrants(height: int, width: int) -> np.ndarray:
    """Label every pixel with its diagonal-triangle region.

    Pixels exactly on a diagonal (|dx| == |dy| in normalized coordinates,
    including the exact center) get Region.NONE and are excluded downstream.
    """
    if height < 1 or width < 1:
        raise ValueError("grid must be non-empty")
    dx, dy = _normalized_offsets(height, width)
    labels = np.full((height, width), Region.NONE.value, dtype=np.int8)
    ady, adx = np.abs(dy), np.abs(dx)
    labels[(ady > adx) & (dy < 0)] = Region.TOP.value
    labels[(ady > adx) & (dy > 0)] = Region.BOTTOM.value
    labels[(adx > ady) & (dx < 0)] = Region.LEFT.value
    labels[(adx > ady) & (dx > 0)] = Region.RIGHT.value
    return labels


def region_masks(height: int, width: int) -> dict:
    labels = partition_quadrants(height, width)
    return {r: labels == r.value for r in REGION_PRIORITY}


def quadrant_magnitudes(depth: DepthMap) -> RegionMagnitudes:
    """Mean valid depth of each triangular region.

    A region with no valid pixels reports magnitude 0 and count 0; if all
    four regions are empty the map carries no signal at all.
    """
    labels = partition_quadrants(depth.height, depth.width)
    means = {}
    counts = {}
    for region in REGION_PRIORITY:
        sel = (labels == region.value) & depth.valid
        n = int(sel.sum())
        counts[region] = n
        means[region] = float(depth.values[sel].mean()) if n else 0.0
    if all(n == 0 for n in counts.values()):
        raise DegenerateInputError("no valid pixels in any quadrant")
    return RegionMagnitudes(top=means[Region.TOP], bottom=means[Region.BOTTOM],
                            left=means[Region.LEFT], right=means[Region.RIGHT],
                            counts=counts)


def coarse_orientation(mags: RegionMagnitudes) -> CoarseEstimate:
    """Map the max-magnitude region to the rotation the image has undergone.

    Ties break by the fixed priority top > left > bottom > right.
    """
    if mags.counts and all(n == 0 for n in mags.counts.values()):
        raise DegenerateInputError("all region counts are zero")
    best = max(REGION_PRIORITY, key=lambda r: mags.value(r))
    # max() keeps the first maximum, which is exactly the priority order.
    theta = REGION_ANGLE[best]
    return CoarseEstimate(
        theta_c=theta,
        magnitudes=mags,
        search_lo=canonicalize_angle(theta - 45.0),
        search_hi=canonicalize_angle(theta + 45.0),
    )


def sector_magnitudes(depth: DepthMap) -> list:
    """Mean valid depth in eight 45-degree sectors, sector 0 straight up, CCW.

    Diagnostic only: the fine-search interval always comes from the +/-45
    rule, not from these.
    """
    dx, dy = _normalized_offsets(depth.height, depth.width)
    # Angle of the offset vector measured CCW from straight-up (y points down).
    phi = (np.degrees(np.arctan2(-dy, dx)) - 90.0) % 360.0
    sector = np.minimum((phi // 45.0).astype(np.int64), 7)
    usable = depth.valid & ~((dx == 0) & (dy == 0))
    out = []
    for s in range(8):
        sel = usable & (sector == s)
        out.append(float(depth.values[sel].mean()) if sel.any() else 0.0)
    return out
