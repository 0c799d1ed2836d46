"""Shared test helpers: reference blur, textures, and random map builders.

The box blur here is the reference implementation used to construct
defocus inputs; the scoring oracles live next to the tests that use them.
"""

import numpy as np

from depthorient import DepthMap, GrayImage
from depthorient.coarse import Region, region_masks


def box_blur(arr: np.ndarray, radius: int) -> np.ndarray:
    """Plain box filter via integral image, edge-clamped padding."""
    if radius == 0:
        return arr.copy()
    k = 2 * radius + 1
    padded = np.pad(arr, radius, mode="edge")
    c = np.cumsum(np.cumsum(padded, axis=0), axis=1)
    c = np.pad(c, ((1, 0), (1, 0)))
    h, w = arr.shape
    return (c[k:k + h, k:k + w] - c[:h, k:k + w]
            - c[k:k + h, :w] + c[:h, :w]) / (k * k)


def block_texture(size: int, block: int, seed: int) -> np.ndarray:
    """Piecewise-constant random blocks in [0.05, 0.95]."""
    rng = np.random.default_rng(seed)
    nb = size // block + 1
    blocks = rng.uniform(0.05, 0.95, size=(nb, nb))
    return np.kron(blocks, np.ones((block, block)))[:size, :size]


def checkerboard(size: int, period: int, lo: float, hi: float) -> np.ndarray:
    rows, cols = np.mgrid[0:size, 0:size]
    return np.where(((rows // period) + (cols // period)) % 2 == 0,
                    lo, hi).astype(np.float64)


def one_quadrant_blurred(size: int, seed: int, region: Region,
                         radius: int, base: np.ndarray | None = None) -> GrayImage:
    """Reference-blur exactly one quadrant of a textured image."""
    if base is None:
        base = block_texture(size, 8, seed)
    blurred = box_blur(base, radius)
    mask = region_masks(size, size)[region]
    return GrayImage(np.clip(np.where(mask, blurred, base), 0.0, 1.0))


def random_depth_map(rng: np.random.Generator, height: int, width: int,
                     with_mask: bool = False) -> DepthMap:
    vals = rng.uniform(0.0, 10.0, size=(height, width))
    if not with_mask:
        return DepthMap(vals)
    valid = rng.random((height, width)) > 0.15
    return DepthMap(vals, valid)


def biased_depth_map(rng: np.random.Generator, size: int,
                     region: Region) -> DepthMap:
    """Random map with a decisive depth bump in one quadrant."""
    vals = rng.uniform(0.0, 1.0, size=(size, size))
    vals[region_masks(size, size)[region]] += 5.0
    return DepthMap(vals)
