"""Perspective-projection camera model and synthetic depth-map renderer.

The projection follows the tilted pinhole equations with a signed tilt angle
phi (positive = downward/high angle, negative = upward/low angle, zero = eye
level) and a single vertical offset standing in for the high-angle h
(positive) and low-angle l (negative):

    w  = sin(phi) * y + cos(phi) * z
    u' = fx * x / w + cx
    v' = fy * (cos(phi) * y - sin(phi) * z + elevation) / w + cy

v' increases upward in the visual field; depth-map row r corresponds to
v' = (H - 1) - r. Scenes are built from two primitive kinds - horizontal
ground planes and fronto-parallel walls - which are enough to realize the
eye/low/high-angle scenarios and give every pixel an analytic ray
intersection. Rendered depth is the camera-frame w value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import BehindCameraError, DegenerateSceneError
from .grid import DepthMap, canonicalize_angle, rotate_arbitrary

_EPS = 1e-12


@dataclass
class CameraModel:
    fx: float
    fy: float
    cx: float
    cy: float
    image_width: int
    image_height: int
    tilt_deg: float = 0.0  # positive looks down (high angle), negative up (low)
    elevation: float = 0.0  # vertical camera offset: h when > 0, -l when < 0

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ValueError("focal lengths must be positive")
        if not (0 <= self.cx <= self.image_width and 0 <= self.cy <= self.image_height):
            raise ValueError("principal point must lie inside the image")

    @classmethod
    def centered(cls, width: int, height: int, focal: float | None = None,
                 tilt_deg: float = 0.0, elevation: float = 0.0) -> "CameraModel":
        """Camera with the principal point at the image center (cy = H/2)."""
        f = focal if focal is not None else float(min(width, height))
        return cls(fx=f, fy=f, cx=width / 2.0, cy=height / 2.0,
                   image_width=width, image_height=height,
                   tilt_deg=tilt_deg, elevation=elevation)


class WorldPoint(NamedTuple):
    x: float
    y: float  # vertical, increasing upward
    z: float  # along the optical axis at zero tilt


class ImagePoint(NamedTuple):
    u: float
    v: float
    depth: float  # camera-frame distance (the projection denominator)


@dataclass
class GroundPlane:
    """Horizontal plane y = height, visible for hits with z in z_range."""

    height: float
    z_range: tuple = (1e-6, 1e9)


@dataclass
class Wall:
    """Fronto-parallel rectangle at constant z."""

    z: float
    x_range: tuple = (-1e9, 1e9)
    y_range: tuple = (-1e9, 1e9)


@dataclass
class SceneSpec:
    primitives: list
    depth_range: tuple | None = None  # optional (min, max) sanity bounds

    def __post_init__(self):
        if not self.primitives:
            raise ValueError("scene needs at least one primitive")


def project_point(cam: CameraModel, p: WorldPoint) -> ImagePoint:
    """Project a world point; raises BehindCameraError for non-positive depth."""
    phi = math.radians(cam.tilt_deg)
    s, c = math.sin(phi), math.cos(phi)
    x, y, z = p
    w = s * y + c * z
    if w <= 0:
        raise BehindCameraError(f"point {tuple(p)} has non-positive depth {w:.6g}")
    u = cam.fx * x / w + cam.cx
    v = cam.fy * (c * y - s * z + cam.elevation) / w + cam.cy
    return ImagePoint(u, v, w)


def render_depth(scene: SceneSpec, cam: CameraModel) -> DepthMap:
    """Ray-cast the scene: nearest positive analytic intersection per pixel.

    Pixels whose ray hits nothing are invalid. The stored depth equals the
    ray parameter t, which by construction is the camera-frame w value.
    """
    h, w = cam.image_height, cam.image_width
    phi = math.radians(cam.tilt_deg)
    s, c = math.sin(phi), math.cos(phi)

    rows, cols = np.mgrid[0:h, 0:w]
    v_prime = (h - 1) - rows
    dx_cam = (cols - cam.cx) / cam.fx
    dy_cam = (v_prime - cam.cy) / cam.fy
    # World-frame ray directions (inverse camera rotation applied to the
    # camera-frame direction with unit camera-z component).
    dxw = dx_cam
    dyw = c * dy_cam + s
    dzw = -s * dy_cam + c
    ox, oy, oz = 0.0, -cam.elevation * c, cam.elevation * s

    best_t = np.full((h, w), np.inf)
    for prim in scene.primitives:
        if isinstance(prim, GroundPlane):
            denom = dyw
            with np.errstate(divide="ignore", invalid="ignore"):
                t = (prim.height - oy) / denom
            zhit = oz + t * dzw
            ok = np.isfinite(t) & (t > _EPS) & \
                (zhit >= prim.z_range[0]) & (zhit <= prim.z_range[1])
        elif isinstance(prim, Wall):
            denom = dzw
            with np.errstate(divide="ignore", invalid="ignore"):
                t = (prim.z - oz) / denom
            xhit = ox + t * dxw
            yhit = oy + t * dyw
            ok = np.isfinite(t) & (t > _EPS) & \
                (xhit >= prim.x_range[0]) & (xhit <= prim.x_range[1]) & \
                (yhit >= prim.y_range[0]) & (yhit <= prim.y_range[1])
        else:
            raise ValueError(f"unknown primitive type {type(prim).__name__}")
        best_t = np.where(ok & (t < best_t), t, best_t)

    valid = np.isfinite(best_t)
    if not valid.any():
        raise DegenerateSceneError("no pixel hits any primitive")
    values = np.where(valid, best_t, 0.0)
    if scene.depth_range is not None:
        lo, hi = scene.depth_range
        got_lo, got_hi = float(values[valid].min()), float(values[valid].max())
        if got_lo < lo - 1e-6 or got_hi > hi + 1e-6:
            raise ValueError(
                f"rendered depth range [{got_lo:.6g}, {got_hi:.6g}] is outside "
                f"the declared range [{lo:.6g}, {hi:.6g}]")
    return DepthMap(values, valid)


def make_ground_truth_case(scene: SceneSpec, cam: CameraModel,
                           rotation_deg: float) -> tuple:
    """Render upright, rotate by +rotation, return (map, label)."""
    upright = render_depth(scene, cam)
    label = canonicalize_angle(rotation_deg)
    return rotate_arbitrary(upright, label), label


PRESET_NAMES = ("ground", "wall", "tilted-low", "tilted-high")


def preset_scene(name: str, width: int, height: int,
                 variant: int = 0) -> tuple:
    """Named scene presets with deterministic parameter variants.

    Ground-family scenes combine a floor with a far backdrop and two nearer
    flanking walls; the staggered wall depths put the farthest content in the
    top region (the linear-perspective premise) and create vertical depth
    edges that misrotation turns into vertical-gradient responses.
    """
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; choose one of {PRESET_NAMES}")
    v = int(variant)
    f = float(min(width, height)) * (1.0 + 0.05 * (v % 3))
    tilt, elevation = 0.0, 0.0
    if name == "tilted-low":
        tilt, elevation = -10.0, -1.0
    elif name == "tilted-high":
        tilt, elevation = 10.0, 1.0
    cam = CameraModel.centered(width, height, focal=f, tilt_deg=tilt,
                               elevation=elevation)

    floor_y = -1.5 - 0.1 * (v % 4)
    if name == "wall":
        z_mid = 18.0 + 2.0 * (v % 4)
        prims = [
            GroundPlane(height=floor_y, z_range=(0.5, z_mid)),
            Wall(z=z_mid, y_range=(floor_y, 1e9)),
        ]
        return SceneSpec(prims), cam

    z_near = 9.0 + 2.0 * (v % 5)
    z_far = 36.0 + 6.0 * (v % 4)
    gap_frac = 0.32 + 0.04 * (v % 3)
    # Half-width of the central gap, in world units at the near-wall depth.
    a = gap_frac * z_near * (width / 2.0) / cam.fx
    prims = [
        GroundPlane(height=floor_y, z_range=(0.5, z_near + 4.0)),
        Wall(z=z_near, x_range=(-1e9, -a), y_range=(floor_y, 1e9)),
        Wall(z=z_near, x_range=(a, 1e9), y_range=(floor_y, 1e9)),
        Wall(z=z_far, y_range=(floor_y, 1e9)),
    ]
    return SceneSpec(prims), cam


def bare_floor_scene(width: int, height: int, tilt_deg: float = 0.0,
                     elevation: float = 0.0, floor_y: float = -1.5) -> tuple:
    """Floor-only scene; the sky/ground boundary row tracks the horizon."""
    cam = CameraModel.centered(width, height, tilt_deg=tilt_deg,
                               elevation=elevation)
    return SceneSpec([GroundPlane(height=floor_y, z_range=(1e-6, 1e9))]), cam
