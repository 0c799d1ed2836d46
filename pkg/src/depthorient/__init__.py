"""Depth-aware image and video orientation estimation."""

from .coarse import (CoarseEstimate, Region, RegionMagnitudes,
                     coarse_orientation, partition_quadrants,
                     quadrant_magnitudes, sector_magnitudes)
from .defocus import (BlurProfile, DefocusConfig, GrayImage,
                      blur_intensity_proxy, defocus_coarse_orientation,
                      quadrant_blur_profile)
from .errors import (BehindCameraError, DegenerateInputError,
                     DegenerateSceneError, DepthOrientError, FormatError)
from .grid import (DepthMap, canonicalize_angle, circular_distance,
                   min_max_normalize, rotate90, rotate_arbitrary)
from .harness import (EvalCase, EvalReport, ground_sweep_cases, report_to_csv,
                      run_eval_sweep)
from .depthio import (infer_depth_format, read_depth_file, read_gray_image,
                      write_depth_file)
from .pipeline import (EstimateInput, OrientationResult, VideoResult,
                       estimate_orientation, estimate_video, invert_disparity)
from .refine import (CostProfile, RefineConfig, combined_cost, dgc_score,
                     fine_search, hsa_score)
from .synth import (CameraModel, GroundPlane, ImagePoint, SceneSpec, Wall,
                    WorldPoint, make_ground_truth_case, preset_scene,
                    project_point, render_depth)

__version__ = "0.1.0"

__all__ = [
    "BehindCameraError", "BlurProfile", "CameraModel", "CoarseEstimate",
    "CostProfile", "DefocusConfig", "DegenerateInputError",
    "DegenerateSceneError", "DepthMap", "DepthOrientError", "EstimateInput",
    "EvalCase", "EvalReport", "FormatError", "GrayImage", "GroundPlane",
    "ImagePoint", "OrientationResult", "RefineConfig", "Region",
    "RegionMagnitudes", "SceneSpec", "VideoResult", "Wall", "WorldPoint",
    "blur_intensity_proxy", "canonicalize_angle", "circular_distance",
    "coarse_orientation", "combined_cost", "defocus_coarse_orientation",
    "dgc_score", "estimate_orientation", "estimate_video", "fine_search",
    "ground_sweep_cases", "hsa_score", "infer_depth_format",
    "invert_disparity", "make_ground_truth_case", "min_max_normalize",
    "partition_quadrants", "preset_scene", "project_point",
    "quadrant_blur_profile", "quadrant_magnitudes", "read_depth_file",
    "read_gray_image", "render_depth", "report_to_csv", "rotate90",
    "rotate_arbitrary", "run_eval_sweep", "sector_magnitudes",
    "write_depth_file",
]
