"""Command-line interface: estimate, video, synth, eval.

JSON output uses a fixed key order and floats rounded to 6 significant
digits so identical inputs produce identical bytes (modulo the measured
runtime_ms value). Exit codes: 0 success, 2 invalid arguments, 3 format
error, 4 degenerate input.
"""

from __future__ import annotations

import argparse
import glob
import json
import sys
from pathlib import Path

from .defocus import DefocusConfig
from .errors import DegenerateInputError, DegenerateSceneError, FormatError
from .harness import ground_sweep_cases, report_to_csv, run_eval_sweep
from .depthio import (has_missing_sidecar, infer_depth_format,
                      read_depth_file, read_gray_image, write_depth_file)
from .pipeline import EstimateInput, estimate_orientation, estimate_video
from .refine import RefineConfig
from .synth import PRESET_NAMES, make_ground_truth_case, preset_scene

_DEPTH_SUFFIXES = {".pfm", ".pgm"}


def _round6(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.6g}")
    if isinstance(obj, dict):
        return {k: _round6(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round6(v) for v in obj]
    return obj


def _dump_json(obj, out_path: str | None) -> None:
    text = json.dumps(_round6(obj)) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _angle_num(a: float):
    return int(a) if float(a).is_integer() else float(a)


def _result_json(res) -> dict:
    candidates = []
    if res.cost_profile is not None:
        candidates = [{"angle": _angle_num(c.angle), "dgc": c.dgc_raw,
                       "hsa": c.hsa_raw, "cost": c.combined}
                      for c in res.cost_profile.candidates]
    return {
        "coarse_deg": int(round(res.coarse_deg)),
        "fine_deg": None if res.fine_deg is None else _angle_num(res.fine_deg),
        "confident": bool(res.confident),
        "mode": res.mode,
        "candidates": candidates,
        "runtime_ms": float(res.runtime_ms),
    }


def _refine_cfg(args) -> RefineConfig:
    return RefineConfig(alpha=args.alpha, beta=args.beta,
                        step_deg=args.step, box_size=args.box)


def _read_depth(args, path: str):
    # a writer sidecar marking 0 = missing restores the validity mask
    zero_missing = args.zero_missing or has_missing_sidecar(path)
    return read_depth_file(path, infer_depth_format(path),
                           invert_depth=args.invert_depth,
                           depth_scale=args.depth_scale,
                           zero_missing=zero_missing)


def _load_input(args, image_path: str | None, depth_path: str | None) -> EstimateInput:
    depth = None
    image = None
    if depth_path:
        depth = _read_depth(args, depth_path)
    elif image_path and args.mode != "defocus" and (
            args.mode == "depth" or Path(image_path).suffix.lower() in _DEPTH_SUFFIXES):
        depth = _read_depth(args, image_path)
        image_path = None
    if image_path and depth is None or args.mode == "defocus":
        image = read_gray_image(image_path)
    # invert_depth already applied at load time
    return EstimateInput(depth=depth, image=image, mode=args.mode,
                         invert_depth=False)


def _add_estimate_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=["auto", "depth", "defocus"], default="auto")
    p.add_argument("--invert-depth", action="store_true",
                   help="input depth is disparity; invert at load")
    p.add_argument("--alpha", type=float, default=0.8)
    p.add_argument("--beta", type=float, default=0.2)
    p.add_argument("--step", type=float, default=10.0)
    p.add_argument("--box", type=int, default=10)
    p.add_argument("--depth-scale", type=float, default=1.0,
                   help="world depth of a full-scale PNG16 sample")
    p.add_argument("--zero-missing", action="store_true",
                   help="treat stored 0 as a missing pixel")
    p.add_argument("--out", help="write JSON here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depthorient",
        description="Image/video orientation estimation from depth distribution")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate one image or depth map")
    p.add_argument("--input", required=True,
                   help="image file, or depth file when no --depth is given")
    p.add_argument("--depth", help="depth map file (pfm/pgm/png)")
    _add_estimate_flags(p)

    p = sub.add_parser("video", help="estimate a frame sequence")
    p.add_argument("--frames", required=True, help="glob of image/depth frames")
    p.add_argument("--depth-frames", help="glob of per-frame depth maps")
    _add_estimate_flags(p)

    p = sub.add_parser("synth", help="render a ground-truth rotation case")
    p.add_argument("--preset", choices=list(PRESET_NAMES), required=True)
    p.add_argument("--size", default="128x128", help="WxH, e.g. 128x128")
    p.add_argument("--rotation", type=float, default=0.0)
    p.add_argument("--variant", type=int, default=0)
    p.add_argument("--out", required=True, help="output depth file (.pfm)")

    p = sub.add_parser("eval", help="run the synthetic rotation sweep")
    p.add_argument("--suite", choices=["ground-sweep"], default="ground-sweep")
    p.add_argument("--scenes", type=int, default=5)
    p.add_argument("--deltas", default="0,5,10",
                   help="comma-separated tolerance degrees")
    p.add_argument("--size", type=int, default=128)
    p.add_argument("--csv", required=True, help="output CSV path")
    return parser


def _cmd_estimate(args) -> int:
    inp = _load_input(args, args.input, args.depth)
    res = estimate_orientation(inp, refine_cfg=_refine_cfg(args),
                               defocus_cfg=DefocusConfig())
    _dump_json(_result_json(res), args.out)
    return 0


def _cmd_video(args) -> int:
    frame_paths = sorted(glob.glob(args.frames))
    if not frame_paths:
        raise ValueError(f"no frames match {args.frames!r}")
    depth_paths = sorted(glob.glob(args.depth_frames)) if args.depth_frames else None
    if depth_paths is not None and len(depth_paths) != len(frame_paths):
        raise ValueError(
            f"{len(frame_paths)} frames but {len(depth_paths)} depth maps")
    inputs = []
    for i, fp in enumerate(frame_paths):
        dp = depth_paths[i] if depth_paths else None
        inputs.append(_load_input(args, fp, dp))
    res = estimate_video(inputs, refine_cfg=_refine_cfg(args),
                         defocus_cfg=DefocusConfig())
    payload = {
        "frames": [_result_json(r) for r in res.per_frame],
        "aggregate_deg": _angle_num(res.aggregate_deg),
        "agreement": float(res.agreement),
    }
    _dump_json(payload, args.out)
    return 0


def _cmd_synth(args) -> int:
    try:
        w, h = (int(t) for t in args.size.lower().split("x"))
    except ValueError:
        raise ValueError(f"bad --size {args.size!r}, expected WxH") from None
    scene, cam = preset_scene(args.preset, w, h, variant=args.variant)
    depth, label = make_ground_truth_case(scene, cam, args.rotation)
    out = Path(args.out)
    write_depth_file(depth, out, infer_depth_format(out))
    sidecar = out.with_suffix(".json")
    sidecar.write_text(json.dumps(_round6({
        "label_deg": _angle_num(label),
        "preset": args.preset,
        "variant": args.variant,
        "width": w,
        "height": h,
    })) + "\n")
    return 0


def _cmd_eval(args) -> int:
    deltas = [float(t) for t in args.deltas.split(",") if t]
    if not deltas:
        raise ValueError("need at least one delta")
    cases = ground_sweep_cases(args.scenes, size=args.size)
    report = run_eval_sweep(cases, deltas=deltas)
    Path(args.csv).write_text(report_to_csv(report))
    for d in report.deltas:
        sys.stdout.write(f"accuracy@{d:g}: {report.summary[d]:.6g}\n")
    return 0


_COMMANDS = {"estimate": _cmd_estimate, "video": _cmd_video,
             "synth": _cmd_synth, "eval": _cmd_eval}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DegenerateInputError, DegenerateSceneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
