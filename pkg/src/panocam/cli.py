"""Command line interface.

Subcommands: render, field, calibrate, terms, eval, horizon, pipeline.
All angle flags take degrees.  ``pipeline`` additionally accepts
``--config FILE`` with ``key=value`` lines mirroring its flags
(range values comma-separated, e.g. ``roll-range=-45,45``); explicit
flags override file values.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .calibrate import SolverConfig, calibrate_from_field
from .fields import (
    decode_camera_map,
    encode_camera_map,
    field_from_params,
    horizon_from_params,
    load_camera_map,
    save_camera_map,
)
from .geometry import CameraParams, PixelGridSpec
from .metrics import build_report, report_keyvalues, report_table
from .panorama import EquirectPanorama, render_view
from .pipeline import (
    SamplingConfig,
    command_scorer,
    load_png,
    read_manifest,
    run_pipeline,
    save_png,
)
from .terms import FOV_PHRASES, PITCH_PHRASES, ROLL_PHRASES, params_to_terms


def _add_pose_flags(parser: argparse.ArgumentParser, with_yaw: bool = True) -> None:
    parser.add_argument("--roll", type=float, required=True, help="roll in degrees")
    parser.add_argument("--pitch", type=float, required=True, help="pitch in degrees")
    if with_yaw:
        parser.add_argument("--yaw", type=float, default=0.0, help="yaw in degrees")
    parser.add_argument("--fov", type=float, required=True, help="vertical FoV in degrees")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="panocam",
        description="Panorama-to-perspective rendering, camera fields, "
        "calibration, and dataset construction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render a perspective view from a panorama")
    p.add_argument("--pano", required=True, help="2:1 equirectangular image (PNG)")
    _add_pose_flags(p)
    p.add_argument("--size", type=int, default=512, help="output size in pixels")
    p.add_argument("--out", required=True, help="output PNG path")

    p = sub.add_parser("field", help="write the camera map for a pose")
    _add_pose_flags(p)
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--out", required=True, help="output .pfld path")

    p = sub.add_parser("calibrate", help="recover roll/pitch/FoV from a camera map")
    p.add_argument("--map", required=True, help="input .pfld path")
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-7, help="step tolerance in radians")
    p.add_argument("--subgrid", type=int, default=64)

    p = sub.add_parser("terms", help="photographic terms for a pose")
    _add_pose_flags(p, with_yaw=False)

    p = sub.add_parser("eval", help="compare two manifests of camera parameters")
    p.add_argument("--pred", required=True, help="predicted manifest")
    p.add_argument("--gt", required=True, help="ground-truth manifest")
    p.add_argument("--field-size", type=int, default=64,
                   help="grid for field-level error statistics")
    p.add_argument("--format", choices=("table", "keys"), default="table")

    p = sub.add_parser("horizon", help="horizon segment for a pose")
    _add_pose_flags(p)
    p.add_argument("--size", type=int, default=512)

    p = sub.add_parser("pipeline", help="build a dataset from panoramas")
    p.add_argument("--pano", nargs="+", default=None, help="panorama PNG path(s)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=None, help="samples per panorama "
                   "(default: adaptive crop rule)")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--size", type=int, default=None, help="render size (default 512)")
    p.add_argument("--roll-range", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p.add_argument("--pitch-range", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p.add_argument("--fov-range", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p.add_argument("--cross-view", action="store_true", default=None,
                   help="build initial/target pairs instead of single views")
    p.add_argument("--guidance", action="store_true", default=None,
                   help="build guidance candidate groups")
    p.add_argument("--candidates", type=int, default=None, help="candidates per group")
    p.add_argument("--scorer", default=None, help="external scorer command")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--config", default=None, help="key=value config file")
    return parser


def _params_from_args(args, with_yaw: bool = True) -> CameraParams:
    yaw = getattr(args, "yaw", 0.0) if with_yaw else 0.0
    return CameraParams.from_degrees(args.roll, args.pitch, yaw, args.fov)


def _cmd_render(args) -> int:
    pano = EquirectPanorama(load_png(args.pano))
    view = render_view(pano, _params_from_args(args), PixelGridSpec(args.size, args.size))
    save_png(args.out, view.pixels)
    print(f"wrote {args.out}")
    return 0


def _cmd_field(args) -> int:
    field = field_from_params(_params_from_args(args), PixelGridSpec(args.size, args.size))
    save_camera_map(args.out, encode_camera_map(field))
    print(f"wrote {args.out}")
    return 0


def _cmd_calibrate(args) -> int:
    field = decode_camera_map(load_camera_map(args.map))
    config = SolverConfig(
        max_iterations=args.max_iters,
        step_tolerance=args.tol,
        subgrid=args.subgrid,
    )
    result = calibrate_from_field(field, config)
    roll, pitch, _, vfov = result.params.as_degrees()
    print(
        f"roll={roll:.4f} pitch={pitch:.4f} vfov={vfov:.4f} "
        f"rms={result.residual_rms:.3e} iterations={result.iterations} "
        f"converged={str(result.converged).lower()}"
    )
    return 0


def _cmd_terms(args) -> int:
    label = params_to_terms(_params_from_args(args, with_yaw=False))
    print(f"roll: {ROLL_PHRASES[label.roll_term]}")
    print(f"pitch: {PITCH_PHRASES[label.pitch_term]}")
    print(f"fov: {FOV_PHRASES[label.fov_term]}")
    return 0


def _manifest_params(path) -> dict[str, CameraParams]:
    out = {}
    for rec in read_manifest(path):
        out[rec.sample_id] = CameraParams.from_degrees(
            rec.roll_deg, rec.pitch_deg, rec.yaw_deg, rec.vfov_deg
        )
    if not out:
        raise ValueError(f"manifest {path} holds no records")
    return out


def _cmd_eval(args) -> int:
    pred = _manifest_params(args.pred)
    gt = _manifest_params(args.gt)
    if set(pred) != set(gt):
        raise ValueError("prediction and ground-truth manifests list different sample ids")
    ids = sorted(pred)
    report = build_report(
        [pred[i] for i in ids],
        [gt[i] for i in ids],
        PixelGridSpec(args.field_size, args.field_size),
    )
    print(report_table(report) if args.format == "table" else report_keyvalues(report))
    return 0


def _cmd_horizon(args) -> int:
    line = horizon_from_params(_params_from_args(args), PixelGridSpec(args.size, args.size))
    if not line.visible:
        print("not-visible")
    else:
        (u0, v0), (u1, v1) = line.endpoints
        print(f"visible {u0:.2f},{v0:.2f} -> {u1:.2f},{v1:.2f}")
    return 0


_PIPELINE_DEFAULTS = {
    "seed": 0,
    "count": None,
    "size": 512,
    "roll_range": (-45.0, 45.0),
    "pitch_range": (-45.0, 45.0),
    "fov_range": (20.0, 105.0),
    "cross_view": False,
    "guidance": False,
    "candidates": 5,
    "scorer": None,
    "workers": 1,
}


def _load_config_file(path) -> dict:
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {raw!r} is not key=value")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key == "pano":
            values[key] = [p for p in value.split(",") if p]
        elif key in ("roll_range", "pitch_range", "fov_range"):
            lo, hi = value.split(",")
            values[key] = (float(lo), float(hi))
        elif key in ("seed", "count", "size", "candidates", "workers"):
            values[key] = int(value)
        elif key in ("cross_view", "guidance"):
            values[key] = value.lower() in ("1", "true", "yes")
        elif key in ("out", "scorer"):
            values[key] = value
        else:
            raise ValueError(f"unknown config key {key!r}")
    return values


def _cmd_pipeline(args) -> int:
    settings = dict(_PIPELINE_DEFAULTS, pano=None, out=None)
    if args.config:
        settings.update(_load_config_file(args.config))
    for key in ("pano", "seed", "count", "out", "size", "roll_range", "pitch_range",
                "fov_range", "cross_view", "guidance", "candidates", "scorer", "workers"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = tuple(value) if key.endswith("_range") else value
    if not settings["pano"]:
        raise ValueError("no panoramas given (use --pano or a config file)")
    if not settings["out"]:
        raise ValueError("no output directory given (use --out or a config file)")
    if settings["cross_view"] and settings["guidance"]:
        raise ValueError("--cross-view and --guidance are mutually exclusive")
    mode = "cross" if settings["cross_view"] else "guidance" if settings["guidance"] else "single"
    config = SamplingConfig(
        roll_range=settings["roll_range"],
        pitch_range=settings["pitch_range"],
        fov_range=settings["fov_range"],
        size=settings["size"],
        seed=settings["seed"],
    )
    panos = [
        (Path(p).stem, EquirectPanorama(load_png(p)))
        for p in settings["pano"]
    ]
    scorer = command_scorer(settings["scorer"]) if settings["scorer"] else None
    records = run_pipeline(
        panos,
        settings["out"],
        config,
        mode=mode,
        count=settings["count"],
        candidates=settings["candidates"],
        scorer=scorer,
        workers=settings["workers"],
    )
    print(f"wrote {len(records)} records to {Path(settings['out']) / 'manifest.txt'}")
    return 0


_HANDLERS = {
    "render": _cmd_render,
    "field": _cmd_field,
    "calibrate": _cmd_calibrate,
    "terms": _cmd_terms,
    "eval": _cmd_eval,
    "horizon": _cmd_horizon,
    "pipeline": _cmd_pipeline,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
