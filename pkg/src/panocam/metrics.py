"""Error metrics and report assembly for calibration benchmarks.

All public values are degrees.  AUC follows the recall-curve
definition: for errors e_1..e_N and threshold tau,

    AUC@tau = 100 / (N * tau) * sum_i max(0, tau - e_i)

which is the exact integral of the step recall curve, scaled to
[0, 100].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import PerspectiveField
from .geometry import CameraParams, world_up_in_camera

AUC_THRESHOLDS_DEG = (1.0, 5.0, 10.0)


def auc_at(errors, tau: float) -> float:
    """Area under the recall curve at threshold ``tau`` (degrees)."""
    e = np.asarray(errors, dtype=np.float64).ravel()
    if e.size == 0:
        raise ValueError("auc_at requires at least one error value")
    if not np.isfinite(e).all() or e.min() < 0.0:
        raise ValueError(f"errors must be finite and nonnegative, got min {e.min()!r}")
    if not tau > 0.0:
        raise ValueError(f"threshold must be positive, got {tau!r}")
    return float(100.0 * np.mean(np.clip(tau - e, 0.0, tau)) / tau)


@dataclass(frozen=True)
class ParamErrorSample:
    """Absolute per-parameter gaps in degrees for one prediction."""

    roll: float
    pitch: float
    vfov: float


def param_errors(pred: CameraParams, gt: CameraParams) -> ParamErrorSample:
    """Absolute roll / pitch / vfov differences in degrees.

    Roll is an orientation, so its difference wraps into [0, 180].
    """
    roll = abs(math.degrees(pred.roll - gt.roll)) % 360.0
    roll = min(roll, 360.0 - roll)
    pitch = abs(math.degrees(pred.pitch - gt.pitch))
    vfov = abs(math.degrees(pred.vfov - gt.vfov))
    return ParamErrorSample(roll, pitch, vfov)


def gravity_error(pred: CameraParams, gt: CameraParams) -> float:
    """Angle in degrees between the camera-frame gravity directions
    implied by the two (roll, pitch) pairs.  Yaw does not move gravity."""
    g_pred = -world_up_in_camera(pred)
    g_gt = -world_up_in_camera(gt)
    return math.degrees(math.acos(float(np.clip(g_pred @ g_gt, -1.0, 1.0))))


@dataclass(eq=False)
class FieldErrors:
    """Per-pixel error grids (degrees) with their aggregates."""

    up_error: np.ndarray
    latitude_error: np.ndarray
    up_mean: float
    up_median: float
    latitude_mean: float
    latitude_median: float


def field_errors(pred: PerspectiveField, gt: PerspectiveField) -> FieldErrors:
    """Angular up-vector gap and absolute latitude gap per pixel."""
    if pred.grid != gt.grid:
        raise ValueError(f"field dimensions differ: {pred.grid} vs {gt.grid}")
    cross = pred.up[:, :, 0] * gt.up[:, :, 1] - pred.up[:, :, 1] * gt.up[:, :, 0]
    dot = pred.up[:, :, 0] * gt.up[:, :, 0] + pred.up[:, :, 1] * gt.up[:, :, 1]
    up_err = np.degrees(np.abs(np.arctan2(cross, dot)))
    lat_err = np.degrees(np.abs(pred.latitude - gt.latitude))
    return FieldErrors(
        up_err,
        lat_err,
        float(up_err.mean()),
        float(np.median(up_err)),
        float(lat_err.mean()),
        float(np.median(lat_err)),
    )


def crop_fov_rescale(vfov: float, crop_ratio: float) -> float:
    """Vertical FoV of a centered crop covering ``crop_ratio`` of the
    image height: 2 * atan(ratio * tan(vfov / 2))."""
    if not 0.0 < vfov < math.pi:
        raise ValueError(f"vfov must lie in (0, pi), got {vfov!r}")
    if not 0.0 < crop_ratio <= 1.0:
        raise ValueError(f"crop ratio must lie in (0, 1], got {crop_ratio!r}")
    return 2.0 * math.atan(crop_ratio * math.tan(vfov / 2.0))


@dataclass(frozen=True)
class ParamMetrics:
    median: float
    auc1: float
    auc5: float
    auc10: float


@dataclass(frozen=True)
class EvalReport:
    """Benchmark summary: per-parameter medians and AUCs plus
    field-level up / latitude / gravity means and medians."""

    count: int
    roll: ParamMetrics
    pitch: ParamMetrics
    vfov: ParamMetrics
    up_mean: float
    up_median: float
    latitude_mean: float
    latitude_median: float
    gravity_mean: float
    gravity_median: float


def _param_metrics(errs: np.ndarray) -> ParamMetrics:
    return ParamMetrics(
        float(np.median(errs)),
        auc_at(errs, 1.0),
        auc_at(errs, 5.0),
        auc_at(errs, 10.0),
    )


def build_report(
    pred: list[CameraParams],
    gt: list[CameraParams],
    field_grid=None,
) -> EvalReport:
    """Assemble an EvalReport from matched prediction / truth lists.

    Up and latitude statistics use each sample's mean per-pixel error
    on fields regenerated at ``field_grid`` (a PixelGridSpec; 64 x 64
    when omitted), then aggregate across samples.  Gravity is one angle
    per sample.
    """
    from .fields import field_from_params
    from .geometry import PixelGridSpec

    if len(pred) != len(gt) or not pred:
        raise ValueError(f"need equal nonempty lists, got {len(pred)} vs {len(gt)}")
    grid = field_grid or PixelGridSpec(64, 64)
    samples = [param_errors(p, g) for p, g in zip(pred, gt)]
    gravity = np.array([gravity_error(p, g) for p, g in zip(pred, gt)])
    up_means, lat_means = [], []
    for p, g in zip(pred, gt):
        fe = field_errors(field_from_params(p, grid), field_from_params(g, grid))
        up_means.append(fe.up_mean)
        lat_means.append(fe.latitude_mean)
    up_means = np.array(up_means)
    lat_means = np.array(lat_means)
    return EvalReport(
        count=len(pred),
        roll=_param_metrics(np.array([s.roll for s in samples])),
        pitch=_param_metrics(np.array([s.pitch for s in samples])),
        vfov=_param_metrics(np.array([s.vfov for s in samples])),
        up_mean=float(up_means.mean()),
        up_median=float(np.median(up_means)),
        latitude_mean=float(lat_means.mean()),
        latitude_median=float(np.median(lat_means)),
        gravity_mean=float(gravity.mean()),
        gravity_median=float(np.median(gravity)),
    )


def report_table(report: EvalReport) -> str:
    """Human-readable summary, degrees with two decimals."""
    lines = [
        f"samples: {report.count}",
        f"{'parameter':<10} {'median':>8} {'auc@1':>8} {'auc@5':>8} {'auc@10':>8}",
    ]
    for name in ("roll", "pitch", "vfov"):
        m: ParamMetrics = getattr(report, name)
        lines.append(
            f"{name:<10} {m.median:>8.2f} {m.auc1:>8.2f} {m.auc5:>8.2f} {m.auc10:>8.2f}"
        )
    lines.append(f"{'metric':<10} {'mean':>8} {'median':>8}")
    for name, mean, med in (
        ("up", report.up_mean, report.up_median),
        ("latitude", report.latitude_mean, report.latitude_median),
        ("gravity", report.gravity_mean, report.gravity_median),
    ):
        lines.append(f"{name:<10} {mean:>8.2f} {med:>8.2f}")
    return "\n".join(lines)


def report_keyvalues(report: EvalReport) -> str:
    """Machine-readable key=value lines, degrees with two decimals."""
    parts = [f"count={report.count}"]
    for name in ("roll", "pitch", "vfov"):
        m: ParamMetrics = getattr(report, name)
        parts.append(f"{name}_median={m.median:.2f}")
        parts.append(f"{name}_auc1={m.auc1:.2f}")
        parts.append(f"{name}_auc5={m.auc5:.2f}")
        parts.append(f"{name}_auc10={m.auc10:.2f}")
    parts.append(f"up_mean={report.up_mean:.2f}")
    parts.append(f"up_median={report.up_median:.2f}")
    parts.append(f"latitude_mean={report.latitude_mean:.2f}")
    parts.append(f"latitude_median={report.latitude_median:.2f}")
    parts.append(f"gravity_mean={report.gravity_mean:.2f}")
    parts.append(f"gravity_median={report.gravity_median:.2f}")
    return "\n".join(parts)
