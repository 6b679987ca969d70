"""Recover (roll, pitch, vfov) from a dense up-vector / latitude field.

A coarse grid search over roll and pitch every 15 degrees in
[-45, 45] and vfov every 15 degrees in [25, 100] seeds a
Levenberg-Marquardt refinement with forward-difference Jacobians.
Refinement runs on a uniform subgrid (64 x 64 by default); the reported
RMS is evaluated on the full field.  Yaw leaves both fields unchanged,
so the result always carries yaw = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import PerspectiveField, _up_and_latitude
from .geometry import CameraParams, world_up_in_camera


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 100
    initial_damping: float = 1e-3
    damping_increase: float = 10.0
    damping_decrease: float = 10.0
    step_tolerance: float = 1e-7  # radians
    rms_tolerance: float = 1e-10  # relative RMS improvement
    subgrid: int = 64
    fd_step: float = 1e-6  # radians
    up_weight: float = 1.0
    latitude_weight: float = 1.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.subgrid < 2:
            raise ValueError(f"subgrid must be >= 2, got {self.subgrid}")
        for name in ("initial_damping", "step_tolerance", "rms_tolerance", "fd_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class CalibrationResult:
    params: CameraParams
    residual_rms: float
    iterations: int
    converged: bool
    cost_history: tuple[float, ...]


def _wc_from(roll: float, pitch: float) -> np.ndarray:
    return world_up_in_camera(CameraParams(roll, pitch, 0.0, math.pi / 2))


def _residual_at(theta, obs_up, obs_lat, xc, yc, height, w_up, w_lat):
    """Weighted residual vector at theta = (roll, pitch, vfov), or None
    when vfov leaves its (0, pi) domain."""
    roll, pitch, vfov = theta
    if not 0.0 < vfov < math.pi:
        return None
    focal = (height / 2.0) / math.tan(vfov / 2.0)
    up_pred, lat_pred = _up_and_latitude(_wc_from(roll, pitch), focal, xc, yc)
    cross = obs_up[:, 0] * up_pred[:, 1] - obs_up[:, 1] * up_pred[:, 0]
    dot = obs_up[:, 0] * up_pred[:, 0] + obs_up[:, 1] * up_pred[:, 1]
    up_gap = np.arctan2(cross, dot)
    lat_gap = obs_lat - lat_pred
    return np.concatenate([w_up * up_gap, w_lat * lat_gap])


def _subgrid_indices(n: int, k: int) -> np.ndarray:
    if n <= k:
        return np.arange(n)
    return np.round(np.linspace(0, n - 1, k)).astype(np.int64)


def _flatten_field(field: PerspectiveField, rows, cols):
    h, w = field.grid.height, field.grid.width
    xc = np.arange(w, dtype=np.float64) + 0.5 - w / 2.0
    yc = np.arange(h, dtype=np.float64) + 0.5 - h / 2.0
    cols_g, rows_g = np.meshgrid(cols, rows)
    obs_up = field.up[rows_g.ravel(), cols_g.ravel()]
    obs_lat = field.latitude[rows_g.ravel(), cols_g.ravel()]
    return obs_up, obs_lat, xc[cols_g.ravel()], yc[rows_g.ravel()]


def residual(
    params: CameraParams,
    field: PerspectiveField,
    weights: tuple[float, float] = (1.0, 1.0),
) -> tuple[np.ndarray, float]:
    """Stacked per-pixel residuals against the full field, plus RMS.

    The up residual is the signed angle between observed and predicted
    up vectors (atan2 of their 2D cross and dot products); the latitude
    residual is the plain difference.  Both are radians; ``weights``
    scales (up, latitude) contributions.
    """
    h, w = field.grid.height, field.grid.width
    obs_up, obs_lat, xc, yc = _flatten_field(field, np.arange(h), np.arange(w))
    r = _residual_at(
        (params.roll, params.pitch, params.vfov),
        obs_up, obs_lat, xc, yc, h, weights[0], weights[1],
    )
    if r is None:
        raise ValueError(f"vfov must lie in (0, pi), got {params.vfov!r}")
    return r, float(np.sqrt(np.mean(r * r)))


def calibrate_from_field(
    field: PerspectiveField,
    config: SolverConfig | None = None,
) -> CalibrationResult:
    """Estimate (roll, pitch, vfov) from a dense field.

    Raises ValueError for fields smaller than 16 x 16 or containing
    non-finite values.  ``cost_history`` holds the RMS after the grid
    search and after every accepted step; damping rejects any step that
    would increase it, so the sequence never rises.
    """
    cfg = config or SolverConfig()
    h, w = field.grid.height, field.grid.width
    if h < 16 or w < 16:
        raise ValueError(f"field must be at least 16x16, got {w}x{h}")
    if not (np.isfinite(field.up).all() and np.isfinite(field.latitude).all()):
        raise ValueError("field contains non-finite values")

    rows = _subgrid_indices(h, cfg.subgrid)
    cols = _subgrid_indices(w, cfg.subgrid)
    obs_up, obs_lat, xc, yc = _flatten_field(field, rows, cols)
    w_up, w_lat = cfg.up_weight, cfg.latitude_weight

    def resid(theta):
        return _residual_at(theta, obs_up, obs_lat, xc, yc, h, w_up, w_lat)

    def rms_of(r):
        return float(np.sqrt(np.mean(r * r)))

    # Coarse initialization.
    best_theta, best_r = None, None
    deg = math.radians
    for roll0 in range(-45, 46, 15):
        for pitch0 in range(-45, 46, 15):
            for vfov0 in range(25, 101, 15):
                r = resid((deg(roll0), deg(pitch0), deg(vfov0)))
                if best_r is None or r @ r < best_r @ best_r:
                    best_theta = np.array([deg(roll0), deg(pitch0), deg(vfov0)])
                    best_r = r

    theta, r = best_theta, best_r
    cost = float(r @ r)
    history = [rms_of(r)]
    lam = cfg.initial_damping
    converged = False
    iterations = 0

    while iterations < cfg.max_iterations:
        iterations += 1
        jac = np.empty((r.size, 3))
        for k in range(3):
            step = np.zeros(3)
            step[k] = cfg.fd_step
            r_k = resid(theta + step)
            if r_k is None:  # vfov against its domain edge: probe downward
                step[k] = -cfg.fd_step
                r_k = resid(theta + step)
            jac[:, k] = (r_k - r) / step[k]
        jtj = jac.T @ jac
        g = jac.T @ r
        scale = np.diag(np.maximum(np.diag(jtj), 1e-12))
        try:
            delta = np.linalg.solve(jtj + lam * scale, -g)
        except np.linalg.LinAlgError:
            lam *= cfg.damping_increase
            continue
        trial = theta + delta
        r_trial = resid(trial)
        trial_cost = float(r_trial @ r_trial) if r_trial is not None else math.inf
        if r_trial is None or trial_cost >= cost:
            lam *= cfg.damping_increase
            if lam > 1e15:
                break
            continue
        rel_drop = (history[-1] - rms_of(r_trial)) / max(history[-1], 1e-300)
        theta, r, cost = trial, r_trial, trial_cost
        history.append(rms_of(r))
        lam /= cfg.damping_decrease
        if float(np.linalg.norm(delta)) < cfg.step_tolerance or rel_drop < cfg.rms_tolerance:
            converged = True
            break

    params = CameraParams(float(theta[0]), float(theta[1]), 0.0, float(theta[2]))
    _, full_rms = residual(params, field, (w_up, w_lat))
    return CalibrationResult(params, full_rms, iterations, converged, tuple(history))
