"""Dataset construction: deterministic sampling, artifact writing, and
the line-oriented manifest format.

Reproducibility works by giving sample ``i`` its own RNG stream.  The
sub-seed is a 64-bit SplitMix64 mix of the master seed and the sample
index (see ``sample_seed``); each stream then draws parameters in a
fixed order (roll, pitch, vfov, then yaw where sampled).  Because every
sample is a pure function of (master seed, index), outputs are
byte-identical across runs and across worker counts.

Manifest: UTF-8 text, one record per line, tab-separated ``key=value``
pairs in a fixed key order::

    id pano kind roll pitch yaw vfov roll_term pitch_term fov_term
    image map [partner] [dpitch] [dyaw] caption

Angles are degrees with four decimals.  ``partner``, ``dpitch`` and
``dyaw`` appear only on records that need them (cross pairs, guidance
candidates, and a guidance initial view once its winning offsets are
known).  ``caption`` is always present and left empty for later
annotation.
"""

from __future__ import annotations

import math
import shlex
import subprocess
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path, PurePosixPath

import numpy as np
from PIL import Image

from .fields import encode_camera_map, field_from_params, save_camera_map
from .geometry import CameraParams, PixelGridSpec
from .panorama import EquirectPanorama, render_view
from .terms import TermLabel, params_to_terms

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

RECORD_KINDS = ("single", "cross-initial", "cross-target", "guidance-candidate")
GUIDANCE_OFFSET_DEG = 20.0


def sample_seed(master: int, index: int) -> int:
    """Deterministic 64-bit sub-seed for one sample.

    SplitMix64 finalizer applied to ``master + (index + 1) * golden``;
    distinct indices under one master always produce distinct seeds.
    """
    if index < 0:
        raise ValueError(f"sample index must be >= 0, got {index}")
    z = (master + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SamplingConfig:
    """Parameter ranges (degrees) and rendering options for sampling."""

    roll_range: tuple[float, float] = (-45.0, 45.0)
    pitch_range: tuple[float, float] = (-45.0, 45.0)
    fov_range: tuple[float, float] = (20.0, 105.0)
    yaw_range: tuple[float, float] = (0.0, 360.0)
    size: int = 512
    seed: int = 0
    min_crops: int = 4
    crop_width_divisor: int = 1024

    def __post_init__(self):
        for name in ("roll_range", "pitch_range", "fov_range", "yaw_range"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"{name} must be a nonempty interval, got ({lo!r}, {hi!r})")
        if self.size < 16:
            raise ValueError(f"output size must be >= 16, got {self.size}")
        if self.min_crops < 1 or self.crop_width_divisor < 1:
            raise ValueError("crop rule parameters must be positive")

    @property
    def grid(self) -> PixelGridSpec:
        return PixelGridSpec(self.size, self.size)


def sample_configs(config: SamplingConfig, n: int, with_yaw: bool = False) -> list[CameraParams]:
    """Draw ``n`` camera parameter sets.

    Sample i uses its own generator seeded by ``sample_seed(seed, i)``
    and draws roll, pitch, vfov, then (optionally) yaw, uniformly in
    the configured degree ranges.  Single-view samples keep yaw = 0.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    out = []
    for i in range(n):
        out.append(_draw_params(config, sample_seed(config.seed, i), with_yaw))
    return out


def _draw_params(config: SamplingConfig, seed: int, with_yaw: bool) -> CameraParams:
    rng = np.random.default_rng(seed)
    roll = float(rng.uniform(*config.roll_range))
    pitch = float(rng.uniform(*config.pitch_range))
    vfov = float(rng.uniform(*config.fov_range))
    yaw = float(rng.uniform(*config.yaw_range)) if with_yaw else 0.0
    return CameraParams.from_degrees(roll, pitch, yaw, vfov)


def crops_per_panorama(pano: EquirectPanorama, config: SamplingConfig | None = None) -> int:
    """Adaptive per-panorama crop count: max(min_crops, W // divisor)."""
    cfg = config or SamplingConfig()
    return max(cfg.min_crops, pano.width // cfg.crop_width_divisor)


def save_png(path, pixels: np.ndarray) -> None:
    """Write float [0, 1] pixels as 8-bit RGB PNG (deterministic bytes)."""
    arr = np.clip(np.round(np.asarray(pixels) * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(arr, mode="RGB").save(path, format="PNG", compress_level=6)


def load_png(path) -> np.ndarray:
    """Read an 8-bit RGB PNG back to float [0, 1]."""
    with Image.open(path) as im:
        return np.asarray(im.convert("RGB"), dtype=np.float64) / 255.0


# --- manifest records -------------------------------------------------

_KEY_ORDER = (
    "id", "pano", "kind", "roll", "pitch", "yaw", "vfov",
    "roll_term", "pitch_term", "fov_term", "image", "map",
    "partner", "dpitch", "dyaw", "caption",
)
_OPTIONAL_KEYS = ("partner", "dpitch", "dyaw")


@dataclass(frozen=True)
class ManifestRecord:
    sample_id: str
    pano_id: str
    kind: str
    roll_deg: float
    pitch_deg: float
    yaw_deg: float
    vfov_deg: float
    roll_term: str
    pitch_term: str
    fov_term: str
    image_path: str
    map_path: str
    partner_id: str | None = None
    dpitch_deg: float | None = None
    dyaw_deg: float | None = None
    caption: str = ""

    def __post_init__(self):
        if self.kind not in RECORD_KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")


def _fmt_deg(value: float, wrap360: bool = False) -> str:
    r = round(value, 4)
    if wrap360 and r >= 360.0:
        r -= 360.0
    if r == 0.0:
        r = 0.0  # avoid "-0.0000"
    return f"{r:.4f}"


def format_record(rec: ManifestRecord) -> str:
    values = {
        "id": rec.sample_id,
        "pano": rec.pano_id,
        "kind": rec.kind,
        "roll": _fmt_deg(rec.roll_deg),
        "pitch": _fmt_deg(rec.pitch_deg),
        "yaw": _fmt_deg(rec.yaw_deg, wrap360=True),
        "vfov": _fmt_deg(rec.vfov_deg),
        "roll_term": rec.roll_term,
        "pitch_term": rec.pitch_term,
        "fov_term": rec.fov_term,
        "image": rec.image_path,
        "map": rec.map_path,
        "partner": rec.partner_id,
        "dpitch": None if rec.dpitch_deg is None else _fmt_deg(rec.dpitch_deg),
        "dyaw": None if rec.dyaw_deg is None else _fmt_deg(rec.dyaw_deg),
        "caption": rec.caption,
    }
    parts = []
    for key in _KEY_ORDER:
        if key in _OPTIONAL_KEYS and values[key] is None:
            continue
        parts.append(f"{key}={values[key]}")
    return "\t".join(parts)


def parse_record(line: str) -> ManifestRecord:
    pairs = {}
    for chunk in line.rstrip("\n").split("\t"):
        if "=" not in chunk:
            raise ValueError(f"malformed manifest field {chunk!r}")
        key, value = chunk.split("=", 1)
        pairs[key] = value
    try:
        return ManifestRecord(
            sample_id=pairs["id"],
            pano_id=pairs["pano"],
            kind=pairs["kind"],
            roll_deg=float(pairs["roll"]),
            pitch_deg=float(pairs["pitch"]),
            yaw_deg=float(pairs["yaw"]),
            vfov_deg=float(pairs["vfov"]),
            roll_term=pairs["roll_term"],
            pitch_term=pairs["pitch_term"],
            fov_term=pairs["fov_term"],
            image_path=pairs["image"],
            map_path=pairs["map"],
            partner_id=pairs.get("partner"),
            dpitch_deg=float(pairs["dpitch"]) if "dpitch" in pairs else None,
            dyaw_deg=float(pairs["dyaw"]) if "dyaw" in pairs else None,
            caption=pairs.get("caption", ""),
        )
    except KeyError as exc:
        raise ValueError(f"manifest line missing key {exc}") from exc


def write_manifest(path, records: list[ManifestRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(format_record(rec) + "\n")


def read_manifest(path) -> list[ManifestRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(parse_record(line))
    return records


# --- sample builders ---------------------------------------------------


@dataclass(eq=False)
class BuildResult:
    """One written sample: its render, terms and manifest record."""

    view: np.ndarray
    params: CameraParams
    terms: TermLabel
    record: ManifestRecord


@dataclass(frozen=True)
class GuidanceLabel:
    """Winning candidate offsets in degrees, plus the candidate count."""

    delta_pitch_deg: float
    delta_yaw_deg: float
    candidate_count: int

    def __post_init__(self):
        if abs(self.delta_pitch_deg) > GUIDANCE_OFFSET_DEG or abs(self.delta_yaw_deg) > GUIDANCE_OFFSET_DEG:
            raise ValueError(
                f"guidance offsets must lie within +/-{GUIDANCE_OFFSET_DEG} deg, got "
                f"({self.delta_pitch_deg!r}, {self.delta_yaw_deg!r})"
            )
        if self.candidate_count < 1:
            raise ValueError(f"candidate count must be >= 1, got {self.candidate_count}")


@dataclass(eq=False)
class GuidanceSet:
    initial: BuildResult
    candidates: list[BuildResult]
    offsets: list[tuple[float, float]]
    label: GuidanceLabel


def _artifact_paths(sample_id: str) -> tuple[str, str]:
    return (
        str(PurePosixPath("images") / f"{sample_id}.png"),
        str(PurePosixPath("maps") / f"{sample_id}.pfld"),
    )


def _write_sample(
    pano: EquirectPanorama,
    pano_id: str,
    sample_id: str,
    params: CameraParams,
    config: SamplingConfig,
    out_dir: Path,
    kind: str,
    partner_id: str | None = None,
    dpitch_deg: float | None = None,
    dyaw_deg: float | None = None,
) -> BuildResult:
    grid = config.grid
    view = render_view(pano, params, grid)
    encoding = encode_camera_map(field_from_params(params, grid))
    image_rel, map_rel = _artifact_paths(sample_id)
    (out_dir / image_rel).parent.mkdir(parents=True, exist_ok=True)
    (out_dir / map_rel).parent.mkdir(parents=True, exist_ok=True)
    save_png(out_dir / image_rel, view.pixels)
    save_camera_map(out_dir / map_rel, encoding)
    terms = params_to_terms(params)
    roll_deg, pitch_deg, yaw_deg, vfov_deg = params.as_degrees()
    record = ManifestRecord(
        sample_id=sample_id,
        pano_id=pano_id,
        kind=kind,
        roll_deg=roll_deg,
        pitch_deg=pitch_deg,
        yaw_deg=yaw_deg % 360.0,
        vfov_deg=vfov_deg,
        roll_term=terms.roll_term.value,
        pitch_term=terms.pitch_term.value,
        fov_term=terms.fov_term.value,
        image_path=image_rel,
        map_path=map_rel,
        partner_id=partner_id,
        dpitch_deg=dpitch_deg,
        dyaw_deg=dyaw_deg,
    )
    return BuildResult(view.pixels, params, terms, record)


def build_single_view(
    pano: EquirectPanorama,
    pano_id: str,
    sample_id: str,
    params: CameraParams,
    config: SamplingConfig,
    out_dir,
) -> BuildResult:
    """Render, encode and record one single-view sample."""
    return _write_sample(pano, pano_id, sample_id, params, config, Path(out_dir), "single")


def build_cross_view(
    pano: EquirectPanorama,
    pano_id: str,
    base_id: str,
    target_params: CameraParams,
    config: SamplingConfig,
    out_dir,
) -> tuple[BuildResult, BuildResult]:
    """Build a cross-view pair: a zero-pose initial view at the target's
    FoV, and the target view itself.  The target record stores its yaw
    deviation from the initial view."""
    out = Path(out_dir)
    initial_id, target_id = f"{base_id}_init", f"{base_id}_tgt"
    initial_params = CameraParams(0.0, 0.0, 0.0, target_params.vfov)
    initial = _write_sample(
        pano, pano_id, initial_id, initial_params, config, out,
        "cross-initial", partner_id=target_id,
    )
    target = _write_sample(
        pano, pano_id, target_id, target_params, config, out,
        "cross-target", partner_id=initial_id,
        dyaw_deg=math.degrees(target_params.yaw),
    )
    return initial, target


def index_stub_scorer(image_paths: list[str]) -> list[float]:
    """Placeholder scorer: score equals the candidate index, so the
    highest-index candidate always wins.  Purely positional; it judges
    nothing about image content or composition."""
    return [float(i) for i in range(len(image_paths))]


def command_scorer(command: str):
    """Wrap an external command as a scorer.

    The command is invoked with the candidate image paths appended to
    its arguments and must print one numeric score per candidate, one
    per line, on stdout.
    """

    def score(image_paths: list[str]) -> list[float]:
        argv = shlex.split(command) + list(image_paths)
        proc = subprocess.run(argv, capture_output=True, text=True)
        if proc.returncode != 0:
            raise RuntimeError(
                f"scorer command failed with exit {proc.returncode}: {proc.stderr.strip()}"
            )
        scores = [float(tok) for tok in proc.stdout.split()]
        if len(scores) != len(image_paths):
            raise RuntimeError(
                f"scorer emitted {len(scores)} scores for {len(image_paths)} candidates"
            )
        return scores

    return score


def build_guidance_candidates(
    pano: EquirectPanorama,
    pano_id: str,
    base_id: str,
    initial_pitch_deg: float,
    n_candidates: int,
    seed: int,
    vfov_deg: float,
    config: SamplingConfig,
    out_dir,
    scorer=None,
) -> GuidanceSet:
    """Build a guidance group: one initial view plus scored candidates.

    The initial view uses (roll 0, the given pitch, yaw 0); candidates
    perturb it by per-candidate (dpitch, dyaw) drawn uniformly from
    [-20, 20] degrees squared, keeping roll at 0 and sharing the FoV.
    The winning candidate's offsets (under ``scorer``, or the index
    stub when omitted) become the label, recorded on the initial view's
    manifest record alongside the winner's id.
    """
    if abs(initial_pitch_deg) > GUIDANCE_OFFSET_DEG:
        raise ValueError(
            f"initial pitch must lie within +/-{GUIDANCE_OFFSET_DEG} deg, got {initial_pitch_deg!r}"
        )
    if n_candidates < 1:
        raise ValueError(f"need at least one candidate, got {n_candidates}")
    out = Path(out_dir)
    rng = np.random.default_rng(seed)
    offsets = []
    for _ in range(n_candidates):
        dpitch = float(rng.uniform(-GUIDANCE_OFFSET_DEG, GUIDANCE_OFFSET_DEG))
        dyaw = float(rng.uniform(-GUIDANCE_OFFSET_DEG, GUIDANCE_OFFSET_DEG))
        offsets.append((dpitch, dyaw))

    initial_id = f"{base_id}_init"
    initial_params = CameraParams.from_degrees(0.0, initial_pitch_deg, 0.0, vfov_deg)
    initial = _write_sample(
        pano, pano_id, initial_id, initial_params, config, out, "single",
    )
    candidates = []
    for j, (dpitch, dyaw) in enumerate(offsets):
        cand_id = f"{base_id}_c{j:02d}"
        cand_params = CameraParams.from_degrees(
            0.0, initial_pitch_deg + dpitch, dyaw % 360.0, vfov_deg,
        )
        candidates.append(
            _write_sample(
                pano, pano_id, cand_id, cand_params, config, out,
                "guidance-candidate", partner_id=initial_id,
                dpitch_deg=dpitch, dyaw_deg=dyaw,
            )
        )

    score_fn = scorer or index_stub_scorer
    scores = score_fn([str(out / c.record.image_path) for c in candidates])
    winner = int(np.argmax(scores))
    label = GuidanceLabel(offsets[winner][0], offsets[winner][1], n_candidates)
    initial.record = replace(
        initial.record,
        partner_id=candidates[winner].record.sample_id,
        dpitch_deg=label.delta_pitch_deg,
        dyaw_deg=label.delta_yaw_deg,
    )
    return GuidanceSet(initial, candidates, offsets, label)


# --- end-to-end runs ---------------------------------------------------


def run_pipeline(
    panos: list[tuple[str, EquirectPanorama]],
    out_dir,
    config: SamplingConfig,
    mode: str = "single",
    count: int | None = None,
    candidates: int = 5,
    scorer=None,
    workers: int = 1,
) -> list[ManifestRecord]:
    """Build a dataset from panoramas and write ``manifest.txt``.

    ``count`` is the number of samples per panorama; when omitted the
    adaptive crop rule decides.  ``mode`` is one of single / cross /
    guidance.  Worker threads only change scheduling: every sample is a
    pure function of (master seed, global sample index), and records
    land in index order, so output bytes never depend on ``workers``.
    """
    if mode not in ("single", "cross", "guidance"):
        raise ValueError(f"unknown pipeline mode {mode!r}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if not panos:
        raise ValueError("need at least one panorama")
    out = Path(out_dir)
    (out / "images").mkdir(parents=True, exist_ok=True)
    (out / "maps").mkdir(parents=True, exist_ok=True)

    tasks = []
    index = 0
    for pano_id, pano in panos:
        n = count if count is not None else crops_per_panorama(pano, config)
        for _ in range(n):
            tasks.append((index, pano_id, pano))
            index += 1

    def run_task(task) -> list[ManifestRecord]:
        i, pano_id, pano = task
        sub = sample_seed(config.seed, i)
        base_id = f"{i:06d}"
        if mode == "single":
            params = _draw_params(config, sub, with_yaw=False)
            result = build_single_view(pano, pano_id, base_id, params, config, out)
            return [result.record]
        if mode == "cross":
            params = _draw_params(config, sub, with_yaw=True)
            initial, target = build_cross_view(pano, pano_id, base_id, params, config, out)
            return [initial.record, target.record]
        rng = np.random.default_rng(sub)
        initial_pitch = float(rng.uniform(-GUIDANCE_OFFSET_DEG, GUIDANCE_OFFSET_DEG))
        vfov = float(rng.uniform(*config.fov_range))
        group = build_guidance_candidates(
            pano, pano_id, base_id, initial_pitch, candidates,
            sample_seed(sub, 1), vfov, config, out, scorer=scorer,
        )
        return [group.initial.record] + [c.record for c in group.candidates]

    if workers == 1:
        per_task = [run_task(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_task = list(pool.map(run_task, tasks))

    records = [rec for group in per_task for rec in group]
    write_manifest(out / "manifest.txt", records)
    return records
