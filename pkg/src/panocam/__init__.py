"""panocam: pinhole views from equirectangular panoramas, per-pixel
camera fields, calibration, photographic terms, and dataset tooling."""

from .calibrate import CalibrationResult, SolverConfig, calibrate_from_field, residual
from .fields import (
    CameraMapEncoding,
    HorizonLine,
    PerspectiveField,
    decode_camera_map,
    encode_camera_map,
    field_from_params,
    horizon_from_params,
    load_camera_map,
    save_camera_map,
)
from .geometry import (
    DEFAULT_GRID,
    GRAVITY_DOWN,
    WORLD_UP,
    CameraParams,
    PixelGridSpec,
    focal_from_vfov,
    pixel_ray,
    project,
    ray_grid,
    rotation_from_params,
    world_up_in_camera,
)
from .metrics import (
    EvalReport,
    FieldErrors,
    ParamErrorSample,
    auc_at,
    build_report,
    crop_fov_rescale,
    field_errors,
    gravity_error,
    param_errors,
    report_keyvalues,
    report_table,
)
from .panorama import (
    EquirectPanorama,
    RenderedView,
    dir_to_pano_uv,
    procedural_panorama,
    render_view,
    sample_bilinear,
)
from .pipeline import (
    BuildResult,
    GuidanceLabel,
    GuidanceSet,
    ManifestRecord,
    SamplingConfig,
    build_cross_view,
    build_guidance_candidates,
    build_single_view,
    command_scorer,
    crops_per_panorama,
    format_record,
    index_stub_scorer,
    load_png,
    parse_record,
    read_manifest,
    run_pipeline,
    sample_configs,
    sample_seed,
    save_png,
    write_manifest,
)
from .terms import (
    FOV_PHRASES,
    PITCH_PHRASES,
    ROLL_PHRASES,
    FovTerm,
    Interval,
    PitchTerm,
    RollTerm,
    TermLabel,
    caption_skeleton,
    params_to_terms,
    terms_to_range,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationResult",
    "SolverConfig",
    "calibrate_from_field",
    "residual",
    "CameraMapEncoding",
    "HorizonLine",
    "PerspectiveField",
    "decode_camera_map",
    "encode_camera_map",
    "field_from_params",
    "horizon_from_params",
    "load_camera_map",
    "save_camera_map",
    "DEFAULT_GRID",
    "GRAVITY_DOWN",
    "WORLD_UP",
    "CameraParams",
    "PixelGridSpec",
    "focal_from_vfov",
    "pixel_ray",
    "project",
    "ray_grid",
    "rotation_from_params",
    "world_up_in_camera",
    "EvalReport",
    "FieldErrors",
    "ParamErrorSample",
    "auc_at",
    "build_report",
    "crop_fov_rescale",
    "field_errors",
    "gravity_error",
    "param_errors",
    "report_keyvalues",
    "report_table",
    "EquirectPanorama",
    "RenderedView",
    "dir_to_pano_uv",
    "procedural_panorama",
    "render_view",
    "sample_bilinear",
    "BuildResult",
    "GuidanceLabel",
    "GuidanceSet",
    "ManifestRecord",
    "SamplingConfig",
    "build_cross_view",
    "build_guidance_candidates",
    "build_single_view",
    "command_scorer",
    "crops_per_panorama",
    "format_record",
    "index_stub_scorer",
    "load_png",
    "parse_record",
    "read_manifest",
    "run_pipeline",
    "sample_configs",
    "sample_seed",
    "save_png",
    "write_manifest",
    "FOV_PHRASES",
    "PITCH_PHRASES",
    "ROLL_PHRASES",
    "FovTerm",
    "Interval",
    "PitchTerm",
    "RollTerm",
    "TermLabel",
    "caption_skeleton",
    "params_to_terms",
    "terms_to_range",
]
