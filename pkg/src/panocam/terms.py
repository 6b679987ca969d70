"""Photographic vocabulary for camera poses.

Roll, pitch and vertical FoV are binned into the fixed intervals below
(degrees).  Interval endpoints follow the bracket notation exactly; for
example roll -20 is a small counterclockwise Dutch angle while anything
below it is large.

    roll / pitch: [-45, -20)  [-20, -5)  [-5, 5]  (5, 20]  (20, 45]
    vfov:         [20, 35)  [35, 65)  [65, 90)  [90, 105]

Degree values are rounded to 9 decimal places before binning so that a
degrees -> radians -> degrees round trip cannot flip a value across an
interval boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import CameraParams

_SNAP_DECIMALS = 9


class RollTerm(str, Enum):
    LARGE_CCW = "large-ccw-dutch"
    SMALL_CCW = "small-ccw-dutch"
    NEAR_LEVEL = "near-level"
    SMALL_CW = "small-cw-dutch"
    LARGE_CW = "large-cw-dutch"

    __str__ = str.__str__


class PitchTerm(str, Enum):
    LARGE_DOWN = "large-tilt-down"
    SMALL_DOWN = "small-tilt-down"
    NEAR_STRAIGHT = "near-straight-on"
    SMALL_UP = "small-tilt-up"
    LARGE_UP = "large-tilt-up"

    __str__ = str.__str__


class FovTerm(str, Enum):
    CLOSE_UP = "close-up"
    MEDIUM = "medium-shot"
    WIDE = "wide-angle"
    ULTRA_WIDE = "ultra-wide-angle"

    __str__ = str.__str__


ROLL_PHRASES = {
    RollTerm.LARGE_CCW: "large counterclockwise Dutch angle",
    RollTerm.SMALL_CCW: "small counterclockwise Dutch angle",
    RollTerm.NEAR_LEVEL: "near level shot",
    RollTerm.SMALL_CW: "small clockwise Dutch angle",
    RollTerm.LARGE_CW: "large clockwise Dutch angle",
}

PITCH_PHRASES = {
    PitchTerm.LARGE_DOWN: "large tilt-down",
    PitchTerm.SMALL_DOWN: "small tilt-down",
    PitchTerm.NEAR_STRAIGHT: "near straight-on shot",
    PitchTerm.SMALL_UP: "small tilt-up",
    PitchTerm.LARGE_UP: "large tilt-up",
}

FOV_PHRASES = {
    FovTerm.CLOSE_UP: "close-up",
    FovTerm.MEDIUM: "medium shot",
    FovTerm.WIDE: "wide-angle",
    FovTerm.ULTRA_WIDE: "ultra wide-angle",
}


@dataclass(frozen=True)
class Interval:
    """Degree interval with explicit endpoint openness."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def contains(self, value: float) -> bool:
        above = value >= self.lo if self.lo_closed else value > self.lo
        below = value <= self.hi if self.hi_closed else value < self.hi
        return above and below

    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0


# (interval, term) in ascending order; the shared -45/45 and 20/105
# limits double as the valid input range.
_ANGLE_BINS = [
    (Interval(-45.0, -20.0, True, False), 0),
    (Interval(-20.0, -5.0, True, False), 1),
    (Interval(-5.0, 5.0, True, True), 2),
    (Interval(5.0, 20.0, False, True), 3),
    (Interval(20.0, 45.0, False, True), 4),
]

_FOV_BINS = [
    (Interval(20.0, 35.0, True, False), FovTerm.CLOSE_UP),
    (Interval(35.0, 65.0, True, False), FovTerm.MEDIUM),
    (Interval(65.0, 90.0, True, False), FovTerm.WIDE),
    (Interval(90.0, 105.0, True, True), FovTerm.ULTRA_WIDE),
]

_ROLL_ORDER = [
    RollTerm.LARGE_CCW,
    RollTerm.SMALL_CCW,
    RollTerm.NEAR_LEVEL,
    RollTerm.SMALL_CW,
    RollTerm.LARGE_CW,
]

_PITCH_ORDER = [
    PitchTerm.LARGE_DOWN,
    PitchTerm.SMALL_DOWN,
    PitchTerm.NEAR_STRAIGHT,
    PitchTerm.SMALL_UP,
    PitchTerm.LARGE_UP,
]


@dataclass(frozen=True)
class TermLabel:
    roll_term: RollTerm
    pitch_term: PitchTerm
    fov_term: FovTerm


def _snap(value_deg: float) -> float:
    return round(value_deg, _SNAP_DECIMALS)


def _bin_angle(value_deg: float, what: str):
    v = _snap(value_deg)
    for interval, idx in _ANGLE_BINS:
        if interval.contains(v):
            return idx
    raise ValueError(f"{what} {value_deg!r} deg outside the labeled range [-45, 45]")


def _bin_fov(value_deg: float) -> FovTerm:
    v = _snap(value_deg)
    for interval, term in _FOV_BINS:
        if interval.contains(v):
            return term
    raise ValueError(f"vfov {value_deg!r} deg outside the labeled range [20, 105]")


def params_to_terms(params: CameraParams) -> TermLabel:
    """Bin a pose into its roll / pitch / FoV terms.  Yaw has no term."""
    roll_deg = math.degrees(params.roll)
    pitch_deg = math.degrees(params.pitch)
    vfov_deg = math.degrees(params.vfov)
    return TermLabel(
        _ROLL_ORDER[_bin_angle(roll_deg, "roll")],
        _PITCH_ORDER[_bin_angle(pitch_deg, "pitch")],
        _bin_fov(vfov_deg),
    )


def terms_to_range(label: TermLabel) -> tuple[Interval, Interval, Interval]:
    """Exact degree intervals (roll, pitch, vfov) for a term label."""
    roll_iv = _ANGLE_BINS[_ROLL_ORDER.index(label.roll_term)][0]
    pitch_iv = _ANGLE_BINS[_PITCH_ORDER.index(label.pitch_term)][0]
    fov_iv = next(iv for iv, term in _FOV_BINS if term == label.fov_term)
    return roll_iv, pitch_iv, fov_iv


def _article(phrase: str) -> str:
    return "an" if phrase[0].lower() in "aeiou" else "a"


def caption_skeleton(params: CameraParams, scene_text: str) -> str:
    """Deterministic caption template for a pose.

    The think block names the three photographic terms and leaves one
    named placeholder per parameter ({ROLL_CUES}, {PITCH_CUES},
    {FOV_CUES}) where image-specific visual evidence belongs.  The
    answer block carries roll, pitch and vfov in radians with four
    decimal places.
    """
    label = params_to_terms(params)
    roll_phrase = ROLL_PHRASES[label.roll_term]
    pitch_phrase = PITCH_PHRASES[label.pitch_term]
    fov_phrase = FOV_PHRASES[label.fov_term]

    def fmt(value: float) -> str:
        r = round(value, 4)
        if r == 0.0:
            r = 0.0  # avoid "-0.0000"
        return f"{r:.4f}"

    lines = [
        "<think>",
        f"Scene: {scene_text}",
        f"Roll cues: {{ROLL_CUES}}. The framing reads as {_article(roll_phrase)} {roll_phrase}.",
        f"Pitch cues: {{PITCH_CUES}}. The viewpoint reads as {_article(pitch_phrase)} {pitch_phrase}.",
        f"Field-of-view cues: {{FOV_CUES}}. The coverage reads as {_article(fov_phrase)} {fov_phrase}.",
        "</think>",
        f"<answer>{fmt(params.roll)}, {fmt(params.pitch)}, {fmt(params.vfov)}</answer>",
    ]
    return "\n".join(lines)
