"""Billiard cue orientation estimation and isolation.

Works on the RGB image directly: chromatic Canny edges feed a fine
(1 px, 1 degree) Hough pass whose mean line angle gives the cue
elevation as 90 - mean(theta). Isolation then removes the balls by
zero-filling Hough circles, suppresses the cloth below its modal
intensity, keeps only the strip between the cue's two silhouette
lines, and finally rotates the cue to horizontal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..buffer import ColorSpace, ImageBuffer, convert_color
from ..errors import NoFeatureError
from .edges import canny_fixed, canny_rgb
from .hough import Line, hough_circles, hough_lines
from .transform import rotate


@dataclass(frozen=True)
class CueConfig:
    canny_lo: float = 100.0
    canny_hi: float = 200.0
    line_votes: int = 200
    r_min: int = 25
    r_max: int = 33
    circle_votes: int = 100
    cloth_peak: int = 49
    inpaint_margin: int = 2
    strip_margin: float = 2.0
    parallel_tol_deg: float = 5.0
    # below this rho gap two "parallel" lines are the same physical edge
    min_line_separation: float = 3.0


def estimate_cue_angle(
    img: ImageBuffer,
    canny_lo: float = 100.0,
    canny_hi: float = 200.0,
    votes: int = 200,
) -> float:
    """Cue elevation in degrees: 90 - mean detected line angle."""
    if img.space is not ColorSpace.RGB:
        raise TypeError(f"estimate_cue_angle requires RGB input, got {img.space.value}")
    if not canny_lo < canny_hi:
        raise ValueError(f"need canny_lo < canny_hi, got {canny_lo} >= {canny_hi}")
    edges = canny_rgb(img, canny_lo, canny_hi)
    lines = hough_lines(edges, rho_res=1.0, theta_res=1.0, votes=votes)
    if not lines:
        raise NoFeatureError("cue-line detection", "no Hough lines above the vote threshold")
    theta_avg = sum(ln.theta for ln in lines) / len(lines)
    return 90.0 - math.degrees(theta_avg)


def _strip_mask(shape: tuple[int, int], a: Line, b: Line, margin: float) -> np.ndarray:
    """Pixels between two near-parallel lines (inclusive of a margin)."""
    h, w = shape
    ys, xs = np.mgrid[0:h, 0:w]
    da = xs * math.cos(a.theta) + ys * math.sin(a.theta) - a.rho
    db = xs * math.cos(b.theta) + ys * math.sin(b.theta) - b.rho
    return (da * db <= 0) | (np.abs(da) <= margin) | (np.abs(db) <= margin)


def _find_cue_strip(lines: list[Line], tol_deg: float, min_sep: float) -> tuple[Line, Line]:
    """The two strongest near-parallel lines on distinct silhouette edges."""
    for i, first in enumerate(lines):
        for second in lines[i + 1 :]:
            diff = abs(first.theta_deg - second.theta_deg)
            if min(diff, 180.0 - diff) < tol_deg and abs(first.rho - second.rho) >= min_sep:
                return first, second
    raise NoFeatureError(
        "cue-strip masking", "fewer than two near-parallel lines bound the cue"
    )


def isolate_cue(img: ImageBuffer, cfg: CueConfig = CueConfig()) -> ImageBuffer:
    """Segment the cue and rotate it to horizontal; returns grayscale."""
    if img.space is not ColorSpace.RGB:
        raise TypeError(f"isolate_cue requires RGB input, got {img.space.value}")

    angle = estimate_cue_angle(img, cfg.canny_lo, cfg.canny_hi, cfg.line_votes)

    gray = convert_color(img, ColorSpace.GRAY)
    balls = hough_circles(gray, cfg.r_min, cfg.r_max, cfg.circle_votes)
    work = gray.data.astype(np.int64).copy()
    h, w = work.shape
    ys, xs = np.mgrid[0:h, 0:w]
    for ball in balls:
        rr = ball.r + cfg.inpaint_margin
        work[(xs - ball.cx) ** 2 + (ys - ball.cy) ** 2 <= rr * rr] = 0

    work[work < cfg.cloth_peak] = 0
    masked = ImageBuffer(ColorSpace.GRAY, work.astype(np.uint8))

    edges = canny_fixed(masked, cfg.canny_lo, cfg.canny_hi)
    lines = hough_lines(edges, rho_res=1.0, theta_res=1.0, votes=cfg.line_votes)
    if len(lines) < 2:
        raise NoFeatureError(
            "cue-strip masking", f"need 2 bounding lines, found {len(lines)}"
        )
    first, second = _find_cue_strip(lines, cfg.parallel_tol_deg, cfg.min_line_separation)
    strip = _strip_mask((h, w), first, second, cfg.strip_margin)
    isolated = np.where(strip, masked.data, 0).astype(np.uint8)

    return rotate(ImageBuffer(ColorSpace.GRAY, isolated), -angle)
