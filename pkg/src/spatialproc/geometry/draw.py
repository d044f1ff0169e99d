"""Red overlays for detected features (lines, circles, corner points)."""

from __future__ import annotations

import math

import numpy as np

from ..buffer import ColorSpace, ImageBuffer, convert_color
from .corners import CornerSet
from .hough import Circle, Line


def _as_canvas(img: ImageBuffer) -> np.ndarray:
    if img.channels == 1:
        return convert_color(
            ImageBuffer(ColorSpace.GRAY, img.data), ColorSpace.RGB
        ).data.copy()
    rgb = img if img.space is ColorSpace.RGB else convert_color(img, ColorSpace.RGB)
    return rgb.data.copy()

_RED = np.array([255, 0, 0], dtype=np.uint8)


def draw_lines(img: ImageBuffer, lines: list[Line]) -> ImageBuffer:
    canvas = _as_canvas(img)
    h, w = canvas.shape[:2]
    span = int(math.hypot(w, h)) + 1
    ts = np.arange(-span, span + 1)
    for ln in lines:
        cos_t, sin_t = math.cos(ln.theta), math.sin(ln.theta)
        xs = np.rint(ln.rho * cos_t - ts * sin_t).astype(int)
        ys = np.rint(ln.rho * sin_t + ts * cos_t).astype(int)
        ok = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
        canvas[ys[ok], xs[ok]] = _RED
    return ImageBuffer(ColorSpace.RGB, canvas)


def draw_circles(img: ImageBuffer, circles: list[Circle]) -> ImageBuffer:
    canvas = _as_canvas(img)
    h, w = canvas.shape[:2]
    for c in circles:
        ts = np.linspace(0.0, 2.0 * math.pi, max(16, int(8 * c.r)), endpoint=False)
        xs = np.rint(c.cx + c.r * np.cos(ts)).astype(int)
        ys = np.rint(c.cy + c.r * np.sin(ts)).astype(int)
        ok = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
        canvas[ys[ok], xs[ok]] = _RED
    return ImageBuffer(ColorSpace.RGB, canvas)


def draw_points(img: ImageBuffer, corners: CornerSet, radius: int = 1) -> ImageBuffer:
    canvas = _as_canvas(img)
    h, w = canvas.shape[:2]
    for x, y in corners.points:
        y0, y1 = max(0, y - radius), min(h, y + radius + 1)
        x0, x1 = max(0, x - radius), min(w, x + radius + 1)
        canvas[y0:y1, x0:x1] = _RED
    return ImageBuffer(ColorSpace.RGB, canvas)
