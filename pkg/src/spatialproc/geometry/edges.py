"""Sobel gradients and Canny edge detection.

The adaptive variant derives hysteresis thresholds from the median
intensity v of the median-filtered image: lower = max(0, (1-sigma)*v),
upper = min(255, (1+sigma)*v). A fixed-threshold variant runs directly
on RGB data by taking, per pixel, the channel with the strongest
gradient; this keeps chromatic edges that grayscale averaging washes
out.
"""

from __future__ import annotations

import numpy as np

from .._util import replicate_pad
from ..buffer import ColorSpace, ImageBuffer
from ..enhance import median_filter
from .morphology import _label_mask

_SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
_SOBEL_Y = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=np.float64)


def sobel_gradients(plane: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(gx, gy) from 3x3 Sobel with replicate borders."""
    padded = replicate_pad(plane.astype(np.float64), 1, 1)
    h, w = plane.shape
    gx = np.zeros((h, w))
    gy = np.zeros((h, w))
    for dy in range(3):
        for dx in range(3):
            window = padded[dy : dy + h, dx : dx + w]
            if _SOBEL_X[dy, dx]:
                gx += _SOBEL_X[dy, dx] * window
            if _SOBEL_Y[dy, dx]:
                gy += _SOBEL_Y[dy, dx] * window
    return gx, gy


def adaptive_thresholds(median_value: float, sigma: float) -> tuple[float, float]:
    """Hysteresis thresholds derived from a median intensity."""
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma}")
    v = float(median_value)
    return max(0.0, (1.0 - sigma) * v), min(255.0, (1.0 + sigma) * v)


def compute_canny_thresholds(
    img: ImageBuffer, sigma: float = 0.5, median_side: int = 7
) -> tuple[float, float]:
    """The (lower, upper) pair canny_adaptive would use for this image."""
    filtered = median_filter(img, median_side)
    return adaptive_thresholds(float(np.median(filtered.data)), sigma)


def _nonmax_suppress(mag: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Keep gradient-direction local maxima; ties break toward the
    earlier neighbor so ridges stay one pixel wide on plateaus."""
    h, w = mag.shape
    padded = np.zeros((h + 2, w + 2))
    padded[1:-1, 1:-1] = mag

    angle = np.degrees(np.arctan2(gy, gx)) % 180.0
    sector = np.zeros((h, w), dtype=np.int8)
    sector[(angle >= 22.5) & (angle < 67.5)] = 1
    sector[(angle >= 67.5) & (angle < 112.5)] = 2
    sector[(angle >= 112.5) & (angle < 157.5)] = 3

    # neighbor offsets per sector: (before, after) in (dy, dx)
    pairs = {0: ((0, -1), (0, 1)), 1: ((-1, 1), (1, -1)), 2: ((-1, 0), (1, 0)), 3: ((-1, -1), (1, 1))}
    keep = np.zeros((h, w), dtype=bool)
    for sec, ((by, bx), (ay, ax)) in pairs.items():
        before = padded[1 + by : 1 + by + h, 1 + bx : 1 + bx + w]
        after = padded[1 + ay : 1 + ay + h, 1 + ax : 1 + ax + w]
        keep |= (sector == sec) & (mag > before) & (mag >= after)
    return np.where(keep, mag, 0.0)


def _hysteresis(mag: np.ndarray, lower: float, upper: float) -> np.ndarray:
    # zero-gradient pixels are never edges, even when thresholds hit 0
    weak = (mag >= lower) & (mag > 0.0)
    strong = (mag >= upper) & (mag > 0.0)
    if not strong.any():
        return np.zeros(mag.shape, dtype=np.uint8)
    labels, _ = _label_mask(weak, connectivity=8)
    keep_labels = np.unique(labels[strong])
    edges = weak & np.isin(labels, keep_labels[keep_labels > 0])
    return edges.astype(np.uint8) * 255


def _canny_from_gradients(
    gx: np.ndarray, gy: np.ndarray, lower: float, upper: float
) -> ImageBuffer:
    mag = np.hypot(gx, gy)
    suppressed = _nonmax_suppress(mag, gx, gy)
    return ImageBuffer(ColorSpace.BINARY, _hysteresis(suppressed, lower, upper))


def canny_adaptive(img: ImageBuffer, sigma: float = 0.5, median_side: int = 7) -> ImageBuffer:
    """Median prefilter, then Canny with median-derived thresholds."""
    if img.space is not ColorSpace.GRAY:
        raise TypeError(f"canny_adaptive requires a gray image, got {img.space.value}")
    filtered = median_filter(img, median_side)
    lower, upper = adaptive_thresholds(float(np.median(filtered.data)), sigma)
    gx, gy = sobel_gradients(filtered.data)
    return _canny_from_gradients(gx, gy, lower, upper)


def canny_fixed(img: ImageBuffer, lower: float, upper: float) -> ImageBuffer:
    """Canny on a gray image with caller-supplied thresholds."""
    if img.space is not ColorSpace.GRAY:
        raise TypeError(f"canny_fixed requires a gray image, got {img.space.value}")
    if not lower < upper:
        raise ValueError(f"need lower < upper, got {lower} >= {upper}")
    gx, gy = sobel_gradients(img.data)
    return _canny_from_gradients(gx, gy, lower, upper)


def canny_rgb(img: ImageBuffer, lower: float, upper: float) -> ImageBuffer:
    """Canny on RGB: per-channel Sobel, strongest channel wins per pixel."""
    if img.space is not ColorSpace.RGB:
        raise TypeError(f"canny_rgb requires an RGB image, got {img.space.value}")
    if not lower < upper:
        raise ValueError(f"need lower < upper, got {lower} >= {upper}")
    best_mag2 = None
    gx = gy = None
    for c in range(3):
        cgx, cgy = sobel_gradients(img.data[:, :, c].astype(np.float64))
        mag2 = cgx * cgx + cgy * cgy
        if best_mag2 is None:
            best_mag2, gx, gy = mag2, cgx, cgy
        else:
            pick = mag2 > best_mag2
            gx = np.where(pick, cgx, gx)
            gy = np.where(pick, cgy, gy)
            best_mag2 = np.where(pick, mag2, best_mag2)
    return _canny_from_gradients(gx, gy, lower, upper)
