"""Pixel buffers, color-space conversion, and intensity statistics.

Images are 8-bit, 1 or 3 channels, tagged with a color space. Conversions
follow ITU-R BT.601 integer conventions (Y = 0.299R + 0.587G + 0.114B,
chroma offset 128) with hue stored halved in [0, 179] and S, V in
[0, 255]. Intermediate math is float64, rounded half away from zero and
clamped, so every conversion is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._util import clamp_u8, round_half_away
from .errors import ConversionError


class ColorSpace(Enum):
    GRAY = "gray"
    RGB = "rgb"
    BGR = "bgr"
    HSV = "hsv"
    YCRCB = "ycrcb"
    BINARY = "binary"


_SINGLE_CHANNEL = {ColorSpace.GRAY, ColorSpace.BINARY}


@dataclass(frozen=True)
class ImageBuffer:
    """An 8-bit image: 2-D array for one channel, (h, w, 3) for three.

    The pixel array is frozen (read-only) on construction; operations
    return new buffers rather than mutating in place.
    """

    space: ColorSpace
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.uint8)
        if self.space in _SINGLE_CHANNEL:
            if arr.ndim != 2:
                raise ValueError(f"{self.space.value} images must be 2-D, got shape {arr.shape}")
        else:
            if arr.ndim != 3 or arr.shape[2] != 3:
                raise ValueError(
                    f"{self.space.value} images must have shape (h, w, 3), got {arr.shape}"
                )
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be >= 1, got {arr.shape}")
        if self.space is ColorSpace.BINARY:
            bad = np.setdiff1d(np.unique(arr), [0, 255])
            if bad.size:
                raise ValueError(f"binary image contains values other than 0/255: {bad[:8]}")
        arr = arr.copy() if arr.flags.writeable else arr
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return 1 if self.data.ndim == 2 else 3

    def plane(self, channel: int) -> np.ndarray:
        """Read-only view of one channel as a 2-D array."""
        if channel < 0 or channel >= self.channels:
            raise ValueError(f"channel {channel} out of range for {self.channels}-channel image")
        return self.data if self.data.ndim == 2 else self.data[:, :, channel]


def gray_image(data: np.ndarray) -> ImageBuffer:
    return ImageBuffer(ColorSpace.GRAY, data)


def binary_image(data: np.ndarray) -> ImageBuffer:
    return ImageBuffer(ColorSpace.BINARY, data)


def color_image(data: np.ndarray, space: ColorSpace = ColorSpace.RGB) -> ImageBuffer:
    return ImageBuffer(space, data)


@dataclass(frozen=True)
class Histogram:
    """256-bin intensity histogram of one channel."""

    bins: np.ndarray
    total: int

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.int64)
        if bins.shape != (256,) or (bins < 0).any():
            raise ValueError("histogram needs 256 non-negative bins")
        if int(bins.sum()) != self.total:
            raise ValueError(f"bin sum {int(bins.sum())} != total {self.total}")
        bins.flags.writeable = False
        object.__setattr__(self, "bins", bins)


@dataclass(frozen=True)
class Cdf:
    """Cumulative counts plus the masked min/max used for equalization.

    ``masked_min`` is the smallest cumulative count over bins that are
    actually populated; empty leading bins are ignored, which is what
    makes the normalization below stretch the occupied range fully.
    """

    values: np.ndarray
    masked_min: int
    masked_max: int

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64)
        if vals.shape != (256,) or (np.diff(vals) < 0).any():
            raise ValueError("cdf needs 256 non-decreasing values")
        if self.masked_min > self.masked_max:
            raise ValueError("masked_min must be <= masked_max")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


def histogram(img: ImageBuffer, channel: int = 0) -> Histogram:
    """Count occurrences of each intensity 0..255 in one channel."""
    plane = img.plane(channel)
    bins = np.bincount(plane.ravel(), minlength=256).astype(np.int64)
    return Histogram(bins=bins, total=int(plane.size))


def cdf(h: Histogram) -> Cdf:
    """Prefix-sum a histogram; track min/max over populated bins only."""
    values = np.cumsum(h.bins)
    populated = h.bins > 0
    if populated.any():
        masked_min = int(values[populated].min())
        masked_max = int(values[255])
    else:
        masked_min = masked_max = 0
    return Cdf(values=values, masked_min=masked_min, masked_max=masked_max)


# BT.601 luma weights, applied to (R, G, B).
_LUMA = np.array([0.299, 0.587, 0.114])


def _to_gray(rgb: np.ndarray) -> np.ndarray:
    return clamp_u8(rgb[:, :, 0] * _LUMA[0] + rgb[:, :, 1] * _LUMA[1] + rgb[:, :, 2] * _LUMA[2])


def _bgr_to_ycrcb(bgr: np.ndarray) -> np.ndarray:
    b = bgr[:, :, 0].astype(np.float64)
    g = bgr[:, :, 1].astype(np.float64)
    r = bgr[:, :, 2].astype(np.float64)
    y = r * _LUMA[0] + g * _LUMA[1] + b * _LUMA[2]
    cr = (r - y) * 0.713 + 128.0
    cb = (b - y) * 0.564 + 128.0
    return clamp_u8(np.stack([y, cr, cb], axis=2))


def _ycrcb_to_bgr(ycc: np.ndarray) -> np.ndarray:
    y = ycc[:, :, 0].astype(np.float64)
    cr = ycc[:, :, 1].astype(np.float64) - 128.0
    cb = ycc[:, :, 2].astype(np.float64) - 128.0
    r = y + 1.403 * cr
    g = y - 0.714 * cr - 0.344 * cb
    b = y + 1.773 * cb
    return clamp_u8(np.stack([b, g, r], axis=2))


def _bgr_to_hsv(bgr: np.ndarray) -> np.ndarray:
    b = bgr[:, :, 0].astype(np.float64)
    g = bgr[:, :, 1].astype(np.float64)
    r = bgr[:, :, 2].astype(np.float64)
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    diff = mx - mn

    v = mx
    s = np.where(mx > 0, diff * 255.0 / np.where(mx > 0, mx, 1.0), 0.0)

    safe = np.where(diff > 0, diff, 1.0)
    h = np.where(
        diff == 0,
        0.0,
        np.where(
            mx == r,
            60.0 * (g - b) / safe,
            np.where(mx == g, 120.0 + 60.0 * (b - r) / safe, 240.0 + 60.0 * (r - g) / safe),
        ),
    )
    h = np.where(h < 0, h + 360.0, h) / 2.0
    # A hue that rounds to 180 wraps to 0 to stay in the stored [0, 179].
    h8 = round_half_away(h) % 180.0
    return np.stack([h8, clamp_u8(s), clamp_u8(v)], axis=2).astype(np.uint8)


def _hsv_to_bgr(hsv: np.ndarray) -> np.ndarray:
    h = hsv[:, :, 0].astype(np.float64) * 2.0
    s = hsv[:, :, 1].astype(np.float64) / 255.0
    v = hsv[:, :, 2].astype(np.float64) / 255.0

    sector = np.floor(h / 60.0).astype(np.int64) % 6
    f = h / 60.0 - np.floor(h / 60.0)
    p = v * (1.0 - s)
    q = v * (1.0 - f * s)
    t = v * (1.0 - (1.0 - f) * s)

    r = np.choose(sector, [v, q, p, p, t, v])
    g = np.choose(sector, [t, v, v, q, p, p])
    b = np.choose(sector, [p, p, t, v, v, q])
    return clamp_u8(np.stack([b, g, r], axis=2) * 255.0)


def convert_color(img: ImageBuffer, target: ColorSpace) -> ImageBuffer:
    """Convert between the supported color-space pairs.

    Supported: Gray <-> RGB/BGR, BGR <-> RGB, BGR <-> YCrCb, BGR <-> HSV.
    Anything else raises :class:`ConversionError` naming both spaces.
    """
    src = img.space
    if src == target:
        return img

    if src is ColorSpace.GRAY and target in (ColorSpace.RGB, ColorSpace.BGR):
        out = np.repeat(img.data[:, :, None], 3, axis=2)
    elif src in (ColorSpace.RGB, ColorSpace.BGR) and target is ColorSpace.GRAY:
        rgb = img.data if src is ColorSpace.RGB else img.data[:, :, ::-1]
        out = _to_gray(rgb)
    elif {src, target} == {ColorSpace.RGB, ColorSpace.BGR}:
        out = img.data[:, :, ::-1]
    elif src is ColorSpace.BGR and target is ColorSpace.YCRCB:
        out = _bgr_to_ycrcb(img.data)
    elif src is ColorSpace.YCRCB and target is ColorSpace.BGR:
        out = _ycrcb_to_bgr(img.data)
    elif src is ColorSpace.BGR and target is ColorSpace.HSV:
        out = _bgr_to_hsv(img.data)
    elif src is ColorSpace.HSV and target is ColorSpace.BGR:
        out = _hsv_to_bgr(img.data)
    else:
        raise ConversionError(src.value, target.value)
    return ImageBuffer(target, np.ascontiguousarray(out))
