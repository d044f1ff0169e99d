"""Point operations and spatial filters.

Covers stepwise grayscale quantization, masked-CDF histogram
equalization (per-channel and luminance-only), HSV brightness offset,
convolution with replicate borders, the fixed 3x3 sharpen kernel, the
alpha-blended unsharp kernel, gamma correction, complement, Gaussian
blur, median filtering, and residual noise amplification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._util import clamp_u8, replicate_pad, require_odd
from .buffer import ColorSpace, ImageBuffer, cdf, histogram


@dataclass(frozen=True)
class QuantizationMap:
    """Stepwise intensity mapping: value <= thresholds[i] -> outputs[i].

    Values above the last threshold map to the final output level, so
    there is one more output than thresholds.
    """

    thresholds: tuple[int, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(v) for v in self.thresholds)
        o = tuple(int(v) for v in self.outputs)
        if len(o) != len(t) + 1:
            raise ValueError(f"need len(outputs) == len(thresholds)+1, got {len(o)} vs {len(t)}")
        if any(not 0 <= v <= 255 for v in t + o):
            raise ValueError("thresholds and outputs must be 8-bit values")
        if any(a >= b for a, b in zip(t, t[1:])):
            raise ValueError(f"thresholds must be strictly ascending, got {t}")
        object.__setattr__(self, "thresholds", t)
        object.__setattr__(self, "outputs", o)

    def lut(self) -> np.ndarray:
        """256-entry lookup table realizing the mapping."""
        idx = np.searchsorted(np.asarray(self.thresholds), np.arange(256), side="left")
        return np.asarray(self.outputs, dtype=np.uint8)[np.minimum(idx, len(self.outputs) - 1)]

    def to_json(self) -> str:
        return json.dumps({"thresholds": list(self.thresholds), "outputs": list(self.outputs)})

    @classmethod
    def from_json(cls, text: str) -> "QuantizationMap":
        obj = json.loads(text)
        return cls(thresholds=tuple(obj["thresholds"]), outputs=tuple(obj["outputs"]))


# Eight-level map used throughout: seven thresholds, eight output levels.
PAPER8 = QuantizationMap(
    thresholds=(30, 60, 90, 120, 160, 190, 220),
    outputs=(10, 20, 50, 70, 100, 140, 180, 200),
)

PRESETS = {"paper8": PAPER8}


@dataclass(frozen=True)
class Kernel:
    """Odd-sided square convolution kernel."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] % 2 == 0:
            raise ValueError(f"kernel must be square with odd side, got shape {w.shape}")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def side(self) -> int:
        return self.weights.shape[0]


SHARPEN_KERNEL = Kernel(np.array([[-1, -1, -1], [-1, 9, -1], [-1, -1, -1]], dtype=np.float64))

_UNSHARP_K1 = np.array([[-1, 1, -1], [1, 1, 1], [-1, 1, -1]], dtype=np.float64)
_UNSHARP_K2 = np.array([[0, -1, 0], [-1, 5, -1], [0, -1, 0]], dtype=np.float64)


def _require_gray(img: ImageBuffer, op: str) -> None:
    if img.space is not ColorSpace.GRAY:
        raise TypeError(f"{op} requires a gray image, got {img.space.value}")


def step_quantize(img: ImageBuffer, qmap: QuantizationMap = PAPER8) -> ImageBuffer:
    """Posterize a gray image onto the map's discrete output levels."""
    _require_gray(img, "step_quantize")
    return ImageBuffer(ColorSpace.GRAY, qmap.lut()[img.data])


def _equalize_lut(plane: np.ndarray) -> np.ndarray:
    """Masked-CDF equalization LUT for one channel.

    Empty bins are excluded from the normalization range; a constant
    channel (masked range empty) maps to itself since the stretch is
    undefined there.
    """
    c = cdf(histogram(ImageBuffer(ColorSpace.GRAY, plane)))
    if c.masked_max == c.masked_min:
        return np.arange(256, dtype=np.uint8)
    scaled = (c.values - c.masked_min) * 255.0 / (c.masked_max - c.masked_min)
    return clamp_u8(scaled)


def equalize_rgb(img: ImageBuffer) -> ImageBuffer:
    """Equalize each channel of an RGB/BGR image independently."""
    if img.space not in (ColorSpace.RGB, ColorSpace.BGR):
        raise TypeError(f"equalize_rgb requires RGB or BGR input, got {img.space.value}")
    out = np.stack([_equalize_lut(img.data[:, :, c])[img.data[:, :, c]] for c in range(3)], axis=2)
    return ImageBuffer(img.space, out)


def equalize_ycrcb(img: ImageBuffer) -> ImageBuffer:
    """Equalize only the luminance plane; chroma passes through untouched."""
    from .buffer import convert_color  # local to avoid import cycle at module load

    if img.space is not ColorSpace.BGR:
        raise TypeError(f"equalize_ycrcb requires BGR input, got {img.space.value}")
    ycc = convert_color(img, ColorSpace.YCRCB).data
    y = ycc[:, :, 0]
    out = np.dstack([_equalize_lut(y)[y], ycc[:, :, 1], ycc[:, :, 2]])
    return convert_color(ImageBuffer(ColorSpace.YCRCB, out), ColorSpace.BGR)


def hsv_brighten(img: ImageBuffer, v: int = 30) -> ImageBuffer:
    """Add a constant to the HSV value channel with saturation at 255."""
    from .buffer import convert_color

    if img.space is not ColorSpace.BGR:
        raise TypeError(f"hsv_brighten requires BGR input, got {img.space.value}")
    if not 0 <= int(v) <= 255:
        raise ValueError(f"offset must be an 8-bit value, got {v}")
    hsv = convert_color(img, ColorSpace.HSV).data.copy()
    hsv[:, :, 2] = np.minimum(hsv[:, :, 2].astype(np.int64) + int(v), 255).astype(np.uint8)
    return convert_color(ImageBuffer(ColorSpace.HSV, hsv), ColorSpace.BGR)


def _convolve_plane(plane: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Correlation with replicate padding, float64 accumulation."""
    k = weights.shape[0]
    pad = k // 2
    padded = replicate_pad(plane.astype(np.float64), pad, pad)
    h, w = plane.shape
    acc = np.zeros((h, w), dtype=np.float64)
    for dy in range(k):
        for dx in range(k):
            wgt = weights[dy, dx]
            if wgt != 0.0:
                acc += wgt * padded[dy : dy + h, dx : dx + w]
    return acc


def convolve(img: ImageBuffer, kernel: Kernel) -> ImageBuffer:
    """2-D correlation of a gray image with the kernel (replicate border)."""
    _require_gray(img, "convolve")
    return ImageBuffer(ColorSpace.GRAY, clamp_u8(_convolve_plane(img.data, kernel.weights)))


def sharpen(img: ImageBuffer) -> ImageBuffer:
    """Apply the fixed center-9 sharpening kernel, per channel for color."""
    if img.channels == 1:
        return ImageBuffer(img.space, clamp_u8(_convolve_plane(img.data, SHARPEN_KERNEL.weights)))
    planes = [
        clamp_u8(_convolve_plane(img.data[:, :, c], SHARPEN_KERNEL.weights)) for c in range(3)
    ]
    return ImageBuffer(img.space, np.stack(planes, axis=2))


def unsharp_kernel(alpha: float) -> Kernel:
    """Blend the cross/plus sharpening matrices: (alpha*K1 + K2)/(alpha+1)."""
    alpha = float(alpha)
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    return Kernel((alpha * _UNSHARP_K1 + _UNSHARP_K2) / (alpha + 1.0))


def gamma_correct(img: ImageBuffer, gamma: float) -> ImageBuffer:
    """Power-law mapping 255*(I/255)^(1/gamma); gamma < 1 darkens."""
    _require_gray(img, "gamma_correct")
    gamma = float(gamma)
    if gamma <= 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    lut = clamp_u8(255.0 * (np.arange(256) / 255.0) ** (1.0 / gamma))
    return ImageBuffer(ColorSpace.GRAY, lut[img.data])


def complement(img: ImageBuffer) -> ImageBuffer:
    """Invert intensities: 255 - I."""
    _require_gray(img, "complement")
    return ImageBuffer(ColorSpace.GRAY, (255 - img.data.astype(np.int64)).astype(np.uint8))


def gaussian_kernel(side: int) -> Kernel:
    """Normalized 2-D Gaussian; sigma derived from the aperture size."""
    side = require_odd(side)
    sigma = 0.3 * ((side - 1) * 0.5 - 1.0) + 0.8
    half = side // 2
    ax = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(ax[:, None] ** 2 + ax[None, :] ** 2) / (2.0 * sigma * sigma))
    return Kernel(g / g.sum())


def gaussian_blur(img: ImageBuffer, side: int = 7) -> ImageBuffer:
    _require_gray(img, "gaussian_blur")
    return convolve(img, gaussian_kernel(side))


def median_filter(img: ImageBuffer, side: int = 7) -> ImageBuffer:
    """Replace each pixel with the median of its side x side neighborhood."""
    _require_gray(img, "median_filter")
    side = require_odd(side)
    if side == 1:
        return img
    pad = side // 2
    padded = replicate_pad(img.data, pad, pad)
    windows = np.lib.stride_tricks.sliding_window_view(padded, (side, side))
    return ImageBuffer(ColorSpace.GRAY, np.median(windows, axis=(-2, -1)).astype(np.uint8))


def amplify_noise(img: ImageBuffer, beta: float) -> ImageBuffer:
    """Boost the residual against a 7x7 Gaussian blur: I + beta*(I - blur)."""
    _require_gray(img, "amplify_noise")
    beta = float(beta)
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    blurred = gaussian_blur(img, 7).data.astype(np.float64)
    raw = img.data.astype(np.float64)
    return ImageBuffer(ColorSpace.GRAY, clamp_u8(raw + beta * (raw - blurred)))
