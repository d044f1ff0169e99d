"""Image similarity: SSIM, normalized mutual information, blended score.

SSIM uses 11x11 Gaussian-weighted windows (sigma 1.5) with the standard
stabilizers c1 = (0.01*255)^2 and c2 = (0.03*255)^2, averaged over all
fully-interior window positions. NMI is (H1 + H2) / H12 from 256-bin
marginal and 256x256 joint histograms, always in [1, 2]. The blended
score rescales NMI to [0, 1] and mixes: 100 * (w*ssim + (1-w)*(nmi-1)),
clamped to [0, 100], so identical images score 100 at any weight.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .buffer import ColorSpace, ImageBuffer

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
_C1 = (0.01 * 255.0) ** 2
_C2 = (0.03 * 255.0) ** 2


@dataclass(frozen=True)
class SimilarityReport:
    ssim: float
    nmi: float
    blended: float
    weight_w: float

    def to_json(self) -> str:
        return json.dumps(
            {"ssim": self.ssim, "nmi": self.nmi, "blended": self.blended, "w": self.weight_w},
            sort_keys=True,
        )


def _check_pair(a: ImageBuffer, b: ImageBuffer, op: str) -> None:
    if a.space is not ColorSpace.GRAY or b.space is not ColorSpace.GRAY:
        raise TypeError(f"{op} requires gray images")
    if a.data.shape != b.data.shape:
        raise ValueError(f"{op} requires equal dimensions, got {a.data.shape} vs {b.data.shape}")


def _gaussian_weights() -> np.ndarray:
    half = SSIM_WINDOW // 2
    ax = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(ax**2) / (2.0 * SSIM_SIGMA**2))
    return g / g.sum()


def _window_mean(plane: np.ndarray, g: np.ndarray) -> np.ndarray:
    # Separable weighted mean, cropped to positions where the window fits.
    half = len(g) // 2
    out = ndimage.correlate1d(plane, g, axis=0, mode="nearest")
    out = ndimage.correlate1d(out, g, axis=1, mode="nearest")
    return out[half:-half, half:-half]


def ssim(a: ImageBuffer, b: ImageBuffer) -> float:
    """Mean structural similarity over sliding Gaussian windows."""
    _check_pair(a, b, "ssim")
    if a.height < SSIM_WINDOW or a.width < SSIM_WINDOW:
        raise ValueError(f"ssim needs images at least {SSIM_WINDOW}x{SSIM_WINDOW}")
    x = a.data.astype(np.float64)
    y = b.data.astype(np.float64)
    g = _gaussian_weights()

    mu_x = _window_mean(x, g)
    mu_y = _window_mean(y, g)
    var_x = _window_mean(x * x, g) - mu_x * mu_x
    var_y = _window_mean(y * y, g) - mu_y * mu_y
    cov = _window_mean(x * y, g) - mu_x * mu_y

    num = (2.0 * mu_x * mu_y + _C1) * (2.0 * cov + _C2)
    den = (mu_x * mu_x + mu_y * mu_y + _C1) * (var_x + var_y + _C2)
    return float(np.mean(num / den))


def _entropy_bits(counts: np.ndarray, total: int) -> float:
    p = counts[counts > 0].astype(np.float64) / total
    return float(-np.sum(p * np.log2(p)))


def nmi(a: ImageBuffer, b: ImageBuffer) -> float:
    """Normalized mutual information (H1 + H2) / H12 in [1, 2]."""
    _check_pair(a, b, "nmi")
    av = a.data.ravel().astype(np.int64)
    bv = b.data.ravel().astype(np.int64)
    total = av.size

    joint = np.bincount(av * 256 + bv, minlength=65536)
    h_joint = _entropy_bits(joint, total)
    if h_joint == 0.0:
        # Both images constant: matching value is perfect dependence,
        # differing values carry no shared information.
        return 2.0 if av[0] == bv[0] else 1.0
    h_a = _entropy_bits(np.bincount(av, minlength=256), total)
    h_b = _entropy_bits(np.bincount(bv, minlength=256), total)
    return (h_a + h_b) / h_joint


def blended_score(a: ImageBuffer, b: ImageBuffer, w: float = 0.5) -> SimilarityReport:
    """Composite similarity on a 0..100 scale; w weights SSIM vs NMI."""
    w = float(w)
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"w must lie in [0, 1], got {w}")
    s = ssim(a, b)
    n = nmi(a, b)
    blended = 100.0 * (w * s + (1.0 - w) * (n - 1.0))
    return SimilarityReport(
        ssim=s, nmi=n, blended=min(max(blended, 0.0), 100.0), weight_w=w
    )
