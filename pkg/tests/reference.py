"""Brute-force reference implementations the fast code is checked against.

Everything here is deliberately naive: nested loops, explicit index
clamping, dict-based entropies. These stay independent of the library
internals so they can serve as oracles.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

SSIM_HALF = 5
SSIM_SIGMA = 1.5
SSIM_C1 = (0.01 * 255.0) ** 2
SSIM_C2 = (0.03 * 255.0) ** 2


def convolve_ref(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Replicate-border correlation, float64, round half away, clamp."""
    h, w = img.shape
    k = kernel.shape[0]
    half = k // 2
    out = np.zeros((h, w), np.uint8)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for dy in range(-half, half + 1):
                for dx in range(-half, half + 1):
                    yy = min(max(y + dy, 0), h - 1)
                    xx = min(max(x + dx, 0), w - 1)
                    acc += kernel[dy + half, dx + half] * float(img[yy, xx])
            rounded = math.trunc(acc + math.copysign(0.5, acc))
            out[y, x] = min(max(rounded, 0), 255)
    return out


def median_ref(img: np.ndarray, side: int) -> np.ndarray:
    h, w = img.shape
    half = side // 2
    out = np.zeros((h, w), np.uint8)
    for y in range(h):
        for x in range(w):
            vals = []
            for dy in range(-half, half + 1):
                for dx in range(-half, half + 1):
                    yy = min(max(y + dy, 0), h - 1)
                    xx = min(max(x + dx, 0), w - 1)
                    vals.append(img[yy, xx])
            out[y, x] = sorted(vals)[len(vals) // 2]
    return out


def gaussian_kernel_ref(side: int) -> np.ndarray:
    sigma = 0.3 * ((side - 1) * 0.5 - 1.0) + 0.8
    half = side // 2
    kernel = np.zeros((side, side))
    for dy in range(-half, half + 1):
        for dx in range(-half, half + 1):
            kernel[dy + half, dx + half] = math.exp(-(dx * dx + dy * dy) / (2 * sigma * sigma))
    return kernel / kernel.sum()


def ssim_ref(a: np.ndarray, b: np.ndarray) -> float:
    """Loop over every interior window, Gaussian-weighted moments."""
    x = a.astype(np.float64)
    y = b.astype(np.float64)
    ax = np.arange(-SSIM_HALF, SSIM_HALF + 1, dtype=np.float64)
    g1 = np.exp(-(ax**2) / (2 * SSIM_SIGMA**2))
    g1 /= g1.sum()
    weights = np.outer(g1, g1)
    h, w = x.shape
    values = []
    for i in range(SSIM_HALF, h - SSIM_HALF):
        for j in range(SSIM_HALF, w - SSIM_HALF):
            wx = x[i - SSIM_HALF : i + SSIM_HALF + 1, j - SSIM_HALF : j + SSIM_HALF + 1]
            wy = y[i - SSIM_HALF : i + SSIM_HALF + 1, j - SSIM_HALF : j + SSIM_HALF + 1]
            mx = float((weights * wx).sum())
            my = float((weights * wy).sum())
            vx = float((weights * wx * wx).sum()) - mx * mx
            vy = float((weights * wy * wy).sum()) - my * my
            cov = float((weights * wx * wy).sum()) - mx * my
            num = (2 * mx * my + SSIM_C1) * (2 * cov + SSIM_C2)
            den = (mx * mx + my * my + SSIM_C1) * (vx + vy + SSIM_C2)
            values.append(num / den)
    return float(np.mean(values))


def _entropy(counter: Counter, total: int) -> float:
    return -sum((c / total) * math.log2(c / total) for c in counter.values())


def nmi_ref(a: np.ndarray, b: np.ndarray) -> float:
    av = [int(v) for v in a.ravel()]
    bv = [int(v) for v in b.ravel()]
    n = len(av)
    h_a = _entropy(Counter(av), n)
    h_b = _entropy(Counter(bv), n)
    h_ab = _entropy(Counter(zip(av, bv)), n)
    if h_ab == 0.0:
        return 2.0 if av[0] == bv[0] else 1.0
    return (h_a + h_b) / h_ab
