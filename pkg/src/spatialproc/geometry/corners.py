"""Harris corner detection.

Structure tensor from 3x3 Sobel gradients, smoothed with a 3x3 box
window; response R = det(M) - k*trace(M)^2. Points survive a 3x3
non-maximum suppression and a threshold relative to the strongest
response.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._util import replicate_pad
from ..buffer import ColorSpace, ImageBuffer
from ..enhance import median_filter
from .edges import sobel_gradients


@dataclass(frozen=True)
class CornerSet:
    """Detected corners as (x, y) points with their responses."""

    points: tuple[tuple[int, int], ...]
    responses: tuple[float, ...]
    response_max: float

    def to_dicts(self) -> list[dict]:
        return [
            {"x": x, "y": y, "response": r} for (x, y), r in zip(self.points, self.responses)
        ]


def _box_mean(plane: np.ndarray) -> np.ndarray:
    padded = replicate_pad(plane, 1, 1)
    h, w = plane.shape
    acc = np.zeros((h, w))
    for dy in range(3):
        for dx in range(3):
            acc += padded[dy : dy + h, dx : dx + w]
    return acc / 9.0


def harris(
    img: ImageBuffer, k: float = 0.04, rel_thresh: float = 0.01, median_side: int = 5
) -> CornerSet:
    """Corner points whose response reaches rel_thresh * max response."""
    if img.space is not ColorSpace.GRAY:
        raise TypeError(f"harris requires a gray image, got {img.space.value}")
    k = float(k)
    rel_thresh = float(rel_thresh)
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    if not 0.0 < rel_thresh < 1.0:
        raise ValueError(f"rel_thresh must lie in (0, 1), got {rel_thresh}")

    filtered = median_filter(img, median_side)
    gx, gy = sobel_gradients(filtered.data.astype(np.float64))
    sxx = _box_mean(gx * gx)
    syy = _box_mean(gy * gy)
    sxy = _box_mean(gx * gy)

    det = sxx * syy - sxy * sxy
    trace = sxx + syy
    response = det - k * trace * trace

    r_max = float(response.max())
    if r_max <= 0.0:
        return CornerSet(points=(), responses=(), response_max=r_max)

    h, w = response.shape
    padded = np.full((h + 2, w + 2), -np.inf)
    padded[1:-1, 1:-1] = response
    local_max = np.ones((h, w), dtype=bool)
    for dy in range(3):
        for dx in range(3):
            if dy == 1 and dx == 1:
                continue
            local_max &= response >= padded[dy : dy + h, dx : dx + w]

    keep = local_max & (response >= rel_thresh * r_max)
    ys, xs = np.nonzero(keep)
    order = np.lexsort((xs, ys, -response[ys, xs]))
    points = tuple((int(xs[i]), int(ys[i])) for i in order)
    responses = tuple(float(response[ys[i], xs[i]]) for i in order)
    return CornerSet(points=points, responses=responses, response_max=r_max)
