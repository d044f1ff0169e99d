"""Hough transforms for lines and circles.

Lines vote in a (rho, theta) accumulator with theta cells at integer
multiples of the resolution over [0, 180) and rho cells at multiples of
the rho resolution spanning +/- the image diagonal. Circles use the
two-stage gradient method: edge pixels vote for centers along their
gradient direction, surviving centers pick the radius whose distance
histogram peaks inside the allowed range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._util import round_half_away
from ..buffer import ColorSpace, ImageBuffer
from .edges import canny_adaptive, sobel_gradients


@dataclass(frozen=True)
class Line:
    """Normal form rho = x*cos(theta) + y*sin(theta), theta in [0, pi)."""

    rho: float
    theta: float
    votes: int = 0

    def __post_init__(self):
        if not 0.0 <= self.theta < math.pi:
            raise ValueError(f"theta must lie in [0, pi), got {self.theta}")

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)

    def to_dict(self) -> dict:
        return {"rho": self.rho, "theta_deg": self.theta_deg, "votes": self.votes}


@dataclass(frozen=True)
class Circle:
    cx: int
    cy: int
    r: int

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError(f"radius must be > 0, got {self.r}")

    def to_dict(self) -> dict:
        return {"cx": self.cx, "cy": self.cy, "r": self.r}


def hough_lines(
    edges: ImageBuffer, rho_res: float = 1.0, theta_res: float = 1.0, votes: int = 100
) -> list[Line]:
    """All accumulator cells reaching ``votes``, strongest first.

    ``theta_res`` is in degrees; returned thetas are cell centers in
    radians. Ties are ordered by (rho, theta) so output is reproducible.
    """
    if edges.space is not ColorSpace.BINARY:
        raise TypeError(f"hough_lines requires a binary edge map, got {edges.space.value}")
    if rho_res <= 0:
        raise ValueError(f"rho_res must be > 0, got {rho_res}")
    if not 0 < theta_res <= 180:
        raise ValueError(f"theta_res must lie in (0, 180], got {theta_res}")
    if votes < 1:
        raise ValueError(f"votes must be >= 1, got {votes}")

    ys, xs = np.nonzero(edges.data)
    if ys.size == 0:
        return []

    n_theta = int(math.ceil(180.0 / theta_res - 1e-9))
    thetas = np.arange(n_theta) * math.radians(theta_res)
    cos_t = np.cos(thetas)
    sin_t = np.sin(thetas)

    diag = math.hypot(edges.width, edges.height)
    n_half = int(math.ceil(diag / rho_res))
    acc = np.zeros((2 * n_half + 1, n_theta), dtype=np.int64)

    xs_f = xs.astype(np.float64)
    ys_f = ys.astype(np.float64)
    chunk = 8192
    for start in range(0, xs_f.size, chunk):
        rho = xs_f[start : start + chunk, None] * cos_t + ys_f[start : start + chunk, None] * sin_t
        idx = np.rint(rho / rho_res).astype(np.int64) + n_half
        for j in range(n_theta):
            acc[:, j] += np.bincount(idx[:, j], minlength=acc.shape[0])

    ri, ti = np.nonzero(acc >= votes)
    found = [
        Line(
            rho=(int(r) - n_half) * rho_res,
            theta=float(thetas[t]),
            votes=int(acc[r, t]),
        )
        for r, t in zip(ri, ti)
    ]
    found.sort(key=lambda ln: (-ln.votes, ln.rho, ln.theta))
    return found


def roof_angle(lines: list[Line]) -> list[float]:
    """Per-line orientation in degrees via (90 + theta) mod 180."""
    return [math.fmod(90.0 + ln.theta_deg, 180.0) for ln in lines]


def hough_circles(
    img: ImageBuffer, r_min: int, r_max: int, votes: int = 100
) -> list[Circle]:
    """Gradient-voting circle detection with radii in [r_min, r_max]."""
    if img.space is not ColorSpace.GRAY:
        raise TypeError(f"hough_circles requires a gray image, got {img.space.value}")
    r_min, r_max = int(r_min), int(r_max)
    if not 0 < r_min <= r_max:
        raise ValueError(f"need 0 < r_min <= r_max, got [{r_min}, {r_max}]")

    edges = canny_adaptive(img, sigma=0.5, median_side=1)
    ys, xs = np.nonzero(edges.data)
    if ys.size == 0:
        return []

    gx, gy = sobel_gradients(img.data.astype(np.float64))
    mag = np.hypot(gx, gy)
    h, w = img.data.shape
    acc = np.zeros((h, w), dtype=np.int64)

    m = mag[ys, xs]
    ok = m > 0
    ys, xs, m = ys[ok], xs[ok], m[ok]
    ux = gx[ys, xs] / m
    uy = gy[ys, xs] / m
    for r in range(r_min, r_max + 1):
        for sign in (1.0, -1.0):
            cx = np.rint(xs + sign * r * ux).astype(np.int64)
            cy = np.rint(ys + sign * r * uy).astype(np.int64)
            inside = (cx >= 0) & (cx < w) & (cy >= 0) & (cy < h)
            np.add.at(acc, (cy[inside], cx[inside]), 1)

    # direction quantization smears votes; score support over 5x5 cells
    pad = 2
    padded = np.zeros((h + 2 * pad, w + 2 * pad), dtype=np.int64)
    padded[pad:-pad, pad:-pad] = acc
    support = sum(
        padded[dy : dy + h, dx : dx + w] for dy in range(5) for dx in range(5)
    )

    cys, cxs = np.nonzero(support >= votes)
    if cys.size == 0:
        return []
    order = np.lexsort((cxs, cys, -support[cys, cxs]))
    centers: list[tuple[int, int]] = []
    for i in order:
        cy, cx = int(cys[i]), int(cxs[i])
        if all((cy - ky) ** 2 + (cx - kx) ** 2 >= r_min * r_min for ky, kx in centers):
            centers.append((cy, cx))

    # the vote cloud is symmetric about the true center, so its centroid
    # over the full smear extent corrects the residual bias
    reach = (r_max - r_min) + 3
    circles = []
    for cy, cx in centers:
        y0, y1 = max(0, cy - reach), min(h, cy + reach + 1)
        x0, x1 = max(0, cx - reach), min(w, cx + reach + 1)
        window = acc[y0:y1, x0:x1].astype(np.float64)
        wy, wx = np.mgrid[y0:y1, x0:x1]
        total = window.sum()
        fy = float((window * wy).sum() / total) if total > 0 else float(cy)
        fx = float((window * wx).sum() / total) if total > 0 else float(cx)

        dist = np.rint(np.hypot(xs - fx, ys - fy)).astype(np.int64)
        in_range = (dist >= r_min) & (dist <= r_max)
        if not in_range.any():
            continue
        counts = np.bincount(dist[in_range] - r_min, minlength=r_max - r_min + 1)
        circles.append(
            Circle(
                cx=int(round_half_away(fx)),
                cy=int(round_half_away(fy)),
                r=r_min + int(np.argmax(counts)),
            )
        )
    return circles
