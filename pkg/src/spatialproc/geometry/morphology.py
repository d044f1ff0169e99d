"""Binary morphology, hole filling, and connected-component analysis.

Dilation treats pixels outside the image as background while erosion
treats them as foreground. With that pairing the erosion/dilation
duality and the idempotence of opening hold exactly on the finite
grid, not just away from borders.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._util import require_odd
from ..buffer import ColorSpace, ImageBuffer


@dataclass(frozen=True)
class StructuringElement:
    side: int
    mask: np.ndarray
    shape: str

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool)
        if m.shape != (self.side, self.side):
            raise ValueError(f"mask shape {m.shape} does not match side {self.side}")
        if not m.any():
            raise ValueError("structuring element needs at least one true cell")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @classmethod
    def square(cls, side: int) -> "StructuringElement":
        side = require_odd(side)
        return cls(side, np.ones((side, side), dtype=bool), "square")

    @classmethod
    def diagonal(cls, side: int) -> "StructuringElement":
        side = require_odd(side)
        return cls(side, np.eye(side, dtype=bool), "diagonal")

    @classmethod
    def anti_diagonal(cls, side: int) -> "StructuringElement":
        side = require_odd(side)
        return cls(side, np.fliplr(np.eye(side, dtype=bool)), "anti-diagonal")

    @classmethod
    def disk(cls, radius: int) -> "StructuringElement":
        radius = int(radius)
        if radius < 0:
            raise ValueError(f"radius must be >= 0, got {radius}")
        side = 2 * radius + 1
        ax = np.arange(-radius, radius + 1)
        mask = ax[:, None] ** 2 + ax[None, :] ** 2 <= radius * radius
        return cls(side, mask, "disk")

    def offsets(self) -> np.ndarray:
        """True cells as (dy, dx) offsets from the center."""
        ys, xs = np.nonzero(self.mask)
        half = self.side // 2
        return np.stack([ys - half, xs - half], axis=1)


def _require_binary(img: ImageBuffer, op: str) -> None:
    if img.space is not ColorSpace.BINARY:
        raise TypeError(f"{op} requires a binary image, got {img.space.value}")


def _shifted(mask: np.ndarray, dy: int, dx: int, fill: bool) -> np.ndarray:
    """mask translated by (dy, dx), vacated cells set to ``fill``."""
    h, w = mask.shape
    out = np.full((h, w), fill, dtype=bool)
    ys_src = slice(max(0, -dy), min(h, h - dy))
    xs_src = slice(max(0, -dx), min(w, w - dx))
    ys_dst = slice(max(0, dy), min(h, h + dy))
    xs_dst = slice(max(0, dx), min(w, w + dx))
    if ys_src.start < ys_src.stop and xs_src.start < xs_src.stop:
        out[ys_dst, xs_dst] = mask[ys_src, xs_src]
    return out


def _dilate(mask: np.ndarray, elem: StructuringElement) -> np.ndarray:
    out = np.zeros_like(mask)
    for dy, dx in elem.offsets():
        out |= _shifted(mask, dy, dx, fill=False)
    return out


def _erode(mask: np.ndarray, elem: StructuringElement) -> np.ndarray:
    out = np.ones_like(mask)
    for dy, dx in elem.offsets():
        out &= _shifted(mask, -dy, -dx, fill=True)
    return out


def morph(img: ImageBuffer, elem: StructuringElement, kind: str) -> ImageBuffer:
    """Apply dilate/erode/open/close with the given structuring element."""
    _require_binary(img, "morph")
    mask = img.data > 0
    if kind == "dilate":
        out = _dilate(mask, elem)
    elif kind == "erode":
        out = _erode(mask, elem)
    elif kind == "open":
        out = _dilate(_erode(mask, elem), elem)
    elif kind == "close":
        out = _erode(_dilate(mask, elem), elem)
    else:
        raise ValueError(f"unknown morphology kind '{kind}'")
    return ImageBuffer(ColorSpace.BINARY, out.astype(np.uint8) * 255)


def _row_runs(row: np.ndarray) -> list[tuple[int, int]]:
    idx = np.flatnonzero(row)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate([idx[:1], idx[breaks + 1]])
    ends = np.concatenate([idx[breaks], idx[-1:]])
    return list(zip(starts.tolist(), ends.tolist()))


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _label_mask(mask: np.ndarray, connectivity: int) -> tuple[np.ndarray, int]:
    """Run-based two-pass labeling; labels are 1..n in raster order."""
    h, w = mask.shape
    uf = _UnionFind()
    reach = 1 if connectivity == 8 else 0
    rows: list[list[tuple[int, int, int]]] = []
    prev: list[tuple[int, int, int]] = []
    for y in range(h):
        cur = []
        p = 0
        for s, e in _row_runs(mask[y]):
            rid = uf.make()
            # prev runs ending before s-reach can never touch later runs either
            while p < len(prev) and prev[p][1] < s - reach:
                p += 1
            q = p
            while q < len(prev) and prev[q][0] <= e + reach:
                uf.union(rid, prev[q][2])
                q += 1
            cur.append((s, e, rid))
        rows.append(cur)
        prev = cur

    labels = np.zeros((h, w), dtype=np.int32)
    remap: dict[int, int] = {}
    for y, runs in enumerate(rows):
        for s, e, rid in runs:
            root = uf.find(rid)
            if root not in remap:
                remap[root] = len(remap) + 1
            labels[y, s : e + 1] = remap[root]
    return labels, len(remap)


@dataclass(frozen=True)
class Region:
    """One labeled component: inclusive bounding box, area, h/w ratio."""

    label: int
    x0: int
    y0: int
    x1: int
    y1: int
    area: int

    @property
    def ratio(self) -> float:
        return (self.y1 - self.y0 + 1) / (self.x1 - self.x0 + 1)


@dataclass(frozen=True)
class LabeledRegions:
    label_map: np.ndarray = field(repr=False)
    regions: tuple[Region, ...]

    def __post_init__(self):
        lm = np.asarray(self.label_map, dtype=np.int32)
        lm = lm.copy()
        lm.flags.writeable = False
        object.__setattr__(self, "label_map", lm)


def connected_components(img: ImageBuffer) -> LabeledRegions:
    """8-connected labeling of foreground with per-region statistics."""
    _require_binary(img, "connected_components")
    labels, count = _label_mask(img.data > 0, connectivity=8)
    regions = []
    for lab in range(1, count + 1):
        ys, xs = np.nonzero(labels == lab)
        regions.append(
            Region(
                label=lab,
                x0=int(xs.min()),
                y0=int(ys.min()),
                x1=int(xs.max()),
                y1=int(ys.max()),
                area=int(ys.size),
            )
        )
    return LabeledRegions(label_map=labels, regions=tuple(regions))


def fill_holes(img: ImageBuffer) -> ImageBuffer:
    """Turn background regions not 4-connected to the border into foreground."""
    _require_binary(img, "fill_holes")
    fg = img.data > 0
    labels, count = _label_mask(~fg, connectivity=4)
    if count == 0:
        return img
    border = np.unique(
        np.concatenate([labels[0], labels[-1], labels[:, 0], labels[:, -1]])
    )
    outside = np.isin(labels, border[border > 0])
    filled = fg | (~fg & ~outside)
    return ImageBuffer(ColorSpace.BINARY, filled.astype(np.uint8) * 255)
