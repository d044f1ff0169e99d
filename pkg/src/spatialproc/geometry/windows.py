"""Window localization by corner densification and morphological cleanup.

The chain: median-filtered adaptive Canny; diagonal edge removal via
openings with diagonal/anti-diagonal elements; Harris corners thickened
by a 9x9 dilation and consolidated by an 11x11 opening; iterative
disk dilation to reconstruct fragmented boundaries; border connection,
hole filling, and opening/closing cleanup; finally a height-to-width
ratio test that drops door-shaped components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..buffer import ColorSpace, ImageBuffer, convert_color
from .corners import harris
from .edges import canny_adaptive
from .morphology import StructuringElement, connected_components, fill_holes, morph


@dataclass(frozen=True)
class WindowConfig:
    canny_sigma: float = 0.5
    median_side: int = 5
    harris_k: float = 0.04
    harris_rel_thresh: float = 0.01
    door_ratio: float = 1.8
    reconstruct_radius: int = 5
    reconstruct_iterations: int = 10


def localize_windows(
    img: ImageBuffer, cfg: WindowConfig = WindowConfig()
) -> tuple[ImageBuffer, ImageBuffer]:
    """Return (binary window mask, input with mask painted pure red)."""
    if img.space is not ColorSpace.BGR:
        raise TypeError(f"localize_windows requires BGR input, got {img.space.value}")
    gray = convert_color(img, ColorSpace.GRAY)

    edges = canny_adaptive(gray, sigma=cfg.canny_sigma, median_side=cfg.median_side)

    diag = morph(edges, StructuringElement.diagonal(7), "open").data > 0
    anti = morph(edges, StructuringElement.anti_diagonal(7), "open").data > 0
    straight = (edges.data > 0) & ~(diag | anti)
    work = ImageBuffer(ColorSpace.BINARY, straight.astype(np.uint8) * 255)

    corners = harris(gray, cfg.harris_k, cfg.harris_rel_thresh, cfg.median_side)
    corner_mask = np.zeros(gray.data.shape, dtype=np.uint8)
    for x, y in corners.points:
        corner_mask[y, x] = 255
    dense = morph(ImageBuffer(ColorSpace.BINARY, corner_mask), StructuringElement.square(9), "dilate")
    dense = morph(dense, StructuringElement.square(11), "open")

    combined = ImageBuffer(
        ColorSpace.BINARY, np.maximum(work.data, dense.data)
    )
    disk = StructuringElement.disk(cfg.reconstruct_radius)
    for _ in range(cfg.reconstruct_iterations):
        combined = morph(combined, disk, "dilate")

    combined = morph(combined, StructuringElement.square(3), "dilate")
    combined = fill_holes(combined)
    for side in (7, 9):
        combined = morph(combined, StructuringElement.square(side), "open")
        combined = morph(combined, StructuringElement.square(side), "close")

    regions = connected_components(combined)
    mask = np.zeros(gray.data.shape, dtype=bool)
    for region in regions.regions:
        if region.ratio <= cfg.door_ratio:
            mask |= regions.label_map == region.label

    overlay = img.data.copy()
    overlay[mask] = (0, 0, 255)  # pure red in BGR byte order
    return (
        ImageBuffer(ColorSpace.BINARY, mask.astype(np.uint8) * 255),
        ImageBuffer(ColorSpace.BGR, overlay),
    )
