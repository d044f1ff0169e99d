"""Rotation about the image center with cubic-spline interpolation.

Positive angles turn counterclockwise on screen (origin top-left). The
canvas grows to hold the rotated extent and uncovered pixels are 0.
Exact quarter turns are index remaps so no interpolation error creeps
into 90-degree steps.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from .._util import clamp_u8
from ..buffer import ColorSpace, ImageBuffer


def rotate(img: ImageBuffer, angle: float) -> ImageBuffer:
    angle = float(angle)
    quarter, rem = divmod(angle, 90.0)
    if rem == 0.0:
        k = int(quarter) % 4
        out = img.data if k == 0 else np.rot90(img.data, k, axes=(0, 1))
        out = np.ascontiguousarray(out)
    else:
        data = img.data.astype(np.float64)
        rotated = ndimage.rotate(
            data, angle, axes=(1, 0), reshape=True, order=3, mode="constant", cval=0.0
        )
        out = clamp_u8(rotated)
    if img.space is ColorSpace.BINARY:
        out = np.where(out >= 128, 255, 0).astype(np.uint8)
    return ImageBuffer(img.space, out)


def rotate_point(
    point: tuple[float, float], size: tuple[int, int], angle: float
) -> tuple[float, float]:
    """Where (x, y) in a (width, height) image lands under rotate().

    Mirrors the output-canvas math of :func:`rotate`, including the
    expanded shape, so detected coordinates can be traced through a
    rotation.
    """
    x, y = float(point[0]), float(point[1])
    w, h = int(size[0]), int(size[1])
    a = math.radians(float(angle))
    cos_a, sin_a = math.cos(a), math.sin(a)

    # Output canvas bounds from the rotated corner box (row, col) space.
    corners_rc = np.array([[0, 0], [0, w], [h, 0], [h, w]], dtype=np.float64).T
    rot = np.array([[cos_a, sin_a], [-sin_a, cos_a]])
    spans = rot @ corners_rc
    out_h, out_w = (np.ptp(spans, axis=1) + 0.5).astype(int)

    cy_in, cx_in = (h - 1) / 2.0, (w - 1) / 2.0
    cy_out, cx_out = (out_h - 1) / 2.0, (out_w - 1) / 2.0
    dr, dc = y - cy_in, x - cx_in
    # rotate() maps output->input with `rot`; points go through its inverse
    r_out = cos_a * dr - sin_a * dc + cy_out
    c_out = sin_a * dr + cos_a * dc + cx_out
    return (c_out, r_out)
