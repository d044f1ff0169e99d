"""Shared numeric helpers.

All pixel arithmetic in this package happens in float64 and is quantized
back to 8 bits with round-half-away-from-zero followed by a clamp to
[0, 255], so results are bit-reproducible across platforms.
"""

from __future__ import annotations

import numpy as np


def round_half_away(x: np.ndarray | float) -> np.ndarray | float:
    """Round to nearest integer, halves away from zero (unlike np.round)."""
    return np.trunc(x + np.copysign(0.5, x))


def clamp_u8(x: np.ndarray) -> np.ndarray:
    """Round-half-away and clamp a float array to uint8 range."""
    return np.clip(round_half_away(np.asarray(x, dtype=np.float64)), 0.0, 255.0).astype(np.uint8)


def require_odd(side: int, name: str = "side") -> int:
    side = int(side)
    if side < 1 or side % 2 == 0:
        raise ValueError(f"{name} must be a positive odd integer, got {side}")
    return side


def replicate_pad(plane: np.ndarray, pad_y: int, pad_x: int) -> np.ndarray:
    """Edge-replicating pad of a single 2-D plane."""
    return np.pad(plane, ((pad_y, pad_y), (pad_x, pad_x)), mode="edge")
