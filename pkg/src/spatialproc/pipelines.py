"""Bidirectional enhancement pipelines and grid-search tuning.

Forward: unsharp convolution -> gamma correction -> complement ->
noise amplification. Reverse: 7x7 Gaussian blur -> complement -> gamma
correction. Both are deterministic stage compositions on grayscale.
The tuner exhaustively scores a parameter grid against a target image
with the blended SSIM+NMI metric and reports the argmax with a
first-in-grid-order tie-break.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .buffer import ImageBuffer
from .enhance import amplify_noise, complement, convolve, gamma_correct, gaussian_blur, unsharp_kernel
from .geometry.cue import CueConfig, estimate_cue_angle
from .geometry.transform import rotate
from .metrics import SimilarityReport, blended_score

FORWARD_ALPHA_RANGE = (0.05, 0.5)
FORWARD_GAMMA_RANGE = (0.15, 0.35)
FORWARD_BETA_RANGE = (1.6, 2.1)
REVERSE_GAMMA_RANGE = (2.5, 5.0)


def _check_range(name: str, value: float, lo: float, hi: float) -> None:
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside [{lo}, {hi}] (pass unchecked=True to widen)")


@dataclass(frozen=True)
class ForwardParams:
    alpha: float
    gamma: float
    beta: float
    unchecked: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.unchecked:
            _check_range("alpha", self.alpha, *FORWARD_ALPHA_RANGE)
            _check_range("gamma", self.gamma, *FORWARD_GAMMA_RANGE)
            _check_range("beta", self.beta, *FORWARD_BETA_RANGE)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}


@dataclass(frozen=True)
class ReverseParams:
    gamma: float
    unchecked: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.unchecked:
            _check_range("gamma", self.gamma, *REVERSE_GAMMA_RANGE)

    def to_dict(self) -> dict:
        return {"gamma": self.gamma}


@dataclass(frozen=True)
class GridSpec:
    """Per-parameter (min, max, step) axes, iterated in sorted key order."""

    axes: dict[str, tuple[float, float, float]]

    def __post_init__(self):
        for name, (lo, hi, step) in self.axes.items():
            if step <= 0:
                raise ValueError(f"grid step for {name} must be > 0, got {step}")
            if lo > hi:
                raise ValueError(f"grid for {name} has min {lo} > max {hi}")

    def values(self, name: str) -> list[float]:
        lo, hi, step = self.axes[name]
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        # rounding keeps decimal grid points exactly representable
        return [round(lo + i * step, 10) for i in range(n)]

    def points(self) -> list[dict[str, float]]:
        names = sorted(self.axes)
        combos = itertools.product(*(self.values(n) for n in names))
        return [dict(zip(names, combo)) for combo in combos]

    @classmethod
    def forward_default(cls) -> "GridSpec":
        return cls(
            axes={
                "alpha": (*FORWARD_ALPHA_RANGE, 0.05),
                "beta": (*FORWARD_BETA_RANGE, 0.05),
                "gamma": (*FORWARD_GAMMA_RANGE, 0.01),
            }
        )

    @classmethod
    def reverse_default(cls) -> "GridSpec":
        return cls(axes={"gamma": (*REVERSE_GAMMA_RANGE, 0.05)})

    @classmethod
    def from_json(cls, text: str) -> "GridSpec":
        obj = json.loads(text)
        axes = {}
        for name, spec in obj.items():
            axes[name] = (float(spec["min"]), float(spec["max"]), float(spec["step"]))
        return cls(axes=axes)


@dataclass(frozen=True)
class TuneResult:
    direction: str
    best_params: ForwardParams | ReverseParams
    best: SimilarityReport
    log: tuple[tuple[dict, float], ...]

    def to_json(self, grid: GridSpec | None = None) -> str:
        payload = {
            "direction": self.direction,
            "best": {
                **self.best_params.to_dict(),
                "ssim": self.best.ssim,
                "nmi": self.best.nmi,
                "blended": self.best.blended,
                "w": self.best.weight_w,
            },
            "log": [{**params, "blended": score} for params, score in self.log],
        }
        if grid is not None:
            payload["grid"] = {
                name: {"min": lo, "max": hi, "step": step}
                for name, (lo, hi, step) in sorted(grid.axes.items())
            }
        return json.dumps(payload, sort_keys=True)


def forward_pipeline(img: ImageBuffer, params: ForwardParams) -> ImageBuffer:
    out = convolve(img, unsharp_kernel(params.alpha))
    out = gamma_correct(out, params.gamma)
    out = complement(out)
    return amplify_noise(out, params.beta)


def reverse_pipeline(img: ImageBuffer, params: ReverseParams) -> ImageBuffer:
    out = gaussian_blur(img, 7)
    out = complement(out)
    return gamma_correct(out, params.gamma)


def _params_for(direction: str, point: dict[str, float]):
    if direction == "forward":
        return ForwardParams(
            alpha=point["alpha"], gamma=point["gamma"], beta=point["beta"], unchecked=True
        )
    return ReverseParams(gamma=point["gamma"], unchecked=True)


def tune(
    src: ImageBuffer,
    target: ImageBuffer,
    direction: str,
    grid: GridSpec | None = None,
    w: float = 0.5,
) -> TuneResult:
    """Exhaustive grid search maximizing the blended score against target."""
    if direction not in ("forward", "reverse"):
        raise ValueError(f"direction must be 'forward' or 'reverse', got '{direction}'")
    if grid is None:
        grid = GridSpec.forward_default() if direction == "forward" else GridSpec.reverse_default()
    expected = {"alpha", "beta", "gamma"} if direction == "forward" else {"gamma"}
    if set(grid.axes) != expected:
        raise ValueError(f"{direction} grid needs axes {sorted(expected)}, got {sorted(grid.axes)}")
    if src.data.shape != target.data.shape:
        raise ValueError("src and target must have equal dimensions")
    points = grid.points()
    if not points:
        raise ValueError("empty parameter grid")
    run = forward_pipeline if direction == "forward" else reverse_pipeline

    best_params = None
    best_report = None
    log = []
    for point in points:
        params = _params_for(direction, point)
        report = blended_score(run(src, params), target, w)
        log.append((point, report.blended))
        if best_report is None or report.blended > best_report.blended:
            best_params, best_report = params, report
    return TuneResult(
        direction=direction, best_params=best_params, best=best_report, log=tuple(log)
    )


def cue_align(img: ImageBuffer, cfg: CueConfig = CueConfig()) -> tuple[ImageBuffer, float]:
    """Estimate the cue angle and rotate the image to level it."""
    angle = estimate_cue_angle(img, cfg.canny_lo, cfg.canny_hi, cfg.line_votes)
    return rotate(img, -angle), angle
