"""Command-line driver.

Every subcommand is a thin wrapper over one library operation: images
in, images out, optional JSON report with the fully-defaulted parameter
set so each run is self-describing. Exit codes: 0 success, 1 usage
error, 2 processing error (missing features, I/O problems).

A run can also be described by a ``key = value`` config file passed as
``--config FILE`` (see :func:`parse_config`).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import enhance, geometry, metrics, pipelines
from .buffer import ColorSpace, ImageBuffer, convert_color
from .errors import FormatError, NoFeatureError
from .fileio import load_image, save_image


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _to_gray(img: ImageBuffer) -> ImageBuffer:
    if img.space is ColorSpace.GRAY:
        return img
    if img.space is ColorSpace.BINARY:
        return ImageBuffer(ColorSpace.GRAY, img.data)
    return convert_color(img, ColorSpace.GRAY)


def _save_visible(img: ImageBuffer, path: str) -> None:
    # writers accept gray/binary/RGB; BGR results go back to RGB bytes
    if img.space in (ColorSpace.BGR, ColorSpace.HSV, ColorSpace.YCRCB):
        img = convert_color(img, ColorSpace.RGB) if img.space is ColorSpace.BGR else img
    save_image(img, path)


def _write_report(path: str | None, payload: dict) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _odd(text: str) -> int:
    value = int(text)
    if value < 1 or value % 2 == 0:
        raise argparse.ArgumentTypeError(f"must be a positive odd integer, got {value}")
    return value


def _unit(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {value}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="spatialproc", description=__doc__)
    parser.add_argument("--config", help="key = value file describing the full run")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("quantize", help="stepwise grayscale quantization")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--preset", default="paper8", choices=sorted(enhance.PRESETS))
    p.add_argument("--map", dest="map_file", help="JSON {thresholds, outputs} file")
    p.add_argument("--report")

    p = sub.add_parser("equalize", help="histogram equalization")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mode", required=True, choices=["rgb", "ycrcb"])
    p.add_argument("--report")

    p = sub.add_parser("brighten", help="HSV value-channel offset")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--v", type=int, default=30)
    p.add_argument("--report")

    p = sub.add_parser("sharpen", help="fixed 3x3 sharpening kernel")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--report")

    p = sub.add_parser("filter", help="gaussian or median smoothing")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--kind", required=True, choices=["gaussian", "median"])
    p.add_argument("--size", type=_odd, default=7)
    p.add_argument("--report")

    pipe = sub.add_parser("pipeline", help="bidirectional transforms and tuning")
    psub = pipe.add_subparsers(dest="action")
    p = psub.add_parser("forward")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--report")
    p = psub.add_parser("reverse")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--report")
    p = psub.add_parser("tune")
    p.add_argument("src")
    p.add_argument("target")
    p.add_argument("--direction", required=True, choices=["forward", "reverse"])
    p.add_argument("--grid", help="JSON grid spec {name: {min, max, step}}")
    p.add_argument("--w", type=_unit, default=0.5)
    p.add_argument("--report", required=True)
    p.add_argument("--best-out", help="write the best pipeline output image here")

    feat = sub.add_parser("features", help="edge/line/circle/corner/window detection")
    fsub = feat.add_subparsers(dest="action")
    p = fsub.add_parser("edges")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--sigma", type=_unit, default=0.5)
    p.add_argument("--median-size", type=_odd, default=7)
    p.add_argument("--report")
    p = fsub.add_parser("lines")
    p.add_argument("input", help="binary edge map (see `features edges`)")
    p.add_argument("--out", help="overlay image path")
    p.add_argument("--rho-res", type=float, default=1.0)
    p.add_argument("--theta-res", type=float, default=1.0)
    p.add_argument("--votes", type=int, default=100)
    p.add_argument("--report")
    p = fsub.add_parser("circles")
    p.add_argument("input")
    p.add_argument("--out", help="overlay image path")
    p.add_argument("--r-min", type=int, default=25)
    p.add_argument("--r-max", type=int, default=33)
    p.add_argument("--votes", type=int, default=100)
    p.add_argument("--report")
    p = fsub.add_parser("corners")
    p.add_argument("input")
    p.add_argument("--out", help="overlay image path")
    p.add_argument("--k", type=float, default=0.04)
    p.add_argument("--rel-thresh", type=float, default=0.01)
    p.add_argument("--median-size", type=_odd, default=5)
    p.add_argument("--report")
    p = fsub.add_parser("windows")
    p.add_argument("input")
    p.add_argument("output", help="red overlay image")
    p.add_argument("--mask-out", help="binary mask image path")
    p.add_argument("--sigma", type=_unit, default=0.5)
    p.add_argument("--door-ratio", type=float, default=1.8)
    p.add_argument("--report")

    cue = sub.add_parser("cue", help="billiard-cue angle, alignment, isolation")
    csub = cue.add_subparsers(dest="action")
    for name in ("angle", "align", "isolate"):
        p = csub.add_parser(name)
        p.add_argument("input")
        if name != "angle":
            p.add_argument("output")
        p.add_argument("--canny-lo", type=float, default=100.0)
        p.add_argument("--canny-hi", type=float, default=200.0)
        p.add_argument("--votes", type=int, default=200)
        if name == "isolate":
            p.add_argument("--r-min", type=int, default=25)
            p.add_argument("--r-max", type=int, default=33)
            p.add_argument("--cloth-peak", type=int, default=49)
        p.add_argument("--report")

    p = sub.add_parser("compare", help="blended SSIM+NMI similarity")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--w", type=_unit, default=0.5)
    p.add_argument("--report")

    return parser


def _cue_config(ns: argparse.Namespace) -> geometry.CueConfig:
    kwargs = {
        "canny_lo": ns.canny_lo,
        "canny_hi": ns.canny_hi,
        "line_votes": ns.votes,
    }
    if hasattr(ns, "r_min"):
        kwargs.update(r_min=ns.r_min, r_max=ns.r_max, cloth_peak=ns.cloth_peak)
    return geometry.CueConfig(**kwargs)


def _dispatch(ns: argparse.Namespace) -> int:
    cmd = ns.command
    if cmd == "quantize":
        if ns.map_file:
            with open(ns.map_file, encoding="utf-8") as fh:
                qmap = enhance.QuantizationMap.from_json(fh.read())
            map_desc = ns.map_file
        else:
            qmap = enhance.PRESETS[ns.preset]
            map_desc = ns.preset
        out = enhance.step_quantize(_to_gray(load_image(ns.input)), qmap)
        _save_visible(out, ns.output)
        _write_report(
            ns.report,
            {
                "command": "quantize",
                "parameters": {
                    "input": ns.input,
                    "output": ns.output,
                    "map": map_desc,
                    "thresholds": list(qmap.thresholds),
                    "outputs": list(qmap.outputs),
                },
            },
        )
    elif cmd == "equalize":
        img = load_image(ns.input)
        if ns.mode == "rgb":
            out = enhance.equalize_rgb(img)
        else:
            out = enhance.equalize_ycrcb(convert_color(img, ColorSpace.BGR))
        _save_visible(out, ns.output)
        _write_report(
            ns.report,
            {
                "command": "equalize",
                "parameters": {"input": ns.input, "output": ns.output, "mode": ns.mode},
            },
        )
    elif cmd == "brighten":
        if not 0 <= ns.v <= 255:
            raise UsageError(f"--v must lie in [0, 255], got {ns.v}")
        img = convert_color(load_image(ns.input), ColorSpace.BGR)
        _save_visible(enhance.hsv_brighten(img, ns.v), ns.output)
        _write_report(
            ns.report,
            {
                "command": "brighten",
                "parameters": {"input": ns.input, "output": ns.output, "v": ns.v},
            },
        )
    elif cmd == "sharpen":
        _save_visible(enhance.sharpen(load_image(ns.input)), ns.output)
        _write_report(
            ns.report,
            {"command": "sharpen", "parameters": {"input": ns.input, "output": ns.output}},
        )
    elif cmd == "filter":
        img = _to_gray(load_image(ns.input))
        if ns.kind == "gaussian":
            out = enhance.gaussian_blur(img, ns.size)
        else:
            out = enhance.median_filter(img, ns.size)
        _save_visible(out, ns.output)
        _write_report(
            ns.report,
            {
                "command": "filter",
                "parameters": {
                    "input": ns.input,
                    "output": ns.output,
                    "kind": ns.kind,
                    "size": ns.size,
                },
            },
        )
    elif cmd == "pipeline":
        return _dispatch_pipeline(ns)
    elif cmd == "features":
        return _dispatch_features(ns)
    elif cmd == "cue":
        return _dispatch_cue(ns)
    elif cmd == "compare":
        a = _to_gray(load_image(ns.a))
        b = _to_gray(load_image(ns.b))
        report = metrics.blended_score(a, b, ns.w)
        payload = {
            "command": "compare",
            "parameters": {"a": ns.a, "b": ns.b, "w": ns.w},
            "ssim": report.ssim,
            "nmi": report.nmi,
            "blended": report.blended,
        }
        print(json.dumps(payload, sort_keys=True))
        _write_report(ns.report, payload)
    else:
        raise UsageError("missing subcommand (see --help)")
    return 0


def _dispatch_pipeline(ns: argparse.Namespace) -> int:
    if ns.action == "forward":
        params = pipelines.ForwardParams(ns.alpha, ns.gamma, ns.beta, unchecked=True)
        out = pipelines.forward_pipeline(_to_gray(load_image(ns.input)), params)
        _save_visible(out, ns.output)
        _write_report(
            ns.report,
            {
                "command": "pipeline forward",
                "parameters": {"input": ns.input, "output": ns.output, **params.to_dict()},
            },
        )
    elif ns.action == "reverse":
        params = pipelines.ReverseParams(ns.gamma, unchecked=True)
        out = pipelines.reverse_pipeline(_to_gray(load_image(ns.input)), params)
        _save_visible(out, ns.output)
        _write_report(
            ns.report,
            {
                "command": "pipeline reverse",
                "parameters": {"input": ns.input, "output": ns.output, **params.to_dict()},
            },
        )
    elif ns.action == "tune":
        src = _to_gray(load_image(ns.src))
        target = _to_gray(load_image(ns.target))
        if ns.grid:
            with open(ns.grid, encoding="utf-8") as fh:
                grid = pipelines.GridSpec.from_json(fh.read())
        elif getattr(ns, "grid_axes", None):
            grid = pipelines.GridSpec(axes=ns.grid_axes)
        else:
            grid = (
                pipelines.GridSpec.forward_default()
                if ns.direction == "forward"
                else pipelines.GridSpec.reverse_default()
            )
        result = pipelines.tune(src, target, ns.direction, grid, ns.w)
        payload = json.loads(result.to_json(grid))
        payload["command"] = "pipeline tune"
        payload["parameters"] = {
            "src": ns.src,
            "target": ns.target,
            "direction": ns.direction,
            "w": ns.w,
        }
        _write_report(ns.report, payload)
        if ns.best_out:
            run = (
                pipelines.forward_pipeline
                if ns.direction == "forward"
                else pipelines.reverse_pipeline
            )
            _save_visible(run(src, result.best_params), ns.best_out)
        print(
            json.dumps(
                {"best": payload["best"], "evaluations": len(result.log)}, sort_keys=True
            )
        )
    else:
        raise UsageError("pipeline needs an action: forward, reverse, or tune")
    return 0


def _dispatch_features(ns: argparse.Namespace) -> int:
    if ns.action == "edges":
        img = _to_gray(load_image(ns.input))
        lower, upper = geometry.compute_canny_thresholds(img, ns.sigma, ns.median_size)
        edges = geometry.canny_adaptive(img, ns.sigma, ns.median_size)
        _save_visible(edges, ns.output)
        _write_report(
            ns.report,
            {
                "command": "features edges",
                "parameters": {
                    "input": ns.input,
                    "output": ns.output,
                    "sigma": ns.sigma,
                    "median_size": ns.median_size,
                },
                "thresholds": {"lower": lower, "upper": upper},
            },
        )
    elif ns.action == "lines":
        img = load_image(ns.input)
        if img.channels != 1:
            raise TypeError("features lines expects a binary edge map (see `features edges`)")
        edges = ImageBuffer(ColorSpace.BINARY, img.data)
        lines = geometry.hough_lines(edges, ns.rho_res, ns.theta_res, ns.votes)
        angles = geometry.roof_angle(lines)
        if ns.out:
            _save_visible(geometry.draw_lines(img, lines), ns.out)
        payload = {
            "command": "features lines",
            "parameters": {
                "input": ns.input,
                "rho_res": ns.rho_res,
                "theta_res": ns.theta_res,
                "votes": ns.votes,
            },
            "lines": [ln.to_dict() for ln in lines],
            "angles_deg": angles,
        }
        print(json.dumps({"lines": len(lines)}, sort_keys=True))
        _write_report(ns.report, payload)
    elif ns.action == "circles":
        img = _to_gray(load_image(ns.input))
        circles = geometry.hough_circles(img, ns.r_min, ns.r_max, ns.votes)
        if ns.out:
            _save_visible(geometry.draw_circles(load_image(ns.input), circles), ns.out)
        payload = {
            "command": "features circles",
            "parameters": {
                "input": ns.input,
                "r_min": ns.r_min,
                "r_max": ns.r_max,
                "votes": ns.votes,
            },
            "circles": [c.to_dict() for c in circles],
        }
        print(json.dumps({"circles": len(circles)}, sort_keys=True))
        _write_report(ns.report, payload)
    elif ns.action == "corners":
        img = _to_gray(load_image(ns.input))
        corners = geometry.harris(img, ns.k, ns.rel_thresh, ns.median_size)
        if ns.out:
            _save_visible(geometry.draw_points(load_image(ns.input), corners), ns.out)
        payload = {
            "command": "features corners",
            "parameters": {
                "input": ns.input,
                "k": ns.k,
                "rel_thresh": ns.rel_thresh,
                "median_size": ns.median_size,
            },
            "corners": corners.to_dicts(),
            "response_max": corners.response_max,
        }
        print(json.dumps({"corners": len(corners.points)}, sort_keys=True))
        _write_report(ns.report, payload)
    elif ns.action == "windows":
        img = convert_color(load_image(ns.input), ColorSpace.BGR)
        cfg = geometry.WindowConfig(canny_sigma=ns.sigma, door_ratio=ns.door_ratio)
        mask, overlay = geometry.localize_windows(img, cfg)
        _save_visible(overlay, ns.output)
        if ns.mask_out:
            _save_visible(mask, ns.mask_out)
        _write_report(
            ns.report,
            {
                "command": "features windows",
                "parameters": {
                    "input": ns.input,
                    "output": ns.output,
                    "sigma": ns.sigma,
                    "door_ratio": ns.door_ratio,
                },
            },
        )
    else:
        raise UsageError("features needs an action: edges, lines, circles, corners, windows")
    return 0


def _dispatch_cue(ns: argparse.Namespace) -> int:
    img = load_image(ns.input)
    if img.channels != 3:
        raise TypeError("cue commands require a color input image")
    cfg = _cue_config(ns)
    common = {"canny_lo": ns.canny_lo, "canny_hi": ns.canny_hi, "votes": ns.votes}
    if ns.action == "angle":
        angle = geometry.estimate_cue_angle(img, cfg.canny_lo, cfg.canny_hi, cfg.line_votes)
        payload = {
            "command": "cue angle",
            "parameters": {"input": ns.input, **common},
            "angle_deg": angle,
        }
        print(json.dumps(payload, sort_keys=True))
        _write_report(ns.report, payload)
    elif ns.action == "align":
        rotated, angle = pipelines.cue_align(img, cfg)
        _save_visible(rotated, ns.output)
        payload = {
            "command": "cue align",
            "parameters": {"input": ns.input, "output": ns.output, **common},
            "angle_deg": angle,
        }
        print(json.dumps({"angle_deg": angle}, sort_keys=True))
        _write_report(ns.report, payload)
    elif ns.action == "isolate":
        out = geometry.isolate_cue(img, cfg)
        _save_visible(out, ns.output)
        _write_report(
            ns.report,
            {
                "command": "cue isolate",
                "parameters": {
                    "input": ns.input,
                    "output": ns.output,
                    **common,
                    "r_min": cfg.r_min,
                    "r_max": cfg.r_max,
                    "cloth_peak": cfg.cloth_peak,
                },
            },
        )
    else:
        raise UsageError("cue needs an action: angle, align, or isolate")
    return 0


def run(argv: list[str]) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.config:
            if ns.command:
                raise UsageError("--config replaces the subcommand; do not pass both")
            ns = _namespace_for(parse_config(ns.config))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except ValueError as exc:  # config validation problems are usage errors
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        return _dispatch(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (
        ValueError,
        TypeError,
        NoFeatureError,
        FormatError,
        FileNotFoundError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


# -- config files ----------------------------------------------------------

@dataclass(frozen=True)
class CommandConfig:
    """A fully validated run description parsed from a config file."""

    command: str
    params: dict


def _namespace_for(cfg: CommandConfig) -> argparse.Namespace:
    """Map a CommandConfig onto the namespace _dispatch expects."""
    parts = cfg.command.split("-", 1)
    ns = argparse.Namespace(config=None, command=parts[0])
    if len(parts) == 2:
        ns.action = parts[1]
    params = dict(cfg.params)
    if cfg.command == "pipeline-tune":
        bounds = {k: params.pop(k) for k in _TABLE1_GRID if k in params}
        axes = {"gamma": (bounds["gamma_min"], bounds["gamma_max"], bounds["gamma_step"])}
        if params.get("direction", "forward") == "forward":
            axes["alpha"] = (bounds["alpha_min"], bounds["alpha_max"], bounds["alpha_step"])
            axes["beta"] = (bounds["beta_min"], bounds["beta_max"], bounds["beta_step"])
        ns.grid_axes = axes
    rename = {"map": "map_file"}
    for key, value in params.items():
        setattr(ns, rename.get(key, key), value)
    # optional keys a command accepts but the file omitted
    for key in _CONFIG_SCHEMA[cfg.command]:
        attr = rename.get(key, key)
        if not hasattr(ns, attr):
            setattr(ns, attr, None)
    return ns


_TABLE1_GRID = {
    "alpha_min": 0.05, "alpha_max": 0.5, "alpha_step": 0.05,
    "beta_min": 1.6, "beta_max": 2.1, "beta_step": 0.05,
    "gamma_min": 0.15, "gamma_max": 0.35, "gamma_step": 0.01,
}
_REVERSE_GAMMA_GRID = {"gamma_min": 2.5, "gamma_max": 5.0, "gamma_step": 0.05}

# command -> key -> (python type, default); a None default means required
_CONFIG_SCHEMA: dict[str, dict[str, tuple[type, object]]] = {
    "quantize": {"input": (str, None), "output": (str, None), "preset": (str, "paper8"),
                 "map": (str, ""), "report": (str, "")},
    "equalize": {"input": (str, None), "output": (str, None), "mode": (str, "ycrcb"),
                 "report": (str, "")},
    "brighten": {"input": (str, None), "output": (str, None), "v": (int, 30),
                 "report": (str, "")},
    "sharpen": {"input": (str, None), "output": (str, None), "report": (str, "")},
    "filter": {"input": (str, None), "output": (str, None), "kind": (str, "gaussian"),
               "size": (int, 7), "report": (str, "")},
    "pipeline-forward": {"input": (str, None), "output": (str, None), "alpha": (float, None),
                         "gamma": (float, None), "beta": (float, None), "report": (str, "")},
    "pipeline-reverse": {"input": (str, None), "output": (str, None), "gamma": (float, None),
                         "report": (str, "")},
    "pipeline-tune": {"src": (str, None), "target": (str, None), "direction": (str, "forward"),
                      "grid": (str, ""), "w": (float, 0.5), "report": (str, None),
                      "best_out": (str, ""),
                      **{k: (float, v) for k, v in _TABLE1_GRID.items()}},
    "features-edges": {"input": (str, None), "output": (str, None), "sigma": (float, 0.5),
                       "median_size": (int, 7), "report": (str, "")},
    "features-lines": {"input": (str, None), "out": (str, ""), "rho_res": (float, 1.0),
                       "theta_res": (float, 1.0), "votes": (int, 100), "report": (str, "")},
    "features-circles": {"input": (str, None), "out": (str, ""), "r_min": (int, 25),
                         "r_max": (int, 33), "votes": (int, 100), "report": (str, "")},
    "features-corners": {"input": (str, None), "out": (str, ""), "k": (float, 0.04),
                         "rel_thresh": (float, 0.01), "median_size": (int, 5),
                         "report": (str, "")},
    "features-windows": {"input": (str, None), "output": (str, None), "mask_out": (str, ""),
                         "sigma": (float, 0.5), "door_ratio": (float, 1.8), "report": (str, "")},
    "cue-angle": {"input": (str, None), "canny_lo": (float, 100.0), "canny_hi": (float, 200.0),
                  "votes": (int, 200), "report": (str, "")},
    "cue-align": {"input": (str, None), "output": (str, None), "canny_lo": (float, 100.0),
                  "canny_hi": (float, 200.0), "votes": (int, 200), "report": (str, "")},
    "cue-isolate": {"input": (str, None), "output": (str, None), "canny_lo": (float, 100.0),
                    "canny_hi": (float, 200.0), "votes": (int, 200), "r_min": (int, 25),
                    "r_max": (int, 33), "cloth_peak": (int, 49), "report": (str, "")},
    "compare": {"a": (str, None), "b": (str, None), "w": (float, 0.5), "report": (str, "")},
}

_PATH_KEYS = {"input", "src", "target", "a", "b"}
_UNIT_KEYS = {"w", "sigma", "rel_thresh"}


def parse_config(path: str | os.PathLike) -> CommandConfig:
    """Parse and validate a ``key = value`` run description.

    Lines are ``key = value``; ``#`` starts a comment. Unknown keys are
    rejected, types are checked per key, defaults (w = 0.5, sigma = 0.5,
    the standard tuning ranges) are filled in, and referenced input
    paths must exist.
    """
    path = os.fspath(path)
    raw: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {text!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            if key in raw:
                raise ValueError(f"{path}:{lineno}: duplicate key '{key}'")
            raw[key] = value

    command = raw.pop("command", None)
    if command is None:
        raise ValueError("config is missing required key 'command'")
    if command not in _CONFIG_SCHEMA:
        known = ", ".join(sorted(_CONFIG_SCHEMA))
        raise ValueError(f"unknown command '{command}' (known: {known})")

    keys = dict(_CONFIG_SCHEMA[command])
    unknown = sorted(set(raw) - set(keys))
    if unknown:
        raise ValueError(f"unknown key '{unknown[0]}' for command '{command}'")
    if command == "pipeline-tune" and raw.get("direction", "forward") == "reverse":
        for key, default in _REVERSE_GAMMA_GRID.items():
            if key not in raw:
                keys[key] = (float, default)

    params: dict = {}
    for key, (typ, default) in keys.items():
        if key in raw:
            try:
                params[key] = typ(raw[key])
            except ValueError as exc:
                raise ValueError(
                    f"key '{key}' expects {typ.__name__}, got {raw[key]!r}"
                ) from exc
        elif default is None:
            raise ValueError(f"config for '{command}' is missing required key '{key}'")
        else:
            params[key] = default

    for key in _UNIT_KEYS & set(params):
        if not 0.0 <= params[key] <= 1.0:
            raise ValueError(f"key '{key}' must lie in [0, 1], got {params[key]}")
    for key in _PATH_KEYS & set(params):
        if not os.path.exists(params[key]):
            raise ValueError(f"input path for key '{key}' does not exist: {params[key]}")

    params = {k: v for k, v in params.items() if v != ""}
    return CommandConfig(command=command, params=params)
