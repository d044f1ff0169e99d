"""Edge, line, circle, and corner detection plus morphology and the
composite window-localization and cue-isolation procedures."""

from .corners import CornerSet, harris
from .cue import CueConfig, estimate_cue_angle, isolate_cue
from .draw import draw_circles, draw_lines, draw_points
from .edges import (
    adaptive_thresholds,
    canny_adaptive,
    canny_fixed,
    canny_rgb,
    compute_canny_thresholds,
    sobel_gradients,
)
from .hough import Circle, Line, hough_circles, hough_lines, roof_angle
from .morphology import (
    LabeledRegions,
    Region,
    StructuringElement,
    connected_components,
    fill_holes,
    morph,
)
from .transform import rotate, rotate_point
from .windows import WindowConfig, localize_windows

__all__ = [
    "CornerSet",
    "harris",
    "CueConfig",
    "estimate_cue_angle",
    "isolate_cue",
    "draw_circles",
    "draw_lines",
    "draw_points",
    "adaptive_thresholds",
    "canny_adaptive",
    "canny_fixed",
    "canny_rgb",
    "compute_canny_thresholds",
    "sobel_gradients",
    "Circle",
    "Line",
    "hough_circles",
    "hough_lines",
    "roof_angle",
    "LabeledRegions",
    "Region",
    "StructuringElement",
    "connected_components",
    "fill_holes",
    "morph",
    "rotate",
    "rotate_point",
    "WindowConfig",
    "localize_windows",
]
