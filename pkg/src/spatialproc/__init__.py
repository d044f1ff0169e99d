"""Deterministic spatial image processing toolkit.

Grayscale quantization, histogram-based enhancement, bidirectional
transformation pipelines with grid-search tuning, geometric feature
extraction (Canny/Hough/Harris/morphology), and blended SSIM+NMI
similarity scoring. Everything is pure-function style on immutable
8-bit buffers; identical inputs always produce identical outputs.
"""

from . import geometry
from .buffer import (
    Cdf,
    ColorSpace,
    Histogram,
    ImageBuffer,
    binary_image,
    cdf,
    color_image,
    convert_color,
    gray_image,
    histogram,
)
from .enhance import (
    PAPER8,
    Kernel,
    QuantizationMap,
    amplify_noise,
    complement,
    convolve,
    equalize_rgb,
    equalize_ycrcb,
    gamma_correct,
    gaussian_blur,
    gaussian_kernel,
    hsv_brighten,
    median_filter,
    sharpen,
    step_quantize,
    unsharp_kernel,
)
from .errors import ConversionError, FormatError, NoFeatureError
from .fileio import load_image, save_image
from .metrics import SimilarityReport, blended_score, nmi, ssim
from .pipelines import (
    ForwardParams,
    GridSpec,
    ReverseParams,
    TuneResult,
    cue_align,
    forward_pipeline,
    reverse_pipeline,
    tune,
)

__version__ = "0.1.0"

__all__ = [
    "geometry",
    "Cdf",
    "ColorSpace",
    "Histogram",
    "ImageBuffer",
    "binary_image",
    "cdf",
    "color_image",
    "convert_color",
    "gray_image",
    "histogram",
    "PAPER8",
    "Kernel",
    "QuantizationMap",
    "amplify_noise",
    "complement",
    "convolve",
    "equalize_rgb",
    "equalize_ycrcb",
    "gamma_correct",
    "gaussian_blur",
    "gaussian_kernel",
    "hsv_brighten",
    "median_filter",
    "sharpen",
    "step_quantize",
    "unsharp_kernel",
    "ConversionError",
    "FormatError",
    "NoFeatureError",
    "load_image",
    "save_image",
    "SimilarityReport",
    "blended_score",
    "nmi",
    "ssim",
    "ForwardParams",
    "GridSpec",
    "ReverseParams",
    "TuneResult",
    "cue_align",
    "forward_pipeline",
    "reverse_pipeline",
    "tune",
    "__version__",
]
