"""SVD-based noise transfer between grayscale images.

The core operation decomposes a source and a style image with the singular
value decomposition, keeps the first k singular components of the source
(its content), adopts the remaining components of the style image (its
noise character), and histogram-matches the recombination against the style
image. Around it sit noise statistics, a seeded multi-domain augmentation
policy, and dice evaluation, all exposed through the `svdna` CLI.
"""

from .engine import (
    RESIZE_POLICIES,
    SvdFactors,
    low_rank,
    recombine,
    recombine_residual,
    svd,
    svdna_transfer,
)
from .errors import (
    ConfigError,
    ConvergenceFailureError,
    DecodeError,
    EmptySetError,
    ImageTooSmallError,
    NonFiniteEntryError,
    ShapeMismatchError,
    SvdnaError,
    ThresholdOutOfRangeError,
    UnsupportedFormatError,
    WriteError,
    ZeroVarianceError,
)
from .imaging import (
    from_matrix,
    histogram,
    histogram_match,
    load_image,
    match_lut,
    quantize,
    resize_bilinear,
    save_image,
    to_matrix,
)
from .metrics import (
    DiceReport,
    NoiseStats,
    dice,
    dice_report,
    domain_alignment,
    immerkaer_sigma,
    noise_profile,
    snr,
    wavelet_sigma,
)
from .policy import (
    AugmentDecision,
    DomainPool,
    DomainRegistry,
    KRange,
    apply_decision,
    decision_for_ordinal,
    load_registry_config,
    sample_decision,
)
from .rng import RngStream, derive_stream, mix64
from .synthetic import gaussian_field, noisy_phantom, random_image, smooth_phantom

__version__ = "0.1.0"

__all__ = [
    "AugmentDecision",
    "ConfigError",
    "ConvergenceFailureError",
    "DecodeError",
    "DiceReport",
    "DomainPool",
    "DomainRegistry",
    "EmptySetError",
    "ImageTooSmallError",
    "KRange",
    "NoiseStats",
    "NonFiniteEntryError",
    "RESIZE_POLICIES",
    "RngStream",
    "ShapeMismatchError",
    "SvdFactors",
    "SvdnaError",
    "ThresholdOutOfRangeError",
    "UnsupportedFormatError",
    "WriteError",
    "ZeroVarianceError",
    "apply_decision",
    "decision_for_ordinal",
    "derive_stream",
    "dice",
    "dice_report",
    "domain_alignment",
    "from_matrix",
    "gaussian_field",
    "histogram",
    "histogram_match",
    "immerkaer_sigma",
    "load_image",
    "load_registry_config",
    "low_rank",
    "match_lut",
    "mix64",
    "noise_profile",
    "noisy_phantom",
    "quantize",
    "random_image",
    "recombine",
    "recombine_residual",
    "resize_bilinear",
    "sample_decision",
    "save_image",
    "smooth_phantom",
    "snr",
    "svd",
    "svdna_transfer",
    "to_matrix",
    "__version__",
]
