"""Noise statistics, noise-alignment distance, and dice segmentation scores.

The three noise statistics (global SNR, the fast Laplacian-mask variance
estimator, and the wavelet-MAD estimator) characterize an image's noise
style; alignment between two sets of statistics is measured directly in the
z-normalized 3-statistic space. The estimators accept uint8 images as well
as real-valued 2-D fields, so linearity properties can be checked before
quantization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptySetError,
    ImageTooSmallError,
    ShapeMismatchError,
    ZeroVarianceError,
)

#: Expected |N(0,1)| quantile at the median, used by the wavelet MAD rule.
_MAD_TO_SIGMA = 0.6745


@dataclass(frozen=True)
class NoiseStats:
    """Noise style of one image: (SNR, Laplacian-mask sigma, wavelet sigma).

    snr is None when undefined (constant image); the sigma fields are
    non-negative intensity-unit reals.
    """

    snr: float | None
    sigma_immerkaer: float
    sigma_wavelet: float


@dataclass(frozen=True)
class DiceReport:
    """Per-class dice scores and their unweighted mean."""

    per_class: dict[int, float]
    mean: float


def _as_field(img: np.ndarray) -> np.ndarray:
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ShapeMismatchError(f"expected a non-empty 2-D image, got shape {arr.shape}")
    return arr


def snr(img: np.ndarray) -> float:
    """Global signal-to-noise ratio: mean / population standard deviation."""
    field = _as_field(img)
    std = float(field.std())
    if std == 0.0:
        raise ZeroVarianceError("SNR undefined: all pixels equal")
    return float(field.mean()) / std


def immerkaer_sigma(img: np.ndarray) -> float:
    """Fast noise standard deviation from the 3x3 difference-of-Laplacians mask.

    Convolves the interior (valid region, no padding) with
    [[1,-2,1],[-2,4,-2],[1,-2,1]] and rescales the mean absolute response:
    sigma = sqrt(pi/2) * sum|response| / (6 (W-2) (H-2)). The mask
    annihilates constant and linear content, so smooth structure contributes
    little.
    """
    f = _as_field(img)
    h, w = f.shape
    if h < 3 or w < 3:
        raise ImageTooSmallError(f"need at least 3x3 pixels, got {w}x{h}")
    response = (
        f[:-2, :-2] - 2 * f[:-2, 1:-1] + f[:-2, 2:]
        - 2 * f[1:-1, :-2] + 4 * f[1:-1, 1:-1] - 2 * f[1:-1, 2:]
        + f[2:, :-2] - 2 * f[2:, 1:-1] + f[2:, 2:]
    )
    return float(
        np.sqrt(np.pi / 2.0) * np.abs(response).sum() / (6.0 * (w - 2) * (h - 2))
    )


def wavelet_sigma(img: np.ndarray) -> float:
    """Wavelet-MAD noise estimate: median(|HH|) / 0.6745.

    HH are the finest-scale diagonal detail coefficients of a single-level
    orthonormal 2-D Haar transform; odd dimensions are trimmed by one
    trailing row/column first.
    """
    f = _as_field(img)
    h, w = f.shape
    if h < 2 or w < 2:
        raise ImageTooSmallError(f"need at least 2x2 pixels, got {w}x{h}")
    f = f[: h - h % 2, : w - w % 2]
    hh = 0.5 * (f[0::2, 0::2] - f[0::2, 1::2] - f[1::2, 0::2] + f[1::2, 1::2])
    return float(np.median(np.abs(hh)) / _MAD_TO_SIGMA)


def noise_profile(img: np.ndarray) -> NoiseStats:
    """All three noise statistics of an image.

    A constant image yields snr=None rather than an error; images below the
    estimator minimums raise ImageTooSmallError.
    """
    sigma_i = immerkaer_sigma(img)
    sigma_w = wavelet_sigma(img)
    try:
        ratio = snr(img)
    except ZeroVarianceError:
        ratio = None
    return NoiseStats(snr=ratio, sigma_immerkaer=sigma_i, sigma_wavelet=sigma_w)


def _stat_columns(stats: list[NoiseStats]) -> list[np.ndarray]:
    cols = [
        np.array([s.snr for s in stats if s.snr is not None], dtype=np.float64),
        np.array([s.sigma_immerkaer for s in stats], dtype=np.float64),
        np.array([s.sigma_wavelet for s in stats], dtype=np.float64),
    ]
    return cols


def domain_alignment(set_a: list[NoiseStats], set_b: list[NoiseStats]) -> float:
    """Distance between two noise-statistic sets; smaller = better aligned.

    Each statistic is z-normalized with the pooled mean/stddev of both sets
    together, and the Euclidean distance between the per-set mean vectors is
    returned. Missing SNR entries are excluded pairwise; a statistic with no
    spread (or no data on one side) contributes zero.
    """
    if not set_a or not set_b:
        raise EmptySetError("both statistic sets must be non-empty")
    cols_a = _stat_columns(set_a)
    cols_b = _stat_columns(set_b)
    total = 0.0
    for col_a, col_b in zip(cols_a, cols_b):
        if col_a.size == 0 or col_b.size == 0:
            continue
        pooled = np.concatenate([col_a, col_b])
        scale = float(pooled.std())
        if scale == 0.0:
            continue
        delta = (float(col_a.mean()) - float(col_b.mean())) / scale
        total += delta * delta
    return float(np.sqrt(total))


def _class_masks(pred: np.ndarray, gt: np.ndarray, class_id: int):
    pred = np.asarray(pred)
    gt = np.asarray(gt)
    if pred.ndim != 2 or gt.ndim != 2:
        raise ShapeMismatchError("masks must be 2-D arrays of class ids")
    if pred.shape != gt.shape:
        raise ShapeMismatchError(f"mask shapes differ: {pred.shape} vs {gt.shape}")
    return pred == class_id, gt == class_id


def dice(pred: np.ndarray, gt: np.ndarray, class_id: int) -> float:
    """Dice overlap 2|P∩G| / (|P|+|G|) for one class.

    Both masks empty for the class scores 1.0 (correct absence); exactly one
    empty scores 0.0.
    """
    p, g = _class_masks(pred, gt, class_id)
    denom = int(p.sum()) + int(g.sum())
    if denom == 0:
        return 1.0
    return 2.0 * int(np.logical_and(p, g).sum()) / denom


def dice_report(pred: np.ndarray, gt: np.ndarray, classes) -> DiceReport:
    """Per-class dice plus the unweighted mean over the evaluated classes."""
    class_ids = list(classes)
    if not class_ids:
        raise EmptySetError("at least one class id required")
    per_class = {int(c): dice(pred, gt, int(c)) for c in class_ids}
    return DiceReport(per_class=per_class, mean=sum(per_class.values()) / len(per_class))
