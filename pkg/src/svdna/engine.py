"""Thin SVD of image matrices and SVD-based noise transfer between images.

The transfer keeps the first k singular triplets of the source image (where
image content concentrates) and adopts triplets k+1..r from the target image
(where its noise lives), clips the recombined matrix to 8-bit range, and
histogram-matches the result against the target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailureError,
    NonFiniteEntryError,
    ShapeMismatchError,
    ThresholdOutOfRangeError,
)
from .imaging import as_gray, from_matrix, histogram_match, resize_bilinear, to_matrix

RESIZE_POLICIES = ("resize-target", "center-crop", "strict")


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD factors of an m-by-n matrix.

    u: (m, r) left singular vectors as columns; sigma: (r,) non-increasing,
    non-negative; v: (n, r) right singular vectors as columns; r = min(m, n).
    Column signs are canonical: the largest-magnitude entry of each u column
    is positive (u and v columns flipped jointly), so factors of identical
    inputs are bit-identical across runs.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    @property
    def rank_limit(self) -> int:
        return self.sigma.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.u.shape[0], self.v.shape[0])


def svd(mat: np.ndarray) -> SvdFactors:
    """Thin SVD with canonical column signs.

    Delegates to LAPACK's dense decomposition; the contract (reconstruction
    within 1e-10 relative Frobenius error, orthonormal factor columns) is
    enforced by the test suite against an independent Jacobi oracle.
    """
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ShapeMismatchError(f"expected a non-empty 2-D matrix, got shape {mat.shape}")
    if not np.isfinite(mat).all():
        raise NonFiniteEntryError("matrix contains NaN or Inf entries")
    try:
        u, sigma, vt = np.linalg.svd(mat, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(mat.shape[0], mat.shape[1]) from exc
    v = vt.T
    # canonical signs: largest-magnitude entry of each u column made positive
    anchors = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[anchors, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return SvdFactors(u=u * signs, sigma=sigma, v=v * signs)


def _check_threshold(k: int, rank_limit: int) -> int:
    k = int(k)
    if not 0 <= k <= rank_limit:
        raise ThresholdOutOfRangeError(
            f"threshold k={k} outside valid range [0, {rank_limit}]"
        )
    return k


def low_rank(factors: SvdFactors, k: int) -> np.ndarray:
    """Rank-k truncated reconstruction, sum of the first k rank-1 terms."""
    k = _check_threshold(k, factors.rank_limit)
    if k == 0:
        return np.zeros(factors.shape)
    return (factors.u[:, :k] * factors.sigma[:k]) @ factors.v[:, :k].T


def recombine(source: SvdFactors, target: SvdFactors, k: int) -> np.ndarray:
    """Stacked-factor recombination: triplets 1..k from source, k+1..r from target.

    Builds the mixed factor matrices explicitly and returns their product.
    Equivalent (within 1e-9 per entry) to the low-rank-plus-residual form in
    recombine_residual.
    """
    if source.shape != target.shape:
        raise ShapeMismatchError(
            f"factor shapes differ: {source.shape} vs {target.shape}"
        )
    k = _check_threshold(k, source.rank_limit)
    u_r = np.hstack([source.u[:, :k], target.u[:, k:]])
    sigma_r = np.concatenate([source.sigma[:k], target.sigma[k:]])
    v_r = np.hstack([source.v[:, :k], target.v[:, k:]])
    return (u_r * sigma_r) @ v_r.T


def recombine_residual(
    source: SvdFactors,
    target: SvdFactors,
    k: int,
    target_matrix: np.ndarray | None = None,
) -> np.ndarray:
    """Recombination as low_rank(source, k) + (target - low_rank(target, k)).

    Expanding the stacked product into rank-1 terms shows this equals
    recombine(); it needs two truncated reconstructions instead of a full
    dense one. When the original target matrix is at hand, passing it avoids
    reconstructing it from the factors.
    """
    if source.shape != target.shape:
        raise ShapeMismatchError(
            f"factor shapes differ: {source.shape} vs {target.shape}"
        )
    k = _check_threshold(k, source.rank_limit)
    if target_matrix is None:
        target_matrix = low_rank(target, target.rank_limit)
    return low_rank(source, k) + (target_matrix - low_rank(target, k))


def reconcile_shapes(
    source: np.ndarray, target: np.ndarray, policy: str = "resize-target"
) -> np.ndarray:
    """Bring the target image to the source's dimensions per the chosen policy.

    resize-target: bilinear-resize the target (default; keeps source geometry
    so source segmentation labels stay valid). center-crop: crop the target's
    center, valid only when the target is at least as large in both
    dimensions. strict: require identical dimensions.
    """
    source = as_gray(source)
    target = as_gray(target)
    if policy not in RESIZE_POLICIES:
        raise ValueError(f"unknown resize policy {policy!r}, expected one of {RESIZE_POLICIES}")
    sh, sw = source.shape
    th, tw = target.shape
    if (th, tw) == (sh, sw):
        return target
    if policy == "strict":
        raise ShapeMismatchError(
            f"strict policy requires equal dimensions: source {sw}x{sh}, target {tw}x{th}"
        )
    if policy == "center-crop":
        if th < sh or tw < sw:
            raise ShapeMismatchError(
                f"center-crop needs target >= source in both dimensions: "
                f"source {sw}x{sh}, target {tw}x{th}"
            )
        top = (th - sh) // 2
        left = (tw - sw) // 2
        return target[top : top + sh, left : left + sw]
    return resize_bilinear(target, sw, sh)


def svdna_transfer(
    source: np.ndarray,
    target: np.ndarray,
    k: int,
    resize_policy: str = "resize-target",
) -> np.ndarray:
    """Restyle the source image with the target image's noise character.

    Pipeline: reconcile shapes per resize_policy, decompose both matrices,
    recombine with threshold k (residual form, double precision), quantize
    once to 8-bit, then histogram-match against the reconciled target.
    Output dimensions equal the source's; geometry is never permuted,
    cropped, or warped, so segmentation labels of the source stay valid.
    """
    source = as_gray(source)
    target = reconcile_shapes(source, target, resize_policy)
    rank_limit = min(source.shape)
    _check_threshold(k, rank_limit)

    source_mat = to_matrix(source)
    target_mat = to_matrix(target)
    noised = recombine_residual(svd(source_mat), svd(target_mat), k, target_mat)
    clipped = from_matrix(noised)
    return histogram_match(clipped, target)
