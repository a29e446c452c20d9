"""Pixel-level substrate: image I/O, histograms, histogram matching, resizing.

A grayscale image is a 2-D uint8 numpy array (row-major, intensities in
[0, 255] enforced by the dtype). Its matrix view is a 2-D float64 array.
All functions here are pure; none mutate their inputs.
"""

from __future__ import annotations

import io
import logging
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    DecodeError,
    NonFiniteEntryError,
    ShapeMismatchError,
    UnsupportedFormatError,
    WriteError,
)

log = logging.getLogger("svdna")

# BT.601 luma weights for RGB -> grayscale conversion.
_LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114], dtype=np.float64)

# Formats accepted on load; JPEG decodes but is flagged (lossy source).
_LOADABLE_FORMATS = {"PNG", "TIFF", "JPEG"}
_SAVE_EXTENSIONS = {".png": "PNG", ".tif": "TIFF", ".tiff": "TIFF"}


def as_gray(img: np.ndarray) -> np.ndarray:
    """Validate that img is a non-empty 2-D uint8 array and return it."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ShapeMismatchError(f"expected a 2-D grayscale array, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        raise ShapeMismatchError(f"expected uint8 pixels, got dtype {arr.dtype}")
    if arr.size == 0:
        raise ShapeMismatchError("image must be non-empty")
    return arr


def quantize(values: np.ndarray) -> np.ndarray:
    """Round half-away-from-zero to the nearest integer, clamp to [0, 255].

    This is the single quantization rule used everywhere an intensity is
    produced from real-valued arithmetic.
    """
    values = np.asarray(values, dtype=np.float64)
    rounded = np.copysign(np.floor(np.abs(values) + 0.5), values)
    return np.clip(rounded, 0.0, 255.0).astype(np.uint8)


def load_image(path) -> np.ndarray:
    """Load a raster file as an 8-bit grayscale image.

    PNG and 8-bit TIFF are the supported formats; JPEG is accepted with a
    warning (lossy). Multi-channel inputs are converted to luminance with
    BT.601 weights (0.299, 0.587, 0.114) and rounded to the nearest integer;
    an alpha channel, if present, is ignored.
    """
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such image file: {p}")
    try:
        with Image.open(p) as im:
            fmt = im.format
            if fmt not in _LOADABLE_FORMATS:
                raise UnsupportedFormatError(p, f"format {fmt!r}")
            if fmt == "JPEG":
                log.warning("loading lossy JPEG input: %s", p)
            mode = im.mode
            if mode == "1":
                im = im.convert("L")
            elif mode == "P":
                im = im.convert("RGB")
            elif mode not in ("L", "LA", "RGB", "RGBA"):
                # 16-bit / float pipelines are out of scope
                raise UnsupportedFormatError(p, f"mode {mode!r}")
            arr = np.asarray(im)
    except UnidentifiedImageError:
        raise UnsupportedFormatError(p, "not a recognized raster file") from None
    except (UnsupportedFormatError, FileNotFoundError):
        raise
    except (OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(p, str(exc)) from exc

    # astype always copies here, so callers get a writable array rather
    # than a view of the decoder's read-only buffer.
    if arr.ndim == 2:
        return arr.astype(np.uint8)
    if arr.ndim == 3 and arr.shape[2] == 2:  # LA: keep luminance plane
        return arr[:, :, 0].astype(np.uint8)
    if arr.ndim == 3 and arr.shape[2] in (3, 4):
        luma = arr[:, :, :3].astype(np.float64) @ _LUMA_WEIGHTS
        return quantize(luma)
    raise DecodeError(p, f"unexpected decoded shape {arr.shape}")


def encode_image(img: np.ndarray, suffix: str) -> bytes:
    """Encode a grayscale image to the container named by a file suffix.

    save_image writes exactly these bytes, so callers can audit outputs by
    comparing hashes without re-reading pixel data.
    """
    img = as_gray(img)
    fmt = _SAVE_EXTENSIONS.get(suffix.lower())
    if fmt is None:
        raise UnsupportedFormatError(suffix, "save supports .png/.tif/.tiff only")
    buf = io.BytesIO()
    Image.fromarray(img, mode="L").save(buf, format=fmt)
    return buf.getvalue()


def save_image(img: np.ndarray, path) -> None:
    """Write a grayscale image losslessly (PNG or 8-bit TIFF, by extension)."""
    p = Path(path)
    payload = encode_image(img, p.suffix)
    try:
        p.write_bytes(payload)
    except OSError as exc:
        raise WriteError(p, str(exc)) from exc


def to_matrix(img: np.ndarray) -> np.ndarray:
    """Exact real-valued matrix view of an image."""
    return as_gray(img).astype(np.float64)


def from_matrix(mat: np.ndarray) -> np.ndarray:
    """Quantize a real matrix to an 8-bit image (round, then clamp to [0, 255])."""
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.size == 0:
        raise ShapeMismatchError(f"expected a non-empty 2-D matrix, got shape {mat.shape}")
    if not np.isfinite(mat).all():
        raise NonFiniteEntryError("matrix contains NaN or Inf entries")
    return quantize(mat)


def histogram(img: np.ndarray) -> np.ndarray:
    """256-bin intensity histogram; counts sum to the pixel count."""
    img = as_gray(img)
    return np.bincount(img.ravel(), minlength=256).astype(np.int64)


def cdf_from_histogram(hist: np.ndarray) -> np.ndarray:
    """Normalized cumulative distribution; non-decreasing with cdf[255] == 1.0."""
    hist = np.asarray(hist, dtype=np.int64)
    total = int(hist.sum())
    if total <= 0:
        raise ShapeMismatchError("histogram total must be positive")
    return np.cumsum(hist) / total


def match_lut(src: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Intensity lookup table mapping src's distribution onto ref's.

    L(v) = min{ u in [0, 255] : CDF_ref(u) >= CDF_src(v) }, the inverse-CDF
    rule with ties broken toward the smallest intensity. L is monotone
    non-decreasing by construction.
    """
    cdf_src = cdf_from_histogram(histogram(src))
    cdf_ref = cdf_from_histogram(histogram(ref))
    lut = np.searchsorted(cdf_ref, cdf_src, side="left")
    return np.minimum(lut, 255).astype(np.uint8)


def histogram_match(src: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Remap src intensities so the output distribution approximates ref's.

    Output has src's dimensions; ref may have any non-empty size.
    """
    src = as_gray(src)
    return match_lut(src, ref)[src]


def resize_bilinear(img: np.ndarray, width: int, height: int) -> np.ndarray:
    """Bilinear resize with edge clamping.

    Sample coordinates follow the align-corners convention: output index i
    maps to i * (src - 1) / (dst - 1) (the center of the source range when
    dst == 1), so corner pixels are preserved and same-size resizes are
    identities. Interpolated values are quantized with the shared rule.
    """
    img = as_gray(img)
    if width < 1 or height < 1:
        raise ShapeMismatchError(f"target size must be >= 1x1, got {width}x{height}")
    src_h, src_w = img.shape
    if (src_w, src_h) == (width, height):
        return img.copy()

    def _coords(dst: int, src: int) -> np.ndarray:
        if dst == 1:
            return np.full(1, (src - 1) / 2.0)
        return np.arange(dst, dtype=np.float64) * ((src - 1) / (dst - 1))

    xs = _coords(width, src_w)
    ys = _coords(height, src_h)
    x0 = np.clip(np.floor(xs).astype(np.int64), 0, src_w - 1)
    y0 = np.clip(np.floor(ys).astype(np.int64), 0, src_h - 1)
    x1 = np.minimum(x0 + 1, src_w - 1)
    y1 = np.minimum(y0 + 1, src_h - 1)
    fx = xs - x0
    fy = ys - y0

    m = img.astype(np.float64)
    top = m[np.ix_(y0, x0)] * (1 - fx) + m[np.ix_(y0, x1)] * fx
    bot = m[np.ix_(y1, x0)] * (1 - fx) + m[np.ix_(y1, x1)] * fx
    out = top * (1 - fy)[:, None] + bot * fy[:, None]
    return quantize(out)
