"""Exception types raised by the svdna library.

File-not-found conditions use the builtin FileNotFoundError; everything else
derives from SvdnaError so callers can catch library failures in one clause.
"""


class SvdnaError(Exception):
    """Base class for all svdna-specific errors."""


class UnsupportedFormatError(SvdnaError):
    """Raster format not supported for the attempted operation."""

    def __init__(self, path, reason: str = ""):
        self.path = str(path)
        msg = f"unsupported image format: {self.path}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class DecodeError(SvdnaError):
    """File was recognized but could not be decoded."""

    def __init__(self, path, reason: str = ""):
        self.path = str(path)
        msg = f"cannot decode image: {self.path}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class WriteError(SvdnaError):
    """Image could not be written to disk."""

    def __init__(self, path, reason: str = ""):
        self.path = str(path)
        msg = f"cannot write image: {self.path}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class NonFiniteEntryError(SvdnaError):
    """A matrix contained NaN or Inf where finite values are required."""


class ConvergenceFailureError(SvdnaError):
    """The SVD iteration failed to converge."""

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        super().__init__(f"SVD failed to converge on a {rows}x{cols} matrix")


class ThresholdOutOfRangeError(SvdnaError):
    """Noise transfer threshold k outside [0, min(m, n)]."""


class ShapeMismatchError(SvdnaError):
    """Operands have incompatible shapes."""


class ZeroVarianceError(SvdnaError):
    """Statistic undefined because all pixels are equal."""


class ImageTooSmallError(SvdnaError):
    """Image below the minimum size required by an estimator."""


class EmptySetError(SvdnaError):
    """A non-empty collection of statistics was required."""


class ConfigError(SvdnaError):
    """Domain registry configuration is invalid."""
