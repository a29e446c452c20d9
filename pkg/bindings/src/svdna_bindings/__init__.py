"""In-process array surface over the svdna core for training loops.

Everything here marshals buffers and forwards to the core library; no
numeric logic lives in this package, so results are bit-identical to the
`svdna` CLI on the same inputs. Input buffers are borrowed only for the
duration of a call, and every returned array is freshly allocated.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

import svdna
from svdna import (
    apply_decision,
    decision_for_ordinal,
    load_registry_config,
    noise_profile,
    svdna_transfer,
)

__version__ = svdna.__version__

__all__ = [
    "ArrayImageView",
    "DecisionRecord",
    "SamplerHandle",
    "bind_noise_profile",
    "bind_sampler",
    "bind_svdna_transfer",
    "__version__",
]


@dataclass(frozen=True)
class ArrayImageView:
    """A borrowed row-major 8-bit image buffer.

    `buffer` is anything supporting the buffer protocol (bytes, memoryview,
    a contiguous numpy array) holding exactly height*width bytes. The view
    is read during the call it is passed to and never retained.
    """

    height: int
    width: int
    buffer: object

    def as_array(self) -> np.ndarray:
        flat = np.frombuffer(self.buffer, dtype=np.uint8)
        expected = self.height * self.width
        if flat.size != expected:
            raise ValueError(
                f"buffer holds {flat.size} bytes, expected "
                f"{self.height}x{self.width}={expected}"
            )
        return flat.reshape(self.height, self.width)


def _as_image(img) -> np.ndarray:
    if isinstance(img, ArrayImageView):
        return img.as_array()
    arr = np.asarray(img)
    if arr.dtype != np.uint8 or arr.ndim != 2:
        raise ValueError("expected an ArrayImageView or a 2-D uint8 array")
    return arr


def bind_svdna_transfer(
    source, target, k: int, resize_policy: str = "resize-target"
) -> np.ndarray:
    """Noise transfer on in-memory arrays; same contract as svdna_transfer.

    Core exceptions (threshold range, shape mismatch, numeric failures)
    propagate unchanged. The result is a new array, never a view of either
    input.
    """
    out = svdna_transfer(_as_image(source), _as_image(target), k, resize_policy)
    return np.array(out)


def bind_noise_profile(img) -> Tuple[Optional[float], float, float]:
    """(snr or None, sigma_immerkaer, sigma_wavelet) of an in-memory image."""
    stats = noise_profile(_as_image(img))
    return (stats.snr, stats.sigma_immerkaer, stats.sigma_wavelet)


@dataclass(frozen=True)
class DecisionRecord:
    """One sampling decision, mirroring a batch manifest row's fields."""

    ordinal: int
    decision: str
    domain: Optional[str]
    style_path: Optional[Path]
    k: Optional[int]


class SamplerHandle:
    """Ordinal-addressed augmentation sampler bound to one (config, seed).

    Decisions depend only on (seed, ordinal), so calls are reentrant, any
    ordinal can be queried in any order, and independent handles never
    interfere.
    """

    def __init__(self, registry, k_range, seed: int):
        self._registry = registry
        self._k_range = k_range
        self._seed = seed

    @property
    def seed(self) -> int:
        return self._seed

    def decision(self, ordinal: int) -> DecisionRecord:
        """The decision for an ordinal, without touching any image."""
        sampled = decision_for_ordinal(self._registry, self._k_range, self._seed, ordinal)
        style_path = None
        if sampled.kind == "transfer":
            pool = self._registry.target(sampled.domain)
            style_path = pool.images[sampled.style_index]
        return DecisionRecord(ordinal, sampled.kind, sampled.domain, style_path, sampled.k)

    def next(self, ordinal: int, source) -> Tuple[np.ndarray, DecisionRecord]:
        """Apply the ordinal's decision to a source array.

        Returns (restyled array, decision record); a no-transfer decision
        returns a copy of the input.
        """
        img = _as_image(source)
        sampled = decision_for_ordinal(self._registry, self._k_range, self._seed, ordinal)
        out = apply_decision(img, sampled, self._registry)
        return np.array(out), self.decision(ordinal)


def bind_sampler(config_path, seed: Optional[int] = None) -> SamplerHandle:
    """Open a sampler over a registry config; seed overrides the config's."""
    registry, k_range, config_seed = load_registry_config(config_path)
    return SamplerHandle(registry, k_range, config_seed if seed is None else seed)
