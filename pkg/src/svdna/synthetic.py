"""Seeded synthetic grayscale images for benchmarks, demos, and tests.

Everything here is deterministic in its seed arguments. The phantoms are
built from a handful of low-frequency cosine modes plus separable Gaussian
blobs, so their matrix rank stays far below typical noise thresholds: a
moderate k keeps essentially all phantom content while swapping the noise
tail.
"""

from __future__ import annotations

import numpy as np

from .imaging import quantize


def random_image(width: int, height: int, seed: int) -> np.ndarray:
    """Uniform random uint8 image."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=(height, width), dtype=np.uint8)


def gaussian_field(
    width: int, height: int, mean: float, sigma: float, seed: int
) -> np.ndarray:
    """Quantized iid Gaussian image (clipped to [0, 255])."""
    rng = np.random.default_rng(seed)
    return quantize(rng.normal(mean, sigma, size=(height, width)))


def smooth_phantom(
    width: int,
    height: int,
    seed: int,
    low: float = 60.0,
    high: float = 195.0,
) -> np.ndarray:
    """Smooth float64 phantom scaled to [low, high].

    Four cosine modes (each separable, rank <= 2) plus three Gaussian blobs
    (rank 1 each) bound the rank by 11 regardless of size.
    """
    rng = np.random.default_rng(seed)
    y = np.linspace(0.0, 1.0, height)[:, None]
    x = np.linspace(0.0, 1.0, width)[None, :]
    field = np.zeros((height, width))
    for _ in range(4):
        fx, fy = rng.uniform(0.5, 2.5, size=2)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        field += rng.uniform(0.5, 1.0) * np.cos(2.0 * np.pi * (fx * x + fy * y) + phase)
    for _ in range(3):
        cx, cy = rng.uniform(0.15, 0.85, size=2)
        width_frac = rng.uniform(0.08, 0.25)
        bump = np.exp(-((x - cx) ** 2) / (2 * width_frac**2)) * np.exp(
            -((y - cy) ** 2) / (2 * width_frac**2)
        )
        field += rng.uniform(0.5, 1.5) * bump
    span = field.max() - field.min()
    if span == 0.0:
        return np.full((height, width), 0.5 * (low + high))
    return low + (field - field.min()) * (high - low) / span


def noisy_phantom(
    width: int,
    height: int,
    content_seed: int,
    noise_sigma: float,
    noise_seed: int,
) -> np.ndarray:
    """Quantized phantom with added iid Gaussian noise of the given sigma."""
    clean = smooth_phantom(width, height, content_seed)
    rng = np.random.default_rng(noise_seed)
    return quantize(clean + rng.normal(0.0, noise_sigma, size=clean.shape))
