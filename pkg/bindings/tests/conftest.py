"""Shared fixtures: registry trees built through the core's public API."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

from svdna import gaussian_field, random_image, save_image

CLI = (sys.executable, "-m", "svdna")


def write_registry(
    root: Path,
    n_source: int,
    targets: dict[str, int],
    seed: int = 7,
    k_min: int = 1,
    k_max: int = 6,
    size: int = 8,
) -> Path:
    """Build an image tree plus registry.toml; returns the config path."""
    src_dir = root / "source"
    src_dir.mkdir(parents=True)
    for i in range(n_source):
        save_image(random_image(size, size, seed=1000 + i), src_dir / f"s{i:05d}.png")

    for pool_index, (name, count) in enumerate(targets.items()):
        pool_dir = root / name
        pool_dir.mkdir()
        for i in range(count):
            img = gaussian_field(size, size, mean=120.0, sigma=14.0,
                                 seed=7000 + 100 * pool_index + i)
            save_image(img, pool_dir / f"t{i:02d}.png")

    lines = [
        f"seed = {seed}",
        f"k_min = {k_min}",
        f"k_max = {k_max}",
        "",
        "[source]",
        'name = "clean"',
        'dir = "source"',
    ]
    for name in targets:
        lines += ["", "[[target]]", f'name = "{name}"', f'dir = "{name}"']
    config = root / "registry.toml"
    config.write_text("\n".join(lines) + "\n")
    return config


@pytest.fixture
def small_registry(tmp_path):
    return write_registry(tmp_path, n_source=6, targets={"mild": 2, "harsh": 3})


@pytest.fixture
def solo_registry(tmp_path):
    """A registry with no target pools: n = 1, every decision is no-transfer."""
    return write_registry(tmp_path, n_source=3, targets={})
