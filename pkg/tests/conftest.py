"""Shared fixtures: tiny on-disk image sets and registry configs."""

from __future__ import annotations

from pathlib import Path

import pytest

from svdna.imaging import save_image
from svdna.synthetic import gaussian_field, noisy_phantom


def write_registry(
    root: Path,
    n_source: int = 6,
    targets: dict[str, int] | None = None,
    seed: int = 7,
    k_min: int = 20,
    k_max: int = 50,
    size: int = 48,
) -> Path:
    """Create a small registry tree under root and return the config path."""
    targets = {"cirrus": 3, "topcon": 2} if targets is None else targets
    src_dir = root / "source"
    src_dir.mkdir(parents=True)
    for i in range(n_source):
        save_image(noisy_phantom(size, size, 100 + i, 2.0, 900 + i), src_dir / f"s{i:02d}.png")
    lines = [
        f"seed = {seed}",
        f"k_min = {k_min}",
        f"k_max = {k_max}",
        "",
        "[source]",
        'name = "source"',
        'dir = "source"',
    ]
    for t_index, (name, count) in enumerate(targets.items()):
        t_dir = root / name
        t_dir.mkdir()
        for i in range(count):
            save_image(
                gaussian_field(size, size, 120.0, 18.0, 7000 + 100 * t_index + i),
                t_dir / f"{name}{i:02d}.png",
            )
        lines += ["", "[[target]]", f'name = "{name}"', f'dir = "{name}"']
    config = root / "registry.toml"
    config.write_text("\n".join(lines) + "\n")
    return config


@pytest.fixture
def registry_tree(tmp_path):
    return write_registry(tmp_path)
