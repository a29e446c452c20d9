"""Generate a synthetic multi-domain image tree plus a registry config.

Writes a source pool of lightly noised smooth phantoms and two target pools
with distinct noise characters (one moderate Gaussian, one heavy), then a
``registry.toml`` pointing at all three.  The tree is ready for::

    svdna batch <out>/registry.toml -o <out>/augmented
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from svdna import gaussian_field, noisy_phantom, save_image


def build_tree(root: Path, n_source: int, n_target: int, size: int, seed: int) -> Path:
    src_dir = root / "source"
    src_dir.mkdir(parents=True, exist_ok=True)
    for i in range(n_source):
        img = noisy_phantom(size, size, content_seed=seed + i, noise_sigma=2.0,
                            noise_seed=seed + 1000 + i)
        save_image(img, src_dir / f"s{i:03d}.png")

    pools = {"moderate": 12.0, "heavy": 22.0}
    for pool_index, (name, sigma) in enumerate(pools.items()):
        pool_dir = root / name
        pool_dir.mkdir(parents=True, exist_ok=True)
        for i in range(n_target):
            img = gaussian_field(size, size, mean=128.0, sigma=sigma,
                                 seed=seed + 5000 + 100 * pool_index + i)
            save_image(img, pool_dir / f"t{i:03d}.png")

    config = root / "registry.toml"
    lines = [
        f"seed = {seed}",
        "k_min = 20",
        "k_max = 50",
        "",
        "[source]",
        'name = "clean"',
        'dir = "source"',
    ]
    for name in pools:
        lines += ["", "[[target]]", f'name = "{name}"', f'dir = "{name}"']
    config.write_text("\n".join(lines) + "\n")
    return config


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", type=Path, help="directory to create the tree in")
    parser.add_argument("--sources", type=int, default=16)
    parser.add_argument("--targets", type=int, default=6, help="images per target pool")
    parser.add_argument("--size", type=int, default=256)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if min(args.sources, args.targets) < 1 or args.size < 16:
        parser.error("need at least one image per pool and size >= 16")

    rng_check = np.random.default_rng(args.seed)  # fail fast on bad seed types
    del rng_check

    config = build_tree(args.out, args.sources, args.targets, args.size, args.seed)
    print(f"wrote {config}")
    print(f"try: svdna batch {config} -o {args.out / 'augmented'}")


if __name__ == "__main__":
    main()
