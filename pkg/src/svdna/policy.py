"""Training-time augmentation sampling over a multi-domain image registry.

Per source image, the policy either applies no style transfer (probability
exactly 1/n, where n counts the source domain plus all target domains) or
restyles toward a uniformly chosen target domain with a uniformly chosen
style image and a threshold k drawn uniformly from the configured range.
Every decision is a pure function of (seed, image ordinal).

Registry config grammar (TOML)::

    seed = 42          # optional, defaults to 42
    k_min = 20         # optional, defaults to 20
    k_max = 50         # optional, defaults to 50

    [source]
    name = "spectralis"
    dir = "images/source"

    [[target]]         # zero or more target domains
    name = "cirrus"
    dir = "images/cirrus"

Relative dir paths are resolved against the config file's directory. Each
dir contributes its *.png and *.tif files, sorted lexicographically by file
name, which fixes the image ordinals and style indices.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .engine import svdna_transfer
from .errors import ConfigError
from .imaging import load_image
from .rng import RngStream, derive_stream

DEFAULT_SEED = 42
IMAGE_PATTERNS = ("*.png", "*.tif")


@dataclass(frozen=True)
class KRange:
    """Inclusive integer range the noise transfer threshold is sampled from."""

    k_min: int = 20
    k_max: int = 50

    def __post_init__(self):
        if not 0 <= self.k_min <= self.k_max:
            raise ConfigError(f"invalid k range [{self.k_min}, {self.k_max}]")


@dataclass(frozen=True)
class DomainPool:
    """A named domain and its ordered image paths."""

    name: str
    images: tuple[Path, ...]


@dataclass(frozen=True)
class DomainRegistry:
    """Source domain plus target domains; n = 1 + number of targets.

    Construction verifies that every listed path exists, domain names are
    unique, and each target pool is non-empty (a target domain without style
    images could never be sampled from). Images are loaded lazily at
    decision-application time, so large registries stay cheap to hold.
    """

    source: DomainPool
    targets: tuple[DomainPool, ...] = field(default=())

    def __post_init__(self):
        names = [self.source.name] + [t.name for t in self.targets]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate domain names in {names}")
        for pool in (self.source, *self.targets):
            if not pool.name:
                raise ConfigError("domain names must be non-empty")
            for p in pool.images:
                if not Path(p).is_file():
                    raise FileNotFoundError(f"registry lists missing file: {p}")
        for pool in self.targets:
            if not pool.images:
                raise ConfigError(f"target domain {pool.name!r} has no images")

    @property
    def n(self) -> int:
        return 1 + len(self.targets)

    def target(self, name: str) -> DomainPool:
        for pool in self.targets:
            if pool.name == name:
                return pool
        raise ConfigError(f"unknown target domain {name!r}")


@dataclass(frozen=True)
class AugmentDecision:
    """One sampled augmentation outcome.

    kind is "no_transfer" or "transfer"; the remaining fields are set only
    for transfers.
    """

    kind: str
    domain: str | None = None
    style_index: int | None = None
    k: int | None = None


def sample_decision(
    registry: DomainRegistry, k_range: KRange, rng: RngStream
) -> AugmentDecision:
    """Draw one augmentation decision.

    Draw order is pinned (golden reproducibility): first an outcome in
    [0, n) where 0 means no transfer and j >= 1 selects target j-1, then for
    transfers a style index uniform over the domain pool, then k uniform on
    [k_min, k_max]. Every outcome has probability exactly 1/n; n = 1
    degenerates to always-no-transfer.
    """
    outcome = rng.next_below(registry.n)
    if outcome == 0:
        return AugmentDecision(kind="no_transfer")
    pool = registry.targets[outcome - 1]
    style_index = rng.next_below(len(pool.images))
    k = rng.next_int(k_range.k_min, k_range.k_max)
    return AugmentDecision(kind="transfer", domain=pool.name, style_index=style_index, k=k)


def apply_decision(
    img: np.ndarray, decision: AugmentDecision, registry: DomainRegistry
) -> np.ndarray:
    """Apply a sampled decision to an image.

    No-transfer returns the input unchanged; a transfer loads the referenced
    style image and restyles with the default resize-target policy, so output
    dimensions always equal input dimensions and source labels stay valid.
    """
    if decision.kind == "no_transfer":
        return img
    pool = registry.target(decision.domain)
    style = load_image(pool.images[decision.style_index])
    return svdna_transfer(img, style, decision.k, "resize-target")


def list_domain_images(directory: Path) -> tuple[Path, ...]:
    """The *.png / *.tif files of a directory, sorted by file name."""
    found = []
    for pattern in IMAGE_PATTERNS:
        found.extend(directory.glob(pattern))
    return tuple(sorted(found, key=lambda p: p.name))


def load_registry_config(path) -> tuple[DomainRegistry, KRange, int]:
    """Parse a registry config file; returns (registry, k range, seed)."""
    config_path = Path(path)
    if not config_path.is_file():
        raise FileNotFoundError(f"no such config file: {config_path}")
    try:
        with open(config_path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed registry config {config_path}: {exc}") from exc

    base = config_path.parent

    def _pool(section, label: str) -> DomainPool:
        if not isinstance(section, dict) or "name" not in section or "dir" not in section:
            raise ConfigError(f"{label} block needs 'name' and 'dir' fields")
        directory = Path(section["dir"])
        if not directory.is_absolute():
            directory = base / directory
        if not directory.is_dir():
            raise FileNotFoundError(f"{label} directory does not exist: {directory}")
        return DomainPool(name=str(section["name"]), images=list_domain_images(directory))

    if "source" not in raw:
        raise ConfigError(f"{config_path}: missing [source] block")
    source = _pool(raw["source"], "source")
    target_blocks = raw.get("target", [])
    if isinstance(target_blocks, dict):
        target_blocks = [target_blocks]
    targets = tuple(_pool(block, "target") for block in target_blocks)

    seed = raw.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    try:
        k_range = KRange(int(raw.get("k_min", 20)), int(raw.get("k_max", 50)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid k_min/k_max: {exc}") from exc

    registry = DomainRegistry(source=source, targets=targets)
    return registry, k_range, seed


def decision_for_ordinal(
    registry: DomainRegistry, k_range: KRange, seed: int, ordinal: int
) -> AugmentDecision:
    """Decision for one image ordinal under a global seed."""
    return sample_decision(registry, k_range, derive_stream(seed, ordinal))
