"""Deterministic per-ordinal random streams.

Reproducibility contract: every augmentation decision is a pure function of
(global seed, image ordinal), independent of scheduling or worker count.
Streams use splitmix64 — state advances by the 64-bit golden-gamma constant
and each output is the splitmix64 avalanche mix of the state. The stream for
ordinal i is seeded with

    state0 = mix64(seed XOR mix64(ordinal + GAMMA))

so distinct ordinals land on statistically independent subsequences. The
generator and mix function are pinned here; changing either breaks golden
reproducibility and is a contract change.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(value: int) -> int:
    """splitmix64 finalizer: a fixed 64-bit avalanche mix."""
    z = value & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class RngStream:
    """One deterministic splitmix64 draw sequence."""

    __slots__ = ("_state",)

    def __init__(self, state: int):
        self._state = state & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def next_float(self) -> float:
        """Uniform draw in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, bound: int) -> int:
        """Unbiased uniform integer in [0, bound) via rejection sampling."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            draw = self.next_u64()
            if draw < limit:
                return draw % bound

    def next_int(self, lo: int, hi: int) -> int:
        """Uniform integer on the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_below(hi - lo + 1)


def derive_stream(seed: int, ordinal: int) -> RngStream:
    """Stream for one image ordinal; same (seed, ordinal) -> identical draws."""
    return RngStream(mix64((seed & _MASK64) ^ mix64((ordinal + _GAMMA) & _MASK64)))
