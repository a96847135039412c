"""Seeded random adapter-graph instances for property tests and experiments.

Instances are structural stress tests only; no attempt is made to give the
generated interfaces realistic semantics.

Randomness comes from splitmix64 (Steele, Lea & Flood's 64-bit mixing
generator, as published in the reference sequence of Vigna's xoshiro page)
rather than a language-provided RNG, so the same parameters produce the
same instance in any implementation of this generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidParams
from .model import (
    Adapter,
    AdapterGraph,
    Interface,
    build_adapter,
    build_graph,
    build_interface,
)

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64: state advances by the golden-gamma constant, output is
    the standard 3-round xor-shift-multiply mix of the new state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) via modulo; bias is irrelevant for
        test-instance generation and the modulo form is trivially portable."""
        return self.next_u64() % n

    def between(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi], both ends inclusive."""
        return lo + self.below(hi - lo + 1)

    def chance(self, probability: float) -> bool:
        return self.next_u64() < probability * 2.0**64


@dataclass(frozen=True)
class GenParams:
    """Shape parameters for a random instance; ranges are inclusive."""

    interface_count: int
    methods_per_interface: tuple[int, int]
    values_per_method: tuple[int, int]
    adapter_count: int
    entry_density: float
    seed: int

    def __post_init__(self) -> None:
        if self.interface_count < 1:
            raise InvalidParams("interface_count must be at least 1")
        if self.adapter_count < 0:
            raise InvalidParams("adapter_count must be nonnegative")
        for name, (lo, hi) in (
            ("methods_per_interface", self.methods_per_interface),
            ("values_per_method", self.values_per_method),
        ):
            if lo < 1 or hi < lo:
                raise InvalidParams(f"{name} range ({lo}, {hi}) is empty or below 1")
        if not 0.0 <= self.entry_density <= 1.0:
            raise InvalidParams("entry_density must be within [0, 1]")


def _random_interface(rng: SplitMix64, index: int, params: GenParams) -> Interface:
    method_count = rng.between(*params.methods_per_interface)
    methods = []
    for m in range(method_count):
        value_count = rng.between(*params.values_per_method)
        methods.append((f"m{m}", [f"v{k}" for k in range(value_count)]))
    return build_interface(f"I{index}", methods)


def _random_adapter(
    rng: SplitMix64, index: int, interfaces: list[Interface], params: GenParams
) -> Adapter:
    source = interfaces[rng.below(len(interfaces))]
    target = interfaces[rng.below(len(interfaces))]
    entries = []
    for input_tuple in itertools.product(*(d.values for d in source.domains)):
        if not rng.chance(params.entry_density):
            continue
        output = []
        for domain in target.domains:
            pool = domain.non_bottom
            mask = 1 + rng.below(2 ** len(pool) - 1)  # nonempty subset
            output.append([v for k, v in enumerate(pool) if mask >> k & 1])
        entries.append((input_tuple, output))
    return build_adapter(f"A{index}", source, target, entries)


def random_instance(params: GenParams) -> tuple[AdapterGraph, str, str]:
    """Generate a validated graph plus suggested (source, target) ids.

    Deterministic in the seed; the suggestions are distinct whenever the
    instance has at least two interfaces.
    """
    rng = SplitMix64(params.seed)
    interfaces = [
        _random_interface(rng, i, params) for i in range(params.interface_count)
    ]
    adapters = [
        _random_adapter(rng, j, interfaces, params)
        for j in range(params.adapter_count)
    ]
    graph = build_graph(interfaces, adapters)
    source = interfaces[0].id
    target = interfaces[-1].id
    return graph, source, target
