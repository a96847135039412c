"""Chain search: greedy best-first construction and a brute-force oracle.

The greedy search works backward from the target: it starts with the empty
chain (the identity at the target) and repeatedly extends the open chain
with the highest score by prepending adapters. Because adaptation is
monotone, extending a chain never increases its score, so the first
complete chain popped is optimal.

The score of a chain is the weighted count of non-bottom abstract values
that survive adapting full capability through it. Bottom encodes no
capability, so its weight is pinned to zero.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidParams, NoChain, ReservedName, TooLarge
from .model import (
    BOT,
    AdapterGraph,
    AvailabilityVector,
    Interface,
    full_vector,
)
from .semantics import AdaptationPipeline, apply_pipeline, identity_pipeline, prepend

DEFAULT_ORACLE_GUARD = 10**6


@dataclass(frozen=True)
class WeightMap:
    """Per-abstract-value weights for scoring, keyed by
    (interface id, method name, value name). Unlisted entries weigh 1.0;
    "bot" always weighs 0 and cannot be overridden."""

    weights: Mapping[tuple[str, str, str], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (interface, method, value), weight in self.weights.items():
            if value == BOT:
                raise ReservedName(
                    f"weight for 'bot' is fixed at 0 "
                    f"({interface}.{method}.bot)"
                )
            if weight < 0:
                raise InvalidParams(
                    f"negative weight {weight} for "
                    f"{interface}.{method}.{value}"
                )

    def weight(self, interface: str, method: str, value: str) -> float:
        if value == BOT:
            return 0.0
        return self.weights.get((interface, method, value), 1.0)


UNIT_WEIGHTS = WeightMap()


def vector_score(
    interface: Interface, v: AvailabilityVector, weights: WeightMap
) -> float:
    """Weight-sum of the non-bottom values across all components of v."""
    total = 0.0
    for method, component in zip(interface.methods, v.components):
        for value in component:
            total += weights.weight(interface.id, method.name, value)
    return total


def count_abstract(
    pipeline: AdaptationPipeline, weights: WeightMap = UNIT_WEIGHTS
) -> float:
    """Score a pipeline: adapt full capability through it and weigh the
    surviving non-bottom values. With unit weights this is a plain count."""
    result = apply_pipeline(pipeline, full_vector(pipeline.source))
    return vector_score(pipeline.target, result, weights)


@dataclass(frozen=True)
class ChainResult:
    chain: tuple[str, ...]
    source: str
    target: str
    final_vector: AvailabilityVector
    score: float


def _result(pipeline: AdaptationPipeline, weights: WeightMap) -> ChainResult:
    final = apply_pipeline(pipeline, full_vector(pipeline.source))
    return ChainResult(
        chain=pipeline.chain,
        source=pipeline.source.id,
        target=pipeline.target.id,
        final_vector=final,
        score=vector_score(pipeline.target, final, weights),
    )


def greedy_chain(
    graph: AdapterGraph,
    sources: Iterable[str],
    target: str,
    weights: WeightMap = UNIT_WEIGHTS,
) -> ChainResult:
    """Best-first search for a loss-optimal acyclic chain into ``target``
    from any interface in ``sources``.

    Ties between equal-score open chains break toward shorter chains, then
    lexicographically smaller adapter-id sequences, so results are
    deterministic. If the target itself is a source the empty chain (the
    lossless identity) is returned. Raises NoChain when the frontier
    exhausts without reaching any source.
    """
    source_ids = set(sources)
    if not source_ids:
        raise InvalidParams("sources must be nonempty")
    for interface_id in source_ids | {target}:
        graph.require_interface(interface_id)

    start = identity_pipeline(graph.interfaces[target])
    open_chains: list[tuple[float, int, tuple[str, ...]]] = [
        (-count_abstract(start, weights), 0, start.chain)
    ]
    pipelines: dict[tuple[str, ...], AdaptationPipeline] = {start.chain: start}
    seen: set[tuple[str, ...]] = {start.chain}

    while open_chains:
        neg_score, _, chain = heapq.heappop(open_chains)
        pipeline = pipelines[chain]
        if pipeline.source.id in source_ids:
            return _result(pipeline, weights)
        for adapter in graph.incoming(pipeline.source.id):
            if adapter.source.id in pipeline.visited:
                continue
            extended = prepend(adapter, pipeline)
            if extended.chain in seen:
                continue
            seen.add(extended.chain)
            pipelines[extended.chain] = extended
            heapq.heappush(
                open_chains,
                (
                    -count_abstract(extended, weights),
                    len(extended.chain),
                    extended.chain,
                ),
            )
    raise NoChain(
        f"no acyclic chain reaches {target!r} from any of "
        f"{sorted(source_ids)}"
    )


def enumerate_chains(
    graph: AdapterGraph, source: str, target: str
) -> list[tuple[str, ...]]:
    """All acyclic chains (no interface visited twice) from source to
    target, ordered by length then lexicographically by adapter ids.
    source = target yields exactly the empty chain."""
    graph.require_interface(source)
    graph.require_interface(target)
    found: list[tuple[str, ...]] = []
    path: list[str] = []
    visited = {source}

    def walk(at: str) -> None:
        if at == target:
            found.append(tuple(path))
            return
        for adapter in graph.outgoing(at):
            nxt = adapter.target.id
            if nxt in visited:
                continue
            visited.add(nxt)
            path.append(adapter.id)
            walk(nxt)
            path.pop()
            visited.remove(nxt)

    walk(source)
    found.sort(key=lambda c: (len(c), c))
    return found


def chain_pipeline(graph: AdapterGraph, chain: Iterable[str], source: str) -> AdaptationPipeline:
    """Build a pipeline from adapter ids starting at ``source``."""
    adapters = [graph.adapters[adapter_id] for adapter_id in chain]
    end = adapters[-1].target if adapters else graph.require_interface(source)
    pipeline = identity_pipeline(end)
    for adapter in reversed(adapters):
        pipeline = prepend(adapter, pipeline)
    if pipeline.source.id != source:
        raise InvalidParams(
            f"chain starts at {pipeline.source.id!r}, expected {source!r}"
        )
    return pipeline


def oracle_optimal(
    graph: AdapterGraph,
    sources: Iterable[str],
    target: str,
    weights: WeightMap = UNIT_WEIGHTS,
    guard: int = DEFAULT_ORACLE_GUARD,
) -> ChainResult:
    """Brute force: score every acyclic chain from every source and return
    a maximal one. Ties break by (length, adapter ids, source id). Refuses
    with TooLarge when the candidate count exceeds ``guard``."""
    source_ids = sorted(set(sources))
    if not source_ids:
        raise InvalidParams("sources must be nonempty")
    candidates: list[tuple[int, tuple[str, ...], str]] = []
    for src in source_ids:
        for chain in enumerate_chains(graph, src, target):
            candidates.append((len(chain), chain, src))
            if len(candidates) > guard:
                raise TooLarge(
                    f"more than {guard} candidate chains; raise the guard "
                    f"to search exhaustively"
                )
    if not candidates:
        raise NoChain(
            f"no acyclic chain reaches {target!r} from any of {source_ids}"
        )
    candidates.sort()
    best: ChainResult | None = None
    for _, chain, src in candidates:
        result = _result(chain_pipeline(graph, chain, src), weights)
        if best is None or result.score > best.score:
            best = result
    assert best is not None
    return best
