"""Interfaces, abstract argument domains, adapters, and the adapter graph.

Every method argument is abstracted into a finite set of named values plus
the distinguished bottom value ``"bot"``, meaning "no argument handleable".
Bottom is implicit everywhere: callers never need to write it, and every
constructor injects it into domains, output sets, and availability vectors.

All values here are immutable after construction; concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    DuplicateAbstractValue,
    DuplicateId,
    DuplicateInput,
    DuplicateMethodName,
    EmptyDomain,
    InterfaceMismatch,
    UnknownInterface,
    UnknownValue,
)

BOT = "bot"


@dataclass(frozen=True)
class AbstractDomain:
    """A method's lifted abstract argument domain.

    ``values`` is canonically ordered: "bot" first, then the remaining
    names lexicographically. Size is therefore always >= 2.
    """

    values: tuple[str, ...]

    @classmethod
    def from_names(cls, names: Iterable[str], *, context: str = "") -> AbstractDomain:
        """Lift a collection of non-bottom value names into a domain.

        "bot" may appear in ``names``; it is treated as the implied bottom.
        """
        seen: set[str] = set()
        non_bottom: list[str] = []
        for name in names:
            if name in seen:
                raise DuplicateAbstractValue(
                    f"duplicate abstract value {name!r}{context}"
                )
            seen.add(name)
            if name != BOT:
                non_bottom.append(name)
        if not non_bottom:
            raise EmptyDomain(f"domain has no non-bottom values{context}")
        return cls((BOT, *sorted(non_bottom)))

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def non_bottom(self) -> tuple[str, ...]:
        return self.values[1:]

    def __contains__(self, name: object) -> bool:
        return name in self.values


@dataclass(frozen=True)
class MethodSpec:
    name: str
    domain: AbstractDomain


@dataclass(frozen=True)
class Interface:
    """A named interface with an ordered list of single-argument methods.

    Method order is fixed at construction and defines the component order
    of every tuple and vector over this interface.
    """

    id: str
    methods: tuple[MethodSpec, ...]

    @property
    def arity(self) -> int:
        return len(self.methods)

    @property
    def method_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.methods)

    @property
    def domains(self) -> tuple[AbstractDomain, ...]:
        return tuple(m.domain for m in self.methods)

    def method_index(self, name: str) -> int:
        for i, m in enumerate(self.methods):
            if m.name == name:
                return i
        raise UnknownValue(f"interface {self.id!r} has no method {name!r}")


@dataclass(frozen=True)
class AvailabilityVector:
    """What each method of an interface can currently handle.

    One set per method, in method order; every component contains "bot"
    and is a subset of the method's domain.
    """

    interface_id: str
    components: tuple[frozenset[str], ...]

    def canonical(self) -> tuple[tuple[str, ...], ...]:
        """Components as ordered tuples: bot first, then lexicographic."""
        return tuple(
            (BOT, *sorted(c - {BOT})) for c in self.components
        )


def build_interface(
    id: str, methods: Sequence[tuple[str, Sequence[str]]]
) -> Interface:
    """Declare an interface from (method name, non-bottom value names) pairs.

    Domains are lifted: "bot" is injected and canonical order applied.
    """
    if not id:
        raise EmptyDomain("interface id must be nonempty")
    if not methods:
        raise EmptyDomain(f"interface {id!r} must declare at least one method")
    specs: list[MethodSpec] = []
    names_seen: set[str] = set()
    for name, values in methods:
        if name in names_seen:
            raise DuplicateMethodName(
                f"interface {id!r} declares method {name!r} twice"
            )
        names_seen.add(name)
        domain = AbstractDomain.from_names(
            values, context=f" in method {name!r} of interface {id!r}"
        )
        specs.append(MethodSpec(name, domain))
    return Interface(id, tuple(specs))


def full_vector(interface: Interface) -> AvailabilityVector:
    """The full-capability vector: every component is the whole lifted domain."""
    return AvailabilityVector(
        interface.id,
        tuple(frozenset(d.values) for d in interface.domains),
    )


def bottom_vector(interface: Interface) -> AvailabilityVector:
    """The all-{bot} vector: no method can handle anything."""
    return AvailabilityVector(
        interface.id, tuple(frozenset((BOT,)) for _ in interface.methods)
    )


def normalize_vector(
    interface: Interface, sets: Sequence[Iterable[str]]
) -> AvailabilityVector:
    """Validate per-method value sets and lift them into a vector.

    "bot" is injected into every component; normalization is idempotent.
    """
    if len(sets) != interface.arity:
        raise ArityMismatch(
            f"interface {interface.id!r} has {interface.arity} methods, "
            f"got {len(sets)} sets"
        )
    components: list[frozenset[str]] = []
    for method, values in zip(interface.methods, sets):
        values = frozenset(values) | {BOT}
        unknown = values - set(method.domain.values)
        if unknown:
            raise UnknownValue(
                f"value {sorted(unknown)[0]!r} is not in the domain of method "
                f"{method.name!r} of interface {interface.id!r}"
            )
        components.append(values)
    return AvailabilityVector(interface.id, tuple(components))


@dataclass(frozen=True)
class DependencyEntry:
    """One row of an abstract dependency function.

    ``input`` holds one abstract value per source method; ``output`` holds
    one value set per target method. Every output set contains "bot".
    """

    input: tuple[str, ...]
    output: tuple[frozenset[str], ...]


@dataclass(frozen=True)
class Adapter:
    """A lossy interface adapter with a total abstract dependency function.

    Only listed entries are stored; any unlisted input tuple maps to
    ``default_output`` (canonically the all-{bot} tuple), so lookup is total
    over the product of the source domains.
    """

    id: str
    source: Interface
    target: Interface
    entries: tuple[DependencyEntry, ...]
    default_output: tuple[frozenset[str], ...]
    _table: Mapping[tuple[str, ...], tuple[frozenset[str], ...]] = field(
        compare=False, repr=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_table", {e.input: e.output for e in self.entries}
        )

    def lookup(self, input: tuple[str, ...]) -> tuple[frozenset[str], ...]:
        """The dependency function: total over all source input tuples."""
        return self._table.get(input, self.default_output)


def _normalize_output(
    adapter_id: str,
    target: Interface,
    output: Sequence[Iterable[str]],
    *,
    what: str,
) -> tuple[frozenset[str], ...]:
    if len(output) != target.arity:
        raise ArityMismatch(
            f"adapter {adapter_id!r}: {what} has {len(output)} components, "
            f"target {target.id!r} has {target.arity} methods"
        )
    sets: list[frozenset[str]] = []
    for method, values in zip(target.methods, output):
        values = frozenset(values) | {BOT}
        unknown = values - set(method.domain.values)
        if unknown:
            raise UnknownValue(
                f"adapter {adapter_id!r}: {what} value {sorted(unknown)[0]!r} "
                f"is not in the domain of method {method.name!r} "
                f"of interface {target.id!r}"
            )
        sets.append(values)
    return tuple(sets)


def build_adapter(
    id: str,
    source: Interface,
    target: Interface,
    entries: Iterable[tuple[Sequence[str], Sequence[Iterable[str]]]],
    default_output: Sequence[Iterable[str]] | None = None,
) -> Adapter:
    """Declare an adapter from (input tuple, output sets) dependency rows.

    The induced function is total: unlisted inputs map to ``default_output``
    (all-{bot} when omitted). "bot" is injected into every output set.
    """
    if default_output is None:
        default = tuple(frozenset((BOT,)) for _ in target.methods)
    else:
        default = _normalize_output(id, target, default_output, what="default output")

    normalized: list[DependencyEntry] = []
    seen: set[tuple[str, ...]] = set()
    for input_values, output in entries:
        if len(input_values) != source.arity:
            raise ArityMismatch(
                f"adapter {id!r}: input tuple {tuple(input_values)!r} has "
                f"{len(input_values)} components, source {source.id!r} has "
                f"{source.arity} methods"
            )
        input = tuple(input_values)
        for method, value in zip(source.methods, input):
            if value not in method.domain:
                raise UnknownValue(
                    f"adapter {id!r}: input value {value!r} is not in the "
                    f"domain of method {method.name!r} of interface "
                    f"{source.id!r}"
                )
        if input in seen:
            raise DuplicateInput(
                f"adapter {id!r}: duplicate entry for input {input!r}"
            )
        seen.add(input)
        out = _normalize_output(id, target, output, what=f"entry {input!r} output")
        normalized.append(DependencyEntry(input, out))
    normalized.sort(key=lambda e: e.input)
    return Adapter(id, source, target, tuple(normalized), default)


@dataclass(frozen=True)
class AdapterGraph:
    """Directed multigraph: interfaces are nodes, adapters are edges."""

    interfaces: Mapping[str, Interface]
    adapters: Mapping[str, Adapter]

    def outgoing(self, interface_id: str) -> list[Adapter]:
        return [a for a in self.adapters.values() if a.source.id == interface_id]

    def incoming(self, interface_id: str) -> list[Adapter]:
        return [a for a in self.adapters.values() if a.target.id == interface_id]

    def require_interface(self, interface_id: str) -> Interface:
        try:
            return self.interfaces[interface_id]
        except KeyError:
            raise UnknownInterface(
                f"interface {interface_id!r} is not declared in the graph"
            ) from None


def build_graph(
    interfaces: Iterable[Interface], adapters: Iterable[Adapter]
) -> AdapterGraph:
    """Assemble and validate an adapter graph.

    Adapter endpoints must resolve to declared interfaces and agree with
    the declarations exactly; mismatched domains are rejected, not merged.
    """
    interface_map: dict[str, Interface] = {}
    for interface in interfaces:
        if interface.id in interface_map:
            raise DuplicateId(f"interface {interface.id!r} declared twice")
        interface_map[interface.id] = interface
    adapter_map: dict[str, Adapter] = {}
    for adapter in adapters:
        if adapter.id in adapter_map:
            raise DuplicateId(f"adapter {adapter.id!r} declared twice")
        for endpoint in (adapter.source, adapter.target):
            declared = interface_map.get(endpoint.id)
            if declared is None:
                raise UnknownInterface(
                    f"adapter {adapter.id!r} references undeclared interface "
                    f"{endpoint.id!r}"
                )
            if declared != endpoint:
                raise InterfaceMismatch(
                    f"adapter {adapter.id!r} disagrees with the declaration "
                    f"of interface {endpoint.id!r}"
                )
        adapter_map[adapter.id] = adapter
    return AdapterGraph(interface_map, adapter_map)
