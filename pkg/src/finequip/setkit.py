"""Finite sets, total maps, and the quotient/limit kernel behind every coend."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import SourceMismatch, TargetMismatch

__all__ = [
    "Atom",
    "FinSet",
    "FinMap",
    "Quotient",
    "finset",
    "finmap",
    "pair_atom",
    "tag_atom",
    "coequalize",
    "pullback",
    "product",
    "coproduct",
    "equalize",
]


@dataclass(frozen=True, order=True)
class Atom:
    """An interned symbol, totally ordered by its canonical rendering."""

    key: str

    def __post_init__(self) -> None:
        if not isinstance(self.key, str):
            object.__setattr__(self, "key", str(self.key))

    def render(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return f"Atom({self.key!r})"


def _as_atom(value: object) -> Atom:
    return value if isinstance(value, Atom) else Atom(str(value))


def pair_atom(a: Atom, b: Atom) -> Atom:
    """Canonical tuple atom, rendered "(a,b)"; nesting allowed."""
    return Atom(f"({a.key},{b.key})")


def tag_atom(side: str, a: Atom) -> Atom:
    """Canonical tagged atom, rendered e.g. "inl:a"."""
    return Atom(f"{side}:{a.key}")


@dataclass(frozen=True)
class FinSet:
    """A finite set of atoms, kept in canonical (sorted) iteration order."""

    elements: tuple[Atom, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", frozenset(elems))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, a: object) -> bool:
        return a in self._index  # type: ignore[attr-defined]

    def __repr__(self) -> str:
        return "{" + ",".join(a.key for a in self.elements) + "}"

    def render(self) -> str:
        return repr(self)


EMPTY = FinSet(())


def finset(*keys: object) -> FinSet:
    """Build a FinSet from raw keys: finset("a", "b", 3)."""
    return FinSet(tuple(_as_atom(k) for k in keys))


@dataclass(frozen=True)
class FinMap:
    """A total function between finite sets, stored as a sorted graph."""

    source: FinSet
    target: FinSet
    graph: tuple[tuple[Atom, Atom], ...]

    def __post_init__(self) -> None:
        table = dict(self.graph)
        if len(table) != len(self.graph):
            raise ValueError("duplicate source entries in graph")
        missing = [a for a in self.source if a not in table]
        if missing or len(table) != len(self.source):
            raise ValueError(f"graph is not total on source (missing {missing})")
        for a, b in table.items():
            if b not in self.target:
                raise ValueError(f"image {b!r} of {a!r} not in target")
        object.__setattr__(self, "graph", tuple((a, table[a]) for a in self.source))
        object.__setattr__(self, "_table", table)

    def __call__(self, a: Atom) -> Atom:
        return self._table[a]  # type: ignore[attr-defined]

    def then(self, other: FinMap) -> FinMap:
        """Post-compose: (self.then(other))(x) = other(self(x))."""
        if self.target != other.source:
            raise SourceMismatch("composition boundary mismatch")
        return FinMap(self.source, other.target, tuple((a, other(self(a))) for a in self.source))

    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) == len({b for _, b in self.graph})

    def inverse(self) -> FinMap:
        if not self.is_bijective():
            raise ValueError("only bijections invert")
        return FinMap(self.target, self.source, tuple((b, a) for a, b in self.graph))

    @staticmethod
    def identity(s: FinSet) -> FinMap:
        return FinMap(s, s, tuple((a, a) for a in s))

    @staticmethod
    def constant(source: FinSet, target: FinSet, value: Atom) -> FinMap:
        return FinMap(source, target, tuple((a, value) for a in source))

    def render(self) -> str:
        return "[" + ",".join(f"{a.key}->{b.key}" for a, b in self.graph) + "]"


def finmap(source: FinSet, target: FinSet, mapping: Mapping[object, object]) -> FinMap:
    """Build a FinMap from a plain dict of raw keys."""
    graph = tuple((_as_atom(k), _as_atom(v)) for k, v in mapping.items())
    return FinMap(source, target, graph)


@dataclass(frozen=True)
class Quotient:
    """A partition of a finite set with order-minimal class representatives."""

    base: FinSet
    classes: tuple[tuple[Atom, ...], ...]

    def __post_init__(self) -> None:
        normal = tuple(sorted(tuple(sorted(set(c))) for c in self.classes))
        seen: list[Atom] = [a for c in normal for a in c]
        if sorted(seen) != list(self.base.elements) or len(seen) != len(self.base):
            raise ValueError("classes do not partition the base set")
        object.__setattr__(self, "classes", normal)
        rep = {a: c[0] for c in normal for a in c}
        object.__setattr__(self, "_rep", rep)

    def rep(self, a: Atom) -> Atom:
        """Order-minimal representative of a's class."""
        return self._rep[a]  # type: ignore[attr-defined]

    def reps(self) -> FinSet:
        return FinSet(tuple(c[0] for c in self.classes))

    def proj(self) -> FinMap:
        return FinMap(self.base, self.reps(), tuple((a, self.rep(a)) for a in self.base))

    @staticmethod
    def discrete(base: FinSet) -> Quotient:
        return Quotient(base, tuple((a,) for a in base))


def _find(parent: dict[Atom, Atom], a: Atom) -> Atom:
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:  # path compression
        parent[a], a = root, parent[a]
    return root


def coequalize(f: FinMap, g: FinMap) -> Quotient:
    """Finest partition of the shared target merging f(x) with g(x) for all x."""
    if f.source != g.source or f.target != g.target:
        raise SourceMismatch("coequalize needs a parallel pair")
    parent = {a: a for a in f.target}
    for x in f.source:
        ra, rb = _find(parent, f(x)), _find(parent, g(x))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[Atom, list[Atom]] = {}
    for a in f.target:
        groups.setdefault(_find(parent, a), []).append(a)
    return Quotient(f.target, tuple(tuple(c) for c in groups.values()))


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """{(x,y) | f(x)=g(y)} with its two projections."""
    if f.target != g.target:
        raise TargetMismatch("pullback needs a shared target")
    pairs = [(x, y) for x in f.source for y in g.source if f(x) == g(y)]
    apex = FinSet(tuple(pair_atom(x, y) for x, y in pairs))
    p1 = FinMap(apex, f.source, tuple((pair_atom(x, y), x) for x, y in pairs))
    p2 = FinMap(apex, g.source, tuple((pair_atom(x, y), y) for x, y in pairs))
    return apex, p1, p2


def product(a: FinSet, b: FinSet) -> FinSet:
    return FinSet(tuple(pair_atom(x, y) for x in a for y in b))


def coproduct(a: FinSet, b: FinSet) -> tuple[FinSet, FinMap, FinMap]:
    """Disjoint union with tagged injections inl, inr."""
    left = tuple((x, tag_atom("inl", x)) for x in a)
    right = tuple((y, tag_atom("inr", y)) for y in b)
    total = FinSet(tuple(t for _, t in left) + tuple(t for _, t in right))
    return total, FinMap(a, total, left), FinMap(b, total, right)


def equalize(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    """{x | f(x)=g(x)} with its inclusion into the shared source."""
    if f.source != g.source or f.target != g.target:
        raise SourceMismatch("equalize needs a parallel pair")
    kept = tuple(x for x in f.source if f(x) == g(x))
    sub = FinSet(kept)
    return sub, FinMap(sub, f.source, tuple((x, x) for x in kept))
