"""Finite preorders and modular relations: the truth-valued instance of the calculus.

Composites, implication homs, and weighted colimits all have closed forms
here (an existential scan, a universally quantified implication, and a
supremum), so the module doubles as an independent oracle for the
quotient-based constructions, via the embeddings at the bottom of the file.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .equipment import Profunctor, prof_from_functions
from .errors import AxiomFailure, BoundaryMismatch, SupMissing
from .fincat import FinCat, FinFunctor, cat_from_tables, functor
from .setkit import Atom, FinMap, FinSet

__all__ = [
    "Preorder",
    "ModRel",
    "preorder_from_pairs",
    "chain_preorder",
    "modrel_from_pairs",
    "identity_rel",
    "companion_rel",
    "compose_rel",
    "left_hom_rel",
    "sup_colim",
    "as_fincat",
    "as_finfunctor",
    "as_profunctor",
]


def _at(value: object) -> Atom:
    return value if isinstance(value, Atom) else Atom(str(value))


@dataclass(frozen=True)
class Preorder:
    """A finite set with a reflexive transitive ordering, stored as a pair set."""

    carrier: FinSet
    leq: frozenset[tuple[Atom, Atom]]

    def __post_init__(self) -> None:
        for x, y in self.leq:
            if x not in self.carrier or y not in self.carrier:
                raise AxiomFailure(f"ordering pair ({x.key},{y.key}) leaves the carrier")
        for x in self.carrier:
            if (x, x) not in self.leq:
                raise AxiomFailure(f"ordering not reflexive at {x.key}")
        for x, y in self.leq:
            for y2, z in self.leq:
                if y2 == y and (x, z) not in self.leq:
                    raise AxiomFailure(f"ordering not transitive at {x.key}<={y.key}<={z.key}")

    def le(self, x: Atom, y: Atom) -> bool:
        return (x, y) in self.leq


def preorder_from_pairs(
    keys: Iterable[object], pairs: Iterable[tuple[object, object]]
) -> Preorder:
    """Build a preorder from raw generating pairs, closing reflexively and transitively."""
    carrier = FinSet(tuple(_at(k) for k in keys))
    rel = {(a, a) for a in carrier}
    rel.update((_at(x), _at(y)) for x, y in pairs)
    changed = True
    while changed:
        changed = False
        for x, y in list(rel):
            for y2, z in list(rel):
                if y2 == y and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    return Preorder(carrier, frozenset(rel))


def chain_preorder(names: Sequence[object]) -> Preorder:
    """The total order on the given names, smallest first."""
    keys = [_at(n) for n in names]
    return preorder_from_pairs(keys, [(keys[i], keys[i + 1]) for i in range(len(keys) - 1)])


@dataclass(frozen=True)
class ModRel:
    """A relation between preorders, down-closed on the left and up-closed on the right."""

    left: Preorder
    right: Preorder
    rel: frozenset[tuple[Atom, Atom]]

    def __post_init__(self) -> None:
        for x, y in self.rel:
            if x not in self.left.carrier or y not in self.right.carrier:
                raise AxiomFailure(f"related pair ({x.key},{y.key}) leaves the carriers")
        for x2, y1 in self.rel:
            for x1, x2b in self.left.leq:
                if x2b != x2:
                    continue
                for y1b, y2 in self.right.leq:
                    if y1b == y1 and (x1, y2) not in self.rel:
                        raise AxiomFailure(
                            f"relation not modular at {x1.key}<={x2.key}~{y1.key}<={y2.key}"
                        )

    def holds(self, x: Atom, y: Atom) -> bool:
        return (x, y) in self.rel


def modrel_from_pairs(
    left: Preorder, right: Preorder, pairs: Iterable[tuple[object, object]]
) -> ModRel:
    """Build a modular relation from raw generating pairs, closing down-left and up-right."""
    seeds = {(_at(x), _at(y)) for x, y in pairs}
    closed = set()
    for x2, y1 in seeds:
        for x1 in left.carrier:
            if not left.le(x1, x2):
                continue
            for y2 in right.carrier:
                if right.le(y1, y2):
                    closed.add((x1, y2))
    return ModRel(left, right, frozenset(closed))


def identity_rel(p: Preorder) -> ModRel:
    """The unit relation on a preorder: the ordering itself."""
    return ModRel(p, p, p.leq)


def companion_rel(j: FinMap, source: Preorder, target: Preorder) -> ModRel:
    """The graph relation of a monotone map: x ~ z iff jx <= z."""
    if j.source != source.carrier or j.target != target.carrier:
        raise BoundaryMismatch("companion_rel needs a map between the carriers")
    for x1, x2 in source.leq:
        if not target.le(j(x1), j(x2)):
            raise AxiomFailure(f"map not monotone at {x1.key}<={x2.key}")
    rel = frozenset(
        (x, z) for x in source.carrier for z in target.carrier if target.le(j(x), z)
    )
    return ModRel(source, target, rel)


def compose_rel(j: ModRel, h: ModRel) -> ModRel:
    """Existential composite: x ~ z iff some middle y has x ~j y and y ~h z."""
    if j.right != h.left:
        raise BoundaryMismatch("compose_rel needs matching middle preorders")
    rel = frozenset((x, z) for x, y in j.rel for y2, z in h.rel if y2 == y)
    return ModRel(j.left, h.right, rel)


def left_hom_rel(j: ModRel, k: ModRel) -> ModRel:
    """Implication hom: y ~ z iff every x with x ~j y also has x ~k z."""
    if j.left != k.left:
        raise BoundaryMismatch("left_hom_rel needs a shared left preorder")
    rel = frozenset(
        (y, z)
        for y in j.right.carrier
        for z in k.right.carrier
        if all(k.holds(x, z) for x in j.left.carrier if j.holds(x, y))
    )
    return ModRel(j.right, k.right, rel)


def sup_colim(weight: ModRel, diagram: FinMap, target: Preorder) -> FinMap:
    """The weighted colimit l(y) = sup of the diagram over the elements related to y.

    Raises SupMissing at the first y whose fiber has no unique least upper bound.
    """
    if diagram.source != weight.left.carrier or diagram.target != target.carrier:
        raise BoundaryMismatch("sup_colim needs a diagram from the weight's left carrier")
    for x1, x2 in weight.left.leq:
        if not target.le(diagram(x1), diagram(x2)):
            raise AxiomFailure(f"diagram not monotone at {x1.key}<={x2.key}")
    table = []
    for y in weight.right.carrier:
        below = [diagram(x) for x in weight.left.carrier if weight.holds(x, y)]
        uppers = [u for u in target.carrier if all(target.le(s, u) for s in below)]
        least = [u for u in uppers if all(target.le(u, v) for v in uppers)]
        if len(least) != 1:
            raise SupMissing(f"{len(least)} least upper bounds at {y.key}")
        table.append((y, least[0]))
    return FinMap(weight.right.carrier, target.carrier, tuple(table))


def _mor_key(x: Atom, y: Atom) -> str:
    return f"id:{x.key}->{x.key}" if x == y else f"u:{x.key}->{y.key}"


def as_fincat(p: Preorder) -> FinCat:
    """The category with exactly one morphism x -> y per ordered pair x <= y."""
    homs: dict[tuple[str, str], list[str]] = {}
    comps: dict[tuple[str, str], str] = {}
    for x in p.carrier:
        for y in p.carrier:
            if not p.le(x, y):
                continue
            homs[(x.key, y.key)] = [_mor_key(x, y)]
            for z in p.carrier:
                if p.le(y, z):
                    comps[(_mor_key(y, z), _mor_key(x, y))] = _mor_key(x, z)
    idents = {x.key: _mor_key(x, x) for x in p.carrier}
    return cat_from_tables([x.key for x in p.carrier], homs, comps, idents)


def as_finfunctor(f: FinMap, source: Preorder, target: Preorder) -> FinFunctor:
    """The embedded monotone map, sending the morphism of x <= y to that of fx <= fy."""
    if f.source != source.carrier or f.target != target.carrier:
        raise BoundaryMismatch("as_finfunctor needs a map between the carriers")
    for x1, x2 in source.leq:
        if not target.le(f(x1), f(x2)):
            raise AxiomFailure(f"map not monotone at {x1.key}<={x2.key}")
    ob = {x.key: f(x).key for x in source.carrier}
    mor = {}
    for x in source.carrier:
        for y in source.carrier:
            if source.le(x, y):
                mor[_mor_key(x, y)] = _mor_key(f(x), f(y))
    return functor(as_fincat(source), as_fincat(target), ob, mor)


def _rel_key(x: Atom, y: Atom) -> str:
    return f"rel:{x.key}~{y.key}"


def as_profunctor(r: ModRel) -> Profunctor:
    """The embedded relation, with one fiber element per related pair."""
    a_cat, b_cat = as_fincat(r.left), as_fincat(r.right)

    def fiber_fn(a: Atom, b: Atom) -> tuple[Atom, ...]:
        return (Atom(_rel_key(a, b)),) if r.holds(a, b) else ()

    def lact_fn(s: Atom, b: Atom, j: Atom) -> Atom:
        return Atom(_rel_key(a_cat.src(s), b))

    def ract_fn(a: Atom, j: Atom, t: Atom) -> Atom:
        return Atom(_rel_key(a, b_cat.tgt(t)))

    return prof_from_functions(a_cat, b_cat, fiber_fn, lact_fn, ract_fn)
