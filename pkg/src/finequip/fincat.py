"""Finite categories, functors, and natural transformations over hom tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import CyclicGraph, Verdict, failed, passed
from .setkit import Atom, FinMap, FinSet, pair_atom

__all__ = [
    "FinCat",
    "FinFunctor",
    "NatTransf",
    "cat_from_tables",
    "discrete_cat",
    "terminal_cat",
    "walking_arrow",
    "validate_cat",
    "opposite",
    "prod",
    "free_cat_on_dag",
    "functor",
    "nat",
    "validate_functor",
    "validate_nat",
    "all_functors",
    "all_nats",
]


def _at(value: object) -> Atom:
    return value if isinstance(value, Atom) else Atom(str(value))


@dataclass(frozen=True)
class FinCat:
    """A finite category: hom tables, a composition table, and identities.

    Construction checks the structural invariants (hom sets pairwise
    disjoint, composition total and well typed on composable pairs,
    identities present); the equational laws are validate_cat's job.
    """

    objects: FinSet
    homs: tuple[tuple[Atom, Atom, FinSet], ...]
    comps: tuple[tuple[Atom, Atom, Atom], ...]
    idents: tuple[tuple[Atom, Atom], ...]

    def __post_init__(self) -> None:
        hom_table: dict[tuple[Atom, Atom], FinSet] = {}
        for a, b, s in self.homs:
            if a not in self.objects or b not in self.objects:
                raise ValueError(f"hom endpoints {a!r},{b!r} not objects")
            if (a, b) in hom_table:
                raise ValueError(f"duplicate hom entry at ({a!r},{b!r})")
            if len(s):
                hom_table[(a, b)] = s
        src: dict[Atom, Atom] = {}
        tgt: dict[Atom, Atom] = {}
        for (a, b), s in hom_table.items():
            for m in s:
                if m in src:
                    raise ValueError(f"morphism atom {m!r} appears in two hom sets")
                src[m], tgt[m] = a, b
        ident_table = dict(self.idents)
        for a in self.objects:
            i = ident_table.get(a)
            if i is None or src.get(i) != a or tgt.get(i) != a:
                raise ValueError(f"missing or ill-typed identity at {a!r}")
        comp_table: dict[tuple[Atom, Atom], Atom] = dict(
            ((g, f), gf) for g, f, gf in self.comps
        )
        composable = [(g, f) for f in src for g in src if tgt[f] == src[g]]
        for g, f in composable:
            gf = comp_table.get((g, f))
            if gf is None:
                raise ValueError(f"composition missing for ({g.key},{f.key})")
            if src.get(gf) != src[f] or tgt.get(gf) != tgt[g]:
                raise ValueError(f"ill-typed composite for ({g.key},{f.key})")
        if len(comp_table) != len(composable):
            raise ValueError("composition table has non-composable entries")
        # normalize for bit-identical equality of equal categories
        object.__setattr__(
            self, "homs", tuple(sorted((a, b, s) for (a, b), s in hom_table.items()))
        )
        object.__setattr__(
            self, "comps", tuple((g, f, comp_table[(g, f)]) for g, f in sorted(composable))
        )
        object.__setattr__(self, "idents", tuple(sorted((a, ident_table[a]) for a in self.objects)))
        object.__setattr__(self, "_hom", hom_table)
        object.__setattr__(self, "_src", src)
        object.__setattr__(self, "_tgt", tgt)
        object.__setattr__(self, "_comp", comp_table)
        object.__setattr__(self, "_ident", {a: ident_table[a] for a in self.objects})

    def hom(self, a: Atom, b: Atom) -> FinSet:
        return self._hom.get((a, b), FinSet(()))  # type: ignore[attr-defined]

    def src(self, m: Atom) -> Atom:
        return self._src[m]  # type: ignore[attr-defined]

    def tgt(self, m: Atom) -> Atom:
        return self._tgt[m]  # type: ignore[attr-defined]

    def ident(self, a: Atom) -> Atom:
        return self._ident[a]  # type: ignore[attr-defined]

    def compose(self, g: Atom, f: Atom) -> Atom:
        """Composite g-after-f; raises on non-composable arguments."""
        gf = self._comp.get((g, f))  # type: ignore[attr-defined]
        if gf is None:
            raise ValueError(f"({g.key},{f.key}) not composable")
        return gf

    def mors(self) -> FinSet:
        return FinSet(tuple(self._src))  # type: ignore[attr-defined]

    def composable_pairs(self) -> Iterator[tuple[Atom, Atom]]:
        for g, f in self._comp:  # type: ignore[attr-defined]
            yield g, f


def cat_from_tables(
    objects: Sequence[object],
    homs: Mapping[tuple[object, object], Sequence[object]],
    comps: Mapping[tuple[object, object], object],
    idents: Mapping[object, object],
) -> FinCat:
    """Build a FinCat from plain dicts of raw keys."""
    obs = FinSet(tuple(_at(o) for o in objects))
    homs_t = tuple(
        (_at(a), _at(b), FinSet(tuple(_at(m) for m in ms))) for (a, b), ms in homs.items()
    )
    comps_t = tuple((_at(g), _at(f), _at(h)) for (g, f), h in comps.items())
    idents_t = tuple((_at(a), _at(m)) for a, m in idents.items())
    return FinCat(obs, homs_t, comps_t, idents_t)


def discrete_cat(names: Sequence[object]) -> FinCat:
    objs = [str(n) for n in names]
    return cat_from_tables(
        objs,
        {(o, o): [f"id:{o}->{o}"] for o in objs},
        {(f"id:{o}->{o}", f"id:{o}->{o}"): f"id:{o}->{o}" for o in objs},
        {o: f"id:{o}->{o}" for o in objs},
    )


def terminal_cat() -> FinCat:
    return discrete_cat(["*"])


def walking_arrow() -> FinCat:
    """The category 0 -> 1 with a single non-identity arrow u."""
    i0, i1, u = "id:0->0", "id:1->1", "u:0->1"
    return cat_from_tables(
        ["0", "1"],
        {("0", "0"): [i0], ("1", "1"): [i1], ("0", "1"): [u]},
        {(i0, i0): i0, (i1, i1): i1, (u, i0): u, (i1, u): u},
        {"0": i0, "1": i1},
    )


def validate_cat(c: FinCat, subject: str = "cat") -> Verdict:
    """Exhaustive associativity and identity check over the tables."""
    for m in c.mors():
        a, b = c.src(m), c.tgt(m)
        if c.compose(m, c.ident(a)) != m or c.compose(c.ident(b), m) != m:
            return failed("validate_cat", subject, f"unit@{m.key}")
    mors = list(c.mors())
    triples = 0
    for f in mors:
        for g in mors:
            if c.tgt(f) != c.src(g):
                continue
            for h in mors:
                if c.tgt(g) != c.src(h):
                    continue
                triples += 1
                if c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f):
                    return failed(
                        "validate_cat", subject, f"assoc@({h.key},{g.key},{f.key})"
                    )
    return passed("validate_cat", subject, f"triples={triples}")


def opposite(c: FinCat) -> FinCat:
    """Reverse all arrows; morphism atoms are reused, so this is an involution."""
    return FinCat(
        c.objects,
        tuple((b, a, s) for a, b, s in c.homs),
        tuple((f, g, h) for g, f, h in c.comps),
        c.idents,
    )


def prod(c: FinCat, d: FinCat) -> FinCat:
    """Product category on pair atoms; homs are pairwise products."""
    objs = FinSet(tuple(pair_atom(a, x) for a in c.objects for x in d.objects))
    homs = []
    for a, b, s in c.homs:
        for x, y, t in d.homs:
            fiber = FinSet(tuple(pair_atom(m, n) for m in s for n in t))
            homs.append((pair_atom(a, x), pair_atom(b, y), fiber))
    comps = []
    for g, f, gf in c.comps:
        for k, h, kh in d.comps:
            comps.append((pair_atom(g, k), pair_atom(f, h), pair_atom(gf, kh)))
    idents = tuple(
        (pair_atom(a, x), pair_atom(c.ident(a), d.ident(x)))
        for a in c.objects
        for x in d.objects
    )
    return FinCat(objs, tuple(homs), tuple(comps), idents)


def free_cat_on_dag(
    vertices: Sequence[object], edges: Sequence[tuple[object, object, object]]
) -> FinCat:
    """Free category on an acyclic graph: morphisms are paths, composition is concatenation.

    Edges are (name, src, tgt) triples with globally distinct names.
    """
    verts = [str(v) for v in vertices]
    if len(set(verts)) != len(verts):
        raise ValueError("duplicate vertices")
    named = [(str(n), str(a), str(b)) for n, a, b in edges]
    if len({n for n, _, _ in named}) != len(named):
        raise ValueError("duplicate edge names")
    for n, a, b in named:
        if a not in verts or b not in verts:
            raise ValueError(f"edge {n} has endpoint outside the vertex set")
    # Kahn's algorithm; leftovers mean a cycle
    out: dict[str, list[tuple[str, str]]] = {v: [] for v in verts}
    indeg = {v: 0 for v in verts}
    for n, a, b in named:
        out[a].append((n, b))
        indeg[b] += 1
    queue = [v for v in verts if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for _, b in out[v]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if seen != len(verts):
        raise CyclicGraph("edge relation has a cycle")

    def path_atom(names: tuple[str, ...], a: str, b: str) -> Atom:
        label = ".".join(names) if names else "id"
        return Atom(f"{label}:{a}->{b}")

    # enumerate all paths by extending shorter ones
    paths: list[tuple[tuple[str, ...], str, str]] = [((), v, v) for v in verts]
    frontier = paths[:]
    while frontier:
        new: list[tuple[tuple[str, ...], str, str]] = []
        for names, a, b in frontier:
            for n, b2 in out[b]:
                new.append((names + (n,), a, b2))
        paths.extend(new)
        frontier = new
    homs: dict[tuple[str, str], list[Atom]] = {}
    for names, a, b in paths:
        homs.setdefault((a, b), []).append(path_atom(names, a, b))
    comps = {}
    for names1, a, b in paths:
        for names2, b2, c2 in paths:
            if b == b2:
                comps[
                    (path_atom(names2, b2, c2), path_atom(names1, a, b))
                ] = path_atom(names1 + names2, a, c2)
    idents = {v: path_atom((), v, v) for v in verts}
    return cat_from_tables(
        verts, {k: v for k, v in homs.items()}, comps, idents
    )


@dataclass(frozen=True)
class FinFunctor:
    """A functor stored as an object map and a total morphism map."""

    source: FinCat
    target: FinCat
    ob_map: FinMap
    mor_map: FinMap

    def __post_init__(self) -> None:
        if self.ob_map.source != self.source.objects or self.ob_map.target != self.target.objects:
            raise ValueError("object map boundary mismatch")
        if self.mor_map.source != self.source.mors() or self.mor_map.target != self.target.mors():
            raise ValueError("morphism map boundary mismatch")

    def on_ob(self, a: Atom) -> Atom:
        return self.ob_map(a)

    def on_mor(self, m: Atom) -> Atom:
        return self.mor_map(m)

    def then(self, other: FinFunctor) -> FinFunctor:
        if self.target is not other.source and self.target != other.source:
            raise ValueError("functor composition boundary mismatch")
        return FinFunctor(
            self.source, other.target, self.ob_map.then(other.ob_map), self.mor_map.then(other.mor_map)
        )

    @staticmethod
    def identity(c: FinCat) -> FinFunctor:
        return FinFunctor(c, c, FinMap.identity(c.objects), FinMap.identity(c.mors()))


def functor(
    source: FinCat,
    target: FinCat,
    ob: Mapping[object, object],
    mor: Mapping[object, object],
) -> FinFunctor:
    ob_map = FinMap(source.objects, target.objects, tuple((_at(k), _at(v)) for k, v in ob.items()))
    mor_map = FinMap(source.mors(), target.mors(), tuple((_at(k), _at(v)) for k, v in mor.items()))
    return FinFunctor(source, target, ob_map, mor_map)


def constant_functor(source: FinCat, target: FinCat, at: Atom) -> FinFunctor:
    ob_map = FinMap.constant(source.objects, target.objects, at)
    mor_map = FinMap.constant(source.mors(), target.mors(), target.ident(at))
    return FinFunctor(source, target, ob_map, mor_map)


def validate_functor(fun: FinFunctor, subject: str = "functor") -> Verdict:
    """Check typing, composition, and identity preservation morphism by morphism."""
    c, d = fun.source, fun.target
    for m in c.mors():
        fm = fun.on_mor(m)
        if d.src(fm) != fun.on_ob(c.src(m)) or d.tgt(fm) != fun.on_ob(c.tgt(m)):
            return failed("validate_functor", subject, f"typing@{m.key}")
    for a in c.objects:
        if fun.on_mor(c.ident(a)) != d.ident(fun.on_ob(a)):
            return failed("validate_functor", subject, f"identity@{a.key}")
    for g, f in c.composable_pairs():
        if fun.on_mor(c.compose(g, f)) != d.compose(fun.on_mor(g), fun.on_mor(f)):
            return failed("validate_functor", subject, f"composition@({g.key},{f.key})")
    return passed("validate_functor", subject)


@dataclass(frozen=True)
class NatTransf:
    """A natural transformation between parallel functors, one component per object."""

    source: FinFunctor
    target: FinFunctor
    components: tuple[tuple[Atom, Atom], ...]

    def __post_init__(self) -> None:
        if self.source.source != self.target.source or self.source.target != self.target.target:
            raise ValueError("natural transformation needs parallel functors")
        table = dict(self.components)
        for a in self.source.source.objects:
            if a not in table:
                raise ValueError(f"missing component at {a!r}")
        object.__setattr__(
            self, "components", tuple(sorted((a, table[a]) for a in self.source.source.objects))
        )
        object.__setattr__(self, "_table", table)

    def at(self, a: Atom) -> Atom:
        return self._table[a]  # type: ignore[attr-defined]

    def then(self, other: NatTransf) -> NatTransf:
        """Vertical composite, other after self."""
        if self.target != other.source:
            raise ValueError("vertical composition boundary mismatch")
        d = self.source.target
        comps = tuple(
            (a, d.compose(other.at(a), self.at(a))) for a in self.source.source.objects
        )
        return NatTransf(self.source, other.target, comps)

    @staticmethod
    def identity(fun: FinFunctor) -> NatTransf:
        comps = tuple(
            (a, fun.target.ident(fun.on_ob(a))) for a in fun.source.objects
        )
        return NatTransf(fun, fun, comps)


def nat(source: FinFunctor, target: FinFunctor, components: Mapping[object, object]) -> NatTransf:
    return NatTransf(source, target, tuple((_at(k), _at(v)) for k, v in components.items()))


def validate_nat(n: NatTransf, subject: str = "nat") -> Verdict:
    """Check component typing and every naturality square."""
    f, g = n.source, n.target
    c, d = f.source, f.target
    for a in c.objects:
        comp = n.at(a)
        if d.src(comp) != f.on_ob(a) or d.tgt(comp) != g.on_ob(a):
            return failed("validate_nat", subject, f"typing@{a.key}")
    for m in c.mors():
        a, b = c.src(m), c.tgt(m)
        if d.compose(g.on_mor(m), n.at(a)) != d.compose(n.at(b), f.on_mor(m)):
            return failed("validate_nat", subject, f"square@{m.key}")
    return passed("validate_nat", subject)


def all_functors(c: FinCat, d: FinCat) -> list[FinFunctor]:
    """Enumerate every functor c -> d (meant for small probe categories)."""
    non_ident = [m for m in c.mors() if m != c.ident(c.src(m))]
    found = []
    for obs in itertools.product(list(d.objects), repeat=len(c.objects)):
        ob_assign = dict(zip(c.objects, obs))
        pools = []
        for m in non_ident:
            fiber = d.hom(ob_assign[c.src(m)], ob_assign[c.tgt(m)])
            pools.append(list(fiber))
        if any(not p for p in pools):
            continue
        for choice in itertools.product(*pools):
            mor_assign = dict(zip(non_ident, choice))
            for a in c.objects:
                mor_assign[c.ident(a)] = d.ident(ob_assign[a])
            fun = functor(c, d, ob_assign, mor_assign)
            if validate_functor(fun).ok:
                found.append(fun)
    return found


def all_nats(f: FinFunctor, g: FinFunctor) -> list[NatTransf]:
    """Enumerate every natural transformation f => g (small probes only)."""
    c, d = f.source, f.target
    pools = [list(d.hom(f.on_ob(a), g.on_ob(a))) for a in c.objects]
    if any(not p for p in pools):
        return []
    found = []
    for choice in itertools.product(*pools):
        candidate = NatTransf(f, g, tuple(zip(c.objects, choice)))
        if validate_nat(candidate).ok:
            found.append(candidate)
    return found
