"""Profunctors over finite categories: quotient composition, companions, cell calculus."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import AxiomFailure, BoundaryMismatch, SizeGuardExceeded, Verdict, failed, passed
from .fincat import FinCat, FinFunctor, NatTransf
from .setkit import Atom, FinMap, FinSet, coequalize, pair_atom, tag_atom

__all__ = [
    "Profunctor",
    "ProCell",
    "CompanionPair",
    "prof_from_functions",
    "prof_from_tables",
    "validate_profunctor",
    "procell_from_tables",
    "identity_procell",
    "functor_unit_cell",
    "validate_procell",
    "vcomp",
    "hcomp",
    "hcomp_cell",
    "composite_rep",
    "invert_procell",
    "unit_prof",
    "unitors",
    "associator",
    "restrict",
    "factor_through_filler",
    "companion",
    "check_companion",
    "companion_compositor",
    "lambda_cell",
    "rho_cell",
    "lambda_inv",
    "rho_inv",
    "nat_to_cell",
    "cell_to_nat",
    "enumerate_cells",
    "is_right_invertible",
    "is_left_invertible",
]


def _at(value: object) -> Atom:
    return value if isinstance(value, Atom) else Atom(str(value))


@dataclass(frozen=True)
class Profunctor:
    """A family of fibers J(a,b) with a contravariant left and covariant right action.

    Action tables carry the fiber's second (resp. first) index explicitly,
    because element atoms may repeat across fibers (restrictions do this).
    lacts rows are (s, b, j, out) with s: a2 -> a1, j in J(a1,b), out in J(a2,b);
    racts rows are (a, j, t, out) with t: b1 -> b2, j in J(a,b1), out in J(a,b2).
    """

    left: FinCat
    right: FinCat
    fibers: tuple[tuple[Atom, Atom, FinSet], ...]
    lacts: tuple[tuple[Atom, Atom, Atom, Atom], ...]
    racts: tuple[tuple[Atom, Atom, Atom, Atom], ...]

    def __post_init__(self) -> None:
        fib: dict[tuple[Atom, Atom], FinSet] = {}
        for a, b, s in self.fibers:
            if a not in self.left.objects or b not in self.right.objects:
                raise ValueError(f"fiber index ({a!r},{b!r}) out of range")
            if (a, b) in fib:
                raise ValueError(f"duplicate fiber at ({a!r},{b!r})")
            if len(s):
                fib[(a, b)] = s
        lact_t = {(s, b, j): out for s, b, j, out in self.lacts}
        ract_t = {(a, j, t): out for a, j, t, out in self.racts}
        empty = FinSet(())
        valid_lact: dict[tuple[Atom, Atom, Atom], Atom] = {}
        valid_ract: dict[tuple[Atom, Atom, Atom], Atom] = {}
        for (a, b), s in fib.items():
            for j in s:
                for m in self.left.mors():
                    if self.left.tgt(m) != a:
                        continue
                    if m == self.left.ident(a):
                        lact_t.setdefault((m, b, j), j)
                    out = lact_t.get((m, b, j))
                    if out is None:
                        raise ValueError(f"left action missing at ({m.key},{b.key},{j.key})")
                    if out not in fib.get((self.left.src(m), b), empty):
                        raise ValueError(f"left action lands outside fiber at ({m.key},{b.key},{j.key})")
                    valid_lact[(m, b, j)] = out
                for t in self.right.mors():
                    if self.right.src(t) != b:
                        continue
                    if t == self.right.ident(b):
                        ract_t.setdefault((a, j, t), j)
                    out = ract_t.get((a, j, t))
                    if out is None:
                        raise ValueError(f"right action missing at ({a.key},{j.key},{t.key})")
                    if out not in fib.get((a, self.right.tgt(t)), empty):
                        raise ValueError(f"right action lands outside fiber at ({a.key},{j.key},{t.key})")
                    valid_ract[(a, j, t)] = out
        object.__setattr__(self, "fibers", tuple(sorted((k[0], k[1], v) for k, v in fib.items())))
        object.__setattr__(self, "lacts", tuple(sorted((s, b, j, out) for (s, b, j), out in valid_lact.items())))
        object.__setattr__(self, "racts", tuple(sorted((a, j, t, out) for (a, j, t), out in valid_ract.items())))
        object.__setattr__(self, "_fiber", fib)
        object.__setattr__(self, "_lact", valid_lact)
        object.__setattr__(self, "_ract", valid_ract)

    def fiber(self, a: Atom, b: Atom) -> FinSet:
        return self._fiber.get((a, b), FinSet(()))  # type: ignore[attr-defined]

    def lact(self, s: Atom, b: Atom, j: Atom) -> Atom:
        """Act by s: a2 -> a1 on j in J(a1,b), landing in J(a2,b)."""
        return self._lact[(s, b, j)]  # type: ignore[attr-defined]

    def ract(self, a: Atom, j: Atom, t: Atom) -> Atom:
        """Act by t: b1 -> b2 on j in J(a,b1), landing in J(a,b2)."""
        return self._ract[(a, j, t)]  # type: ignore[attr-defined]

    def total_size(self) -> int:
        return sum(len(s) for _, _, s in self.fibers)


def prof_from_functions(
    left: FinCat,
    right: FinCat,
    fiber_fn: Callable[[Atom, Atom], Iterable[Atom]],
    lact_fn: Callable[[Atom, Atom, Atom], Atom],
    ract_fn: Callable[[Atom, Atom, Atom], Atom],
) -> Profunctor:
    """Tabulate a profunctor from callables (identity actions filled in)."""
    fibers = []
    fib: dict[tuple[Atom, Atom], FinSet] = {}
    for a in left.objects:
        for b in right.objects:
            s = FinSet(tuple(fiber_fn(a, b)))
            if len(s):
                fibers.append((a, b, s))
                fib[(a, b)] = s
    lacts, racts = [], []
    for (a, b), s in fib.items():
        for j in s:
            for m in left.mors():
                if left.tgt(m) == a and m != left.ident(a):
                    lacts.append((m, b, j, lact_fn(m, b, j)))
            for m in right.mors():
                if right.src(m) == b and m != right.ident(b):
                    racts.append((a, j, m, ract_fn(a, j, m)))
    return Profunctor(left, right, tuple(fibers), tuple(lacts), tuple(racts))


def prof_from_tables(
    left: FinCat,
    right: FinCat,
    fibers: Mapping[tuple[object, object], Iterable[object]],
    lact: Mapping[tuple[object, object, object], object],
    ract: Mapping[tuple[object, object, object], object],
) -> Profunctor:
    """Build a profunctor from plain dicts; identity action rows may be omitted."""
    fibers_t = tuple(
        (_at(a), _at(b), FinSet(tuple(_at(j) for j in js))) for (a, b), js in fibers.items()
    )
    lacts = tuple((_at(s), _at(b), _at(j), _at(o)) for (s, b, j), o in lact.items())
    racts = tuple((_at(a), _at(j), _at(t), _at(o)) for (a, j, t), o in ract.items())
    return Profunctor(left, right, fibers_t, lacts, racts)


def validate_profunctor(j: Profunctor, subject: str = "prof") -> Verdict:
    """Check action associativity and commutation on every applicable pair."""
    a_cat, b_cat = j.left, j.right
    for (a, b, s) in j.fibers:
        for x in s:
            for m1 in a_cat.mors():
                if a_cat.tgt(m1) != a:
                    continue
                mid = a_cat.src(m1)
                for m2 in a_cat.mors():
                    if a_cat.tgt(m2) != mid:
                        continue
                    lhs = j.lact(m2, b, j.lact(m1, b, x))
                    rhs = j.lact(a_cat.compose(m1, m2), b, x)
                    if lhs != rhs:
                        return failed("validate_prof", subject, f"lassoc@({m2.key},{m1.key},{x.key})")
            for t1 in b_cat.mors():
                if b_cat.src(t1) != b:
                    continue
                mid = b_cat.tgt(t1)
                for t2 in b_cat.mors():
                    if b_cat.src(t2) != mid:
                        continue
                    lhs = j.ract(a, j.ract(a, x, t1), t2)
                    rhs = j.ract(a, x, b_cat.compose(t2, t1))
                    if lhs != rhs:
                        return failed("validate_prof", subject, f"rassoc@({x.key},{t1.key},{t2.key})")
            for m1 in a_cat.mors():
                if a_cat.tgt(m1) != a:
                    continue
                a2 = a_cat.src(m1)
                for t1 in b_cat.mors():
                    if b_cat.src(t1) != b:
                        continue
                    lhs = j.ract(a2, j.lact(m1, b, x), t1)
                    rhs = j.lact(m1, b_cat.tgt(t1), j.ract(a, x, t1))
                    if lhs != rhs:
                        return failed("validate_prof", subject, f"commute@({m1.key},{x.key},{t1.key})")
    return passed("validate_prof", subject, f"elements={j.total_size()}")


@dataclass(frozen=True)
class ProCell:
    """A cell between profunctors: per-fiber maps J(a,b) -> K(fa,gb)."""

    hor_source: Profunctor
    hor_target: Profunctor
    vert_left: FinFunctor
    vert_right: FinFunctor
    components: tuple[tuple[Atom, Atom, FinMap], ...]

    def __post_init__(self) -> None:
        j, k = self.hor_source, self.hor_target
        f, g = self.vert_left, self.vert_right
        if f.source != j.left or g.source != j.right:
            raise BoundaryMismatch("vertical frames do not match the source profunctor")
        if f.target != k.left or g.target != k.right:
            raise BoundaryMismatch("vertical frames do not match the target profunctor")
        table: dict[tuple[Atom, Atom], FinMap] = {}
        for a, b, m in self.components:
            if len(m.source) == 0:
                continue
            if (a, b) in table:
                raise ValueError(f"duplicate component at ({a!r},{b!r})")
            if m.source != j.fiber(a, b) or m.target != k.fiber(f.on_ob(a), g.on_ob(b)):
                raise BoundaryMismatch(f"component at ({a.key},{b.key}) has wrong boundary")
            table[(a, b)] = m
        for a in j.left.objects:
            for b in j.right.objects:
                if len(j.fiber(a, b)) and (a, b) not in table:
                    raise ValueError(f"missing component at ({a.key},{b.key})")
        object.__setattr__(self, "components", tuple(sorted((a, b, m) for (a, b), m in table.items())))
        object.__setattr__(self, "_comp", table)

    def component(self, a: Atom, b: Atom) -> FinMap:
        got = self._comp.get((a, b))  # type: ignore[attr-defined]
        if got is not None:
            return got
        tgt = self.hor_target.fiber(self.vert_left.on_ob(a), self.vert_right.on_ob(b))
        return FinMap(FinSet(()), tgt, ())

    def apply(self, a: Atom, b: Atom, j: Atom) -> Atom:
        return self.component(a, b)(j)

    def is_component_bijective(self) -> tuple[bool, tuple[Atom, Atom] | None]:
        for a in self.hor_source.left.objects:
            for b in self.hor_source.right.objects:
                m = self.component(a, b)
                if not m.is_bijective():
                    return False, (a, b)
        return True, None


def procell_from_tables(
    hor_source: Profunctor,
    hor_target: Profunctor,
    vert_left: FinFunctor,
    vert_right: FinFunctor,
    mapping: Mapping[tuple[object, object], Mapping[object, object]],
) -> ProCell:
    comps = []
    for (a, b), table in mapping.items():
        aa, bb = _at(a), _at(b)
        src = hor_source.fiber(aa, bb)
        tgt = hor_target.fiber(vert_left.on_ob(aa), vert_right.on_ob(bb))
        comps.append((aa, bb, FinMap(src, tgt, tuple((_at(k), _at(v)) for k, v in table.items()))))
    return ProCell(hor_source, hor_target, vert_left, vert_right, tuple(comps))


def identity_procell(j: Profunctor) -> ProCell:
    comps = tuple((a, b, FinMap.identity(s)) for a, b, s in j.fibers)
    return ProCell(j, j, FinFunctor.identity(j.left), FinFunctor.identity(j.right), comps)


def functor_unit_cell(f: FinFunctor) -> ProCell:
    """The unit cell U_f: U_A => U_C over (f, f), acting as f on hom sets."""
    ua, uc = unit_prof(f.source), unit_prof(f.target)
    comps = []
    for a, b, s in ua.fibers:
        tgt = uc.fiber(f.on_ob(a), f.on_ob(b))
        comps.append((a, b, FinMap(s, tgt, tuple((m, f.on_mor(m)) for m in s))))
    return ProCell(ua, uc, f, f, tuple(comps))


def validate_procell(phi: ProCell, subject: str = "cell") -> Verdict:
    """Check compatibility with both actions for every acting morphism."""
    j, k = phi.hor_source, phi.hor_target
    f, g = phi.vert_left, phi.vert_right
    for (a, b, s) in j.fibers:
        for x in s:
            for m in j.left.mors():
                if j.left.tgt(m) != a:
                    continue
                a2 = j.left.src(m)
                lhs = phi.apply(a2, b, j.lact(m, b, x))
                rhs = k.lact(f.on_mor(m), g.on_ob(b), phi.apply(a, b, x))
                if lhs != rhs:
                    return failed("validate_cell", subject, f"lact@({m.key},{x.key})")
            for t in j.right.mors():
                if j.right.src(t) != b:
                    continue
                b2 = j.right.tgt(t)
                lhs = phi.apply(a, b2, j.ract(a, x, t))
                rhs = k.ract(f.on_ob(a), phi.apply(a, b, x), g.on_mor(t))
                if lhs != rhs:
                    return failed("validate_cell", subject, f"ract@({x.key},{t.key})")
    return passed("validate_cell", subject)


def vcomp(phi: ProCell, psi: ProCell) -> ProCell:
    """Vertical composite, psi after phi."""
    if phi.hor_target != psi.hor_source:
        raise BoundaryMismatch("vertical composition needs matching horizontal boundary")
    f = phi.vert_left.then(psi.vert_left)
    g = phi.vert_right.then(psi.vert_right)
    comps = []
    for a, b, s in phi.hor_source.fibers:
        first = phi.component(a, b)
        second = psi.component(phi.vert_left.on_ob(a), phi.vert_right.on_ob(b))
        comps.append((a, b, first.then(second)))
    return ProCell(phi.hor_source, psi.hor_target, f, g, tuple(comps))


# -- horizontal composition ------------------------------------------------

def _raw(b: Atom, j: Atom, h: Atom) -> Atom:
    return tag_atom(b.key, pair_atom(j, h))


def hcomp(j: Profunctor, h: Profunctor) -> Profunctor:
    """Composite profunctor: fibers are quotients of middle-indexed pairs.

    The result carries hidden classification tables used by composite_rep,
    the associator, the unitors, and horizontal cell composition.
    """
    if j.right != h.left:
        raise BoundaryMismatch("hcomp needs matching middle category")
    mid = j.right
    classify: dict[tuple[Atom, Atom, Atom], Atom] = {}
    decompose: dict[tuple[Atom, Atom, Atom], tuple[Atom, Atom, Atom]] = {}
    fibers = []
    fib: dict[tuple[Atom, Atom], FinSet] = {}
    for a in j.left.objects:
        for c in h.right.objects:
            raws: list[Atom] = []
            raw_info: dict[Atom, tuple[Atom, Atom, Atom]] = {}
            for b in mid.objects:
                for x in j.fiber(a, b):
                    for y in h.fiber(b, c):
                        r = _raw(b, x, y)
                        raws.append(r)
                        raw_info[r] = (b, x, y)
            base = FinSet(tuple(raws))
            relations: set[tuple[Atom, Atom]] = set()
            for u in mid.mors():
                b1, b2 = mid.src(u), mid.tgt(u)
                if u == mid.ident(b1):
                    continue
                for x in j.fiber(a, b1):
                    for y in h.fiber(b2, c):
                        relations.add((_raw(b2, j.ract(a, x, u), y), _raw(b1, x, h.lact(u, c, y))))
            rel_set = FinSet(tuple(pair_atom(p, q) for p, q in relations))
            fmap = FinMap(rel_set, base, tuple((pair_atom(p, q), p) for p, q in relations))
            gmap = FinMap(rel_set, base, tuple((pair_atom(p, q), q) for p, q in relations))
            quot = coequalize(fmap, gmap)
            reps = quot.reps()
            if len(reps):
                fibers.append((a, c, reps))
                fib[(a, c)] = reps
            for r in raws:
                classify[(a, c, r)] = quot.rep(r)
            for rep in reps:
                decompose[(a, c, rep)] = raw_info[rep]
    lacts, racts = [], []
    for (a, c), reps in fib.items():
        for rep in reps:
            b, x, y = decompose[(a, c, rep)]
            for m in j.left.mors():
                if j.left.tgt(m) == a and m != j.left.ident(a):
                    a2 = j.left.src(m)
                    lacts.append((m, c, rep, classify[(a2, c, _raw(b, j.lact(m, b, x), y))]))
            for t in h.right.mors():
                if h.right.src(t) == c and t != h.right.ident(c):
                    c2 = h.right.tgt(t)
                    racts.append((a, rep, t, classify[(a, c2, _raw(b, x, h.ract(b, y, t)))]))
    out = Profunctor(j.left, h.right, tuple(fibers), tuple(lacts), tuple(racts))
    object.__setattr__(out, "_classify", classify)
    object.__setattr__(out, "_decompose", decompose)
    return out


def composite_rep(p: Profunctor, a: Atom, b: Atom, c: Atom, j: Atom, h: Atom) -> Atom:
    """Class representative of the middle-b pair (j,h) in an hcomp-built composite."""
    table = getattr(p, "_classify", None)
    if table is None:
        raise ValueError("profunctor was not built by hcomp")
    return table[(a, c, _raw(b, j, h))]


def _decomposition(p: Profunctor, a: Atom, c: Atom, rep: Atom) -> tuple[Atom, Atom, Atom]:
    table = getattr(p, "_decompose", None)
    if table is None:
        raise ValueError("profunctor was not built by hcomp")
    return table[(a, c, rep)]


def hcomp_cell(phi: ProCell, chi: ProCell) -> ProCell:
    """Horizontal composite of cells, acting pairwise on representatives."""
    if phi.vert_right != chi.vert_left:
        raise BoundaryMismatch("horizontal cell composition needs a shared middle frame")
    src = hcomp(phi.hor_source, chi.hor_source)
    tgt = hcomp(phi.hor_target, chi.hor_target)
    f, g = phi.vert_left, chi.vert_right
    mid = phi.vert_right
    comps = []
    for a, c, reps in src.fibers:
        rows = []
        for rep in reps:
            b, x, y = _decomposition(src, a, c, rep)
            out = composite_rep(
                tgt,
                f.on_ob(a),
                mid.on_ob(b),
                g.on_ob(c),
                phi.apply(a, b, x),
                chi.apply(b, c, y),
            )
            rows.append((rep, out))
        comps.append((a, c, FinMap(reps, tgt.fiber(f.on_ob(a), g.on_ob(c)), tuple(rows))))
    return ProCell(src, tgt, f, g, tuple(comps))


def invert_procell(phi: ProCell) -> ProCell:
    """Inverse of a cell with identity vertical frames and bijective components."""
    ident_l = FinFunctor.identity(phi.hor_source.left)
    ident_r = FinFunctor.identity(phi.hor_source.right)
    if phi.vert_left != ident_l or phi.vert_right != ident_r:
        raise ValueError("only globular cells invert")
    ok, where = phi.is_component_bijective()
    if not ok:
        raise ValueError(f"component at {where} is not bijective")
    comps = tuple((a, b, m.inverse()) for a, b, m in phi.components)
    return ProCell(phi.hor_target, phi.hor_source, ident_l, ident_r, comps)


# -- units, unitors, associator --------------------------------------------

def unit_prof(c: FinCat) -> Profunctor:
    """The hom profunctor of a category: fibers are hom sets, actions compose."""
    fibers = tuple((a, b, c.hom(a, b)) for a in c.objects for b in c.objects if len(c.hom(a, b)))
    lacts, racts = [], []
    for a, b, s in fibers:
        for m in s:
            for u in c.mors():
                if c.tgt(u) == a and u != c.ident(a):
                    lacts.append((u, b, m, c.compose(m, u)))
                if c.src(u) == b and u != c.ident(b):
                    racts.append((a, m, u, c.compose(u, m)))
    return Profunctor(c, c, fibers, tuple(lacts), tuple(racts))


def unitors(j: Profunctor) -> tuple[ProCell, ProCell]:
    """The invertible cells l: U_A . J => J and r: J . U_B => J."""
    ua = unit_prof(j.left)
    ub = unit_prof(j.right)
    left_src = hcomp(ua, j)
    right_src = hcomp(j, ub)
    ident_l = FinFunctor.identity(j.left)
    ident_r = FinFunctor.identity(j.right)
    lcomps = []
    for a, b, reps in left_src.fibers:
        rows = []
        for rep in reps:
            _, s, x = _decomposition(left_src, a, b, rep)
            rows.append((rep, j.lact(s, b, x)))
        lcomps.append((a, b, FinMap(reps, j.fiber(a, b), tuple(rows))))
    rcomps = []
    for a, b, reps in right_src.fibers:
        rows = []
        for rep in reps:
            _, x, t = _decomposition(right_src, a, b, rep)
            rows.append((rep, j.ract(a, x, t)))
        rcomps.append((a, b, FinMap(reps, j.fiber(a, b), tuple(rows))))
    l_cell = ProCell(left_src, j, ident_l, ident_r, tuple(lcomps))
    r_cell = ProCell(right_src, j, ident_l, ident_r, tuple(rcomps))
    return l_cell, r_cell


def associator(j: Profunctor, h: Profunctor, k: Profunctor) -> ProCell:
    """The invertible cell (J.H).K => J.(H.K) on class representatives."""
    jh = hcomp(j, h)
    hk = hcomp(h, k)
    src = hcomp(jh, k)
    tgt = hcomp(j, hk)
    comps = []
    for a, d, reps in src.fibers:
        rows = []
        for rep in reps:
            c, p, z = _decomposition(src, a, d, rep)
            b, x, y = _decomposition(jh, a, c, p)
            inner = composite_rep(hk, b, c, d, y, z)
            rows.append((rep, composite_rep(tgt, a, b, d, x, inner)))
        comps.append((a, d, FinMap(reps, tgt.fiber(a, d), tuple(rows))))
    return ProCell(src, tgt, FinFunctor.identity(j.left), FinFunctor.identity(k.right), tuple(comps))


# -- restriction and companions ---------------------------------------------

def restrict(k: Profunctor, f: FinFunctor, g: FinFunctor) -> tuple[Profunctor, ProCell]:
    """The restriction K(f,g) with its cartesian filler cell into K."""
    if f.target != k.left or g.target != k.right:
        raise BoundaryMismatch("restriction functors must land in K's boundary")
    a_cat, b_cat = f.source, g.source
    fibers = []
    for a in a_cat.objects:
        for b in b_cat.objects:
            s = k.fiber(f.on_ob(a), g.on_ob(b))
            if len(s):
                fibers.append((a, b, s))
    lacts, racts = [], []
    for a, b, s in fibers:
        for x in s:
            for m in a_cat.mors():
                if a_cat.tgt(m) == a and m != a_cat.ident(a):
                    lacts.append((m, b, x, k.lact(f.on_mor(m), g.on_ob(b), x)))
            for t in b_cat.mors():
                if b_cat.src(t) == b and t != b_cat.ident(b):
                    racts.append((a, x, t, k.ract(f.on_ob(a), x, g.on_mor(t))))
    restricted = Profunctor(a_cat, b_cat, tuple(fibers), tuple(lacts), tuple(racts))
    comps = tuple((a, b, FinMap.identity(s)) for a, b, s in fibers)
    filler = ProCell(restricted, k, f, g, comps)
    return restricted, filler


def factor_through_filler(
    phi: ProCell,
    f: FinFunctor,
    g: FinFunctor,
    h: FinFunctor | None = None,
    k: FinFunctor | None = None,
) -> ProCell:
    """Factor phi: J => K over (f.h, g.k) through the filler of K(f,g).

    Returns the unique cell J => K(f,g) over (h, k); components are phi's
    re-indexed. h, k default to identities.
    """
    if h is None:
        h = FinFunctor.identity(phi.hor_source.left)
    if k is None:
        k = FinFunctor.identity(phi.hor_source.right)
    if phi.vert_left != h.then(f) or phi.vert_right != k.then(g):
        raise BoundaryMismatch("vertical frames do not compose through (f,g)")
    restricted, _ = restrict(phi.hor_target, f, g)
    comps = []
    for a, b, s in phi.hor_source.fibers:
        m = phi.component(a, b)
        target = restricted.fiber(h.on_ob(a), k.on_ob(b))
        comps.append((a, b, FinMap(s, target, m.graph)))
    return ProCell(phi.hor_source, restricted, h, k, tuple(comps))


@dataclass(frozen=True)
class CompanionPair:
    """Companion and conjoint of a functor with their four defining cells
    and the unit/counit of the induced adjunction."""

    f: FinFunctor
    companion: Profunctor
    eps: ProCell
    eta: ProCell
    conjoint: Profunctor
    eps_c: ProCell
    eta_c: ProCell
    adj_unit: ProCell
    adj_counit: ProCell


def companion(f: FinFunctor) -> CompanionPair:
    """Companion C(f,id) and conjoint C(id,f) built from hom restrictions."""
    a_cat, c_cat = f.source, f.target
    uc = unit_prof(c_cat)
    ua = unit_prof(a_cat)
    ident_a = FinFunctor.identity(a_cat)
    ident_c = FinFunctor.identity(c_cat)
    comp_prof, eps = restrict(uc, f, ident_c)
    conj_prof, eps_c = restrict(uc, ident_c, f)
    eta_comps = []
    for a, b, s in ua.fibers:
        tgt = comp_prof.fiber(a, f.on_ob(b))
        eta_comps.append((a, b, FinMap(s, tgt, tuple((m, f.on_mor(m)) for m in s))))
    eta = ProCell(ua, comp_prof, ident_a, f, tuple(eta_comps))
    eta_c_comps = []
    for a, b, s in ua.fibers:
        tgt = conj_prof.fiber(f.on_ob(a), b)
        eta_c_comps.append((a, b, FinMap(s, tgt, tuple((m, f.on_mor(m)) for m in s))))
    eta_c = ProCell(ua, conj_prof, f, ident_a, tuple(eta_c_comps))
    # adjunction unit: U_A => C(f,id) . C(id,f) through the unit's left unitor
    l_ua, _ = unitors(ua)
    unit = vcomp(invert_procell(l_ua), hcomp_cell(eta, eta_c))
    # adjunction counit: C(id,f) . C(f,id) => U_C through the unit's unitor
    l_uc, _ = unitors(uc)
    counit = vcomp(hcomp_cell(eps_c, eps), l_uc)
    pair = CompanionPair(f, comp_prof, eps, eta, conj_prof, eps_c, eta_c, unit, counit)
    verdict = check_companion(pair)
    if not verdict.ok:
        raise AxiomFailure(f"companion identities failed: {verdict.witness}")
    return pair


def check_companion(pair: CompanionPair, subject: str = "companion") -> Verdict:
    """Verify the two companion and two conjoint identities exactly."""
    f = pair.f
    unit_cell = functor_unit_cell(f)
    if vcomp(pair.eta, pair.eps) != unit_cell:
        return failed("check_companion", subject, "vertical_companion_identity")
    l_comp, r_comp = unitors(pair.companion)
    horizontal = vcomp(vcomp(invert_procell(l_comp), hcomp_cell(pair.eta, pair.eps)), r_comp)
    if horizontal != identity_procell(pair.companion):
        return failed("check_companion", subject, "horizontal_companion_identity")
    if vcomp(pair.eta_c, pair.eps_c) != unit_cell:
        return failed("check_companion", subject, "vertical_conjoint_identity")
    l_conj, r_conj = unitors(pair.conjoint)
    horizontal_c = vcomp(vcomp(invert_procell(r_conj), hcomp_cell(pair.eps_c, pair.eta_c)), l_conj)
    if horizontal_c != identity_procell(pair.conjoint):
        return failed("check_companion", subject, "horizontal_conjoint_identity")
    return passed("check_companion", subject)


def companion_compositor(f: FinFunctor, g: FinFunctor) -> ProCell:
    """The canonical invertible cell C(f,id) . C(g,id) => C(g.f,id).

    Built by pasting the two counit cells and factoring through the filler
    of the composite's companion.
    """
    if f.target != g.source:
        raise BoundaryMismatch("functors do not compose")
    pf, pg = companion(f), companion(g)
    gf = f.then(g)
    # paste: C(f,id).C(g,id) => U_B.C(g,id) => C(g,id) => U_C over (g.f, id)
    step1 = hcomp_cell(pf.eps, identity_procell(pg.companion))
    l_g, _ = unitors(pg.companion)
    pasted = vcomp(vcomp(step1, l_g), pg.eps)
    return factor_through_filler(pasted, gf, FinFunctor.identity(g.target))


# -- the lambda/rho cell calculus -------------------------------------------

def lambda_cell(phi: ProCell) -> ProCell:
    """Left form of phi: J . D(g,id) => C(f,id) . K over identities."""
    f, g = phi.vert_left, phi.vert_right
    pf, pg = companion(f), companion(g)
    j, k = phi.hor_source, phi.hor_target
    l_j, _ = unitors(j)
    grid = hcomp_cell(hcomp_cell(pf.eta, phi), pg.eps)
    pre = hcomp_cell(invert_procell(l_j), identity_procell(pg.companion))
    _, r_ck = unitors(hcomp(pf.companion, k))
    return vcomp(vcomp(pre, grid), r_ck)


def lambda_inv(psi: ProCell, j: Profunctor, k: Profunctor, f: FinFunctor, g: FinFunctor) -> ProCell:
    """Inverse of lambda_cell: recover phi: J => K over (f,g) from its left form."""
    pf, pg = companion(f), companion(g)
    _, r_j = unitors(j)
    l_k, _ = unitors(k)
    pad = hcomp_cell(identity_procell(j), pg.eta)
    strip = hcomp_cell(pf.eps, identity_procell(k))
    return vcomp(vcomp(vcomp(vcomp(invert_procell(r_j), pad), psi), strip), l_k)


def rho_cell(phi: ProCell) -> ProCell:
    """Right form of phi: C(id,f) . J => K . D(id,g) over identities."""
    f, g = phi.vert_left, phi.vert_right
    pf, pg = companion(f), companion(g)
    j, k = phi.hor_source, phi.hor_target
    grid = hcomp_cell(hcomp_cell(pf.eps_c, phi), pg.eta_c)
    _, r_cj = unitors(hcomp(pf.conjoint, j))
    l_k, _ = unitors(k)
    post = hcomp_cell(l_k, identity_procell(pg.conjoint))
    return vcomp(vcomp(invert_procell(r_cj), grid), post)


def rho_inv(chi: ProCell, j: Profunctor, k: Profunctor, f: FinFunctor, g: FinFunctor) -> ProCell:
    """Inverse of rho_cell: recover phi: J => K over (f,g) from its right form."""
    pf, pg = companion(f), companion(g)
    l_j, _ = unitors(j)
    _, r_k = unitors(k)
    pad = hcomp_cell(pf.eta_c, identity_procell(j))
    strip = hcomp_cell(identity_procell(k), pg.eps_c)
    return vcomp(vcomp(vcomp(vcomp(invert_procell(l_j), pad), chi), strip), r_k)


def nat_to_cell(alpha: "NatTransf") -> ProCell:
    """A natural transformation as a cell between hom profunctors.

    Component at (a,b) sends m: a -> b to alpha_b . F(m); the cell axioms
    for the result are exactly naturality.
    """
    f, g = alpha.source, alpha.target
    d = f.target
    ua, ud = unit_prof(f.source), unit_prof(d)
    comps = []
    for a, b, s in ua.fibers:
        tgt = ud.fiber(f.on_ob(a), g.on_ob(b))
        rows = tuple((m, d.compose(alpha.at(b), f.on_mor(m))) for m in s)
        comps.append((a, b, FinMap(s, tgt, rows)))
    return ProCell(ua, ud, f, g, tuple(comps))


def cell_to_nat(phi: ProCell) -> "NatTransf":
    """Recover the natural transformation from a cell between hom profunctors."""
    c = phi.hor_source.left
    comps = tuple((a, phi.apply(a, a, c.ident(a))) for a in c.objects)
    return NatTransf(phi.vert_left, phi.vert_right, comps)


def enumerate_cells(
    j: Profunctor,
    k: Profunctor,
    f: FinFunctor,
    g: FinFunctor,
    guard: int = 10**6,
) -> list[ProCell]:
    """All lawful cells J => K over (f,g), by exhaustive component search.

    Meant for probe-sized fibers; raises SizeGuardExceeded when the space of
    candidate component families grows past the guard.
    """
    pools: list[list[FinMap]] = []
    keys: list[tuple[Atom, Atom]] = []
    total = 1
    for a, b, s in j.fibers:
        tgt = k.fiber(f.on_ob(a), g.on_ob(b))
        maps = [
            FinMap(s, tgt, tuple(zip(s, img)))
            for img in itertools.product(list(tgt), repeat=len(s))
        ]
        total *= len(maps)
        if total > guard:
            raise SizeGuardExceeded(f"cell search space exceeds {guard}")
        pools.append(maps)
        keys.append((a, b))
    found = []
    for combo in itertools.product(*pools):
        cell = ProCell(j, k, f, g, tuple((a, b) + (m,) for (a, b), m in zip(keys, combo)))
        if validate_procell(cell).ok:
            found.append(cell)
    return found


def is_right_invertible(phi: ProCell, subject: str = "cell") -> Verdict:
    """Right invertibility: every component of rho(phi) is bijective."""
    rho = rho_cell(phi)
    ok, where = rho.is_component_bijective()
    if ok:
        return passed("right_invertible", subject)
    a, b = where
    return failed("right_invertible", subject, f"fiber@({a.key},{b.key})")


def is_left_invertible(phi: ProCell, subject: str = "cell") -> Verdict:
    """Left invertibility: every component of lambda(phi) is bijective."""
    lam = lambda_cell(phi)
    ok, where = lam.is_component_bijective()
    if ok:
        return passed("left_invertible", subject)
    a, b = where
    return failed("left_invertible", subject, f"fiber@({a.key},{b.key})")
