"""Closed structure on the profunctor equipment: homs, currying, canonical isos."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .equipment import (
    ProCell,
    Profunctor,
    associator,
    companion,
    composite_rep,
    factor_through_filler,
    hcomp,
    hcomp_cell,
    identity_procell,
    invert_procell,
    procell_from_tables,
    restrict,
    unitors,
    vcomp,
)
from .errors import AxiomFailure, BoundaryMismatch, SizeGuardExceeded
from .fincat import FinFunctor
from .setkit import Atom, FinMap, FinSet

__all__ = [
    "DEFAULT_FAMILY_GUARD",
    "HomProfunctor",
    "left_hom",
    "right_hom",
    "flat",
    "sharp",
    "right_flat",
    "right_sharp",
    "evaluation",
    "coevaluation",
    "left_hom_map",
    "restriction_triple",
    "hom_isos",
    "lax_hom_coherence",
]

DEFAULT_FAMILY_GUARD = 10**6


def _family_key(components: dict[Atom, FinMap]) -> str:
    """Canonical rendering of a natural family as a sorted association list."""
    pieces = []
    for idx in sorted(components):
        fm = components[idx]
        if not len(fm.source):
            continue
        inner = ",".join(f"{x.key}↦{fm(x).key}" for x in fm.source)
        pieces.append(f"{idx.key}↦({inner})")
    return ";".join(pieces) or "()"


@dataclass(frozen=True)
class HomProfunctor:
    """A profunctor whose elements are natural families, kept with their tables.

    side is "left" for factor▷body (families indexed by the factor's left
    boundary) and "right" for body◁factor (families indexed by the factor's
    right boundary).
    """

    prof: Profunctor
    side: str
    factor: Profunctor
    body: Profunctor
    families: tuple[tuple[Atom, Atom, Atom, tuple[tuple[Atom, FinMap], ...]], ...]

    def __post_init__(self) -> None:
        table = {(i1, i2, t): dict(comps) for i1, i2, t, comps in self.families}
        object.__setattr__(self, "_table", table)

    def family(self, i1: Atom, i2: Atom, t: Atom) -> dict[Atom, FinMap]:
        return dict(self._table[(i1, i2, t)])

    def evaluate(self, i1: Atom, i2: Atom, t: Atom, at: Atom, arg: Atom) -> Atom:
        """Apply the component of family t at index `at` to `arg`."""
        return self._table[(i1, i2, t)][at](arg)


def _function_pool(src: FinSet, tgt: FinSet) -> list[FinMap]:
    return [
        FinMap(src, tgt, tuple(zip(src, pick)))
        for pick in itertools.product(tuple(tgt), repeat=len(src))
    ]


def _enumerate_families(index_cat, sources, targets, is_natural, guard, subject):
    """All index-wise maps source->target surviving the naturality filter."""
    idxs = [i for i in index_cat.objects if len(sources(i))]
    count = 1
    for i in idxs:
        if not len(targets(i)):
            return []
        count *= len(targets(i)) ** len(sources(i))
        if count > guard:
            raise SizeGuardExceeded(
                f"{subject}: {count} candidate families exceed guard {guard}"
            )
    out = []
    pools = [_function_pool(sources(i), targets(i)) for i in idxs]
    for combo in itertools.product(*pools):
        comps = dict(zip(idxs, combo))
        if is_natural(comps):
            out.append(comps)
    return out


def _hom_from_families(left, right, factor, body, side, fiber_families, lact, ract):
    fibers = {}
    fams = []
    for (i1, i2), comp_list in fiber_families.items():
        atoms = []
        for comps in comp_list:
            key = Atom(_family_key(comps))
            atoms.append(key)
            fams.append((i1, i2, key, tuple(sorted(comps.items()))))
        fibers[(i1, i2)] = atoms
    lookup = {(i1, i2, t): dict(comps) for i1, i2, t, comps in fams}
    lacts = {}
    racts = {}
    for (i1, i2), atoms in fibers.items():
        for t in atoms:
            comps = lookup[(i1, i2, t)]
            for u in left.mors():
                if left.tgt(u) != i1 or u == left.ident(left.src(u)):
                    continue
                lacts[(u, i2, t)] = Atom(_family_key(lact(u, i2, comps)))
            for v in right.mors():
                if right.src(v) != i2 or v == right.ident(i2):
                    continue
                racts[(i1, t, v)] = Atom(_family_key(ract(i1, comps, v)))
    prof = Profunctor(
        left,
        right,
        tuple((i1, i2, FinSet(tuple(atoms))) for (i1, i2), atoms in fibers.items()),
        tuple((s, b, j, o) for (s, b, j), o in lacts.items()),
        tuple((a, j, t, o) for (a, j, t), o in racts.items()),
    )
    return HomProfunctor(prof, side, factor, body, tuple(sorted(fams)))


def left_hom(j: Profunctor, k: Profunctor, guard: int = DEFAULT_FAMILY_GUARD) -> HomProfunctor:
    """The hom profunctor j▷k of natural families j(-,b) -> k(-,c)."""
    if j.left != k.left:
        raise BoundaryMismatch("left_hom requires a shared left boundary")
    a_cat, b_cat, c_cat = j.left, j.right, k.right
    non_ident = [s for s in a_cat.mors() if s != a_cat.ident(a_cat.src(s))]

    def natural(b, c):
        def check(comps):
            for s in non_ident:
                a2, a1 = a_cat.src(s), a_cat.tgt(s)
                for x in j.fiber(a1, b):
                    if comps[a2](j.lact(s, b, x)) != k.lact(s, c, comps[a1](x)):
                        return False
            return True

        return check

    fiber_families = {
        (b, c): _enumerate_families(
            a_cat,
            lambda a: j.fiber(a, b),
            lambda a: k.fiber(a, c),
            natural(b, c),
            guard,
            f"left_hom@({b.key},{c.key})",
        )
        for b in b_cat.objects
        for c in c_cat.objects
    }

    def act_left(u, c, comps):
        # precompose with the covariant action of u on the factor
        b2 = b_cat.src(u)
        return {
            a: FinMap(
                j.fiber(a, b2),
                k.fiber(a, c),
                tuple((x, comps[a](j.ract(a, x, u))) for x in j.fiber(a, b2)),
            )
            for a in a_cat.objects
            if len(j.fiber(a, b2))
        }

    def act_right(b, comps, v):
        c2 = c_cat.tgt(v)
        return {
            a: FinMap(
                j.fiber(a, b),
                k.fiber(a, c2),
                tuple((x, k.ract(a, fm(x), v)) for x in fm.source),
            )
            for a, fm in comps.items()
        }

    return _hom_from_families(b_cat, c_cat, j, k, "left", fiber_families, act_left, act_right)


def right_hom(k: Profunctor, h: Profunctor, guard: int = DEFAULT_FAMILY_GUARD) -> HomProfunctor:
    """The hom profunctor k◁h of natural families h(b,-) -> k(a,-)."""
    if k.right != h.right:
        raise BoundaryMismatch("right_hom requires a shared right boundary")
    a_cat, b_cat, c_cat = k.left, h.left, h.right
    non_ident = [v for v in c_cat.mors() if v != c_cat.ident(c_cat.src(v))]

    def natural(a, b):
        def check(comps):
            for v in non_ident:
                c1, c2 = c_cat.src(v), c_cat.tgt(v)
                for y in h.fiber(b, c1):
                    if comps[c2](h.ract(b, y, v)) != k.ract(a, comps[c1](y), v):
                        return False
            return True

        return check

    fiber_families = {
        (a, b): _enumerate_families(
            c_cat,
            lambda c: h.fiber(b, c),
            lambda c: k.fiber(a, c),
            natural(a, b),
            guard,
            f"right_hom@({a.key},{b.key})",
        )
        for a in a_cat.objects
        for b in b_cat.objects
    }

    def act_left(s, b, comps):
        # postcompose with the contravariant action of s on the body
        return {
            c: FinMap(
                fm.source,
                k.fiber(a_cat.src(s), c),
                tuple((y, k.lact(s, c, fm(y))) for y in fm.source),
            )
            for c, fm in comps.items()
        }

    def act_right(a, comps, u):
        # precompose with the contravariant action of u on the factor
        b2 = b_cat.tgt(u)
        return {
            c: FinMap(
                h.fiber(b2, c),
                k.fiber(a, c),
                tuple((y, comps[c](h.lact(u, c, y))) for y in h.fiber(b2, c)),
            )
            for c in c_cat.objects
            if len(h.fiber(b2, c))
        }

    return _hom_from_families(a_cat, b_cat, h, k, "right", fiber_families, act_left, act_right)


def _require_globular(phi: ProCell, who: str) -> None:
    if phi.vert_left != FinFunctor.identity(phi.hor_source.left) or phi.vert_right != FinFunctor.identity(phi.hor_source.right):
        raise BoundaryMismatch(f"{who} requires a cell with identity vertical sides")


def flat(phi: ProCell, j: Profunctor, h: Profunctor, hom: HomProfunctor | None = None) -> ProCell:
    """Curry a cell j∘h => k into h => j▷k."""
    _require_globular(phi, "flat")
    composite = hcomp(j, h)
    if phi.hor_source != composite:
        raise BoundaryMismatch("flat: cell source is not the stated composite")
    k = phi.hor_target
    if hom is None:
        hom = left_hom(j, k)
    a_cat = j.left
    tables = {}
    for b in h.left.objects:
        for c in h.right.objects:
            row = {}
            for y in h.fiber(b, c):
                comps = {}
                for a in a_cat.objects:
                    src = j.fiber(a, b)
                    if not len(src):
                        continue
                    comps[a] = FinMap(
                        src,
                        k.fiber(a, c),
                        tuple(
                            (x, phi.apply(a, c, composite_rep(composite, a, b, c, x, y)))
                            for x in src
                        ),
                    )
                row[y] = Atom(_family_key(comps))
            tables[(b, c)] = row
    ident = FinFunctor.identity
    return procell_from_tables(h, hom.prof, ident(h.left), ident(h.right), tables)


def sharp(psi: ProCell, hom: HomProfunctor) -> ProCell:
    """Uncurry a cell h => j▷k into j∘h => k."""
    _require_globular(psi, "sharp")
    if hom.side != "left" or psi.hor_target != hom.prof:
        raise BoundaryMismatch("sharp: cell target is not the stated left hom")
    j, k, h = hom.factor, hom.body, psi.hor_source
    composite = hcomp(j, h)
    tables = {}
    for a, c, reps in composite.fibers:
        row = {}
        for rep in reps:
            b, x, y = composite._decompose[(a, c, rep)]
            row[rep] = hom.evaluate(b, c, psi.apply(b, c, y), a, x)
        tables[(a, c)] = row
    ident = FinFunctor.identity
    return procell_from_tables(composite, k, ident(composite.left), ident(composite.right), tables)


def right_flat(phi: ProCell, j: Profunctor, h: Profunctor, hom: HomProfunctor | None = None) -> ProCell:
    """Curry a cell j∘h => k into j => k◁h."""
    _require_globular(phi, "right_flat")
    composite = hcomp(j, h)
    if phi.hor_source != composite:
        raise BoundaryMismatch("right_flat: cell source is not the stated composite")
    k = phi.hor_target
    if hom is None:
        hom = right_hom(k, h)
    c_cat = h.right
    tables = {}
    for a in j.left.objects:
        for b in j.right.objects:
            row = {}
            for x in j.fiber(a, b):
                comps = {}
                for c in c_cat.objects:
                    src = h.fiber(b, c)
                    if not len(src):
                        continue
                    comps[c] = FinMap(
                        src,
                        k.fiber(a, c),
                        tuple(
                            (y, phi.apply(a, c, composite_rep(composite, a, b, c, x, y)))
                            for y in src
                        ),
                    )
                row[x] = Atom(_family_key(comps))
            tables[(a, b)] = row
    ident = FinFunctor.identity
    return procell_from_tables(j, hom.prof, ident(j.left), ident(j.right), tables)


def right_sharp(psi: ProCell, hom: HomProfunctor) -> ProCell:
    """Uncurry a cell j => k◁h into j∘h => k."""
    _require_globular(psi, "right_sharp")
    if hom.side != "right" or psi.hor_target != hom.prof:
        raise BoundaryMismatch("right_sharp: cell target is not the stated right hom")
    h, k, j = hom.factor, hom.body, psi.hor_source
    composite = hcomp(j, h)
    tables = {}
    for a, c, reps in composite.fibers:
        row = {}
        for rep in reps:
            b, x, y = composite._decompose[(a, c, rep)]
            row[rep] = hom.evaluate(a, b, psi.apply(a, b, x), c, y)
        tables[(a, c)] = row
    ident = FinFunctor.identity
    return procell_from_tables(composite, k, ident(composite.left), ident(composite.right), tables)


def evaluation(hom: HomProfunctor) -> ProCell:
    """The counit j∘(j▷k) => k applying each family to its first argument."""
    if hom.side != "left":
        raise BoundaryMismatch("evaluation is stated for left homs")
    return sharp(identity_procell(hom.prof), hom)


def coevaluation(j: Profunctor, h: Profunctor, hom: HomProfunctor | None = None) -> ProCell:
    """The unit h => j▷(j∘h) pairing an element with composition classes."""
    composite = hcomp(j, h)
    if hom is None:
        hom = left_hom(j, composite)
    return flat(identity_procell(composite), j, h, hom)


def left_hom_map(gamma: ProCell, hom_in: HomProfunctor, hom_out: HomProfunctor | None = None) -> ProCell:
    """Postcompose families with a cell gamma: body => body', as j▷gamma."""
    _require_globular(gamma, "left_hom_map")
    if hom_in.side != "left" or gamma.hor_source != hom_in.body:
        raise BoundaryMismatch("left_hom_map: gamma does not start at the hom body")
    if hom_out is None:
        hom_out = left_hom(hom_in.factor, gamma.hor_target)
    tables = {}
    for b, c, atoms in hom_in.prof.fibers:
        row = {}
        for t in atoms:
            comps = {
                a: FinMap(
                    fm.source,
                    gamma.hor_target.fiber(a, c),
                    tuple((x, gamma.apply(a, c, fm(x))) for x in fm.source),
                )
                for a, fm in hom_in.family(b, c, t).items()
            }
            row[t] = Atom(_family_key(comps))
        tables[(b, c)] = row
    ident = FinFunctor.identity
    return procell_from_tables(
        hom_in.prof, hom_out.prof, ident(hom_in.prof.left), ident(hom_in.prof.right), tables
    )


def _checked_iso(cell: ProCell, who: str) -> ProCell:
    ok, where = cell.is_component_bijective()
    if not ok:
        raise AxiomFailure(f"{who}: component at {where} is not bijective")
    return cell


def restriction_triple(f: FinFunctor, k: Profunctor):
    """The isomorphisms companion(f)∘k => k(f,id) => conjoint(f)▷k.

    Returns (first, second); both are bijective on every fiber.
    """
    if k.left != f.target:
        raise BoundaryMismatch("restriction_triple: k must start at f's target")
    d_ident = FinFunctor.identity(k.right)
    pair = companion(f)
    restricted, _ = restrict(k, f, d_ident)
    l_k, _ = unitors(k)
    pasted = vcomp(hcomp_cell(pair.eps, identity_procell(k)), l_k)
    first = factor_through_filler(pasted, f, d_ident)
    hom = left_hom(pair.conjoint, k)
    tables = {}
    for a in f.source.objects:
        for d in k.right.objects:
            row = {}
            for el in restricted.fiber(a, d):
                comps = {}
                for c in k.left.objects:
                    src = pair.conjoint.fiber(c, a)
                    if not len(src):
                        continue
                    comps[c] = FinMap(
                        src,
                        k.fiber(c, d),
                        tuple((x, k.lact(x, d, el)) for x in src),
                    )
                row[el] = Atom(_family_key(comps))
            tables[(a, d)] = row
    second = procell_from_tables(
        restricted, hom.prof, FinFunctor.identity(f.source), d_ident, tables
    )
    return _checked_iso(first, "restriction_triple.first"), _checked_iso(
        second, "restriction_triple.second"
    )


def hom_isos(h: Profunctor, k: Profunctor, l: Profunctor, f: FinFunctor, g: FinFunctor):
    """The two canonical hom isomorphisms built from companion counits.

    For h: A⇸B, k: A⇸C, l: C⇸D, f: A->C and g: D->B, returns bijective cells
      h▷(companion(f)∘l)  =>  (conjoint(f)∘h)▷l
      companion(g)∘(h▷k)  =>  (h∘conjoint(g))▷k
    """
    if h.left != f.source or l.left != f.target or k.left != h.left:
        raise BoundaryMismatch("hom_isos: boundary mismatch on f side")
    if g.source != l.right or g.target != h.right:
        raise BoundaryMismatch("hom_isos: boundary mismatch on g side")
    pf, pg = companion(f), companion(g)

    inner1 = hcomp(pf.companion, l)
    x1 = left_hom(h, inner1)
    jj1 = hcomp(pf.conjoint, h)
    chain1 = vcomp(
        vcomp(
            vcomp(
                vcomp(
                    associator(pf.conjoint, h, x1.prof),
                    hcomp_cell(identity_procell(pf.conjoint), evaluation(x1)),
                ),
                invert_procell(associator(pf.conjoint, pf.companion, l)),
            ),
            hcomp_cell(pf.adj_counit, identity_procell(l)),
        ),
        unitors(l)[0],
    )
    iso1 = flat(chain1, jj1, x1.prof, left_hom(jj1, l))

    y = left_hom(h, k)
    jj2 = hcomp(h, pg.conjoint)
    src2 = hcomp(pg.companion, y.prof)
    chain2 = vcomp(
        vcomp(
            vcomp(
                vcomp(
                    invert_procell(associator(jj2, pg.companion, y.prof)),
                    hcomp_cell(associator(h, pg.conjoint, pg.companion), identity_procell(y.prof)),
                ),
                hcomp_cell(
                    hcomp_cell(identity_procell(h), pg.adj_counit), identity_procell(y.prof)
                ),
            ),
            hcomp_cell(unitors(h)[1], identity_procell(y.prof)),
        ),
        evaluation(y),
    )
    iso2 = flat(chain2, jj2, src2, left_hom(jj2, k))
    return _checked_iso(iso1, "hom_isos.first"), _checked_iso(iso2, "hom_isos.second")


def lax_hom_coherence(
    fj: Profunctor,
    fjh: Profunctor,
    compositor: ProCell,
    fev: ProCell,
    k: Profunctor,
    hom: HomProfunctor | None = None,
) -> ProCell:
    """The canonical cell F(j▷h)∘k => Fj▷(Fh∘k) induced by a functor's data.

    compositor: Fj∘F(j▷h) => F(j∘(j▷h)) and fev: F(j∘(j▷h)) => Fh are the
    supplied action of the functor; both must have identity vertical sides.
    """
    _require_globular(compositor, "lax_hom_coherence")
    _require_globular(fev, "lax_hom_coherence")
    if compositor.hor_source != hcomp(fj, fjh):
        raise BoundaryMismatch("lax_hom_coherence: compositor source mismatch")
    if fev.hor_source != compositor.hor_target:
        raise BoundaryMismatch("lax_hom_coherence: fev must follow the compositor")
    if k.left != fjh.right:
        raise BoundaryMismatch("lax_hom_coherence: k must start at the hom boundary")
    fh = fev.hor_target
    x = hcomp(fjh, k)
    chain = vcomp(
        vcomp(
            invert_procell(associator(fj, fjh, k)),
            hcomp_cell(compositor, identity_procell(k)),
        ),
        hcomp_cell(fev, identity_procell(k)),
    )
    if hom is None:
        hom = left_hom(fj, hcomp(fh, k))
    return flat(chain, fj, x, hom)
