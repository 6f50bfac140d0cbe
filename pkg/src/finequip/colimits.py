"""Weighted colimits, left extensions, and comma categories, with verifiers.

Colimiting data is found by exhaustive search and certified two independent
ways: once through the closed-hom transpose of the unit cell, once by a
direct factorization scan over every competing cell. The two routes must
agree; a disagreement is reported as its own failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .closedhom import flat, left_hom
from .equipment import (
    ProCell,
    Profunctor,
    companion,
    enumerate_cells,
    factor_through_filler,
    functor_unit_cell,
    hcomp,
    hcomp_cell,
    identity_procell,
    invert_procell,
    is_right_invertible,
    lambda_cell,
    nat_to_cell,
    procell_from_tables,
    unit_prof,
    unitors,
    vcomp,
)
from .errors import (
    BoundaryMismatch,
    SearchBudgetExceeded,
    Verdict,
    failed,
    merge_verdicts,
    passed,
)
from .fincat import (
    FinCat,
    FinFunctor,
    NatTransf,
    all_functors,
    all_nats,
    discrete_cat,
    functor,
    terminal_cat,
    walking_arrow,
)
from .setkit import Atom, FinSet

DEFAULT_CELL_GUARD = 10**6
DEFAULT_SEARCH_BUDGET = 10**4


@dataclass(frozen=True)
class ColimitCandidate:
    """A weight, a diagram, a proposed value, and the unit cell tying them.

    The unit runs from the weight to the unit profunctor of the diagram's
    target, over (diagram, value). Whether it actually exhibits the value as
    the weighted colimit is verify_colimit's job; the candidate only promises
    a well-typed frame.
    """

    weight: Profunctor
    diagram: FinFunctor
    value: FinFunctor
    unit: ProCell

    def __post_init__(self) -> None:
        j, d, l = self.weight, self.diagram, self.value
        if d.source != j.left or l.source != j.right or d.target != l.target:
            raise BoundaryMismatch("weight, diagram, and value do not share boundaries")
        u = self.unit
        if u.hor_source != j or u.vert_left != d or u.vert_right != l:
            raise BoundaryMismatch("unit cell does not sit on the candidate's frame")
        if u.hor_target != unit_prof(d.target):
            raise BoundaryMismatch("unit cell must land in the unit profunctor of the target")


def postcompose_unit(c: ColimitCandidate, nu: NatTransf) -> ProCell:
    """Extend the candidate's unit along a transformation out of its value."""
    if nu.source != c.value:
        raise BoundaryMismatch("transformation must start at the candidate's value")
    _, right_unitor = unitors(c.weight)
    collapse, _ = unitors(c.unit.hor_target)
    widened = hcomp_cell(c.unit, nat_to_cell(nu))
    return vcomp(vcomp(invert_procell(right_unitor), widened), collapse)


def verify_colimit(
    c: ColimitCandidate,
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "candidate",
) -> Verdict:
    """Certify a candidate two independent ways and insist the routes agree.

    Route one transposes the unit into the closed hom and checks the result
    is bijective fiber by fiber; route two scans, for every competitor value
    and every cell onto it, that exactly one transformation factors the cell
    through the unit.
    """
    transpose = _transpose_route(c, guard, subject)
    factor = _factorization_route(c, guard, subject)
    notes = (
        f"transpose_route={'PASS' if transpose.ok else 'FAIL'}",
        f"factorization_route={'PASS' if factor.ok else 'FAIL'}",
    )
    if transpose.ok != factor.ok:
        return Verdict("verify_colimit", subject, False, "route_disagreement", notes)
    if transpose.ok:
        return Verdict("verify_colimit", subject, True, "", notes)
    return Verdict("verify_colimit", subject, False, transpose.witness, notes)


def _transpose_route(c: ColimitCandidate, guard: int, subject: str) -> Verdict:
    value_side = companion(c.value).companion
    diagram_side = companion(c.diagram).companion
    collapsed = vcomp(lambda_cell(c.unit), unitors(diagram_side)[1])
    hom = left_hom(c.weight, diagram_side, guard)
    transposed = flat(collapsed, c.weight, value_side, hom)
    ok, where = transposed.is_component_bijective()
    if ok:
        return passed("colimit_transpose", subject)
    b, m = where
    return failed("colimit_transpose", subject, f"fiber@({b.key},{m.key})")


def _factorization_route(c: ColimitCandidate, guard: int, subject: str) -> Verdict:
    m_cat = c.diagram.target
    m_unit = c.unit.hor_target
    checked = 0
    for e in all_functors(c.weight.right, m_cat):
        pastes = [(nu, postcompose_unit(c, nu)) for nu in all_nats(c.value, e)]
        for phi in enumerate_cells(c.weight, m_unit, c.diagram, e, guard):
            hits = [nu for nu, through in pastes if through == phi]
            if len(hits) != 1:
                tag = ",".join(f"{b.key}>{e.on_ob(b).key}" for b in c.weight.right.objects)
                return failed(
                    "colimit_factorization", subject, f"factor_count={len(hits)}@[{tag}]"
                )
            checked += 1
    return passed("colimit_factorization", subject, f"cells_checked={checked}")


def colim_search(
    weight: Profunctor,
    diagram: FinFunctor,
    budget: int = DEFAULT_SEARCH_BUDGET,
    guard: int = DEFAULT_CELL_GUARD,
) -> ColimitCandidate | None:
    """First verified candidate in enumeration order, or None.

    Value functors are scanned in lexicographic table order and, per value,
    unit cells in component order; the budget caps how many value candidates
    may be considered before giving up with an error.
    """
    if diagram.source != weight.left:
        raise BoundaryMismatch("diagram must start at the weight's source side")
    b_cat, m_cat = weight.right, diagram.target
    grid = len(m_cat.objects) ** len(b_cat.objects)
    if grid > budget:
        raise SearchBudgetExceeded(f"object tables alone exceed the budget of {budget}")
    values = all_functors(b_cat, m_cat)
    if len(values) > budget:
        raise SearchBudgetExceeded(
            f"{len(values)} value candidates exceed the budget of {budget}"
        )
    m_unit = unit_prof(m_cat)
    for value in values:
        for unit in enumerate_cells(weight, m_unit, diagram, value, guard):
            found = ColimitCandidate(weight, diagram, value, unit)
            if verify_colimit(found, guard).ok:
                return found
    return None


@dataclass(frozen=True)
class KanResult:
    """A verified left-extension candidate with its unit transformation.

    `factorization` records the one-dimensional universal property of the
    unit, checked against every competing functor and transformation.
    """

    candidate: ColimitCandidate
    unit: NatTransf
    factorization: Verdict


def kan_extension(
    along: FinFunctor,
    diagram: FinFunctor,
    budget: int = DEFAULT_SEARCH_BUDGET,
    guard: int = DEFAULT_CELL_GUARD,
) -> KanResult | None:
    """Search for the left extension of the diagram along a functor.

    The weight is the companion of `along`; the unit is the transformation
    diagram => along.then(value) read off the candidate's unit cell at
    identities.
    """
    if along.source != diagram.source:
        raise BoundaryMismatch("extension needs a shared source")
    weight = companion(along).companion
    found = colim_search(weight, diagram, budget, guard)
    if found is None:
        return None
    b_cat = along.target
    comps = tuple(
        (a, found.unit.apply(a, along.on_ob(a), b_cat.ident(along.on_ob(a))))
        for a in along.source.objects
    )
    unit = NatTransf(diagram, along.then(found.value), comps)
    return KanResult(found, unit, _kan_factorization(along, diagram, found, unit))


def _kan_factorization(
    along: FinFunctor,
    diagram: FinFunctor,
    found: ColimitCandidate,
    unit: NatTransf,
    subject: str = "kan",
) -> Verdict:
    m_cat = diagram.target
    checked = 0
    for e in all_functors(along.target, m_cat):
        for mu in all_nats(diagram, along.then(e)):
            hits = [
                nu
                for nu in all_nats(found.value, e)
                if all(
                    mu.at(a) == m_cat.compose(nu.at(along.on_ob(a)), unit.at(a))
                    for a in along.source.objects
                )
            ]
            if len(hits) != 1:
                return failed("kan_factorization", subject, f"factor_count={len(hits)}")
            checked += 1
    return passed("kan_factorization", subject, f"competitors_checked={checked}")


# -- comma categories --------------------------------------------------------

@dataclass(frozen=True)
class DoubleComma:
    """The comma category of a weight and a functor into its target side.

    Objects are triples (a, x, c) with x an element of the weight over
    (a, along(c)); morphisms are pairs of arrows making the evident square
    commute. The diagonal cell sends each pair to its square's diagonal.
    """

    weight: Profunctor
    along: FinFunctor
    comma_cat: FinCat
    proj_left: FinFunctor
    proj_right: FinFunctor
    diagonal: ProCell

    def triple(self, ob: Atom) -> tuple[Atom, Atom, Atom]:
        """Decompose a comma object into its (a, x, c) components."""
        a = self.proj_left.on_ob(ob)
        c = self.proj_right.on_ob(ob)
        x = self.diagonal.apply(ob, ob, self.comma_cat.ident(ob))
        return a, x, c


def double_comma(weight: Profunctor, along: FinFunctor) -> DoubleComma:
    """Build the comma category, its two projections, and the diagonal cell."""
    if along.target != weight.right:
        raise BoundaryMismatch("functor must land in the weight's target side")
    a_cat, c_cat = weight.left, along.source
    objects: list[Atom] = []
    parts: dict[Atom, tuple[Atom, Atom, Atom]] = {}
    for a in a_cat.objects:
        for c in c_cat.objects:
            for x in weight.fiber(a, along.on_ob(c)):
                ob = Atom(f"({a.key},{x.key},{c.key})")
                objects.append(ob)
                parts[ob] = (a, x, c)
    homs = []
    mor_parts: dict[Atom, tuple[Atom, Atom, Atom, Atom]] = {}
    for p in objects:
        a1, x1, c1 = parts[p]
        for q in objects:
            a2, x2, c2 = parts[q]
            pairs = []
            for s in a_cat.hom(a1, a2):
                for t in c_cat.hom(c1, c2):
                    left_path = weight.ract(a1, x1, along.on_mor(t))
                    right_path = weight.lact(s, along.on_ob(c2), x2)
                    if left_path != right_path:
                        continue
                    m = Atom(f"({s.key},{t.key}):{p.key}->{q.key}")
                    pairs.append(m)
                    mor_parts[m] = (s, t, p, q)
            if pairs:
                homs.append((p, q, FinSet(tuple(pairs))))
    comps = []
    for m2, (s2, t2, q2, r) in mor_parts.items():
        for m1, (s1, t1, p, q1) in mor_parts.items():
            if q1 != q2:
                continue
            s, t = a_cat.compose(s2, s1), c_cat.compose(t2, t1)
            comps.append((m2, m1, Atom(f"({s.key},{t.key}):{p.key}->{r.key}")))
    idents = []
    for p in objects:
        a, _, c = parts[p]
        glued = f"({a_cat.ident(a).key},{c_cat.ident(c).key}):{p.key}->{p.key}"
        idents.append((p, Atom(glued)))
    comma_cat = FinCat(FinSet(tuple(objects)), tuple(homs), tuple(comps), tuple(idents))
    proj_left = functor(
        comma_cat,
        a_cat,
        {p: parts[p][0] for p in objects},
        {m: mor_parts[m][0] for m in mor_parts},
    )
    proj_right = functor(
        comma_cat,
        c_cat,
        {p: parts[p][2] for p in objects},
        {m: mor_parts[m][1] for m in mor_parts},
    )
    mapping: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for p, q, ms in homs:
        a1, x1, _ = parts[p]
        mapping[(p, q)] = {
            m: weight.ract(a1, x1, along.on_mor(mor_parts[m][1])) for m in ms
        }
    diagonal = procell_from_tables(
        unit_prof(comma_cat), weight, proj_left, proj_right.then(along), mapping
    )
    return DoubleComma(weight, along, comma_cat, proj_left, proj_right, diagonal)


def extended_projection(comma: DoubleComma) -> ProCell:
    """The diagonal in companion form: arrows out of proj_right, into the weight."""
    base = companion(comma.proj_right).companion
    mapping: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for p, c, arrows in base.fibers:
        a, x, _ = comma.triple(p)
        mapping[(p, c)] = {
            s: comma.weight.ract(a, x, comma.along.on_mor(s)) for s in arrows
        }
    return procell_from_tables(base, comma.weight, comma.proj_left, comma.along, mapping)


def restricted_projection(comma: DoubleComma) -> ProCell:
    """The extended projection, factored through the weight's restriction."""
    ext = extended_projection(comma)
    return factor_through_filler(
        ext,
        FinFunctor.identity(comma.weight.left),
        comma.along,
        h=comma.proj_left,
        k=FinFunctor.identity(comma.along.source),
    )


def default_probe_cats() -> list[FinCat]:
    """The stock probe sources; every shape here has at most two objects."""
    return [terminal_cat(), walking_arrow(), discrete_cat(["x", "y"])]


def check_comma_one_dim(
    comma: DoubleComma,
    probe_cats: Sequence[FinCat] | None = None,
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "comma",
) -> Verdict:
    """Every probe cell into the weight factors through exactly one functor."""
    probes = default_probe_cats() if probe_cats is None else list(probe_cats)
    j = comma.weight
    checked = 0
    for x_cat in probes:
        x_unit = unit_prof(x_cat)
        mediators = all_functors(x_cat, comma.comma_cat)
        for to_left in all_functors(x_cat, j.left):
            for to_right in all_functors(x_cat, comma.along.source):
                under = to_right.then(comma.along)
                for phi in enumerate_cells(x_unit, j, to_left, under, guard):
                    hits = [
                        u
                        for u in mediators
                        if u.then(comma.proj_left) == to_left
                        and u.then(comma.proj_right) == to_right
                        and vcomp(functor_unit_cell(u), comma.diagonal) == phi
                    ]
                    if len(hits) != 1:
                        return failed("comma_one_dim", subject, f"factor_count={len(hits)}")
                    checked += 1
    return passed("comma_one_dim", subject, f"cells_checked={checked}", f"probes={len(probes)}")


def _factored_probes(comma: DoubleComma, x_cat: FinCat) -> list[tuple[FinFunctor, ProCell]]:
    # every probe cell that factors, paired with its mediating functor
    out = []
    for u in all_functors(x_cat, comma.comma_cat):
        out.append((u, vcomp(functor_unit_cell(u), comma.diagonal)))
    return out


def check_comma_two_dim(
    comma: DoubleComma,
    probe_profs: Sequence[Profunctor] | None = None,
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "comma",
) -> Verdict:
    """Compatible pairs of probe cells glue through exactly one cell."""
    if probe_profs is None:
        probe_profs = [unit_prof(x) for x in default_probe_cats()]
    j = comma.weight
    left_unit = unit_prof(j.left)
    base_unit = unit_prof(comma.along.source)
    comma_unit = unit_prof(comma.comma_cat)
    onto_left = functor_unit_cell(comma.proj_left)
    onto_right = functor_unit_cell(comma.proj_right)
    under = functor_unit_cell(comma.along)
    lam_j, rho_j = unitors(j)
    checked = 0
    for probe in probe_profs:
        lam_k, rho_k = unitors(probe)
        widen_left, widen_right = invert_procell(lam_k), invert_procell(rho_k)
        for u, phi in _factored_probes(comma, probe.left):
            for v, psi in _factored_probes(comma, probe.right):
                lefts = enumerate_cells(
                    probe, left_unit, u.then(comma.proj_left), v.then(comma.proj_left), guard
                )
                rights = enumerate_cells(
                    probe, base_unit, u.then(comma.proj_right), v.then(comma.proj_right), guard
                )
                for xi_left in lefts:
                    lhs = vcomp(vcomp(widen_right, hcomp_cell(xi_left, psi)), lam_j)
                    for xi_right in rights:
                        rhs = vcomp(
                            vcomp(widen_left, hcomp_cell(phi, vcomp(xi_right, under))), rho_j
                        )
                        if lhs != rhs:
                            continue
                        gluings = [
                            xi
                            for xi in enumerate_cells(probe, comma_unit, u, v, guard)
                            if vcomp(xi, onto_left) == xi_left
                            and vcomp(xi, onto_right) == xi_right
                        ]
                        if len(gluings) != 1:
                            return failed("comma_two_dim", subject, f"glue_count={len(gluings)}")
                        checked += 1
    return passed(
        "comma_two_dim", subject, f"pairs_checked={checked}", f"probes={len(list(probe_profs))}"
    )


def check_comma(
    comma: DoubleComma,
    probe_cats: Sequence[FinCat] | None = None,
    probe_profs: Sequence[Profunctor] | None = None,
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "comma",
) -> Verdict:
    """Both universal properties over the probe corpus, merged into one verdict."""
    parts = [
        check_comma_one_dim(comma, probe_cats, guard, subject),
        check_comma_two_dim(comma, probe_profs, guard, subject),
    ]
    return merge_verdicts("check_comma", subject, parts)


# -- pointwise and strong-comma checks ---------------------------------------

def check_pointwise(
    c: ColimitCandidate,
    probe_fs: Sequence[FinFunctor],
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "pointwise",
) -> Verdict:
    """Restrict the candidate along each probe functor and re-verify.

    The defining quantifier ranges over every functor into the weight's
    target side; this check covers the probes given and reports that the
    quantifier was approximated.
    """
    parts = []
    for i, f in enumerate(probe_fs):
        if f.target != c.weight.right:
            raise BoundaryMismatch("probe functor must land in the weight's target side")
        comma = double_comma(c.weight, f)
        ext = extended_projection(comma)
        restricted = ColimitCandidate(
            ext.hor_source,
            comma.proj_left.then(c.diagram),
            f.then(c.value),
            vcomp(ext, c.unit),
        )
        parts.append(verify_colimit(restricted, guard, f"{subject}#{i}"))
    out = merge_verdicts("check_pointwise", subject, parts)
    coverage = (f"probes={len(parts)}", "quantifier=probe_approximation")
    return Verdict(out.check, out.subject, out.ok, out.witness, out.notes + coverage)


def check_strong_comma(
    weight: Profunctor,
    along: FinFunctor,
    probes: Sequence[tuple[Profunctor, FinFunctor, FinFunctor]],
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "strong_comma",
) -> Verdict:
    """Unique factorization through the restricted projection, per probe.

    Each probe is a triple (extension, left_value, right_value): a horizontal
    arrow out of the comma's base together with the two vertical legs of the
    cells to scan.
    """
    comma = double_comma(weight, along)
    through = restricted_projection(comma)
    probes = list(probes)
    checked = 0
    for extension, left_value, right_value in probes:
        if extension.left != along.source:
            raise BoundaryMismatch("probe arrow must start at the comma's base")
        if left_value.source != weight.left or right_value.source != extension.right:
            raise BoundaryMismatch("probe legs do not match the probe arrow")
        if left_value.target != right_value.target:
            raise BoundaryMismatch("probe legs must share a target")
        m_unit = unit_prof(left_value.target)
        source = hcomp(through.hor_source, extension)
        middle = hcomp(through.hor_target, extension)
        widened = hcomp_cell(through, identity_procell(extension))
        gluings = enumerate_cells(middle, m_unit, left_value, right_value, guard)
        over_left = comma.proj_left.then(left_value)
        for phi in enumerate_cells(source, m_unit, over_left, right_value, guard):
            hits = [g for g in gluings if vcomp(widened, g) == phi]
            if len(hits) != 1:
                return failed("strong_comma", subject, f"factor_count={len(hits)}")
            checked += 1
    return passed("strong_comma", subject, f"cells_checked={checked}", f"probes={len(probes)}")


# -- stability checks ---------------------------------------------------------

def composite_candidate(first: ColimitCandidate, second: ColimitCandidate) -> ColimitCandidate:
    """Paste two stacked candidates into one for the composite weight."""
    if second.weight.left != first.weight.right or second.diagram != first.value:
        raise BoundaryMismatch("candidates do not stack")
    weight = hcomp(first.weight, second.weight)
    collapse, _ = unitors(first.unit.hor_target)
    unit = vcomp(hcomp_cell(first.unit, second.unit), collapse)
    return ColimitCandidate(weight, first.diagram, second.value, unit)


def fubini_check(
    first: ColimitCandidate,
    second: ColimitCandidate,
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "fubini",
) -> Verdict:
    """Two verified stacked candidates must still verify after pasting."""
    both = composite_candidate(first, second)
    v_first = verify_colimit(first, guard, subject)
    v_second = verify_colimit(second, guard, subject)
    v_both = verify_colimit(both, guard, subject)
    notes = (
        f"first={'PASS' if v_first.ok else 'FAIL'}",
        f"second={'PASS' if v_second.ok else 'FAIL'}",
        f"composite={'PASS' if v_both.ok else 'FAIL'}",
    )
    if v_first.ok and v_second.ok and not v_both.ok:
        return Verdict(
            "fubini_check", subject, False, v_both.witness or "composite_failed", notes
        )
    return Verdict("fubini_check", subject, True, "", notes)


def precompose_invariance_check(
    reweight: ProCell,
    c: ColimitCandidate,
    guard: int = DEFAULT_CELL_GUARD,
    subject: str = "reweighting",
) -> Verdict:
    """A right-invertible reweighting must not change the verdict."""
    if reweight.hor_target != c.weight:
        raise BoundaryMismatch("reweighting cell must land in the candidate's weight")
    invertible = is_right_invertible(reweight)
    if not invertible.ok:
        return failed("precompose_invariance", subject, "not_right_invertible", invertible.witness)
    shifted = ColimitCandidate(
        reweight.hor_source,
        reweight.vert_left.then(c.diagram),
        reweight.vert_right.then(c.value),
        vcomp(reweight, c.unit),
    )
    v_base = verify_colimit(c, guard, subject)
    v_shifted = verify_colimit(shifted, guard, subject)
    notes = (
        f"base={'PASS' if v_base.ok else 'FAIL'}",
        f"reweighted={'PASS' if v_shifted.ok else 'FAIL'}",
    )
    if v_base.ok == v_shifted.ok:
        return Verdict("precompose_invariance", subject, True, "", notes)
    return Verdict("precompose_invariance", subject, False, "verdicts_differ", notes)
