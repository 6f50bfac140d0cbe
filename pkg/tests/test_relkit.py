"""Tests for the preorder instance: relational composites, implication homs, suprema."""
from __future__ import annotations

import itertools

import pytest

from finequip.closedhom import left_hom
from finequip.colimits import ColimitCandidate, verify_colimit
from finequip.corpus import seeded
from finequip.equipment import (
    companion,
    hcomp,
    procell_from_tables,
    unit_prof,
    validate_profunctor,
)
from finequip.errors import AxiomFailure, BoundaryMismatch, SupMissing
from finequip.fincat import FinFunctor, validate_cat, validate_functor, walking_arrow
from finequip.relkit import (
    ModRel,
    Preorder,
    as_fincat,
    as_finfunctor,
    as_profunctor,
    chain_preorder,
    companion_rel,
    compose_rel,
    identity_rel,
    left_hom_rel,
    modrel_from_pairs,
    preorder_from_pairs,
    sup_colim,
)
from finequip.setkit import Atom, FinMap, finset

A2 = chain_preorder(["a0", "a1"])
B2 = chain_preorder(["y0", "y1"])
C3 = chain_preorder(["0", "1", "2"])
DISC2 = preorder_from_pairs(["x1", "x2"], [])
DIAMOND = preorder_from_pairs(
    ["bot", "l", "r", "top"], [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")]
)
LATTICE5 = preorder_from_pairs(
    ["bot", "m1", "m2", "m3", "top"],
    [("bot", "m1"), ("bot", "m2"), ("bot", "m3"), ("m1", "top"), ("m2", "top"), ("m3", "top")],
)


def _pairs(*pairs: tuple[str, str]) -> frozenset[tuple[Atom, Atom]]:
    return frozenset((Atom(x), Atom(y)) for x, y in pairs)


def _random_preorder(r, tag: str, max_n: int = 3) -> Preorder:
    n = r.randint(1, max_n)
    keys = [f"{tag}{i}" for i in range(n)]
    pairs = [(a, b) for a in keys for b in keys if a != b and r.random() < 0.4]
    return preorder_from_pairs(keys, pairs)


def _random_modrel(r, left: Preorder, right: Preorder) -> ModRel:
    pairs = [(x.key, y.key) for x in left.carrier for y in right.carrier if r.random() < 0.35]
    return modrel_from_pairs(left, right, pairs)


def _all_modrels(left: Preorder, right: Preorder) -> list[ModRel]:
    pairs = [(x, y) for x in left.carrier for y in right.carrier]
    out = []
    for bits in itertools.product([False, True], repeat=len(pairs)):
        chosen = frozenset(p for p, b in zip(pairs, bits) if b)
        try:
            out.append(ModRel(left, right, chosen))
        except AxiomFailure:
            continue
    return out


def _monotone_maps(source: Preorder, target: Preorder) -> list[FinMap]:
    elems = list(source.carrier)
    maps = []
    for image in itertools.product(list(target.carrier), repeat=len(elems)):
        table = dict(zip(elems, image))
        if all(target.le(table[x], table[y]) for x, y in source.leq):
            maps.append(FinMap(source.carrier, target.carrier, tuple(table.items())))
    return maps


def _exhibits_sup(weight: ModRel, diagram: FinMap, target: Preorder, value: FinMap) -> bool:
    """The relational universal property, scanned over every monotone competitor."""
    for e in _monotone_maps(weight.right, target):
        below = all(target.le(value(y), e(y)) for y in weight.right.carrier)
        cone = all(target.le(diagram(x), e(y)) for x, y in weight.rel)
        if below != cone:
            return False
    return True


def test_preorder_from_pairs_closes():
    p = preorder_from_pairs(["0", "1", "2"], [("0", "1"), ("1", "2")])
    assert p.le(Atom("0"), Atom("2"))
    assert len(p.leq) == 6


def test_preorder_validation_rejects_broken_orderings():
    with pytest.raises(AxiomFailure):
        Preorder(finset("0", "1"), _pairs(("0", "0")))
    with pytest.raises(AxiomFailure):
        Preorder(finset("0", "1", "2"), _pairs(("0", "0"), ("1", "1"), ("2", "2"), ("0", "1"), ("1", "2")))
    with pytest.raises(AxiomFailure):
        Preorder(finset("0"), _pairs(("0", "0"), ("0", "zz")))


def test_chain_preorder_is_a_total_order():
    p = chain_preorder(["a", "b", "c"])
    assert p.le(Atom("a"), Atom("c"))
    assert not p.le(Atom("c"), Atom("a"))
    assert len(p.leq) == 6


def test_modrel_from_pairs_closes_down_and_up():
    m = modrel_from_pairs(A2, B2, [("a0", "y0")])
    assert m.rel == _pairs(("a0", "y0"), ("a0", "y1"))
    total = modrel_from_pairs(A2, B2, [("a1", "y0")])
    assert len(total.rel) == 4


def test_modrel_validation_rejects_non_modular_relations():
    with pytest.raises(AxiomFailure):
        ModRel(A2, B2, _pairs(("a1", "y0")))


def test_identity_rel_is_the_ordering():
    assert identity_rel(C3).rel == C3.leq


def test_compose_with_identity_leaves_relation_unchanged():
    h = modrel_from_pairs(C3, B2, [("0", "y0")])
    assert h.rel == _pairs(("0", "y0"), ("0", "y1"))
    assert compose_rel(identity_rel(C3), h) == h
    assert compose_rel(h, identity_rel(B2)) == h


def test_compose_with_empty_relation_is_empty():
    e = modrel_from_pairs(C3, B2, [])
    assert compose_rel(identity_rel(C3), e).rel == frozenset()
    assert compose_rel(e, identity_rel(B2)).rel == frozenset()


def test_compose_strict_chain_squares_to_the_single_long_jump():
    strict = modrel_from_pairs(C3, C3, [("0", "1"), ("1", "2")])
    assert strict.rel == _pairs(("0", "1"), ("0", "2"), ("1", "2"))
    assert compose_rel(strict, strict).rel == _pairs(("0", "2"))
    assert compose_rel(identity_rel(C3), strict) == strict


def test_compose_boundary_mismatch():
    j = modrel_from_pairs(A2, B2, [])
    h = modrel_from_pairs(C3, C3, [])
    with pytest.raises(BoundaryMismatch):
        compose_rel(j, h)


def test_compose_is_associative_on_seeded_instances():
    r = seeded(7)
    for _ in range(12):
        pa, pb = _random_preorder(r, "a"), _random_preorder(r, "b")
        pc, pd = _random_preorder(r, "c"), _random_preorder(r, "d")
        j, h, l = _random_modrel(r, pa, pb), _random_modrel(r, pb, pc), _random_modrel(r, pc, pd)
        assert compose_rel(compose_rel(j, h), l) == compose_rel(j, compose_rel(h, l))


def test_left_hom_of_empty_weight_is_total():
    j = modrel_from_pairs(A2, B2, [])
    k = modrel_from_pairs(A2, C3, [])
    assert len(left_hom_rel(j, k).rel) == len(B2.carrier) * len(C3.carrier)


def test_left_hom_of_total_weight_into_empty_body_is_empty():
    j = modrel_from_pairs(A2, B2, [("a1", "y0")])
    assert len(j.rel) == 4
    k = modrel_from_pairs(A2, C3, [])
    assert left_hom_rel(j, k).rel == frozenset()


def test_left_hom_boundary_mismatch():
    j = modrel_from_pairs(A2, B2, [])
    k = modrel_from_pairs(C3, C3, [])
    with pytest.raises(BoundaryMismatch):
        left_hom_rel(j, k)


def test_left_hom_satisfies_the_galois_adjunction_exhaustively():
    b = chain_preorder(["b0", "b1"])
    c = preorder_from_pairs(["c0", "c1"], [])
    j = modrel_from_pairs(DIAMOND, b, [("l", "b0")])
    assert j.rel == _pairs(("bot", "b0"), ("l", "b0"), ("bot", "b1"), ("l", "b1"))
    hs, ks = _all_modrels(b, c), _all_modrels(DIAMOND, c)
    assert len(hs) == 9 and len(ks) == 36
    for h in hs:
        for k in ks:
            assert (compose_rel(j, h).rel <= k.rel) == (h.rel <= left_hom_rel(j, k).rel)


def test_sup_colim_of_companion_weight_matches_the_kan_formula():
    jm = FinMap(A2.carrier, C3.carrier, ((Atom("a0"), Atom("0")), (Atom("a1"), Atom("2"))))
    m = chain_preorder(["p", "q", "r"])
    d = FinMap(A2.carrier, m.carrier, ((Atom("a0"), Atom("p")), (Atom("a1"), Atom("r"))))
    j = companion_rel(jm, A2, C3)
    assert j.rel == _pairs(("a0", "0"), ("a0", "1"), ("a0", "2"), ("a1", "2"))
    l = sup_colim(j, d, m)
    assert l(Atom("0")) == Atom("p")
    assert l(Atom("1")) == Atom("p")
    assert l(Atom("2")) == Atom("r")


def test_sup_colim_over_empty_fibers_needs_a_bottom():
    empty = preorder_from_pairs([], [])
    b1 = chain_preorder(["y"])
    w = ModRel(empty, b1, frozenset())
    m = chain_preorder(["p", "q"])
    l = sup_colim(w, FinMap(empty.carrier, m.carrier, ()), m)
    assert l(Atom("y")) == Atom("p")
    disc = preorder_from_pairs(["p", "q"], [])
    with pytest.raises(SupMissing):
        sup_colim(w, FinMap(empty.carrier, disc.carrier, ()), disc)


def test_sup_colim_reports_ambiguous_suprema():
    m = preorder_from_pairs(
        ["a", "t1", "t2"], [("a", "t1"), ("a", "t2"), ("t1", "t2"), ("t2", "t1")]
    )
    b1 = chain_preorder(["y"])
    w = modrel_from_pairs(DISC2, b1, [("x1", "y"), ("x2", "y")])
    d = FinMap(DISC2.carrier, m.carrier, ((Atom("x1"), Atom("t1")), (Atom("x2"), Atom("t2"))))
    with pytest.raises(SupMissing):
        sup_colim(w, d, m)


def test_sup_colim_on_the_five_element_lattice_has_the_universal_property():
    j = modrel_from_pairs(DISC2, B2, [("x1", "y0"), ("x2", "y1")])
    assert j.rel == _pairs(("x1", "y0"), ("x1", "y1"), ("x2", "y1"))
    d = FinMap(DISC2.carrier, LATTICE5.carrier, ((Atom("x1"), Atom("m1")), (Atom("x2"), Atom("m2"))))
    l = sup_colim(j, d, LATTICE5)
    assert l(Atom("y0")) == Atom("m1")
    assert l(Atom("y1")) == Atom("top")
    assert len(_monotone_maps(B2, LATTICE5)) == 12
    assert _exhibits_sup(j, d, LATTICE5, l)


def test_sup_colim_is_monotone_and_universal_on_seeded_instances():
    r = seeded(11)
    for _ in range(10):
        pa, pb = _random_preorder(r, "a"), _random_preorder(r, "b")
        j = _random_modrel(r, pa, pb)
        d = r.choice(_monotone_maps(pa, LATTICE5))
        l = sup_colim(j, d, LATTICE5)
        assert all(LATTICE5.le(l(y1), l(y2)) for y1, y2 in pb.leq)
        assert _exhibits_sup(j, d, LATTICE5, l)


def test_sup_colim_rejects_non_monotone_diagrams():
    disc = preorder_from_pairs(["p", "q"], [])
    d = FinMap(A2.carrier, disc.carrier, ((Atom("a0"), Atom("p")), (Atom("a1"), Atom("q"))))
    w = modrel_from_pairs(A2, B2, [])
    with pytest.raises(AxiomFailure):
        sup_colim(w, d, disc)


def test_sup_colim_boundary_mismatch():
    w = modrel_from_pairs(A2, B2, [])
    d = FinMap(B2.carrier, C3.carrier, ((Atom("y0"), Atom("0")), (Atom("y1"), Atom("0"))))
    with pytest.raises(BoundaryMismatch):
        sup_colim(w, d, C3)


def test_as_fincat_on_the_two_chain_is_the_walking_arrow():
    cat = as_fincat(chain_preorder(["0", "1"]))
    assert cat == walking_arrow()
    assert validate_cat(cat).ok


def test_as_fincat_on_the_diamond_is_lawful():
    cat = as_fincat(DIAMOND)
    assert validate_cat(cat).ok
    assert len(cat.mors()) == 9
    assert cat.compose(Atom("u:l->top"), Atom("u:bot->l")) == Atom("u:bot->top")


def test_as_finfunctor_embeds_monotone_maps_functorially():
    f = FinMap(A2.carrier, DIAMOND.carrier, ((Atom("a0"), Atom("bot")), (Atom("a1"), Atom("l"))))
    ff = as_finfunctor(f, A2, DIAMOND)
    assert validate_functor(ff).ok
    ident = as_finfunctor(FinMap.identity(A2.carrier), A2, A2)
    assert ident == FinFunctor.identity(as_fincat(A2))
    two = chain_preorder(["0", "1"])
    g = FinMap(
        DIAMOND.carrier,
        two.carrier,
        ((Atom("bot"), Atom("0")), (Atom("l"), Atom("0")), (Atom("r"), Atom("1")), (Atom("top"), Atom("1"))),
    )
    gf = as_finfunctor(g, DIAMOND, two)
    assert as_finfunctor(f.then(g), A2, two) == ff.then(gf)


def test_as_profunctor_has_singleton_fibers_and_is_lawful():
    b = chain_preorder(["b0", "b1"])
    j = modrel_from_pairs(DIAMOND, b, [("l", "b0")])
    p = as_profunctor(j)
    assert validate_profunctor(p).ok
    for x in DIAMOND.carrier:
        for y in b.carrier:
            assert len(p.fiber(x, y)) == (1 if j.holds(x, y) else 0)


def test_embedded_composite_matches_the_relational_composite():
    strict = modrel_from_pairs(C3, C3, [("0", "1"), ("1", "2")])
    q = hcomp(as_profunctor(strict), as_profunctor(strict))
    comp = compose_rel(strict, strict)
    for x in C3.carrier:
        for z in C3.carrier:
            assert (len(q.fiber(x, z)) > 0) == comp.holds(x, z)
    r = seeded(23)
    for _ in range(6):
        pa, pb, pc = _random_preorder(r, "a"), _random_preorder(r, "b"), _random_preorder(r, "c")
        j, h = _random_modrel(r, pa, pb), _random_modrel(r, pb, pc)
        q = hcomp(as_profunctor(j), as_profunctor(h))
        comp = compose_rel(j, h)
        for x in pa.carrier:
            for z in pc.carrier:
                assert (len(q.fiber(x, z)) > 0) == comp.holds(x, z)


def test_embedded_hom_matches_the_implication_hom():
    j = modrel_from_pairs(A2, B2, [("a0", "y0")])
    k = modrel_from_pairs(A2, C3, [("a1", "1")])
    hr = left_hom_rel(j, k)
    assert hr.rel == _pairs(("y0", "1"), ("y0", "2"), ("y1", "1"), ("y1", "2"))
    hp = left_hom(as_profunctor(j), as_profunctor(k))
    for y in B2.carrier:
        for z in C3.carrier:
            assert len(hp.prof.fiber(y, z)) == (1 if hr.holds(y, z) else 0)
    r = seeded(31)
    for _ in range(6):
        pa, pb, pc = _random_preorder(r, "a"), _random_preorder(r, "b"), _random_preorder(r, "c")
        j, k = _random_modrel(r, pa, pb), _random_modrel(r, pa, pc)
        hr = left_hom_rel(j, k)
        hp = left_hom(as_profunctor(j), as_profunctor(k))
        for y in pb.carrier:
            for z in pc.carrier:
                assert len(hp.prof.fiber(y, z)) == (1 if hr.holds(y, z) else 0)


def test_companion_rel_matches_the_embedded_companion():
    jm = FinMap(A2.carrier, C3.carrier, ((Atom("a0"), Atom("0")), (Atom("a1"), Atom("2"))))
    cr = companion_rel(jm, A2, C3)
    pair = companion(as_finfunctor(jm, A2, C3))
    for x in A2.carrier:
        for z in C3.carrier:
            assert len(pair.companion.fiber(x, z)) == (1 if cr.holds(x, z) else 0)


def _embedded_candidate(j: ModRel, d: FinMap, m: Preorder, value: FinMap) -> ColimitCandidate:
    cat_m = as_fincat(m)
    jp = as_profunctor(j)
    df = as_finfunctor(d, j.left, m)
    vf = as_finfunctor(value, j.right, m)
    mapping: dict[tuple[str, str], dict[str, str]] = {}
    for x, y in sorted(j.rel):
        elem = next(iter(jp.fiber(x, y)))
        mor = next(iter(cat_m.hom(df.on_ob(x), vf.on_ob(y))))
        mapping[(x.key, y.key)] = {elem.key: mor.key}
    unit = procell_from_tables(jp, unit_prof(cat_m), df, vf, mapping)
    return ColimitCandidate(jp, df, vf, unit)


def test_sup_colim_output_embeds_to_a_verified_colimit():
    j = modrel_from_pairs(A2, B2, [("a0", "y0"), ("a1", "y1")])
    assert j.rel == _pairs(("a0", "y0"), ("a0", "y1"), ("a1", "y1"))
    d = FinMap(A2.carrier, DIAMOND.carrier, ((Atom("a0"), Atom("l")), (Atom("a1"), Atom("top"))))
    l = sup_colim(j, d, DIAMOND)
    assert l(Atom("y0")) == Atom("l")
    assert l(Atom("y1")) == Atom("top")
    v = verify_colimit(_embedded_candidate(j, d, DIAMOND, l))
    assert v.ok
    assert "transpose_route=PASS" in v.notes
    assert "factorization_route=PASS" in v.notes


def test_embedded_non_colimit_value_fails_verification():
    j = modrel_from_pairs(A2, B2, [("a0", "y0"), ("a1", "y1")])
    d = FinMap(A2.carrier, DIAMOND.carrier, ((Atom("a0"), Atom("l")), (Atom("a1"), Atom("top"))))
    bad = FinMap(B2.carrier, DIAMOND.carrier, ((Atom("y0"), Atom("top")), (Atom("y1"), Atom("top"))))
    v = verify_colimit(_embedded_candidate(j, d, DIAMOND, bad))
    assert not v.ok
