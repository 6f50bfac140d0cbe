"""Tests for set matrices, matrix monoids and bimodules, and internal categories."""
from __future__ import annotations

import pytest

from finequip.colimits import check_comma, check_strong_comma, double_comma
from finequip.corpus import (
    random_cat,
    random_composable_profs,
    random_functor,
    random_prof,
    seeded,
)
from finequip.equipment import (
    companion,
    composite_rep,
    hcomp,
    procell_from_tables,
    prof_from_tables,
    restrict,
    unit_prof,
    validate_procell,
    validate_profunctor,
    vcomp,
)
from finequip.errors import (
    AxiomFailure,
    BoundaryMismatch,
    IndexMismatch,
    NaturalityFailure,
)
from finequip.fincat import (
    FinFunctor,
    all_nats,
    cat_from_tables,
    constant_functor,
    terminal_cat,
    validate_cat,
    validate_functor,
    walking_arrow,
)
from finequip.matspan import (
    InternalCat,
    InternalFunctor,
    InternalProf,
    MatBimoduleCell,
    MatCell,
    MatMonoid,
    MatMonoidMap,
    bimodule_to_profunctor,
    fincat_to_internal,
    fincat_to_monoid,
    finfunctor_to_internal,
    finfunctor_to_monoid_map,
    internal_comma,
    internal_element,
    internal_functor_to_finfunctor,
    internal_prof_to_profunctor,
    internal_to_fincat,
    internal_transformation,
    mat_associator,
    mat_hcomp,
    mat_hcomp_cell,
    mat_identity_cell,
    mat_left_unitor,
    mat_pair,
    mat_right_invertible,
    mat_right_unitor,
    mat_vcomp,
    matcell_from_tables,
    matrix_from_tables,
    mod_composite_rep,
    mod_hcomp,
    monoid_as_bimodule,
    monoid_map_to_finfunctor,
    monoid_to_fincat,
    procell_to_transformation,
    profunctor_to_bimodule,
    profunctor_to_internal,
    rho_bimodule_check,
    translate_internal_comma,
    unit_entry,
    unit_matrix,
)
from finequip.setkit import Atom, FinMap, FinSet, pair_atom


def _a(key: str) -> Atom:
    return Atom(key)


def _j2():
    return matrix_from_tables(
        ["a1", "a2"], ["b1", "b2"], {("a1", "b1"): ["x1", "x2"], ("a2", "b2"): ["x3"]}
    )


def _h2():
    return matrix_from_tables(
        ["b1", "b2"], ["c1"], {("b1", "c1"): ["y1"], ("b2", "c1"): ["y2", "y3"]}
    )


def _pair_weight():
    t = terminal_cat()
    return prof_from_tables(t, t, {("*", "*"): ["j1", "j2"]}, {}, {})


def _z2_cat():
    return cat_from_tables(
        ["o"],
        {("o", "o"): ["i:o->o", "n:o->o"]},
        {
            ("i:o->o", "i:o->o"): "i:o->o",
            ("i:o->o", "n:o->o"): "n:o->o",
            ("n:o->o", "i:o->o"): "n:o->o",
            ("n:o->o", "n:o->o"): "i:o->o",
        },
        {"o": "i:o->o"},
    )


def _untag(x: Atom) -> Atom:
    return Atom(x.key[: x.key.rindex("@(")])


def _comma_matches_direct(ic, dc) -> bool:
    """Exhibit an isomorphism from the internal comma onto the direct one."""
    cn = internal_to_fincat(ic.comma)
    by_triple = {dc.triple(ob): ob for ob in dc.comma_cat.objects}
    if len(by_triple) != len(cn.objects):
        return False
    ob_graph = []
    for ob in cn.objects:
        left, mid, right = ic.triple(ob)
        key = (left, _untag(mid), right)
        if key not in by_triple:
            return False
        ob_graph.append((ob, by_triple[key]))
    ob_map = FinMap(cn.objects, dc.comma_cat.objects, tuple(ob_graph))
    if not ob_map.is_bijective():
        return False
    by_frame = {}
    for m in dc.comma_cat.mors():
        frame = (
            dc.proj_left.on_mor(m),
            dc.proj_right.on_mor(m),
            dc.comma_cat.src(m),
            dc.comma_cat.tgt(m),
        )
        if frame in by_frame:
            return False
        by_frame[frame] = m
    mor_graph = []
    for m in cn.mors():
        frame = (
            internal_functor_to_finfunctor(ic.proj_left).on_mor(m),
            internal_functor_to_finfunctor(ic.proj_right).on_mor(m),
            ob_map(cn.src(m)),
            ob_map(cn.tgt(m)),
        )
        if frame not in by_frame:
            return False
        mor_graph.append((m, by_frame[frame]))
    mor_map = FinMap(cn.mors(), dc.comma_cat.mors(), tuple(mor_graph))
    if not mor_map.is_bijective():
        return False
    fun = FinFunctor(cn, dc.comma_cat, ob_map, mor_map)
    return validate_functor(fun).ok


# -- set matrices --------------------------------------------------------------

def test_matrix_product_counts_match_hand_tally():
    jh = mat_hcomp(_j2(), _h2())
    sizes = {(r.key, c.key): len(e) for r, c, e in jh.entries}
    assert sizes == {("a1", "c1"): 2, ("a2", "c1"): 2}
    assert jh.entry(_a("a1"), _a("c1")) == FinSet(
        (mat_pair(_a("b1"), _a("x1"), _a("y1")), mat_pair(_a("b1"), _a("x2"), _a("y1")))
    )
    assert jh.entry(_a("a2"), _a("c1")) == FinSet(
        (mat_pair(_a("b2"), _a("x3"), _a("y2")), mat_pair(_a("b2"), _a("x3"), _a("y3")))
    )
    # one-witness-per-middle-index tally on a 0/1 pair of matrices
    left = matrix_from_tables(["a1"], ["b1", "b2"], {("a1", "b1"): ["s"], ("a1", "b2"): ["t"]})
    right = matrix_from_tables(["b1", "b2"], ["c1"], {("b1", "c1"): ["u"], ("b2", "c1"): ["v"]})
    assert len(mat_hcomp(left, right).entry(_a("a1"), _a("c1"))) == 2


def test_matrix_product_requires_matching_middle_index():
    with pytest.raises(IndexMismatch):
        mat_hcomp(_h2(), _j2())


def test_matrix_product_with_empty_row_stays_empty():
    j = matrix_from_tables(["a1", "a2"], ["b1"], {("a1", "b1"): ["x"]})
    h = matrix_from_tables(["b1"], ["c1"], {("b1", "c1"): ["y"]})
    jh = mat_hcomp(j, h)
    assert len(jh.entry(_a("a2"), _a("c1"))) == 0
    assert jh.total_size() == 1
    blank = matrix_from_tables(["a1", "a2"], ["b1"], {})
    assert mat_hcomp(blank, h).total_size() == 0


def test_unit_matrix_is_neutral():
    j = _j2()
    lu = mat_left_unitor(j)
    ru = mat_right_unitor(j)
    assert lu.source == mat_hcomp(unit_matrix(j.rows), j) and lu.target == j
    assert ru.source == mat_hcomp(j, unit_matrix(j.cols)) and ru.target == j
    assert lu.is_entrywise_bijective()[0] and ru.is_entrywise_bijective()[0]
    assert lu.apply(_a("a1"), _a("b1"), mat_pair(_a("a1"), unit_entry(_a("a1")), _a("x1"))) == _a("x1")
    assert ru.apply(_a("a1"), _a("b1"), mat_pair(_a("b1"), _a("x1"), unit_entry(_a("b1")))) == _a("x1")
    inv = MatCell(
        j,
        lu.source,
        FinMap.identity(j.rows),
        FinMap.identity(j.cols),
        tuple((r, c, lu.component(r, c).inverse()) for r, c, _ in lu.source.entries),
    )
    assert mat_vcomp(lu, inv) == mat_identity_cell(lu.source)
    assert mat_vcomp(inv, lu) == mat_identity_cell(j)


def test_associator_retags_triples():
    j, h = _j2(), _h2()
    k = matrix_from_tables(["c1"], ["d1"], {("c1", "d1"): ["z1", "z2"]})
    al = mat_associator(j, h, k)
    assert al.source == mat_hcomp(mat_hcomp(j, h), k)
    assert al.target == mat_hcomp(j, mat_hcomp(h, k))
    assert al.is_entrywise_bijective()[0]
    nested = mat_pair(_a("c1"), mat_pair(_a("b1"), _a("x1"), _a("y1")), _a("z1"))
    expected = mat_pair(_a("b1"), _a("x1"), mat_pair(_a("c1"), _a("y1"), _a("z1")))
    assert al.apply(_a("a1"), _a("d1"), nested) == expected


def test_cell_product_acts_componentwise():
    j, h = _j2(), _h2()
    jp = matrix_from_tables(
        ["a1", "a2"], ["b1", "b2"], {("a1", "b1"): ["p1", "p2"], ("a2", "b2"): ["p3"]}
    )
    hp = matrix_from_tables(
        ["b1", "b2"], ["c1"], {("b1", "c1"): ["q1"], ("b2", "c1"): ["q2", "q3"]}
    )
    rename_j = matcell_from_tables(
        j, jp, FinMap.identity(j.rows), FinMap.identity(j.cols),
        {(_a("a1"), _a("b1")): {_a("x1"): _a("p1"), _a("x2"): _a("p2")},
         (_a("a2"), _a("b2")): {_a("x3"): _a("p3")}},
    )
    rename_h = matcell_from_tables(
        h, hp, FinMap.identity(h.rows), FinMap.identity(h.cols),
        {(_a("b1"), _a("c1")): {_a("y1"): _a("q1")},
         (_a("b2"), _a("c1")): {_a("y2"): _a("q2"), _a("y3"): _a("q3")}},
    )
    prod = mat_hcomp_cell(rename_j, rename_h)
    got = prod.apply(_a("a1"), _a("c1"), mat_pair(_a("b1"), _a("x1"), _a("y1")))
    assert got == mat_pair(_a("b1"), _a("p1"), _a("q1"))
    assert mat_hcomp_cell(mat_identity_cell(j), mat_identity_cell(h)) == mat_identity_cell(mat_hcomp(j, h))


def test_right_invertibility_pools_source_rows():
    m = matrix_from_tables(["a1", "a2"], ["b"], {("a1", "b"): ["m1"], ("a2", "b"): ["m2"]})
    n = matrix_from_tables(["c"], ["b"], {("c", "b"): ["n1", "n2"]})
    rmap = FinMap(m.rows, n.rows, ((_a("a1"), _a("c")), (_a("a2"), _a("c"))))
    cmap = FinMap.identity(m.cols)
    good = matcell_from_tables(
        m, n, rmap, cmap,
        {(_a("a1"), _a("b")): {_a("m1"): _a("n1")}, (_a("a2"), _a("b")): {_a("m2"): _a("n2")}},
    )
    assert mat_right_invertible(good).ok
    bad = matcell_from_tables(
        m, n, rmap, cmap,
        {(_a("a1"), _a("b")): {_a("m1"): _a("n1")}, (_a("a2"), _a("b")): {_a("m2"): _a("n1")}},
    )
    verdict = mat_right_invertible(bad)
    assert not verdict.ok
    assert verdict.witness == "pooled_row@(c,b)"


# -- matrix monoids ------------------------------------------------------------

def test_one_index_unit_monoid_is_the_terminal_shape():
    idx = FinSet((_a("*"),))
    base = unit_matrix(idx)
    one = unit_entry(_a("*"))
    mult = matcell_from_tables(
        mat_hcomp(base, base), base, FinMap.identity(idx), FinMap.identity(idx),
        {(_a("*"), _a("*")): {mat_pair(_a("*"), one, one): one}},
    )
    m = MatMonoid(base, mult, mat_identity_cell(base))
    c = monoid_to_fincat(m)
    assert c.objects == idx
    assert c.mors() == FinSet((one,))
    assert c.ident(_a("*")) == one
    assert validate_cat(c).ok


def test_walking_arrow_monoid_round_trips():
    w = walking_arrow()
    m = fincat_to_monoid(w)
    assert m.base.entry(_a("0"), _a("1")) == FinSet((_a("u:0->1"),))
    assert m.base.entry(_a("1"), _a("0")) == FinSet(())
    assert m.mul(_a("0"), _a("0"), _a("1"), _a("id:0->0"), _a("u:0->1")) == _a("u:0->1")
    assert m.mul(_a("0"), _a("1"), _a("1"), _a("u:0->1"), _a("id:1->1")) == _a("u:0->1")
    assert m.ident_elem(_a("0")) == _a("id:0->0")
    assert monoid_to_fincat(m) == w
    assert fincat_to_monoid(monoid_to_fincat(m)) == m


def test_corpus_categories_round_trip_through_monoids():
    r = seeded(11)
    for bound in (2, 2, 3, 3):
        c = random_cat(r, max_objects=bound)
        assert monoid_to_fincat(fincat_to_monoid(c)) == c


def test_monoid_laws_are_checked():
    base = matrix_from_tables(["*"], ["*"], {("*", "*"): ["e", "x", "y"]})
    star = _a("*")
    prods = {
        ("e", "e"): "e", ("e", "x"): "x", ("e", "y"): "y",
        ("x", "e"): "x", ("y", "e"): "y",
        ("x", "x"): "y", ("x", "y"): "e", ("y", "x"): "x", ("y", "y"): "y",
    }
    mult = matcell_from_tables(
        mat_hcomp(base, base), base, FinMap.identity(base.rows), FinMap.identity(base.rows),
        {(star, star): {mat_pair(star, _a(p), _a(q)): _a(z) for (p, q), z in prods.items()}},
    )
    unit = matcell_from_tables(
        unit_matrix(base.rows), base, FinMap.identity(base.rows), FinMap.identity(base.rows),
        {(star, star): {unit_entry(star): _a("e")}},
    )
    with pytest.raises(AxiomFailure, match="associativity fails at"):
        MatMonoid(base, mult, unit)
    flip = matrix_from_tables(["*"], ["*"], {("*", "*"): ["e", "x"]})
    flip_prods = {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x", ("x", "x"): "e"}
    flip_mult = matcell_from_tables(
        mat_hcomp(flip, flip), flip, FinMap.identity(flip.rows), FinMap.identity(flip.rows),
        {(star, star): {mat_pair(star, _a(p), _a(q)): _a(z) for (p, q), z in flip_prods.items()}},
    )
    bad_unit = matcell_from_tables(
        unit_matrix(flip.rows), flip, FinMap.identity(flip.rows), FinMap.identity(flip.rows),
        {(star, star): {unit_entry(star): _a("x")}},
    )
    with pytest.raises(AxiomFailure, match="unit law"):
        MatMonoid(flip, flip_mult, bad_unit)


def test_functors_become_monoid_maps():
    w = walking_arrow()
    z2 = _z2_cat()
    collapse = constant_functor(w, terminal_cat(), _a("*"))
    f = finfunctor_to_monoid_map(collapse)
    assert f.on_index(_a("0")) == _a("*")
    assert f.apply(_a("0"), _a("1"), _a("u:0->1")) == _a("id:*->*")
    assert monoid_map_to_finfunctor(f) == collapse
    ident = MatMonoidMap.identity(fincat_to_monoid(w))
    assert monoid_map_to_finfunctor(ident) == FinFunctor.identity(w)
    assert finfunctor_to_monoid_map(FinFunctor.identity(w)).then(f) == f
    # sending the top identity to the flip is not multiplicative
    mw, mz = fincat_to_monoid(w), fincat_to_monoid(z2)
    rmap = FinMap(mw.index, mz.index, ((_a("0"), _a("o")), (_a("1"), _a("o"))))
    send = {"id:0->0": "i:o->o", "id:1->1": "n:o->o", "u:0->1": "n:o->o"}
    cell = matcell_from_tables(
        mw.base, mz.base, rmap, rmap,
        {(r, c): {x: _a(send[x.key]) for x in e} for r, c, e in mw.base.entries},
    )
    with pytest.raises(AxiomFailure, match="multiplication not preserved"):
        MatMonoidMap(mw, mz, cell)


def test_monoid_to_category_needs_disjoint_entries():
    base = matrix_from_tables(["a", "b"], ["a", "b"], {("a", "a"): ["z"], ("b", "b"): ["z"]})
    mapping = {
        (_a("a"), _a("a")): {mat_pair(_a("a"), _a("z"), _a("z")): _a("z")},
        (_a("b"), _a("b")): {mat_pair(_a("b"), _a("z"), _a("z")): _a("z")},
    }
    mult = matcell_from_tables(
        mat_hcomp(base, base), base, FinMap.identity(base.rows), FinMap.identity(base.rows), mapping
    )
    unit = matcell_from_tables(
        unit_matrix(base.rows), base, FinMap.identity(base.rows), FinMap.identity(base.rows),
        {(_a("a"), _a("a")): {unit_entry(_a("a")): _a("z")},
         (_a("b"), _a("b")): {unit_entry(_a("b")): _a("z")}},
    )
    m = MatMonoid(base, mult, unit)
    with pytest.raises(AxiomFailure, match="appears in entries"):
        monoid_to_fincat(m)


# -- bimodules and their tensor -------------------------------------------------

def test_profunctor_bimodule_translation_round_trips():
    p = _pair_weight()
    b = profunctor_to_bimodule(p)
    assert bimodule_to_profunctor(b) == p
    assert profunctor_to_bimodule(bimodule_to_profunctor(b)) == b
    r = seeded(7)
    for _ in range(4):
        left = random_cat(r)
        right = random_cat(r)
        q = random_prof(r, left, right)
        back = bimodule_to_profunctor(profunctor_to_bimodule(q))
        assert back == q
        assert validate_profunctor(back).ok


def test_monoid_is_a_bimodule_over_itself():
    w = walking_arrow()
    bm = monoid_as_bimodule(fincat_to_monoid(w))
    assert bm.lmul(_a("0"), _a("0"), _a("1"), _a("id:0->0"), _a("u:0->1")) == _a("u:0->1")
    assert bm.rmul(_a("0"), _a("1"), _a("1"), _a("u:0->1"), _a("id:1->1")) == _a("u:0->1")


def test_tensor_with_the_base_monoid_is_trivial():
    w = walking_arrow()
    base = fincat_to_monoid(w)
    jb = profunctor_to_bimodule(unit_prof(w))
    t = mod_hcomp(jb, monoid_as_bimodule(base))
    for row in t.mat.rows:
        for col in t.mat.cols:
            classes = {}
            for mid in base.index:
                for x in jb.mat.entry(row, mid):
                    for v in base.base.entry(mid, col):
                        rep = mod_composite_rep(t, row, mid, col, x, v)
                        value = jb.rmul(row, mid, col, x, v)
                        assert classes.setdefault(rep, value) == value
            entry = t.mat.entry(row, col)
            assert len(classes) == len(entry) and set(classes) == set(entry)
            values = set(classes.values())
            assert len(values) == len(classes)
            assert values == set(jb.mat.entry(row, col))


def test_tensor_agrees_with_profunctor_composition():
    r = seeded(5)
    for _ in range(6):
        p, q = random_composable_profs(r, 2)
        direct = hcomp(p, q)
        t = mod_hcomp(profunctor_to_bimodule(p), profunctor_to_bimodule(q))
        for a in p.left.objects:
            for c in q.right.objects:
                forward: dict[Atom, Atom] = {}
                backward: dict[Atom, Atom] = {}
                for b in p.right.objects:
                    for x in p.fiber(a, b):
                        for y in q.fiber(b, c):
                            lhs = composite_rep(direct, a, b, c, x, y)
                            rhs = mod_composite_rep(t, a, b, c, x, y)
                            assert forward.setdefault(lhs, rhs) == rhs
                            assert backward.setdefault(rhs, lhs) == lhs
                assert len(forward) == len(direct.fiber(a, c))
                assert len(backward) == len(t.mat.entry(a, c))


def test_tensor_of_an_empty_module_is_empty():
    w = walking_arrow()
    empty = profunctor_to_bimodule(prof_from_tables(w, w, {}, {}, {}))
    base = monoid_as_bimodule(fincat_to_monoid(w))
    assert mod_hcomp(empty, base).mat.total_size() == 0
    assert mod_hcomp(base, empty).mat.total_size() == 0


def test_tensor_needs_matching_middle_monoid():
    w = walking_arrow()
    jb = profunctor_to_bimodule(unit_prof(w))
    other = monoid_as_bimodule(fincat_to_monoid(terminal_cat()))
    with pytest.raises(BoundaryMismatch, match="matching middle monoid"):
        mod_hcomp(jb, other)


def test_tensor_classes_identify_action_pairs():
    r = seeded(13)
    p, q = random_composable_profs(r, 2)
    jb = profunctor_to_bimodule(p)
    hb = profunctor_to_bimodule(q)
    t = mod_hcomp(jb, hb)
    middle = jb.right
    for a in p.left.objects:
        for c in q.right.objects:
            for b1 in middle.index:
                for b2 in middle.index:
                    for x in jb.mat.entry(a, b1):
                        for v in middle.base.entry(b1, b2):
                            for y in hb.mat.entry(b2, c):
                                pushed = mod_composite_rep(t, a, b2, c, jb.rmul(a, b1, b2, x, v), y)
                                pulled = mod_composite_rep(t, a, b1, c, x, hb.lmul(b1, b2, c, v, y))
                                assert pushed == pulled


def test_identity_bimodule_cell_is_right_invertible():
    jb = profunctor_to_bimodule(_pair_weight())
    phi = MatBimoduleCell(
        jb, jb,
        MatMonoidMap.identity(jb.left),
        MatMonoidMap.identity(jb.right),
        mat_identity_cell(jb.mat),
    )
    verdict = rho_bimodule_check(phi)
    assert verdict.ok
    assert "underlying_monoid_map=PASS" in verdict.notes
    assert "underlying_carrier=PASS" in verdict.notes
    assert "conclusion=right_invertible" in verdict.notes


def test_restriction_filler_gives_a_right_invertible_cell():
    w = walking_arrow()
    t = terminal_cat()
    pick = constant_functor(t, w, _a("1"))
    restricted, filler = restrict(unit_prof(w), FinFunctor.identity(w), pick)
    src = profunctor_to_bimodule(restricted)
    tgt = profunctor_to_bimodule(unit_prof(w))
    left_map = finfunctor_to_monoid_map(FinFunctor.identity(w))
    right_map = finfunctor_to_monoid_map(pick)
    cell = MatCell(
        src.mat, tgt.mat, left_map.cell.row_map, right_map.cell.row_map,
        tuple(
            (a, b, filler.component(a, b))
            for a in w.objects for b in t.objects if len(restricted.fiber(a, b)) > 0
        ),
    )
    verdict = rho_bimodule_check(MatBimoduleCell(src, tgt, left_map, right_map, cell))
    assert verdict.ok
    assert "conclusion=right_invertible" in verdict.notes


def test_failed_hypotheses_make_the_check_vacuous():
    w = walking_arrow()
    t = terminal_cat()
    collapse = constant_functor(w, t, _a("*"))
    src = profunctor_to_bimodule(unit_prof(w))
    tgt = profunctor_to_bimodule(unit_prof(t))
    fold = finfunctor_to_monoid_map(collapse)
    star = t.ident(_a("*"))
    cell = MatCell(
        src.mat, tgt.mat, fold.cell.row_map, fold.cell.row_map,
        tuple(
            (a, b, FinMap(w.hom(a, b), tgt.mat.entry(_a("*"), _a("*")),
                          tuple((m, star) for m in w.hom(a, b))))
            for a in w.objects for b in w.objects if len(w.hom(a, b)) > 0
        ),
    )
    verdict = rho_bimodule_check(MatBimoduleCell(src, tgt, fold, fold, cell))
    assert verdict.ok
    assert "underlying_monoid_map=FAIL" in verdict.notes
    assert "underlying_carrier=FAIL" in verdict.notes
    assert "conclusion=vacuous" in verdict.notes


# -- internal categories ---------------------------------------------------------

def test_categories_round_trip_through_internal_presentation():
    for c in (terminal_cat(), walking_arrow(), _z2_cat()):
        inner = fincat_to_internal(c)
        assert internal_to_fincat(inner) == c
        assert fincat_to_internal(internal_to_fincat(inner)) == inner
    r = seeded(3)
    for _ in range(4):
        c = random_cat(r)
        assert internal_to_fincat(fincat_to_internal(c)) == c


def test_internal_category_tables_are_validated():
    inner = fincat_to_internal(walking_arrow())
    graph = dict(inner.comp.graph)
    key = pair_atom(_a("u:0->1"), _a("id:1->1"))
    graph[key] = _a("id:1->1")
    with pytest.raises(AxiomFailure, match="ill-typed composite"):
        InternalCat(
            inner.objects, inner.morphisms, inner.src, inner.tgt,
            FinMap(inner.comp.source, inner.morphisms, tuple(graph.items())), inner.unit,
        )
    trimmed = {k: v for k, v in inner.comp.graph if k != key}
    with pytest.raises(BoundaryMismatch, match="composable pairs"):
        InternalCat(
            inner.objects, inner.morphisms, inner.src, inner.tgt,
            FinMap(FinSet(tuple(trimmed)), inner.morphisms, tuple(trimmed.items())), inner.unit,
        )


def test_functors_round_trip_through_internal_presentation():
    w = walking_arrow()
    fun = constant_functor(w, w, _a("1"))
    assert internal_functor_to_finfunctor(finfunctor_to_internal(fun)) == fun
    r = seeded(17)
    for _ in range(3):
        c = random_cat(r)
        d = random_cat(r)
        f = random_functor(r, c, d)
        assert internal_functor_to_finfunctor(finfunctor_to_internal(f)) == f
    inner = fincat_to_internal(w)
    graph = dict(FinMap.identity(inner.morphisms).graph)
    graph[_a("u:0->1")] = _a("id:0->0")
    with pytest.raises(AxiomFailure, match="target leg square"):
        InternalFunctor(
            inner, inner, FinMap.identity(inner.objects),
            FinMap(inner.morphisms, inner.morphisms, tuple(graph.items())),
        )


def test_profunctors_round_trip_through_internal_presentation():
    r = seeded(19)
    left = random_cat(r)
    right = random_cat(r)
    p = random_prof(r, left, right)
    ip = profunctor_to_internal(p)
    back = internal_prof_to_profunctor(ip)
    assert validate_profunctor(back).ok
    for a in left.objects:
        for b in right.objects:
            assert len(back.fiber(a, b)) == len(p.fiber(a, b))
            for x in p.fiber(a, b):
                assert internal_element(a, b, x) in back.fiber(a, b)
    for a in left.objects:
        for b in right.objects:
            for x in p.fiber(a, b):
                for s in left.mors():
                    if left.tgt(s) != a:
                        continue
                    acted = back.lact(s, b, internal_element(a, b, x))
                    assert acted == internal_element(left.src(s), b, p.lact(s, b, x))
                for v in right.mors():
                    if right.src(v) != b:
                        continue
                    acted = back.ract(a, internal_element(a, b, x), v)
                    assert acted == internal_element(a, right.tgt(v), p.ract(a, x, v))
    # an action landing on the wrong fiber is rejected
    iw = profunctor_to_internal(unit_prof(walking_arrow()))
    graph = dict(iw.ract.graph)
    key = pair_atom(internal_element(_a("0"), _a("0"), _a("id:0->0")), _a("u:0->1"))
    graph[key] = internal_element(_a("0"), _a("0"), _a("id:0->0"))
    with pytest.raises(AxiomFailure, match="ill-typed right action"):
        InternalProf(
            iw.left, iw.right, iw.elements, iw.src, iw.tgt, iw.lact,
            FinMap(iw.ract.source, iw.elements, tuple(graph.items())),
        )


def test_identity_transformation_round_trips():
    w = walking_arrow()
    inner = fincat_to_internal(w)
    weight = profunctor_to_internal(unit_prof(w))
    ident = finfunctor_to_internal(FinFunctor.identity(w))
    phi0 = FinMap(
        inner.objects, weight.elements,
        tuple((a, internal_element(a, a, w.ident(a))) for a in w.objects),
    )
    cell = internal_transformation(phi0, ident, ident, weight)
    assert validate_procell(cell).ok
    readback = procell_to_transformation(cell, weight)
    assert readback == phi0
    assert internal_transformation(readback, ident, ident, weight) == cell


def test_constant_functors_admit_pointwise_transformations():
    w = walking_arrow()
    inner = fincat_to_internal(w)
    weight = profunctor_to_internal(unit_prof(w))
    const = finfunctor_to_internal(constant_functor(w, w, _a("1")))
    top = internal_element(_a("1"), _a("1"), _a("id:1->1"))
    phi0 = FinMap(inner.objects, weight.elements, tuple((a, top) for a in w.objects))
    cell = internal_transformation(phi0, const, const, weight)
    assert cell.apply(_a("0"), _a("0"), _a("id:0->0")) == top
    assert cell.apply(_a("0"), _a("1"), _a("u:0->1")) == top


def test_component_seat_is_checked():
    w = walking_arrow()
    inner = fincat_to_internal(w)
    weight = profunctor_to_internal(unit_prof(w))
    ident = finfunctor_to_internal(FinFunctor.identity(w))
    crooked = FinMap(
        inner.objects, weight.elements,
        ((_a("0"), internal_element(_a("0"), _a("1"), _a("u:0->1"))),
         (_a("1"), internal_element(_a("1"), _a("1"), _a("id:1->1")))),
    )
    with pytest.raises(NaturalityFailure, match="sits over the wrong pair"):
        internal_transformation(crooked, ident, ident, weight)


def test_naturality_square_is_checked():
    w = walking_arrow()
    parallel = cat_from_tables(
        ["0", "1"],
        {("0", "0"): ["id:0->0"], ("1", "1"): ["id:1->1"], ("0", "1"): ["v1:0->1", "v2:0->1"]},
        {
            ("id:1->1", "v1:0->1"): "v1:0->1", ("id:1->1", "v2:0->1"): "v2:0->1",
            ("v1:0->1", "id:0->0"): "v1:0->1", ("v2:0->1", "id:0->0"): "v2:0->1",
            ("id:0->0", "id:0->0"): "id:0->0", ("id:1->1", "id:1->1"): "id:1->1",
        },
        {"0": "id:0->0", "1": "id:1->1"},
    )
    inner_w = fincat_to_internal(w)
    weight = profunctor_to_internal(unit_prof(parallel))
    bottom = finfunctor_to_internal(constant_functor(w, parallel, _a("0")))
    top = finfunctor_to_internal(constant_functor(w, parallel, _a("1")))
    survivors = []
    for at_zero in ("v1:0->1", "v2:0->1"):
        for at_one in ("v1:0->1", "v2:0->1"):
            phi0 = FinMap(
                inner_w.objects, weight.elements,
                ((_a("0"), internal_element(_a("0"), _a("1"), _a(at_zero))),
                 (_a("1"), internal_element(_a("0"), _a("1"), _a(at_one)))),
            )
            if at_zero == at_one:
                internal_transformation(phi0, bottom, top, weight)
                survivors.append((at_zero, at_one))
            else:
                with pytest.raises(NaturalityFailure, match="naturality square fails at u:0->1"):
                    internal_transformation(phi0, bottom, top, weight)
    assert len(survivors) == 2


def test_vertical_composition_matches_pointwise_action():
    w = walking_arrow()
    inner = fincat_to_internal(w)
    weight = profunctor_to_internal(unit_prof(w))
    lifted = internal_prof_to_profunctor(weight)
    ident = FinFunctor.identity(w)
    const1 = constant_functor(w, w, _a("1"))
    nats = all_nats(ident, const1)
    assert len(nats) == 1
    alpha = nats[0]
    phi0 = FinMap(
        inner.objects, weight.elements,
        tuple((a, internal_element(a, a, w.ident(a))) for a in w.objects),
    )
    unit_cell = internal_transformation(
        phi0, finfunctor_to_internal(ident), finfunctor_to_internal(ident), weight
    )
    mapping = {}
    for a in w.objects:
        for b in w.objects:
            table = {
                internal_element(a, b, m): internal_element(a, _a("1"), w.compose(alpha.at(b), m))
                for m in w.hom(a, b)
            }
            if table:
                mapping[(a, b)] = table
    push = procell_from_tables(lifted, lifted, ident, const1, mapping)
    composite = vcomp(unit_cell, push)
    pointwise = FinMap(
        inner.objects, weight.elements,
        tuple((a, internal_element(a, _a("1"), w.compose(alpha.at(a), w.ident(a)))) for a in w.objects),
    )
    assert procell_to_transformation(composite, weight) == pointwise
    direct = internal_transformation(
        pointwise, finfunctor_to_internal(ident), finfunctor_to_internal(const1), weight
    )
    assert composite == direct


# -- internal commas ---------------------------------------------------------------

def test_singleton_comma_has_one_object():
    t = terminal_cat()
    weight = prof_from_tables(t, t, {("*", "*"): ["j"]}, {}, {})
    ic = internal_comma(profunctor_to_internal(weight), finfunctor_to_internal(FinFunctor.identity(t)))
    assert len(ic.comma.objects) == 1
    assert len(ic.comma.morphisms) == 1
    ob = next(iter(ic.comma.objects))
    assert ic.triple(ob) == (_a("*"), internal_element(_a("*"), _a("*"), _a("j")), _a("*"))


def test_empty_weight_gives_an_empty_comma():
    w = walking_arrow()
    empty = prof_from_tables(w, w, {}, {}, {})
    ic = internal_comma(profunctor_to_internal(empty), finfunctor_to_internal(FinFunctor.identity(w)))
    assert len(ic.comma.objects) == 0
    assert len(ic.comma.morphisms) == 0
    with pytest.raises(BoundaryMismatch, match="into the weight's right side"):
        internal_comma(
            profunctor_to_internal(empty),
            finfunctor_to_internal(FinFunctor.identity(terminal_cat())),
        )


def test_two_element_weight_comma_matches_direct_construction():
    t = terminal_cat()
    weight = _pair_weight()
    along = FinFunctor.identity(t)
    ic = internal_comma(profunctor_to_internal(weight), finfunctor_to_internal(along))
    assert len(ic.comma.objects) == 2
    assert len(ic.comma.morphisms) == 2
    triples = {ic.triple(ob) for ob in ic.comma.objects}
    assert triples == {
        (_a("*"), internal_element(_a("*"), _a("*"), _a("j1")), _a("*")),
        (_a("*"), internal_element(_a("*"), _a("*"), _a("j2")), _a("*")),
    }
    assert _comma_matches_direct(ic, double_comma(weight, along))


def test_slice_comma_matches_direct_construction():
    w = walking_arrow()
    t = terminal_cat()
    weight = companion(FinFunctor.identity(w)).companion
    along = constant_functor(t, w, _a("1"))
    ic = internal_comma(profunctor_to_internal(weight), finfunctor_to_internal(along))
    assert len(ic.comma.objects) == 2
    assert len(ic.comma.morphisms) == 3
    crossings = [m for m in ic.comma.morphisms if ic.comma.src(m) != ic.comma.tgt(m)]
    assert len(crossings) == 1
    left_leg = internal_functor_to_finfunctor(ic.proj_left)
    assert left_leg.on_mor(crossings[0]) == _a("u:0->1")
    assert _comma_matches_direct(ic, double_comma(weight, along))


def test_corpus_commas_match_direct_construction():
    r = seeded(9)
    for _ in range(6):
        left = random_cat(r)
        right = random_cat(r)
        source = random_cat(r)
        weight = random_prof(r, left, right)
        along = random_functor(r, source, right)
        ic = internal_comma(profunctor_to_internal(weight), finfunctor_to_internal(along))
        assert _comma_matches_direct(ic, double_comma(weight, along))


def test_translated_comma_passes_the_universal_property_checks():
    t = terminal_cat()
    w = walking_arrow()
    fixtures = [
        (_pair_weight(), FinFunctor.identity(t)),
        (companion(FinFunctor.identity(w)).companion, constant_functor(t, w, _a("1"))),
    ]
    for weight, along in fixtures:
        ic = internal_comma(profunctor_to_internal(weight), finfunctor_to_internal(along))
        translated = translate_internal_comma(ic)
        assert validate_procell(translated.diagonal).ok
        assert procell_to_transformation(translated.diagonal, ic.weight) == ic.pi0
        assert check_comma(translated).ok


def test_translated_comma_weights_are_strong():
    w = walking_arrow()
    t = terminal_cat()
    hom_weight = companion(FinFunctor.identity(w)).companion
    ic = internal_comma(
        profunctor_to_internal(hom_weight),
        finfunctor_to_internal(FinFunctor.identity(w)),
    )
    verdict = check_strong_comma(
        internal_prof_to_profunctor(ic.weight),
        internal_functor_to_finfunctor(ic.along),
        [(unit_prof(w), FinFunctor.identity(w), FinFunctor.identity(w))],
    )
    assert verdict.ok
    assert "cells_checked=1" in verdict.notes
    slice_ic = internal_comma(
        profunctor_to_internal(hom_weight),
        finfunctor_to_internal(constant_functor(t, w, _a("1"))),
    )
    probe = prof_from_tables(t, t, {("*", "*"): ["h0"]}, {}, {})
    slice_verdict = check_strong_comma(
        internal_prof_to_profunctor(slice_ic.weight),
        internal_functor_to_finfunctor(slice_ic.along),
        [(probe, FinFunctor.identity(w), constant_functor(t, w, _a("0")))],
    )
    assert slice_verdict.ok
