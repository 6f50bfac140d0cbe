"""Tests for the finite-set kernel: quotients, pullbacks, (co)products, equalizers."""
from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finequip.errors import SourceMismatch, TargetMismatch
from finequip.setkit import (
    Atom,
    FinMap,
    FinSet,
    Quotient,
    coequalize,
    coproduct,
    equalize,
    finmap,
    finset,
    pair_atom,
    product,
    pullback,
    tag_atom,
)

# -- strategies ----------------------------------------------------------

atoms = st.builds(Atom, st.text(alphabet="abcdef", min_size=1, max_size=2))
finsets = st.builds(lambda ks: FinSet(tuple(ks)), st.lists(atoms, max_size=5))
nonempty_finsets = finsets.filter(lambda s: len(s) > 0)


@st.composite
def parallel_pairs(draw):
    tgt = draw(nonempty_finsets)
    src = draw(finsets)
    pick = st.sampled_from(tuple(tgt))
    f = FinMap(src, tgt, tuple((a, draw(pick)) for a in src))
    g = FinMap(src, tgt, tuple((a, draw(pick)) for a in src))
    return f, g


@st.composite
def cospans(draw):
    tgt = draw(nonempty_finsets)
    pick = st.sampled_from(tuple(tgt))
    left = draw(finsets)
    right = draw(finsets)
    f = FinMap(left, tgt, tuple((a, draw(pick)) for a in left))
    g = FinMap(right, tgt, tuple((a, draw(pick)) for a in right))
    return f, g


# -- atoms and sets ------------------------------------------------------

def test_atom_order_is_lexicographic_on_rendering():
    assert Atom("a") < Atom("b") < Atom("ba")
    assert Atom(10) < Atom(2)  # string order, by design


def test_finset_canonical_order_and_dedup():
    s = finset("b", "a", "b")
    assert [a.key for a in s] == ["a", "b"]
    assert len(s) == 2
    assert Atom("a") in s and Atom("c") not in s


def test_finmap_requires_totality_and_codomain():
    s, t = finset("x"), finset("u")
    with pytest.raises(ValueError):
        FinMap(s, t, ())
    with pytest.raises(ValueError):
        finmap(s, t, {"x": "zz"})


# -- coequalize ----------------------------------------------------------

def test_coequalize_identical_maps_is_discrete():
    s, t = finset(0, 1), finset("a", "b", "c")
    f = finmap(s, t, {0: "a", 1: "c"})
    assert coequalize(f, f) == Quotient.discrete(t)


def test_coequalize_chain_merges_to_one_class():
    # by-hand union-find closure: 0~1 (from x=0), then 1~2 (from x=1)
    s, t = finset(0, 1), finset(0, 1, 2)
    f = finmap(s, t, {0: 0, 1: 1})
    g = finmap(s, t, {0: 1, 1: 2})
    q = coequalize(f, g)
    assert q.classes == ((Atom("0"), Atom("1"), Atom("2")),)
    assert q.rep(Atom("2")) == Atom("0")


def test_coequalize_empty_source_is_discrete():
    t = finset("a", "b")
    f = FinMap(FinSet(()), t, ())
    assert coequalize(f, f) == Quotient.discrete(t)


def test_coequalize_rejects_mismatched_pair():
    f = finmap(finset("x"), finset("a"), {"x": "a"})
    g = finmap(finset("y"), finset("a"), {"y": "a"})
    with pytest.raises(SourceMismatch):
        coequalize(f, g)


@given(parallel_pairs())
def test_coequalize_idempotent(fg):
    f, g = fg
    proj = coequalize(f, g).proj()
    again = coequalize(f.then(proj), g.then(proj))
    assert again == Quotient.discrete(proj.target)


# -- pullback ------------------------------------------------------------

def test_pullback_of_identity_pair():
    s = finset("a")
    i = FinMap.identity(s)
    apex, p1, p2 = pullback(i, i)
    assert apex == finset("(a,a)")
    assert p1(pair_atom(Atom("a"), Atom("a"))) == Atom("a")


def test_pullback_constant_cospan_counts_pairs():
    # f:{x}->{t}, g:{y1,y2}->{t}: pairs (x,y1),(x,y2)
    t = finset("t")
    f = finmap(finset("x"), t, {"x": "t"})
    g = finmap(finset("y1", "y2"), t, {"y1": "t", "y2": "t"})
    apex, _, _ = pullback(f, g)
    assert apex == finset("(x,y1)", "(x,y2)")


def test_pullback_empty_leg_is_empty():
    t = finset("t")
    f = finmap(finset("x"), t, {"x": "t"})
    g = FinMap(FinSet(()), t, ())
    apex, _, _ = pullback(f, g)
    assert len(apex) == 0


def test_pullback_rejects_target_mismatch():
    f = finmap(finset("x"), finset("a"), {"x": "a"})
    g = finmap(finset("x"), finset("b"), {"x": "b"})
    with pytest.raises(TargetMismatch):
        pullback(f, g)


@given(cospans())
def test_pullback_square_commutes(fg):
    f, g = fg
    _, p1, p2 = pullback(f, g)
    assert p1.then(f) == p2.then(g)


# -- product / coproduct -------------------------------------------------

def test_product_examples():
    assert product(finset("a"), finset("b")) == finset("(a,b)")
    assert len(product(FinSet(()), finset("a", "b"))) == 0


def test_coproduct_tags_overlapping_sets():
    total, inl, inr = coproduct(finset("a", "b"), finset("a"))
    assert total == finset("inl:a", "inl:b", "inr:a")
    assert inl(Atom("a")) == tag_atom("inl", Atom("a"))
    assert inr(Atom("a")) == tag_atom("inr", Atom("a"))


@given(finsets, finsets)
def test_sizes_multiply_and_add(a, b):
    assert len(product(a, b)) == len(a) * len(b)
    total, inl, inr = coproduct(a, b)
    assert len(total) == len(a) + len(b)
    # injections jointly surjective and injective
    images = {inl(x) for x in a} | {inr(y) for y in b}
    assert images == set(total)


# -- equalize ------------------------------------------------------------

def test_equalize_of_equal_maps_is_whole_source():
    s, t = finset(0, 1), finset("a", "b")
    f = finmap(s, t, {0: "a", 1: "b"})
    sub, incl = equalize(f, f)
    assert sub == s
    assert incl == FinMap.identity(s)


def test_equalize_disjoint_images_is_empty():
    s, t = finset(0), finset("a", "b")
    f = finmap(s, t, {0: "a"})
    g = finmap(s, t, {0: "b"})
    sub, _ = equalize(f, g)
    assert len(sub) == 0


def test_equalize_pointwise_compare():
    s, t = finset(0, 1), finset("a", "b")
    f = finmap(s, t, {0: "a", 1: "a"})
    g = finmap(s, t, {0: "a", 1: "b"})
    sub, _ = equalize(f, g)
    assert sub == finset(0)


# -- determinism ---------------------------------------------------------

@given(parallel_pairs())
def test_operations_are_deterministic(fg):
    f, g = fg
    assert coequalize(f, g) == coequalize(f, g)
    assert product(f.source, g.target) == product(f.source, g.target)
    assert pullback(f, g)[0] == pullback(f, g)[0]
