"""Seeded deterministic generators of small categories, functors, and profunctors.

Everything here is driven by an explicit random.Random so that a seed fully
determines the corpus; reports quote the seed and stay byte-identical.
"""
from __future__ import annotations

import random

from .equipment import ProCell, Profunctor, nat_to_cell, restrict, unit_prof
from .fincat import (
    FinCat,
    FinFunctor,
    all_functors,
    all_nats,
    free_cat_on_dag,
    terminal_cat,
    walking_arrow,
)

__all__ = [
    "seeded",
    "random_cat",
    "random_functor",
    "random_prof",
    "random_composable_profs",
    "random_nat_cell",
]


def seeded(seed: int) -> random.Random:
    return random.Random(seed)


def random_cat(r: random.Random, max_objects: int = 3, max_parallel: int = 2) -> FinCat:
    """A small free category on a random DAG (hom sets stay small)."""
    n = r.randint(1, max_objects)
    verts = [f"v{i}" for i in range(n)]
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(r.randint(0, max_parallel)):
                edges.append((f"e{k}", verts[i], verts[j]))
                k += 1
    return free_cat_on_dag(verts, edges)


def random_functor(r: random.Random, c: FinCat, d: FinCat) -> FinFunctor:
    funs = all_functors(c, d)
    return r.choice(funs)


def random_prof(r: random.Random, a_cat: FinCat, b_cat: FinCat) -> Profunctor:
    """A lawful profunctor: a hom restriction along random functors."""
    e = r.choice([terminal_cat(), walking_arrow(), random_cat(r)])
    f = random_functor(r, a_cat, e)
    g = random_functor(r, b_cat, e)
    restricted, _ = restrict(unit_prof(e), f, g)
    return restricted


def random_composable_profs(r: random.Random, count: int) -> list[Profunctor]:
    """A chain J1: C0 -|-> C1, J2: C1 -|-> C2, ... of composable profunctors."""
    cats = [random_cat(r) for _ in range(count + 1)]
    return [random_prof(r, cats[i], cats[i + 1]) for i in range(count)]


def random_nat_cell(r: random.Random, c: FinCat, d: FinCat, tries: int = 40) -> ProCell | None:
    """A cell between hom profunctors arising from a random natural transformation."""
    funs = all_functors(c, d)
    for _ in range(tries):
        f, g = r.choice(funs), r.choice(funs)
        nats = all_nats(f, g)
        if nats:
            return nat_to_cell(r.choice(nats))
    return None
