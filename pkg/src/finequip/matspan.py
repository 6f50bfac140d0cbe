"""Set-valued matrices, matrix monoids and bimodules, and internal categories.

Two alternative presentations of the same structures live here. On one side,
matrices of finite sets compose by tagged-pair multiplication; monoids in
that world are categories presented entrywise, bimodules are profunctors,
and their tensor is a per-entry coequalizer. On the other side, a category
is a single span of morphisms over its object set, with composition a map
on composable pairs. Translation functions connect both presentations to
the fincat/equipment layer so each construction can be cross-checked
against its direct counterpart.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .colimits import DoubleComma
from .equipment import (
    ProCell,
    Profunctor,
    is_right_invertible,
    procell_from_tables,
    prof_from_tables,
    unit_prof,
)
from .errors import (
    AxiomFailure,
    BoundaryMismatch,
    IndexMismatch,
    NaturalityFailure,
    Verdict,
    failed,
    passed,
)
from .fincat import FinCat, FinFunctor, cat_from_tables
from .setkit import Atom, FinMap, FinSet, coequalize, pair_atom, tag_atom

__all__ = [
    "SetMatrix",
    "MatCell",
    "MatMonoid",
    "MatMonoidMap",
    "MatBimodule",
    "MatBimoduleCell",
    "InternalCat",
    "InternalFunctor",
    "InternalProf",
    "InternalComma",
    "matrix_from_tables",
    "matcell_from_tables",
    "unit_matrix",
    "unit_entry",
    "mat_pair",
    "mat_hcomp",
    "mat_identity_cell",
    "mat_vcomp",
    "mat_hcomp_cell",
    "mat_left_unitor",
    "mat_right_unitor",
    "mat_associator",
    "mat_right_invertible",
    "fincat_to_monoid",
    "monoid_to_fincat",
    "monoid_as_bimodule",
    "profunctor_to_bimodule",
    "bimodule_to_profunctor",
    "finfunctor_to_monoid_map",
    "monoid_map_to_finfunctor",
    "bimodule_cell_to_procell",
    "mod_hcomp",
    "mod_composite_rep",
    "rho_bimodule_check",
    "internal_cat_from_tables",
    "fincat_to_internal",
    "internal_to_fincat",
    "finfunctor_to_internal",
    "internal_functor_to_finfunctor",
    "internal_element",
    "profunctor_to_internal",
    "internal_prof_to_profunctor",
    "internal_transformation",
    "procell_to_transformation",
    "internal_comma",
    "translate_internal_comma",
]


def _at(value: object) -> Atom:
    return value if isinstance(value, Atom) else Atom(str(value))


# -- matrices of finite sets ------------------------------------------------

@dataclass(frozen=True)
class SetMatrix:
    """A matrix of finite sets indexed by two finite index sets.

    Entries may share element atoms; every cell between matrices carries its
    component maps per index pair, so no global disjointness is required.
    """

    rows: FinSet
    cols: FinSet
    entries: tuple[tuple[Atom, Atom, FinSet], ...]

    def __post_init__(self) -> None:
        table: dict[tuple[Atom, Atom], FinSet] = {}
        for a, b, s in self.entries:
            if a not in self.rows or b not in self.cols:
                raise ValueError(f"entry index ({a!r},{b!r}) out of range")
            if (a, b) in table:
                raise ValueError(f"duplicate entry at ({a!r},{b!r})")
            if len(s):
                table[(a, b)] = s
        object.__setattr__(
            self, "entries", tuple(sorted((a, b, s) for (a, b), s in table.items()))
        )
        object.__setattr__(self, "_entry", table)

    def entry(self, a: Atom, b: Atom) -> FinSet:
        return self._entry.get((a, b), FinSet(()))  # type: ignore[attr-defined]

    def total_size(self) -> int:
        return sum(len(s) for _, _, s in self.entries)


def matrix_from_tables(
    rows: Iterable[object],
    cols: Iterable[object],
    entries: Mapping[tuple[object, object], Iterable[object]],
) -> SetMatrix:
    """Build a SetMatrix from plain dicts of raw keys."""
    rows_t = FinSet(tuple(_at(r) for r in rows))
    cols_t = FinSet(tuple(_at(c) for c in cols))
    entries_t = tuple(
        (_at(a), _at(b), FinSet(tuple(_at(x) for x in xs))) for (a, b), xs in entries.items()
    )
    return SetMatrix(rows_t, cols_t, entries_t)


def unit_entry(a: Atom) -> Atom:
    """The single element of the unit matrix's diagonal entry at index a."""
    return tag_atom("1", a)


def unit_matrix(index: FinSet) -> SetMatrix:
    """The identity for matrix multiplication: singleton diagonal entries."""
    entries = tuple((a, a, FinSet((unit_entry(a),))) for a in index)
    return SetMatrix(index, index, entries)


def mat_pair(b: Atom, x: Atom, y: Atom) -> Atom:
    """Element of a product matrix: the pair (x, y) tagged with its middle index."""
    return tag_atom(b.key, pair_atom(x, y))


def _elements(m: SetMatrix) -> Iterator[tuple[Atom, Atom, Atom]]:
    for a, b, s in m.entries:
        for x in s:
            yield a, b, x


def mat_hcomp(j: SetMatrix, h: SetMatrix) -> SetMatrix:
    """Matrix multiplication: each entry is the union of middle-tagged pairs."""
    if j.cols != h.rows:
        raise IndexMismatch("matrix product needs matching middle index set")
    entries = []
    for a in j.rows:
        for c in h.cols:
            elems = [
                mat_pair(b, x, y)
                for b in j.cols
                for x in j.entry(a, b)
                for y in h.entry(b, c)
            ]
            if elems:
                entries.append((a, c, FinSet(tuple(elems))))
    return SetMatrix(j.rows, h.cols, tuple(entries))


@dataclass(frozen=True)
class MatCell:
    """A map of matrices over a row reindexing and a column reindexing."""

    source: SetMatrix
    target: SetMatrix
    row_map: FinMap
    col_map: FinMap
    components: tuple[tuple[Atom, Atom, FinMap], ...]

    def __post_init__(self) -> None:
        if self.row_map.source != self.source.rows or self.row_map.target != self.target.rows:
            raise BoundaryMismatch("row map boundary mismatch")
        if self.col_map.source != self.source.cols or self.col_map.target != self.target.cols:
            raise BoundaryMismatch("column map boundary mismatch")
        table: dict[tuple[Atom, Atom], FinMap] = {}
        for a, b, m in self.components:
            if len(m.source) == 0:
                continue
            if (a, b) in table:
                raise ValueError(f"duplicate component at ({a!r},{b!r})")
            tgt = self.target.entry(self.row_map(a), self.col_map(b))
            if m.source != self.source.entry(a, b) or m.target != tgt:
                raise BoundaryMismatch(f"component at ({a.key},{b.key}) has wrong boundary")
            table[(a, b)] = m
        for a, b, _ in self.source.entries:
            if (a, b) not in table:
                raise ValueError(f"missing component at ({a.key},{b.key})")
        object.__setattr__(
            self, "components", tuple(sorted((a, b, m) for (a, b), m in table.items()))
        )
        object.__setattr__(self, "_comp", table)

    def component(self, a: Atom, b: Atom) -> FinMap:
        got = self._comp.get((a, b))  # type: ignore[attr-defined]
        if got is not None:
            return got
        tgt = self.target.entry(self.row_map(a), self.col_map(b))
        return FinMap(FinSet(()), tgt, ())

    def apply(self, a: Atom, b: Atom, x: Atom) -> Atom:
        return self.component(a, b)(x)

    def is_entrywise_bijective(self) -> tuple[bool, tuple[Atom, Atom] | None]:
        for a in self.source.rows:
            for b in self.source.cols:
                if not self.component(a, b).is_bijective():
                    return False, (a, b)
        return True, None


def matcell_from_tables(
    source: SetMatrix,
    target: SetMatrix,
    row_map: FinMap,
    col_map: FinMap,
    mapping: Mapping[tuple[object, object], Mapping[object, object]],
) -> MatCell:
    comps = []
    for (a, b), table in mapping.items():
        aa, bb = _at(a), _at(b)
        src = source.entry(aa, bb)
        tgt = target.entry(row_map(aa), col_map(bb))
        comps.append((aa, bb, FinMap(src, tgt, tuple((_at(k), _at(v)) for k, v in table.items()))))
    return MatCell(source, target, row_map, col_map, tuple(comps))


def mat_identity_cell(j: SetMatrix) -> MatCell:
    comps = tuple((a, b, FinMap.identity(s)) for a, b, s in j.entries)
    return MatCell(j, j, FinMap.identity(j.rows), FinMap.identity(j.cols), comps)


def mat_vcomp(phi: MatCell, psi: MatCell) -> MatCell:
    """Composite cell: phi followed by psi."""
    if phi.target != psi.source:
        raise BoundaryMismatch("vertical composition needs matching middle matrix")
    comps = []
    for a, b, _ in phi.source.entries:
        first = phi.component(a, b)
        second = psi.component(phi.row_map(a), phi.col_map(b))
        comps.append((a, b, first.then(second)))
    return MatCell(
        phi.source,
        psi.target,
        phi.row_map.then(psi.row_map),
        phi.col_map.then(psi.col_map),
        tuple(comps),
    )


def mat_hcomp_cell(phi: MatCell, psi: MatCell) -> MatCell:
    """Product of two cells, acting on tagged pairs side by side."""
    if phi.source.cols != psi.source.rows or phi.target.cols != psi.target.rows:
        raise IndexMismatch("cell product needs matching middle index sets")
    if phi.col_map != psi.row_map:
        raise BoundaryMismatch("cell product needs a shared middle reindexing")
    src = mat_hcomp(phi.source, psi.source)
    tgt = mat_hcomp(phi.target, psi.target)
    mapping: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a in src.rows:
        for c in src.cols:
            table = {
                mat_pair(b, x, y): mat_pair(
                    phi.col_map(b), phi.apply(a, b, x), psi.apply(b, c, y)
                )
                for b in phi.source.cols
                for x in phi.source.entry(a, b)
                for y in psi.source.entry(b, c)
            }
            if table:
                mapping[(a, c)] = table
    return matcell_from_tables(src, tgt, phi.row_map, psi.col_map, mapping)


def mat_left_unitor(j: SetMatrix) -> MatCell:
    """The canonical bijection from the unit-times-j product onto j."""
    src = mat_hcomp(unit_matrix(j.rows), j)
    mapping = {
        (a, b): {mat_pair(a, unit_entry(a), x): x for x in s} for a, b, s in j.entries
    }
    return matcell_from_tables(src, j, FinMap.identity(j.rows), FinMap.identity(j.cols), mapping)


def mat_right_unitor(j: SetMatrix) -> MatCell:
    """The canonical bijection from the j-times-unit product onto j."""
    src = mat_hcomp(j, unit_matrix(j.cols))
    mapping = {
        (a, b): {mat_pair(b, x, unit_entry(b)): x for x in s} for a, b, s in j.entries
    }
    return matcell_from_tables(src, j, FinMap.identity(j.rows), FinMap.identity(j.cols), mapping)


def mat_associator(j: SetMatrix, h: SetMatrix, k: SetMatrix) -> MatCell:
    """The canonical bijection between the two triple-product bracketings."""
    src = mat_hcomp(mat_hcomp(j, h), k)
    tgt = mat_hcomp(j, mat_hcomp(h, k))
    mapping: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a in j.rows:
        for d in k.cols:
            table = {}
            for b in j.cols:
                for x in j.entry(a, b):
                    for c in h.cols:
                        for y in h.entry(b, c):
                            for z in k.entry(c, d):
                                table[mat_pair(c, mat_pair(b, x, y), z)] = mat_pair(
                                    b, x, mat_pair(c, y, z)
                                )
            if table:
                mapping[(a, d)] = table
    return matcell_from_tables(src, tgt, FinMap.identity(j.rows), FinMap.identity(k.cols), mapping)


def mat_right_invertible(phi: MatCell, subject: str = "cell") -> Verdict:
    """Right invertibility of a matrix cell over a pair of reindexings.

    For each target row c and source column b, the elements of all source
    entries in rows sent to c must map bijectively onto the target entry at
    (c, col_map(b)).
    """
    for c in phi.target.rows:
        for b in phi.source.cols:
            outs = []
            for a in phi.source.rows:
                if phi.row_map(a) != c:
                    continue
                outs.extend(phi.apply(a, b, x) for x in phi.source.entry(a, b))
            tgt = phi.target.entry(c, phi.col_map(b))
            if len(outs) != len(tgt) or len(set(outs)) != len(outs):
                return failed("right_invertible", subject, f"pooled_row@({c.key},{b.key})")
    return passed("right_invertible", subject)


# -- monoids and bimodules in matrices ---------------------------------------

@dataclass(frozen=True)
class MatMonoid:
    """A monoid over an index set: a square matrix with multiplication and unit."""

    base: SetMatrix
    mult: MatCell
    unit: MatCell

    def __post_init__(self) -> None:
        if self.base.rows != self.base.cols:
            raise BoundaryMismatch("monoid base matrix must be square")
        ident = FinMap.identity(self.base.rows)
        if self.mult.source != mat_hcomp(self.base, self.base) or self.mult.target != self.base:
            raise BoundaryMismatch("multiplication cell has wrong boundary")
        if self.mult.row_map != ident or self.mult.col_map != ident:
            raise BoundaryMismatch("multiplication must not reindex")
        if self.unit.source != unit_matrix(self.base.rows) or self.unit.target != self.base:
            raise BoundaryMismatch("unit cell has wrong boundary")
        if self.unit.row_map != ident or self.unit.col_map != ident:
            raise BoundaryMismatch("unit must not reindex")
        for a, b, x in _elements(self.base):
            for b2, c, y in _elements(self.base):
                if b2 != b:
                    continue
                for c2, d, z in _elements(self.base):
                    if c2 != c:
                        continue
                    left = self.mul(a, c, d, self.mul(a, b, c, x, y), z)
                    right = self.mul(a, b, d, x, self.mul(b, c, d, y, z))
                    if left != right:
                        raise AxiomFailure(f"associativity fails at ({x.key},{y.key},{z.key})")
        for a, b, x in _elements(self.base):
            if self.mul(a, a, b, self.ident_elem(a), x) != x:
                raise AxiomFailure(f"left unit law fails at {x.key}")
            if self.mul(a, b, b, x, self.ident_elem(b)) != x:
                raise AxiomFailure(f"right unit law fails at {x.key}")

    @property
    def index(self) -> FinSet:
        return self.base.rows

    def mul(self, a: Atom, b: Atom, c: Atom, x: Atom, y: Atom) -> Atom:
        """Product of x over (a,b) and y over (b,c), an element over (a,c)."""
        return self.mult.apply(a, c, mat_pair(b, x, y))

    def ident_elem(self, a: Atom) -> Atom:
        return self.unit.apply(a, a, unit_entry(a))


@dataclass(frozen=True)
class MatMonoidMap:
    """A morphism of matrix monoids: one index map and a compatible cell."""

    source: MatMonoid
    target: MatMonoid
    cell: MatCell

    def __post_init__(self) -> None:
        if self.cell.source != self.source.base or self.cell.target != self.target.base:
            raise BoundaryMismatch("carrier cell has wrong boundary")
        if self.cell.row_map != self.cell.col_map:
            raise BoundaryMismatch("row and column reindexings must agree")
        f0 = self.cell.row_map
        for a, b, x in _elements(self.source.base):
            for b2, c, y in _elements(self.source.base):
                if b2 != b:
                    continue
                sent = self.cell.apply(a, c, self.source.mul(a, b, c, x, y))
                split = self.target.mul(
                    f0(a), f0(b), f0(c), self.cell.apply(a, b, x), self.cell.apply(b, c, y)
                )
                if sent != split:
                    raise AxiomFailure(f"multiplication not preserved at ({x.key},{y.key})")
        for a in self.source.index:
            if self.cell.apply(a, a, self.source.ident_elem(a)) != self.target.ident_elem(f0(a)):
                raise AxiomFailure(f"unit not preserved at {a.key}")

    def on_index(self, a: Atom) -> Atom:
        return self.cell.row_map(a)

    def apply(self, a: Atom, b: Atom, x: Atom) -> Atom:
        return self.cell.apply(a, b, x)

    @staticmethod
    def identity(m: MatMonoid) -> MatMonoidMap:
        return MatMonoidMap(m, m, mat_identity_cell(m.base))

    def then(self, other: MatMonoidMap) -> MatMonoidMap:
        if self.target != other.source:
            raise BoundaryMismatch("monoid map composition boundary mismatch")
        return MatMonoidMap(self.source, other.target, mat_vcomp(self.cell, other.cell))


@dataclass(frozen=True)
class MatBimodule:
    """A matrix acted on by a monoid from the left and another from the right."""

    left: MatMonoid
    right: MatMonoid
    mat: SetMatrix
    lact: MatCell
    ract: MatCell

    def __post_init__(self) -> None:
        if self.mat.rows != self.left.index or self.mat.cols != self.right.index:
            raise BoundaryMismatch("carrier matrix index mismatch")
        row_id = FinMap.identity(self.mat.rows)
        col_id = FinMap.identity(self.mat.cols)
        if self.lact.source != mat_hcomp(self.left.base, self.mat) or self.lact.target != self.mat:
            raise BoundaryMismatch("left action cell has wrong boundary")
        if self.lact.row_map != row_id or self.lact.col_map != col_id:
            raise BoundaryMismatch("left action must not reindex")
        if self.ract.source != mat_hcomp(self.mat, self.right.base) or self.ract.target != self.mat:
            raise BoundaryMismatch("right action cell has wrong boundary")
        if self.ract.row_map != row_id or self.ract.col_map != col_id:
            raise BoundaryMismatch("right action must not reindex")
        for a1, a2, s in _elements(self.left.base):
            for a3, b, x in _elements(self.mat):
                if a3 != a2:
                    continue
                for a0, a1b, t in _elements(self.left.base):
                    if a1b != a1:
                        continue
                    left = self.lmul(a0, a1, b, t, self.lmul(a1, a2, b, s, x))
                    right = self.lmul(a0, a2, b, self.left.mul(a0, a1, a2, t, s), x)
                    if left != right:
                        raise AxiomFailure(f"left action associativity fails at ({t.key},{s.key},{x.key})")
        for a, b, x in _elements(self.mat):
            if self.lmul(a, a, b, self.left.ident_elem(a), x) != x:
                raise AxiomFailure(f"left action unit law fails at {x.key}")
            if self.rmul(a, b, b, x, self.right.ident_elem(b)) != x:
                raise AxiomFailure(f"right action unit law fails at {x.key}")
        for a, b1, x in _elements(self.mat):
            for b1b, b2, u in _elements(self.right.base):
                if b1b != b1:
                    continue
                for b2b, b3, v in _elements(self.right.base):
                    if b2b != b2:
                        continue
                    left = self.rmul(a, b2, b3, self.rmul(a, b1, b2, x, u), v)
                    right = self.rmul(a, b1, b3, x, self.right.mul(b1, b2, b3, u, v))
                    if left != right:
                        raise AxiomFailure(f"right action associativity fails at ({x.key},{u.key},{v.key})")
        for a1, a2, s in _elements(self.left.base):
            for a2b, b1, x in _elements(self.mat):
                if a2b != a2:
                    continue
                for b1b, b2, v in _elements(self.right.base):
                    if b1b != b1:
                        continue
                    left = self.rmul(a1, b1, b2, self.lmul(a1, a2, b1, s, x), v)
                    right = self.lmul(a1, a2, b2, s, self.rmul(a2, b1, b2, x, v))
                    if left != right:
                        raise AxiomFailure(f"actions do not commute at ({s.key},{x.key},{v.key})")

    def lmul(self, a1: Atom, a2: Atom, b: Atom, s: Atom, x: Atom) -> Atom:
        """Act by s over (a1,a2) on x over (a2,b), landing over (a1,b)."""
        return self.lact.apply(a1, b, mat_pair(a2, s, x))

    def rmul(self, a: Atom, b1: Atom, b2: Atom, x: Atom, v: Atom) -> Atom:
        """Act by v over (b1,b2) on x over (a,b1), landing over (a,b2)."""
        return self.ract.apply(a, b2, mat_pair(b1, x, v))


@dataclass(frozen=True)
class MatBimoduleCell:
    """A map of bimodules over a pair of monoid morphisms."""

    source: MatBimodule
    target: MatBimodule
    left_map: MatMonoidMap
    right_map: MatMonoidMap
    cell: MatCell

    def __post_init__(self) -> None:
        if self.left_map.source != self.source.left or self.left_map.target != self.target.left:
            raise BoundaryMismatch("left monoid map boundary mismatch")
        if self.right_map.source != self.source.right or self.right_map.target != self.target.right:
            raise BoundaryMismatch("right monoid map boundary mismatch")
        if self.cell.source != self.source.mat or self.cell.target != self.target.mat:
            raise BoundaryMismatch("carrier cell boundary mismatch")
        if self.cell.row_map != self.left_map.cell.row_map:
            raise BoundaryMismatch("row reindexing must match the left monoid map")
        if self.cell.col_map != self.right_map.cell.row_map:
            raise BoundaryMismatch("column reindexing must match the right monoid map")
        f0, g0 = self.cell.row_map, self.cell.col_map
        for a1, a2, s in _elements(self.source.left.base):
            for a2b, b, x in _elements(self.source.mat):
                if a2b != a2:
                    continue
                sent = self.cell.apply(a1, b, self.source.lmul(a1, a2, b, s, x))
                split = self.target.lmul(
                    f0(a1), f0(a2), g0(b), self.left_map.apply(a1, a2, s), self.cell.apply(a2, b, x)
                )
                if sent != split:
                    raise AxiomFailure(f"left action not preserved at ({s.key},{x.key})")
        for a, b1, x in _elements(self.source.mat):
            for b1b, b2, v in _elements(self.source.right.base):
                if b1b != b1:
                    continue
                sent = self.cell.apply(a, b2, self.source.rmul(a, b1, b2, x, v))
                split = self.target.rmul(
                    f0(a), g0(b1), g0(b2), self.cell.apply(a, b1, x), self.right_map.apply(b1, b2, v)
                )
                if sent != split:
                    raise AxiomFailure(f"right action not preserved at ({x.key},{v.key})")

    def apply(self, a: Atom, b: Atom, x: Atom) -> Atom:
        return self.cell.apply(a, b, x)


# -- translations between matrix monoids and categories ----------------------

def fincat_to_monoid(c: FinCat) -> MatMonoid:
    """Repackage a category's hom tables as a monoid over its object index."""
    idx = c.objects
    ident = FinMap.identity(idx)
    base = SetMatrix(
        idx, idx, tuple((a, b, c.hom(a, b)) for a in idx for b in idx if len(c.hom(a, b)))
    )
    mmap: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a in idx:
        for b in idx:
            table = {
                mat_pair(mid, x, y): c.compose(y, x)
                for mid in idx
                for x in c.hom(a, mid)
                for y in c.hom(mid, b)
            }
            if table:
                mmap[(a, b)] = table
    mult = matcell_from_tables(mat_hcomp(base, base), base, ident, ident, mmap)
    umap = {(a, a): {unit_entry(a): c.ident(a)} for a in idx}
    unit = matcell_from_tables(unit_matrix(idx), base, ident, ident, umap)
    return MatMonoid(base, mult, unit)


def monoid_to_fincat(m: MatMonoid) -> FinCat:
    """The category whose hom sets are the monoid's entries.

    Entries must be pairwise disjoint so their elements can serve as
    morphism atoms; a shared element is reported with its two positions.
    """
    seen: dict[Atom, tuple[Atom, Atom]] = {}
    for a, b, x in _elements(m.base):
        if x in seen:
            o = seen[x]
            raise AxiomFailure(
                f"element {x.key} appears in entries ({o[0].key},{o[1].key}) and ({a.key},{b.key})"
            )
        seen[x] = (a, b)
    homs = {(a, b): list(s) for a, b, s in m.base.entries}
    comps: dict[tuple[Atom, Atom], Atom] = {}
    for a, b, x in _elements(m.base):
        for b2, c, y in _elements(m.base):
            if b2 == b:
                comps[(y, x)] = m.mul(a, b, c, x, y)
    idents = {a: m.ident_elem(a) for a in m.index}
    return cat_from_tables(list(m.index), homs, comps, idents)


def monoid_as_bimodule(m: MatMonoid) -> MatBimodule:
    """A monoid acting on itself on both sides."""
    return MatBimodule(m, m, m.base, m.mult, m.mult)


def profunctor_to_bimodule(p: Profunctor) -> MatBimodule:
    """View a profunctor as a bimodule over its boundary hom monoids."""
    left = fincat_to_monoid(p.left)
    right = fincat_to_monoid(p.right)
    mat = SetMatrix(p.left.objects, p.right.objects, p.fibers)
    lmap: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a1 in p.left.objects:
        for b in p.right.objects:
            table = {
                mat_pair(a2, s, x): p.lact(s, b, x)
                for a2 in p.left.objects
                for s in p.left.hom(a1, a2)
                for x in p.fiber(a2, b)
            }
            if table:
                lmap[(a1, b)] = table
    rmap: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a in p.left.objects:
        for b2 in p.right.objects:
            table = {
                mat_pair(b1, x, v): p.ract(a, x, v)
                for b1 in p.right.objects
                for x in p.fiber(a, b1)
                for v in p.right.hom(b1, b2)
            }
            if table:
                rmap[(a, b2)] = table
    row_id, col_id = FinMap.identity(mat.rows), FinMap.identity(mat.cols)
    lact = matcell_from_tables(mat_hcomp(left.base, mat), mat, row_id, col_id, lmap)
    ract = matcell_from_tables(mat_hcomp(mat, right.base), mat, row_id, col_id, rmap)
    return MatBimodule(left, right, mat, lact, ract)


def bimodule_to_profunctor(m: MatBimodule) -> Profunctor:
    """The inverse view: entries become fibers over the entry categories."""
    left_cat = monoid_to_fincat(m.left)
    right_cat = monoid_to_fincat(m.right)
    lact: dict[tuple[Atom, Atom, Atom], Atom] = {}
    for a1, a2, s in _elements(m.left.base):
        if a1 == a2 and s == m.left.ident_elem(a1):
            continue
        for b in m.mat.cols:
            for x in m.mat.entry(a2, b):
                lact[(s, b, x)] = m.lmul(a1, a2, b, s, x)
    ract: dict[tuple[Atom, Atom, Atom], Atom] = {}
    for b1, b2, v in _elements(m.right.base):
        if b1 == b2 and v == m.right.ident_elem(b1):
            continue
        for a in m.mat.rows:
            for x in m.mat.entry(a, b1):
                ract[(a, x, v)] = m.rmul(a, b1, b2, x, v)
    fibers = {(a, b): s for a, b, s in m.mat.entries}
    return prof_from_tables(left_cat, right_cat, fibers, lact, ract)


def finfunctor_to_monoid_map(fun: FinFunctor) -> MatMonoidMap:
    source = fincat_to_monoid(fun.source)
    target = fincat_to_monoid(fun.target)
    mapping = {(a, b): {x: fun.on_mor(x) for x in s} for a, b, s in source.base.entries}
    cell = matcell_from_tables(source.base, target.base, fun.ob_map, fun.ob_map, mapping)
    return MatMonoidMap(source, target, cell)


def monoid_map_to_finfunctor(f: MatMonoidMap) -> FinFunctor:
    source = monoid_to_fincat(f.source)
    target = monoid_to_fincat(f.target)
    graph = tuple((x, f.apply(a, b, x)) for a, b, x in _elements(f.source.base))
    return FinFunctor(source, target, f.cell.row_map, FinMap(source.mors(), target.mors(), graph))


def bimodule_cell_to_procell(phi: MatBimoduleCell) -> ProCell:
    """Translate a bimodule cell into the profunctor equipment."""
    hor_source = bimodule_to_profunctor(phi.source)
    hor_target = bimodule_to_profunctor(phi.target)
    vert_left = monoid_map_to_finfunctor(phi.left_map)
    vert_right = monoid_map_to_finfunctor(phi.right_map)
    mapping = {(a, b): {x: phi.apply(a, b, x) for x in s} for a, b, s in phi.source.mat.entries}
    return procell_from_tables(hor_source, hor_target, vert_left, vert_right, mapping)


# -- the tensor of bimodules over a shared monoid -----------------------------

def mod_hcomp(j: MatBimodule, h: MatBimodule) -> MatBimodule:
    """Tensor over the middle monoid: per-entry coequalizer of the two actions.

    The coequalizer identifies (x*v, y) with (x, v*y) for every middle
    element v; inserting middle units gives a common section of the two
    relation legs, so the quotient is reflexive. The result carries hidden
    classification tables read back by mod_composite_rep.
    """
    if j.right != h.left:
        raise BoundaryMismatch("tensor needs matching middle monoid")
    mid = j.right
    classify: dict[tuple[Atom, Atom, Atom], Atom] = {}
    decompose: dict[tuple[Atom, Atom, Atom], tuple[Atom, Atom, Atom]] = {}
    entry_table: dict[tuple[Atom, Atom], FinSet] = {}
    for a in j.mat.rows:
        for c in h.mat.cols:
            raws: list[Atom] = []
            raw_info: dict[Atom, tuple[Atom, Atom, Atom]] = {}
            for b in mid.index:
                for x in j.mat.entry(a, b):
                    for y in h.mat.entry(b, c):
                        r = mat_pair(b, x, y)
                        raws.append(r)
                        raw_info[r] = (b, x, y)
            base = FinSet(tuple(raws))
            relations: set[tuple[Atom, Atom]] = set()
            for b1, b2, v in _elements(mid.base):
                if b1 == b2 and v == mid.ident_elem(b1):
                    continue
                for x in j.mat.entry(a, b1):
                    for y in h.mat.entry(b2, c):
                        relations.add(
                            (
                                mat_pair(b2, j.rmul(a, b1, b2, x, v), y),
                                mat_pair(b1, x, h.lmul(b1, b2, c, v, y)),
                            )
                        )
            rel_set = FinSet(tuple(pair_atom(p, q) for p, q in relations))
            fmap = FinMap(rel_set, base, tuple((pair_atom(p, q), p) for p, q in relations))
            gmap = FinMap(rel_set, base, tuple((pair_atom(p, q), q) for p, q in relations))
            quot = coequalize(fmap, gmap)
            reps = quot.reps()
            if len(reps):
                entry_table[(a, c)] = reps
            for r in raws:
                classify[(a, c, r)] = quot.rep(r)
            for rep in reps:
                decompose[(a, c, rep)] = raw_info[rep]
    mat = SetMatrix(
        j.mat.rows, h.mat.cols, tuple(sorted((a, c, s) for (a, c), s in entry_table.items()))
    )
    lmap: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a1 in j.left.index:
        for c in h.mat.cols:
            table = {}
            for a2 in j.left.index:
                for s in j.left.base.entry(a1, a2):
                    for rep in entry_table.get((a2, c), FinSet(())):
                        b, x, y = decompose[(a2, c, rep)]
                        table[mat_pair(a2, s, rep)] = classify[
                            (a1, c, mat_pair(b, j.lmul(a1, a2, b, s, x), y))
                        ]
            if table:
                lmap[(a1, c)] = table
    rmap: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a in j.mat.rows:
        for c2 in h.right.index:
            table = {}
            for c1 in h.right.index:
                for v in h.right.base.entry(c1, c2):
                    for rep in entry_table.get((a, c1), FinSet(())):
                        b, x, y = decompose[(a, c1, rep)]
                        table[mat_pair(c1, rep, v)] = classify[
                            (a, c2, mat_pair(b, x, h.rmul(b, c1, c2, y, v)))
                        ]
            if table:
                rmap[(a, c2)] = table
    row_id, col_id = FinMap.identity(mat.rows), FinMap.identity(mat.cols)
    lact = matcell_from_tables(mat_hcomp(j.left.base, mat), mat, row_id, col_id, lmap)
    ract = matcell_from_tables(mat_hcomp(mat, h.right.base), mat, row_id, col_id, rmap)
    out = MatBimodule(j.left, h.right, mat, lact, ract)
    object.__setattr__(out, "_classify", classify)
    object.__setattr__(out, "_decompose", decompose)
    return out


def mod_composite_rep(m: MatBimodule, a: Atom, b: Atom, c: Atom, x: Atom, y: Atom) -> Atom:
    """Class representative of the middle-b pair (x,y) in a tensor bimodule."""
    table = getattr(m, "_classify", None)
    if table is None:
        raise ValueError("bimodule was not built by mod_hcomp")
    return table[(a, c, mat_pair(b, x, y))]


def rho_bimodule_check(phi: MatBimoduleCell, subject: str = "bimodule_cell") -> Verdict:
    """Right invertibility descends from the underlying matrix cells.

    When both the left monoid map's cell and the carrier cell are right
    invertible as matrix cells, the induced profunctor cell must be right
    invertible too; when either hypothesis fails the implication is vacuous.
    """
    monoid_part = mat_right_invertible(phi.left_map.cell, subject="left_monoid_map")
    carrier_part = mat_right_invertible(phi.cell, subject="carrier")
    notes = (
        f"underlying_monoid_map={'PASS' if monoid_part.ok else 'FAIL'}",
        f"underlying_carrier={'PASS' if carrier_part.ok else 'FAIL'}",
    )
    if not (monoid_part.ok and carrier_part.ok):
        return passed("rho_bimodule", subject, *notes, "conclusion=vacuous")
    derived = is_right_invertible(bimodule_cell_to_procell(phi), subject=subject)
    if derived.ok:
        return passed("rho_bimodule", subject, *notes, "conclusion=right_invertible")
    return failed("rho_bimodule", subject, derived.witness, *notes, "conclusion=implication_violated")


# -- internal categories -----------------------------------------------------

@dataclass(frozen=True)
class InternalCat:
    """A category presented as a span: one object set and one morphism set.

    Composition is a map on the set of composable pairs, taken in
    diagrammatic order: comp(pair_atom(x, y)) is x followed by y.
    """

    objects: FinSet
    morphisms: FinSet
    src: FinMap
    tgt: FinMap
    comp: FinMap
    unit: FinMap

    def __post_init__(self) -> None:
        if self.src.source != self.morphisms or self.src.target != self.objects:
            raise BoundaryMismatch("source leg boundary mismatch")
        if self.tgt.source != self.morphisms or self.tgt.target != self.objects:
            raise BoundaryMismatch("target leg boundary mismatch")
        if self.unit.source != self.objects or self.unit.target != self.morphisms:
            raise BoundaryMismatch("unit map boundary mismatch")
        pairs = FinSet(
            tuple(
                pair_atom(x, y)
                for x in self.morphisms
                for y in self.morphisms
                if self.tgt(x) == self.src(y)
            )
        )
        if self.comp.source != pairs or self.comp.target != self.morphisms:
            raise BoundaryMismatch("composition must cover exactly the composable pairs")
        for a in self.objects:
            e = self.unit(a)
            if self.src(e) != a or self.tgt(e) != a:
                raise AxiomFailure(f"unit at {a.key} is not an endomorphism")
        composable = [
            (x, y)
            for x in self.morphisms
            for y in self.morphisms
            if self.tgt(x) == self.src(y)
        ]
        for x, y in composable:
            xy = self.compose(x, y)
            if self.src(xy) != self.src(x) or self.tgt(xy) != self.tgt(y):
                raise AxiomFailure(f"ill-typed composite at ({x.key},{y.key})")
        for x in self.morphisms:
            if self.compose(self.unit(self.src(x)), x) != x:
                raise AxiomFailure(f"left unit law fails at {x.key}")
            if self.compose(x, self.unit(self.tgt(x))) != x:
                raise AxiomFailure(f"right unit law fails at {x.key}")
        for x, y in composable:
            for z in self.morphisms:
                if self.tgt(y) != self.src(z):
                    continue
                if self.compose(self.compose(x, y), z) != self.compose(x, self.compose(y, z)):
                    raise AxiomFailure(f"associativity fails at ({x.key},{y.key},{z.key})")

    def compose(self, x: Atom, y: Atom) -> Atom:
        """Composite of x followed by y."""
        return self.comp(pair_atom(x, y))

    def ident(self, a: Atom) -> Atom:
        return self.unit(a)

    def hom(self, a: Atom, b: Atom) -> FinSet:
        return FinSet(tuple(m for m in self.morphisms if self.src(m) == a and self.tgt(m) == b))


def internal_cat_from_tables(
    objects: Iterable[object],
    morphisms: Iterable[object],
    src: Mapping[object, object],
    tgt: Mapping[object, object],
    comp: Mapping[tuple[object, object], object],
    unit: Mapping[object, object],
) -> InternalCat:
    """Build an InternalCat from plain dicts; comp keys are (first, second)."""
    obs = FinSet(tuple(_at(o) for o in objects))
    mors = FinSet(tuple(_at(m) for m in morphisms))
    comp_graph = tuple((pair_atom(_at(x), _at(y)), _at(z)) for (x, y), z in comp.items())
    pairs = FinSet(tuple(p for p, _ in comp_graph))
    return InternalCat(
        obs,
        mors,
        FinMap(mors, obs, tuple((_at(k), _at(v)) for k, v in src.items())),
        FinMap(mors, obs, tuple((_at(k), _at(v)) for k, v in tgt.items())),
        FinMap(pairs, mors, comp_graph),
        FinMap(obs, mors, tuple((_at(k), _at(v)) for k, v in unit.items())),
    )


@dataclass(frozen=True)
class InternalFunctor:
    """An internal functor: object and morphism maps commuting with the spans."""

    source: InternalCat
    target: InternalCat
    ob_map: FinMap
    mor_map: FinMap

    def __post_init__(self) -> None:
        if self.ob_map.source != self.source.objects or self.ob_map.target != self.target.objects:
            raise BoundaryMismatch("object map boundary mismatch")
        if self.mor_map.source != self.source.morphisms or self.mor_map.target != self.target.morphisms:
            raise BoundaryMismatch("morphism map boundary mismatch")
        if self.source.src.then(self.ob_map) != self.mor_map.then(self.target.src):
            raise AxiomFailure("source leg square does not commute")
        if self.source.tgt.then(self.ob_map) != self.mor_map.then(self.target.tgt):
            raise AxiomFailure("target leg square does not commute")
        if self.source.unit.then(self.mor_map) != self.ob_map.then(self.target.unit):
            raise AxiomFailure("unit square does not commute")
        for x in self.source.morphisms:
            for y in self.source.morphisms:
                if self.source.tgt(x) != self.source.src(y):
                    continue
                sent = self.on_mor(self.source.compose(x, y))
                if sent != self.target.compose(self.on_mor(x), self.on_mor(y)):
                    raise AxiomFailure(f"composition square fails at ({x.key},{y.key})")

    def on_ob(self, a: Atom) -> Atom:
        return self.ob_map(a)

    def on_mor(self, x: Atom) -> Atom:
        return self.mor_map(x)

    def then(self, other: InternalFunctor) -> InternalFunctor:
        if self.target != other.source:
            raise BoundaryMismatch("internal functor composition boundary mismatch")
        return InternalFunctor(
            self.source,
            other.target,
            self.ob_map.then(other.ob_map),
            self.mor_map.then(other.mor_map),
        )

    @staticmethod
    def identity(c: InternalCat) -> InternalFunctor:
        return InternalFunctor(c, c, FinMap.identity(c.objects), FinMap.identity(c.morphisms))


@dataclass(frozen=True)
class InternalProf:
    """An internal profunctor: a span of elements with two compatible actions.

    lact is defined on pairs (s, x) with tgt(s) = src(x) and relabels the
    source leg; ract on pairs (x, v) with tgt(x) = src(v), relabeling the
    target leg.
    """

    left: InternalCat
    right: InternalCat
    elements: FinSet
    src: FinMap
    tgt: FinMap
    lact: FinMap
    ract: FinMap

    def __post_init__(self) -> None:
        if self.src.source != self.elements or self.src.target != self.left.objects:
            raise BoundaryMismatch("source leg boundary mismatch")
        if self.tgt.source != self.elements or self.tgt.target != self.right.objects:
            raise BoundaryMismatch("target leg boundary mismatch")
        lpairs = FinSet(
            tuple(
                pair_atom(s, x)
                for s in self.left.morphisms
                for x in self.elements
                if self.left.tgt(s) == self.src(x)
            )
        )
        if self.lact.source != lpairs or self.lact.target != self.elements:
            raise BoundaryMismatch("left action must cover exactly its action pairs")
        rpairs = FinSet(
            tuple(
                pair_atom(x, v)
                for x in self.elements
                for v in self.right.morphisms
                if self.tgt(x) == self.right.src(v)
            )
        )
        if self.ract.source != rpairs or self.ract.target != self.elements:
            raise BoundaryMismatch("right action must cover exactly its action pairs")
        for s in self.left.morphisms:
            for x in self.elements:
                if self.left.tgt(s) != self.src(x):
                    continue
                out = self.act_left(s, x)
                if self.src(out) != self.left.src(s) or self.tgt(out) != self.tgt(x):
                    raise AxiomFailure(f"ill-typed left action at ({s.key},{x.key})")
        for x in self.elements:
            for v in self.right.morphisms:
                if self.tgt(x) != self.right.src(v):
                    continue
                out = self.act_right(x, v)
                if self.src(out) != self.src(x) or self.tgt(out) != self.right.tgt(v):
                    raise AxiomFailure(f"ill-typed right action at ({x.key},{v.key})")
        for x in self.elements:
            if self.act_left(self.left.unit(self.src(x)), x) != x:
                raise AxiomFailure(f"left action unit law fails at {x.key}")
            if self.act_right(x, self.right.unit(self.tgt(x))) != x:
                raise AxiomFailure(f"right action unit law fails at {x.key}")
        for s in self.left.morphisms:
            for t in self.left.morphisms:
                if self.left.tgt(s) != self.left.src(t):
                    continue
                for x in self.elements:
                    if self.left.tgt(t) != self.src(x):
                        continue
                    joined = self.act_left(self.left.compose(s, t), x)
                    if joined != self.act_left(s, self.act_left(t, x)):
                        raise AxiomFailure(f"left action associativity fails at ({s.key},{t.key},{x.key})")
        for x in self.elements:
            for u in self.right.morphisms:
                if self.tgt(x) != self.right.src(u):
                    continue
                for v in self.right.morphisms:
                    if self.right.tgt(u) != self.right.src(v):
                        continue
                    joined = self.act_right(x, self.right.compose(u, v))
                    if joined != self.act_right(self.act_right(x, u), v):
                        raise AxiomFailure(f"right action associativity fails at ({x.key},{u.key},{v.key})")
        for s in self.left.morphisms:
            for x in self.elements:
                if self.left.tgt(s) != self.src(x):
                    continue
                for v in self.right.morphisms:
                    if self.tgt(x) != self.right.src(v):
                        continue
                    if self.act_left(s, self.act_right(x, v)) != self.act_right(self.act_left(s, x), v):
                        raise AxiomFailure(f"actions do not commute at ({s.key},{x.key},{v.key})")

    def act_left(self, s: Atom, x: Atom) -> Atom:
        return self.lact(pair_atom(s, x))

    def act_right(self, x: Atom, v: Atom) -> Atom:
        return self.ract(pair_atom(x, v))

    def fiber(self, a: Atom, b: Atom) -> FinSet:
        return FinSet(tuple(x for x in self.elements if self.src(x) == a and self.tgt(x) == b))


# -- translations between internal and tabular presentations ------------------

def fincat_to_internal(c: FinCat) -> InternalCat:
    """Collapse hom-set tables into a single span of morphisms."""
    mors = c.mors()
    comp: dict[Atom, Atom] = {}
    for x in mors:
        for y in mors:
            if c.tgt(x) == c.src(y):
                comp[pair_atom(x, y)] = c.compose(y, x)
    return InternalCat(
        c.objects,
        mors,
        FinMap(mors, c.objects, tuple((m, c.src(m)) for m in mors)),
        FinMap(mors, c.objects, tuple((m, c.tgt(m)) for m in mors)),
        FinMap(FinSet(tuple(comp)), mors, tuple(comp.items())),
        FinMap(c.objects, mors, tuple((a, c.ident(a)) for a in c.objects)),
    )


def internal_to_fincat(i: InternalCat) -> FinCat:
    """Reassemble hom-set tables from the span's fibers."""
    homs: dict[tuple[Atom, Atom], list[Atom]] = {}
    for m in i.morphisms:
        homs.setdefault((i.src(m), i.tgt(m)), []).append(m)
    comps: dict[tuple[Atom, Atom], Atom] = {}
    for x in i.morphisms:
        for y in i.morphisms:
            if i.tgt(x) == i.src(y):
                comps[(y, x)] = i.compose(x, y)
    idents = {a: i.ident(a) for a in i.objects}
    return cat_from_tables(list(i.objects), homs, comps, idents)


def finfunctor_to_internal(fun: FinFunctor) -> InternalFunctor:
    return InternalFunctor(
        fincat_to_internal(fun.source), fincat_to_internal(fun.target), fun.ob_map, fun.mor_map
    )


def internal_functor_to_finfunctor(fun: InternalFunctor) -> FinFunctor:
    return FinFunctor(
        internal_to_fincat(fun.source), internal_to_fincat(fun.target), fun.ob_map, fun.mor_map
    )


def internal_element(a: Atom, b: Atom, x: Atom) -> Atom:
    """Globally unique atom for a fiber element x sitting over (a, b)."""
    return Atom(f"{x.key}@({a.key},{b.key})")


def profunctor_to_internal(p: Profunctor) -> InternalProf:
    """Collapse fibers into one element span, tagging elements with their seat."""
    left = fincat_to_internal(p.left)
    right = fincat_to_internal(p.right)
    elems: list[Atom] = []
    src_g, tgt_g = [], []
    for a, b, s in p.fibers:
        for x in s:
            e = internal_element(a, b, x)
            elems.append(e)
            src_g.append((e, a))
            tgt_g.append((e, b))
    elements = FinSet(tuple(elems))
    lact: dict[Atom, Atom] = {}
    ract: dict[Atom, Atom] = {}
    for a, b, s in p.fibers:
        for x in s:
            e = internal_element(a, b, x)
            for m in p.left.mors():
                if p.left.tgt(m) == a:
                    a2 = p.left.src(m)
                    lact[pair_atom(m, e)] = internal_element(a2, b, p.lact(m, b, x))
            for v in p.right.mors():
                if p.right.src(v) == b:
                    b2 = p.right.tgt(v)
                    ract[pair_atom(e, v)] = internal_element(a, b2, p.ract(a, x, v))
    return InternalProf(
        left,
        right,
        elements,
        FinMap(elements, left.objects, tuple(src_g)),
        FinMap(elements, right.objects, tuple(tgt_g)),
        FinMap(FinSet(tuple(lact)), elements, tuple(lact.items())),
        FinMap(FinSet(tuple(ract)), elements, tuple(ract.items())),
    )


def internal_prof_to_profunctor(ip: InternalProf) -> Profunctor:
    """Spread the element span back into fibers indexed by endpoint pairs."""
    left_cat = internal_to_fincat(ip.left)
    right_cat = internal_to_fincat(ip.right)
    fibers: dict[tuple[Atom, Atom], list[Atom]] = {}
    for x in ip.elements:
        fibers.setdefault((ip.src(x), ip.tgt(x)), []).append(x)
    lact: dict[tuple[Atom, Atom, Atom], Atom] = {}
    ract: dict[tuple[Atom, Atom, Atom], Atom] = {}
    for x in ip.elements:
        a, b = ip.src(x), ip.tgt(x)
        for s in ip.left.morphisms:
            if ip.left.tgt(s) == a and s != ip.left.ident(a):
                lact[(s, b, x)] = ip.act_left(s, x)
        for v in ip.right.morphisms:
            if ip.right.src(v) == b and v != ip.right.ident(b):
                ract[(a, x, v)] = ip.act_right(x, v)
    return prof_from_tables(left_cat, right_cat, fibers, lact, ract)


def internal_transformation(
    phi0: FinMap, f: InternalFunctor, g: InternalFunctor, weight: InternalProf
) -> ProCell:
    """The cell out of a unit induced by one weight element per object.

    phi0 assigns to each object a of the shared source an element over
    (f a, g a); acting on either side of a morphism must agree. The result
    is a cell from the source's hom profunctor to the weight's translation.
    """
    dom = f.source
    if g.source != dom:
        raise BoundaryMismatch("the two functors must share a source")
    if weight.left != f.target or weight.right != g.target:
        raise BoundaryMismatch("weight boundary does not match the functors")
    if phi0.source != dom.objects or phi0.target != weight.elements:
        raise BoundaryMismatch("component family must map objects to weight elements")
    for a in dom.objects:
        e = phi0(a)
        if weight.src(e) != f.on_ob(a) or weight.tgt(e) != g.on_ob(a):
            raise NaturalityFailure(f"component at {a.key} sits over the wrong pair")
    for s in dom.morphisms:
        acted_left = weight.act_left(f.on_mor(s), phi0(dom.tgt(s)))
        acted_right = weight.act_right(phi0(dom.src(s)), g.on_mor(s))
        if acted_left != acted_right:
            raise NaturalityFailure(f"naturality square fails at {s.key}")
    base = internal_to_fincat(dom)
    mapping: dict[tuple[Atom, Atom], dict[Atom, Atom]] = {}
    for a in base.objects:
        for a2 in base.objects:
            table = {s: weight.act_left(f.on_mor(s), phi0(a2)) for s in base.hom(a, a2)}
            if table:
                mapping[(a, a2)] = table
    return procell_from_tables(
        unit_prof(base),
        internal_prof_to_profunctor(weight),
        internal_functor_to_finfunctor(f),
        internal_functor_to_finfunctor(g),
        mapping,
    )


def procell_to_transformation(cell: ProCell, weight: InternalProf) -> FinMap:
    """Read the element family back off a unit-sourced cell at identities."""
    base = cell.hor_source.left
    if cell.hor_source != unit_prof(base):
        raise BoundaryMismatch("cell must start at a unit profunctor")
    if cell.hor_target != internal_prof_to_profunctor(weight):
        raise BoundaryMismatch("cell target does not match the weight")
    graph = tuple((a, cell.apply(a, a, base.ident(a))) for a in base.objects)
    return FinMap(base.objects, weight.elements, graph)


# -- the internal comma construction ------------------------------------------

@dataclass(frozen=True)
class InternalComma:
    """An internal comma category with its two projections and element map."""

    weight: InternalProf
    along: InternalFunctor
    comma: InternalCat
    proj_left: InternalFunctor
    proj_right: InternalFunctor
    pi0: FinMap

    def triple(self, ob: Atom) -> tuple[Atom, Atom, Atom]:
        return (self.proj_left.on_ob(ob), self.pi0(ob), self.proj_right.on_ob(ob))


def internal_comma(weight: InternalProf, along: InternalFunctor) -> InternalComma:
    """Comma of a weight with a functor into its right boundary.

    Objects form the wide pullback of the weight's legs with the functor's
    object map; a morphism between triples is a pair of morphisms whose two
    ways of moving the middle element agree. The element map pi0 is an
    internal transformation out of the comma's unit, with the defining
    agreement as its naturality square.
    """
    if along.target != weight.right:
        raise BoundaryMismatch("comma needs a functor into the weight's right side")
    a_cat, c_cat = weight.left, along.source
    objects: list[Atom] = []
    parts: dict[Atom, tuple[Atom, Atom, Atom]] = {}
    for x in weight.elements:
        for c in c_cat.objects:
            if weight.tgt(x) != along.on_ob(c):
                continue
            a = weight.src(x)
            p = Atom(f"({a.key},{x.key},{c.key})")
            objects.append(p)
            parts[p] = (a, x, c)
    mors: list[Atom] = []
    mor_parts: dict[Atom, tuple[Atom, Atom, Atom, Atom]] = {}
    for p in objects:
        a1, x1, c1 = parts[p]
        for q in objects:
            a2, x2, c2 = parts[q]
            for s in a_cat.morphisms:
                if a_cat.src(s) != a1 or a_cat.tgt(s) != a2:
                    continue
                for y in c_cat.morphisms:
                    if c_cat.src(y) != c1 or c_cat.tgt(y) != c2:
                        continue
                    if weight.act_right(x1, along.on_mor(y)) != weight.act_left(s, x2):
                        continue
                    m = Atom(f"({s.key},{y.key}):{p.key}->{q.key}")
                    mors.append(m)
                    mor_parts[m] = (s, y, p, q)
    morphisms = FinSet(tuple(mors))
    src_g = tuple((m, mor_parts[m][2]) for m in mors)
    tgt_g = tuple((m, mor_parts[m][3]) for m in mors)
    comp: dict[Atom, Atom] = {}
    for m1, (s1, y1, p, q1) in mor_parts.items():
        for m2, (s2, y2, q2, r) in mor_parts.items():
            if q1 != q2:
                continue
            s, y = a_cat.compose(s1, s2), c_cat.compose(y1, y2)
            comp[pair_atom(m1, m2)] = Atom(f"({s.key},{y.key}):{p.key}->{r.key}")
    unit_g = []
    for p in objects:
        a, _, c = parts[p]
        unit_g.append((p, Atom(f"({a_cat.ident(a).key},{c_cat.ident(c).key}):{p.key}->{p.key}")))
    obj_set = FinSet(tuple(objects))
    comma = InternalCat(
        obj_set,
        morphisms,
        FinMap(morphisms, obj_set, src_g),
        FinMap(morphisms, obj_set, tgt_g),
        FinMap(FinSet(tuple(comp)), morphisms, tuple(comp.items())),
        FinMap(obj_set, morphisms, tuple(unit_g)),
    )
    proj_left = InternalFunctor(
        comma,
        a_cat,
        FinMap(obj_set, a_cat.objects, tuple((p, parts[p][0]) for p in objects)),
        FinMap(morphisms, a_cat.morphisms, tuple((m, mor_parts[m][0]) for m in mors)),
    )
    proj_right = InternalFunctor(
        comma,
        c_cat,
        FinMap(obj_set, c_cat.objects, tuple((p, parts[p][2]) for p in objects)),
        FinMap(morphisms, c_cat.morphisms, tuple((m, mor_parts[m][1]) for m in mors)),
    )
    pi0 = FinMap(obj_set, weight.elements, tuple((p, parts[p][1]) for p in objects))
    return InternalComma(weight, along, comma, proj_left, proj_right, pi0)


def translate_internal_comma(ic: InternalComma) -> DoubleComma:
    """Repackage an internal comma in profunctor form for the comma checkers."""
    diagonal = internal_transformation(
        ic.pi0, ic.proj_left, ic.proj_right.then(ic.along), ic.weight
    )
    return DoubleComma(
        internal_prof_to_profunctor(ic.weight),
        internal_functor_to_finfunctor(ic.along),
        internal_to_fincat(ic.comma),
        internal_functor_to_finfunctor(ic.proj_left),
        internal_functor_to_finfunctor(ic.proj_right),
        diagonal,
    )
