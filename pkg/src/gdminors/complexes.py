"""Stanley-Reisner complexes of minor ideals.

For the ideal of r x r minors of a GD matrix under the diagonal term order,
the faces of the associated complex are exactly the cell sets with no
r-diagonal, and the facets are the maximal (r-1)-stairs.  Two independent
facet engines are provided: a branch-and-bound search over the universe
(GENERAL) and, for triangle ladders, an enumeration of nonintersecting
corner-to-corner path families (PATHS).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    InvalidParameters,
    NotAFace,
    NotTriangleShape,
    UniverseTooLarge,
    VertexClash,
)
from .gdmatrix import (
    Cell,
    GDMatrix,
    corners_l1,
    corners_l2,
    triangle_d,
    triangle_u,
    zero_corner_triangles,
)
from .stairs import _check_universe, longest_diagonal

DEFAULT_CELL_BUDGET = 36
DEFAULT_FACE_BUDGET = 24


@dataclass(frozen=True)
class MinorsProblem:
    """A GD matrix together with the minor size r."""

    matrix: GDMatrix
    r: int

    def __post_init__(self):
        lo, hi = 1, min(self.matrix.n, self.matrix.m)
        if not lo <= self.r <= hi:
            raise InvalidParameters(f"r must be within [1, {hi}], got {self.r}")


def is_face(P: MinorsProblem, C: Iterable[Cell]) -> bool:
    """Faces are the subsets of the universe with no r-diagonal."""
    return longest_diagonal(_check_universe(P.matrix, C)) < P.r


def _facet_key(f: frozenset) -> tuple:
    return tuple(sorted(f, key=repr))


def maximalize(sets: Iterable[frozenset]) -> list[frozenset]:
    out: list[frozenset] = []
    for s in sorted(set(sets), key=len, reverse=True):
        if not any(s < t for t in out):
            out.append(s)
    return out


def _chain_tables(S: list[Cell]) -> tuple[list[int], list[int]]:
    """Longest chain ending (f) and starting (g) at each cell of sorted S."""
    k = len(S)
    f = [1] * k
    g = [1] * k
    for i in range(k):
        a = S[i]
        best = 0
        for j in range(i):
            b = S[j]
            if b.row < a.row and b.col < a.col and f[j] > best:
                best = f[j]
        f[i] = best + 1
    for i in range(k - 1, -1, -1):
        a = S[i]
        best = 0
        for j in range(i + 1, k):
            b = S[j]
            if b.row > a.row and b.col > a.col and g[j] > best:
                best = g[j]
        g[i] = best + 1
    return f, g


def _facets_general(M: GDMatrix, r: int, cell_budget: int) -> list[frozenset[Cell]]:
    """Enumerate the inclusion-maximal r-diagonal-free sets (Bron-Kerbosch style)."""
    cells = list(M.cell_list)
    if len(cells) > cell_budget:
        raise UniverseTooLarge(
            f"universe has {len(cells)} cells, above the budget of {cell_budget}"
        )
    out: list[frozenset[Cell]] = []
    limit = r - 1

    def extend(S: list[Cell], P: list[Cell], X: list[Cell]) -> None:
        if not P:
            if not X:
                out.append(frozenset(S))
            return
        P = list(P)
        X = list(X)
        while P:
            x = P.pop()
            S2 = sorted(S + [x])
            f, g = _chain_tables(S2)

            def fits(y: Cell) -> bool:
                up = 0
                dn = 0
                for j, s in enumerate(S2):
                    if s.row < y.row and s.col < y.col:
                        if f[j] > up:
                            up = f[j]
                    elif s.row > y.row and s.col > y.col:
                        if g[j] > dn:
                            dn = g[j]
                return up + 1 + dn <= limit

            extend(S2, [y for y in P if fits(y)], [y for y in X if fits(y)])
            X.append(x)

    extend([], cells, [])
    return out


def _is_triangle_c(c: tuple[int, ...]) -> bool:
    return c == tuple(range(len(c), 0, -1))


def _is_triangle_d(d: tuple[int, ...]) -> bool:
    return d == tuple(range(1, len(d) + 1))


def paths_engine_applicable(M: GDMatrix, r: int) -> bool:
    """True when the corner-enlarged ladders are triangles."""
    try:
        Xp = zero_corner_triangles(M, r)
    except Exception:
        return False
    return _is_triangle_c(Xp.c) and _is_triangle_d(Xp.d)


def _monotone_paths(M: GDMatrix, src: Cell, dst: Cell, used: set[Cell]):
    """All down-left walks of nonzero cells from src to dst avoiding used cells."""
    if src.row > dst.row or src.col < dst.col:
        return
    path: list[Cell] = []

    def rec(p: Cell):
        if p in used or not M.is_nonzero(p.row, p.col):
            return
        path.append(p)
        if p == dst:
            yield tuple(path)
        else:
            if p.row < dst.row:
                yield from rec(Cell(p.row + 1, p.col))
            if p.col > dst.col:
                yield from rec(Cell(p.row, p.col - 1))
        path.pop()

    yield from rec(src)


def _facets_paths(M: GDMatrix, r: int) -> list[frozenset[Cell]]:
    """Facets as unions of r-1 disjoint corner-to-corner stairs.

    Runs on the matrix whose ladders are enlarged to contain the (r-1)
    triangles; the cells zeroed by the enlargement are joined back into
    every facet afterwards.
    """
    Xp = zero_corner_triangles(M, r)
    if not (_is_triangle_c(Xp.c) and _is_triangle_d(Xp.d)):
        raise NotTriangleShape(
            "path enumeration needs ladders that enlarge to corner triangles"
        )
    rejoin = triangle_u(M, r - 1) | triangle_d(M, r - 1)
    starts = corners_l2(Xp)
    ends = corners_l1(Xp)
    k = r - 1
    out: set[frozenset[Cell]] = set()

    def family(idx: int, pairs, used: set[Cell], acc: list[Cell]) -> None:
        if idx == len(pairs):
            out.add(frozenset(acc) | rejoin)
            return
        src, dst = pairs[idx]
        for path in _monotone_paths(Xp, src, dst, used):
            used.update(path)
            acc.extend(path)
            family(idx + 1, pairs, used, acc)
            del acc[len(acc) - len(path):]
            used.difference_update(path)

    for K in itertools.combinations(starts, k):
        for J in itertools.combinations(ends, k):
            # nonintersecting families pair the corners in order
            family(0, list(zip(K, J)), set(), [])
    return list(out)


def facets(
    P: MinorsProblem,
    engine: str = "auto",
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> list[frozenset[Cell]]:
    """All facets, in lexicographic order of their sorted cell lists.

    With r = 1 the complex is {empty set}; when the universe has no
    r-diagonal at all the ideal is zero and the single facet is the whole
    universe.
    """
    M, r = P.matrix, P.r
    if r == 1:
        return [frozenset()]
    universe = M.cells
    if longest_diagonal(universe) < r:
        return [frozenset(universe)]
    if engine == "auto":
        engine = "paths" if paths_engine_applicable(M, r) else "general"
    if engine == "paths":
        out = _facets_paths(M, r)
    elif engine == "general":
        out = _facets_general(M, r, cell_budget)
    else:
        raise InvalidParameters(f"unknown facet engine {engine!r}")
    return sorted(out, key=_facet_key)


def dimension(P: MinorsProblem, **kwargs) -> int:
    return max(len(f) for f in facets(P, **kwargs)) - 1


def height(P: MinorsProblem, **kwargs) -> int:
    """Codimension: universe size minus (dimension + 1)."""
    return len(P.matrix.cells) - (dimension(P, **kwargs) + 1)


def en(n: int, m: int, r: int) -> int:
    """Height of the r-minors of a generic n x m matrix."""
    return (n - r + 1) * (m - r + 1)


def ens(n: int, r: int) -> int:
    """Height of the r-minors of a generic symmetric n x n matrix."""
    a = n - r + 2
    return a * (a - 1) // 2 if a >= 2 else 0


def height_formula_triangles(n: int, m: int, t1: int, t2: int, r: int) -> int:
    """Closed form for triangle ladders, clamped at 0 in zero-ideal territory."""
    return max(0, en(n, m, r) - ens(t1, r) - ens(t2, r))


def is_pure(P: MinorsProblem, **kwargs) -> bool:
    sizes = {len(f) for f in facets(P, **kwargs)}
    return len(sizes) <= 1


def _corners_on_one_diagonal(corners: list[Cell]) -> bool:
    return len({x.row - x.col for x in corners}) <= 1


def _c_fits_triangle(c: tuple[int, ...], t: int) -> bool:
    """Ladder heights fit inside a t x t corner triangle."""
    return all(h <= t - i for i, h in enumerate(c))


def is_pure_predicted(P: MinorsProblem) -> bool:
    """Corner-diagonal purity criterion (equivalent to purity when r = 2)."""
    M, r = P.matrix, P.r
    l1_ok = _corners_on_one_diagonal(corners_l1(M)) or _c_fits_triangle(M.c, r - 1)
    e = tuple(reversed(M.d))  # L2 read from the right behaves like an L1 ladder
    l2_ok = _corners_on_one_diagonal(corners_l2(M)) or _c_fits_triangle(e, r - 1)
    return l1_ok and l2_ok


class SimplicialComplex:
    """An explicit simplicial complex given by inclusion-maximal facets."""

    __slots__ = ("vertices", "facets")

    def __init__(self, facets: Iterable[Iterable], vertices: Iterable | None = None):
        fs = maximalize(frozenset(f) for f in facets)
        if not fs:
            raise ValueError("a complex needs at least the empty face")
        object.__setattr__(self, "facets", tuple(sorted(fs, key=_facet_key)))
        support = frozenset().union(*self.facets)
        verts = frozenset(vertices) if vertices is not None else support
        if not support <= verts:
            raise ValueError("facets use vertices outside the vertex set")
        object.__setattr__(self, "vertices", verts)

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.facets == other.facets
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.vertices, self.facets))

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def has_face(self, F: Iterable) -> bool:
        F = frozenset(F)
        return any(F <= facet for facet in self.facets)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1


def stanley_reisner(P: MinorsProblem, **kwargs) -> SimplicialComplex:
    """The complex of the initial ideal of the r x r minors."""
    return SimplicialComplex(facets(P, **kwargs), vertices=P.matrix.cells)


def link(K: SimplicialComplex, F: Iterable) -> SimplicialComplex:
    F = frozenset(F)
    if not K.has_face(F):
        raise NotAFace(f"{sorted(F, key=repr)} is not a face")
    return SimplicialComplex(
        (facet - F for facet in K.facets if F <= facet), vertices=K.vertices - F
    )


def deletion(K: SimplicialComplex, F: Iterable) -> SimplicialComplex:
    F = frozenset(F)
    return SimplicialComplex((facet - F for facet in K.facets), vertices=K.vertices - F)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if K1.vertices & K2.vertices:
        raise VertexClash("join requires disjoint vertex sets")
    return SimplicialComplex(
        (f1 | f2 for f1 in K1.facets for f2 in K2.facets),
        vertices=K1.vertices | K2.vertices,
    )


def faces_of(K: SimplicialComplex):
    """Yield every face (the empty face included) exactly once."""
    verts = sorted(K.vertices, key=repr)
    facs = K.facets

    def rec(S: tuple, supporting: list[frozenset], start: int):
        yield frozenset(S)
        for i in range(start, len(verts)):
            v = verts[i]
            sup2 = [f for f in supporting if v in f]
            if sup2:
                yield from rec(S + (v,), sup2, i + 1)

    yield from rec((), list(facs), 0)


def f_vector(
    obj: MinorsProblem | SimplicialComplex,
    face_budget: int = DEFAULT_FACE_BUDGET,
    **kwargs,
) -> list[int]:
    """Face counts by dimension, f_0 .. f_dim (the empty face is left out)."""
    if isinstance(obj, MinorsProblem):
        M, r = obj.matrix, obj.r
        cells = list(M.cell_list)
        if len(cells) > face_budget:
            raise UniverseTooLarge(
                f"universe has {len(cells)} cells, above the f-vector budget of {face_budget}"
            )
        counts: dict[int, int] = {}
        limit = r - 1

        def rec(S: list[Cell], start: int):
            if S:
                counts[len(S) - 1] = counts.get(len(S) - 1, 0) + 1
            f, g = _chain_tables(S)
            for i in range(start, len(cells)):
                y = cells[i]
                up = max((f[j] for j, s in enumerate(S) if s.row < y.row and s.col < y.col), default=0)
                dn = max((g[j] for j, s in enumerate(S) if s.row > y.row and s.col > y.col), default=0)
                if up + 1 + dn <= limit:
                    rec(S + [y], i + 1)  # cells come in sorted order already

        rec([], 0)
        return [counts.get(d, 0) for d in range(max(counts, default=-1) + 1)]
    counts = {}
    for face in faces_of(obj):
        if face:
            counts[len(face) - 1] = counts.get(len(face) - 1, 0) + 1
    return [counts.get(d, 0) for d in range(max(counts, default=-1) + 1)]
