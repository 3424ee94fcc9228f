"""Cohen-Macaulayness and vertex decomposability.

Three layers: a closed-form shape predicate (the ladders are triangles or
fit inside the (r-1) corner triangles), the Reisner-criterion homology
oracle over the rationals, and vertex-decomposability certificates built by
a corner-by-corner ladder recursion for triangle shapes, with an exponential
search as the independent fallback for small complexes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .complexes import (
    MinorsProblem,
    SimplicialComplex,
    _c_fits_triangle,
    facets,
    faces_of,
    maximalize,
    stanley_reisner,
)
from .errors import (
    BudgetExceeded,
    GDMinorsError,
    NotTriangleShape,
    RecursionBudget,
)
from .gdmatrix import Cell, GDMatrix, triangle_d, triangle_u, zero_corner_triangles
from .stairs import longest_diagonal, scrape

DEFAULT_FACE_BUDGET = 2**18
DEFAULT_VERTEX_BUDGET = 14
DEFAULT_NODE_BUDGET = 200_000


def _is_triangle_seq(c: tuple[int, ...]) -> bool:
    return c == tuple(range(len(c), 0, -1))


def triangle_or_contained(c: tuple[int, ...], r: int) -> bool:
    """Ladder heights form a triangle or fit inside the (r-1) triangle."""
    return _is_triangle_seq(c) or _c_fits_triangle(c, r - 1)


def is_cm_predicted(P: MinorsProblem) -> bool:
    """Shape characterization of Cohen-Macaulayness."""
    M, r = P.matrix, P.r
    return triangle_or_contained(M.c, r) and triangle_or_contained(
        tuple(reversed(M.d)), r
    )


# ---------------------------------------------------------------------------
# homology over the rationals (integer fraction-free elimination)


def _int_rank(mat: list[list[int]]) -> int:
    """Rank of an integer matrix by exact integer elimination."""
    a = [row[:] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        p = prow[col]
        for i in range(rank + 1, nrows):
            q = a[i][col]
            if q:
                row = [x * p - y * q for x, y in zip(a[i], prow)]
                g = 0
                for x in row:
                    g = math.gcd(g, x)
                a[i] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == nrows:
            break
    return rank


def _mod_rank(mat: list[list[int]], p: int) -> int:
    a = [[x % p for x in row] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        prow = [x * inv % p for x in a[rank]]
        a[rank] = prow
        for i in range(rank + 1, nrows):
            q = a[i][col]
            if q:
                a[i] = [(x - q * y) % p for x, y in zip(a[i], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _faces_by_dim(K: SimplicialComplex, face_budget: int) -> list[list[tuple]]:
    by_dim: dict[int, list[tuple]] = {}
    total = 0
    for face in faces_of(K):
        total += 1
        if total > face_budget:
            raise BudgetExceeded(f"complex has more than {face_budget} faces")
        by_dim.setdefault(len(face) - 1, []).append(tuple(sorted(face, key=repr)))
    out = []
    for d in range(-1, max(by_dim) + 1):
        out.append(sorted(by_dim.get(d, [])))
    return out


def reduced_homology_ranks(
    K: SimplicialComplex,
    face_budget: int = DEFAULT_FACE_BUDGET,
    prime: int | None = None,
) -> list[int]:
    """Ranks of reduced homology in dimensions -1 .. dim, over the rationals
    by default (boundary-matrix ranks, exact integer elimination)."""
    levels = _faces_by_dim(K, face_budget)  # levels[d + 1] = d-faces
    top = len(levels) - 2  # top dimension
    rank = [0] * (top + 2)  # rank[d + 1] = rank of boundary C_d -> C_{d-1}
    for d in range(0, top + 1):
        lower = {f: i for i, f in enumerate(levels[d])}
        upper = levels[d + 1]
        if not upper:
            continue
        rows = [[0] * len(upper) for _ in lower]
        for j, face in enumerate(upper):
            for i in range(len(face)):
                sub = face[:i] + face[i + 1 :]
                rows[lower[sub]][j] = 1 if i % 2 == 0 else -1
        if rows:
            rank[d] = _mod_rank(rows, prime) if prime else _int_rank(rows)
    out = []
    for d in range(-1, top + 1):
        f_d = len(levels[d + 1])
        below = rank[d] if d >= 0 else 0  # the map out of C_{-1} is zero
        out.append(f_d - below - rank[d + 1])
    return out


def reisner_cm(
    K: SimplicialComplex,
    face_budget: int = DEFAULT_FACE_BUDGET,
    prime: int | None = None,
) -> bool:
    """Reisner criterion: every face's link has vanishing reduced homology
    below the link's dimension."""
    seen: set[frozenset[frozenset]] = set()
    count = 0
    for F in faces_of(K):
        count += 1
        if count > face_budget:
            raise BudgetExceeded(f"complex has more than {face_budget} faces")
        lf = maximalize(facet - F for facet in K.facets if F <= facet)
        key = frozenset(lf)
        if key in seen:
            continue
        seen.add(key)
        d = max(len(f) for f in lf) - 1
        if d <= 0:
            continue
        if _component_count(lf) > 1:
            return False
        if d >= 2:
            ranks = reduced_homology_ranks(
                SimplicialComplex(lf), face_budget=face_budget, prime=prime
            )
            if any(ranks[1 + i] for i in range(d)):
                return False
    return True


def _component_count(facet_sets: Iterable[frozenset]) -> int:
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in facet_sets:
        for v in f:
            parent.setdefault(v, v)
        it = iter(f)
        try:
            first = find(next(it))
        except StopIteration:
            continue
        for v in it:
            parent[find(v)] = first
    return len({find(v) for v in parent})


# ---------------------------------------------------------------------------
# vertex decomposability: exponential search with memoization


_VD_MEMO: dict[tuple, bool] = {}


def _canon_key(facet_sets: Iterable[frozenset]) -> tuple:
    """Facet lists relabeled by first appearance; equal keys mean isomorphic."""
    fs = sorted(
        (tuple(sorted(f, key=repr)) for f in facet_sets),
        key=lambda t: tuple(repr(x) for x in t),
    )
    label: dict = {}
    for f in fs:
        for v in f:
            label.setdefault(v, len(label))
    return tuple(sorted(tuple(sorted(label[v] for v in f)) for f in fs))


def is_vertex_decomposable(
    K: SimplicialComplex, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> bool:
    """Search for a full deletion/link decomposition (pure at every step)."""
    support = frozenset().union(*K.facets)
    if len(support) > vertex_budget:
        raise BudgetExceeded(
            f"{len(support)} vertices exceed the search budget of {vertex_budget}"
        )
    return _vd_search(_canon_key(K.facets))


def _vd_search(key: tuple) -> bool:
    hit = _VD_MEMO.get(key)
    if hit is not None:
        return hit
    facet_sets = [frozenset(f) for f in key]
    if facet_sets == [frozenset()] or len(facet_sets) == 1:
        _VD_MEMO[key] = True
        return True
    result = False
    if len({len(f) for f in facet_sets}) == 1:
        vertices = sorted(frozenset().union(*facet_sets))
        for v in vertices:
            link_key = _canon_key(maximalize(f - {v} for f in facet_sets if v in f))
            if not _vd_search(link_key):
                continue
            del_key = _canon_key(maximalize(f - {v} for f in facet_sets))
            if _vd_search(del_key):
                result = True
                break
    _VD_MEMO[key] = result
    return result


# ---------------------------------------------------------------------------
# certificates for triangle shapes


@dataclass(frozen=True)
class LadderState:
    """A top-left ladder of decided vertices, split into deleted and linked."""

    ladder: frozenset[Cell]
    dset: frozenset[Cell]
    lset: frozenset[Cell]

    def __post_init__(self):
        if self.dset | self.lset != self.ladder or self.dset & self.lset:
            raise ValueError("dset and lset must partition the ladder")
        if _ladder_heights(self.dset) is None:
            raise ValueError("dset is not a ladder shape")


def _ladder_heights(cells: Iterable[Cell]) -> dict[int, int] | None:
    """Column heights if the cells form top segments with non-increasing
    heights, else None."""
    cols: dict[int, set[int]] = {}
    for x in cells:
        cols.setdefault(x.col, set()).add(x.row)
    heights: dict[int, int] = {}
    for col, rows in cols.items():
        h = len(rows)
        if rows != set(range(1, h + 1)):
            return None
        heights[col] = h
    if not heights:
        return {}
    last = max(heights)
    prev = None
    for col in range(1, last + 1):
        h = heights.get(col, 0)
        if prev is not None and h > prev:
            return None
        prev = h
    return heights


def _ladder_corners(M: GDMatrix, D: frozenset[Cell]) -> list[Cell]:
    """Nonzero cells just outside D along its boundary, by ascending row."""
    out = []
    for x in M.cells:
        if x in D:
            continue
        above_ok = x.row == 1 or Cell(x.row - 1, x.col) in D
        left_ok = x.col == 1 or Cell(x.row, x.col - 1) in D
        if above_ok and left_ok:
            out.append(x)
    out.sort()
    return out


class _CertBuilder:
    def __init__(self, node_budget: int):
        self.budget = node_budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise RecursionBudget(f"certificate exceeded {self.budget} nodes")

    def build(self, M: GDMatrix, r: int, state: LadderState, off: tuple[int, int]) -> dict:
        self._tick()
        D, L = state.dset, state.lset
        if r == 1:
            if L:
                raise GDMinorsError("linked vertices left over at an exhausted ideal")
            return {"kind": "empty"}
        universe = M.cells
        if longest_diagonal(universe) < r:
            rest = universe - state.ladder
            return {"kind": "simplex"} if rest else {"kind": "empty"}
        corners = _ladder_corners(M, D)
        pending = [x for x in corners if x not in L]
        if pending:
            v = pending[0]
            del_child = self.build(
                M, r, LadderState(state.ladder | {v}, D | {v}, L), off
            )
            link_child = self.build(
                M, r, LadderState(state.ladder | {v}, D, L | {v}), off
            )
            return {
                "kind": "vertex",
                "vertex": [v.row + off[0], v.col + off[1]],
                "del": del_child,
                "link": link_child,
            }
        # terminal: every corner of the deleted ladder has been linked
        row1 = {x for x in universe if x.row == 1}
        col1 = {x for x in universe if x.col == 1}
        if row1 <= D:
            return self.build(
                M.without_first_row(),
                r,
                _shift_state(state, drop_row=True),
                (off[0] + 1, off[1]),
            )
        if col1 <= D:
            return self.build(
                M.without_first_col(),
                r,
                _shift_state(state, drop_row=False),
                (off[0], off[1] + 1),
            )
        # strip the unique tendril through the linked corners, then drop to
        # (r-1) minors of the matrix without its first row
        all_facets = facets(MinorsProblem(M, r))
        candidates = [F for F in all_facets if L <= F and not (F & D)]
        if not candidates:
            raise GDMinorsError("no facet is compatible with the current ladder state")
        tendrils = {scrape(M, F) for F in candidates}
        if len(tendrils) != 1:
            raise GDMinorsError(
                f"tendril through the linked corners is not unique: {sorted(tendrils)}"
            )
        T = frozenset(next(iter(tendrils)))
        if not L <= T:
            raise GDMinorsError("linked corners fell outside the scraped tendril")
        union = state.ladder | T
        if _ladder_heights(union) is None:
            raise GDMinorsError("ladder plus tendril is not a ladder shape")
        apex = sorted(T - L)
        shifted = frozenset(Cell(x.row - 1, x.col) for x in union if x.row > 1)
        child = self.build(
            M.without_first_row(),
            r - 1,
            LadderState(shifted, shifted, frozenset()),
            (off[0] + 1, off[1]),
        )
        node = child
        for v in reversed(apex):
            self._tick()
            node = {
                "kind": "vertex",
                "vertex": [v.row + off[0], v.col + off[1]],
                "both": node,
            }
        return node


def _shift_state(state: LadderState, drop_row: bool) -> LadderState:
    def shift(cells):
        if drop_row:
            return frozenset(Cell(x.row - 1, x.col) for x in cells if x.row > 1)
        return frozenset(Cell(x.row, x.col - 1) for x in cells if x.col > 1)

    if drop_row and any(x.row == 1 for x in state.lset):
        raise GDMinorsError("linked corner in the dropped row")
    if not drop_row and any(x.col == 1 for x in state.lset):
        raise GDMinorsError("linked corner in the dropped column")
    return LadderState(shift(state.ladder), shift(state.dset), shift(state.lset))


def vd_certificate_triangles(
    P: MinorsProblem, node_budget: int = DEFAULT_NODE_BUDGET
) -> dict:
    """Vertex-decomposability certificate for triangle-shaped ladders.

    The corner triangle cells sit in every facet, so the tree starts with a
    run of cone vertices; the rest follows the ladder-state recursion.
    """
    M, r = P.matrix, P.r
    if not (
        triangle_or_contained(M.c, r)
        and triangle_or_contained(tuple(reversed(M.d)), r)
    ):
        raise NotTriangleShape(
            "ladders must be triangles or fit inside the (r-1) corner triangles"
        )
    builder = _CertBuilder(node_budget)
    if r == 1:
        tree: dict = {"kind": "empty"}
    else:
        enlarged = zero_corner_triangles(M, r)
        empty = LadderState(frozenset(), frozenset(), frozenset())
        tree = builder.build(enlarged, r, empty, (0, 0))
        apex = sorted(triangle_u(M, r - 1) | triangle_d(M, r - 1))
        for v in reversed(apex):
            tree = {"kind": "vertex", "vertex": [v.row, v.col], "both": tree}
    return {"matrix": M.spec_dict(), "r": r, "nodes": builder.nodes, "tree": tree}


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    failure: str | None = None

    def __bool__(self):
        return self.ok


def validate_certificate(P: MinorsProblem, cert: dict, **kwargs) -> CertificateCheck:
    """Replay a certificate against the actual complex.

    Checks purity at every node, that cone nodes really have equal deletion
    and link, and that the leaves are simplices or the empty-face complex.
    """
    tree = cert.get("tree", cert)
    return _replay(facets(P, **kwargs), tree, "root")


def _replay(facet_sets: list[frozenset], node: dict, path: str) -> CertificateCheck:
    def fail(reason: str) -> CertificateCheck:
        return CertificateCheck(False, f"{path}: {reason}")

    if len({len(f) for f in facet_sets}) > 1:
        return fail("complex is impure")
    kind = node.get("kind")
    if kind == "empty":
        if facet_sets != [frozenset()]:
            return fail("expected the empty-face complex")
        return CertificateCheck(True)
    if kind == "simplex":
        if len(facet_sets) != 1:
            return fail(f"expected a simplex, found {len(facet_sets)} facets")
        return CertificateCheck(True)
    if kind != "vertex":
        return fail(f"unknown node kind {kind!r}")
    v = Cell(*node["vertex"])
    if not any(v in f for f in facet_sets):
        return fail(f"vertex {tuple(v)} is in no facet")
    del_facets = maximalize(f - {v} for f in facet_sets)
    link_facets = maximalize(f - {v} for f in facet_sets if v in f)
    if "both" in node:
        if set(del_facets) != set(link_facets):
            return fail(f"deletion and link differ at cone vertex {tuple(v)}")
        return _replay(del_facets, node["both"], f"{path}/cone{tuple(v)}")
    res = _replay(del_facets, node["del"], f"{path}/del{tuple(v)}")
    if not res:
        return res
    return _replay(link_facets, node["link"], f"{path}/link{tuple(v)}")


def complex_of(P: MinorsProblem, **kwargs) -> SimplicialComplex:
    """Convenience re-export of the Stanley-Reisner complex."""
    return stanley_reisner(P, **kwargs)
