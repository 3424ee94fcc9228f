"""Generalized diagonal (GD) matrices.

A GD matrix is a generic n x m matrix with two staircase regions of zeros:
a ladder L1 anchored to the bottom-left corner (column heights c_1 >= c_2 >=
... >= c_s) and a ladder L2 anchored to the top-right corner (column depths
d over the last |d| columns, non-decreasing left to right).  Everything
downstream operates on the *cell universe*, the set of nonzero positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import CellIsZero, ResultDegenerate, ValidationError


class Cell(NamedTuple):
    """A 1-indexed (row, col) matrix position."""

    row: int
    col: int


def lex_key(cell: Cell) -> tuple[int, int]:
    """Sort key whose ascending order lists entries from greatest to least.

    Entries higher in the matrix are greater; within a row, entries further
    left are greater.
    """
    return (cell.row, cell.col)


def succ_key(cell: Cell) -> tuple[int, int]:
    """Sort key for the scraping order: leftmost column first, then lowest row."""
    return (cell.col, -cell.row)


def lex_compare(a: Cell, b: Cell) -> int:
    """Three-way compare under the entry order; 1 means a is the greater entry."""
    ka, kb = lex_key(a), lex_key(b)
    return (ka < kb) - (ka > kb)


def succ_compare(a: Cell, b: Cell) -> int:
    """Three-way compare under the scraping order; 1 means a comes first."""
    ka, kb = succ_key(a), succ_key(b)
    return (ka < kb) - (ka > kb)


def _non_increasing(seq: Sequence[int]) -> bool:
    return all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))


def _non_decreasing(seq: Sequence[int]) -> bool:
    return all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))


@dataclass(frozen=True)
class GDMatrix:
    """Dimensions plus the two ladder shapes; equality is structural.

    ``c`` holds the L1 column heights for columns 1..len(c); ``d`` holds the
    L2 column depths for the *last* len(d) columns, left to right.  The
    constructor only checks internal consistency; use :func:`make_gd` or
    :func:`make_triangles` to enforce the full shape constraints.  Cropped
    submatrices may carry degenerate ladders (a fully zeroed column), which
    the factories reject but the algorithms handle through the universe.
    """

    n: int
    m: int
    c: tuple[int, ...] = ()
    d: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "d", tuple(self.d))
        if self.n < 1 or self.m < 1:
            raise ValueError(f"matrix dimensions must be positive: {self.n}x{self.m}")
        if len(self.c) > self.m or len(self.d) > self.m:
            raise ValueError("ladder wider than the matrix")
        if any(not 1 <= h <= self.n for h in self.c) or not _non_increasing(self.c):
            raise ValueError(f"c must be non-increasing within [1, n]: {self.c}")
        if any(not 1 <= h <= self.n for h in self.d) or not _non_decreasing(self.d):
            raise ValueError(f"d must be non-decreasing within [1, n]: {self.d}")

    @classmethod
    def from_heights(cls, n: int, m: int, l1_heights: Sequence[int], l2_depths: Sequence[int]) -> "GDMatrix":
        """Build from per-column height/depth arrays (length m, zeros allowed)."""
        h = [min(max(int(x), 0), n) for x in l1_heights]
        g = [min(max(int(x), 0), n) for x in l2_depths]
        if len(h) != m or len(g) != m:
            raise ValueError("height arrays must have one entry per column")
        if not _non_increasing(h) or not _non_decreasing(g):
            raise ValueError("height arrays must be monotone ladder shapes")
        c = tuple(x for x in h if x > 0)
        d = tuple(x for x in g if x > 0)
        return cls(n, m, c, d)

    @cached_property
    def l1_heights(self) -> tuple[int, ...]:
        """Per-column L1 height, length m (0 where the ladder is absent)."""
        return self.c + (0,) * (self.m - len(self.c))

    @cached_property
    def l2_depths(self) -> tuple[int, ...]:
        """Per-column L2 depth, length m (0 where the ladder is absent)."""
        return (0,) * (self.m - len(self.d)) + self.d

    def is_nonzero(self, row: int, col: int) -> bool:
        if not (1 <= row <= self.n and 1 <= col <= self.m):
            return False
        if row > self.n - self.l1_heights[col - 1]:
            return False
        return row > self.l2_depths[col - 1]

    @cached_property
    def cells(self) -> frozenset[Cell]:
        """The nonzero-cell universe; its size is the number of variables."""
        return frozenset(
            Cell(i, j)
            for j in range(1, self.m + 1)
            for i in range(self.l2_depths[j - 1] + 1, self.n - self.l1_heights[j - 1] + 1)
        )

    @cached_property
    def cell_list(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))

    @cached_property
    def l1_cells(self) -> frozenset[Cell]:
        return frozenset(
            Cell(i, j)
            for j in range(1, self.m + 1)
            for i in range(self.n - self.l1_heights[j - 1] + 1, self.n + 1)
        )

    @cached_property
    def l2_cells(self) -> frozenset[Cell]:
        return frozenset(
            Cell(i, j)
            for j in range(1, self.m + 1)
            for i in range(1, self.l2_depths[j - 1] + 1)
        )

    def without_first_row(self) -> "GDMatrix":
        return GDMatrix.from_heights(
            self.n - 1,
            self.m,
            [min(h, self.n - 1) for h in self.l1_heights],
            [max(g - 1, 0) for g in self.l2_depths],
        )

    def without_first_col(self) -> "GDMatrix":
        return GDMatrix.from_heights(
            self.n, self.m - 1, self.l1_heights[1:], self.l2_depths[1:]
        )

    def crop(self, r0: int, c0: int, r1: int, c1: int) -> "GDMatrix":
        """Submatrix on rows r0..r1 and columns c0..c1 (inclusive, 1-indexed)."""
        if not (1 <= r0 <= r1 <= self.n and 1 <= c0 <= c1 <= self.m):
            raise ValueError(f"bad crop window ({r0},{c0})..({r1},{c1})")
        n2 = r1 - r0 + 1
        heights, depths = [], []
        for j in range(c0, c1 + 1):
            top = self.n - self.l1_heights[j - 1] + 1  # first zero row of L1
            heights.append(max(0, r1 - max(r0, top) + 1))
            depths.append(max(0, min(r1, self.l2_depths[j - 1]) - r0 + 1))
        return GDMatrix.from_heights(n2, c1 - c0 + 1, heights, depths)

    def spec_dict(self) -> dict:
        """Canonical serialized form."""
        return {"n": self.n, "m": self.m, "c": list(self.c), "d": list(self.d)}


def make_gd(n: int, m: int, c: Iterable[int] = (), d: Iterable[int] = ()) -> GDMatrix:
    """Validated constructor; collects every violated shape constraint."""
    c = tuple(int(x) for x in c)
    d = tuple(int(x) for x in d)
    violations = []
    if n < 1 or m < 1:
        violations.append(f"BadDimensions: matrix must be at least 1x1, got {n}x{m}")
        raise ValidationError(violations)
    if any(x < 1 for x in c):
        violations.append(f"NonPositiveLadder: c entries must be positive, got {c}")
    if any(x < 1 for x in d):
        violations.append(f"NonPositiveLadder: d entries must be positive, got {d}")
    if not _non_increasing(c):
        violations.append(f"NonMonotoneLadder: c must be non-increasing, got {c}")
    if not _non_decreasing(d):
        violations.append(f"NonMonotoneLadder: d must be non-decreasing, got {d}")
    if c and max(c) >= n:
        violations.append(f"LadderTooTall: c_1 = {max(c)} must be < n = {n}")
    if d and max(d) >= n:
        violations.append(f"LadderTooTall: d_m = {max(d)} must be < n = {n}")
    if len(c) >= m:
        violations.append(f"LadderTooWide: len(c) = {len(c)} must be < m = {m}")
    if len(d) >= m:
        violations.append(f"LadderTooWide: d may not cover column 1 (len(d) = {len(d)}, m = {m})")
    if violations:
        raise ValidationError(violations)
    return GDMatrix(n, m, c, d)


def make_triangles(n: int, m: int, t1: int, t2: int) -> GDMatrix:
    """GD matrix whose ladders are triangles of sizes t1 (bottom-left) and t2 (top-right)."""
    if t1 < 0 or t2 < 0:
        raise ValidationError([f"BadTriangle: triangle sizes must be nonnegative, got ({t1}, {t2})"])
    c = tuple(range(t1, 0, -1))
    d = tuple(range(1, t2 + 1))
    return make_gd(n, m, c, d)


def triangle_spec(n: int, m: int, t1: int, t2: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The (c, d) ladder sequences of the triangle shape, without validation."""
    return tuple(range(t1, 0, -1)), tuple(range(1, t2 + 1))


def parse_matrix_spec(obj: dict) -> GDMatrix:
    """Parse the canonical JSON form or the triangle shorthand."""
    if not isinstance(obj, dict) or "n" not in obj or "m" not in obj:
        raise ValidationError(["BadSpec: matrix spec needs at least n and m"])
    has_t = "t1" in obj or "t2" in obj
    has_cd = "c" in obj or "d" in obj
    if has_t and has_cd:
        raise ValidationError(["BadSpec: give either c/d ladders or t1/t2 triangles, not both"])
    n, m = int(obj["n"]), int(obj["m"])
    if has_t:
        return make_triangles(n, m, int(obj.get("t1", 0)), int(obj.get("t2", 0)))
    return make_gd(n, m, obj.get("c", ()), obj.get("d", ()))


def _require_nonzero(M: GDMatrix, cell: Cell) -> None:
    if not M.is_nonzero(cell[0], cell[1]):
        raise CellIsZero(f"cell {tuple(cell)} is not a nonzero cell of the {M.n}x{M.m} matrix")


def upper_set(M: GDMatrix, y: Cell) -> frozenset[Cell]:
    """B(y): nonzero cells weakly above and weakly right of y, excluding y."""
    _require_nonzero(M, y)
    return frozenset(
        x for x in M.cells if x != y and x.row <= y[0] and x.col >= y[1]
    )


def _lower_set(M: GDMatrix, y: Cell) -> frozenset[Cell]:
    """Transposed B(y): nonzero cells weakly below and weakly left of y, excluding y."""
    _require_nonzero(M, y)
    return frozenset(
        x for x in M.cells if x != y and x.row >= y[0] and x.col <= y[1]
    )


def corners_l2(M: GDMatrix) -> list[Cell]:
    """Cells with nothing above-right, in scraping order (leftmost column first)."""
    out = [x for x in M.cells if not upper_set(M, x)]
    out.sort(key=succ_key)
    return out


def corners_l1(M: GDMatrix) -> list[Cell]:
    """Cells with nothing below-left, ordered by row ascending."""
    out = [x for x in M.cells if not _lower_set(M, x)]
    out.sort()
    return out


def triangle_u(M: GDMatrix, k: int) -> frozenset[Cell]:
    """Nonzero cells of the k x k upper-right corner triangle."""
    return frozenset(x for x in M.cells if x.col - x.row >= M.m - k)


def triangle_d(M: GDMatrix, k: int) -> frozenset[Cell]:
    """Nonzero cells of the k x k lower-left corner triangle."""
    return frozenset(x for x in M.cells if x.row - x.col >= M.n - k)


def is_degenerate(M: GDMatrix) -> bool:
    """True when the ladders jointly zero out a whole row or column."""
    rows = {c.row for c in M.cells}
    cols = {c.col for c in M.cells}
    return len(rows) < M.n or len(cols) < M.m


def pinch_points(M: GDMatrix) -> list[tuple[int, int]]:
    """Windows (i, j) with a contiguous 2x2 submatrix [[*, 0], [0, *]]."""
    pts = []
    for i in range(1, M.n):
        for j in range(1, M.m):
            if (
                M.is_nonzero(i, j)
                and M.is_nonzero(i + 1, j + 1)
                and not M.is_nonzero(i, j + 1)
                and not M.is_nonzero(i + 1, j)
            ):
                pts.append((i, j))
    pts.sort()
    return pts


def is_unpinched(M: GDMatrix) -> bool:
    return not pinch_points(M)


def unpinched_blocks(M: GDMatrix) -> list[GDMatrix]:
    """Block-diagonal decomposition into unpinched GD matrices."""
    pts = pinch_points(M)
    # pinches are strictly increasing in both coordinates; each one splits the
    # nonzero cells into a top-left and a bottom-right part
    bounds = [(0, 0)] + pts + [(M.n, M.m)]
    blocks = []
    for (i0, j0), (i1, j1) in zip(bounds, bounds[1:]):
        blocks.append(M.crop(i0 + 1, j0 + 1, i1, j1))
    return blocks


def zero_corner_triangles(M: GDMatrix, r: int) -> GDMatrix:
    """Enlarge the ladders so they contain the (r-1) corner triangles.

    Idempotent and only ever grows ladders.  Raises ResultDegenerate when the
    enlargement would violate the shape constraints, which happens exactly
    when the triangles do not fit the matrix.
    """
    if r < 1:
        raise ResultDegenerate(f"r must be at least 1, got {r}")
    t = r - 1
    if t >= M.n or t >= M.m:
        raise ResultDegenerate(f"a {t}x{t} corner triangle does not fit a {M.n}x{M.m} matrix")
    tri_c, tri_d = triangle_spec(M.n, M.m, t, t)
    tri = GDMatrix(M.n, M.m, tri_c, tri_d)
    heights = [max(a, b) for a, b in zip(M.l1_heights, tri.l1_heights)]
    depths = [max(a, b) for a, b in zip(M.l2_depths, tri.l2_depths)]
    out = GDMatrix.from_heights(M.n, M.m, heights, depths)
    if (out.c and out.c[0] >= M.n) or (out.d and out.d[-1] >= M.n):
        raise ResultDegenerate("enlarged ladder reaches full column height")
    if len(out.c) >= M.m or len(out.d) >= M.m:
        raise ResultDegenerate("enlarged ladder covers every column")
    return out
