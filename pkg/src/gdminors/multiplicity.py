"""Lattice-path counting and Hilbert multiplicity for triangle ladders.

Paths run from the top-right ladder corners to the bottom-left ones, one
step down or left at a time.  The number of pairwise disjoint path families
is a determinant of binomial path counts (Lindstrom-Gessel-Viennot), and
the multiplicity of the minor ideal is the sum of those determinants over
all choices of r-1 corners on each side.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Iterable

from .complexes import MinorsProblem, facets
from .errors import BudgetExceeded, ImpureWarning, InvalidParameters

Point = tuple[int, int]

DEFAULT_PATH_LENGTH_BUDGET = 12
DEFAULT_PRODUCT_BUDGET = 10**6


@dataclass(frozen=True)
class PathEndpoints:
    """Sources (top-right side) and targets (bottom-left side), pairwise indexed."""

    starts: tuple[Point, ...]
    ends: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "starts", tuple((int(a), int(b)) for a, b in self.starts))
        object.__setattr__(self, "ends", tuple((int(a), int(b)) for a, b in self.ends))
        if len(self.starts) != len(self.ends):
            raise InvalidParameters("need equally many starts and ends")
        if any(x < 0 or y < 0 for x, y in self.starts + self.ends):
            raise InvalidParameters("endpoint coordinates must be nonnegative")


def count_paths(src: Point, dst: Point) -> int:
    """Down-left walks from src to dst: C(drop + slide, drop), else 0."""
    drop = dst[0] - src[0]
    slide = src[1] - dst[1]
    if drop < 0 or slide < 0:
        return 0
    return math.comb(drop + slide, drop)


def bareiss_det(mat: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise InvalidParameters("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def path_count_matrix(E: PathEndpoints) -> list[list[int]]:
    return [[count_paths(b, a) for a in E.ends] for b in E.starts]


def lgv_det(E: PathEndpoints) -> int:
    """Determinant of the pairwise path-count matrix (exact, fraction-free)."""
    return bareiss_det(path_count_matrix(E))


def validate_endpoints(E: PathEndpoints, budget_paths: int = DEFAULT_PATH_LENGTH_BUDGET,
                       budget_product: int = DEFAULT_PRODUCT_BUDGET) -> bool:
    """Certify that only the identity pairing admits disjoint families.

    Both endpoint lists strictly increasing in row and column is sufficient
    (it is how ladder corners are laid out).  Anything else falls back to a
    brute-force comparison when affordable, with a warning either way.
    """

    def staircase(points):
        return all(
            p[0] < q[0] and p[1] < q[1] for p, q in zip(points, points[1:])
        )

    if staircase(E.starts) and staircase(E.ends):
        return True
    warnings.warn("endpoint system is not a staircase; certifying by brute force")
    try:
        return brute_nonintersecting(E, budget_paths, budget_product) == lgv_det(E)
    except BudgetExceeded:
        warnings.warn("endpoint system too large to certify by brute force")
        return False


def _enumerate_paths(src: Point, dst: Point) -> list[frozenset[Point]]:
    out: list[frozenset[Point]] = []
    path: list[Point] = []

    def rec(p: Point):
        path.append(p)
        if p == dst:
            out.append(frozenset(path))
        else:
            if p[0] < dst[0]:
                rec((p[0] + 1, p[1]))
            if p[1] > dst[1]:
                rec((p[0], p[1] - 1))
        path.pop()

    if dst[0] >= src[0] and dst[1] <= src[1]:
        rec(src)
    return out


def brute_nonintersecting(
    E: PathEndpoints,
    budget_paths: int = DEFAULT_PATH_LENGTH_BUDGET,
    budget_product: int = DEFAULT_PRODUCT_BUDGET,
) -> int:
    """Count pairwise-disjoint path families by direct enumeration."""
    lengths = [
        (a[0] - b[0]) + (b[1] - a[1]) for b, a in zip(E.starts, E.ends)
    ]
    if any(l > budget_paths for l in lengths if l >= 0):
        raise BudgetExceeded(f"a path of length {max(lengths)} exceeds the budget of {budget_paths}")
    per_pair = [_enumerate_paths(b, a) for b, a in zip(E.starts, E.ends)]
    product = 1
    for paths in per_pair:
        product *= max(len(paths), 1)
        if product > budget_product:
            raise BudgetExceeded(f"more than {budget_product} path tuples to enumerate")
    if any(not paths for paths in per_pair):
        return 0

    def rec(i: int, used: frozenset[Point]) -> int:
        if i == len(per_pair):
            return 1
        total = 0
        for pset in per_pair[i]:
            if used.isdisjoint(pset):
                total += rec(i + 1, used | pset)
        return total

    return rec(0, frozenset())


def corner_endpoints(n: int, m: int, T1: int, T2: int, a_idx: Iterable[int], b_idx: Iterable[int]) -> PathEndpoints:
    """Endpoint system for the chosen corner indices of size-T triangles."""
    starts = tuple((b, m - T2 - 1 + b) for b in b_idx)
    ends = tuple((n - T1 - 1 + a, a) for a in a_idx)
    return PathEndpoints(starts, ends)


def _validate_triangle_params(n: int, m: int, t1: int, t2: int, r: int) -> None:
    if n < 1 or m < 1:
        raise InvalidParameters(f"matrix dimensions must be positive, got {n}x{m}")
    for t in (t1, t2):
        if t < 0 or (t > 0 and t >= min(n, m)):
            raise InvalidParameters(f"triangle size {t} does not fit a {n}x{m} matrix")
    if not 1 <= r <= min(n, m):
        raise InvalidParameters(f"r must be within [1, {min(n, m)}], got {r}")


def multiplicity_formula(n: int, m: int, t1: int, t2: int, r: int) -> int:
    """Top face count f_d for triangle ladders, as a sum of path determinants.

    The triangles are first grown to size max(r-2, t); joining the zeroed
    corner cells back is a cone and does not change the top face count.
    """
    _validate_triangle_params(n, m, t1, t2, r)
    if r == 1:
        return 1
    T1 = max(r - 2, t1)
    T2 = max(r - 2, t2)
    top = n + m - T1 - T2 - 2
    k = r - 1
    lo, hi = T2 - m + 1, n - 1 - T1
    total = 0
    for a_idx in itertools.combinations(range(1, T1 + 2), k):
        for b_idx in itertools.combinations(range(1, T2 + 2), k):
            mat = [
                [
                    math.comb(top, m - 1 - T2 + b - a) if lo <= b - a <= hi else 0
                    for b in b_idx
                ]
                for a in a_idx
            ]
            total += bareiss_det(mat)
    return total


def multiplicity_by_count(P: MinorsProblem, **kwargs) -> int:
    """Number of top-dimension facets; warns when the complex is impure."""
    fs = facets(P, **kwargs)
    top = max(len(f) for f in fs)
    cnt = sum(1 for f in fs if len(f) == top)
    if cnt != len(fs):
        warnings.warn(ImpureWarning(cnt, len(fs)))
    return cnt
