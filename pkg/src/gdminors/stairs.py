"""Chains, stairs and the scraping operator on cell sets.

A k-diagonal (k-chain) is a set of k cells strictly increasing in both row
and column.  A stair is a chain-free set (an antichain of the dominance
order); a k-stair is a set coverable by k stairs and no fewer.  Scraping
peels the top-left perimeter off a set, dropping the longest-chain length by
exactly one.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable

from .errors import CellIsZero, NotMaximalKStair
from .gdmatrix import Cell, GDMatrix, succ_key, triangle_d, triangle_u


def longest_diagonal(cells: Iterable[Cell]) -> int:
    """Length of the longest subset strictly increasing in both coordinates.

    Patience sorting on columns after ordering by (row asc, col desc), which
    makes strict column increase imply strict row increase.
    """
    order = sorted(cells, key=lambda c: (c[0], -c[1]))
    if not order:
        return 0
    tails: list[int] = []
    for cell in order:
        i = bisect.bisect_left(tails, cell[1])
        if i == len(tails):
            tails.append(cell[1])
        else:
            tails[i] = cell[1]
    return len(tails)


def satisfies_f(cells: Iterable[Cell], k: int) -> bool:
    """Condition F_k: the set contains no k-diagonal."""
    return longest_diagonal(cells) < k


def _check_universe(M: GDMatrix, cells: Iterable[Cell]) -> frozenset[Cell]:
    cs = frozenset(Cell(*c) for c in cells)
    bad = sorted(c for c in cs if not M.is_nonzero(c.row, c.col))
    if bad:
        raise CellIsZero(f"cells outside the nonzero universe: {[tuple(c) for c in bad]}")
    return cs


def scrape(M: GDMatrix, C: Iterable[Cell]) -> tuple[Cell, ...]:
    """The scraped top-left perimeter S(C), greatest-first in scraping order.

    Start from the scraping-order maximum of C; from each picked cell move to
    the scraping-order maximum of the cells of C weakly above and weakly to
    the right; stop when there are none.
    """
    cs = _check_universe(M, C)
    if not cs:
        return ()
    y = min(cs, key=succ_key)
    out = [y]
    while True:
        cand = [z for z in cs if z != y and z.row <= y.row and z.col >= y.col]
        if not cand:
            return tuple(out)
        y = min(cand, key=succ_key)
        out.append(y)


def stair_number(M: GDMatrix, C: Iterable[Cell]) -> int:
    """Minimal number of stairs covering C.

    Equals the longest-chain length (Mirsky); the brute-force minimal-cover
    oracle lives in the test tree and pins the equivalence.
    """
    return longest_diagonal(_check_universe(M, C))


def is_maximal_kstair(M: GDMatrix, C: Iterable[Cell], k: int) -> bool:
    """True iff C is a k-stair and every added cell creates a (k+1)-diagonal."""
    cs = _check_universe(M, C)
    if longest_diagonal(cs) != k:
        return False
    return all(longest_diagonal(cs | {x}) == k + 1 for x in M.cells - cs)


@dataclass(frozen=True)
class StairDecomposition:
    """Ordered stairs obtained by repeated scraping, plus their tendrils."""

    stairs: tuple[tuple[Cell, ...], ...]
    tendrils: tuple[frozenset[Cell], ...]


def stair_decomposition(M: GDMatrix, C: Iterable[Cell], k: int) -> StairDecomposition:
    """Scrape a maximal k-stair into k stairs with pairwise disjoint tendrils.

    The j-th tendril is the j-th scraped stair minus the (k-1) corner
    triangles of the matrix.
    """
    cs = _check_universe(M, C)
    if not is_maximal_kstair(M, cs, k):
        raise NotMaximalKStair(f"the given {len(cs)}-cell set is not a maximal {k}-stair")
    stairs: list[tuple[Cell, ...]] = []
    rest = cs
    for _ in range(k):
        s = scrape(M, rest)
        stairs.append(s)
        rest = rest - frozenset(s)
    if rest:
        raise NotMaximalKStair(f"scraping left {len(rest)} cells after {k} rounds")
    corner = triangle_u(M, k - 1) | triangle_d(M, k - 1)
    tendrils = tuple(frozenset(s) - corner for s in stairs)
    return StairDecomposition(tuple(stairs), tendrils)
