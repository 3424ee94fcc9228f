"""Exact multivariate polynomials over the rationals and desk-scale
verification that the r x r minors of a GD matrix form a Groebner basis.

Variables are matrix cells, ordered entry-wise (top rows first, then left
columns first) and extended lexicographically to monomials.  Coefficients
stay integral throughout minor expansion and S-pair reduction because every
nonzero minor is monic; exact rationals appear only if a caller feeds
non-monic input.  An optional prime-field mode reruns the arithmetic mod p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable

from .complexes import MinorsProblem
from .errors import BadIndex, BudgetExceeded, ZeroPolynomial
from .gdmatrix import Cell, GDMatrix, lex_key

DEFAULT_MINOR_BUDGET = 200


@total_ordering
class Monomial:
    """Immutable exponent vector over cell variables, compared lexicographically."""

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[tuple[Cell, int]] = ()):
        pairs = tuple(sorted(((Cell(*v), int(e)) for v, e in exps), key=lambda p: lex_key(p[0])))
        if any(e <= 0 for _, e in pairs):
            raise ValueError(f"exponents must be positive: {pairs}")
        self.exps = pairs

    @classmethod
    def variable(cls, cell: Cell) -> "Monomial":
        return cls(((cell, 1),))

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> "Monomial":
        out: dict[Cell, int] = {}
        for c in cells:
            out[Cell(*c)] = out.get(Cell(*c), 0) + 1
        return cls(out.items())

    def __hash__(self):
        return hash(self.exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def _cmp(self, other: "Monomial") -> int:
        # variables are stored greatest-first; the first differing exponent decides
        a, b = self.exps, other.exps
        ia = ib = 0
        while ia < len(a) or ib < len(b):
            ka = lex_key(a[ia][0]) if ia < len(a) else None
            kb = lex_key(b[ib][0]) if ib < len(b) else None
            if kb is None or (ka is not None and ka < kb):
                return 1  # self owns the greater variable
            if ka is None or kb < ka:
                return -1
            ea, eb = a[ia][1], b[ib][1]
            if ea != eb:
                return 1 if ea > eb else -1
            ia += 1
            ib += 1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    @property
    def support(self) -> frozenset[Cell]:
        return frozenset(v for v, _ in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        out = dict(self.exps)
        for v, e in other.exps:
            out[v] = out.get(v, 0) + e
        return Monomial(out.items())

    def divides(self, other: "Monomial") -> bool:
        theirs = dict(other.exps)
        return all(theirs.get(v, 0) >= e for v, e in self.exps)

    def __floordiv__(self, other: "Monomial") -> "Monomial":
        out = dict(self.exps)
        for v, e in other.exps:
            have = out.get(v, 0) - e
            if have < 0:
                raise ValueError(f"{other} does not divide {self}")
            if have == 0:
                out.pop(v)
            else:
                out[v] = have
        return Monomial(out.items())

    def lcm(self, other: "Monomial") -> "Monomial":
        out = dict(self.exps)
        for v, e in other.exps:
            out[v] = max(out.get(v, 0), e)
        return Monomial(out.items())

    def coprime(self, other: "Monomial") -> bool:
        return not (self.support & other.support)

    def __repr__(self):
        if not self.exps:
            return "1"
        return "*".join(
            f"x{v.row}{v.col}" + (f"^{e}" if e > 1 else "") for v, e in self.exps
        )


_ONE = Monomial()


class Polynomial:
    """Sparse polynomial: monomial -> nonzero coefficient (int or Fraction)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {m: c for m, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def variable(cls, cell: Cell) -> "Polynomial":
        return cls({Monomial.variable(cell): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def term_mul(self, coef, mono: Monomial) -> "Polynomial":
        if coef == 0:
            return Polynomial()
        return Polynomial({m * mono: c * coef for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(out)

    def lead(self) -> tuple[Monomial, object]:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        m = max(self.terms)
        return m, self.terms[m]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{m!r}")
        return " ".join(parts).lstrip("+ ")


def leading_term(f: Polynomial) -> tuple[Monomial, object]:
    """Lex-greatest term of a nonzero polynomial, as (monomial, coefficient)."""
    return f.lead()


def _coef_div(a, b):
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return Fraction(a) / Fraction(b)


def _mod_poly(f: Polynomial, p: int) -> Polynomial:
    out = {}
    for m, c in f.terms.items():
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, p)
        out[m] = c % p
    return Polynomial(out)


def minor(M: GDMatrix, rows: Iterable[int], cols: Iterable[int]) -> Polynomial:
    """Determinant of the selected submatrix, with ladder cells contributing 0."""
    rows = tuple(int(x) for x in rows)
    cols = tuple(int(x) for x in cols)
    if len(rows) != len(cols) or not rows:
        raise BadIndex(f"need equally many rows and columns, got {rows} / {cols}")
    if any(rows[i] >= rows[i + 1] for i in range(len(rows) - 1)) or any(
        cols[i] >= cols[i + 1] for i in range(len(cols) - 1)
    ):
        raise BadIndex(f"indices must be strictly increasing: {rows} / {cols}")
    if rows[0] < 1 or rows[-1] > M.n or cols[0] < 1 or cols[-1] > M.m:
        raise BadIndex(f"indices out of range for a {M.n}x{M.m} matrix: {rows} / {cols}")

    memo: dict[tuple[int, frozenset[int]], Polynomial] = {}

    def det(i: int, avail: frozenset[int]) -> Polynomial:
        if i == len(rows):
            return Polynomial({_ONE: 1})
        key = (i, avail)
        if key in memo:
            return memo[key]
        acc = Polynomial()
        for idx, col in enumerate(sorted(avail)):
            if not M.is_nonzero(rows[i], col):
                continue
            sub = det(i + 1, avail - {col})
            if sub:
                sign = 1 if idx % 2 == 0 else -1
                acc = acc + sub.term_mul(sign, Monomial.variable(Cell(rows[i], col)))
        memo[key] = acc
        return acc

    return det(0, frozenset(cols))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    mf, cf = f.lead()
    mg, cg = g.lead()
    l = mf.lcm(mg)
    return f.term_mul(_coef_div(1, cf), l // mf) - g.term_mul(_coef_div(1, cg), l // mg)


def reduce(f: Polynomial, basis: list[Polynomial], prime: int | None = None) -> Polynomial:
    """Remainder of f modulo the basis; first divisor in basis order each step."""
    basis = [g for g in basis if g]
    if prime is not None:
        basis = [_mod_poly(g, prime) for g in basis]
        f = _mod_poly(f, prime)
    leads = [g.lead() for g in basis]
    rem = Polynomial()
    p = f
    while p:
        mono, coef = p.lead()
        for g, (gm, gc) in zip(basis, leads):
            if gm.divides(mono):
                if prime is None:
                    q = _coef_div(coef, gc)
                else:
                    q = (coef * pow(gc, -1, prime)) % prime
                p = p - g.term_mul(q, mono // gm)
                if prime is not None:
                    p = _mod_poly(p, prime)
                break
        else:
            t = Polynomial({mono: coef})
            rem = rem + t
            p = p - t
    return rem


def all_minors(M: GDMatrix, r: int, drop_zero: bool = True) -> list[Polynomial]:
    out = []
    for rows in itertools.combinations(range(1, M.n + 1), r):
        for cols in itertools.combinations(range(1, M.m + 1), r):
            f = minor(M, rows, cols)
            if f or not drop_zero:
                out.append(f)
    return out


@dataclass(frozen=True)
class GroebnerCheck:
    """Outcome of Buchberger's criterion on the minors."""

    ok: bool
    minors: int
    pairs_checked: int
    pairs_skipped_coprime: int

    def __bool__(self):
        return self.ok


def verify_groebner(
    P: MinorsProblem,
    skip_coprime: bool = True,
    minor_budget: int = DEFAULT_MINOR_BUDGET,
    prime: int | None = None,
) -> GroebnerCheck:
    """Check that every S-pair of nonzero r x r minors reduces to zero.

    Pairs with coprime leading monomials may be skipped (they reduce to zero
    by Buchberger's first criterion); pass skip_coprime=False for audit runs.
    """
    basis = all_minors(P.matrix, P.r)
    if len(basis) > minor_budget:
        raise BudgetExceeded(f"{len(basis)} minors exceed the budget of {minor_budget}")
    if prime is not None:
        basis = [_mod_poly(g, prime) for g in basis]
    leads = [g.lead()[0] for g in basis]
    checked = skipped = 0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if skip_coprime and leads[i].coprime(leads[j]):
                skipped += 1
                continue
            checked += 1
            s = s_polynomial(basis[i], basis[j])
            if prime is not None:
                s = _mod_poly(s, prime)
            if reduce(s, basis, prime=prime):
                return GroebnerCheck(False, len(basis), checked, skipped)
    return GroebnerCheck(True, len(basis), checked, skipped)


def initial_ideal_gens(P: MinorsProblem) -> list[Monomial]:
    """Diagonal products of the r-diagonals of the universe: the square-free
    minimal generators of the initial ideal."""
    M, r = P.matrix, P.r
    cells = M.cell_list
    chains: list[tuple[Cell, ...]] = []

    def rec(chain: tuple[Cell, ...], start: int):
        if len(chain) == r:
            chains.append(chain)
            return
        for i in range(start, len(cells)):
            x = cells[i]
            if not chain or (x.row > chain[-1].row and x.col > chain[-1].col):
                rec(chain + (x,), i + 1)

    rec((), 0)
    gens = {Monomial.from_cells(ch) for ch in chains}
    # same-degree square-free monomials never divide one another, so the set
    # is already minimal; keep the filter as a guard for future callers
    out = [g for g in gens if not any(h != g and h.divides(g) for h in gens)]
    return sorted(out, reverse=True)


def monomial_of(cells: Iterable[Cell]) -> Monomial:
    """Square-free product of the given cells."""
    return Monomial.from_cells(cells)
