"""Exact integer linear algebra and graded bookkeeping.

Everything in this module is exact: Laurent polynomials over Z, integer
matrices with fraction-free determinants, Smith normal form with unimodular
transforms, and finitely generated abelian groups presented by integer
matrices.  No floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPolynomial",
    "BigradedDims",
    "IntegerMatrix",
    "SmithForm",
    "AbelianGroup",
    "smith_normal_form",
    "cokernel",
    "is_square_free",
    "is_square_free_decomposition",
    "laurent_eval",
]


class LaurentPolynomial:
    """A Laurent polynomial in one variable with integer coefficients.

    Stored as a mapping exponent -> nonzero coefficient.  Instances are
    immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exp, c in items:
            if not isinstance(exp, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be int")
            if c:
                acc[exp] = acc.get(exp, 0) + c
                if acc[exp] == 0:
                    del acc[exp]
        self._coeffs = acc

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "LaurentPolynomial":
        """coeff * t**exp."""
        return cls({exp: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __getitem__(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._coeffs.items()))

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
            if out[e] == 0:
                del out[e]
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p._coeffs = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p._coeffs = {e: -c for e, c in self._coeffs.items()}
        return p

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPolynomial":
        return LaurentPolynomial({0: other}) - self

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
                if out[e] == 0:
                    del out[e]
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p._coeffs = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t**k."""
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p._coeffs = {e + k: c for e, c in self._coeffs.items()}
        return p

    def mirror(self) -> "LaurentPolynomial":
        """Substitute t -> t**-1."""
        p = LaurentPolynomial.__new__(LaurentPolynomial)
        p._coeffs = {-e: c for e, c in self._coeffs.items()}
        return p

    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self._coeffs)

    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    def evaluate(self, value: int | Fraction) -> int | Fraction:
        """Exact evaluation.  Negative exponents require a nonzero value."""
        total: int | Fraction = 0
        for e, c in self._coeffs.items():
            if e < 0:
                if value == 0:
                    raise ZeroDivisionError("t=0 with negative exponents")
                total += c * Fraction(1, 1) * Fraction(value) ** e
            else:
                total += c * value**e
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Divide by a known divisor; raises if the division is not exact."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPolynomial.zero()
        num = dict(self._coeffs)
        den = other._coeffs
        den_top = max(den)
        den_lead = den[den_top]
        out: dict[int, int] = {}
        while num:
            top = max(num)
            lead = num[top]
            if lead % den_lead != 0:
                raise ValueError("inexact polynomial division")
            q, e = lead // den_lead, top - den_top
            out[e] = out.get(e, 0) + q
            for de, dc in den.items():
                k = de + e
                num[k] = num.get(k, 0) - q * dc
                if num[k] == 0:
                    del num[k]
        return LaurentPolynomial(out)

    def format(self, var: str = "t") -> str:
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for e in sorted(self._coeffs, reverse=True):
            c = self._coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(f"{sign} {body}")
        head = parts[0]
        head = head[2:] if head.startswith("+ ") else "-" + head[2:]
        return " ".join([head] + parts[1:])

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.format()!r})"


class BigradedDims:
    """Dimensions of a bigraded vector space, indexed by (q, u).

    Ranks are strictly positive; absent keys mean rank zero.  Used both for
    Khovanov homology tables and for the closed-formula generator.
    """

    __slots__ = ("_dims",)

    def __init__(self, dims: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]] = ()):
        acc: dict[tuple[int, int], int] = {}
        items = dims.items() if isinstance(dims, Mapping) else dims
        for key, rank in items:
            q, u = key
            if rank < 0:
                raise ValueError("ranks must be nonnegative")
            if rank:
                acc[(int(q), int(u))] = acc.get((q, u), 0) + rank
        self._dims = acc

    @property
    def dims(self) -> dict[tuple[int, int], int]:
        return dict(self._dims)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigradedDims):
            return NotImplemented
        return self._dims == other._dims

    def __hash__(self) -> int:
        return hash(frozenset(self._dims.items()))

    def __bool__(self) -> bool:
        return bool(self._dims)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._dims.get(key, 0)

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._dims.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def __add__(self, other: "BigradedDims") -> "BigradedDims":
        out = dict(self._dims)
        for key, r in other._dims.items():
            out[key] = out.get(key, 0) + r
        return BigradedDims(out)

    def shift(self, dq: int, du: int) -> "BigradedDims":
        return BigradedDims({(q + dq, u + du): r for (q, u), r in self._dims.items()})

    def reflect(self) -> "BigradedDims":
        """Mirror rule (q, u) -> (-q, -u)."""
        return BigradedDims({(-q, -u): r for (q, u), r in self._dims.items()})

    def total_rank(self) -> int:
        return sum(self._dims.values())

    def diagonals(self) -> list[int]:
        """Sorted distinct values of q - 2u over the support."""
        return sorted({q - 2 * u for (q, u) in self._dims})

    def euler_poly(self) -> LaurentPolynomial:
        """Graded Euler characteristic sum (-1)^u q^q as a Laurent polynomial."""
        out: dict[int, int] = {}
        for (q, u), r in self._dims.items():
            out[q] = out.get(q, 0) + (-1) ** (u % 2) * r
        return LaurentPolynomial(out)

    def poincare(self) -> str:
        """Poincare polynomial in q and u, ordered by (u, q)."""
        if not self._dims:
            return "0"
        parts = []
        for (q, u), r in sorted(self._dims.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            factors = []
            if r != 1:
                factors.append(str(r))
            if q:
                factors.append("q" if q == 1 else f"q^{q}")
            if u:
                factors.append("u" if u == 1 else f"u^{u}")
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BigradedDims({self.poincare()!r})"


class IntegerMatrix:
    """A dense exact integer matrix.  Construction copies; methods return new objects."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]]):
        rows = [list(map(int, row)) for row in data]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data[i][j]

    def to_lists(self) -> list[list[int]]:
        return [row[:] for row in self._data]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(tuple(tuple(r) for r in self._data))

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self._data[i]
            for k, a in enumerate(row):
                if a:
                    orow = other._data[k]
                    dst = out[i]
                    for j in range(other.cols):
                        dst[j] += a * orow[j]
        return IntegerMatrix(out)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix([[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def delete_row_col(self, i: int, j: int) -> "IntegerMatrix":
        return IntegerMatrix(
            [[v for jj, v in enumerate(row) if jj != j] for ii, row in enumerate(self._data) if ii != i]
        )

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i))

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self._data]

    def determinant(self) -> int:
        """Fraction-free Bareiss elimination; exact for any integer matrix."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = pivot
        return sign * m[n - 1][n - 1]

    def __repr__(self) -> str:
        return f"IntegerMatrix({self._data!r})"


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...) >= 0."""

    diagonal: tuple[int, ...]
    u: IntegerMatrix
    v: IntegerMatrix

    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(matrix: IntegerMatrix) -> SmithForm:
    """Smith normal form by elementary integer row/column operations.

    Pivoting selects a minimal-absolute-value nonzero entry, which keeps
    intermediate entries small at this scale.  The transforms U (rows) and
    V (columns) are accumulated alongside and are unimodular by construction.
    """
    m = matrix.to_lists()
    nrows, ncols = matrix.rows, matrix.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(a: int, b: int) -> None:
        m[a], m[b] = m[b], m[a]
        u[a], u[b] = u[b], u[a]

    def swap_cols(a: int, b: int) -> None:
        for row in m:
            row[a], row[b] = row[b], row[a]
        for row in v:
            row[a], row[b] = row[b], row[a]

    def add_row(src: int, dst: int, factor: int) -> None:
        if factor:
            mr, ms = m[dst], m[src]
            for j in range(ncols):
                mr[j] += factor * ms[j]
            ur, us = u[dst], u[src]
            for j in range(nrows):
                ur[j] += factor * us[j]

    def add_col(src: int, dst: int, factor: int) -> None:
        if factor:
            for row in m:
                row[dst] += factor * row[src]
            for row in v:
                row[dst] += factor * row[src]

    def negate_row(i: int) -> None:
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    k = 0
    limit = min(nrows, ncols)
    while k < limit:
        # Locate a minimal-absolute-value nonzero pivot in the trailing block.
        # Re-selecting it on every pass bounds entry growth: one floor
        # reduction pass either clears the pivot cross exactly or leaves a
        # remainder strictly smaller than the pivot, which becomes the next
        # pivot.  |pivot| decreases monotonically, so the stage terminates.
        best = None
        for i in range(k, nrows):
            row = m[i]
            for j in range(k, ncols):
                val = row[j]
                if val:
                    if best is None or abs(val) < best[0]:
                        best = (abs(val), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(k, pi)
        swap_cols(k, pj)
        pivot = m[k][k]
        dirty = False
        for i in range(k + 1, nrows):
            q = m[i][k] // pivot
            if q:
                add_row(k, i, -q)
            if m[i][k]:
                dirty = True
        for j in range(k + 1, ncols):
            q = m[k][j] // pivot
            if q:
                add_col(k, j, -q)
            if m[k][j]:
                dirty = True
        if dirty:
            continue
        # The cross is clear; absorb any trailing entry the pivot does not
        # divide, so the pivot ends up as the gcd of the whole block and the
        # diagonal comes out almost chain-ordered for free.
        off = next(
            (
                i
                for i in range(k + 1, nrows)
                for j in range(k + 1, ncols)
                if m[i][j] % pivot
            ),
            None,
        )
        if off is not None:
            add_row(off, k, 1)
            continue
        if m[k][k] < 0:
            negate_row(k)
        k += 1

    # Enforce the divisibility chain d_i | d_{i+1}.
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = m[i][i], m[i + 1][i + 1]
            if a and b % a != 0:
                changed = True
                # Fold b into position (i, i) via gcd, pushing lcm down.
                add_col(i + 1, i, 1)
                while True:
                    pivot = m[i][i]
                    if m[i + 1][i]:
                        q = m[i + 1][i] // pivot
                        add_row(i, i + 1, -q)
                        if m[i + 1][i]:
                            swap_rows(i, i + 1)
                            continue
                    if m[i][i + 1]:
                        q = m[i][i + 1] // pivot
                        add_col(i, i + 1, -q)
                        if m[i][i + 1]:
                            swap_cols(i, i + 1)
                            continue
                    break
                if m[i][i] < 0:
                    negate_row(i)
                if m[i + 1][i + 1] < 0:
                    negate_row(i + 1)

    diag = tuple(m[i][i] for i in range(limit))
    return SmithForm(diag, IntegerMatrix(u), IntegerMatrix(v))


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor form.

    ``invariant_factors`` are the torsion coefficients > 1 with each dividing
    the next; ``free_rank`` counts Z summands.
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        for d in self.invariant_factors:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    def order(self) -> int:
        """Group order; raises for infinite groups."""
        if self.free_rank:
            raise ValueError("infinite group has no order")
        return math.prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def is_square_free_decomposition(self) -> bool:
        """True iff the group is square-free as a product of cyclic groups.

        Because the invariant factors form a divisibility chain, it is enough
        to test the largest one.
        """
        if not self.invariant_factors:
            return True
        return is_square_free(self.invariant_factors[-1])

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def cokernel(matrix: IntegerMatrix) -> AbelianGroup:
    """Cokernel of the presentation: columns index generators, rows give relations."""
    snf = smith_normal_form(matrix)
    torsion = tuple(d for d in snf.diagonal if d > 1)
    free = matrix.cols - snf.rank()
    return AbelianGroup(torsion, free)


def laurent_eval(p: LaurentPolynomial, t: int | Fraction) -> int | Fraction:
    """Exact evaluation of ``p`` at ``t``; function form of ``p.evaluate``."""
    return p.evaluate(t)


def is_square_free_decomposition(g: AbelianGroup) -> bool:
    """Function form of ``AbelianGroup.is_square_free_decomposition``."""
    return g.is_square_free_decomposition()


def is_square_free(n: int) -> bool:
    """True iff no prime square divides n.  Exact trial division."""
    n = abs(n)
    if n == 0:
        return False
    if n % 4 == 0:
        return False
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        else:
            p += 2
    return True
