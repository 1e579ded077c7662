"""Exact linear algebra over the rationals.

Rank runs fraction-free (Bareiss pivoting on integer rows, denominators
cleared first) so the hot counting paths never touch Fraction arithmetic;
kernel bases, solves and inverses go through a plain reduced row echelon
form over Fraction.  Everything is deterministic: pivots are always the
first nonzero entry in column order, kernel vectors are the canonical ones
with a 1 in each free column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import SingularMatrixError


def clear_denominators(row) -> list:
    """Scale a rational row to integers (row scaling preserves rank/kernel)."""
    mult = lcm(*(Fraction(v).denominator for v in row)) if row else 1
    return [int(v * mult) for v in map(Fraction, row)]


def rank_int(rows) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    prev = 1
    rank = 0
    row = 0
    for col in range(nc):
        piv = next((r for r in range(row, nr) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for r in range(row + 1, nr):
            for c in range(col + 1, nc):
                # one-step division by the previous pivot is exact (Bareiss)
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def rank(rows) -> int:
    return rank_int([clear_denominators(r) for r in rows])


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns); the input is not modified.
    """
    m = [[Fraction(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m[:row], pivots


def nullspace(rows, ncols: int):
    """Canonical kernel basis of the linear map given by `rows` (ncols wide).

    One vector per free column, carrying 1 there and the negated echelon
    entries in the pivot columns; ordered by free column index.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for rix, piv in enumerate(pivots):
            vec[piv] = -reduced[rix][free]
        basis.append(tuple(vec))
    return basis


def solve(a, b):
    """Solve the square system a x = b exactly; raises if a is singular."""
    n = len(a)
    aug = [[Fraction(v) for v in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    reduced, pivots = rref(aug, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return tuple(reduced[i][n] for i in range(n))


def invert(a):
    """Exact inverse of a square matrix as a list of Fraction rows."""
    n = len(a)
    aug = [[Fraction(v) for v in row]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    reduced, pivots = rref(aug, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in reduced]


def primitive_integer_vector(vec) -> tuple:
    """Scale a rational vector to coprime integers with positive leading entry."""
    fracs = [Fraction(v) for v in vec]
    mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * mult) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)
