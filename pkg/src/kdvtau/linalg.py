"""Exact linear algebra: fraction-free determinants over the polynomial ring
and a rational linear solver for undetermined-coefficient systems."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .ring import Polynomial, divide_exact


class LinearSolveFailure(ArithmeticError):
    pass


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_cofactor(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion; only for small matrices."""
    n = len(m)
    if n == 0:
        return Polynomial.constant(1)
    total = Polynomial()
    for p in permutations(range(n)):
        term = Polynomial.constant(_perm_sign(p))
        for i, j in enumerate(p):
            term = term * m[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def det_bareiss(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free Gaussian elimination (Bareiss).  Every division is exact."""
    n = len(m)
    if n == 0:
        return Polynomial.constant(1)
    a = [list(row) for row in m]
    sign = 1
    prev = Polynomial.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return Polynomial()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev)
            a[i][k] = Polynomial()
        prev = pivot
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def determinant(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    if any(len(row) != len(m) for row in m):
        raise ValueError("determinant of a non-square matrix")
    if len(m) <= 3:
        return det_cofactor(m)
    return det_bareiss(m)


def solve_rational(rows: list[dict[int, Fraction]], rhs: list[Fraction], ncols: int) -> list[Fraction]:
    """Unique solution of a sparse exact system (rows map column -> entry).

    Raises LinearSolveFailure if the system is inconsistent or leaves any
    unknown undetermined.
    """
    pending = [(dict(r), b) for r, b in zip(rows, rhs) if r or b]
    reduced: dict[int, tuple[dict[int, Fraction], Fraction]] = {}
    for row, b in pending:
        # eliminate known pivots until this row is new or empty
        while row:
            c = min(row)
            if c not in reduced:
                break
            prow, pb = reduced[c]
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, Fraction(0)) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b -= f * pb
        if not row:
            if b:
                raise LinearSolveFailure("inconsistent linear system")
            continue
        c = min(row)
        inv = 1 / row[c]
        reduced[c] = ({k: v * inv for k, v in row.items()}, b * inv)
    if len(reduced) < ncols:
        raise LinearSolveFailure(f"{ncols - len(reduced)} undetermined coefficient(s) remain")
    sol = [Fraction(0)] * ncols
    for c in sorted(reduced, reverse=True):
        row, b = reduced[c]
        sol[c] = b - sum(v * sol[k] for k, v in row.items() if k != c)
    return sol
