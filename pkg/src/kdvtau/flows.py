"""Right-hand sides of the KdV hierarchy as differential polynomials in u.

A differential polynomial is a dict mapping a sorted tuple of derivative
orders to a rational coefficient: ``{(0, 1): 3/2}`` is ``3/2 * u * u'``.
The flows are generated by the Lenard recursion

    R_0 = 1,   D R_{k+1} = (1/4 D^3 + v D + 1/2 v') R_k,   dv/dt_{2k+1} = 2 D R_{k+1}

for L = D^2 + v, solved for R_{k+1} by undetermined coefficients.  Since
tau functions here use u = -2 (log tau)'', i.e. v = -u, the flows are
rewritten for u by substituting v = -u.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .linalg import solve_rational

DiffPoly = dict[tuple[int, ...], Fraction]


def _add(a: DiffPoly, b: DiffPoly, scale: Fraction = Fraction(1)) -> DiffPoly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, Fraction(0)) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: DiffPoly, b: DiffPoly) -> DiffPoly:
    out: DiffPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(sorted(ma + mb))
            out[m] = out.get(m, Fraction(0)) + ca * cb
    return {m: c for m, c in out.items() if c}


def total_derivative(p: DiffPoly) -> DiffPoly:
    out: DiffPoly = {}
    for m, c in p.items():
        for i, order in enumerate(m):
            new = tuple(sorted(m[:i] + (order + 1,) + m[i + 1 :]))
            out[new] = out.get(new, Fraction(0)) + c
    return {m: c for m, c in out.items() if c}


def _weight(m: tuple[int, ...]) -> int:
    return sum(2 + k for k in m)


def _monomials(weight: int, min_order: int = 0) -> Iterator[tuple[int, ...]]:
    """Sorted tuples of derivative orders with total weight ``weight``."""
    if weight == 0:
        yield ()
        return
    for k in range(min_order, weight - 1):
        for rest in _monomials(weight - 2 - k, k):
            yield (k,) + rest


def _antiderivative(p: DiffPoly, weight: int) -> DiffPoly:
    basis = list(_monomials(weight))
    images = [total_derivative({m: Fraction(1)}) for m in basis]
    row_of: dict[tuple[int, ...], int] = {}
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for col, img in enumerate(images):
        for m, c in img.items():
            if m not in row_of:
                row_of[m] = len(rows)
                rows.append({})
                rhs.append(Fraction(0))
            rows[row_of[m]][col] = c
    for m, c in p.items():
        if m not in row_of:
            raise ArithmeticError("not a total derivative")
        rhs[row_of[m]] = c
    sol = solve_rational(rows, rhs, len(basis))
    return {m: c for m, c in zip(basis, sol) if c}


V: DiffPoly = {(0,): Fraction(1)}


@lru_cache(maxsize=None)
def _lenard(k: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    if k == 0:
        return (((), Fraction(1)),)
    prev = dict(_lenard(k - 1))
    d1 = total_derivative(prev)
    d3 = total_derivative(total_derivative(d1))
    rhs = _add(_add({m: c / 4 for m, c in d3.items()}, _mul(V, d1)), _mul(total_derivative(V), prev), Fraction(1, 2))
    return tuple(sorted(_antiderivative(rhs, 2 * k).items()))


def lenard_flow(index: int) -> DiffPoly:
    """dv/dt_index for L = D^2 + v (index odd)."""
    if index < 1 or index % 2 == 0:
        raise ValueError("flow index must be odd and positive")
    k = (index - 1) // 2
    return {m: 2 * c for m, c in total_derivative(dict(_lenard(k + 1))).items()}


def negate_field(p: DiffPoly) -> DiffPoly:
    """F[u] := -G[-u] for G = p; the flow for u when v = -u."""
    return {m: -c * (-1) ** len(m) for m, c in p.items()}


def kdv_flow(index: int) -> DiffPoly:
    """du/dt_index for u = -2 (log tau)''."""
    return negate_field(lenard_flow(index))


def _f(n: int, d: int) -> Fraction:
    return Fraction(n, d)


# Published reference coefficients for the first three flows, stated for L = D^2 + u.
PRINTED_FLOWS: dict[int, DiffPoly] = {
    3: {(3,): _f(1, 4), (0, 1): _f(3, 4)},
    5: {(5,): _f(1, 16), (0, 3): _f(4, 8), (1, 2): _f(5, 4), (0, 0, 1): _f(15, 8)},
    7: {
        (7,): _f(1, 64),
        (0, 5): _f(7, 32),
        (1, 4): _f(21, 32),
        (2, 3): _f(35, 32),
        (0, 0, 3): _f(35, 32),
        (0, 1, 2): _f(35, 8),
        (1, 1, 1): _f(35, 32),
        (0, 0, 0, 1): _f(35, 16),
    },
}


def format_diffpoly(p: DiffPoly, name: str = "u") -> str:
    def factor(k: int) -> str:
        return name if k == 0 else f"{name}{chr(39) * k}" if k <= 2 else f"{name}^({k})"

    parts = []
    for m, c in sorted(p.items(), key=lambda mc: (-max(mc[0], default=0), mc[0])):
        mono = "*".join(factor(k) for k in m) or "1"
        parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
