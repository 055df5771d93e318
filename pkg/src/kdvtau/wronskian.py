"""The psi, phi and odd-Schur function families and their Wronskians."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import determinant
from .ring import X, Polynomial, Variable, s, t
from .series import PowerSeries, hyper_compose, odd_time_series

FAMILY_KINDS = ("psi", "phi", "schur_odd")


@dataclass(frozen=True)
class FunctionFamily:
    kind: str
    members: tuple[Polynomial, ...]
    active_times: tuple[Variable, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, j: int) -> Polynomial:
        """1-based access; member 0 is the zero function."""
        if j == 0:
            return Polynomial()
        if j < 0:
            raise IndexError(j)
        return self.members[j - 1]


def _order(n: int) -> int:
    # member j sits at z^(2j-1); one spare order guards off-by-one slips
    return 2 * n + 1


def sinh_cosh_x(n: int) -> tuple[PowerSeries, PowerSeries]:
    xz = PowerSeries.monomial(Polynomial.var(X), 1, _order(n))
    return hyper_compose("sinh", xz), hyper_compose("cosh", xz)


def _odd_members(series: PowerSeries, n: int) -> tuple[Polynomial, ...]:
    return tuple(series.coeff(2 * j - 1) for j in range(1, n + 1))


def _times(var, n: int) -> tuple[Variable, ...]:
    return tuple(var(k) for k in range(3, 2 * n, 2))


def psi_family(n: int) -> FunctionFamily:
    """psi_j: odd coefficients of sinh(xz) + cosh(xz) * (s3 z^3 + s5 z^5 + ...)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sh, ch = sinh_cosh_x(n)
    gen = sh + ch * odd_time_series(s, _order(n))
    return FunctionFamily("psi", _odd_members(gen, n), _times(s, n))


def phi_family(n: int) -> FunctionFamily:
    """phi_j: odd coefficients of sinh(xz) + cosh(xz) * tanh(t3 z^3 + t5 z^5 + ...)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sh, ch = sinh_cosh_x(n)
    gen = sh + ch * hyper_compose("tanh", odd_time_series(t, _order(n)))
    return FunctionFamily("phi", _odd_members(gen, n), _times(t, n))


def schur_odd_family(n: int) -> FunctionFamily:
    """p_j = P_{2j-1}: odd coefficients of exp(xz + t3 z^3 + t5 z^5 + ...).

    Built from odd times only; even times are never introduced.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = hyper_compose("exp", odd_time_series(t, _order(n), start=1))
    return FunctionFamily("schur_odd", _odd_members(gen, n), _times(t, n))


def derivative_matrix(fs: Sequence[Polynomial], rows: int | None = None) -> list[list[Polynomial]]:
    """Entry (i, j) is the i-th x-derivative of fs[j]."""
    rows = len(fs) if rows is None else rows
    cols = []
    for f in fs:
        col = [f]
        for _ in range(rows - 1):
            col.append(col[-1].diff(X))
        cols.append(col)
    return [[cols[j][i] for j in range(len(fs))] for i in range(rows)]


def wronskian(fs: Sequence[Polynomial]) -> Polynomial:
    """det(D^(i-1) f_j); the empty Wronskian is 1."""
    return determinant(derivative_matrix(list(fs)))


def bordered_wronskian(chi: Polynomial, fs: Sequence[Polynomial], position: str = "last") -> Polynomial:
    """Wr(f_1..f_n, chi) for ``position="last"``, Wr(chi, f_1..f_n) for ``"first"``.

    The two differ by (-1)^n.
    """
    if position == "last":
        return wronskian([*fs, chi])
    if position == "first":
        return wronskian([chi, *fs])
    raise ValueError(f"position must be 'first' or 'last', not {position!r}")
