"""Adler-Moser polynomials, the tanh change of variables and the KdV tau functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .linalg import LinearSolveFailure, solve_rational
from .ring import LAMBDA_INV, X, Polynomial, RationalFunction, Variable, q, s, t
from .series import PowerSeries, hyper_compose, odd_time_series, series_inv
from .wronskian import phi_family, psi_family, wronskian


def d(n: int) -> int:
    """Weight (and x-degree) of theta_n and tau_n."""
    return n * (n + 1) // 2


@dataclass(frozen=True)
class AdlerMoserSequence:
    thetas: tuple[Polynomial, ...]
    route: str

    def __getitem__(self, n: int) -> Polynomial:
        return self.thetas[n]

    def __len__(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class TauSequence:
    taus: tuple[Polynomial, ...]

    def __getitem__(self, n: int) -> Polynomial:
        return self.taus[n]

    def __len__(self) -> int:
        return len(self.taus)


@dataclass(frozen=True)
class ChangeOfVariables:
    q_in_t: dict[Variable, Polynomial] = field(hash=False)
    alphas: dict[int, Fraction] = field(hash=False)


def alpha_coefficient(i: int) -> Fraction:
    """(-1)^(i-1) * 3^2 * 5^2 * ... * (2i-3)^2 * (2i-1)."""
    if i < 2:
        raise ValueError("alpha is defined for i >= 2")
    value = 2 * i - 1
    for k in range(3, 2 * i - 2, 2):
        value *= k * k
    return Fraction((-1) ** (i - 1) * value)


def mu_factor(n: int) -> Fraction:
    """Ratio theta_n / W_n: prod_{j=1..n} (2n - 2j + 1)^j."""
    if n < 0:
        raise ValueError("n must be >= 0")
    value = 1
    for j in range(1, n + 1):
        value *= (2 * n - 2 * j + 1) ** j
    return Fraction(value)


def _monomials(weight: int, parts: list[int]) -> Iterator[dict[int, int]]:
    """All exponent maps {part: e} with sum(part * e) == weight."""
    if not parts:
        if weight == 0:
            yield {}
        return
    head, rest = parts[0], parts[1:]
    for e in range(weight // head + 1):
        for tail in _monomials(weight - head * e, rest):
            yield {head: e, **tail} if e else tail


NORMALIZATIONS = ("tau", "monomial")


def _next_theta(prev: Polynomial, cur: Polynomial, n: int, pin: Polynomial) -> Polynomial:
    """theta_{n+1} from theta_{n-1}, theta_n by undetermined coefficients.

    Solves theta'_{n+1} theta_{n-1} - theta_{n+1} theta'_{n-1} = (2n+1) theta_n^2
    over the weight-d_{n+1} monomials in x, q3..q_{2n+1}.  The solution is
    unique up to adding c(q) theta_{n-1}; ``pin`` fixes it by prescribing the
    coefficient of x^{d_{n-1}}.
    """
    weight = d(n + 1)
    q_idx = list(range(3, 2 * n + 2, 2))
    basis: list[Polynomial] = []
    normalization: list[tuple[int, Fraction]] = []
    for m in range(weight, -1, -1):
        for mono in _monomials(weight - m, q_idx[::-1]):
            col = len(basis)
            exps = {q(k): e for k, e in mono.items()}
            exps[X] = m
            basis.append(Polynomial.monomial(exps))
            if m == d(n - 1):
                normalization.append((col, pin.coefficient({q(k): e for k, e in mono.items()})))

    prev_x = prev.diff(X)
    images = [b.diff(X) * prev - b * prev_x for b in basis]
    target = cur * cur * (2 * n + 1)

    index: dict[tuple, int] = {}
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []

    def row_for(exps: dict) -> int:
        key = tuple(sorted((v.sort_key, e) for v, e in exps.items()))
        if key not in index:
            index[key] = len(rows)
            rows.append({})
            rhs.append(Fraction(0))
        return index[key]

    for col, img in enumerate(images):
        for exps, c in img.terms():
            rows[row_for(exps)][col] = c
    for exps, c in target.terms():
        rhs[row_for(exps)] = c
    for col, pinned in normalization:
        rows.append({col: Fraction(1)})
        rhs.append(pinned)

    coeffs = solve_rational(rows, rhs, len(basis))
    result = Polynomial()
    for b, c in zip(basis, coeffs):
        if c:
            result = result + b.scale(c)
    return result


def _pin(n: int, normalization: str) -> Polynomial:
    """Prescribed coefficient of x^{d_{n-2}} in theta_n.

    "monomial" is the bare q_{2n-1}.  "tau" reads the coefficient off
    mu_n W_n; the two agree for n <= 5, and from n = 6 on only the latter
    makes theta_n(q(t)) a KdV tau function.
    """
    if normalization == "monomial":
        return Polynomial.var(q(2 * n - 1))
    return adler_moser_wronskian(n)[n].coeff_in(X, d(n - 2))


@lru_cache(maxsize=None)
def _recursive_thetas(n: int, normalization: str) -> tuple[Polynomial, ...]:
    if n == 0:
        return (Polynomial.constant(1),)
    if n == 1:
        return (Polynomial.constant(1), Polynomial.var(X))
    head = _recursive_thetas(n - 1, normalization)
    return head + (_next_theta(head[-2], head[-1], n - 1, _pin(n, normalization)),)


def adler_moser_recursive(n: int, normalization: str = "tau") -> AdlerMoserSequence:
    """theta_0..theta_n from the bilinear recursion (undetermined coefficients)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    return AdlerMoserSequence(_recursive_thetas(n, normalization), "recursion")


def s_to_q(n: int) -> dict[Variable, Polynomial]:
    """The rescaling s_{2i-1} = q_{2i-1} / alpha_{2i-1}."""
    return {s(2 * i - 1): Polynomial.var(q(2 * i - 1)).scale(1 / alpha_coefficient(i)) for i in range(2, n + 1)}


@lru_cache(maxsize=None)
def wronskians_psi(n: int) -> tuple[Polynomial, ...]:
    """W_0..W_n = Wr(psi_1..psi_k) in the s-variables."""
    if n == 0:
        return (Polynomial.constant(1),)
    fam = psi_family(n)
    return tuple(wronskian(fam.members[:k]) for k in range(n + 1))


def adler_moser_wronskian(n: int) -> AdlerMoserSequence:
    """theta_k = mu_k * W_k with s rescaled to q."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ws = wronskians_psi(n)
    rescale = s_to_q(n)
    return AdlerMoserSequence(tuple(w.subs(rescale).scale(mu_factor(k)) for k, w in enumerate(ws)), "wronskian")


def tanh_eta(order: int) -> PowerSeries:
    return hyper_compose("tanh", odd_time_series(t, order))


def change_of_variables(n: int) -> ChangeOfVariables:
    """q_{2i-1} = alpha_{2i-1} * [z^{2i-1}] tanh(t3 z^3 + t5 z^5 + ...), 2 <= i <= n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    th = tanh_eta(2 * n - 1)
    alphas = {i: alpha_coefficient(i) for i in range(2, n + 1)}
    q_in_t = {q(2 * i - 1): th.coeff(2 * i - 1).scale(alphas[i]) for i in range(2, n + 1)}
    return ChangeOfVariables(q_in_t, alphas)


@lru_cache(maxsize=None)
def wronskians_phi(n: int) -> tuple[Polynomial, ...]:
    """Wr(phi_1..phi_k) for k = 0..n, unnormalized."""
    if n == 0:
        return (Polynomial.constant(1),)
    fam = phi_family(n)
    return tuple(wronskian(fam.members[:k]) for k in range(n + 1))


def tau_polynomial(n: int) -> TauSequence:
    """tau_k = mu_k * Wr(phi_1..phi_k), monic in x^{d_k}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return TauSequence(tuple(w.scale(mu_factor(k)) for k, w in enumerate(wronskians_phi(n))))


def tau_by_substitution(n: int) -> TauSequence:
    """tau_k obtained from theta_k through the change of variables."""
    thetas = adler_moser_recursive(n)
    if n < 2:
        return TauSequence(thetas.thetas)
    cov = change_of_variables(n).q_in_t
    return TauSequence(tuple(th.subs(cov) for th in thetas.thetas))


def u_from_tau(tau: Polynomial) -> RationalFunction:
    """u = -2 (log tau)'' = -2 (tau'' tau - tau'^2) / tau^2."""
    if tau.is_zero():
        raise ZeroDivisionError("tau must be nonzero")
    d1 = tau.diff(X)
    num = (tau.diff(X, 2) * tau - d1 * d1).scale(-2)
    return RationalFunction(num, tau * tau)


def miwa_bindings(max_index: int) -> dict[Variable, Polynomial]:
    """t_k -> t_k - lambda_inv^k / k for odd k <= max_index."""
    return {
        t(k): Polynomial.var(t(k)) - Polynomial.var(LAMBDA_INV, k).scale(Fraction(1, k))
        for k in range(1, max_index + 1, 2)
    }


def miwa_shift(tau: Polynomial, max_index: int | None = None) -> Polynomial:
    """tau(t_1 - 1/lambda, t_3 - 1/(3 lambda^3), ...), polynomial in lambda_inv."""
    if max_index is None:
        ts = [v.index for v in tau.variables() if v.family == "t"]
        max_index = max(ts, default=1)
    if max_index % 2 == 0:
        raise ValueError("max_index must be odd")
    return tau.subs(miwa_bindings(max_index))


def a_series(order: int) -> list[Polynomial]:
    """a_0..a_m with sum_j a_j z^{2j-1} = tanh(eta), where 2m - 1 <= order."""
    if order < 3:
        raise ValueError("order must be >= 3")
    th = tanh_eta(order)
    return [Polynomial()] + [th.coeff(2 * j - 1) for j in range(1, (order + 1) // 2 + 1)]


def b_generating_series(order: int) -> PowerSeries:
    """sech(u) / (1 - u tanh(u) - u tanh(eta) + tanh(u) tanh(eta)) with u = z * lambda_inv."""
    u = PowerSeries.monomial(Polynomial.var(LAMBDA_INV), 1, order)
    tanh_u = hyper_compose("tanh", u)
    tanh_e = tanh_eta(order)
    bracket = PowerSeries.one(order) - u * tanh_u - u * tanh_e + tanh_u * tanh_e
    return hyper_compose("sech", u) * series_inv(bracket)


def b_series(order: int) -> list[Polynomial]:
    """b_0..b_m, the even coefficients b_j = [z^{2j}] of the generating series."""
    if order < 2:
        raise ValueError("order must be >= 2")
    gen = b_generating_series(order)
    return [gen.coeff(2 * j) for j in range(order // 2 + 1)]


__all__ = [
    "AdlerMoserSequence",
    "ChangeOfVariables",
    "LinearSolveFailure",
    "NORMALIZATIONS",
    "TauSequence",
    "a_series",
    "adler_moser_recursive",
    "adler_moser_wronskian",
    "alpha_coefficient",
    "b_generating_series",
    "b_series",
    "change_of_variables",
    "d",
    "miwa_bindings",
    "miwa_shift",
    "mu_factor",
    "s_to_q",
    "tanh_eta",
    "tau_by_substitution",
    "tau_polynomial",
    "u_from_tau",
    "wronskians_phi",
    "wronskians_psi",
]
