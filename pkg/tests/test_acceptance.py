"""Acceptance criteria, one verdict line each.  Every comparison is exact.

Run directly with ``python3 -m tests.test_acceptance``; the verdicts are
repeated in the pytest terminal summary.
"""

from __future__ import annotations

import io
import json
import time
from fractions import Fraction

from kdvtau import cli, kdv
from kdvtau.cli.golden import printed
from kdvtau.cli.serialize import from_document, to_text
from kdvtau.flows import PRINTED_FLOWS, negate_field
from kdvtau.ring import X, Polynomial, q, t
from kdvtau.verify import (
    check_flow,
    check_phi_lemma,
    check_rational_seed,
    check_schur_coincidence,
    check_structural,
    check_triangular,
    check_wave_identity,
    flow_residual,
)

from .acceptance_log import record


def _cold() -> None:
    """Drop memoized sequences so timings measure real work."""
    for fn in (kdv._recursive_thetas, kdv.wronskians_psi, kdv.wronskians_phi):
        fn.cache_clear()


def _failures(reports) -> list[str]:
    return [f"{r.check_name}(n={r.n}) {r.detail} witness {to_text(r.residual_witness)}" for r in reports if not r.passed]


def test_criterion_1_golden_polynomials():
    _cold()
    start = time.perf_counter()
    thetas, taus = kdv.adler_moser_recursive(4), kdv.tau_polynomial(4)
    ref_theta, ref_tau = printed("theta"), printed("tau")
    elapsed = time.perf_counter() - start
    verbatim = all(thetas[k] == ref_theta[k] for k in (2, 3, 4)) and all(taus[k] == ref_tau[k] for k in (2, 3))
    diff = taus[4] - ref_tau[4]
    only_known = diff == Polynomial.monomial({t(7): 1, X: 3}, -100)
    ok = verbatim and only_known and elapsed < 1
    msg = f"theta_2..4 and tau_2..3 verbatim: {verbatim}; tau_4 differs only by -1575 vs -1475 on t7*x^3 (WARN): {only_known}; {elapsed:.3f}s < 1s"
    assert record("1", ok, msg), msg


def test_criterion_2_route_equivalence():
    _cold()
    start = time.perf_counter()
    rec = kdv.adler_moser_recursive(6)
    wro = kdv.adler_moser_wronskian(6)
    elapsed = time.perf_counter() - start
    bad = [k for k in range(7) if rec[k] != wro[k]]
    ok = not bad and elapsed < 60
    msg = f"recursion = scaled Wronskian for n = 0..6 (mismatches: {bad or 'none'}); {elapsed:.2f}s < 60s"
    assert record("2", ok, msg), msg


def _tanh_by_ode(eta: list[Polynomial], order: int) -> list[Polynomial]:
    """T = tanh(eta) from T' = eta' (1 - T^2), solved term by term in z."""
    T = [Polynomial() for _ in range(order + 1)]
    for k in range(1, order + 1):
        acc = Polynomial()
        for j in range(1, k + 1):
            if eta[j]:
                one_minus_sq = Polynomial.constant(1 if k == j else 0)
                for i in range(k - j + 1):
                    one_minus_sq = one_minus_sq - T[i] * T[k - j - i]
                acc = acc + eta[j] * one_minus_sq * j
        T[k] = acc.scale(Fraction(1, k))
    return T


def test_criterion_3_change_of_variables():
    cov = kdv.change_of_variables(7).q_in_t
    ref = printed("q")
    literal = all(cov[q(k)] == ref[k] for k in (3, 5, 7))
    eta = [Polynomial.var(t(k)) if k >= 3 and k % 2 else Polynomial() for k in range(14)]
    oracle = _tanh_by_ode(eta, 13)
    against_oracle = all(cov[q(2 * i - 1)] == oracle[2 * i - 1].scale(kdv.alpha_coefficient(i)) for i in range(2, 8))
    ok = literal and against_oracle
    msg = f"q3, q5, q7 as printed: {literal}; q3..q13 equal alpha * [z^k] of the ODE-built tanh series: {against_oracle}"
    assert record("3", ok, msg), msg


FLOW_CASES = [(2, "t3"), (3, "t3"), (4, "t3"), (3, "t5"), (4, "t5"), (4, "t7")]


def test_criterion_4_kdv_flows():
    _cold()
    start = time.perf_counter()
    reports = [check_flow(n, f) for n, f in FLOW_CASES]
    elapsed = time.perf_counter() - start
    bad = _failures(reports)
    ok = not bad and elapsed < 300
    msg = f"t3 on n=2..4, t5 on n=3..4, t7 on n=4 vanish exactly: {bad or 'all zero'}; {elapsed:.2f}s < 300s"
    assert record("4", ok, msg), msg


def test_criterion_4_literal_coefficients():
    """Same checks with the published coefficient tables (3/4 u u', 4/8 u u''')."""
    bad = []
    for n, f in FLOW_CASES:
        k = int(f[1:])
        if not flow_residual(kdv.tau_polynomial(n)[n], k, negate_field(PRINTED_FLOWS[k])).is_zero():
            bad.append(f"{f}@n={n}")
    ok = not bad
    msg = f"published flow coefficients give zero residuals (nonzero: {bad or 'none'})"
    assert record("4-literal", ok, msg), msg


def test_criterion_5_rational_seeds():
    bad = _failures(check_rational_seed(n) for n in range(7))
    assert record("5", not bad, f"u_n(t3=t5=...=0) = n(n+1)/x^2 for n = 0..6: {bad or 'all exact'}"), bad


def test_criterion_6_structural():
    bad = _failures(check_structural(n) for n in range(1, 6))
    msg = f"bilinear recursion, Wronskian recursion, Jacobi (chi = 1, x^2, x^3), sign law for n <= 5: {bad or 'all exact'}"
    assert record("6", not bad, msg), msg


def test_criterion_7_lemma_suite():
    literal = check_phi_lemma(5, i_min=1)
    bad = _failures([literal]) + _failures(check_triangular(j) for j in range(1, 5))
    msg = f"a-series relation for 1 <= i < j <= 5 and triangular shift for j <= 4: {bad or 'all exact'}"
    assert record("7", not bad, msg), msg


def test_criterion_7_from_i2():
    bad = _failures([check_phi_lemma(5)])
    msg = f"a-series relation for 2 <= i < j <= 5: {bad or 'all exact'}"
    assert record("7-i>=2", not bad, msg), msg


def test_criterion_8_wave_identity():
    bad = _failures(check_wave_identity(n) for n in range(4))
    msg = f"Wr(phi, e^xi)/e^xi = lambda^n tau_n(t - [1/lambda]) for n = 0..3: {bad or 'all exact'}"
    assert record("8", not bad, msg), msg


def test_criterion_9_schur_coincidence():
    bad = _failures(check_schur_coincidence(n) for n in range(1, 6))
    assert record("9", not bad, f"Wr(p_1..p_n) = Wr(phi_1..phi_n) for n <= 5: {bad or 'all exact'}"), bad


def _run(argv: list[str]) -> tuple[int, str]:
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def test_criterion_10_determinism(monkeypatch, tmp_path):
    monkeypatch.setenv("KDVTAU_CACHE", str(tmp_path))
    commands = [["gen", "--n", "6", "--vars", v, "--format", f] for v in "qts" for f in ("json", "latex", "text")]
    commands += [["verify", "--n", "3"], ["crosscheck", "--n", "6"]]
    unstable = [" ".join(c) for c in commands if _run(c) != _run(c)]
    lossy = []
    for v in "qts":
        docs = json.loads(_run(["gen", "--n", "6", "--vars", v, "--format", "json"])[1])
        for doc, p in zip(docs, cli._sequence(v, 6)):
            if from_document(doc) != p or from_document(json.loads(json.dumps(doc))) != p:
                lossy.append(doc["name"])
    ok = not unstable and not lossy
    msg = f"byte-identical reruns (unstable: {unstable or 'none'}); lossless JSON round-trip (lossy: {lossy or 'none'})"
    assert record("10", ok, msg), msg


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "--no-header", "-p", "no:cacheprovider"]))
