from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kdvtau.linalg import LinearSolveFailure, det_bareiss, det_cofactor, solve_rational
from kdvtau.ring import X, Polynomial, graded_degree, s, t
from kdvtau.kdv import mu_factor
from kdvtau.wronskian import bordered_wronskian, phi_family, psi_family, schur_odd_family, wronskian

from . import strategies

x = Polynomial.var(X)
s3, s5 = Polynomial.var(s(3)), Polynomial.var(s(5))
t3, t5 = Polynomial.var(t(3)), Polynomial.var(t(5))
F = Fraction


def test_psi_members():
    psi = psi_family(3)
    assert psi[1] == x
    assert psi[2] == x**3 * F(1, 6) + s3
    assert psi[3] == x**5 * F(1, 120) + s3 * x**2 * F(1, 2) + s5
    assert psi.active_times == (s(3), s(5))


def test_phi_and_schur_members():
    phi, p = phi_family(3), schur_odd_family(3)
    assert phi[1] == p[1] == x
    assert phi[2] == p[2] == x**3 * F(1, 6) + t3
    assert phi[3] == x**5 * F(1, 120) + t3 * x**2 * F(1, 2) + t5
    assert p[3].diff(X, 2) == p[2]


@pytest.mark.parametrize("family", [psi_family, phi_family, schur_odd_family])
def test_ladder(family):
    fam = family(6)
    for j in range(1, 7):
        assert fam[j].diff(X, 2) == fam[j - 1]
        assert graded_degree(fam[j]) == 2 * j - 1


def test_family_needs_a_member():
    with pytest.raises(ValueError):
        phi_family(0)


def test_wronskian_examples():
    psi, phi = psi_family(3), phi_family(3)
    assert wronskian([]) == Polynomial.constant(1)
    assert wronskian([x]) == x
    assert wronskian(psi.members[:2]) == x**3 * F(1, 3) - s3
    tau3 = wronskian(phi.members).scale(mu_factor(3))
    assert tau3 == x**6 - t3 * x**3 * 15 + t5 * x * 45 - t3 * t3 * 45


def test_bordered_examples():
    psi = psi_family(3)
    assert bordered_wronskian(Polynomial.constant(1), psi.members[:1]) == Polynomial.constant(-1)
    assert bordered_wronskian(x**2 + 1, []) == x**2 + 1
    assert bordered_wronskian(psi[3], psi.members[:2]) == wronskian(psi.members)
    with pytest.raises(ValueError):
        bordered_wronskian(x, [x], position="middle")


@pytest.mark.parametrize("n", range(4))
def test_border_position_sign(n):
    fs = phi_family(4).members[:n]
    chi = x**4 + t3
    assert bordered_wronskian(chi, fs, "first") == bordered_wronskian(chi, fs, "last").scale((-1) ** n)


@pytest.mark.parametrize("n", range(1, 6))
def test_wronskian_weight(n):
    assert graded_degree(wronskian(psi_family(n).members)) == n * (n + 1) // 2


matrices = st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(strategies.polynomials, min_size=k, max_size=k), min_size=k, max_size=k))


@settings(max_examples=25, deadline=None)
@given(matrices)
def test_bareiss_matches_cofactor(m):
    assert det_bareiss(m) == det_cofactor(m)


def test_solve_rational():
    rows = [{0: F(1), 1: F(1)}, {0: F(1), 1: F(-1)}]
    assert solve_rational(rows, [F(3), F(1)], 2) == [F(2), F(1)]
    with pytest.raises(LinearSolveFailure):
        solve_rational([{0: F(1)}, {0: F(1)}], [F(1), F(2)], 1)
    with pytest.raises(LinearSolveFailure):
        solve_rational([{0: F(1), 1: F(1)}], [F(1)], 2)
