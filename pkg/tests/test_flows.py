from fractions import Fraction as F

import pytest

from kdvtau.flows import PRINTED_FLOWS, format_diffpoly, kdv_flow, lenard_flow, negate_field, total_derivative


def test_lenard_kdv():
    # L = D^2 + v:  v_t3 = 1/4 v''' + 3/2 v v'
    assert lenard_flow(3) == {(3,): F(1, 4), (0, 1): F(3, 2)}
    assert lenard_flow(1) == {(1,): F(1)}


def test_u_convention_flips_odd_degree_terms():
    assert kdv_flow(3) == {(3,): F(1, 4), (0, 1): F(-3, 2)}
    assert negate_field(negate_field(lenard_flow(5))) == lenard_flow(5)


def test_t5_flow():
    assert lenard_flow(5) == {(5,): F(1, 16), (0, 3): F(5, 8), (1, 2): F(5, 4), (0, 0, 1): F(15, 8)}


def test_reference_t7_matches_lenard():
    assert PRINTED_FLOWS[7] == lenard_flow(7)


@pytest.mark.parametrize("index, term, published, derived", [(3, (0, 1), F(3, 4), F(3, 2)), (5, (0, 3), F(1, 2), F(5, 8))])
def test_reference_misprints(index, term, published, derived):
    assert PRINTED_FLOWS[index][term] == published
    assert lenard_flow(index)[term] == derived
    rest = {m: c for m, c in PRINTED_FLOWS[index].items() if m != term}
    assert rest == {m: c for m, c in lenard_flow(index).items() if m != term}


def test_flows_are_total_derivatives():
    assert total_derivative({(0, 0): F(1)}) == {(0, 1): F(2)}


@pytest.mark.parametrize("index", [0, 2, -1])
def test_bad_index(index):
    with pytest.raises(ValueError):
        lenard_flow(index)


def test_format():
    assert format_diffpoly(lenard_flow(3)) == "1/4*u^(3) + 3/2*u*u'"
