from fractions import Fraction

from hypothesis import strategies as st

from kdvtau.ring import X, Polynomial, q, t
from kdvtau.series import PowerSeries

ALPHABET = (X, t(3), t(5), q(3))

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

exponents = st.fixed_dictionaries({v: st.integers(0, 3) for v in ALPHABET})

polynomials = st.lists(st.tuples(exponents, small_fractions), max_size=5).map(Polynomial.from_terms)


@st.composite
def homogeneous(draw, weight=None):
    """Weight-homogeneous polynomial in x, t3, t5."""
    w = draw(st.integers(1, 8)) if weight is None else weight
    terms = []
    for _ in range(draw(st.integers(1, 4))):
        e5 = draw(st.integers(0, w // 5))
        e3 = draw(st.integers(0, (w - 5 * e5) // 3))
        terms.append(({t(5): e5, t(3): e3, X: w - 5 * e5 - 3 * e3}, draw(small_fractions)))
    p = Polynomial.from_terms(terms)
    return p if p else Polynomial.var(X, w)


def odd_series(order: int):
    """Odd series with zero constant term and small integer coefficients."""
    slots = list(range(1, order + 1, 2))
    return st.lists(st.integers(-3, 3), min_size=len(slots), max_size=len(slots)).map(
        lambda cs: PowerSeries([0] + [cs[(k - 1) // 2] if k % 2 else 0 for k in range(1, order + 1)], order)
    )
