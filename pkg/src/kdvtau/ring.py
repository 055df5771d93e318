"""Exact multivariate polynomials and rational functions over Q.

Coefficients are :class:`fractions.Fraction`.  Monomials are packed into a
single Python integer: every variable owns a fixed-width bit field, so
multiplying two monomials is one integer addition.  Slot 0 always belongs to
``lambda_inv`` and is stored with a bias so that its exponent may be negative
(Laurent bookkeeping for the spectral parameter, with lambda = lambda_inv^-1).
All other exponents are nonnegative.

Field slots are handed out on first use by a process-wide registry.  Packed
keys are therefore only meaningful inside one process; anything that leaves
the process (serialization, ordering, display) goes through
:meth:`Polynomial.terms`, which is ordered by variable, never by slot.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]

_WIDTH = 24
_MASK = (1 << _WIDTH) - 1
_BIAS = 1 << (_WIDTH - 1)
_ONE_KEY = _BIAS  # the empty monomial: lambda_inv^0, everything else 0

_FAMILY_RANK = {"t": 0, "q": 1, "s": 2, "lambda_inv": 3}


class ZeroPolynomialError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Variable:
    """A graded variable: ``t_k`` (k odd >= 1), ``q_k`` / ``s_k`` (k odd >= 3)
    or the spectral ``lambda_inv``.  ``t_1`` is ``x``."""

    family: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.family not in _FAMILY_RANK:
            raise ValueError(f"unknown variable family {self.family!r}")
        if self.family == "lambda_inv":
            if self.index != 0:
                raise ValueError("lambda_inv carries no index")
            return
        lowest = 1 if self.family == "t" else 3
        if self.index < lowest or self.index % 2 == 0:
            raise ValueError(f"{self.family}{self.index}: index must be odd and >= {lowest}")

    @property
    def name(self) -> str:
        if self.family == "lambda_inv":
            return "lambda_inv"
        if self.family == "t" and self.index == 1:
            return "x"
        return f"{self.family}{self.index}"

    @property
    def weight(self) -> int:
        # lambda_inv has weight +1 so that t_k - lambda_inv^k / k is homogeneous.
        return 1 if self.family == "lambda_inv" else self.index

    @property
    def laurent(self) -> bool:
        return self.family == "lambda_inv"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (_FAMILY_RANK[self.family], self.index)

    @classmethod
    def from_name(cls, name: str) -> "Variable":
        if name == "x":
            return cls("t", 1)
        if name == "lambda_inv":
            return cls("lambda_inv")
        family, digits = name[0], name[1:]
        if family not in "tqs" or not digits.isdigit():
            raise ValueError(f"not a variable name: {name!r}")
        return cls(family, int(digits))

    def __repr__(self) -> str:
        return self.name


def t(k: int) -> Variable:
    return Variable("t", k)


def q(k: int) -> Variable:
    return Variable("q", k)


def s(k: int) -> Variable:
    return Variable("s", k)


X = t(1)
LAMBDA_INV = Variable("lambda_inv")


class _Registry:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.slots: dict[Variable, int] = {LAMBDA_INV: 0}
        self.variables: list[Variable] = [LAMBDA_INV]

    def slot(self, v: Variable) -> int:
        try:
            return self.slots[v]
        except KeyError:
            with self._lock:
                if v not in self.slots:
                    self.slots[v] = len(self.variables)
                    self.variables.append(v)
                return self.slots[v]


_REG = _Registry()


def _pack(exponents: Mapping[Variable, int]) -> int:
    key = _ONE_KEY
    for v, e in exponents.items():
        if e == 0:
            continue
        if e < 0 and not v.laurent:
            raise ValueError(f"negative exponent for {v.name}")
        key += e << (_WIDTH * _REG.slot(v))
    return key


def _unpack(key: int) -> dict[Variable, int]:
    out: dict[Variable, int] = {}
    lam = (key & _MASK) - _BIAS
    if lam:
        out[LAMBDA_INV] = lam
    key >>= _WIDTH
    slot = 1
    while key:
        e = key & _MASK
        if e:
            out[_REG.variables[slot]] = e
        key >>= _WIDTH
        slot += 1
    return out


def _exponent(key: int, slot: int) -> int:
    e = (key >> (_WIDTH * slot)) & _MASK
    return e - _BIAS if slot == 0 else e


def _common_denominator(terms: Mapping[int, Fraction]) -> int:
    return reduce(math.lcm, (c.denominator for c in terms.values()), 1)


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._terms: dict[int, Fraction] = {}
        elif _trusted:
            self._terms = terms  # type: ignore[assignment]
        else:
            self._terms = {k: _as_fraction(c) for k, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return cls({_ONE_KEY: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, v: Variable, power: int = 1) -> "Polynomial":
        return cls({_pack({v: power}): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, exponents: Mapping[Variable, int], coeff: Scalar = 1) -> "Polynomial":
        coeff = _as_fraction(coeff)
        return cls({_pack(exponents): coeff} if coeff else {}, _trusted=True)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Mapping[Variable, int], Scalar]]) -> "Polynomial":
        acc: dict[int, Fraction] = {}
        for exps, c in terms:
            k = _pack(exps)
            acc[k] = acc.get(k, Fraction(0)) + _as_fraction(c)
        return cls({k: c for k, c in acc.items() if c}, _trusted=True)

    @staticmethod
    def coerce(value: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return Polynomial.constant(value)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE_KEY in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(_ONE_KEY, Fraction(0))

    def variables(self) -> list[Variable]:
        seen: set[Variable] = set()
        for k in self._terms:
            seen.update(_unpack(k))
        return sorted(seen, key=lambda v: v.sort_key)

    def terms(self) -> list[tuple[dict[Variable, int], Fraction]]:
        """Terms in canonical order: descending total weight, then descending
        lexicographic exponent vector with x most significant."""
        alphabet = self.variables()
        rows = []
        for k, c in self._terms.items():
            exps = _unpack(k)
            vec = tuple(exps.get(v, 0) for v in alphabet)
            weight = sum(v.weight * e for v, e in exps.items())
            rows.append(((-weight, tuple(-e for e in vec)), exps, c))
        rows.sort(key=lambda r: r[0])
        return [(exps, c) for _, exps, c in rows]

    def __iter__(self) -> Iterator[tuple[dict[Variable, int], Fraction]]:
        return iter(self.terms())

    def degree_in(self, v: Variable) -> int:
        """Largest exponent of ``v``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        slot = _REG.slot(v)
        return max(_exponent(k, slot) for k in self._terms)

    def coeff_in(self, v: Variable, power: int) -> "Polynomial":
        """Coefficient of ``v**power``, as a polynomial free of ``v``."""
        slot = _REG.slot(v)
        shift = (power << (_WIDTH * slot))
        out = {k - shift: c for k, c in self._terms.items() if _exponent(k, slot) == power}
        return Polynomial(out, _trusted=True)

    def coefficient(self, exponents: Mapping[Variable, int]) -> Fraction:
        return self._terms.get(_pack(exponents), Fraction(0))

    def weights(self) -> set[int]:
        return {sum(v.weight * e for v, e in _unpack(k).items()) for k in self._terms}

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        other = Polynomial.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Polynomial(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial({k: v * c for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial()
        if len(a) < len(b):
            a, b = b, a
        # Work over the integers: Fraction arithmetic in the inner loop is
        # roughly ten times slower than int arithmetic.
        da, db = _common_denominator(a), _common_denominator(b)
        ia = [(k, (c * da).numerator) for k, c in a.items()]
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            off = kb - _BIAS
            cb = (cb * db).numerator
            for ka, ca in ia:
                k = ka + off
                out[k] = get(k, 0) + ca * cb
        den = da * db
        if den == 1:
            return Polynomial({k: Fraction(c) for k, c in out.items() if c}, _trusted=True)
        return Polynomial({k: Fraction(c, den) for k, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution -------------------------------------------

    def diff(self, v: Variable, order: int = 1) -> "Polynomial":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        slot = _REG.slot(v)
        unit = 1 << (_WIDTH * slot)
        terms = self._terms
        for _ in range(order):
            out = {}
            for k, c in terms.items():
                e = _exponent(k, slot)
                if e:
                    out[k - unit] = c * e
            terms = out
            if not terms:
                break
        return Polynomial(terms, _trusted=True)

    def subs(self, bindings: Mapping[Variable, "Polynomial | Scalar"]) -> "Polynomial":
        """Simultaneous substitution of polynomials for variables."""
        active = {v: Polynomial.coerce(p) for v, p in bindings.items() if v in _REG.slots}
        if not active:
            return self
        slots = {_REG.slots[v]: p for v, p in active.items()}
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(slot: int, e: int) -> Polynomial:
            if (slot, e) not in powers:
                if e < 0:
                    raise ValueError("cannot substitute into a negative power")
                powers[(slot, e)] = slots[slot] ** e
            return powers[(slot, e)]

        acc: dict[int, Fraction] = {}
        pieces: list[Polynomial] = []
        for k, c in self._terms.items():
            factor = None
            rest = k
            for slot in slots:
                e = _exponent(k, slot)
                if e:
                    rest -= e << (_WIDTH * slot)
                    p = power(slot, e)
                    factor = p if factor is None else factor * p
            if factor is None:
                acc[k] = acc.get(k, Fraction(0)) + c
            else:
                pieces.append(Polynomial({rest: c}, _trusted=True) * factor)
        result = Polynomial({k: c for k, c in acc.items() if c}, _trusted=True)
        for p in pieces:
            result = result + p
        return result

    # -- integer content ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(reduce(math.gcd, nums), reduce(math.lcm, dens))

    def primitive(self) -> "Polynomial":
        c = self.content()
        return self if c in (0, 1) else self.scale(1 / c)

    # -- display ------------------------------------------------------------

    def __repr__(self) -> str:
        from .cli.serialize import to_text

        return f"Polynomial({to_text(self)!r})"


def var(v: Variable | str, power: int = 1) -> Polynomial:
    if isinstance(v, str):
        v = Variable.from_name(v)
    return Polynomial.var(v, power)


def const(c: Scalar) -> Polynomial:
    return Polynomial.constant(c)


def poly_arith(op: str, a: Polynomial, b: Polynomial | Scalar) -> Polynomial:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        if isinstance(b, Polynomial):
            if not b.is_constant():
                raise TypeError("scale takes a rational factor")
            b = b.constant_term()
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(p: Polynomial, v: Variable, order: int = 1) -> Polynomial:
    return p.diff(v, order)


def poly_substitute(p: Polynomial, bindings: Mapping[Variable, Polynomial | Scalar]) -> Polynomial:
    return p.subs(bindings)


@dataclass(frozen=True)
class NonHomogeneous:
    weights: frozenset[int]


def graded_degree(p: Polynomial) -> int | NonHomogeneous:
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no graded degree")
    ws = p.weights()
    if len(ws) == 1:
        return next(iter(ws))
    return NonHomogeneous(frozenset(ws))


def _divides(kb: int, ka: int, slots: Iterable[int]) -> bool:
    return all(_exponent(ka, s) >= _exponent(kb, s) for s in slots)


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises :class:`NotDivisibleError` unless b divides a.

    Uses the packed key as a lexicographic monomial order, which is
    compatible with multiplication (including the Laurent slot), so the
    leading term of a product is the product of leading terms.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a
    bt = b._terms
    if len(bt) == 1:
        ((kb, cb),) = bt.items()
        slots = _active_slots(kb)
        inv = 1 / cb
        out = {}
        for ka, ca in a._terms.items():
            if not _divides(kb, ka, slots):
                raise NotDivisibleError("monomial does not divide")
            out[ka - kb + _BIAS] = ca * inv
        return Polynomial(out, _trusted=True)
    lead_b = max(bt)
    lead_c = bt[lead_b]
    slots = _active_slots(lead_b)
    rest_b = [(k - _BIAS, c) for k, c in bt.items() if k != lead_b]
    rem = dict(a._terms)
    quotient: dict[int, Fraction] = {}
    # Laurent guard: quotient exponents of lambda_inv are bounded below.
    lam_floor = min(_exponent(k, 0) for k in a._terms) - max(_exponent(k, 0) for k in bt) - 1
    while rem:
        lead_r = max(rem)
        if not _divides(lead_b, lead_r, slots):
            raise NotDivisibleError("leading term not divisible")
        qk = lead_r - lead_b + _BIAS
        if _exponent(qk, 0) < lam_floor:
            raise NotDivisibleError("not divisible (Laurent bound exceeded)")
        qc = rem.pop(lead_r) / lead_c
        quotient[qk] = qc
        off = qk
        for kb, cb in rest_b:
            k = kb + off
            v = rem.get(k, Fraction(0)) - qc * cb
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Polynomial(quotient, _trusted=True)


def _active_slots(key: int) -> list[int]:
    slots = []
    slot = 1
    key >>= _WIDTH
    while key:
        if key & _MASK:
            slots.append(slot)
        key >>= _WIDTH
        slot += 1
    return slots


class RationalFunction:
    """``num / den`` without gcd reduction; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Scalar, den: Polynomial | Scalar = 1):
        num, den = Polynomial.coerce(num), Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, other: "RationalFunction | Polynomial | Scalar") -> "RationalFunction":
        return other if isinstance(other, RationalFunction) else RationalFunction(other)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Polynomial, int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def diff(self, v: Variable) -> "RationalFunction":
        return RationalFunction(
            self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den * self.den
        )

    def strip_content(self) -> "RationalFunction":
        """Same value with the denominator's integer content divided out."""
        cd = self.den.content()
        return RationalFunction(self.num.scale(1 / cd), self.den.scale(1 / cd))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"


def ratfun_diff(f: RationalFunction, v: Variable) -> RationalFunction:
    return f.diff(v)


def ratfun_is_zero(f: RationalFunction) -> bool:
    return f.is_zero()
