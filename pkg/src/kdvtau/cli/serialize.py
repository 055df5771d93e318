"""Text, LaTeX and JSON forms of polynomials.

The text form is also the parse format (``x^6 + 5*q3*x^3 - 7/3*q5^2``);
JSON documents carry coefficients as exact ``"p/q"`` strings.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from ..ring import Polynomial, Variable

SCHEMA_VERSION = "1"


def _display_order(v: Variable) -> tuple[int, int, int]:
    # x is printed after the other times, lambda_inv last: "5*q3*x^3"
    if v.family == "lambda_inv":
        return (2, 0, 0)
    if v.family == "t" and v.index == 1:
        return (1, 0, 0)
    return (0, *v.sort_key)


def _factors(exps: dict[Variable, int]) -> list[tuple[Variable, int]]:
    return sorted(exps.items(), key=lambda kv: _display_order(kv[0]))


def _join(pieces: list[tuple[Fraction, str]], fmt_coeff) -> str:
    if not pieces:
        return "0"
    out = []
    for i, (c, mono) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        else:
            body = fmt_coeff(mag, bool(mono)) + mono
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def to_text(p: Polynomial) -> str:
    pieces = []
    for exps, c in p.terms():
        mono = "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in _factors(exps))
        pieces.append((c, mono))

    def coeff(mag: Fraction, has_mono: bool) -> str:
        text = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        return text + ("*" if has_mono else "")

    return _join(pieces, coeff)


def _latex_name(v: Variable) -> str:
    if v.family == "lambda_inv":
        return r"\lambda"
    if v.family == "t" and v.index == 1:
        return "x"
    return f"{v.family}_{{{v.index}}}"


def to_latex(p: Polynomial) -> str:
    pieces = []
    for exps, c in p.terms():
        parts = []
        for v, e in _factors(exps):
            if v.family == "lambda_inv":
                e = -e
            name = _latex_name(v)
            parts.append(name if e == 1 else f"{name}^{{{e}}}")
        pieces.append((c, "".join(parts)))

    def coeff(mag: Fraction, has_mono: bool) -> str:
        if mag.denominator == 1:
            return str(mag.numerator)
        return rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"

    return _join(pieces, coeff)


_TERM_SPLIT = re.compile(r"\s+([+-])\s+")
_FACTOR = re.compile(r"^([a-z_]+[0-9]*)(?:\^(-?\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_text(text: str) -> Polynomial:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if text in ("", "0"):
        return Polynomial()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].lstrip()
    chunks = _TERM_SPLIT.split(text)
    terms = []
    signs = [sign] + [1 if op == "+" else -1 for op in chunks[1::2]]
    for sgn, body in zip(signs, chunks[0::2]):
        coeff = Fraction(sgn)
        exps: dict[Variable, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r} in {body!r}")
            v = Variable.from_name(m.group(1))
            exps[v] = exps.get(v, 0) + int(m.group(2) or 1)
        terms.append((exps, coeff))
    return Polynomial.from_terms(terms)


def fraction_string(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def to_document(p: Polynomial, *, name: str, index: int, route: str, weight: int | None) -> dict[str, Any]:
    variables = [v.name for v in p.variables()]
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "variables": variables,
        "terms": [
            {"coeff": fraction_string(c), "exponents": {v.name: e for v, e in _factors(exps)}}
            for exps, c in p.terms()
        ],
        "metadata": {"index": index, "route": route, "weight": weight},
    }


def from_document(doc: dict[str, Any]) -> Polynomial:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
    return Polynomial.from_terms(
        ({Variable.from_name(k): e for k, e in term["exponents"].items()}, Fraction(term["coeff"]))
        for term in doc["terms"]
    )
