"""Published reference values, and the ledger of their known misprints."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..ring import Polynomial
from .serialize import parse_text


@lru_cache(maxsize=None)
def _raw() -> dict:
    return json.loads(resources.files("kdvtau").joinpath("data/reference_values.json").read_text())


def printed(kind: str) -> dict[int, Polynomial]:
    """Printed polynomials of one kind ("theta", "tau" or "q"), keyed by index."""
    return {int(k): parse_text(v) for k, v in _raw()[kind].items()}


def typo_ledger() -> dict[str, str]:
    return {entry["key"]: entry["note"] for entry in _raw()["typos"]}
