"""Command line: ``kdvtau gen | verify | crosscheck``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from .. import kdv, verify
from ..ring import Polynomial, graded_degree
from . import cache
from .golden import printed, typo_ledger
from .serialize import SCHEMA_VERSION, from_document, to_document, to_latex, to_text

VARIABLE_SETS = {"q": ("theta", "recursion"), "t": ("tau", "wronskian_phi"), "s": ("W", "wronskian_psi")}
FORMATS = ("json", "latex", "text")


class InvalidConfig(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    command: str
    n: int
    variable_set: str = "q"
    format: str = "text"
    cache_dir: str | None = None
    flows: tuple[str, ...] | None = None
    timings: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.n < 0:
            raise InvalidConfig("--n must be nonnegative")
        if self.variable_set not in VARIABLE_SETS:
            raise InvalidConfig(f"--vars must be one of {sorted(VARIABLE_SETS)}")
        if self.format not in FORMATS:
            raise InvalidConfig(f"--format must be one of {FORMATS}")
        if self.command == "verify":
            if self.n < 1:
                raise InvalidConfig("verify needs --n >= 1")
            for f in self.flows or ():
                if f not in verify.FLOW_INDICES:
                    raise InvalidConfig(f"unknown flow {f!r}")
                if verify.FLOW_INDICES[f] > 2 * self.n - 1:
                    raise InvalidConfig(
                        f"flow {f} needs t{verify.FLOW_INDICES[f]} but tau_{self.n} carries only up to t{2 * self.n - 1}"
                    )


def _sequence(variable_set: str, n: int) -> list[Polynomial]:
    if variable_set == "q":
        return list(kdv.adler_moser_recursive(n).thetas)
    if variable_set == "t":
        return list(kdv.tau_polynomial(n).taus)
    return list(kdv.wronskians_psi(n))


def generate_documents(variable_set: str, n: int) -> list[dict]:
    name, route = VARIABLE_SETS[variable_set]
    docs = []
    for k, p in enumerate(_sequence(variable_set, n)):
        weight = graded_degree(p)
        docs.append(to_document(p, name=f"{name}_{k}", index=k, route=route, weight=weight))
    return docs


def run_gen(cfg: JobConfig, out: TextIO) -> int:
    key = {"command": "gen", "n": cfg.n, "variable_set": cfg.variable_set, "schema_version": SCHEMA_VERSION}
    docs = cache.cached(cache.resolve_cache_dir(cfg.cache_dir), key, lambda: generate_documents(cfg.variable_set, cfg.n))
    if cfg.format == "json":
        out.write(json.dumps(docs, indent=2, sort_keys=True) + "\n")
        return 0
    for doc in docs:
        p = from_document(doc)
        name, k = doc["name"].rsplit("_", 1)
        if cfg.format == "text":
            out.write(f"{name}_{k} = {to_text(p)}\n")
        else:
            tex_name = "\\theta" if name == "theta" else "\\tau" if name == "tau" else name
            out.write(f"{tex_name}_{{{k}}} = {to_latex(p)}\n")
    return 0


def run_verify(cfg: JobConfig, out: TextIO) -> int:
    reports = verify.run_suite(cfg.n, cfg.flows, workers=cfg.workers)
    for r in reports:
        out.write(json.dumps(r.to_json(cfg.timings), sort_keys=True) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def crosscheck_lines(n: int) -> list[tuple[str, str]]:
    """(status, message) pairs; status is PASS, WARN or FAIL."""
    lines: list[tuple[str, str]] = []
    ledger = typo_ledger()
    rec = kdv.adler_moser_recursive(n)
    wro = kdv.adler_moser_wronskian(n)
    taus = kdv.tau_polynomial(n)
    subst = kdv.tau_by_substitution(n)
    for k in range(n + 1):
        ok = rec[k] == wro[k]
        lines.append(("PASS" if ok else "FAIL", f"theta_{k}: recursion and scaled Wronskian agree" if ok else f"theta_{k}: routes differ"))
        ok = subst[k] == taus[k]
        lines.append(
            ("PASS" if ok else "FAIL", f"tau_{k}: theta_{k}(q(t)) equals mu_{k} Wr(phi)" if ok else f"tau_{k}: change of variables does not reproduce mu_{k} Wr(phi)")
        )

    def compare(kind: str, k: int, computed: Polynomial, label: str) -> None:
        reference = printed(kind).get(k)
        if reference is None:
            return
        if reference == computed:
            lines.append(("PASS", f"{label} matches the printed value"))
        elif f"{kind}/{k}" in ledger:
            lines.append(("WARN", f"{label}: printed {to_text(reference)}; computed {to_text(computed)} ({ledger[f'{kind}/{k}']})"))
        else:
            lines.append(("FAIL", f"{label}: printed {to_text(reference)}; computed {to_text(computed)}"))

    for k in range(1, n + 1):
        compare("theta", k, rec[k], f"theta_{k}")
    for k in range(n + 1):
        compare("tau", k, taus[k], f"tau_{k}")
    if n >= 2:
        for v, p in kdv.change_of_variables(n).q_in_t.items():
            compare("q", v.index, p, v.name)
    return lines


def run_crosscheck(cfg: JobConfig, out: TextIO) -> int:
    lines = crosscheck_lines(cfg.n)
    for status, message in lines:
        out.write(f"{status} {message}\n")
    return 1 if any(status == "FAIL" for status, _ in lines) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kdvtau", description="Adler-Moser polynomials and polynomial KdV tau functions")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit theta_n (q), tau_n (t) or W_n (s) for indices 0..n")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--vars", dest="variable_set", choices=sorted(VARIABLE_SETS), default="q")
    gen.add_argument("--format", choices=FORMATS, default="text")
    gen.add_argument("--cache-dir")

    ver = sub.add_parser("verify", help="run the exact verification suite up to index n")
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--flows", help="comma-separated subset of t3,t5,t7 (default: all admissible)")
    ver.add_argument("--workers", type=int, default=1)
    ver.add_argument("--timings", action="store_true", help="include elapsed seconds (output no longer reproducible)")

    cc = sub.add_parser("crosscheck", help="compare both routes and the printed values")
    cc.add_argument("--n", type=int, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    flows = None
    if getattr(args, "flows", None):
        flows = tuple(f.strip() for f in args.flows.split(",") if f.strip())
    return JobConfig(
        command=args.command,
        n=args.n,
        variable_set=getattr(args, "variable_set", "q"),
        format=getattr(args, "format", "text"),
        cache_dir=getattr(args, "cache_dir", None),
        flows=flows,
        timings=getattr(args, "timings", False),
        workers=getattr(args, "workers", 1),
    )


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        cfg.validate()
    except InvalidConfig as exc:
        print(f"kdvtau: invalid configuration: {exc}", file=sys.stderr)
        return 2
    runner = {"gen": run_gen, "verify": run_verify, "crosscheck": run_crosscheck}[cfg.command]
    return runner(cfg, out)
