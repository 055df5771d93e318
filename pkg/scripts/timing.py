"""Wall-clock table for both theta routes and the flow checks, cold caches."""

import argparse
import time

from kdvtau import kdv
from kdvtau.verify import admissible_flows, check_flow


def cold() -> None:
    for fn in (kdv._recursive_thetas, kdv.wronskians_psi, kdv.wronskians_phi):
        fn.cache_clear()


def clock(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--flows-up-to", type=int, default=4, help="largest n for the flow columns")
    args = ap.parse_args()

    print(f"{'n':>3} {'terms':>7} {'wronskian':>10} {'recursion':>10}  flows")
    for n in range(args.n + 1):
        cold()
        w = clock(lambda: kdv.adler_moser_wronskian(n))
        # the default pin reads one coefficient of the Wronskian route, which is warm now
        r = clock(lambda: kdv.adler_moser_recursive(n))
        flows = ""
        if 2 <= n <= args.flows_up_to:
            flows = "  ".join(f"{f} {clock(lambda f=f: check_flow(n, f)):.2f}s" for f in admissible_flows(n))
        terms = len(kdv.tau_polynomial(n)[n])
        print(f"{n:>3} {terms:>7} {w:>9.3f}s {r:>9.3f}s  {flows}")


if __name__ == "__main__":
    main()
