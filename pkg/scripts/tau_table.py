"""Print theta_n, tau_n and the q(t) substitution side by side."""

import argparse

from kdvtau import kdv
from kdvtau.cli.serialize import to_latex, to_text


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--latex", action="store_true")
    args = ap.parse_args()
    fmt = to_latex if args.latex else to_text

    thetas, taus = kdv.adler_moser_recursive(args.n), kdv.tau_polynomial(args.n)
    for k in range(args.n + 1):
        print(f"theta_{k} = {fmt(thetas[k])}")
        print(f"  tau_{k} = {fmt(taus[k])}")
    if args.n >= 2:
        print()
        for v, p in kdv.change_of_variables(args.n).q_in_t.items():
            print(f"{v.name} = {fmt(p)}")


if __name__ == "__main__":
    main()
