"""Compare the two ways of fixing the free c(q) theta_{n-2} term in theta_n.

The recursion leaves theta_n determined up to c(q) theta_{n-2}.  For each n
this prints the x^{d_{n-2}} coefficient of mu_n W_n minus q_{2n-1} and checks
both candidates, after the tanh change of variables, against the bilinear
KdV equation (D_x^4 - 4 D_x D_t3) tau . tau = 0.
"""

import argparse

from kdvtau import kdv
from kdvtau.cli.serialize import to_text
from kdvtau.ring import X, Polynomial, q, t


def hirota_kdv(tau: Polynomial) -> Polynomial:
    dx = lambda p, k=1: p.diff(X, k)
    dt = lambda p: p.diff(t(3))
    d4 = (tau * dx(tau, 4) - (dx(tau) * dx(tau, 3)).scale(4) + (dx(tau, 2) * dx(tau, 2)).scale(3)).scale(2)
    d13 = (tau * dt(dx(tau)) - dx(tau) * dt(tau)).scale(2)
    return d4 - d13.scale(4)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=7)
    args = ap.parse_args()
    cov = kdv.change_of_variables(args.n).q_in_t
    for n in range(2, args.n + 1):
        tau_norm = kdv.adler_moser_recursive(n)[n]
        bare = kdv.adler_moser_recursive(n, "monomial")[n]
        shift = tau_norm.coeff_in(X, kdv.d(n - 2)) - Polynomial.var(q(2 * n - 1))
        ok_tau = hirota_kdv(tau_norm.subs(cov)).is_zero()
        ok_bare = hirota_kdv(bare.subs(cov)).is_zero()
        print(f"n={n}  shift={to_text(shift)}  bilinear KdV: tau-pin {ok_tau}, bare q-pin {ok_bare}")


if __name__ == "__main__":
    main()
