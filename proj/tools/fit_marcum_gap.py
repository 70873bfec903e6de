#!/usr/bin/env python3
"""Fit exp(-e^mu * b^nu) to the exact first-order Marcum-Q for 0 < a < 10.

The polynomial mu/nu coefficients only cover a = 0 and 10 <= a <= 8000. This
script produces the node table used for the gap (include/a2g/detail/marcum_gap_table.inc).
For each node a, (mu, nu) minimise the squared error of the approximation
against scipy's non-central chi-square survival function over 400 uniform
points b in [0, a + 10].

Usage: python3 tools/fit_marcum_gap.py > include/a2g/detail/marcum_gap_table.inc
"""
import numpy as np
from scipy import stats
from scipy.optimize import least_squares

STEP = 0.25


def marcum_q1(a, b):
    return stats.ncx2.sf(b * b, 2, a * a)


def fit_node(a, guess):
    bs = np.linspace(0.0, a + 10.0, 400)
    q = marcum_q1(a, bs)
    safe_b = np.maximum(bs, 1e-300)

    def resid(p):
        return np.exp(-np.exp(p[0]) * safe_b ** p[1]) - q

    sol = least_squares(resid, guess, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return sol.x, float(np.sqrt(np.mean(sol.fun ** 2)))


def main():
    guess = np.array([-np.log(2.0), 2.0])
    print("// Generated by tools/fit_marcum_gap.py. Do not edit by hand.")
    print("// {a, mu, nu, rmse}: least-squares fit of exp(-e^mu b^nu) to Q1(a, b),")
    print("// b uniform on [0, a + 10] (400 points).")
    n = int(round(10.0 / STEP))
    for i in range(1, n):
        a = i * STEP
        (mu, nu), rmse = fit_node(a, guess)
        guess = np.array([mu, nu])
        print(f"{{{a:.2f}, {mu:.12e}, {nu:.12e}, {rmse:.3e}}},")


if __name__ == "__main__":
    main()
