"""Sensitivity of the regression and drift summaries to analysis conventions.

Compares, per D: full population vs states without leading zeros, RMSE with
n vs n-p denominators, and unweighted vs occupancy-weighted drift slopes.
"""

import numpy as np

from kaprekar import Params, build_chain, build_index, drift_summary
from kaprekar.stats import features_for, fit_ols, sample_states, standardize, with_intercept


def fit(index, states):
    t = features_for(index, states)
    Z, _, _ = standardize(t.matrix())
    r = fit_ols(with_intercept(Z), t.dist)
    return r.r2, r.rmse, r.rmse * np.sqrt(r.n / (r.n - 5)), r.n


def main():
    print("regression: population    R2     RMSE(n)  RMSE(n-p)   n")
    for D in (3, 4, 5, 6):
        ix = build_index(Params(10, D))
        states = sample_states(ix, 50_000, 0)
        no_lead = states[states >= 10 ** (D - 1)]
        for label, s in (("S_D", states), ("no leading 0", no_lead)):
            r2, e1, e2, n = fit(ix, s)
            print(f"  D={D} {label:<14} {r2:7.4f} {e1:8.4f} {e2:9.4f} {n:7d}")
    print("\ndrift slopes:     a(unw)   c(unw)   a(w)     c(w)")
    chains = [build_chain(build_index(Params(10, D))) for D in (3, 4, 5, 6)]
    for u, w in zip(drift_summary(chains, weighted=False), drift_summary(chains, weighted=True)):
        print(f"  D={u.digits}          {u.a:8.4f} {u.c:8.4f} {w.a:8.4f} {w.c:8.4f}")


if __name__ == "__main__":
    main()
