"""Print the global landscape, entropy endpoints, drift slopes and regression
fits for a range of digit lengths.

    python scripts/landscape.py            # D = 3..6
    python scripts/landscape.py 3 7
"""

import sys
import time

from kaprekar import Params, build_chain, build_index, entropy_funnel, global_summary, regress


def main(lo=3, hi=6):
    print(f"{'D':>2} {'states':>9} {'attr':>4} {'maxper':>6} {'largest':>8} {'mean':>6} {'med':>3} {'max':>3}"
          f" {'H*':>6} {'a':>7} {'c':>7} {'<dg1>':>7} {'<dg2>':>7} {'R2':>6} {'RMSE':>6} {'sec':>5}")
    for D in range(lo, hi + 1):
        t = time.perf_counter()
        ix = build_index(Params(10, D))
        s = global_summary(ix)
        f = entropy_funnel(ix)
        ch = build_chain(ix)
        r = regress(ix)
        sl = ch.slopes
        print(f"{D:>2} {s.n_states:>9} {s.n_attractors:>4} {s.max_period:>6} {s.largest_basin_fraction:>8.4f}"
              f" {s.mean_dist:>6.3f} {s.median_dist:>3} {s.max_dist:>3} {f.H[-1]:>6.3f}"
              f" {sl.a:>7.3f} {sl.c:>7.3f} {ch.mean_drift[0]:>7.3f} {ch.mean_drift[1]:>7.3f}"
              f" {r.r2:>6.3f} {r.rmse:>6.3f} {time.perf_counter() - t:>5.2f}")
        for a in ix.attractors:
            members = " ".join(ix.params.fmt(m) for m in a.members)
            print(f"     attractor {a.id}: period {a.period}, basin {a.basin_size:>7}  [{members}]")


if __name__ == "__main__":
    main(*map(int, sys.argv[1:3]))
