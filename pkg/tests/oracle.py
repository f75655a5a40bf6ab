"""Brute-force references built on string formatting only.

Nothing here imports the package, so these stay independent of the
vectorized paths they check. Base 10 only.
"""

from functools import lru_cache


def step(x, D):
    s = f"{x:0{D}d}"
    return int("".join(sorted(s, reverse=True))) - int("".join(sorted(s)))


def nontrivial(D):
    return [x for x in range(10**D) if len(set(f"{x:0{D}d}")) > 1]


def orbit(x, D):
    """(distance to the cycle, canonical cycle id = its minimum member)."""
    pos = {}
    seq = []
    while x not in pos:
        pos[x] = len(seq)
        seq.append(x)
        x = step(x, D)
    return pos[x], min(seq[pos[x]:])


@lru_cache(maxsize=None)
def exhaustive(D):
    """{state: (dist, cycle_min)} over S_D."""
    return {x: orbit(x, D) for x in nontrivial(D)}


def sorted_digits(x, D):
    return sorted((int(c) for c in f"{x:0{D}d}"), reverse=True)


def gaps(x, D):
    d = sorted_digits(x, D)
    return d[0] - d[-1], d[1] - d[2]
