"""Digit-multiset classes: states that are permutations of each other."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .core import Params, desc_asc_array
from .dynamics import DynamicsIndex


@dataclass(frozen=True)
class MultisetClass:
    key: tuple[int, ...]  # digits in non-increasing order
    size: int
    mean_dist: float
    attractor_counts: dict[int, int]

    @property
    def attractor_mode(self) -> int:
        """Attractor receiving most members; smallest id on ties."""
        return min(self.attractor_counts, key=lambda a: (-self.attractor_counts[a], a))


def multinomial_size(key) -> int:
    """Number of distinct arrangements of the multiset ``key``."""
    n = factorial(len(key))
    for m in Counter(key).values():
        n //= factorial(m)
    return n


def n_classes(params: Params) -> int:
    """Non-constant multisets of D digits from a base-B alphabet."""
    return comb(params.base + params.digits - 1, params.digits) - params.base


def enumerate_classes(index: DynamicsIndex) -> list[MultisetClass]:
    """All classes, sorted by key (lexicographic on the non-increasing digit tuple)."""
    states = index.states
    s = index.sorted_digits[states]
    # the non-increasing digit string read as an integer (desc) identifies the multiset
    desc, _ = desc_asc_array(s, index.params)
    keys, inv = np.unique(desc, return_inverse=True)
    n_k = keys.size
    dist = index.dist[states]
    lab = index.attractor_of[states]
    members = np.bincount(inv, minlength=n_k)
    dist_sum = np.bincount(inv, weights=dist, minlength=n_k)
    comp = np.zeros((n_k, index.n_attractors), dtype=np.int64)
    np.add.at(comp, (inv, lab), 1)

    first = np.zeros(n_k, dtype=np.int64)
    first[inv[::-1]] = np.arange(inv.size)[::-1]
    out = []
    for k in range(n_k):
        key = tuple(int(d) for d in s[first[k]][::-1])
        size = multinomial_size(key)
        out.append(
            MultisetClass(
                key=key,
                size=size,
                mean_dist=float(dist_sum[k] / members[k]),
                attractor_counts={int(a): int(c) for a, c in enumerate(comp[k]) if c},
            )
        )
    out.sort(key=lambda c: c.key)
    return out


def class_size_distribution(classes) -> dict[int, tuple[int, float]]:
    """size -> (number of classes, fraction of classes)."""
    c = Counter(cl.size for cl in classes)
    n = len(classes)
    return {s: (c[s], c[s] / n) for s in sorted(c)}


def class_distance_distribution(classes) -> dict[float, tuple[int, float]]:
    """Exact-value histogram of per-class mean distance."""
    c = Counter(cl.mean_dist for cl in classes)
    n = len(classes)
    return {d: (c[d], c[d] / n) for d in sorted(c)}


def basin_composition(index: DynamicsIndex, classes) -> dict[int, dict[tuple[int, ...], int]]:
    comp: dict[int, dict[tuple[int, ...], int]] = {a.id: {} for a in index.attractors}
    for cl in classes:
        for a, c in cl.attractor_counts.items():
            comp[a][cl.key] = c
    return comp
