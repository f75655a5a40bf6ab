"""Functional graph of the Kaprekar map on S_D: cycles, basins, distances.

Attractors are attracting cycles; a fixed point is a cycle of period 1.
Every array in :class:`DynamicsIndex` is dense over all base**D values;
repdigits carry the sentinel ``-1`` for attractor and distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Params, digit_matrix, successor_array, trivial_mask
from .errors import ClosureError, ConfigurationError

UNDEFINED = -1

# dense int64 arrays of this many entries are still comfortably in memory
MAX_INDEX_STATES = 10**7


@dataclass(frozen=True)
class AttractorInfo:
    id: int
    members: tuple[int, ...]
    basin_size: int

    @property
    def period(self) -> int:
        return len(self.members)

    @property
    def is_fixed_point(self) -> bool:
        return len(self.members) == 1


@dataclass(frozen=True, eq=False)
class DynamicsIndex:
    params: Params
    succ: np.ndarray
    attractor_of: np.ndarray
    dist: np.ndarray
    attractors: tuple[AttractorInfo, ...]
    sorted_digits: np.ndarray = field(repr=False)
    max_dist: int = 0
    mean_dist: float = 0.0
    median_dist: int = 0

    @property
    def n_states(self) -> int:
        return self.params.n_states

    @property
    def n_attractors(self) -> int:
        return len(self.attractors)

    @property
    def states(self) -> np.ndarray:
        """Values of S_D in ascending order."""
        return np.flatnonzero(self.dist >= 0)

    @property
    def basin_sizes(self) -> np.ndarray:
        return np.array([a.basin_size for a in self.attractors], dtype=np.int64)

    def on_cycle(self) -> np.ndarray:
        return self.dist == 0


def _cycle_states(succ: np.ndarray, start: np.ndarray) -> np.ndarray:
    # Push the set forward until it stops shrinking; only cycle states survive.
    alive = start
    while True:
        nxt = np.unique(succ[alive])
        if nxt.shape == alive.shape and np.array_equal(nxt, alive):
            return alive
        alive = nxt


def _propagate(succ: np.ndarray, pending: np.ndarray, dist: np.ndarray, label: np.ndarray) -> None:
    """Fill dist/label backwards from resolved successors, one level per pass."""
    while pending.size:
        nxt = succ[pending]
        ready = dist[nxt] >= 0
        if not ready.any():
            raise ClosureError(f"state {int(pending[0])} never reaches a cycle")
        done = pending[ready]
        dist[done] = dist[nxt[ready]] + 1
        label[done] = label[nxt[ready]]
        pending = pending[~ready]


def build_index(params: Params, max_states: int = MAX_INDEX_STATES) -> DynamicsIndex:
    if params.n_values > max_states:
        raise ConfigurationError(
            f"{params.n_values} states exceed the in-memory limit of {max_states}"
        )
    s = np.sort(digit_matrix(params), axis=1)
    succ = successor_array(params, s).astype(np.int64)
    trivial = trivial_mask(s)
    nontrivial = np.flatnonzero(~trivial)

    bad = trivial[succ[nontrivial]]
    if bad.any():
        x = int(nontrivial[np.argmax(bad)])
        raise ClosureError(
            f"non-trivial state {params.fmt(x)} maps to repdigit {params.fmt(int(succ[x]))}"
        )

    cyc = _cycle_states(succ, nontrivial)
    n = params.n_values
    dist = np.full(n, UNDEFINED, dtype=np.int64)
    label = np.full(n, UNDEFINED, dtype=np.int64)

    cycles = []
    seen = set()
    for c in cyc.tolist():  # ascending, so c is the minimum of a new cycle
        if c in seen:
            continue
        members = [c]
        x = int(succ[c])
        while x != c:
            members.append(x)
            x = int(succ[x])
        seen.update(members)
        cycles.append(tuple(members))
    cycles.sort(key=lambda m: m[0])
    for i, members in enumerate(cycles):
        idx = np.asarray(members, dtype=np.int64)
        dist[idx] = 0
        label[idx] = i

    _propagate(succ, nontrivial[dist[nontrivial] < 0], dist, label)

    basin = np.bincount(label[nontrivial], minlength=len(cycles))
    attractors = tuple(
        AttractorInfo(id=i, members=m, basin_size=int(basin[i])) for i, m in enumerate(cycles)
    )
    d = dist[nontrivial]
    for arr in (succ, dist, label, s):
        arr.setflags(write=False)
    return DynamicsIndex(
        params=params,
        succ=succ,
        attractor_of=label,
        dist=dist,
        attractors=attractors,
        sorted_digits=s,
        max_dist=int(d.max()),
        mean_dist=float(d.mean()),
        median_dist=lower_median(d),
    )


def lower_median(values) -> int:
    """Element at index floor((N-1)/2) of the sorted values."""
    v = np.sort(np.asarray(values))
    return int(v[(v.size - 1) // 2])


def distance_histogram(index: DynamicsIndex) -> dict[int, int]:
    counts = np.bincount(index.dist[index.dist >= 0])
    return {t: int(c) for t, c in enumerate(counts) if c}


@dataclass(frozen=True)
class GlobalSummary:
    digits: int
    n_states: int
    n_attractors: int
    largest_basin_fraction: float
    mean_dist: float
    median_dist: int
    max_dist: int
    max_period: int


def global_summary(index: DynamicsIndex) -> GlobalSummary:
    return GlobalSummary(
        digits=index.params.digits,
        n_states=index.n_states,
        n_attractors=index.n_attractors,
        largest_basin_fraction=int(index.basin_sizes.max()) / index.n_states,
        mean_dist=index.mean_dist,
        median_dist=index.median_dist,
        max_dist=index.max_dist,
        max_period=max(a.period for a in index.attractors),
    )


def orbit_to_cycle(value: int, params: Params) -> tuple[int, tuple[int, ...]]:
    """Naive iteration with a visited map: (steps until on the cycle, cycle from its minimum).

    Independent of :func:`build_index`; used as its oracle.
    """
    from .core import kaprekar_step

    seen: dict[int, int] = {}
    x = value
    t = 0
    while x not in seen:
        seen[x] = t
        x = kaprekar_step(x, params)
        t += 1
    entry = seen[x]
    cycle = [x]
    y = kaprekar_step(x, params)
    while y != x:
        cycle.append(y)
        y = kaprekar_step(y, params)
    k = cycle.index(min(cycle))
    return entry, tuple(cycle[k:] + cycle[:k])
