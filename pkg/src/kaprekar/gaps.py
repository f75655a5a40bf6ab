"""Gap-space coarse graining and its empirical first-order Markov chain.

A state's gap pair is (g1, g2) = (d(1) - d(D), d(2) - d(3)) over its digits
sorted non-increasing. Pushing every state of S_D through one Kaprekar step
gives the transition frequencies between occupied gap pairs. The projected
process need not be Markov; the chain is only a summary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import Params, digits_of
from .dynamics import DynamicsIndex
from .errors import ConfigurationError, DegenerateFitError, DomainError, NumericalError


class GapState(NamedTuple):
    g1: int
    g2: int


def _require_three_digits(params: Params) -> None:
    if params.digits < 3:
        raise ConfigurationError("gap features need at least three digits")


def gap_of(value: int, params: Params) -> GapState:
    _require_three_digits(params)
    d = sorted(digits_of(value, params), reverse=True)
    if d[0] == d[-1]:
        raise DomainError(f"repdigit {params.fmt(value)} has no gap state")
    return GapState(d[0] - d[-1], d[1] - d[2])


def gap_arrays(sorted_ascending: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = sorted_ascending.astype(np.int64)
    return s[:, -1] - s[:, 0], s[:, -2] - s[:, -3]


# ---------------------------------------------------------------------------
# stationary distribution


def power_iteration(P, start, tol: float = 1e-12, max_iter: int = 10**6):
    """Iterate pi <- pi P from ``start`` until ||pi P - pi||_1 <= tol.

    Returns ``(pi, iterations, residual)`` where the residual belongs to the
    returned vector.
    """
    P = np.asarray(P, dtype=float)
    pi = np.asarray(start, dtype=float)
    if pi.ndim != 1 or P.shape != (pi.size, pi.size):
        raise DomainError(f"shape mismatch: P {P.shape}, start {pi.shape}")
    if (pi < 0).any() or abs(pi.sum() - 1.0) > 1e-12:
        raise DomainError("start vector must be a probability vector")
    pi = pi / pi.sum()
    res = np.inf
    for it in range(max_iter + 1):
        nxt = pi @ P
        res = float(np.abs(nxt - pi).sum())
        if res <= tol:
            return pi, it, res
        pi = nxt / nxt.sum()
    raise NumericalError(
        f"power iteration did not converge in {max_iter} steps (residual {res:.3e})"
    )


def stationary(P, start, tol: float = 1e-12, max_iter: int = 10**6) -> np.ndarray:
    return power_iteration(P, start, tol, max_iter)[0]


# ---------------------------------------------------------------------------
# the chain


@dataclass(frozen=True)
class Slopes:
    a: float  # d(Delta g1) / d g2
    b: float
    c: float  # d(Delta g2) / d g1
    d: float
    weighted: bool


@dataclass(frozen=True, eq=False)
class GapChain:
    params: Params
    states: tuple[GapState, ...]
    occupancy: np.ndarray
    counts: np.ndarray  # counts[i, j]: states in gap i whose successor lies in gap j
    P: np.ndarray
    start: np.ndarray
    pi: np.ndarray
    pi_iterations: int
    pi_residual: float
    drift: np.ndarray  # (n_gaps, 2): mean (Delta g1, Delta g2) per gap state
    mean_drift: tuple[float, float]
    slopes: Slopes

    @property
    def g1(self) -> np.ndarray:
        return np.array([g.g1 for g in self.states])

    @property
    def g2(self) -> np.ndarray:
        return np.array([g.g2 for g in self.states])

    def position(self, g) -> int:
        return self.states.index(GapState(*g))

    def drift_from_P(self) -> np.ndarray:
        """sum_h P[g, h] (h - g), for comparison with the state-level drift."""
        coords = np.column_stack([self.g1, self.g2]).astype(float)
        return self.P @ coords - coords


def build_chain(
    index: DynamicsIndex,
    tol: float = 1e-12,
    max_iter: int = 10**6,
    weighted: bool = False,
) -> GapChain:
    params = index.params
    _require_three_digits(params)
    B = params.base
    g1, g2 = gap_arrays(index.sorted_digits)
    code = g1 * B + g2
    states = index.states
    src = code[states]
    dst = code[index.succ[states]]

    occ_full = np.bincount(src, minlength=B * B)
    occupied = np.flatnonzero(occ_full)
    pos = np.full(B * B, -1, dtype=np.int64)
    pos[occupied] = np.arange(occupied.size)
    i, j = pos[src], pos[dst]
    if (j < 0).any():
        raise NumericalError("a successor gap state lies outside the occupied set")

    n = occupied.size
    counts = np.zeros((n, n), dtype=np.int64)
    np.add.at(counts, (i, j), 1)
    occupancy = occ_full[occupied]
    P = counts / occupancy[:, None]

    dg1 = (g1[index.succ[states]] - g1[states]).astype(float)
    dg2 = (g2[index.succ[states]] - g2[states]).astype(float)
    drift = np.column_stack(
        [np.bincount(i, weights=dg1, minlength=n), np.bincount(i, weights=dg2, minlength=n)]
    ) / occupancy[:, None]

    start = occupancy / occupancy.sum()
    pi, iters, res = power_iteration(P, start, tol, max_iter)

    gap_states = tuple(GapState(int(c // B), int(c % B)) for c in occupied)
    gs1 = occupied // B
    gs2 = occupied % B
    w = occupancy if weighted else None
    a, b = linear_fit(gs2, drift[:, 0], w)
    c, d = linear_fit(gs1, drift[:, 1], w)
    return GapChain(
        params=params,
        states=gap_states,
        occupancy=occupancy,
        counts=counts,
        P=P,
        start=start,
        pi=pi,
        pi_iterations=iters,
        pi_residual=res,
        drift=drift,
        mean_drift=(float(dg1.mean()), float(dg2.mean())),
        slopes=Slopes(a, b, c, d, weighted),
    )


def linear_fit(x, y, weights=None) -> tuple[float, float]:
    """Least-squares slope and intercept of y on x, optionally weighted."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.unique(x).size < 2:
        raise DegenerateFitError("need at least two distinct regressor values")
    w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float)
    xm = np.sum(w * x) / w.sum()
    ym = np.sum(w * y) / w.sum()
    sxx = np.sum(w * (x - xm) ** 2)
    slope = np.sum(w * (x - xm) * (y - ym)) / sxx
    return float(slope), float(ym - slope * xm)


@dataclass(frozen=True)
class DriftRecord:
    digits: int
    a: float
    b: float
    c: float
    d: float
    mean_dg1: float
    mean_dg2: float
    weighted: bool


def drift_summary(chains, weighted: bool | None = None) -> list[DriftRecord]:
    """One record per chain; ``weighted`` refits the slopes if it differs from the build."""
    out = []
    for ch in chains:
        sl = ch.slopes
        if weighted is not None and weighted != sl.weighted:
            w = ch.occupancy if weighted else None
            a, b = linear_fit(ch.g2, ch.drift[:, 0], w)
            c, d = linear_fit(ch.g1, ch.drift[:, 1], w)
            sl = Slopes(a, b, c, d, weighted)
        out.append(
            DriftRecord(
                digits=ch.params.digits,
                a=sl.a,
                b=sl.b,
                c=sl.c,
                d=sl.d,
                mean_dg1=ch.mean_drift[0],
                mean_dg2=ch.mean_drift[1],
                weighted=sl.weighted,
            )
        )
    return out
