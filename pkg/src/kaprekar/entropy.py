"""Entropy funnels: attractor-label entropy among states converged by step t."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import DynamicsIndex
from .errors import DomainError


def shannon_entropy(p, tol: float = 1e-12) -> float:
    """Entropy in bits with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("probability vector must be one-dimensional and non-empty")
    if (p < 0).any() or not np.isfinite(p).all():
        raise DomainError("probabilities must be finite and non-negative")
    if abs(p.sum() - 1.0) > tol:
        raise DomainError(f"probabilities sum to {p.sum()!r}, not 1")
    nz = p[p > 0]
    h = -float(np.sum(nz * np.log2(nz)))
    return h if h > 0 else 0.0


@dataclass(frozen=True, eq=False)
class EntropyFunnel:
    """One row per iteration t = 0 .. t_star.

    ``counts[t, a]`` is the number of states with attractor ``a`` and
    distance <= t, so ``p[t] = counts[t] / n_converged[t]``.
    """

    counts: np.ndarray
    n_converged: np.ndarray
    p: np.ndarray
    H: np.ndarray
    H_norm: np.ndarray

    @property
    def t_star(self) -> int:
        return self.counts.shape[0] - 1

    def rows(self):
        for t in range(self.t_star + 1):
            yield t, int(self.n_converged[t]), float(self.H[t]), float(self.H_norm[t])


def entropy_funnel(index: DynamicsIndex) -> EntropyFunnel:
    states = index.states
    dist = index.dist[states]
    lab = index.attractor_of[states]
    t_star = index.max_dist
    n_att = index.n_attractors
    joint = np.zeros((t_star + 1, n_att), dtype=np.int64)
    np.add.at(joint, (dist, lab), 1)
    counts = np.cumsum(joint, axis=0)
    n_conv = counts.sum(axis=1)
    # N_0 >= 1 always: cycle states have distance 0
    p = counts / n_conv[:, None]
    H = np.array([shannon_entropy(row) for row in p])
    if H[-1] > 0:
        H_norm = H / H[-1]
    else:
        H_norm = np.zeros_like(H)
    return EntropyFunnel(counts=counts, n_converged=n_conv, p=p, H=H, H_norm=H_norm)
