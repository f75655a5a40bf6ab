"""Linear prediction of distance-to-attractor from digit features, and the
easy/hard decile comparison.

Digit variance is the population variance over the D digits. RMSE divides
by n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import DynamicsIndex
from .errors import DegenerateFeatureError, DomainError, SingularFitError
from .gaps import gap_arrays

FEATURES = ("g1", "g2", "digit_sum", "digit_var")
DEFAULT_SAMPLE_SIZE = 50_000


@dataclass(frozen=True)
class FeatureRow:
    state: int
    g1: int
    g2: int
    digit_sum: int
    digit_var: float
    dist: int


@dataclass(frozen=True, eq=False)
class FeatureTable:
    """Column-oriented feature rows; iterate for :class:`FeatureRow` records."""

    state: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    digit_sum: np.ndarray
    digit_var: np.ndarray
    dist: np.ndarray
    seed: int | None = None

    def __len__(self) -> int:
        return self.state.size

    def __iter__(self):
        for k in range(len(self)):
            yield FeatureRow(
                int(self.state[k]),
                int(self.g1[k]),
                int(self.g2[k]),
                int(self.digit_sum[k]),
                float(self.digit_var[k]),
                int(self.dist[k]),
            )

    def matrix(self) -> np.ndarray:
        """(n, 4) float matrix in FEATURES order."""
        return np.column_stack([getattr(self, f).astype(float) for f in FEATURES])


def features_for(index: DynamicsIndex, states, seed: int | None = None) -> FeatureTable:
    states = np.asarray(states, dtype=np.int64)
    s = index.sorted_digits[states].astype(np.int64)
    g1, g2 = gap_arrays(s)
    D = index.params.digits
    dsum = s.sum(axis=1)
    # population variance computed from integer moments
    dvar = (D * (s * s).sum(axis=1) - dsum * dsum) / (D * D)
    return FeatureTable(
        state=states,
        g1=g1,
        g2=g2,
        digit_sum=dsum,
        digit_var=dvar.astype(float),
        dist=index.dist[states],
        seed=seed,
    )


def sample_states(index: DynamicsIndex, sample_size: int, seed: int) -> np.ndarray:
    """All of S_D if it fits, else a seeded uniform sample without replacement (sorted)."""
    if sample_size < 1:
        raise DomainError("sample_size must be >= 1")
    states = index.states
    if states.size <= sample_size:
        return states
    rng = np.random.default_rng(seed)
    pick = rng.permutation(states.size)[:sample_size]
    return states[np.sort(pick)]


def extract_features(
    index: DynamicsIndex, sample_size: int = DEFAULT_SAMPLE_SIZE, seed: int = 0
) -> FeatureTable:
    return features_for(index, sample_states(index, sample_size, seed), seed)


def standardize(X, names=FEATURES):
    """Column-wise z-scores with sample std (ddof=1). Returns (Z, mean, std)."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.shape[0] < 2:
        raise DomainError("need at least two rows to standardize")
    mean = X.mean(axis=0)
    std = X.std(axis=0, ddof=1)
    for k in range(X.shape[1]):
        if not std[k] > 0:
            name = names[k] if k < len(names) else f"column {k}"
            raise DegenerateFeatureError(f"feature {name!r} has zero spread")
    return (X - mean) / std, mean, std


@dataclass(frozen=True, eq=False)
class RegressionResult:
    betas: np.ndarray  # intercept first, then one weight per standardized feature
    r2: float
    rmse: float
    n: int
    seed: int | None = None
    mean: np.ndarray | None = None
    std: np.ndarray | None = None

    def predict_raw(self, X) -> np.ndarray:
        """Predictions from unstandardized features using the stored scaling."""
        Z = (np.asarray(X, dtype=float) - self.mean) / self.std
        return self.betas[0] + Z @ self.betas[1:]


def with_intercept(Z) -> np.ndarray:
    Z = np.asarray(Z, dtype=float)
    return np.column_stack([np.ones(Z.shape[0]), Z])


def fit_ols(X, y) -> RegressionResult:
    """Least squares on a design matrix that already contains the intercept column."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, p = X.shape
    if n <= p:
        raise SingularFitError(f"{n} observations for {p} regressors")
    Q, R = np.linalg.qr(X)
    diag = np.abs(np.diag(R))
    if diag.min() <= diag.max() * max(n, p) * np.finfo(float).eps:
        raise SingularFitError("design matrix is rank deficient")
    beta = np.linalg.solve(R, Q.T @ y)
    resid = y - X @ beta
    sse = float(resid @ resid)
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    return RegressionResult(betas=beta, r2=r2, rmse=float(np.sqrt(sse / n)), n=n)


def regress(index: DynamicsIndex, sample_size: int = DEFAULT_SAMPLE_SIZE, seed: int = 0):
    """Feature extraction, standardization and OLS in one call."""
    table = extract_features(index, sample_size, seed)
    Z, mean, std = standardize(table.matrix())
    fit = fit_ols(with_intercept(Z), table.dist)
    return RegressionResult(
        betas=fit.betas, r2=fit.r2, rmse=fit.rmse, n=fit.n, seed=seed, mean=mean, std=std
    )


EASY_HARD_FEATURES = ("g1", "digit_var", "digit_sum", "g2")


@dataclass(frozen=True)
class EasyHard:
    n_group: int
    easy: dict[str, float]
    hard: dict[str, float]
    easy_states: np.ndarray
    hard_states: np.ndarray


def easy_hard_comparison(index: DynamicsIndex) -> EasyHard:
    """Mean features over the fastest and slowest deciles of distance.

    Ties in distance are broken by ascending state value in both groups.
    """
    states = index.states
    if states.size < 10:
        raise DomainError("need at least 10 states for deciles")
    k = states.size // 10
    d = index.dist[states]
    easy = states[np.lexsort((states, d))[:k]]
    hard = states[np.lexsort((states, -d))[:k]]
    fe, fh = features_for(index, easy), features_for(index, hard)
    return EasyHard(
        n_group=k,
        easy={f: float(getattr(fe, f).mean()) for f in EASY_HARD_FEATURES},
        hard={f: float(getattr(fh, f).mean()) for f in EASY_HARD_FEATURES},
        easy_states=easy,
        hard_states=hard,
    )
