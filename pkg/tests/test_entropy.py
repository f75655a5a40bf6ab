import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kaprekar import DomainError, entropy_funnel, shannon_entropy


@pytest.mark.parametrize(
    "p, h", [([1.0], 0.0), ([0.5, 0.5], 1.0), ([0.25] * 4, 2.0), ([0.0, 1.0], 0.0)]
)
def test_shannon_known(p, h):
    assert shannon_entropy(p) == pytest.approx(h, abs=1e-15)


@pytest.mark.parametrize("p", [[0.5, 0.4], [1.2, -0.2], [], [np.nan, 1.0]])
def test_shannon_rejects(p):
    with pytest.raises(DomainError):
        shannon_entropy(p)


@given(st.lists(st.integers(0, 1000), min_size=1, max_size=30).filter(lambda c: sum(c) > 0))
def test_shannon_bounds(counts):
    p = np.array(counts, dtype=float) / sum(counts)
    h = shannon_entropy(p)
    assert 0.0 <= h <= math.log2(len(p)) + 1e-12
    direct = -sum(q * math.log2(q) for q in p if q > 0)
    assert h == pytest.approx(max(direct, 0.0), abs=1e-12)


def test_d3_funnel(ix3):
    f = entropy_funnel(ix3)
    assert f.t_star == 6
    assert f.n_converged[0] == 1 and f.n_converged[6] == 990
    assert np.all(f.H == 0) and np.all(f.H_norm == 0)
    # cumulative distance histogram from the string oracle
    assert f.n_converged.tolist() == [1, 150, 294, 564, 786, 936, 990]


def test_funnel_invariants(index):
    f = entropy_funnel(index)
    assert f.t_star == index.max_dist
    assert np.all(np.diff(f.n_converged) >= 0)
    assert f.n_converged[-1] == index.n_states
    assert np.allclose(f.p.sum(axis=1), 1.0, atol=1e-12)
    terminal = index.basin_sizes / index.n_states
    assert np.max(np.abs(f.p[-1] - terminal)) <= 1e-12
    bound = math.log2(index.n_attractors) if index.n_attractors > 1 else 0.0
    assert np.all(f.H >= 0) and np.all(f.H <= bound + 1e-12)
    assert f.H_norm[-1] in (0.0, 1.0)


def test_funnel_census_matches_dist(index):
    f = entropy_funnel(index)
    d = index.dist[index.states]
    for t in range(f.t_star + 1):
        assert f.n_converged[t] == int((d <= t).sum())


def test_d5_funnel_nonconstant(ix5):
    f = entropy_funnel(ix5)
    assert f.H[-1] > 0
    assert np.ptp(f.H) > 0
    assert f.H_norm[-1] == 1.0


def test_rows_iter(ix4):
    rows = list(entropy_funnel(ix4).rows())
    assert rows[0][0] == 0 and rows[-1][:2] == (7, 9990)
