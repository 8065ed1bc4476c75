"""Core Markov chain objects: validated transition matrices, distribution
evolution, conditional expectation, and trajectory sampling.

Distributions and state functions are plain numpy vectors; validators at
the API boundary enforce their contracts. Row-vector convention
throughout: a distribution evolves as mu(t+k)^T = mu(t)^T P^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateLabel,
    NegativeEntry,
    RowSumViolation,
    UnknownLabel,
)

ROW_SUM_ATOL = 1e-9
ENTRY_CLAMP = 1e-12


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic matrix over a labelled finite state space."""

    labels: tuple[str, ...]
    p: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown state label {label!r}") from None

    def power(self, k: int) -> np.ndarray:
        if k < 0:
            raise ValueError("negative matrix power")
        return np.linalg.matrix_power(self.p, k)


def build_chain(labels, p) -> TransitionMatrix:
    """Validate and freeze a transition matrix.

    Entries in [-1e-12, 0) are clamped to zero; anything more negative is
    rejected. Row sums must equal one within 1e-9; rows are then
    renormalized exactly so downstream algebra sees clean input.
    """
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("state labels must be unique")
    p = np.array(p, dtype=float)
    n = len(labels)
    if p.shape != (n, n):
        raise DimensionMismatch(f"matrix shape {p.shape} does not match {n} labels")
    if np.any(p < -ENTRY_CLAMP):
        i, j = np.unravel_index(int(np.argmin(p)), p.shape)
        raise NegativeEntry(f"P[{i},{j}] = {p[i, j]:.3e} is negative")
    p = np.where(p < 0, 0.0, p)
    sums = p.sum(axis=1)
    bad = np.where(np.abs(sums - 1.0) > ROW_SUM_ATOL)[0]
    if bad.size:
        i = int(bad[0])
        raise RowSumViolation(f"row {i} sums to {sums[i]:.12f}, expected 1")
    p = p / sums[:, None]
    p.setflags(write=False)
    return TransitionMatrix(labels=labels, p=p)


def validate_distribution(mu, n: int | None = None) -> np.ndarray:
    """Clamp tiny negatives, check the mass sums to one, renormalize."""
    mu = np.array(mu, dtype=float).reshape(-1)
    if n is not None and mu.size != n:
        raise DimensionMismatch(f"distribution length {mu.size}, expected {n}")
    if np.any(mu < -ENTRY_CLAMP):
        raise NegativeEntry("distribution has a negative entry")
    mu = np.where(mu < 0, 0.0, mu)
    total = mu.sum()
    if abs(total - 1.0) > ROW_SUM_ATOL:
        raise RowSumViolation(f"distribution mass {total:.12f}, expected 1")
    return mu / total


def point_mass(chain: TransitionMatrix, label: str) -> np.ndarray:
    mu = np.zeros(chain.n)
    mu[chain.index(label)] = 1.0
    return mu


def evolve(chain: TransitionMatrix, mu, steps: int = 1) -> np.ndarray:
    """Push a distribution forward: mu(t+k)^T = mu(t)^T P^k."""
    mu = validate_distribution(mu, chain.n)
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    for _ in range(steps):
        mu = mu @ chain.p
    return mu


def conditional_expectation(chain: TransitionMatrix, x, steps: int = 1) -> np.ndarray:
    """E[x(X_{t+k}) | X_t = s_i] for every i, i.e. P^k x."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != chain.n:
        raise DimensionMismatch(f"state function length {x.size}, expected {chain.n}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    out = x.copy()
    for _ in range(steps):
        out = chain.p @ out
    return out


def sample(chain: TransitionMatrix, start, length: int, seed: int,
           trajectory: int = 0) -> list[str]:
    """One trajectory of `length` transitions from `start`.

    Transitions draw by inverse CDF over the row in label order, from
    numpy's default generator seeded with seed + trajectory, so distinct
    trajectories use independent, reproducible streams.
    """
    i = chain.index(start) if isinstance(start, str) else int(start)
    rng = np.random.default_rng(int(seed) + int(trajectory))
    cdf = np.cumsum(chain.p, axis=1)
    path = [chain.labels[i]]
    for _ in range(length):
        u = rng.random()
        i = int(np.searchsorted(cdf[i], u, side="right"))
        i = min(i, chain.n - 1)
        path.append(chain.labels[i])
    return path


def occupancy(chain: TransitionMatrix, start, length: int, seed: int,
              trajectories: int) -> np.ndarray:
    """Empirical state distribution at each time over an ensemble.

    Returns a (length + 1, n) array whose row t is the fraction of
    trajectories sitting in each state at time t.
    """
    counts = np.zeros((length + 1, chain.n))
    for traj in range(trajectories):
        path = sample(chain, start, length, seed, trajectory=traj)
        for t, lab in enumerate(path):
            counts[t, chain.labels.index(lab)] += 1
    return counts / trajectories
