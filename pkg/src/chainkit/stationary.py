"""Stationary distributions: one basis vector per recurrent class,
convex combinations, and the flow matrix / global-balance checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import TransitionMatrix
from .errors import DimensionMismatch, ValidationError
from .numlin import solve_linear
from .structure import ClassStructure

STATIONARITY_ATOL = 1e-10


@dataclass(frozen=True)
class StationaryBasis:
    """Extremal stationary distributions, one per recurrent class.

    vectors[k] is a full-length distribution supported on class
    class_ids[k]; every stationary distribution of the chain is a convex
    combination of these.
    """

    class_ids: tuple[int, ...]
    vectors: np.ndarray  # shape (num_recurrent_classes, n)

    @property
    def unique(self) -> bool:
        return len(self.class_ids) == 1


def _class_stationary(p: np.ndarray, members: list[int]) -> np.ndarray:
    """Solve pi^T P = pi^T on one closed class: (P^T - I) pi = 0 with the
    last equation replaced by the normalization sum(pi) = 1."""
    sub = p[np.ix_(members, members)]
    m = len(members)
    a = sub.T - np.eye(m)
    a[-1, :] = 1.0
    b = np.zeros(m)
    b[-1] = 1.0
    pi = solve_linear(a, b)
    pi = np.where(pi < 0, 0.0, pi)  # clamp roundoff
    return pi / pi.sum()


def stationary_basis(chain: TransitionMatrix,
                     structure: ClassStructure) -> StationaryBasis:
    ids = []
    vecs = []
    for c, members in enumerate(structure.classes):
        if not structure.recurrent[c]:
            continue
        pi = np.zeros(chain.n)
        pi[list(members)] = _class_stationary(chain.p, list(members))
        ids.append(c)
        vecs.append(pi)
    return StationaryBasis(class_ids=tuple(ids), vectors=np.array(vecs))


def combine(basis: StationaryBasis, alphas) -> np.ndarray:
    """Convex combination of the basis vectors."""
    alphas = np.asarray(alphas, dtype=float).reshape(-1)
    if alphas.size != len(basis.class_ids):
        raise DimensionMismatch("one weight per recurrent class required")
    if np.any(alphas < 0) or abs(alphas.sum() - 1.0) > 1e-9:
        raise ValidationError("weights must be nonnegative and sum to one")
    return alphas @ basis.vectors


def equal_weight(basis: StationaryBasis) -> np.ndarray:
    k = len(basis.class_ids)
    return combine(basis, np.full(k, 1.0 / k))


def is_stationary(chain: TransitionMatrix, pi,
                  atol: float = STATIONARITY_ATOL) -> bool:
    pi = np.asarray(pi, dtype=float)
    return bool(np.max(np.abs(pi @ chain.p - pi)) <= atol)


def flow_matrix(chain: TransitionMatrix, pi) -> np.ndarray:
    """Probability flow F = diag(pi) P for a stationary pi.

    Global balance holds by construction: row sums and column sums of F
    both equal pi.
    """
    pi = np.asarray(pi, dtype=float)
    if not is_stationary(chain, pi):
        raise ValidationError("pi is not stationary for this chain")
    return pi[:, None] * chain.p
