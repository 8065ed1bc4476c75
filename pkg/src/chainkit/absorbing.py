"""Absorbing chains: canonical block form and the fundamental matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chain import TransitionMatrix
from .errors import NotAbsorbing, SingularMatrix
from .numlin import solve_linear
from .structure import ClassStructure


@dataclass(frozen=True)
class AbsorbingDecomposition:
    """Permuted view [[Q, R], [0, I]] of an absorbing chain.

    permutation lists original state indices, transient states first,
    original order preserved inside each block.
    """

    permutation: tuple[int, ...]
    q: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    t: int
    a: int


@dataclass(frozen=True)
class FundamentalMatrix:
    """N = (I-Q)^{-1}: expected visits to each transient state, and the
    expected number of steps to absorption N @ ones."""

    n: np.ndarray
    expected_steps: np.ndarray


def canonical_form(chain: TransitionMatrix,
                   structure: ClassStructure) -> AbsorbingDecomposition:
    if not structure.absorbing_chain:
        raise NotAbsorbing("every state must reach an absorbing state")
    absorbing = set(structure.absorbing_states)
    transient = [i for i in range(chain.n) if i not in absorbing]
    order = transient + sorted(absorbing)
    t, a = len(transient), len(absorbing)
    p = chain.p[np.ix_(order, order)]
    return AbsorbingDecomposition(permutation=tuple(order),
                                  q=p[:t, :t], r=p[:t, t:], t=t, a=a)


def fundamental_matrix(decomp: AbsorbingDecomposition) -> FundamentalMatrix:
    """Solve (I-Q) N = I column by column."""
    t = decomp.t
    if t == 0:
        n = np.zeros((0, 0))
        return FundamentalMatrix(n=n, expected_steps=np.zeros(0))
    try:
        n = solve_linear(np.eye(t) - decomp.q, np.eye(t))
    except SingularMatrix as exc:
        raise SingularMatrix("I - Q singular: chain was not truly absorbing") from exc
    return FundamentalMatrix(n=n, expected_steps=n @ np.ones(t))
