"""Birth-death line chains used by the demo command and the docs.

A length-n path with rightward probability p_right at every interior
state and probability-conserving self-loops at the two ends. The
perturbed variant jitters each state's bias by an independent uniform
draw in [-perturb, perturb]; rows always still sum to one, so the
all-ones vector remains the right eigenvector for eigenvalue 1.
"""

from __future__ import annotations

import numpy as np

from .chain import TransitionMatrix, build_chain


def line_chain(n: int = 100, p_right: float = 0.52, perturb: float = 0.0,
               seed: int = 0) -> TransitionMatrix:
    if n < 2:
        raise ValueError("line chain needs at least two states")
    if not 0.0 < p_right < 1.0:
        raise ValueError("p_right must be strictly between 0 and 1")
    right = np.full(n, p_right)
    if perturb > 0.0:
        rng = np.random.default_rng(seed)
        right = right + rng.uniform(-perturb, perturb, size=n)
        right = np.clip(right, 1e-3, 1.0 - 1e-3)
    p = np.zeros((n, n))
    for i in range(n):
        if i == 0:
            p[i, i] = 1.0 - right[i]  # left move reflects into a self-loop
            p[i, i + 1] = right[i]
        elif i == n - 1:
            p[i, i - 1] = 1.0 - right[i]
            p[i, i] = right[i]  # right move reflects into a self-loop
        else:
            p[i, i - 1] = 1.0 - right[i]
            p[i, i + 1] = right[i]
    labels = [f"s{i + 1}" for i in range(n)]
    return build_chain(labels, p)
