"""Communication structure of a chain: classes, recurrence, periodicity,
absorbing states, and the headline chain-level flags."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .chain import TransitionMatrix

EDGE_TOL = 0.0  # an edge exists iff the entry is strictly positive
ABSORBING_ATOL = 1e-12


@dataclass(frozen=True)
class ClassStructure:
    """Condensation-level summary of a transition matrix.

    classes: state indices per communicating class, each sorted, classes
    ordered by smallest member. recurrent[c] marks closed classes.
    period[c] is the gcd cycle length within class c (1 when the class
    has no internal edge). condensation_edges holds (from, to) class
    pairs with from != to.
    """

    classes: tuple[tuple[int, ...], ...]
    condensation_edges: frozenset[tuple[int, int]]
    recurrent: tuple[bool, ...]
    period: tuple[int, ...]
    class_of: tuple[int, ...]
    irreducible: bool
    recurrent_chain: bool
    periodicity: str  # "aperiodic" | "periodic" | "mixed"
    chain_period: int | None
    ergodic: bool
    absorbing_states: tuple[int, ...]
    absorbing_chain: bool

    def recurrent_states(self) -> list[int]:
        out = []
        for c, members in enumerate(self.classes):
            if self.recurrent[c]:
                out.extend(members)
        return sorted(out)


def _tarjan_scc(adj: list[list[int]], n: int) -> list[list[int]]:
    """Iterative Tarjan; components returned in reverse topological
    order of discovery, then normalized by smallest member."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def _class_period(p: np.ndarray, members: list[int]) -> int:
    """Gcd of cycle lengths within one communicating class, via BFS
    levels: every intra-class edge u->v contributes level[u]+1-level[v]."""
    sub = {s: i for i, s in enumerate(members)}
    m = len(members)
    adj = [[sub[j] for j in members if p[i, j] > EDGE_TOL and j in sub]
           for i in members]
    has_edge = any(adj[i] for i in range(m))
    if not has_edge:
        return 1
    level = [-1] * m
    level[0] = 0
    queue = [0]
    while queue:
        u = queue.pop(0)
        for v in adj[u]:
            if level[v] == -1:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u in range(m):
        for v in adj[u]:
            g = gcd(g, level[u] + 1 - level[v])
    return abs(g) if g != 0 else 1


def communicating_classes(chain: TransitionMatrix) -> tuple[
        tuple[tuple[int, ...], ...], frozenset[tuple[int, int]]]:
    """Communicating classes (strongly connected components of the
    positive-entry digraph) and the condensation edge set."""
    p = chain.p
    n = chain.n
    adj = [[j for j in range(n) if p[i, j] > EDGE_TOL] for i in range(n)]
    comps = _tarjan_scc(adj, n)
    class_of = [0] * n
    for c, members in enumerate(comps):
        for s in members:
            class_of[s] = c
    edges = set()
    for i in range(n):
        for j in adj[i]:
            if class_of[i] != class_of[j]:
                edges.add((class_of[i], class_of[j]))
    return tuple(tuple(c) for c in comps), frozenset(edges)


def classify(chain: TransitionMatrix) -> ClassStructure:
    """Full structural classification of a chain."""
    p = chain.p
    n = chain.n
    classes, edges = communicating_classes(chain)
    k = len(classes)
    class_of = [0] * n
    for c, members in enumerate(classes):
        for s in members:
            class_of[s] = c
    outgoing = [False] * k
    for a, _ in edges:
        outgoing[a] = True
    recurrent = tuple(not outgoing[c] for c in range(k))
    period = tuple(_class_period(p, list(members)) for members in classes)

    irreducible = k == 1
    recurrent_chain = all(recurrent)
    rec_periods = sorted({period[c] for c in range(k) if recurrent[c]})
    if rec_periods == [1]:
        periodicity, chain_period = "aperiodic", None
    elif len(rec_periods) == 1:
        periodicity, chain_period = "periodic", rec_periods[0]
    else:
        periodicity, chain_period = "mixed", None
    ergodic = irreducible and periodicity == "aperiodic"

    absorbing_states = tuple(i for i in range(n) if p[i, i] >= 1.0 - ABSORBING_ATOL)
    absorbing_set = set(absorbing_states)
    if absorbing_set:
        # chain is absorbing iff every state reaches some absorbing state
        reach = set(absorbing_set)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                if i in reach:
                    continue
                if any(p[i, j] > EDGE_TOL and j in reach for j in range(n)):
                    reach.add(i)
                    changed = True
        absorbing_chain = len(reach) == n
    else:
        absorbing_chain = False

    return ClassStructure(
        classes=classes,
        condensation_edges=edges,
        recurrent=recurrent,
        period=period,
        class_of=tuple(class_of),
        irreducible=irreducible,
        recurrent_chain=recurrent_chain,
        periodicity=periodicity,
        chain_period=chain_period,
        ergodic=ergodic,
        absorbing_states=absorbing_states,
        absorbing_chain=absorbing_chain,
    )
