"""Hessenberg functions, indifference-graph recognition with
certificates, the inversion-statistic Betti polynomial, and the
edge-completion invariant.

Recognition searches vertex orderings by backtracking.  An ordering
v_1..v_n is valid iff it has no "umbrella" violation: i < j < k with
v_i ~ v_k requires v_i ~ v_j and v_j ~ v_k.  Valid orderings are exactly
the ones whose relabelled graph is a staircase graph, so exhaustive
search with this pruning both recognises and refutes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional, Union

from .graphs import (
    ForbiddenWitness,
    Graph,
    GraphInputError,
    find_forbidden_induced,
    make_graph,
)
from .polynomials import Polynomial


@dataclass(frozen=True)
class HessenbergFunction:
    h: tuple[int, ...]

    def __post_init__(self):
        n = len(self.h)
        if n == 0:
            raise GraphInputError("empty Hessenberg function")
        for i, hi in enumerate(self.h, start=1):
            if hi < i or hi > n:
                raise GraphInputError(f"h({i}) = {hi} outside [{i}, {n}]")
        if any(self.h[i] > self.h[i + 1] for i in range(n - 1)):
            raise GraphInputError("Hessenberg function must be weakly increasing")

    @property
    def n(self) -> int:
        return len(self.h)

    def is_connected(self) -> bool:
        return all(self.h[i - 1] >= i + 1 for i in range(1, self.n))

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.h)

    @classmethod
    def parse(cls, text: str) -> "HessenbergFunction":
        try:
            values = tuple(int(x) for x in text.split(","))
        except ValueError as exc:
            raise GraphInputError(f"bad Hessenberg function text {text!r}") from exc
        return cls(values)


def hessenberg_to_graph(h: HessenbergFunction) -> Graph:
    """Staircase graph: edges {i, j} with i < j <= h(i)."""
    edges = [(i, j) for i in range(1, h.n + 1) for j in range(i + 1, h.h[i - 1] + 1)]
    return make_graph(h.n, edges)


@dataclass(frozen=True)
class IndifferenceCertificate:
    """ordering[k-1] is the vertex receiving new label k."""

    ordering: tuple[int, ...]
    h: HessenbergFunction

    def relabelled(self, g: Graph) -> Graph:
        label = {v: k for k, v in enumerate(self.ordering, start=1)}
        return make_graph(g.n, [(label[i], label[j]) for i, j in g.edges])

    def validates(self, g: Graph) -> bool:
        return self.relabelled(g) == hessenberg_to_graph(self.h)


def _find_indifference_ordering(g: Graph) -> Optional[tuple[int, ...]]:
    """Lexicographically first umbrella-free ordering, or None."""
    n = g.n
    adj = {v: g.neighbors(v) for v in g.vertices()}
    placed: list[int] = []
    used = [False] * (n + 1)

    def ok_to_place(v: int) -> bool:
        # placed neighbors of v must form a suffix of the placed sequence,
        # and that suffix must be a clique
        k = len(placed)
        first = next((i for i in range(k) if placed[i] in adj[v]), None)
        if first is None:
            return True
        for j in range(first + 1, k):
            if placed[j] not in adj[v]:
                return False
        for i in range(first, k):
            for j in range(i + 1, k):
                if placed[j] not in adj[placed[i]]:
                    return False
        return True

    def extend() -> bool:
        if len(placed) == n:
            return True
        for v in range(1, n + 1):
            if used[v]:
                continue
            if ok_to_place(v):
                placed.append(v)
                used[v] = True
                if extend():
                    return True
                placed.pop()
                used[v] = False
        return False

    if extend():
        return tuple(placed)
    return None


def recognize_indifference(
    g: Graph,
) -> Union[IndifferenceCertificate, ForbiddenWitness]:
    """Either an ordering + Hessenberg function, or a forbidden witness."""
    if not g.is_connected():
        raise GraphInputError("recognition requires a connected graph")
    ordering = _find_indifference_ordering(g)
    if ordering is None:
        witness = find_forbidden_induced(g)
        assert witness is not None, "no ordering but no forbidden subgraph"
        return witness
    label = {v: k for k, v in enumerate(ordering, start=1)}
    relabelled = make_graph(g.n, [(label[i], label[j]) for i, j in g.edges])
    h = []
    for i in range(1, g.n + 1):
        later = [j for j in range(i + 1, g.n + 1) if relabelled.has_edge(i, j)]
        h.append(max(later) if later else i)
    return IndifferenceCertificate(ordering, HessenbergFunction(tuple(h)))


def is_indifference(g: Graph) -> bool:
    if not g.is_connected():
        return False
    return _find_indifference_ordering(g) is not None


def inv_h(sigma: tuple[int, ...], h: HessenbergFunction) -> int:
    """#{(i, j) : i < j <= h(i), sigma(i) > sigma(j)}."""
    n = h.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise GraphInputError("sigma is not a permutation of 1..n")
    count = 0
    for i in range(1, n + 1):
        for j in range(i + 1, h.h[i - 1] + 1):
            if sigma[i - 1] > sigma[j - 1]:
                count += 1
    return count


def betti_polynomial_hessenberg(h: HessenbergFunction) -> Polynomial:
    """Sum of t^{inv_h(sigma)} over all permutations.

    Coefficient of t^i is the 2i-th Betti number of the isospectral
    staircase manifold; requires a connected h.
    """
    if not h.is_connected():
        raise GraphInputError("Betti polynomial requires a connected Hessenberg function")
    n = h.n
    counts: dict[int, int] = {}
    for sigma in permutations(range(1, n + 1)):
        k = inv_h(sigma, h)
        counts[k] = counts.get(k, 0) + 1
    return Polynomial(counts.get(d, 0) for d in range(max(counts) + 1))


def adi(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    """Minimal number of edges to add so g becomes an indifference graph,
    with a deterministic witness (iterative deepening, lexicographic)."""
    if not g.is_connected():
        raise GraphInputError("adi requires a connected graph")
    if is_indifference(g):
        return 0, []
    non_edges = [
        (i, j)
        for i, j in combinations(g.vertices(), 2)
        if not g.has_edge(i, j)
    ]
    for k in range(1, len(non_edges) + 1):
        for extra in combinations(non_edges, k):
            candidate = make_graph(g.n, list(g.edges) + list(extra))
            if is_indifference(candidate):
                return k, list(extra)
    raise AssertionError("complete graph is an indifference graph")  # pragma: no cover
