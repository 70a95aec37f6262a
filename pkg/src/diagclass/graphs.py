"""Simple undirected graphs modelling matrix sparsity patterns.

Vertices are labelled 1..n, edges stored canonically as sorted pairs, so
two graphs are equal iff their (n, edges) data coincide.  Includes the
named graphs relevant to indifference-graph recognition and detection of
forbidden induced subgraphs (long induced cycles, the claw, the net and
the 3-sun).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence


class GraphInputError(ValueError):
    """Raised for malformed graph data (bad vertex labels, loops, ...)."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise GraphInputError("vertex count must be at least 1")
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise GraphInputError(f"bad edge ({i},{j}) for n={self.n}")

    # -- views ---------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency()[v])

    def _adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices()}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    # -- connectivity --------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        adj = self._adjacency()
        seen: set[int] = set()
        comps = []
        for v in self.vertices():
            if v in seen:
                continue
            stack = [v]
            comp = {v}
            seen.add(v)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    # -- serialization -------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.sorted_edges()]})

    def to_text(self) -> str:
        lines = [f"{self.n} {self.num_edges}"]
        lines += [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a canonical graph; duplicate pairs collapse, loops are errors."""
    canon = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphInputError(f"edge {pair!r} is not a pair")
        i, j = int(pair[0]), int(pair[1])
        if i == j:
            raise GraphInputError(f"loop edge at vertex {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphInputError(f"edge ({i},{j}) out of range 1..{n}")
        canon.add((min(i, j), max(i, j)))
    return Graph(n, frozenset(canon))


def named_graph(name: str, k: Optional[int] = None) -> Graph:
    """Named graphs: cycle(k), path(n), complete(n), claw, net, sun3, star(k)."""
    name = name.lower()
    if name == "claw":
        return make_graph(4, [(1, 2), (1, 3), (1, 4)])
    if name == "net":
        # triangle 1,2,3 with pendant leaves 4,5,6
        return make_graph(6, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6)])
    if name == "sun3":
        # triangle 1,2,3 with outer vertices adjacent to two triangle vertices
        return make_graph(
            6,
            [(1, 2), (1, 3), (2, 3), (4, 1), (4, 2), (5, 2), (5, 3), (6, 3), (6, 1)],
        )
    if name == "cycle":
        if k is None or k < 3:
            raise GraphInputError("cycle requires k >= 3")
        return make_graph(k, [(i, i + 1) for i in range(1, k)] + [(1, k)])
    if name == "path":
        if k is None or k < 1:
            raise GraphInputError("path requires n >= 1")
        return make_graph(k, [(i, i + 1) for i in range(1, k)])
    if name == "complete":
        if k is None or k < 1:
            raise GraphInputError("complete requires n >= 1")
        return make_graph(k, list(combinations(range(1, k + 1), 2)))
    if name == "star":
        if k is None or k < 1:
            raise GraphInputError("star requires k >= 1 rays")
        return make_graph(k + 1, [(1, i) for i in range(2, k + 2)])
    raise GraphInputError(f"unknown graph name {name!r}")


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    """Subgraph induced on vs, relabelled 1..|vs| in sorted vertex order."""
    vlist = sorted(set(vs))
    if not vlist:
        raise GraphInputError("empty vertex subset")
    if vlist[0] < 1 or vlist[-1] > g.n:
        raise GraphInputError("subset contains vertices outside the graph")
    index = {v: i + 1 for i, v in enumerate(vlist)}
    edges = [
        (index[i], index[j]) for i, j in g.edges if i in index and j in index
    ]
    return make_graph(len(vlist), edges)


def girth(g: Graph):
    """Length of the shortest cycle; math.inf for forests."""
    adj = g._adjacency()
    best = math.inf
    # BFS from each vertex; a non-tree edge at depths d1, d2 closes a cycle
    for s in g.vertices():
        dist = {s: 0}
        parent = {s: 0}
        queue = [s]
        while queue:
            nxt = []
            for u in queue:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif w != parent[u]:
                        cyc = dist[u] + dist[w] + 1
                        if cyc < best:
                            best = cyc
            queue = nxt
    return best


def graphs_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Isomorphism test by degree-pruned backtracking; intended for n <= 10."""
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    deg1 = sorted(g1.degree(v) for v in g1.vertices())
    deg2 = sorted(g2.degree(v) for v in g2.vertices())
    if deg1 != deg2:
        return False
    adj1 = g1._adjacency()
    adj2 = g2._adjacency()
    n = g1.n
    order = sorted(g1.vertices(), key=lambda v: -len(adj1[v]))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        dv = len(adj1[v])
        for w in g2.vertices():
            if w in used or len(adj2[w]) != dv:
                continue
            ok = True
            for u in adj1[v]:
                if u in mapping and mapping[u] not in adj2[w]:
                    ok = False
                    break
            if ok:
                for u, mu in mapping.items():
                    if u not in adj1[v] and mu in adj2[w]:
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)


# -- forbidden induced subgraphs --------------------------------------

@dataclass(frozen=True)
class ForbiddenWitness:
    kind: str  # "cycle", "claw", "net", "sun3"
    length: Optional[int]  # cycle length when kind == "cycle"
    vertices: tuple[int, ...]

    def describe(self) -> str:
        if self.kind == "cycle":
            return f"Cycle({self.length})"
        return {"claw": "Claw", "net": "Net", "sun3": "Sun3"}[self.kind]

    def model_graph(self) -> Graph:
        if self.kind == "cycle":
            return named_graph("cycle", self.length)
        return named_graph(self.kind)


def _is_induced_cycle(g: Graph, vs: tuple[int, ...]) -> bool:
    sub = induced_subgraph(g, vs)
    if sub.num_edges != sub.n:
        return False
    return all(sub.degree(v) == 2 for v in sub.vertices()) and sub.is_connected()


def find_forbidden_induced(g: Graph) -> Optional[ForbiddenWitness]:
    """Some witness that g is not an indifference graph, or None.

    Vertex subsets are scanned by size ascending, lexicographically within
    a size, so the returned witness is deterministic.
    """
    claw = named_graph("claw")
    net = named_graph("net")
    sun3 = named_graph("sun3")
    for size in range(4, g.n + 1):
        for vs in combinations(g.vertices(), size):
            sub = induced_subgraph(g, vs)
            if size == 4 and graphs_isomorphic(sub, claw):
                return ForbiddenWitness("claw", None, vs)
            if _is_induced_cycle(g, vs):
                return ForbiddenWitness("cycle", size, vs)
            if size == 6:
                if graphs_isomorphic(sub, net):
                    return ForbiddenWitness("net", None, vs)
                if graphs_isomorphic(sub, sun3):
                    return ForbiddenWitness("sun3", None, vs)
    return None


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex v to perm[v-1]."""
    if sorted(perm) != list(g.vertices()):
        raise GraphInputError("relabelling is not a permutation of the vertices")
    return make_graph(g.n, [(perm[i - 1], perm[j - 1]) for i, j in g.edges])


def canonical_form(g: Graph) -> tuple[int, frozenset[tuple[int, int]]]:
    """Canonical key under isomorphism by brute-force minimisation (n <= 8)."""
    if g.n > 8:
        raise GraphInputError("canonical_form is limited to n <= 8")
    best = None
    for perm in permutations(range(1, g.n + 1)):
        edges = frozenset(
            (min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1]))
            for i, j in g.edges
        )
        key = tuple(sorted(edges))
        if best is None or key < best:
            best = key
    return (g.n, frozenset(best or ()))


def connected_graphs_up_to_iso(n: int) -> list[Graph]:
    """All connected graphs on exactly n vertices, one per isomorphism class.

    Edge sets are encoded as bitmasks; the canonical representative is the
    minimum bitmask over all vertex permutations, computed vectorised over
    every connected mask at once so n = 6 stays fast.
    """
    if n > 7:
        raise GraphInputError("exhaustive enumeration is limited to n <= 7")
    import numpy as np

    pairs = list(combinations(range(1, n + 1), 2))
    npairs = len(pairs)
    pair_index = {p: b for b, p in enumerate(pairs)}

    def connected_mask(mask: int) -> bool:
        adj = [0] * (n + 1)
        for b in range(npairs):
            if mask >> b & 1:
                i, j = pairs[b]
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        seen = 1 << 1
        frontier = [1]
        while frontier:
            v = frontier.pop()
            nbrs = adj[v]
            w = 1
            while nbrs >> w:
                if nbrs >> w & 1 and not seen >> w & 1:
                    seen |= 1 << w
                    frontier.append(w)
                w += 1
        return seen == ((1 << (n + 1)) - 2)

    masks = np.array(
        [m for m in range(1 << npairs) if connected_mask(m)], dtype=np.int64
    )
    canon = masks.copy()
    for perm in permutations(range(1, n + 1)):
        remapped = np.zeros_like(masks)
        for b, (i, j) in enumerate(pairs):
            a, c = perm[i - 1], perm[j - 1]
            nb = pair_index[(min(a, c), max(a, c))]
            remapped |= ((masks >> b) & 1) << nb
        np.minimum(canon, remapped, out=canon)
    reps = sorted(set(int(c) for c in canon))
    out = []
    for mask in reps:
        edges = [pairs[b] for b in range(npairs) if mask >> b & 1]
        out.append(make_graph(n, edges))
    return out


# -- parsing ----------------------------------------------------------

def parse_graph_text(text: str) -> Graph:
    """Format: first line "n m", then m lines "i j" (1-based)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphInputError("empty graph text")
    try:
        n, m = map(int, lines[0].split())
    except ValueError as exc:
        raise GraphInputError(f"bad header line {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphInputError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            i, j = map(int, ln.split())
        except ValueError as exc:
            raise GraphInputError(f"bad edge line {ln!r}") from exc
        edges.append((i, j))
    return make_graph(n, edges)


def parse_graph_json(text: str) -> Graph:
    """Format: {"n": int, "edges": [[i, j], ...]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphInputError('graph JSON must have keys "n" and "edges"')
    return make_graph(int(data["n"]), data["edges"])


def parse_graph(text: str) -> Graph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)
