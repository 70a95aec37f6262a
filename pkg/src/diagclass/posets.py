"""Clustering lattices, cluster-permutohedra, graphicahedra, skeleta and
order complexes.

A clustering is a partition of the vertex set into connected blocks.  An
element of the cluster-permutohedron pairs a clustering with an
assignment: a distribution of the labels 1..n over the blocks (block B
receives |B| labels).  The graphicahedron replaces the clustering by an
edge subset, remembering which edges produced the blocks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from .graphs import Graph, GraphInputError
from .linalg import ComputationBudgetError

Clustering = frozenset[frozenset[int]]
Assignment = frozenset[tuple[frozenset[int], frozenset[int]]]  # (block, labels)


def discrete_clustering(n: int) -> Clustering:
    return frozenset(frozenset([v]) for v in range(1, n + 1))


def clustering_rank(c: Clustering, n: int) -> int:
    """Effective-torus rank of the face: n - number of blocks."""
    return n - len(c)


def is_connected_partition(g: Graph, c: Clustering) -> bool:
    from .graphs import induced_subgraph

    return all(
        len(block) == 1 or induced_subgraph(g, block).is_connected() for block in c
    )


def all_clusterings(g: Graph) -> list[Clustering]:
    """All partitions of the vertices into connected blocks (BFS by merges)."""
    bottom = discrete_clustering(g.n)
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for c in frontier:
            blocks = sorted(c, key=min)
            for b1, b2 in combinations(blocks, 2):
                if any(
                    g.has_edge(i, j) for i in b1 for j in b2
                ):
                    merged = frozenset(
                        (c - {b1, b2}) | {b1 | b2}
                    )
                    if merged not in seen:
                        seen.add(merged)
                        nxt.append(merged)
        frontier = nxt
    return sorted(seen, key=lambda c: (len(c) * -1, sorted(sorted(b) for b in c)))


def merge_covers(c: Clustering) -> list[tuple[frozenset[int], frozenset[int]]]:
    return list(combinations(sorted(c, key=min), 2))


def assignments_for(c: Clustering, n: int) -> list[Assignment]:
    """All distributions of labels 1..n over the blocks of c."""
    blocks = sorted(c, key=min)
    out: list[Assignment] = []

    def rec(i: int, remaining: frozenset[int], acc: list):
        if i == len(blocks):
            out.append(frozenset(acc))
            return
        b = blocks[i]
        for labels in combinations(sorted(remaining), len(b)):
            acc.append((b, frozenset(labels)))
            rec(i + 1, remaining - frozenset(labels), acc)
            acc.pop()

    rec(0, frozenset(range(1, n + 1)), [])
    return out


def project_assignment(a: Assignment, coarser: Clustering) -> Assignment:
    """Push an assignment forward along a refinement to a coarser clustering."""
    lookup = dict(a)
    out = []
    for block in coarser:
        labels: set[int] = set()
        for sub, lab in lookup.items():
            if sub <= block:
                labels |= lab
        if sum(len(s) for s in lookup if s <= block) != len(block):
            raise ValueError("clustering is not a refinement of the target")
        out.append((block, frozenset(labels)))
    return frozenset(out)


def assignment_representative(a: Assignment, n: int) -> tuple[int, ...]:
    """Minimal coset representative: one-line permutation p with p(v) = label,
    labels sorted ascending within each block against ascending vertices."""
    p = [0] * n
    for block, labels in a:
        for v, lab in zip(sorted(block), sorted(labels)):
            p[v - 1] = lab
    return tuple(p)


@dataclass
class GradedPoset:
    """Finite poset given by elements with ranks and covering relations.

    Element order is a linear extension (x < y implies index(x) < index(y)).
    """

    labels: list
    rank: list[int]
    covers: list[tuple[int, int]]  # (lower, upper) index pairs
    _children: Optional[list[list[int]]] = field(default=None, repr=False)
    _below: Optional[list[int]] = field(default=None, repr=False)  # bitsets

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def max_rank(self) -> int:
        return max(self.rank) if self.rank else 0

    def elements_of_rank(self, r: int) -> list[int]:
        return [i for i, rk in enumerate(self.rank) if rk == r]

    def children(self) -> list[list[int]]:
        if self._children is None:
            ch: list[list[int]] = [[] for _ in self.labels]
            for lo, hi in self.covers:
                ch[hi].append(lo)
            self._children = ch
        return self._children

    def strict_downsets(self) -> list[int]:
        """Bitset (python int) of all elements strictly below each element."""
        if self._below is None:
            below = [0] * len(self.labels)
            for i in range(len(self.labels)):
                acc = 0
                for c in self.children()[i]:
                    acc |= below[c] | (1 << c)
                below[i] = acc
            self._below = below
        return self._below

    def leq(self, i: int, j: int) -> bool:
        return i == j or bool(self.strict_downsets()[j] >> i & 1)

    def minimal_elements(self) -> list[int]:
        uppers = {hi for _, hi in self.covers}
        return [i for i in range(len(self.labels)) if i not in uppers]

    def validate(self, strict: bool = True) -> None:
        for lo, hi in self.covers:
            if strict and self.rank[lo] >= self.rank[hi]:
                raise ValueError(f"cover {lo}->{hi} does not increase rank")
            if lo >= hi:
                raise ValueError("element order is not a linear extension")

    # -- exports -------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "elements": [
                    {"id": i, "rank": self.rank[i], "label": _label_str(self.labels[i])}
                    for i in range(len(self.labels))
                ],
                "covers": [[lo, hi] for lo, hi in self.covers],
            }
        )

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i in range(len(self.labels)):
            lines.append(f'  n{i} [label="{_label_str(self.labels[i])}"];')
        for lo, hi in self.covers:
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines)


def _label_str(label) -> str:
    if isinstance(label, frozenset):
        try:
            parts = sorted(label, key=lambda b: sorted(b) if isinstance(b, (frozenset, tuple)) else b)
        except TypeError:
            parts = list(label)
        return "|".join(_label_str(p) for p in parts)
    if isinstance(label, tuple):
        return "(" + ",".join(_label_str(x) for x in label) + ")"
    if isinstance(label, (set, list)):
        return "{" + ",".join(str(x) for x in sorted(label)) + "}"
    return str(label)


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise GraphInputError("this construction requires a connected graph")


def clusterings(g: Graph) -> GradedPoset:
    """Lattice of connected partitions, ordered by refinement,
    rank = n - (number of blocks)."""
    _require_connected(g)
    elems = all_clusterings(g)
    index = {c: i for i, c in enumerate(elems)}
    covers = []
    for c in elems:
        for b1, b2 in merge_covers(c):
            if any(g.has_edge(i, j) for i in b1 for j in b2):
                merged = frozenset((c - {b1, b2}) | {b1 | b2})
                covers.append((index[c], index[merged]))
    return GradedPoset(
        labels=list(elems),
        rank=[clustering_rank(c, g.n) for c in elems],
        covers=sorted(set(covers)),
    )


def cluster_permutohedron(
    g: Graph, element_cap: int = 2_000_000, max_rank: Optional[int] = None
) -> GradedPoset:
    """Poset of (clustering, assignment) pairs.

    max_rank restricts construction to elements of rank <= max_rank, which
    avoids building elements a later skeleton() call would drop.
    """
    _require_connected(g)
    cls = all_clusterings(g)
    if max_rank is not None:
        cls = [c for c in cls if clustering_rank(c, g.n) <= max_rank]
    total = 0
    for c in cls:
        total += math.factorial(g.n) // math.prod(
            math.factorial(len(b)) for b in c
        )
        if total > element_cap:
            raise ComputationBudgetError(
                f"cluster-permutohedron would exceed {element_cap} elements"
            )
    labels: list = []
    rank: list[int] = []
    index: dict = {}
    for c in cls:  # all_clusterings sorts by descending block count = ascending rank
        for a in assignments_for(c, g.n):
            index[(c, a)] = len(labels)
            labels.append((c, a))
            rank.append(clustering_rank(c, g.n))
    covers = []
    cset = set(cls)
    for c in cls:
        uppers = []
        for b1, b2 in merge_covers(c):
            merged = frozenset((c - {b1, b2}) | {b1 | b2})
            if merged in cset:
                uppers.append(merged)
        if not uppers:
            continue
        for a in assignments_for(c, g.n):
            lo = index[(c, a)]
            for up in uppers:
                covers.append((lo, index[(up, project_assignment(a, up))]))
    return GradedPoset(labels=labels, rank=rank, covers=sorted(set(covers)))


def graphicahedron(
    g: Graph, element_cap: int = 2_000_000, max_rank: Optional[int] = None
) -> GradedPoset:
    """Poset of (edge subset, assignment) pairs, graded by the rank of the
    clustering induced by the subset's connected components.

    Covers may preserve rank (adding a chord inside a block), so this
    poset is only weakly graded.
    """
    _require_connected(g)
    if g.num_edges > 20:
        raise ComputationBudgetError("graphicahedron limited to 20 edges")
    edges = g.sorted_edges()

    def components_of(d: tuple) -> Clustering:
        parent = {v: v for v in g.vertices()}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i, j in d:
            parent[find(i)] = find(j)
        blocks: dict[int, set[int]] = {}
        for v in g.vertices():
            blocks.setdefault(find(v), set()).add(v)
        return frozenset(frozenset(b) for b in blocks.values())

    subsets = []
    for size in range(len(edges) + 1):
        for d in combinations(edges, size):
            c = components_of(d)
            r = clustering_rank(c, g.n)
            if max_rank is not None and r > max_rank:
                continue
            subsets.append((d, c, r))
    subsets.sort(key=lambda t: (len(t[0]), t[0]))

    labels: list = []
    rank: list[int] = []
    index: dict = {}
    total = 0
    for d, c, r in subsets:
        total += math.factorial(g.n) // math.prod(math.factorial(len(b)) for b in c)
        if total > element_cap:
            raise ComputationBudgetError(
                f"graphicahedron would exceed {element_cap} elements"
            )
        for a in assignments_for(c, g.n):
            index[(frozenset(d), a)] = len(labels)
            labels.append((frozenset(d), a))
            rank.append(r)
    covers = []
    by_d = {frozenset(d): (c, r) for d, c, r in subsets}
    for d, c, r in subsets:
        dset = frozenset(d)
        for e in edges:
            if e in dset:
                continue
            up = dset | {e}
            if up not in by_d:
                continue
            upc, _ = by_d[up]
            for a in assignments_for(c, g.n):
                covers.append(
                    (index[(dset, a)], index[(up, project_assignment(a, upc))])
                )
    return GradedPoset(labels=labels, rank=rank, covers=sorted(set(covers)))


def skeleton(p: GradedPoset, r: int) -> GradedPoset:
    """Restriction to elements of rank <= r, covers re-derived by
    transitive reduction inside the subset."""
    if r < 0:
        raise ValueError("rank bound must be nonnegative")
    keep = [i for i in range(len(p)) if p.rank[i] <= r]
    keep_set = set(keep)
    if len(keep) == len(p):
        return p
    newindex = {old: new for new, old in enumerate(keep)}
    below = p.strict_downsets()
    mask = 0
    for i in keep:
        mask |= 1 << i
    covers = []
    for y in keep:
        # maximal elements of the restricted down-set are the new covers
        down = below[y] & mask
        d = down
        while d:
            x = d & -d
            xi = x.bit_length() - 1
            if _is_maximal(xi, down, below):
                covers.append((newindex[xi], newindex[y]))
            d ^= x
    return GradedPoset(
        labels=[p.labels[i] for i in keep],
        rank=[p.rank[i] for i in keep],
        covers=sorted(set(covers)),
    )


def _is_maximal(xi: int, down: int, below: list[int]) -> bool:
    """No other element of the down-set lies strictly above xi."""
    rest = down & ~(1 << xi)
    while rest:
        z = rest & -rest
        zi = z.bit_length() - 1
        if below[zi] >> xi & 1:
            return False
        rest ^= z
    return True


@dataclass
class SimplicialComplex:
    """Full face list per dimension; faces are sorted vertex tuples."""

    n_vertices: int
    faces: list[list[tuple[int, ...]]]  # faces[d] = list of d-simplices

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(fs) for d, fs in enumerate(self.faces))

    def face_counts(self) -> list[int]:
        return [len(fs) for fs in self.faces]


def order_complex(p: GradedPoset) -> SimplicialComplex:
    """Simplices are the totally ordered subsets (chains) of the poset."""
    n = len(p)
    below = p.strict_downsets()
    above: list[list[int]] = [[] for _ in range(n)]
    for y in range(n):
        d = below[y]
        while d:
            x = d & -d
            above[x.bit_length() - 1].append(y)
            d ^= x
    faces: list[list[tuple[int, ...]]] = []

    def record(chain: tuple[int, ...]) -> None:
        d = len(chain) - 1
        while len(faces) <= d:
            faces.append([])
        faces[d].append(chain)

    def extend(chain: list[int]) -> None:
        record(tuple(chain))
        for y in above[chain[-1]]:
            # keep only y comparable with every element (chain is nested, so
            # comparability with the top element suffices)
            chain.append(y)
            extend(chain)
            chain.pop()

    for v in range(n):
        extend([v])
    for fs in faces:
        fs.sort()
    return SimplicialComplex(n_vertices=n, faces=faces)
