import json
import math

import pytest

from diagclass.graphs import GraphInputError, make_graph, named_graph
from diagclass.linalg import ComputationBudgetError
from diagclass.posets import (
    all_clusterings,
    assignment_representative,
    assignments_for,
    cluster_permutohedron,
    clusterings,
    discrete_clustering,
    graphicahedron,
    order_complex,
    project_assignment,
    skeleton,
)

PATH3 = make_graph(3, [(1, 2), (2, 3)])


def test_clusterings_counts():
    assert len(clusterings(named_graph("complete", 3))) == 5
    assert len(clusterings(PATH3)) == 4
    assert len(clusterings(named_graph("claw"))) == 8


def test_clusterings_path3_elements():
    labels = {frozenset(frozenset(b) for b in c) for c in clusterings(PATH3).labels}
    expected = {
        frozenset({frozenset({1}), frozenset({2}), frozenset({3})}),
        frozenset({frozenset({1, 2}), frozenset({3})}),
        frozenset({frozenset({1}), frozenset({2, 3})}),
        frozenset({frozenset({1, 2, 3})}),
    }
    assert labels == expected  # {1,3} is not connected, so no {13|2}


def test_clusterings_requires_connected():
    with pytest.raises(GraphInputError):
        clusterings(make_graph(3, [(1, 2)]))


def test_assignments_count_and_projection():
    c = frozenset({frozenset({1, 2}), frozenset({3})})
    assigns = assignments_for(c, 3)
    assert len(assigns) == 3  # choose 2 labels of 3 for the merged block
    top = frozenset({frozenset({1, 2, 3})})
    for a in assigns:
        proj = project_assignment(a, top)
        (block, labels), = proj
        assert labels == frozenset({1, 2, 3})


def test_assignment_representative_minimal():
    c = frozenset({frozenset({1, 2}), frozenset({3})})
    a = frozenset({(frozenset({1, 2}), frozenset({2, 3})), (frozenset({3}), frozenset({1}))})
    assert assignment_representative(a, 3) == (2, 3, 1)


def test_cluster_permutohedron_counts():
    assert len(cluster_permutohedron(PATH3)) == 13
    assert len(cluster_permutohedron(named_graph("complete", 3))) == 16
    cp = cluster_permutohedron(named_graph("claw"))
    assert len(cp) == 73
    assert [len(cp.elements_of_rank(r)) for r in range(4)] == [24, 36, 12, 1]


def test_cluster_permutohedron_structure():
    cp = cluster_permutohedron(PATH3)
    cp.validate()
    # hexagon face poset: 6 vertices, 6 edges, 1 top cell
    assert [len(cp.elements_of_rank(r)) for r in range(3)] == [6, 6, 1]
    assert len(cp.minimal_elements()) == math.factorial(3)
    # every rank-1 face covers exactly two vertices
    children = cp.children()
    for e in cp.elements_of_rank(1):
        assert len(children[e]) == 2


def test_cluster_permutohedron_element_count_formula():
    for g in (PATH3, named_graph("claw"), named_graph("cycle", 4)):
        expected = sum(
            math.factorial(g.n) // math.prod(math.factorial(len(b)) for b in c)
            for c in all_clusterings(g)
        )
        assert len(cluster_permutohedron(g)) == expected


def test_cluster_permutohedron_budget():
    with pytest.raises(ComputationBudgetError):
        cluster_permutohedron(named_graph("complete", 4), element_cap=10)


def test_graphicahedron_cycle3():
    gr = graphicahedron(named_graph("cycle", 3))
    gr.validate(strict=False)
    # strictly more elements than the cluster-permutohedron: D = two edges
    # and D = all three edges both induce the full clustering
    assert len(gr) == 19
    assert len(cluster_permutohedron(named_graph("complete", 3))) == 16


def test_graphicahedron_tree_matches_cluster_permutohedron():
    for g in (named_graph("claw"), PATH3, make_graph(2, [(1, 2)])):
        gr = graphicahedron(g)
        cp = cluster_permutohedron(g)
        assert len(gr) == len(cp)
        # explicit order isomorphism: (D, A) -> (components(D), A); on a
        # tree the edge subset is determined by its partition into subtrees
        mapping = {}
        for i, (d, a) in enumerate(gr.labels):
            blocks = frozenset(block for block, _ in a)
            mapping[i] = (blocks, a)
        cp_index = {}
        for i, (c, a) in enumerate(cp.labels):
            cp_index[(c, a)] = i
        image = [cp_index[mapping[i]] for i in range(len(gr))]
        assert sorted(image) == list(range(len(cp)))
        gr_covers = {(image[lo], image[hi]) for lo, hi in gr.covers}
        assert gr_covers == set(cp.covers)


def test_graphicahedron_path2():
    assert len(graphicahedron(make_graph(2, [(1, 2)]))) == 3


def test_skeleton():
    cp = cluster_permutohedron(PATH3)
    sk = skeleton(cp, 1)
    assert len(sk) == 12
    assert len(sk.covers) == 12  # hexagon boundary: each edge covers 2 vertices
    assert skeleton(cp, cp.max_rank) is cp
    claw_sk = skeleton(cluster_permutohedron(named_graph("claw")), 2)
    assert len(claw_sk) == 72


def test_skeleton_max_rank_prebuild_agrees():
    g = named_graph("cycle", 4)
    full = skeleton(cluster_permutohedron(g), 2)
    pre = skeleton(cluster_permutohedron(g, max_rank=2), 2)
    assert len(full) == len(pre)
    assert set(full.covers) == set(pre.covers)


def test_order_complex_hexagon():
    sk = skeleton(cluster_permutohedron(PATH3), 1)
    sc = order_complex(sk)
    assert sc.face_counts() == [12, 12]
    assert sc.euler_characteristic() == 0


def test_order_complex_chains_are_chains():
    cp = cluster_permutohedron(named_graph("complete", 3))
    sc = order_complex(cp)
    for faces in sc.faces[1:]:
        for chain in faces:
            for a, b in zip(chain, chain[1:]):
                assert cp.leq(a, b) and a != b


def test_exports():
    cp = cluster_permutohedron(PATH3)
    payload = json.loads(cp.to_json())
    assert len(payload["elements"]) == 13
    assert len(payload["covers"]) == len(cp.covers)
    dot = cp.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == len(cp.covers)
