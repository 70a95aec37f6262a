"""Orbit-space Hilbert-polynomial recursion and the top-level
diagonalizability / formality verdict.

For a formal pattern the Betti polynomial B, the intermediate polynomial
Inter (a sum over proper faces of the clustering lattice) and the
orbit-space polynomial A satisfy B - Inter = A (t-1)^{n-1} exactly, and
A has nonnegative coefficients.  The recursion computes A bottom-up over
faces; the consistency test turns the same identity plus Poincare
duality into a linear system whose forced consequences can contradict a
computed Betti number - that contradiction is a formality obstruction.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graphs import (
    ForbiddenWitness,
    Graph,
    GraphInputError,
    canonical_form,
    induced_subgraph,
)
from .hessenberg import (
    IndifferenceCertificate,
    betti_polynomial_hessenberg,
    recognize_indifference,
)
from .homology import betti_numbers
from .linalg import (
    ComputationBudgetError,
    SparseMatrix,
    solve_affine_system,
)
from .polynomials import Polynomial, poly_divide_exact
from .posets import (
    Clustering,
    all_clusterings,
    cluster_permutohedron,
    clustering_rank,
    order_complex,
    skeleton,
)

T_MINUS_1 = Polynomial([-1, 1])


class NonIndifferenceFaceError(GraphInputError):
    """A cluster of the face induces a non-indifference subgraph."""

    def __init__(self, block: frozenset[int]):
        self.block = block
        super().__init__(f"cluster {sorted(block)} is not an indifference graph")


def face_rank(c: Clustering, n: int) -> int:
    """Effective-torus rank of the face: n minus the number of blocks."""
    return clustering_rank(c, n)


def _block_graph(g: Graph, block: frozenset[int]) -> Graph:
    return induced_subgraph(g, block)


def _block_certificate(g: Graph, block: frozenset[int]) -> IndifferenceCertificate:
    sub = _block_graph(g, block)
    result = recognize_indifference(sub)
    if isinstance(result, ForbiddenWitness):
        raise NonIndifferenceFaceError(block)
    return result


def face_betti_polynomial(c: Clustering, g: Graph) -> Polynomial:
    """Product over clusters of the Betti polynomial of the reordered cluster."""
    out = Polynomial.one()
    for block in sorted(c, key=min):
        cert = _block_certificate(g, block)
        out = out * betti_polynomial_hessenberg(cert.h)
    return out


_A_MEMO: dict = {}
_A_LOCK = threading.Lock()
_EVIDENCE_MEMO: dict = {}
_EVIDENCE_LOCK = threading.Lock()


def compute_A(g: Graph) -> Polynomial:
    """Orbit-space polynomial A = (B - Inter) / (t-1)^{n-1}.

    Requires a connected indifference graph; memoized per isomorphism
    class.  Single-vertex base case: A = 1.
    """
    key = canonical_form(g)
    with _A_LOCK:
        cached = _A_MEMO.get(key)
    if cached is not None:
        return cached
    result = recognize_indifference(g) if g.n > 1 else None
    if isinstance(result, ForbiddenWitness):
        raise GraphInputError("compute_A requires an indifference graph")
    if g.n == 1:
        a = Polynomial.one()
    else:
        B = betti_polynomial_hessenberg(result.h)
        inter = inter_polynomial(g)
        a = poly_divide_exact(B - inter, T_MINUS_1 ** (g.n - 1))
    with _A_LOCK:
        _A_MEMO[key] = a
    return a


def _face_A(c: Clustering, g: Graph) -> Polynomial:
    """A of a product face: product of the factors' A polynomials."""
    out = Polynomial.one()
    for block in sorted(c, key=min):
        out = out * compute_A(_block_graph(g, block))
    return out


def assignment_multiplicity(c: Clustering, n: int) -> int:
    return math.factorial(n) // math.prod(math.factorial(len(b)) for b in c)


def inter_polynomial(g: Graph) -> Polynomial:
    """Sum over proper faces of A_face (t-1)^{rank}, with assignment
    multiplicities; faces grouped by clustering."""
    if not g.is_connected():
        raise GraphInputError("intermediate polynomial requires a connected graph")
    out = Polynomial.zero()
    for c in all_clusterings(g):
        if len(c) == 1:
            continue  # the top face is the manifold itself, not a proper face
        term = _face_A(c, g) * (T_MINUS_1 ** face_rank(c, g.n))
        out = out + assignment_multiplicity(c, g.n) * term
    return out


@dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    forced_b2: Optional[Fraction]
    beta4: int
    system_infeasible: bool = False

    def describe(self) -> str:
        if self.system_infeasible:
            return "linear system infeasible before substitutions"
        if self.consistent:
            return "consistent"
        return f"forced b2 = {self.forced_b2} contradicts beta4 = {self.beta4}"


def abfp_consistency_test(g: Graph, beta2: int, beta4: int) -> ConsistencyResult:
    """Can b0 = 1, b1 = beta2, b2 = beta4 extend to Betti coefficients
    satisfying the orbit-space identity and Poincare duality?

    Unknowns b_0..b_E and a_0..a_d with d = E - n + 1; the identity
    B - Inter = A (t-1)^{n-1} is imposed coefficientwise, duality as
    b_j = b_{E-j}.  Only forced consequences are compared against beta4,
    so the verdict does not depend on how the solution set is written.
    """
    n, E = g.n, g.num_edges
    d = E - (n - 1)
    if d < 0:
        raise GraphInputError("pattern has fewer edges than a spanning tree")
    inter = inter_polynomial(g)
    shift = [(T_MINUS_1 ** (n - 1)) * Polynomial.monomial(j) for j in range(d + 1)]
    nb = E + 1
    triples = []
    rhs: list[Fraction] = []
    row = 0
    # coefficient identity, degrees 0..E: b_j - sum_i a_i [(t-1)^{n-1} t^i]_j = Inter_j
    for j in range(E + 1):
        triples.append((row, j, 1))
        for i in range(d + 1):
            coef = shift[i][j]
            if coef:
                triples.append((row, nb + i, -coef))
        rhs.append(Fraction(inter[j]))
        row += 1
    # duality
    for j in range((E + 1) // 2):
        if j != E - j:
            triples.append((row, j, 1))
            triples.append((row, E - j, -1))
            rhs.append(Fraction(0))
            row += 1
    subst_start = row
    for col, value in ((0, 1), (1, beta2)):
        triples.append((row, col, 1))
        rhs.append(Fraction(value))
        row += 1
    a = SparseMatrix.from_triples(row, nb + d + 1, triples)
    sol = solve_affine_system(a, rhs)
    if not sol.consistent:
        # distinguish raw infeasibility from substitution clash
        raw = SparseMatrix.from_triples(
            subst_start, nb + d + 1,
            [t for t in triples if t[0] < subst_start],
        )
        raw_sol = solve_affine_system(raw, rhs[:subst_start])
        return ConsistencyResult(False, None, beta4, system_infeasible=not raw_sol.consistent)
    forced = sol.forced_coordinate(2)
    if forced is not None and forced != beta4:
        return ConsistencyResult(False, forced, beta4)
    return ConsistencyResult(True, forced, beta4)


@dataclass(frozen=True)
class FormalityVerdict:
    graph: Graph
    verdict: str  # "formal" | "nonformal" | "undetermined"
    certificate: Optional[IndifferenceCertificate] = None
    witness: Optional[ForbiddenWitness] = None
    evidence: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "verdict": self.verdict,
        }
        if self.certificate is not None:
            payload["certificate"] = {
                "ordering": list(self.certificate.ordering),
                "h": list(self.certificate.h.h),
            }
        if self.witness is not None:
            payload["witness"] = {
                "kind": self.witness.describe(),
                "vertices": sorted(self.witness.vertices),
            }
        payload["evidence"] = self.evidence
        payload["artifacts"] = self.artifacts
        return json.dumps(payload)


def _skeleton_homology_evidence(wg: Graph) -> Optional[dict]:
    """Strategy (a): nonzero reduced H1 of the rank-2 skeleton of the
    witness's cluster-permutohedron.

    Formality forces these skeleta to be acyclic in low degrees over any
    coefficient ring, so a nonzero H1 over the 2-element field (the
    cheapest exact computation) is already an obstruction.
    """
    cp = cluster_permutohedron(wg, max_rank=2)
    sk = skeleton(cp, 2)
    betti = betti_numbers(order_complex(sk), coeff="gf2")
    h1 = betti[1] if len(betti) > 1 else 0
    if h1 == 0:
        return None
    return {
        "kind": "skeleton_homology",
        "skeleton_rank": 2,
        "reduced_betti": betti,
        "h1": h1,
    }


def _total_betti_evidence(wg: Graph, mem_budget: Optional[int]) -> Optional[dict]:
    """Strategy (b): pipeline total Betti number differs from n!."""
    from .gkm import gkm_total_betti

    kw = {"mem_budget": mem_budget} if mem_budget is not None else {}
    report = gkm_total_betti(wg, field="gf2", **kw)
    fixed_points = math.factorial(wg.n)
    if report.total is not None and report.total != fixed_points:
        return {
            "kind": "total_betti_mismatch",
            "total": report.total,
            "fixed_points": fixed_points,
            "poincare": list(report.poincare),
            "field": "gf2",
        }
    if report.duality_violation or report.negative_coefficient:
        return {
            "kind": "total_betti_mismatch",
            "total": None,
            "duality_violation": report.duality_violation,
            "negative_coefficient": report.negative_coefficient,
            "ordinary_low_degrees": list(report.ordinary_low),
            "fixed_points": fixed_points,
            "field": "gf2",
        }
    return None


def _abfp_evidence(wg: Graph, mem_budget: Optional[int]) -> Optional[dict]:
    """Strategy (c): the consistency test contradicts a computed beta4."""
    from .gkm import build_gkm_graph, equivariant_betti, ordinary_betti_from_equivariant

    kw = {"mem_budget": mem_budget} if mem_budget is not None else {}
    gg = build_gkm_graph(wg)
    dims = [equivariant_betti(gg, i, field="gf2", **kw) for i in range(3)]
    low = ordinary_betti_from_equivariant(dims, wg.n)
    result = abfp_consistency_test(wg, low[1], low[2])
    if result.consistent:
        return None
    return {
        "kind": "abfp_inconsistency",
        "beta2": low[1],
        "beta4": low[2],
        "forced_b2": str(result.forced_b2),
        "detail": result.describe(),
    }


DEFAULT_STRATEGY_BUDGET = 2 * 1024**3


def formality_report(
    g: Graph, mem_budget: int = DEFAULT_STRATEGY_BUDGET
) -> FormalityVerdict:
    """Decide diagonalizability: Formal with a staircase certificate, or
    NonFormal with machine-checkable numeric evidence on the forbidden
    witness's induced subgraph, or undetermined if every strategy
    exceeds the budget.

    Strategies run cheapest-first.  The skeleton-homology obstruction is
    attempted for claw and cycle witnesses, where the rank-2 skeleton
    carries nonzero H1; for the other two witness shapes those skeleta
    are acyclic in low degrees, so the moment-graph and orbit-space
    strategies go first there.
    """
    if not g.is_connected():
        raise GraphInputError("formality verdict requires a connected graph")
    result = recognize_indifference(g)
    if isinstance(result, IndifferenceCertificate):
        return FormalityVerdict(g, "formal", certificate=result)
    witness = result
    wg = induced_subgraph(g, witness.vertices)
    heavy = (
        lambda x: _total_betti_evidence(x, mem_budget),
        lambda x: _abfp_evidence(x, mem_budget),
    )
    if witness.kind in ("claw", "cycle"):
        strategies = (_skeleton_homology_evidence, *heavy)
    else:
        strategies = (*heavy, _skeleton_homology_evidence)
    cache_key = (canonical_form(wg), mem_budget)
    with _EVIDENCE_LOCK:
        cached = _EVIDENCE_MEMO.get(cache_key)
    if cached is not None:
        return FormalityVerdict(g, "nonformal", witness=witness, evidence=cached)
    budget_hit = False
    for strategy in strategies:
        try:
            evidence = strategy(wg)
        except ComputationBudgetError:
            budget_hit = True
            continue
        if evidence is not None:
            with _EVIDENCE_LOCK:
                _EVIDENCE_MEMO[cache_key] = evidence
            return FormalityVerdict(
                g, "nonformal", witness=witness, evidence=evidence
            )
    if budget_hit:
        return FormalityVerdict(g, "undetermined", witness=witness)
    raise AssertionError(
        "forbidden witness present but no obstruction found"
    )  # pragma: no cover
