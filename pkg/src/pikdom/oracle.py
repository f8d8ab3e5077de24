"""Ground truth: domination predicates and the exhaustive brute-force engine.

Everything here works directly from the definitions, independent of the
shortest-path reduction, so it can adjudicate the other engines.  Vertex ids
follow the caller's original numbering (the same numbering ``derive_graph``
uses).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParamError, PreconditionError, TooLargeError, VertexIndexError
from .model import DerivedGraph, ProperIntervalModel, derive_graph

VARIANT_KDOM = "kdom"
VARIANT_TOTAL = "total"
VARIANTS = (VARIANT_KDOM, VARIANT_TOTAL)

BRUTE_CAP_DEFAULT = 20


def check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ParamError(f"variant must be one of {VARIANTS}, got {variant!r}")


def check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ParamError(f"k must be a positive integer, got {k!r}")


@dataclass(frozen=True)
class VertexSet:
    """A sorted, duplicate-free set of 1-based vertex ids."""

    members: tuple[int, ...]

    @classmethod
    def of(cls, ids) -> "VertexSet":
        return cls(tuple(sorted(set(ids))))

    @property
    def size(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v) -> bool:
        return v in self.members


@dataclass(frozen=True)
class Solution:
    """Engine output.  Infeasible solutions carry an empty set and no cost."""

    vertices: VertexSet
    cost: Fraction | None
    feasible: bool
    engine: str
    stats: dict | None = None


def infeasible_solution(engine: str, stats: dict | None = None) -> Solution:
    return Solution(VertexSet.of(()), None, False, engine, stats)


def _check_members(graph: DerivedGraph, vset: VertexSet) -> frozenset:
    for v in vset:
        if not 1 <= v <= graph.n:
            raise VertexIndexError(f"vertex {v} out of range 1..{graph.n}")
    return frozenset(vset)


def find_violation(graph: DerivedGraph, vset: VertexSet, k: int, variant: str):
    """First vertex with too few neighbors in the set, or None if valid.

    Returns (vertex, neighbors_inside) for the smallest violating vertex id.
    """
    check_k(k)
    check_variant(variant)
    inside = _check_members(graph, vset)
    for v in range(1, graph.n + 1):
        if variant == VARIANT_KDOM and v in inside:
            continue
        cnt = 0
        for u in graph.adj[v - 1]:
            if u in inside:
                cnt += 1
                if cnt >= k:
                    break
        if cnt < k:
            return v, cnt
    return None


def is_k_dominating(graph: DerivedGraph, vset: VertexSet, k: int) -> bool:
    return find_violation(graph, vset, k, VARIANT_KDOM) is None


def is_total_k_dominating(graph: DerivedGraph, vset: VertexSet, k: int) -> bool:
    return find_violation(graph, vset, k, VARIANT_TOTAL) is None


def check_lemma_components(graph: DerivedGraph, vset: VertexSet, k: int) -> bool:
    """Every component of the subgraph induced by a total k-dominating set
    has at least k+1 vertices."""
    if find_violation(graph, vset, k, VARIANT_TOTAL) is not None:
        raise PreconditionError("set is not total k-dominating")
    inside = set(vset)
    seen: set[int] = set()
    for start in vset:
        if start in seen:
            continue
        comp = 0
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp += 1
            for u in graph.adj[v - 1]:
                if u in inside and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if comp < k + 1:
            return False
    return True


def brute_force_min(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    weighted: bool = False,
    cap: int = BRUTE_CAP_DEFAULT,
) -> Solution:
    """Exact minimum by subset scan, the oracle for both reduction engines.

    Subsets are visited by increasing cardinality, lexicographically within a
    level, so the first strictly-better candidate realizes the documented
    tie-break (cost, then cardinality, then lexicographic member list).
    Unit-cost runs stop at the first feasible subset; that one is optimal
    because later subsets in scan order never cost less.
    """
    check_k(k)
    check_variant(variant)
    n = model.n
    if n > cap:
        raise TooLargeError(f"brute force capped at n <= {cap}, got {n}")
    graph = derive_graph(model)
    nbr_mask = [0] * (n + 1)
    for v in range(1, n + 1):
        m = 0
        for u in graph.adj[v - 1]:
            m |= 1 << (u - 1)
        nbr_mask[v] = m
    costs = model.cost_by_original() if weighted else None
    if costs is None and weighted:
        costs = (Fraction(1),) * n

    total = variant == VARIANT_TOTAL
    if total and n > 0:
        # Monotonicity: if V(G) itself fails, every subset fails.
        full = (1 << n) - 1
        if any((nbr_mask[v] & full).bit_count() < k for v in range(1, n + 1)):
            return infeasible_solution("brute", {"subsets_scanned": 0})

    unit = costs is None
    best_cost: Fraction | None = None
    best_combo: tuple[int, ...] | None = None
    scanned = 0
    for size in range(0, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            scanned += 1
            mask = 0
            for v in combo:
                mask |= 1 << (v - 1)
            ok = True
            for v in range(1, n + 1):
                if not total and (mask >> (v - 1)) & 1:
                    continue
                if (nbr_mask[v] & mask).bit_count() < k:
                    ok = False
                    break
            if not ok:
                continue
            cost = Fraction(size) if unit else sum(
                (costs[v - 1] for v in combo), Fraction(0)
            )
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_combo = combo
            if unit:
                break
        if unit and best_cost is not None:
            break
    stats = {"subsets_scanned": scanned}
    if best_cost is None:
        return infeasible_solution("brute", stats)
    return Solution(VertexSet.of(best_combo), best_cost, True, "brute", stats)
