"""Suffix-partition dynamic programming over the derived DAG.

The speedup over the naive engine comes from never materializing jump (E0)
arcs between internal nodes.  Whether ``(t, s)`` is a jump arc depends on
``t`` only through its last ``k`` interval indices and its tail-eligibility,
both shared by every member of a suffix class.  So the DP keeps one running
minimum per class and, when processing a node, probes a single
representative of each already-finalized class instead of every potential
tail.  Jump arcs incident to the dummy source and sink are still tested
explicitly, as are all slide (E1) arcs.

Per node the DP tracks the best path ending in a jump arc and the best path
overall; per slide arc the best path ending with exactly that arc; per class
the best path ending anywhere in the class.  Unreachable states are ``None``
rather than a sentinel value because costs are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import TooLargeError
from .model import ProperIntervalModel, model_min_degree
from .oracle import (
    Solution,
    VARIANT_TOTAL,
    check_k,
    check_variant,
    infeasible_solution,
)
from .reduction import (
    DEFAULT_NODE_CAP,
    DagNode,
    E1_COST_NEW,
    KIND_BIG,
    KIND_SINK,
    KIND_SMALL,
    KIND_SOURCE,
    _check_budget,
    _Ctx,
    _e0_arc,
    _effective_costs,
    _enumerate_with_ctx,
    _seq_cost,
    eligible_tail_bigs,
    path_to_vertex_set,
)


def suffix_key(seq: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Class key: the last k indices, or the whole sequence when shorter.

    Short sequences only occur for plain k-domination (small nodes may have
    fewer than k vertices); using the full sequence makes those classes
    singletons, which is trivially safe.
    """
    return seq[-k:] if len(seq) >= k else seq


@dataclass
class SuffixClass:
    key: tuple[int, ...]
    members: tuple[int, ...]
    best: Fraction | None = None
    best_node: int | None = None
    finalized: bool = False


def suffix_partition(nodes, k: int, eligible) -> list[SuffixClass]:
    """Partition of small nodes plus tail-eligible big nodes by suffix key.

    Classes come out sorted by key; members keep enumeration (id) order, so
    ``members[0]`` is the lexicographically smallest member and serves as
    the class representative.
    """
    groups: dict[tuple[int, ...], list[int]] = {}
    for nd in nodes:
        if nd.kind == KIND_SMALL or (nd.kind == KIND_BIG and nd.id in eligible):
            groups.setdefault(suffix_key(nd.seq, k), []).append(nd.id)
    return [
        SuffixClass(key, tuple(sorted(ids))) for key, ids in sorted(groups.items())
    ]


def topo_order(nodes, k: int) -> list[int]:
    """Node ids sorted source-first, sink-last, middle by (suffix key, seq).

    Along every arc both the suffix key and the full sequence strictly
    increase lexicographically, so this is a topological order of the
    digraph; it also keeps each suffix class contiguous, which is what lets
    class minima be frozen on the fly.
    """
    middle = [nd for nd in nodes if nd.kind in (KIND_SMALL, KIND_BIG)]
    middle.sort(key=lambda nd: (suffix_key(nd.seq, k), nd.seq))
    order = [nd.id for nd in nodes if nd.kind == KIND_SOURCE]
    order.extend(nd.id for nd in middle)
    order.extend(nd.id for nd in nodes if nd.kind == KIND_SINK)
    return order


_PRED_SOURCE = "src"
_PRED_CLASS = "cls"
_PRED_SLIDE = "e1"


def solve_fast(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    weighted: bool = False,
    *,
    cap_nodes: int = DEFAULT_NODE_CAP,
    e1_rule: str = E1_COST_NEW,
) -> Solution:
    """Optimal (total) k-domination via the class-partitioned DP sweep."""
    sol, _ = solve_fast_with_path(
        model, k, variant, weighted, cap_nodes=cap_nodes, e1_rule=e1_rule
    )
    return sol


def solve_fast_with_path(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    weighted: bool = False,
    *,
    cap_nodes: int = DEFAULT_NODE_CAP,
    e1_rule: str = E1_COST_NEW,
    _trace: dict | None = None,
) -> tuple[Solution, list[DagNode] | None]:
    """As solve_fast, but also return the reconstructed node path.

    ``_trace``, when given a dict, receives DP internals (per-node values,
    sweep order, class minima) for the invariant tests.
    """
    check_k(k)
    check_variant(variant)
    if variant == VARIANT_TOTAL and model.n > 0 and model_min_degree(model) < k:
        return infeasible_solution("fast"), None
    _check_budget(model.n, k, variant, cap_nodes)
    ctx = _Ctx(model, k, variant)
    nodes = _enumerate_with_ctx(ctx)
    costs = _effective_costs(model, weighted)
    source = nodes[0]
    sink = nodes[-1]
    middle = [nd for nd in nodes if nd.kind in (KIND_SMALL, KIND_BIG)]

    eligible = eligible_tail_bigs(middle, model, k, variant, _ctx=ctx)
    classes = suffix_partition(middle, k, eligible)
    class_of_key = {cl.key: cl for cl in classes}

    # Slide arcs, grouped by head
    heads_by_prefix: dict[tuple[int, ...], list[DagNode]] = {}
    for nd in middle:
        if nd.kind == KIND_BIG:
            heads_by_prefix.setdefault(nd.seq[:-1], []).append(nd)
    slide_tails: dict[int, list[int]] = {nd.id: [] for nd in middle}
    e1_arcs = 0
    for nd in middle:
        if nd.kind != KIND_BIG:
            continue
        for head in heads_by_prefix.get(nd.seq[1:], ()):
            slide_tails[head.id].append(nd.id)
            e1_arcs += 1
    for tails in slide_tails.values():
        tails.sort()

    order = [nodes[i] for i in topo_order(nodes, k)]
    sweep = order[1:-1]

    dist: dict[int, Fraction | None] = {source.id: Fraction(0)}
    dist_jump: dict[int, Fraction | None] = {}
    pred: dict[int, tuple] = {}
    finalized: list[SuffixClass] = []
    repr_tests = 0

    def node_weight(nd: DagNode) -> Fraction:
        if costs is None:
            return Fraction(len(nd.seq))
        return _seq_cost(nd.seq, costs)

    def slide_weight(head: DagNode) -> Fraction:
        if costs is None:
            return Fraction(1)
        charged = head.seq[-1] if e1_rule == E1_COST_NEW else head.seq[0]
        return costs[charged - 1]

    idx = 0
    while idx < len(sweep):
        # one contiguous run of equal suffix keys
        key = suffix_key(sweep[idx].seq, k)
        run_end = idx
        while run_end < len(sweep) and suffix_key(sweep[run_end].seq, k) == key:
            run_end += 1
        for nd in sweep[idx:run_end]:
            w = node_weight(nd)
            if _e0_arc(ctx, source, nd):
                dj = w
                pj: tuple | None = (_PRED_SOURCE,)
            else:
                dj = None
                pj = None
                for cl in finalized:
                    if cl.best is None:
                        continue
                    repr_tests += 1
                    rep = nodes[cl.members[0]]
                    if _e0_arc(ctx, rep, nd):
                        cand = cl.best + w
                        if dj is None or cand < dj:
                            dj = cand
                            pj = (_PRED_CLASS, cl.best_node)
            dist_jump[nd.id] = dj
            best = dj
            best_pred = pj
            for tail_id in slide_tails[nd.id]:
                dt = dist.get(tail_id)
                if dt is None:
                    continue
                cand = dt + slide_weight(nd)
                if best is None or cand < best:
                    best = cand
                    best_pred = (_PRED_SLIDE, tail_id)
            dist[nd.id] = best
            if best is not None:
                pred[nd.id] = best_pred
        cl = class_of_key.get(key)
        if cl is not None:
            for mid in cl.members:
                d = dist.get(mid)
                if d is not None and (cl.best is None or d < cl.best):
                    cl.best = d
                    cl.best_node = mid
            cl.finalized = True
            finalized.append(cl)
        idx = run_end

    # Sink: its incoming jump arcs are the one place they are materialized.
    sink_dist: Fraction | None = None
    sink_pred: int | None = None
    for nd in [source] + sweep:
        d = dist.get(nd.id)
        if d is None:
            continue
        if sink_dist is not None and d >= sink_dist:
            continue
        if _e0_arc(ctx, nd, sink):
            sink_dist = d
            sink_pred = nd.id

    stats = {
        "nodes": len(nodes),
        "small_nodes": sum(1 for nd in middle if nd.kind == KIND_SMALL),
        "big_nodes": sum(1 for nd in middle if nd.kind == KIND_BIG),
        "tail_eligible_bigs": len(eligible),
        "suffix_classes": len(classes),
        "representative_tests": repr_tests,
        "e1_arcs": e1_arcs,
    }
    if _trace is not None:
        _trace["dist"] = dict(dist)
        _trace["dist_jump"] = dict(dist_jump)
        _trace["sink_dist"] = sink_dist
        _trace["order"] = [nd.id for nd in order]
        _trace["classes"] = classes
        _trace["nodes"] = nodes
    if sink_dist is None:
        return infeasible_solution("fast", stats), None

    # Reconstruction follows the recorded predecessors back to the source.
    rev = [sink.id, sink_pred]
    cur = sink_pred
    while cur != source.id:
        tag = pred[cur]
        if tag[0] == _PRED_SOURCE:
            cur = source.id
        else:
            cur = tag[1]
        rev.append(cur)
    node_path = [nodes[i] for i in reversed(rev)]
    vset = path_to_vertex_set(node_path, model)
    return Solution(vset, sink_dist, True, "fast", stats), node_path


def representative_independence_check(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    *,
    cap: int = 12,
) -> bool:
    """Diagnostic: within each suffix class, jump-arc membership toward any
    node is all-or-none.  This is the property the DP's single-representative
    probe relies on."""
    check_k(k)
    check_variant(variant)
    if model.n > cap:
        raise TooLargeError(f"diagnostic capped at n <= {cap}, got {model.n}")
    ctx = _Ctx(model, k, variant)
    nodes = _enumerate_with_ctx(ctx)
    middle = [nd for nd in nodes if nd.kind in (KIND_SMALL, KIND_BIG)]
    eligible = eligible_tail_bigs(middle, model, k, variant, _ctx=ctx)
    classes = suffix_partition(middle, k, eligible)
    targets = middle + [nodes[-1]]
    for cl in classes:
        members = [nodes[i] for i in cl.members]
        for s in targets:
            answers = {_e0_arc(ctx, m, s) for m in members}
            if len(answers) > 1:
                return False
    return True
