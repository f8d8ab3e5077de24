"""The derived DAG and the explicit (naive) shortest-path engine.

The optimum (total) k-domination cost of a sorted proper interval model
equals the shortest source-to-sink path length in a DAG whose nodes are
increasing, consecutively-intersecting index sequences:

* ``small`` nodes stand for whole solution components with fewer than 2k
  vertices (length k+1 .. 2k-1 for the total variant, 1 .. 2k-1 for plain
  k-domination),
* ``big`` nodes are sliding windows of exactly 2k consecutive solution
  vertices inside larger components,
* ``E1`` arcs slide a big window one vertex to the right,
* ``E0`` arcs jump the gap between two consecutive components, and
* dummy ``source``/``sink`` nodes bracket the line with intervals disjoint
  from everything.

All index arithmetic runs in the model's sorted numbering extended by the
two dummies: position 0 is the source interval, 1..n the model, n+1 the
sink interval.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (
    BudgetError,
    NotArcError,
    NotPathError,
    ParamError,
    VariantMismatchError,
)
from .model import Interval, ProperIntervalModel, format_rational, model_min_degree
from .oracle import (
    Solution,
    VARIANT_KDOM,
    VARIANT_TOTAL,
    VertexSet,
    check_k,
    check_variant,
    infeasible_solution,
)

KIND_SOURCE = "source"
KIND_SINK = "sink"
KIND_SMALL = "small"
KIND_BIG = "big"

ARC_E0 = "E0"
ARC_E1 = "E1"

E1_COST_NEW = "max"      # charge the newly appended rightmost vertex
E1_COST_PRINTED = "min"  # charge the head's leftmost vertex (known-bad, kept
                         # as a diagnostic toggle; see tests)
E1_COST_RULES = (E1_COST_NEW, E1_COST_PRINTED)

DEFAULT_NODE_CAP = 10**8

# Test hook: selftest mutation checks flip one arc condition through here.
_FAULTS: set[str] = set()


@dataclass(frozen=True)
class DagNode:
    id: int
    kind: str
    seq: tuple[int, ...]
    variant: str

    @property
    def lo(self) -> int:
        return self.seq[0]

    @property
    def hi(self) -> int:
        return self.seq[-1]

    @property
    def real_seq(self) -> tuple[int, ...]:
        """Model interval indices only; dummies contribute nothing."""
        return self.seq if self.kind in (KIND_SMALL, KIND_BIG) else ()


@dataclass(frozen=True)
class DagArc:
    tail: int
    head: int
    cls: str
    length: Fraction


@dataclass(frozen=True)
class DerivedDigraph:
    nodes: tuple[DagNode, ...]
    arcs: tuple[DagArc, ...]
    variant: str
    k: int
    weighted: bool
    n: int

    @property
    def source(self) -> DagNode:
        return self.nodes[0]

    @property
    def sink(self) -> DagNode:
        return self.nodes[-1]


class _Ctx:
    """Precomputed intersection ranges over the dummy-extended index line.

    ``reach_r[i]``/``reach_l[i]`` bound the contiguous block of positions
    whose intervals intersect position i; in a sorted proper family every
    intersection test reduces to a range check.
    """

    __slots__ = ("n", "k", "variant", "reach_l", "reach_r", "weighted_costs")

    def __init__(self, model: ProperIntervalModel, k: int, variant: str):
        check_k(k)
        check_variant(variant)
        self.n = model.n
        self.k = k
        self.variant = variant
        a1 = model.intervals[0].left if model.n else Fraction(0)
        bn = model.intervals[-1].right if model.n else Fraction(0)
        ext = (
            [Interval(a1 - 2, a1 - 1)]
            + list(model.intervals)
            + [Interval(bn + 1, bn + 2)]
        )
        m = len(ext)
        lefts = [iv.left for iv in ext]
        rights = [iv.right for iv in ext]
        rr = [0] * m
        j = 0
        for i in range(m):
            if j < i:
                j = i
            while j + 1 < m and lefts[j + 1] <= rights[i]:
                j += 1
            rr[i] = j
        rl = [0] * m
        j = m - 1
        for i in range(m - 1, -1, -1):
            if j > i:
                j = i
            while j - 1 >= 0 and rr[j - 1] >= i:
                j -= 1
            rl[i] = j
        self.reach_r = rr
        self.reach_l = rl

    def inter(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return j <= self.reach_r[i]

    def hits_at_least(self, m: int, seqs, need: int, exclude_self: bool) -> bool:
        """Does interval m intersect >= need members of the given sequences?

        ``exclude_self`` drops m from the count when it appears in a
        sequence (the total variant counts against the set minus itself).
        """
        lo, hi = self.reach_l[m], self.reach_r[m]
        cnt = 0
        for seq in seqs:
            for t in seq:
                if exclude_self and t == m:
                    continue
                if lo <= t <= hi:
                    cnt += 1
                    if cnt >= need:
                        return True
        return need <= 0


def _small_lengths(k: int, variant: str) -> range:
    if variant == VARIANT_TOTAL:
        return range(k + 1, 2 * k)
    return range(1, 2 * k)


def projected_node_count(n: int, k: int, variant: str) -> int:
    """Upper bound on node count before enumeration (binomial projection)."""
    qs = set(_small_lengths(k, variant)) | {2 * k}
    return 2 + sum(comb(n, q) for q in qs if q <= n)


def _check_budget(n: int, k: int, variant: str, cap_nodes: int) -> None:
    if projected_node_count(n, k, variant) > cap_nodes:
        raise BudgetError(
            f"projected node count exceeds cap {cap_nodes} "
            f"(n={n}, k={k}, variant={variant})"
        )


def _small_ok(ctx: _Ctx, seq: tuple[int, ...]) -> bool:
    k = ctx.k
    if ctx.variant == VARIANT_TOTAL:
        for m in range(seq[0], seq[-1] + 1):
            if not ctx.hits_at_least(m, (seq,), k, exclude_self=True):
                return False
        return True
    sset = set(seq)
    for m in range(seq[0] + 1, seq[-1]):
        if m in sset:
            continue
        if not ctx.hits_at_least(m, (seq,), k, exclude_self=False):
            return False
    return True


def _big_ok(ctx: _Ctx, seq: tuple[int, ...]) -> bool:
    k = ctx.k
    if ctx.variant == VARIANT_TOTAL:
        for m in range(seq[k - 1], seq[k] + 1):
            if not ctx.hits_at_least(m, (seq,), k, exclude_self=True):
                return False
        return True
    sset = set(seq)
    for m in range(seq[k - 1] + 1, seq[k]):
        if m in sset:
            continue
        if not ctx.hits_at_least(m, (seq,), k, exclude_self=False):
            return False
    return True


def enumerate_nodes(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    *,
    cap_nodes: int = DEFAULT_NODE_CAP,
) -> list[DagNode]:
    """All DAG nodes in deterministic order: source, sequences in
    lexicographic order, sink.

    Sequences are grown by extending consecutively-intersecting chains, so
    the chain condition prunes before the per-window domination conditions
    are evaluated.  Lexicographic order is topological here: every arc
    strictly increases the leftmost index.
    """
    _check_budget(model.n, k, variant, cap_nodes)
    ctx = _Ctx(model, k, variant)
    return _enumerate_with_ctx(ctx)


def _enumerate_with_ctx(ctx: _Ctx) -> list[DagNode]:
    n, k, variant = ctx.n, ctx.k, ctx.variant
    smalls = _small_lengths(k, variant)
    big_len = 2 * k
    seqs: list[tuple[tuple[int, ...], str]] = []

    def grow(seq: list[int]) -> None:
        q = len(seq)
        t = tuple(seq)
        if q in smalls and _small_ok(ctx, t):
            seqs.append((t, KIND_SMALL))
        if q == big_len:
            if _big_ok(ctx, t):
                seqs.append((t, KIND_BIG))
            return
        last = seq[-1]
        for nxt in range(last + 1, ctx.reach_r[last] + 1):
            if nxt > n:
                break
            seq.append(nxt)
            grow(seq)
            seq.pop()

    for start in range(1, n + 1):
        grow([start])

    nodes = [DagNode(0, KIND_SOURCE, (0,), variant)]
    for i, (t, kind) in enumerate(seqs, start=1):
        nodes.append(DagNode(i, kind, t, variant))
    nodes.append(DagNode(len(nodes), KIND_SINK, (n + 1,), variant))
    return nodes


def _e0_arc(ctx: _Ctx, s: DagNode, s2: DagNode) -> bool:
    if s.kind == KIND_SINK or s2.kind == KIND_SOURCE:
        return False
    k = ctx.k
    hi, lo2 = s.hi, s2.lo
    # (1) strictly ordered and disjoint boundary intervals
    if not (hi < lo2 and ctx.reach_r[hi] < lo2):
        return False
    # (2) everything in the gap is covered by the two end sets
    rs, rs2 = s.real_seq, s2.real_seq
    need = k - 1 if "e0-relax" in _FAULTS else k
    for m in range(hi + 1, lo2):
        if not ctx.hits_at_least(m, (rs, rs2), need, exclude_self=False):
            return False
    # (3)/(4) window conditions on big endpoints
    if ctx.variant == VARIANT_TOTAL:
        if s.kind == KIND_BIG and not ctx.inter(s.seq[-(k + 1)], s.seq[-1]):
            return False
        if s2.kind == KIND_BIG and not ctx.inter(s2.seq[0], s2.seq[k]):
            return False
    else:
        if s.kind == KIND_BIG and not _kdom_tail_ok(ctx, s.seq):
            return False
        if s2.kind == KIND_BIG and not _kdom_head_ok(ctx, s2.seq):
            return False
    return True


def _kdom_tail_ok(ctx: _Ctx, seq: tuple[int, ...]) -> bool:
    k = ctx.k
    sset = set(seq)
    for m in range(seq[k] + 1, seq[-1]):
        if m in sset:
            continue
        if not ctx.hits_at_least(m, (seq,), k, exclude_self=False):
            return False
    return True


def _kdom_head_ok(ctx: _Ctx, seq: tuple[int, ...]) -> bool:
    k = ctx.k
    sset = set(seq)
    for m in range(seq[0] + 1, seq[k - 1]):
        if m in sset:
            continue
        if not ctx.hits_at_least(m, (seq,), k, exclude_self=False):
            return False
    return True


def is_e0_arc(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    s: DagNode,
    s2: DagNode,
    *,
    _ctx: _Ctx | None = None,
) -> bool:
    """Jump-arc predicate between two nodes of the same derived digraph."""
    if s.variant != variant or s2.variant != variant:
        raise VariantMismatchError(
            f"nodes built for {s.variant!r}/{s2.variant!r}, queried for {variant!r}"
        )
    ctx = _ctx if _ctx is not None else _Ctx(model, k, variant)
    return _e0_arc(ctx, s, s2)


def is_e1_arc(k: int, s: DagNode, s2: DagNode) -> bool:
    """Slide-arc predicate: both big, head = tail shifted right by one."""
    check_k(k)
    if s.kind != KIND_BIG or s2.kind != KIND_BIG:
        return False
    if len(s.seq) != 2 * k or len(s2.seq) != 2 * k:
        return False
    return s.seq[1:] == s2.seq[:-1]


def eligible_tail_bigs(
    nodes,
    model: ProperIntervalModel,
    k: int,
    variant: str,
    *,
    _ctx: _Ctx | None = None,
) -> frozenset[int]:
    """Big nodes that can start a jump arc (the per-node tail condition).

    Membership depends only on the node itself, which is what lets the fast
    engine treat one member of a suffix class as a representative for all.
    """
    ctx = _ctx if _ctx is not None else _Ctx(model, k, variant)
    out = []
    for nd in nodes:
        if nd.kind != KIND_BIG:
            continue
        if variant == VARIANT_TOTAL:
            ok = ctx.inter(nd.seq[-(k + 1)], nd.seq[-1])
        else:
            ok = _kdom_tail_ok(ctx, nd.seq)
        if ok:
            out.append(nd.id)
    return frozenset(out)


def _seq_cost(seq, costs) -> Fraction:
    return sum((costs[i - 1] for i in seq), Fraction(0))


def arc_length(
    s: DagNode,
    s2: DagNode,
    cls: str,
    costs=None,
    *,
    e1_rule: str = E1_COST_NEW,
) -> Fraction:
    """Length of an arc of the stated class.

    Unweighted: a jump arc pays the full head sequence, a slide arc pays 1
    for the single new vertex, and arcs into the sink are free.  Weighted:
    the same shape with per-vertex costs; the slide arc pays the cost of the
    vertex it appends (``e1_rule`` switches to the head's leftmost vertex
    for the documented-bad diagnostic variant).
    """
    if e1_rule not in E1_COST_RULES:
        raise ParamError(f"e1_rule must be one of {E1_COST_RULES}")
    if cls == ARC_E1:
        k2 = len(s.seq)
        if k2 % 2 or not is_e1_arc(k2 // 2, s, s2):
            raise NotArcError("not a slide arc")
        if costs is None:
            return Fraction(1)
        charged = s2.seq[-1] if e1_rule == E1_COST_NEW else s2.seq[0]
        return costs[charged - 1]
    if cls == ARC_E0:
        if s.kind == KIND_SINK or s2.kind == KIND_SOURCE or not s.hi < s2.lo:
            raise NotArcError("not a jump arc")
        if s2.kind == KIND_SINK:
            return Fraction(0)
        if costs is None:
            return Fraction(len(s2.seq))
        return _seq_cost(s2.seq, costs)
    raise NotArcError(f"unknown arc class {cls!r}")


def _effective_costs(model: ProperIntervalModel, weighted: bool):
    if not weighted:
        return None
    if model.costs is not None:
        return model.costs
    return (Fraction(1),) * model.n


def build_digraph(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    weighted: bool = False,
    *,
    cap_nodes: int = DEFAULT_NODE_CAP,
    e1_rule: str = E1_COST_NEW,
) -> DerivedDigraph:
    """Materialize every node and every arc (the naive engine's input)."""
    _check_budget(model.n, k, variant, cap_nodes)
    ctx = _Ctx(model, k, variant)
    nodes = _enumerate_with_ctx(ctx)
    costs = _effective_costs(model, weighted)
    arcs: list[DagArc] = []

    # Slide arcs via the shared (2k-1)-overlap
    heads_by_prefix: dict[tuple[int, ...], list[DagNode]] = {}
    for nd in nodes:
        if nd.kind == KIND_BIG:
            heads_by_prefix.setdefault(nd.seq[:-1], []).append(nd)
    for nd in nodes:
        if nd.kind != KIND_BIG:
            continue
        for head in heads_by_prefix.get(nd.seq[1:], ()):
            arcs.append(
                DagArc(nd.id, head.id, ARC_E1,
                       arc_length(nd, head, ARC_E1, costs, e1_rule=e1_rule))
            )

    # Jump arcs: candidate heads have lo strictly past the tail's reach
    by_lo = sorted((nd for nd in nodes if nd.kind != KIND_SOURCE),
                   key=lambda nd: (nd.lo, nd.id))
    los = [nd.lo for nd in by_lo]
    for tail in nodes:
        if tail.kind == KIND_SINK:
            continue
        first = bisect.bisect_left(los, ctx.reach_r[tail.hi] + 1)
        for head in by_lo[first:]:
            if _e0_arc(ctx, tail, head):
                arcs.append(
                    DagArc(tail.id, head.id, ARC_E0,
                           arc_length(tail, head, ARC_E0, costs, e1_rule=e1_rule))
                )
    arcs.sort(key=lambda a: (a.tail, a.head))
    return DerivedDigraph(tuple(nodes), tuple(arcs), variant, k, weighted, model.n)


def path_to_vertex_set(path, model: ProperIntervalModel | None = None) -> VertexSet:
    """Union of interval indices over the internal nodes of a source-sink path.

    Structural path validity is checked (kinds, strict left-to-right
    progress, arc shape); full arc-condition validation needs the digraph.
    With a model, indices are mapped to the caller's numbering.
    """
    if len(path) < 2 or path[0].kind != KIND_SOURCE or path[-1].kind != KIND_SINK:
        raise NotPathError("path must run from source to sink")
    for a, b in zip(path, path[1:]):
        if a.kind == KIND_SINK or b.kind == KIND_SOURCE:
            raise NotPathError("dummy nodes out of place")
        slide = (
            a.kind == KIND_BIG
            and b.kind == KIND_BIG
            and len(a.seq) == len(b.seq)
            and a.seq[1:] == b.seq[:-1]
        )
        if not slide and not a.hi < b.lo:
            raise NotPathError(f"nodes {a.seq} -> {b.seq} cannot form an arc")
    picked: set[int] = set()
    for nd in path[1:-1]:
        picked.update(nd.real_seq)
    if model is not None:
        return VertexSet.of(model.to_original(picked))
    return VertexSet.of(picked)


def solve_naive(
    model: ProperIntervalModel,
    k: int,
    variant: str,
    weighted: bool = False,
    *,
    cap_nodes: int = DEFAULT_NODE_CAP,
    e1_rule: str = E1_COST_NEW,
) -> Solution:
    """Shortest path over the fully materialized digraph.

    Among equal-cost paths the lexicographically smallest node-id sequence
    wins, making the reported set deterministic.
    """
    check_k(k)
    check_variant(variant)
    if variant == VARIANT_TOTAL and model.n > 0 and model_min_degree(model) < k:
        # A total k-dominating set exists iff every vertex has >= k neighbors.
        return infeasible_solution("naive")
    dg = build_digraph(
        model, k, variant, weighted, cap_nodes=cap_nodes, e1_rule=e1_rule
    )
    n_nodes = len(dg.nodes)
    in_arcs: list[list[DagArc]] = [[] for _ in range(n_nodes)]
    for arc in dg.arcs:
        in_arcs[arc.head].append(arc)
    dist: list[Fraction | None] = [None] * n_nodes
    path: list[tuple[int, ...] | None] = [None] * n_nodes
    dist[0] = Fraction(0)
    path[0] = (0,)
    for v in range(1, n_nodes):
        for arc in in_arcs[v]:
            if dist[arc.tail] is None:
                continue
            cand = dist[arc.tail] + arc.length
            cand_path = path[arc.tail] + (v,)
            if dist[v] is None or cand < dist[v] or (
                cand == dist[v] and cand_path < path[v]
            ):
                dist[v] = cand
                path[v] = cand_path
    sink = n_nodes - 1
    stats = {"nodes": n_nodes, "arcs": len(dg.arcs)}
    if dist[sink] is None:
        return infeasible_solution("naive", stats)
    node_path = [dg.nodes[i] for i in path[sink]]
    vset = path_to_vertex_set(node_path, model)
    return Solution(vset, dist[sink], True, "naive", stats)


def dump_digraph(dg: DerivedDigraph) -> str:
    """Deterministic text dump: node lines then arc lines."""
    lines = []
    for nd in dg.nodes:
        idx = " ".join(str(i) for i in nd.seq)
        lines.append(f"{nd.id} {nd.kind} {idx}")
    for arc in dg.arcs:
        lines.append(f"{arc.tail} {arc.head} {arc.cls} {format_rational(arc.length)}")
    return "\n".join(lines) + "\n"
