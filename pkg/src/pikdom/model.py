"""Proper interval models: parsing, validation, derived graphs, generation.

A model is an ordered family of closed intervals on the line, none containing
another.  All endpoint arithmetic is exact (``fractions.Fraction``): the
node/arc enumeration downstream depends on exact intersection tests, so
floating point is never used.

Index conventions
-----------------
Intervals are stored sorted by left endpoint; in a proper model the right
endpoints are then sorted as well.  "Sorted index" means the 1-based position
in that order.  ``original_ids`` remembers the caller's numbering from the
input file so solutions can be reported in it; for generated models the two
numberings coincide.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DuplicateIntervalError,
    EmptyGraphError,
    NegativeCostError,
    NotProperError,
    ParamError,
    ParseError,
    VertexIndexError,
)


def parse_rational(token: str) -> Fraction:
    """Parse an integer, decimal, or ``p/q`` literal exactly."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {token!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical rendering: integer, exact decimal, or ``p/q``.

    A decimal form exists exactly when the reduced denominator is 2^a * 5^b;
    otherwise the fraction form is emitted (the parser accepts all three).
    """
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    exp = max(twos, fives)
    scaled = x.numerator * 10**exp // den
    digits = str(abs(scaled)).rjust(exp + 1, "0")
    sign = "-" if scaled < 0 else ""
    int_part = digits[: len(digits) - exp]
    frac_part = digits[len(digits) - exp:].rstrip("0")
    return f"{sign}{int_part}.{frac_part}"


@dataclass(frozen=True)
class Interval:
    """A closed interval [left, right] with exact rational endpoints."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", Fraction(self.left))
        object.__setattr__(self, "right", Fraction(self.right))
        if self.left >= self.right:
            raise ParamError(
                f"interval needs left < right, got [{self.left}, {self.right}]"
            )

    def intersects(self, other: "Interval") -> bool:
        return max(self.left, other.left) <= min(self.right, other.right)


@dataclass(frozen=True)
class ProperIntervalModel:
    """A validated proper interval model, sorted by left endpoint.

    ``costs`` is present exactly for weighted instances and is aligned with
    the sorted interval order.  ``original_ids[i]`` is the caller's 1-based
    id of the interval at sorted position i (0-based).
    """

    intervals: tuple[Interval, ...]
    costs: tuple[Fraction, ...] | None = None
    original_ids: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.original_ids:
            object.__setattr__(
                self, "original_ids", tuple(range(1, len(self.intervals) + 1))
            )
        n = len(self.intervals)
        if sorted(self.original_ids) != list(range(1, n + 1)):
            raise ParamError("original_ids must be a permutation of 1..n")
        for a, b in zip(self.intervals, self.intervals[1:]):
            if a.left == b.left and a.right == b.right:
                raise DuplicateIntervalError(f"coincident intervals [{a.left}, {a.right}]")
        for a, b in zip(self.intervals, self.intervals[1:]):
            if not (a.left < b.left and a.right < b.right):
                raise NotProperError(
                    f"containment between [{a.left}, {a.right}] and [{b.left}, {b.right}]"
                )
        if self.costs is not None:
            if len(self.costs) != n:
                raise ParamError("costs length must equal interval count")
            for c in self.costs:
                if c < 0:
                    raise NegativeCostError(f"negative cost {c}")

    @property
    def n(self) -> int:
        return len(self.intervals)

    @property
    def weighted(self) -> bool:
        return self.costs is not None

    def interval(self, i: int) -> Interval:
        """Interval at sorted index i (1-based)."""
        if not 1 <= i <= self.n:
            raise VertexIndexError(f"index {i} out of range 1..{self.n}")
        return self.intervals[i - 1]

    def to_original(self, sorted_ids) -> tuple[int, ...]:
        """Map sorted 1-based indices to the caller's numbering, sorted."""
        return tuple(sorted(self.original_ids[i - 1] for i in sorted_ids))

    def cost_by_original(self) -> tuple[Fraction, ...] | None:
        """Costs re-indexed by original id (position oid-1), or None."""
        if self.costs is None:
            return None
        out = [Fraction(0)] * self.n
        for pos, oid in enumerate(self.original_ids):
            out[oid - 1] = self.costs[pos]
        return tuple(out)


def build_model(intervals, costs=None, original_ids=None) -> ProperIntervalModel:
    """Sort raw (interval, cost) data by left endpoint and validate."""
    items = list(intervals)
    n = len(items)
    if original_ids is None:
        original_ids = list(range(1, n + 1))
    cost_list = list(costs) if costs is not None else None
    order = sorted(range(n), key=lambda t: (items[t].left, items[t].right))
    sorted_iv = tuple(items[t] for t in order)
    sorted_costs = tuple(cost_list[t] for t in order) if cost_list is not None else None
    sorted_orig = tuple(original_ids[t] for t in order)
    return ProperIntervalModel(sorted_iv, sorted_costs, sorted_orig)


def parse_model(text: str) -> ProperIntervalModel:
    """Parse the line-oriented instance format.

    Format: ``#`` starts a comment anywhere on a line.  The first payload
    line is ``n`` optionally followed by the token ``weighted``; the next n
    lines are ``left right`` or, when weighted, ``left right cost``.
    """
    rows = []
    for raw in text.splitlines():
        payload = raw.split("#", 1)[0].strip()
        if payload:
            rows.append(payload)
    if not rows:
        raise ParseError("empty instance")
    head = rows[0].split()
    try:
        n = int(head[0])
    except ValueError as exc:
        raise ParseError(f"bad header {rows[0]!r}") from exc
    if n < 0:
        raise ParseError(f"negative interval count {n}")
    weighted = False
    if len(head) == 2:
        if head[1] != "weighted":
            raise ParseError(f"unknown header token {head[1]!r}")
        weighted = True
    elif len(head) > 2:
        raise ParseError(f"bad header {rows[0]!r}")
    body = rows[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} interval lines, found {len(body)}")
    intervals = []
    costs = [] if weighted else None
    for lineno, row in enumerate(body, start=1):
        toks = row.split()
        want = 3 if weighted else 2
        if len(toks) != want:
            raise ParseError(f"line {lineno}: expected {want} fields, got {len(toks)}")
        left = parse_rational(toks[0])
        right = parse_rational(toks[1])
        try:
            intervals.append(Interval(left, right))
        except ParamError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if weighted:
            c = parse_rational(toks[2])
            if c < 0:
                raise NegativeCostError(f"line {lineno}: negative cost {c}")
            costs.append(c)
    return build_model(intervals, costs)


def serialize_model(model: ProperIntervalModel) -> str:
    """Canonical byte-stable text form (sorted order, LF endings)."""
    lines = [f"{model.n} weighted" if model.weighted else f"{model.n}"]
    for pos, iv in enumerate(model.intervals):
        row = f"{format_rational(iv.left)} {format_rational(iv.right)}"
        if model.weighted:
            row += f" {format_rational(model.costs[pos])}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def intersects(model: ProperIntervalModel, i: int, j: int) -> bool:
    """Closed-interval intersection test on sorted indices (1-based).

    For i < j this is exactly ``left_j <= right_i``; touching endpoints count.
    """
    if not (1 <= i <= model.n and 1 <= j <= model.n):
        raise VertexIndexError(f"indices ({i}, {j}) out of range 1..{model.n}")
    if i > j:
        i, j = j, i
    return model.intervals[j - 1].left <= model.intervals[i - 1].right


def _reach_sorted(model: ProperIntervalModel) -> list[int]:
    """reach[i] (0-based) = largest j with interval j intersecting interval i."""
    n = model.n
    lefts = [iv.left for iv in model.intervals]
    rights = [iv.right for iv in model.intervals]
    reach = [0] * n
    j = 0
    for i in range(n):
        if j < i:
            j = i
        while j + 1 < n and lefts[j + 1] <= rights[i]:
            j += 1
        reach[i] = j
    return reach


@dataclass(frozen=True)
class DerivedGraph:
    """Intersection graph of a model, in the caller's original numbering."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not 1 <= v <= self.n:
            raise VertexIndexError(f"vertex {v} out of range 1..{self.n}")
        return self.adj[v - 1]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))


def derive_graph(model: ProperIntervalModel) -> DerivedGraph:
    """Build the intersection graph; adjacency matches pairwise intersects."""
    n = model.n
    reach = _reach_sorted(model)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        oi = model.original_ids[i]
        for j in range(i + 1, reach[i] + 1):
            oj = model.original_ids[j]
            adj[oi - 1].append(oj)
            adj[oj - 1].append(oi)
    return DerivedGraph(n, tuple(tuple(sorted(a)) for a in adj))


def min_degree(graph: DerivedGraph) -> int:
    if graph.n == 0:
        raise EmptyGraphError("min_degree undefined on the empty graph")
    return min(len(a) for a in graph.adj)


def model_min_degree(model: ProperIntervalModel) -> int:
    """Minimum vertex degree straight from the sorted model, O(n)."""
    if model.n == 0:
        raise EmptyGraphError("min_degree undefined on the empty model")
    reach = _reach_sorted(model)
    n = model.n
    left_reach = [0] * n
    j = n - 1
    for i in range(n - 1, -1, -1):
        if j > i:
            j = i
        while j - 1 >= 0 and reach[j - 1] >= i:
            j -= 1
        left_reach[i] = j
    return min(reach[i] - left_reach[i] for i in range(n))


_GAP_MAX = 4  # integer gap between consecutive left endpoints


def generate_random(n: int, seed: int, stretch) -> ProperIntervalModel:
    """Deterministic random model: n equal-length intervals.

    Left endpoints sit on an integer grid with seeded gaps in [1, 4]; equal
    lengths make the family proper by construction.  ``stretch`` (a positive
    rational) is the common interval length and controls density.
    """
    if n < 1:
        raise ParamError(f"need n >= 1, got {n}")
    try:
        length = Fraction(stretch)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParamError(f"bad stretch {stretch!r}") from exc
    if length <= 0:
        raise ParamError(f"need stretch > 0, got {length}")
    rng = random.Random(seed)
    intervals = []
    x = 0
    for i in range(n):
        if i:
            x += rng.randint(1, _GAP_MAX)
        intervals.append(Interval(Fraction(x), Fraction(x) + length))
    return ProperIntervalModel(tuple(intervals))


def with_costs(model: ProperIntervalModel, costs) -> ProperIntervalModel:
    """Copy of the model with per-vertex costs (aligned to sorted order)."""
    return ProperIntervalModel(
        model.intervals, tuple(Fraction(c) for c in costs), model.original_ids
    )
