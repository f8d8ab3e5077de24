import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pikdom.errors import ParamError, PreconditionError, TooLargeError
from pikdom.model import derive_graph, generate_random, min_degree, with_costs
from pikdom.oracle import (
    VertexSet,
    brute_force_min,
    check_lemma_components,
    find_violation,
    is_k_dominating,
    is_total_k_dominating,
)

from conftest import chain_model, complete_model, make_model, oracle_min_set, pairwise_adjacency


def vs(*ids):
    return VertexSet.of(ids)


# --------------------------------------------------------------- predicates

def test_k_dominating_clique():
    g = derive_graph(complete_model(4))
    for pair in itertools.combinations(range(1, 5), 2):
        assert is_k_dominating(g, vs(*pair), 2)


def test_k_dominating_chain_examples():
    g = derive_graph(chain_model(6))
    # outside vertices 1,3,4,6 each checked against {2,5}
    assert is_k_dominating(g, vs(2, 5), 1)
    assert not is_k_dominating(g, vs(), 1)


def test_total_k_dominating_examples():
    k3 = derive_graph(complete_model(3))
    assert is_total_k_dominating(k3, vs(1, 2, 3), 2)
    p6 = derive_graph(chain_model(6))
    assert is_total_k_dominating(p6, vs(2, 3, 5, 6), 1)
    assert not is_total_k_dominating(p6, vs(), 1)
    # members need neighbors too: {2,5} leaves both members uncovered
    assert not is_total_k_dominating(p6, vs(2, 5), 1)
    assert find_violation(p6, vs(2, 5), 1, "total") == (2, 0)


def test_predicate_validation():
    g = derive_graph(chain_model(3))
    with pytest.raises(ParamError):
        is_k_dominating(g, vs(1), 0)
    from pikdom.errors import VertexIndexError

    with pytest.raises(VertexIndexError):
        is_k_dominating(g, vs(9), 1)


# --------------------------------------------------------------- brute force

def test_brute_clique_closed_forms():
    for k in (1, 2, 3):
        for n in range(k + 1, 7):
            m = complete_model(n)
            assert brute_force_min(m, k, "kdom").cost == k
            assert brute_force_min(m, k, "total").cost == k + 1


def test_brute_chain_p6_total():
    m = chain_model(6)
    sol = brute_force_min(m, 1, "total")
    pairs = [(iv.left, iv.right) for iv in m.intervals]
    want = oracle_min_set(pairwise_adjacency(pairs), 1, "total")
    assert want[0] == 4  # independent subset scan
    assert sol.cost == 4
    assert sol.feasible
    assert is_total_k_dominating(derive_graph(m), sol.vertices, 1)


def test_brute_matches_independent_scan_random():
    for seed in range(25):
        n = 4 + seed % 5
        m = generate_random(n, 555 + seed, [2, 3, 5][seed % 3])
        pairs = [(iv.left, iv.right) for iv in m.intervals]
        adj = pairwise_adjacency(pairs)
        rng = random.Random(seed)
        costs = [rng.randint(0, 6) for _ in range(n)]
        mw = with_costs(m, costs)
        for k in (1, 2):
            for variant in ("kdom", "total"):
                want = oracle_min_set(adj, k, variant)
                got = brute_force_min(m, k, variant)
                assert (want is None) == (not got.feasible)
                if want is not None:
                    assert got.cost == want[0]
                want_w = oracle_min_set(adj, k, variant, costs)
                got_w = brute_force_min(mw, k, variant, weighted=True)
                if want_w is not None:
                    assert got_w.cost == want_w[0]


def test_brute_tie_breaking_deterministic():
    # P_4, kdom, k=1: several optima of size 2; scan order must pick {1,3}
    m = chain_model(4)
    sol = brute_force_min(m, 1, "kdom")
    assert sol.vertices.members == (1, 3)
    assert sol.cost == 2
    assert brute_force_min(m, 1, "kdom") == sol


def test_brute_total_infeasible_iff_low_degree():
    for seed in range(20):
        n = 4 + seed % 6
        m = generate_random(n, 777 + seed, [1, 2, 4][seed % 3])
        deg = min_degree(derive_graph(m))
        for k in (1, 2, 3):
            sol = brute_force_min(m, k, "total")
            assert sol.feasible == (deg >= k)
            assert brute_force_min(m, k, "kdom").feasible  # V(G) always works


def test_brute_kdom_cost_bounds():
    for seed in range(10):
        n = 5 + seed % 4
        m = generate_random(n, 31 + seed, 3)
        rng = random.Random(seed)
        mw = with_costs(m, [rng.randint(0, 9) for _ in range(n)])
        sol = brute_force_min(mw, 2, "kdom", weighted=True)
        assert sol.cost <= sum(mw.costs)
        unit = brute_force_min(m, 2, "kdom")
        assert unit.cost == unit.vertices.size


def test_brute_cap():
    m = generate_random(21, 1, 3)
    with pytest.raises(TooLargeError):
        brute_force_min(m, 1, "kdom")
    m6 = generate_random(6, 1, 3)
    assert brute_force_min(m6, 1, "kdom", cap=6).feasible


# -------------------------------------------------- monotonicity / lemma

@settings(max_examples=50, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=10**6),
    n=st.integers(min_value=3, max_value=10),
    k=st.integers(min_value=1, max_value=2),
    extra=st.integers(min_value=0, max_value=2**10),
)
def test_superset_monotonicity(seed, n, k, extra):
    m = generate_random(n, seed, 4)
    g = derive_graph(m)
    sol = brute_force_min(m, k, "total")
    if not sol.feasible:
        return
    grown = set(sol.vertices)
    rng = random.Random(extra)
    grown.update(rng.sample(range(1, n + 1), rng.randint(0, n)))
    assert is_total_k_dominating(g, VertexSet.of(grown), k)
    assert is_k_dominating(g, VertexSet.of(grown), k)


def test_lemma_components_examples():
    k3 = derive_graph(complete_model(3))
    assert check_lemma_components(k3, vs(1, 2, 3), 2)
    p6 = derive_graph(chain_model(6))
    assert check_lemma_components(p6, vs(2, 3, 5, 6), 1)
    with pytest.raises(PreconditionError):
        check_lemma_components(p6, vs(1), 1)


def test_lemma_holds_for_all_brute_optima():
    for seed in range(30):
        n = 4 + seed % 7
        m = generate_random(n, 2024 + seed, [3, 5, 8][seed % 3])
        g = derive_graph(m)
        for k in (1, 2):
            sol = brute_force_min(m, k, "total")
            if sol.feasible:
                assert check_lemma_components(g, sol.vertices, k)


def test_empty_model_solutions():
    from pikdom.model import ProperIntervalModel

    empty = ProperIntervalModel(())
    for variant in ("kdom", "total"):
        sol = brute_force_min(empty, 1, variant)
        assert sol.feasible and sol.cost == 0 and sol.vertices.size == 0
