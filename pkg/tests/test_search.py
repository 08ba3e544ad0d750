import json
import time

import numpy as np
import pytest

from rooktours import kernels
from rooktours.core import Infeasible, RookTourError, circuit_from_order, count_straights, count_turns, serialize_rct
from rooktours.invariants import verify_all
from rooktours.profile import ALL_GLYPHS, EMPTY_OK, Profile, glyph_mask, min_cost_dp
from rooktours.search import (
    BudgetExhausted,
    all_circuits,
    count_circuits,
    enumerate_circuits,
    exists_within,
    iter_connections,
    max_turns,
    minimize,
    sample_connections,
)

from conftest import boards_up_to


@pytest.mark.parametrize("dims,count", [((2, 2), 1), ((4, 4), 6), ((6, 6), 1072), ((3, 4), 2), ((4, 6), 37)])
def test_counts(dims, count):
    assert count_circuits(dims) == count
    assert enumerate_circuits(dims) == count


@pytest.mark.parametrize("m", range(2, 12))
def test_strips_have_one_circuit(m):
    assert count_circuits((2, m)) == 1
    assert enumerate_circuits((m, 2)) == 1


def test_count_orientation_and_threads():
    assert count_circuits((4, 7)) == count_circuits((7, 4))
    assert count_circuits((6, 6), threads=2) == 1072


def test_infeasible():
    with pytest.raises(Infeasible):
        count_circuits((3, 5))
    with pytest.raises(Infeasible):
        enumerate_circuits((1, 6))
    with pytest.raises(Infeasible):
        minimize((5, 5), "turns")


@pytest.mark.parametrize("dims", boards_up_to(24))
def test_enumerator_equals_naive_oracle(dims):
    fast = set(all_circuits(dims))
    slow = {circuit_from_order(dims, o) for o in kernels.naive_orders(*dims)}
    assert fast == slow
    assert len(fast) == count_circuits(dims)


def test_enumeration_is_deterministic_and_limited():
    a = [serialize_rct(c) for c in all_circuits((4, 5))]
    b = []
    enumerate_circuits((4, 5), lambda c: b.append(serialize_rct(c)))
    assert a == b
    assert enumerate_circuits((4, 5), limit=3) == 3
    assert len(list(iter_connections((4, 5), limit=5))) == 5


def test_enumeration_with_constraints():
    allowed = np.full((4, 4), ALL_GLYPHS)
    allowed[1, 1] = glyph_mask("-")
    circuits = [circuit_from_order((4, 4), c.order()) for c in all_circuits((4, 4))]
    want = sum(1 for c in circuits if c.glyphs()[1][1] == "-")
    assert len(list(iter_connections((4, 4), allowed=allowed))) == want


def test_profile_holes():
    # the outer ring of a 4x4 board with the centre removed
    allowed = np.full((4, 4), ALL_GLYPHS)
    allowed[1:3, 1:3] = EMPTY_OK
    assert Profile(4, 4, allowed).count() == 1
    with pytest.raises(ValueError):
        Profile(4, 4, np.zeros(3))


def test_sampler_is_reproducible_and_valid():
    a = sample_connections((6, 6), 20, seed=5)
    b = sample_connections((6, 6), 20, seed=5)
    assert np.array_equal(a, b)
    pool = {c.connections().tobytes() for c in all_circuits((6, 6))}
    assert all(x.tobytes() in pool for x in a)


@pytest.mark.parametrize(
    "dims,objective,value",
    [((4, 4), "turns", 8), ((6, 6), "straights", 8), ((2, 3), "straights", 2), ((4, 4), "straights", 4), ((3, 4), "turns", 8)],
)
def test_minimize_examples(dims, objective, value):
    rep = minimize(dims, objective)
    assert rep.optimum == value
    measured = count_turns(rep.witness) if objective == "turns" else count_straights(rep.witness)
    assert measured == value
    assert verify_all(rep.witness).all_pass


@pytest.mark.parametrize("dims", boards_up_to(24))
@pytest.mark.parametrize("objective", ["turns", "straights"])
def test_minimize_equals_brute_force(dims, objective):
    cost = count_turns if objective == "turns" else count_straights
    best = min(cost(c) for c in all_circuits(dims))
    assert minimize(dims, objective).optimum == best
    assert minimize(dims, objective, use_lemmas=False).optimum == best
    assert min_cost_dp(Profile(*dims), objective) == best


def test_minimize_witness_is_first_optimum_in_order():
    rep = minimize((4, 6), "straights")
    first = next(c for c in all_circuits((6, 4)) if count_straights(c) == rep.optimum)
    assert rep.witness == first.transpose()


def test_minimize_deterministic_report():
    a = minimize((5, 6), "straights").to_dict()
    b = minimize((5, 6), "straights").to_dict()
    a.pop("elapsed_s"), b.pop("elapsed_s")
    assert json.dumps(a) == json.dumps(b)
    assert set(a) == {"dims", "objective", "optimum", "witness_rct", "nodes"}
    assert set(a["nodes"]) == {"expanded", "pruned_parity", "pruned_bound", "pruned_connectivity"}


def test_pruning_counters_move():
    rep = minimize((6, 6), "turns")
    assert rep.nodes_expanded > 0 and rep.nodes_pruned_parity + rep.nodes_pruned_bound > 0


def test_minimize_rejects_unknown_objective():
    with pytest.raises(ValueError):
        minimize((4, 4), "corners")


def test_minimize_constrained_without_solution():
    allowed = np.full((4, 4), glyph_mask("-"))
    with pytest.raises(RookTourError):
        minimize((4, 4), "straights", allowed=allowed)


def test_exists_within_examples():
    assert exists_within((4, 4), "straights", 3) is None
    w = exists_within((4, 4), "straights", 4)
    assert w is not None and count_straights(w) == 4


def test_exists_within_large_board():
    t0 = time.perf_counter()
    w = exists_within((13, 14), "straights", 14)
    assert w is not None and count_straights(w) <= 14
    assert verify_all(w).all_pass
    assert time.perf_counter() - t0 < 120


def test_budget_exhaustion_is_unknown():
    with pytest.raises(BudgetExhausted):
        exists_within((10, 12), "straights", 11, budget=50)
    with pytest.raises(BudgetExhausted):
        minimize((8, 8), "straights", budget=50)


def test_max_turns_relation():
    for side, expect in [(2, 4), (4, 12), (6, 28), (8, 56)]:
        rep = max_turns((side, side))
        assert rep.optimum == expect
        assert rep.objective == "max-turns"


def test_sampler_wide_board_uses_transpose():
    pool = {c.connections().tobytes() for c in all_circuits((4, 6))}
    draws = sample_connections((4, 6), 400, seed=11)
    assert draws.shape == (400, 4, 6)
    seen = {x.tobytes() for x in draws}
    assert seen <= pool and len(seen) == len(pool)
