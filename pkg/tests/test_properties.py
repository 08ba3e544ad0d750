"""Randomized checks of the structural laws over uniformly drawn circuits."""
import re

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from rooktours import kernels
from rooktours.core import (
    CellKind,
    Circuit,
    build_circuit,
    circuit_from_connections,
    circuit_stats,
    classify_all,
    parse_rct,
    serialize_rct,
    to_unicode,
)
from rooktours.formulas import max_turns, min_straights_formula, min_turns_formula
from rooktours.invariants import (
    crossing_sequence,
    enclosed_area,
    interior_corner_count,
    line_turn_parity,
    row_signature,
    column_signature,
    verify_all,
)
from rooktours.render import svg_path
from rooktours.search import sample_connections

from conftest import boards_up_to

BOARDS = boards_up_to(64)


@st.composite
def circuits(draw, boards=BOARDS):
    dims = draw(st.sampled_from(boards))
    seed = draw(st.integers(0, 2**32 - 1))
    return circuit_from_connections(sample_connections(dims, 1, seed)[0])


@given(circuits())
def test_corners_turn_counter_clockwise(c):
    k = classify_all(c)
    assert {int(k[0, 0]), int(k[0, -1]), int(k[-1, 0]), int(k[-1, -1])} == {CellKind.TURN_CCW}


@given(circuits())
def test_stats_partition_and_turn_balance(c):
    s = circuit_stats(c)
    assert s.c_total + s.d_total + s.e_total + s.f_total == c.rows * c.cols
    assert s.c_total - s.d_total == 4
    assert sum(map(sum, s.per_row)) == sum(map(sum, s.per_col)) == c.rows * c.cols


@given(circuits())
def test_area_three_ways(c):
    expected = c.rows * c.cols // 2 - 1
    assert interior_corner_count(c) == enclosed_area(c) == expected


@given(circuits())
def test_rebuild_from_tour(c):
    assert build_circuit(c.dims, c.tour()) == c
    assert build_circuit(c.dims, c.tour()[::-1]) == c


@given(circuits())
def test_reversal_swaps_chirality(c):
    back = Circuit(c.dims, c.pred.copy())
    fwd, rev = classify_all(c), classify_all(back)
    swap = {CellKind.TURN_CCW: CellKind.TURN_CW, CellKind.TURN_CW: CellKind.TURN_CCW}
    expect = np.vectorize(lambda k: swap.get(k, k))(fwd)
    assert np.array_equal(rev, expect)


@given(circuits())
def test_line_laws(c):
    p = line_turn_parity(c)
    assert p.ok
    s = circuit_stats(c)
    for q in s.per_row:
        assert (q[2] + q[3]) % 2 == c.cols % 2
    for k in range(1, c.rows):
        x = crossing_sequence(c, k)
        assert x.ok and 2 * x.l == len(x.bits)
    for k in range(1, c.cols):
        assert crossing_sequence(c, k, "col").ok
    assert all(row_signature(c, k).ok for k in range(1, c.rows + 1))
    assert all(column_signature(c, k).ok for k in range(1, c.cols + 1))


@given(circuits())
def test_verify_all_passes(c):
    rep = verify_all(c)
    assert rep.all_pass, rep.violations()


@given(circuits())
def test_transpose_is_an_involution(c):
    t = c.transpose()
    assert t.dims == (c.cols, c.rows)
    assert t.transpose() == c
    assert circuit_stats(t).straights_total == circuit_stats(c).straights_total


@given(circuits())
def test_rct_and_ascii(c):
    text = serialize_rct(c)
    assert parse_rct(text) == c
    body = text.split("\n", 1)[1]
    assert to_unicode(c) == body.translate(str.maketrans("F7LJ-|", "┌┐└┘─│"))


@given(circuits(), st.integers(8, 64))
def test_svg_path_closed(c, px):
    d = svg_path(c, px)
    assert len(re.findall(r"[LA] ", d)) == c.rows * c.cols
    tokens = d.split()
    assert tokens[1:3] == tokens[-3:-1]


@settings(max_examples=30)
@given(st.sampled_from(boards_up_to(100)), st.integers(0, 10**6))
def test_kernel_paths_agree(dims, seed):
    conn = sample_connections(dims, 8, seed)
    a = kernels.batch_invariants(conn, use_numba=True)
    b = kernels.batch_invariants(conn, use_numba=False)
    assert np.array_equal(a, b)
    assert not a[:, kernels.F_VIOLATIONS].any()


@given(st.integers(2, 60), st.integers(2, 60))
def test_formula_relations(n, m):
    t, u = min_turns_formula(n, m), min_turns_formula(m, n)
    assert t.value == u.value
    s, x = min_straights_formula(n, m), max_turns(n, m)
    if s.value is None:
        assert x.value is None
    else:
        assert s.value + x.value == n * m
        assert s.value == min_straights_formula(m, n).value
        assert 0 <= s.value <= n * m - t.value
