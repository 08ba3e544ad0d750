import os
import subprocess
import sys

import numpy as np
import pytest

from rooktours import kernels
from rooktours.core import circuit_from_connections, circuit_from_order, circuit_stats
from rooktours.invariants import enclosed_area, interior_corner_count
from rooktours.search import all_circuits, iter_connections, sample_connections

from conftest import boards_up_to


@pytest.mark.parametrize("dims", boards_up_to(36))
def test_batch_matches_reference(dims):
    conn = np.array(list(iter_connections(dims)))
    nb = kernels.batch_invariants(conn, use_numba=True)
    ref = kernels.batch_invariants(conn, use_numba=False)
    assert np.array_equal(nb, ref)
    for row, bits in zip(ref[:50], conn[:50]):
        c = circuit_from_connections(bits)
        st = circuit_stats(c)
        expect = [st.c_total, st.d_total, st.e_total, st.f_total, interior_corner_count(c), enclosed_area(c), 0]
        assert row.tolist() == expect


def test_batch_rejects_wrong_rank():
    with pytest.raises(ValueError):
        kernels.batch_invariants(np.zeros((2, 2), dtype=np.uint8))


def test_batch_on_sample():
    conn = sample_connections((6, 8), 200, seed=3)
    res = kernels.batch_invariants(conn)
    assert (res[:, kernels.F_VIOLATIONS] == 0).all()
    assert (res[:, kernels.F_C] - res[:, kernels.F_D] == 4).all()


def test_violated_lemmas_decoding():
    assert kernels.violated_lemmas(0) == []
    assert kernels.violated_lemmas(1 | 8 | 64) == ["lemma1", "lemma4", "lemma7"]


@pytest.mark.parametrize("dims,count", [((2, 2), 1), ((2, 7), 1), ((4, 4), 6), ((3, 4), 2), ((4, 5), 14), ((4, 6), 37)])
def test_naive_counts(dims, count):
    assert kernels.naive_count(*dims) == count


def test_naive_infeasible_is_zero():
    assert kernels.naive_count(3, 5) == 0
    assert kernels.naive_count(1, 4) == 0


def test_python_oracle_equals_compiled():
    out = np.zeros((0, 20), dtype=np.int64)
    assert kernels._naive_walk_py(4, 5, out) == kernels._naive_walk_nb(4, 5, out) == 14


def test_naive_orders_are_circuits():
    got = {circuit_from_order((4, 4), o) for o in kernels.naive_orders(4, 4)}
    assert got == set(all_circuits((4, 4)))


def test_env_flag_selects_fallback():
    code = "from rooktours import kernels; print(kernels.USE_NUMBA, kernels.naive_count(4, 4))"
    env = dict(os.environ, ROOK_TOURS_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "6"]
