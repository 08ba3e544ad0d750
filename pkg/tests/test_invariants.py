import json

import pytest

from rooktours.core import build_circuit, parse_rct
from rooktours.invariants import (
    CornerEntry,
    CrossingSequence,
    RowSignature,
    column_signature,
    corner_bounds,
    crossing_sequence,
    enclosed_area,
    interior_corner_count,
    line_turn_parity,
    row_signature,
    turn_balance,
    verify_all,
)
from rooktours.search import all_circuits

SQUARE = build_circuit((2, 2), [(1, 1), (2, 1), (2, 2), (1, 2)])
STRIP = parse_rct("2 3\nF-7\nL-J\n")


def test_interior_examples(demo):
    assert interior_corner_count(SQUARE) == 1
    assert interior_corner_count(STRIP) == 2
    assert all(interior_corner_count(c) == 7 for c in all_circuits((4, 4)))
    assert interior_corner_count(demo) == 7


def test_area_examples():
    assert enclosed_area(SQUARE) == 1
    assert all(enclosed_area(c) == 7 for c in all_circuits((4, 4)))


def test_area_6x6_all():
    assert {enclosed_area(c) for c in all_circuits((6, 6))} == {17}


def test_turn_balance_examples(demo):
    assert turn_balance(SQUARE) == (4, 0)
    assert turn_balance(demo) == (6, 2)


def test_line_parity_examples(demo):
    p = line_turn_parity(STRIP)
    assert p.row_turns == (2, 2) and p.col_turns == (2, 0, 2)
    assert line_turn_parity(demo).ok
    assert all(line_turn_parity(c).ok for c in all_circuits((4, 4)))


def test_crossing_examples(demo):
    for m in range(2, 8):
        strip = parse_rct(f"2 {m}\nF{'-' * (m - 2)}7\nL{'-' * (m - 2)}J\n")
        assert crossing_sequence(strip, 1).bits == (1, 0)
    x = crossing_sequence(demo, 1)
    assert x.ok and x.l >= 1


def test_crossing_bad_arguments(demo):
    with pytest.raises(ValueError):
        crossing_sequence(demo, 0)
    with pytest.raises(ValueError):
        crossing_sequence(demo, 4, "col")
    with pytest.raises(ValueError):
        crossing_sequence(demo, 1, "diag")


def test_crossing_sequence_shape_check():
    assert CrossingSequence(1, "row", (1, 0, 1, 0)).ok
    assert not CrossingSequence(1, "row", (1, 1, 0, 0)).ok
    assert not CrossingSequence(1, "row", (0, 1)).ok
    assert not CrossingSequence(1, "row", (1, 0, 1)).ok


def test_row_signature_examples(demo):
    s = row_signature(demo, 1)
    assert (s.c, s.d, s.e, s.f) == (2, 0, 2, 0) and s.residue == 0 and s.ok
    s = row_signature(STRIP, 1)
    assert (s.c, s.d, s.e, s.f) == (2, 0, 1, 0) and s.residue == 3 and s.ok
    for c in all_circuits((4, 5)):
        assert all(row_signature(c, k).ok for k in range(1, 5))
        assert all(column_signature(c, k).ok for k in range(1, 6))
    with pytest.raises(ValueError):
        row_signature(demo, 5)


def test_signature_rejects_wrong_residue():
    assert not RowSignature(1, "row", 2, 0, 1, 0, 4).ok
    assert not RowSignature(1, "row", 2, 1, 1, 0, 4).ok


def test_corner_examples(demo):
    ledger = corner_bounds(SQUARE)
    assert [e.count for e in ledger if e.lemma == "lemma6" and e.size == 1] == [1, 1, 1, 1]
    assert not any(e.lemma == "lemma7" for e in ledger)
    ledger = corner_bounds(demo)
    assert all(e.count >= 2 for e in ledger if e.lemma == "lemma6" and e.size == 2)
    assert all(e.count >= 1 for e in ledger if e.lemma == "lemma7" and e.size == 2)
    assert all(e.ok for e in ledger)
    assert not CornerEntry("lemma6", "top-left", 3, 2, 3).ok


def test_corners_6x6_all_sizes():
    for c in all_circuits((6, 6)):
        ledger = corner_bounds(c)
        assert {e.size for e in ledger if e.lemma == "lemma6"} == {1, 2, 3, 4, 5, 6}
        assert {e.size for e in ledger if e.lemma == "lemma7"} == {2, 4, 6}
        assert all(e.ok for e in ledger)


def test_verify_all_examples(demo):
    assert verify_all(SQUARE).all_pass
    rep = verify_all(demo)
    assert rep.all_pass and rep.violations() == []
    doc = json.loads(rep.to_json())
    assert doc["all_pass"] and set(doc["lemmas"]) == {f"lemma{i}" for i in range(1, 8)}
    assert doc["turn_balance"] == {"ccw": 6, "cw": 2}
