"""Structural checks that hold for every rook circuit.

Two lattices appear here.  *Grid points* are cell centres, the vertices of
the circuit polygon; cell ``(r, c)`` (0-based) has centre ``(c + 1/2, r + 1/2)``.
*Corner points* are the ``(n + 1) x (m + 1)`` cell corners at integer
coordinates.  The checks are:

* ``lemma1``  interior corner points = enclosed area = n*m/2 - 1
* ``lemma2``  counter-clockwise minus clockwise turns = 4
* ``lemma3``  every row and column has an even number of turns
* ``lemma4``  crossings of every row/column boundary alternate 1,0,1,0,...
* ``lemma5``  per-row residue (c + e - d - f) mod 4 = m mod 4, with d + f even
* ``lemma6``  every s x s board corner holds at least s turns
* ``lemma7``  every 2s x 2s board corner holds at least s straights
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import DOWN, Circuit, CellKind, classify_all

LEMMAS = ("lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma6", "lemma7")
CORNERS = ("top-left", "top-right", "bottom-left", "bottom-right")


def interior_corner_count(circuit: Circuit) -> int:
    """Corner points strictly inside the centre polygon, by scanline parity.

    A leftward ray from corner point ``(r, c)`` meets exactly the vertical
    circuit edges joining rows ``r - 1`` and ``r`` in columns left of ``c``.
    """
    conn = circuit.connections()
    vertical = (conn[:-1, :] & DOWN) != 0
    parity = np.cumsum(vertical, axis=1) % 2
    # parity[:, c - 1] is the crossing count for corner column c
    return int(parity[:, :-1].sum())


def _twice_signed_area(circuit: Circuit) -> int:
    order = circuit.order()
    y, x = np.divmod(order, circuit.cols)
    y = -y
    return int(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def enclosed_area(circuit: Circuit) -> int:
    """Absolute shoelace area of the polygon through the cell centres."""
    twice = abs(_twice_signed_area(circuit))
    if twice % 2:
        raise ArithmeticError("centre polygon has half-integer area")
    return twice // 2


def turn_balance(circuit: Circuit) -> tuple[int, int]:
    kinds = classify_all(circuit)
    return int((kinds == CellKind.TURN_CCW).sum()), int((kinds == CellKind.TURN_CW).sum())


@dataclass(frozen=True)
class LineParity:
    row_turns: tuple[int, ...]
    col_turns: tuple[int, ...]
    row_straights: tuple[int, ...]
    col_straights: tuple[int, ...]
    turns_even: bool
    straights_match_length: bool

    @property
    def ok(self) -> bool:
        return self.turns_even and self.straights_match_length


def line_turn_parity(circuit: Circuit) -> LineParity:
    n, m = circuit.dims
    turn = classify_all(circuit) <= CellKind.TURN_CW
    rt = turn.sum(axis=1)
    ct = turn.sum(axis=0)
    rs, cs = m - rt, n - ct
    return LineParity(
        tuple(int(v) for v in rt),
        tuple(int(v) for v in ct),
        tuple(int(v) for v in rs),
        tuple(int(v) for v in cs),
        bool(np.all(rt % 2 == 0) and np.all(ct % 2 == 0)),
        bool(np.all(rs % 2 == m % 2) and np.all(cs % 2 == n % 2)),
    )


@dataclass(frozen=True)
class CrossingSequence:
    boundary: int
    axis: str
    bits: tuple[int, ...]

    @property
    def l(self) -> int:
        return len(self.bits) // 2

    @property
    def ok(self) -> bool:
        return len(self.bits) % 2 == 0 and self.bits == (1, 0) * self.l


def _row_crossings(circuit: Circuit, k: int) -> tuple[int, ...]:
    m = circuit.cols
    succ = circuit.succ
    bits = []
    for j in range(m):
        a, b = (k - 1) * m + j, k * m + j
        if succ[a] == b:
            bits.append(1)
        elif succ[b] == a:
            bits.append(0)
    return tuple(bits)


def crossing_sequence(circuit: Circuit, k: int, axis: str = "row") -> CrossingSequence:
    """Crossing directions over the boundary below row ``k`` (or right of column ``k``).

    Rows are read left to right, 1 marking a downward crossing.  Column
    boundaries are read on the transposed, re-canonicalized circuit.
    """
    if axis not in ("row", "col"):
        raise ValueError("axis must be 'row' or 'col'")
    target = circuit if axis == "row" else circuit.transpose()
    if not 1 <= k < target.rows:
        raise ValueError(f"boundary index {k} out of range")
    return CrossingSequence(k, axis, _row_crossings(target, k))


@dataclass(frozen=True)
class RowSignature:
    line: int
    axis: str
    c: int
    d: int
    e: int
    f: int
    length: int

    @property
    def residue(self) -> int:
        return (self.c + self.e - self.d - self.f) % 4

    @property
    def ok(self) -> bool:
        return self.residue == self.length % 4 and (self.d + self.f) % 2 == 0


def _signature(kinds: np.ndarray, k: int, axis: str) -> RowSignature:
    row = kinds[k - 1]
    c, d, e, f = (int((row == kind).sum()) for kind in CellKind)
    return RowSignature(k, axis, c, d, e, f, len(row))


def row_signature(circuit: Circuit, k: int) -> RowSignature:
    if not 1 <= k <= circuit.rows:
        raise ValueError(f"row index {k} out of range")
    return _signature(classify_all(circuit), k, "row")


def column_signature(circuit: Circuit, k: int) -> RowSignature:
    """The row signature of the transposed circuit; the residue test is applied as for rows."""
    t = circuit.transpose()
    if not 1 <= k <= t.rows:
        raise ValueError(f"column index {k} out of range")
    return _signature(classify_all(t), k, "col")


@dataclass(frozen=True)
class CornerEntry:
    lemma: str
    corner: str
    size: int
    count: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.count >= self.bound


def _corner_blocks(a: np.ndarray, size: int):
    n, m = a.shape
    yield CORNERS[0], a[:size, :size]
    yield CORNERS[1], a[:size, m - size:]
    yield CORNERS[2], a[n - size:, :size]
    yield CORNERS[3], a[n - size:, m - size:]


def corner_bounds(circuit: Circuit) -> list[CornerEntry]:
    """Turn counts of s x s corners and straight counts of 2s x 2s corners.

    The 2 x 2 board is left out of the straight ledger: its only circuit has
    no straights at all, so the 2 x 2 corner bound of one straight cannot hold.
    """
    n, m = circuit.dims
    kinds = classify_all(circuit)
    turn = kinds <= CellKind.TURN_CW
    out = []
    for s in range(1, min(n, m) + 1):
        for name, block in _corner_blocks(turn, s):
            out.append(CornerEntry("lemma6", name, s, int(block.sum()), s))
    if (n, m) != (2, 2):
        for s in range(1, min(n, m) // 2 + 1):
            for name, block in _corner_blocks(~turn, 2 * s):
                out.append(CornerEntry("lemma7", name, 2 * s, int(block.sum()), s))
    return out


@dataclass
class InvariantReport:
    rows: int
    cols: int
    passed: dict[str, bool]
    interior_corner_count: int
    enclosed_area: int
    expected_area: int
    turn_balance: tuple[int, int]
    parity: LineParity
    crossings: list[CrossingSequence] = field(default_factory=list)
    signatures: list[RowSignature] = field(default_factory=list)
    corners: list[CornerEntry] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(self.passed.values())

    def violations(self) -> list[str]:
        return [k for k, ok in self.passed.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "dims": {"rows": self.rows, "cols": self.cols},
            "all_pass": self.all_pass,
            "lemmas": dict(self.passed),
            "interior_corner_count": self.interior_corner_count,
            "enclosed_area": self.enclosed_area,
            "expected_area": self.expected_area,
            "turn_balance": {"ccw": self.turn_balance[0], "cw": self.turn_balance[1]},
            "line_parity": asdict(self.parity),
            "crossings": [
                {"axis": x.axis, "boundary": x.boundary, "bits": "".join(map(str, x.bits)), "ok": x.ok}
                for x in self.crossings
            ],
            "signatures": [
                {"axis": s.axis, "line": s.line, "cdef": [s.c, s.d, s.e, s.f], "residue": s.residue, "ok": s.ok}
                for s in self.signatures
            ],
            "corners": [
                {"lemma": e.lemma, "corner": e.corner, "size": e.size, "count": e.count, "bound": e.bound}
                for e in self.corners
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def verify_all(circuit: Circuit) -> InvariantReport:
    n, m = circuit.dims
    inside = interior_corner_count(circuit)
    area = enclosed_area(circuit)
    expected = n * m // 2 - 1
    c, d = turn_balance(circuit)
    parity = line_turn_parity(circuit)
    crossings = [crossing_sequence(circuit, k, "row") for k in range(1, n)]
    crossings += [crossing_sequence(circuit, k, "col") for k in range(1, m)]
    kinds = classify_all(circuit)
    tkinds = classify_all(circuit.transpose())
    signatures = [_signature(kinds, k, "row") for k in range(1, n + 1)]
    signatures += [_signature(tkinds, k, "col") for k in range(1, m + 1)]
    corners = corner_bounds(circuit)
    passed = {
        "lemma1": inside == area == expected,
        "lemma2": c - d == 4,
        "lemma3": parity.ok,
        "lemma4": all(x.ok for x in crossings),
        "lemma5": all(s.ok for s in signatures),
        "lemma6": all(e.ok for e in corners if e.lemma == "lemma6"),
        "lemma7": all(e.ok for e in corners if e.lemma == "lemma7"),
    }
    return InvariantReport(n, m, passed, inside, area, expected, (c, d), parity, crossings, signatures, corners)
