"""Board and circuit model, cell classification and the RCT text codec.

Cells are addressed 1-based as ``Cell(row, col)`` with row 1 at the top and
column 1 at the left.  Internally a circuit is a flat successor array over
``row * cols + col`` (0-based) indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class RookTourError(ValueError):
    """Base class for all domain errors raised by this package."""


class Infeasible(RookTourError):
    def __init__(self, rows: int, cols: int):
        self.rows, self.cols = rows, cols
        super().__init__(f"no rook circuit exists on a {rows}x{cols} board")


class TourError(RookTourError):
    """A tour handed to :func:`build_circuit` is not a Hamiltonian cycle."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"{message} at index {index}")


class NonAdjacentStep(TourError):
    pass


class RepeatedCell(TourError):
    pass


class NotClosed(TourError):
    pass


class WrongLength(TourError):
    pass


class OutOfBounds(TourError):
    pass


class RctError(RookTourError):
    """Malformed RCT text."""


class BadHeader(RctError):
    pass


class GlyphError(RctError):
    def __init__(self, position: tuple[int, int], message: str):
        self.position = position
        super().__init__(f"{message} at {position}")


class UnknownGlyph(GlyphError):
    pass


class InconsistentAdjacency(GlyphError):
    pass


class OpenPath(GlyphError):
    pass


class MultipleCycles(RctError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"glyphs describe {count} disjoint cycles")


class BoardDims(NamedTuple):
    rows: int
    cols: int

    @property
    def feasible(self) -> bool:
        return is_feasible(self.rows, self.cols)

    @property
    def cells(self) -> int:
        return self.rows * self.cols


def is_feasible(rows: int, cols: int) -> bool:
    """A rook circuit exists iff the board has an even cell count and no side below 2."""
    return rows >= 2 and cols >= 2 and (rows * cols) % 2 == 0


def require_feasible(rows: int, cols: int) -> BoardDims:
    if not is_feasible(rows, cols):
        raise Infeasible(rows, cols)
    return BoardDims(rows, cols)


class Cell(NamedTuple):
    row: int
    col: int


class CellKind(IntEnum):
    TURN_CCW = 0
    TURN_CW = 1
    STRAIGHT_H = 2
    STRAIGHT_V = 3

    @property
    def is_turn(self) -> bool:
        return self <= CellKind.TURN_CW


# Direction bits used by the glyph tables.
UP, RIGHT, DOWN, LEFT = 1, 2, 4, 8

GLYPH_BITS = {
    "-": LEFT | RIGHT,
    "|": UP | DOWN,
    "F": RIGHT | DOWN,
    "7": LEFT | DOWN,
    "L": UP | RIGHT,
    "J": UP | LEFT,
}
BITS_GLYPH = {bits: g for g, bits in GLYPH_BITS.items()}
UNICODE_GLYPH = {"-": "─", "|": "│", "F": "┌", "7": "┐", "L": "└", "J": "┘"}

_STEP = {UP: (-1, 0), RIGHT: (0, 1), DOWN: (1, 0), LEFT: (0, -1)}
_OPPOSITE = {UP: DOWN, DOWN: UP, LEFT: RIGHT, RIGHT: LEFT}


def _cycle_order(succ: np.ndarray) -> np.ndarray:
    order = np.empty(len(succ), dtype=np.int64)
    v = 0
    for i in range(len(succ)):
        order[i] = v
        v = succ[v]
    return order


@dataclass(frozen=True, eq=False)
class Circuit:
    """A validated rook circuit in canonical direction (``succ(1,1) == (2,1)``).

    Instances are immutable; two circuits are equal iff they use the same
    undirected edge set, which canonicalization turns into array equality.
    """

    dims: BoardDims
    succ: np.ndarray

    def __post_init__(self):
        self.succ.setflags(write=False)

    @property
    def rows(self) -> int:
        return self.dims.rows

    @property
    def cols(self) -> int:
        return self.dims.cols

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.succ, other.succ)

    def __hash__(self):
        return hash((self.dims, self.succ.tobytes()))

    def __repr__(self):
        return f"Circuit({self.rows}x{self.cols})"

    @property
    def pred(self) -> np.ndarray:
        pred = np.empty_like(self.succ)
        pred[self.succ] = np.arange(len(self.succ), dtype=self.succ.dtype)
        return pred

    def order(self) -> np.ndarray:
        """Flat cell indices in traversal order starting at the upper-left cell."""
        return _cycle_order(self.succ)

    def tour(self) -> list[Cell]:
        m = self.cols
        return [Cell(int(v) // m + 1, int(v) % m + 1) for v in self.order()]

    def successor(self, cell: Cell) -> Cell:
        v = int(self.succ[(cell[0] - 1) * self.cols + cell[1] - 1])
        return Cell(v // self.cols + 1, v % self.cols + 1)

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(a, b), max(a, b)) for a, b in enumerate(self.succ.tolist()))

    def connections(self) -> np.ndarray:
        """Per-cell direction bitmask (UP/RIGHT/DOWN/LEFT) as an (n, m) array."""
        n, m = self.dims
        bits = np.zeros(n * m, dtype=np.uint8)
        idx = np.arange(n * m)
        for nb in (self.succ, self.pred):
            delta = nb - idx
            bits[delta == -m] |= UP
            bits[delta == m] |= DOWN
            bits[delta == 1] |= RIGHT
            bits[delta == -1] |= LEFT
        return bits.reshape(n, m)

    def glyphs(self) -> list[str]:
        return ["".join(BITS_GLYPH[int(b)] for b in row) for row in self.connections()]

    def kinds(self) -> np.ndarray:
        """CellKind codes as an (n, m) int8 array."""
        return classify_all(self)

    def transpose(self) -> "Circuit":
        n, m = self.dims
        order = self.order()
        r, c = np.divmod(order, m)
        return _from_order(BoardDims(m, n), c * n + r)

    def reversed_succ(self) -> np.ndarray:
        """Successor array of the opposite traversal direction (not canonical)."""
        return self.pred


def _from_order(dims: BoardDims, order: np.ndarray) -> Circuit:
    order = np.asarray(order, dtype=np.int64)
    start = int(np.flatnonzero(order == 0)[0])
    order = np.roll(order, -start)
    if len(order) > 1 and order[1] != dims.cols:
        order = np.concatenate([order[:1], order[1:][::-1]])
    succ = np.empty(len(order), dtype=np.int32)
    succ[order] = np.roll(order, -1)
    return Circuit(dims, succ)


def build_circuit(dims: tuple[int, int], tour: Sequence[tuple[int, int]]) -> Circuit:
    """Validate a closed cell sequence and return it as a canonical :class:`Circuit`.

    ``tour`` lists 1-based ``(row, col)`` cells; the closing step from the last
    cell back to the first is implied.
    """
    n, m = require_feasible(*dims)
    if len(tour) != n * m:
        raise WrongLength(min(len(tour), n * m), f"tour has {len(tour)} cells, expected {n * m}")
    seen = np.zeros(n * m, dtype=bool)
    order = np.empty(n * m, dtype=np.int64)
    for i, (r, c) in enumerate(tour):
        if not (1 <= r <= n and 1 <= c <= m):
            raise OutOfBounds(i, f"cell {(r, c)} outside the board")
        v = (r - 1) * m + (c - 1)
        if seen[v]:
            raise RepeatedCell(i, f"cell {(r, c)} repeated")
        if i and abs(r - tour[i - 1][0]) + abs(c - tour[i - 1][1]) != 1:
            raise NonAdjacentStep(i, f"step {tour[i - 1]} -> {(r, c)} is not a rook unit step")
        seen[v] = True
        order[i] = v
    (r0, c0), (r1, c1) = tour[0], tour[-1]
    if abs(r0 - r1) + abs(c0 - c1) != 1:
        raise NotClosed(len(tour) - 1, "last cell is not adjacent to the first")
    return _from_order(BoardDims(n, m), order)


def circuit_from_order(dims: tuple[int, int], order: Iterable[int]) -> Circuit:
    """Like :func:`build_circuit` but takes 0-based flat indices."""
    n, m = dims
    return build_circuit(dims, [(v // m + 1, v % m + 1) for v in order])


def circuit_from_connections(bits: np.ndarray) -> Circuit:
    """Build a circuit from an (n, m) array of direction bitmasks.

    Raises the RCT glyph errors on inconsistent input, so it doubles as the
    decoder behind :func:`parse_rct`.
    """
    n, m = bits.shape
    for r in range(n):
        for c in range(m):
            b = int(bits[r, c])
            for d, (dr, dc) in _STEP.items():
                if not b & d:
                    continue
                rr, cc = r + dr, c + dc
                if not (0 <= rr < n and 0 <= cc < m):
                    raise OpenPath((r + 1, c + 1), "glyph points off the board")
                if not int(bits[rr, cc]) & _OPPOSITE[d]:
                    raise InconsistentAdjacency((rr + 1, cc + 1), "glyph does not reciprocate its neighbour")
    flat = bits.reshape(-1)
    visited = np.zeros(n * m, dtype=bool)
    cycles = []
    for start in range(n * m):
        if visited[start]:
            continue
        order = [start]
        visited[start] = True
        prev, v = -1, start
        while True:
            r, c = divmod(v, m)
            nxt = -1
            for d, (dr, dc) in _STEP.items():
                if flat[v] & d:
                    w = (r + dr) * m + c + dc
                    if w != prev:
                        nxt = w
                        break
            if nxt == start or nxt == -1:
                break
            if visited[nxt]:
                break
            visited[nxt] = True
            order.append(nxt)
            prev, v = v, nxt
        cycles.append(order)
    if len(cycles) != 1:
        raise MultipleCycles(len(cycles))
    require_feasible(n, m)
    return _from_order(BoardDims(n, m), np.array(cycles[0]))


def classify_all(circuit: Circuit) -> np.ndarray:
    n, m = circuit.dims
    succ = circuit.succ.astype(np.int64)
    pred = circuit.pred.astype(np.int64)
    idx = np.arange(n * m)
    r, c = np.divmod(idx, m)
    pr, pc = np.divmod(pred, m)
    sr, sc = np.divmod(succ, m)
    # y-up frame: x = col, y = -row
    in_x, in_y = c - pc, -(r - pr)
    out_x, out_y = sc - c, -(sr - r)
    cross = in_x * out_y - in_y * out_x
    kinds = np.where(cross > 0, CellKind.TURN_CCW, CellKind.TURN_CW)
    kinds = np.where(cross == 0, np.where(in_x != 0, CellKind.STRAIGHT_H, CellKind.STRAIGHT_V), kinds)
    return kinds.astype(np.int8).reshape(n, m)


def classify_cell(circuit: Circuit, cell: tuple[int, int]) -> CellKind:
    r, c = cell
    if not (1 <= r <= circuit.rows and 1 <= c <= circuit.cols):
        raise OutOfBounds(0, f"cell {cell} outside the board")
    return CellKind(int(classify_all(circuit)[r - 1, c - 1]))


@dataclass(frozen=True)
class CircuitStats:
    c_total: int
    d_total: int
    e_total: int
    f_total: int
    per_row: tuple[tuple[int, int, int, int], ...]
    per_col: tuple[tuple[int, int, int, int], ...]

    @property
    def straights_total(self) -> int:
        return self.e_total + self.f_total

    @property
    def turns_total(self) -> int:
        return self.c_total + self.d_total

    def as_dict(self) -> dict:
        return {
            "c_total": self.c_total,
            "d_total": self.d_total,
            "e_total": self.e_total,
            "f_total": self.f_total,
            "turns_total": self.turns_total,
            "straights_total": self.straights_total,
            "per_row": [list(q) for q in self.per_row],
            "per_col": [list(q) for q in self.per_col],
        }


def _quads(kinds: np.ndarray) -> tuple[tuple[int, int, int, int], ...]:
    return tuple(tuple(int((line == k).sum()) for k in CellKind) for line in kinds)


def circuit_stats(circuit: Circuit) -> CircuitStats:
    kinds = classify_all(circuit)
    totals = [int((kinds == k).sum()) for k in CellKind]
    return CircuitStats(*totals, per_row=_quads(kinds), per_col=_quads(kinds.T))


def count_straights(circuit: Circuit) -> int:
    bits = circuit.connections()
    return int(((bits == LEFT | RIGHT) | (bits == UP | DOWN)).sum())


def count_turns(circuit: Circuit) -> int:
    return circuit.rows * circuit.cols - count_straights(circuit)


def serialize_rct(circuit: Circuit) -> str:
    n, m = circuit.dims
    return f"{n} {m}\n" + "".join(row + "\n" for row in circuit.glyphs())


def parse_rct(text: str) -> Circuit:
    if not text.endswith("\n"):
        raise BadHeader("RCT text must end with a newline")
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise BadHeader(f"bad header line {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != n or any(len(line) != m for line in body):
        raise BadHeader(f"header says {n}x{m} but body does not match")
    bits = np.zeros((n, m), dtype=np.uint8)
    for r, line in enumerate(body):
        for c, g in enumerate(line):
            if g not in GLYPH_BITS:
                raise UnknownGlyph((r + 1, c + 1), f"unknown glyph {g!r}")
            bits[r, c] = GLYPH_BITS[g]
    if not is_feasible(n, m):
        raise Infeasible(n, m)
    return circuit_from_connections(bits)


def to_unicode(circuit: Circuit) -> str:
    return "".join("".join(UNICODE_GLYPH[g] for g in row) + "\n" for row in circuit.glyphs())
