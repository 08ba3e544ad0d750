"""Broken-profile scanline over board cells.

Cells are processed in row-major order.  Before cell ``(i, j)`` the profile
holds ``cols + 1`` plugs packed two bits each into an int: position ``j`` is
the edge entering from the left, position ``j + 1`` the edge entering from
above, the others are the dangling down-edges of the frontier.  Plug values
are 0 (no edge), 1 (left end of a partial path) and 2 (right end), so a
profile is a bracket word and the pairing encodes which frontier ends belong
to the same partial path.

A cell's glyph is the set of its connections (UP/RIGHT/DOWN/LEFT bits).  Each
cell carries an ``allowed`` bitmask over glyph values; bit 0 set means the
cell may stay empty (a hole).  The default allows every two-edge glyph.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import DOWN, GLYPH_BITS, LEFT, RIGHT, UP, Infeasible, is_feasible

CLOSED = -1

H_STRAIGHT = LEFT | RIGHT
V_STRAIGHT = UP | DOWN
ALL_GLYPHS = sum(1 << b for b in GLYPH_BITS.values())
EMPTY_OK = 1


def glyph_mask(*glyphs: str) -> int:
    return sum(1 << GLYPH_BITS[g] for g in glyphs)


def _plug(s: int, p: int) -> int:
    return (s >> (2 * p)) & 3


def _set(s: int, p: int, v: int) -> int:
    return (s & ~(3 << (2 * p))) | (v << (2 * p))


def _match_right(s: int, p: int) -> int:
    depth = 0
    while True:
        v = (s >> (2 * p)) & 3
        if v == 1:
            depth += 1
        elif v == 2:
            depth -= 1
            if depth == 0:
                return p
        p += 1


def _match_left(s: int, p: int) -> int:
    depth = 0
    while True:
        v = (s >> (2 * p)) & 3
        if v == 2:
            depth += 1
        elif v == 1:
            depth -= 1
            if depth == 0:
                return p
        p -= 1


class Profile:
    """Transition system of a (possibly constrained) board.

    ``allowed`` is an (n, m) integer array of glyph bitmasks; ``None`` means an
    unconstrained full board.
    """

    def __init__(self, rows: int, cols: int, allowed: np.ndarray | None = None):
        self.rows, self.cols = rows, cols
        self.size = rows * cols
        if allowed is None:
            if not is_feasible(rows, cols):
                raise Infeasible(rows, cols)
            self.allowed = [ALL_GLYPHS] * self.size
            self.constrained = False
        else:
            allowed = np.asarray(allowed).reshape(-1)
            if allowed.size != self.size:
                raise ValueError("allowed mask shape does not match the board")
            self.allowed = [int(a) for a in allowed]
            self.constrained = True
        self.has_holes = any(a & EMPTY_OK for a in self.allowed)
        # empty_suffix[t]: every cell from t on may stay empty
        self.empty_suffix = [True] * (self.size + 1)
        for t in range(self.size - 1, -1, -1):
            self.empty_suffix[t] = self.empty_suffix[t + 1] and bool(self.allowed[t] & EMPTY_OK)
        self._cache: dict = {}
        self.rejected = 0

    def transitions(self, t: int, s: int) -> tuple[tuple[int, int], ...]:
        """``(glyph, next_state)`` pairs leaving state ``s`` at cell ``t``.

        Order is fixed: an outgoing right edge is tried before a down edge.
        """
        key = (t, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._transitions(t, s)
        self._cache[key] = out
        return out

    def _transitions(self, t: int, s: int) -> tuple[tuple[int, int], ...]:
        m = self.cols
        i, j = divmod(t, m)
        allowed = self.allowed[t]
        if s == CLOSED:
            return ((0, CLOSED),) if allowed & EMPTY_OK else ()
        left, up = _plug(s, j), _plug(s, j + 1)
        can_right, can_down = j + 1 < m, i + 1 < self.rows
        out = []
        if left == 0 and up == 0:
            if allowed & EMPTY_OK:
                out.append((0, s))
            if can_right and can_down and allowed & (1 << (RIGHT | DOWN)):
                out.append((RIGHT | DOWN, _set(_set(s, j, 1), j + 1, 2)))
        elif left and up:
            if allowed & (1 << (UP | LEFT)):
                s2 = _set(_set(s, j, 0), j + 1, 0)
                if left == 1 and up == 2:
                    if s2 == 0 and self.empty_suffix[t + 1]:
                        out.append((UP | LEFT, CLOSED))
                    else:
                        self.rejected += 1
                elif left == 2 and up == 1:
                    out.append((UP | LEFT, s2))
                elif left == 1:
                    out.append((UP | LEFT, _set(s2, _match_right(s, j + 1), 1)))
                else:
                    out.append((UP | LEFT, _set(s2, _match_left(s, j), 2)))
        else:
            plug = left or up
            src = LEFT if left else UP
            cleared = _set(_set(s, j, 0), j + 1, 0)
            if can_right and allowed & (1 << (src | RIGHT)):
                out.append((src | RIGHT, _set(cleared, j + 1, plug)))
            if can_down and allowed & (1 << (src | DOWN)):
                out.append((src | DOWN, _set(cleared, j, plug)))
        if j == m - 1:
            out = [(g, s2 if s2 == CLOSED else s2 << 2) for g, s2 in out]
        return tuple(out)

    def forward_layers(self) -> list[dict[int, int]]:
        """Reachable states before each cell with their path counts."""
        layers = [{0: 1}]
        for t in range(self.size):
            nxt: dict[int, int] = {}
            for s, cnt in layers[-1].items():
                for _, s2 in self.transitions(t, s):
                    nxt[s2] = nxt.get(s2, 0) + cnt
            layers.append(nxt)
        return layers

    def count(self) -> int:
        return self.forward_layers()[-1].get(CLOSED, 0)

    def completion_counts(self) -> list[dict[int, int]]:
        """For every reachable (cell, state), the number of ways to finish a circuit.

        States absent from a layer cannot complete; walking only through states
        with a positive count never hits a dead end.
        """
        layers = self.forward_layers()
        togo: list[dict[int, int]] = [dict() for _ in range(self.size + 1)]
        togo[self.size] = {CLOSED: 1} if CLOSED in layers[self.size] else {}
        for t in range(self.size - 1, -1, -1):
            nxt = togo[t + 1]
            cur = togo[t]
            for s in layers[t]:
                c = 0
                for _, s2 in self.transitions(t, s):
                    c += nxt.get(s2, 0)
                if c:
                    cur[s] = c
        return togo


def glyph_cost(glyph: int, objective: str) -> int:
    if glyph == 0:
        return 0
    straight = glyph == H_STRAIGHT or glyph == V_STRAIGHT
    if objective == "straights":
        return int(straight)
    if objective == "turns":
        return int(not straight)
    raise ValueError(f"unknown objective {objective!r}")


@lru_cache(maxsize=None)
def _cost_table(objective: str) -> tuple[int, ...]:
    return tuple(glyph_cost(g, objective) for g in range(16))


def min_cost_dp(profile: Profile, objective: str) -> int | None:
    """Plain min-plus sweep over the profile; the optimum with no pruning at all."""
    cost = _cost_table(objective)
    layer = {0: 0}
    for t in range(profile.size):
        nxt: dict[int, int] = {}
        for s, g in layer.items():
            for glyph, s2 in profile.transitions(t, s):
                v = g + cost[glyph]
                if v < nxt.get(s2, 1 << 60):
                    nxt[s2] = v
        layer = nxt
    return layer.get(CLOSED)


def glyphs_to_bits(glyphs: list[int], rows: int, cols: int) -> np.ndarray:
    return np.asarray(glyphs, dtype=np.uint8).reshape(rows, cols)
