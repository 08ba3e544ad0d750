"""Counting, enumeration and exact minimization over all circuits of a board."""
from __future__ import annotations

import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .core import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    BoardDims,
    Circuit,
    RookTourError,
    circuit_from_connections,
    require_feasible,
    serialize_rct,
)
from .profile import CLOSED, Profile, _cost_table

OBJECTIVES = ("turns", "straights")
DEFAULT_BUDGET = 10**9


class BudgetExhausted(RookTourError):
    """The node budget ran out before the search could decide the question."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"node budget exhausted after {nodes} expansions; result unknown")


def _profile(dims: tuple[int, int], allowed=None) -> Profile:
    n, m = dims
    if allowed is None:
        require_feasible(n, m)
    return Profile(n, m, allowed)


def _bits(glyphs: list[int], dims: tuple[int, int]) -> np.ndarray:
    return np.asarray(glyphs, dtype=np.uint8).reshape(dims)


# -- counting and enumeration ------------------------------------------------


def _count_from(args) -> int:
    n, m, t0, states = args
    p = Profile(n, m)
    layer = dict(states)
    for t in range(t0, p.size):
        nxt: dict[int, int] = {}
        for s, cnt in layer.items():
            for _, s2 in p.transitions(t, s):
                nxt[s2] = nxt.get(s2, 0) + cnt
        layer = nxt
    return layer.get(CLOSED, 0)


def count_circuits(dims: tuple[int, int], threads: int = 1) -> int:
    """Number of undirected Hamiltonian cycles on the board.

    With ``threads > 1`` the profile states after the first row are split
    round-robin over worker processes; the total does not depend on the split.
    """
    n, m = require_feasible(*dims)
    if m > n:
        n, m = m, n
    p = _profile((n, m))
    if threads <= 1 or n < 3:
        return p.count()
    layer = {0: 1}
    for t in range(m):
        nxt: dict[int, int] = {}
        for s, cnt in layer.items():
            for _, s2 in p.transitions(t, s):
                nxt[s2] = nxt.get(s2, 0) + cnt
        layer = nxt
    items = sorted(layer.items())
    chunks = [(n, m, m, items[k::threads]) for k in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_count_from, chunks))


def iter_connections(dims: tuple[int, int], allowed=None, limit: int | None = None) -> Iterator[np.ndarray]:
    """Yield the (n, m) connection-bit array of every circuit, in enumeration order.

    The walk only enters (cell, profile) pairs that can still be completed, so
    every leaf is a circuit and no work is spent on dead branches.
    """
    p = _profile(dims, allowed)
    togo = p.completion_counts()
    if not togo[0]:
        return
    size = p.size
    glyphs = [0] * size
    emitted = 0
    path_states = [0] * (size + 1)
    t, s = 0, 0
    choice = [0] * (size + 1)
    while True:
        if t == size:
            yield _bits(glyphs, dims)
            emitted += 1
            if limit is not None and emitted >= limit:
                return
            t -= 1
            choice[t] += 1
            s = path_states[t]
            continue
        trans = p.transitions(t, s)
        nxt = togo[t + 1]
        k = choice[t]
        while k < len(trans) and trans[k][1] not in nxt:
            k += 1
        if k >= len(trans):
            if t == 0:
                return
            choice[t] = 0
            t -= 1
            choice[t] += 1
            s = path_states[t]
            continue
        choice[t] = k
        glyphs[t], s2 = trans[k]
        path_states[t] = s
        t += 1
        s = s2
        path_states[t] = s
        choice[t] = 0


def enumerate_circuits(
    dims: tuple[int, int],
    visitor: Callable[[Circuit], object] | None = None,
    limit: int | None = None,
) -> int:
    """Visit every circuit once in deterministic order; returns the number visited."""
    visited = 0
    for bits in iter_connections(dims, limit=limit):
        if visitor is not None:
            visitor(circuit_from_connections(bits))
        visited += 1
    return visited


def all_circuits(dims: tuple[int, int]) -> list[Circuit]:
    return [circuit_from_connections(b) for b in iter_connections(dims)]


@lru_cache(maxsize=32)
def _sampler(dims: tuple[int, int]) -> tuple[Profile, list[dict[int, int]]]:
    p = _profile(dims)
    return p, p.completion_counts()


# connection bits seen from the transposed board: UP <-> LEFT, RIGHT <-> DOWN
_TRANSPOSE_BITS = np.array(
    [((b & UP) << 3) | ((b & LEFT) >> 3) | ((b & RIGHT) << 1) | ((b & DOWN) >> 1) for b in range(16)],
    dtype=np.uint8,
)


def sample_connections(dims: tuple[int, int], k: int, seed: int = 0) -> np.ndarray:
    """Draw ``k`` circuits uniformly at random (with replacement), as a (k, n, m) array.

    Wide boards are sampled on their transpose, which keeps the profile narrow.
    """
    n, m = require_feasible(*dims)
    if m > n:
        return _TRANSPOSE_BITS[sample_connections((m, n), k, seed).transpose(0, 2, 1)]
    p, togo = _sampler((n, m))
    rng = random.Random(seed)
    out = np.empty((k,) + tuple(dims), dtype=np.uint8)
    flat = out.reshape(k, -1)
    for r in range(k):
        s = 0
        for t in range(p.size):
            nxt = togo[t + 1]
            options = [(g, s2, nxt.get(s2, 0)) for g, s2 in p.transitions(t, s)]
            pick = rng.randrange(togo[t][s])
            for g, s2, w in options:
                if pick < w:
                    break
                pick -= w
            flat[r, t] = g
            s = s2
    return out


# -- exact minimization ------------------------------------------------------


@dataclass
class SearchReport:
    dims: BoardDims
    objective: str
    optimum: int
    witness: Circuit
    nodes_expanded: int = 0
    nodes_pruned_parity: int = 0
    nodes_pruned_bound: int = 0
    nodes_pruned_connectivity: int = 0
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "dims": {"rows": self.dims.rows, "cols": self.dims.cols},
            "objective": self.objective,
            "optimum": self.optimum,
            "witness_rct": serialize_rct(self.witness),
            "nodes": {
                "expanded": self.nodes_expanded,
                "pruned_parity": self.nodes_pruned_parity,
                "pruned_bound": self.nodes_pruned_bound,
                "pruned_connectivity": self.nodes_pruned_connectivity,
            },
            "elapsed_s": self.elapsed,
        }


def _corner_regions(n: int, m: int, objective: str) -> tuple[list[int], list[list[tuple[int, int]]]]:
    """Per-cell memberships in the four disjoint board-corner squares.

    Turns use s x s corners needing s turns; straights use 2s x 2s corners
    needing s straights.  Sizes are capped so the four corners never overlap.
    Returns the required counts per size index and, per cell, the list of
    ``(corner, size_index)`` regions containing it.
    """
    half = min(n // 2, m // 2)
    if objective == "turns":
        sides = list(range(1, half + 1))
        required = sides[:]
    else:
        sides = list(range(2, half + 1, 2))
        required = [s // 2 for s in sides]
    member: list[list[tuple[int, int]]] = [[] for _ in range(n * m)]
    for t in range(n * m):
        i, j = divmod(t, m)
        for k, (di, dj) in enumerate(((i, j), (i, m - 1 - j), (n - 1 - i, j), (n - 1 - i, m - 1 - j))):
            d = max(di, dj) + 1
            for idx, side in enumerate(sides):
                if d <= side:
                    member[t].append((k, idx))
    return required, member


@dataclass
class _Search:
    profile: Profile
    objective: str
    limit: float
    budget: int
    use_lemmas: bool
    first_only: bool = False
    best_cost: float = float("inf")
    best_glyphs: list[int] | None = None
    expanded: int = 0
    pruned_parity: int = 0
    pruned_bound: int = 0
    pruned_connectivity: int = 0
    seen: dict = field(default_factory=dict)

    def run(self) -> None:
        p = self.profile
        n, m = p.rows, p.cols
        self.cost = _cost_table(self.objective)
        self.glyphs = [0] * p.size
        self.row_cnt = [0] * n
        self.col_cnt = [0] * m
        self.required, self.member = _corner_regions(n, m, self.objective)
        self.corner_cnt = [[0] * len(self.required) for _ in range(4)]
        self.row_need = sum(self._need(0, m) for _ in range(n))
        self.col_need = sum(self._need(0, n) for _ in range(m))
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * p.size + 1000))
        try:
            self._dfs(0, 0, 0)
        finally:
            sys.setrecursionlimit(limit)

    def _need(self, cnt: int, length: int) -> int:
        # lower bound on what a line still has to gain, from line parity
        if self.objective == "straights":
            return (cnt + length) % 2
        if cnt == 0 and length % 2:
            return 2
        return cnt % 2

    def _corner_need(self) -> int:
        total = 0
        for k in range(4):
            cnt = self.corner_cnt[k]
            total += max([req - c for req, c in zip(self.required, cnt)] + [0])
        return total

    def _dfs(self, t: int, s: int, g: int) -> None:
        p = self.profile
        if t == p.size:
            if s == CLOSED and g < self.limit:
                self.best_cost = g
                self.best_glyphs = self.glyphs[:]
                self.limit = g
                if self.first_only:
                    raise _Found
            return
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExhausted(self.expanded)
        key = (t, s)
        prev = self.seen.get(key)
        if prev is not None and g >= prev:
            self.pruned_bound += 1
            return
        self.seen[key] = g
        if self.use_lemmas:
            parity_h = max(self.row_need, self.col_need)
            corner_h = self._corner_need()
            if g + max(parity_h, corner_h) >= self.limit:
                if parity_h >= corner_h:
                    self.pruned_parity += 1
                else:
                    self.pruned_bound += 1
                return
        elif g >= self.limit:
            self.pruned_bound += 1
            return
        n, m = p.rows, p.cols
        i, j = divmod(t, m)
        trans = p.transitions(t, s)
        if not trans:
            self.pruned_connectivity += 1
            return
        for glyph, s2 in trans:
            c = self.cost[glyph]
            self._place(t, i, j, c, +1)
            self.glyphs[t] = glyph
            if self.use_lemmas and (
                (j == m - 1 and not self._line_closed_ok(self.row_cnt[i], m))
                or (i == n - 1 and not self._line_closed_ok(self.col_cnt[j], n))
            ):
                self.pruned_parity += 1
            else:
                self._dfs(t + 1, s2, g + c)
            self._place(t, i, j, c, -1)

    def _line_closed_ok(self, cnt: int, length: int) -> bool:
        if self.objective == "straights":
            return cnt % 2 == length % 2
        return cnt % 2 == 0 and not (cnt == 0 and length % 2)

    def _place(self, t: int, i: int, j: int, c: int, sign: int) -> None:
        if not c:
            return
        m, n = self.profile.cols, self.profile.rows
        self.row_need -= self._need(self.row_cnt[i], m)
        self.col_need -= self._need(self.col_cnt[j], n)
        self.row_cnt[i] += sign
        self.col_cnt[j] += sign
        self.row_need += self._need(self.row_cnt[i], m)
        self.col_need += self._need(self.col_cnt[j], n)
        for k, idx in self.member[t]:
            self.corner_cnt[k][idx] += sign


class _Found(Exception):
    pass


def _run_search(
    dims: tuple[int, int],
    objective: str,
    limit: float,
    budget: int,
    allowed=None,
    first_only: bool = False,
    use_lemmas: bool = True,
) -> _Search:
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    p = _profile(dims, allowed)
    search = _Search(p, objective, limit, budget, use_lemmas and not p.has_holes, first_only)
    try:
        search.run()
    except _Found:
        pass
    search.pruned_connectivity += p.rejected
    return search


def minimize(
    dims: tuple[int, int],
    objective: str,
    *,
    allowed=None,
    upper_bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
    use_lemmas: bool = True,
) -> SearchReport:
    """Exact minimum of ``objective`` ("turns" or "straights") over all circuits.

    Depth-first branch and bound along the row-major scanline.  A node is
    discarded when the profile cannot close into one cycle, when the same
    (cell, profile) pair was already reached at no higher cost, or when cost so
    far plus an admissible remaining bound reaches the incumbent.  The bound is
    the larger of the line-parity requirement (odd lines need a straight, rows
    and columns need an even number of turns) and the corner-square
    requirements.  ``upper_bound`` seeds the incumbent when a circuit of that
    cost is known to exist.

    An unconstrained board with more columns than rows is searched in its
    transposed orientation, which keeps the profile narrow; the witness is
    then the first optimal circuit in the enumeration order of the transposed
    board, transposed back.
    """
    t0 = time.perf_counter()
    limit = float("inf") if upper_bound is None else upper_bound + 1
    flip = allowed is None and dims[1] > dims[0]
    run_dims = (dims[1], dims[0]) if flip else tuple(dims)
    s = _run_search(run_dims, objective, limit, budget, allowed, use_lemmas=use_lemmas)
    if s.best_glyphs is None:
        raise RookTourError(f"no circuit satisfies the constraints on {dims[0]}x{dims[1]}")
    witness = circuit_from_connections(_bits(s.best_glyphs, run_dims))
    if flip:
        witness = witness.transpose()
    return SearchReport(
        BoardDims(*dims),
        objective,
        int(s.best_cost),
        witness,
        s.expanded,
        s.pruned_parity,
        s.pruned_bound,
        s.pruned_connectivity,
        time.perf_counter() - t0,
    )


def exists_within(
    dims: tuple[int, int],
    objective: str,
    bound: int,
    *,
    allowed=None,
    budget: int = DEFAULT_BUDGET,
) -> Circuit | None:
    """A circuit whose objective value is at most ``bound``, or ``None`` if none exists.

    Raises :class:`BudgetExhausted` when the node budget runs out first; that
    outcome means "unknown", never "absent".
    """
    s = _run_search(dims, objective, bound + 1, budget, allowed, first_only=True)
    if s.best_glyphs is None:
        return None
    return circuit_from_connections(_bits(s.best_glyphs, dims))


def max_turns(dims: tuple[int, int], **kwargs) -> SearchReport:
    """Maximum number of turns, i.e. the board size minus the minimum straight count."""
    rep = minimize(dims, "straights", **kwargs)
    rep.objective = "max-turns"
    rep.optimum = dims[0] * dims[1] - rep.optimum
    return rep
