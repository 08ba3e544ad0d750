"""Hot loops: the naive cycle oracle and batch invariant checks.

Each kernel exists twice.  The numba versions are compiled with ``@njit``;
the fallbacks are plain Python (the oracle) and vectorized numpy (the batch
checker).  Setting ``ROOK_TOURS_NO_NUMBA=1`` selects the fallbacks, as does a
missing numba installation.  Both paths return identical results.
"""
from __future__ import annotations

import os

import numpy as np

from .core import DOWN, LEFT, RIGHT, UP

_DISABLED = os.environ.get("ROOK_TOURS_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = HAVE_NUMBA

# Column layout of the batch result.
F_C, F_D, F_E, F_F, F_INTERIOR, F_AREA, F_VIOLATIONS = range(7)
N_FIELDS = 7
LEMMA_BIT = {f"lemma{i + 1}": 1 << i for i in range(7)}


# -- naive oracle ------------------------------------------------------------


def _naive_walk_py(n, m, out):
    """Depth-first walk over simple paths from the upper-left cell.

    Every cycle uses both edges at the upper-left corner, so paths start
    0 -> m (downwards) and a cycle is recorded when the path covers the
    board and ends on cell 1.  Only validity is checked: bounds, revisits,
    and that cell 1 is entered last.  Up to ``out.shape[0]`` cycles are
    written to ``out`` as cell orders; the total count is returned.
    """
    size = n * m
    visited = np.zeros(size, dtype=np.bool_)
    path = np.zeros(size, dtype=np.int64)
    choice = np.zeros(size, dtype=np.int64)
    dr = np.array([0, 1, 0, -1])
    dc = np.array([1, 0, -1, 0])
    path[0] = 0
    path[1] = m
    visited[0] = True
    visited[m] = True
    depth = 1
    count = 0
    while depth >= 1:
        if depth == size - 1:
            if path[depth] == 1:
                if count < out.shape[0]:
                    out[count, :] = path
                count += 1
            visited[path[depth]] = False
            depth -= 1
            continue
        k = choice[depth]
        if k == 4:
            choice[depth] = 0
            visited[path[depth]] = False
            depth -= 1
            continue
        choice[depth] = k + 1
        v = path[depth]
        r = v // m + dr[k]
        c = v % m + dc[k]
        if r < 0 or r >= n or c < 0 or c >= m:
            continue
        w = r * m + c
        if visited[w] or (w == 1 and depth + 1 != size - 1):
            continue
        depth += 1
        path[depth] = w
        visited[w] = True
        choice[depth] = 0
    return count


_naive_walk_nb = njit(cache=True)(_naive_walk_py) if HAVE_NUMBA else _naive_walk_py


def _naive_walk(n: int, m: int, out: np.ndarray) -> int:
    fn = _naive_walk_nb if USE_NUMBA else _naive_walk_py
    return int(fn(n, m, out))


def naive_count(n: int, m: int) -> int:
    """Number of Hamiltonian cycles by unpruned backtracking (exponential; small boards only)."""
    if n < 2 or m < 2 or (n * m) % 2:
        return 0
    return _naive_walk(n, m, np.zeros((0, n * m), dtype=np.int64))


def naive_orders(n: int, m: int) -> np.ndarray:
    """Every cycle as a canonical cell order, one row per cycle."""
    total = naive_count(n, m)
    out = np.zeros((total, n * m), dtype=np.int64)
    if total:
        _naive_walk(n, m, out)
    return out


# -- batch invariants, compiled path ------------------------------------------


@njit(cache=True)
def _batch_nb(conn, res):
    k, n, m = conn.shape
    size = n * m
    order = np.empty(size, np.int64)
    succ = np.empty(size, np.int64)
    kind = np.empty(size, np.int64)
    turn = np.zeros((n + 1, m + 1), np.int64)
    straight = np.zeros((n + 1, m + 1), np.int64)
    rowq = np.zeros((n, 4), np.int64)
    colq = np.zeros((m, 4), np.int64)
    for b in range(k):
        # walk the cycle in canonical direction
        prev = -1
        v = 0
        for i in range(size):
            order[i] = v
            r = v // m
            c = v % m
            bits = conn[b, r, c]
            nxt = -1
            if i == 0:
                nxt = m
            else:
                if bits & UP and v - m != prev:
                    nxt = v - m
                elif bits & RIGHT and v + 1 != prev:
                    nxt = v + 1
                elif bits & DOWN and v + m != prev:
                    nxt = v + m
                elif bits & LEFT and v - 1 != prev:
                    nxt = v - 1
            succ[v] = nxt
            prev = v
            v = nxt
        rowq[:, :] = 0
        colq[:, :] = 0
        twice = 0
        for i in range(size):
            v = order[i]
            p = order[i - 1] if i > 0 else order[size - 1]
            s = succ[v]
            r = v // m
            c = v % m
            ix = c - p % m
            iy = p // m - r
            ox = s % m - c
            oy = r - s // m
            cross = ix * oy - iy * ox
            if cross > 0:
                q = 0
            elif cross < 0:
                q = 1
            elif ix != 0:
                q = 2
            else:
                q = 3
            kind[v] = q
            rowq[r, q] += 1
            colq[c, q] += 1
            twice += c * (-(s // m)) - (s % m) * (-r)
        if twice < 0:
            twice = -twice
        cd = np.zeros(4, np.int64)
        for r in range(n):
            for q in range(4):
                cd[q] += rowq[r, q]
        interior = 0
        for r in range(1, n):
            parity = 0
            for c in range(m - 1):
                if conn[b, r - 1, c] & DOWN:
                    parity ^= 1
                interior += parity
        viol = 0
        if twice % 2 != 0 or interior != twice // 2 or interior != size // 2 - 1:
            viol |= 1
        if cd[0] - cd[1] != 4:
            viol |= 2
        for r in range(n):
            t = rowq[r, 0] + rowq[r, 1]
            if t % 2 != 0 or (m - t) % 2 != m % 2:
                viol |= 4
        for c in range(m):
            t = colq[c, 0] + colq[c, 1]
            if t % 2 != 0 or (n - t) % 2 != n % 2:
                viol |= 4
        # row boundaries: downward crossings first, alternating
        for r in range(n - 1):
            want = 1
            for c in range(m):
                if conn[b, r, c] & DOWN:
                    got = 1 if succ[r * m + c] == (r + 1) * m + c else 0
                    if got != want:
                        viol |= 8
                    want ^= 1
            if want != 1:
                viol |= 8
        # column boundaries: leftward crossings first, top to bottom
        for c in range(m - 1):
            want = 1
            for r in range(n):
                if conn[b, r, c] & RIGHT:
                    got = 1 if succ[r * m + c + 1] == r * m + c else 0
                    if got != want:
                        viol |= 8
                    want ^= 1
            if want != 1:
                viol |= 8
        for r in range(n):
            cc, dd, ee, ff = rowq[r, 0], rowq[r, 1], rowq[r, 2], rowq[r, 3]
            if (cc + ee - dd - ff) % 4 != m % 4 or (dd + ff) % 2 != 0:
                viol |= 16
        for c in range(m):
            cc, dd, ee, ff = colq[c, 0], colq[c, 1], colq[c, 2], colq[c, 3]
            if (cc + ff - dd - ee) % 4 != n % 4 or (dd + ee) % 2 != 0:
                viol |= 16
        # prefix sums of turn / straight indicators for the corner ledgers
        for r in range(n):
            for c in range(m):
                isturn = 1 if kind[r * m + c] <= 1 else 0
                turn[r + 1, c + 1] = turn[r, c + 1] + turn[r + 1, c] - turn[r, c] + isturn
                straight[r + 1, c + 1] = straight[r, c + 1] + straight[r + 1, c] - straight[r, c] + 1 - isturn
        short = min(n, m)
        for s in range(1, short + 1):
            if _corner_min(turn, n, m, s) < s:
                viol |= 32
        if not (n == 2 and m == 2):
            for s in range(1, short // 2 + 1):
                if _corner_min(straight, n, m, 2 * s) < s:
                    viol |= 64
        res[b, 0] = cd[0]
        res[b, 1] = cd[1]
        res[b, 2] = cd[2]
        res[b, 3] = cd[3]
        res[b, 4] = interior
        res[b, 5] = twice // 2
        res[b, 6] = viol


@njit(cache=True)
def _rect(p, r0, c0, r1, c1):
    return p[r1, c1] - p[r0, c1] - p[r1, c0] + p[r0, c0]


@njit(cache=True)
def _corner_min(p, n, m, s):
    a = _rect(p, 0, 0, s, s)
    b = _rect(p, 0, m - s, s, m)
    c = _rect(p, n - s, 0, n, s)
    d = _rect(p, n - s, m - s, n, m)
    return min(min(a, b), min(c, d))


# -- batch invariants, numpy path ---------------------------------------------


def _walk_np(conn: np.ndarray) -> np.ndarray:
    k, n, m = conn.shape
    size = n * m
    flat = conn.reshape(k, size).astype(np.int64)
    rows = np.arange(k)
    order = np.empty((k, size), dtype=np.int64)
    v = np.zeros(k, dtype=np.int64)
    prev = np.full(k, -1, dtype=np.int64)
    steps = np.array([-m, 1, m, -1])
    dirbits = np.array([UP, RIGHT, DOWN, LEFT])
    for i in range(size):
        order[:, i] = v
        if i == 0:
            nxt = np.full(k, m, dtype=np.int64)
        else:
            bits = flat[rows, v]
            cand = v[:, None] + steps[None, :]
            ok = ((bits[:, None] & dirbits[None, :]) != 0) & (cand != prev[:, None])
            nxt = cand[rows, np.argmax(ok, axis=1)]
        prev, v = v, nxt
    return order


def _corner_min_np(p: np.ndarray, n: int, m: int, s: int) -> np.ndarray:
    def rect(r0, c0, r1, c1):
        return p[:, r1, c1] - p[:, r0, c1] - p[:, r1, c0] + p[:, r0, c0]

    blocks = [rect(0, 0, s, s), rect(0, m - s, s, m), rect(n - s, 0, n, s), rect(n - s, m - s, n, m)]
    return np.min(np.stack(blocks), axis=0)


def _batch_np(conn: np.ndarray) -> np.ndarray:
    k, n, m = conn.shape
    size = n * m
    order = _walk_np(conn)
    rows = np.arange(k)[:, None]
    succ = np.empty_like(order)
    succ[rows, order] = np.roll(order, -1, axis=1)
    pred = np.empty_like(order)
    pred[rows, order] = np.roll(order, 1, axis=1)
    idx = np.arange(size)[None, :]
    r, c = np.divmod(idx, m)
    pr, pc = np.divmod(pred, m)
    sr, sc = np.divmod(succ, m)
    ix, iy = c - pc, pr - r
    ox, oy = sc - c, r - sr
    cross = ix * oy - iy * ox
    kind = np.where(cross > 0, 0, 1)
    kind = np.where(cross == 0, np.where(ix != 0, 2, 3), kind).reshape(k, n, m)
    onehot = kind[..., None] == np.arange(4)
    rowq = onehot.sum(axis=2)  # (k, n, 4)
    colq = onehot.sum(axis=1)  # (k, m, 4)
    cd = rowq.sum(axis=1)

    y, x = np.divmod(order, m)
    y = -y
    twice = np.abs(np.sum(x * np.roll(y, -1, axis=1) - np.roll(x, -1, axis=1) * y, axis=1))
    down = (conn & DOWN) != 0
    interior = (np.cumsum(down[:, :-1, :], axis=2) % 2)[:, :, :-1].sum(axis=(1, 2))

    viol = np.zeros(k, dtype=np.int64)
    viol |= np.where((twice % 2 != 0) | (interior != twice // 2) | (interior != size // 2 - 1), 1, 0)
    viol |= np.where(cd[:, 0] - cd[:, 1] != 4, 2, 0)
    rt = rowq[..., 0] + rowq[..., 1]
    ct = colq[..., 0] + colq[..., 1]
    bad3 = np.any(rt % 2 != 0, axis=1) | np.any(ct % 2 != 0, axis=1)
    bad3 |= np.any((m - rt) % 2 != m % 2, axis=1) | np.any((n - ct) % 2 != n % 2, axis=1)
    viol |= np.where(bad3, 4, 0)

    succ3 = succ.reshape(k, n, m)
    downward = succ3[:, :-1, :] == (np.arange(1, n)[:, None] * m + np.arange(m)[None, :])[None]
    leftward = succ3[:, :, 1:] == (np.arange(n)[:, None] * m + np.arange(m - 1)[None, :])[None]
    bad4 = _alternation_bad(down[:, :-1, :], downward)
    right = (conn[:, :, :-1] & RIGHT) != 0
    bad4 |= _alternation_bad(np.swapaxes(right, 1, 2), np.swapaxes(leftward, 1, 2))
    viol |= np.where(bad4, 8, 0)

    c_, d_, e_, f_ = (rowq[..., q] for q in range(4))
    bad5 = np.any(((c_ + e_ - d_ - f_) % 4 != m % 4) | ((d_ + f_) % 2 != 0), axis=1)
    c_, d_, e_, f_ = (colq[..., q] for q in range(4))
    bad5 |= np.any(((c_ + f_ - d_ - e_) % 4 != n % 4) | ((d_ + e_) % 2 != 0), axis=1)
    viol |= np.where(bad5, 16, 0)

    isturn = kind <= 1
    pt = np.zeros((k, n + 1, m + 1), dtype=np.int64)
    pt[:, 1:, 1:] = isturn.cumsum(axis=1).cumsum(axis=2)
    ps = np.zeros_like(pt)
    ps[:, 1:, 1:] = (~isturn).cumsum(axis=1).cumsum(axis=2)
    bad6 = np.zeros(k, dtype=bool)
    for s in range(1, min(n, m) + 1):
        bad6 |= _corner_min_np(pt, n, m, s) < s
    viol |= np.where(bad6, 32, 0)
    bad7 = np.zeros(k, dtype=bool)
    if (n, m) != (2, 2):
        for s in range(1, min(n, m) // 2 + 1):
            bad7 |= _corner_min_np(ps, n, m, 2 * s) < s
    viol |= np.where(bad7, 64, 0)

    return np.column_stack([cd, interior, twice // 2, viol]).astype(np.int64)


def _alternation_bad(present: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Per batch item: does some line's crossing sequence differ from 1,0,1,0,...?

    ``present`` marks crossings along each line (last axis); ``direction`` is
    1 for the crossing direction that must come first.
    """
    rank = np.cumsum(present, axis=-1) - 1  # 0-based position among crossings
    want = (rank % 2 == 0)
    wrong = present & (direction != want)
    odd = present.sum(axis=-1) % 2 != 0
    return np.any(wrong, axis=(1, 2)) | np.any(odd, axis=1)


def batch_invariants(conn: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """Stats and lemma violations for a stack of circuits given as connection bits.

    ``conn`` has shape (k, n, m).  Returns a (k, 7) int64 array with columns
    c, d, e, f, interior corner points, enclosed area and a violation bitmask
    (bit i-1 set when check ``lemma{i}`` fails).
    """
    conn = np.ascontiguousarray(conn, dtype=np.uint8)
    if conn.ndim != 3:
        raise ValueError("expected a (k, n, m) array")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and HAVE_NUMBA:
        res = np.zeros((conn.shape[0], N_FIELDS), dtype=np.int64)
        _batch_nb(conn, res)
        return res
    return _batch_np(conn)


def violated_lemmas(mask: int) -> list[str]:
    return [name for name, bit in LEMMA_BIT.items() if mask & bit]
