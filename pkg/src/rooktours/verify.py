"""Confront the closed forms with exact search on every small board."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .core import count_straights, count_turns, is_feasible, serialize_rct
from .formulas import (
    CONJECTURED,
    SPECIAL,
    is_gray_cell,
    max_turns,
    min_straights_formula,
    min_turns_formula,
    raw_table_value,
)
from .search import DEFAULT_BUDGET, BudgetExhausted, minimize


def feasible_boards(max_cells: int) -> list[tuple[int, int]]:
    """Every feasible (rows, cols), both orientations, with at most ``max_cells`` cells."""
    return [
        (n, m)
        for cells in range(4, max_cells + 1)
        for n in range(2, cells // 2 + 1)
        if cells % n == 0
        for m in (cells // n,)
        if is_feasible(n, m)
    ]


def _gray(n: int, m: int, exact: int, pred, witness, nodes: int) -> dict | None:
    if not is_gray_cell(n, m):
        return None
    claim = pred.formula_value
    if exact == claim:
        verdict, cert = "confirmed", {"witness_rct": witness, "exhausted_below": True, "nodes_expanded": nodes}
    elif exact < claim:
        verdict, cert = "refuted", {"witness_rct": witness}
    else:
        verdict, cert = "refuted", {"exhausted_below": True, "nodes_expanded": nodes}
    return {"table_value": claim, "verdict": verdict, "certificate": cert}


def verify_board(n: int, m: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Exact minima for one board against every applicable prediction.

    ``category`` is ``match``, ``special-case`` (the exception registry
    supplied the value and it agrees with search), ``mismatch`` or ``unknown``.
    """
    entry: dict = {"rows": n, "cols": m}
    try:
        st = minimize((n, m), "straights", budget=budget)
        tu = minimize((n, m), "turns", budget=budget)
    except BudgetExhausted as exc:
        entry.update(category="unknown", nodes_expanded=exc.nodes)
        return entry
    assert count_straights(st.witness) == st.optimum and count_turns(tu.witness) == tu.optimum

    sp = min_straights_formula(n, m)
    tp = min_turns_formula(n, m)
    mp = max_turns(n, m)
    s_rct = serialize_rct(st.witness)
    straights = {
        "exact": st.optimum,
        "predicted": sp.value,
        "formula_value": sp.formula_value,
        "status": sp.status,
        "source": sp.source,
        "match": sp.value == st.optimum,
        "witness_rct": s_rct,
        "nodes_expanded": st.nodes_expanded,
    }
    if sp.status == SPECIAL:
        straights["note"] = sp.note
    turns = {
        "exact": tu.optimum,
        "predicted": tp.value,
        "status": tp.status,
        "match": tp.value == tu.optimum,
        "witness_rct": serialize_rct(tu.witness),
    }
    maxt = {"exact": n * m - st.optimum, "predicted": mp.value, "match": mp.value == n * m - st.optimum}
    entry.update(
        min_turns=turns,
        min_straights=straights,
        max_turns=maxt,
        table_raw={"as_given": raw_table_value(n, m), "transposed": raw_table_value(m, n)},
    )
    gray = _gray(n, m, st.optimum, sp, s_rct, st.nodes_expanded)
    if gray is not None:
        entry["gray_cell"] = gray
    if not (turns["match"] and straights["match"] and maxt["match"]):
        entry["category"] = "mismatch"
    elif sp.status == SPECIAL:
        entry["category"] = "special-case"
    else:
        entry["category"] = "match"
    return entry


@dataclass
class TableReport:
    max_cells: int
    boards: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    def _with(self, category: str) -> list[dict]:
        return [b for b in self.boards if b["category"] == category]

    @property
    def mismatches(self) -> list[dict]:
        return self._with("mismatch")

    @property
    def unknown(self) -> list[dict]:
        return self._with("unknown")

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.unknown

    def summary(self) -> dict:
        gray = [b["gray_cell"]["verdict"] for b in self.boards if "gray_cell" in b]
        return {
            "boards": len(self.boards),
            "match": len(self._with("match")),
            "special_case": len(self._with("special-case")),
            "mismatch": len(self.mismatches),
            "unknown": len(self.unknown),
            "gray_confirmed": gray.count("confirmed"),
            "gray_refuted": gray.count("refuted"),
            "conjectured_matches": sum(
                1 for b in self.boards
                if b["category"] == "match" and b["min_straights"]["status"] == CONJECTURED
            ),
        }

    def to_dict(self) -> dict:
        return {
            "max_cells": self.max_cells,
            "ok": self.ok,
            "summary": self.summary(),
            "boards": self.boards,
            "elapsed_s": self.elapsed,
        }


def verify_table(
    max_cells: int = 36,
    budget: int = DEFAULT_BUDGET,
    progress: Callable[[dict], None] | None = None,
) -> TableReport:
    t0 = time.perf_counter()
    report = TableReport(max_cells)
    for n, m in feasible_boards(max_cells):
        entry = verify_board(n, m, budget)
        report.boards.append(entry)
        if progress is not None:
            progress(entry)
    report.elapsed = time.perf_counter() - t0
    return report
