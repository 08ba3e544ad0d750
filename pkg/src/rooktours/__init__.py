"""Exact toolkit for Hamiltonian rook circuits on rectangular boards."""
from .core import (
    BoardDims,
    Cell,
    CellKind,
    Circuit,
    CircuitStats,
    Infeasible,
    RookTourError,
    build_circuit,
    circuit_stats,
    classify_cell,
    is_feasible,
    parse_rct,
    serialize_rct,
)
from .invariants import InvariantReport, verify_all
from .search import SearchReport, count_circuits, enumerate_circuits, exists_within, minimize

__all__ = [
    "BoardDims",
    "Cell",
    "CellKind",
    "Circuit",
    "CircuitStats",
    "Infeasible",
    "InvariantReport",
    "RookTourError",
    "SearchReport",
    "build_circuit",
    "circuit_stats",
    "classify_cell",
    "count_circuits",
    "enumerate_circuits",
    "exists_within",
    "is_feasible",
    "minimize",
    "parse_rct",
    "serialize_rct",
    "verify_all",
]
