"""Pauli graphs of prime-dimensional qudits and the finite geometries behind them."""
from .pauli import PauliOperator, SymplecticIndex, SystemParams, make_operator, symplectic_product
from .graphs import LabeledGraph, spectrum
from .geometry import PauliGraphBundle, build_pauli_graph, enumerate_mcs
from .rings import builtin_ring, projective_line
from .polar import polar_counts, predicted_pg

__all__ = [
    "PauliOperator", "SymplecticIndex", "SystemParams", "make_operator", "symplectic_product",
    "LabeledGraph", "spectrum", "PauliGraphBundle", "build_pauli_graph", "enumerate_mcs",
    "builtin_ring", "projective_line", "polar_counts", "predicted_pg",
]
