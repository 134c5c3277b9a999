"""Certificates, bounds and searches for two-edge-path reachability in constrained tripartite graphs."""

from .graph_core import (
    ConstraintReport, TripartiteWeightedGraph, Vertex, WitnessCertificate,
    blow_up, check_constraints, second_neighborhood_weight, verify_certificate, witness_value,
)

__all__ = [
    "ConstraintReport", "TripartiteWeightedGraph", "Vertex", "WitnessCertificate",
    "blow_up", "check_constraints", "second_neighborhood_weight", "verify_certificate", "witness_value",
]
__version__ = "0.1.0"
