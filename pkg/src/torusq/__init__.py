"""Mod-2 quadruple-point invariant Q for embedded systems of tori in R^3."""

from .cubical import EdgeCycle, VoxelSolid
from .embedding import (
    E,
    EE,
    EEE,
    H1Class,
    MarkedTorusEmbedding,
    QResult,
    SystemEmbedding,
    kernel_class,
    predict_q,
    q_invariant,
    q_system,
)
from .mcg import MappingClass, decompose_tau_u, q_parity, reg_homotopic_to_inclusion, tau

__version__ = "0.1.0"

__all__ = [
    "E",
    "EE",
    "EEE",
    "EdgeCycle",
    "H1Class",
    "MappingClass",
    "MarkedTorusEmbedding",
    "QResult",
    "SystemEmbedding",
    "VoxelSolid",
    "decompose_tau_u",
    "kernel_class",
    "predict_q",
    "q_invariant",
    "q_parity",
    "q_system",
    "reg_homotopic_to_inclusion",
    "tau",
]
