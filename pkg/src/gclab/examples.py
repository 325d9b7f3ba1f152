"""Worked finite examples gathered in one namespace."""

from .dxg import DXGStructure, dxg_structure, representative_change, translation_action
from .fields import (FiniteField, KummerReport, SplitVerdict, cyclic_algebra_split,
                     finite_field, kummer_h1_check, power_quotient_order)
from .quantum import (QuantumTorusData, SplittingGroupoid, heisenberg_extension,
                      pgl_obstruction_cocycle, quantum_torus_data, splitting_groupoid)

__all__ = [
    "DXGStructure", "dxg_structure", "representative_change", "translation_action",
    "FiniteField", "KummerReport", "SplitVerdict", "cyclic_algebra_split", "finite_field",
    "kummer_h1_check", "power_quotient_order", "QuantumTorusData", "SplittingGroupoid",
    "heisenberg_extension", "pgl_obstruction_cocycle", "quantum_torus_data",
    "splitting_groupoid",
]
