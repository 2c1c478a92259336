"""Core entropy of rational critical portraits.

Exact circle arithmetic, portrait validation, the pair-transition matrix,
verified spectral radii, an independent Markov graph model, and a quadratic
entropy sweep.
"""

from .angles import Angle, OrbitSummary, angle_from_fraction, forward_orbit, in_open_arc, tau
from .pairspace import AnglePair, CoreEntropyResult, build_basis, build_matrix, core_entropy
from .portrait import (
    CriticalPortrait,
    PortraitElement,
    UnlinkedClass,
    crit_set,
    post_set,
    separated_by,
    separation_set,
    unlinked_classes,
    validate,
)
from .spectral import SparseMatrix, SpectralResult, char_poly_radius, scc_decompose, spectral_radius
from .sweep import quadratic_portrait, quadratic_rho, sweep_rows

__all__ = [
    "Angle",
    "AnglePair",
    "CoreEntropyResult",
    "CriticalPortrait",
    "OrbitSummary",
    "PortraitElement",
    "SparseMatrix",
    "SpectralResult",
    "UnlinkedClass",
    "angle_from_fraction",
    "build_basis",
    "build_matrix",
    "char_poly_radius",
    "core_entropy",
    "crit_set",
    "forward_orbit",
    "in_open_arc",
    "post_set",
    "quadratic_portrait",
    "quadratic_rho",
    "scc_decompose",
    "separated_by",
    "separation_set",
    "spectral_radius",
    "sweep_rows",
    "tau",
    "unlinked_classes",
    "validate",
]

__version__ = "0.1.0"
