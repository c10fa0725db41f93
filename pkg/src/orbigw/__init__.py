"""
orbigw: exact higher genus Gromov-Witten theory of cyclic quotient orbifolds.

The package reconstructs the genus zero data of the order-n cyclic quotient
singularity from explicit series, builds the polynomial rings in which the
higher genus potentials are finitely generated, assembles those potentials
through the semisimple classification graph sum, and machine-verifies the
holomorphic anomaly equations as exact identities in the free ring.

Everything is exact rational or cyclotomic arithmetic; there is no floating
point in the computational core.
"""

from .cyclotomic import Cyclotomic, Rational
from .genus0 import GenusZeroData, ModelConfig, compute_K_X_A, quantum_structure
from .graphs import DecoratedGraph, StableGraph, enumerate_decorated, enumerate_stable_graphs
from .hae import (
    HaeReport,
    verify_finite_generation,
    verify_hae,
    verify_hae_even,
    verify_hae_odd,
    verify_hae_policies,
)
from .pmatrix import PColumn, PMatrixData, build_pmatrix, compute_P_column, verify_pmatrix
from .potentials import ContributionTables, Potential, assemble_F, assemble_F_series, audit_generators
from .psi import psi_integral, psi_integral_bruteforce
from .report import Report
from .ring import RingContext, RingElement, certify_rules, fit_laurent_in_L
from .series import Series, binomial_pow
from .stirling import StirlingTable, stirling_first, stirling_second

__all__ = [
    "Cyclotomic",
    "Rational",
    "Series",
    "binomial_pow",
    "StirlingTable",
    "stirling_first",
    "stirling_second",
    "ModelConfig",
    "GenusZeroData",
    "compute_K_X_A",
    "quantum_structure",
    "RingContext",
    "RingElement",
    "certify_rules",
    "fit_laurent_in_L",
    "PColumn",
    "PMatrixData",
    "build_pmatrix",
    "compute_P_column",
    "verify_pmatrix",
    "psi_integral",
    "psi_integral_bruteforce",
    "StableGraph",
    "DecoratedGraph",
    "enumerate_stable_graphs",
    "enumerate_decorated",
    "ContributionTables",
    "Potential",
    "assemble_F",
    "assemble_F_series",
    "audit_generators",
    "HaeReport",
    "verify_hae",
    "verify_hae_odd",
    "verify_hae_even",
    "verify_hae_policies",
    "verify_finite_generation",
    "Report",
]

__version__ = "0.1.0"
