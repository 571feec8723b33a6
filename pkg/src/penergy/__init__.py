"""Positive and negative p-energies of Hermitian matrices and graphs."""

from penergy.energy import EnergyReport, p_energy, schatten_norm
from penergy.graphs import Graph, adjacency, family, graph6_decode, graph6_encode
from penergy.pinching import BlockPartition, GapReport, pinching_gap, superadditivity_gap
from penergy.spectra import (
    HermitianMatrix,
    Inertia,
    Spectrum,
    SymmetricMatrix,
    eigenvalues,
    exact_inertia,
    inertia,
)

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "EnergyReport",
    "GapReport",
    "Graph",
    "HermitianMatrix",
    "Inertia",
    "Spectrum",
    "SymmetricMatrix",
    "adjacency",
    "eigenvalues",
    "exact_inertia",
    "family",
    "graph6_decode",
    "graph6_encode",
    "inertia",
    "p_energy",
    "pinching_gap",
    "schatten_norm",
    "superadditivity_gap",
]
