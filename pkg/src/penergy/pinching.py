"""Block pinching and super-additivity of p-energies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from penergy.energy import p_energy
from penergy.spectra import (
    HermitianMatrix,
    Spectrum,
    SymmetricMatrix,
    default_tol,
    eigenvalues,
    hermitian_embed,
    principal_submatrix,
)

Matrix = Union[SymmetricMatrix, HermitianMatrix]
GAP_TOL = 1e-8


@dataclass(frozen=True)
class BlockPartition:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> BlockPartition:
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def ranges(self) -> list[range]:
        out, start = [], 0
        for s in self.sizes:
            out.append(range(start, start + s))
            start += s
        return out


@dataclass(frozen=True)
class GapReport:
    p: float
    whole: float
    parts_sum: float
    gap: float

    def ok(self, rel: float = GAP_TOL) -> bool:
        return self.gap >= -rel * max(1.0, abs(self.whole))

    def to_dict(self) -> dict:
        return {"p": self.p, "whole": self.whole, "parts_sum": self.parts_sum, "gap": self.gap}


def _check(m: Matrix, part: BlockPartition):
    if part.n != m.n:
        raise ValueError(f"partition covers {part.n} indices, matrix has order {m.n}")


def diagonal_blocks(m: Matrix, part: BlockPartition) -> list[Matrix]:
    _check(m, part)
    return [principal_submatrix(m, r) for r in part.ranges()]


def _spectrum(m: Matrix) -> tuple[Spectrum, float]:
    """Spectrum of ``m`` and the multiplicity factor of its real embedding."""
    if isinstance(m, HermitianMatrix):
        return eigenvalues(hermitian_embed(m)), 2.0
    return eigenvalues(m), 1.0


def _abs_power(s: Spectrum, p: float) -> float:
    return float(np.sum(np.abs(s.values) ** p))


def pinching_gap(m: Matrix, part: BlockPartition, p: float) -> GapReport:
    """``||M||_p^p`` minus the sum of ``||M_ii||_p^p`` over the diagonal blocks."""
    if not p >= 1:
        raise ValueError("p must be >= 1")
    blocks = diagonal_blocks(m, part)
    s, mult = _spectrum(m)
    whole = _abs_power(s, p) / mult
    parts = 0.0
    for b in blocks:
        sb, mb = _spectrum(b)
        parts += _abs_power(sb, p) / mb
    return GapReport(float(p), whole, parts, whole - parts)


def superadditivity_gap(m: Matrix, part: BlockPartition, p: float,
                        tol: float | None = None) -> tuple[GapReport, GapReport]:
    """Gaps ``E_p^+(M) - sum E_p^+(M_ii)`` and the same for ``E_p^-``."""
    blocks = diagonal_blocks(m, part)
    s, mult = _spectrum(m)
    full = p_energy(s, p, tol)
    pos_parts = neg_parts = 0.0
    for b in blocks:
        sb, mb = _spectrum(b)
        r = p_energy(sb, p, tol if tol is not None else default_tol(len(sb)))
        pos_parts += r.e_pos / mb
        neg_parts += r.e_neg / mb
    e_pos, e_neg = full.e_pos / mult, full.e_neg / mult
    return (GapReport(float(p), e_pos, pos_parts, e_pos - pos_parts),
            GapReport(float(p), e_neg, neg_parts, e_neg - neg_parts))


def conformal_permutation(m: Matrix, groups: Sequence[Sequence[int]]) -> tuple[Matrix, BlockPartition]:
    """Relabel ``m`` so each group of indices is contiguous, in the given group order."""
    order = [i for g in groups for i in sorted(g)]
    if sorted(order) != list(range(m.n)) or any(len(g) == 0 for g in groups):
        raise ValueError("groups must partition the index set into non-empty parts")
    ix = np.ix_(order, order)
    if isinstance(m, HermitianMatrix):
        pm = HermitianMatrix(m.real_part[ix], m.imag_part[ix])
    else:
        pm = SymmetricMatrix(m.entries[ix])
    return pm, BlockPartition(tuple(len(g) for g in groups))
