"""Positive and negative p-energies, Schatten norms and Hölder-type bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from penergy.spectra import Inertia, Spectrum, default_tol, inertia


@dataclass(frozen=True)
class EnergyReport:
    p: float
    e_pos: float
    e_neg: float
    e_total: float
    inertia: Inertia

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "e_pos": self.e_pos,
            "e_neg": self.e_neg,
            "e_total": self.e_total,
            "n_pos": self.inertia.n_pos,
            "n_zero": self.inertia.n_zero,
            "n_neg": self.inertia.n_neg,
        }


def _check_p(p: float):
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")


def _power_sum(x: np.ndarray, p: float) -> float:
    if x.size == 0:
        return 0.0
    return float(np.sum(np.abs(x) ** p))


def p_energy(s: Spectrum, p: float, tol: float | None = None) -> EnergyReport:
    """Sum of ``lambda**p`` over positive and of ``|lambda|**p`` over negative eigenvalues.

    Eigenvalues inside the zero band ``tol * s.scale`` count on neither side.
    """
    _check_p(p)
    if tol is None:
        tol = default_tol(len(s))
    thr = tol * s.scale
    v = s.values
    e_pos = _power_sum(v[v > thr], p)
    e_neg = _power_sum(v[v < -thr], p)
    return EnergyReport(float(p), e_pos, e_neg, e_pos + e_neg, inertia(s, tol))


def p_energy_with_inertia(s: Spectrum, p: float, signs: Inertia) -> EnergyReport:
    """Energy when the sign pattern is known exactly (e.g. from :func:`exact_inertia`)."""
    _check_p(p)
    v = s.values
    n = len(v)
    if sum(signs) != n:
        raise ValueError("inertia does not match spectrum length")
    e_pos = _power_sum(v[: signs.n_pos], p)
    e_neg = _power_sum(v[n - signs.n_neg:], p)
    return EnergyReport(float(p), e_pos, e_neg, e_pos + e_neg, signs)


def schatten_norm(s: Spectrum, p: float) -> float:
    _check_p(p)
    return _power_sum(s.values, p) ** (1.0 / p)


class Sandwich(NamedTuple):
    lower: float
    upper: float
    holds: bool


def pnorm_sandwich(x, p: float, q: float, rel: float = 1e-12) -> Sandwich:
    """Check ``||x||_p <= ||x||_q <= n**(1/q - 1/p) * ||x||_p`` for ``1 <= q <= p``."""
    if q < 1 or q > p:
        raise ValueError("need 1 <= q <= p")
    x = np.abs(np.asarray(x, dtype=np.float64).ravel())
    n = x.size
    # scale out the largest entry so tiny or huge inputs don't under/overflow
    top = float(x.max()) if n else 0.0
    if top > 0:
        x = x / top
    norm_p = top * float(np.sum(x ** p) ** (1.0 / p))
    norm_q = top * float(np.sum(x ** q) ** (1.0 / q))
    lower = norm_p
    upper = n ** (1.0 / q - 1.0 / p) * norm_p
    holds = lower * (1 - rel) <= norm_q <= upper * (1 + rel)
    return Sandwich(lower, upper, holds)


class ScalingBounds(NamedTuple):
    lower_pos: float
    upper_pos: float
    lower_neg: float
    upper_neg: float


def _scale_pair(e_q: float, count: int, ratio: float) -> tuple[float, float]:
    if count == 0:
        return 0.0, 0.0
    upper = e_q ** ratio
    return upper / count ** (ratio - 1.0), upper


def scaling_bounds(report_q: EnergyReport, p: float) -> ScalingBounds:
    """Bounds on the p-energies implied by the q-energies in ``report_q`` (``p >= q``)."""
    if p < report_q.p:
        raise ValueError("p must be at least report_q.p")
    ratio = p / report_q.p
    lp, up = _scale_pair(report_q.e_pos, report_q.inertia.n_pos, ratio)
    ln, un = _scale_pair(report_q.e_neg, report_q.inertia.n_neg, ratio)
    return ScalingBounds(lp, up, ln, un)


def energy_upper_bounds(n: int, p: float) -> tuple[float, float]:
    """Graph upper bounds ``((n-1)**p, (n/2)**p)`` on the positive and negative p-energy."""
    if n < 1:
        raise ValueError("n must be positive")
    return float(n - 1) ** p, (n / 2.0) ** p
