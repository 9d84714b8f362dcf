"""Cramer-Rao, Fisher-Shannon and LMC complexity measures.

The three functionals are products of an information measure with its
matching length:

    C_CR  = F * L_H^2
    C_FS  = F * L_S^2 / (2 pi e)
    C_LMC = D * L_S

All three are dimensionless, scale and translation invariant, and lower
bounded by 1.  :func:`complexity_numeric` combines an existing
:class:`~pdmwell.measures.MeasureSet` algebraically;
:func:`complexity_closed` evaluates the analytic eigenstate expressions
directly, so the two routes cross-check each other; and
:func:`rydberg_asymptotics` gives the large-n limits.

The closed x-space forms are direct transcriptions of the eigenstate
algebra, regrouped only where naive evaluation loses precision in the
undeformed limit.  The k-space Cramer-Rao and Fisher-Shannon forms carry
the variance bracket ``1/12 - 1/(2 n^2 pi^2)`` of the Fisher information
(see :func:`pdmwell.measures._fisher_k_bracket`), which makes both of
them independent of the deformation; only the single factor L^2 of the
Fisher information and 1/L^2 of the squared lengths ever carried it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deformed import DeformedWell, Space
from .errors import NonFinite
from .measures import MeasureSet, f_of_n
from .well import EigenState, _atanh_gap, _atanh_ratio

__all__ = [
    "ComplexitySet",
    "complexity_numeric",
    "complexity_closed",
    "rydberg_asymptotics",
]

_EULER = float(np.euler_gamma)


@dataclass(frozen=True)
class ComplexitySet:
    """The (C_CR, C_FS, C_LMC) triple for one density."""

    c_cr: float
    c_fs: float
    c_lmc: float


def complexity_numeric(measures: MeasureSet) -> ComplexitySet:
    """Combine a MeasureSet into the three complexities; no quadrature.

    Raises :class:`NonFinite` when the Fisher information is infinite
    (discontinuous densities such as the uniform one) or any input is
    non-finite or non-positive.
    """
    fields = (
        measures.fisher,
        measures.disequilibrium,
        measures.l_heisenberg,
        measures.l_shannon,
    )
    if not all(math.isfinite(v) and v > 0.0 for v in fields):
        raise NonFinite(f"complexities undefined for measures {measures!r}")
    c_cr = measures.fisher * measures.l_heisenberg**2
    c_fs = measures.fisher * measures.l_shannon**2 / (2.0 * math.pi * math.e)
    c_lmc = measures.disequilibrium * measures.l_shannon
    return ComplexitySet(c_cr, c_fs, c_lmc)


def _ccr_x(state: EigenState) -> float:
    """Closed-form position-space Cramer-Rao complexity.

    (n pi u/(1-u^2))^2 atanh^-5 [1 + atanh^2/(4 atanh^2 + N)]
      * { atanh * N/(4 atanh^2 + N) - u N^2/(atanh^2 + N)^2 },
    with u = gamma_a and N = (n pi)^2.  The braces are regrouped around
    (atanh(u) - u), whose series keeps the u -> 0 limit N/3 - 2 exact.
    """
    u = state.well.gamma_a
    A = math.atanh(u)
    N = (state.n * math.pi) ** 2
    R = _atanh_ratio(u)
    bracket = 1.0 + A * A / (4.0 * A * A + N)
    braces_over_u3 = (
        _atanh_gap(u)
        - 4.0 * R**3 / (4.0 * A * A + N)
        + R * R * (A * A + 2.0 * N) / (A * A + N) ** 2
    )
    pref = (state.n * math.pi / (1.0 - u * u)) ** 2
    return pref * bracket * braces_over_u3 / R**5


def complexity_closed(state: EigenState, space: Space) -> ComplexitySet:
    """Analytic complexities of an eigenstate in position or wavevector space."""
    if space is Space.DEFORMED_ETA:
        raise ValueError("closed complexities are provided for position and wavevector space")
    u = state.well.gamma_a
    n = state.n
    N = (n * math.pi) ** 2
    if space is Space.POSITION:
        A = math.atanh(u)
        R = _atanh_ratio(u)
        bracket = 1.0 + A * A / (4.0 * A * A + N)
        c_cr = _ccr_x(state)
        c_fs = (8.0 * math.pi * n * n / math.e**3) * bracket / ((1.0 - u * u) * R)
        c_lmc = (3.0 / math.e) * 4.0 * N * N / (
            math.sqrt(1.0 - u * u) * R * (A * A + N) * (A * A + 4.0 * N)
        )
        return ComplexitySet(c_cr, c_fs, c_lmc)
    bk = 1.0 / 12.0 - 0.5 / N
    fn = f_of_n(n)
    c_cr = 4.0 * N * bk
    c_fs = math.exp(2.0 * fn - 1.0) / (2.0 * math.pi) * bk
    c_lmc = math.exp(fn) / (12.0 * math.pi) * (1.0 + 15.0 / (2.0 * N))
    return ComplexitySet(c_cr, c_fs, c_lmc)


def rydberg_asymptotics(well: DeformedWell, space: Space, n: int) -> ComplexitySet:
    """Large-n asymptotic complexities (meaningful for n >> 1).

    The relative gap to :func:`complexity_closed` shrinks as n grows.  In
    wavevector space the Cramer-Rao and Fisher-Shannon limits are the
    n -> inf values of the variance bracket times 4 N and
    32 pi e^(3-4c)/12; the LMC limit is (2/3) e^(2(1-c)) with c the
    Euler-Mascheroni constant.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("n must be a positive integer")
    u = well.gamma_a
    N = (n * math.pi) ** 2
    if space is Space.POSITION:
        R = _atanh_ratio(u)
        c_cr = (n * math.pi / (1.0 - u * u)) ** 2 * _atanh_gap(u) / R**5
        c_fs = (8.0 * math.pi * n * n / math.e**3) / ((1.0 - u * u) * R)
        c_lmc = (3.0 / math.e) / (math.sqrt(1.0 - u * u) * R)
        return ComplexitySet(c_cr, c_fs, c_lmc)
    if space is Space.DEFORMED_ETA:
        raise ValueError("asymptotics are provided for position and wavevector space")
    c_cr = N / 3.0
    c_fs = (8.0 * math.pi / 3.0) * math.exp(3.0 - 4.0 * _EULER)
    c_lmc = (2.0 / 3.0) * math.exp(2.0 * (1.0 - _EULER))
    return ComplexitySet(c_cr, c_fs, c_lmc)
