"""Deformed kinematics of the position-dependent-mass particle.

The deformation parameter ``gamma`` (carried in dimensionless form
``gamma_a``) controls a coordinate map ``x -> eta = ln(1+gamma*x)/gamma``
under which the variable-mass problem becomes a constant-mass one.  This
module holds the mass profile, the x/eta maps and their stable small-
deformation limits, the deformed derivative, the box length, deformed
plane waves and the deformed Fourier transform.

Internally everything is expressed in natural units: lengths in units of
the half-width ``a``, wavevectors in ``1/a``, with ``hbar = m0 = 1`` by
default.  All observable combinations depend only on ``gamma_a`` and the
quantum number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import DomainError, SingularPoint
from .numerics import Interval, differentiate, integrate

__all__ = [
    "GAMMA_TINY",
    "GAMMA_A_MAX",
    "Space",
    "DeformedWell",
    "WaveFunction",
    "mass_at",
    "eta_of_x",
    "x_of_eta",
    "deformed_derivative",
    "box_length",
    "plane_wave",
    "deformed_fourier",
    "norm_squared",
]

# Below this |gamma_a| the closed forms switch to their series limits.
GAMMA_TINY = 1e-8

# Deformations beyond this are rejected at construction: the closed-form
# complexities diverge as |gamma_a| -> 1, and the divergence is treated
# as a domain boundary rather than an overflow.
GAMMA_A_MAX = 1.0 - 1e-6

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class Space(str, Enum):
    """Representation tag for wavefunctions and densities."""

    POSITION = "x"
    WAVEVECTOR = "k"
    DEFORMED_ETA = "eta"


@dataclass(frozen=True)
class DeformedWell:
    """Physical configuration of the deformed infinite well.

    Parameters
    ----------
    gamma_a : float
        Dimensionless deformation strength; must satisfy
        ``|gamma_a| <= 1 - 1e-6``.  Zero recovers the standard well.
    a : float
        Half-width of the well (the walls sit at ``x = -a`` and ``x = a``).
    m0, hbar : float
        Mass and action scales; the defaults give natural units.
    """

    gamma_a: float
    a: float = 1.0
    m0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if not (self.a > 0.0 and self.m0 > 0.0 and self.hbar > 0.0):
            raise DomainError("a, m0 and hbar must all be positive")
        if not abs(self.gamma_a) <= GAMMA_A_MAX:
            raise DomainError(
                f"|gamma_a| = {abs(self.gamma_a)} exceeds {GAMMA_A_MAX}; "
                "the singular point would touch the well"
            )

    @property
    def gamma(self) -> float:
        """Deformation in inverse length units."""
        return self.gamma_a / self.a

    @property
    def x_d(self) -> float | None:
        """Singular point of the mass profile, or None when undeformed."""
        if self.gamma == 0.0:
            return None
        return -1.0 / self.gamma

    @property
    def epsilon0(self) -> float:
        """Energy unit hbar^2 pi^2 / (8 m0 a^2) of the undeformed well."""
        return self.hbar**2 * math.pi**2 / (8.0 * self.m0 * self.a**2)


@dataclass(frozen=True)
class WaveFunction:
    """A single-argument complex amplitude with its support and space tag.

    Normalization (``integral of |eval|^2 over support == 1``) is checked
    on demand via :func:`norm_squared`, never at construction.
    """

    space: Space
    eval: Callable
    support: Interval


def _match(x, out):
    """Return a scalar when the input was scalar, else the array."""
    if np.ndim(x) == 0:
        return float(out)
    return out


def mass_at(well: DeformedWell, x: float) -> float:
    """Effective mass m0 / (1 + gamma*x)^2 at position ``x``."""
    t = 1.0 + well.gamma * x
    if abs(t) < 1e-12:
        raise SingularPoint(f"mass profile diverges at x_d = {well.x_d}")
    return well.m0 / (t * t)


def eta_of_x(well: DeformedWell, x):
    """Map position to the deformed coordinate eta = ln(1+gamma*x)/gamma."""
    g = well.gamma
    xa = np.asarray(x, dtype=float)
    if g == 0.0:
        return _match(x, xa.copy())
    z = g * xa
    if np.any(z <= -1.0):
        raise DomainError("eta map requires 1 + gamma*x > 0")
    return _match(x, np.log1p(z) / g)


def x_of_eta(well: DeformedWell, eta):
    """Inverse coordinate map, x = (exp(gamma*eta) - 1)/gamma; exact inverse."""
    g = well.gamma
    ea = np.asarray(eta, dtype=float)
    if g == 0.0:
        return _match(eta, ea.copy())
    return _match(eta, np.expm1(g * ea) / g)


def deformed_derivative(well: DeformedWell, f: Callable, x: float, scale: float = 1.0) -> float:
    """Deformed derivative (1 + gamma*x) * f'(x), with f' by central difference."""
    t = 1.0 + well.gamma * x
    if abs(t) < 1e-12:
        raise SingularPoint(f"deformed derivative undefined at x_d = {well.x_d}")
    return t * differentiate(f, x, scale)


def box_length(well: DeformedWell) -> float:
    """Length of the well in the deformed coordinate.

    L = ln((1+gamma*a)/(1-gamma*a))/gamma = 2a*atanh(gamma_a)/gamma_a,
    an even function of gamma_a, equal to 2a in the undeformed limit.
    """
    u = well.gamma_a
    if abs(u) < GAMMA_TINY:
        # atanh(u)/u = 1 + u^2/3 + u^4/5 + ...
        return 2.0 * well.a * (1.0 + u * u / 3.0)
    return 2.0 * well.a * math.atanh(u) / u


def plane_wave(well: DeformedWell, k: float, x):
    """Deformed plane wave (1+gamma*x)^(-1/2) exp(i*k*eta(x)), amplitude 1."""
    xa = np.asarray(x, dtype=float)
    t = 1.0 + well.gamma * xa
    if np.any(t <= 0.0):
        raise DomainError("plane wave requires 1 + gamma*x > 0")
    eta = eta_of_x(well, xa)
    out = np.exp(1j * k * np.asarray(eta)) / np.sqrt(t)
    if np.ndim(x) == 0:
        return complex(out)
    return out


def deformed_fourier(
    well: DeformedWell,
    psi: WaveFunction,
    k: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
) -> complex:
    """Deformed Fourier transform of a position-space wavefunction at ``k``.

    Evaluates (2*pi)^(-1/2) * integral of
    ``psi(x) (1+gamma*x)^(-1/2) exp(-i*k*eta(x)) dx``
    by substituting to the deformed coordinate, where the integrand is a
    plain Fourier kernel: phi(eta) = psi(x(eta)) * exp(gamma*eta/2), so
    the transform becomes (2*pi)^(-1/2) * integral of
    ``phi(eta) exp(-i*k*eta) d eta`` over the mapped support.
    """
    if psi.space is not Space.POSITION:
        raise DomainError("deformed_fourier expects a position-space wavefunction")
    g = well.gamma
    lo, hi = psi.support.lo, psi.support.hi
    if g > 0.0 and 1.0 + g * lo <= 0.0:
        raise DomainError("support must lie inside (x_d, inf) for gamma > 0")
    if g < 0.0 and 1.0 + g * hi <= 0.0:
        raise DomainError("support must lie inside (-inf, x_d) for gamma < 0")
    eta_lo = eta_of_x(well, lo) if math.isfinite(lo) else -math.inf
    eta_hi = eta_of_x(well, hi) if math.isfinite(hi) else math.inf
    dom = Interval(eta_lo, eta_hi)

    def phi(eta):
        return np.asarray(psi.eval(x_of_eta(well, eta))) * np.exp(0.5 * g * eta)

    def re_part(eta):
        v = phi(eta)
        return v.real * np.cos(k * eta) + v.imag * np.sin(k * eta)

    def im_part(eta):
        v = phi(eta)
        return v.imag * np.cos(k * eta) - v.real * np.sin(k * eta)

    re = integrate(re_part, dom, rel_tol, abs_tol).value
    im = integrate(im_part, dom, rel_tol, abs_tol).value
    return complex(re / _SQRT_2PI, im / _SQRT_2PI)


def norm_squared(wf: WaveFunction, rel_tol: float = 1e-9, abs_tol: float = 1e-11) -> float:
    """On-demand normalization check: integral of |eval|^2 over the support."""

    def density(z):
        v = np.asarray(wf.eval(z))
        return v.real**2 + v.imag**2

    return integrate(density, wf.support, rel_tol, abs_tol).value
