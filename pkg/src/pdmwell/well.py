"""Analytic eigenstates, densities and moments of the deformed well.

Closed forms for the stationary states in position, wavevector and
deformed-eta representations, the classical ensemble they approach for
large quantum numbers, and the first two moments of position, momentum
and wavevector.  All expressions are algebraic in ``atanh(gamma_a)`` and
are evaluated through small helpers that stay stable through the
removable 0/0 at ``gamma_a = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deformed import DeformedWell, GAMMA_TINY, Space, box_length
from .errors import DomainError

__all__ = [
    "EigenState",
    "ClassicalEnsemble",
    "Moments",
    "KMoments",
    "energy_level",
    "eigenfunction_x",
    "density_x",
    "k_amplitude",
    "eigenfunction_k",
    "density_k",
    "classical_density",
    "density_eta",
    "quantum_moments",
    "classical_moments",
    "k_moments",
    "eta_window",
]


def _atanh_ratio(u: float) -> float:
    """atanh(u)/u, continued through u = 0 where it equals 1."""
    if abs(u) < GAMMA_TINY:
        return 1.0 + u * u / 3.0
    return math.atanh(u) / u


def _ratio_gap(u: float) -> float:
    """(u/atanh(u) - 1)/u^2, continued to -1/3 at u = 0.

    Direct evaluation cancels catastrophically for small u, so below
    |u| = 0.01 the series of u/atanh(u) is used instead.
    """
    if abs(u) < 1e-2:
        u2 = u * u
        return -(1.0 / 3.0) - 4.0 * u2 / 45.0 - 44.0 * u2 * u2 / 945.0 \
            - 428.0 * u2 * u2 * u2 / 14175.0
    return (u / math.atanh(u) - 1.0) / (u * u)


def _atanh_gap(u: float) -> float:
    """(atanh(u) - u)/u^3, continued to 1/3 at u = 0."""
    if abs(u) < 5e-2:
        u2 = u * u
        return 1.0 / 3.0 + u2 / 5.0 + u2 * u2 / 7.0 + u2 * u2 * u2 / 9.0
    return (math.atanh(u) - u) / (u * u * u)


@dataclass(frozen=True)
class EigenState:
    """Stationary state ``n`` of a particle in a deformed well."""

    well: DeformedWell
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"quantum number must be a positive integer, got {self.n!r}")

    @property
    def L_gamma(self) -> float:
        """Box length in the deformed coordinate."""
        return box_length(self.well)

    @property
    def k_n(self) -> float:
        """Quantized wavenumber n*pi/L_gamma."""
        return self.n * math.pi / self.L_gamma

    @property
    def A_gamma(self) -> float:
        """Normalization constant sqrt(2/L_gamma)."""
        return math.sqrt(2.0 / self.L_gamma)

    @property
    def E_n(self) -> float:
        """Energy hbar^2 pi^2 n^2 / (2 m0 L_gamma^2) in absolute units."""
        w = self.well
        return w.hbar**2 * math.pi**2 * self.n**2 / (2.0 * w.m0 * self.L_gamma**2)


@dataclass(frozen=True)
class ClassicalEnsemble:
    """Classical particle of fixed energy bouncing in the same well."""

    well: DeformedWell
    energy: float

    def __post_init__(self) -> None:
        if not self.energy > 0.0:
            raise ValueError("classical energy must be positive")


@dataclass(frozen=True)
class Moments:
    x_mean: float
    x2_mean: float
    p_mean: float
    p2_mean: float


@dataclass(frozen=True)
class KMoments:
    k_mean: float
    k2_mean: float


def energy_level(state: EigenState) -> float:
    """Energy of the state in units of epsilon0 = hbar^2 pi^2/(8 m0 a^2).

    Equals n^2 (gamma_a/atanh(gamma_a))^2: even in gamma_a, bounded by
    n^2 with equality in the undeformed limit.
    """
    r = _atanh_ratio(state.well.gamma_a)
    return state.n**2 / (r * r)


def eigenfunction_x(state: EigenState, x, extended: bool = False):
    """Real position-space eigenfunction; zero outside the open well.

    With ``extended=True`` the support mask is dropped and the closed
    form is continued smoothly past the walls (used by finite-difference
    oracles whose probe points may poke a step width outside; assumes
    ``|x| - a`` stays well below ``(1 - |gamma_a|)/|gamma|``).
    """
    w = state.well
    g = w.gamma
    xa = np.asarray(x, dtype=float)
    if extended:
        xs = xa
    else:
        xs = np.clip(xa, -w.a, w.a)
    if g == 0.0:
        phase = state.k_n * (xs - w.a)
        amp = state.A_gamma * np.sin(phase)
    else:
        phase = (state.k_n / g) * (np.log1p(g * xs) - np.log1p(w.gamma_a))
        amp = state.A_gamma * np.sin(phase) / np.sqrt(1.0 + g * xs)
    if not extended:
        amp = np.where((xa > -w.a) & (xa < w.a), amp, 0.0)
    if np.ndim(x) == 0:
        return float(amp)
    return amp


def density_x(state: EigenState, x):
    """Position probability density |psi_n(x)|^2 (units 1/length)."""
    psi = eigenfunction_x(state, x)
    return psi * psi


def k_amplitude(state: EigenState, k):
    """Signed real envelope of the k-space eigenfunction.

    Its square is the k-space density; the sign makes it smooth across
    the density nodes, which keeps finite-difference derivatives of
    sqrt(density) well behaved.  The removable points k = +-n*pi/L are
    evaluated through the sinc limit.
    """
    L = state.L_gamma
    n = state.n
    ka = np.asarray(k, dtype=float)
    u = 0.5 * L * ka
    half = 0.5 * n * math.pi
    sm = u - half
    sp = u + half
    pick_m = np.abs(sm) <= np.abs(sp)
    den_p = np.where(pick_m, sp, 1.0)
    den_m = np.where(pick_m, 1.0, sm)
    sign = 1.0 if n % 2 == 0 else -1.0
    core = np.where(
        pick_m,
        np.sinc(sm / math.pi) / den_p,
        sign * np.sinc(sp / math.pi) / den_m,
    )
    out = 0.5 * n * math.sqrt(math.pi * L) * core
    if np.ndim(k) == 0:
        return float(out)
    return out


def density_k(state: EigenState, k):
    """Wavevector probability density |psi_n(k)|^2 (units length)."""
    amp = k_amplitude(state, k)
    return amp * amp


def _log_shift(well: DeformedWell) -> float:
    """gamma^(-1) ln(1 - gamma_a^2): the phase slope of the k eigenfunction."""
    u = well.gamma_a
    if u == 0.0:
        return 0.0
    return well.a * math.log1p(-u * u) / u


def eigenfunction_k(state: EigenState, k):
    """Complex k-space eigenfunction: signed envelope times exp(-i alpha)."""
    ka = np.asarray(k, dtype=float)
    alpha = 0.5 * (ka * _log_shift(state.well) + math.pi * (state.n + 1))
    out = k_amplitude(state, ka) * np.exp(-1j * alpha)
    if np.ndim(k) == 0:
        return complex(out)
    return out


def classical_density(ens: ClassicalEnsemble, x):
    """Classical dwell-time density 1/(L_gamma (1+gamma*x)) inside the well.

    Uniform 1/(2a) in the undeformed limit; the closed-form antiderivative
    telescopes to exactly 1 over the well.
    """
    w = ens.well
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > w.a):
        raise DomainError("classical density is defined on |x| <= a")
    out = 1.0 / (box_length(w) * (1.0 + w.gamma * xa))
    if np.ndim(x) == 0:
        return float(out)
    return out


def eta_window(state: EigenState) -> tuple[float, float]:
    """Endpoints (eta_left, eta_right) of the transported well."""
    w = state.well
    u = w.gamma_a
    if u == 0.0:
        return -w.a, w.a
    left = w.a * math.log1p(-u) / u
    return left, left + state.L_gamma


def eta_amplitude(state: EigenState, eta, extended: bool = False):
    """Real eta-space eigenfunction A sin(k_n (eta - eta_left))."""
    left, right = eta_window(state)
    ea = np.asarray(eta, dtype=float)
    out = state.A_gamma * np.sin(state.k_n * (ea - left))
    if not extended:
        out = np.where((ea > left) & (ea < right), out, 0.0)
    if np.ndim(eta) == 0:
        return float(out)
    return out


def density_eta(state: EigenState, eta):
    """Probability density in the deformed coordinate: a standard box density.

    Equals the position density transported by the Jacobian,
    rho(x) = varrho(eta(x))/(1 + gamma*x).
    """
    amp = eta_amplitude(state, eta)
    return amp * amp


def quantum_moments(state: EigenState) -> Moments:
    """Closed-form first and second moments of position and momentum."""
    w = state.well
    u = w.gamma_a
    a = w.a
    A = math.atanh(u)
    N = (state.n * math.pi) ** 2
    R = _atanh_ratio(u)
    G = _ratio_gap(u)
    x_mean = u * a * G - a * A / (A * A + N)
    x2_mean = -a * a * G - 4.0 * a * a * R / (4.0 * A * A + N) \
        + 2.0 * a * a * R / (A * A + N)
    bracket = 1.0 + A * A / (4.0 * A * A + N)
    p2_mean = (w.hbar * state.k_n) ** 2 * bracket / ((1.0 - u * u) ** 2 * R)
    return Moments(x_mean, x2_mean, 0.0, p2_mean)


def classical_moments(ens: ClassicalEnsemble) -> Moments:
    """Moments of the classical ensemble; the n -> inf limit of the quantum ones."""
    w = ens.well
    u = w.gamma_a
    a = w.a
    R = _atanh_ratio(u)
    G = _ratio_gap(u)
    p2_mean = 2.0 * w.m0 * ens.energy / ((1.0 - u * u) ** 2 * R)
    return Moments(u * a * G, -a * a * G, 0.0, p2_mean)


def k_moments(state: EigenState) -> KMoments:
    """Wavevector moments: <k> = 0 and <k^2> = (n pi / L_gamma)^2."""
    return KMoments(0.0, state.k_n**2)
