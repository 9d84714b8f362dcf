"""Adaptive quadrature and numerical differentiation.

Every numerical oracle in the package funnels its integrals through
:func:`integrate`, so all floating-point integration policy lives in one
place: the panel rule (15-point Kronrod with the embedded 7-point Gauss
estimate), the error allocation strategy, the rational transforms that
fold infinite domains onto finite ones, and the hard evaluation budget.

Design notes
------------
* Subdivision is breadth-first: on every round all offending panels are
  bisected at once and the new panels are evaluated in a single
  vectorized call.  Integrands written with numpy ufuncs therefore cost
  a handful of array operations per round; scalar-only callables are
  detected and looped over transparently.
* Improper domains are mapped by rational substitutions
  (``x = t/(1-t^2)`` for the doubly infinite line, ``x = a + t/(1-t)``
  for half lines).  Panel nodes are strictly interior, so integrable
  endpoint behavior of the ``t*log(t)`` kind needs no special casing.
* Exhausting the budget raises :class:`~pdmwell.errors.NonConvergence`;
  the engine never silently returns a low-accuracy value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergence, NonFinite

__all__ = [
    "Interval",
    "QuadratureResult",
    "integrate",
    "differentiate",
    "derivative_function",
    "p_log_p",
    "P_LOG_P_FLOOR",
]

_EPS = float(np.finfo(float).eps)

# Densities below this are treated as exact zeros inside p*log(p)
# integrands (removable singularity at the nodes of a density).
P_LOG_P_FLOOR = 1e-300

# 15-point Kronrod abscissae (positive half, descending) and weights,
# with the embedded 7-point Gauss weights sitting on the odd-indexed
# abscissae.  Values are the classical QUADPACK dqk15 constants.
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277,
    0.381830050505119, 0.417959183673469,
])

# Full 15-node layout in ascending order plus matching weight vectors.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class Interval:
    """Integration domain; either endpoint may be infinite."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi) or not lo < hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def _vectorized(f: Callable) -> Callable:
    """Wrap ``f`` so it maps float arrays to float arrays of equal shape.

    Tries a single array call first; falls back to a scalar loop for
    callables written with ``math.*`` or with shape-changing behavior.
    Non-finite values raise :class:`NonFinite` with the offending point.
    """

    def call(x: np.ndarray) -> np.ndarray:
        y = None
        try:
            y = np.asarray(f(x), dtype=float)
        except (TypeError, ValueError):
            y = None
        if y is not None and y.ndim == 0:
            y = np.full(x.shape, float(y))
        if y is None or y.shape != x.shape:
            y = np.array([float(f(xi)) for xi in x])
        bad = ~np.isfinite(y)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NonFinite(
                f"integrand returned {y[i]!r} at x={x[i]!r}"
            )
        return y

    return call


def _damped(y: np.ndarray, w: np.ndarray) -> np.ndarray:
    # 0 * inf guard at the far end of an infinite-domain transform
    out = y * w
    out[y == 0.0] = 0.0
    return out


def _finite_form(f: Callable, dom: Interval):
    """Return (g, t_lo, t_hi) with g defined on a finite t-interval."""
    fv = _vectorized(f)
    lo_inf = math.isinf(dom.lo)
    hi_inf = math.isinf(dom.hi)
    if not lo_inf and not hi_inf:
        return fv, dom.lo, dom.hi
    if lo_inf and hi_inf:
        def g(t):
            s = 1.0 - t * t
            x = t / s
            w = (1.0 + t * t) / (s * s)
            return _damped(fv(x), w)
        return g, -1.0, 1.0
    if hi_inf:
        lo = dom.lo

        def g(t):
            s = 1.0 - t
            return _damped(fv(lo + t / s), 1.0 / (s * s))
        return g, 0.0, 1.0
    hi = dom.hi

    def g(t):
        s = 1.0 - t
        return _damped(fv(hi - t / s), 1.0 / (s * s))
    return g, 0.0, 1.0


def _panels(g: Callable, lo: np.ndarray, hi: np.ndarray):
    """Evaluate the GK15 rule on a batch of panels.

    Returns (value, error, resabs) per panel.  The error estimate is the
    QUADPACK rescaling of |K15 - G7| with a roundoff floor.
    """
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = c[:, None] + h[:, None] * _NODES[None, :]
    y = g(x.ravel()).reshape(x.shape)
    k15 = h * (y @ _WK15)
    g7 = h * (y @ _WG15)
    if not np.isfinite(k15).all():
        raise NonFinite("panel sum overflowed to a non-finite value")
    resabs = h * (np.abs(y) @ _WK15)
    mean = k15 / (hi - lo)
    resasc = h * (np.abs(y - mean[:, None]) @ _WK15)
    e = np.abs(k15 - g7)
    err = np.where(
        (resasc > 0.0) & (e > 0.0),
        resasc * np.minimum(1.0, (200.0 * e / np.where(resasc > 0, resasc, 1.0)) ** 1.5),
        e,
    )
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return k15, err, resabs


def integrate(
    f: Callable,
    domain: Interval | tuple,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
    max_evals: int = 1_000_000,
) -> QuadratureResult:
    """Adaptively integrate ``f`` over ``domain``.

    Parameters
    ----------
    f : callable
        Real-valued integrand, finite on the open domain.  Array-aware
        callables are evaluated in vectorized batches.
    domain : Interval or (lo, hi) tuple
        Integration interval; semi-infinite and doubly infinite domains
        are mapped onto finite ones internally.
    rel_tol, abs_tol : float
        The run stops once the accumulated error estimate drops below
        ``max(abs_tol, rel_tol * |value|)``.
    max_evals : int
        Hard budget on integrand evaluations; exceeding it raises
        :class:`NonConvergence` rather than returning a degraded value.

    Returns
    -------
    QuadratureResult
        Value, accumulated absolute error estimate and evaluation count.
    """
    if isinstance(domain, tuple):
        domain = Interval(*domain)
    if not (rel_tol > 0.0 and abs_tol > 0.0):
        raise ValueError("tolerances must be positive")
    g, t_lo, t_hi = _finite_form(f, domain)

    n0 = 8
    edges = np.linspace(t_lo, t_hi, n0 + 1)
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    val, err, _ = _panels(g, lo, hi)
    evals = 15 * n0
    frozen = np.zeros(n0, dtype=bool)

    while True:
        total = float(val.sum())
        target = max(abs_tol, rel_tol * abs(total))
        e_total = float(err.sum())
        if e_total <= target:
            return QuadratureResult(total, e_total, evals)

        width = hi - lo
        # panels narrower than a few ulps cannot be split meaningfully
        frozen |= width <= 8.0 * _EPS * np.maximum(np.maximum(np.abs(lo), np.abs(hi)), 1e-12)
        share = target * (width / width.sum())
        split = (err > share) & ~frozen
        if not split.any():
            live = np.flatnonzero(~frozen)
            if live.size == 0:
                raise NonConvergence(
                    f"roundoff-limited at error {e_total:.3e} > target {target:.3e}"
                )
            worst = live[np.argsort(err[live])[-8:]]
            split = np.zeros_like(frozen)
            split[worst] = True

        n_split = int(split.sum())
        if evals + 30 * n_split > max_evals:
            raise NonConvergence(
                f"evaluation budget ({max_evals}) exhausted with error "
                f"{e_total:.3e} > target {target:.3e}"
            )
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_val, new_err, _ = _panels(g, new_lo, new_hi)
        evals += 30 * n_split

        lo = np.concatenate([lo[~split], new_lo])
        hi = np.concatenate([hi[~split], new_hi])
        val = np.concatenate([val[~split], new_val])
        err = np.concatenate([err[~split], new_err])
        frozen = np.concatenate([frozen[~split], np.zeros(2 * n_split, dtype=bool)])


def derivative_function(f: Callable, scale: float = 1.0) -> Callable:
    """Central-difference derivative of ``f`` as a callable.

    The step is ``scale * eps**(1/3)``, balancing truncation against
    roundoff; the absolute error is O(step^2 * |f'''|).  The returned
    callable is vectorized whenever ``f`` is.
    """
    if not scale > 0.0:
        raise ValueError("scale must be positive")
    h = scale * _EPS ** (1.0 / 3.0)

    def d(x):
        return (f(x + h) - f(x - h)) / (2.0 * h)

    return d


def differentiate(f: Callable, x: float, scale: float = 1.0) -> float:
    """Central-difference df/dx at a point; see :func:`derivative_function`."""
    out = float(derivative_function(f, scale)(x))
    if not math.isfinite(out):
        raise NonFinite(f"derivative of {f!r} at x={x!r} is not finite")
    return out


def p_log_p(p):
    """``p * log(p)`` with the removable singularity at ``p = 0`` patched.

    Values below ``P_LOG_P_FLOOR`` (including the exact zeros at density
    nodes) contribute 0, which is the limit of ``p log p``.
    """
    arr = np.asarray(p, dtype=float)
    out = np.zeros(arr.shape)
    m = arr > P_LOG_P_FLOOR
    out[m] = arr[m] * np.log(arr[m])
    if np.ndim(p) == 0:
        return float(out)
    return out
