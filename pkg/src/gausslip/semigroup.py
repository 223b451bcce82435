"""Ornstein-Uhlenbeck and Poisson-Hermite semigroups in three representations.

T_t acts on chaos level n by e^{-tn}; its kernel against Lebesgue measure is
the explicit Gaussian (Mehler) kernel.  P_t acts by e^{-sqrt(n) t} and is the
subordination of T against the one-sided stable density of order 1/2,

    g(t, s) = t / (2 sqrt(pi)) * e^{-t^2/4s} * s^{-3/2},

which also yields the integral kernel p(t, x, y) and, by differentiating the
scalar factor t e^{-t^2/4s} under the integral sign, its time derivatives up
to order 3.

Representations:
  * ``spectral``      -- exact multiplier action on a HermiteExpansion,
  * ``kernel``        -- quadrature of the explicit kernel over a truncated
                         y-domain (|y_i| <= 8 + 2 max|x|),
  * ``subordination`` -- s-integral of the OU action against g(t, s).

Pointwise callables take point batches of shape (n, d) and return (n,).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .hermite import HermiteExpansion, as_function, as_points, scale_by_level
from .quadrature import (
    default_rule,
    gauss_legendre_panels,
    graded_breaks,
    integrate_halfline,
    tensor_nodes,
    uniform_breaks,
)

METHODS = ("spectral", "kernel", "subordination")

_SQRT_PI = math.sqrt(math.pi)

# e^{-v} weight below ~1e-20 for v > _V_CUT; sets the smallest s-scale that
# can contribute, hence the inner panel width of graded y-grids.
_V_CUT = 45.0


@dataclass(frozen=True)
class SemigroupQuery:
    """Time, representation method, and t-derivative order for T_t / P_t."""

    t: float
    method: str = "spectral"
    derivative_order: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.derivative_order < 0:
            raise ValueError("derivative_order must be >= 0")
        if self.t < 0:
            raise ValueError("time t must be >= 0")
        if self.t == 0 and (self.method != "spectral" or self.derivative_order > 0):
            raise ValueError("t = 0 is only allowed for the spectral identity")


@dataclass(frozen=True)
class StableMeasureParams:
    """Parameter of the one-sided stable measure of order 1/2."""

    t: float

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("time t must be positive")


class KernelL1(NamedTuple):
    value: float
    tail_bound: float


# ----------------------------------------------------------------------------
# Kernels and densities
# ----------------------------------------------------------------------------

def _mehler_from_s(s, x, y, d: int):
    """exp(-|y - e^{-s} x|^2 / (1-e^{-2s})) / (pi (1-e^{-2s}))^{d/2}.

    ``x`` and ``y`` carry coordinates on the last axis; ``s`` broadcasts
    against the batch axes.  Evaluated in log form so that small 1-r^2 cannot
    overflow the prefactor.
    """
    s = np.asarray(s, dtype=float)
    r = np.exp(-s)
    one_minus_r2 = -np.expm1(-2.0 * s)
    q = np.sum((y - r[..., None] * x) ** 2, axis=-1) / one_minus_r2
    return np.exp(-q - 0.5 * d * np.log(math.pi * one_minus_r2))


def mehler_kernel(t: float, x, y, d: int = 1):
    """Ornstein-Uhlenbeck transition kernel against Lebesgue dy.

    ``x`` and ``y`` broadcast as point batches; returns the batch of kernel
    values (float for a single pair).
    """
    if t <= 0:
        raise ValueError("time t must be positive for the kernel representation")
    X = as_points(x, d)
    Y = as_points(y, d)
    out = _mehler_from_s(t, X, Y, d)
    if out.shape == ():
        return float(out)
    return out


def stable_density(params: StableMeasureParams, s):
    """Density g(t, s) of the one-sided stable measure of order 1/2."""
    arr = np.asarray(s, dtype=float)
    if np.any(arr <= 0):
        raise ValueError("the stable density lives on s > 0")
    out = _stable_weight_factor(params.t, arr, 0)
    if out.shape == ():
        return float(out)
    return out


def _stable_weight_factor(t: float, s: np.ndarray, k: int) -> np.ndarray:
    """k-th t-derivative of g(t, s), k <= 3, vectorized in s.

    Differentiating the scalar factor phi(t) = t e^{-t^2/4s} gives
      phi'   = (1 - t^2/2s) e^{-t^2/4s}
      phi''  = (t^3/4s^2 - 3t/2s) e^{-t^2/4s}
      phi''' = (-3/2s + 3t^2/2s^2 - t^4/8s^3) e^{-t^2/4s}
    and d^k g/dt^k = phi^{(k)} s^{-3/2} / (2 sqrt(pi)).
    """
    s = np.asarray(s, dtype=float)
    expo = np.exp(-t * t / (4.0 * s) - 1.5 * np.log(s)) / (2.0 * _SQRT_PI)
    if k == 0:
        poly = t
    elif k == 1:
        poly = 1.0 - t * t / (2.0 * s)
    elif k == 2:
        poly = t ** 3 / (4.0 * s * s) - 1.5 * t / s
    elif k == 3:
        poly = -1.5 / s + 1.5 * t * t / (s * s) - t ** 4 / (8.0 * s ** 3)
    else:
        raise NotImplementedError(
            "kernel time derivatives are implemented for k <= 3; use the "
            "spectral representation beyond that")
    return poly * expo


# ----------------------------------------------------------------------------
# Truncated y-grids
# ----------------------------------------------------------------------------

def _truncation_radius(pts: np.ndarray) -> float:
    return 8.0 + 2.0 * float(np.max(np.abs(pts))) if pts.size else 8.0


def _ou_panel_width(t: float) -> float:
    sigma = math.sqrt(0.5 * -math.expm1(-2.0 * t))
    return max(0.35, min(1.0, 2.2 * sigma))


def _min_sigma(t: float) -> float:
    s_min = t * t / (4.0 * _V_CUT)
    return math.sqrt(0.5 * -math.expm1(-2.0 * s_min))


def _tensor_panel_grid(breaks_per_axis) -> tuple[np.ndarray, np.ndarray]:
    nodes_axes, weights_axes = zip(*(gauss_legendre_panels(b) for b in breaks_per_axis))
    d = len(nodes_axes)
    grids = np.meshgrid(*nodes_axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    w = np.ones(pts.shape[0])
    wgrids = np.meshgrid(*weights_axes, indexing="ij")
    for i in range(d):
        w *= wgrids[i].ravel()
    return pts, w


def _ou_truncated_grid(t: float, pts: np.ndarray, d: int):
    R = _truncation_radius(pts)
    breaks = uniform_breaks(-R, R, _ou_panel_width(t))
    return _tensor_panel_grid([breaks] * d)


def _ph_truncated_grid(t: float, x_pt: np.ndarray, d: int, radius: float | None = None):
    R = radius if radius is not None else _truncation_radius(x_pt)
    inner = max(0.004, 0.5 * _min_sigma(t))
    breaks = [graded_breaks(-R, R, float(x_pt[axis]), inner) for axis in range(d)]
    return _tensor_panel_grid(breaks)


# ----------------------------------------------------------------------------
# Ornstein-Uhlenbeck semigroup
# ----------------------------------------------------------------------------

def ou_apply(f, q: SemigroupQuery, *, d: int = 1, rule=None):
    """Apply T_t.  Spectral input must be a HermiteExpansion; the kernel
    method accepts a callable (or an expansion, which is wrapped) and returns
    a callable."""
    if q.derivative_order != 0:
        raise ValueError("ou_apply supports derivative_order = 0 only")
    if q.method == "spectral":
        if not isinstance(f, HermiteExpansion):
            raise ValueError("the spectral method requires a HermiteExpansion input")
        t = q.t
        return scale_by_level(f, lambda n: math.exp(-t * n))
    if q.method != "kernel":
        raise ValueError("ou_apply supports the spectral and kernel methods")
    func = as_function(f) if isinstance(f, HermiteExpansion) else f
    dim = f.dimension if isinstance(f, HermiteExpansion) else d
    t = q.t

    def apply_at(x):
        pts = as_points(x, dim).reshape(-1, dim)
        Y, wy = _ou_truncated_grid(t, pts, dim)
        fv = np.asarray(func(Y), dtype=float)
        K = _mehler_from_s(np.asarray(t), pts[:, None, :], Y[None, :, :], dim)
        out = K @ (wy * fv)
        if np.asarray(x).ndim == 0 or (dim > 1 and np.asarray(x).ndim == 1):
            return float(out[0])
        return out

    return apply_at


# ----------------------------------------------------------------------------
# Poisson-Hermite kernel p(t, x, y) and its t-derivatives
# ----------------------------------------------------------------------------

def _ph_kernel_payload(t: float, x_pt: np.ndarray, Y: np.ndarray, d: int,
                       k: int, tol: float) -> np.ndarray:
    """Integrate g-factor(t, s) * mehler(s, x, y) over s for a batch of y."""

    def integrand(s):
        w = _stable_weight_factor(t, s, k)
        K = _mehler_from_s(s[:, None], x_pt[None, None, :], Y[None, :, :], d)
        return w[:, None] * K

    vals = integrate_halfline(integrand, transform="inverse_square", tol=tol)
    return np.atleast_1d(np.asarray(vals, dtype=float))


def _point_batches(x, y, d: int):
    X = as_points(x, d)
    Y = as_points(y, d)
    batch = np.broadcast_shapes(X.shape[:-1], Y.shape[:-1])
    single = (np.asarray(x).ndim <= 1 and np.asarray(y).ndim <= 1
              and batch in ((), (1,)))
    Xb = np.broadcast_to(X, batch + (d,)).reshape(-1, d)
    Yb = np.broadcast_to(Y, batch + (d,)).reshape(-1, d)
    return Xb, Yb, batch, single


def ph_kernel(t: float, x, y, tol: float = 1e-9, d: int = 1):
    """Poisson-Hermite kernel p(t, x, y) by adaptive subordination quadrature."""
    if t <= 0:
        raise ValueError("time t must be positive for the kernel representation")
    Xb, Yb, batch, single = _point_batches(x, y, d)

    # Group by x-point so each s-integral carries the whole y-batch.
    out = np.empty(Xb.shape[0])
    seen: dict = {}
    for i in range(Xb.shape[0]):
        seen.setdefault(tuple(Xb[i]), []).append(i)
    for _, idx in seen.items():
        rows = np.asarray(idx)
        out[rows] = _ph_kernel_payload(t, Xb[rows[0]], Yb[rows], d, 0, tol)
    if single:
        return float(out[0])
    return out.reshape(batch)


def ph_kernel_time_derivative(t: float, x, y, k: int, tol: float = 1e-9, d: int = 1):
    """d^k/dt^k of p(t, x, y) for 1 <= k <= 3 (differentiation under the
    integral sign; the k-fold factor is hardcoded)."""
    if t <= 0:
        raise ValueError("time t must be positive")
    if k < 1:
        raise ValueError("derivative order k must be >= 1")
    if k > 3:
        raise NotImplementedError(
            "kernel time derivatives are implemented for k <= 3; use the "
            "spectral representation beyond that")
    Xb, Yb, batch, single = _point_batches(x, y, d)
    out = np.empty(Xb.shape[0])
    seen: dict = {}
    for i in range(Xb.shape[0]):
        seen.setdefault(tuple(Xb[i]), []).append(i)
    for _, idx in seen.items():
        rows = np.asarray(idx)
        out[rows] = _ph_kernel_payload(t, Xb[rows[0]], Yb[rows], d, k, tol)
    if single:
        return float(out[0])
    return out.reshape(batch)


# ----------------------------------------------------------------------------
# Poisson-Hermite semigroup
# ----------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _subordination_multiplier(t: float, n: int, tol: float) -> float:
    """lambda_n(t) = ∫_0^infty e^{-n s} g(t, s) ds  (equals e^{-sqrt(n) t})."""

    def integrand(s):
        return np.exp(-n * s) * _stable_weight_factor(t, s, 0)

    return float(integrate_halfline(integrand, transform="inverse_square", tol=tol))


def ph_apply(f, q: SemigroupQuery, *, d: int = 1, rule=None, tol: float = 1e-8):
    """Apply d^k/dt^k P_t in the representation selected by ``q``.

    spectral      : expansion -> expansion, multiplier (-sqrt(n))^k e^{-sqrt(n) t}
    subordination : k = 0 only; expansion -> expansion via per-level s-integrals,
                    callable -> callable via Gauss-Hermite evaluation of T_s
    kernel        : callable (or wrapped expansion) -> callable via p(t, x, y)
                    quadrature on a graded truncated y-grid; k <= 3.
    """
    t = q.t
    k = q.derivative_order
    if q.method == "spectral":
        if not isinstance(f, HermiteExpansion):
            raise ValueError("the spectral method requires a HermiteExpansion input")
        return scale_by_level(
            f, lambda n: (-math.sqrt(n)) ** k * math.exp(-math.sqrt(n) * t))

    if q.method == "subordination":
        if k > 0:
            raise NotImplementedError(
                "derivative_order > 0 is not supported with the subordination "
                "method; use the spectral or kernel representation")
        if isinstance(f, HermiteExpansion):
            return scale_by_level(f, lambda n: _subordination_multiplier(t, n, tol))
        if rule is None:
            rule = default_rule()
        U, wu = tensor_nodes(rule, d)
        norm = math.pi ** (d / 2.0)

        def apply_sub(x):
            pts = as_points(x, d).reshape(-1, d)

            def integrand(s):
                r = np.exp(-s)
                sig = np.sqrt(-np.expm1(-2.0 * s))
                z = (r[:, None, None, None] * pts[None, :, None, :]
                     + sig[:, None, None, None] * U[None, None, :, :])
                fv = np.asarray(f(z.reshape(-1, d)), dtype=float)
                fv = fv.reshape(s.shape[0], pts.shape[0], U.shape[0])
                ts = (fv @ wu) / norm
                return ts * _stable_weight_factor(t, s, 0)[:, None]

            vals = np.atleast_1d(integrate_halfline(
                integrand, transform="inverse_square", tol=tol))
            if np.asarray(x).ndim == 0 or (d > 1 and np.asarray(x).ndim == 1):
                return float(vals[0])
            return vals

        return apply_sub

    # kernel method
    func = as_function(f) if isinstance(f, HermiteExpansion) else f
    dim = f.dimension if isinstance(f, HermiteExpansion) else d
    if k > 3:
        raise NotImplementedError(
            "kernel time derivatives are implemented for k <= 3; use the "
            "spectral representation beyond that")

    def apply_kernel(x):
        pts = as_points(x, dim).reshape(-1, dim)
        R = _truncation_radius(pts)
        out = np.empty(pts.shape[0])
        for i in range(pts.shape[0]):
            Y, wy = _ph_truncated_grid(t, pts[i], dim, radius=R)
            p_vals = _ph_kernel_payload(t, pts[i], Y, dim, k, tol)
            fv = np.asarray(func(Y), dtype=float)
            out[i] = float(np.dot(wy * p_vals, fv))
        if np.asarray(x).ndim == 0 or (dim > 1 and np.asarray(x).ndim == 1):
            return float(out[0])
        return out

    return apply_kernel


def derivative_weight_mass(t: float, k: int, tol: float = 1e-10) -> float:
    """∫ |d^k/dt^k g(t, s)| ds: the scalar majorant of the kernel-derivative
    L^1 norm obtained by moving the absolute value inside the s-integral
    (the y-mass of the Gaussian factor is 1).

    t^k times this quantity is independent of t (substitute s -> t^2 sigma),
    and bounded by 2 for k = 1.
    """
    if t <= 0:
        raise ValueError("time t must be positive")
    if not 1 <= k <= 3:
        raise ValueError("derivative weight mass supports 1 <= k <= 3")

    def weight_mass(s):
        return np.abs(_stable_weight_factor(t, s, k))

    return float(integrate_halfline(weight_mass, transform="inverse_square", tol=tol))


def kernel_derivative_l1(t: float, x: float, k: int, tol: float = 1e-8) -> KernelL1:
    """∫ |d^k/dt^k p(t, x, y)| dy over the truncated 1-d domain.

    The reported tail bound dominates the discarded |y| > R mass:
    ∫_{|y|>R} mehler(s, x, y) dy <= erfc(R - |x|) uniformly in s, times the
    total |.|-mass of the k-th derivative of the subordination weight.
    """
    if t <= 0:
        raise ValueError("time t must be positive")
    if not 1 <= k <= 3:
        raise ValueError("kernel_derivative_l1 supports 1 <= k <= 3")
    x_pt = np.asarray([float(x)])
    R = _truncation_radius(x_pt)
    breaks = graded_breaks(-R, R, float(x), max(0.004, 0.5 * _min_sigma(t)))
    Y, wy = _tensor_panel_grid([breaks])
    vals = _ph_kernel_payload(t, x_pt, Y, 1, k, tol)
    value = float(np.dot(wy, np.abs(vals)))
    tail = derivative_weight_mass(t, k, tol=1e-8) * math.erfc(R - abs(x))
    return KernelL1(value=value, tail_bound=tail)
