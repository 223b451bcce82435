"""Quadrature against the Gaussian measure and on semi-infinite intervals.

Two workhorses:

* tensorized Gauss-Hermite rules for integrals against
  dgamma(x) = e^{-|x|^2} / pi^{d/2} dx, and
* a deterministic adaptive panel integrator on a log-transformed axis for
  integrands on (0, oo) such as e^{-t^2/4s} s^{-3/2} or s^{beta-1} e^{-cs},
  which are smooth there but singular or slowly decaying on the raw axis.

All routines are pure; rules are immutable and safe to share.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, EvaluationError

SQRT_PI = math.sqrt(math.pi)

HALFLINE_TRANSFORMS = ("none", "log_unit_interval", "inverse_square")

# 15-point Gauss-Legendre local rule used by every panel integrator here.
_GL15_X, _GL15_W = np.polynomial.legendre.leggauss(15)

# Hard cap for the log axis; e^{+-_LOG_CAP} stays inside float64 range.
_LOG_CAP = 700.0


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights for ∫ e^{-x^2} f(x) dx plus adaptive-integration config.

    ``kind`` is ``"gauss_hermite"`` (nodes/weights populated) or
    ``"adaptive_halfline"`` (a configuration carrier with empty node lists).
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str = "gauss_hermite"
    order: int = 0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 60

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=float))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if self.kind not in ("gauss_hermite", "adaptive_halfline"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if nodes.shape != weights.shape:
            raise ValueError("nodes and weights must have the same length")
        if weights.size and np.any(weights <= 0.0):
            raise ValueError("quadrature weights must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "order", int(self.order) or nodes.size)


def gauss_hermite_rule(m: int) -> QuadratureRule:
    """Gauss-Hermite rule with ``m`` nodes for ∫_R e^{-x^2} f(x) dx.

    Deterministic for fixed ``m``; exact for polynomials of degree <= 2m-1.
    """
    if m < 1:
        raise ValueError("node count m must be >= 1")
    nodes, weights = np.polynomial.hermite.hermgauss(m)
    return QuadratureRule(nodes=nodes, weights=weights, kind="gauss_hermite", order=m)


def default_rule(m: int = 64) -> QuadratureRule:
    return gauss_hermite_rule(m)


def halfline_rule(rel_tol: float = 1e-10, abs_tol: float = 1e-12,
                  max_subdivisions: int = 60) -> QuadratureRule:
    """Configuration carrier for the adaptive semi-infinite integrator."""
    return QuadratureRule(nodes=np.empty(0), weights=np.empty(0),
                          kind="adaptive_halfline", order=15,
                          rel_tol=rel_tol, abs_tol=abs_tol,
                          max_subdivisions=max_subdivisions)


_TENSOR_CACHE: dict = {}


def tensor_nodes(rule: QuadratureRule, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensorize a 1-d rule: points of shape (m^d, d) and product weights (m^d,)."""
    if rule.kind != "gauss_hermite":
        raise ValueError("tensor grids require a gauss_hermite rule")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if d > 3:
        raise ValueError("tensor grids are capped at d <= 3")
    key = (rule.nodes.tobytes(), d)
    hit = _TENSOR_CACHE.get(key)
    if hit is not None:
        return hit
    axes = np.meshgrid(*([rule.nodes] * d), indexing="ij")
    pts = np.stack([a.ravel() for a in axes], axis=-1)
    w = np.ones(pts.shape[0])
    for i in range(d):
        w *= rule.weights[np.unravel_index(np.arange(pts.shape[0]), (rule.order,) * d)[i]]
    pts.setflags(write=False)
    w.setflags(write=False)
    if len(_TENSOR_CACHE) > 32:
        _TENSOR_CACHE.clear()
    _TENSOR_CACHE[key] = (pts, w)
    return pts, w


def _eval_vectorized(f, x: np.ndarray) -> np.ndarray:
    """Call ``f`` on a batch, falling back to a per-point loop."""
    try:
        vals = np.asarray(f(x), dtype=float)
    except Exception:
        vals = None
    if vals is not None:
        if vals.shape == ():
            return np.full(x.shape[0], float(vals))
        if vals.shape[0] == x.shape[0]:
            return vals
    out = [f(x[i]) for i in range(x.shape[0])]
    return np.asarray(out, dtype=float)


def integrate_gaussian(f, d: int, rule: QuadratureRule | None = None) -> float:
    """Approximate ∫_{R^d} f dgamma by the tensorized Gauss-Hermite rule.

    ``f`` receives points of shape (n, d) and should return shape (n,);
    scalar-only callables are handled by a fallback loop.
    """
    if rule is None:
        rule = default_rule()
    pts, w = tensor_nodes(rule, d)
    vals = _eval_vectorized(f, pts)
    if vals.shape != (pts.shape[0],):
        raise ValueError(f"integrand returned shape {vals.shape}, expected ({pts.shape[0]},)")
    bad = ~np.isfinite(vals)
    if np.any(bad):
        node = pts[np.argmax(bad)]
        raise EvaluationError(f"integrand is not finite at node {node.tolist()}", node=node)
    return float(w @ vals) / math.pi ** (d / 2.0)


# ----------------------------------------------------------------------------
# Composite Gauss-Legendre panels (fixed grids on finite intervals)
# ----------------------------------------------------------------------------

def gauss_legendre_panels(breakpoints) -> tuple[np.ndarray, np.ndarray]:
    """15-point Gauss-Legendre nodes/weights on each panel of a partition."""
    b = np.asarray(breakpoints, dtype=float)
    if b.ndim != 1 or b.size < 2 or np.any(np.diff(b) <= 0):
        raise ValueError("breakpoints must be strictly increasing with >= 2 entries")
    half = 0.5 * np.diff(b)
    mid = 0.5 * (b[:-1] + b[1:])
    nodes = (mid[:, None] + half[:, None] * _GL15_X).ravel()
    weights = (half[:, None] * _GL15_W).ravel()
    return nodes, weights


def uniform_breaks(lo: float, hi: float, max_width: float) -> np.ndarray:
    n = max(1, int(math.ceil((hi - lo) / max_width)))
    return np.linspace(lo, hi, n + 1)


def graded_breaks(lo: float, hi: float, center: float, inner: float,
                  growth: float = 1.5, max_width: float = 1.0) -> np.ndarray:
    """Panel breakpoints on [lo, hi] graded geometrically away from ``center``.

    Panel widths start at ``inner`` next to the center and grow by ``growth``
    up to ``max_width``; used for kernels with a near-singular spike.
    """
    if not lo <= center <= hi:
        center = min(max(center, lo), hi)
    pts = [center]
    w = inner
    x = center
    while x < hi:
        x = min(x + w, hi)
        pts.append(x)
        w = min(w * growth, max_width)
    w = inner
    x = center
    left = []
    while x > lo:
        x = max(x - w, lo)
        left.append(x)
        w = min(w * growth, max_width)
    return np.asarray(left[::-1] + pts)


# ----------------------------------------------------------------------------
# Adaptive integration over (0, oo) on the log axis
# ----------------------------------------------------------------------------

def _weight_payload(vals: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Multiply payload values (n, ...) by per-node weights (n,)."""
    return vals * w.reshape(w.shape + (1,) * (vals.ndim - 1))


def _gl15_panel(G, a: float, b: float):
    h = 0.5 * (b - a)
    x = 0.5 * (a + b) + h * _GL15_X
    vals = np.asarray(G(x), dtype=float)
    if vals.shape == ():
        vals = np.full(15, float(vals))
    if not np.all(np.isfinite(vals)):
        flat = np.isfinite(vals).reshape(vals.shape[0], -1).all(axis=1)
        raise EvaluationError(
            f"integrand is not finite near log-axis point u={x[np.argmin(flat)]:.6g}",
            node=x[np.argmin(flat)],
        )
    return h * np.tensordot(_GL15_W, vals, axes=(0, 0))


def _adaptive_interval(G, a: float, b: float, abs_budget: float, max_depth: int):
    """Dyadic bisection with the fixed 15-point rule; deterministic order.

    Returns (value, err_estimate, exhausted).
    """
    total = None
    err = 0.0
    exhausted = False
    stack = [(a, b, _gl15_panel(G, a, b), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl15_panel(G, lo, mid)
        right = _gl15_panel(G, mid, hi)
        better = left + right
        delta = float(np.max(np.abs(better - whole)))
        if delta <= abs_budget * (hi - lo) / (b - a) or depth >= max_depth:
            if depth >= max_depth and delta > abs_budget * (hi - lo) / (b - a):
                exhausted = True
            total = better if total is None else total + better
            err += delta
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return total, err, exhausted


def integrate_halfline(g, transform: str = "none", tol: float = 1e-10, *,
                       abs_tol: float = 1e-12, max_subdivisions: int = 60):
    """Adaptive integral of ``g`` over (0, oo) with an optional substitution.

    transform:
      * ``"none"``              -- integrate g(s) ds over (0, oo)
      * ``"log_unit_interval"`` -- integrate g(r) dr over (0, 1) via r = e^{-s}
      * ``"inverse_square"``    -- integrate g(s) ds over (0, oo) via s -> 1/s

    The working variable is mapped to the log axis, where the integrator uses
    dyadic bisection of fixed 15-point Gauss-Legendre panels, extending the
    domain outward until new blocks are negligible.  ``g`` may return a payload
    array (vectorized over its first axis); the error metric is then the max
    over payload components.  Subdivision order is deterministic.

    Raises ConvergenceError (carrying the best estimate and its error bound)
    if the subdivision or extension budget is exhausted first.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if transform not in HALFLINE_TRANSFORMS:
        raise ValueError(f"unknown transform {transform!r}; expected one of {HALFLINE_TRANSFORMS}")

    if transform == "none":
        def G(u):
            s = np.exp(u)
            return _payload_times(g, s, s)
    elif transform == "log_unit_interval":
        # ∫_0^1 g(r) dr = ∫_0^infty g(e^{-s}) e^{-s} ds, then s = e^u.
        # r is clamped strictly inside (0, 1): near r = 0 the weight s e^{-s}
        # underflows first, and near r = 1 double precision cannot separate
        # e^{-s} from 1 anyway (integrands singular at r = 1 are resolved to
        # about 1e-8; work in the s variable directly for better).
        _R_TOP = np.nextafter(1.0, 0.0)

        def G(u):
            s = np.exp(u)
            r = np.clip(np.exp(-s), np.finfo(float).tiny, _R_TOP)
            return _payload_times(g, r, s * np.exp(-s))
    else:  # inverse_square: ∫_0^infty g(s) ds = ∫_0^infty g(1/v) v^{-2} dv, v = e^u
        def G(u):
            return _payload_times(g, np.exp(-u), np.exp(-u))

    budget = max(abs_tol, tol)
    value, err, exhausted = _adaptive_interval(G, -6.0, 6.0, 0.5 * budget, max_subdivisions)

    # Extend outward in width-4 blocks until two consecutive blocks are quiet.
    for direction in (+1, -1):
        edge = 6.0 * direction
        quiet = 0
        while quiet < 2:
            nxt = edge + 4.0 * direction
            if abs(nxt) > _LOG_CAP:
                raise ConvergenceError(
                    "half-line extension reached the log-axis cap without the "
                    "integrand decaying; integral may diverge",
                    estimate=_maybe_scalar(value),
                    error_bound=err,
                )
            lo, hi = (edge, nxt) if direction > 0 else (nxt, edge)
            v, e, ex = _adaptive_interval(G, lo, hi, 0.25 * budget, max_subdivisions)
            value = value + v
            err += e
            exhausted = exhausted or ex
            scale = float(np.max(np.abs(value)))
            if float(np.max(np.abs(v))) <= 0.05 * (abs_tol + tol * (1.0 + scale)):
                quiet += 1
            else:
                quiet = 0
            edge = nxt

    scale = float(np.max(np.abs(value)))
    bound = abs_tol + tol * (1.0 + scale)
    if exhausted and err > bound:
        raise ConvergenceError(
            f"subdivision budget exhausted (err~{err:.3g} > {bound:.3g})",
            estimate=_maybe_scalar(value),
            error_bound=err,
        )
    return _maybe_scalar(value)


def _payload_times(g, s: np.ndarray, jac: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(g(s), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or (vals.shape != () and vals.shape[0] != s.shape[0]):
        vals = np.asarray([g(float(si)) for si in s], dtype=float)
    if vals.shape == ():
        vals = np.full(s.shape, float(vals))
    return _weight_payload(vals, jac)


def _maybe_scalar(value):
    arr = np.asarray(value)
    if arr.shape == ():
        return float(arr)
    return arr
