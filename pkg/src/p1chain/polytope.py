"""The twisted-cube moment polytope of a P1-chain.

The image of the moment map is the polytope

    0 <= J_j <= l_j - L_j,      L_j = sum_{i<j} c_ji J_i,

whenever the positivity criterion min J_j >= 0 holds for every j.  This
module computes the global min/max tables, the positivity predicate, the
lattice points (the weight set), the vertices, the volume, and a convex
conjugate membership cross-check driven by the strictly convex potential.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import coords

__all__ = [
    "NotPositiveError",
    "TwistedCube",
    "VolumeEstimate",
    "minmax_table",
    "is_positive",
    "twisted_cube",
    "lattice_points",
    "vertices",
    "volume",
    "iterated_cube_quadrature",
    "monte_carlo_cube_integral",
    "conjugate_membership",
]

_VERTEX_TOL = 1e-9


class NotPositiveError(ValueError):
    """Operation requires the positivity criterion, which the spec fails."""


@dataclass(frozen=True)
class TwistedCube:
    """Cached global extrema of the action variables and the positivity flag."""

    spec: object
    min_j: np.ndarray
    max_j: np.ndarray
    positive: bool


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    stderr: float | None
    method: str
    samples: int | None = None
    seed: int | None = None


def minmax_table(spec):
    """Exact global extrema of each J_j over the closed chain.

    Each J_j is multilinear in the per-stage logistic factors J~_i (which
    range over [0, 1] independently), so its extremes over the chain are
    attained at corners of the unit cube in those factors.  The 2^ell
    corners are enumerated directly.

    A sign-split interval recursion (replace each earlier J_i by the end
    of its own range selected by the sign of c_ji) gives the same answer
    whenever each stage feeds only one later stage, but is conservative
    when a coordinate reaches a later stage along two paths; the corner
    enumeration stays tight there.
    """
    ell = spec.ell
    min_j = np.full(ell, np.inf)
    max_j = np.full(ell, -np.inf)
    j_vals = np.empty(ell)
    for corner in itertools.product((0.0, 1.0), repeat=ell):
        for j in range(1, ell + 1):
            load = 0.0
            for i in range(1, j):
                c = spec.twist(j, i)
                if c:
                    load += c * j_vals[i - 1]
            j_vals[j - 1] = corner[j - 1] * (spec.weights[j - 1] - load)
        np.minimum(min_j, j_vals, out=min_j)
        np.maximum(max_j, j_vals, out=max_j)
    return min_j, max_j


def is_positive(spec) -> bool:
    """True iff min J_j >= 0 for every j (all weights nonzero assumed)."""
    min_j, _ = minmax_table(spec)
    return bool(np.all(min_j >= 0.0))


def twisted_cube(spec) -> TwistedCube:
    min_j, max_j = minmax_table(spec)
    return TwistedCube(spec=spec, min_j=min_j, max_j=max_j,
                       positive=bool(np.all(min_j >= 0.0)))


def _require_positive(spec):
    if not is_positive(spec):
        raise NotPositiveError("spec not positive")


def _upper_bound(spec, j, prefix):
    ub = float(spec.weights[j - 1])
    for i in range(1, j):
        c = spec.twist(j, i)
        if c:
            ub -= c * prefix[i - 1]
    return ub


def lattice_points(spec):
    """All integer points of the twisted cube, in lexicographic order."""
    _require_positive(spec)
    points = []

    def recurse(prefix):
        j = len(prefix) + 1
        ub = _upper_bound(spec, j, prefix)
        top = int(np.floor(ub + 1e-9))
        for n in range(0, top + 1):
            if j == spec.ell:
                points.append(tuple(prefix) + (n,))
            else:
                recurse(prefix + [n])

    recurse([])
    return points


def vertices(spec):
    """The (at most 2^ell) vertices J_j in {0, l_j - L_j}, deduplicated."""
    _require_positive(spec)
    out = []
    seen = set()

    def recurse(prefix):
        j = len(prefix) + 1
        ub = _upper_bound(spec, j, prefix)
        for value in (0.0, ub):
            point = prefix + [value]
            if j == spec.ell:
                key = tuple(round(v / _VERTEX_TOL) for v in point)
                if key not in seen:
                    seen.add(key)
                    out.append(np.array(point))
            else:
                recurse(point)
            if abs(ub) <= _VERTEX_TOL:
                break  # collapsed facet: both choices coincide

    recurse([])
    return out


def iterated_cube_quadrature(spec, integrand, rel_tol=1e-8):
    """Iterated adaptive 1-D quadrature of ``integrand(point)`` over the cube.

    The innermost integral runs over the last coordinate, whose bound
    depends on all earlier ones; integrands used here are smooth.
    """
    _require_positive(spec)

    def level(j, prefix):
        ub = _upper_bound(spec, j, prefix)
        if ub <= 0.0:
            return 0.0
        if j == spec.ell:
            f = lambda x: integrand(np.array(prefix + [x]))
        else:
            f = lambda x: level(j + 1, prefix + [x])
        value, _ = quad(f, 0.0, ub, epsrel=rel_tol, epsabs=0.0, limit=200)
        return value

    return level(1, [])


def monte_carlo_cube_integral(spec, integrand, samples, seed):
    """Rejection sampling in the bounding box; returns (estimate, stderr)."""
    _require_positive(spec)
    min_j, max_j = minmax_table(spec)
    widths = max_j - min_j
    box_vol = float(np.prod(widths))
    rng = np.random.default_rng(seed)
    pts = min_j + rng.random((samples, spec.ell)) * widths
    inside = np.ones(samples, dtype=bool)
    for j in range(1, spec.ell + 1):
        ub = np.full(samples, float(spec.weights[j - 1]))
        for i in range(1, j):
            c = spec.twist(j, i)
            if c:
                ub -= c * pts[:, i - 1]
        inside &= (pts[:, j - 1] >= 0.0) & (pts[:, j - 1] <= ub)
    values = np.where(inside, integrand(pts), 0.0)
    est = box_vol * float(values.mean())
    stderr = box_vol * float(values.std(ddof=1)) / np.sqrt(samples)
    return est, stderr


def volume(spec, method="recursive-quadrature", samples=1_000_000, seed=0):
    """Euclidean volume of the twisted cube."""
    if method == "recursive-quadrature":
        value = iterated_cube_quadrature(spec, lambda p: 1.0)
        return VolumeEstimate(value=value, stderr=None, method=method)
    if method == "monte-carlo":
        est, err = monte_carlo_cube_integral(
            spec, lambda p: np.ones(p.shape[0]), samples, seed)
        return VolumeEstimate(value=est, stderr=err, method=method,
                              samples=samples, seed=seed)
    raise ValueError(f"unknown volume method {method!r}")


def conjugate_membership(spec, eta, grad_tol=1e-8, max_iter=80, bound=40.0):
    """Classify eta via the concave maximization of 2<eta, tau> - K_total(tau).

    The potential is strictly convex in tau, so the maximization has a
    stationary point exactly when eta lies in the open moment set; there
    the gradient 2(eta - J(tau)) can be driven to zero by damped Newton
    steps.  Escape beyond ``bound`` or budget exhaustion classifies the
    point as "boundary-or-exterior" (the two cases are numerically
    indistinguishable: the maximizer runs away in both).
    """
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (spec.ell,):
        raise ValueError(f"eta must have shape ({spec.ell},), got {eta.shape}")
    tau = np.zeros(spec.ell)
    for _ in range(max_iter):
        gap = eta - coords.action_from_tau(spec, tau)
        if 2.0 * np.linalg.norm(gap) < grad_tol:
            return "interior"
        hess = coords.hessian(spec, tau)
        hess = 0.5 * (hess + hess.T)
        try:
            step = np.linalg.solve(hess, gap)
        except np.linalg.LinAlgError:
            step = gap
        if not np.all(np.isfinite(step)):
            step = gap
        norm = np.linalg.norm(step, ord=np.inf)
        if norm > 5.0:
            step *= 5.0 / norm
        tau = tau + step
        if np.linalg.norm(tau, ord=np.inf) > bound:
            return "boundary-or-exterior"
    return "boundary-or-exterior"
