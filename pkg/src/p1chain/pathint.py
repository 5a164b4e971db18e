"""Discretized path integral for the character, with a removable regularization.

The trace of the evolution generated by a Hamiltonian linear in the action
variables is discretized on N time slices.  Integrating the angle
variables produces a chain of delta constraints on the action variables;
summing over the integer winding shifts 2*pi*n of the angle endpoint and
applying Poisson summation collapses the result to the lattice-sum
character, independently of N.  :func:`analytic_reduce` performs that
collapse exactly; :func:`numeric_path_integral` evaluates the regularized
nested integrals for a length-1 chain and converges to the same value.

Regularization choices (both removable limits):

* angle integrals are truncated to [-cutoff, cutoff], turning each delta
  into a Dirichlet kernel sin(cutoff * d) / (pi * d);
* the winding sum carries a Gaussian damping e^{-damping * n^2} and is
  truncated at |n| <= n_max;
* action integrals run against a continuous window equal to one on the
  closed action interval and falling to zero over a margin (cosine
  ramps), so boundary lattice points carry full weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polytope

__all__ = [
    "PathIntegralParams",
    "discretized_action",
    "analytic_reduce",
    "numeric_path_integral",
    "poisson_check",
]


@dataclass(frozen=True)
class PathIntegralParams:
    n_slices: int = 1
    n_max: int = 40
    phi_cutoff: float = 200.0
    damping: float = 1e-3
    quad_points: int = 800
    margin: float = 0.25

    def __post_init__(self):
        if self.n_slices < 1:
            raise ValueError("n_slices must be >= 1")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if not (self.phi_cutoff > 0 and self.damping > 0 and self.margin > 0):
            raise ValueError("phi_cutoff, damping, and margin must be positive")
        if self.quad_points < 2:
            raise ValueError("quad_points must be >= 2")


def discretized_action(spec, j_path, phi_path, h_coef) -> float:
    """Time-sliced action with the angle term integrated by parts.

    S = [J phi]_0^1 - sum_{k=0}^{N-1} (phi_k (J_{k+1} - J_k) + H J_k / N)
    for paths sampled at N+1 points.
    """
    if spec.ell != 1:
        raise ValueError("discretized action is defined for chains of length 1")
    j_path = np.asarray(j_path, dtype=float)
    phi_path = np.asarray(phi_path, dtype=float)
    if j_path.shape != phi_path.shape or j_path.ndim != 1 or j_path.size < 2:
        raise ValueError("J and phi paths must be 1-D arrays of equal length >= 2")
    n = j_path.size - 1
    boundary = j_path[-1] * phi_path[-1] - j_path[0] * phi_path[0]
    interior = float(np.dot(phi_path[:-1], np.diff(j_path)))
    hamiltonian = h_coef * float(j_path[:-1].sum()) / n
    return boundary - interior - hamiltonian


def analytic_reduce(spec, h, n_slices=1) -> complex:
    """Collapse the discretized trace exactly to the lattice-sum character.

    The angle integrals yield a delta chain identifying all action slices,
    and Poisson summation over the winding shifts turns the remaining
    interval integral into the sum over lattice points.  The value is
    independent of the slice count.
    """
    if n_slices < 1:
        raise ValueError("n_slices must be >= 1")
    if len(h.eps) != spec.ell:
        raise ValueError(f"torus element has {len(h.eps)} coordinates, spec needs {spec.ell}")
    points = np.asarray(polytope.lattice_points(spec), dtype=float)
    eps = np.asarray(h.eps)
    return complex(np.exp(1j * (points @ eps)).sum())


def _window(x, lo, hi, margin):
    """Continuous window: 1 on [lo, hi], cosine ramps to 0 over the margins."""
    g = np.ones_like(x)
    left = x < lo
    right = x > hi
    g[left] = 0.5 * (1.0 + np.cos(np.pi * (lo - x[left]) / margin))
    g[right] = 0.5 * (1.0 + np.cos(np.pi * (x[right] - hi) / margin))
    return g


def _dirichlet(d, cutoff):
    """Truncated-delta kernel: integral of e^{-i phi d} over |phi| <= cutoff, / 2 pi."""
    out = np.empty_like(d)
    small = np.abs(d) < 1e-14
    out[small] = cutoff / np.pi
    out[~small] = np.sin(cutoff * d[~small]) / (np.pi * d[~small])
    return out


def numeric_path_integral(spec, h, params: PathIntegralParams) -> complex:
    """Regularized evaluation of the discretized trace for a length-1 chain.

    The nested action integrals form a linear chain of one-dimensional
    Gauss-Legendre rules linked by Dirichlet kernels, so the cost is
    quadratic in ``quad_points`` per slice.  The closing constraint on the
    action endpoints is not imposed; it emerges from the kernels.
    """
    if spec.ell != 1:
        raise ValueError("numeric evaluator is restricted to chains of length 1")
    if len(h.eps) != 1:
        raise ValueError("torus element must have one coordinate")
    if params.n_slices > 3:
        raise ValueError("slice budget exceeded: n_slices must be <= 3")
    cube = polytope.twisted_cube(spec)
    if not cube.positive:
        raise polytope.NotPositiveError("spec not positive")
    lo = float(cube.min_j[0])
    hi = float(cube.max_j[0])
    eps = float(h.eps[0])
    n_slices = params.n_slices

    nodes, weights = np.polynomial.legendre.leggauss(params.quad_points)
    a, b = lo - params.margin, hi + params.margin
    x = 0.5 * (b - a) * nodes + 0.5 * (b + a)
    w = 0.5 * (b - a) * weights * _window(x, lo, hi, params.margin)

    kernel = _dirichlet(x[:, None] - x[None, :], params.phi_cutoff)
    phase = np.exp(1j * eps * x / n_slices)

    vec = w * phase  # J_0 integral, Hamiltonian phase attached
    for k in range(1, n_slices + 1):
        vec = kernel @ vec
        vec *= w * phase if k < n_slices else w  # J_N carries no Hamiltonian phase

    total = 0.0 + 0.0j
    for n in range(-params.n_max, params.n_max + 1):
        damp = np.exp(-params.damping * n * n)
        total += damp * complex(np.dot(np.exp(2j * np.pi * n * x), vec))
    return total


def poisson_check(l, h_coef, n_max=200, damping=1e-4, margin=0.05) -> complex:
    """Damped winding sum of windowed interval integrals, one coordinate.

    Returns sum_{|n| <= n_max} e^{-damping n^2} * integral over [0, l]
    (windowed) of e^{i eta (2 pi n + H)} d eta, which converges to the
    geometric sum over the integer points 0..l as the regulators are
    removed.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    ramp_nodes, ramp_weights = np.polynomial.legendre.leggauss(96)
    left_x = 0.5 * margin * ramp_nodes - 0.5 * margin      # [-margin, 0]
    right_x = 0.5 * margin * ramp_nodes + l + 0.5 * margin  # [l, l + margin]
    left_g = 0.5 * margin * ramp_weights * 0.5 * (1.0 + np.cos(np.pi * (-left_x) / margin))
    right_g = 0.5 * margin * ramp_weights * 0.5 * (1.0 + np.cos(np.pi * (right_x - l) / margin))

    total = 0.0 + 0.0j
    for n in range(-n_max, n_max + 1):
        omega = 2.0 * np.pi * n + h_coef
        if abs(omega) < 1e-12:
            middle = complex(l)
        else:
            middle = (np.exp(1j * omega * l) - 1.0) / (1j * omega)
        ramps = complex(np.dot(left_g, np.exp(1j * omega * left_x))
                        + np.dot(right_g, np.exp(1j * omega * right_x)))
        total += np.exp(-damping * n * n) * (middle + ramps)
    return total
