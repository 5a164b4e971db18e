"""Quantum character and classical partition function of a P1-chain.

The character of the torus action on holomorphic sections is the finite
lattice sum Z(iH) = sum_{eta in Pi} e^{i <eta, H>} over the weight set Pi
(the lattice points of the twisted cube).  Its statistical-mechanics
counterpart is the Laplace transform of the cube's indicator,
Z_classical = integral over the cube of e^{-beta <eta, H>} d eta.  The
pairing uses coordinates: <eta, H> = sum_i n_i eps_i in the dual bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import coords, polytope

__all__ = [
    "TorusElement",
    "CharacterValue",
    "ZEstimate",
    "QuantumClassicalReport",
    "character",
    "classical_z",
    "moment_image_sample",
    "quantum_classical_report",
]


@dataclass(frozen=True)
class TorusElement:
    """Coordinates eps_i of H in the basis dual to the coordinate weights.

    ``beta`` is the inverse temperature; it enters the classical side (and
    the quantum/classical comparison report) only.
    """

    eps: tuple[float, ...]
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(float(e) for e in self.eps))
        if not all(np.isfinite(self.eps)):
            raise ValueError("torus element coordinates must be finite")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class CharacterValue:
    value: complex
    count: int


@dataclass(frozen=True)
class ZEstimate:
    value: float
    stderr: float | None
    method: str
    samples: int | None = None
    seed: int | None = None


def _check_dim(spec, h):
    if len(h.eps) != spec.ell:
        raise ValueError(f"torus element has {len(h.eps)} coordinates, spec needs {spec.ell}")


def character(spec, h: TorusElement) -> CharacterValue:
    """Z(iH) = sum over the weight set of e^{i sum_j n_j eps_j}."""
    _check_dim(spec, h)
    points = polytope.lattice_points(spec)
    eps = np.asarray(h.eps)
    value = complex(np.exp(1j * (np.asarray(points, dtype=float) @ eps)).sum())
    return CharacterValue(value=value, count=len(points))


def classical_z(spec, h: TorusElement, method="quadrature",
                samples=1_000_000, seed=0) -> ZEstimate:
    """Laplace transform of the cube indicator: integral of e^{-beta <eta, H>}."""
    _check_dim(spec, h)
    eps = np.asarray(h.eps)
    beta = h.beta
    if method == "quadrature":
        value = polytope.iterated_cube_quadrature(
            spec, lambda p: np.exp(-beta * float(p @ eps)))
        return ZEstimate(value=value, stderr=None, method=method)
    if method == "monte-carlo":
        est, err = polytope.monte_carlo_cube_integral(
            spec, lambda pts: np.exp(-beta * (pts @ eps)), samples, seed)
        return ZEstimate(value=est, stderr=err, method=method,
                         samples=samples, seed=seed)
    raise ValueError(f"unknown classical method {method!r}")


def moment_image_sample(spec, samples, seed, tilde_range=30.0):
    """Sample the moment-map image by pushing uniform tilde points through J.

    Returns an array of shape (samples, ell); for positive specs every row
    satisfies the twisted-cube inequalities.
    """
    rng = np.random.default_rng(seed)
    tts = rng.uniform(-tilde_range, tilde_range, size=(samples, spec.ell))
    return np.array([coords.action_vars(spec, tt) for tt in tts])


@dataclass(frozen=True)
class QuantumClassicalReport:
    """Raw lattice-sum vs cube-integral comparison at a common Boltzmann weight.

    Both sides use e^{-beta <eta, H>}; the gap is reported uncorrected (no
    curvature-class correction factor is applied).
    """

    quantum: float
    classical: float
    gap: float
    lattice_count: int
    volume: float
    beta: float
    eps: tuple[float, ...]


def quantum_classical_report(spec, h: TorusElement) -> QuantumClassicalReport:
    _check_dim(spec, h)
    points = np.asarray(polytope.lattice_points(spec), dtype=float)
    eps = np.asarray(h.eps)
    quantum = float(np.exp(-h.beta * (points @ eps)).sum())
    classical = classical_z(spec, h, method="quadrature").value
    vol = polytope.volume(spec).value
    return QuantumClassicalReport(
        quantum=quantum, classical=classical, gap=quantum - classical,
        lattice_count=len(points), volume=vol, beta=h.beta, eps=h.eps)
