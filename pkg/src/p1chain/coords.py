"""Closed-form coordinate changes, potential, action variables, and curvature.

Log-radial coordinates: tau_i = log r_i are attached to the chain's affine
coordinates z_i = r_i e^{i phi_i}, and tilde coordinates tau~_i = log r~_i
to the untwisted per-stage coordinates.  The two are related triangularly:

    tau_i = tau~_i + sum_{j>i} (c_ji / 2) K(tau~_j)

with the scalar potential K(t) = log(1 + e^{2t}).  The chain's potential is
K_total = sum_i l_i K(tau~_i); the action variables J are half its gradient
in tau and obey the forward recursion J_j = J(tau~_j) (l_j - L_j) with
L_j = sum_{i<j} c_ji J_i.

Angle variables play no role here and are carried by callers when needed.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

__all__ = [
    "radial_factor",
    "logistic_potential",
    "logistic_action",
    "logistic_curvature",
    "tau_from_tilde",
    "tilde_from_tau",
    "kahler_potential",
    "action_vars",
    "action_from_tau",
    "hessian",
    "det_identity_residual",
]

FD_STEP = 1e-5


def radial_factor(r):
    """a(r) = 1 + r^2, the squared norm gain of one lower-unipotent factor."""
    return 1.0 + np.asarray(r) ** 2


def logistic_potential(tau):
    """K(tau) = log(1 + e^{2 tau}), evaluated stably for large |tau|."""
    tau = np.asarray(tau, dtype=float)
    return np.where(tau > 0, 2.0 * tau + np.log1p(np.exp(-2.0 * np.abs(tau))),
                    np.log1p(np.exp(-2.0 * np.abs(tau))))


def logistic_action(tau):
    """J(tau) = e^{2 tau} / (1 + e^{2 tau}) = (1/2) K'(tau), in (0, 1)."""
    return expit(2.0 * np.asarray(tau, dtype=float))


def logistic_curvature(tau):
    """K''(tau) = 4 J(tau) (1 - J(tau))."""
    j = logistic_action(tau)
    return 4.0 * j * (1.0 - j)


def _as_vector(spec, x, name):
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.ell,):
        raise ValueError(f"{name} must have shape ({spec.ell},), got {x.shape}")
    return x


def tau_from_tilde(spec, tau_tilde):
    """tau_i = tau~_i + sum_{j>i} (c_ji/2) K(tau~_j); the top index is fixed."""
    tt = _as_vector(spec, tau_tilde, "tau_tilde")
    pot = logistic_potential(tt)
    tau = tt.copy()
    for i in range(1, spec.ell + 1):
        for j in range(i + 1, spec.ell + 1):
            c = spec.twist(j, i)
            if c:
                tau[i - 1] += 0.5 * c * pot[j - 1]
    return tau


def tilde_from_tau(spec, tau):
    """Exact inverse of :func:`tau_from_tilde`, solved from the top index down."""
    tau = _as_vector(spec, tau, "tau")
    tt = tau.copy()
    pot = np.zeros(spec.ell)
    for i in range(spec.ell, 0, -1):
        for j in range(i + 1, spec.ell + 1):
            c = spec.twist(j, i)
            if c:
                tt[i - 1] -= 0.5 * c * pot[j - 1]
        pot[i - 1] = logistic_potential(tt[i - 1])
    return tt


def kahler_potential(spec, tau_tilde):
    """K_total = sum_i l_i K(tau~_i)."""
    tt = _as_vector(spec, tau_tilde, "tau_tilde")
    return float(np.dot(spec.weights, logistic_potential(tt)))


def action_vars(spec, tau_tilde):
    """Action variables J from the forward recursion J_j = J~_j (l_j - L_j).

    J equals half the gradient of the potential with respect to tau, and is
    normalized to vanish where the stage coordinate vanishes (tau~ -> -inf).
    """
    tt = _as_vector(spec, tau_tilde, "tau_tilde")
    jt = logistic_action(tt)
    j_vars = np.empty(spec.ell)
    for j in range(1, spec.ell + 1):
        load = 0.0
        for i in range(1, j):
            c = spec.twist(j, i)
            if c:
                load += c * j_vars[i - 1]
        j_vars[j - 1] = jt[j - 1] * (spec.weights[j - 1] - load)
    return j_vars


def action_from_tau(spec, tau):
    """Action variables as a function of the tau coordinates."""
    return action_vars(spec, tilde_from_tau(spec, tau))


def hessian(spec, tau, step=FD_STEP):
    """Matrix dJ_j / dtau_i = (1/2) d^2 K_total / dtau_i dtau_j.

    Central finite differences of the exact action recursion; symmetric up
    to O(step^2).
    """
    tau = _as_vector(spec, tau, "tau")
    ell = spec.ell
    mat = np.empty((ell, ell))
    for i in range(ell):
        bump = np.zeros(ell)
        bump[i] = step
        mat[i] = (action_from_tau(spec, tau + bump) - action_from_tau(spec, tau - bump)) / (2.0 * step)
    return mat


def det_identity_residual(spec, tau):
    """Relative gap between det(dJ/dtau) and prod_j (l_j - L_j) (1/2) K''(tau~_j).

    The determinant factorizes because the Jacobian between tau and tau~ is
    unitriangular and each J_j depends on tau~_i only for i <= j.
    """
    tau = _as_vector(spec, tau, "tau")
    tt = tilde_from_tau(spec, tau)
    j_vars = action_vars(spec, tt)
    prod = 1.0
    for j in range(1, spec.ell + 1):
        load = sum(spec.twist(j, i) * j_vars[i - 1] for i in range(1, j))
        prod *= (spec.weights[j - 1] - load) * 0.5 * logistic_curvature(tt[j - 1])
    det = float(np.linalg.det(hessian(spec, tau)))
    return abs(det - prod) / max(1.0, abs(prod))
