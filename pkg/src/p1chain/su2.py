"""2x2 matrix decompositions used as a numerical oracle for the chain recursions.

Two factorizations of unimodular complex 2x2 matrices are provided:

* :func:`iwasawa` -- g = u * b with u special unitary and b upper
  triangular whose diagonal part diag(t, 1/t) has t real positive.  Valid
  everywhere.
* :func:`gauss` -- g = lower-unipotent * diagonal * upper-unipotent.
  Valid only when the upper-left entry is nonzero (i.e. away from the
  point at infinity of the Riemann sphere the matrix group acts on).

:func:`chain_tilde_oracle` threads these factorizations through the stages
of a P1-chain to compute the tilde coordinates by brute matrix algebra,
without the closed-form recursion of :mod:`p1chain.coords`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PointAtInfinityError",
    "IwasawaParts",
    "GaussParts",
    "lower_unipotent",
    "upper_unipotent",
    "positive_diag",
    "reflection",
    "random_unimodular",
    "iwasawa",
    "gauss",
    "diagonal_gain_residual",
    "chain_tilde_oracle",
]

# effectively-zero threshold: the factorization is undefined only at the
# point at infinity itself, and legitimate chain gains can be very small
_SINGULAR_TOL = 1e-300


class PointAtInfinityError(ValueError):
    """Triangular (Gauss) factorization requested at the point at infinity."""


def lower_unipotent(z) -> np.ndarray:
    return np.array([[1.0, 0.0], [z, 1.0]], dtype=complex)


def upper_unipotent(z) -> np.ndarray:
    return np.array([[1.0, z], [0.0, 1.0]], dtype=complex)


def positive_diag(t) -> np.ndarray:
    if not t > 0:
        raise ValueError(f"diagonal parameter must be positive, got {t}")
    return np.array([[t, 0.0], [0.0, 1.0 / t]], dtype=complex)


def reflection() -> np.ndarray:
    """The fixed unitary representative of the coordinate flip z -> -1/z."""
    return np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)


def random_unimodular(rng) -> np.ndarray:
    """Random complex 2x2 matrix rescaled to determinant one."""
    while True:
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        if abs(det) > 1e-3:
            return g / np.sqrt(det)


@dataclass(frozen=True)
class IwasawaParts:
    """g = u @ diag(t, 1/t) @ [[1, n], [0, 1]] with u in SU(2) and t > 0."""

    u: np.ndarray
    t: float
    n: complex

    def assemble(self) -> np.ndarray:
        return self.u @ positive_diag(self.t) @ upper_unipotent(self.n)


@dataclass(frozen=True)
class GaussParts:
    """g = [[1, 0], [v, 1]] @ diag(t, 1/t) @ [[1, n], [0, 1]], t != 0."""

    v_lower: complex
    t: complex
    n: complex

    def assemble(self) -> np.ndarray:
        d = np.array([[self.t, 0.0], [0.0, 1.0 / self.t]], dtype=complex)
        return lower_unipotent(self.v_lower) @ d @ upper_unipotent(self.n)


def _check_unimodular(g: np.ndarray) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {g.shape}")
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if abs(det - 1.0) > 1e-6:
        raise ValueError(f"matrix is not unimodular: det = {det}")
    return g


def iwasawa(g) -> IwasawaParts:
    """Unitary-times-triangular factorization with positive diagonal part.

    Gram-Schmidt on the columns: t is the norm of the first column, the
    unitary part is completed from the normalized first column so that its
    determinant is one.
    """
    g = _check_unimodular(g)
    col = g[:, 0]
    t = float(np.sqrt((col.conj() * col).sum().real))
    a, b = col / t
    u = np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)
    upper = u.conj().T @ g
    n = complex(upper[0, 1] / t)
    return IwasawaParts(u=u, t=t, n=n)


def gauss(g) -> GaussParts:
    """Lower-unipotent / diagonal / upper-unipotent factorization.

    Undefined when the upper-left entry vanishes (the group element moves
    the base point to the point at infinity).
    """
    g = _check_unimodular(g)
    a = g[0, 0]
    if abs(a) < _SINGULAR_TOL:
        raise PointAtInfinityError(
            "factorization undefined: the element lies over the point at infinity"
        )
    return GaussParts(v_lower=complex(g[1, 0] / a), t=complex(a), n=complex(g[0, 1] / a))


def diagonal_gain_residual(a_pos: float, z: complex) -> float:
    """Residual of the diagonal-gain identity behind the chain recursion.

    Pushing a positive diagonal diag(a, 1/a) through a lower-unipotent
    factor rescales the unipotent parameter to a^{-2} z and multiplies the
    Iwasawa diagonal by (1 + |a^{-2} z|^2)^{1/2}.  Returns the absolute
    difference between that prediction and the matrix factorization.
    """
    if not a_pos > 0:
        raise ValueError(f"a_pos must be positive, got {a_pos}")
    g = positive_diag(a_pos) @ lower_unipotent(z)
    t_computed = iwasawa(g).t
    r_scaled = abs(z) / a_pos**2
    t_predicted = a_pos * np.sqrt(1.0 + r_scaled**2)
    return abs(t_computed - t_predicted)


def chain_tilde_oracle(spec, z) -> np.ndarray:
    """Tilde coordinates of a chain point, computed stage by stage with matrices.

    Walks the chain from index ell down to 1.  At each stage the positive
    diagonal accumulated from the higher stages (pushed through the
    connecting homomorphisms via the twist integers) is multiplied against
    the stage's lower-unipotent factor; the Gauss factorization of that
    product yields the tilde coordinate, and the Iwasawa factorization
    yields the stage's diagonal gain.  No closed-form recursion is used.
    """
    z = np.asarray(z, dtype=complex)
    if z.shape != (spec.ell,):
        raise ValueError(f"expected {spec.ell} coordinates, got shape {z.shape}")
    ell = spec.ell
    gains = np.ones(ell + 1)
    z_tilde = np.empty(ell, dtype=complex)
    for j in range(ell, 0, -1):
        d = 1.0
        for k in range(j + 1, ell + 1):
            c = spec.twist(k, j)
            if c:
                d *= gains[k] ** (0.5 * c)
        m = positive_diag(d) @ lower_unipotent(-z[j - 1])
        # sign convention: the tilde coordinate keeps the phase of z_j
        z_tilde[j - 1] = -gauss(m).v_lower
        gains[j] = iwasawa(m).t / d
    return z_tilde
