"""Symplectic and toric invariants of P1-chains.

Submodules:

* :mod:`p1chain.core` -- abstract integer chain specification (parse,
  validate, serialize).
* :mod:`p1chain.su2` -- 2x2 matrix factorizations used as a numerical
  oracle for the coordinate recursions.
* :mod:`p1chain.coords` -- coordinate changes, potential, action
  variables, curvature matrix.
* :mod:`p1chain.polytope` -- twisted-cube moment polytope: positivity,
  lattice points, vertices, volume, conjugate membership.
* :mod:`p1chain.partition` -- quantum character and classical partition
  function.
* :mod:`p1chain.pathint` -- discretized path integral and its regularized
  numerical evaluation.
* :mod:`p1chain.cli` -- command-line front end.
"""

from .core import ChainSpec, ChainSpecError, Diagnostics, parse_chain_spec, serialize_chain_spec, validate
from .polytope import NotPositiveError

__all__ = [
    "ChainSpec",
    "ChainSpecError",
    "Diagnostics",
    "NotPositiveError",
    "parse_chain_spec",
    "serialize_chain_spec",
    "validate",
]

__version__ = "0.1.0"
