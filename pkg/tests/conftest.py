"""Shared fixtures: the standing test specs and a brute-force lattice scan."""

import numpy as np
import pytest

from p1chain.core import ChainSpec

# Positive chains of assorted lengths, twist signs, and weights.
POSITIVE_SPECS = [
    ChainSpec.make(1, {}, (2,)),
    ChainSpec.make(1, {}, (3,)),
    ChainSpec.make(2, {(2, 1): 1}, (3, 5)),
    ChainSpec.make(2, {}, (2, 2)),
    ChainSpec.make(2, {(2, 1): -2}, (2, 3)),
    ChainSpec.make(3, {(2, 1): 1, (3, 1): 1, (3, 2): 1}, (2, 4, 8)),
    ChainSpec.make(4, {(2, 1): 1, (3, 2): -1, (4, 3): 2}, (1, 2, 2, 9)),
]

NON_POSITIVE_SPECS = [
    ChainSpec.make(2, {(2, 1): 2}, (3, 5)),
    ChainSpec.make(1, {}, (-2,)),
]

WORKED_SPEC = POSITIVE_SPECS[2]  # ell=2, c_21=1, l=(3, 5)


def brute_force_lattice(spec, box_pad=1):
    """Integer points of the twisted cube by scanning a padded bounding box."""
    from p1chain.polytope import minmax_table

    min_j, max_j = minmax_table(spec)
    axes = [range(int(np.floor(min_j[k])) - box_pad,
                  int(np.ceil(max_j[k])) + box_pad + 1)
            for k in range(spec.ell)]
    points = []
    grids = np.meshgrid(*axes, indexing="ij")
    candidates = np.stack([g.ravel() for g in grids], axis=1)
    for cand in candidates:
        ok = True
        for j in range(1, spec.ell + 1):
            ub = spec.weights[j - 1]
            for i in range(1, j):
                ub -= spec.twist(j, i) * cand[i - 1]
            if not (0 <= cand[j - 1] <= ub):
                ok = False
                break
        if ok:
            points.append(tuple(int(v) for v in cand))
    return sorted(points)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
