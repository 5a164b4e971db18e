"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the
per-criterion lines on success).
"""

import contextlib

import numpy as np
import pytest

from p1chain import coords, partition, pathint, polytope, su2
from p1chain.core import ChainSpec, random_chain_spec

from conftest import NON_POSITIVE_SPECS, POSITIVE_SPECS, WORKED_SPEC, brute_force_lattice

SEED = 20260823


@contextlib.contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {number}: {description}")
        raise
    print(f"PASS criterion {number}: {description}")


def test_criterion_01_matrix_oracle_agreement():
    with criterion(1, "matrix oracle vs closed-form tilde coordinates (rel 1e-9)"):
        rng = np.random.default_rng(SEED)
        worst = 0.0
        for _ in range(200):
            spec = random_chain_spec(rng, max_ell=4, max_twist=3, max_weight=6)
            for _ in range(50):
                tau = rng.uniform(-3.0, 3.0, spec.ell)
                phi = rng.uniform(0.0, 2.0 * np.pi, spec.ell)
                z = np.exp(tau + 1j * phi)
                z_tilde = su2.chain_tilde_oracle(spec, z)
                closed = np.exp(coords.tilde_from_tau(spec, tau))
                worst = max(worst, float(np.max(np.abs(np.abs(z_tilde) - closed) / closed)))
        assert worst < 1e-9, f"worst relative gap {worst:.3e}"


def test_criterion_02_diagonal_gain_residuals():
    with criterion(2, "diagonal-gain residual < 1e-10 on 1000 random pairs"):
        rng = np.random.default_rng(SEED + 1)
        for _ in range(1000):
            a = float(np.exp(rng.uniform(-3, 3)))
            z = complex(rng.normal(scale=3), rng.normal(scale=3))
            r = su2.diagonal_gain_residual(a, z)
            assert r < 1e-10, f"residual {r:.3e} at a={a}, z={z}"


def test_criterion_03_gradient_check():
    with criterion(3, "action variables = (1/2) grad of potential (FD, 1e-5)"):
        rng = np.random.default_rng(SEED + 2)
        h = 1e-5
        for spec in POSITIVE_SPECS:
            for _ in range(500):
                tau = rng.uniform(-3.0, 3.0, spec.ell)
                j_vars = coords.action_from_tau(spec, tau)
                for i in range(spec.ell):
                    bump = np.zeros(spec.ell)
                    bump[i] = h
                    fd = (coords.kahler_potential(spec, coords.tilde_from_tau(spec, tau + bump))
                          - coords.kahler_potential(spec, coords.tilde_from_tau(spec, tau - bump))) / (2 * h)
                    assert abs(j_vars[i] - 0.5 * fd) <= 1e-5


def test_criterion_04_determinant_identity():
    with criterion(4, "det dJ/dtau factorizes (residual < 1e-5)"):
        rng = np.random.default_rng(SEED + 3)
        for spec in POSITIVE_SPECS:
            for _ in range(200):
                tau = rng.uniform(-2.5, 2.5, spec.ell)
                r = coords.det_identity_residual(spec, tau)
                assert r < 1e-5, f"residual {r:.3e} for {spec}"


def _random_positive_specs(rng, count):
    out = []
    while len(out) < count:
        spec = random_chain_spec(rng, max_ell=4, max_twist=3, max_weight=6)
        if polytope.is_positive(spec):
            out.append(spec)
    return out


def _random_non_positive_specs(rng, count):
    out = []
    while len(out) < count:
        spec = random_chain_spec(rng, max_ell=4, max_twist=3, max_weight=6)
        if spec.ell >= 2 and not polytope.is_positive(spec):
            out.append(spec)
    return out


def _min_eigenvalue(spec, tau):
    mat = coords.hessian(spec, tau)
    return float(np.linalg.eigvalsh(0.5 * (mat + mat.T)).min())


def test_criterion_05_positivity_iff_definite_hessian():
    with criterion(5, "positivity criterion <=> positive-definite Hessian (50+50 specs)"):
        rng = np.random.default_rng(SEED + 4)
        for spec in _random_positive_specs(rng, 50):
            for _ in range(500):
                tau = coords.tau_from_tilde(spec, rng.uniform(-2.5, 2.5, spec.ell))
                assert _min_eigenvalue(spec, tau) > 0.0
        corners = None
        for spec in _random_non_positive_specs(rng, 50):
            found = False
            # corners of the tilde cube push each J_i to an extreme, landing
            # in the stratum where some l_j - L_j goes negative
            grid = np.array(np.meshgrid(*([[-6.0, 0.0, 6.0]] * spec.ell),
                                        indexing="ij")).reshape(spec.ell, -1).T
            candidates = list(grid) + [rng.uniform(-6.0, 6.0, spec.ell) for _ in range(100)]
            for tt in candidates:
                tau = coords.tau_from_tilde(spec, np.asarray(tt, dtype=float))
                if _min_eigenvalue(spec, tau) < -1e-8:
                    found = True
                    break
            assert found, f"no indefiniteness witness for {spec}"


def test_criterion_06_lattice_vertices_volume():
    with criterion(6, "lattice points, vertices, and volume of the twisted cube"):
        for spec in POSITIVE_SPECS:
            assert sorted(polytope.lattice_points(spec)) == brute_force_lattice(spec)
        points = polytope.lattice_points(WORKED_SPEC)
        assert len(points) == 18
        verts = sorted(tuple(v) for v in polytope.vertices(WORKED_SPEC))
        assert verts == [(0.0, 0.0), (0.0, 5.0), (3.0, 0.0), (3.0, 2.0)]
        vol = polytope.volume(WORKED_SPEC).value
        assert abs(vol - 10.5) <= 1e-8
        mc = polytope.volume(WORKED_SPEC, method="monte-carlo",
                             samples=1_000_000, seed=SEED)
        assert abs(mc.value - 10.5) < 4.0 * mc.stderr


def _boundary_slack(spec, point):
    slack = np.inf
    for j in range(1, spec.ell + 1):
        ub = float(spec.weights[j - 1])
        for i in range(1, j):
            ub -= spec.twist(j, i) * point[i - 1]
        slack = min(slack, point[j - 1], ub - point[j - 1])
    return slack


def test_criterion_07_conjugate_membership():
    with criterion(7, "convex-conjugate membership matches inequalities (slack >= 0.5)"):
        for spec in POSITIVE_SPECS:
            min_j, max_j = polytope.minmax_table(spec)
            axes = [range(int(min_j[k]) - 1, int(np.ceil(max_j[k])) + 2)
                    for k in range(spec.ell)]
            grids = np.meshgrid(*axes, indexing="ij")
            for cand in np.stack([g.ravel() for g in grids], axis=1):
                slack = _boundary_slack(spec, cand.astype(float))
                if abs(slack) < 0.5:
                    continue
                verdict = polytope.conjugate_membership(spec, cand.astype(float))
                expected = "interior" if slack > 0 else "boundary-or-exterior"
                assert verdict == expected, f"{spec}: {cand} slack {slack} -> {verdict}"


def test_criterion_08_character_identities():
    with criterion(8, "character identities: count, quarter-turn value, factorization"):
        for spec in POSITIVE_SPECS:
            cv = partition.character(spec, partition.TorusElement((0.0,) * spec.ell))
            assert cv.value.real == cv.count and cv.value.imag == 0.0
        cv = partition.character(ChainSpec.make(1, {}, (2,)),
                                 partition.TorusElement((np.pi / 2,)))
        assert abs(cv.value - 1j) < 1e-12
        product = ChainSpec.make(2, {}, (2, 2))
        factor = ChainSpec.make(1, {}, (2,))
        rng = np.random.default_rng(SEED + 5)
        for _ in range(20):
            e1, e2 = rng.uniform(-np.pi, np.pi, 2)
            z = partition.character(product, partition.TorusElement((e1, e2))).value
            z1 = partition.character(factor, partition.TorusElement((e1,))).value
            z2 = partition.character(factor, partition.TorusElement((e2,))).value
            assert abs(z - z1 * z2) < 1e-9


def test_criterion_09_path_integral():
    with criterion(9, "path integral: exact collapse, slice independence, winding sum"):
        rng = np.random.default_rng(SEED + 6)
        for spec in POSITIVE_SPECS:
            h = partition.TorusElement(tuple(rng.uniform(-np.pi, np.pi, spec.ell)))
            exact = partition.character(spec, h).value
            for n_slices in (1, 2, 4, 8, 16):
                assert abs(pathint.analytic_reduce(spec, h, n_slices) - exact) < 1e-12
        for l in (2, 3):
            spec = ChainSpec.make(1, {}, (l,))
            for eps in (np.pi / 2, 1.0):
                h = partition.TorusElement((eps,))
                exact = partition.character(spec, h).value
                for n_slices in (1, 2):
                    value = pathint.numeric_path_integral(
                        spec, h, pathint.PathIntegralParams(n_slices=n_slices))
                    assert abs(value - exact) < 0.05, (l, eps, n_slices)
        # winding-sum necessity: dropping the nonzero windings breaks the value
        spec = ChainSpec.make(1, {}, (2,))
        h = partition.TorusElement((np.pi / 2,))
        ablated = pathint.numeric_path_integral(
            spec, h, pathint.PathIntegralParams(n_max=0))
        assert abs(ablated - partition.character(spec, h).value) > 0.05


def test_criterion_10_poisson_check():
    with criterion(10, "damped winding sum converges to the geometric sum (0.02)"):
        for l in (1, 2, 5):
            for h_coef in (0.0, np.pi / 2, 1.0):
                value = pathint.poisson_check(l, h_coef, n_max=200, damping=1e-4)
                exact = sum(np.exp(1j * h_coef * k) for k in range(l + 1))
                assert abs(value - exact) < 0.02, (l, h_coef, abs(value - exact))


def test_criterion_11_classical_partition():
    with criterion(11, "classical partition: closed form, MC agreement, volume limit"):
        z = partition.classical_z(ChainSpec.make(1, {}, (2,)),
                                  partition.TorusElement((1.0,)))
        assert abs(z.value - (1.0 - np.exp(-2.0))) <= 1e-8
        rng = np.random.default_rng(SEED + 7)
        for spec in POSITIVE_SPECS:
            h = partition.TorusElement(tuple(rng.uniform(-0.5, 0.5, spec.ell)))
            exact = partition.classical_z(spec, h).value
            mc = partition.classical_z(spec, h, method="monte-carlo",
                                       samples=400_000, seed=SEED)
            assert abs(mc.value - exact) < 4.0 * mc.stderr
            h0 = partition.TorusElement((0.0,) * spec.ell)
            assert partition.classical_z(spec, h0).value == pytest.approx(
                polytope.volume(spec).value, rel=1e-8)
