"""Command-line front end.

Subcommands parse a chain-spec file (JSON, see :mod:`p1chain.core`),
dispatch to the library, and print flat ``key: value`` records on stdout
or CSV when ``--out`` is given.  Exit codes: 0 success, 1 usage error,
2 malformed spec, 3 positivity precondition failed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import coords, core, partition, pathint, polytope, su2

__all__ = ["run", "main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _emit(record):
    for key, value in record:
        print(f"{key}: {_fmt(value)}")


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _load_spec(path) -> core.ChainSpec:
    with open(path, encoding="utf-8") as fh:
        return core.parse_chain_spec(fh.read())


def _parse_eps(text, ell):
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != ell:
        raise UsageError(f"--H needs {ell} comma-separated values, got {len(parts)}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad --H value: {exc}") from exc


def _build_parser() -> _Parser:
    parser = _Parser(prog="p1chain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="path to a chain-spec JSON file")
        return p

    spec_cmd("validate", "check a spec file and print diagnostics")
    spec_cmd("positivity", "print the positivity verdict")
    spec_cmd("minmax", "print the global min/max table of the action variables")

    p = spec_cmd("lattice", "enumerate the lattice points of the twisted cube")
    p.add_argument("--out", help="write the points as CSV")
    p = spec_cmd("vertices", "enumerate the vertices of the twisted cube")
    p.add_argument("--out", help="write the vertices as CSV")

    p = spec_cmd("volume", "volume of the twisted cube")
    p.add_argument("--method", choices=["recursive-quadrature", "monte-carlo"],
                   default="recursive-quadrature")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = spec_cmd("character", "lattice-sum character Z(iH)")
    p.add_argument("--H", default=None, help="comma-separated coordinates of H")

    p = spec_cmd("classical", "classical partition function")
    p.add_argument("--H", default=None)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--method", choices=["quadrature", "monte-carlo"], default="quadrature")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = spec_cmd("report", "quantum vs classical comparison at a common weight")
    p.add_argument("--H", default=None)
    p.add_argument("--beta", type=float, default=1.0)

    p = spec_cmd("pathint", "regularized path-integral evaluation (length-1 chains)")
    p.add_argument("--H", default=None)
    p.add_argument("--slices", type=int, default=1)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--phi-cutoff", type=float, default=200.0)
    p.add_argument("--damping", type=float, default=1e-3)
    p.add_argument("--quad-points", type=int, default=800)

    p = sub.add_parser("poisson-check", help="damped winding sum vs geometric sum")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--H", type=float, default=0.0)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--damping", type=float, default=1e-4)

    p = sub.add_parser("oracle", help="run the matrix-oracle agreement suites")
    p.add_argument("--matrices", type=int, default=1000)
    p.add_argument("--chains", type=int, default=200)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)

    p = spec_cmd("sweep", "character and classical values on a grid of H values")
    p.add_argument("--axis", type=int, default=1, help="1-based coordinate to sweep")
    p.add_argument("--points", type=int, default=65)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--out", help="write the sweep as CSV")

    return parser


def _default_eps(args, ell):
    if args.H is None:
        return (0.0,) * ell
    return _parse_eps(args.H, ell)


def _cmd_validate(args):
    spec = _load_spec(args.spec)
    diag = core.validate(spec)
    _emit([("ell", spec.ell), ("errors", len(diag.errors)), ("warnings", len(diag.warnings))])
    for msg in diag.errors:
        print(f"error: {msg}")
    for msg in diag.warnings:
        print(f"warning: {msg}")
    return 0


def _cmd_positivity(args):
    spec = _load_spec(args.spec)
    _emit([("positive", polytope.is_positive(spec))])
    return 0


def _cmd_minmax(args):
    spec = _load_spec(args.spec)
    min_j, max_j = polytope.minmax_table(spec)
    record = []
    for j in range(spec.ell):
        record.append((f"min_J{j + 1}", min_j[j]))
        record.append((f"max_J{j + 1}", max_j[j]))
    _emit(record)
    return 0


def _cmd_lattice(args):
    spec = _load_spec(args.spec)
    points = polytope.lattice_points(spec)
    header = [f"n{j + 1}" for j in range(spec.ell)]
    if args.out:
        _write_csv(args.out, header, points)
        _emit([("count", len(points)), ("out", args.out)])
    else:
        _emit([("count", len(points))])
        print(",".join(header))
        for point in points:
            print(",".join(str(n) for n in point))
    return 0


def _cmd_vertices(args):
    spec = _load_spec(args.spec)
    verts = sorted(tuple(v) for v in polytope.vertices(spec))
    header = [f"J{j + 1}" for j in range(spec.ell)]
    if args.out:
        _write_csv(args.out, header, verts)
        _emit([("count", len(verts)), ("out", args.out)])
    else:
        _emit([("count", len(verts))])
        print(",".join(header))
        for v in verts:
            print(",".join(_fmt(x) for x in v))
    return 0


def _cmd_volume(args):
    spec = _load_spec(args.spec)
    est = polytope.volume(spec, method=args.method, samples=args.samples, seed=args.seed)
    record = [("method", est.method), ("volume", est.value)]
    if est.stderr is not None:
        record += [("stderr", est.stderr), ("samples", est.samples), ("seed", est.seed)]
    _emit(record)
    return 0


def _cmd_character(args):
    spec = _load_spec(args.spec)
    h = partition.TorusElement(_default_eps(args, spec.ell))
    cv = partition.character(spec, h)
    _emit([("count", cv.count), ("value_re", cv.value.real),
           ("value_im", cv.value.imag), ("value_abs", abs(cv.value))])
    return 0


def _cmd_classical(args):
    spec = _load_spec(args.spec)
    h = partition.TorusElement(_default_eps(args, spec.ell), beta=args.beta)
    est = partition.classical_z(spec, h, method=args.method,
                                samples=args.samples, seed=args.seed)
    record = [("method", est.method), ("value", est.value), ("beta", args.beta)]
    if est.stderr is not None:
        record += [("stderr", est.stderr), ("samples", est.samples), ("seed", est.seed)]
    _emit(record)
    return 0


def _cmd_report(args):
    spec = _load_spec(args.spec)
    h = partition.TorusElement(_default_eps(args, spec.ell), beta=args.beta)
    rep = partition.quantum_classical_report(spec, h)
    _emit([("quantum", rep.quantum), ("classical", rep.classical),
           ("gap", rep.gap), ("lattice_count", rep.lattice_count),
           ("volume", rep.volume), ("beta", rep.beta), ("note", "uncorrected")])
    return 0


def _cmd_pathint(args):
    spec = _load_spec(args.spec)
    h = partition.TorusElement(_default_eps(args, spec.ell))
    params = pathint.PathIntegralParams(
        n_slices=args.slices, n_max=args.n_max, phi_cutoff=args.phi_cutoff,
        damping=args.damping, quad_points=args.quad_points)
    exact = pathint.analytic_reduce(spec, h, n_slices=args.slices)
    value = pathint.numeric_path_integral(spec, h, params)
    _emit([
        ("slices", args.slices), ("n_max", args.n_max),
        ("phi_cutoff", args.phi_cutoff), ("damping", args.damping),
        ("quad_points", args.quad_points),
        ("value_re", value.real), ("value_im", value.imag),
        ("exact_re", exact.real), ("exact_im", exact.imag),
        ("abs_error", abs(value - exact)),
    ])
    return 0


def _cmd_poisson_check(args):
    value = pathint.poisson_check(args.l, args.H, n_max=args.n_max, damping=args.damping)
    phases = np.exp(1j * args.H * np.arange(args.l + 1))
    exact = complex(phases.sum())
    _emit([("l", args.l), ("H", args.H), ("n_max", args.n_max),
           ("damping", args.damping),
           ("value_re", value.real), ("value_im", value.imag),
           ("exact_re", exact.real), ("exact_im", exact.imag),
           ("abs_error", abs(value - exact))])
    return 0


def _cmd_oracle(args):
    rng = np.random.default_rng(args.seed)
    max_factor = 0.0
    max_unitary = 0.0
    for _ in range(args.matrices):
        g = su2.random_unimodular(rng)
        parts = su2.iwasawa(g)
        max_factor = max(max_factor, float(np.abs(parts.assemble() - g).max()))
        max_unitary = max(max_unitary,
                          float(np.abs(parts.u.conj().T @ parts.u - np.eye(2)).max()))
        if abs(g[0, 0]) > 1e-6:
            max_factor = max(max_factor, float(np.abs(su2.gauss(g).assemble() - g).max()))
    max_rel = 0.0
    for _ in range(args.chains):
        spec = core.random_chain_spec(rng)
        for _ in range(args.points):
            tau = rng.uniform(-3.0, 3.0, spec.ell)
            phi = rng.uniform(0.0, 2.0 * np.pi, spec.ell)
            z = np.exp(tau + 1j * phi)
            z_tilde = su2.chain_tilde_oracle(spec, z)
            closed = np.exp(coords.tilde_from_tau(spec, tau))
            rel = float(np.max(np.abs(np.abs(z_tilde) - closed) / closed))
            max_rel = max(max_rel, rel)
    _emit([("seed", args.seed), ("matrices", args.matrices),
           ("max_factorization_residual", max_factor),
           ("max_unitarity_residual", max_unitary),
           ("chains", args.chains), ("points_per_chain", args.points),
           ("max_relative_tilde_gap", max_rel)])
    return 0


def _cmd_sweep(args):
    spec = _load_spec(args.spec)
    axis = args.axis
    if not (1 <= axis <= spec.ell):
        raise UsageError(f"--axis must be in 1..{spec.ell}")
    grid = np.linspace(-np.pi, np.pi, args.points)
    rows = []
    for eps_val in grid:
        eps = [0.0] * spec.ell
        eps[axis - 1] = float(eps_val)
        h = partition.TorusElement(tuple(eps), beta=args.beta)
        cv = partition.character(spec, h)
        cz = partition.classical_z(spec, h, method="quadrature")
        rows.append((eps_val, cv.value.real, cv.value.imag, abs(cv.value), cz.value))
    header = ["eps", "re_z", "im_z", "abs_z", "z_classical"]
    if args.out:
        _write_csv(args.out, header, rows)
        _emit([("points", args.points), ("axis", axis), ("out", args.out)])
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(v) for v in row))
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "positivity": _cmd_positivity,
    "minmax": _cmd_minmax,
    "lattice": _cmd_lattice,
    "vertices": _cmd_vertices,
    "volume": _cmd_volume,
    "character": _cmd_character,
    "classical": _cmd_classical,
    "report": _cmd_report,
    "pathint": _cmd_pathint,
    "poisson-check": _cmd_poisson_check,
    "oracle": _cmd_oracle,
    "sweep": _cmd_sweep,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except core.ChainSpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return 2
    except polytope.NotPositiveError as exc:
        print(f"{exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run())
