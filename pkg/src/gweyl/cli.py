"""Command-line entry point: ``gweyl {verify,dispersion,oscillate,equivalence,derive}``.

Exit codes: 0 success, 1 a check or computation failed, 2 bad usage or config.
A ``--config`` file holds ``key = value`` lines whose keys mirror the long flag
names; flags given on the command line win over the file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import derivation, spectral
from . import helicity_dynamics as hd
from .clifford_core import Representation, build_basis
from .errors import EigenFailure, GweylError, NonDiagonalizable
from .operators import FourMomentum, MassParameters, SeedChirality, Units, generalized_operator, matrix_to_json
from .serialize import csv_text, json_text
from .suite import run_verification


class UsageError(Exception):
    pass


def _common(p):
    p.add_argument("--config", type=Path, help="flat key = value file; keys mirror flag names")
    p.add_argument("--representation", choices=[r.value for r in Representation], default="spinorial")
    p.add_argument("--gamma5-sign", type=int, choices=[1, -1], default=1, help="gamma5 = sign * i g0 g1 g2 g3")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", type=Path, help="write here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized suite")


def build_parser():
    parser = argparse.ArgumentParser(prog="gweyl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the full invariant suite")
    _common(v)
    v.add_argument("--m1", type=float, default=1.0, help="seed mass")
    v.add_argument("--m2", type=float, default=0.5, help="physical mass")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--tolerance", type=float, help="override every upper-bound threshold")

    d = sub.add_parser("dispersion", help="energies over a |p| scan")
    _common(d)
    d.add_argument("--p", type=float, nargs="+", default=[1.0], help="momentum magnitudes")
    d.add_argument("--direction", type=float, nargs=3, default=[0.0, 0.0, 1.0])
    d.add_argument("--m1", type=float, default=1.0)
    d.add_argument("--m2", type=float, default=0.0)

    o = sub.add_parser("oscillate", help="chiral-helicity oscillation trace")
    _common(o)
    o.add_argument("--p", type=float, default=1.0, help="momentum magnitude")
    o.add_argument("--direction", type=float, nargs=3, default=[0.0, 0.0, 1.0])
    o.add_argument("--m1", type=float, default=1.0)
    o.add_argument("--V", type=float, default=0.0, help="potential felt by eta = -1 states only")
    o.add_argument("--tmax", type=float, help="default: 20 periods of 2c|p|/hbar")
    o.add_argument("--samples", type=int, default=hd.DEFAULT_SAMPLES)

    e = sub.add_parser("equivalence", help="chiral-scaling transform to the Dirac operator")
    _common(e)
    e.add_argument("--m1", type=float, default=1.0)
    e.add_argument("--m2", type=float, nargs="+", default=[1.0, 0.1, 0.01, 0.001])
    e.add_argument("--seed-chirality", choices=["right", "left"], default="right")

    r = sub.add_parser("derive", help="assemble a 4-spinor from a two-spinor seed")
    _common(r)
    r.add_argument("--m1", type=float, default=1.0, help="seed mass (m1 or m3)")
    r.add_argument("--m2", type=float, default=0.0, help="physical mass (m2 or m4)")
    r.add_argument("--seed-chirality", choices=["right", "left"], default="right")
    r.add_argument("--momentum", type=float, nargs=3, default=[0.0, 0.0, 1.0])
    r.add_argument("--energy-sign", type=int, choices=[1, -1], default=1)
    r.add_argument("--psi", type=float, nargs=4, default=[1.0, 0.0, 0.0, 0.0], help="re0 im0 re1 im1")
    return parser, sub.choices


def _read_config(path: Path, subparser) -> dict:
    actions = {a.dest: a for a in subparser._actions}
    out = {}
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        dest = key.lstrip("-").replace("-", "_")
        act = actions.get(dest)
        if act is None or dest in ("config", "help"):
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        tokens = value.replace(",", " ").split()
        conv = act.type or str
        try:
            vals = [conv(t) for t in tokens]
        except ValueError as exc:
            raise UsageError(f"{path}:{n}: bad value for {key!r}: {value!r}") from exc
        if act.choices is not None and any(x not in act.choices for x in vals):
            raise UsageError(f"{path}:{n}: {key!r} must be one of {list(act.choices)}")
        if act.nargs in ("+", "*") or isinstance(act.nargs, int):
            out[dest] = vals
        elif len(vals) == 1:
            out[dest] = vals[0]
        else:
            raise UsageError(f"{path}:{n}: {key!r} takes a single value")
    return out


def parse(argv):
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None:
        sp = subs[args.command]
        sp.set_defaults(**_read_config(args.config, sp))
        args = parser.parse_args(argv)
    return args


def _units(args):
    if not (args.hbar > 0 and args.c > 0):
        raise UsageError("hbar and c must be positive")
    return Units(args.hbar, args.c)


def _basis(args):
    return build_basis(Representation(args.representation), args.gamma5_sign)


def _emit(args, text: str):
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_bytes(text.encode())


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    checks = run_verification(
        m1=args.m1,
        m2=args.m2,
        units=_units(args),
        representation=Representation(args.representation),
        gamma5_sign=args.gamma5_sign,
        seed=args.seed,
        samples=args.samples,
        tolerance=args.tolerance,
    )
    ok = all(c.passed for c in checks)
    if args.format == "json":
        text = json_text(
            {
                "passed": ok,
                "n_checks": len(checks),
                "n_failed": sum(not c.passed for c in checks),
                "checks": [
                    {"name": c.name, "value": c.value, "threshold": c.threshold, "kind": c.kind, "passed": c.passed}
                    for c in checks
                ],
            }
        )
    else:
        text = csv_text(["name", "value", "threshold", "kind", "status"], [c.row() for c in checks])
    _emit(args, text)
    return 0 if ok else 1


def cmd_dispersion(args) -> int:
    units = _units(args)
    basis = _basis(args)
    if any(not np.isfinite(p) or p < 0 for p in args.p):
        raise UsageError("momentum magnitudes must be finite and >= 0")
    direction = np.asarray(args.direction, dtype=float)
    if np.linalg.norm(direction) == 0:
        raise UsageError("--direction must be nonzero")
    direction = direction / np.linalg.norm(direction)
    masses = MassParameters(args.m1, args.m2, SeedChirality.RIGHT, units)
    rows = []
    for p in args.p:
        pvec = p * direction
        roots = spectral.dispersion_roots(pvec, masses)
        spec = spectral.hamiltonian_spectrum(pvec, masses, basis)
        dev = float(max(abs(a - b) for a, b in zip(spec.eigenvalues, roots)))
        rows.append([float(p), float(args.m1), float(args.m2), *map(float, roots), dev, bool(spec.diagonalizable)])
    header = ["p", "m1", "m2", "E1", "E2", "E3", "E4", "eigen_deviation", "diagonalizable"]
    if args.format == "json":
        text = json_text({"rows": [dict(zip(header, r)) for r in rows]})
    else:
        text = csv_text(header, [r[:-1] + [str(r[-1]).lower()] for r in rows])
    _emit(args, text)
    return 0


def cmd_oscillate(args) -> int:
    units = _units(args)
    basis = _basis(args)
    if not args.p > 0:
        raise UsageError("ZeroMomentumDirection: --p must be > 0")
    if args.samples < 16:
        raise UsageError("--samples must be >= 16")
    if args.tmax is not None and not args.tmax > 0:
        raise UsageError("--tmax must be > 0")
    direction = np.asarray(args.direction, dtype=float)
    pvec = args.p * direction / np.linalg.norm(direction)
    if args.tmax is None:
        grid = hd.default_time_grid(args.p, units, args.samples)
    else:
        grid = np.arange(args.samples) * (args.tmax / args.samples)
    try:
        trace = hd.simulate_oscillation(pvec, args.m1, V=args.V, t_grid=grid, units=units, basis=basis)
    except (EigenFailure, NonDiagonalizable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output is not None:
        _emit(args, trace.to_csv())
        args.output.with_suffix(".json").write_bytes(json_text(trace.summary()).encode())
    elif args.format == "json":
        _emit(args, trace.to_json())
    else:
        _emit(args, trace.to_csv())
    return 0


def cmd_equivalence(args) -> int:
    units = _units(args)
    basis = _basis(args)
    bad = [m for m in args.m2 if not m > 0]
    if bad:
        raise UsageError(f"MasslessLimit: every --m2 must be > 0 (got {bad[0]!r}); the transform does not exist at m2 = 0")
    rows = []
    rng = np.random.default_rng(args.seed)
    fresh = spectral.random_momenta(rng, 10)
    for m2 in args.m2:
        masses = MassParameters(args.m1, m2, SeedChirality(args.seed_chirality), units)
        pair = spectral.equivalence_transform(masses, basis, seed=args.seed)
        res = max(pair.residual, spectral.check_equivalence(pair, masses, fresh, basis))
        rows.append([float(m2), pair.right_max, float(res)])
    header = ["m2", "r_max", "residual"]
    if args.format == "json":
        text = json_text({"m1": float(args.m1), "representation": basis.representation.value, "rows": [dict(zip(header, r)) for r in rows]})
    else:
        text = csv_text(header, rows)
    _emit(args, text)
    return 0


def cmd_derive(args) -> int:
    units = _units(args)
    masses = MassParameters(args.m1, args.m2, SeedChirality(args.seed_chirality), units)
    mom = FourMomentum.on_shell(args.momentum, args.m2, args.energy_sign, units)
    re0, im0, re1, im1 = args.psi
    psi = derivation.TwoSpinor([complex(re0, im0), complex(re1, im1)], mom)
    state = derivation.build_four_spinor(psi, masses)
    op = generalized_operator(mom, masses, build_basis(Representation.STANDARD))
    out = {
        "representation": "standard",
        "seed_chirality": masses.seed_chirality.value,
        "energy": mom.E,
        "momentum": list(mom.p),
        "psi": [[float(z.real), float(z.imag)] for z in state.components],
        "operator_residual": derivation.operator_residual(state, masses),
        "first_order_residual": derivation.roundtrip_check(psi, masses),
        "operator": matrix_to_json(op.matrix),
    }
    if args.format == "json":
        text = json_text(out)
    else:
        rows = [[i, float(z.real), float(z.imag)] for i, z in enumerate(state.components)]
        text = csv_text(["index", "re", "im"], rows)
    _emit(args, text)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "dispersion": cmd_dispersion,
    "oscillate": cmd_oscillate,
    "equivalence": cmd_equivalence,
    "derive": cmd_derive,
}


def main(argv=None) -> int:
    try:
        args = parse(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GweylError, ValueError) as exc:
        if isinstance(exc, (EigenFailure, NonDiagonalizable)):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
