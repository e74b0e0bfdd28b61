"""Command-line front end.

Exit codes: 0 success, 2 usage or configuration error, 3 numeric invariant
violated.  Output is assembled in memory and written only on success; failures
print one diagnostic line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import dynamical, holonomic
from .bench import AverageConfig, SweepPlan, adjudicate_formulas, average_fidelity_numeric, compare_gates, sweep
from .bench.adjudicate import DEFAULT_THETAS
from .bench.averaging import paper_average
from .dynamical import RabiGateSpec
from .holonomic import LambdaGateSpec, SystematicError
from .qmath import BlochAngles, NumericInvariantError, ValidationError, unitarity_defect

EXIT_USAGE = 2
EXIT_NUMERIC = 3
FIDELITY_CEILING = 1.0 + 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    """Plain float (shortest round-trip repr), with -0.0 folded to 0.0."""
    x = float(x)
    return x + 0.0


def _json_num(x):
    x = _num(x)
    return None if math.isnan(x) else x


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


# -- argument groups -----------------------------------------------------------


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def _add_gate(p, kind=True):
    if kind:
        p.add_argument("--kind", choices=("geometric", "dynamical"), required=True)
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--degrees", action="store_true", help="angles given in degrees")


def _add_errors(p, domega_default=0.0):
    p.add_argument("--domega-rel", type=float, default=domega_default, help="relative Rabi error dOmega/Omega")
    p.add_argument("--dtheta", type=float, default=0.0)
    p.add_argument("--dphi", type=float, default=0.0)


def _add_averaging(p):
    p.add_argument("--method", choices=("quadrature", "monte_carlo"), default="quadrature")
    p.add_argument("--nodes-alpha", type=int, default=64)
    p.add_argument("--nodes-beta", type=int, default=64)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holobench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gate", help="print ideal, exact and published propagators")
    _add_gate(p)
    _add_errors(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", "-o")

    p = sub.add_parser("fidelity", help="per-state fidelity and leakage")
    _add_gate(p)
    _add_errors(p)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    _add_output(p)

    p = sub.add_parser("average", help="Bloch-sphere averaged fidelity")
    _add_gate(p)
    _add_errors(p)
    _add_averaging(p)
    _add_output(p)

    p = sub.add_parser("sweep", help="averaged fidelity along one parameter axis")
    p.add_argument("--kind", choices=("geometric", "dynamical"))
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--degrees", action="store_true")
    _add_errors(p)
    _add_averaging(p)
    p.add_argument("--axis", choices=("theta", "rel_omega", "d_theta", "d_phi"))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--grid", type=_float_list, help="comma-separated axis values")
    src.add_argument("--linspace", type=float, nargs=3, metavar=("START", "STOP", "NUM"))
    src.add_argument("--config", help="JSON sweep configuration (schema 1)")
    _add_output(p)

    p = sub.add_parser("verify", help="adjudicate the published second-order formulas")
    p.add_argument("--theta-grid", type=_float_list, default=list(DEFAULT_THETAS))
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--delta", type=float, default=1e-3)
    p.add_argument("--nodes-alpha", type=int, default=64)
    p.add_argument("--nodes-beta", type=int, default=64)
    _add_output(p)

    p = sub.add_parser("compare", help="geometric vs dynamical Rabi-error sensitivity")
    p.add_argument("--theta-grid", type=_float_list,
                   default=[math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2])
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--domega-rel", type=float, default=0.01)
    p.add_argument("--nodes-alpha", type=int, default=64)
    p.add_argument("--nodes-beta", type=int, default=64)
    _add_output(p)
    return parser


# -- helpers ---------------------------------------------------------------------


def _angle(args, value):
    return math.radians(value) if getattr(args, "degrees", False) else value


def _spec(kind, theta, phi, omega):
    cls = LambdaGateSpec if kind == "geometric" else RabiGateSpec
    return cls(theta, phi, omega)


def _gate_inputs(args):
    spec = _spec(args.kind, _angle(args, args.theta), _angle(args, args.phi), args.omega)
    err = SystematicError(args.domega_rel, _angle(args, args.dtheta), _angle(args, args.dphi))
    if args.kind == "dynamical" and err.d_theta != 0:
        raise ValidationError("amplitude-ratio error undefined for single-field gate")
    return spec, err


def _averaging(args) -> AverageConfig:
    return AverageConfig(args.method, args.nodes_alpha, args.nodes_beta, args.samples, args.seed)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["nan" if isinstance(v, float) and math.isnan(v) else v for v in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _table(args, header, rows) -> str:
    if args.format == "json":
        return _json([{k: (_json_num(v) if isinstance(v, float) else v) for k, v in zip(header, r)}
                      for r in rows])
    return _csv(header, rows)


def _check_fidelity(value, what):
    if not 0.0 <= value <= FIDELITY_CEILING:
        raise NumericInvariantError(f"{what} fidelity {value!r} outside [0, 1]")


# -- subcommands -------------------------------------------------------------------


def _matrix_lines(name, M):
    lines = [f"# {name}"]
    for row in np.asarray(M):
        lines.append(" ".join(f"{_num(z.real):.12g} {_num(z.imag):.12g}" for z in row))
    return lines


def cmd_gate(args) -> str:
    spec, err = _gate_inputs(args)
    if args.kind == "geometric":
        mats = {
            "ideal": holonomic.ideal_holonomic_gate(spec.theta, spec.phi),
            "exact": holonomic.exact_propagator(spec, err),
            "paper": holonomic.paper_propagator(spec, err),
        }
    else:
        mats = {
            "ideal": dynamical.ideal_dynamical_gate(spec.theta, spec.phi),
            "exact": dynamical.exact_dynamical_propagator(spec, err),
            "paper": dynamical.perturbed_dynamical_gate(spec, err),
        }
    defect = unitarity_defect(mats["exact"])
    if defect > 1e-10:
        raise NumericInvariantError(f"exact propagator not unitary (defect {defect:.3e})")
    if args.format == "json":
        return _json({k: [[[_num(z.real), _num(z.imag)] for z in row] for row in M] for k, M in mats.items()})
    lines = []
    for name, M in mats.items():
        lines.extend(_matrix_lines(name, M))
    return "\n".join(lines) + "\n"


def cmd_fidelity(args) -> str:
    spec, err = _gate_inputs(args)
    angles = BlochAngles(_angle(args, args.alpha), _angle(args, args.beta))
    if args.kind == "geometric":
        exact = holonomic.state_fidelity_exact(spec, err, angles)
        paper = holonomic.state_fidelity_order2(spec, err, angles)
        leak = holonomic.leakage(spec, err, angles).leak_prob
    else:
        exact = dynamical.state_fidelity_exact(spec, err, angles)
        paper = dynamical.state_fidelity_order2(spec, err, angles)
        leak = 0.0
    _check_fidelity(exact, "exact")
    header = ["alpha", "beta", "exact_fidelity", "paper_fidelity", "leakage"]
    return _table(args, header, [[_num(angles.alpha), _num(angles.beta), _num(exact), _num(paper), _num(leak)]])


def cmd_average(args) -> str:
    spec, err = _gate_inputs(args)
    res = average_fidelity_numeric(spec, err, _averaging(args))
    _check_fidelity(res.mean, "averaged exact")
    header = ["exact_avg", "paper_avg", "leakage_avg", "mc_std_error"]
    row = [_num(res.mean), _num(paper_average(spec, err)), _num(res.leakage_mean), _num(res.std_error)]
    return _table(args, header, [row])


def _plan_from_config(path) -> SweepPlan:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict) or cfg.get("schema") != 1:
        raise UsageError(f"config {path}: expected an object with \"schema\": 1")
    try:
        errors = cfg.get("errors", {})
        averaging = cfg.get("averaging", {})
        sw = cfg["sweep"]
        return SweepPlan(
            gate_kind=cfg["gate_kind"],
            axis=sw["axis"],
            grid=tuple(sw["grid"]),
            theta=float(cfg.get("theta", math.pi / 2)),
            phi=float(cfg.get("phi", 0.0)),
            omega=float(cfg.get("omega", 1.0)),
            errors=SystematicError(
                float(errors.get("domega_rel", 0.0)),
                float(errors.get("dtheta", 0.0)),
                float(errors.get("dphi", 0.0)),
            ),
            averaging=AverageConfig(**averaging),
        )
    except (KeyError, TypeError) as exc:
        raise UsageError(f"config {path}: missing or malformed field {exc}") from None


def _plan_from_flags(args) -> SweepPlan:
    if args.kind is None or args.axis is None:
        raise UsageError("--kind and --axis are required unless --config is given")
    if args.grid is not None:
        grid = args.grid
    else:
        start, stop, num = args.linspace
        if num != int(num) or num < 1:
            raise UsageError("--linspace NUM must be a positive integer")
        grid = np.linspace(start, stop, int(num)).tolist()
    if args.axis in ("theta", "d_theta", "d_phi"):
        grid = [_angle(args, g) for g in grid]
    return SweepPlan(
        gate_kind=args.kind,
        axis=args.axis,
        grid=tuple(grid),
        theta=_angle(args, args.theta),
        phi=_angle(args, args.phi),
        omega=args.omega,
        errors=SystematicError(args.domega_rel, _angle(args, args.dtheta), _angle(args, args.dphi)),
        averaging=_averaging(args),
    )


def cmd_sweep(args) -> str:
    plan = _plan_from_config(args.config) if args.config else _plan_from_flags(args)
    rows = sweep(plan)
    for r in rows:
        _check_fidelity(r.exact_avg_fidelity, f"averaged exact ({plan.axis}={r.axis_value!r})")
    header = ["axis", "exact_avg", "paper_avg", "leakage_avg", "mc_std_error"]
    table = [[_num(r.axis_value), _num(r.exact_avg_fidelity), _num(r.paper_avg_fidelity),
              _num(r.leakage_avg), _num(r.mc_std_error)] for r in rows]
    return _table(args, header, table)


def cmd_verify(args) -> str:
    thetas = [_angle(args, t) for t in args.theta_grid]
    cfg = AverageConfig("quadrature", args.nodes_alpha, args.nodes_beta)
    report = adjudicate_formulas(thetas, delta=args.delta, cfg=cfg)
    header = ["term", "theta", "unit", "paper", "per_state", "exact", "residual_slope", "verdict"]
    rows = [[r.term, _num(r.theta), r.unit, _num(r.paper), _num(r.per_state), _num(r.exact),
             _num(r.residual_slope), r.verdict] for r in report.rows]
    return _table(args, header, rows)


def cmd_compare(args) -> str:
    thetas = [_angle(args, t) for t in args.theta_grid]
    cfg = AverageConfig("quadrature", args.nodes_alpha, args.nodes_beta)
    rep = compare_gates(thetas, SystematicError(rel_omega=args.domega_rel), cfg)
    summary = {
        "rel_omega": _num(rep.rel_omega),
        "half_ratio_check": _num(rep.half_ratio_check),
        "half_ratio_oracle": _num(rep.half_ratio_oracle),
        "hadamard_ratio": _num(rep.hadamard_ratio),
        "hadamard_ratio_oracle": _num(rep.hadamard_ratio_oracle),
    }
    header = ["theta", "geometric_formula", "dynamical_formula", "formula_ratio",
              "geometric_oracle", "dynamical_oracle", "oracle_ratio", "duration_ratio"]
    rows = [[_num(getattr(r, h)) for h in header] for r in rep.rows]
    if args.format == "json":
        return _json({**summary, "note": rep.note, "rows": [dict(zip(header, r)) for r in rows]})
    # summary scalars are repeated on every row to keep the table rectangular
    return _csv(header + list(summary), [r + list(summary.values()) for r in rows])


COMMANDS = {
    "gate": cmd_gate,
    "fidelity": cmd_fidelity,
    "average": cmd_average,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = COMMANDS[args.command](args)
    except (UsageError, ValidationError) as exc:
        print(f"holobench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericInvariantError as exc:
        print(f"holobench: numeric invariant violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"holobench: error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
