"""Command-line front end.

    fiscap <subcommand> [parameter flags] [--format json|csv] [--output PATH] [--config FILE]

Exit codes: 0 success, 1 validation error or failed verification,
2 no pure-strategy equilibrium when one was demanded (--strict, simulate),
64 usage error. Floats are written with 9 significant digits.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import os
import sys
from enum import Enum

import numpy as np

from .citizen import optimal_report
from .core import (
    Aligned,
    DomainViolation,
    FiscapError,
    Policy,
    TwoState,
    Unaligned,
    make_model,
    phi,
)
from .elite import equilibrium_tax_base, optimal_allocation
from .fiscal import laffer_curve, laffer_peak_rate, laffer_peak_revenue, laffer_root
from .oracle import agreement_suite
from .signaling import EquilibriumTag, classify_equilibrium, jump_factor
from .sim import NoEquilibrium, Scenario, run_timeline

EXIT_OK, EXIT_INVALID, EXIT_NO_EQUILIBRIUM, EXIT_USAGE = 0, 1, 2, 64
SIG_DIGITS = 9

PARAMS = {
    # dest: (flag, type, help)
    "w": ("--w", float, "income level (default 1)"),
    "c": ("--c", float, "enforcement intensity (default 1)"),
    "sigma": ("--sigma", float, "institutional strength in (0, 1)"),
    "kappa": ("--kappa", float, "degree of morality in [0, 1) (default 0)"),
    "alpha": ("--alpha", float, "common public-good valuation"),
    "alpha_e": ("--alpha-e", float, "elite valuation (unaligned)"),
    "alpha_c": ("--alpha-c", float, "citizen valuation (unaligned)"),
    "alpha_l": ("--alpha-l", float, "low-state valuation"),
    "alpha_h": ("--alpha-h", float, "high-state valuation"),
    "rho": ("--rho", float, "prior probability of the high state"),
    "t": ("--t", float, "tax rate"),
    "g": ("--g", float, "allocation share to the public good"),
}
DEFAULTS = {"w": 1.0, "c": 1.0, "kappa": 0.0}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# formatting

def _fmt(x: float) -> float | None:
    if not math.isfinite(x):
        return None
    return float(f"{x:.{SIG_DIGITS}g}")


def canonical(obj):
    """Round floats to 9 significant digits and turn enums/numpy scalars into plain values."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(v) -> str:
    v = canonical(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    return str(v)


def dump_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if columns is None:
        columns = []
        for r in rows:
            columns.extend(k for k in r if k not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(k)) for k in columns])
    return buf.getvalue()


class Result:
    """What a subcommand produced: a JSON payload and flat rows for CSV."""

    def __init__(self, payload, rows, columns=None, exit_code=EXIT_OK):
        self.payload = payload
        self.rows = rows
        self.columns = columns
        self.exit_code = exit_code


# ---------------------------------------------------------------------------
# parameter resolution

def read_config(path: str) -> dict:
    """Flat ``key = value`` file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            out[key] = value
    return out


def _get(ns, name, required=True):
    v = getattr(ns, name, None)
    if v is None:
        v = ns._config.get(name)
        if v is not None and name in PARAMS:
            try:
                v = PARAMS[name][1](v)
            except ValueError:
                raise UsageError(f"config value for {name!r} is not a number: {v!r}")
    if v is None:
        v = DEFAULTS.get(name)
    if v is None and required:
        flag = PARAMS[name][0] if name in PARAMS else name
        raise UsageError(f"missing required parameter {flag}")
    return v


def _model(ns, values=None):
    return make_model(_get(ns, "w"), _get(ns, "c"), _get(ns, "sigma"), _get(ns, "kappa"), values)


def _static_values(ns):
    alpha = _get(ns, "alpha", required=False)
    if alpha is not None:
        return Aligned(alpha)
    a_e, a_c = _get(ns, "alpha_e", required=False), _get(ns, "alpha_c", required=False)
    if a_e is None or a_c is None:
        raise UsageError("give --alpha, or both --alpha-e and --alpha-c")
    return Unaligned(a_e, a_c)


def _two_state(ns):
    return TwoState(_get(ns, "alpha_l"), _get(ns, "alpha_h"), _get(ns, "rho"))


# ---------------------------------------------------------------------------
# subcommands

def cmd_report(ns) -> Result:
    alpha = _get(ns, "alpha")
    model = _model(ns, Aligned(alpha))
    g = _get(ns, "g", required=False)
    policy = Policy(_get(ns, "t"), 1.0 if g is None else g)
    out = optimal_report(model, policy, alpha)
    row = {"t": policy.t, "g": policy.g, "kappa": model.kappa,
           "phi": phi(policy.g, alpha, model.sigma), **vars(out)}
    return Result(row, [row])


def cmd_laffer(ns) -> Result:
    alpha = _get(ns, "alpha")
    model = _model(ns, Aligned(alpha))
    g = _get(ns, "g", required=False)
    g = 1.0 if g is None else g
    if ns.peak:
        row = {"g": g, "kappa": model.kappa, "t_hat": laffer_peak_rate(model, g, alpha),
               "T_hat": laffer_peak_revenue(model, g, alpha)}
        return Result(row, [row])
    t_max = ns.t_max if ns.t_max is not None else laffer_root(model, g, alpha)
    points = laffer_curve(model, g, alpha, ns.t_min, t_max, ns.n)
    rows = [vars(p) for p in points]
    return Result(rows, rows, columns=["t", "revenue", "report"])


def cmd_elite(ns) -> Result:
    values = _static_values(ns)
    model = _model(ns, values)
    a_e, a_c = (values.alpha, values.alpha) if isinstance(values, Aligned) else (values.alpha_E, values.alpha_C)
    dec = optimal_allocation(model, a_e, a_c)
    payload = {
        "g_star": dec.g_star, "tie": dec.tie, "v0": dec.v0, "v1": dec.v1,
        "region": dec.region.to_dict(),
        "tax_base": equilibrium_tax_base(model, dec.g_star, a_c),
        "diagnostics": {"direction_conflict": dec.region.direction_conflict,
                        "conflict_at_kappa": dec.region.conflict_at_kappa,
                        "note": dec.region.note},
    }
    row = {"kappa": model.kappa, "g_star": dec.g_star, "tie": dec.tie, "v0": dec.v0, "v1": dec.v1,
           "region": dec.region.tag.value, "cutoff": dec.region.cutoff,
           "direction_conflict": dec.region.direction_conflict,
           "conflict_at_kappa": dec.region.conflict_at_kappa,
           "tax_base": payload["tax_base"]}
    if dec.region.direction_conflict:
        print(f"warning: {dec.region.note}", file=sys.stderr)
    return Result(payload, [row])


def cmd_classify(ns) -> Result:
    values = _two_state(ns)
    model = _model(ns, values)
    eq = classify_equilibrium(model, values.alpha_L, values.alpha_H, values.rho)
    payload = eq.to_dict()
    row = {"kappa": model.kappa, "tag": eq.tag.value, "regime": eq.regime.value,
           **payload["thresholds"], "tax_base_g0": eq.tax_base_g0, "tax_base_g1": eq.tax_base_g1,
           "ic_agrees": eq.diagnostics["ic_agrees"]}
    code = EXIT_OK
    if ns.strict and eq.tag is EquilibriumTag.NO_PURE_EQUILIBRIUM:
        code = EXIT_NO_EQUILIBRIUM
    return Result(payload, [row], exit_code=code)


def cmd_jump(ns) -> Result:
    a_h = _get(ns, "alpha_h")
    model = _model(ns, Aligned(a_h))
    row = {"kappa": model.kappa, "J": jump_factor(model, a_h),
           "T0": equilibrium_tax_base(model, 0, a_h), "T1": equilibrium_tax_base(model, 1, a_h)}
    return Result(row, [row])


def cmd_simulate(ns) -> Result:
    values = _two_state(ns)
    model = _model(ns, values)
    sc = Scenario(model, values.alpha_L, values.alpha_H, values.rho, ns.horizon,
                  ns.shock_period, ns.initial_state)
    traj = run_timeline(sc)
    rows = [vars(r) for r in traj.records]
    return Result(traj.to_dict(), rows,
                  columns=["period", "alpha", "g", "posterior", "report", "tax_base", "tag"])


def cmd_verify(ns) -> Result:
    if ns.draws < 1:
        raise DomainViolation(f"draws={ns.draws} must be >= 1")
    reports = agreement_suite(ns.seed, ns.draws)
    rows = [{"target": r.target, "closed_form": r.closed_form, "oracle": r.oracle_value,
             "abs_err": r.abs_err, "passed": r.passed} for r in reports]
    n_fail = sum(not r.passed for r in reports)
    print(f"verify: {len(reports) - n_fail}/{len(reports)} checks passed "
          f"(seed={ns.seed}, draws={ns.draws})", file=sys.stderr)
    payload = [r.to_dict() for r in reports]
    return Result(payload, rows, columns=["target", "closed_form", "oracle", "abs_err", "passed"],
                  exit_code=EXIT_OK if n_fail == 0 else EXIT_INVALID)


def parse_axis(spec: str) -> tuple[str, np.ndarray]:
    """``name=lo:hi:n`` -> (dest, grid)."""
    try:
        name, rng = spec.split("=", 1)
        lo, hi, n = rng.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"axis {spec!r} must look like name=lo:hi:n")
    name = name.strip().replace("-", "_")
    if name not in PARAMS:
        raise UsageError(f"unknown sweep parameter {name!r}")
    if n < 2:
        raise DomainViolation(f"axis {name}: n={n} must be >= 2")
    if not lo < hi:
        raise DomainViolation(f"axis {name}: need lo < hi, got [{lo}, {hi}]")
    return name, np.linspace(lo, hi, n)


def sweep(axes: list[tuple[str, np.ndarray]], inner, base_ns) -> list[dict]:
    """Evaluate ``inner`` over the cross product of the axes, in row-major order."""
    if not 1 <= len(axes) <= 2:
        raise DomainViolation(f"sweep takes one or two axes, got {len(axes)}")
    names = [a[0] for a in axes]
    grids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    rows = []
    for idx in np.ndindex(grids[0].shape):
        ns = copy.copy(base_ns)
        point = {}
        for name, grid in zip(names, grids):
            value = float(grid[idx])
            setattr(ns, name, value)
            point[name] = value
        for r in inner(ns).rows:
            rows.append({**point, **{k: v for k, v in r.items() if k not in point}})
    return rows


def cmd_sweep(ns) -> Result:
    if not ns.command:
        raise UsageError("sweep needs a subcommand to wrap")
    if ns.command[0] in ("sweep", "verify"):
        raise UsageError(f"cannot sweep {ns.command[0]!r}")
    inner_ns = build_parser().parse_args(ns.command)
    _resolve_config(inner_ns)
    inner_ns._config = {**ns._config, **inner_ns._config}
    # output flags may sit after the wrapped subcommand
    ns.format = ns.format or inner_ns.format
    ns.output = ns.output or inner_ns.output
    axes = [parse_axis(a) for a in (ns.axis or [])]
    rows = sweep(axes, inner_ns.func, inner_ns)
    return Result(rows, rows)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    for dest, (flag, typ, help_) in PARAMS.items():
        common.add_argument(flag, dest=dest, type=typ, default=None, help=help_)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default: $FISCAP_FORMAT or json)")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--config", default=None, help="flat key=value parameter file")

    parser = _Parser(prog="fiscap", description="Homo Moralis fiscal-capacity solvers")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("report", parents=[common], help="citizen's optimal report")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("laffer", parents=[common], help="Laffer curve or peak")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=None, help="default: second root of the curve")
    p.add_argument("--n", type=int, default=1001, help="number of curve points")
    p.add_argument("--peak", action="store_true", help="emit only the revenue-maximizing point")
    p.set_defaults(func=cmd_laffer)

    p = sub.add_parser("elite", parents=[common], help="static allocation, region and cutoffs")
    p.set_defaults(func=cmd_elite)

    p = sub.add_parser("classify", parents=[common], help="dynamic equilibrium classification")
    p.add_argument("--strict", action="store_true", help="exit 2 when no pure equilibrium exists")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("jump", parents=[common], help="same-period fiscal multiplier")
    p.set_defaults(func=cmd_jump)

    p = sub.add_parser("simulate", parents=[common], help="deterministic timeline")
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--shock-period", type=int, default=None)
    p.add_argument("--initial-state", choices=("low", "high"), default="low")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="grid over one or two parameters")
    p.add_argument("--axis", action="append", help="name=lo:hi:n (repeat for a second axis)")
    p.add_argument("command", nargs=argparse.REMAINDER, help="subcommand and its flags")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="closed forms vs brute-force oracles")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--draws", type=int, default=1000)
    p.set_defaults(func=cmd_verify)
    return parser


def _resolve_config(ns) -> None:
    ns._config = read_config(ns.config) if getattr(ns, "config", None) else {}
    for key in ns._config:
        if key not in PARAMS and key not in ("format",):
            raise UsageError(f"unknown config key {key!r}")


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = build_parser().parse_args(argv)
        _resolve_config(ns)
        result = ns.func(ns)
        fmt = ns.format or ns._config.get("format") or os.environ.get("FISCAP_FORMAT") or "json"
        if fmt not in ("json", "csv"):
            raise UsageError(f"unknown format {fmt!r}")
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NoEquilibrium as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_EQUILIBRIUM
    except FiscapError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    text = dump_json(result.payload) if fmt == "json" else dump_csv(result.rows, result.columns)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
