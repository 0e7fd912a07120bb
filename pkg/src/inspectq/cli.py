"""Command-line front end.

Subcommands: equilibrium, revenue-curve, optimize, policy, validate.
Exit codes: 0 success/PASS, 1 validation FAIL, 2 usage or domain error.
CSV output is RFC-4180-style with '#'-prefixed header comment lines that
echo the fully resolved parameter set, so identical invocations produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import sys

from .access import optimal_access_fee, revenue_access
from .equilibrium import solve_equilibrium
from .errors import InspectqError
from .info import optimize_info_fee_refine, revenue_info
from .model import SystemParams, utility_inspect, utility_no_inspect
from .policy import find_thresholds
from .sim import SimConfig, validate_against_analytic

_PARAM_FLAGS = ("lambda", "mu", "reward", "wait-cost", "inspect-cost", "access-fee")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _read_config(path: str) -> dict[str, str]:
    """key=value lines; keys mirror the long flag names."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="optional key=value file; flags win on conflict")
    sub.add_argument("--lambda", dest="lam", type=float, help="arrival rate")
    sub.add_argument("--mu", type=float, help="service rate")
    sub.add_argument("--reward", type=float, help="service valuation R")
    sub.add_argument("--wait-cost", type=float, help="waiting cost per unit time")
    sub.add_argument("--inspect-cost", type=float, help="price of queue-length signal")
    sub.add_argument("--access-fee", type=float, default=None, help="admission fee")


def _resolve_params(args, required=("lam", "mu", "reward", "wait_cost")) -> SystemParams:
    values = {
        "lam": args.lam,
        "mu": args.mu,
        "reward": args.reward,
        "wait_cost": args.wait_cost,
        "inspect_cost": args.inspect_cost,
        "access_fee": args.access_fee,
    }
    if args.config:
        cfg = _read_config(args.config)
        alias = {
            "lambda": "lam",
            "mu": "mu",
            "reward": "reward",
            "wait-cost": "wait_cost",
            "inspect-cost": "inspect_cost",
            "access-fee": "access_fee",
        }
        for key, dest in alias.items():
            if values[dest] is None and key in cfg:
                values[dest] = float(cfg[key])
    missing = [k for k in required if values[k] is None]
    if missing:
        raise SystemExit2(f"missing required parameter(s): {', '.join(missing)}")
    values = {k: (0.0 if v is None else v) for k, v in values.items()}
    return SystemParams(**values)


class SystemExit2(Exception):
    """Usage/domain failure surfaced as exit code 2."""


def _param_header(params: SystemParams, extra: dict | None = None) -> list[str]:
    fields = {
        "lambda": params.lam,
        "mu": params.mu,
        "reward": params.reward,
        "wait-cost": params.wait_cost,
        "inspect-cost": params.inspect_cost,
        "access-fee": params.access_fee,
    }
    if extra:
        fields.update(extra)
    return [f"# {k}={_fmt(v) if isinstance(v, float) else v}" for k, v in fields.items()]


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_equilibrium(args) -> int:
    params = _resolve_params(
        args, required=("lam", "mu", "reward", "wait_cost", "inspect_cost")
    )
    res = solve_equilibrium(params)
    ui = utility_inspect(params, res.p_star)
    uni = utility_no_inspect(params, res.p_star)
    print(f"p_star={_fmt(res.p_star)}")
    print(f"branch={res.branch.value}")
    print(f"residual={_fmt(res.residual) if res.residual is not None else 'n/a'}")
    print(f"u_inspect={_fmt(ui)}")
    print(f"u_no_inspect={_fmt(uni)}")
    return 0


def _cmd_revenue_curve(args) -> int:
    params = _resolve_params(args)
    if args.fee_min < 0 or args.fee_max <= args.fee_min or args.points < 2:
        raise SystemExit2("need 0 <= fee-min < fee-max and points >= 2")
    lines = _param_header(
        params, {"mechanism": args.mechanism, "points": str(args.points)}
    )
    lines.append("fee,equilibrium,revenue")
    for k in range(args.points):
        fee = args.fee_min + (args.fee_max - args.fee_min) * k / (args.points - 1)
        if args.mechanism == "access":
            rev = revenue_access(params, fee)
            eq = rev / (params.lam * fee) if fee > 0 else 1.0
        else:
            rev = revenue_info(params, fee)
            eq = rev / (params.lam * fee) if fee > 0 else solve_equilibrium(
                params.with_(inspect_cost=0.0)
            ).p_star
        lines.append(f"{_fmt(fee)},{_fmt(eq)},{_fmt(rev)}")
    _emit(lines, args.output)
    return 0


def _cmd_optimize(args) -> int:
    params = _resolve_params(args)
    if args.mechanism == "access":
        res = optimal_access_fee(params)
        print(f"optimal_fee={_fmt(res.optimal_fee)}")
        print(f"optimal_revenue={_fmt(res.optimal_revenue)}")
        for c in res.candidates:
            print(
                f"candidate fee={_fmt(c.fee)} revenue={_fmt(c.revenue)} "
                f"valid={'yes' if c.valid else 'no'}"
            )
    else:
        res = optimize_info_fee_refine(params, tol=args.tol)
        print(f"optimal_fee={_fmt(res.optimal_fee)}")
        print(f"optimal_revenue={_fmt(res.optimal_revenue)}")
    return 0


def _cmd_policy(args) -> int:
    if not (0 < args.cw_min < args.cw_max):
        raise SystemExit2("need 0 < cw-min < cw-max")
    if args.wait_cost is None:
        args.wait_cost = args.cw_min  # placeholder; the sweep overrides it
    params = _resolve_params(args, required=("lam", "mu", "reward"))
    report = find_thresholds(params, args.cw_min, args.cw_max, grid_n=args.grid)
    lines = _param_header(
        params,
        {
            "cw-min": args.cw_min,
            "cw-max": args.cw_max,
            "grid": str(args.grid),
            "thresholds": " ".join(_fmt(t) for t in report.thresholds) or "none",
        },
    )
    lines.append("cw,ra_star,ri_star,winner")
    for row in report.rows:
        lines.append(
            f"{_fmt(row.wait_cost)},{_fmt(row.ra_star)},"
            f"{_fmt(row.ri_star)},{row.winner.value}"
        )
    _emit(lines, args.output)
    n = len(report.thresholds)
    summary = f"thresholds: {n} " + (
        "(" + ", ".join(_fmt(t) for t in report.thresholds) + ")" if n else ""
    )
    print(summary.rstrip(), file=sys.stderr if args.output else sys.stdout)
    return 0


def _cmd_validate(args) -> int:
    params = _resolve_params(args)
    config = SimConfig(
        params=params,
        p=args.p,
        horizon_events=args.events,
        warmup_events=args.warmup,
        seed=args.seed,
    )
    report = validate_against_analytic(config, tol_tv=args.tol_tv)
    print(f"tv_distance={_fmt(report.tv_distance)} (tol {_fmt(report.tv_tol)})")
    for name, m in (
        ("u_inspect", report.u_inspect_margin_se),
        ("u_no_inspect", report.u_no_inspect_margin_se),
    ):
        print(f"{name}_margin_se={_fmt(m) if m is not None else 'n/a'}")
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inspectq",
        description="Equilibria and revenue-optimal pricing for the inspection queue",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    eq = sub.add_parser("equilibrium", help="solve the inspection equilibrium")
    _add_param_flags(eq)
    eq.set_defaults(func=_cmd_equilibrium)

    rc = sub.add_parser("revenue-curve", help="CSV of revenue vs fee")
    _add_param_flags(rc)
    rc.add_argument("--mechanism", choices=("access", "info"), required=True)
    rc.add_argument("--fee-min", type=float, required=True)
    rc.add_argument("--fee-max", type=float, required=True)
    rc.add_argument("--points", type=int, default=200)
    rc.add_argument("--output", help="CSV path (default stdout)")
    rc.set_defaults(func=_cmd_revenue_curve)

    op = sub.add_parser("optimize", help="optimal fee for one mechanism")
    _add_param_flags(op)
    op.add_argument("--mechanism", choices=("access", "info"), required=True)
    op.add_argument("--tol", type=float, default=1e-6)
    op.set_defaults(func=_cmd_optimize)

    po = sub.add_parser("policy", help="sweep wait cost and compare mechanisms")
    _add_param_flags(po)
    po.add_argument("--cw-min", type=float, required=True)
    po.add_argument("--cw-max", type=float, required=True)
    po.add_argument("--grid", type=int, default=64)
    po.add_argument("--output", help="CSV path (default stdout)")
    po.set_defaults(func=_cmd_policy)

    va = sub.add_parser("validate", help="simulate and compare against closed forms")
    _add_param_flags(va)
    va.add_argument("--p", type=float, required=True, help="inspection probability")
    va.add_argument("--events", type=int, default=1_000_000)
    va.add_argument("--warmup", type=int, default=None)
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--tol-tv", type=float, default=0.02)
    va.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InspectqError, SystemExit2, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
