"""Command-line interface.

Exit codes: 0 success, 1 usage or validation error, 2 parameter outside the
model's domain, 3 solver did not converge. Errors go to stderr as a single
``CODE: message`` line; nothing is written to the output on failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigError, ModelError, NoConvergence
from .figures import (
    FIGURE_COLUMNS,
    figure_complex_vs_strategic,
    figure_multiple,
    figure_simple,
    full_equilibrium_dict,
    simple_equilibrium_dict,
)
from .full_model import (
    DEFAULT_MAX_ITER,
    Classification,
    FullParams,
    enumerate_equilibria,
    solve_full_equilibrium,
)
from .montecarlo import SimConfig, simulate, verify_equilibrium
from .serialize import dumps_csv, dumps_json
from .simple_model import (
    SimpleParams,
    offpath_bad_simple_price,
    solve_simple_closed_form,
    solve_simple_fixed_point,
)
from .statics import (
    FULL_SWEEP_COLUMNS,
    SIMPLE_SWEEP_COLUMNS,
    SweepSpec,
    complex_propensity,
    run_sweep,
)

FULL_KEYS = ("chi", "rho_s", "rho_u", "forced_simple", "forced_obfuscate")
# parameters of the default full-model configuration; rho_s sits close enough
# to chi that both equilibrium classes exist
DEFAULT_FULL = {"chi": 0.7, "rho_s": 0.65, "rho_u": 0.2, "forced_simple": 0.1, "forced_obfuscate": 0.1}


class UsageError(ConfigError):
    code = "USAGE"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out", type=Path, default=None, help="write here instead of stdout")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    return p


def _full_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="flat JSON object of model parameters")
    for key in FULL_KEYS:
        p.add_argument("--" + key.replace("_", "-"), dest=key, type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="strategic-complexity", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    p = sub.add_parser("solve-simple", parents=[common], help="one-parameter model")
    p.add_argument("--q", type=float, required=True)

    p = sub.add_parser("solve-full", parents=[common], help="three-message model")
    _full_flags(p)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--n-starts", type=int, default=4)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)

    p = sub.add_parser("sweep", parents=[common], help="comparative statics")
    p.add_argument("--model", choices=("simple", "full"), required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--cold", action="store_true", help="enumerate at every point")
    p.add_argument("--branch", choices=[c.value for c in Classification], default=None)
    p.add_argument("--n-starts", type=int, default=4)
    _full_flags(p)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo check")
    p.add_argument("--model", choices=("simple", "full"), required=True)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z-threshold", type=float, default=4.0)
    _full_flags(p)

    p = sub.add_parser("figure", parents=[common], help="price-schedule plot data")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--q", type=float, default=0.75)
    p.add_argument("--n-starts", type=int, default=4)
    _full_flags(p)
    return parser


def load_config(path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a flat JSON object")
    unknown = sorted(set(data) - set(FULL_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    for k, v in data.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"config value {k!r} must be a number")
    return data


def full_params_from(args, defaults: dict | None = None) -> FullParams:
    """Defaults, then the config file, then explicit flags."""
    values = dict(defaults or {})
    values.update(load_config(args.config))
    for key in FULL_KEYS:
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    missing = [k for k in ("chi", "rho_s", "rho_u") if k not in values]
    if missing:
        raise ConfigError(f"missing parameters: {', '.join(missing)}")
    for k, v in values.items():
        if not math.isfinite(float(v)):
            raise ConfigError(f"{k} must be finite")
    return FullParams(**{k: float(v) for k, v in values.items()})


def _emit(payload: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(payload)
        sys.stdout.flush()
    else:
        Path(out).write_text(payload, encoding="utf-8", newline="\n")


def cmd_solve_simple(args) -> str:
    params = SimpleParams(args.q)
    tol = args.tol if args.tol is not None else 1e-12
    closed = solve_simple_closed_form(params)
    notice = None
    eq = closed
    if params.q >= 1.0:
        fixed = None
        notice = "q = 1: fixed-point path skipped, closed form used"
    else:
        fixed = solve_simple_fixed_point(params, tol=tol)
    agreement = None if fixed is None else abs(fixed.tau - closed.tau)
    if args.format == "csv":
        row = {
            "q": eq.q, "tau": eq.tau, "p_nondisc": eq.p_nondisc, "p_simple": eq.p_simple,
            "tau_closed_form": closed.tau,
            "tau_fixed_point": None if fixed is None else fixed.tau,
            "agreement": agreement,
            "complex_propensity": complex_propensity(eq),
        }
        return dumps_csv(list(row), [row])
    doc = simple_equilibrium_dict(eq)
    doc["off_path"] = {"simple_bad": offpath_bad_simple_price()}
    doc["diagnostics"] = {
        "tau_closed_form": closed.tau,
        "tau_fixed_point": None if fixed is None else fixed.tau,
        "agreement": agreement,
        "notice": notice,
    }
    return dumps_json(doc)


def cmd_solve_full(args) -> str:
    params = full_params_from(args)
    tol = args.tol if args.tol is not None else 1e-8
    params.check_ordering()
    if args.max_iter < 1:
        raise ConfigError("--max-iter must be positive")
    if args.enumerate:
        found = enumerate_equilibria(params, n_starts=args.n_starts, tol=tol, max_iter=args.max_iter)
        eqs, n_starts, n_failed = found.equilibria, found.n_starts, found.n_failed
        if not eqs:
            raise NoConvergence(f"none of {n_starts} starts converged")
    else:
        eq = solve_full_equilibrium(params, tol=tol, max_iter=args.max_iter)
        eqs, n_starts, n_failed = [eq], 1, 0
    if args.format == "csv":
        rows = []
        for k, eq in enumerate(eqs):
            d = full_equilibrium_dict(eq)
            rows.append({
                "eq_index": k, "t1": eq.t1, "t2": eq.t2, **d["beliefs"],
                "off_path": " ".join(d["beliefs"]["off_path"]),
                "classification": eq.classification.value, "residual": eq.residual,
            })
        cols = ("eq_index", "t1", "t2", "e_simple", "e_complex", "e_obfusc",
                "off_path", "classification", "residual")
        return dumps_csv(cols, rows)
    return dumps_json({
        "model": "full",
        "params": params.as_dict(),
        "equilibria": [full_equilibrium_dict(eq) for eq in eqs],
        "diagnostics": {"n_starts": n_starts, "n_failed": n_failed},
    })


def cmd_sweep(args) -> str:
    tol = args.tol if args.tol is not None else 1e-8
    if args.model == "simple":
        base = SimpleParams(1.0)
        columns = SIMPLE_SWEEP_COLUMNS
    else:
        base = full_params_from(args, DEFAULT_FULL)
        columns = FULL_SWEEP_COLUMNS
    spec = SweepSpec(
        param=args.param, start=args.start, stop=args.stop, steps=args.steps, base=base,
        mode="cold" if args.cold else "continuation",
        branch=Classification(args.branch) if args.branch else None,
        tol=tol, n_starts=args.n_starts,
    )
    rows = [r.as_row() for r in run_sweep(spec)]
    if args.format == "json":
        return dumps_json({"columns": list(columns), "rows": [{c: r.get(c) for c in columns} for r in rows]})
    return dumps_csv(columns, rows)


def cmd_simulate(args) -> str:
    if args.n is None or args.n < 1:
        raise ConfigError("--n must be a positive integer")
    seed = args.seed if args.seed is not None else 0
    if args.model == "simple":
        if args.q is None:
            raise ConfigError("--q is required for the simple model")
        model = SimpleParams(args.q)
        eq = solve_simple_closed_form(model)
        eq_doc = simple_equilibrium_dict(eq)
    else:
        model = full_params_from(args, DEFAULT_FULL)
        eq = solve_full_equilibrium(model, tol=args.tol if args.tol is not None else 1e-8)
        eq_doc = full_equilibrium_dict(eq)
    config = SimConfig(n_draws=args.n, seed=seed, model=model, equilibrium=eq)
    report = simulate(config)
    verdict = verify_equilibrium(config, z_threshold=args.z_threshold, report=report)
    if args.format == "csv":
        rows = [
            {"statistic": name, **s.as_dict()} for name, s in report.statistics.items()
        ]
        return dumps_csv(("statistic", "empirical", "analytic", "std_error", "z", "count"), rows)
    doc = report.as_dict()
    doc["equilibrium"] = eq_doc
    doc["verdict"] = "PASS" if verdict.passed else "FAIL"
    doc["verification"] = verdict.as_dict()
    return dumps_json(doc)


def cmd_figure(args) -> str:
    if args.which == 3:
        blocks = figure_simple(solve_simple_closed_form(SimpleParams(args.q)))
    else:
        params = full_params_from(args, DEFAULT_FULL)
        tol = args.tol if args.tol is not None else 1e-8
        params.check_ordering()
        if args.which == 1:
            blocks = figure_complex_vs_strategic(params, tol=tol)
        else:
            blocks = figure_multiple(params, n_starts=args.n_starts, tol=tol)
            if not blocks:
                raise NoConvergence("no equilibrium found")
    if args.format == "json":
        return dumps_json({
            "figure": args.which,
            "columns": list(FIGURE_COLUMNS),
            "blocks": [
                {"label": b.label, "breakpoints": b.breakpoints, "equilibrium": b.equilibrium, "rows": b.rows}
                for b in blocks
            ],
        })
    return dumps_csv(FIGURE_COLUMNS, [row for b in blocks for row in b.rows])


COMMANDS = {
    "solve-simple": (cmd_solve_simple, "json"),
    "solve-full": (cmd_solve_full, "json"),
    "sweep": (cmd_sweep, "csv"),
    "simulate": (cmd_simulate, "json"),
    "figure": (cmd_figure, "csv"),
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        func, default_format = COMMANDS[args.command]
        if args.format is None:
            args.format = default_format
        if args.tol is not None and not args.tol > 0:
            raise ConfigError("--tol must be positive")
        if args.seed is not None and args.seed < 0:
            raise ConfigError("--seed must be non-negative")
        payload = func(args)
        _emit(payload, args.out)
    except ModelError as exc:
        msg = " ".join(str(exc).split())
        print(f"{exc.code}: {msg}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
