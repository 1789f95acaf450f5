"""Command line interface: ``certify``, ``solve``, ``sweep`` and ``verify``.

Exit codes: 0 success, 1 usage error, 2 certification failure, 3 solver
failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .barriers import certify, resonance_condition
from .exceptions import (
    BracketEscape,
    InvalidBracketChoice,
    InvalidParams,
    NoConvergence,
    OscillatorError,
    ResonanceConditionViolated,
    SingularJacobian,
    WrongSignCase,
)
from .model import ProblemParams, rescale_period
from .pipeline import solve_instance
from .solvers import SolverConfig
from .spectral import PeriodicFunction
from .verify import (
    SYMMETRY_TOL,
    back_transform,
    bracket_bounds,
    build_report,
    phase_shift_symmetry,
    residual_norm,
)

EXIT_OK, EXIT_USAGE, EXIT_CERT, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3, 4

CSV_HEADER = (
    "mu,epsilon,omega,cond,ok,a2,a1,b2,b1,r,R,min_u,max_u,residual,iters,solver,status"
)

# flags whose value may start with '-' (negative numbers, ranges)
_VALUE_FLAGS = {"--mu", "--eps", "--omega", "--r", "--R"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Round-trip float text (17 significant digits) for CSV cells."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    count: int

    def values(self):
        if self.count == 1:
            return [self.lo]
        return list(np.linspace(self.lo, self.hi, self.count))


def parse_range(text: str, name: str) -> Range:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return Range(v, v, 1)
        if len(parts) == 3:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"--{name}: expected a value or min:max:count, got {text!r}") from None
    if count < 1 or lo > hi:
        raise UsageError(f"--{name}: need count >= 1 and min <= max, got {text!r}")
    return Range(lo, hi, count)


def read_config(path: str) -> dict:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.lstrip("-").replace("_", "-")] = value
    return out


_DEFAULTS = {
    "mu": None,
    "eps": None,
    "omega": "1",
    "r": None,
    "R": None,
    "n-grid": "128",
    "tol-residual": "1e-8",
    "tol-step": "1e-10",
    "allow-degenerate": "false",
    "format": None,
    "out": None,
    "jobs": "1",
    "report": None,
}


def _resolve(args) -> dict:
    """Merge flags over config-file values over built-in defaults."""
    settings = dict(_DEFAULTS)
    if args.config:
        cfg = read_config(args.config)
        unknown = set(cfg) - set(settings)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        settings.update(cfg)
    for key in settings:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None and value is not False:
            settings[key] = value if not isinstance(value, bool) else "true"
    return settings


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _float(settings, key):
    value = settings[key]
    if value is None:
        return None
    try:
        return float(value)
    except ValueError:
        raise UsageError(f"--{key}: not a number: {value!r}") from None


def _config(settings) -> SolverConfig:
    try:
        return SolverConfig(
            n_grid=int(settings["n-grid"]),
            iterate_tol=_float(settings, "tol-step"),
            residual_tol=_float(settings, "tol-residual"),
        )
    except (ValueError, InvalidParams) as exc:
        raise UsageError(str(exc)) from None


def _single(settings, key) -> float:
    if settings[key] is None:
        raise UsageError(f"--{key} is required")
    rng = parse_range(str(settings[key]), key)
    if rng.count != 1:
        raise UsageError(f"--{key}: this command takes a single value")
    return rng.lo


def _params(settings) -> ProblemParams:
    try:
        return ProblemParams(
            _single(settings, "mu"),
            _single(settings, "eps"),
            _single(settings, "omega"),
            allow_degenerate=_bool(settings["allow-degenerate"]),
        )
    except InvalidParams as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, settings) -> None:
    if settings["out"]:
        with open(settings["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    # json writes floats with repr(), which round-trips exactly
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


def _cert_doc(params: ProblemParams, cfn=None) -> dict:
    product = 4.0 * abs(params.mu) * abs(params.epsilon)
    doc = {
        "mu": params.mu,
        "epsilon": params.epsilon,
        "omega": params.omega,
        "condition_4me": product,
        "condition_ok": resonance_condition(params),
        "a1": None,
        "a2": None,
        "b1": None,
        "b2": None,
        "r": None,
        "R": None,
        "worst_lower": None,
        "worst_upper": None,
        "reflected": params.mu > 0,
        "certified": False,
    }
    if cfn is not None:
        c = cfn.cert
        doc.update(
            a1=c.a1, a2=c.a2, b1=c.b1, b2=c.b2, r=c.r, R=c.R,
            worst_lower=cfn.signs.worst_lower,
            worst_upper=cfn.signs.worst_upper,
            certified=cfn.signs.certified,
        )
    return doc


def _report_doc(report, include_solution=False) -> dict:
    doc = {
        "solver": report.solver,
        "sign_case": report.sign_case.value,
        "residual_sup": report.residual_sup,
        "residual_sup_refined": report.residual_sup_refined,
        "min_u": report.min_u,
        "max_u": report.max_u,
        "bracket_ok": report.bracket_ok,
        "lower_bound_ok": report.lower_bound_ok,
        "upper_bound_ok": report.upper_bound_ok,
        "positivity_ok": report.positivity_ok,
        "iterations": report.iterations,
        "degenerate_mode": report.degenerate_mode,
    }
    if include_solution:
        u = report.solution
        sampled = back_transform(u, report.params)
        doc["solution"] = {
            "n_grid": u.n_grid,
            "s": u.grid.tolist(),
            "values": u.values.tolist(),
            "coeffs_real": u.coeffs.real.tolist(),
            "coeffs_imag": u.coeffs.imag.tolist(),
            "t": sampled.t.tolist(),
            "period": sampled.period,
        }
    return doc


def _certify_params(params, settings):
    return certify(params, _float(settings, "r"), _float(settings, "R"))


def cmd_certify(settings) -> int:
    params = _params(settings)
    try:
        cfn = _certify_params(params, settings)
    except ResonanceConditionViolated as exc:
        print(f"certify: {exc}", file=sys.stderr)
        _emit(_dumps(_cert_doc(params)), settings)
        return EXIT_CERT
    except InvalidBracketChoice as exc:
        raise UsageError(str(exc)) from None
    except WrongSignCase as exc:
        print(f"certify: {exc}", file=sys.stderr)
        _emit(_dumps(_cert_doc(params)), settings)
        return EXIT_CERT
    _emit(_dumps(_cert_doc(params, cfn)), settings)
    return EXIT_OK if cfn.signs.certified else EXIT_CERT


def _solve_doc(outcome) -> dict:
    params = outcome.params
    config = outcome.config
    doc = {
        "params": {"mu": params.mu, "epsilon": params.epsilon, "omega": params.omega},
        "period": rescale_period(params),
        "degenerate_mode": params.is_degenerate,
        "certificate": _cert_doc(params, outcome.certification),
        "config": {
            "n_grid": config.n_grid,
            "lambda": outcome.lam,
            "iterate_tol": config.iterate_tol,
            "residual_tol": config.residual_tol,
        },
        "descending": _report_doc(outcome.descending, include_solution=True),
        "ascending": (
            _report_doc(outcome.ascending) if outcome.ascending is not None else None
        ),
        "newton": _report_doc(outcome.newton),
        "newton_shift": outcome.newton_shift,
        "monotone_violation": {
            "descending": outcome.descending_violation,
            "ascending": outcome.ascending_violation,
        },
        "checks": outcome.checks,
        "status": "ok" if outcome.ok else "verification_failed",
    }
    return doc


def cmd_solve(settings) -> int:
    params = _params(settings)
    config = _config(settings)
    try:
        outcome = solve_instance(
            params, config, _float(settings, "r"), _float(settings, "R")
        )
    except InvalidBracketChoice as exc:
        raise UsageError(str(exc)) from None
    except (ResonanceConditionViolated, WrongSignCase) as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (NoConvergence, BracketEscape, SingularJacobian) as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(_dumps(_solve_doc(outcome)), settings)
    if not outcome.ok:
        failed = [k for k, v in outcome.checks.items() if not v]
        print(f"solve: verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


_SWEEP_FIELDS = CSV_HEADER.split(",")
_SOLVER_FAILURES = ("no_convergence", "bracket_escape", "singular_jacobian")


def sweep_row(triple, config_fields, allow_degenerate=False) -> dict:
    """Certify and solve one triple; never raises for numerical failures."""
    mu, eps, omega = triple
    config = SolverConfig(**config_fields)
    row = dict.fromkeys(_SWEEP_FIELDS)
    row.update(mu=mu, epsilon=eps, omega=omega, cond=4.0 * abs(mu) * abs(eps), ok=False)
    try:
        params = ProblemParams(mu, eps, omega, allow_degenerate=allow_degenerate)
        cfn = certify(params)
    except (OscillatorError, ValueError):
        row["status"] = "uncertified"
        return row
    c = cfn.cert
    row.update(ok=cfn.signs.certified, a2=c.a2, a1=c.a1, b2=c.b2, b1=c.b1, r=c.r, R=c.R)
    if not cfn.signs.certified:
        row["status"] = "uncertified"
        return row
    try:
        outcome = solve_instance(params, config, ascending=False)
    except NoConvergence:
        row["status"] = "no_convergence"
        return row
    except BracketEscape:
        row["status"] = "bracket_escape"
        return row
    except SingularJacobian:
        row["status"] = "singular_jacobian"
        return row
    rep = outcome.descending
    row.update(
        min_u=rep.min_u,
        max_u=rep.max_u,
        residual=rep.residual_sup_refined,
        iters=rep.iterations,
        solver=rep.solver,
        status="ok" if outcome.ok else "verification_failed",
    )
    return row


def _triples(settings):
    ranges = []
    for key in ("mu", "eps", "omega"):
        if settings[key] is None:
            raise UsageError(f"--{key} is required")
        ranges.append(parse_range(str(settings[key]), key))
    return ranges, list(itertools.product(*(r.values() for r in ranges)))


def run_sweep(settings) -> tuple[list[dict], int]:
    _, triples = _triples(settings)
    config = _config(settings)
    fields = {
        "n_grid": config.n_grid,
        "iterate_tol": config.iterate_tol,
        "residual_tol": config.residual_tol,
    }
    degenerate = _bool(settings["allow-degenerate"])
    try:
        jobs = int(settings["jobs"])
    except ValueError:
        raise UsageError(f"--jobs: not an integer: {settings['jobs']!r}") from None
    args = [(t, fields, degenerate) for t in triples]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_star, args))
    else:
        rows = [sweep_row(*a) for a in args]
    solver_failed = any(r["status"] in _SOLVER_FAILURES for r in rows)
    verify_failed = any(r["status"] == "verification_failed" for r in rows)
    code = EXIT_SOLVER if solver_failed else EXIT_VERIFY if verify_failed else EXIT_OK
    return rows, code


def _sweep_star(a):
    return sweep_row(*a)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        cells = []
        for key in _SWEEP_FIELDS:
            value = row[key]
            cells.append(value or "" if key in ("solver", "status") else fmt(value))
        writer.writerow(cells)
    return buf.getvalue()


def cmd_sweep(settings) -> int:
    _triples(settings)
    if not any(":" in str(settings[k]) for k in ("mu", "eps", "omega")):
        raise UsageError("sweep needs at least one min:max:count range")
    rows, code = run_sweep(settings)
    if (settings["format"] or "csv") == "json":
        _emit(_dumps(rows), settings)
    else:
        _emit(rows_to_csv(rows), settings)
    return code


def verify_report_doc(doc: dict) -> dict:
    """Re-check a saved ``solve`` report from its stored grid samples."""
    p = doc["params"]
    params = ProblemParams(p["mu"], p["epsilon"], p["omega"], allow_degenerate=True)
    residual_tol = doc["config"]["residual_tol"]
    u = PeriodicFunction.from_values(doc["descending"]["solution"]["values"])
    cfn = certify(params)
    report = build_report(u, params, cfn.cert, doc["descending"]["iterations"], "stored")
    lo, hi = bracket_bounds(report.sign_case, cfn.cert)
    sampled = back_transform(u, params)
    original = float(np.max(np.abs(sampled.residual(params))))
    return {
        "certified": cfn.signs.certified,
        "residual_sup_refined": report.residual_sup_refined,
        "residual_ok": report.residual_sup_refined <= residual_tol,
        "original_residual": original,
        "original_residual_ok": original <= residual_tol * max(1.0, params.omega**2),
        "bracket": [lo, hi],
        "bracket_ok": report.bracket_ok,
        "sign_claim_ok": report.positivity_ok,
    }


def cmd_verify(settings) -> int:
    if settings["report"]:
        try:
            with open(settings["report"], encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read report: {exc}") from None
        try:
            checks = verify_report_doc(doc)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed report: {exc}") from None
        except (ResonanceConditionViolated, WrongSignCase) as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return EXIT_CERT
    else:
        params = _params(settings)
        config = _config(settings)
        try:
            outcome = solve_instance(params, config)
            discrepancy = (
                0.0 if params.epsilon == 0 else phase_shift_symmetry(params, config)
            )
        except (ResonanceConditionViolated, WrongSignCase) as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return EXIT_CERT
        except (NoConvergence, BracketEscape, SingularJacobian) as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        u = outcome.solution
        s_res = residual_norm(u, params)
        t_res = float(np.max(np.abs(back_transform(u, params).residual(params))))
        checks = dict(outcome.checks)
        checks.update(
            phase_shift_discrepancy=discrepancy,
            phase_shift_ok=discrepancy <= SYMMETRY_TOL,
            residual_s=s_res,
            residual_t=t_res,
            back_transform_ok=math.isclose(
                t_res, params.omega**2 * s_res, rel_tol=1e-10, abs_tol=1e-14
            ),
        )
    _emit(_dumps(checks), settings)
    ok = all(v for v in checks.values() if isinstance(v, bool))
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resonant-periodic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in (
        ("certify", "compute and check the barrier certificate"),
        ("solve", "solve one parameter triple and verify the solution"),
        ("sweep", "certify and solve a Cartesian grid of parameters"),
        ("verify", "re-verify a saved solve report or a fresh triple"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--mu")
        p.add_argument("--eps")
        p.add_argument("--omega")
        p.add_argument("--r", type=float)
        p.add_argument("--R", type=float)
        p.add_argument("--n-grid", type=int)
        p.add_argument("--tol-residual", type=float)
        p.add_argument("--tol-step", type=float)
        p.add_argument("--allow-degenerate", action="store_true", default=None)
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--out")
        p.add_argument("--config")
        if name == "sweep":
            p.add_argument("--jobs", type=int)
        if name == "verify":
            p.add_argument("--report")
    return parser


def _join_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


COMMANDS = {"certify": cmd_certify, "solve": cmd_solve, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_values(argv))
    try:
        settings = _resolve(args)
        if args.command != "sweep" and settings["format"] == "csv":
            raise UsageError("--format csv is only available for sweep")
        return COMMANDS[args.command](settings)
    except UsageError as exc:
        print(f"resonant-periodic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"resonant-periodic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
