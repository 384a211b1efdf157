"""Command-line front end.

Subcommands print CSV on stdout, preceded by ``#`` comment lines that echo
the scenario in config-file syntax::

    irscov coverage --config link.cfg --threshold-db 10
    irscov sweep --variable n_elements --start 1 --stop 30 --points 30
    irscov optimal-n --threshold-db 10 20 30
    irscov validate-mc --trials 100000 --seed 1 --workers 4
    irscov ks-test --sigma 1 --trials 100000 --seed 7

Exit status: 0 on success, 1 for bad input, 2 when a numerical search or
iteration fails to converge.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import CALIBRATED_SIGMA, Scenario, validate
from .coverage import CoverageQuery, analytic_coverage, optimal_elements
from .dist import RayleighPair, gamma_cdf, ks_statistic, moment_match, product_cdf, sample_product
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    NoSolutionError,
    PreconditionError,
    ValidationError,
)
from .mc import SimConfig, chunk_rng, empirical_cdf, simulate_coverage, simulate_sweep

__all__ = [
    "SweepSpec",
    "parse_config",
    "parse_config_text",
    "scenario_to_config",
    "extract_scenario_echo",
    "run",
    "main",
]

DEFAULT_WAVELENGTH_M = 0.06
CONFIG_KEYS = (
    "d_s_m",
    "d_r_m",
    "theta_s_deg",
    "g_s_dbi",
    "g_r_dbi",
    "p_s_dbm",
    "noise_dbm",
    "element_side_m",
    "n_elements",
    "wavelength_m",
    "sigma1",
    "sigma2",
)
SWEEP_VARIABLES = ("threshold_db", "n_elements", "element_side", "sigma", "theta_s")
ECHO_PREFIX = "# scenario: "


def db_to_linear(x: float) -> float:
    return 10.0 ** (x / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


# --------------------------------------------------------------------------
# config files


def parse_config_text(text: str) -> Scenario:
    """Parse ``key = value`` lines into a Scenario; missing keys take defaults.

    Raises ConfigError for syntax problems and ValidationError when the
    resulting scenario breaks an invariant.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        try:
            num = int(value) if key == "n_elements" else float(value)
        except ValueError:
            kind = "an integer" if key == "n_elements" else "a number"
            raise ConfigError(f"{key} must be {kind}, got {value!r}", lineno) from None
        raw[key] = num

    wavelength = raw.get("wavelength_m", DEFAULT_WAVELENGTH_M)
    scenario = Scenario(
        d_s=raw.get("d_s_m", 100.0),
        d_r=raw.get("d_r_m", 100.0),
        theta_s=math.radians(raw.get("theta_s_deg", 0.0)),
        g_s=db_to_linear(raw.get("g_s_dbi", 0.0)),
        g_r=db_to_linear(raw.get("g_r_dbi", 0.0)),
        p_s=db_to_linear(raw.get("p_s_dbm", 0.0)),
        noise_power=db_to_linear(raw.get("noise_dbm", -90.0)),
        element_side=raw.get("element_side_m", wavelength / 2),
        n_elements=raw.get("n_elements", 1),
        wavelength=wavelength,
        sigma1=raw.get("sigma1", CALIBRATED_SIGMA),
        sigma2=raw.get("sigma2", CALIBRATED_SIGMA),
    )
    errors = [d for d in validate(scenario) if d.severity == "error"]
    if errors:
        raise ValidationError(errors)
    return scenario


def parse_config(path) -> Scenario:
    return parse_config_text(Path(path).read_text(encoding="utf-8"))


def _exact_text(value: float, forward, inverse) -> str:
    """Shortest decimal ``c`` near ``forward(value)`` with ``inverse(c) == value``.

    Unit conversions are not bijective in floating point, so the naive
    ``repr(forward(value))`` may parse back one ulp away.
    """
    guess = forward(value)
    up = down = guess
    for _ in range(64):
        for cand in (up, down):
            if inverse(float(repr(cand))) == value:
                return repr(cand)
        up, down = math.nextafter(up, math.inf), math.nextafter(down, -math.inf)
    return repr(guess)


def scenario_to_config(s: Scenario) -> str:
    """Config-file text that parses back to exactly ``s``."""
    db = lambda v: _exact_text(v, linear_to_db, db_to_linear)
    values = {
        "d_s_m": repr(s.d_s),
        "d_r_m": repr(s.d_r),
        "theta_s_deg": _exact_text(s.theta_s, math.degrees, math.radians),
        "g_s_dbi": db(s.g_s),
        "g_r_dbi": db(s.g_r),
        "p_s_dbm": db(s.p_s),
        "noise_dbm": db(s.noise_power),
        "element_side_m": repr(s.element_side),
        "n_elements": str(int(s.n_elements)),
        "wavelength_m": repr(s.wavelength),
        "sigma1": repr(s.sigma1),
        "sigma2": repr(s.sigma2),
    }
    return "".join(f"{k} = {values[k]}\n" for k in CONFIG_KEYS)


def extract_scenario_echo(csv_text: str) -> str:
    """Recover the config text echoed in a CSV header."""
    return "".join(
        line[len(ECHO_PREFIX):] + "\n"
        for line in csv_text.splitlines()
        if line.startswith(ECHO_PREFIX)
    )


# --------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"unknown sweep variable {self.variable!r}")
        if not self.start < self.stop:
            raise DomainError("sweep needs start < stop")
        if self.points < 2:
            raise DomainError("sweep needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise DomainError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and self.start <= 0:
            raise DomainError("log sweep needs start > 0")

    def values(self) -> np.ndarray:
        space = np.geomspace if self.scale == "log" else np.linspace
        v = space(self.start, self.stop, self.points)
        if self.variable == "n_elements":
            v = np.rint(v)
        return v


def _apply(variable: str, value: float, scenario: Scenario, threshold: float,
           fixed_area: float | None):
    if variable == "threshold_db":
        return scenario, db_to_linear(value)
    if variable == "n_elements":
        return scenario.replace(n_elements=int(value)), threshold
    if variable == "element_side":
        s = scenario.replace(element_side=float(value))
        if fixed_area is not None:
            s = s.replace(n_elements=max(1, round(fixed_area / value**2)))
        return s, threshold
    if variable == "sigma":
        return scenario.replace(sigma1=float(value), sigma2=float(value)), threshold
    return scenario.replace(theta_s=math.radians(value)), threshold


# --------------------------------------------------------------------------
# output


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{x:.12g}"


class _Table:
    def __init__(self, out, command: str, scenario: Scenario | None, extra=()):
        self.out = out
        out.write(f"# irscov {command}\n")
        for line in extra:
            out.write(f"# {line}\n")
        if scenario is not None:
            for line in scenario_to_config(scenario).splitlines():
                out.write(ECHO_PREFIX + line + "\n")

    def header(self, *cols):
        self.out.write(",".join(cols) + "\n")

    def row(self, *vals):
        self.out.write(",".join(v if isinstance(v, str) else _fmt(v) for v in vals) + "\n")


def _warn(err, diagnostics):
    for d in diagnostics:
        field = getattr(d, "field", None)
        msg = f"{field}: {d.message}" if field else str(d)
        err.write(f"warning: {msg}\n")


# --------------------------------------------------------------------------
# commands


def _load_scenario(args, err) -> Scenario:
    s = parse_config(args.config) if args.config else parse_config_text("")
    if args.n_elements is not None:
        s = s.replace(n_elements=args.n_elements)
    diags = validate(s)
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise ValidationError(errors)
    _warn(err, diags)
    return s


def _sim_config(args) -> SimConfig:
    return SimConfig(trials=args.trials, seed=args.seed, workers=args.workers)


def _cmd_coverage(args, out, err):
    s = _load_scenario(args, err)
    threshold = db_to_linear(args.threshold_db)
    res = analytic_coverage(CoverageQuery(s, threshold), args.method)
    _warn(err, res.diagnostics)
    table = _Table(out, "coverage", s, [f"method: {res.method}"])
    if args.mc:
        rep = simulate_coverage(CoverageQuery(s, threshold), _sim_config(args))
        table.header("variable", "value", "p_analytic", "p_mc", "ci95")
        table.row("threshold_db", args.threshold_db, res.probability, rep.estimate,
                  rep.half_width_95)
    else:
        table.header("variable", "value", "p_analytic")
        table.row("threshold_db", args.threshold_db, res.probability)


def _cmd_sweep(args, out, err):
    s = _load_scenario(args, err)
    spec = SweepSpec(args.variable, args.start, args.stop, args.points, args.scale)
    base_threshold = db_to_linear(args.threshold_db)
    extra = [f"sweep: {spec.variable} {spec.scale} {_fmt(spec.start)}..{_fmt(spec.stop)} "
             f"({spec.points} points)"]
    if spec.variable != "threshold_db":
        extra.append(f"threshold_db: {_fmt(args.threshold_db)}")
    if args.fixed_area is not None:
        extra.append(f"fixed_area_m2: {_fmt(args.fixed_area)}")
    table = _Table(out, "sweep", s, extra)
    cols = ["variable", "value", "p_analytic"] + (["p_mc", "ci95"] if args.mc else [])
    table.header(*cols)
    cfg = _sim_config(args) if args.mc else None
    values = spec.values()
    mc_rows = None
    if args.mc and spec.variable == "threshold_db":
        mc_rows = simulate_sweep(s, db_to_linear(values), cfg)
    for i, v in enumerate(values):
        sc, th = _apply(spec.variable, v, s, base_threshold, args.fixed_area)
        q = CoverageQuery(sc, th)
        method = args.method if not (args.method == "exact" and sc.n_elements != 1) else "gamma"
        p = analytic_coverage(q, method).probability
        if args.mc:
            rep = mc_rows[i] if mc_rows is not None else simulate_coverage(q, cfg)
            table.row(spec.variable, v, p, rep.estimate, rep.half_width_95)
        else:
            table.row(spec.variable, v, p)


def _cmd_optimal_n(args, out, err):
    s = _load_scenario(args, err)
    extra = [f"epsilon: {_fmt(args.epsilon)}"]
    table = _Table(out, "optimal-n", s, extra)
    cols = ["variable", "value", "p_analytic", "n_star"] + (["p_mc", "ci95"] if args.mc else [])
    table.header(*cols)
    for th_db in args.threshold_db:
        th = db_to_linear(th_db)
        n = optimal_elements(s, th, args.epsilon, args.max_elements)
        q = CoverageQuery(s.replace(n_elements=n), th)
        p = analytic_coverage(q, "gamma").probability
        if args.mc:
            rep = simulate_coverage(q, _sim_config(args))
            table.row("threshold_db", th_db, p, n, rep.estimate, rep.half_width_95)
        else:
            table.row("threshold_db", th_db, p, n)


def _cmd_validate_mc(args, out, err):
    s = _load_scenario(args, err)
    spec = SweepSpec("threshold_db", args.start, args.stop, args.points)
    values = spec.values()
    cfg = _sim_config(args)
    reports = simulate_sweep(s, db_to_linear(values), cfg)
    table = _Table(out, "validate-mc", s, [f"trials: {cfg.trials}", f"seed: {cfg.seed}"])
    table.header("variable", "value", "p_analytic", "p_mc", "ci95")
    for v, rep in zip(values, reports):
        p = analytic_coverage(CoverageQuery(s, db_to_linear(v)), args.method).probability
        table.row("threshold_db", v, p, rep.estimate, rep.half_width_95)


def _cmd_ks_test(args, out, err):
    table = _Table(out, "ks-test", None, [f"trials: {args.trials}", f"seed: {args.seed}"])
    table.header("variable", "value", "ks_gamma_fit", "ks_exact", "critical_01")
    for idx, sigma in enumerate(args.sigma):
        pair = RayleighPair(sigma, sigma)
        rng = chunk_rng(args.seed, idx)
        ecdf = empirical_cdf(sample_product(pair, rng, args.trials))
        fit = moment_match(pair)
        ks_fit = ks_statistic(ecdf, lambda x: gamma_cdf(fit, x))
        ks_exact = ks_statistic(ecdf, lambda x: product_cdf(pair, x))
        table.row("sigma", sigma, ks_fit, ks_exact, 1.628 / math.sqrt(args.trials))


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="irscov", description="Coverage probability of IRS-aided links.")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_args(p):
        p.add_argument("--config", help="scenario config file (key = value lines)")
        p.add_argument("--n-elements", type=int, help="override the element count")

    def mc_args(p, trials=100_000):
        p.add_argument("--trials", type=_positive_int, default=trials)
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--workers", type=_positive_int, default=1)

    def method_arg(p):
        p.add_argument("--method", choices=("auto", "gamma", "exact"), default="auto",
                       help="analytic form: exact needs N = 1; auto picks exact when N = 1")

    p = sub.add_parser("coverage", help="coverage probability at one threshold")
    scenario_args(p)
    p.add_argument("--threshold-db", type=float, required=True)
    method_arg(p)
    p.add_argument("--mc", action="store_true", help="add a Monte Carlo estimate")
    mc_args(p)
    p.set_defaults(func=_cmd_coverage)

    p = sub.add_parser("sweep", help="coverage over a swept parameter")
    scenario_args(p)
    p.add_argument("--variable", choices=SWEEP_VARIABLES, required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--threshold-db", type=float, default=10.0,
                   help="threshold when another variable is swept")
    p.add_argument("--fixed-area", type=float,
                   help="element_side sweeps: keep N * l_e^2 at this area [m^2]")
    method_arg(p)
    p.add_argument("--mc", action="store_true")
    mc_args(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("optimal-n", help="minimum element count for complete coverage")
    scenario_args(p)
    p.add_argument("--threshold-db", type=float, nargs="+", required=True)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--max-elements", type=_positive_int, default=10**6)
    p.add_argument("--mc", action="store_true", help="confirm each N* by simulation")
    mc_args(p)
    p.set_defaults(func=_cmd_optimal_n)

    p = sub.add_parser("validate-mc", help="analytic vs Monte Carlo over a threshold sweep")
    scenario_args(p)
    p.add_argument("--start", type=float, default=-30.0, help="first threshold [dB]")
    p.add_argument("--stop", type=float, default=30.0, help="last threshold [dB]")
    p.add_argument("--points", type=int, default=13)
    method_arg(p)
    mc_args(p)
    p.set_defaults(func=_cmd_validate_mc)

    p = sub.add_parser("ks-test", help="KS distance of Rayleigh-product samples to the Gamma fit")
    p.add_argument("--sigma", type=float, nargs="+", default=[1.0])
    mc_args(p)
    p.set_defaults(func=_cmd_ks_test)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out, err)
    except ValidationError as exc:
        for d in exc.diagnostics:
            err.write(f"error: {d.field}: {d.message}\n")
        return 1
    except (ConfigError, DomainError, PreconditionError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (ConvergenceError, NoSolutionError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
