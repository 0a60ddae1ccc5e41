#!/usr/bin/env python3
"""
FFL Command Line
Mu tables, Fitting ideals, L-values, Goss evaluation and identity checks from the shell

Usage:
    python3 ffl.py mu --p 3 --phi "[1]" --deg-max 4
    python3 ffl.py fitting --p 3 --phi "[0,1]" --f theta --deform z^1
    python3 ffl.py check degreewise --p 5 --phi "[1,1]" --n 1 --i-max 3
"""

import argparse
import sys

import pandas as pd

import console
from drinfeld import (
    DrinfeldModule,
    cor_regime,
    exp_coeffs,
    log_coeffs,
    log_radius,
    parse_deformation,
    radius_guard,
)
from expression_parser import parse_poly, parse_rational, split_list, to_json
from ffl_config import DEFAULTS, OUT_FORMATS, RunConfig
from ffl_errors import FFLError, NotApplicable, ParseError, TermBudgetExceeded, UsageError
from finite_field import fq_make
from frobenius import fitting_ideal, frobenius_data, frobenius_table, mu_table
from identities import (
    check_degreewise_identity,
    check_euler_dirichlet,
    check_fitting_consistency,
    check_h_vanishing,
    check_logalg_vanishing,
    check_mu_structure,
    check_powersum,
    check_special_values,
    run_checks,
    w_coefficients,
    z_coefficients,
)
from laurent import TateSeries
from lvalues import GossPoint, goss_eval, special_value_bound, special_value_nonpositive, taelman_lvalue
from polynomials import primes_upto, z_names

CHECKS = ("degreewise", "powersum", "fitting", "logalg", "mu", "vanishing", "euler", "special", "all")

# Degree caps for the prime-indexed checks, applied on top of --deg-max
CHECK_PRIME_DEGREE = 3
CHECK_EULER_DEGREE = 2

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def build_parser():
    """Argument parser: one sub-command per computation, common flags on each"""
    common = argparse.ArgumentParser(add_help=False)
    flags = common.add_argument_group("field and module")
    flags.add_argument("--p", type=int, help="characteristic")
    flags.add_argument("--l", type=int, help="extension degree, q = p^l (default 1)")
    flags.add_argument("--modulus", help="ascending F_p digits of the F_q modulus, e.g. 1,1,1")
    flags.add_argument("--phi", help='phi_theta coefficients "[phi_1, ..., phi_r]" (default Carlitz "[1]")')
    flags.add_argument("--deform", help="plain | z^m | canonical(n) | canonical-t(n)")
    flags.add_argument("--f", help="a prime of A, e.g. theta^2+1")
    params = common.add_argument_group("parameters")
    params.add_argument("--n", type=int, help="number of z-variables")
    params.add_argument("--s", type=int, help="L-function argument")
    params.add_argument("--prec", type=int, help="theta-adic precision N")
    params.add_argument("--deg-max", type=int, help="degree cap D")
    params.add_argument("--k-max", type=int, help="highest W_k / Z_k / exp-log index")
    params.add_argument("--i-max", type=int, help="highest degree in identity checks")
    params.add_argument("--slack", type=int, help="degrees checked past a vanishing bound")
    params.add_argument("--eps", help="Goss tail target as a log_q exponent, e.g. -10")
    params.add_argument("--x", help="Goss point x in K, e.g. theta")
    params.add_argument("--y", help="Goss point y: an integer or base-p digits [d0,d1,...]")
    params.add_argument("--m", type=int, help="starting truncation level of y")
    params.add_argument("--budget", type=int, help="monomial budget for Z_k")
    output = common.add_argument_group("output")
    output.add_argument("--out", choices=OUT_FORMATS, help="json (default) or text")
    output.add_argument("--output", help="write the result to a file instead of stdout")
    output.add_argument("--config", help="file of key = value lines mirroring these flags")
    output.add_argument("--quiet", action="store_const", const=True, help="no status lines on stderr")

    parser = argparse.ArgumentParser(
        prog="ffl",
        description="Exact L-values, mu coefficients and log-algebraicity checks for Drinfeld modules",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("mu", parents=[common], help="mu(a) for monic a with deg a <= D")
    sub.add_parser("fitting", parents=[common], help="Fitting ideal of phi(A/fA), optionally deformed")
    sub.add_parser("frobenius", parents=[common], help="Frobenius data at --f, or at every prime of degree <= D")
    sub.add_parser("lvalue", parents=[common], help="L(phi^v, z_1..z_n, s) for s >= 1 to precision N")
    sub.add_parser("special", parents=[common], help="L(phi^v, z_1..z_n, s) for s <= 0 in A[z]")
    sub.add_parser("goss", parents=[common], help="Goss-plane value at (x, y) with a certified tail")
    sub.add_parser("logalg", parents=[common], help="W_k and Z_k for k <= k-max")
    sub.add_parser("explog", parents=[common], help="exp and log coefficients with certification")
    sub.add_parser("radius", parents=[common], help="log convergence index, radius and guard")
    check = sub.add_parser("check", parents=[common], help="run identity checks")
    check.add_argument("check", choices=CHECKS)
    return parser


# --- commands ---

def _field(config):
    return fq_make(config.p, config.l, config.modulus)


def _phi(config):
    return DrinfeldModule.from_spec(_field(config), config.phi)


def _prime(config, field):
    if config.f is None:
        raise UsageError(f"--f is required for {config.command}")
    return parse_poly(config.f, field)


def _parse_y(text):
    text = text.strip()
    if text.startswith("["):
        try:
            return tuple(int(item) for item in split_list(text))
        except ValueError as e:
            raise ParseError(f"--y digits must be integers: {text!r}") from e
    value = parse_rational(text)
    if value.denominator != 1:
        raise ParseError(f"--y must be an integer or a digit list, got {text!r}")
    return int(value)


def cmd_mu(config):
    phi = _phi(config)
    table = mu_table(phi, config.deg_max, config.threads)
    console.ok(f"mu table to degree {config.deg_max}: {len(table.values)} entries")
    rows = [{"a": str(a), "mu": str(m)} for a, m in table.items()]
    return {"phi": phi.encode(), "D": config.deg_max, "mu": table.encode()}, pd.DataFrame(rows)


def cmd_fitting(config):
    phi = _phi(config)
    f = _prime(config, phi.field)
    deformation = parse_deformation(config.deform)
    ideal = fitting_ideal(phi, f, deformation)
    result = {"f": f.encode(), "deformation": deformation.label(), "fitting": ideal.encode(), "text": str(ideal)}
    return result, None


def cmd_frobenius(config):
    phi = _phi(config)
    if config.f is not None:
        data = [frobenius_data(phi, _prime(config, phi.field))]
    else:
        data = frobenius_table(phi, config.deg_max, config.threads)
    rows = [
        {"f": str(d.f), "d": d.d, "r0": d.r0, "cf": d.cf, "e": ", ".join(str(e) for e in d.e)}
        for d in data
    ]
    return {"phi": phi.encode(), "frobenius": [d.encode() for d in data]}, pd.DataFrame(rows)


def cmd_lvalue(config):
    phi = _phi(config)
    result = taelman_lvalue(phi, config.n, config.s, config.prec, threads=config.threads)
    console.ok(f"L-value to precision {config.prec}: {result.terms_used + 1} degree blocks")
    return result.encode(), None


def cmd_special(config):
    phi = _phi(config)
    if config.s > 0:
        raise UsageError(f"--s must be <= 0 for special, got {config.s}")
    K = special_value_bound(phi, config.n, config.s)
    mu = mu_table(phi, K, config.threads)
    value = special_value_nonpositive(mu, z_names(config.n), config.s)
    return {"s": config.s, "cutoff": K, "value": value.encode(), "text": str(value)}, None


def cmd_goss(config):
    phi = _phi(config)
    field = phi.field
    x = TateSeries.from_unipoly(parse_poly(config.x, field))
    point = GossPoint(x, _parse_y(config.y), config.m)
    result = goss_eval(phi, config.n, point, config.eps, threads=config.threads)
    console.ok(f"Goss value with tail < q^({config.eps}), m = {result.extra['m']}")
    return result.encode(), None


def cmd_logalg(config):
    phi = _phi(config)
    mu = mu_table(phi, config.k_max, config.threads)
    W = w_coefficients(phi, config.n, config.k_max, mu)
    try:
        Z = [z.encode() for z in z_coefficients(phi, config.n, config.k_max, mu=mu, budget=config.budget)]
    except TermBudgetExceeded as e:
        console.warn(f"Z_k skipped: {e.message}")
        Z = None
    result = {
        "n": config.n,
        "k_max": config.k_max,
        "W": [w.encode() for w in W],
        "W_integral": [w.integral for w in W],
        "Z": Z,
    }
    return result, None


def cmd_explog(config):
    phi = _phi(config)
    return {"exp": exp_coeffs(phi, config.k_max).encode(), "log": log_coeffs(phi, config.k_max).encode()}, None


def cmd_radius(config):
    phi = _phi(config)
    i, exponent = log_radius(phi, config.n)
    result = {
        "i": i,
        "radius_log_q": str(exponent),
        "guard": radius_guard(phi, config.n),
        "cor_regime": cor_regime(phi, config.n),
    }
    return result, None


def _check_jobs(config, name):
    field = _field(config)
    phi = DrinfeldModule.from_spec(field, config.phi)
    n, s = config.n, config.s
    carlitz = phi == DrinfeldModule.carlitz(field)

    def fitting_jobs():
        if config.f is not None:
            primes = [parse_poly(config.f, field)]
        else:
            primes = primes_upto(field, min(config.deg_max, CHECK_PRIME_DEGREE))
        return [lambda f=f: check_fitting_consistency(phi, f, n) for f in primes]

    jobs = {
        "degreewise": lambda: [lambda: check_degreewise_identity(phi, n, config.i_max)],
        "powersum": lambda: [lambda: check_powersum(field, config.i_max, config.k_max, None if carlitz else phi)],
        "fitting": fitting_jobs,
        "logalg": lambda: [lambda: check_logalg_vanishing(phi, n, config.slack, budget=config.budget)],
        "mu": lambda: [lambda: check_mu_structure(phi, config.deg_max)],
        "vanishing": lambda: [lambda: check_h_vanishing(phi, n, config.slack)],
        "euler": lambda: [lambda: check_euler_dirichlet(phi, n, max(s, 1), min(config.deg_max, CHECK_EULER_DEGREE), config.prec)],
        "special": lambda: [lambda: check_special_values(phi, n, min(s, 0))],
    }
    if name == "all":
        return [job for key in sorted(jobs) for job in jobs[key]()]
    return jobs[name]()


def cmd_check(config):
    console.banner(f"CHECK {config.check.upper()}  q = {_field(config).q}  phi = {config.phi}")
    jobs = _check_jobs(config, config.check)
    reports = run_checks(jobs, config.threads)
    if not reports:
        raise NotApplicable(f"check {config.check} does not apply to phi = {config.phi}, n = {config.n}")
    rows = [{"name": r.name, "verdict": r.verdict, "params": str(r.params), "witness": str(r.witness or "")} for r in reports]
    failed = sum(not r.passed for r in reports)
    console.banner(f"{len(reports) - failed}/{len(reports)} checks passed")
    return {"reports": [r.encode() for r in reports], "passed": failed == 0}, pd.DataFrame(rows)


HANDLERS = {
    "mu": cmd_mu,
    "fitting": cmd_fitting,
    "frobenius": cmd_frobenius,
    "lvalue": cmd_lvalue,
    "special": cmd_special,
    "goss": cmd_goss,
    "logalg": cmd_logalg,
    "explog": cmd_explog,
    "radius": cmd_radius,
    "check": cmd_check,
}


# --- output ---

def render_text(result, table):
    """pandas rendering for --out text"""
    if table is None:
        rows = [{"key": key, "value": value if isinstance(value, (int, str)) else to_json(value)} for key, value in result.items()]
        table = pd.DataFrame(rows)
    if table.empty:
        return "(empty)\n"
    return table.to_string(index=False) + "\n"


def emit(config, result, table):
    text = to_json(result) + "\n" if config.out == "json" else render_text(result, table)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        console.ok(f"wrote {config.output}")
    else:
        sys.stdout.write(text)


def run(argv):
    """
    Parse argv, dispatch one command and emit its result

    Returns:
        0 on success, 1 when a check fails, 2 on usage or computation errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    flags = {key: getattr(args, key, None) for key in list(DEFAULTS) + ["config"]}
    try:
        config = RunConfig.resolve(args.command, flags, getattr(args, "check", None))
        console.set_quiet(config.quiet)
        result, table = HANDLERS[config.command](config)
        emit(config, result, table)
    except FFLError as e:
        console.set_quiet(False)
        console.fail(str(e))
        return EXIT_USAGE
    if config.command == "check" and not result["passed"]:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
