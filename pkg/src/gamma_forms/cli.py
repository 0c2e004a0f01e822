"""Command-line front end.

    gamma-forms eval --n 2 --method all
    gamma-forms validate --n 4
    gamma-forms criterion --n-max 6 --format json
    gamma-forms gamma --n 3 --method series --precision-bits 512
    gamma-forms identities --seed 7

Exit codes: 0 success, 2 invalid arguments, 3 numeric failure, 4 the
criterion reported equality (which would make gamma rational), 5 an identity
or cross-validation check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from . import __version__
from .criterion import Equality, criterion_sweep, extract_gamma
from .numerics import (
    beta_integral_check,
    integrand_params,
    random_thomae_params,
    thomae_check,
)
from .representations import (
    DEFAULT_SAFETY_FACTOR,
    Method,
    cross_validate,
    evaluate,
    index_shift_pairs,
    prop1_oracle_check,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3
EXIT_EQUALITY = 4
EXIT_IDENTITY = 5

MIN_PRECISION = 64
MAX_PRECISION = 4096
MAX_N = 64
COMMANDS = ("eval", "validate", "criterion", "gamma", "identities")


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    n_max: int | None = None
    precision_bits: int = 256
    method: str = "all"
    output_format: str = "text"
    safety_factor: float = DEFAULT_SAFETY_FACTOR
    seed: int = 0


class ConfigError(ValueError):
    pass


# -- formatting -----------------------------------------------------------------------

def decimal_string(x, prec: int) -> str:
    """Enough digits that parsing at ``prec`` bits gives back the same binary value."""
    dps = math.ceil(prec * math.log10(2)) + 2
    with mp.workprec(prec):
        return mpmath.nstr(mpmath.mpf(x), dps, strip_zeros=False, min_fixed=-3, max_fixed=4)


def radius_string(r) -> str:
    """Three significant digits, rounded up so the printed radius never shrinks."""
    if r == 0:
        return "0"
    with mp.workprec(max(64, mpmath.mpf(r).bc or 0) + 16):
        r = mpmath.mpf(r)
        e = int(mpmath.floor(mpmath.log10(r))) - 2
        m = int(mpmath.ceil(r / mpmath.mpf(10) ** e))
        if m >= 1000:
            m, e = -(-m // 10), e + 1
    return f"{m // 100}.{m % 100:02d}e{e + 2}"


def _fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    columns = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _text(v) for k, v in row.items()})
        return buf.getvalue()
    cells = [[_text(row[c]) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _eval_row(ev, prec: int) -> dict:
    return {
        "n": ev.n,
        "method": ev.method.value,
        "value": decimal_string(ev.value.value, prec),
        "error_radius": radius_string(ev.value.radius),
        "rigor": ev.value.rigor.value,
        "terms": ev.terms_or_panels_used,
    }


# -- commands ---------------------------------------------------------------------------

def _methods(name: str) -> list[Method]:
    return list(Method) if name == "all" else [Method(name)]


def cmd_eval(cfg: RunConfig) -> tuple[int, list[dict]]:
    rows = [_eval_row(evaluate(cfg.n, m, cfg.precision_bits), cfg.precision_bits)
            for m in _methods(cfg.method)]
    return EXIT_OK, rows


def cmd_validate(cfg: RunConfig) -> tuple[int, list[dict]]:
    cv = cross_validate(cfg.n, cfg.precision_bits, cfg.safety_factor)
    rows = []
    for ev in cv.evaluations:
        row = _eval_row(ev, cfg.precision_bits)
        row["max_gap"] = radius_string(cv.max_gap)
        row["all_agree"] = cv.all_agree
        rows.append(row)
    return (EXIT_OK if cv.all_agree else EXIT_IDENTITY), rows


def cmd_criterion(cfg: RunConfig) -> tuple[int, list[dict]]:
    method = Method.SERIES if cfg.method == "all" else Method(cfg.method)
    reports = criterion_sweep(cfg.n_max, cfg.precision_bits, method, cfg.safety_factor)
    rows = []
    for r in reports:
        p = r.precision
        rows.append({
            "n": r.n,
            "precision_bits": p,
            "method": r.method.value,
            "floor_log_Sn": r.floor_log_Sn,
            "frac_log_Sn": decimal_string(r.frac_log_Sn.value, p),
            "d2n_In": decimal_string(r.d2n_In.value, p),
            "residual": decimal_string(r.residual.value, p),
            "residual_radius": radius_string(r.residual.radius),
            "residual_identity": decimal_string(r.residual_identity.value, p),
            "equality_holds": r.equality_holds.value,
            "implied_gamma": _fraction(r.implied_gamma),
            "implied_gamma_gap": decimal_string(r.implied_gamma_gap.value, p),
            "In_lt_2pow_minus_4n": r.inequality_In_lt_2pow,
            "inclusion_ok": r.inclusion_ok,
        })
    if any(r.equality_holds is Equality.YES for r in reports):
        print("criterion equality reported: gamma would be rational", file=sys.stderr)
        return EXIT_EQUALITY, rows
    return EXIT_OK, rows


def cmd_gamma(cfg: RunConfig) -> tuple[int, list[dict]]:
    if cfg.method == Method.CLOSED_FORM.value:
        raise ConfigError("closed_form is circular for gamma extraction")
    methods = [m for m in _methods(cfg.method) if m is not Method.CLOSED_FORM]
    rows = []
    for m in methods:
        g = extract_gamma(cfg.n, cfg.precision_bits, m, cfg.safety_factor)
        rows.append({
            "n": g.n,
            "method": g.method.value,
            "gamma": decimal_string(g.gamma.value, cfg.precision_bits),
            "error_radius": radius_string(g.gamma.radius),
            "rigor": g.gamma.rigor.value,
            "matching_digits": g.digits,
            "agree": g.agree,
        })
    return EXIT_OK, rows


def _identity_row(name: str, params: str, passed: bool, gap) -> dict:
    return {"check": name, "parameters": params, "passed": bool(passed), "gap": radius_string(gap)}


def run_identities(seed: int = 0, n_max: int = 4, precision: int = 128) -> list[dict]:
    """Every named identity check as a table row."""
    prec = min(precision, 128)
    rows = []
    rng = random.Random(seed)
    for i in range(25):
        p = random_thomae_params(rng)
        r = thomae_check(p, prec)
        label = "a,b,c=" + ",".join(map(str, p.upper)) + ";d,e=" + ",".join(map(str, p.lower))
        rows.append(_identity_row("thomae_random", label, r.agree, r.lhs.gap(r.rhs)))
    for n in range(1, min(n_max, 3) + 1):
        for t in (Fraction(n + 1), Fraction(2 * n + 5, 2)):
            r = thomae_check(integrand_params(n, t), prec)
            rows.append(_identity_row("thomae_integrand", f"n={n};t={t}", r.agree, r.lhs.gap(r.rhs)))
    for n in range(1, min(n_max, 4) + 1):
        for t in (Fraction(1, 2), Fraction(1), Fraction(5, 2)):
            b = beta_integral_check(n, t, prec)
            rows.append(_identity_row("beta_integral", f"n={n};t={t}", b.agree, b.numeric.gap(b.closed)))
    for n in range(1, min(n_max, 3) + 1):
        pairs = index_shift_pairs(n, 5, min(prec, 96))
        gap = max(a.gap(b) for a, b in pairs)
        ok = all(a.overlaps(b) for a, b in pairs)
        rows.append(_identity_row("index_shift", f"n={n};k=0..4", ok, gap))
    for i, trial in enumerate(prop1_oracle_check(seed)):
        label = f"trial={i};n={trial.pf.n}"
        rows.append(_identity_row("linear_form_oracle", label, trial.agree, trial.series.gap(trial.linear_form)))
    return rows


def cmd_identities(cfg: RunConfig) -> tuple[int, list[dict]]:
    rows = run_identities(cfg.seed, cfg.n_max, cfg.precision_bits)
    return (EXIT_OK if all(r["passed"] for r in rows) else EXIT_IDENTITY), rows


_COMMANDS = {
    "eval": cmd_eval,
    "validate": cmd_validate,
    "criterion": cmd_criterion,
    "gamma": cmd_gamma,
    "identities": cmd_identities,
}


# -- argument handling ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamma-forms",
        description="Evaluate I_n four ways and test the fractional-part criterion for Euler's constant.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=256)
    common.add_argument("--format", dest="output_format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--safety-factor", type=float, default=DEFAULT_SAFETY_FACTOR)
    common.add_argument("--seed", type=int, default=0)
    methods = [m.value for m in Method] + ["all"]
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("eval", "evaluate I_n"), ("validate", "cross-validate the four routes"),
                        ("gamma", "recover gamma from I_n")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--method", choices=methods, default="series" if name == "gamma" else "all")
    p = sub.add_parser("criterion", parents=[common], help="fractional-part criterion sweep")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=methods, default="series")
    p = sub.add_parser("identities", parents=[common], help="transformation and oracle checks")
    p.add_argument("--n-max", type=int, default=4)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=ns.command,
        n=getattr(ns, "n", None),
        n_max=getattr(ns, "n_max", None),
        precision_bits=ns.precision_bits,
        method=getattr(ns, "method", "all"),
        output_format=ns.output_format,
        safety_factor=ns.safety_factor,
        seed=ns.seed,
    )
    if not MIN_PRECISION <= cfg.precision_bits <= MAX_PRECISION:
        raise ConfigError(f"--precision-bits must lie in [{MIN_PRECISION}, {MAX_PRECISION}]")
    for label, v in (("--n", cfg.n), ("--n-max", cfg.n_max)):
        if v is not None and not 1 <= v <= MAX_N:
            raise ConfigError(f"{label} must lie in [1, {MAX_N}]")
    if not cfg.safety_factor >= 1:
        raise ConfigError("--safety-factor must be at least 1")
    if cfg.command == "gamma" and cfg.method == Method.CLOSED_FORM.value:
        raise ConfigError("closed_form is circular for gamma extraction")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
    except ConfigError as exc:
        print(f"gamma-forms: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        code, rows = _COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"gamma-forms: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ArithmeticError, ValueError) as exc:
        print(f"gamma-forms: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(_render(rows, cfg.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
