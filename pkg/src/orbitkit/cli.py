"""Command-line front end.

Usage: ``orbitkit <command> [options]`` or ``python -m orbitkit <command>``.
Exit codes: 0 success, 2 invalid parameters, 3 resource ceiling exceeded.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from typing import Optional, Sequence

from . import _kernels
from .arith import DomainError, ResourceLimitError, padic_ord
from .emit import Table, emit, write_output
from .mertens import (
    f_sum,
    leading_coefficient_exact,
    leading_coefficient_inclusion_exclusion,
    mertens_report,
    mertens_sum,
)
from .seqlimits import (
    CSeriesParams,
    b_M,
    c_M,
    c_M_sweep_bounds,
    constant_C,
    limit_targets,
    lipschitz_check,
)
from .sinteger import (
    capital_pi_predictor,
    delta_floor,
    detector,
    exact_ceiling,
    new_map,
    orbit_table,
    pi_subsequence,
    subsequence_modulus,
    zeta_series_check,
)
from .toral import EXAMPLE_MATRIX, new_toral, orbit_table_toral, rotation_subsequences

COMMANDS = ("fixpoints", "orbits", "pi", "predictor", "mertens", "kappa", "detector",
            "cseries", "climits", "toral", "zetacheck", "table1")

TABLE1_SETS = ((), (3,), (3, 5), (3, 7))


def parse_primes(text: Optional[str]) -> list[int]:
    if text is None:
        return []
    text = text.strip().strip("{}")
    if text.lower() in ("", "none", "empty"):
        return []
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise DomainError(f"bad prime list {text!r}") from exc


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError as exc:
        raise DomainError(f"bad range {text!r}; expected lo:hi") from exc
    if lo > hi:
        raise DomainError(f"empty range {text!r}")
    return lo, hi


def parse_matrix(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError as exc:
        raise DomainError(f"bad matrix {text!r}") from exc


def read_config(path: str) -> dict[str, str]:
    """key=value lines; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise DomainError(f"{path}: malformed line {raw.strip()!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                out[key.replace("-", "_")] = value
    except OSError as exc:
        raise DomainError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    return out


# -- commands --------------------------------------------------------------------

def _map(args):
    return new_map(args.xi, parse_primes(args.s))


def _check_exact(args, n: int) -> None:
    if args.mode == "exact" and n > exact_ceiling():
        raise ResourceLimitError(f"n={n} exceeds exact ceiling {exact_ceiling()}")


def cmd_fixpoints(args):
    m = _map(args)
    n_max = args.n_max or 20
    _check_exact(args, n_max)
    table = orbit_table(m, n_max, mode=args.mode, workers=args.workers)
    if args.mode == "exact":
        return Table(["n", "F"], list(zip(table.n, table.fix)))
    return Table(["n", "logF"], list(zip(table.n, table.log_fix)))


def cmd_orbits(args):
    m = _map(args)
    n_max = args.n_max or 20
    _check_exact(args, n_max)
    table = orbit_table(m, n_max, mode=args.mode, workers=args.workers)
    return Table(table.columns(), table.rows())


def cmd_pi(args):
    m = _map(args)
    lo, hi = parse_range(args.n_range or "1:60")
    _check_exact(args, hi)
    sub = pi_subsequence(m, args.residue % args.modulus, args.modulus, (lo, hi))
    if args.output == "json":
        return {"residue": sub.residue, "modulus": sub.modulus,
                "min": sub.minimum, "max": sub.maximum, "dispersion": sub.dispersion,
                "columns": ["N", "Pi"], "rows": [list(v) for v in sub.values]}
    return Table(["N", "Pi"], sub.values)


def cmd_predictor(args):
    m = _map(args)
    N = args.n or 60
    _check_exact(args, N)
    pred = capital_pi_predictor(m, N, args.tail)
    actual = orbit_table(m, N).Pi(N)
    return {"N": N, "tail_cutoff": args.tail, "predictor": pred, "Pi": actual,
            "abs_diff": float(abs(actual - pred)), "delta": delta_floor(m)}


def cmd_mertens(args):
    m = _map(args)
    N = args.n_max or 100
    _check_exact(args, N)
    value = mertens_sum(m, N, mode=args.mode)
    k = leading_coefficient_exact(m).k_exact
    return {"N": N, "mode": args.mode, "mertens_sum": value,
            "mertens_sum_float": float(value), "f_sum": f_sum(m, N),
            "k_exact": k, "k_log_N": float(k) * math.log(N)}


def cmd_kappa(args):
    m = _map(args)
    if args.no_fit:
        report = leading_coefficient_exact(m)
    else:
        report = mertens_report(m, parse_range(args.fit_range), args.birkhoff_n)
    record = report.as_record()
    ie = leading_coefficient_inclusion_exclusion(m)
    record["k_inclusion_exclusion"] = ie
    record["recipes_agree"] = ie == report.k_exact
    return record


def cmd_detector(args):
    m = _map(args)
    spec = detector(m)
    rows = [(k, subsequence_modulus(spec, k)) for k in range(1, args.precision + 1)]
    if args.output == "json":
        return {"components": [{"prime": c.prime, "element": c.element,
                                "residue_order": c.law.order,
                                "base_exponent": c.law.base_exponent} for c in spec.components],
                "archimedean_components": [],
                "columns": ["k", "modulus"], "rows": rows}
    return Table(["k", "modulus"], rows)


def _params(args) -> CSeriesParams:
    return CSeriesParams(args.p, args.lam, args.j_max)


def cmd_cseries(args):
    params = _params(args)
    if args.random_pairs:
        rng = random.Random(args.seed)
        rows = []
        while len(rows) < args.random_pairs:
            M, N = rng.randint(1, 10**6), rng.randint(1, 10**6)
            if M == N or padic_ord(M - N, 3) > 3:
                continue
            res = lipschitz_check(M, N, params)
            rows.append((M, N, res.epsilon, res.lower, res.actual.lower, res.actual.upper,
                         res.upper, res.status))
        return Table(["M", "N", "epsilon", "lower", "diff_lo", "diff_hi", "upper", "status"], rows)
    lo, hi = parse_range(args.m_range)
    rows = []
    for M in range(max(lo, 1), hi + 1):
        c = c_M(M, params)
        rows.append((M, b_M(M, params), c.lower, c.upper, float(c.mid)))
    return Table(["M", "b_M", "c_lower", "c_upper", "c_approx"], rows)


def cmd_climits(args):
    params = _params(args)
    t = limit_targets(params, args.r_max)
    C = constant_C(args.r_max, params)
    lo, hi = parse_range(args.m_range or "1:100000")
    cmin, cmax, err = c_M_sweep_bounds(lo, hi, params)
    return {"C": C, "liminf_c": t.liminf_c, "limsup_c": t.limsup_c,
            "liminf_pi_even": t.liminf_pi_even, "limsup_pi_even": t.limsup_pi_even,
            "liminf_pi_odd": t.liminf_pi_odd, "limsup_pi_odd": t.limsup_pi_odd,
            "sweep_range": [lo, hi], "sweep_min_c": cmin, "sweep_max_c": cmax,
            "sweep_error_bound": err, "kernel_backend": _kernels.BACKEND}


def cmd_toral(args):
    rows = parse_matrix(args.matrix) if args.matrix else EXAMPLE_MATRIX
    aut = new_toral(rows)
    n_max = args.n_max or 40
    table = orbit_table_toral(aut, n_max)
    if args.output == "json":
        qs = rotation_subsequences(aut, args.depth) if aut.unimodular_angles else []
        return {"char_poly": list(aut.char_poly), "entropy": aut.entropy,
                "eigenvalues": [{"re": e.value.real, "im": e.value.imag, "modulus": e.modulus,
                                 "unimodular": e.unimodular} for e in aut.eigen_data],
                "unimodular_angles": list(aut.unimodular_angles),
                "unimodular_heuristic": aut.unimodular_heuristic,
                "rotation_denominators": qs,
                "columns": table.columns(), "rows": [list(r) for r in table.rows()]}
    return Table(table.columns(), table.rows())


def cmd_zetacheck(args):
    m = _map(args)
    ok, first = zeta_series_check(m, args.n_max or 20)
    return {"order": args.n_max or 20, "agree": ok, "first_mismatch": first}


def cmd_table1(args):
    rows = []
    for S in TABLE1_SETS:
        k = leading_coefficient_exact(new_map(2, S)).k_exact
        rows.append(("{" + ",".join(map(str, S)) + "}", k))
    return Table(["S", "k_T"], rows)


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitkit",
                                     description="Periodic-orbit statistics for S-integer maps and toral automorphisms.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--xi", default="2", help='ξ as "a" or "a/b" (default 2)')
    common.add_argument("--s", default="3", help='comma-separated primes; "" or none for the empty set')
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--format", dest="output", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", dest="out_path", default=None, help="output file (default stdout)")
    common.add_argument("--config", default=None, help="key=value file; flags win on conflict")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--n-range", default=None, help="lo:hi")

    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "pi":
            sp.add_argument("--residue", type=int, default=0)
            sp.add_argument("--modulus", type=int, default=1)
        elif name == "predictor":
            sp.add_argument("--n", type=int, default=None)
            sp.add_argument("--tail", type=int, default=60)
        elif name == "kappa":
            sp.add_argument("--fit-range", default="1000:100000")
            sp.add_argument("--birkhoff-n", type=int, default=10**6)
            sp.add_argument("--no-fit", action="store_true")
        elif name == "detector":
            sp.add_argument("--precision", type=int, default=4)
        elif name in ("cseries", "climits"):
            sp.add_argument("--p", type=int, default=3)
            sp.add_argument("--lam", type=int, default=4)
            sp.add_argument("--j-max", type=int, default=60)
            sp.add_argument("--m-range", default="1:30" if name == "cseries" else None)
            if name == "cseries":
                sp.add_argument("--random-pairs", type=int, default=0)
            else:
                sp.add_argument("--r-max", type=int, default=3)
        elif name == "toral":
            sp.add_argument("--matrix", default=None, help='rows separated by ";", entries by ","')
            sp.add_argument("--depth", type=int, default=8)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        by_name = {}
        for action in subparser._actions:
            for name in [action.dest] + [o.lstrip("-").replace("-", "_") for o in action.option_strings]:
                by_name[name] = action
        unknown = set(cfg) - set(by_name)
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
        typed = {}
        for key, raw in cfg.items():
            action = by_name[key]
            try:
                if isinstance(action, argparse._StoreTrueAction):
                    raw = raw.lower() in ("1", "true", "yes")
                elif action.type is not None:
                    raw = action.type(raw)
            except ValueError as exc:
                raise DomainError(f"config key {key}: {exc}") from exc
            if action.choices is not None and raw not in action.choices:
                raise DomainError(f"config key {key}: {raw!r} not in {sorted(action.choices)}")
            typed[action.dest] = raw
        subparser.set_defaults(**typed)
        args = parser.parse_args(argv)
    return args


def run(args: argparse.Namespace) -> int:
    """Execute one command; returns the process exit code."""
    try:
        data = HANDLERS[args.command](args)
        meta = {"command": args.command, "seed": args.seed}
        if args.command not in ("table1", "toral", "cseries", "climits"):
            meta.update({"xi": args.xi, "s": "{" + ",".join(map(str, parse_primes(args.s))) + "}"})
        if isinstance(data, dict) and "columns" in data and "rows" in data and args.output == "json":
            payload = emit(data, "json", meta)
        elif isinstance(data, dict) and "columns" in data:
            payload = emit(Table(data["columns"], data["rows"]), args.output, meta)
        else:
            payload = emit(data, args.output, meta)
        write_output(payload, args.out_path)
        return 0
    except ResourceLimitError as exc:
        print(f"orbitkit: resource limit: {exc}", file=sys.stderr)
        return 3
    except (DomainError, OSError) as exc:
        print(f"orbitkit: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except DomainError as exc:
        print(f"orbitkit: {exc}", file=sys.stderr)
        return 2
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
