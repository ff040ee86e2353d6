"""Command-line interface: enum, count, profile-digits, carry-check, waring, fit, selftest.

Exit codes: 0 success, 1 usage error, 2 memory-budget or oracle-cap errors,
3 internal invariant violation (including selftest failures).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from dataclasses import dataclass

from . import analysis, carry, counting
from .counting import DEFAULT_MEMORY_BUDGET, DEFAULT_ORACLE_CAP, WeightAssignment
from .digitset import (
    delta_fit,
    make_digit_set,
    make_source,
    representation_counts,
    squares_digit_set,
    squares_source,
    write_profile_csv,
)
from .ellipsephic import EllipsephicSet, count_up_to, iter_up_to
from .errors import (
    ConfigParseError,
    EmvtError,
    InvariantViolation,
    MemoryBudgetExceeded,
    OracleTooLarge,
    UnknownKey,
    UsageError,
)

_CONFIG_KEYS = {
    "prime": int,
    "digits": str,
    "limit": int,
    "power": int,
    "s": int,
    "t": int,
    "weights_file": str,
    "format": str,
    "threads": int,
    "memory_budget": int,
    "oracle_cap": int,
    "default_weight": float,
    "strategy": str,
}


@dataclass
class RunConfig:
    """Merged options for one invocation: flags override config-file values."""

    prime: int | None = None
    digits: str | None = None
    limit: int | None = None
    power: int | None = None
    s: int | None = None
    t: int | None = None
    weights_file: str | None = None
    format: str = "csv"
    threads: int = 1
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    oracle_cap: int = DEFAULT_ORACLE_CAP
    default_weight: float = 0.0
    strategy: str = "auto"


def load_config(path: str) -> dict:
    """Flat ``key = value`` file with # comments; unknown keys are errors."""
    out: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigParseError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _CONFIG_KEYS:
                raise UnknownKey(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _CONFIG_KEYS[key](value)
            except ValueError as exc:
                raise ConfigParseError(f"{path}:{lineno}: {exc}") from exc
    return out


def load_weights_csv(path: str, default_weight: float) -> WeightAssignment:
    """Weights file with header ``x,w``; unlisted members get the default."""
    values: dict[int, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["x", "w"]:
            raise UsageError(f"{path}: expected header x,w, got {header!r}")
        for row in reader:
            if not row:
                continue
            values[int(row[0])] = float(row[1])
    return WeightAssignment(values=values, default=default_weight)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we use 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="emvt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_set: bool = True) -> None:
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--stable-output", action="store_true",
                       help="omit wall-clock fields so output is reproducible")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--memory-budget", type=int, default=None,
                       help="bytes; falls back to EMVT_MEMORY_BUDGET, then 4 GiB")
        p.add_argument("--oracle-cap", type=int, default=None)
        p.add_argument("--weights", dest="weights_file", default=None,
                       help="CSV with header x,w")
        p.add_argument("--default-weight", type=float, default=None)
        if with_set:
            p.add_argument("--prime", type=int, default=None)
            p.add_argument("--digits", default=None,
                           help="comma-separated digits, or the token 'squares'")
            p.add_argument("--limit", type=int, default=None, help="X bound")
            p.add_argument("--power", type=int, default=None, help="B with X = p^B")

    p_enum = sub.add_parser("enum", help="list members of E(X), one per line")
    common(p_enum)

    p_count = sub.add_parser("count", help="exact solution count as JSON")
    common(p_count)
    p_count.add_argument("--s", type=int, default=None)
    p_count.add_argument("--strategy", choices=["auto", "full", "mitm"], default=None)

    p_prof = sub.add_parser("profile-digits", help="t-fold representation profile")
    common(p_prof, with_set=False)
    p_prof.add_argument("--elements", default=None, help="comma-separated source set")
    p_prof.add_argument("--source", choices=["squares"], default=None)
    p_prof.add_argument("--max-element", type=int, default=None)
    p_prof.add_argument("--t", type=int, default=None)
    p_prof.add_argument("--max-n", type=int, default=None)
    p_prof.add_argument("--delta", type=float, default=None,
                        help="emit a JSON ratio report at this delta instead of CSV")

    p_carry = sub.add_parser("carry-check", help="carry DP vs direct congruence count")
    common(p_carry)
    p_carry.add_argument("--t", type=int, default=None)
    p_carry.add_argument("--c", type=int, required=True)
    p_carry.add_argument("--d", type=int, required=True)
    p_carry.add_argument("--z", default="", help="comma-separated residues mod p^c")
    p_carry.add_argument("--include-zero", action="store_true",
                         help="use the all-digit-strings universe (X must be p^D)")

    p_waring = sub.add_parser("waring", help="sums-of-squares representation counts")
    common(p_waring)
    p_waring.add_argument("--s", type=int, default=None)
    p_waring.add_argument("--cauchy", action="store_true",
                          help="emit the JSON inequality report instead of CSV")

    p_fit = sub.add_parser("fit", help="log-log exponent fit of a growth series")
    common(p_fit)
    p_fit.add_argument("--s", type=int, default=None)
    p_fit.add_argument("--series", default=None, help="read B,X,Y,count CSV")
    p_fit.add_argument("--series-out", default=None, help="also write the series CSV")
    p_fit.add_argument("--b-min", type=int, default=None)
    p_fit.add_argument("--b-max", type=int, default=None)
    p_fit.add_argument("--predictor", choices=["Y", "X"], default="Y")
    p_fit.add_argument("--strategy", choices=["auto", "full", "mitm"], default=None)

    p_self = sub.add_parser("selftest", help="run the exact-identity suite")
    common(p_self, with_set=False)

    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    file_vals = load_config(args.config) if getattr(args, "config", None) else {}
    cfg = RunConfig()
    for key in _CONFIG_KEYS:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            setattr(cfg, key, flag_val)
        elif key in file_vals:
            setattr(cfg, key, file_vals[key])
    if getattr(args, "memory_budget", None) is None and "memory_budget" not in file_vals:
        env = os.environ.get("EMVT_MEMORY_BUDGET")
        if env is not None:
            cfg.memory_budget = int(env)
    if getattr(args, "threads", None) is None and "threads" not in file_vals:
        cfg.threads = 1
    if cfg.threads < 1 or cfg.memory_budget < 1 or cfg.oracle_cap < 1:
        raise UsageError("threads, memory budget and oracle cap must be positive")
    return cfg


def _resolve_set(cfg: RunConfig) -> EllipsephicSet:
    if cfg.prime is None:
        raise UsageError("--prime is required")
    if cfg.digits is None:
        raise UsageError("--digits is required (list or 'squares')")
    if cfg.digits.strip() == "squares":
        return EllipsephicSet(squares_digit_set(cfg.prime))
    try:
        digits = [int(tok) for tok in cfg.digits.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"--digits: {exc}") from exc
    return EllipsephicSet(make_digit_set(cfg.prime, digits))


def _resolve_limit(cfg: RunConfig, es: EllipsephicSet) -> int:
    if (cfg.limit is None) == (cfg.power is None):
        raise UsageError("give exactly one of --limit or --power")
    if cfg.limit is not None:
        if cfg.limit < 1:
            raise UsageError("--limit must be >= 1")
        return cfg.limit
    if cfg.power < 0:
        raise UsageError("--power must be >= 0")
    return es.p**cfg.power


def _resolve_weights(cfg: RunConfig) -> WeightAssignment | None:
    if cfg.weights_file is None:
        return None
    return load_weights_csv(cfg.weights_file, cfg.default_weight)


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_enum(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    es = _resolve_set(cfg)
    x = _resolve_limit(cfg, es)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for member in iter_up_to(es, x):
                fh.write(f"{member}\n")
    else:
        for member in iter_up_to(es, x):
            sys.stdout.write(f"{member}\n")
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    es = _resolve_set(cfg)
    x = _resolve_limit(cfg, es)
    if cfg.s is None:
        raise UsageError("--s is required")
    weights = _resolve_weights(cfg)
    start = time.perf_counter()
    value = counting.vinogradov_count(
        es, x, cfg.s, weights=weights, strategy=cfg.strategy,
        memory_budget=cfg.memory_budget, workers=cfg.threads,
    )
    wall_ms = None if args.stable_output else (time.perf_counter() - start) * 1e3
    text = counting.count_result_json(
        es, x, cfg.s, count_up_to(es, x), value, method=cfg.strategy, wall_ms=wall_ms
    )
    _emit(args, text + "\n")
    return 0


def _cmd_profile_digits(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    if cfg.t is None:
        raise UsageError("--t is required")
    if args.elements is not None:
        source = make_source(int(tok) for tok in args.elements.split(",") if tok.strip())
    elif args.source == "squares":
        if args.max_element is None:
            raise UsageError("--source squares needs --max-element")
        source = squares_source(args.max_element)
    else:
        raise UsageError("give --elements or --source squares")
    max_n = args.max_n if args.max_n is not None else cfg.t * source.max_element
    profile = representation_counts(source, cfg.t, max_n)
    if args.delta is not None:
        _emit(args, delta_fit(profile, args.delta).to_json() + "\n")
    else:
        buf = io.StringIO()
        write_profile_csv(profile, buf)
        _emit(args, buf.getvalue())
    return 0


def _cmd_carry_check(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    es = _resolve_set(cfg)
    x = _resolve_limit(cfg, es)
    t = cfg.t if cfg.t is not None else 1
    z = tuple(int(tok) for tok in args.z.split(",") if tok.strip() != "")
    if not z:
        z = (0,) * t
    weights = _resolve_weights(cfg)
    report = carry.diagonal_ratio_report(
        es.digit_set, t, args.c, args.d, z, x,
        weights=weights, include_zero=args.include_zero,
    )
    payload = json.loads(report.to_json())
    if args.include_zero and weights is None and cfg.power is not None:
        dp = carry.carry_dp_count(es.digit_set, t, args.c, args.d, z, cfg.power)
        payload["dp_count"] = str(dp)
        payload["dp_matches"] = dp == int(payload["lhs"])
        if not payload["dp_matches"]:
            _emit(args, json.dumps(payload) + "\n")
            raise InvariantViolation("carry DP disagrees with direct congruence count")
    _emit(args, json.dumps(payload) + "\n")
    return 0


def _cmd_waring(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    es = _resolve_set(cfg)
    x = _resolve_limit(cfg, es)
    if cfg.s is None:
        raise UsageError("--s is required")
    profile = analysis.waring_counts(es, cfg.s, x, memory_budget=cfg.memory_budget)
    if args.cauchy:
        _emit(args, analysis.cauchy_bound_check(profile).to_json() + "\n")
    else:
        buf = io.StringIO()
        analysis.write_waring_csv(profile, buf)
        _emit(args, buf.getvalue())
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    if args.series is not None:
        with open(args.series, "r", encoding="utf-8") as fh:
            series = analysis.read_series_csv(fh)
    else:
        es = _resolve_set(cfg)
        if cfg.s is None:
            raise UsageError("--s is required")
        if args.b_min is None or args.b_max is None:
            raise UsageError("give --series or both --b-min and --b-max")
        series = analysis.growth_series(
            es, cfg.s, list(range(args.b_min, args.b_max + 1)),
            strategy=cfg.strategy, weights=_resolve_weights(cfg),
            memory_budget=cfg.memory_budget, workers=cfg.threads,
        )
    if args.series_out:
        with open(args.series_out, "w", encoding="utf-8") as fh:
            analysis.write_series_csv(series, fh)
    fit = analysis.fit_exponent(series, predictor=args.predictor)
    _emit(args, fit.to_json() + "\n")
    return 0


def _selftest_checks():
    es3 = EllipsephicSet.from_digits(3, [0, 1])
    es5 = EllipsephicSet.from_digits(5, [0, 1, 4])

    def check_enum():
        from .ellipsephic import contains, enumerate_up_to

        members = enumerate_up_to(es3, 200)
        assert members == [n for n in range(1, 201) if contains(es3, n)]
        assert len(members) == count_up_to(es3, 200)
        assert members[:7] == [1, 3, 4, 9, 10, 12, 13]

    def check_closed_forms():
        for es, x in ((es3, 13), (es5, 25)):
            y = count_up_to(es, x)
            assert counting.vinogradov_count(es, x, 1) == y
            assert counting.vinogradov_count(es, x, 2) == 2 * y * y - y

    def check_oracle():
        assert counting.vinogradov_count(es3, 40, 3) == counting.brute_force_count(es3, 40, 3)

    def check_strategies():
        full = counting.vinogradov_count(es5, 125, 4, strategy="full")
        mitm = counting.vinogradov_count(es5, 125, 4, strategy="mitm")
        assert full == mitm

    def check_class_norms():
        for a in (1, 2):
            total = sum(
                counting.class_norm(es3, 81, xi, a).value2
                for xi in counting.admissible_residues(es3, a)
            )
            assert total == counting.class_norm(es3, 81, 0, 0).value2

    def check_carry_dp():
        ds = es3.digit_set
        for t in (1, 2):
            for big_d in (0, 1, 2):
                for c in range(big_d + 1):
                    for d in range(c, big_d + 1):
                        for z in itertools.product(range(3**c), repeat=t):
                            dp = carry.carry_dp_count(ds, t, c, d, z, big_d)
                            direct = carry.direct_congruence_count(
                                ds, t, c, d, z, 3**big_d, include_zero=True
                            )
                            assert dp == direct, (t, c, d, big_d, z)

    def check_reduced_nesting():
        exact = counting.vinogradov_count(es3, 27, 2)
        prev = None
        for c in (1, 2, 3, 8):
            cur = counting.reduced_energy_mod(es3, 27, 2, c)
            assert prev is None or cur <= prev
            prev = cur
        assert counting.reduced_energy_mod(es3, 27, 2, 8) == exact

    def check_partition():
        part, rest = counting.partition_by_congruence(es3, 40, 2, 1)
        assert part + rest == counting.vinogradov_count(es3, 40, 2)

    def check_waring():
        profile = analysis.waring_counts(es3, 2, 400)
        report = analysis.cauchy_bound_check(profile)
        assert report.holds

    def check_profile_mass():
        src = squares_source(100)
        prof = representation_counts(src, 2, 2 * src.max_element)
        assert prof.total() == src.size**2

    return [
        ("enumeration/count agreement", check_enum),
        ("closed forms I1, I2", check_closed_forms),
        ("oracle equivalence s=3", check_oracle),
        ("strategy independence", check_strategies),
        ("class-norm partition identity", check_class_norms),
        ("carry DP vs direct", check_carry_dp),
        ("congruence nesting", check_reduced_nesting),
        ("congruence partition identity", check_partition),
        ("waring Cauchy inequality", check_waring),
        ("profile mass conservation", check_profile_mass),
    ]


def _cmd_selftest(args: argparse.Namespace) -> int:
    failures = 0
    for name, fn in _selftest_checks():
        try:
            fn()
        except Exception as exc:  # report every failure, then exit 3
            failures += 1
            sys.stdout.write(f"FAIL - {name}: {exc!r}\n")
        else:
            sys.stdout.write(f"ok - {name}\n")
    if failures:
        raise InvariantViolation(f"{failures} selftest check(s) failed")
    return 0


_COMMANDS = {
    "enum": _cmd_enum,
    "count": _cmd_count,
    "profile-digits": _cmd_profile_digits,
    "carry-check": _cmd_carry_check,
    "waring": _cmd_waring,
    "fit": _cmd_fit,
    "selftest": _cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, ConfigParseError, UnknownKey) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (MemoryBudgetExceeded, OracleTooLarge) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return 3
    except EmvtError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
