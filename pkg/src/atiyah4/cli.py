"""Command-line entry point: verify, lp, sample, and eval workflows.

Reports are line oriented and stable for scripting; ``--json`` switches to
a machine-readable dump of the same content.  Symbolic results are always
printed as exact fractions.  Exit codes: 0 every requested check passed,
1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import atiyah, catalog, certify, lp


class UsageError(Exception):
    """Bad flags, unknown names, or missing resources; exit code 2."""


VERIFY_TARGETS = ("all", "sec3", "eq42", "eq52", "eq53", "factorization", "vectors34")

#: Sample count used by ``verify factorization``; the full campaign sits
#: behind the ``sample`` command.
FACTORIZATION_SAMPLES = 1000


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atiyah4",
        description="Exact identity checks, bounding linear programs, and "
        "numeric sampling for the four-point Atiyah determinant.",
    )
    parser.add_argument(
        "--certs",
        metavar="DIR",
        default=None,
        help="certificate directory (default: ./certificates when present, "
        "otherwise the bundled copies)",
    )
    parser.add_argument(
        "--tol",
        type=float,
        default=1e-8,
        metavar="T",
        help="relative tolerance for numeric comparisons (default 1e-8)",
    )
    parser.add_argument(
        "--seed", type=int, default=0, metavar="S", help="campaign seed (default 0)"
    )
    parser.add_argument(
        "--json", action="store_true", dest="as_json", help="machine-readable output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="run exact identity checks and numeric cross-validation"
    )
    p_verify.add_argument("target", choices=VERIFY_TARGETS)

    p_lp = sub.add_parser("lp", help="solve a bounding linear program exactly")
    p_lp.add_argument(
        "--basis", default="t6", help="base column family (only t6 is defined)"
    )
    p_lp.add_argument(
        "--extra",
        default="",
        metavar="NAMES",
        help="comma-separated extra columns from z4, n4, v4sq",
    )

    p_sample = sub.add_parser(
        "sample", help="sampling campaign for the determinant conjectures"
    )
    p_sample.add_argument("--n", type=int, default=4, help="points per sample (2..6)")
    p_sample.add_argument(
        "--count", type=int, default=10000, help="number of configurations"
    )
    p_sample.add_argument("--mode", choices=atiyah.MODES, default="generic")

    p_eval = sub.add_parser(
        "eval", help="evaluate a named polynomial at six rational distances"
    )
    p_eval.add_argument("name", help="catalog name, for example d4 or z4")
    p_eval.add_argument("values", nargs=6, metavar="Q", help="a b c x y z")

    return parser


def resolve_cert_dir(flag: str | None) -> Path | None:
    """Pick the certificate directory; None means use the bundled files."""
    if flag is not None:
        path = Path(flag)
        if not path.is_dir():
            raise UsageError(f"certificate directory not found: {path}")
        return path
    local = Path("certificates")
    if local.is_dir():
        return local
    return None


def _check_entry(name: str, status: str, elapsed: float, detail: str, **extra):
    entry = {
        "name": name,
        "status": status,
        "elapsed_ms": int(elapsed * 1000),
        "detail": detail,
    }
    entry.update(extra)
    return entry


def _certificate_check(name: str, cert_dir: Path | None) -> dict:
    started = time.perf_counter()
    try:
        report = certify.run_certificate_check(name, cert_dir)
    except FileNotFoundError as exc:
        raise UsageError(f"missing certificate file: {exc.filename}") from exc
    except ValueError as exc:
        return _check_entry(
            name, "fail", time.perf_counter() - started, f"unusable certificate: {exc}"
        )
    status = "pass" if report.passed else "fail"
    return _check_entry(name, status, report.elapsed_seconds, report.summary())


def _eq52_check() -> dict:
    report = certify.check_eq52()
    status = "pass" if report.passed else "fail"
    return _check_entry("eq52", status, report.elapsed_seconds, report.summary())


def _factorization_check(seed: int, tol: float) -> dict:
    started = time.perf_counter()
    stats = atiyah.run_samples(4, FACTORIZATION_SAMPLES, seed=seed, tol=tol)
    elapsed = time.perf_counter() - started
    ok = stats.im_sq_deviation <= tol and stats.degenerate == 0
    detail = (
        f"max |(Im At)^2 - w4^2 z4| / |At|^2 = {stats.im_sq_deviation:.3e} "
        f"over {stats.checked} samples (tol {tol:g})"
    )
    return _check_entry("factorization", "pass" if ok else "fail", elapsed, detail)


def _vectors34_check() -> dict:
    started = time.perf_counter()
    polys = catalog.named_polynomials()
    d4, p4, z4, v4, n4 = (polys[k] for k in ("d4", "p4", "z4", "v4", "n4"))
    vectors = atiyah.special_vectors()
    flat_count = atiyah.SPECIAL_FLAT_COUNT

    tight = sum(1 for u in vectors if d4.evaluate(u) == 64 * p4.evaluate(u))
    z_vanishes = all(z4.evaluate(u) == 0 for u in vectors)
    v_vanishes = all(v4.evaluate(u) == 0 for u in vectors)
    flat = all(
        d4.evaluate(u) == 0 and p4.evaluate(u) == 0 for u in vectors[:flat_count]
    )
    nonflat = all(d4.evaluate(u) != 0 for u in vectors[flat_count:])
    n4_alive = any(n4.evaluate(u) != 0 for u in vectors)
    printed = d4.evaluate((9, 8, 1, 1, 7, 8))
    geometric = all(atiyah.is_geometric_candidate(u) for u in vectors)

    ok = (
        tight == len(vectors)
        and z_vanishes
        and v_vanishes
        and flat
        and nonflat
        and n4_alive
        and printed == 258048
        and geometric
    )
    detail = (
        f"{tight}/{len(vectors)} satisfy d4 = 64 p4; z4 and v4 vanish on all; "
        f"first {flat_count} have d4 = p4 = 0; d4(9,8,1,1,7,8) = {printed}"
    )
    return _check_entry(
        "vectors34", "pass" if ok else "fail", time.perf_counter() - started, detail
    )


def cmd_verify(args) -> dict:
    cert_dir = resolve_cert_dir(args.certs)
    if args.target == "all":
        names = ["sec3", "eq42", "eq52", "eq53", "factorization", "vectors34"]
    else:
        names = [args.target]

    checks = []
    skip_deep = False
    for name in names:
        if skip_deep and name in ("eq42", "eq53"):
            checks.append(
                _check_entry(
                    name,
                    "skip",
                    0.0,
                    "skipped: the base identity failed, so the shared averaging "
                    "machinery is suspect and deeper residuals would be noise",
                )
            )
            continue
        if name in certify.CHECKS_WITH_CERTIFICATES:
            entry = _certificate_check(name, cert_dir)
        elif name == "eq52":
            entry = _eq52_check()
        elif name == "factorization":
            entry = _factorization_check(args.seed, args.tol)
        else:
            entry = _vectors34_check()
        checks.append(entry)
        if name == "sec3" and entry["status"] != "pass" and args.target == "all":
            skip_deep = True

    passed = all(c["status"] == "pass" for c in checks)
    return {"command": f"verify {args.target}", "checks": checks, "passed": passed}


def cmd_lp(args) -> dict:
    if args.basis != "t6":
        raise UsageError(f"unknown basis {args.basis!r}; only t6 is defined")
    extras = [token.strip() for token in args.extra.split(",") if token.strip()]
    try:
        basis = lp.standard_basis(extras)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    started = time.perf_counter()
    problem = lp.build_program(basis)
    solution = lp.solve(problem)
    elapsed = time.perf_counter() - started

    checks = []
    if solution.status != "optimal":
        checks.append(
            _check_entry("lp", "fail", elapsed, f"solver status: {solution.status}")
        )
    else:
        combo_ok = lp.combination_polynomial(basis, solution) == catalog.d4()
        ok = solution.reconstruction_ok and combo_ok
        detail = (
            f"alpha = {solution.objective} with {len(solution.support)} active "
            f"columns after {solution.pivots} pivots; matrix reconstruction "
            f"{'ok' if solution.reconstruction_ok else 'FAILED'}, polynomial "
            f"reconstruction {'ok' if combo_ok else 'FAILED'}"
        )
        checks.append(
            _check_entry(
                "lp",
                "pass" if ok else "fail",
                elapsed,
                detail,
                alpha=str(solution.objective),
                support={name: str(v) for name, v in sorted(solution.multipliers.items()) if v},
            )
        )

    ceiling = lp.upper_bound_check(basis)
    c_ok = ceiling.applicable and ceiling.bound == 64
    c_detail = (
        f"objective ceiling {ceiling.bound} from witness {ceiling.witness}"
        if ceiling.applicable
        else "ceiling argument void: columns go negative at the witness: "
        + ", ".join(ceiling.negative_columns)
    )
    checks.append(_check_entry("ceiling", "pass" if c_ok else "fail", 0.0, c_detail))

    passed = all(c["status"] == "pass" for c in checks)
    return {"command": "lp", "checks": checks, "passed": passed}


def cmd_sample(args) -> dict:
    if not 2 <= args.n <= 6:
        raise UsageError("--n must be in 2..6")
    if args.count < 1:
        raise UsageError("--count must be positive")
    started = time.perf_counter()
    stats = atiyah.run_samples(
        args.n, args.count, seed=args.seed, mode=args.mode, tol=args.tol
    )
    elapsed = time.perf_counter() - started

    parts = [
        f"min |At| / prod(2 r_ij) = {stats.min_pair_margin:.12f} "
        f"(worst index {stats.worst_index}, config seed {stats.worst_seed})"
    ]
    if stats.re_deviation is not None:
        parts.append(f"max |Re At - d4| / |At| = {stats.re_deviation:.3e}")
        parts.append(f"max |(Im At)^2 - w4^2 z4| / |At|^2 = {stats.im_sq_deviation:.3e}")
        parts.append(f"min |At|^2 / P4 = {stats.min_face_margin:.12f}")
    if stats.line_deviation is not None:
        parts.append(f"max |At - 2x| / 2x = {stats.line_deviation:.3e}")
    if stats.triangle_deviation is not None:
        parts.append(f"max |At - (8xyz + d3)| rel = {stats.triangle_deviation:.3e}")
    parts.append(
        f"violations: {stats.identity_violations} identity, "
        f"{stats.margin_violations} margin, {stats.degenerate} degenerate skips"
    )
    detail = "; ".join(parts)

    ok = stats.passed() and stats.degenerate == 0
    check = _check_entry(
        f"sample n={args.n} {args.mode}",
        "pass" if ok else "fail",
        elapsed,
        detail,
        stats={
            k: (v if not isinstance(v, float) else repr(v))
            for k, v in vars(stats).items()
        },
    )
    return {"command": "sample", "checks": [check], "passed": ok}


def _parse_rational(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {token!r}") from exc


def cmd_eval(args) -> dict:
    polys = catalog.named_polynomials()
    if args.name not in polys:
        known = ", ".join(sorted(polys))
        raise UsageError(f"unknown polynomial {args.name!r}; known names: {known}")
    u = tuple(_parse_rational(tok) for tok in args.values)
    started = time.perf_counter()
    value = polys[args.name].evaluate(u)
    elapsed = time.perf_counter() - started
    point = ", ".join(str(q) for q in u)
    check = _check_entry(
        f"eval {args.name}",
        "pass",
        elapsed,
        f"{args.name}({point}) = {value}",
        value=str(value),
    )
    return {"command": "eval", "checks": [check], "passed": True}


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for check in report["checks"]:
        print(
            f"{check['status'].upper():<4} {check['name']:<16} "
            f"{check['detail']} [{check['elapsed_ms']} ms]"
        )
    print(f"overall: {'pass' if report['passed'] else 'FAIL'}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            report = cmd_verify(args)
        elif args.command == "lp":
            report = cmd_lp(args)
        elif args.command == "sample":
            report = cmd_sample(args)
        else:
            report = cmd_eval(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _print_report(report, args.as_json)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
