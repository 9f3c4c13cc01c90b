"""Command line front end.

Subcommands: verify one case, sweep all cases up to a rank bound, list a
Kostant cascade, or render a stored certificate.  Exit status: 0 when every
check passes, 1 on a certificate failure, 2 for out-of-scope or usage
errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .cascade import kostant_cascade
from .certificate import certificate_dict, from_json, rat_value, to_json
from .construction import OutOfScopeError, in_scope_cases
from .roots import Root, build_root_system
from .verify import run_case

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def eps_str(root: Root) -> str:
    """Human-readable epsilon form, e.g. 'e1+e2' or '(1/2)(e1-e2+...)'."""
    terms = []
    denom = 1
    for x in root.eps:
        denom = max(denom, Fraction(x).denominator)
    for i, x in enumerate(root.eps, start=1):
        x = Fraction(x) * denom
        if x == 0:
            continue
        sign = "+" if x > 0 else "-"
        mag = abs(x)
        coef = "" if mag == 1 else str(mag)
        terms.append(f"{sign}{coef}e{i}")
    body = "".join(terms).lstrip("+")
    return body if denom == 1 else f"(1/{denom})({body})"


def _rat_str(obj) -> str:
    v = rat_value(obj)
    return str(v)


def render_certificate(cert: dict, fmt: str) -> str:
    case = cert["case"]
    title = f"{case['family']} n={case['rank']} s={case['s']}"
    lines = []
    md = fmt == "md"
    h1 = "# " if md else ""
    h2 = "## " if md else "-- "
    lines.append(f"{h1}Certificate {title} [schema {cert['schema']}]")
    lines.append(f"verdict: {cert['verdict'].upper()}")
    if cert["first_failing_check"]:
        lines.append(f"first failing check: {cert['first_failing_check']}")
    lines.append("")

    sys_ = build_root_system(case["family"], case["rank"])
    rc = lambda c: sys_.root_from_coeffs(tuple(c))

    def root_row(vals):
        return ", ".join(eps_str(rc(c)) for c in vals)

    lines.append(f"{h2}S")
    for part in ("plus", "minus", "mixed"):
        if cert["S"][part]:
            lines.append(f"  S{'+' if part=='plus' else '-' if part=='minus' else 'm'}: "
                         + root_row(cert["S"][part]))
    lines.append("")
    lines.append(f"{h2}Heisenberg sets")
    for entry in cert["gamma_sets"]:
        lines.append(
            f"  Gamma[{eps_str(rc(entry['centre']))}] "
            f"({len(entry['members'])}): {root_row(entry['members'])}"
        )
    lines.append("")
    lines.append(f"{h2}T")
    lines.append("  " + root_row(cert["T"]))
    if cert["T_star"]:
        lines.append(f"{h2}T*")
        lines.append("  " + root_row(cert["T_star"]))
    lines.append("")
    lines.append(f"{h2}Adapted pair")
    h_terms = []
    for item in cert["h"]["coroot_coeffs"]:
        v = rat_value(item["value"])
        if v == 0:
            continue
        sign = "+" if v > 0 else "-"
        mag = abs(v)
        coef = "" if mag == 1 else f"{mag}*"
        h_terms.append(f"{sign} {coef}a{item['alpha']}v")
    lines.append("  h = " + " ".join(h_terms).lstrip("+ ").strip())
    lines.append(
        "  eigenvalues on g_T: "
        + ", ".join(
            f"{eps_str(rc(e['gamma']))}: {_rat_str(e['value'])}"
            for e in cert["eigenvalues"]
        )
    )
    lines.append("  degrees: " + ", ".join(_rat_str(d) for d in cert["degrees"]))
    lines.append("")
    lines.append(f"{h2}Character bounds (multiples of varpi_s)")
    lines.append(
        "  lower:    "
        + ", ".join(_rat_str(m) for m in cert["bounds"]["lower_multiples_of_varpi_s"])
    )
    lines.append(
        "  improved: "
        + ", ".join(_rat_str(m) for m in cert["bounds"]["improved_multiples_of_varpi_s"])
    )
    lines.append("")
    lines.append(f"{h2}Checks")
    for key, val in cert["checks"].items():
        if isinstance(val, dict) and "num" in val:
            val = _rat_str(val)
        lines.append(f"  {key}: {val}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    try:
        result = run_case(args.family, args.rank, args.s)
    except OutOfScopeError as exc:
        print(f"{args.family} n={args.rank} s={args.s}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cert = certificate_dict(result)
    if args.out:
        Path(args.out).write_text(to_json(cert))
    degrees = ", ".join(_rat_str(d) for d in cert["degrees"])
    status = cert["verdict"].upper()
    print(f"{args.family} n={args.rank} s={args.s}: {status}  degrees: {degrees}")
    if result.first_failing:
        print(f"first failing check: {result.first_failing}")
    return EXIT_PASS if result.verdict else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.max_rank < 4:
        print("sweep needs --max-rank >= 4", file=sys.stderr)
        return EXIT_USAGE
    out_dir: Optional[Path] = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    all_ok = True
    for family, n, s in in_scope_cases(args.max_rank):
        t0 = time.perf_counter()
        result = run_case(family, n, s)
        dt = time.perf_counter() - t0
        cert = certificate_dict(result)
        if out_dir:
            (out_dir / f"{family}_n{n}_s{s}.json").write_text(to_json(cert))
        degrees = ",".join(_rat_str(d) for d in cert["degrees"])
        rows.append((family, n, s, cert["verdict"], degrees, dt))
        all_ok &= result.verdict
    width = max(len(r[4]) for r in rows)
    print(f"{'case':<12} {'verdict':<8} {'degrees':<{width}}  time")
    for family, n, s, verdict, degrees, dt in rows:
        case = f"{family} n={n} s={s}"
        print(f"{case:<12} {verdict:<8} {degrees:<{width}}  {dt:6.2f}s")
    print(f"{len(rows)} cases, {'all pass' if all_ok else 'FAILURES PRESENT'}")
    return EXIT_PASS if all_ok else EXIT_FAIL


def cmd_cascade(args) -> int:
    try:
        system = build_root_system(args.family, args.rank)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for item in kostant_cascade(system):
        print(
            f"beta[{item.label}] = {eps_str(item.beta)}   "
            f"|H| = {len(item.heisenberg)}"
        )
    return EXIT_PASS


def cmd_report(args) -> int:
    try:
        cert = from_json(Path(args.infile).read_text())
    except (OSError, ValueError) as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cert.get("schema") != 1:
        print("unsupported certificate schema", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render_certificate(cert, args.format))
    return EXIT_PASS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="adapted-pairs",
        description=(
            "Exact verification of adapted pairs and character bounds for "
            "truncated maximal parabolic subalgebras (types B, D, E6, E7)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify a single case")
    p_verify.add_argument("--family", required=True, choices=["B", "D", "E6", "E7"])
    p_verify.add_argument("--rank", required=True, type=int)
    p_verify.add_argument("--s", required=True, type=int)
    p_verify.add_argument("--out", help="write the certificate JSON here")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="verify every case up to a rank")
    p_sweep.add_argument("--max-rank", required=True, type=int)
    p_sweep.add_argument("--out", help="directory for certificate files")
    p_sweep.set_defaults(func=cmd_sweep)

    p_cascade = sub.add_parser("cascade", help="print a Kostant cascade")
    p_cascade.add_argument("--family", required=True, choices=["B", "D", "E6", "E7"])
    p_cascade.add_argument("--rank", required=True, type=int)
    p_cascade.set_defaults(func=cmd_cascade)

    p_report = sub.add_parser("report", help="render a certificate")
    p_report.add_argument("--in", dest="infile", required=True)
    p_report.add_argument("--format", choices=["md", "txt"], default="txt")
    p_report.set_defaults(func=cmd_report)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
