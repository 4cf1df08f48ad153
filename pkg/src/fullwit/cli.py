"""Command-line interface: build/verify certificates, run the oracle, print orders.

Reports are single-line JSON documents on stdout with sorted keys, so byte
output is reproducible run to run; wall-clock diagnostics go to stderr.
Exit codes: 0 success, 1 failed verification, 2 any input or size error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import certio, oracle, witness
from .errors import FullwitError
from .gf import FieldSpec, is_prime
from .groups import affine_order, gl_order, sl_order
from .rings import CyclotomicRing, PrimeFieldRing, RationalRing, Ring


def parse_q(text: str) -> tuple[int, int]:
    """Accept a prime ("3"), an explicit power ("2^2"), or both ("4=2^2")."""
    m = re.fullmatch(r"(\d+)=(\d+)\^(\d+)", text)
    if m:
        q, p, k = (int(x) for x in m.groups())
        if p**k != q:
            raise ValueError(f"inconsistent field size: {q} != {p}^{k}")
    else:
        m = re.fullmatch(r"(\d+)\^(\d+)", text)
        if m:
            p, k = (int(x) for x in m.groups())
        else:
            if not re.fullmatch(r"\d+", text):
                raise ValueError(f"cannot parse field size {text!r}")
            p, k = int(text), 1
            if not is_prime(p):
                raise ValueError(
                    f"{p} is not prime; spell prime powers explicitly, e.g. {p}=p^k"
                )
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("field degree must be at least 1")
    return p, k


def ring_from_selector(selector: str, p: int) -> Ring:
    if selector == "cyclotomic":
        return CyclotomicRing(p)
    if selector == "rational":
        return RationalRing(p)
    m = re.fullmatch(r"fp:(\d+)(?::(\d+))?", selector)
    if m:
        ell = int(m.group(1))
        d = int(m.group(2) or 1)
        return PrimeFieldRing(p, FieldSpec(ell, d))
    raise ValueError(f"unknown ring selector {selector!r} (cyclotomic | rational | fp:L[:D])")


def _print_report(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


def _note_elapsed(seconds: float) -> None:
    sys.stderr.write(f"elapsed: {seconds:.3f}s\n")


def _cmd_build(args) -> int:
    p, k = parse_q(args.q)
    spec = FieldSpec(p, k)
    cert = witness.build(spec, args.n, chi0=args.chi0, compress=not args.no_compress)
    if args.rationalize:
        cert = witness.rationalize(cert)
    certio.write_certificate(cert, args.output)
    _print_report(
        {
            "command": "build",
            "n": cert.n,
            "q": spec.q,
            "coeff_kind": cert.coeff_kind,
            "compressed": cert.compressed,
            "terms_per_level": {str(lv): c for lv, c in sorted(cert.level_terms.items())},
            "terms_written": cert.term_count,
            "path": str(args.output),
        }
    )
    return 0


def _cmd_verify(args) -> int:
    cert = certio.read_certificate(args.certificate)
    selector = args.ring if args.ring is not None else cert.coeff_kind
    ring = ring_from_selector(selector, cert.spec.p)
    report = witness.verify(cert, ring, group=args.group)
    _print_report(
        {
            "command": "verify",
            "ok": report.ok,
            "residual_support": report.residual_support,
            "n": report.n,
            "q": report.q,
            "ring": report.ring,
            "group": report.group,
            "terms": report.terms,
        }
    )
    _note_elapsed(report.elapsed)
    return 0 if report.ok else 1


def _cmd_oracle(args) -> int:
    p, k = parse_q(args.q)
    spec = FieldSpec(p, k)
    ring = ring_from_selector(args.ring, p)
    if not isinstance(ring, PrimeFieldRing):
        raise ValueError("the oracle needs a field coefficient ring (--ring fp:L[:D])")
    result = oracle.run_oracle(args.group, spec, args.n, ring, idempotent=args.idempotent)
    _print_report(
        {
            "command": "oracle",
            "group": result.group,
            "order": result.order,
            "field": result.field,
            "idempotent": result.idempotent,
            "full": result.full,
            "ideal_dim": result.ideal_dim,
            "corner_dim": result.corner_dim,
        }
    )
    _note_elapsed(result.elapsed)
    return 0


def _cmd_info(args) -> int:
    p, k = parse_q(args.q)
    q = p**k
    n = args.n
    orders = {
        "SL": sl_order(q, n),
        "GL": gl_order(q, n),
        "P": affine_order(q, n),
        "U": q ** (n * (n - 1) // 2),
        "DU": q ** ((n - 1) * (n - 2) // 2),
        "V": q ** (n - 1) if n >= 2 else None,
        "Vprime": q ** (n - 2) if n >= 2 else None,
    }
    _print_report(
        {
            "command": "info",
            "n": n,
            "q": q,
            "p": p,
            "k": k,
            "N": (n - 1) * (n - 2) // 2,
            "orders": orders,
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fullwit",
        description="Build and verify fullness certificates for derived-unipotent "
        "averaging idempotents; cross-check with a brute-force ideal oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct a certificate and write it to a file")
    build.add_argument("-n", type=int, required=True, help="matrix size")
    build.add_argument("-q", required=True, help="field size: prime, p^k, or q=p^k")
    build.add_argument("-o", "--output", required=True, help="certificate path")
    build.add_argument("--no-compress", action="store_true", help="keep duplicate (g, h) pairs")
    build.add_argument(
        "--rationalize", action="store_true", help="project coefficients to Z[1/p]"
    )
    build.add_argument(
        "--chi0",
        type=int,
        default=1,
        help="field code of the reference character parameter (default 1)",
    )
    build.set_defaults(func=_cmd_build)

    verify = sub.add_parser("verify", help="verify a certificate over a chosen ring")
    verify.add_argument("certificate", help="certificate path")
    verify.add_argument(
        "--ring", default=None, help="cyclotomic | rational | fp:L[:D] (default: match file)"
    )
    verify.add_argument("--group", choices=("sl", "gl"), default="sl", help="ambient group")
    verify.set_defaults(func=_cmd_verify)

    orc = sub.add_parser("oracle", help="brute-force fullness check over a prime-power field")
    orc.add_argument("-n", type=int, required=True)
    orc.add_argument("-q", required=True, help="field size: prime, p^k, or q=p^k")
    orc.add_argument("--ring", required=True, help="fp:L[:D]")
    orc.add_argument(
        "--idempotent",
        choices=("e", "u-avg"),
        default="e",
        help="derived-subgroup average (e) or full unitriangular average (u-avg)",
    )
    orc.add_argument("--group", choices=("sl", "gl"), default="sl")
    orc.set_defaults(func=_cmd_oracle)

    info = sub.add_parser("info", help="print group and subgroup orders")
    info.add_argument("-n", type=int, required=True)
    info.add_argument("-q", required=True)
    info.set_defaults(func=_cmd_info)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FullwitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
