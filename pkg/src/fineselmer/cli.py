"""Command-line entry point.

Exit codes: 0 success or pass, 1 hypothesis fail (``hcyc check``),
2 invalid input, 3 criterion disagreement (``greenberg compare``).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import FineSelmerError
from .greenberg import criterion1_check, criterion2_check
from .gr_problem import RankSequence, exponent_sequence, gr_rhs, verify_iota_invariance
from .hcyc import TwistQuery, check_hcyc, load_records, scan
from .lambda_core import DistinguishedPoly, LambdaSeries, cyclotomic_phi, weierstrass_prepare
from .modules import ElementaryModule, char_ideal, lambda_invariant, mu_invariant


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _csv(values) -> str:
    return ",".join(str(v) for v in values)


def _load_one(path):
    records = load_records(path)
    if len(records) != 1:
        raise FineSelmerError(f"{path} holds {len(records)} records; check needs exactly one")
    return records[0]


def cmd_phi(args, out):
    print(_csv(cyclotomic_phi(args.n, args.p).coeffs), file=out)
    return 0


def cmd_weierstrass(args, out):
    f = LambdaSeries.from_poly(args.p, args.coeffs, args.prec_p, args.prec_x)
    w = weierstrass_prepare(f)
    print(f"mu: {w.mu}", file=out)
    print(f"P: {_csv(w.distinguished_part.coeffs)}", file=out)
    print(f"unit_constant: {w.unit_part[0]}", file=out)
    print(f"precision: p^{w.result_p_precision} X^{w.result_x_precision}", file=out)
    return 0


def cmd_module_inv(args, out):
    M = ElementaryModule.load(args.spec)
    print(f"mu: {mu_invariant(M)}", file=out)
    print(f"lambda: {lambda_invariant(M)}", file=out)
    if M.is_torsion:
        ci = char_ideal(M)
        print(f"char_ideal: p^{ci.mu_total}", file=out)
        for F, k in ci.distinguished_factors:
            print(f"  factor: {_csv(F.coeffs)} ^{k}", file=out)
    else:
        print("char_ideal: none (free rank > 0)", file=out)
    print(f"canonical: {json.dumps(M.to_dict(), sort_keys=True)}", file=out)
    print(f"form: {M.describe()}", file=out)
    return 0


def cmd_greenberg(args, out):
    U, V = ElementaryModule.load(args.u), ElementaryModule.load(args.v)
    F = DistinguishedPoly(U.p, args.f)
    r1 = criterion1_check(U, V, F, args.m_max)
    r2 = criterion2_check(U, V, args.e_max, args.n_max)
    print(f"criterion 1: F={_csv(F.coeffs)} m_max={args.m_max}", file=out)
    print(f"  side_a={str(r1.side_a).lower()} side_b={str(r1.side_b).lower()}", file=out)
    print(f"  coranks U: {_csv(r1.witnesses['U'])}", file=out)
    print(f"  coranks V: {_csv(r1.witnesses['V'])}", file=out)
    print(f"criterion 2: e_max={args.e_max} n_max={args.n_max}", file=out)
    print(f"  side_a={str(r2.side_a).lower()} side_b={str(r2.side_b).lower()}", file=out)
    for e, row in r2.witnesses["d"].items():
        print(f"  d(e={e}, n=0..{len(row) - 1}): {_csv(row)}", file=out)
    if r1.agree and r2.agree:
        return 0
    print("error: criterion sides disagree", file=sys.stderr)
    return 3


def cmd_gr_rhs(args, out):
    ranks = RankSequence(args.p, tuple(args.ranks))
    rhs = gr_rhs(ranks)
    print(f"e: {_csv(exponent_sequence(ranks))}", file=out)
    print(f"factors: {' '.join(f'{n}:{k}' for n, k in rhs.factors) or 'none'}", file=out)
    print(f"rhs: {rhs}", file=out)
    print(f"degree: {rhs.degree()}", file=out)
    print(f"iota_invariant: {str(verify_iota_invariance(rhs)).lower()}", file=out)
    return 0


def cmd_hcyc_check(args, out):
    rep = check_hcyc(_load_one(args.newform), TwistQuery(args.p, args.i))
    print(rep.line(), file=out)
    for c in rep.per_prime:
        status = "ok" if c.passed else ",".join(c.reasons)
        print(f"  ell={c.ell} m={c.m} branch={c.branch} {status}", file=out)
    return 0 if rep.verdict == "pass" else 1


def cmd_hcyc_scan(args, out):
    for record in load_records(args.newform):
        i_values = None if args.i is None else [args.i]
        for rep in scan(record, args.p_max, i_values):
            print(rep.line(), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fineselmer", description="Iwasawa-algebra arithmetic and fine Selmer hypotheses.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("phi", help="coefficients of Phi_n, ascending")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("weierstrass", help="Weierstrass preparation of a truncated series")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--prec-p", type=int, required=True)
    s.add_argument("--prec-x", type=int, required=True)
    s.add_argument("--coeffs", type=_ints, required=True)
    s.set_defaults(func=cmd_weierstrass)

    s = sub.add_parser("module-inv", help="invariants of a module spec file")
    s.add_argument("--spec", required=True)
    s.set_defaults(func=cmd_module_inv)

    g = sub.add_parser("greenberg", help="pseudo-isomorphism criteria")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = gsub.add_parser("compare", help="run both criteria on two module specs")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--f", type=_ints, required=True)
    s.add_argument("--m-max", type=int, default=4)
    s.add_argument("--e-max", type=int, default=3)
    s.add_argument("--n-max", type=int, default=3)
    s.set_defaults(func=cmd_greenberg)

    s = sub.add_parser("gr-rhs", help="right side of (Gr) from a rank sequence")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--ranks", type=_ints, required=True)
    s.set_defaults(func=cmd_gr_rhs)

    h = sub.add_parser("hcyc", help="local hypothesis checks for newform twists")
    hsub = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = hsub.add_parser("check")
    s.add_argument("--newform", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.set_defaults(func=cmd_hcyc_check)
    s = hsub.add_parser("scan")
    s.add_argument("--newform", required=True)
    s.add_argument("--p-max", type=int, required=True)
    which = s.add_mutually_exclusive_group()
    which.add_argument("--i", type=int)
    which.add_argument("--i-all", action="store_true")
    s.set_defaults(func=cmd_hcyc_scan)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _Usage as exc:
        msg = str(exc)
    except (FineSelmerError, OSError, ValueError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
    print("error: " + " ".join(msg.split()), file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
