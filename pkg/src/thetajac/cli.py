"""Command-line interface: ``thetajac <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arith import PrecisionError
from .formlang import FormSyntaxError, eval_form, eval_lattice, parse_form, parse_lattice
from .hecke import lift_table
from .series import classify, ord_, theta_decompose

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PREC = 0, 1, 2, 3


def _default_prec() -> int:
    return int(os.environ.get("THETAJAC_PREC", "96"))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _header(phi) -> str:
    s = phi.shape
    return f"# lattice {s.lattice}  t={s.t}  2k={s.k2}  D={s.D}  prec={phi.prec}  den={phi.den}"


def cmd_expand(args) -> int:
    phi = eval_form(parse_form(args.expr), args.prec)
    if args.json:
        print(_dump(phi.to_json()))
        return EXIT_OK
    print(_header(phi))
    for (n, w), c in phi.sorted_terms():
        print(f"{n} {' '.join(map(str, w))} {c}".replace("  ", " "))
    return EXIT_OK


def cmd_ord(args) -> int:
    v = ord_(eval_form(parse_form(args.expr), args.prec))
    print(f"{v.value} (prec {v.prec})")
    return EXIT_OK


def cmd_classify(args) -> int:
    v = classify(eval_form(parse_form(args.expr), args.prec))
    print(f"{v.value} (prec {v.prec})")
    return EXIT_OK


def cmd_lift(args) -> int:
    expr = parse_form(args.expr)
    De = eval_form(expr, 0).shape.D % 24 or 24
    phi = eval_form(expr, args.bound * De)
    table = lift_table(phi, args.mu, args.bound)
    if args.json:
        print(_dump(table.to_json()))
        return EXIT_OK
    print(f"# mu={table.mu} Q={table.Q} 2k={table.k2} den={table.den} bound={table.bound}")
    for (n, w, m), c in table.sorted_entries():
        print(f"{n} {m} [{','.join(map(str, w))}] {c}")
    return EXIT_OK


def _cyc_str(x) -> str:
    r = x.rational()
    if r is not None:
        return str(r)
    j = x.root_exponent()
    if j is not None:
        return f"z^{j}"
    return repr(x)


def cmd_weil(args) -> int:
    from .weil import joint_eigenvectors, weil_matrices

    W = weil_matrices(eval_lattice(parse_lattice(args.lattice)))
    spaces = joint_eigenvectors(W)
    if args.json:
        data = W.to_json()
        data["eigenspaces"] = [
            {
                "lambda_T": f"{s.lambda_T}/{s.M}",
                "lambda_S": f"{s.lambda_S}/{s.M}",
                "basis": [[_cyc_str(x) for x in v] for v in s.basis],
            }
            for s in spaces
        ]
        print(_dump(data))
        return EXIT_OK
    print(f"# {W.lattice}  |D| = {W.order}  field Q(z), z = exp(2 pi i / {W.M})")
    print("labels: " + " ".join(W.labels))
    print("U(T) = diag(" + ", ".join(f"z^{j}" for j in W.UT) + ")")
    print(f"U(S) = z8^{-W.rank % 8} |D|^(-1/2) * (z^e), e =")
    for row in W.S_exponents:
        print("  " + " ".join(f"{e:>3}" for e in row))
    for s in spaces:
        print(f"lambda_T = z^{s.lambda_T}, lambda_S = z^{s.lambda_S}, dim {s.dim}")
        for v in s.basis:
            print("  (" + ", ".join(_cyc_str(x) for x in v) + ")")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CRITERIA, run_all

    if args.suite in (None, "all", "acceptance"):
        numbers = sorted(CRITERIA)
    else:
        try:
            numbers = [int(x) for x in args.suite.split(",")]
        except ValueError:
            print(f"unknown suite {args.suite!r}", file=sys.stderr)
            return EXIT_USAGE
        if any(k not in CRITERIA for k in numbers):
            print(f"criteria are numbered 1..{len(CRITERIA)}", file=sys.stderr)
            return EXIT_USAGE
    results = run_all(numbers)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_decompose(args) -> int:
    dec = theta_decompose(eval_form(parse_form(args.expr), args.prec))
    for i, name in enumerate(dec.names):
        comp = dec.components[i]
        body = " + ".join(f"({c}) q^({n}/24)" for n, c in sorted(comp.terms.items())) or "0"
        print(f"{name}: {body}  [prec {comp.prec}]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetajac", description="Exact Jacobi forms of lattice index.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_prec(sp):
        sp.add_argument("expr", help="form expression, e.g. 'thetaA(2)/eta^1'")
        sp.add_argument("--prec", type=int, default=_default_prec(), help="precision N24 (q-exponents times 24)")
        return sp

    e = with_prec(sub.add_parser("expand", help="print Fourier coefficients"))
    e.add_argument("--json", action="store_true")
    e.set_defaults(fn=cmd_expand)
    with_prec(sub.add_parser("ord", help="minimal hyperbolic norm")).set_defaults(fn=cmd_ord)
    with_prec(sub.add_parser("classify", help="singular / cusp / holomorphic")).set_defaults(fn=cmd_classify)
    with_prec(sub.add_parser("decompose", help="theta decomposition of an index-one form")).set_defaults(
        fn=cmd_decompose
    )

    li = sub.add_parser("lift", help="Fourier coefficients of the additive lift")
    li.add_argument("expr")
    li.add_argument("--mu", type=int, default=1)
    li.add_argument("--bound", type=int, required=True, help="largest n*m")
    li.add_argument("--json", action="store_true")
    li.set_defaults(fn=cmd_lift)

    w = sub.add_parser("weil", help="Weil representation and joint eigenvectors")
    w.add_argument("lattice", help="lattice literal, e.g. D(8) or scale(A(2),3)")
    w.add_argument("--json", action="store_true")
    w.set_defaults(fn=cmd_weil)

    v = sub.add_parser("verify", help="run the acceptance criteria")
    v.add_argument("--suite", default=None, help="'all' or comma-separated criterion numbers")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FormSyntaxError as exc:
        src = getattr(args, "expr", None) or getattr(args, "lattice", "")
        print(f"error: {exc}", file=sys.stderr)
        print(f"  {src}\n  {' ' * exc.offset}^", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # output consumer went away (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except PrecisionError as exc:
        print(f"error: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PREC
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
