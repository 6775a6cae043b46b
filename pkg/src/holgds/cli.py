"""Command-line front end. Exit codes: 0 ok, 1 input error, 2 resource bound, 3 invariant failure."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .classify import classify_a1b, classify_ternary, classify_uniform_gds
from .errors import HolgdsError, ParseError, TooLarge
from .evaluate import evaluate, holant_pow
from .exactnum import ExactMatrix, format_scalar, parse_scalar, scalar_text
from .gadgets import (
    LADDER_CLASSES,
    MAX_BRUTE_INTERNAL,
    INTERNAL,
    RecurrenceSystem,
    builtin_chain,
    builtin_ladder,
    family_member,
    gadgeture,
    iterate,
    ladder_gadgeture,
    parse_gadget,
    transfer_matrix,
)
from .grids import (
    GdsGrid,
    HolantGrid,
    dump_canonical,
    parse_instance,
    parse_source_graph,
    render_instance,
    render_source_graph,
)
from .reduction import run_reduction
from .transforms import double, gds_to_holant4, holant_to_gds, tripartite_form
from .verify import verify

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_INVARIANT = 0, 1, 2, 3


class InvariantFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text: str, obj: dict) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def _vector(values) -> str:
    return " ".join(scalar_text(v) for v in values)


# -- commands -----------------------------------------------------------------------------

def cmd_eval(args) -> int:
    grid = parse_instance(_read(args.file))
    if args.power == 1:
        value = evaluate(grid, args.method)
    else:
        value = holant_pow(grid, args.power, args.method)
    _emit(args, scalar_text(value), {"value": format_scalar(value)})
    return EXIT_OK


def chain_gadgeture(steps: int) -> list:
    """Gadgeture of the simple chain H_steps via its recurrence (steps >= 1)."""
    if steps < 1:
        raise ValueError("the simple chain starts at H_1; use --steps 1 or more")
    h1, rule = builtin_chain()
    sys4 = RecurrenceSystem(transfer_matrix(rule, 1, 1), gadgeture(h1).table)
    return iterate(sys4, steps - 1)


def _brute_member(name: str, steps: int) -> list:
    if name == "ladder":
        base, rule = builtin_ladder()
    else:
        if steps < 1:
            raise ValueError("the simple chain starts at H_1; use --steps 1 or more")
        base, rule = builtin_chain()
        steps -= 1
    g = family_member(base, rule, steps)
    internal = len(g.vertices(INTERNAL))
    if internal > MAX_BRUTE_INTERNAL:
        raise TooLarge(f"{internal} internal vertices exceed the brute-force bound {MAX_BRUTE_INTERNAL}")
    return list(gadgeture(g).table)


def cmd_gadgeture(args) -> int:
    if args.steps < 0:
        raise ValueError("--steps must be nonnegative")
    if args.file:
        values = list(gadgeture(parse_gadget(_read(args.file)), "brute").table)
    elif args.brute:
        values = _brute_member(args.builtin, args.steps)
    elif args.builtin == "ladder":
        values = list(ladder_gadgeture(args.steps).table)
    else:
        values = chain_gadgeture(args.steps)
    if args.collapsed:
        if args.builtin != "ladder" or args.file:
            raise ValueError("--collapsed applies to the ladder gadget only")
        values = [values[cls[0]] for cls in LADDER_CLASSES]
    _emit(args, _vector(values), {"gadgeture": [format_scalar(v) for v in values]})
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = parse_source_graph(_read(args.file))
    report = run_reduction(g, max_n=args.max_n, flat_check=args.flat_check)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dump_canonical(report.to_json(with_table=True)))
    lines = [
        f"evaluations {report.evaluations}",
        f"held_out_residuals_zero {str(report.residuals_zero).lower()}",
        f"coefficients_nonnegative_integers {str(report.coefficients_nonnegative_integers).lower()}",
        f"selected_sum {scalar_text(report.selected_sum)}",
        f"vertex_covers {report.vc_oracle}",
        f"agreement {str(report.agreement).lower()}",
    ]
    if report.flat_check is not None:
        lines.append(f"flat_check {str(report.flat_check).lower()}")
    _emit(args, "\n".join(lines), report.to_json(with_table=False))
    if not report.residuals_zero or report.flat_check is False:
        raise InvariantFailure("recovered table does not reproduce the skeleton values")
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.symmetric:
        q = [parse_scalar(x.strip()) for x in args.symmetric.split(",")]
        fn = classify_uniform_gds if args.uniform_gds else classify_ternary
        verdict = fn(q, args.planar)
    else:
        a, b = (parse_scalar(x) for x in args.a1b)
        verdict = classify_a1b(a, b, args.planar)
    _emit(args, verdict.text(), verdict.to_json())
    return EXIT_OK


def _parse_matrix(text: str) -> ExactMatrix:
    rows = [[parse_scalar(x.strip()) for x in row.split(",")] for row in text.split(";")]
    return ExactMatrix.from_rows(rows)


def cmd_transform(args) -> int:
    kind = args.kind
    if kind in ("holant-to-gds", "gds-to-holant4"):
        grid = parse_instance(_read(args.file))
        want = HolantGrid if kind == "holant-to-gds" else GdsGrid
        if not isinstance(grid, want):
            raise ParseError(f"{kind} expects a {'holant' if want is HolantGrid else 'gds'} instance")
        out = holant_to_gds(grid) if kind == "holant-to-gds" else gds_to_holant4(grid)
        text = render_instance(out)
    else:
        g = parse_source_graph(_read(args.file))
        if kind == "double":
            text = render_source_graph(double(g))
        else:
            if not args.matrix:
                raise ValueError("tripartite needs --matrix 'a,b;c,d'")
            text = render_instance(tripartite_form(g, _parse_matrix(args.matrix), args.k))
    if args.json:
        print(json.dumps(json.loads(text), sort_keys=True))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify()
    _emit(args, "\n".join(c.line() for c in report.checks), report.to_json())
    if not report.ok:
        raise InvariantFailure("a published-constant check failed")
    return EXIT_OK


# -- wiring -------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    p = _Parser(prog="holgds", description="Exact Holant and #GDS counting tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a Holant or #GDS instance file")
    e.add_argument("file")
    e.add_argument("--method", choices=("ve", "brute"), default="ve")
    e.add_argument("--power", type=int, default=1)
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("gadgeture", parents=[common], help="print a gadgeture vector")
    g.add_argument("--builtin", choices=("ladder", "chain"), default="ladder")
    g.add_argument("--file", help="gadget file to brute-force instead of a built-in")
    g.add_argument("--steps", type=int, default=0)
    g.add_argument("--collapsed", action="store_true")
    g.add_argument("--brute", action="store_true", help="brute-force the assembled gadget")
    g.set_defaults(func=cmd_gadgeture)

    r = sub.add_parser("reduce", parents=[common], help="run a reduction pipeline")
    r.add_argument("pipeline", choices=("vc-ds",))
    r.add_argument("file")
    r.add_argument("--max-n", type=int, default=1)
    r.add_argument("--report", help="write the full JSON report here")
    r.add_argument("--flat-check", action="store_true", help="cross-check by a flat solve mod p")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("classify", parents=[common], help="tractability verdicts")
    grp = c.add_mutually_exclusive_group(required=True)
    grp.add_argument("--symmetric", metavar="q0,q1,q2,q3")
    grp.add_argument("--a1b", nargs=2, metavar=("A", "B"))
    c.add_argument("--planar", action="store_true")
    c.add_argument("--uniform-gds", action="store_true",
                   help="uniform #GDS verdict through an (=3) M^x3 decomposition")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("transform", parents=[common], help="instance transformations")
    t.add_argument("kind", choices=("holant-to-gds", "gds-to-holant4", "double", "tripartite"))
    t.add_argument("file")
    t.add_argument("--matrix", help="2x2 matrix 'a,b;c,d' for tripartite")
    t.add_argument("--k", type=int, default=3)
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", parents=[common], help="check the published constants")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except InvariantFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (HolgdsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
