"""Command-line front end.

Every subcommand prints one JSON report ``{status, payload, tool_version}``
(keys sorted, so identical inputs give identical bytes), or a plain-text
rendering with ``--human``.

Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 hypothesis violation.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__, corpus
from .coxquotient import generic_stabilizer_order, quotient_presentation
from .exactalg import AbelianInvariants, cokernel_invariants
from .srchow import (
    ChowRing,
    coarse_intersection_table,
    graded_piece_oracle,
    multiply,
    normal_form,
)
from .stackyfan import (
    FanError,
    HypothesisError,
    check_fan_axioms,
    is_complete,
    multiplicity,
    parse_fan,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def read_document(source: str) -> dict:
    """A fan argument is a file path or the name of a bundled corpus fan."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    elif source in corpus.names():
        return corpus.document(source)
    else:
        raise UsageError(f"no such fan file or corpus entry: {source}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanError("format", f"not valid JSON: {exc}") from exc


def load(args):
    doc = read_document(args.fan)
    if args.levels is not None:
        doc = dict(doc, levels=args.levels)
    return parse_fan(doc)


def _group(inv: AbelianInvariants) -> dict:
    return {**inv.as_dict(), "group": str(inv)}


def cmd_validate(args):
    try:
        doc = read_document(args.fan)
        if args.levels is not None:
            doc = dict(doc, levels=args.levels)
        fan = parse_fan(doc)
    except FanError as exc:
        return EXIT_INVALID, {
            "valid": False,
            "errors": [{"kind": exc.kind, "message": str(exc), **_jsonable(exc.details)}],
        }
    payload = {
        "valid": True,
        "errors": [],
        "fan_axioms": check_fan_axioms(fan).ok,
        "primitive_rays": True,
        "rays_span": fan.rays_span(),
        "canonical_net": fan.is_canonical,
        "num_cones": len(fan.cones),
    }
    try:
        payload["complete"] = is_complete(fan)
    except HypothesisError as exc:
        payload["complete"] = None
        payload["complete_note"] = str(exc)
    if args.echo:
        payload["fan"] = fan.to_document()
    return EXIT_OK, payload


def _jsonable(details):
    return json.loads(json.dumps(details, default=str))


def cmd_ring(args):
    return EXIT_OK, ChowRing(load(args)).presentation.as_dict()


def cmd_chow(args):
    ring = ChowRing(load(args))
    return EXIT_OK, {
        "pieces": [
            {**p.as_dict(), "group": str(p.invariants)}
            for p in ring.pieces(args.max_degree)
        ]
    }


def cmd_pic(args):
    ring = ChowRing(load(args))
    forms = ring.presentation.linear_forms
    return EXIT_OK, _group(cokernel_invariants(forms.T.copy(), ring.presentation.num_vars))


def cmd_mult(args):
    fan = load(args)
    rows = []
    for c in fan.sorted_cones():
        rep = multiplicity(fan, c)
        rows.append({"cone": list(c), "mult": rep.mult, "stacky_mult": rep.stacky_mult})
    return EXIT_OK, {"cones": rows}


def cmd_quotient(args):
    fan = load(args)
    qp = quotient_presentation(fan)
    payload = qp.as_dict()
    payload["stabilizer_orders"] = [
        generic_stabilizer_order(fan, i) for i in range(fan.num_rays)
    ]
    return EXIT_OK, payload


def cmd_multiply(args):
    fan = load(args)
    if len(args.monomial) != 2:
        raise UsageError("multiply needs exactly two --monomial options")
    ring = ChowRing(fan)
    for m in args.monomial:
        if len(m) != fan.num_rays or any(e < 0 for e in m):
            raise UsageError(f"monomial {m} must have {fan.num_rays} nonnegative exponents")
    a, b = (ring.monomial_class(m) for m in args.monomial)
    product = multiply(a, b, ring)
    piece = ring[product.degree]
    return EXIT_OK, {
        "degree": product.degree,
        "basis": [list(m) for m in piece.basis],
        "coords": list(product.coords),
        "normal_form": list(normal_form(product, piece)),
        "smith_diagonal": list(piece.smith.d),
    }


def cmd_oracle_check(args):
    ring = ChowRing(load(args))
    rows = []
    ok = True
    for k in range(args.max_degree + 1):
        fast = ring[k].invariants
        slow = graded_piece_oracle(ring.presentation, ring.fan, k)
        rows.append(
            {"degree": k, "graded_piece": str(fast), "oracle": str(slow), "pass": fast == slow}
        )
        ok &= fast == slow
    return (EXIT_OK if ok else EXIT_INVALID), {"all_pass": ok, "degrees": rows}


def cmd_table(args):
    fan = load(args)
    return EXIT_OK, {
        "entries": [
            {
                "sigma": list(s),
                "tau": list(t),
                "gamma": list(g),
                "coefficient": str(q),
            }
            for s, t, g, q in coarse_intersection_table(fan)
        ]
    }


COMMANDS = {
    "validate": cmd_validate,
    "ring": cmd_ring,
    "chow": cmd_chow,
    "pic": cmd_pic,
    "mult": cmd_mult,
    "quotient": cmd_quotient,
    "multiply": cmd_multiply,
    "oracle-check": cmd_oracle_check,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stackychow",
        description="Integral Chow rings of toric stacks from stacky fans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("fan", help="fan document (JSON) or bundled corpus name")
    common.add_argument(
        "--levels", type=_int_list, default=None, help="override levels, e.g. 2,3"
    )
    common.add_argument("--human", action="store_true", help="plain-text output")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "validate":
            p.add_argument("--echo", action="store_true", help="include the normalized fan")
        if name in ("chow", "oracle-check"):
            p.add_argument("--max-degree", type=int, default=4)
        if name == "multiply":
            p.add_argument(
                "--monomial", type=_int_list, action="append", default=[], required=True,
                help="exponent vector, e.g. 1,0,0 (give twice)",
            )
    return parser


def render_human(command: str, status: str, payload: dict) -> str:
    if status != "ok":
        return f"error: {payload.get('message', payload)}"
    if command == "chow":
        return "\n".join(f"A^{p['degree']} = {p['group']}" for p in payload["pieces"])
    if command == "pic":
        return f"Pic = {payload['group']}"
    if command == "table":
        return "\n".join(
            f"[V{e['sigma']}]·[V{e['tau']}] = {e['coefficient']} [V{e['gamma']}]"
            for e in payload["entries"]
        )
    if command == "oracle-check":
        return "\n".join(
            f"degree {r['degree']}: {r['graded_piece']} vs {r['oracle']} "
            f"{'PASS' if r['pass'] else 'FAIL'}"
            for r in payload["degrees"]
        )
    return "\n".join(f"{k}: {v}" for k, v in sorted(payload.items()))


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    status = "ok"
    try:
        code, payload = COMMANDS[args.command](args)
        if code == EXIT_INVALID:
            status = "error"
    except UsageError as exc:
        code, status, payload = EXIT_USAGE, "error", {"kind": "usage", "message": str(exc)}
    except FanError as exc:
        code, status = EXIT_INVALID, "error"
        payload = {"kind": exc.kind, "message": str(exc), **_jsonable(exc.details)}
    except HypothesisError as exc:
        code, status = EXIT_HYPOTHESIS, "error"
        payload = {"kind": "hypothesis", "message": str(exc)}
    if args.human:
        out.write(render_human(args.command, status, payload) + "\n")
    else:
        report = {"status": status, "payload": payload, "tool_version": __version__}
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
