"""Command-line interface: JSON documents in, JSON verdicts out.

Predicates exit 0 regardless of verdict unless ``--strict`` is given, in
which case a negative verdict exits 1.  Malformed or semantically invalid
input exits 2 with an error object on stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from .extension import ExtensionOutcome, ExtensionProblem, InvalidGammaError
from .independence import (
    DependenceError,
    d_max,
    d_min,
    divides_pair,
    gamma_interval,
    independent,
)
from .indiscernibles import (
    find_violating_cycle,
    is_n_cyclic,
    sopn_witness,
    tp2_array,
)
from .io import (
    DocumentError,
    Roles,
    SpaceDocument,
    dumps,
    format_rational,
    loads,
    parse_rational,
    parse_space_document,
    parse_template_document,
    space_document,
    template_document,
)
from .metric import (
    FiniteMetricSpace,
    UnknownLabelError,
    is_consistent,
    path_completion,
    truncated_sum,
)
from .oracle import divides_oracle, extension_oracle, interval_oracle
from .stationarity import is_stationary, unique_extension_to

Result = tuple[dict, bool]  # (output document, negative verdict)


def _read_input(args: argparse.Namespace) -> Any:
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = sys.stdin.read()
    return loads(text)


def _space_doc(args: argparse.Namespace) -> SpaceDocument:
    return parse_space_document(_read_input(args))


def _valid_total(doc: SpaceDocument) -> FiniteMetricSpace:
    space = doc.to_total()
    violation = space.triangle_violation()
    if violation is not None:
        raise DocumentError(
            "distances: triangle inequality violated: "
            f"d({violation.x!r}, {violation.y!r}) = {violation.lhs} > "
            f"{violation.rhs} via {violation.via!r}"
        )
    return space


def _require_b_star(doc: SpaceDocument) -> str:
    if doc.roles.b_star is None:
        raise DocumentError("roles.b_star: required for this command")
    return doc.roles.b_star


def _extension_problem(doc: SpaceDocument, space: FiniteMetricSpace) -> ExtensionProblem:
    return ExtensionProblem.create(
        space, doc.roles.a_set, doc.roles.b_set, doc.roles.base, _require_b_star(doc)
    )


def _outcome_doc(outcome: ExtensionOutcome) -> dict:
    return {
        "space": space_document(outcome.space),
        "assignments": [
            {"source": src, "copy": copy, "gamma": format_rational(g)}
            for src, copy, g in outcome.assignments
        ],
    }


def _cmd_check(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = doc.to_total()
    violation = space.triangle_violation()
    out: dict[str, Any] = {"valid": violation is None, "violation": None}
    if violation is not None:
        out["violation"] = {
            "points": [violation.x, violation.via, violation.y],
            "lhs": format_rational(violation.lhs),
            "rhs": format_rational(violation.rhs),
        }
    return out, violation is not None


def _cmd_complete(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    return space_document(path_completion(doc.to_partial())), False


def _cmd_consistent(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    partial = doc.to_partial()
    check = is_consistent(partial)
    out: dict[str, Any] = {"consistent": check.consistent, "witness": None}
    if check.witness is not None:
        chain = check.witness
        legs = [partial.get(x, y) for x, y in zip(chain, chain[1:])]
        out["witness"] = {
            "sequence": list(chain),
            "direct": format_rational(partial.get(chain[0], chain[-1])),
            "chain": format_rational(truncated_sum(legs)),
        }
    return out, not check.consistent


def _cmd_dmax(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    value = d_max(space, args.b1, args.b2, doc.roles.base)
    return {"value": format_rational(value)}, False


def _cmd_dmin(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    value = d_min(space, args.b1, args.b2, doc.roles.base)
    return {"value": format_rational(value)}, False


def _cmd_gamma(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    interval = gamma_interval(space, args.b1, args.b2, doc.roles.base)
    return {
        "lo": format_rational(interval.lo),
        "hi": format_rational(interval.hi),
    }, False


def _cmd_divides(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    pair_flags = (args.a, args.b1, args.b2)
    if any(flag is not None for flag in pair_flags):
        if any(flag is None for flag in pair_flags):
            raise DocumentError("pair mode needs all of --a, --b1, --b2")
        verdict = divides_pair(space, args.a, args.b1, args.b2, doc.roles.base)
        return {"divides": verdict}, verdict
    result = independent(space, doc.roles.a_set, doc.roles.b_set, doc.roles.base)
    out: dict[str, Any] = {"independent": result.independent, "certificate": None}
    if result.certificate is not None:
        out["certificate"] = result.certificate.to_json()
    return out, not result.independent


def _cmd_extend(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    problem = _extension_problem(doc, space)
    if args.point is not None:
        if args.gamma is None:
            raise DocumentError("--gamma is required with --point")
        outcome = problem.extend_one(args.point, parse_rational(args.gamma, "--gamma"))
    else:
        outcome = problem.extend_all()
    return _outcome_doc(outcome), False


def _cmd_cyclic(args: argparse.Namespace) -> Result:
    template = parse_template_document(_read_input(args))
    cyclic = is_n_cyclic(template, args.n)
    cycle = None if cyclic else find_violating_cycle(template, args.n)
    return {
        "n": args.n,
        "cyclic": cyclic,
        "violating_cycle": list(cycle) if cycle is not None else None,
    }, not cyclic


def _cmd_witness_sopn(args: argparse.Namespace) -> Result:
    return template_document(sopn_witness(args.n)), False


def _cmd_witness_tp2(args: argparse.Namespace) -> Result:
    return space_document(tp2_array(args.rows, args.cols)), False


def _cmd_stationary(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    verdict = is_stationary(space, doc.roles.a_set, doc.roles.base)
    return {"stationary": verdict}, not verdict


def _cmd_unique_ext(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    verdict = unique_extension_to(
        space, doc.roles.a_set, doc.roles.base, doc.roles.b_set
    )
    return {"unique": verdict}, not verdict


def _cmd_oracle_divides(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    verdict = divides_oracle(space, args.a, args.b1, args.b2, doc.roles.base)
    return {"divides": verdict}, verdict


def _cmd_oracle_gamma(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    gammas = interval_oracle(space, args.b1, args.b2, doc.roles.base, args.q)
    return {
        "q": args.q,
        "valid_gammas": [format_rational(g) for g in gammas],
    }, False


def _cmd_oracle_extend(args: argparse.Namespace) -> Result:
    doc = _space_doc(args)
    space = _valid_total(doc)
    problem = _extension_problem(doc, space)
    gammas = extension_oracle(problem, args.point, args.q)
    return {
        "q": args.q,
        "valid_gammas": [format_rational(g) for g in gammas],
    }, False


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="read the input document from a file")
    common.add_argument("--output", help="write the output document to a file")
    common.add_argument(
        "--strict",
        action="store_true",
        help="exit 1 on a negative verdict instead of 0",
    )

    parser = argparse.ArgumentParser(
        prog="urysphere",
        description="Exact metric independence calculations over the Urysohn sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], Result], help_: str):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(handler=handler)
        return p

    add("check", _cmd_check, "validate the triangle inequality of a total space")
    add("complete", _cmd_complete, "complete a partial space along cheapest chains")
    add("consistent", _cmd_consistent, "test a partial space for consistency")

    for name, handler, help_ in (
        ("dmax", _cmd_dmax, "upper endpoint d_max(b1, b2 / C)"),
        ("dmin", _cmd_dmin, "lower endpoint d_min(b1, b2 / C)"),
        ("gamma", _cmd_gamma, "the interval of achievable cross-copy distances"),
    ):
        p = add(name, handler, help_)
        p.add_argument("--b1", required=True)
        p.add_argument("--b2", required=True)

    p = add("divides", _cmd_divides, "dividing verdict for a pair or full A/B/C roles")
    p.add_argument("--a")
    p.add_argument("--b1")
    p.add_argument("--b2")

    p = add("extend", _cmd_extend, "nonforking extension by the role point b_star")
    p.add_argument("--point", help="extend a single point instead of all of A")
    p.add_argument("--gamma", help="target distance for --point (rational string)")

    p = add("cyclic", _cmd_cyclic, "n-cyclicity of a sequence template")
    p.add_argument("--n", type=int, required=True)

    witness = sub.add_parser("witness", help="generate canonical witness configurations")
    wsub = witness.add_subparsers(dest="family", required=True)
    p = wsub.add_parser("sopn", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_witness_sopn)
    p = wsub.add_parser("tp2", parents=[common])
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.set_defaults(handler=_cmd_witness_tp2)

    add("stationary", _cmd_stationary, "stationarity of the tuple A over C")
    add("unique-ext", _cmd_unique_ext, "unique extension of the tuple A over C to B")

    oracle = sub.add_parser("oracle", help="brute-force replays of any verdict")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)
    p = osub.add_parser("divides", parents=[common])
    p.add_argument("--a", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.set_defaults(handler=_cmd_oracle_divides)
    p = osub.add_parser("gamma", parents=[common])
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=_cmd_oracle_gamma)
    p = osub.add_parser("extend", parents=[common])
    p.add_argument("--point", required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=_cmd_oracle_extend)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        output, negative = args.handler(args)
    except (DocumentError, UnknownLabelError) as exc:
        sys.stderr.write(dumps({"error": str(exc)}))
        return 2
    except DependenceError as exc:
        payload: dict[str, Any] = {"error": str(exc)}
        if exc.certificate is not None:
            payload["certificate"] = exc.certificate.to_json()
        sys.stderr.write(dumps(payload))
        return 2
    except (InvalidGammaError, ValueError) as exc:
        sys.stderr.write(dumps({"error": str(exc)}))
        return 2

    text = dumps(output)
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 1 if (negative and args.strict) else 0


if __name__ == "__main__":
    sys.exit(main())
