"""Command-line front end.

Every command emits exactly one JSON document (compact by default,
indented with --pretty) so outputs can be piped between commands; in
particular `exchange` writes a transcript that `attack` consumes.

Exit codes: 0 success; 1 an internal check failed (relation check,
key disagreement, recovery mismatch); 2 bad input; 3 a size guard or
bounded search refused the instance.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from .attacks import cdh_note
from .errors import (
    InternalCheckError,
    NilkexError,
    ParameterError,
    ProtocolError,
    SearchExhaustedError,
    SizeGuardError,
)
from .field import FieldElement, GroupParams, param_search
from .oracle import (
    POLICIES,
    SEMIGROUP_ORDER_GUARD,
    PresentationParams,
    check_class2_identities,
    exponent_semigroup_brute,
    validate_exponent,
)
from .protocol import Transcript, default_base, keygen, run_tripartite
from .representation import build_sigma, tensor_analysis, verify_relations

log = logging.getLogger(__name__)


def _emit(obj: dict, args) -> None:
    if args.pretty:
        text = json.dumps(obj, indent=2)
    else:
        text = json.dumps(obj, separators=(",", ":"))
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _alphas_arg(text: str):
    try:
        parts = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}") from exc
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("need exactly three exponents, e.g. 2,2,2")
    return parts


def cmd_params(args) -> int:
    params = param_search(args.p, args.search_bound)
    _emit(params.to_json(), args)
    return 0


def _build_params(args) -> GroupParams:
    params = param_search(args.p, args.search_bound)
    if getattr(args, "force_zeta", None) is not None:
        params = GroupParams(
            p=params.p,
            spec=params.spec,
            i=params.i,
            zeta_p=FieldElement(params.spec, args.force_zeta),
        )
        log.warning("zeta_p forced to %s; relation checks are expected to fail",
                    args.force_zeta)
    return params


def cmd_repr(args) -> int:
    params = _build_params(args)
    rep = build_sigma(params)
    relations = verify_relations(rep)
    tensor = tensor_analysis(rep)
    _emit(
        {
            "representation": rep.to_json(),
            "relation_report": relations.to_json(),
            "tensor_report": tensor.to_json(),
        },
        args,
    )
    if not relations.all_pass:
        print("relation checks failed", file=sys.stderr)
        return 1
    return 0


def cmd_exchange(args) -> int:
    params = param_search(args.p, args.search_bound)
    rep = build_sigma(params)
    base = default_base(rep)
    p = args.p

    shape = None
    if args.policy == "strict" or p**3 <= SEMIGROUP_ORDER_GUARD:
        try:
            shape = exponent_semigroup_brute(PresentationParams(p, 3))
        except SizeGuardError:
            if args.policy == "strict":
                raise
            shape = None

    if args.alphas is not None:
        for alpha in args.alphas:
            accepted, reason = validate_exponent(alpha, p, shape, args.policy)
            if not accepted:
                raise ParameterError(reason)
        alphas = args.alphas
    else:
        rng = random.Random(args.seed)
        stream = (rng.randrange(2, p * p) for _ in range(10_000))
        alphas = tuple(
            keygen(params, shape, args.policy, stream, owner=owner).alpha
            for owner in "ABC"
        )
    transcript = run_tripartite(params, base, alphas)
    _emit(transcript.to_json(), args)
    return 0


def cmd_attack(args) -> int:
    try:
        raw = Path(args.transcript).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read transcript: {exc}", file=sys.stderr)
        return 2
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        print(f"transcript is not valid JSON: {exc}", file=sys.stderr)
        return 2
    transcript = Transcript.from_json(obj)
    report = cdh_note(transcript, solver=args.method)
    _emit(report.to_json(), args)
    if not report.matches:
        print("recovered key does not match the transcript", file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args) -> int:
    pp = PresentationParams(args.p, args.n)
    exponent_range = args.exponent_range or pp.exponent
    identity = check_class2_identities(pp, exponent_range, sample_seed=args.sample_seed)
    shape = exponent_semigroup_brute(pp)
    _emit(
        {"semigroup_shape": shape.to_json(), "identity_report": identity.to_json()},
        args,
    )
    return 0 if identity.passed else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilkex",
        description="Tripartite key exchange over class-2 matrix groups: "
        "parameters, representations, protocol runs, and attacks.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for info, -vv for debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="indent the JSON")

    with_p = argparse.ArgumentParser(add_help=False)
    with_p.add_argument("--p", type=int, required=True, help="odd prime p")
    with_p.add_argument("--search-bound", type=int, default=1_000_000,
                        help="largest base-field prime to consider")

    sp = sub.add_parser("params", parents=[common, with_p],
                        help="search representation parameters for p")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("repr", parents=[common, with_p],
                        help="build the representation and verify its relations")
    sp.add_argument("--force-zeta", type=int, default=None,
                    help="override zeta_p with this residue (corruption test)")
    sp.set_defaults(func=cmd_repr)

    sp = sub.add_parser("exchange", parents=[common, with_p],
                        help="simulate a three-party exchange")
    source = sp.add_mutually_exclusive_group(required=True)
    source.add_argument("--alphas", type=_alphas_arg,
                        help="explicit exponents, e.g. 2,2,2")
    source.add_argument("--seed", type=int, help="derive exponents from this seed")
    sp.add_argument("--policy", choices=POLICIES, default="coprime-only")
    sp.set_defaults(func=cmd_exchange)

    sp = sub.add_parser("attack", parents=[common],
                        help="recover the shared key from a transcript file")
    sp.add_argument("transcript", help="path to a transcript JSON file")
    sp.add_argument("--method", choices=("bsgs", "exhaustive"), default="bsgs")
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("analyze", parents=[common],
                        help="class-2 identity check and exponent semigroup")
    sp.add_argument("--p", type=int, required=True, help="odd prime p")
    sp.add_argument("--n", type=int, default=3,
                    help="presentation index (group order p**n)")
    sp.add_argument("--exponent-range", type=int, default=None,
                    help="check exponents below this (default: exp(G))")
    sp.add_argument("--sample-seed", type=int, default=None,
                    help="sample identities with this seed when too large to enumerate")
    sp.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SizeGuardError, SearchExhaustedError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (ProtocolError, InternalCheckError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    except NilkexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
