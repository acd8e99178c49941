"""Command-line interface.

Exit codes: 0 success, 1 domain error (singular weights, unreachable
ranking, ...), 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from posvote import exact, serialization as ser
from posvote.birkhoff import (
    NotDoublyStochasticError,
    UnequalSumsError,
    bvn_decompose,
    expand_in_permutations,
    is_doubly_stochastic,
)
from posvote.paradox import DependentWeightsError, construct_q, saari_profile, synthesize_profile
from posvote.reachability import (
    enumerate_reachable,
    is_face_reachable,
    prefix_sums,
    random_explore,
    weight_from_coefficients,
)
from posvote.voting import Ranking, build_tally_matrix, face_of, tally


class DomainError(Exception):
    pass


class InputError(Exception):
    pass


def _load(path, reader):
    try:
        return reader(ser.read_json(path))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_tally(args, fmt):
    profile = _load(args.profile, ser.profile_from_dict)
    weights = _load(args.weights, ser.weights_from_dict)
    q = build_tally_matrix(profile)
    try:
        r = tally(q, weights)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    return {"results": ser.vector_out(r, fmt), "ranking": ser.ranking_out(face_of(r))}


def cmd_synthesize(args, fmt):
    spec = _load(args.spec, ser.target_spec_from_dict)
    try:
        q = construct_q(spec)
        profile = synthesize_profile(spec, seed=args.seed)
    except (DependentWeightsError, exact.SingularMatrixError) as exc:
        raise DomainError(str(exc)) from exc
    qp = build_tally_matrix(profile)
    checks = []
    for w, r in zip(spec.weights, spec.results):
        got = tally(qp, w)
        checks.append(
            {"weights": ser.vector_out(w, fmt), "expected": ser.vector_out(r, fmt),
             "actual": ser.vector_out(got, fmt), "ok": got == r}
        )
    return {"profile": ser.profile_to_dict(profile, fmt), "Q": ser.matrix_out(q, fmt), "verification": checks}


def cmd_saari(args, fmt):
    if not 3 <= args.n <= 5:
        raise DomainError("saari certificates are materialized for 3 <= n <= 5")
    return ser.certificate_to_dict(saari_profile(args.n), fmt)


def cmd_decompose(args, fmt):
    m = _load(args.matrix, ser.matrix_from_dict)
    try:
        combo = bvn_decompose(m) if is_doubly_stochastic(m) else expand_in_permutations(m)
    except (UnequalSumsError, NotDoublyStochasticError, ValueError) as exc:
        raise DomainError(str(exc)) from exc
    return ser.combination_to_list(combo, fmt)


def cmd_reachable(args, fmt):
    q = build_tally_matrix(_load(args.profile, ser.profile_from_dict))
    try:
        report = enumerate_reachable(q, strict_only=not args.faces)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    return ser.report_to_dict(report, fmt)


def cmd_pick_weights(args, fmt):
    q = build_tally_matrix(_load(args.profile, ser.profile_from_dict))
    try:
        target = Ranking.parse(args.ranking)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if target.n != q.n:
        raise InputError(f"ranking has {target.n} candidates, profile has {q.n}")
    res = is_face_reachable(prefix_sums(q), target)
    if not res.reachable:
        raise DomainError("unreachable")
    w = weight_from_coefficients(q.n, res.b)
    r = tally(q, w)
    return {"ranking": ser.ranking_out(target), "b": ser.vector_out(res.b, fmt),
            "weights": ser.vector_out(w, fmt), "results": ser.vector_out(r, fmt)}


def cmd_explore(args, fmt):
    q = build_tally_matrix(_load(args.profile, ser.profile_from_dict))
    if args.trials < 1:
        raise InputError("--trials must be positive")
    found = sorted(random_explore(q, args.trials, args.seed))
    return {"trials": args.trials, "seed": args.seed, "rankings": [ser.ranking_out(r) for r in found]}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posvote", description="Exact positional voting toolkit.")
    parser.add_argument("--decimal", type=int, metavar="K", help="print approximate K-digit decimals instead of exact rationals")
    parser.add_argument("-o", "--output", help="write output to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tally", help="score a profile with a weighting vector")
    p.add_argument("-p", "--profile", required=True)
    p.add_argument("-w", "--weights", required=True)
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("synthesize", help="build a profile realizing prescribed results")
    p.add_argument("-s", "--spec", required=True)
    p.add_argument("--seed", type=int, help="add a random kernel element to exhibit another solution")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("saari", help="profile reaching n! - (n-1)! strict rankings")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_saari)

    p = sub.add_parser("decompose", help="write a matrix with equal line sums as a permutation combination")
    p.add_argument("-m", "--matrix", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reachable", help="every ranking reachable from a profile")
    p.add_argument("-p", "--profile", required=True)
    p.add_argument("--faces", action="store_true", help="also test rankings with ties (n <= 5)")
    p.set_defaults(func=cmd_reachable)

    p = sub.add_parser("pick-weights", help="weights producing a given ranking")
    p.add_argument("-p", "--profile", required=True)
    p.add_argument("-r", "--ranking", required=True, help='e.g. "2,4,3,1" or "2;4,3;1" for ties')
    p.set_defaults(func=cmd_pick_weights)

    p = sub.add_parser("explore", help="sample random weights and record the rankings hit")
    p.add_argument("-p", "--profile", required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_explore)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = ser.exact_formatter if args.decimal is None else ser.decimal_formatter(args.decimal)
    try:
        result = args.func(args, fmt)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        if str(exc) == "unreachable":
            print("unreachable")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = ser.dumps(result) + "\n"
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())
