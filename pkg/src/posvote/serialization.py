"""JSON file formats. Rationals are written as ``"num/den"`` or ``"5"``."""

from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from posvote import exact
from posvote.birkhoff import PermCombination
from posvote.paradox import SaariCertificate, TargetSpec
from posvote.reachability import ReachabilityReport
from posvote.voting import Profile, Ranking

Formatter = Callable[[Fraction], str]


def exact_formatter(x: Fraction) -> str:
    return str(x)


def decimal_formatter(digits: int) -> Formatter:
    """Approximate decimal rendering, prefixed with ``~`` to mark it inexact."""

    def fmt(x: Fraction) -> str:
        with localcontext() as ctx:
            ctx.prec = 60
            value = Decimal(x.numerator) / Decimal(x.denominator)
            return "~" + format(value.quantize(Decimal(1).scaleb(-digits)), "f")

    return fmt


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def vector_out(v: Sequence[Fraction], fmt: Formatter = exact_formatter) -> list[str]:
    return [fmt(x) for x in v]


def matrix_out(m, fmt: Formatter = exact_formatter) -> list[list[str]]:
    return [vector_out(row, fmt) for row in m]


def profile_from_dict(data: dict) -> Profile:
    try:
        n = int(data["n"])
        ballots = [(tuple(b["ranking"]), exact.to_rational(b["count"])) for b in data["ballots"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed profile: {exc}") from exc
    return Profile.from_ballots(n, ballots)


def profile_to_dict(p: Profile, fmt: Formatter = exact_formatter) -> dict:
    return {
        "n": p.n,
        "ballots": [{"ranking": list(sigma), "count": fmt(c)} for sigma, c in p.ballots()],
    }


def weights_from_dict(data: dict) -> tuple[Fraction, ...]:
    try:
        return exact.as_vector(data["weights"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed weights file: {exc}") from exc


def matrix_from_dict(data: dict):
    try:
        return exact.as_matrix(data["matrix"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix file: {exc}") from exc


def target_spec_from_dict(data: dict) -> TargetSpec:
    try:
        return TargetSpec(tuple(data["weights"]), tuple(data["results"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed target file: {exc}") from exc


def ranking_out(r: Ranking) -> list[list[int]]:
    return r.to_lists()


def combination_to_list(c: PermCombination, fmt: Formatter = exact_formatter) -> list[dict]:
    return [{"perm": list(perm), "coeff": fmt(coeff)} for perm, coeff in c.terms]


def combination_from_list(data: list) -> PermCombination:
    return PermCombination.merged((tuple(t["perm"]), t["coeff"]) for t in data)


def report_to_dict(report: ReachabilityReport, fmt: Formatter = exact_formatter) -> dict:
    out = {
        "t": [vector_out(t, fmt) for t in report.t_vectors],
        "reachable": [
            {"ranking": ranking_out(w.ranking), "b": vector_out(w.b, fmt), "weights": vector_out(w.weights, fmt)}
            for w in report.reachable
        ],
        "unreachable_count": report.unreachable_count,
        "bound": {"max": report.bound, "attained": report.bound_attained},
    }
    if report.notes:
        out["notes"] = list(report.notes)
    return out


def certificate_to_dict(cert: SaariCertificate, fmt: Formatter = exact_formatter) -> dict:
    return {
        "profile": profile_to_dict(cert.profile, fmt),
        "entries": [
            {"ranking": [[c] for c in pi], "weights": vector_out(w, fmt)}
            for pi, w in sorted(cert.weight_of.items())
        ],
    }
