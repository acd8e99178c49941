"""Which rankings can a fixed profile produce, and with which weights?

Every nonnegative combination of the cone generators ``v_k`` is a legal
weighting vector, and (up to adding a multiple of ``1``) the tally of
``v_{n-k}`` is the sum ``t_k`` of the first ``k`` columns of the tally
matrix. A ranking is therefore reachable exactly when its face meets the
convex hull of ``t_1, ..., t_{n-1}``, which is decided by a small exact LP.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from posvote import exact
from posvote.exact import EQ, GE, LE, LpProblem, Vector, simplex_max
from posvote.voting import (
    Ranking,
    TallyMatrix,
    all_permutations,
    face_of,
    ordered_set_partitions,
    tally,
)

MAX_FACE_ENUMERATION = 5
SAMPLE_HIGH = 10**6


def weight_basis(n: int) -> list[Vector]:
    """``v_k = (k/n) 1 - (e_{n-k+1} + ... + e_n)`` for ``k = 1..n-1``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = []
    for k in range(1, n):
        out.append(tuple(Fraction(k, n) - (1 if i >= n - k else 0) for i in range(n)))
    return out


def weight_coordinates(w: Sequence) -> Vector:
    """Cone coordinates ``a_k = w_{n-k} - w_{n-k+1}`` of a weighting vector."""
    w = exact.as_vector(w)
    n = len(w)
    return tuple(w[n - k - 1] - w[n - k] for k in range(1, n))


def prefix_sums(q: TallyMatrix) -> list[Vector]:
    """``t_k``: sum of the first ``k`` columns of the tally matrix."""
    out, acc = [], (Fraction(0),) * q.n
    for j in range(q.n - 1):
        acc = exact.vec_add(acc, q.column(j))
        out.append(acc)
    return out


def weight_from_coefficients(n: int, b: Sequence) -> Vector:
    """``w = sum_k b_k v_{n-k}``; a weighting vector whose tally lies in the
    same face as ``sum_k b_k t_k``."""
    b = exact.as_vector(b)
    if len(b) != n - 1:
        raise ValueError(f"expected {n - 1} coefficients, got {len(b)}")
    if any(x < 0 for x in b) or not any(b):
        raise ValueError("coefficients must be nonnegative and not all zero")
    basis = weight_basis(n)
    return exact.linear_combination(b, [basis[n - k - 1] for k in range(1, n)])


def combine(t: Sequence[Vector], b: Sequence) -> Vector:
    return exact.linear_combination(list(b), list(t))


@dataclass(frozen=True)
class FaceTest:
    reachable: bool
    b: Vector | None = None
    margin: Fraction | None = None


def _face_lp(t: Sequence[Vector], target: Ranking) -> LpProblem:
    """Variables ``(b_1, ..., b_{n-1}, eps)``; maximize ``eps``."""
    k = len(t)
    n = len(t[0])
    # row i of T as a function of b
    coef = [[t[j][i] for j in range(k)] for i in range(n)]

    def diff(i: int, j: int) -> list[Fraction]:
        return [a - c for a, c in zip(coef[i - 1], coef[j - 1])]

    a, rel, rhs = [], [], []
    a.append([Fraction(1)] * k + [Fraction(0)])
    rel.append(EQ)
    rhs.append(Fraction(1))
    for block in target.blocks:
        for x, y in zip(block, block[1:]):
            a.append(diff(x, y) + [Fraction(0)])
            rel.append(EQ)
            rhs.append(Fraction(0))
    for upper, lower in zip(target.blocks, target.blocks[1:]):
        # equalities inside blocks make one representative pair enough
        a.append(diff(upper[0], lower[0]) + [Fraction(-1)])
        rel.append(GE)
        rhs.append(Fraction(0))
    # cap keeps the LP bounded when the target is the single all-tie block
    a.append([Fraction(0)] * k + [Fraction(1)])
    rel.append(LE)
    rhs.append(Fraction(1))
    objective = [Fraction(0)] * k + [Fraction(1)]
    return LpProblem(tuple(objective), tuple(map(tuple, a)), tuple(rel), tuple(rhs), (False,) * k + (True,))


def is_face_reachable(t: Sequence[Vector], target: Ranking) -> FaceTest:
    """Decide whether some convex combination of ``t`` lands in ``target``'s face."""
    t = [exact.as_vector(v) for v in t]
    if not t:
        raise ValueError("need at least one t vector")
    if target.n != len(t[0]):
        raise ValueError(f"ranking is on {target.n} candidates, t vectors have {len(t[0])}")
    problem = _face_lp(t, target)
    result = simplex_max(problem)
    if result.status != "optimal" or result.value <= 0:
        return FaceTest(False, None, result.value)
    b = result.x[:-1]
    assert face_of(combine(t, b)) == target
    return FaceTest(True, b, result.value)


@dataclass(frozen=True)
class Witness:
    ranking: Ranking
    b: Vector
    weights: Vector


@dataclass(frozen=True)
class ReachabilityReport:
    n: int
    total: Fraction
    t_vectors: tuple[Vector, ...]
    reachable: tuple[Witness, ...]
    unreachable_count: int
    strict_only: bool = True
    notes: tuple[str, ...] = field(default=())

    @property
    def strict_rankings(self) -> list[Ranking]:
        return [w.ranking for w in self.reachable if w.ranking.is_strict]

    @property
    def bound(self) -> int:
        return math.factorial(self.n) - math.factorial(self.n - 1)

    @property
    def bound_attained(self) -> bool:
        return len(self.strict_rankings) == self.bound


def _candidates(n: int, strict_only: bool) -> Iterable[Ranking]:
    if strict_only:
        return (Ranking.strict(p) for p in all_permutations(n))
    if n > MAX_FACE_ENUMERATION:
        raise ValueError(f"face enumeration is limited to n <= {MAX_FACE_ENUMERATION}")
    return ordered_set_partitions(n)


def enumerate_reachable(q: TallyMatrix, strict_only: bool = True) -> ReachabilityReport:
    """Test every strict ranking (or every face) against the hull of the ``t_k``."""
    t = prefix_sums(q)
    reachable, missing = [], 0
    for ranking in _candidates(q.n, strict_only):
        res = is_face_reachable(t, ranking)
        if not res.reachable:
            missing += 1
            continue
        w = weight_from_coefficients(q.n, res.b)
        assert face_of(tally(q, w)) == ranking
        reachable.append(Witness(ranking, res.b, w))
    notes = ()
    if q.total == 0:
        notes = ("total vote count is zero; the prefix-sum reduction is degenerate here",)
    report = ReachabilityReport(q.n, q.total, tuple(t), tuple(reachable), missing, strict_only, notes)
    if len(report.strict_rankings) > report.bound:
        raise RuntimeError("more strict rankings than n! - (n-1)! are reachable")
    return report


def random_probability_vector(k: int, rng: random.Random) -> Vector:
    while True:
        draws = [rng.randint(0, SAMPLE_HIGH) for _ in range(k)]
        total = sum(draws)
        if total:
            return tuple(Fraction(d, total) for d in draws)


def random_explore(q: TallyMatrix, trials: int, seed: int) -> set[Ranking]:
    """Rankings hit by random convex combinations of the ``t_k``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    t = prefix_sums(q)
    found = set()
    for _ in range(trials):
        b = random_probability_vector(len(t), rng)
        # faces are scale invariant: combine with the common-denominator integers
        d = math.lcm(*(x.denominator for x in b))
        found.add(face_of(combine(t, [x * d for x in b])))
    return found
