"""Constructing profiles with prescribed (and paradoxical) outcomes."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from posvote import exact
from posvote.birkhoff import expand_in_permutations
from posvote.exact import Matrix, Vector
from posvote.voting import (
    Permutation,
    Profile,
    Ranking,
    all_permutations,
    build_tally_matrix,
    check_permutation,
    face_of,
    inverse_permutation,
    is_weight_vector,
    project_sum_zero,
    tally,
)


class DependentWeightsError(ValueError):
    pass


@dataclass(frozen=True)
class TargetSpec:
    """``n-1`` weighting vectors and the results vector each should produce."""

    weights: tuple[Vector, ...]
    results: tuple[Vector, ...]

    def __post_init__(self):
        weights = tuple(exact.as_vector(w) for w in self.weights)
        results = tuple(exact.as_vector(r) for r in self.results)
        if not weights:
            raise ValueError("at least one weighting vector is required")
        n = len(weights[0])
        if len(weights) != n - 1 or len(results) != n - 1:
            raise ValueError(f"need exactly {n - 1} weighting vectors and {n - 1} results vectors for n={n}")
        if any(len(v) != n for v in weights + results):
            raise ValueError("all vectors must have the same dimension")
        for w in weights:
            if not is_weight_vector(w):
                raise ValueError(f"{[str(x) for x in w]} is not weakly decreasing with sum zero")
        for r in results:
            if sum(r) != 0:
                raise ValueError(f"results vector {[str(x) for x in r]} does not sum to zero")
        if exact.rank(weights) != n - 1:
            raise DependentWeightsError("weighting vectors are linearly dependent")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "results", results)

    @property
    def n(self) -> int:
        return len(self.weights[0])


def construct_q(spec: TargetSpec) -> Matrix:
    """The matrix ``R F^-1`` sending ``1`` to ``1`` and each ``w_k`` to ``r_k``."""
    n = spec.n
    ones = (Fraction(1),) * n
    f = exact.from_columns((ones,) + spec.weights)
    r = exact.from_columns((ones,) + spec.results)
    try:
        f_inv = exact.mat_inverse(f)
    except exact.SingularMatrixError as exc:
        raise DependentWeightsError("weighting vectors together with 1 are singular") from exc
    q = exact.mat_mul(r, f_inv)
    for w, res in zip(spec.weights, spec.results):
        assert exact.mat_vec(q, w) == res
    assert all(sum(row) == 1 for row in q) and all(sum(col) == 1 for col in zip(*q))
    return q


def kernel_profile(n: int, rng: random.Random) -> Profile:
    """A random nonzero profile whose tally matrix is zero."""
    perms = all_permutations(n)
    while True:
        x = Profile(n, tuple(Fraction(rng.randint(-5, 5)) for _ in perms))
        combo = expand_in_permutations(build_tally_matrix(x).m)
        y = Profile.from_ballots(n, combo.terms)
        diff = Profile(n, exact.vec_sub(x.counts, y.counts))
        if any(diff.counts):
            return diff


def synthesize_profile(spec: TargetSpec, seed: int | None = None) -> Profile:
    """A profile on which each ``w_k`` produces exactly ``r_k``.

    With ``seed`` set, a random element of the kernel of ``p -> Q_p`` is
    added so that different seeds exhibit different solutions.
    """
    q = construct_q(spec)
    profile = Profile.from_ballots(spec.n, expand_in_permutations(q).terms)
    if seed is not None:
        extra = kernel_profile(spec.n, random.Random(seed))
        profile = Profile(spec.n, exact.vec_add(profile.counts, extra.counts))
    qp = build_tally_matrix(profile)
    for w, r in zip(spec.weights, spec.results):
        assert tally(qp, w) == r
    return profile


def scale_to_dominate(w: Sequence, x: Sequence) -> Fraction:
    """``3M/m`` where ``m`` is the smallest gap between consecutive entries of
    ``w`` and ``M`` the largest ``|x_k|``; ``eta w + x`` keeps the strict
    order of ``w`` for every ``eta`` at least that large.

    Returns 0 for ``x = 0``; callers that need a strict vector must then
    pick a positive ``eta`` themselves.
    """
    w, x = exact.as_vector(w), exact.as_vector(x)
    if len(w) != len(x):
        raise ValueError("dimension mismatch")
    if not is_weight_vector(w, strict=True):
        raise ValueError("w must be strictly decreasing with sum zero")
    if sum(x) != 0:
        raise ValueError("x must sum to zero")
    gap = min(a - b for a, b in zip(w, w[1:]))
    big = max(abs(v) for v in x)
    eta = 3 * big / gap
    if big:
        for e in (eta, 2 * eta):
            assert is_weight_vector(exact.vec_add(exact.vec_scale(e, w), x), strict=True)
    return eta


def default_base_weights(n: int) -> tuple[Vector, ...]:
    """``v_k + borda`` for ``k = 1..n-1``: strict, sum zero, independent."""
    from posvote.reachability import weight_basis

    borda = project_sum_zero(range(n - 1, -1, -1))
    return tuple(exact.vec_add(v, borda) for v in weight_basis(n))


def _unit_drop(n: int, k: int) -> Vector:
    """``e_k - e_{k+1}`` (1-based ``k``)."""
    out = [Fraction(0)] * n
    out[k - 1] = Fraction(1)
    out[k] = Fraction(-1)
    return tuple(out)


def dominating_scale(base: Sequence[Vector]) -> Fraction:
    """Factor ``eta`` making ``eta w_1 - n C(n+1, 2) w_k`` strict for all ``k >= 2``."""
    n = len(base[0])
    c = n * math.comb(n + 1, 2)
    return max(scale_to_dominate(base[0], exact.vec_scale(-c, w)) for w in base[1:])


def ranking_coefficients(n: int, pi: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients ``alpha`` with ``w(pi) = sum alpha_k w_k``; the tally of
    that weight is ``sum alpha_k (e_k - e_{k+1})``.

    Requires ``pi(n) != 1``.
    """
    pi = check_permutation(pi, n)
    if pi[-1] == 1:
        raise ValueError("rankings that put candidate 1 last are not covered")
    b = pi[-1]
    if b == n:
        base = pi
    else:
        base = tuple(c for c in pi if c != n) + (n,)
    inv = inverse_permutation(base)
    # beta_{kn} = n - place of k; alpha_k accumulates beta_{in} for i <= k
    alpha, running = [], Fraction(0)
    for k in range(1, n):
        running += n - inv[k - 1]
        alpha.append(running)
    if b != n:
        gamma = math.comb(n, 2) + n - inverse_permutation(pi)[n - 1] + Fraction(1, 2)
        for k in range(b, n):
            alpha[k - 1] -= gamma
    return tuple(alpha)


@dataclass(frozen=True)
class SaariCertificate:
    """A profile together with one weighting vector for each strict ranking
    ``pi`` with ``pi(n) != 1`` that produces exactly ``pi``."""

    profile: Profile
    base_weights: tuple[Vector, ...]
    weight_of: dict[Permutation, Vector]

    def verify(self) -> bool:
        q = build_tally_matrix(self.profile)
        return all(
            is_weight_vector(w, strict=True) and face_of(tally(q, w)) == Ranking.strict(pi)
            for pi, w in self.weight_of.items()
        )


def weight_for_ranking(base_weights: Sequence[Vector], pi: Sequence[int]) -> Vector:
    """A strict weighting vector realizing ``pi`` on the certificate profile.

    ``base_weights`` must already be the scaled family used to build it.
    """
    n = len(base_weights[0])
    alpha = ranking_coefficients(n, pi)
    w = exact.linear_combination(alpha, list(base_weights))
    if not is_weight_vector(w, strict=True):
        raise RuntimeError("constructed weight is not strictly decreasing; base weights were not scaled")
    return w


def saari_profile(n: int, base_weights: Sequence[Sequence] | None = None) -> SaariCertificate:
    """A profile from which ``n! - (n-1)!`` strict rankings are reachable."""
    if base_weights is None:
        base = default_base_weights(n)
    else:
        base = tuple(exact.as_vector(w) for w in base_weights)
    if len(base) != n - 1 or any(len(w) != n for w in base):
        raise ValueError(f"need {n - 1} base weights of length {n}")
    if not all(is_weight_vector(w, strict=True) for w in base):
        raise ValueError("base weights must be strictly decreasing with sum zero")
    if exact.rank(base) != n - 1:
        raise DependentWeightsError("base weights are linearly dependent")
    # eta is positive here because every w_k (k >= 2) is nonzero
    eta = dominating_scale(base)
    base = (exact.vec_scale(eta, base[0]),) + base[1:]
    spec = TargetSpec(base, tuple(_unit_drop(n, k) for k in range(1, n)))
    profile = synthesize_profile(spec)
    weight_of = {pi: weight_for_ranking(base, pi) for pi in all_permutations(n) if pi[-1] != 1}
    cert = SaariCertificate(profile, base, weight_of)
    assert cert.verify()
    return cert


def prefix_sums(values: Sequence[Fraction]) -> list[Fraction]:
    out, acc = [], Fraction(0)
    for v in values:
        acc += v
        out.append(acc)
    return out


def rotate(seq: Sequence, m: int) -> tuple:
    return tuple(seq[m:]) + tuple(seq[:m])


def nonpositive_prefix_shift(h: Sequence, pi: Sequence[int] | None = None) -> int:
    """Cyclic shift ``m`` of the ordering ``pi`` after which every proper
    prefix sum of ``h`` is nonpositive (smallest such maximizer)."""
    h = exact.as_vector(h)
    if sum(h) != 0:
        raise ValueError("h must sum to zero")
    n = len(h)
    pi = tuple(range(1, n + 1)) if pi is None else check_permutation(pi, n)
    ordered = [h[c - 1] for c in pi]
    sums = [Fraction(0)] + prefix_sums(ordered)[:-1]
    best = max(sums)
    m = sums.index(best)
    assert all(s <= 0 for s in prefix_sums(rotate(ordered, m))[:-1])
    return m
