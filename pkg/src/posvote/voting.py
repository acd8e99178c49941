"""Profiles, tally matrices and the rankings they induce.

Candidates are the integers ``1..n``. A permutation is stored in one-line
notation as a tuple ``(s1, ..., sn)`` where ``sk`` is the candidate placed
``k``-th. Profiles are dense vectors of rational ballot counts indexed by the
lexicographic rank of those tuples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from posvote import exact
from posvote.exact import Matrix, Vector

MIN_CANDIDATES = 3
MAX_CANDIDATES = 8

Permutation = tuple[int, ...]


# ---------------------------------------------------------------------------
# Permutations


def check_permutation(sigma: Sequence[int], n: int | None = None) -> Permutation:
    sigma = tuple(int(s) for s in sigma)
    if n is not None and len(sigma) != n:
        raise ValueError(f"expected a permutation of 1..{n}, got {sigma}")
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    return sigma


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All permutations of ``1..n`` in lexicographic order."""
    return tuple(itertools.permutations(range(1, n + 1)))


def perm_rank(sigma: Sequence[int]) -> int:
    """1-based lexicographic rank of ``sigma`` among all permutations."""
    sigma = check_permutation(sigma)
    n = len(sigma)
    remaining = list(range(1, n + 1))
    rank = 0
    for k, s in enumerate(sigma):
        i = remaining.index(s)
        rank += i * math.factorial(n - 1 - k)
        remaining.pop(i)
    return rank + 1


def perm_unrank(n: int, ell: int) -> Permutation:
    """Inverse of :func:`perm_rank`."""
    if n < 1 or not 1 <= ell <= math.factorial(n):
        raise ValueError(f"rank {ell} out of range for n={n}")
    remaining = list(range(1, n + 1))
    ell -= 1
    out = []
    for k in range(n - 1, -1, -1):
        i, ell = divmod(ell, math.factorial(k))
        out.append(remaining.pop(i))
    return tuple(out)


def inverse_permutation(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for k, s in enumerate(sigma, start=1):
        inv[s - 1] = k
    return tuple(inv)


def permutation_matrix(sigma: Sequence[int]) -> Matrix:
    """``R[i][j] = 1`` iff ``sigma(j) = i`` (1-based)."""
    sigma = check_permutation(sigma)
    n = len(sigma)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for j, s in enumerate(sigma):
        rows[s - 1][j] = Fraction(1)
    return tuple(tuple(r) for r in rows)


def permute_weight(sigma: Sequence[int], w: Sequence) -> Vector:
    """Points each candidate receives from one ballot ``sigma`` under ``w``."""
    sigma = check_permutation(sigma)
    w = exact.as_vector(w)
    if len(w) != len(sigma):
        raise ValueError("dimension mismatch between permutation and weights")
    out = [Fraction(0)] * len(w)
    for k, s in enumerate(sigma):
        out[s - 1] = w[k]
    return tuple(out)


# ---------------------------------------------------------------------------
# Profiles and tallies


def _check_n(n: int) -> int:
    if not MIN_CANDIDATES <= n <= MAX_CANDIDATES:
        raise ValueError(f"number of candidates must be in [{MIN_CANDIDATES}, {MAX_CANDIDATES}], got {n}")
    return n


@dataclass(frozen=True)
class Profile:
    """Rational ballot counts for every ranking of ``n`` candidates.

    Counts may be negative or fractional.
    """

    n: int
    counts: Vector

    def __post_init__(self):
        _check_n(self.n)
        counts = exact.as_vector(self.counts)
        if len(counts) != math.factorial(self.n):
            raise ValueError(f"profile for n={self.n} needs {math.factorial(self.n)} counts, got {len(counts)}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zeros(cls, n: int) -> "Profile":
        return cls(n, (Fraction(0),) * math.factorial(_check_n(n)))

    @classmethod
    def from_ballots(cls, n: int, ballots: Mapping | Iterable) -> "Profile":
        """Build a dense profile from ``{ranking: count}`` or ``(ranking, count)`` pairs.

        Repeated rankings accumulate.
        """
        counts = [Fraction(0)] * math.factorial(_check_n(n))
        items = ballots.items() if isinstance(ballots, Mapping) else ballots
        for ranking, count in items:
            counts[perm_rank(check_permutation(ranking, n)) - 1] += exact.to_rational(count)
        return cls(n, tuple(counts))

    def ballots(self) -> list[tuple[Permutation, Fraction]]:
        """Nonzero entries as ``(ranking, count)`` in lexicographic order."""
        perms = all_permutations(self.n)
        return [(perms[i], c) for i, c in enumerate(self.counts) if c]

    @property
    def total(self) -> Fraction:
        return sum(self.counts, Fraction(0))


@dataclass(frozen=True)
class TallyMatrix:
    """``m[i][j]`` is the (signed, rational) number of voters ranking
    candidate ``i+1`` in place ``j+1``; all rows and columns sum to ``total``."""

    n: int
    m: Matrix
    total: Fraction

    def __post_init__(self):
        m = exact.as_matrix(self.m)
        if exact.shape(m) != (self.n, self.n):
            raise ValueError(f"tally matrix must be {self.n}x{self.n}")
        total = exact.to_rational(self.total)
        if any(sum(row) != total for row in m) or any(sum(col) != total for col in zip(*m)):
            raise ValueError("tally matrix rows and columns must all sum to the total")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "total", total)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> "TallyMatrix":
        m = exact.as_matrix(m)
        return cls(len(m), m, sum(m[0], Fraction(0)))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.m)


def build_tally_matrix(p: Profile) -> TallyMatrix:
    """``Q_p = sum_l p_l R_l``."""
    n = p.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for sigma, count in p.ballots():
        for j, s in enumerate(sigma):
            rows[s - 1][j] += count
    return TallyMatrix(n, tuple(tuple(r) for r in rows), p.total)


def tally(q: TallyMatrix, w: Sequence) -> Vector:
    """Results vector ``Q_p w``: total points per candidate."""
    w = exact.as_vector(w)
    if len(w) != q.n:
        raise ValueError(f"weights have {len(w)} entries, expected {q.n}")
    return exact.mat_vec(q.m, w)


def tally_by_ballots(p: Profile, w: Sequence) -> Vector:
    """Results vector summed ballot by ballot (the ``T_w p`` route)."""
    out = (Fraction(0),) * p.n
    for sigma, count in p.ballots():
        out = exact.vec_add(out, exact.vec_scale(count, permute_weight(sigma, w)))
    return out


# ---------------------------------------------------------------------------
# Rankings (faces of the braid arrangement)


@dataclass(frozen=True, order=True)
class Ranking:
    """Ordered set partition of the candidates; ``blocks[k]`` is tied for
    place ``k+1``. Candidates inside a block are sorted ascending."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(c) for c in b)) for b in self.blocks)
        if not blocks or any(not b for b in blocks):
            raise ValueError("a ranking needs nonempty blocks")
        flat = sorted(c for b in blocks for c in b)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{len(flat)}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def strict(cls, sigma: Sequence[int]) -> "Ranking":
        return cls(tuple((c,) for c in check_permutation(sigma)))

    @classmethod
    def parse(cls, text: str) -> "Ranking":
        """Read ``"2,4,3,1"`` (strict) or ``"2;4,3;1"`` (blocks separated by ';')."""
        text = text.strip()
        try:
            if ";" in text:
                return cls(tuple(tuple(int(c) for c in part.split(",")) for part in text.split(";")))
            return cls.strict([int(c) for c in text.split(",")])
        except ValueError as exc:
            raise ValueError(f"malformed ranking {text!r}: {exc}") from exc

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def is_strict(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def as_permutation(self) -> Permutation:
        if not self.is_strict:
            raise ValueError("ranking has ties")
        return tuple(b[0] for b in self.blocks)

    def to_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        if self.is_strict:
            return ",".join(str(c) for c in self.as_permutation())
        return ";".join(",".join(str(c) for c in b) for b in self.blocks)


def face_of(r: Sequence) -> Ranking:
    """Group candidates by exactly equal score, best score first."""
    r = exact.as_vector(r)
    levels = sorted(set(r), reverse=True)
    return Ranking(tuple(tuple(i + 1 for i, x in enumerate(r) if x == level) for level in levels))


def ordered_set_partitions(n: int) -> Iterable[Ranking]:
    """Every ordered set partition of ``1..n`` (Fubini-many of them)."""

    def rec(items):
        if not items:
            yield ()
            return
        for size in range(1, len(items) + 1):
            for first in itertools.combinations(items, size):
                rest = tuple(c for c in items if c not in first)
                for tail in rec(rest):
                    yield (first,) + tail

    for blocks in rec(tuple(range(1, n + 1))):
        yield Ranking(blocks)


# ---------------------------------------------------------------------------
# Weighting vectors


def is_weight_vector(w: Sequence, strict: bool = False) -> bool:
    """Membership in the closed cone of weakly decreasing sum-zero vectors,
    or in its interior when ``strict``."""
    w = exact.as_vector(w)
    if sum(w) != 0:
        return False
    if strict:
        return all(a > b for a, b in zip(w, w[1:]))
    return all(a >= b for a, b in zip(w, w[1:]))


def project_sum_zero(y: Sequence) -> Vector:
    """Subtract the mean from a weakly decreasing vector."""
    y = exact.as_vector(y)
    if any(a < b for a, b in zip(y, y[1:])):
        raise ValueError(f"weights must be weakly decreasing, got {[str(v) for v in y]}")
    mean = sum(y, Fraction(0)) / len(y)
    return tuple(v - mean for v in y)


# ---------------------------------------------------------------------------
# Face-preserving normalizations


def to_nonneg_integer_profile(p: Profile) -> Profile:
    """Shift by the minimum count and clear denominators.

    The tally of every sum-zero weighting vector only gets multiplied by a
    positive constant, so its face is unchanged.
    """
    low = min(p.counts)
    d = math.lcm(*(c.denominator for c in p.counts))
    return Profile(p.n, tuple(d * (c - low) for c in p.counts))


def stochastic_tally(q: TallyMatrix) -> Matrix:
    """``c (Q - mJ)`` with ``m`` the minimum entry and ``c = 1/(N - mn)``;
    ``(1/n) J`` when all entries of ``Q`` coincide."""
    n = q.n
    low = min(min(row) for row in q.m)
    if all(x == low for row in q.m for x in row):
        return tuple((Fraction(1, n),) * n for _ in range(n))
    c = 1 / (q.total - low * n)
    return tuple(tuple(c * (x - low) for x in row) for row in q.m)


def to_stochastic_profile(p: Profile) -> Profile:
    """A nonnegative profile summing to 1 that induces the same faces as ``p``."""
    from posvote.birkhoff import bvn_decompose

    target = stochastic_tally(build_tally_matrix(p))
    combo = bvn_decompose(target)
    return Profile.from_ballots(p.n, combo.terms)
