"""Birkhoff-von Neumann decompositions and permutation-matrix expansions.

A square matrix whose row and column sums all equal ``t`` is a rational
linear combination of permutation matrices. When it is nonnegative with
``t = 1`` (doubly stochastic) the combination can be chosen convex.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from posvote import exact
from posvote.exact import Matrix
from posvote.voting import Permutation, check_permutation, permutation_matrix


class NotDoublyStochasticError(ValueError):
    pass


class UnequalSumsError(ValueError):
    pass


@dataclass(frozen=True)
class PermCombination:
    """``sum(coeff * R_perm)`` over distinct permutations."""

    terms: tuple[tuple[Permutation, Fraction], ...]

    def __post_init__(self):
        perms = [p for p, _ in self.terms]
        if len(set(perms)) != len(perms):
            raise ValueError("permutations in a combination must be distinct")

    @classmethod
    def merged(cls, pairs) -> "PermCombination":
        """Sum coefficients of repeated permutations and drop zeros."""
        acc: dict[Permutation, Fraction] = defaultdict(Fraction)
        for perm, coeff in pairs:
            acc[check_permutation(perm)] += exact.to_rational(coeff)
        return cls(tuple((p, c) for p, c in sorted(acc.items()) if c))

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, n: int) -> Matrix:
        out = exact.zeros(n, n)
        for perm, coeff in self.terms:
            out = exact.mat_add(out, exact.mat_scale(coeff, permutation_matrix(perm)))
        return out


def _check_square(m: Matrix) -> int:
    rows, cols = exact.shape(m)
    if rows != cols:
        raise ValueError(f"expected a square matrix, got {rows}x{cols}")
    return rows


def common_line_sum(m: Matrix) -> Fraction:
    """The shared row/column sum of ``m``; raises if they differ."""
    _check_square(m)
    sums = {sum(row) for row in m} | {sum(col) for col in zip(*m)}
    if len(sums) != 1:
        raise UnequalSumsError("row and column sums are not all equal")
    return sums.pop()


def is_doubly_stochastic(m: Sequence[Sequence]) -> bool:
    m = exact.as_matrix(m)
    _check_square(m)
    if any(x < 0 for row in m for x in row):
        return False
    return all(sum(row) == 1 for row in m) and all(sum(col) == 1 for col in zip(*m))


@dataclass(frozen=True)
class ShiftScale:
    m_min: Fraction
    t: Fraction
    scale: Fraction | None
    is_constant_matrix: bool

    def invert(self, p: Matrix) -> Matrix:
        """Recover the original matrix from its doubly stochastic form."""
        n = len(p)
        if self.is_constant_matrix:
            return exact.mat_scale(self.t, p)
        shifted = exact.mat_scale(1 / self.scale, p)
        return exact.mat_add(shifted, exact.mat_scale(self.m_min, exact.ones(n, n)))


def shift_scale_to_stochastic(s: Sequence[Sequence]) -> tuple[ShiftScale, Matrix]:
    """Map a matrix with equal line sums to ``(t - mn)^-1 (S - mJ)``."""
    s = exact.as_matrix(s)
    n = _check_square(s)
    t = common_line_sum(s)
    low = min(min(row) for row in s)
    if all(x == low for row in s for x in row):
        uniform = tuple((Fraction(1, n),) * n for _ in range(n))
        return ShiftScale(low, t, None, True), uniform
    scale = 1 / (t - low * n)
    p = tuple(tuple(scale * (x - low) for x in row) for row in s)
    return ShiftScale(low, t, scale, False), p


def _perfect_matching(support: list[list[bool]]) -> list[int] | None:
    """Row -> column perfect matching via augmenting paths (Kuhn).

    Rows are processed in increasing order and columns tried lowest first.
    """
    n = len(support)
    col_owner = [-1] * n

    def augment(r: int, seen: list[bool]) -> bool:
        for c in range(n):
            if support[r][c] and not seen[c]:
                seen[c] = True
                if col_owner[c] < 0 or augment(col_owner[c], seen):
                    col_owner[c] = r
                    return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return None
    match = [0] * n
    for c, r in enumerate(col_owner):
        match[r] = c
    return match


def bvn_decompose(p: Sequence[Sequence]) -> PermCombination:
    """Greedy convex decomposition of a doubly stochastic matrix.

    Each round finds a perfect matching on the positive entries and peels
    off the permutation weighted by its smallest matched entry, which
    zeroes at least one more entry. The residual's minimal face of the
    Birkhoff polytope shrinks every round, so at most ``(n-1)^2 + 1`` terms
    come out (``(n-1)^2`` if ``p`` already has a zero entry).
    """
    p = exact.as_matrix(p)
    if not is_doubly_stochastic(p):
        raise NotDoublyStochasticError("input is not doubly stochastic")
    n = len(p)
    residual = [list(row) for row in p]
    terms = []
    support = sum(1 for row in residual for x in row if x)
    while support:
        match = _perfect_matching([[x > 0 for x in row] for row in residual])
        if match is None:
            raise RuntimeError("no perfect matching on the support of a scaled doubly stochastic matrix")
        coeff = min(residual[r][c] for r, c in enumerate(match))
        for r, c in enumerate(match):
            residual[r][c] -= coeff
        # column j holds its 1 in row sigma(j)
        sigma = [0] * n
        for r, c in enumerate(match):
            sigma[c] = r + 1
        terms.append((tuple(sigma), coeff))
        remaining = sum(1 for row in residual for x in row if x)
        assert remaining < support
        support = remaining
    assert len(terms) <= (n - 1) ** 2 + 1
    return PermCombination.merged(terms)


def cyclic_shifts(n: int) -> list[Permutation]:
    """The ``n`` cyclic shifts of the identity; their matrices sum to ``J``."""
    return [tuple((k + j) % n + 1 for j in range(n)) for k in range(n)]


def expand_in_permutations(s: Sequence[Sequence]) -> PermCombination:
    """Write a matrix with equal line sums as ``(t - mn) bvn(P) + m J``."""
    s = exact.as_matrix(s)
    n = _check_square(s)
    t = common_line_sum(s)
    info, p = shift_scale_to_stochastic(s)
    if info.is_constant_matrix:
        return PermCombination.merged((perm, t / n) for perm in cyclic_shifts(n))
    spread = 1 / info.scale
    pairs = [(perm, spread * c) for perm, c in bvn_decompose(p).terms]
    pairs += [(perm, info.m_min) for perm in cyclic_shifts(n)]
    return PermCombination.merged(pairs)


def cycle_to_permutation(n: int, cycle: Sequence[int]) -> Permutation:
    """One-line form of the cycle ``(a b c ...)``: a -> b -> c -> ... -> a."""
    sigma = list(range(1, n + 1))
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        sigma[a - 1] = b
    return check_permutation(sigma, n)


def mn_basis_permutations(n: int) -> list[Permutation]:
    """The 3-cycles ``(i j n)``, transpositions ``(i n)`` and the identity."""
    if n < 2:
        raise ValueError("n must be at least 2")
    perms = [cycle_to_permutation(n, (i, j, n)) for i in range(1, n) for j in range(1, n) if i != j]
    perms += [cycle_to_permutation(n, (i, n)) for i in range(1, n)]
    perms.append(tuple(range(1, n + 1)))
    return perms


def mn_basis(n: int) -> list[Matrix]:
    """A basis of permutation matrices for the matrices with equal line sums."""
    mats = [permutation_matrix(p) for p in mn_basis_permutations(n)]
    flat = tuple(tuple(x for row in m for x in row) for m in mats)
    if exact.rank(flat) != (n - 1) ** 2 + 1:
        raise RuntimeError("basis matrices are not linearly independent")
    return mats


def b_matrix(n: int, i: int, j: int) -> Matrix:
    """+1 at ``(i, j)`` and ``(n, n)``, -1 at ``(i, n)`` and ``(n, j)``."""
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise ValueError(f"indices must lie in 1..{n - 1}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[i - 1][j - 1] += 1
    rows[n - 1][n - 1] += 1
    rows[i - 1][n - 1] -= 1
    rows[n - 1][j - 1] -= 1
    return tuple(tuple(r) for r in rows)


def coordinates_in_basis(s: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Coefficients of ``s`` with respect to :func:`mn_basis`."""
    s = exact.as_matrix(s)
    n = _check_square(s)
    common_line_sum(s)
    columns = [tuple(x for row in m for x in row) for m in mn_basis(n)]
    target = tuple(x for row in s for x in row)
    return exact.solve_linear(exact.from_columns(columns), target)
