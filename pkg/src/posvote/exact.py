"""Exact rational linear algebra and a Bland's-rule simplex solver.

Vectors are tuples of :class:`fractions.Fraction` and matrices are tuples of
such row tuples. Nothing in here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible is not."""


class InconsistentSystemError(ValueError):
    """Raised when a linear system has no solution."""


def to_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats.

    Strings are read as ``"num/den"`` or a bare integer (decimal strings such
    as ``"9.4"`` are also accepted since they are exact).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational from {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    return str(x)


def as_vector(values: Sequence) -> Vector:
    vec = tuple(to_rational(v) for v in values)
    if not vec:
        raise ValueError("vectors must have dimension >= 1")
    return vec


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    mat = tuple(tuple(to_rational(v) for v in row) for row in rows)
    if not mat or not mat[0]:
        raise ValueError("matrices must be non-empty")
    width = len(mat[0])
    if any(len(row) != width for row in mat):
        raise ValueError("ragged matrix")
    return mat


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0])


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def ones(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(1),) * cols for _ in range(rows))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    c = to_rational(c)
    return tuple(c * a for a in v)


def linear_combination(coeffs: Sequence, vectors: Sequence[Vector]) -> Vector:
    """Return ``sum(c * v)`` over paired coefficients and vectors."""
    if len(coeffs) != len(vectors) or not vectors:
        raise ValueError("need one coefficient per vector and at least one vector")
    dim = len(vectors[0])
    out = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors):
        if len(v) != dim:
            raise ValueError("dimension mismatch")
        c = to_rational(c)
        if c:
            for i, a in enumerate(v):
                out[i] += c * a
    return tuple(out)


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    if len(m[0]) != len(v):
        raise ValueError(f"dimension mismatch: matrix has {len(m[0])} columns, vector has {len(v)} entries")
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    cols = transpose(b)
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError("dimension mismatch in matrix sum")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, m: Matrix) -> Matrix:
    c = to_rational(c)
    return tuple(tuple(c * x for x in row) for row in m)


def from_columns(columns: Sequence[Vector]) -> Matrix:
    return transpose(tuple(tuple(c) for c in columns))


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form over the first
    ``ncols`` columns; return the pivot column of each nonzero row."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: Matrix) -> int:
    rows = [list(row) for row in m]
    return len(_row_reduce(rows, len(m[0])))


def mat_inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse. Raises :class:`SingularMatrixError`."""
    n, cols = shape(m)
    if n != cols:
        raise ValueError(f"cannot invert a non-square {n}x{cols} matrix")
    eye = identity(n)
    rows = [list(row) + list(e) for row, e in zip(m, eye)]
    pivots = _row_reduce(rows, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve_linear(m: Matrix, b: Sequence) -> Vector:
    """Return one exact solution of ``m x = b``.

    Square nonsingular systems have a unique answer. For singular or
    rectangular but consistent systems, free variables are set to zero.
    """
    nrows, ncols = shape(m)
    b = as_vector(b)
    if len(b) != nrows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    rows = [list(row) + [bi] for row, bi in zip(m, b)]
    pivots = _row_reduce(rows, ncols)
    for row in rows[len(pivots):]:
        if row[ncols] != 0:
            raise InconsistentSystemError("linear system is inconsistent")
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Linear programming


LE, EQ, GE = "<=", "=", ">="


@dataclass(frozen=True)
class LpProblem:
    """maximize ``objective . x`` subject to ``a x (relations) rhs``.

    ``free[j]`` marks variable ``j`` as unbounded below; all other variables
    carry the bound ``x_j >= 0``.
    """

    objective: Vector
    a: Matrix
    relations: tuple[str, ...]
    rhs: Vector
    free: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        nvars = len(self.objective)
        object.__setattr__(self, "objective", as_vector(self.objective))
        object.__setattr__(self, "a", as_matrix(self.a))
        object.__setattr__(self, "rhs", as_vector(self.rhs))
        object.__setattr__(self, "relations", tuple(self.relations))
        if not self.free:
            object.__setattr__(self, "free", (False,) * nvars)
        if len(self.a[0]) != nvars or len(self.free) != nvars:
            raise ValueError("inconsistent number of variables")
        if not (len(self.a) == len(self.rhs) == len(self.relations)):
            raise ValueError("inconsistent number of constraints")
        bad = set(self.relations) - {LE, EQ, GE}
        if bad:
            raise ValueError(f"unknown relations {sorted(bad)}")

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        for j, xj in enumerate(x):
            if not self.free[j] and xj < 0:
                return False
        for row, rel, bi in zip(self.a, self.relations, self.rhs):
            lhs = dot(row, x)
            if (rel == LE and lhs > bi) or (rel == GE and lhs < bi) or (rel == EQ and lhs != bi):
                return False
        return True


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Vector | None = None
    value: Fraction | None = None


class _Tableau:
    """Dense canonical-form tableau; the last column holds the right-hand side."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        row = [x * inv for x in row]
        self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = c

    def maximize(self, cost: list[Fraction], allowed: int) -> str:
        """Bland's rule primal simplex over columns ``< allowed``."""
        while True:
            entering = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                reduced = cost[j] - sum(
                    (cost[b] * row[j] for b, row in zip(self.basis, self.rows) if cost[b]),
                    Fraction(0),
                )
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)

    def values(self) -> list[Fraction]:
        x = [Fraction(0)] * self.width
        for b, row in zip(self.basis, self.rows):
            x[b] = row[-1]
        return x


def simplex_max(problem: LpProblem) -> LpResult:
    """Solve ``problem`` exactly with a two-phase Bland's-rule simplex."""
    nvars = len(problem.objective)
    # split each free variable into a difference of two nonnegative ones
    columns: list[tuple[int, int]] = []
    for j in range(nvars):
        columns.append((j, 1))
        if problem.free[j]:
            columns.append((j, -1))
    ncore = len(columns)

    rows_core, rels, rhs = [], [], []
    for row, rel, bi in zip(problem.a, problem.relations, problem.rhs):
        expanded = [sign * row[j] for j, sign in columns]
        if bi < 0:
            expanded = [-x for x in expanded]
            bi = -bi
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        rows_core.append(expanded)
        rels.append(rel)
        rhs.append(bi)

    m = len(rows_core)
    n_slack = sum(1 for rel in rels if rel != EQ)
    n_art = sum(1 for rel in rels if rel != LE)
    width = ncore + n_slack + n_art
    art_start = ncore + n_slack

    rows: list[list[Fraction]] = []
    basis: list[int] = []
    s_idx, a_idx = ncore, art_start
    zero, one = Fraction(0), Fraction(1)
    for core, rel, bi in zip(rows_core, rels, rhs):
        row = core + [zero] * (n_slack + n_art) + [bi]
        if rel == LE:
            row[s_idx] = one
            basis.append(s_idx)
            s_idx += 1
        else:
            if rel == GE:
                row[s_idx] = -one
                s_idx += 1
            row[a_idx] = one
            basis.append(a_idx)
            a_idx += 1
        rows.append(row)

    tab = _Tableau(rows, basis)

    if n_art:
        phase1 = [zero] * art_start + [-one] * n_art
        tab.maximize(phase1, width)
        if sum((row[-1] for b, row in zip(tab.basis, tab.rows) if b >= art_start), zero) != 0:
            return LpResult("infeasible")
        # drive zero-valued artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= art_start:
                j = next((j for j in range(art_start) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1
        tab.rows = [row[:art_start] + [row[-1]] for row in tab.rows]

    cost = [sign * problem.objective[j] for j, sign in columns] + [zero] * n_slack
    if not tab.rows:
        # every constraint was redundant: feasible region is the whole orthant
        if any(c > 0 for c in cost):
            return LpResult("unbounded")
        x = [zero] * (ncore + n_slack)
    else:
        status = tab.maximize(cost, art_start)
        if status == "unbounded":
            return LpResult("unbounded")
        x = tab.values()

    solution = [zero] * nvars
    for k, (j, sign) in enumerate(columns):
        solution[j] += sign * x[k]
    solution = tuple(solution)
    return LpResult("optimal", solution, dot(problem.objective, solution))
