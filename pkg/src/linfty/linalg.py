"""Exact dense and sparse linear algebra over any Python field type.

Entries may be ints, Fractions, QuadraticNumbers or Q(c) elements; the only
requirements are +, -, *, / and comparison with 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence


class SingularMatrixError(ZeroDivisionError):
    pass


def _lift(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot column list."""
    rows = [[_lift(x) for x in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -R[row_idx][free]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence):
    """One solution x of A x = rhs (free variables set to 0), or None."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [list(matrix[i]) + [rhs[i]] for i in range(nrows)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row_idx, p in enumerate(pivots):
        x[p] = R[row_idx][ncols]
    return x


def inverse(matrix: Sequence[Sequence]) -> list[list]:
    n = len(matrix)
    aug = [list(matrix[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        out_row = []
        for j in range(ncols):
            s = Fraction(0)
            for k in range(inner):
                a = row[k]
                if a != 0:
                    b = B[k][j]
                    if b != 0:
                        s = s + a * b
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    out = []
    for row in A:
        s = Fraction(0)
        for a, b in zip(row, x):
            if a != 0 and b != 0:
                s = s + a * b
        out.append(s)
    return out


def det2(m) -> object:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def is_zero_matrix(A: Iterable[Iterable]) -> bool:
    return all(x == 0 for row in A for x in row)


class SparseEchelon:
    """Incrementally maintained, fully reduced row echelon form of sparse vectors.

    Vectors are dicts column -> coefficient.  The pivot of a row is its
    greatest column under `key`; every stored row has coefficient 1 at its
    pivot and no stored row contains another row's pivot.  With that
    invariant, `reduce` gives a canonical remainder for the span.
    """

    def __init__(self, key: Callable[[Hashable], object]):
        self.key = key
        self.rows: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    def copy(self) -> "SparseEchelon":
        other = SparseEchelon(self.key)
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        return other

    def reduce(self, vec: dict) -> dict:
        out = {k: v for k, v in vec.items() if v != 0}
        for col in [c for c in out if c in self.rows]:
            coef = out.get(col, 0)
            if coef == 0:
                continue
            for k, v in self.rows[col].items():
                nv = out.get(k, 0) - coef * v
                if nv == 0:
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def insert(self, vec: dict) -> bool:
        """Add vec to the span; return True when the span grew."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = max(r, key=self.key)
        inv = 1 / r[pivot]
        r = {k: v * inv for k, v in r.items()}
        for p, row in self.rows.items():
            coef = row.get(pivot, 0)
            if coef != 0:
                for k, v in r.items():
                    nv = row.get(k, 0) - coef * v
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
        self.rows[pivot] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
