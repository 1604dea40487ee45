"""Small exact linear-algebra helpers over Fraction entries.

Everything here works on tuples of tuples of Fraction. Sizes stay at desk
scale (a few dozen rows), so plain Gaussian elimination is enough and keeps
all results exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import StructuralError, ValidationError

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def mat(rows: Sequence[Sequence]) -> Matrix:
    """Normalize nested sequences (ints, Fractions or 'p/q' strings) to a Matrix."""
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise StructuralError("ragged matrix rows")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise StructuralError(f"cannot multiply {n}x{k} by {k2}x{m}")
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = Fraction(0)
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(mul(a, b), mul(b, a))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def is_symmetric(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def _eliminate(a: Matrix, rhs: Matrix | None):
    """Row-reduce a copy of ``a`` (and ``rhs`` alongside); return rows, pivots."""
    work = [list(row) for row in a]
    extra = [list(row) for row in rhs] if rhs is not None else None
    n_rows = len(work)
    n_cols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        if extra is not None:
            extra[r], extra[pivot] = extra[pivot], extra[r]
        inv = Fraction(1) / work[r][c]
        work[r] = [x * inv for x in work[r]]
        if extra is not None:
            extra[r] = [x * inv for x in extra[r]]
        for i in range(n_rows):
            if i == r or work[i][c] == 0:
                continue
            factor = work[i][c]
            work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
            if extra is not None:
                extra[i] = [x - factor * y for x, y in zip(extra[i], extra[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return work, extra, pivots


def rank(a: Matrix) -> int:
    if not a:
        return 0
    _, _, pivots = _eliminate(a, None)
    return len(pivots)


def det(a: Matrix) -> Fraction:
    n, m = shape(a)
    if n != m:
        raise StructuralError(f"determinant of non-square {n}x{m} matrix")
    work = [list(row) for row in a]
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            result = -result
        result *= work[c][c]
        inv = Fraction(1) / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] == 0:
                continue
            factor = work[i][c] * inv
            work[i] = [x - factor * y for x, y in zip(work[i], work[c])]
    return result


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise StructuralError(f"inverse of non-square {n}x{m} matrix")
    reduced, inv_rows, pivots = _eliminate(a, identity(n))
    if len(pivots) != n:
        raise ValidationError("matrix is singular")
    assert inv_rows is not None
    return tuple(tuple(row) for row in inv_rows)


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector | None:
    """One exact solution of ``a x = b``, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is a particular solution,
    not a canonical one.
    """
    n_rows, n_cols = shape(a)
    if len(b) != n_rows:
        raise StructuralError(f"rhs length {len(b)} != {n_rows} rows")
    _, rhs, pivots = _eliminate(a, tuple((Fraction(x),) for x in b))
    assert rhs is not None
    for i in range(len(pivots), n_rows):
        if rhs[i][0] != 0:
            return None
    # reduced row echelon form with free variables set to zero
    x = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        x[c] = rhs[r][0]
    return tuple(x)
