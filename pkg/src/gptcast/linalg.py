"""Exact rational linear algebra on tuples.

Vectors are tuples of rationals, matrices are tuples of row tuples.  All
routines run fraction-exact Gaussian elimination; nothing here rounds.
Sizes are desk scale (dimension <= ~20), so dense elimination is the right
tool.
"""

from __future__ import annotations

from typing import Sequence

from .rationals import ZERO, ONE, Rational, RationalLike, rat

Vector = tuple  # tuple[Rational, ...]
Matrix = tuple  # tuple[Vector, ...]


def vec(values: Sequence[RationalLike]) -> Vector:
    return tuple(rat(v) for v in values)


def mat(rows: Sequence[Sequence[RationalLike]]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def dot(a: Sequence, b: Sequence) -> Rational:
    if len(a) != len(b):
        raise ValueError(f"dot: length mismatch {len(a)} vs {len(b)}")
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Matrix) -> Vector:
    """Row-vector times matrix (covector pushforward)."""
    if not m:
        return ()
    ncols = len(m[0])
    out = []
    for j in range(ncols):
        total = ZERO
        for vi, row in zip(v, m):
            if vi and row[j]:
                total += vi * row[j]
        out.append(total)
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"mat_mul: inner dimension mismatch {len(a[0])} vs {len(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def scale_vec(c: Rational, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def add_vec(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub_vec(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def add_mat(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add_vec(ra, rb) for ra, rb in zip(a, b))


def scale_mat(c: Rational, m: Matrix) -> Matrix:
    return tuple(scale_vec(c, row) for row in m)


def kron_vec(a: Sequence, b: Sequence) -> Vector:
    """Kronecker product of two vectors (index order: a-slot major)."""
    return tuple(x * y for x in a for y in b)


def kron_mat(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product of two matrices."""
    if not a or not b:
        return ()
    out = []
    for ra in a:
        for rb in b:
            out.append(tuple(x * y for x in ra for y in rb))
    return tuple(out)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form.  Returns (rref_matrix, pivot_columns)."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != ONE:
            inv = ONE / pv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [x - f * y for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> tuple[Vector, ...]:
    """Basis of the right nullspace {x : m @ x = 0}.

    ``ncols`` must be given when ``m`` has no rows.
    """
    if not m:
        if ncols is None:
            raise ValueError("nullspace of empty matrix needs ncols")
        return identity(ncols)
    ncols = len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of ``m @ x = b`` or None if inconsistent.

    If the system is underdetermined, free variables are set to zero.
    """
    if len(m) != len(b):
        raise ValueError("solve: row count mismatch")
    if not m:
        return ()
    ncols = len(m[0])
    aug = tuple(tuple(row) + (bv,) for row, bv in zip(m, b))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None  # a row reduced to 0 = 1
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return tuple(x)


def invert(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix.  Raises ValueError if singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("invert: matrix not square")
    aug = tuple(row + ident_row for row, ident_row in zip(m, identity(n)))
    red, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        raise ValueError("invert: singular matrix")
    return tuple(row[n:] for row in red[:n])


def column_space_basis(m: Matrix) -> tuple[Vector, ...]:
    """Columns of ``m`` (as vectors) forming a basis of its column space."""
    if not m:
        return ()
    _, pivots = rref(m)
    cols = transpose(m)
    return tuple(cols[p] for p in pivots)


def independent_rows(rows: Sequence[Sequence], need: int | None = None) -> list[int]:
    """Indices of a maximal (or first ``need``) linearly independent row set.

    Greedy in input order, so the choice is deterministic.
    """
    chosen: list[int] = []
    current: list[Sequence] = []
    for i, row in enumerate(rows):
        if rank(tuple(current) + (tuple(row),)) > len(chosen):
            chosen.append(i)
            current.append(tuple(row))
            if need is not None and len(chosen) == need:
                break
    return chosen
