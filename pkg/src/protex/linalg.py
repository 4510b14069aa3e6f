"""Exact Gaussian elimination over an abstract valued field.

Matrices are lists of row lists of field elements; all arithmetic goes
through the field object, so the same code serves F_p and the rationals.
Zero-row and zero-column matrices are legal throughout.
"""

from __future__ import annotations

from .scalars import ValuedField


def identity(F: ValuedField, n: int):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(F: ValuedField, a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = [[F.zero] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            aik = ai[k]
            if F.is_zero(aik):
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] = F.add(oi[j], F.mul(aik, bk[j]))
    return out

def mat_vec(F: ValuedField, a, v):
    out = []
    for row in a:
        acc = F.zero
        for x, y in zip(row, v):
            acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return out


def rref(F: ValuedField, a):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in a]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if not F.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = F.div(F.one, rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(m):
            if i != r and not F.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(F: ValuedField, a) -> int:
    return len(rref(F, a)[1])


def solve_matrix(F: ValuedField, a, b):
    """Any solution X of a @ X = b, or None when inconsistent.

    Shapes: a is m x n, b is m x k, X is n x k; free variables are set to zero.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    k = len(b[0]) if b else 0
    if len(b) != m:
        raise ValueError("incompatible shapes in solve_matrix")
    if m == 0:
        return [[F.zero] * k for _ in range(n)]
    aug = [list(a[i]) + list(b[i]) for i in range(m)]
    red, pivots = rref(F, aug)
    for c in pivots:
        if c >= n:  # pivot in the augmented block: inconsistent
            return None
    x = [[F.zero] * k for _ in range(n)]
    for r, c in enumerate(pivots):
        for j in range(k):
            x[c][j] = red[r][n + j]
    return x


def solve(F: ValuedField, a, v):
    x = solve_matrix(F, a, [[e] for e in v])
    return None if x is None else [row[0] for row in x]


def nullspace(F: ValuedField, a, ncols: int = None):
    """Basis of the right nullspace, one vector per free column.

    ``ncols`` is required when ``a`` has no rows (the shape is lost).
    """
    n = len(a[0]) if a else (ncols or 0)
    if not a:
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    red, pivots = rref(F, a)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [F.zero] * n
        vec[free] = F.one
        for r, c in enumerate(pivots):
            vec[c] = F.neg(red[r][free])
        basis.append(vec)
    return basis


def inverse(F: ValuedField, a):
    """Two-sided inverse of a square matrix, or None if singular."""
    n = len(a)
    if any(len(row) != n for row in a):
        return None
    if n == 0:
        return []
    inv = solve_matrix(F, a, identity(F, n))
    if inv is None:
        return None
    # solve_matrix guarantees a right inverse; squareness makes it two-sided
    if rank(F, a) < n:
        return None
    return inv
