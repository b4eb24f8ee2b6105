"""Dense complex linear algebra at working precision.

Plain Gaussian elimination is all the package needs: the systems are small
(period normalization, moment systems up to ~50 unknowns) but brutally
ill-conditioned, so everything runs on mpmath numbers at the caller's
precision.  ``solve_linear`` does row-pivoted elimination with a pivot-ratio
condition estimate; ``nullspace`` does full-pivot elimination and returns a
basis of the kernel for rank-deficient moment systems.
"""
from __future__ import annotations

from mpmath import mp, mpf

from .errors import SingularMatrix


def _matrix_scale(a) -> mpf:
    return max((max(abs(x) for x in row) for row in a), default=mpf(0))


def solve_linear(matrix, rhs, rank_rtol=None):
    """Solve A x = b by Gaussian elimination with partial pivoting.

    Returns (x, cond_estimate) where cond_estimate is the ratio of the
    largest to smallest pivot magnitude (a cheap effective-condition proxy).
    Raises SingularMatrix when a pivot falls below rank_rtol * |A|;
    rank_rtol defaults to 2^(-prec/2) at the current working precision.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and non-empty")
    if len(rhs) != n:
        raise ValueError("rhs length mismatch")
    if rank_rtol is None:
        rank_rtol = mpf(2) ** (-mp.prec // 2)
    scale = _matrix_scale(matrix)
    if scale == 0:
        raise SingularMatrix("zero matrix")
    a = [list(row) for row in matrix]
    b = list(rhs)
    piv_min, piv_max = None, None
    for col in range(n):
        p = max(range(col, n), key=lambda r: abs(a[r][col]))
        pivot = a[p][col]
        if abs(pivot) <= rank_rtol * scale:
            raise SingularMatrix(
                f"pivot {abs(pivot)} below rank tolerance at column {col}")
        if p != col:
            a[col], a[p] = a[p], a[col]
            b[col], b[p] = b[p], b[col]
        ap = abs(pivot)
        piv_min = ap if piv_min is None else min(piv_min, ap)
        piv_max = ap if piv_max is None else max(piv_max, ap)
        inv = 1 / pivot
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            a[r][col] = mpf(0)
            for c in range(col + 1, n):
                a[r][c] -= f * a[col][c]
            b[r] -= f * b[col]
    x = [mpf(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        row = a[r]
        for c in range(r + 1, n):
            acc -= row[c] * x[c]
        x[r] = acc / row[r]
    return x, piv_max / piv_min


def residual_norm(matrix, x, rhs) -> mpf:
    """Relative residual ||Ax - b|| / ||b|| in the max norm."""
    bnorm = max((abs(v) for v in rhs), default=mpf(0))
    if bnorm == 0:
        bnorm = mpf(1)
    worst = mpf(0)
    for row, b in zip(matrix, rhs):
        r = mp.fsum(c * xi for c, xi in zip(row, x)) - b
        worst = max(worst, abs(r))
    return worst / bnorm


def nullspace(matrix, rank_rtol=None):
    """Kernel basis of a (possibly rectangular) matrix by full pivoting.

    Returns (basis, rank) where basis is a list of length-ncols vectors
    spanning the kernel.  Full pivoting keeps the elimination rank-revealing
    on the nearly-singular Hankel systems this serves.
    """
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if rank_rtol is None:
        rank_rtol = mpf(2) ** (-mp.prec // 2)
    scale = _matrix_scale(rows) or mpf(1)
    col_perm = list(range(ncols))
    rank = 0
    for step in range(min(nrows, ncols)):
        best, br, bc = mpf(0), step, step
        for r in range(step, nrows):
            for c in range(step, ncols):
                v = abs(rows[r][c])
                if v > best:
                    best, br, bc = v, r, c
        if best <= rank_rtol * scale:
            break
        rows[step], rows[br] = rows[br], rows[step]
        if bc != step:
            for r in range(nrows):
                rows[r][step], rows[r][bc] = rows[r][bc], rows[r][step]
            col_perm[step], col_perm[bc] = col_perm[bc], col_perm[step]
        inv = 1 / rows[step][step]
        for r in range(step + 1, nrows):
            f = rows[r][step] * inv
            if f == 0:
                continue
            rows[r][step] = mpf(0)
            for c in range(step + 1, ncols):
                rows[r][c] -= f * rows[step][c]
        rank += 1
    basis = []
    for free in range(rank, ncols):
        y = [mpf(0)] * ncols          # permuted coordinates
        y[free] = mpf(1)
        for r in range(rank - 1, -1, -1):
            acc = -mp.fsum(rows[r][c] * y[c] for c in range(r + 1, ncols))
            y[r] = acc / rows[r][r]
        v = [mpf(0)] * ncols
        for i, orig in enumerate(col_perm):
            v[orig] = y[i]
        basis.append(v)
    return basis, rank
