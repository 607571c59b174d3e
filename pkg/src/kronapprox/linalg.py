"""Exact linear algebra over any field whose elements support +, -, *, /
and truth-testing (zero is falsy), plus integer-matrix normal forms.

Matrices are lists of rows.  Nothing here is approximate: pivoting uses
exact zero tests, so the routines are valid over the rationals, over a
number field, or over its complexification.
"""

from __future__ import annotations

from fractions import Fraction


def mat_copy(a):
    return [list(row) for row in a]


def rank(a) -> int:
    """Rank by fraction-free-style Gaussian elimination with exact zero tests."""
    m = mat_copy(a)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv_p = m[r][c]
        for i in range(r + 1, rows):
            if m[i][c]:
                factor = m[i][c] / inv_p
                m[i] = [m[i][j] - factor * m[r][j] for j in range(cols)]
        r += 1
        if r == rows:
            break
    return r


def det(a):
    """Determinant by elimination; element type must form a field."""
    m = mat_copy(a)
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign_flip = False
    result = None
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            zero = m[0][0] - m[0][0]
            return zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign_flip = not sign_flip
        pivot = m[c][c]
        result = pivot if result is None else result * pivot
        for i in range(c + 1, n):
            if m[i][c]:
                factor = m[i][c] / pivot
                m[i] = [m[i][j] - factor * m[c][j] for j in range(n)]
    if sign_flip:
        result = (result - result) - result
    return result


def solve(a, b):
    """Solve A x = b for square nonsingular A; returns None when singular.

    ``b`` is a single column (list).  Elements must form a field.
    """
    n = len(a)
    m = [list(a[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pivot = m[c][c]
        m[c] = [v / pivot for v in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                factor = m[i][c]
                m[i] = [m[i][j] - factor * m[c][j] for j in range(n + 1)]
    return [m[i][n] for i in range(n)]


def inverse(a):
    n = len(a)
    zero = a[0][0] - a[0][0] if n else Fraction(0)
    one = None
    for row in a:
        for v in row:
            if v:
                one = v / v
                break
        if one is not None:
            break
    if one is None:
        return None
    m = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        pivot = m[c][c]
        m[c] = [v / pivot for v in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                factor = m[i][c]
                m[i] = [m[i][j] - factor * m[c][j] for j in range(2 * n)]
    return [row[n:] for row in m]


def nullspace(a):
    """Basis of the right kernel over the element field (list of columns)."""
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    m = mat_copy(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pivot = m[r][c]
        m[r] = [v / pivot for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [m[i][j] - factor * m[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    one = Fraction(1)
    zero = Fraction(0)
    if pivots:
        sample = m[0][pivots[0]]
        one = sample / sample
        zero = sample - sample
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * cols
        vec[fc] = one
        for r_i, pc in enumerate(pivots):
            vec[pc] = zero - m[r_i][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Integer matrices


def hnf_with_transform(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Column-style Hermite normal form.

    Returns (H, U, pivot_rows) with H = A * U, U unimodular, H lower
    triangular on its pivot structure: each pivot is positive and entries to
    its left in the pivot row are reduced into [0, pivot).  The result is the
    canonical representative of the column span of A.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def col_op_sub(dst: int, src: int, k: int) -> None:
        for i in range(rows):
            h[i][dst] -= k * h[i][src]
        for i in range(cols):
            u[i][dst] -= k * u[i][src]

    def col_swap(i: int, j: int) -> None:
        for r in range(rows):
            h[r][i], h[r][j] = h[r][j], h[r][i]
        for r in range(cols):
            u[r][i], u[r][j] = u[r][j], u[r][i]

    def col_neg(j: int) -> None:
        for r in range(rows):
            h[r][j] = -h[r][j]
        for r in range(cols):
            u[r][j] = -u[r][j]

    pivot_rows: list[int] = []
    p = 0
    for r in range(rows):
        if p == cols:
            break
        # Euclid on row r across columns >= p until one nonzero remains.
        while True:
            nz = [j for j in range(p, cols) if h[r][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: (abs(h[r][j]), j))
            if jmin != p:
                col_swap(p, jmin)
            if h[r][p] < 0:
                col_neg(p)
            done = True
            for j in range(p + 1, cols):
                if h[r][j] != 0:
                    q = h[r][j] // h[r][p]
                    col_op_sub(j, p, q)
                    if h[r][j] != 0:
                        done = False
            if done:
                break
        if h[r][p] != 0:
            for j in range(p):
                q = h[r][j] // h[r][p]
                if q:
                    col_op_sub(j, p, q)
            pivot_rows.append(r)
            p += 1
    return h, u, pivot_rows


def hnf(a: list[list[int]]) -> list[list[int]]:
    h, _, _ = hnf_with_transform(a)
    return h


def integer_kernel(a: list[list[int]]) -> list[list[int]]:
    """Z-basis of {v : A v = 0}, as a list of columns, HNF-canonical."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h, u, _ = hnf_with_transform(a)
    zero_cols = [j for j in range(cols) if all(h[i][j] == 0 for i in range(rows))]
    if not zero_cols:
        return []
    basis_matrix = [[u[i][j] for j in zero_cols] for i in range(cols)]
    canon, _, _ = hnf_with_transform(basis_matrix)
    kept = [j for j in range(len(zero_cols))
            if any(canon[i][j] != 0 for i in range(cols))]
    return [[canon[i][j] for i in range(cols)] for j in kept]


def int_det(a: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (via rational elimination)."""
    d = det([[Fraction(v) for v in row] for row in a])
    assert d.denominator == 1
    return int(d)


def identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul_int(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(rows)]
