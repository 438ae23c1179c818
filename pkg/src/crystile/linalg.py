"""Small exact linear algebra kernel over rationals.

Vectors are tuples of Q, matrices are tuples of row tuples.  Sizes here
are tiny (n <= 3 geometry, Seitz stacks up to ~36 rows), so everything
is plain Gaussian elimination with exact pivots.
"""

from __future__ import annotations

import math
from itertools import product

from .rational import Q, ZERO, ONE, rat

Vec = tuple
Mat = tuple


def vec(entries) -> Vec:
    return tuple(rat(e) for e in entries)


def mat(rows) -> Mat:
    return tuple(tuple(rat(e) for e in row) for row in rows)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def identity_mat(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def vdot(u: Vec, v: Vec):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def is_integral(q) -> bool:
    return Q(q).denominator == 1


def is_integral_vec(u: Vec) -> bool:
    return all(is_integral(a) for a in u)


def is_integral_mat(m: Mat) -> bool:
    return all(is_integral(a) for row in m for a in row)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(vdot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Mat) -> Mat:
    return tuple(tuple(-x for x in row) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def mat_det(m: Mat):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    # fallback: elimination
    rows = [list(r) for r in m]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = ONE / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f != 0:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def mat_inv(m: Mat) -> Mat:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_linear(m: Mat, b: Vec):
    """Solve m x = b exactly; None if inconsistent, a solution otherwise.

    For underdetermined consistent systems, free variables are set to 0.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = ONE / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    x = [ZERO] * ncols
    for i, col in enumerate(pivots):
        x[col] = aug[i][ncols]
    return tuple(x)


def mat_rank(m: Mat) -> int:
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    rows = [list(r) for r in m]
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(m: Mat) -> list:
    """Basis of {x : m x = 0}."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rows = [list(r) for r in m]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def gram_dot(gram: Mat, u: Vec, v: Vec):
    return vdot(u, mat_vec(gram, v))


def gram_norm2(gram: Mat, v: Vec):
    return gram_dot(gram, v, v)


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = d * Q(v).denominator // math.gcd(d, Q(v).denominator)
    return d


# --- integer normal forms -------------------------------------------------

def hermite_column_basis(int_cols: list) -> list:
    """Column-style Hermite form of the lattice spanned by integer columns.

    Returns a list of r linearly independent integer columns generating the
    same lattice, in a canonical (lower-triangular-ish) form.
    """
    if not int_cols:
        return []
    n = len(int_cols[0])
    cols = [list(c) for c in int_cols]
    basis = []
    row = 0
    while row < n and cols:
        live = [c for c in cols if any(x != 0 for x in c[row:])]
        work = [c for c in live if c[row] != 0]
        rest = [c for c in live if c[row] == 0]
        if not work:
            cols = rest
            row += 1
            continue
        # gcd-reduce the pivot row entries across columns
        while len(work) > 1:
            work.sort(key=lambda c: abs(c[row]))
            a = work[0]
            changed = []
            for c in work[1:]:
                q = c[row] // a[row]
                newc = [x - q * y for x, y in zip(c, a)]
                if newc[row] != 0:
                    changed.append(newc)
                elif any(x != 0 for x in newc[row:]):
                    rest.append(newc)
            work = [a] + changed
        piv = work[0]
        if piv[row] < 0:
            piv = [-x for x in piv]
        # reduce prior basis columns against the new pivot
        for b in basis:
            q = b[row] // piv[row]
            if q:
                for i in range(n):
                    b[i] -= q * piv[i]
        basis.append(piv)
        cols = rest
        row += 1
    return [tuple(c) for c in basis]


def smith_normal_form(a: Mat):
    """U A V = D over the integers, U and V unimodular, D diagonal.

    Input entries must be integral rationals.  Returns (U, D, V) as
    rational matrices with integer entries.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    A = [[int(x) for x in row] for row in a]
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, f):
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def addmul_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(nrows, ncols):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if A[i][j] != 0:
                    if piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    addmul_row(i, t, -q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    addmul_col(j, t, -q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    # divisibility chain is irrelevant for congruence solving; skip it
    toQ = lambda M: tuple(tuple(Q(x) for x in row) for row in M)
    return toQ(U), toQ(A), toQ(V)


def solve_mod_lattice(a_stack: Mat, b_stack: Vec):
    """One rational solution x of  a_stack @ x = b_stack (mod Z^rows), or None.

    a_stack must have integer entries; b_stack may be rational.
    """
    nrows = len(a_stack)
    ncols = len(a_stack[0]) if nrows else 0
    if nrows == 0:
        return zero_vec(ncols)
    U, D, V = smith_normal_form(a_stack)
    c = mat_vec(U, b_stack)
    y = [ZERO] * ncols
    for i in range(nrows):
        d = D[i][i] if i < ncols else ZERO
        if d != 0:
            y[i] = c[i] / d
        elif not is_integral(c[i]):
            return None
    x = mat_vec(V, tuple(y))
    return x


def enumerate_box(bounds) -> product:
    """Iterate integer points of the closed box given by (lo, hi) pairs."""
    ranges = [range(lo, hi + 1) for lo, hi in bounds]
    return product(*ranges)
