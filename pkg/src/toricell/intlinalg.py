"""Exact integer/rational linear algebra on small dense matrices.

Everything here works with plain Python ints (arbitrary precision) or
fractions.Fraction; no floats anywhere.  Vectors are tuples, matrices are
lists (or tuples) of row tuples.  The sizes involved are tiny (dimensions
in the tens), so the implementations favour clarity and exactness over
asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class LinAlgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vector helpers


def vadd(v, w):
    return tuple(a + b for a, b in zip(v, w))


def vsub(v, w):
    return tuple(a - b for a, b in zip(v, w))


def vscale(s, v):
    return tuple(s * a for a in v)


def dot(v, w):
    return sum(a * b for a, b in zip(v, w))


def is_zero(v):
    return all(a == 0 for a in v)


def vector_gcd(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (0 stays 0)."""
    g = vector_gcd(v)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def nonneg(v):
    return all(a >= 0 for a in v)


def leq(v, w):
    """Componentwise v <= w."""
    return all(a <= b for a, b in zip(v, w))


# ---------------------------------------------------------------------------
# matrix helpers


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(A):
    return [list(row) for row in A]


def mat_vec(A, v):
    return tuple(dot(row, v) for row in A)


def mat_mul(A, B):
    if not B:
        return [[] for _ in A]
    cols = list(zip(*B))
    return [[dot(row, col) for col in cols] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def columns(A):
    return [tuple(col) for col in zip(*A)]


def from_columns(cols, nrows=None):
    if not cols:
        if nrows is None:
            raise LinAlgError("need nrows for empty column list")
        return [[] for _ in range(nrows)]
    return [list(row) for row in zip(*cols)]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """U * A * V == S with U, V unimodular and S diagonal, d_i | d_{i+1}."""

    U: list
    Uinv: list
    V: list
    S: list
    rank: int

    def diagonal(self):
        m = len(self.S)
        n = len(self.S[0]) if self.S else 0
        return [self.S[i][i] for i in range(min(m, n))]


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with x*a + y*b == g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def smith_normal_form(A):
    """Compute the Smith normal form of an integer matrix.

    Returns a SmithForm with U (m x m), Uinv, V (n x n) and S = U*A*V.
    The diagonal of S is nonnegative with each entry dividing the next.
    Entries are cleared with 2x2 unimodular transforms from the extended
    gcd, which keeps intermediate growth under control.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = mat_copy(A)
    U = identity(m)
    Uinv = identity(m)
    V = identity(n)

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_negate(i):
        S[i] = [-x for x in S[i]]
        U[i] = [-x for x in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def col_add(src, dst, q):
        # col dst += q * col src
        for r in S:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def row_clear(t, i):
        """Zero S[i][t] using rows t, i; S[t][t] becomes the gcd."""
        a, b = S[t][t], S[i][t]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = -(b // a)
            for k in range(n):
                S[i][k] += q * S[t][k]
            for k in range(m):
                U[i][k] += q * U[t][k]
            for r in Uinv:
                r[t] -= q * r[i]
            return
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        for mat, width in ((S, n), (U, m)):
            rt, ri = mat[t], mat[i]
            for k in range(width):
                rt[k], ri[k] = x * rt[k] + y * ri[k], -bg * rt[k] + ag * ri[k]
        for r in Uinv:
            # inverse transform on columns t, i: [[ag, -y], [bg, x]]
            r[t], r[i] = ag * r[t] + bg * r[i], -y * r[t] + x * r[i]

    def col_clear(t, j):
        """Zero S[t][j] using columns t, j; S[t][t] becomes the gcd."""
        a, b = S[t][t], S[t][j]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            col_add(t, j, -(b // a))
            return
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        for mat in (S, V):
            for r in mat:
                r[t], r[j] = x * r[t] + y * r[j], -bg * r[t] + ag * r[j]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = S[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        if S[t][t] < 0:
            row_negate(t)
        while True:
            for i in range(t + 1, m):
                row_clear(t, i)
            # column clearing may reintroduce entries below the pivot, but
            # only while the pivot keeps shrinking, so this terminates
            for j in range(t + 1, n):
                col_clear(t, j)
            if all(S[i][t] == 0 for i in range(t + 1, m)):
                break
        if S[t][t] < 0:
            row_negate(t)
        t += 1

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            a, b = S[i][i], S[i + 1][i + 1]
            if a != 0 and b % a != 0:
                # fold column i+1 into column i; one xgcd row step fixes it
                col_add(i + 1, i, 1)
                row_clear(i, i + 1)
                if S[i][i] < 0:
                    row_negate(i)
                if S[i][i + 1]:
                    col_add(i, i + 1, -(S[i][i + 1] // S[i][i]))
                if S[i + 1][i + 1] < 0:
                    row_negate(i + 1)
                changed = True
    rank = sum(1 for i in range(t) if S[i][i] != 0)
    return SmithForm(U=U, Uinv=Uinv, V=V, S=S, rank=rank)


def kernel_basis(A):
    """Basis of the integer kernel {x : A x = 0}, as a list of tuples."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [tuple(row) for row in identity(n)]
    sf = smith_normal_form(A)
    return [tuple(row[j] for row in sf.V) for j in range(sf.rank, n)]


def solve_integer(A, b):
    """One integer solution x of A x = b, or None if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    sf = smith_normal_form(A)
    c = mat_vec(sf.U, b)
    y = [0] * n
    for i in range(m):
        d = sf.S[i][i] if i < min(m, n) else 0
        if d == 0:
            if i >= n or c[i] != 0:
                if c[i] != 0:
                    return None
            continue
        if c[i] % d != 0:
            return None
        y[i] = c[i] // d
    return mat_vec(sf.V, y)


def lattice_basis(vectors, dim):
    """Basis of the lattice generated by integer vectors (row-HNF style)."""
    if not vectors:
        return []
    rows = [list(v) for v in vectors]
    basis = []
    col = 0
    r = 0
    while col < dim and r < len(rows):
        # gcd-eliminate column col among rows r..
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        again = True
        while again:
            again = False
            for i in range(r + 1, len(rows)):
                if rows[i][col] == 0:
                    continue
                if abs(rows[i][col]) < abs(rows[r][col]):
                    rows[r], rows[i] = rows[i], rows[r]
                q = rows[i][col] // rows[r][col]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                if rows[i][col] != 0:
                    again = True
        if rows[r][col] < 0:
            rows[r] = [-a for a in rows[r]]
        r += 1
        col += 1
    for i in range(r):
        basis.append(tuple(rows[i]))
    return basis


def rank(A):
    """Exact rank of an integer matrix.

    Sparse elimination with unit pivots (exact over Z, no division) while
    they exist; any leftover block without a unit entry is handed to the
    dense fraction-free routine.
    """
    rows = {}
    col_rows = {}
    for i, row in enumerate(A):
        d = {j: x for j, x in enumerate(row) if x}
        if d:
            rows[i] = d
            for j in d:
                col_rows.setdefault(j, set()).add(i)
    r = 0
    while rows:
        # unit pivot in the sparsest column that has one
        best = None
        for j, owners in col_rows.items():
            units = [i for i in owners if abs(rows[i][j]) == 1]
            if units and (best is None or len(owners) < best[2]):
                best = (units[0], j, len(owners))
        if best is None:
            break
        pi, pj, _ = best
        prow = rows.pop(pi)
        for j in prow:
            col_rows[j].discard(pi)
            if not col_rows[j]:
                del col_rows[j]
        piv = prow[pj]
        for i in list(col_rows.get(pj, ())):
            row = rows[i]
            f = row[pj] * piv  # piv is +-1, so f / piv = f * piv
            for j, x in prow.items():
                y = row.get(j, 0) - f * x
                if y:
                    row[j] = y
                    col_rows.setdefault(j, set()).add(i)
                elif j in row:
                    del row[j]
                    col_rows[j].discard(i)
                    if not col_rows[j]:
                        del col_rows[j]
            if not row:
                del rows[i]
        r += 1
    if not rows:
        return r
    live_cols = sorted(col_rows)
    pos = {j: k for k, j in enumerate(live_cols)}
    dense = []
    for row in rows.values():
        out = [0] * len(live_cols)
        for j, x in row.items():
            out[pos[j]] = x
        dense.append(out)
    return r + _dense_rank(dense)


def _dense_rank(A):
    """Exact rank of an integer matrix via fraction-free elimination."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return 0
    M = mat_copy(A)
    r = 0
    prev = 1
    for col in range(n):
        piv = None
        # prefer unit pivots to keep entries small
        for i in range(r, m):
            if abs(M[i][col]) == 1:
                piv = i
                break
        if piv is None:
            for i in range(r, m):
                if M[i][col] != 0:
                    piv = i
                    break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        for i in range(r + 1, m):
            Mi, Mr = M[i], M[r]
            f = Mi[col]
            for j in range(col, n):
                Mi[j] = (p * Mi[j] - f * Mr[j]) // prev
        prev = p
        r += 1
        if r == m:
            break
    return r


# ---------------------------------------------------------------------------
# rational helpers


def rational_mat_inverse(A):
    """Inverse of a square matrix over the rationals (Fraction entries)."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise LinAlgError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [row[n:] for row in M]


def left_pseudo_inverse(B):
    """(B^T B)^{-1} B^T for a full-column-rank integer matrix, exact."""
    Bt = transpose(B)
    G = mat_mul(Bt, B)
    Ginv = rational_mat_inverse(G)
    return mat_mul(Ginv, Bt)


# ---------------------------------------------------------------------------
# cokernel


class CokernelForm:
    """The quotient Z^m / (column span of A), with canonical coset reps.

    canonical(v) returns an idempotent representative of v's coset; two
    vectors have equal canonical forms iff they differ by a column
    combination of A.
    """

    def __init__(self, A, m=None):
        if m is None:
            m = len(A)
        self.m = m
        ncols = len(A[0]) if A else 0
        if not A or ncols == 0:
            self._U = identity(m)
            self._Uinv = identity(m)
            self._diag = [0] * m
        else:
            sf = smith_normal_form(A)
            self._U = sf.U
            self._Uinv = sf.Uinv
            d = []
            for i in range(m):
                if i < min(m, ncols):
                    d.append(sf.S[i][i])
                else:
                    d.append(0)
            self._diag = d
        self.invariant_factors = [d for d in self._diag if d not in (0, 1)]
        self.free_rank = sum(1 for d in self._diag if d == 0)

    def _reduce(self, v):
        y = list(mat_vec(self._U, v))
        for i, d in enumerate(self._diag):
            if d == 1:
                y[i] = 0
            elif d > 1:
                y[i] %= d
        return y

    def canonical(self, v):
        return mat_vec(self._Uinv, self._reduce(v))

    def is_trivial_class(self, v):
        return all(a == 0 for a in self._reduce(v))

    def same_class(self, v, w):
        return self._reduce(v) == self._reduce(w)

    @property
    def order(self):
        """Order of the quotient group, or None if infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def describe(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"
