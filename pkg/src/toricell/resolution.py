"""Cellular bimodule resolutions over a toric cell complex.

Each k-cell eta contributes the projective bimodule A.e_{h(eta)} (x) eta
(x) e_{t(eta)}.A; the differential sends eta to the signed sum over its
facets of (left class) . facet . (right class).  Graded pieces are the
finite slices at a fixed (source vertex, target vertex, divisor), where
the differentials become integer matrices and exactness is a rank
computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import ComplexError, mckay_complex
from .intlinalg import is_zero, rank, vadd, vsub


class ResolutionError(ValueError):
    pass


class CellularResolution:
    """A toric cell complex with a fixed incidence sign assignment."""

    def __init__(self, complex_, signs):
        self.complex = complex_
        self.Q = complex_.Q
        self.n = complex_.n
        self.signs = signs
        self.by_parent_dim = {k: [] for k in range(1, self.n + 1)}
        for inc in complex_.incidences:
            k = complex_.cells[inc.parent].dim
            self.by_parent_dim[k].append(inc)

    def generator_counts(self):
        return self.complex.counts()


def build_resolution(complex_, signs=None):
    if signs is None:
        sol = complex_.solve_incidence()
        if not sol.feasible:
            raise ResolutionError(
                f"no incidence function exists: {sol.certificate}")
        signs = sol.signs
    else:
        complex_.verify_signs(signs)
    return CellularResolution(complex_, signs)


def verify_square_zero(res):
    """d.d = 0 at the symbolic level: two-step routes grouped by
    (parent, grandchild, total left class, total right class) must have
    cancelling signs."""
    for key, routes in res.complex.composite_groups().items():
        total = sum(res.signs[i1] * res.signs[i2] for i1, i2 in routes)
        if total != 0:
            raise ResolutionError(f"d.d != 0 on flag {key}")
    return True


def verify_minimality(res):
    """The resolution is minimal iff no differential entry is a unit,
    i.e. no incidence has both derivative classes trivial."""
    bad = []
    for inc in res.complex.incidences:
        if is_zero(inc.left) and is_zero(inc.right):
            bad.append(inc)
    return MinimalityReport(minimal=not bad, unit_incidences=bad)


@dataclass
class MinimalityReport:
    minimal: bool
    unit_incidences: list


# ---------------------------------------------------------------------------
# graded pieces


def _splits(rem):
    """All (dL, dR) with dL + dR = rem, componentwise nonnegative."""
    ranges = [range(r + 1) for r in rem]
    for dL in itertools.product(*ranges):
        yield dL, vsub(rem, dL)


@dataclass
class GradedPiece:
    """The slice of the resolution at target vertex s, source vertex t,
    divisor dvec: bases of each P_k, the differential matrices, the
    augmentation row, and the dimension of the algebra piece."""

    s: int
    t: int
    dvec: tuple
    bases: list       # bases[k] = list of (cell id, dL, dR)
    matrices: list    # matrices[k] = d_k as rows, k = 1..n; matrices[0] = aug
    dim_A: int

    def dims(self):
        return [len(b) for b in self.bases]


def graded_piece(res, s, t, dvec):
    """Basis triples (eta, dL, dR) with dL + div(eta) + dR = dvec, a path
    of class dL from h(eta) to s and one of class dR from t to t(eta)."""
    Q = res.Q
    dvec = tuple(dvec)
    # a basis triple composes to a path from t to s of class dvec, so the
    # piece is zero whenever no such path exists
    if not Q.path_exists(t, s, dvec):
        empty = [[] for _ in range(res.n + 1)]
        return GradedPiece(s=s, t=t, dvec=dvec, bases=empty,
                           matrices=[[[]] for _ in range(res.n + 1)], dim_A=0)
    bases = []
    index = []
    for k in range(res.n + 1):
        basis = []
        for c in res.complex.by_dim[k]:
            rem = vsub(dvec, c.divisor)
            if any(x < 0 for x in rem):
                continue
            for dL, dR in _splits(rem):
                if Q.path_exists(c.head, s, dL) and Q.path_exists(t, c.tail, dR):
                    basis.append((c.id, dL, dR))
        bases.append(basis)
        index.append({b: i for i, b in enumerate(basis)})
    dim_A = 1 if Q.path_exists(t, s, dvec) else 0
    matrices = [[[1] * len(bases[0])] if dim_A else [[]]]
    for k in range(1, res.n + 1):
        rows = [[0] * len(bases[k]) for _ in range(len(bases[k - 1]))]
        for j, (cid, dL, dR) in enumerate(bases[k]):
            for inc in res.complex.facet_incidences(cid):
                target = (inc.facet, vadd(dL, inc.left), vadd(dR, inc.right))
                i = index[k - 1].get(target)
                if i is None:
                    raise ResolutionError(
                        f"differential leaves the graded piece at {target}")
                rows[i][j] += res.signs[inc]
        matrices.append(rows)
    return GradedPiece(s=s, t=t, dvec=dvec, bases=bases, matrices=matrices,
                       dim_A=dim_A)


def _mat_mul_zero(A, B):
    if not A or not A[0] or not B or not B[0]:
        return True
    for row in A:
        for j in range(len(B[0])):
            if sum(row[k] * B[k][j] for k in range(len(B))) != 0:
                return False
    return True


def piece_exactness(res, piece):
    """Rank identities certifying exactness of one graded piece.

    With d_0 the augmentation and d_{n+1} = 0, the complex is exact iff
    rank d_k + rank d_{k+1} = dim P_k for 0 <= k <= n, reading
    rank d_0 = dim of the algebra piece.
    """
    dims = piece.dims()
    ranks = [rank(m) if m and m[0] else 0 for m in piece.matrices]
    failures = []
    if ranks[0] != piece.dim_A:
        failures.append(("augmentation", ranks[0], piece.dim_A, None))
    for k in range(res.n + 1):
        r_out = ranks[k]
        r_in = ranks[k + 1] if k + 1 <= res.n else 0
        if r_out + r_in != dims[k]:
            failures.append((k, r_out, r_in, dims[k]))
    euler = sum((-1) ** k * d for k, d in enumerate(dims))
    if not failures and euler != piece.dim_A:
        failures.append(("euler", euler, piece.dim_A, None))
    return failures


def verify_piece(res, s, t, dvec, check_products=False):
    piece = graded_piece(res, s, t, dvec)
    if check_products:
        for k in range(1, res.n + 1):
            if not _mat_mul_zero(piece.matrices[k - 1], piece.matrices[k]):
                return [(f"d{k - 1}.d{k}", None, None, None)], piece
    return piece_exactness(res, piece), piece


@dataclass
class ExactnessReport:
    exact: bool
    bound: tuple
    pieces_checked: int
    failures: list  # (s, t, dvec, detail)

    def pretty(self):
        if self.exact:
            return (f"exact in all {self.pieces_checked} graded pieces "
                    f"with divisor <= {self.bound}")
        lines = [f"exactness FAILED in {len(self.failures)} pieces:"]
        for s, t, dvec, detail in self.failures[:20]:
            lines.append(f"  ({s}, {t}, {dvec}): {detail}")
        return "\n".join(lines)


def _check_task(args):
    s, t, dvec = args
    failures, _ = verify_piece(_WORKER_RES, s, t, dvec,
                               check_products=_WORKER_PRODUCTS)
    return (s, t, dvec, failures)


_WORKER_RES = None
_WORKER_PRODUCTS = False


def _worker_init(res, check_products):
    global _WORKER_RES, _WORKER_PRODUCTS
    _WORKER_RES = res
    _WORKER_PRODUCTS = check_products


def verify_exactness(res, bound, jobs=1, check_products=False, pairs=None):
    """Check the rank identities in every graded piece with divisor
    componentwise <= bound (an integer or a vector)."""
    Q = res.Q
    if isinstance(bound, int):
        bound = (bound,) * Q.d
    dvecs = list(itertools.product(*[range(b + 1) for b in bound]))
    if pairs is None:
        pairs = [(s, t) for s in range(Q.n_vertices)
                 for t in range(Q.n_vertices)]
    tasks = [(s, t, dvec) for s, t in pairs for dvec in dvecs]
    failures = []
    if jobs > 1:
        import multiprocessing
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs, initializer=_worker_init,
                      initargs=(res, check_products)) as pool:
            for s, t, dvec, fail in pool.imap_unordered(
                    _check_task, tasks, chunksize=64):
                if fail:
                    failures.append((s, t, dvec, fail))
    else:
        for s, t, dvec in tasks:
            fail, _ = verify_piece(res, s, t, dvec,
                                   check_products=check_products)
            if fail:
                failures.append((s, t, dvec, fail))
    failures.sort()
    return ExactnessReport(exact=not failures, bound=bound,
                           pieces_checked=len(tasks), failures=failures)


# ---------------------------------------------------------------------------
# closed-form signs for abelian quotients


def mckay_sign_crosscheck(group):
    """Compare the solver's incidence function on the hypercube complex of
    an abelian quotient with the closed-form (-1)^nu signs.

    Both satisfy the cancellation parity, so they differ by a global sign
    function delta on cells: solver(inc) = delta(parent) * delta(facet) *
    closed_form(inc).  The delta system is solved over GF(2) and verified.
    """
    complex_ = mckay_complex(group)
    explicit = complex_.explicit_signs
    complex_.verify_signs(explicit)
    sol = complex_.solve_incidence()
    if not sol.feasible:
        raise ResolutionError("solver found no incidence function (bug)")
    # delta per cell: x_p + x_f = 0 or 1 according to sign agreement
    n_cells = len(complex_.cells)
    equations = []
    for inc in complex_.incidences:
        rhs = 0 if sol.signs[inc] == explicit[inc] else 1
        mask = (1 << inc.parent) ^ (1 << inc.facet)
        equations.append((mask, rhs, (inc.parent, inc.facet)))
    from .complexes import _solve_gf2
    assignment, certificate = _solve_gf2(equations, n_cells)
    if assignment is None:
        raise ResolutionError(
            f"solver and closed-form signs differ by no global sign: "
            f"{certificate}")
    delta = [(-1) ** x for x in assignment]
    for inc in complex_.incidences:
        if sol.signs[inc] != delta[inc.parent] * delta[inc.facet] * explicit[inc]:
            raise ResolutionError("global sign verification failed (bug)")
    # the closed-form resolution and the solver resolution must have the
    # same graded ranks
    res_a = build_resolution(complex_, signs=explicit)
    res_b = CellularResolution(complex_, sol.signs)
    verify_square_zero(res_a)
    verify_square_zero(res_b)
    for s in range(complex_.Q.n_vertices):
        for t in range(complex_.Q.n_vertices):
            pa = graded_piece(res_a, s, t, complex_.Q.ones)
            pb = graded_piece(res_b, s, t, complex_.Q.ones)
            ra = [rank(m) if m and m[0] else 0 for m in pa.matrices]
            rb = [rank(m) if m and m[0] else 0 for m in pb.matrices]
            if ra != rb:
                raise ResolutionError(
                    f"graded ranks differ at ({s}, {t}): {ra} vs {rb}")
    return delta
