"""Reconstruction of the torus tiling of a three-dimensional algebra.

The lattice M embeds into Z^d by pairing with the rays; after a basis
change putting the Gorenstein covector last, the rational left inverse
f = (B^t B)^{-1} B^t projects divisor vectors to M-coordinates, and its
first two rows f' land in the plane.  Vertices are placed at f' of the
divisor lifts, each arrow becomes a segment translating by f'(div(a)),
and each superpotential term traces a polygon; the result is a tiling of
the torus R^2 / Z^2 exactly when the algebra comes from a dimer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .intlinalg import (
    identity,
    mat_mul,
    mat_vec,
    rational_mat_inverse,
    smith_normal_form,
    solve_integer,
    transpose,
    vadd,
    vsub,
)


class TilingError(ValueError):
    pass


def _complete_to_basis(z):
    """A basis of Z^n whose last vector is the primitive vector z."""
    n = len(z)
    col = [[x] for x in z]
    sf = smith_normal_form(col)
    if sf.S[0][0] not in (1, -1):
        raise TilingError("covector is not primitive")
    # U (A V) = S with V = [v], so U . (v z) = e1 and z is the first
    # column of U^{-1} up to the sign v
    v = sf.V[0][0]
    inv = rational_mat_inverse(sf.U)
    cols = []
    for j in range(n):
        c = tuple(int(inv[i][j]) * (v if j == 0 else 1) for i in range(n))
        cols.append(c)
    basis = cols[1:] + [cols[0]]
    if basis[-1] != tuple(z):
        raise TilingError("basis completion failed (bug)")
    return basis


@dataclass
class ProjectionData:
    m_basis: list   # basis vectors of M, Gorenstein covector last
    B: list         # d x n matrix of M -> Z^d in that basis
    f: list         # n x d rational left inverse of B
    fprime: list    # first two rows of f
    ray_order: list  # ray indices sorted cyclically by angle of f'(chi_rho)

    def project(self, v):
        return tuple(sum(row[k] * v[k] for k in range(len(v)))
                     for row in self.fprime)


def _angle_cmp(a, b):
    def half(p):
        x, y = p
        return 0 if y > 0 or (y == 0 and x > 0) else 1
    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def projection_maps(X, m_basis=None):
    """Exact rational projection data for a Gorenstein threefold."""
    if X.n != 3:
        raise TilingError("tiling reconstruction needs a threefold")
    z = tuple(X.gorenstein_covector)
    if m_basis is None:
        basis = _complete_to_basis(z)
    else:
        basis = [tuple(v) for v in m_basis]
        U = [[basis[j][i] for j in range(3)] for i in range(3)]
        det = (U[0][0] * (U[1][1] * U[2][2] - U[1][2] * U[2][1])
               - U[0][1] * (U[1][0] * U[2][2] - U[1][2] * U[2][0])
               + U[0][2] * (U[1][0] * U[2][1] - U[1][1] * U[2][0]))
        if det not in (1, -1):
            raise TilingError("supplied M-basis is not unimodular")
        if basis[-1] != z:
            raise TilingError(
                f"last basis vector must be the Gorenstein covector {z}")
    B = [[sum(m[k] * ray[k] for k in range(3)) for m in basis]
         for ray in X.rays]
    BtB = mat_mul(transpose(B), B)
    inv = rational_mat_inverse([[Fraction(x) for x in row] for row in BtB])
    f = mat_mul(inv, [[Fraction(x) for x in row] for row in transpose(B)])
    check = mat_mul(f, [[Fraction(x) for x in row] for row in B])
    if check != [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]:
        raise TilingError("projection is not a left inverse of B (bug)")
    fprime = [f[0], f[1]]
    cols = [tuple(fprime[i][rho] for i in range(2)) for rho in range(X.d)]
    for c in cols:
        if c == (0, 0):
            raise TilingError("a ray label projects to the origin")
    order = sorted(range(X.d), key=cmp_to_key(
        lambda i, j: _angle_cmp(cols[i], cols[j])))
    return ProjectionData(m_basis=basis, B=B, f=f, fprime=fprime,
                          ray_order=order)


@dataclass
class Face:
    term: tuple        # arrow ids, first applied first
    points: list       # polygon corners, term[k] runs points[k] -> points[k+1]
    area: Fraction     # signed (positive = anticlockwise)


@dataclass
class Tiling:
    Q: object
    W: object
    proj: ProjectionData
    lifts: list      # divisor lift of each vertex in Z^d
    vertices: list   # rational planar position per quiver vertex
    edges: list      # (arrow id, start point, edge vector)
    faces: list


def dimer_reconstruct(Q, W, proj=None, lifts=None):
    """Embed the quiver and superpotential on the torus R^2 / Z^2.

    Vertex lifts default to the spanning-tree lifts of the quiver; an
    explicit list (one divisor vector per vertex, the first zero) may be
    supplied instead, and is checked to be a lift: u_{h(a)} - u_{t(a)}
    must differ from div(a) by an element of B(M) for every arrow.
    """
    if proj is None:
        if Q.X is None:
            raise TilingError("no variety attached to the quiver")
        proj = projection_maps(Q.X)
    if lifts is None:
        lifts = Q.preferred_lifts()
    else:
        lifts = [tuple(u) for u in lifts]
        if len(lifts) != Q.n_vertices:
            raise TilingError("one lift per vertex is required")
        for a in Q.arrows:
            gap = vsub(vsub(lifts[a.head], lifts[a.tail]), a.label)
            if solve_integer(proj.B, gap) is None:
                raise TilingError(
                    f"lifts are not compatible with {a.pretty()}")
    pos = [proj.project(u) for u in lifts]
    edges = []
    for a in Q.arrows:
        vec = proj.project(a.label)
        edges.append((a.idx, pos[a.tail], vec))
        # the head position must agree modulo the period lattice Z^2
        end = vadd(pos[a.tail], vec)
        gap = vsub(pos[a.head], end)
        if any(x.denominator != 1 for x in map(Fraction, gap)):
            raise TilingError(f"edge of {a.pretty()} misses its head vertex")
    faces = []
    for term in W.terms:
        start = Q.arrows[term[0]].tail
        pts = [pos[start]]
        for idx in term[:-1]:
            pts.append(vadd(pts[-1], proj.project(Q.arrows[idx].label)))
        closing = vadd(pts[-1], proj.project(Q.arrows[term[-1]].label))
        if closing != pts[0]:
            raise TilingError("superpotential term does not close a polygon")
        area = Fraction(0)
        for k in range(len(pts)):
            x1, y1 = pts[k]
            x2, y2 = pts[(k + 1) % len(pts)]
            area += Fraction(x1 * y2 - x2 * y1, 2)
        faces.append(Face(term=term, points=pts, area=area))
    return Tiling(Q=Q, W=W, proj=proj, lifts=list(lifts), vertices=pos,
                  edges=edges, faces=faces)


# ---------------------------------------------------------------------------
# exact planar verification


def _cross(o, a, b):
    return ((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _on_segment(p, a, b):
    """p lies on the closed segment ab (assuming collinear)."""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_conflict(p1, p2, q1, q2):
    """True when the segments meet anywhere except a shared endpoint."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 \
            and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    ends_p = (p1, p2)
    ends_q = (q1, q2)
    for p, d in ((p1, d1), (p2, d2)):
        if d == 0 and _on_segment(p, q1, q2) and p not in ends_q:
            return True
    for q, d in ((q1, d3), (q2, d4)):
        if d == 0 and _on_segment(q, p1, p2) and q not in ends_p:
            return True
    if d1 == d2 == d3 == d4 == 0:
        # collinear: sharing more than a point is a conflict
        hits = sum(1 for p in ends_p if _on_segment(p, q1, q2))
        hits += sum(1 for q in ends_q if _on_segment(q, p1, p2))
        shared = len(set(ends_p) & set(ends_q))
        if hits > 2 * shared:
            return True
    return False


def _reduce(point):
    """Translate by Z^2 so the point lies in the half-open unit square."""
    return tuple(x - (x.numerator // x.denominator) for x in map(Fraction, point))


@dataclass
class TilingReport:
    valid: bool
    nonconvex_faces: list     # term tuples
    crossings: list           # (arrow id, arrow id, translate)
    euler: int
    total_area: Fraction
    duplicate_vertices: list
    unbalanced_arrows: list   # arrows not in one face of each orientation

    def pretty(self, Q):
        if self.valid:
            return (f"tiling valid: Euler characteristic {self.euler}, "
                    f"total area {self.total_area}")
        lines = ["tiling INVALID"]
        for t in self.nonconvex_faces:
            lines.append(f"  non-convex face {Q.pretty_path(t)}")
        for i, j, t in self.crossings:
            lines.append(
                f"  edges of {Q.arrows[i].pretty()} and {Q.arrows[j].pretty()} "
                f"cross at a non-vertex (translate {t})")
        if self.euler != 0:
            lines.append(f"  Euler characteristic {self.euler} != 0")
        if self.total_area != 1:
            lines.append(f"  faces cover area {self.total_area} != 1")
        for v, w in self.duplicate_vertices:
            lines.append(f"  vertices {v} and {w} coincide on the torus")
        for i in self.unbalanced_arrows:
            lines.append(
                f"  {Q.arrows[i].pretty()} does not separate one face of "
                "each orientation")
        return "\n".join(lines)


def verify_tiling(tiling):
    """Exact checks that the embedded data is a polygonal tiling:
    strictly convex faces with a coherent turning sign, no edge meeting
    another except at a shared vertex (tested over the 3 x 3 block of
    translates), zero Euler characteristic, and faces covering the
    fundamental domain once."""
    Q = tiling.Q
    nonconvex = []
    for face in tiling.faces:
        pts = face.points
        m = len(pts)
        sign = 1 if face.area > 0 else -1
        ok = face.area != 0
        for k in range(m):
            turn = _cross(pts[k], pts[(k + 1) % m], pts[(k + 2) % m])
            if turn == 0 or (turn > 0) != (sign > 0):
                ok = False
        if not ok:
            nonconvex.append(face.term)

    reduced = []
    for idx, start, vec in tiling.edges:
        s = _reduce(start)
        reduced.append((idx, s, vadd(s, vec)))
    crossings = []
    translates = [(Fraction(tx), Fraction(ty))
                  for tx in (-1, 0, 1) for ty in (-1, 0, 1)]
    for k1 in range(len(reduced)):
        i1, a1, b1 = reduced[k1]
        for k2 in range(k1, len(reduced)):
            i2, a2, b2 = reduced[k2]
            for t in translates:
                if k1 == k2 and t == (0, 0):
                    continue
                if _segments_conflict(a1, b1, vadd(a2, t), vadd(b2, t)):
                    crossings.append((i1, i2, (int(t[0]), int(t[1]))))
    crossings = sorted(set(crossings))

    euler = Q.n_vertices - len(Q.arrows) + len(tiling.faces)
    total_area = sum(abs(f.area) for f in tiling.faces)

    duplicates = []
    seen = {}
    for v, p in enumerate(tiling.vertices):
        key = _reduce(p)
        if key in seen:
            duplicates.append((seen[key], v))
        else:
            seen[key] = v

    orientation_count = {a.idx: [0, 0] for a in Q.arrows}
    for face in tiling.faces:
        slot = 0 if face.area > 0 else 1
        for idx in face.term:
            orientation_count[idx][slot] += 1
    unbalanced = sorted(i for i, c in orientation_count.items() if c != [1, 1])

    valid = (not nonconvex and not crossings and euler == 0
             and total_area == 1 and not duplicates and not unbalanced)
    return TilingReport(valid=valid, nonconvex_faces=nonconvex,
                        crossings=crossings, euler=euler,
                        total_area=total_area,
                        duplicate_vertices=duplicates,
                        unbalanced_arrows=unbalanced)
