"""The arrow lattice map pi = (inc, div), its cone, and perfect matchings.

pi sends the basis vector of an arrow a to (chi_h(a) - chi_t(a), div(a)) in
Z^{Q_0} + Z^d.  Z(Q) is the image lattice; C is the cone of functionals on
Z(Q) that are nonnegative on every arrow image.  A perfect matching is the
primitive point on a one-dimensional face of C, and the extremal matching
attached to a ray rho of sigma has values(a) = multiplicity of x_rho in the
label of a.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import ConeError, dual_cone_rays
from .intlinalg import (
    dot,
    from_columns,
    is_zero,
    lattice_basis,
    leq,
    primitive,
    rank,
    solve_integer,
    vadd,
    vsub,
)


class MatchingError(ValueError):
    pass


class PiMap:
    """The map pi with a chosen basis of the image lattice Z(Q)."""

    def __init__(self, Q):
        self.Q = Q
        nv, d = Q.n_vertices, Q.d
        self.ambient = nv + d
        cols = []
        for a in Q.arrows:
            inc = [0] * nv
            inc[a.head] += 1
            inc[a.tail] -= 1
            cols.append(tuple(inc) + tuple(a.label))
        self.columns = cols
        self.basis = lattice_basis(cols, self.ambient)
        self.rank = len(self.basis)
        mat = from_columns(self.basis, self.ambient)
        coords = []
        for c in cols:
            t = solve_integer(mat, c)
            if t is None:
                raise MatchingError("arrow image outside the lattice basis (bug)")
            coords.append(tuple(t))
        self.coords = coords
        if Q.X is not None and self.rank != Q.X.n + nv - 1:
            raise MatchingError(
                f"rank of Z(Q) is {self.rank}, expected n + r = {Q.X.n + nv - 1}")

    def pair(self, functional, arrow_idx):
        """Value of a dual-coordinate functional on pi(chi_a)."""
        return dot(functional, self.coords[arrow_idx])


@dataclass(frozen=True)
class PerfectMatching:
    """A primitive functional spanning a one-dimensional face of C."""

    functional: tuple  # coordinates in the dual basis of the Z(Q) basis
    values: tuple      # value on pi(chi_a), per arrow id
    extremal_ray: object = None  # ray index of sigma, when extremal

    @property
    def support(self):
        return frozenset(i for i, v in enumerate(self.values) if v > 0)

    def is_extremal(self):
        return self.extremal_ray is not None


def build_pi(Q):
    return PiMap(Q)


def _values(pi, w):
    return tuple(pi.pair(w, a.idx) for a in pi.Q.arrows)


def extremal_matching(Q, rho, pi=None):
    """The matching Pi_rho with values(a) = <chi_rho, div(a)>, certified.

    The certificate that the functional spans a one-dimensional face of C:
    it is primitive, nonnegative on every arrow image, and the arrow images
    it annihilates span a hyperplane in Z(Q).
    """
    if pi is None:
        pi = build_pi(Q)
    if not 0 <= rho < Q.d:
        raise MatchingError("ray index out of range")
    vals = tuple(a.label[rho] for a in Q.arrows)
    A = [list(c) for c in pi.coords]
    w = solve_integer(A, vals)
    if w is None:
        raise MatchingError("extremal functional is not integral on Z(Q) (bug)")
    w = tuple(w)
    if primitive(w) != w:
        raise MatchingError(f"extremal matching for ray {rho} is not primitive")
    tight = [pi.coords[i] for i, v in enumerate(vals) if v == 0]
    if rank([list(t) for t in tight]) != pi.rank - 1:
        raise MatchingError(
            f"functional of ray {rho} does not span a one-dimensional face of C")
    return PerfectMatching(functional=w, values=vals, extremal_ray=rho)


def perfect_matchings(Q, pi=None):
    """All perfect matchings of Q: the rays of C, with extremal ones tagged."""
    if pi is None:
        pi = build_pi(Q)
    gens = [list(c) for c in pi.coords]
    rays = dual_cone_rays(gens)
    extremal = {}
    for rho in range(Q.d):
        m = extremal_matching(Q, rho, pi=pi)
        extremal[m.functional] = rho
    out = []
    for w in rays:
        w = tuple(w)
        out.append(PerfectMatching(functional=w, values=_values(pi, w),
                                   extremal_ray=extremal.get(w)))
    found = {m.functional for m in out}
    missing = [rho for w, rho in extremal.items() if w not in found]
    if missing:
        raise MatchingError(f"extremal matchings for rays {missing} are not rays of C")
    return out


# ---------------------------------------------------------------------------
# the weight-zero slice of N(Q)


def simple_cycles(Q):
    """Simple directed cycles of Q as arrow-id tuples, least vertex first."""
    out = []
    for root in range(Q.n_vertices):
        path = []

        def dfs(v, visited):
            for a in Q.out[v]:
                if a.head == root:
                    out.append(tuple(path + [a.idx]))
                elif a.head > root and a.head not in visited:
                    path.append(a.idx)
                    dfs(a.head, visited | {a.head})
                    path.pop()

        dfs(root, frozenset((root,)))
    return out


def _minimal_generators(divisors):
    """Elements of the set not expressible as a sum of two nonzero semigroup
    elements, the semigroup being generated by the set itself."""
    gens = sorted(set(divisors))
    memo = {}

    def in_semigroup(v):
        if is_zero(v):
            return True
        hit = memo.get(v)
        if hit is not None:
            return hit
        memo[v] = False
        for g in gens:
            if not is_zero(g) and leq(g, v) and in_semigroup(vsub(v, g)):
                memo[v] = True
                break
        return memo[v]

    out = []
    for d in gens:
        reducible = False
        for g in gens:
            if not is_zero(g) and g != d and leq(g, d):
                rest = vsub(d, g)
                if not is_zero(rest) and in_semigroup(rest):
                    reducible = True
                    break
        if not reducible:
            out.append(d)
    return out


@dataclass
class WeightZeroReport:
    matches: bool
    cycle_generators: list   # minimal generators of div(N(Q) ∩ ker pi_1)
    semigroup_basis: list    # Hilbert basis of N^d ∩ ker(deg)

    def pretty(self):
        if self.matches:
            return ("weight-zero slice check: the cycle semigroup generators "
                    "match the Hilbert basis of the degree-zero semigroup")
        return ("weight-zero slice check FAILED\n"
                f"  cycle generators: {self.cycle_generators}\n"
                f"  degree-zero Hilbert basis: {self.semigroup_basis}")


def weight_zero_check(Q, X=None):
    """Compare the weight-zero slice of N(Q) with the section semigroup.

    The slice N(Q) ∩ ker(pi_1) is generated by the images of simple directed
    cycles, and its second projection should be the semigroup N^d ∩ ker(deg)
    with matching minimal generators.
    """
    if X is None:
        X = Q.X
    if X is None:
        raise MatchingError("no variety attached to the quiver")
    cycle_divs = [Q.path_div(c) for c in simple_cycles(Q)]
    gens = _minimal_generators(cycle_divs)
    hb = sorted(tuple(v) for v in X.section_semigroup_hilbert_basis())
    return WeightZeroReport(matches=gens == hb, cycle_generators=gens,
                            semigroup_basis=hb)


# ---------------------------------------------------------------------------
# dimer audit


@dataclass
class DimerAuditReport:
    passed: bool
    nonbinary: list   # (matching index, arrow id, value) with value outside {0,1}
    bad_terms: list   # (matching index, term, support arrows in term)

    def pretty(self, Q):
        if self.passed:
            return "dimer audit: all matchings are 0/1 and meet every term once"
        lines = ["dimer audit FAILED"]
        for k, a, v in self.nonbinary:
            lines.append(f"  matching {k}: value {v} on {Q.arrows[a].pretty()}")
        for k, term, hits in self.bad_terms:
            lines.append(
                f"  matching {k}: term {Q.pretty_path(term)} meets the support "
                f"in {len(hits)} arrows")
        return "\n".join(lines)


def dimer_matching_audit(Q, W, matchings):
    """Check the dimer-style properties of a list of perfect matchings:
    (a) all values lie in {0,1}; (b) every matching meets every term of W
    in exactly one arrow."""
    nonbinary = []
    bad_terms = []
    for k, m in enumerate(matchings):
        for a, v in enumerate(m.values):
            if v not in (0, 1):
                nonbinary.append((k, a, v))
        for term in W.terms:
            hits = [a for a in term if m.values[a] > 0]
            if len(hits) != 1:
                bad_terms.append((k, term, hits))
    return DimerAuditReport(passed=not nonbinary and not bad_terms,
                            nonbinary=nonbinary, bad_terms=bad_terms)
