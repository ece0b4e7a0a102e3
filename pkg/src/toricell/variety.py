"""Gorenstein affine toric varieties and collections of rank-one sheaves.

A variety is given by the primitive ray generators of a full-dimensional
pointed cone sigma in N = Z^n.  The class group is the cokernel of the
embedding M -> Z^d, u |-> (<u, v_rho>)_rho, whose matrix B has the rays as
rows.  Sections of Hom(E_i, E_j) are the minimal generators of the fiber
of the class difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cones import ConeError, FiberContext, RationalCone, fiber_generators, hilbert_basis
from .intlinalg import (
    CokernelForm,
    is_zero,
    mat_vec,
    primitive,
    rank,
    solve_integer,
    transpose,
    vadd,
    vsub,
)


class VarietyError(ValueError):
    pass


class GorensteinToricVariety:
    """Affine Gorenstein toric variety from primitive ray generators."""

    def __init__(self, rays):
        rays = [tuple(r) for r in rays]
        if not rays:
            raise VarietyError("no rays")
        n = len(rays[0])
        if any(len(r) != n for r in rays):
            raise VarietyError("rays of mixed dimension")
        if len(set(rays)) != len(rays):
            raise VarietyError("rays must be pairwise distinct")
        for r in rays:
            if is_zero(r) or primitive(r) != r:
                raise VarietyError(f"ray {r} is not primitive")
        cone = RationalCone(rays, n)
        if cone.dim != n:
            raise VarietyError("cone is not full-dimensional")
        if not cone.is_pointed:
            raise VarietyError("cone is not pointed (contains a line)")
        if sorted(cone.rays) != sorted(rays):
            raise VarietyError("input rays are not the extremal rays of their cone")
        self.rays = rays
        self.n = n
        self.d = len(rays)
        self.cone = cone
        # deg: Z^d -> Cl(X) = coker(B), B rows = rays
        self.B = [list(r) for r in rays]
        self.cl = CokernelForm(self.B, m=self.d)
        u = solve_integer(self.B, (1,) * self.d)
        if u is None:
            raise VarietyError("not Gorenstein: no covector with <u, v_rho> = 1 for all rays")
        self.gorenstein_covector = u
        self._fiber_ctx = None
        self._fiber_cache = {}

    # -- degrees ------------------------------------------------------------

    def divisor_class(self, v):
        """Canonical representative of the class of the divisor sum v in N^d."""
        return self.cl.canonical(v)

    def class_of_difference(self, vi, vj):
        """Class of E_j - E_i given divisor representatives."""
        return self.cl.canonical(vsub(vj, vi))

    @property
    def fiber_context(self):
        if self._fiber_ctx is None:
            self._fiber_ctx = FiberContext(self.B)
        return self._fiber_ctx

    def hom_sections(self, c):
        """Minimal generators of the fiber of the class (rep) c, sorted."""
        key = tuple(self.cl.canonical(c))
        if key not in self._fiber_cache:
            self._fiber_cache[key] = fiber_generators(self.fiber_context, key)
        return self._fiber_cache[key]

    def section_semigroup_hilbert_basis(self):
        """Hilbert basis of the degree-zero semigroup N^d ∩ ker(deg)."""
        return list(self.fiber_context.s0_hilbert)

    def dual_cone_hilbert_basis(self):
        """Hilbert basis of sigma-dual ∩ M, as covectors u in M = Z^n."""
        out = []
        for v in self.fiber_context.s0_hilbert:
            u = solve_integer(self.B, v)
            if u is None:
                raise VarietyError("degree-zero section without covector (bug)")
            out.append(tuple(u))
        return sorted(out)


@dataclass(frozen=True)
class WeilClass:
    """A divisor class: a chosen representative plus its canonical form."""

    representative: tuple
    canonical: tuple

    @staticmethod
    def of(X, v):
        return WeilClass(representative=tuple(v), canonical=tuple(X.divisor_class(v)))


class Collection:
    """An ordered list of pairwise distinct divisor classes, first trivial."""

    def __init__(self, X, representatives):
        self.X = X
        self.classes = [WeilClass.of(X, v) for v in representatives]
        if not self.classes:
            raise VarietyError("empty collection")
        if not is_zero(self.classes[0].canonical):
            raise VarietyError("collection must start with the trivial class")
        seen = set()
        for c in self.classes:
            if c.canonical in seen:
                raise VarietyError("collection classes must be pairwise distinct")
            seen.add(c.canonical)

    def __len__(self):
        return len(self.classes)

    def difference(self, i, j):
        """Canonical class of E_j - E_i."""
        return self.X.class_of_difference(
            self.classes[i].representative, self.classes[j].representative)


# ---------------------------------------------------------------------------
# abelian quotient singularities


@dataclass(frozen=True)
class AbelianGroupData:
    """A finite abelian subgroup of the diagonal torus of GL(n)."""

    generators: tuple  # tuple of (order, weights) pairs
    n: int

    @staticmethod
    def cyclic(order, weights):
        return AbelianGroupData(generators=((order, tuple(weights)),), n=len(weights))

    def elements(self):
        """All group elements as exponent tuples over the generators."""
        ranges = [range(g[0]) for g in self.generators]
        return list(product(*ranges))

    def element_action(self, exponents):
        """Diagonal action of an element, as n fractions mod 1."""
        act = [Fraction(0)] * self.n
        for (order, weights), e in zip(self.generators, exponents):
            for i in range(self.n):
                act[i] += Fraction(e * weights[i], order)
        return tuple(x % 1 for x in act)

    def order(self):
        k = 1
        for order, _ in self.generators:
            k *= order
        return k

    def is_small(self):
        """True if the group contains no quasireflection."""
        for e in self.elements():
            act = self.element_action(e)
            nontrivial = sum(1 for f in act if f != 0)
            if nontrivial == 1:
                return False
        return True

    def in_sl(self):
        for order, weights in self.generators:
            if sum(weights) % order != 0:
                return False
        return True

    def character(self, v):
        """Character of a monomial exponent vector, as residues per generator."""
        return tuple(sum(w * x for w, x in zip(weights, v)) % order
                     for order, weights in self.generators)


def mckay_toric_data(group):
    """Toric data (variety, collection) for X = A^n / G, G abelian in SL(n).

    M is the lattice of G-invariant characters inside Z^n; the rays of the
    quotient cone are the images of the coordinate functionals, i.e. the
    rows of a basis matrix of M.  The collection consists of one divisor
    class per character of G.
    """
    if not group.in_sl():
        raise VarietyError("group is not a subgroup of SL(n)")
    if not group.is_small():
        raise VarietyError("group contains quasireflections")
    n = group.n
    # M = kernel of the character map Z^n -> prod Z/o_k
    rows = []
    aug = []
    for order, weights in group.generators:
        rows.append(list(weights))
        aug.append(order)
    # solutions of W u = diag(o) y: kernel of [W | -diag(o)] projected to u
    k = len(rows)
    big = [rows[i] + [-(aug[i] if i == j else 0) for j in range(k)] for i in range(k)]
    from .intlinalg import kernel_basis, lattice_basis
    kb = [v[:n] for v in kernel_basis(big)]
    basis = lattice_basis(kb, n)
    if len(basis) != n:
        raise VarietyError("invariant lattice has unexpected rank (bug)")
    # columns of B_M are the basis vectors; rays are the rows of B_M
    B_M = [[basis[j][i] for j in range(n)] for i in range(n)]
    rays = [tuple(row) for row in B_M]
    for r in rays:
        if primitive(r) != r:
            raise VarietyError("non-primitive ray; group not small (bug)")
    X = GorensteinToricVariety(rays)
    # one representative divisor per character, smallest total degree first
    reps = {}
    target = group.order()
    total = 0
    while len(reps) < target:
        for v in _compositions(total, n):
            ch = group.character(v)
            if ch not in reps:
                reps[ch] = v
        total += 1
        if total > 16 * target:
            raise VarietyError("could not reach all characters (bug)")
    # identity character first, then by representative degree, then lex
    ordered = sorted(reps.values(), key=lambda v: (sum(v), v))
    collection = Collection(X, ordered)
    return X, collection


def _compositions(total, n):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, n - 1):
            yield (head,) + rest
