"""Toric cell complexes: cells with head, tail and divisor data, facet
incidences carrying left and right derivative classes, the duality
involution tau, and the parity solver for incidence functions.

Cells are combinatorial: a payload (vertex, arrow, relation, dual arrow,
dual vertex, or hypercube face) plus head vertex, tail vertex and divisor.
A facet incidence stores the divisors of the left class (a path from the
head of the facet to the head of the parent) and the right class (a path
from the tail of the parent to the tail of the facet).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intlinalg import is_zero, leq, vadd, vsub
from .quiver import build_quiver
from .superpotential import cyclic_canonical, derivative, relations
from .variety import mckay_toric_data


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    head: int
    tail: int
    divisor: tuple
    payload: tuple

    def describe(self, Q=None):
        kind = self.payload[0]
        if kind == "vertex":
            return f"vertex {self.payload[1]}"
        if kind == "arrow":
            return f"arrow a{self.payload[1] + 1}"
        if kind == "dual_arrow":
            return f"dual of a{self.payload[1] + 1}"
        if kind == "dual_vertex":
            return f"dual of vertex {self.payload[1]}"
        if kind == "relation":
            r = self.payload[1]
            if Q is not None:
                return f"relation {r.pretty(Q)}"
            return "relation"
        if kind == "cube":
            return f"cube face ({self.payload[1]}, {set(self.payload[2]) or '{}'})"
        return kind


@dataclass(frozen=True)
class FacetIncidence:
    parent: int
    facet: int
    left: tuple   # divisor of the left derivative class
    right: tuple  # divisor of the right derivative class


class ToricCellComplex:
    def __init__(self, Q, n, cells, incidences):
        self.Q = Q
        self.n = n
        self.cells = cells
        self.by_dim = {k: [c for c in cells if c.dim == k] for k in range(n + 1)}
        self.incidences = []
        self._facets_of = {c.id: [] for c in cells}
        seen = set()
        for inc in incidences:
            if inc in seen:
                continue
            seen.add(inc)
            self._validate(inc)
            self.incidences.append(inc)
            self._facets_of[inc.parent].append(inc)
        self._tau = None

    def _validate(self, inc):
        p, f = self.cells[inc.parent], self.cells[inc.facet]
        if f.dim != p.dim - 1:
            raise ComplexError("facet is not of codimension one")
        if vadd(vadd(inc.left, f.divisor), inc.right) != p.divisor:
            raise ComplexError(
                f"divisor mismatch on incidence {p.describe(self.Q)} / "
                f"{f.describe(self.Q)}")
        if not self.Q.path_exists(f.head, p.head, inc.left):
            raise ComplexError(
                f"left class of {p.describe(self.Q)} / {f.describe(self.Q)} "
                "is not realizable")
        if not self.Q.path_exists(p.tail, f.tail, inc.right):
            raise ComplexError(
                f"right class of {p.describe(self.Q)} / {f.describe(self.Q)} "
                "is not realizable")

    def counts(self):
        return tuple(len(self.by_dim[k]) for k in range(self.n + 1))

    def facet_incidences(self, cell_id):
        return list(self._facets_of[cell_id])

    # -- duality ------------------------------------------------------------

    def tau(self):
        """The involution pairing each k-cell with its dual (n-k)-cell."""
        if self._tau is not None:
            return self._tau
        ones = self.Q.ones
        pairing = {}
        for c in self.cells:
            matches = [c2 for c2 in self.by_dim[self.n - c.dim]
                       if c2.tail == c.head and c2.head == c.tail
                       and c2.divisor == vsub(ones, c.divisor)]
            if len(matches) != 1:
                raise ComplexError(
                    f"{c.describe(self.Q)} has {len(matches)} dual candidates")
            pairing[c.id] = matches[0].id
        for cid, did in pairing.items():
            if pairing[did] != cid:
                raise ComplexError("duality pairing is not an involution")
        self._tau = pairing
        return pairing

    def tau_antisymmetry_violations(self):
        """Pairs breaking 'f facet of c iff tau(c) facet of tau(f)'."""
        t = self.tau()
        have = {(i.parent, i.facet) for i in self.incidences}
        bad = []
        for p, f in have:
            if (t[f], t[p]) not in have:
                bad.append((p, f))
        return bad

    # -- two-step composites and the face poset -----------------------------

    def composite_groups(self):
        """Two-step facet routes grouped by (parent, grandchild, left, right).

        Each group collects the pairs of incidences eta -> eta' -> eta''
        whose composed left and right divisors agree; for a cell complex
        with an incidence function every group has exactly two routes whose
        signs cancel.
        """
        groups = {}
        for inc1 in self.incidences:
            for inc2 in self._facets_of[inc1.facet]:
                L = vadd(inc2.left, inc1.left)
                R = vadd(inc1.right, inc2.right)
                key = (inc1.parent, inc2.facet, L, R)
                groups.setdefault(key, []).append((inc1, inc2))
        return groups

    def face_poset_check(self):
        """Verify that every two-step route group has exactly two members."""
        bad = []
        for key, routes in sorted(self.composite_groups().items()):
            if len(routes) != 2:
                bad.append((key, routes))
        return FacePosetReport(ok=not bad, violations=bad)

    # -- incidence function -------------------------------------------------

    def solve_incidence(self):
        """Find signs for all incidences satisfying the cancellation parity.

        One unknown per incidence (sign = (-1)^x).  Each two-step group
        contributes x1+x2+x3+x4 = 1 over GF(2); each 1-cell contributes
        x(head incidence) + x(tail incidence) = 1 (the empty cell below the
        0-cells carries sign +1).
        """
        poset = self.face_poset_check()
        if not poset.ok:
            raise ComplexError(
                f"face poset check failed on {len(poset.violations)} flags")
        var = {inc: i for i, inc in enumerate(self.incidences)}
        equations = []
        for key, routes in sorted(self.composite_groups().items()):
            (a1, a2), (b1, b2) = routes
            mask = 0
            for inc in (a1, a2, b1, b2):
                mask ^= 1 << var[inc]
            equations.append((mask, 1, ("flag", key)))
        for c in self.by_dim.get(1, []):
            mask = 0
            for inc in self._facets_of[c.id]:
                mask ^= 1 << var[inc]
            equations.append((mask, 1, ("boundary", c.id)))
        assignment, certificate = _solve_gf2(equations, len(self.incidences))
        if assignment is None:
            return IncidenceSolution(signs=None, feasible=False,
                                     certificate=certificate)
        signs = {inc: (-1) ** assignment[i] for inc, i in var.items()}
        self.verify_signs(signs)
        return IncidenceSolution(signs=signs, feasible=True, certificate=None)

    def verify_signs(self, signs):
        """Re-check the cancellation identity for a given sign assignment."""
        for key, routes in self.composite_groups().items():
            total = sum(signs[i1] * signs[i2] for i1, i2 in routes)
            if total != 0:
                raise ComplexError(f"sign condition fails on flag {key}")
        for c in self.by_dim.get(1, []):
            if sum(signs[i] for i in self._facets_of[c.id]) != 0:
                raise ComplexError(
                    f"boundary signs of {c.describe(self.Q)} do not cancel")


@dataclass
class FacePosetReport:
    ok: bool
    violations: list


@dataclass
class IncidenceSolution:
    signs: object      # {FacetIncidence: +1 or -1}, or None when infeasible
    feasible: bool
    certificate: object  # conflicting flag descriptions when infeasible


def _solve_gf2(equations, n_vars):
    """Gaussian elimination over GF(2) with a conflict certificate.

    equations: list of (bitmask, rhs, meta).  Returns (assignment, None) or
    (None, metas of an inconsistent subset).
    """
    rows = []  # (mask, rhs, origin bitmask)
    for k, (mask, rhs, _meta) in enumerate(equations):
        origin = 1 << k
        for pmask, prhs, porigin in rows:
            low = pmask & -pmask
            if mask & low:
                mask ^= pmask
                rhs ^= prhs
                origin ^= porigin
        if mask == 0:
            if rhs == 1:
                metas = [equations[i][2] for i in range(len(equations))
                         if origin >> i & 1]
                return None, metas
            continue
        rows.append((mask, rhs, origin))
    assignment = [0] * n_vars
    for mask, rhs, _ in reversed(rows):
        low = (mask & -mask).bit_length() - 1
        val = rhs
        for j in range(n_vars):
            if j != low and mask >> j & 1:
                val ^= assignment[j]
        assignment[low] = val
    return assignment, None


# ---------------------------------------------------------------------------
# hypercube complexes of abelian quotients


def mckay_complex(group):
    """The cell complex of hypercube faces for an abelian quotient A^n / G.

    Cells are pairs (vertex, S) for S a subset of the coordinate directions;
    the facet dropping the nu-th direction of S shares the tail (left class
    an arrow, sign (-1)^nu) or the head (right class an arrow, sign
    (-1)^(nu+1)).  The closed-form signs are returned alongside.
    """
    X, collection = mckay_toric_data(group)
    Q = build_quiver(X, collection)
    n = X.n
    char_of_vertex = [group.character(c.representative)
                      for c in collection.classes]
    vertex_of_char = {ch: j for j, ch in enumerate(char_of_vertex)}

    def shift(vertex, dirs):
        rep = list(collection.classes[vertex].representative)
        for i in dirs:
            rep[i] += 1
        return vertex_of_char[group.character(tuple(rep))]

    cells = []
    ids = {}
    for j in range(len(collection)):
        for bits in range(1 << n):
            S = tuple(i for i in range(n) if bits >> i & 1)
            div = tuple(1 if i in S else 0 for i in range(n))
            cell = Cell(id=len(cells), dim=len(S), head=shift(j, S), tail=j,
                        divisor=div, payload=("cube", j, S))
            ids[(j, S)] = cell.id
            cells.append(cell)
    incidences = []
    explicit = {}
    for j in range(len(collection)):
        for bits in range(1 << n):
            S = tuple(i for i in range(n) if bits >> i & 1)
            parent = ids[(j, S)]
            for nu, i in enumerate(S, start=1):
                rest = tuple(k for k in S if k != i)
                e_i = tuple(1 if k == i else 0 for k in range(n))
                zero = (0,) * n
                tail_facet = FacetIncidence(parent=parent, facet=ids[(j, rest)],
                                            left=e_i, right=zero)
                head_facet = FacetIncidence(parent=parent,
                                            facet=ids[(shift(j, (i,)), rest)],
                                            left=zero, right=e_i)
                incidences.append(tail_facet)
                incidences.append(head_facet)
                explicit[tail_facet] = (-1) ** nu
                explicit[head_facet] = (-1) ** (nu + 1)
    complex_ = ToricCellComplex(Q, n, cells, incidences)
    complex_.explicit_signs = explicit
    complex_.X = X
    complex_.collection = collection
    # the 1-skeleton must be the quiver itself
    one_cells = {(c.tail, c.head, c.divisor) for c in complex_.by_dim[1]}
    arrows = {(a.tail, a.head, a.label) for a in Q.arrows}
    if one_cells != arrows:
        raise ComplexError("1-cells do not match the quiver arrows")
    return complex_


# ---------------------------------------------------------------------------
# complexes from superpotential data, n = 3 and 4


def _relation_facets(Q, cell, rel):
    """Facet incidences of a relation 2-cell: one per arrow occurrence,
    left = suffix divisor, right = prefix divisor."""
    out = []
    for path in rel.pair:
        for idx, arrow_id in enumerate(path):
            out.append(FacetIncidence(
                parent=cell.id,
                facet=arrow_id,  # resolved to a cell id by the caller
                left=Q.path_div(path[idx + 1:]),
                right=Q.path_div(path[:idx])))
    return out


def _dual_facet_groups(Q, W, rel, arrow):
    """Complement-divisor groups embedding a relation in the dual 3-cell of
    an arrow: pairs (div(s), div(t)) with both cyclic words s.p.t.a in W."""
    found = set()
    p_plus, p_minus = rel.pair
    for term in W.terms:
        for pos in [k for k, x in enumerate(term) if x == arrow.idx]:
            word = term[pos:] + term[:pos]  # starts with the arrow
            body = word[1:]
            k = len(p_plus)
            for cut in range(len(body) - k + 1):
                if body[cut:cut + k] != p_plus:
                    continue
                t_path, s_path = body[:cut], body[cut + k:]
                other = cyclic_canonical((arrow.idx,) + t_path + p_minus + s_path)
                if other in W.term_set:
                    found.add((Q.path_div(s_path), Q.path_div(t_path)))
    return sorted(found)


def general_complex(Q, W, rels=None, report=None):
    """Cell complex of a consistent algebra in dimension n = 3 or 4.

    Layers: vertices, arrows, deduplicated relations, duals of arrows,
    duals of vertices; for n = 3 the relation layer and the dual-arrow
    layer coincide (each arrow determines the relation pair of its
    derivative).
    """
    if Q.X is None:
        raise ComplexError("quiver has no attached variety")
    n = Q.X.n
    if n not in (3, 4):
        raise ComplexError(f"no cell complex construction for dimension {n}")
    for a in Q.arrows:
        if not leq(a.label, Q.ones):
            raise ComplexError(
                f"label of {a.pretty()} does not divide the anticanonical monomial")
    if report is not None and not report.consistent:
        raise ComplexError("input algebra is not consistent")
    if rels is None:
        rels = relations(Q, W)

    cells = []

    def add(dim, head, tail, divisor, payload):
        cell = Cell(id=len(cells), dim=dim, head=head, tail=tail,
                    divisor=tuple(divisor), payload=payload)
        cells.append(cell)
        return cell

    zero = (0,) * Q.d
    vertex_cells = [add(0, i, i, zero, ("vertex", i))
                    for i in range(Q.n_vertices)]
    arrow_cells = [add(1, a.head, a.tail, a.label, ("arrow", a.idx))
                   for a in Q.arrows]

    # the relation attached to each arrow: the two summands of its derivative
    pair_of_arrow = {}
    for a in Q.arrows:
        D = derivative(Q, (a.idx,))
        if len(D) == 2:
            pair_of_arrow[a.idx] = tuple(sorted(D))

    rel_cells = {}
    if n == 3:
        if len(rels) != len(Q.arrows):
            raise ComplexError(
                f"{len(rels)} relations for {len(Q.arrows)} arrows; the "
                "dimension-three construction needs one per arrow")
        dual_arrow_cells = {}
        for a in Q.arrows:
            pair = pair_of_arrow.get(a.idx)
            if pair is None:
                raise ComplexError(
                    f"derivative of {a.pretty()} does not have two summands")
            rel = next((r for r in rels if tuple(sorted(r.pair)) == pair), None)
            if rel is None:
                raise ComplexError(
                    f"derivative pair of {a.pretty()} is not a relation")
            cell = add(2, a.tail, a.head, vsub(Q.ones, a.label),
                       ("dual_arrow", a.idx, rel))
            rel_cells[rel] = cell
            dual_arrow_cells[a.idx] = cell
    else:
        for r in rels:
            head = Q.arrows[r.p_plus[-1]].head
            tail = Q.arrows[r.p_plus[0]].tail
            rel_cells[r] = add(2, head, tail, r.div(Q), ("relation", r))
        dual_arrow_cells = {
            a.idx: add(3, a.tail, a.head, vsub(Q.ones, a.label),
                       ("dual_arrow", a.idx))
            for a in Q.arrows}
    dual_vertex_cells = [add(n, i, i, Q.ones, ("dual_vertex", i))
                         for i in range(Q.n_vertices)]

    incidences = []
    for a in Q.arrows:
        cell = arrow_cells[a.idx]
        incidences.append(FacetIncidence(
            parent=cell.id, facet=vertex_cells[a.head].id,
            left=zero, right=a.label))
        incidences.append(FacetIncidence(
            parent=cell.id, facet=vertex_cells[a.tail].id,
            left=a.label, right=zero))
    for rel, cell in rel_cells.items():
        for inc in _relation_facets(Q, cell, rel):
            incidences.append(FacetIncidence(
                parent=cell.id, facet=arrow_cells[inc.facet].id,
                left=inc.left, right=inc.right))
    if n == 4:
        for a in Q.arrows:
            parent = dual_arrow_cells[a.idx]
            hit = False
            for rel, facet in rel_cells.items():
                # a relation may embed with several complement groups; each
                # group carries its own incidence
                for s_div, t_div in _dual_facet_groups(Q, W, rel, a):
                    hit = True
                    incidences.append(FacetIncidence(
                        parent=parent.id, facet=facet.id,
                        left=s_div, right=t_div))
            if not hit:
                raise ComplexError(
                    f"dual cell of {a.pretty()} has no relation facets")
    for i in range(Q.n_vertices):
        parent = dual_vertex_cells[i]
        for a in Q.arrows:
            if a.tail == i:
                incidences.append(FacetIncidence(
                    parent=parent.id, facet=dual_arrow_cells[a.idx].id,
                    left=zero, right=a.label))
            if a.head == i:
                incidences.append(FacetIncidence(
                    parent=parent.id, facet=dual_arrow_cells[a.idx].id,
                    left=a.label, right=zero))
    return ToricCellComplex(Q, n, cells, incidences)


# ---------------------------------------------------------------------------
# parity of the term cycle around a dual 3-cell


@dataclass
class SignParityReport:
    arrow: int
    n_terms: int
    edges: list        # pairs of term indices linked by a relation facet
    two_colorable: bool
    odd_cycle: object  # list of term indices when not two-colorable

    def pretty(self, Q):
        verdict = "admits signs" if self.two_colorable else "admits no signs"
        out = [f"terms through {Q.arrows[self.arrow].pretty()}: {self.n_terms}; "
               f"{verdict}"]
        if self.odd_cycle is not None:
            out.append(f"odd cycle of length {len(self.odd_cycle)}")
        return "\n".join(out)


def sign_infeasibility(Q, W, rels, arrow_idx):
    """Try to 2-color the terms of W through one arrow.

    Terms are adjacent when a relation embeds both into the dual cell of
    the arrow (they differ by one relation); recovering relation signs from
    a signed superpotential needs adjacent terms to carry opposite signs,
    which is possible iff the adjacency graph is bipartite.
    """
    arrow = Q.arrows[arrow_idx]
    terms = [t for t in W.terms if arrow_idx in t]
    index = {t: k for k, t in enumerate(terms)}
    edges = set()
    for rel in rels:
        p_plus, p_minus = rel.pair
        for t in terms:
            for pos in [k for k, x in enumerate(t) if x == arrow_idx]:
                body = (t[pos:] + t[:pos])[1:]
                k = len(p_plus)
                for cut in range(len(body) - k + 1):
                    if body[cut:cut + k] != p_plus:
                        continue
                    other = cyclic_canonical(
                        (arrow_idx,) + body[:cut] + p_minus + body[cut + k:])
                    if other in W.term_set:
                        u, v = index[t], index[other]
                        if u != v:
                            edges.add((min(u, v), max(u, v)))
    # depth-first 2-coloring with parent tracking for an odd-cycle witness
    color = {}
    parent = {}
    depth = {}
    adj = {k: [] for k in range(len(terms))}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    odd_cycle = None
    for start in range(len(terms)):
        if start in color or odd_cycle:
            continue
        color[start] = 0
        depth[start] = 0
        stack = [start]
        while stack and not odd_cycle:
            u = stack.pop()
            for v in adj[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    stack.append(v)
                elif color[v] == color[u] and parent.get(u) != v:
                    left, right = [u], [v]
                    a, b = u, v
                    while a != b:
                        if depth[a] >= depth[b]:
                            a = parent[a]
                            left.append(a)
                        else:
                            b = parent[b]
                            right.append(b)
                    odd_cycle = left + right[:-1][::-1]
                    break
    return SignParityReport(arrow=arrow_idx, n_terms=len(terms),
                            edges=sorted(edges),
                            two_colorable=odd_cycle is None,
                            odd_cycle=odd_cycle)
