"""Quivers of sections with divisor labels, paths, and lifts.

Arrows carry labels in N^d recording the divisor of the defining section.
Paths are tuples of arrow ids, first-applied first; the printed form
follows the algebraic convention (rightmost acts first), e.g. (1, 4, 7)
prints as "a8a5a2".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .intlinalg import is_zero, leq, vadd, vsub
from .variety import Collection, GorensteinToricVariety, VarietyError


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    idx: int
    tail: int
    head: int
    label: tuple

    def pretty(self):
        return f"a{self.idx + 1}"


class QuiverOfSections:
    def __init__(self, n_vertices, arrows, X=None, collection=None):
        self.n_vertices = n_vertices
        self.arrows = [Arrow(idx=i, tail=a[0], head=a[1], label=tuple(a[2]))
                       for i, a in enumerate(arrows)]
        self.X = X
        self.collection = collection
        if not self.arrows:
            raise QuiverError("quiver has no arrows")
        self.d = len(self.arrows[0].label)
        for a in self.arrows:
            if len(a.label) != self.d:
                raise QuiverError("arrow labels of mixed dimension")
            if is_zero(a.label):
                raise QuiverError("arrow labels must be nonzero")
            if not (0 <= a.tail < n_vertices and 0 <= a.head < n_vertices):
                raise QuiverError("arrow endpoint out of range")
            if a.tail == a.head and n_vertices > 1:
                raise QuiverError("loops only occur for the one-sheaf collection")
        self.out = [[] for _ in range(n_vertices)]
        for a in self.arrows:
            self.out[a.tail].append(a)
        self.ones = (1,) * self.d
        self._reach_memo = {}
        self._lifts = None

    # -- basic path machinery ----------------------------------------------

    def path_div(self, path):
        div = (0,) * self.d
        for idx in path:
            div = vadd(div, self.arrows[idx].label)
        return div

    def path_head(self, path, tail=None):
        if not path:
            return tail
        return self.arrows[path[-1]].head

    def path_tail(self, path, tail=None):
        if not path:
            return tail
        return self.arrows[path[0]].tail

    def pretty_path(self, path):
        if not path:
            return "e"
        return "".join(f"a{idx + 1}" for idx in reversed(path))

    def paths_from(self, i, budget):
        """All (head, path) with tail i and divisor componentwise <= budget."""
        out = []
        path = []

        def dfs(v, remaining):
            out.append((v, tuple(path)))
            for a in self.out[v]:
                if leq(a.label, remaining):
                    path.append(a.idx)
                    dfs(a.head, vsub(remaining, a.label))
                    path.pop()

        dfs(i, tuple(budget))
        return out

    def enumerate_paths(self, i, j, div):
        """All paths from i to j with divisor exactly div."""
        div = tuple(div)
        out = []
        path = []

        def dfs(v, remaining):
            if v == j and is_zero(remaining):
                out.append(tuple(path))
            for a in self.out[v]:
                if leq(a.label, remaining):
                    if self.path_exists(a.head, j, vsub(remaining, a.label)):
                        path.append(a.idx)
                        dfs(a.head, vsub(remaining, a.label))
                        path.pop()

        dfs(i, div)
        return out

    def reachable(self, i, div):
        """Vertices reachable from i along paths with divisor exactly div."""
        key = (i, tuple(div))
        hit = self._reach_memo.get(key)
        if hit is not None:
            return hit
        if is_zero(div):
            result = frozenset((i,))
        else:
            acc = set()
            for a in self.out[i]:
                if leq(a.label, div):
                    acc |= self.reachable(a.head, vsub(div, a.label))
            result = frozenset(acc)
        self._reach_memo[key] = result
        return result

    def path_exists(self, i, j, div):
        return j in self.reachable(i, div)

    realizable = path_exists

    # -- structural checks --------------------------------------------------

    def is_strongly_connected(self):
        for start in range(self.n_vertices):
            seen = {start}
            todo = deque([start])
            while todo:
                v = todo.popleft()
                for a in self.out[v]:
                    if a.head not in seen:
                        seen.add(a.head)
                        todo.append(a.head)
            if len(seen) != self.n_vertices:
                return False
        return True

    def preferred_lifts(self):
        """Divisor lifts u_i of the vertices along a BFS spanning tree.

        u_0 = 0 and u_{h(a)} = u_{t(a)} + div(a) for tree arrows, the tree
        being grown breadth-first in the underlying undirected graph with
        arrows scanned in id order.
        """
        if self._lifts is not None:
            return self._lifts
        lifts = {0: (0,) * self.d}
        todo = deque([0])
        incident = [[] for _ in range(self.n_vertices)]
        for a in self.arrows:
            incident[a.tail].append(a)
            if a.head != a.tail:
                incident[a.head].append(a)
        while todo:
            v = todo.popleft()
            for a in sorted(incident[v], key=lambda a: a.idx):
                if a.tail == v and a.head not in lifts:
                    lifts[a.head] = vadd(lifts[v], a.label)
                    todo.append(a.head)
                elif a.head == v and a.tail not in lifts:
                    lifts[a.tail] = vsub(lifts[v], a.label)
                    todo.append(a.tail)
        if len(lifts) != self.n_vertices:
            raise QuiverError("quiver is not connected")
        self._lifts = [lifts[i] for i in range(self.n_vertices)]
        return self._lifts

    # -- export -------------------------------------------------------------

    def to_dot(self, label_names=None):
        def lab(vec):
            if label_names is None:
                names = [f"x{k + 1}" for k in range(self.d)]
            else:
                names = label_names
            parts = []
            for name, e in zip(names, vec):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            return "".join(parts) or "1"

        lines = ["digraph quiver {"]
        for v in range(self.n_vertices):
            lines.append(f'  v{v} [label="{v}"];')
        for a in self.arrows:
            lines.append(f'  v{a.tail} -> v{a.head} [label="{a.pretty()}: {lab(a.label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_quiver(X, collection, arrow_order=None):
    """Quiver of sections of a collection on a Gorenstein toric variety.

    Arrows i -> j are the fiber generators of class(E_j) - class(E_i) that
    do not factor through a third member of the collection.  For the
    one-sheaf collection the arrows are loops labeled by the Hilbert basis
    of the section semigroup.
    """
    r = len(collection)
    if r == 1:
        labels = X.section_semigroup_hilbert_basis()
        arrows = [(0, 0, lab) for lab in sorted(labels)]
    else:
        sections = {}
        for i in range(r):
            for j in range(r):
                if i != j:
                    sections[(i, j)] = X.hom_sections(collection.difference(i, j))
        arrows = []
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                for s in sections[(i, j)]:
                    reducible = False
                    for k in range(r):
                        if k in (i, j):
                            continue
                        for u in sections[(i, k)]:
                            if leq(u, s) and vsub(s, u) in sections[(k, j)]:
                                reducible = True
                                break
                        if reducible:
                            break
                    if not reducible:
                        arrows.append((i, j, s))
        arrows.sort(key=lambda a: (a[0], a[1], a[2]))
    if arrow_order is not None:
        want = [(t, h, tuple(lab)) for t, h, lab in arrow_order]
        have = [(t, h, tuple(lab)) for t, h, lab in arrows]
        if sorted(want) != sorted(have):
            raise QuiverError(
                "arrow_order is not a permutation of the computed arrows; "
                f"computed {sorted(have)}")
        arrows = want
    Q = QuiverOfSections(r, arrows, X=X, collection=collection)
    if not Q.is_strongly_connected():
        raise QuiverError("quiver of sections is not strongly connected")
    return Q


def quiver_from_data(n_vertices, arrows, X=None, collection=None):
    """Quiver from explicit arrow data (tail, head, label) triples."""
    return QuiverOfSections(n_vertices, arrows, X=X, collection=collection)
