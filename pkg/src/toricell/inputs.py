"""Input documents: JSON descriptions of the geometry to analyze.

Four kinds are accepted.  "toric" gives ray generators and a collection
of divisor vectors; "cyclic_quotient" and "abelian_quotient" give group
data for an abelian quotient of affine space; "dimer_quiver" gives an
explicit quiver (as written by the quiver subcommand, so output files
round-trip as inputs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .quiver import build_quiver, quiver_from_data
from .variety import (
    AbelianGroupData,
    Collection,
    GorensteinToricVariety,
    mckay_toric_data,
)


class InputError(ValueError):
    pass


KINDS = ("toric", "cyclic_quotient", "abelian_quotient", "dimer_quiver")


def _require(doc, key, types):
    if key not in doc:
        raise InputError(f"missing field '{key}'")
    val = doc[key]
    if not isinstance(val, types):
        raise InputError(f"field '{key}' has the wrong type")
    return val


def _int_matrix(rows, what, width=None):
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or not all(
                isinstance(x, int) for x in row):
            raise InputError(f"{what} must be lists of integers")
        if width is not None and len(row) != width:
            raise InputError(f"{what} must have length {width}")
        out.append(tuple(row))
    if not out:
        raise InputError(f"{what} is empty")
    if width is None and len({len(r) for r in out}) != 1:
        raise InputError(f"{what} have mixed lengths")
    return out


def _arrow_list(raw, what):
    out = []
    for item in raw:
        if (not isinstance(item, (list, tuple)) or len(item) != 3
                or not isinstance(item[0], int) or not isinstance(item[1], int)):
            raise InputError(f"{what} entries must be [tail, head, label]")
        t, h, lab = item
        if not isinstance(lab, (list, tuple)) or not all(
                isinstance(x, int) and x >= 0 for x in lab):
            raise InputError(f"{what} labels must be nonnegative integer vectors")
        out.append((t, h, tuple(lab)))
    return out


@dataclass
class InputDocument:
    kind: str
    group: object = None
    rays: list = None
    collection_reps: list = None
    vertices: int = None
    arrows: list = None
    options: dict = field(default_factory=dict)

    def variety(self):
        if self.kind in ("cyclic_quotient", "abelian_quotient"):
            X, _ = mckay_toric_data(self.group)
            return X
        if self.rays is None:
            raise InputError("document carries no variety data")
        return GorensteinToricVariety(self.rays)

    def quiver(self):
        if self.kind == "dimer_quiver":
            X = None
            coll = None
            if self.rays is not None:
                X = GorensteinToricVariety(self.rays)
                if self.collection_reps is not None:
                    coll = Collection(X, self.collection_reps)
            return quiver_from_data(self.vertices, self.arrows, X=X,
                                    collection=coll)
        if self.kind in ("cyclic_quotient", "abelian_quotient"):
            X, coll = mckay_toric_data(self.group)
            return build_quiver(X, coll,
                                arrow_order=self.options.get("arrow_order"))
        X = GorensteinToricVariety(self.rays)
        coll = Collection(X, self.collection_reps)
        return build_quiver(X, coll,
                            arrow_order=self.options.get("arrow_order"))


def parse_document(doc):
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    kind = _require(doc, "kind", str)
    if kind not in KINDS:
        raise InputError(f"unknown kind '{kind}'; expected one of {KINDS}")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InputError("options must be an object")
    known = {"arrow_order", "lifts", "m_basis", "bound"}
    for key in options:
        if key not in known:
            raise InputError(f"unknown option '{key}'")
    if "arrow_order" in options:
        options = dict(options)
        options["arrow_order"] = _arrow_list(options["arrow_order"],
                                             "arrow_order")
    if "lifts" in options:
        options = dict(options)
        options["lifts"] = _int_matrix(options["lifts"], "lifts")
    if "m_basis" in options:
        options = dict(options)
        options["m_basis"] = _int_matrix(options["m_basis"], "m_basis")
    if "bound" in options and not isinstance(options["bound"], int):
        raise InputError("bound must be an integer")

    if kind == "cyclic_quotient":
        order = _require(doc, "order", int)
        weights = _require(doc, "weights", list)
        if order < 1 or not all(isinstance(w, int) for w in weights):
            raise InputError("cyclic_quotient needs a positive order and "
                             "integer weights")
        group = AbelianGroupData.cyclic(order, weights)
        return InputDocument(kind=kind, group=group, options=options)
    if kind == "abelian_quotient":
        raw = _require(doc, "generators", list)
        gens = []
        for g in raw:
            if (not isinstance(g, dict) or not isinstance(g.get("order"), int)
                    or not isinstance(g.get("weights"), list)):
                raise InputError(
                    "generators must be objects with order and weights")
            gens.append((g["order"], tuple(g["weights"])))
        if not gens:
            raise InputError("abelian_quotient needs at least one generator")
        n = len(gens[0][1])
        if any(len(w) != n for _, w in gens):
            raise InputError("generator weights have mixed lengths")
        group = AbelianGroupData(generators=tuple(gens), n=n)
        return InputDocument(kind=kind, group=group, options=options)
    if kind == "toric":
        rays = _int_matrix(_require(doc, "rays", list), "rays")
        reps = _int_matrix(_require(doc, "collection", list), "collection",
                           width=len(rays))
        return InputDocument(kind=kind, rays=rays, collection_reps=reps,
                             options=options)
    # dimer_quiver
    vertices = _require(doc, "vertices", int)
    arrows = _arrow_list(_require(doc, "arrows", list), "arrows")
    rays = None
    reps = None
    if "rays" in doc:
        rays = _int_matrix(doc["rays"], "rays")
        if "collection" in doc:
            reps = _int_matrix(doc["collection"], "collection", width=len(rays))
    return InputDocument(kind=kind, vertices=vertices, arrows=arrows,
                         rays=rays, collection_reps=reps, options=options)


def load_document(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")
    return parse_document(doc)


def quiver_document(Q):
    """A dimer_quiver document reproducing Q, suitable for round-trips."""
    doc = {
        "kind": "dimer_quiver",
        "vertices": Q.n_vertices,
        "arrows": [[a.tail, a.head, list(a.label)] for a in Q.arrows],
    }
    if Q.X is not None:
        doc["rays"] = [list(r) for r in Q.X.rays]
        if Q.collection is not None:
            doc["collection"] = [list(c.representative)
                                 for c in Q.collection.classes]
    return doc
