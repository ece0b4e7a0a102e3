"""Command line front end.

Subcommands build the quiver of sections of an input document and run
the requested verification.  Exit code 0 means every requested property
holds, 1 means a property fails (the report says which), 2 means the
input document is invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .complexes import (
    ComplexError,
    general_complex,
    mckay_complex,
    sign_infeasibility,
)
from .inputs import InputError, load_document, quiver_document
from .matchings import build_pi, perfect_matchings, weight_zero_check
from .quiver import QuiverError
from .resolution import (
    ResolutionError,
    build_resolution,
    verify_exactness,
    verify_minimality,
    verify_square_zero,
)
from .superpotential import consistency, relations
from .superpotential import superpotential as build_superpotential
from .tiling import TilingError, dimer_reconstruct, projection_maps, verify_tiling
from .variety import VarietyError

USAGE_ERRORS = (InputError, VarietyError, QuiverError, ValueError)


def _emit(payload):
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _monomial(label):
    parts = []
    for k, e in enumerate(label):
        if e == 1:
            parts.append(f"x{k + 1}")
        elif e > 1:
            parts.append(f"x{k + 1}^{e}")
    return "".join(parts) or "1"


def _quiver(doc, args):
    Q = doc.quiver()
    payload = quiver_document(Q)
    payload["labels"] = [_monomial(a.label) for a in Q.arrows]
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(Q.to_dot())
    _emit(payload)
    return 0


def _superpotential(doc, args):
    Q = doc.quiver()
    W = build_superpotential(Q)
    rels = relations(Q, W)
    _emit({
        "terms": [Q.pretty_path(t) for t in W.terms],
        "term_arrows": [list(t) for t in W.terms],
        "n_terms": len(W),
        "relations": [r.pretty(Q) for r in rels],
        "n_relations": len(rels),
    })
    return 0


def _consistency(doc, args):
    Q = doc.quiver()
    W = build_superpotential(Q)
    bound = args.bound if args.bound is not None else doc.options.get("bound", 2)
    rep = consistency(Q, W, bound=bound)
    _emit({
        "consistent": rep.consistent,
        "bound": rep.bound,
        "n_relations": rep.n_relations,
        "quick_reject_arrows": [f"a{i + 1}" for i in rep.quick_reject_arrows],
        "uncovered_arrows": [f"a{i + 1}" for i in rep.uncovered_arrows],
        "witnesses": [
            {"tail": i, "head": j, "divisor": list(div),
             "paths": [Q.pretty_path(pa), Q.pretty_path(pb)]}
            for i, j, div, pa, pb in rep.witnesses],
    })
    return 0 if rep.consistent else 1


def _matchings(doc, args):
    Q = doc.quiver()
    pi = build_pi(Q)
    ms = perfect_matchings(Q, pi=pi)
    payload = {
        "rank": pi.rank,
        "matchings": [
            {"values": list(m.values),
             "support": sorted(f"a{i + 1}" for i in m.support),
             "extremal_ray": None if m.extremal_ray is None
             else m.extremal_ray + 1}
            for m in ms],
    }
    code = 0
    if Q.X is not None:
        wz = weight_zero_check(Q)
        payload["weight_zero_matches"] = wz.matches
        if not wz.matches:
            code = 1
    _emit(payload)
    return code


def _build_complex(doc, args):
    if doc.kind in ("cyclic_quotient", "abelian_quotient") or args.mckay:
        if doc.group is None:
            raise InputError("--mckay needs a quotient input")
        return mckay_complex(doc.group)
    Q = doc.quiver()
    W = build_superpotential(Q)
    return general_complex(Q, W)


def _complex(doc, args):
    C = _build_complex(doc, args)
    tau = C.tau()
    poset = C.face_poset_check()
    sol = C.solve_incidence()
    _emit({
        "counts": list(C.counts()),
        "tau_involution": True,
        "tau_antisymmetry_violations": len(C.tau_antisymmetry_violations()),
        "face_poset_ok": poset.ok,
        "incidence_feasible": sol.feasible,
    })
    ok = (poset.ok and sol.feasible
          and not C.tau_antisymmetry_violations())
    return 0 if ok else 1


def _resolution(doc, args):
    C = _build_complex(doc, args)
    signs = getattr(C, "explicit_signs", None)
    res = build_resolution(C, signs=signs)
    verify_square_zero(res)
    minimal = verify_minimality(res)
    payload = {
        "counts": list(res.generator_counts()),
        "square_zero": True,
        "minimal": minimal.minimal,
    }
    code = 0 if minimal.minimal else 1
    if args.verify_exactness:
        bound = args.bound if args.bound is not None \
            else doc.options.get("bound", 1)
        rep = verify_exactness(res, bound, jobs=args.jobs)
        payload["exact"] = rep.exact
        payload["exactness_bound"] = list(rep.bound)
        payload["pieces_checked"] = rep.pieces_checked
        if not rep.exact:
            payload["failures"] = [
                {"s": s, "t": t, "divisor": list(d), "detail": str(detail)}
                for s, t, d, detail in rep.failures[:50]]
            code = 1
    _emit(payload)
    return code


def _svg(tiling, path):
    scale = 240
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{scale}" height="{scale}" '
             f'viewBox="0 0 {scale} {scale}">',
             f'<rect width="{scale}" height="{scale}" fill="white" '
             'stroke="black"/>']

    def pt(p):
        x = float(p[0]) % 1.0
        y = float(p[1]) % 1.0
        return x * scale, (1 - y) * scale

    for _idx, start, vec in tiling.edges:
        for tx in (-1, 0, 1):
            for ty in (-1, 0, 1):
                x1 = (float(start[0]) + tx) * scale
                y1 = (1 - float(start[1]) - ty) * scale
                x2 = x1 + float(vec[0]) * scale
                y2 = y1 - float(vec[1]) * scale
                lines.append(
                    f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
                    f'y2="{y2:.2f}" stroke="black" stroke-width="1"/>')
    for v, p in enumerate(tiling.vertices):
        x, y = pt(p)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="red"/>')
        lines.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" '
                     f'font-size="10">{v}</text>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _reconstruct(doc, args):
    Q = doc.quiver()
    if Q.X is None:
        raise InputError("reconstruction needs variety data")
    W = build_superpotential(Q)
    proj = projection_maps(Q.X, m_basis=doc.options.get("m_basis"))
    tiling = dimer_reconstruct(Q, W, proj=proj,
                               lifts=doc.options.get("lifts"))
    rep = verify_tiling(tiling)
    if args.svg:
        _svg(tiling, args.svg)

    def rat(x):
        f = Fraction(x)
        return [f.numerator, f.denominator]

    _emit({
        "fprime": [[rat(x) for x in row] for row in proj.fprime],
        "vertices": [[rat(x) for x in p] for p in tiling.vertices],
        "faces": [Q.pretty_path(f.term) for f in tiling.faces],
        "valid": rep.valid,
        "euler": rep.euler,
        "total_area": rat(rep.total_area),
        "crossings": [[f"a{i + 1}", f"a{j + 1}", list(t)]
                      for i, j, t in rep.crossings],
    })
    return 0 if rep.valid else 1


def _signcheck(doc, args):
    Q = doc.quiver()
    W = build_superpotential(Q)
    rels = relations(Q, W)
    idx = args.arrow - 1
    if not 0 <= idx < len(Q.arrows):
        raise InputError(f"no arrow a{args.arrow}")
    rep = sign_infeasibility(Q, W, rels, idx)
    _emit({
        "arrow": f"a{args.arrow}",
        "terms_through_arrow": rep.n_terms,
        "admits_signs": rep.two_colorable,
        "odd_cycle_length": None if rep.odd_cycle is None
        else len(rep.odd_cycle),
    })
    return 0 if rep.two_colorable else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="toricell",
        description="quivers of sections, superpotentials, cell complexes "
                    "and cellular resolutions from toric data")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("input", help="input document (JSON)")
        p.set_defaults(func=func)
        return p

    p = add("quiver", _quiver, help="build the quiver of sections")
    p.add_argument("--dot", metavar="FILE", help="write a DOT rendering")
    add("superpotential", _superpotential,
        help="anticanonical cycles and derivative relations")
    p = add("consistency", _consistency, help="consistency verdict")
    p.add_argument("--bound", type=int, help="divisor bound (default 2)")
    add("matchings", _matchings, help="perfect matchings and the "
        "weight-zero slice check")
    p = add("complex", _complex, help="toric cell complex and incidences")
    p.add_argument("--mckay", action="store_true",
                   help="force the hypercube complex of a quotient input")
    p = add("resolution", _resolution, help="cellular bimodule resolution")
    p.add_argument("--mckay", action="store_true",
                   help="force the hypercube complex of a quotient input")
    p.add_argument("--verify-exactness", action="store_true")
    p.add_argument("--bound", type=int, help="divisor bound for exactness")
    p.add_argument("--jobs", type=int, default=1)
    p = add("reconstruct", _reconstruct, help="torus tiling of a threefold")
    p.add_argument("--svg", metavar="FILE", help="write an SVG rendering")
    p = add("signcheck", _signcheck,
            help="two-colorability of the terms through one arrow")
    p.add_argument("--arrow", type=int, required=True,
                   help="arrow id (1-based)")

    args = parser.parse_args(argv)
    try:
        doc = load_document(args.input)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(doc, args)
    except (ComplexError, ResolutionError, TilingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
