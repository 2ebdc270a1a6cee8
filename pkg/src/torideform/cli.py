"""Command line front end: ``torideform <stage> <file> [--format text|json] ...``.

Exit status: 0 success, 1 failed verification, 2 violated stage hypothesis
(degree-1 generation, pointedness), 3 unreadable or invalid input.
"""
import argparse
import re
import sys

from .basespace import base_ideal, reduce_presentation, w_grading
from .exceptions import (
    EmptyInput, HypothesisViolated, NotALattice, NotAVertex, NotPointed, ParseError,
)
from .ideal import local_ideal, toric_ideal
from .io import PolyhedronDocument, Report, format_rational
from .monoid import MonoidData, generators_Ttilde
from .polyhedron import cluster_decomposition
from .poly import format_poly
from .tstar import TSpace
from .verify import verify_polyhedron

EXIT_OK, EXIT_FAILED, EXIT_HYPOTHESIS, EXIT_PARSE = 0, 1, 2, 3


def split_labels(text):
    """Split a comma list of labels, keeping commas inside parentheses."""
    return [x.strip() for x in re.split(r",(?![^()]*\))", text) if x.strip()]


def _vector(v):
    return [format_rational(x) for x in v]


def _edges(P):
    out = []
    for e in P.edges:
        out.append({
            "index": e.index,
            "from": _vector(e.v),
            "to": _vector(e.w),
            "g_d": e.g_d,
            "lattice_length": e.lattice_length,
            "short_left": e.short_left,
            "short_right": e.short_right,
            "shortness_index": e.shortness_index,
            "side_indices": list(e.side_indices),
        })
    return out


def _clusters(P):
    cd = cluster_decomposition(P)

    def cells(comp):
        return [f"{kind}{idx + 1}" for kind, idx in comp]
    return {
        "A": [cells(c) for c in cd.A],
        "B": [cells(c) for c in cd.B],
        "D": [f"edge{d + 1}" for d in cd.D],
        "N": [f"vertex{v + 1}" for v in cd.N],
    }


def _generators(sg):
    return [{"label": g.label, "element": str(g.element), "degree": g.degree,
             "coordinates": list(g.element.coords)} for g in sg.generators]


def _witness(err):
    w = err.witness
    return {"label": w.label, "element": str(w.element), "degree": w.degree}


def cmd_analyze(doc, args):
    P = doc.polyhedron()
    T = TSpace(P)
    # one scalar closing equation per compact 2-face and coordinate
    closing = sum(1 for face in P.two_faces for k in range(P.n)
                  if any(P.edges[nu].direction[k] for nu, _ in face.cycle))
    payload = {
        "label": doc.label,
        "vertices": [_vector(v) for v in P.vertices],
        "lattice_vertices": [i + 1 for i in P.lattice_vertices],
        "edges": _edges(P),
        "two_face_relations": closing,
        "dim_T": T.dim,
        "dim_T1": T.dim_T1,
        "clusters": _clusters(P),
    }
    return Report("analyze", payload)


def _require_full(P):
    if not P.is_full_dimensional:
        raise NotPointed("P is not full-dimensional, so the semigroups have units")


def cmd_generators(doc, args):
    P = doc.polyhedron()
    T = TSpace(P)
    sg = generators_Ttilde(T)
    ok, witness = sg.is_degree1_generated()
    payload = {
        "dim_T1": T.dim_T1,
        "coordinates": T.coordinate_names(),
        "Ttilde": _generators(sg),
        "degree1_generated": ok,
        "witness": witness.label if witness else None,
        "edges": [],
    }
    for e in P.edges:
        try:
            local_ideal(T, e)
            local_ok, local_witness = True, None
        except HypothesisViolated as err:
            local_ok, local_witness = False, _witness(err)
        payload["edges"].append({"index": e.index, "degree1_generated": local_ok,
                                 "witness": local_witness})
    if P.is_full_dimensional:
        data = MonoidData(T, sg)
        payload["Stilde"] = _generators(data.generators_Stilde())
    return Report("generators", payload)


def cmd_ideal(doc, args):
    P = doc.polyhedron()
    _require_full(P)
    T = TSpace(P)
    sg = generators_Ttilde(T)
    gb = toric_ideal(sg)
    payload = {
        "variables": list(gb.ring.names),
        "degrees": [format_rational(d) for d in sg.degrees],
        "basis": [format_poly(p) for p in gb.polys],
        "group_rank": sg.group_rank(),
        "dim_T1": T.dim_T1,
    }
    return Report("ideal", payload)


def cmd_basespace(doc, args):
    P = doc.polyhedron()
    _require_full(P)
    T = TSpace(P)
    sg = generators_Ttilde(T)
    ok, witness = sg.is_degree1_generated()
    if not ok:
        raise HypothesisViolated(witness, f"T~ has generator {witness.label} = {witness.element} "
                                          f"of degree {witness.degree}")
    gb = toric_ideal(sg)
    gb.semigroup = sg
    J = base_ideal(gb, args.u0)
    pivots = split_labels(args.pivot) if args.pivot else None
    pres = reduce_presentation(J, pivots)
    payload = pres.strings()
    payload["dim_T1"] = T.dim_T1
    payload["W"] = {str(n): d for n, d in w_grading(J).dims.items()}
    payload["J"] = [format_poly(g) for g in J.generators]
    return Report("basespace", payload)


def cmd_verify(doc, args):
    P = doc.polyhedron()
    results = verify_polyhedron(P, seed=args.seed, depth=args.depth)
    payload = {"seed": args.seed, "depth": args.depth,
               "properties": [r.to_dict() for r in results],
               "all_passed": all(r.passed for r in results)}
    return Report("verify", payload, EXIT_OK if payload["all_passed"] else EXIT_FAILED)


COMMANDS = {
    "analyze": cmd_analyze,
    "generators": cmd_generators,
    "ideal": cmd_ideal,
    "basespace": cmd_basespace,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torideform",
        description="Deformation data in degree -R of the toric variety of a rational polyhedron.")
    parser.add_argument("stage", choices=sorted(COMMANDS))
    parser.add_argument("file", help="JSON polyhedron document ('-' for stdin)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--u0", help="generator label used as u_0 (basespace)")
    parser.add_argument("--pivot", help="comma-separated T variables to eliminate first (basespace)")
    parser.add_argument("--depth", type=int, default=3, help="verification degree bound")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def _emit(report, fmt, stream):
    stream.write(report.to_json() + "\n" if fmt == "json" else report.to_text())


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            doc = PolyhedronDocument.loads(sys.stdin.read())
        else:
            doc = PolyhedronDocument.load(args.file)
        report = COMMANDS[args.stage](doc, args)
    except (ParseError, NotAVertex, EmptyInput, NotALattice, OSError) as err:
        report = Report(args.stage, {"error": type(err).__name__, "message": str(err),
                                     "field": getattr(err, "field", None)}, EXIT_PARSE)
    except HypothesisViolated as err:
        report = Report(args.stage, {"error": type(err).__name__, "message": str(err),
                                     "witness": _witness(err)}, EXIT_HYPOTHESIS)
    except NotPointed as err:
        report = Report(args.stage, {"error": type(err).__name__, "message": str(err)},
                        EXIT_HYPOTHESIS)
    _emit(report, args.format, stdout if report.status in (EXIT_OK, EXIT_FAILED) else stderr)
    return report.status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
