"""Command line front end.

A target is either `catalog:NAME` (built-in recipes plus any flow files in
the directory named by CONLEYLAB_CATALOG) or the path of a flow file such as
the ones `construct` writes. Output bytes are deterministic for a fixed
input so runs can be diffed.
"""

import argparse
import json
import os
import sys

from . import algebra, attractor, blocks, catalog, svgplot, theorems
from .complexes import ComplexError
from .constructions import ConstructionError
from .flow import CombinatorialFlow, FlowError

_ERRORS = (catalog.CatalogError, ComplexError, FlowError, ConstructionError,
           attractor.NotIsolatedError, blocks.NoBlockError, blocks.BlockError,
           algebra.AlgebraError, theorems.TheoremError)


def _load_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise FlowError("unreadable-input",
                        "cannot read flow file %s: %s" % (path, exc))
    flow = CombinatorialFlow.from_json(data)
    name = data.get("name") or os.path.splitext(os.path.basename(path))[0]
    flow.name = flow.name or name
    k = data.get("k")
    return {"name": name, "resolution": None, "flow": flow,
            "k": sorted(k) if k else None, "expected": {},
            "ring": data.get("ring", "z")}


def _load_target(spec, resolution=None):
    if spec.startswith("catalog:"):
        return catalog.build(spec[len("catalog:"):], resolution)
    if os.path.exists(spec):
        return _load_file(spec)
    if spec in catalog.names():
        return catalog.build(spec, resolution)
    raise FlowError("unreadable-input",
                    "%r is neither a file nor a catalog name" % spec)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# -- analyze -------------------------------------------------------------------

def _analyze(entry, max_refines):
    flow, k = entry["flow"], entry["k"]
    if not k:
        raise catalog.CatalogError("no-candidate",
                                   "%s carries no attractor candidate"
                                   % entry["name"])
    report = attractor.analyze(flow, k)
    refines = 0
    while report.classification == "Unknown" and refines < max_refines:
        try:
            fine, _ = catalog.refine_flow(flow, 2)
        except FlowError:
            report.notes.append("refinement unavailable, verdict stays open")
            break
        flow, k = fine["flow"], fine["k"]
        refines += 1
        report = attractor.analyze(flow, k)
    return report, refines


def _analyze_text(report, refines):
    lines = [
        "flow: %s" % report.flow.name,
        "classification: %s" % report.classification,
        "global attractor: %s" % ("yes" if report.global_attractor else "no"),
        "components: r = %d homoclinic, s = %d total" % (report.r, report.s),
        "cells: k %d, stabilization %d, basin %d, unstable manifold %d"
        % (len(report.k), len(report.stabilization), len(report.basin),
           len(report.unstable)),
    ]
    if refines:
        lines.append("refinements used: %d" % refines)
    if report.witness:
        lines.append("witness: %s via cycle of %d cells"
                     % (report.witness, len(report.witness_cycle)))
    for note in report.notes:
        lines.append("note: %s" % note)
    return "\n".join(lines) + "\n"


def cmd_analyze(args):
    entry = _load_target(args.target, args.resolution)
    report, refines = _analyze(entry, args.refine)
    if args.format == "json":
        payload = report.to_json()
        payload["refinements"] = refines
        _emit(_json_dumps(payload), args.out)
    else:
        _emit(_analyze_text(report, refines), args.out)
    return 0


# -- verify --------------------------------------------------------------------

def cmd_verify(args):
    results = theorems.run(only=args.only)
    failed = [r for r in results if r.status != "pass"]
    if args.format == "json":
        _emit(_json_dumps([r.to_json() for r in results]), args.out)
    else:
        lines = []
        for r in results:
            lines.append("[%s] %s: %s (%d cases)"
                         % (r.status.upper(), r.id, r.title, r.instances))
            lines.extend("    " + d for d in r.details)
        lines.append("result: %d/%d checks passed"
                     % (len(results) - len(failed), len(results)))
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


# -- plot ----------------------------------------------------------------------

def cmd_plot(args):
    entry = _load_target(args.target, args.resolution)
    report, _ = _analyze(entry, args.refine)
    if args.format == "csv":
        _emit(svgplot.csv_text(report), args.out)
    elif args.format == "text":
        _emit(svgplot.text_grid(report), args.out)
    elif args.format == "json":
        _emit(_json_dumps({"flow": report.flow.name,
                           "roles": svgplot.cell_roles(report)}), args.out)
    else:
        block = None
        try:
            block = blocks.build_block(entry["flow"], entry["k"])
        except (blocks.NoBlockError, blocks.BlockError):
            pass
        _emit(svgplot.svg_text(report, block=block), args.out)
    return 0


# -- construct -------------------------------------------------------------------

def cmd_construct(args):
    name = args.name
    if name.startswith("catalog:"):
        name = name[len("catalog:"):]
    entry = catalog.build(name, args.resolution)
    body = entry["flow"].to_json()
    body["name"] = entry["name"]
    body["ring"] = entry["ring"]
    if entry["k"]:
        body["k"] = sorted(entry["k"])
    _emit(_json_dumps(body), args.out)
    return 0


# -- homology --------------------------------------------------------------------

def _homology_rows(cx, ring):
    rows = []
    for d, h in enumerate(algebra.homology(cx, ring=ring)):
        rows.append({"degree": d, "rank": h["rank"],
                     "torsion": list(h["torsion"])})
    return rows


def _homology_target(args):
    """(complex, default ring, k or None); bare complex names resolve too."""
    try:
        entry = _load_target(args.target, args.resolution)
    except FlowError:
        from .complexes import ComplexError, named_space
        try:
            return named_space(args.target, args.resolution), "z", None
        except ComplexError:
            raise FlowError("unreadable-input",
                            "%r is neither a file, a catalog flow nor a "
                            "named complex" % args.target)
    return entry["flow"].cx, entry["ring"], entry["k"]


def cmd_homology(args):
    cx, default_ring, k = _homology_target(args)
    ring = args.ring or default_ring
    rows = _homology_rows(cx, ring)
    pair = None
    if k:
        kbar = cx.closure(k)
        pair = algebra.poly_to_string(
            algebra.poincare_polynomial(cx, rel=kbar, ring=ring))
    if args.format == "json":
        payload = {"complex": cx.name, "ring": ring, "homology": rows}
        if pair is not None:
            payload["pair_polynomial"] = pair
        _emit(_json_dumps(payload), args.out)
    elif args.format == "csv":
        lines = ["degree,rank,torsion"]
        lines.extend("%d,%d,%s" % (r["degree"], r["rank"],
                                   ";".join(str(t) for t in r["torsion"]))
                     for r in rows)
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = ["%s over %s" % (cx.name, ring)]
        for r in rows:
            tor = ("  torsion " + ",".join(str(t) for t in r["torsion"])
                   if r["torsion"] else "")
            lines.append("H_%d: rank %d%s" % (r["degree"], r["rank"], tor))
        if pair is not None:
            lines.append("pair polynomial relative to k: %s" % pair)
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# -- wiring ----------------------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(
        prog="conleylab",
        description="attractor classification over finite cell complexes")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats, default, target=True):
        if target:
            p.add_argument("target",
                           help="catalog:NAME or a flow file path")
        p.add_argument("--ring", choices=["z", "z2"], default=None,
                       help="coefficient ring (default: the entry's ring)")
        p.add_argument("--resolution", type=int, default=None,
                       help="grid resolution for catalog recipes")
        p.add_argument("--refine", type=int, default=0,
                       help="refinement attempts while the verdict is Unknown")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", default=None, help="write output to this file")

    p = sub.add_parser("analyze", help="classify an attractor candidate")
    common(p, ["json", "text"], "text")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", help="run the structural result checks")
    p.add_argument("--only", default=None, help="run a single check id")
    p.add_argument("--ring", choices=["z", "z2"], default=None)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot", help="draw the analysis as svg, csv or text")
    common(p, ["svg", "csv", "text", "json"], "svg")
    p.set_defaults(fn=cmd_plot)

    p = sub.add_parser("construct", help="write a catalog flow to a file")
    p.add_argument("name", help="catalog recipe name")
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("homology", help="homology of a flow's complex")
    common(p, ["json", "csv", "text"], "text")
    p.set_defaults(fn=cmd_homology)
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except _ERRORS as err:
        code = getattr(err, "code", "error")
        sys.stderr.write("error[%s]: %s\n" % (code, err))
        return 1


if __name__ == "__main__":
    sys.exit(main())
