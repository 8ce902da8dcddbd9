"""Named flow catalog.

build(name) returns an entry dict with the flow, the attractor candidate k,
and the expected classification data the test suite pins down. Set the
CONLEYLAB_CATALOG environment variable to a directory of flow JSON files to
make external flows available under their file stem.
"""

import json
import os

from . import constructions as cons
from .complexes import (connected_sum, identity_map, mapping_torus, sphere,
                        sphere_reflection, torus, klein)
from .flow import CombinatorialFlow


class CatalogError(ValueError):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


_CACHE = {}
_ANALYSIS_CACHE = {}


def _expect(classification, r=None, s=None, global_=None, error=None,
            pair_poly=None):
    out = {"classification": classification}
    if r is not None:
        out["r"] = r
    if s is not None:
        out["s"] = s
    if global_ is not None:
        out["global"] = global_
    if error is not None:
        out["error"] = error
    if pair_poly is not None:
        out["pair_poly"] = pair_poly
    return out


def _example22_torus(res):
    flow, k = cons.example_general(torus(res, res), name="example22-torus")
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t^2 + t"), "z"


def _example22_klein(res):
    flow, k = cons.example_general(klein(res, res), name="example22-klein")
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t^2 + t"), "z2"


def _example22_circle(res):
    from .complexes import point
    pt = point()
    cx = mapping_torus(pt, identity_map(pt), res, name="circle(%d)" % res)
    flow, k = cons.example_general(cx, name="example22-circle")
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t"), "z"


def _example22_s2xs1(res):
    fiber = sphere(3, 6)
    cx = mapping_torus(fiber, identity_map(fiber), res,
                       name="s2xs1(%d)" % res)
    flow, k = cons.example_general(cx, name="example22-s2xs1")
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t^3 + t"), "z"


def _example22_s2xts1(res):
    fiber = sphere(3, 6)
    cx = mapping_torus(fiber, sphere_reflection(3, 6), res,
                       name="s2xts1(%d)" % res)
    flow, k = cons.example_general(cx, name="example22-s2xts1")
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t^3 + t"), "z2"


def _north_south(res):
    rows = max(3, res // 2)
    cols = max(4, res - rows)
    flow, k = cons.north_south(rows, cols)
    return flow, k, _expect("Stable", 0, 1, False), "z"


def _ns_annulus(res):
    flow, k = cons.ns_annulus(4, res)
    return flow, k, _expect("Stable", 0, 1, False), "z"


def _ns_annulus_strip(res):
    flow, k = cons.ns_annulus(4, res)
    flow, k = cons.add_uniform_component(flow, k)
    return flow, k, _expect("Stable", 0, 2, False), "z"


def _homoclinic_sphere(res):
    rows = max(4, res // 2)
    cols = max(6, res - rows + ((res - rows) % 2))
    flow, k = cons.homoclinic_sphere(rows, cols)
    return flow, k, _expect("ExternalExplosions", 1, 1, True), "z"


def _hypersurface_torus(res):
    cx = torus(res, res)
    z = ["e:%d@v%d" % (l, res - 2) for l in range(res)]
    flow, k = cons.hypersurface_flow(cx, z, name="hypersurface-torus")
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t^2 + t"), "z"


def _genus2(res):
    mid = res // 2
    cell = "e:%d@e%d" % (mid, mid)
    return connected_sum(torus(res, res), torus(res, res), cell, cell)


def _genus2_targets(res):
    return [
        {"edges": ["a:e:%d@v3" % l for l in range(res)],
         "vertices": ["a:v:%d@v3" % l for l in range(res)]},
        {"edges": ["b:e:%d@v3" % l for l in range(res)],
         "vertices": ["b:v:%d@v3" % l for l in range(res)]},
    ]


def _hypersurface_genus2(res):
    cx = _genus2(res)
    z = ["a:e:%d@v%d" % (l, res - 2) for l in range(res)]
    flow, k = cons.hypersurface_flow(cx, z, name="hypersurface-genus2")
    flow.meta["strip_targets"] = _genus2_targets(res)
    return flow, k, _expect("NoExternalExplosions", 1, 1, True,
                            pair_poly="t^2 + t"), "z"


def _hypersurface_genus2_two(res):
    cx = _genus2(res)
    z = (["a:e:%d@v%d" % (l, res - 2) for l in range(res)] +
         ["b:e:%d@v%d" % (l, res - 2) for l in range(res)])
    flow, k = cons.hypersurface_flow(cx, z, name="hypersurface-genus2-two")
    return flow, k, _expect("NoExternalExplosions", 2, 2, True,
                            pair_poly="2t^2 + 2t"), "z"


def _hypersurface_genus2_strip(res):
    flow, k, _, ring = _hypersurface_genus2(res)
    flow, k = cons.add_uniform_component(flow, k)
    return flow, k, _expect("NoExternalExplosions", 1, 2, False), ring


def _hypersurface_genus2_strip2(res):
    flow, k, _, ring = _hypersurface_genus2(res)
    flow, k = cons.add_uniform_component(flow, k)
    flow, k = cons.add_uniform_component(flow, k)
    return flow, k, _expect("NoExternalExplosions", 1, 3, False), ring


def _planar_disc(res):
    flow, k = cons.planar_disc(res)
    return flow, k, _expect("Stable", 0, 1, False), "z"


def _planar_annulus(res):
    flow, k = cons.planar_annulus(res)
    return flow, k, _expect("Stable", 0, 2, False), "z"


def _capped_annulus(res):
    flow, k = cons.capped_annulus(max(4, res // 2), res)
    return flow, k, _expect(None, error="not-isolated"), "z"


def _rest_torus(res):
    from .flow import rest_flow
    flow = rest_flow(torus(res, res), name="rest-torus")
    flow.meta["family"] = "rest"
    return flow, None, _expect(None, error="no-candidate"), "z"


_RECIPES = {
    "example22-torus": (_example22_torus, 12, 6),
    "example22-klein": (_example22_klein, 12, 6),
    "example22-circle": (_example22_circle, 12, 4),
    "example22-s2xs1": (_example22_s2xs1, 6, 4),
    "example22-s2xts1": (_example22_s2xts1, 6, 4),
    "north-south": (_north_south, 12, 7),
    "ns-annulus": (_ns_annulus, 12, 4),
    "ns-annulus-strip": (_ns_annulus_strip, 12, 4),
    "homoclinic-sphere": (_homoclinic_sphere, 12, 8),
    "hypersurface-torus": (_hypersurface_torus, 12, 8),
    "hypersurface-genus2": (_hypersurface_genus2, 8, 8),
    "hypersurface-genus2-two": (_hypersurface_genus2_two, 8, 8),
    "hypersurface-genus2-strip": (_hypersurface_genus2_strip, 8, 8),
    "hypersurface-genus2-strip2": (_hypersurface_genus2_strip2, 8, 8),
    "planar-disc": (_planar_disc, 8, 4),
    "planar-annulus": (_planar_annulus, 8, 4),
    "capped-annulus": (_capped_annulus, 10, 6),
    "rest-torus": (_rest_torus, 8, 3),
}


def _band_div(cid, factor):
    base, band = cid.rsplit("@e", 1)
    return base, int(band) // factor


def _proj_torus(cid, factor):
    base, band = _band_div(cid, factor)
    pos = int(base.split(":")[1])
    return "e:%d@e%d" % (pos // factor, band)


def _proj_band_only(cid, factor):
    base, band = _band_div(cid, factor)
    return "%s@e%d" % (base, band)


def _proj_sphere(cid, factor):
    if cid.startswith("cap:"):
        return cid
    r, l = cid[2:].split(",")
    return "f:%d,%d" % (int(r) // factor, int(l) // factor)


_PROJECTIONS = {
    "example22-torus": _proj_torus,
    "example22-klein": _proj_torus,
    "example22-circle": _proj_band_only,
    "example22-s2xs1": _proj_band_only,
    "example22-s2xts1": _proj_band_only,
    "north-south": _proj_sphere,
    "homoclinic-sphere": _proj_sphere,
}


def names():
    out = list(_RECIPES)
    out.extend(n for n in _external_names() if n not in _RECIPES)
    return sorted(out)


def _external_dir():
    return os.environ.get("CONLEYLAB_CATALOG")


def _external_names():
    d = _external_dir()
    if not d or not os.path.isdir(d):
        return []
    return sorted(os.path.splitext(f)[0] for f in os.listdir(d)
                  if f.endswith(".json"))


def _load_external(name):
    d = _external_dir()
    path = os.path.join(d, name + ".json")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CatalogError("unreadable-input",
                           "cannot read flow file %s: %s" % (path, exc))
    flow = CombinatorialFlow.from_json(data, complex_resolver=None)
    if not flow.name:
        flow.name = name
    k = data.get("k")
    return {"name": name, "resolution": None, "flow": flow,
            "k": sorted(k) if k else None, "expected": {}, "ring": "z"}


def build(name, resolution=None):
    """Build a catalog entry: {name, resolution, flow, k, expected, ring}."""
    if name not in _RECIPES:
        d = _external_dir()
        if d and name in _external_names():
            return _load_external(name)
        raise CatalogError("unknown-flow", "unknown catalog flow %r" % name)
    fn, default, minimum = _RECIPES[name]
    res = default if resolution is None else int(resolution)
    if res < minimum:
        raise CatalogError("bad-resolution",
                           "%s needs resolution >= %d" % (name, minimum))
    key = (name, res)
    if key not in _CACHE:
        flow, k, expected, ring = fn(res)
        flow.meta["recipe"] = {"name": name, "resolution": res}
        if k:
            flow.meta["k"] = sorted(k)
        _CACHE[key] = {"name": name, "resolution": res, "flow": flow,
                       "k": sorted(k) if k else None, "expected": expected,
                       "ring": ring}
    return _CACHE[key]


def analysis(name, resolution=None):
    """Cached attractor report for a catalog entry with a candidate."""
    from . import attractor
    entry = build(name, resolution)
    key = (entry["name"], entry["resolution"])
    if key not in _ANALYSIS_CACHE:
        if not entry["k"]:
            raise CatalogError("no-candidate",
                               "%s carries no attractor candidate" % name)
        _ANALYSIS_CACHE[key] = attractor.analyze(entry["flow"], entry["k"])
    return _ANALYSIS_CACHE[key]


def refine_flow(flow, factor=2):
    """Rebuild a recipe flow at finer resolution.

    Returns (entry, projection) where projection maps fine top cells onto
    the coarse ones, or None when the family has no cell-wise projection."""
    recipe = flow.meta.get("recipe")
    if not recipe or recipe.get("name") not in _RECIPES:
        from .flow import FlowError
        raise FlowError("refine-unsupported", "flow lacks refinement rule")
    if factor < 1 or int(factor) != factor:
        raise CatalogError("bad-resolution", "factor must be a positive int")
    name = recipe["name"]
    res = recipe["resolution"] * int(factor)
    entry = build(name, res)
    projfn = _PROJECTIONS.get(name)
    proj = None
    if projfn is not None:
        proj = {c: projfn(c, int(factor)) for c in entry["flow"].tops}
    return entry, proj
