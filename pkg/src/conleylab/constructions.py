"""Flow constructions for the catalog.

Every builder returns (flow, k) with k the attractor candidate, except the
modifiers freeze_outside and add_uniform_component which transform a flow
that already exists. Errors carry a short machine code on .code.
"""

from collections import deque

from .complexes import (CellComplex, annulus, disc, identity_map,
                        mapping_torus, point, quotient, sphere)
from .flow import CombinatorialFlow


class ConstructionError(ValueError):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _carry_meta(dst, src):
    for key, val in src.items():
        if not key.startswith("_"):
            dst[key] = val


# -- circulating band flows on mapping tori ----------------------------------


def example_general(cx, name=None):
    """Circulating band flow on a mapping torus.

    The band behind the gluing seam is a sink, the band ahead of it creeps
    across while feeding the circulation, and everything in between marches
    around and back into the sink. K is the double band at the seam; the
    circulation makes it an unstable attractor whose explosions stay
    internal."""
    info = cx.meta.get("mapping_torus")
    if not info:
        raise ConstructionError("bad-host", "complex is not a mapping torus")
    ftops = list(info["fiber_tops"])
    m = info["bands"]
    succ = {}
    for s in ftops:
        for i in range(m):
            c = "%s@e%d" % (s, i)
            if i == m - 1:
                succ[c] = [c]
            elif i == 0:
                succ[c] = [c, "%s@e1" % s]
            else:
                succ[c] = ["%s@e%d" % (s, i + 1)]
    k = sorted(["%s@e%d" % (s, m - 1) for s in ftops] +
               ["%s@e0" % s for s in ftops])
    flow = CombinatorialFlow(cx, succ, name=name or "circulation")
    flow.meta["family"] = "example22"
    return flow, k


def circle_with_arc(m=12):
    """Circle circulation with a whisker arc glued at the seam vertex.

    The arc drains into the sink band, so its inner cell joins the basin as
    a second, uniform component while the circulation component stays
    homoclinic."""
    pt = point()
    base = mapping_torus(pt, identity_map(pt), m)
    cells = dict(base.cells)
    bnd = {c: dict(base.boundary[c]) for c in base.cells}
    cells.update({"arc:v:0": 0, "arc:v:1": 0, "arc:e:0": 1, "arc:e:1": 1})
    bnd["arc:v:0"] = {}
    bnd["arc:v:1"] = {}
    bnd["arc:e:0"] = {"arc:v:0": 1, "v:0@v0": -1}
    bnd["arc:e:1"] = {"arc:v:1": 1, "arc:v:0": -1}
    cx = CellComplex("circle-arc(%d)" % m, cells, bnd)
    tops = ["v:0@e%d" % i for i in range(m)]
    succ = {}
    for i, c in enumerate(tops):
        if i == 0:
            succ[c] = [c, tops[1]]
        elif i == m - 1:
            succ[c] = [c]
        else:
            succ[c] = [tops[i + 1]]
    succ["arc:e:0"] = [tops[-1]]
    succ["arc:e:1"] = ["arc:e:0", "arc:e:1"]
    flow = CombinatorialFlow(cx, succ, name="circle-arc")
    flow.meta["family"] = "example22"
    return flow, sorted([tops[-1], tops[0]])


# -- gradient-like sphere flows ----------------------------------------------


def north_south(rows=6, cols=8):
    """North pole repels, south pole attracts, everything else descends."""
    cx = sphere(rows, cols)
    succ = {"cap:n": ["cap:n"] + ["f:0,%d" % l for l in range(cols)],
            "cap:s": ["cap:s"]}
    for r in range(rows):
        for l in range(cols):
            c = "f:%d,%d" % (r, l)
            succ[c] = ["f:%d,%d" % (r + 1, l)] if r < rows - 1 else ["cap:s"]
    flow = CombinatorialFlow(cx, succ, name="north-south")
    flow.meta["family"] = "north-south"
    return flow, ["cap:s"]


def homoclinic_sphere(rows=5, cols=8):
    """One fixed cell on a sphere whose unstable lane returns to it.

    The departure lane climbs the 0-meridian to the north cap, crosses over,
    descends the opposite meridian and lands back in K, while the lobes
    drift sideways into the descending lane. The drift cycles sit far from
    K, so the explosions are external and a witness cycle exists."""
    if rows < 3 or cols < 4:
        raise ConstructionError("bad-host", "homoclinic sphere needs "
                                "rows >= 3 and cols >= 4")
    cx = sphere(rows, cols)
    top, c0 = rows - 1, cols // 2

    def f(r, l):
        return "f:%d,%d" % (r, l % cols)

    succ = {"cap:s": ["cap:s", f(top, 0)], "cap:n": [f(0, c0)]}
    for l in range(cols):
        if l == 0:
            succ[f(top, 0)] = [f(top - 1, 0)]
        else:
            succ[f(top, l)] = ["cap:s", f(top - 1, l)]
    for r in range(top):
        for l in range(cols):
            if l == 0:
                up = [f(r - 1, 0)] if r > 0 else ["cap:n"]
                succ[f(r, 0)] = up + [f(r, 1)]
            elif l == c0:
                down = f(r + 1, c0)
                succ[f(r, c0)] = [down, f(r, c0 + 1)]
            else:
                succ[f(r, l)] = [f(r, l + 1)] + \
                    ([f(top, l)] if r == top - 1 else [])
    flow = CombinatorialFlow(cx, succ, name="homoclinic-sphere")
    flow.meta["family"] = "homoclinic"
    return flow, ["cap:s"]


# -- annulus flows ------------------------------------------------------------


def ns_annulus(rows=4, cols=12):
    """Stable band attractor at one free boundary of an annulus.

    The outermost band drifts sideways while dropping inward, so it stays
    out of the basin; the middle bands fall straight in."""
    cx = annulus(rows, cols)
    succ = {}
    for r in range(rows):
        for l in range(cols):
            c = "e:%d&e:%d" % (r, l)
            if r == 0:
                succ[c] = [c]
            elif r == rows - 1:
                succ[c] = ["e:%d&e:%d" % (r - 1, l),
                           "e:%d&e:%d" % (r, (l + 1) % cols)]
            else:
                succ[c] = ["e:%d&e:%d" % (r - 1, l)]
    flow = CombinatorialFlow(cx, succ, name="ns-annulus")
    flow.meta["family"] = "ns-annulus"
    flow.meta["strip_targets"] = [{
        "edges": ["v:0&e:%d" % l for l in range(cols)],
        "vertices": ["v:0&v:%d" % l for l in range(cols)],
    }]
    return flow, ["e:0&e:%d" % l for l in range(cols)]


def capped_annulus(rows=6, cols=10):
    """Annulus circulation capped off by two frozen polar cells.

    The seam bands span pole to pole, so the frozen caps sit inside the
    collar of K and stay invariant there: K is not isolated and analyze
    refuses it."""
    cx = sphere(rows, cols)
    succ = {"cap:n": ["cap:n"], "cap:s": ["cap:s"]}
    for r in range(rows):
        for l in range(cols):
            c = "f:%d,%d" % (r, l)
            if l == cols - 1:
                succ[c] = [c]
            elif l == 0:
                succ[c] = [c, "f:%d,1" % r]
            else:
                succ[c] = ["f:%d,%d" % (r, l + 1)]
    flow = CombinatorialFlow(cx, succ, name="capped-annulus")
    flow.meta["family"] = "capped-annulus"
    k = ["f:%d,%d" % (r, l) for r in range(rows) for l in (0, cols - 1)]
    return flow, sorted(k)


def embedded_annulus(rows=8, cols=12, band=(2, 5)):
    """Annulus circulation as a latitude band of a sphere, fed from outside.

    Away from the band everything drains toward it, the caps repel, and the
    verdict matches the free-standing annulus circulation."""
    lo, hi = band
    if not (0 < lo <= hi < rows - 1):
        raise ConstructionError("bad-host", "band must be interior")
    cx = sphere(rows, cols)
    succ = {"cap:n": ["cap:n"] + ["f:0,%d" % l for l in range(cols)],
            "cap:s": ["cap:s"] + ["f:%d,%d" % (rows - 1, l)
                                  for l in range(cols)]}
    for r in range(rows):
        for l in range(cols):
            c = "f:%d,%d" % (r, l)
            if r < lo:
                succ[c] = ["f:%d,%d" % (r + 1, l)]
            elif r > hi:
                succ[c] = ["f:%d,%d" % (r - 1, l)]
            elif l == cols - 1:
                succ[c] = [c]
            elif l == 0:
                succ[c] = [c, "f:%d,1" % r]
            else:
                succ[c] = ["f:%d,%d" % (r, l + 1)]
    flow = CombinatorialFlow(cx, succ, name="embedded-annulus")
    flow.meta["family"] = "embedded-annulus"
    k = ["f:%d,%d" % (r, l) for r in range(lo, hi + 1) for l in (0, cols - 1)]
    return flow, sorted(k)


# -- planar flows -------------------------------------------------------------


def planar_disc(sectors=8):
    """Point sink in a disc; the rim drifts, the middle ring falls in."""
    cx = disc(3, sectors)
    succ = {"hub": ["hub"]}
    for s in range(sectors):
        succ["q:1,%d" % s] = ["hub"]
        succ["q:2,%d" % s] = ["q:1,%d" % s, "q:2,%d" % ((s + 1) % sectors)]
    flow = CombinatorialFlow(cx, succ, name="planar-disc")
    flow.meta["family"] = "planar"
    return flow, ["hub"]


def planar_annulus(sectors=8):
    """Circle sink in a disc, fed from both sides, hub repelling."""
    cx = disc(5, sectors)
    succ = {"hub": ["hub"] + ["q:1,%d" % s for s in range(sectors)]}
    for s in range(sectors):
        succ["q:1,%d" % s] = ["q:2,%d" % s]
        succ["q:2,%d" % s] = ["q:2,%d" % s]
        succ["q:3,%d" % s] = ["q:2,%d" % s]
        succ["q:4,%d" % s] = ["q:3,%d" % s, "q:4,%d" % ((s + 1) % sectors)]
    flow = CombinatorialFlow(cx, succ, name="planar-annulus")
    flow.meta["family"] = "planar"
    return flow, ["q:2,%d" % s for s in range(sectors)]


# -- hypersurface flows -------------------------------------------------------


def _cycle_components(cx, z):
    comps = []
    left = set(z)
    while left:
        start = min(left)
        comp = {start}
        left.discard(start)
        q = deque([start])
        while q:
            e = q.popleft()
            for v in cx.vertices_of(e):
                for e2 in tuple(left):
                    if v in cx.vertices_of(e2):
                        left.discard(e2)
                        comp.add(e2)
                        q.append(e2)
        comps.append(sorted(comp))
    return comps


def _same_side_top(cx, v, start, target, z):
    """Top over `target` reached from `start` by rotating around v without
    crossing z."""
    fan = set(cx.star_tops({v}))
    seen = {start}
    q = deque([start])
    while q:
        t = q.popleft()
        if target in cx.boundary[t]:
            return t
        for f in cx.boundary[t]:
            if f in z or v not in cx.vertices_of(f):
                continue
            for t2 in cx.top_cofaces(f):
                if t2 in fan and t2 not in seen:
                    seen.add(t2)
                    q.append(t2)
    return None


def _sides(cx, circ, z):
    """Split the tops along one z-circle into the two lanes."""
    e0 = circ[0]
    t0, t1 = sorted(cx.top_cofaces(e0))
    side_a = {e0: t0}
    side_b = {e0: t1}
    q = deque([e0])
    circset = set(circ)
    while q:
        e = q.popleft()
        for v in cx.vertices_of(e):
            for e2 in circset:
                if e2 in side_a or v not in cx.vertices_of(e2):
                    continue
                ta = _same_side_top(cx, v, side_a[e], e2, z)
                tb = _same_side_top(cx, v, side_b[e], e2, z)
                if ta is None or tb is None or ta == tb:
                    raise ConstructionError(
                        "one-sided", "the cycle has no product collar")
                side_a[e2], side_b[e2] = ta, tb
                q.append(e2)
    if set(side_a.values()) & set(side_b.values()):
        raise ConstructionError("one-sided",
                                "the cycle has no product collar")
    return side_a, side_b


def hypersurface_flow(cx, z, bands=4, name=None):
    """Creep-and-return flow across a two-sided cycle of codim-1 cells.

    K is the complement of `bands` open bands swept out from z. The K side
    of z creeps across, the bands march away from the seam, and the last
    band lands back in K. Raises separating-cycle when cutting along z
    disconnects the complex."""
    z = frozenset(z)
    topdim = cx.top_dim
    for e in sorted(z):
        if cx.cells.get(e) != topdim - 1:
            raise ConstructionError("bad-cycle",
                                    "%s is not a codim-1 cell" % e)
        if len(cx.top_cofaces(e)) != 2:
            raise ConstructionError("bad-cycle",
                                    "%s is not interior two-sided" % e)
    tops = sorted(cx.top_cells())
    seen = {tops[0]}
    q = deque([tops[0]])
    while q:
        t = q.popleft()
        for f in cx.boundary[t]:
            if f in z:
                continue
            for t2 in cx.top_cofaces(f):
                if t2 not in seen:
                    seen.add(t2)
                    q.append(t2)
    if len(seen) != len(tops):
        raise ConstructionError(
            "separating-cycle",
            "cutting along the cycle disconnects the complex")
    circles = _cycle_components(cx, z)
    lanes_per_circle = []
    engines_per_circle = []
    used_all = set()
    for circ in circles:
        side_a, side_b = _sides(cx, circ, z)
        engine = set(side_a.values())
        lanes = [set(side_b.values())]
        used = engine | lanes[0]
        for _ in range(bands - 1):
            cur = lanes[-1]
            nxt = set()
            for t in cur:
                for f in cx.boundary[t]:
                    for t2 in cx.top_cofaces(f):
                        if t2 != t and t2 not in used:
                            nxt.add(t2)
            if not nxt:
                raise ConstructionError("collar-too-tight",
                                        "the swept bands wrap into K")
            lanes.append(nxt)
            used |= nxt
        if used & used_all:
            raise ConstructionError("collars-overlap",
                                    "the cycle collars are not disjoint")
        used_all |= used
        lanes_per_circle.append(lanes)
        engines_per_circle.append(side_a)
    moving = set()
    for lanes in lanes_per_circle:
        for band in lanes:
            moving |= band
    kset = set(tops) - moving
    succ = {t: [t] for t in sorted(kset)}
    for ci, circ in enumerate(circles):
        side_a = engines_per_circle[ci]
        side_b_tops = lanes_per_circle[ci][0]
        for e in circ:
            t = side_a[e]
            if t not in kset:
                raise ConstructionError("collar-too-tight",
                                        "an engine cell fell outside K")
            other = [t2 for t2 in cx.top_cofaces(e) if t2 != t]
            for t2 in other:
                if t2 not in succ[t]:
                    succ[t].append(t2)
        lanes = lanes_per_circle[ci]
        for i, band in enumerate(lanes):
            nxtset = lanes[i + 1] if i + 1 < len(lanes) else kset
            for t in sorted(band):
                outs = []
                for f in sorted(cx.boundary[t]):
                    for t2 in sorted(cx.top_cofaces(f)):
                        if t2 in nxtset and t2 != t and t2 not in outs:
                            outs.append(t2)
                if not outs:
                    raise ConstructionError("collar-too-tight",
                                            "a band cell has nowhere to go")
                succ[t] = outs
    flow = CombinatorialFlow(cx, succ, name=name or "hypersurface")
    flow.meta["family"] = "hypersurface"
    flow.meta["cycle"] = sorted(z)
    return flow, sorted(kset)


# -- modifiers ----------------------------------------------------------------


def freeze_outside(flow, p):
    """Freeze every top cell outside p; p must be positively invariant.

    Cells of p fed only from outside keep a slow self loop so backward
    viability inside p survives the freeze."""
    pset = frozenset(p)
    for c in sorted(pset):
        if c not in flow.tops:
            raise ConstructionError("not-invariant",
                                    "%s is not a top cell" % c)
        if not set(flow.succ[c]) <= pset:
            raise ConstructionError(
                "not-invariant", "p is not positively invariant at %s" % c)
    succ = {}
    for c in sorted(flow.tops):
        succ[c] = list(flow.succ[c]) if c in pset else [c]
    fed = set()
    for outs in succ.values():
        fed.update(outs)
    for c in sorted(pset - fed):
        succ[c] = [c] + succ[c]
    out = CombinatorialFlow(flow.cx, succ, name=flow.name + ":frozen")
    _carry_meta(out.meta, flow.meta)
    return out


def add_uniform_component(flow, k, prefix=None):
    """Glue a drifting strip onto a free seam of K.

    Adds one uniform component to the basin without touching K or the
    homoclinic count. The flow must advertise a seam with every coface in K;
    otherwise there is no room to attach."""
    targets = flow.meta.get("strip_targets", [])
    used = flow.meta.get("strips", [])
    idx = len(used)
    kset = frozenset(k)
    if idx >= len(targets):
        raise ConstructionError("no-room",
                                "no room to attach a uniform strip")
    seam = targets[idx]
    edges, verts = seam["edges"], seam["vertices"]
    for e in edges:
        if not set(flow.cx.top_cofaces(e)) <= kset:
            raise ConstructionError(
                "no-room", "no room to attach a uniform strip: the seam at "
                "%s meets moving cells" % e)
    pre = prefix or ("u%d:" % idx)
    n = len(edges)
    strip = annulus(3, n)
    cells = dict(flow.cx.cells)
    bnd = {c: dict(flow.cx.boundary[c]) for c in flow.cx.cells}
    for c, d in strip.cells.items():
        cells[pre + c] = d
        bnd[pre + c] = {pre + f: v for f, v in strip.boundary[c].items()}
    merged = CellComplex(flow.cx.name + "+u%d" % idx, cells, bnd)
    pairs = []
    for l in range(n):
        pairs.append((edges[l], pre + "v:0&e:%d" % l, 1))
        pairs.append((verts[l], pre + "v:0&v:%d" % l, 1))
    cx2 = quotient(merged, pairs, name=flow.cx.name + "+u%d" % idx)
    succ = {c: list(flow.succ[c]) for c in sorted(flow.tops)}
    for l in range(n):
        c0 = pre + "e:0&e:%d" % l
        c1 = pre + "e:1&e:%d" % l
        c2 = pre + "e:2&e:%d" % l
        succ[c0] = sorted(flow.cx.top_cofaces(edges[l]))
        succ[c1] = [c0]
        succ[c2] = [c1, pre + "e:2&e:%d" % ((l + 1) % n)]
    out = CombinatorialFlow(cx2, succ, name=flow.name + "+strip%d" % idx)
    _carry_meta(out.meta, flow.meta)
    out.meta["strips"] = list(used) + [pre]
    return out, sorted(kset)
