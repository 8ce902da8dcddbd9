"""Attractor pipeline: stabilization, basin, components, classification.

The classification sweeps test J+ enclosures of basin cells and J- enclosures
of stabilization cells against the collar of K, with the reference region
basin - K: an open neighborhood of each swept cell, so the relative
enclosures carry the same information as the ambient ones do for points of
the basin. Verdicts are exactly one of Stable, NoExternalExplosions,
ExternalExplosions, Unknown.
"""

from collections import deque

VERDICTS = ("Stable", "NoExternalExplosions", "ExternalExplosions", "Unknown")


class NotIsolatedError(ValueError):
    code = "not-isolated"


class AttractorReport:
    def __init__(self, flow, k):
        self.flow = flow
        self.k = frozenset(k)
        self.stabilization = frozenset()
        self.basin = frozenset()
        self.unstable = frozenset()
        self.components = []          # list of {"cells": frozenset, "label": str}
        self.r = 0
        self.s = 0
        self.classification = "Unknown"
        self.global_attractor = False
        self.witness = None
        self.witness_cycle = []
        self.notes = []

    def to_json(self):
        return {
            "schema": "1",
            "flow": self.flow.name,
            "k": sorted(self.k),
            "stabilization": sorted(self.stabilization),
            "basin": sorted(self.basin),
            "unstable_manifold": sorted(self.unstable),
            "components": [{"cells": sorted(c["cells"]), "label": c["label"]}
                           for c in self.components],
            "r": self.r,
            "s": self.s,
            "classification": self.classification,
            "global": self.global_attractor,
            "witness": self.witness,
            "witness_cycle": list(self.witness_cycle),
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data, flow):
        rep = cls(flow, data["k"])
        rep.stabilization = frozenset(data["stabilization"])
        rep.basin = frozenset(data["basin"])
        rep.unstable = frozenset(data.get("unstable_manifold", []))
        rep.components = [{"cells": frozenset(c["cells"]), "label": c["label"]}
                          for c in data["components"]]
        rep.r = data["r"]
        rep.s = data["s"]
        rep.classification = data["classification"]
        rep.global_attractor = data["global"]
        rep.witness = data.get("witness")
        rep.witness_cycle = list(data.get("witness_cycle", []))
        rep.notes = list(data.get("notes", []))
        return rep


def collar(flow, k):
    """Closed star of k, as a set of top cells. All containment tests of the
    classification are taken against this set."""
    return frozenset(flow.cx.star_tops(set(k)))


def maximal_invariant(flow, region):
    """Largest subset of region viable forward and backward: iterated removal
    of cells with no successor or no predecessor inside."""
    s = set(region)
    changed = True
    while changed:
        changed = False
        for c in sorted(s):
            if not (set(flow.succ[c]) & s) or not (set(flow.pred[c]) & s):
                s.discard(c)
                changed = True
    return frozenset(s)


def check_isolated(flow, k):
    kset = frozenset(k)
    if maximal_invariant(flow, collar(flow, kset)) != kset:
        raise NotIsolatedError("k is not the maximal invariant set of its collar")


def stabilization(flow, k):
    """Union of J+ enclosures over k, closed under the same union."""
    s = frozenset(k)
    while True:
        ring = set()
        for x in s:
            ring |= flow.one_ring(x)
        nxt = s | flow.eventual_image_scc(ring, "f")
        if nxt == s:
            return s
        s = nxt


def basin(flow, k, khat=None):
    """Cells whose omega enclosure lands inside the stabilization."""
    check_isolated(flow, k)
    if khat is None:
        khat = stabilization(flow, k)
    out = set()
    for x in sorted(flow.tops):
        if flow.eventual_image_scc({x}, "f") <= khat:
            out.add(x)
    return frozenset(out)


def unstable_manifold(flow, k):
    col = collar(flow, k)
    out = set()
    for x in sorted(flow.tops):
        enc = flow.eventual_image_scc({x}, "p")
        if enc and enc <= col:
            out.add(x)
    return frozenset(out)


def components(flow, basin_cells, k, khat):
    """Connected components of basin - k through shared codim-1 faces,
    labeled homoclinic when contained in the stabilization."""
    rest = set(basin_cells) - set(k)
    comps = []
    seen = set()
    for start in sorted(rest):
        if start in seen:
            continue
        comp = {start}
        q = deque([start])
        seen.add(start)
        while q:
            u = q.popleft()
            for f in flow.cx.boundary[u]:
                for v in flow.cx.top_cofaces(f):
                    if v in rest and v not in seen:
                        seen.add(v)
                        comp.add(v)
                        q.append(v)
        label = "homoclinic" if comp <= khat else "uniform"
        comps.append({"cells": frozenset(comp), "label": label})
    return comps


def _witness_search(flow, candidates, within, col):
    """Look for an F-cycle fully outside the collar, reachable forward from
    the one-ring of a violating cell. Returns (cell, cycle) or None."""
    rec = flow.recurrent_cells()
    for x in sorted(candidates):
        seed = flow.one_ring(x) & within
        reach = flow.reach(seed, "f")
        core = (rec & reach) - col
        # keep only cells whose cycle stays outside the collar: grow the
        # component of core under mutual reachability restricted to core
        core = _prune_to_cycles(flow, core)
        if not core:
            continue
        cycle = _extract_cycle(flow, core)
        if cycle:
            return x, cycle
    return None


def _prune_to_cycles(flow, cells):
    s = set(cells)
    changed = True
    while changed:
        changed = False
        for c in sorted(s):
            if not (set(flow.succ[c]) & s):
                s.discard(c)
                changed = True
    return s


def _extract_cycle(flow, core):
    if not core:
        return []
    start = min(core)
    path = [start]
    pos = {start: 0}
    cur = start
    while True:
        nxt = min(d for d in flow.succ[cur] if d in core)
        if nxt in pos:
            return path[pos[nxt]:]
        pos[nxt] = len(path)
        path.append(nxt)
        cur = nxt


def classify(flow, k, report):
    """Fill classification, witness and notes on the report."""
    kset = frozenset(k)
    khat = report.stabilization
    bas = report.basin
    col = collar(flow, kset)
    if khat == kset:
        report.classification = "Stable"
        return report
    within = bas - kset
    violations = []
    for x in sorted(within):
        if not flow.j_plus(x, within).issubset(col):
            violations.append(x)
    dual_violations = []
    for x in sorted(khat - kset):
        if x in within and not flow.j_minus(x, within).issubset(col):
            dual_violations.append(x)
    if not violations and not dual_violations:
        report.classification = "NoExternalExplosions"
        return report
    found = _witness_search(flow, violations or dual_violations, within, col)
    if found:
        report.classification = "ExternalExplosions"
        report.witness = found[0]
        report.witness_cycle = list(found[1])
        return report
    report.classification = "Unknown"
    report.notes.append("enclosures leave the collar but no out-of-collar "
                        "cycle was certified; refine and retry")
    return report


def analyze(flow, k):
    """Run the whole pipeline on an isolated attractor candidate."""
    kset = frozenset(k)
    for c in kset:
        if c not in flow.tops:
            raise NotIsolatedError("k contains %s which is not a top cell" % c)
    check_isolated(flow, kset)
    report = AttractorReport(flow, kset)
    report.stabilization = stabilization(flow, kset)
    report.basin = basin(flow, kset, report.stabilization)
    report.unstable = unstable_manifold(flow, kset)
    report.components = components(flow, report.basin, kset, report.stabilization)
    report.s = len(report.components)
    report.r = sum(1 for c in report.components if c["label"] == "homoclinic")
    report.global_attractor = report.basin == flow.tops
    classify(flow, kset, report)
    return report
