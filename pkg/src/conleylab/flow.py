"""Combinatorial flows: multivalued successor maps on top cells.

The transition relation F is total and local (successors stay inside the
one-ring). P is the exact transpose. Limit sets are eventual images: iterate
the image of a seed set until the set sequence turns periodic, then take the
union of the cycle. An equivalent formulation through recurrent cells and
reachability is used for whole-catalog sweeps; the two are tested against
each other.
"""

from collections import deque


class FlowError(ValueError):
    def __init__(self, code, msg=None):
        super().__init__(msg or code)
        self.code = code


class LimitEnclosure:
    """A certified outer enclosure of a limit set, as a set of top cells.

    Membership of a cell is tested through its one-ring: the enclosure is a
    region, and a cell belongs to the limit behaviour when its neighborhood
    meets that region. Plain `in` on .cells is deliberately not the test."""

    def __init__(self, cells, kind, flow, certified=True):
        self.cells = frozenset(cells)
        self.kind = kind
        self.flow = flow
        self.certified = certified

    def touches(self, cell):
        return bool(self.flow.one_ring(cell) & self.cells)

    def issubset(self, cellset):
        return self.cells <= frozenset(cellset)

    def to_json(self):
        return {"cells": sorted(self.cells), "kind": self.kind,
                "certified": self.certified}

    def __repr__(self):
        return "LimitEnclosure(%s, %d cells)" % (self.kind, len(self.cells))


class CombinatorialFlow:
    def __init__(self, cx, successors, name=None, meta=None):
        self.cx = cx
        self.name = name or ("flow on " + cx.name)
        self.meta = dict(meta or {})
        tops = cx.top_cells()
        topset = frozenset(tops)
        self.succ = {}
        for c in tops:
            if c not in successors or not successors[c]:
                raise FlowError("not-total", "cell %s has no successor" % c)
            out = tuple(sorted(set(successors[c])))
            for d in out:
                if d not in topset:
                    raise FlowError("bad-successor",
                                    "%s -> %s is not a top cell" % (c, d))
                if d not in cx.one_ring(c):
                    raise FlowError("not-local",
                                    "%s -> %s leaves the one-ring" % (c, d))
            self.succ[c] = out
        extra = set(successors) - topset
        if extra:
            raise FlowError("bad-successor",
                            "successors given for non top cells: %s" % sorted(extra)[:3])
        self.pred = {c: [] for c in tops}
        for c, outs in self.succ.items():
            for d in outs:
                self.pred[d].append(c)
        for c in self.pred:
            self.pred[c] = tuple(sorted(self.pred[c]))
        self.tops = topset
        self._rec = None

    # -- basic structure ----------------------------------------------------

    @property
    def fixed(self):
        return frozenset(c for c, out in self.succ.items() if out == (c,))

    def one_ring(self, c):
        return self.cx.one_ring(c)

    def _table(self, direction):
        return self.succ if direction == "f" else self.pred

    # -- eventual images ----------------------------------------------------

    def eventual_image(self, seed, direction="f", within=None):
        """Iterate the image until the set sequence repeats; union the cycle.

        With `within` the whole iteration is relative to that region, giving
        the prolongational limits their reference-region semantics."""
        table = self._table(direction)
        s = frozenset(seed)
        if within is not None:
            within = frozenset(within)
            s = s & within
        seen = {}
        seq = []
        while s not in seen:
            seen[s] = len(seq)
            seq.append(s)
            nxt = set()
            for c in s:
                nxt.update(table[c])
            if within is not None:
                nxt &= within
            s = frozenset(nxt)
        out = set()
        for t in seq[seen[s]:]:
            out |= t
        return frozenset(out)

    def reach(self, seed, direction="f", within=None):
        table = self._table(direction)
        out = set(seed)
        if within is not None:
            out &= set(within)
        q = deque(out)
        while q:
            c = q.popleft()
            for d in table[c]:
                if d not in out and (within is None or d in within):
                    out.add(d)
                    q.append(d)
        return out

    def recurrent_cells(self, within=None):
        """Cells on some F-cycle (self loops included), optionally of the
        subgraph induced on `within`."""
        if within is not None:
            key = frozenset(within)
            cache = self.meta.setdefault("_rec_within", {})
            if key in cache:
                return cache[key]
            rec = self._recurrent(key)
            cache[key] = rec
            return rec
        if self._rec is not None:
            return self._rec
        self._rec = self._recurrent(None)
        return self._rec

    def _recurrent(self, within):
        # iterative Tarjan on the induced subgraph
        def outs(c):
            if within is None:
                return self.succ[c]
            return tuple(d for d in self.succ[c] if d in within)

        index = {}
        low = {}
        onstack = set()
        stack = []
        rec = set()
        counter = [0]
        order = sorted(self.tops if within is None else within)
        for root in order:
            if root in index:
                continue
            work = [(root, iter(outs(root)))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            onstack.add(root)
            while work:
                node, it = work[-1]
                advanced = False
                for d in it:
                    if d not in index:
                        index[d] = low[d] = counter[0]
                        counter[0] += 1
                        stack.append(d)
                        onstack.add(d)
                        work.append((d, iter(outs(d))))
                        advanced = True
                        break
                    elif d in onstack:
                        low[node] = min(low[node], index[d])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    comp = []
                    while True:
                        w = stack.pop()
                        onstack.discard(w)
                        comp.append(w)
                        if w == node:
                            break
                    if len(comp) > 1:
                        rec.update(comp)
                    elif comp[0] in outs(comp[0]):
                        rec.add(comp[0])
        return frozenset(rec)

    def eventual_image_scc(self, seed, direction="f", within=None):
        """Reach of the recurrent part of the reach of the seed. Agrees with
        eventual_image on every flow; cheaper for many-seed sweeps."""
        r = self.reach(seed, direction, within)
        core = self.recurrent_cells(within) & r
        return frozenset(self.reach(core, direction, within))

    # -- limit enclosures -----------------------------------------------------

    def omega_limit(self, x):
        self._need_cell(x)
        return LimitEnclosure(self.eventual_image({x}, "f"), "omega", self)

    def alpha_limit(self, x):
        self._need_cell(x)
        return LimitEnclosure(self.eventual_image({x}, "p"), "alpha", self)

    def j_plus(self, x, within=None):
        seed = self._j_seed(x, within)
        return LimitEnclosure(self.eventual_image(seed, "f", within),
                              "jplus", self)

    def j_minus(self, x, within=None):
        seed = self._j_seed(x, within)
        return LimitEnclosure(self.eventual_image(seed, "p", within),
                              "jminus", self)

    def _j_seed(self, x, within):
        self._need_cell(x)
        if within is None:
            return self.one_ring(x)
        a = frozenset(within)
        if x not in a:
            raise FlowError("outside-region",
                            "%s is not in the reference region" % x)
        return self.one_ring(x) & a

    def _need_cell(self, x):
        if x not in self.tops:
            raise FlowError("bad-cell", "%s is not a top cell" % x)

    # -- serialization --------------------------------------------------------

    def to_json(self, inline_complex=True):
        body = {
            "schema": "1",
            "complex": self.cx.to_json() if inline_complex else self.cx.name,
            "successors": {c: sorted(self.succ[c]) for c in sorted(self.succ)},
            "fixed": sorted(self.fixed),
        }
        if "recipe" in self.meta:
            body["recipe"] = self.meta["recipe"]
        return body

    @classmethod
    def from_json(cls, data, complex_resolver=None):
        cxdata = data["complex"]
        if isinstance(cxdata, str):
            if complex_resolver is None:
                raise FlowError("unreadable-input",
                                "flow references complex %r by name" % cxdata)
            cx = complex_resolver(cxdata)
        else:
            from .complexes import CellComplex
            cx = CellComplex.from_json(cxdata)
        meta = {}
        if "recipe" in data:
            meta["recipe"] = data["recipe"]
        flow = cls(cx, {c: list(v) for c, v in data["successors"].items()},
                   name=data.get("name"), meta=meta)
        declared = set(data.get("fixed", []))
        if declared and declared != set(flow.fixed):
            raise FlowError("unreadable-input", "fixed set disagrees with successors")
        return flow

    def refine(self, factor=2):
        recipe = self.meta.get("recipe")
        if not recipe:
            raise FlowError("refine-unsupported", "flow lacks refinement rule")
        from . import catalog
        entry, _ = catalog.refine_flow(self, factor)
        return entry["flow"]


def rest_flow(cx, name=None):
    """Every top cell is fixed."""
    return CombinatorialFlow(cx, {c: [c] for c in cx.top_cells()},
                             name=name or ("rest on " + cx.name))
