"""Finite regular CW complexes with integer incidence data.

Cells are string ids, each with a dimension and a boundary chain written as
{face_id: coefficient}. Every constructor validates del o del = 0, so a bad
sign in a builder fails loudly at build time instead of corrupting homology
later.
"""

from collections import defaultdict


class ComplexError(ValueError):
    pass


class CellComplex:
    def __init__(self, name, cells, boundary, identifications=None, meta=None):
        self.name = name
        self.cells = dict(cells)          # id -> dim
        self.boundary = {c: dict(boundary.get(c, {})) for c in self.cells}
        self.identifications = list(identifications or [])
        self.meta = dict(meta or {})
        self._validate()
        self._index()

    # -- construction-time checks ------------------------------------------

    def _validate(self):
        for c, faces in self.boundary.items():
            dc = self.cells[c]
            for f, coeff in faces.items():
                if f not in self.cells:
                    raise ComplexError("boundary of %s mentions unknown cell %s" % (c, f))
                if self.cells[f] != dc - 1:
                    raise ComplexError("boundary of %s (dim %d) mentions %s (dim %d)"
                                       % (c, dc, f, self.cells[f]))
                if coeff == 0:
                    raise ComplexError("zero coefficient stored for %s in %s" % (f, c))
        # del o del = 0 over the integers
        for c in self.cells:
            acc = defaultdict(int)
            for f, coeff in self.boundary[c].items():
                for g, coeff2 in self.boundary[f].items():
                    acc[g] += coeff * coeff2
            bad = {g: v for g, v in acc.items() if v != 0}
            if bad:
                raise ComplexError("del del != 0 at %s: %r" % (c, bad))

    def _index(self):
        self._by_dim = defaultdict(list)
        for c, d in self.cells.items():
            self._by_dim[d].append(c)
        for d in self._by_dim:
            self._by_dim[d].sort()
        self.top_dim = max(self._by_dim) if self.cells else 0
        self._cofaces = defaultdict(list)
        for c, faces in self.boundary.items():
            for f in faces:
                self._cofaces[f].append(c)
        for f in self._cofaces:
            self._cofaces[f].sort()
        # vertex support of each closed cell, for star and ring queries
        self._verts = {}
        for d in sorted(self._by_dim):
            for c in self._by_dim[d]:
                if d == 0:
                    self._verts[c] = frozenset([c])
                else:
                    s = set()
                    for f in self.boundary[c]:
                        s |= self._verts[f]
                    self._verts[c] = frozenset(s)
        self._ring_cache = {}

    # -- queries -----------------------------------------------------------

    def dim(self, c):
        return self.cells[c]

    def cells_of_dim(self, d):
        return list(self._by_dim.get(d, []))

    def top_cells(self):
        return list(self._by_dim.get(self.top_dim, []))

    def cofaces(self, c):
        return list(self._cofaces.get(c, []))

    def top_cofaces(self, c):
        return [x for x in self._cofaces.get(c, []) if self.cells[x] == self.top_dim]

    def closure(self, cellset):
        out = set()
        stack = list(cellset)
        while stack:
            c = stack.pop()
            if c in out:
                continue
            out.add(c)
            stack.extend(self.boundary[c])
        return out

    def vertices_of(self, c):
        return self._verts[c]

    def one_ring(self, c):
        """Top cells whose closure meets the closure of c (c included)."""
        if c in self._ring_cache:
            return self._ring_cache[c]
        vs = self._verts[c]
        ring = set()
        for v in vs:
            for x in self._cofaces_by_vertex(v):
                ring.add(x)
        if self.cells[c] == self.top_dim:
            ring.add(c)
        ring = frozenset(ring)
        self._ring_cache[c] = ring
        return ring

    def _cofaces_by_vertex(self, v):
        # all top cells whose closure contains vertex v
        if not hasattr(self, "_vert_tops"):
            vt = defaultdict(set)
            for t in self.top_cells():
                for w in self._verts[t]:
                    vt[w].add(t)
            self._vert_tops = vt
        return self._vert_tops.get(v, ())

    def star_tops(self, cellset):
        """Closed star: every top cell whose closure meets closure(cellset)."""
        cl = self.closure(cellset)
        vs = set()
        for c in cl:
            vs |= self._verts[c]
        out = set()
        for v in vs:
            out |= set(self._cofaces_by_vertex(v))
        for c in cellset:
            if self.cells[c] == self.top_dim:
                out.add(c)
        return out

    def shared_faces(self, a, b):
        """Codim-1 faces shared by top cells a and b."""
        return set(self.boundary[a]) & set(self.boundary[b])

    def euler(self, cellset=None):
        """Euler characteristic of the closure of cellset (whole complex if None)."""
        if cellset is None:
            cl = self.cells
        else:
            cl = self.closure(cellset)
        if not cl:
            return 0
        chi = 0
        for c in cl:
            chi += (-1) ** self.cells[c]
        return chi

    def is_closed_manifold(self):
        """Every codim-1 face sits in exactly two top cells."""
        for f in self._by_dim.get(self.top_dim - 1, []):
            if len(self.top_cofaces(f)) != 2:
                return False
        return True

    def is_closed_surface(self):
        return self.top_dim == 2 and self.is_closed_manifold()

    def is_orientable(self):
        """Propagate top-cell orientations across codim-1 faces; look for a clash.

        Only meaningful for pseudo-manifolds. Free faces (one top coface) put
        no constraint.
        """
        sign = {}
        tops = self.top_cells()
        for start in tops:
            if start in sign:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                u = stack.pop()
                for f in self.boundary[u]:
                    cof = self.top_cofaces(f)
                    if len(cof) != 2:
                        continue
                    v = cof[0] if cof[1] == u else cof[1]
                    if v == u:
                        continue
                    want = -sign[u] * self.boundary[u][f] * self.boundary[v][f]
                    if v in sign:
                        if sign[v] != want:
                            return False
                    else:
                        sign[v] = want
                        stack.append(v)
        return True

    def subcomplex(self, cellset, name=None):
        cl = self.closure(cellset)
        cells = {c: self.cells[c] for c in cl}
        bnd = {c: dict(self.boundary[c]) for c in cl}
        return CellComplex(name or (self.name + ":sub"), cells, bnd)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "name": self.name,
            "cells": [[c, self.cells[c]] for c in sorted(self.cells)],
            "boundary": {c: sorted(self.boundary[c].items())
                         for c in sorted(self.cells) if self.boundary[c]},
            "identifications": self.identifications,
        }

    @classmethod
    def from_json(cls, data):
        cells = {c: d for c, d in data["cells"]}
        bnd = {c: {f: k for f, k in pairs} for c, pairs in data.get("boundary", {}).items()}
        return cls(data.get("name", "complex"), cells, bnd,
                   identifications=data.get("identifications"))


class CellMap:
    """Cellular chain map given as cell -> (cell, sign)."""

    def __init__(self, src, dst, mapping):
        self.src = src
        self.dst = dst
        self.mapping = dict(mapping)
        self._validate()

    def _validate(self):
        for c, (c2, s) in self.mapping.items():
            if self.src.cells[c] != self.dst.cells[c2]:
                raise ComplexError("map does not preserve dimension at %s" % c)
            if s not in (1, -1):
                raise ComplexError("map sign at %s must be +-1" % c)
            # chain map: del(phi c) = phi(del c)
            lhs = defaultdict(int)
            for f, k in self.dst.boundary[c2].items():
                lhs[f] += s * k
            rhs = defaultdict(int)
            for f, k in self.src.boundary[c].items():
                f2, s2 = self.mapping[f]
                rhs[f2] += k * s2
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                raise ComplexError("not a chain map at %s" % c)

    def __call__(self, c):
        return self.mapping[c]


def complete_map_signs(src, dst, bijection):
    """Solve the sign of each cell so that the bijection becomes a chain map.

    Vertices get +1. Higher cells are solved one dimension at a time from the
    commutation constraint; an inconsistent bijection raises."""
    mapping = {}
    for v in src.cells_of_dim(0):
        mapping[v] = (bijection[v], 1)
    for d in range(1, src.top_dim + 1):
        for c in src.cells_of_dim(d):
            c2 = bijection[c]
            rhs = defaultdict(int)
            for f, k in src.boundary[c].items():
                f2, s2 = mapping[f]
                rhs[f2] += k * s2
            dst_b = dst.boundary[c2]
            sign = None
            for f2, k2 in dst_b.items():
                if rhs.get(f2, 0):
                    sign = rhs[f2] // k2
                    break
            if sign not in (1, -1):
                raise ComplexError("cannot orient %s over %s" % (c, c2))
            for f2, k2 in dst_b.items():
                if sign * k2 != rhs.get(f2, 0):
                    raise ComplexError("inconsistent signs at %s" % c)
            if set(rhs) - set(dst_b):
                raise ComplexError("boundary mismatch at %s" % c)
            mapping[c] = (c2, sign)
    return CellMap(src, dst, mapping)


def identity_map(cx):
    return CellMap(cx, cx, {c: (c, 1) for c in cx.cells})


# -- elementary builders ----------------------------------------------------

def point():
    return CellComplex("point", {"v:0": 0}, {})


def interval(n):
    """n edges in a row, vertices v:0 .. v:n."""
    assert n >= 1
    cells = {}
    bnd = {}
    for i in range(n + 1):
        cells["v:%d" % i] = 0
    for i in range(n):
        e = "e:%d" % i
        cells[e] = 1
        bnd[e] = {"v:%d" % (i + 1): 1, "v:%d" % i: -1}
    return CellComplex("interval(%d)" % n, cells, bnd)


def circle(n):
    assert n >= 3, "need at least 3 edges for a regular circle"
    cells = {}
    bnd = {}
    for i in range(n):
        cells["v:%d" % i] = 0
    for i in range(n):
        e = "e:%d" % i
        cells[e] = 1
        bnd[e] = {"v:%d" % ((i + 1) % n): 1, "v:%d" % i: -1}
    return CellComplex("circle(%d)" % n, cells, bnd)


def circle_reflection(n):
    """The reflection l -> -l of circle(n), as a chain map."""
    cx = circle(n)
    bij = {}
    for i in range(n):
        bij["v:%d" % i] = "v:%d" % ((n - i) % n)
        bij["e:%d" % i] = "e:%d" % ((n - 1 - i) % n)
    return complete_map_signs(cx, cx, bij)


def sphere(rows, cols):
    """Grid sphere: `rows` bands of squares between two polygonal caps."""
    assert rows >= 1 and cols >= 3
    cells = {}
    bnd = {}
    for r in range(rows + 1):
        for l in range(cols):
            cells["w:%d,%d" % (r, l)] = 0
    for r in range(rows + 1):
        for l in range(cols):
            e = "eh:%d,%d" % (r, l)
            cells[e] = 1
            bnd[e] = {"w:%d,%d" % (r, (l + 1) % cols): 1, "w:%d,%d" % (r, l): -1}
    for r in range(rows):
        for l in range(cols):
            e = "ev:%d,%d" % (r, l)
            cells[e] = 1
            bnd[e] = {"w:%d,%d" % (r + 1, l): 1, "w:%d,%d" % (r, l): -1}
    for r in range(rows):
        for l in range(cols):
            f = "f:%d,%d" % (r, l)
            cells[f] = 2
            bnd[f] = {"eh:%d,%d" % (r, l): 1,
                      "ev:%d,%d" % (r, (l + 1) % cols): 1,
                      "eh:%d,%d" % (r + 1, l): -1,
                      "ev:%d,%d" % (r, l): -1}
    cells["cap:n"] = 2
    bnd["cap:n"] = {"eh:0,%d" % l: 1 for l in range(cols)}
    cells["cap:s"] = 2
    bnd["cap:s"] = {"eh:%d,%d" % (rows, l): 1 for l in range(cols)}
    cx = CellComplex("sphere(%d,%d)" % (rows, cols), cells, bnd)
    grid = {"cap:n": (-1, 0), "cap:s": (rows, 0)}
    for r in range(rows):
        for l in range(cols):
            grid["f:%d,%d" % (r, l)] = (r, l)
    cx.meta["grid"] = grid
    cx.meta["grid_shape"] = (rows, cols)
    cx.meta["family"] = "sphere"
    cx.meta["cup"] = {"space": "sphere", "rings": {"z": [], "z2": []}}
    return cx


def sphere_reflection(rows, cols):
    """Longitude reflection l -> -l of the grid sphere."""
    cx = sphere(rows, cols)
    bij = {"cap:n": "cap:n", "cap:s": "cap:s"}
    for r in range(rows + 1):
        for l in range(cols):
            bij["w:%d,%d" % (r, l)] = "w:%d,%d" % (r, (cols - l) % cols)
            bij["eh:%d,%d" % (r, l)] = "eh:%d,%d" % (r, (cols - 1 - l) % cols)
    for r in range(rows):
        for l in range(cols):
            bij["ev:%d,%d" % (r, l)] = "ev:%d,%d" % (r, (cols - l) % cols)
            bij["f:%d,%d" % (r, l)] = "f:%d,%d" % (r, (cols - 1 - l) % cols)
    return complete_map_signs(cx, cx, bij)


def disc(rings, sectors):
    """Closed disc: a central polygon plus `rings - 1` quad rings."""
    assert rings >= 1 and sectors >= 3
    cells = {}
    bnd = {}
    for r in range(1, rings + 1):
        for s in range(sectors):
            cells["w:%d,%d" % (r, s)] = 0
            e = "c:%d,%d" % (r, s)
            cells[e] = 1
            bnd[e] = {"w:%d,%d" % (r, (s + 1) % sectors): 1, "w:%d,%d" % (r, s): -1}
    for r in range(1, rings):
        for s in range(sectors):
            e = "d:%d,%d" % (r, s)
            cells[e] = 1
            bnd[e] = {"w:%d,%d" % (r + 1, s): 1, "w:%d,%d" % (r, s): -1}
    cells["hub"] = 2
    bnd["hub"] = {"c:1,%d" % s: 1 for s in range(sectors)}
    for r in range(1, rings):
        for s in range(sectors):
            f = "q:%d,%d" % (r, s)
            cells[f] = 2
            bnd[f] = {"c:%d,%d" % (r, s): 1,
                      "d:%d,%d" % (r, (s + 1) % sectors): 1,
                      "c:%d,%d" % (r + 1, s): -1,
                      "d:%d,%d" % (r, s): -1}
    cx = CellComplex("disc(%d,%d)" % (rings, sectors), cells, bnd)
    grid = {"hub": (0, 0)}
    for r in range(1, rings):
        for s in range(sectors):
            grid["q:%d,%d" % (r, s)] = (r, s)
    cx.meta["grid"] = grid
    cx.meta["grid_shape"] = (rings, sectors)
    cx.meta["family"] = "disc"
    return cx


# -- combining builders ------------------------------------------------------

def product(a, b, name=None):
    """Cell product with Leibniz boundary signs. Ids look like `ca&cb`."""
    cells = {}
    bnd = {}
    for ca, da in a.cells.items():
        for cb, db in b.cells.items():
            c = ca + "&" + cb
            cells[c] = da + db
            chain = defaultdict(int)
            for f, k in a.boundary[ca].items():
                chain[f + "&" + cb] += k
            sgn = -1 if da % 2 else 1
            for f, k in b.boundary[cb].items():
                chain[ca + "&" + f] += sgn * k
            bnd[c] = {f: k for f, k in chain.items() if k}
    return CellComplex(name or "(%s)x(%s)" % (a.name, b.name), cells, bnd)


def annulus(rows, cols):
    """rows bands of squares around a circle, two free boundary circles."""
    iv = interval(rows)
    ci = circle(cols)
    cx = product(iv, ci, name="annulus(%d,%d)" % (rows, cols))
    grid = {}
    for r in range(rows):
        for l in range(cols):
            grid["e:%d&e:%d" % (r, l)] = (r, l)
    cx.meta["grid"] = grid
    cx.meta["grid_shape"] = (rows, cols)
    cx.meta["family"] = "annulus"
    cx.meta["cup"] = {"space": "annulus",
                      "rings": {"z": [[0]], "z2": [[0]]}}
    return cx


def disjoint_union(a, b, prefix_a="a:", prefix_b="b:"):
    cells = {}
    bnd = {}
    for c, d in a.cells.items():
        cells[prefix_a + c] = d
        bnd[prefix_a + c] = {prefix_a + f: k for f, k in a.boundary[c].items()}
    for c, d in b.cells.items():
        cells[prefix_b + c] = d
        bnd[prefix_b + c] = {prefix_b + f: k for f, k in b.boundary[c].items()}
    return CellComplex("(%s)+(%s)" % (a.name, b.name), cells, bnd)


def quotient(cx, pairs, name=None):
    """Identify cells: pairs of (keep, drop, sign) meaning drop = sign * keep.

    Chains of identifications are resolved with sign tracking. The result is
    validated, so an identification that breaks del del = 0 raises."""
    target = {}

    def resolve(c):
        sign = 1
        while c in target:
            c2, s = target[c]
            c = c2
            sign *= s
        return c, sign

    for keep, drop, sign in pairs:
        rk, sk = resolve(keep)
        rd, sd = resolve(drop)
        if rk == rd:
            if sk * sd != sign:
                raise ComplexError("contradictory identification at %s/%s" % (keep, drop))
            continue
        # drop rd in favor of rk
        target[rd] = (rk, sign * sk * sd)

    cells = {}
    bnd = {}
    for c, d in cx.cells.items():
        rc, _ = resolve(c)
        if rc not in cells:
            cells[rc] = d
    for c in cells:
        chain = defaultdict(int)
        for f, k in cx.boundary[c].items():
            rf, sf = resolve(f)
            chain[rf] += k * sf
        bnd[c] = {f: k for f, k in chain.items() if k}
    idents = [[k, d, s] for (k, d, s) in pairs]
    out = CellComplex(name or (cx.name + "/~"), cells, bnd,
                      identifications=cx.identifications + idents)
    out.meta.update(cx.meta)
    return out


def mapping_torus(fiber, glue, m, name=None):
    """Fiber x interval(m) with the top end glued back through `glue`.

    Cell ids: `sigma@v{i}` for the slice copies and `sigma@e{i}` for the band
    copies, i = 0..m-1. The gluing seam is the v0 slice."""
    assert m >= 3
    cells = {}
    bnd = {}
    for c, d in fiber.cells.items():
        for i in range(m):
            cells["%s@v%d" % (c, i)] = d
            cells["%s@e%d" % (c, i)] = d + 1

    def vslice(c, i):
        # slice copy of c at position i, folding i = m through the glue
        if i < m:
            return ("%s@v%d" % (c, i), 1)
        c2, s = glue(c)
        return ("%s@v0" % c2, s)

    for c, d in fiber.cells.items():
        for i in range(m):
            chain = defaultdict(int)
            for f, k in fiber.boundary[c].items():
                chain["%s@v%d" % (f, i)] += k
            bnd["%s@v%d" % (c, i)] = dict(chain)
            chain = defaultdict(int)
            for f, k in fiber.boundary[c].items():
                chain["%s@e%d" % (f, i)] += k
            sgn = -1 if d % 2 else 1
            hi, shi = vslice(c, i + 1)
            chain[hi] += sgn * shi
            chain["%s@v%d" % (c, i)] += -sgn
            bnd["%s@e%d" % (c, i)] = {f: k for f, k in chain.items() if k}
    cx = CellComplex(name or "maptorus(%s,%d)" % (fiber.name, m), cells, bnd)
    cx.meta["mapping_torus"] = {"fiber_tops": sorted(fiber.top_cells()), "bands": m}
    if fiber.top_dim == 1:
        # fiber circle positions give a square grid
        grid = {}
        for c in fiber.top_cells():
            pos = int(c.split(":")[1])
            for i in range(m):
                grid["%s@e%d" % (c, i)] = (pos, i)
        cx.meta["grid"] = grid
        cx.meta["grid_shape"] = (len(fiber.top_cells()), m)
    return cx


def torus(n, m=None):
    m = m or n
    ci = circle(n)
    cx = mapping_torus(ci, identity_map(ci), m, name="torus(%d,%d)" % (n, m))
    cx.meta["family"] = "torus"
    cx.meta["closed_surface"] = True
    cx.meta["cup"] = {"space": "torus",
                      "rings": {"z": [[0, 1], [-1, 0]], "z2": [[0, 1], [1, 0]]},
                      "kind": "exterior"}
    return cx


def klein(n, m=None):
    m = m or n
    ci = circle(n)
    cx = mapping_torus(ci, circle_reflection(n), m, name="klein(%d,%d)" % (n, m))
    cx.meta["family"] = "klein"
    cx.meta["cup"] = {"space": "klein", "rings": {"z2": [[0, 1], [1, 1]]}}
    return cx


def rp2(rows=2, cols=4):
    """Antipodal quotient of sphere(2*rows, 2*cols)."""
    R, C = rows, cols
    sp = sphere(2 * R, 2 * C)
    pairs = []
    for r in range(2 * R + 1):
        for l in range(2 * C):
            a = "w:%d,%d" % (r, l)
            b = "w:%d,%d" % (2 * R - r, (l + C) % (2 * C))
            if a < b:
                pairs.append((a, b, 1))
    for r in range(2 * R + 1):
        for l in range(2 * C):
            a = "eh:%d,%d" % (r, l)
            b = "eh:%d,%d" % (2 * R - r, (l + C) % (2 * C))
            if a < b:
                pairs.append((a, b, 1))
    for r in range(2 * R):
        for l in range(2 * C):
            a = "ev:%d,%d" % (r, l)
            b = "ev:%d,%d" % (2 * R - 1 - r, (l + C) % (2 * C))
            if a < b:
                pairs.append((a, b, -1))
    for r in range(2 * R):
        for l in range(2 * C):
            a = "f:%d,%d" % (r, l)
            b = "f:%d,%d" % (2 * R - 1 - r, (l + C) % (2 * C))
            if a < b:
                pairs.append((a, b, -1))
    pairs.append(("cap:n", "cap:s", 1))
    cx = quotient(sp, pairs, name="rp2(%d,%d)" % (rows, cols))
    cx.meta["family"] = "rp2"
    cx.meta["closed_surface"] = True
    cx.meta.pop("grid", None)
    cx.meta["cup"] = {"space": "rp2", "rings": {"z2": [[1]]},
                      "kind": "truncated-polynomial"}
    return cx


def _boundary_cycle(cx, cell):
    """Vertex cycle of a square-ish 2-cell, as an edge list walked in order."""
    edges = list(cx.boundary[cell])
    byv = defaultdict(list)
    for e in edges:
        for v in cx.boundary[e]:
            byv[v].append(e)
    start = min(byv)
    walk = []
    tried = set()
    v = start
    while True:
        nxt = [e for e in byv[v] if e not in tried]
        if not nxt:
            break
        e = min(nxt)
        tried.add(e)
        walk.append((v, e))
        ends = [w for w in cx.boundary[e] if w != v]
        if not ends:
            raise ComplexError("degenerate edge on boundary of %s" % cell)
        v = ends[0]
        if v == start:
            break
    if len(walk) != len(edges):
        raise ComplexError("boundary of %s is not a simple cycle" % cell)
    return walk


def connected_sum(a, b, cell_a, cell_b, name=None):
    """Remove one 2-cell from each closed orientable surface and glue the holes.

    The boundary squares are matched with reversed orientation; the matching
    offset is searched until the quotient validates and stays orientable."""
    assert a.cells[cell_a] == 2 and b.cells[cell_b] == 2
    walk_a = _boundary_cycle(a, cell_a)
    walk_b = _boundary_cycle(b, cell_b)
    if len(walk_a) != len(walk_b):
        raise ComplexError("hole boundaries have different lengths")
    k = len(walk_a)
    un = disjoint_union(a, b)
    dropped = {"a:" + cell_a, "b:" + cell_b}
    cells = {c: d for c, d in un.cells.items() if c not in dropped}
    bnd = {c: dict(un.boundary[c]) for c in cells}
    base = CellComplex("presum", cells, bnd)

    verts_a = ["a:" + v for (v, e) in walk_a]
    edges_a = ["a:" + e for (v, e) in walk_a]
    verts_b = ["b:" + v for (v, e) in walk_b]
    edges_b = ["b:" + e for (v, e) in walk_b]

    last_err = None
    for flip in (True, False):
        for off in range(k):
            vb = list(reversed(verts_b)) if flip else list(verts_b)
            eb = list(reversed(edges_b)) if flip else list(edges_b)
            if flip:
                # reversing the vertex cycle shifts which edge sits between
                # consecutive vertices
                eb = eb[1:] + eb[:1]
            vb = vb[off:] + vb[:off]
            eb = eb[off:] + eb[:off]
            pairs = []
            ok = True
            for i in range(k):
                pairs.append((verts_a[i], vb[i], 1))
            for i in range(k):
                ea = edges_a[i]
                ebi = eb[i]
                # endpoints of ea map to verts_a[i], verts_a[i+1]
                va0 = verts_a[i]
                va1 = verts_a[(i + 1) % k]
                ca = base.boundary[ea]
                cbv = base.boundary[ebi]
                vmap = {vb[i]: va0, vb[(i + 1) % k]: va1}
                mapped = {}
                for w, kk in cbv.items():
                    if w not in vmap:
                        ok = False
                        break
                    mapped[vmap[w]] = kk
                if not ok:
                    break
                if mapped == dict(ca):
                    pairs.append((ea, ebi, 1))
                elif mapped == {w: -kk for w, kk in ca.items()}:
                    pairs.append((ea, ebi, -1))
                else:
                    ok = False
                    break
            if not ok:
                continue
            try:
                out = quotient(base, pairs, name=name or "sum(%s,%s)" % (a.name, b.name))
            except ComplexError as err:
                last_err = err
                continue
            if out.is_closed_surface() and out.is_orientable():
                out.meta["family"] = "genus2"
                out.meta["closed_surface"] = True
                out.meta["summands"] = {"a": a.name, "b": b.name,
                                        "removed": [cell_a, cell_b]}
                h = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
                h2 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
                out.meta["cup"] = {"space": "genus2", "rings": {"z": h, "z2": h2}}
                return out
            last_err = ComplexError("glued complex is not an orientable surface")
    raise last_err or ComplexError("no orientation-reversing matching found")


def t3(n=4, m=4):
    base = torus(n, n)
    cx = product(base, circle(m), name="t3(%d,%d)" % (n, m))
    cx.meta["family"] = "t3"
    cx.meta["cup"] = {"space": "t3", "kind": "exterior", "rank": 3,
                      "rings": {"z": "exterior3", "z2": "exterior3"}}
    return cx


def named_space(name, resolution=None):
    """Catalog complexes addressable by bare name string.

    resolution scales the grid where the builder takes one; rp2 has a
    fixed small model and ignores it."""
    n = resolution or 4
    if name == "torus":
        return torus(n, n)
    if name == "klein":
        return klein(n, n)
    if name == "genus2":
        mid = n // 2
        cell = "e:%d@e%d" % (mid, mid)
        return connected_sum(torus(n, n), torus(n, n), cell, cell)
    if name == "sphere":
        return sphere(max(3, n), 2 * max(3, n))
    if name == "rp2":
        return rp2()
    if name == "annulus":
        return annulus(max(2, n // 2), n)
    if name == "s2xs1":
        sp = sphere(3, 6)
        return mapping_torus(sp, identity_map(sp), n, name="s2xs1(%d)" % n)
    if name == "s2xts1":
        return mapping_torus(sphere(3, 6), sphere_reflection(3, 6), n,
                             name="s2xts1(%d)" % n)
    if name == "t3":
        return t3(n, n)
    raise ComplexError("no catalog complex named %r" % name)
