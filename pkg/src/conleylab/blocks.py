"""Isolating blocks: grow the star of k, trim grazing cells, label the
boundary faces as entrances and exits, and read off the asymptotic sets."""

from . import attractor as att


class NoBlockError(ValueError):
    code = "no-block"


class BlockError(ValueError):
    def __init__(self, code, msg=None):
        super().__init__(msg or code)
        self.code = code


class IsolatingBlock:
    def __init__(self, flow, k, n, faces, ni, no, nplus, nminus):
        self.flow = flow
        self.k = frozenset(k)
        self.n = frozenset(n)
        self.faces = dict(faces)        # face -> (inside cell, outside cell)
        self.ni = frozenset(ni)
        self.no = frozenset(no)
        self.nplus = frozenset(nplus)   # cells staying inside forward
        self.nminus = frozenset(nminus)
        self.nplus_faces = frozenset(f for f, (u, v) in faces.items() if u in self.nplus)
        self.nminus_faces = frozenset(f for f, (u, v) in faces.items() if u in self.nminus)
        self.regular = (self.nplus | self.nminus == self.n
                        and self.ni == self.nplus_faces
                        and self.no == self.nminus_faces)

    def boundary_faces(self):
        return frozenset(self.faces)

    def to_json(self):
        return {
            "n": sorted(self.n),
            "ni": sorted(self.ni),
            "no": sorted(self.no),
            "nplus": sorted(self.nplus),
            "nminus": sorted(self.nminus),
            "nplus_faces": sorted(self.nplus_faces),
            "nminus_faces": sorted(self.nminus_faces),
            "regular": self.regular,
        }


def _boundary_data(flow, n):
    """Codim-1 faces with one top coface inside n and one outside."""
    cx = flow.cx
    faces = {}
    for u in n:
        for f in cx.boundary[u]:
            cof = cx.top_cofaces(f)
            if len(cof) != 2:
                continue
            v = cof[0] if cof[1] == u else cof[1]
            if v not in n:
                faces[f] = (u, v)
    return faces


def _labels(flow, faces):
    ni = set()
    no = set()
    for f, (u, v) in faces.items():
        if u in flow.succ[v]:
            ni.add(f)
        if v in flow.succ[u]:
            no.add(f)
    return ni, no


def _viable(flow, n, direction):
    table = flow.succ if direction == "f" else flow.pred
    s = set(n)
    changed = True
    while changed:
        changed = False
        for c in sorted(s):
            if not (set(table[c]) & s):
                s.discard(c)
                changed = True
    return frozenset(s)


def build_block(flow, k, budget=6):
    """Isolating block around k, or NoBlockError when the budget runs out."""
    kset = frozenset(k)
    region = kset
    for _ in range(budget):
        region = frozenset(flow.cx.star_tops(set(region)))
        n = set(region)
        # trim boundary cells that neither enter nor exit across the boundary
        while True:
            faces = _boundary_data(flow, n)
            ni, no = _labels(flow, faces)
            graze = set()
            for f, (u, v) in faces.items():
                if f in ni or f in no:
                    continue
                if u not in kset:
                    graze.add(u)
            removable = graze - kset
            if not removable:
                break
            n -= removable
        if not (kset <= n):
            continue
        faces = _boundary_data(flow, n)
        ni, no = _labels(flow, faces)
        if any(f not in ni and f not in no for f in faces):
            continue  # a k cell on a grazing boundary; grow and retry
        if any(u in kset for f, (u, v) in faces.items()):
            continue  # k must be interior
        if att.maximal_invariant(flow, n) != kset:
            continue
        nplus = _viable(flow, n, "f")
        nminus = _viable(flow, n, "p")
        return IsolatingBlock(flow, kset, n, faces, ni, no, nplus, nminus)
    raise NoBlockError("no isolating block within budget around %d cells" % len(kset))


def _face_components(cx, faces):
    """Connected components of a set of codim-1 faces through shared
    codim-2 subfaces."""
    faces = set(faces)
    subs = {}
    for f in faces:
        subs[f] = set(cx.boundary[f])
    comps = 0
    seen = set()
    for start in sorted(faces):
        if start in seen:
            continue
        comps += 1
        stack = [start]
        seen.add(start)
        while stack:
            f = stack.pop()
            for g in faces:
                if g not in seen and subs[f] & subs[g]:
                    seen.add(g)
                    stack.append(g)
    return comps


def section_components(block):
    """(components of n-, components of n+). Only regular blocks have
    well-defined sections."""
    if not block.regular:
        raise BlockError("not-regular", "sections need a regular block")
    cx = block.flow.cx
    return (_face_components(cx, block.nminus_faces),
            _face_components(cx, block.nplus_faces))


def conley_euler(block):
    """Euler characteristic of the index pair: chi(N) - chi(No)."""
    cx = block.flow.cx
    chi_n = cx.euler(block.n)
    chi_o = cx.euler(block.no) if block.no else 0
    return chi_n - chi_o


def block_subcomplex(block):
    """The closed block as its own complex; its homology is the Cech
    cohomology carrier for k."""
    return block.flow.cx.subcomplex(set(block.n), name=block.flow.name + ":block")
