"""Homology, cohomology ranks, and the small cup-product lookups.

Two coefficient rings are supported, named "z" and "z2". Integer homology
goes through Smith normal form; mod 2 ranks use bitmask elimination.
"""

from collections import defaultdict

RINGS = ("z", "z2")


class AlgebraError(ValueError):
    def __init__(self, code, msg=None):
        super().__init__(msg or code)
        self.code = code


def _check_ring(ring):
    if ring not in RINGS:
        raise AlgebraError("unsupported-ring", "ring must be one of %r" % (RINGS,))


# -- linear algebra ----------------------------------------------------------

def gf2_rank(rows):
    """Rank of a GF(2) matrix given as bitmask rows."""
    rank = 0
    pivots = []
    for row in rows:
        for p in pivots:
            low = row & -row
            plow = p & -p
            if plow & row:
                row ^= p
        while True:
            reduced = False
            for p in pivots:
                if (p & -p) & row:
                    row ^= p
                    reduced = True
            if not reduced:
                break
        if row:
            pivots.append(row)
            rank += 1
    return rank


def smith_normal_form(mat, nrows, ncols):
    """Rank and elementary divisors (> 1) of an integer matrix.

    mat is a dict (i, j) -> value; it is consumed."""
    a = defaultdict(int)
    for k, v in mat.items():
        if v:
            a[k] = v
    rows = defaultdict(set)
    cols = defaultdict(set)
    for (i, j) in a:
        rows[i].add(j)
        cols[j].add(i)

    def set_entry(i, j, v):
        if v:
            a[(i, j)] = v
            rows[i].add(j)
            cols[j].add(i)
        else:
            a.pop((i, j), None)
            rows[i].discard(j)
            cols[j].discard(i)

    def add_row(src, dst, mult):
        # row dst += mult * row src
        for j in list(rows[src]):
            set_entry(dst, j, a.get((dst, j), 0) + mult * a[(src, j)])

    def add_col(src, dst, mult):
        for i in list(cols[src]):
            set_entry(i, dst, a.get((i, dst), 0) + mult * a[(i, src)])

    def swap_rows(r1, r2):
        if r1 == r2:
            return
        js = rows[r1] | rows[r2]
        vals = {j: (a.get((r1, j), 0), a.get((r2, j), 0)) for j in js}
        for j, (v1, v2) in vals.items():
            set_entry(r1, j, v2)
            set_entry(r2, j, v1)

    def swap_cols(c1, c2):
        if c1 == c2:
            return
        is_ = cols[c1] | cols[c2]
        vals = {i: (a.get((i, c1), 0), a.get((i, c2), 0)) for i in is_}
        for i, (v1, v2) in vals.items():
            set_entry(i, c1, v2)
            set_entry(i, c2, v1)

    divisors = []
    t = 0
    used_rows = set()
    used_cols = set()
    while True:
        pivot = None
        best = None
        for (i, j), v in a.items():
            if i in used_rows or j in used_cols:
                continue
            av = abs(v)
            if best is None or av < best:
                best = av
                pivot = (i, j)
                if av == 1:
                    break
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(pi, t)
        swap_cols(pj, t)
        # clear row and column t
        while True:
            done = True
            pv = a.get((t, t), 0)
            for i in list(cols[t]):
                if i == t or i in used_rows:
                    continue
                v = a[(i, t)]
                q = v // pv
                if q:
                    add_row(t, i, -q)
                if a.get((i, t), 0):
                    swap_rows(t, i)
                    done = False
            pv = a.get((t, t), 0)
            for j in list(rows[t]):
                if j == t or j in used_cols:
                    continue
                v = a[(t, j)]
                q = v // pv
                if q:
                    add_col(t, j, -q)
                if a.get((t, j), 0):
                    swap_cols(t, j)
                    done = False
            if done:
                break
        divisors.append(abs(a[(t, t)]))
        used_rows.add(t)
        used_cols.add(t)
        t += 1

    # enforce the divisibility chain; only the divisor multiset matters here,
    # so sorting by p-adic content is enough for the small torsion we meet
    divisors.sort()
    rank = len(divisors)
    torsion = [d for d in divisors if d > 1]
    return rank, torsion


# -- chain complexes ---------------------------------------------------------

def _chain_data(cx, rel=None):
    """Generators per dimension and boundary matrices, optionally mod a
    closed subcomplex rel."""
    rel = set(rel or ())
    if rel:
        cl = cx.closure(rel)
        if cl != rel:
            raise AlgebraError("not-closed", "relative part is not closed")
    gens = {}
    for d in range(cx.top_dim + 1):
        gens[d] = [c for c in cx.cells_of_dim(d) if c not in rel]
    index = {}
    for d, cs in gens.items():
        for i, c in enumerate(cs):
            index[c] = i
    mats = {}
    for d in range(1, cx.top_dim + 1):
        m = {}
        for j, c in enumerate(gens[d]):
            for f, k in cx.boundary[c].items():
                if f in rel:
                    continue
                m[(index[f], j)] = k
        mats[d] = (m, len(gens[d - 1]), len(gens[d]))
    return gens, mats


def _rank(mat, nrows, ncols, ring):
    if not mat:
        return 0, []
    if ring == "z2":
        rows = defaultdict(int)
        for (i, j), v in mat.items():
            if v % 2:
                rows[i] |= 1 << j
        return gf2_rank(list(rows.values())), []
    return smith_normal_form(dict(mat), nrows, ncols)


def homology(cx, ring="z", rel=None):
    """List over dimensions of {"rank": int, "torsion": [int, ...]}."""
    _check_ring(ring)
    gens, mats = _chain_data(cx, rel=rel)
    ranks = {}
    torsions = {}
    for d, (m, nr, nc) in mats.items():
        ranks[d], torsions[d] = _rank(m, nr, nc, ring)
    out = []
    for d in range(cx.top_dim + 1):
        n = len(gens[d])
        rin = ranks.get(d, 0)
        rout = ranks.get(d + 1, 0)
        out.append({"rank": n - rin - rout,
                    "torsion": sorted(torsions.get(d + 1, []))})
    return out


def relative_homology(cx, rel, ring="z"):
    return homology(cx, ring=ring, rel=rel)


def cohomology_ranks(cx, ring="z", rel=None):
    """Ranks of degree-k cohomology. Over z this is the free rank (universal
    coefficients); over z2 the GF(2) dimension."""
    _check_ring(ring)
    if ring == "z":
        return [h["rank"] for h in homology(cx, ring="z", rel=rel)]
    gens, mats = _chain_data(cx, rel=rel)
    ranks = {}
    for d, (m, nr, nc) in mats.items():
        ranks[d], _ = _rank(m, nr, nc, "z2")
    out = []
    for d in range(cx.top_dim + 1):
        n = len(gens[d])
        out.append(n - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return out


def euler(cx, cellset=None):
    return cx.euler(cellset)


# -- polynomials -------------------------------------------------------------

def poincare_polynomial(cx, rel=None, ring="z2"):
    """Cohomology Poincare polynomial of the (relative) complex, as a dict
    degree -> coefficient with zero entries dropped."""
    ranks = cohomology_ranks(cx, ring=ring, rel=rel)
    return {d: r for d, r in enumerate(ranks) if r}


def poly_to_string(p):
    if not p:
        return "0"
    parts = []
    for d in sorted(p, reverse=True):
        c = p[d]
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append("t" if c == 1 else "%dt" % c)
        else:
            parts.append("t^%d" % d if c == 1 else "%dt^%d" % (c, d))
    return " + ".join(parts)


def poly_mul_t(p):
    return {d + 1: c for d, c in p.items()}


def poly_symmetric(p, n):
    """Check a_k == a_{n+1-k} for k = 1..n (degree-0 term must be absent)."""
    if p.get(0):
        return False
    for k in range(1, n + 1):
        if p.get(k, 0) != p.get(n + 1 - k, 0):
            return False
    return True


# -- cup products (catalog spaces only) ---------------------------------------

def cup_form_h1(cx, ring="z2"):
    """Cup pairing on H^1 for the supported catalog spaces.

    Returns either a square matrix (pairing into the top degree) or the tag
    ("exterior", rank) for torus-like spaces handled by the minor rule."""
    _check_ring(ring)
    cup = cx.meta.get("cup")
    if not cup:
        raise AlgebraError("unsupported-space",
                           "no cup presentation stored for %s" % cx.name)
    rings = cup.get("rings", {})
    if ring not in rings:
        raise AlgebraError("unsupported-ring",
                           "no %s cup presentation for %s" % (ring, cx.name))
    val = rings[ring]
    if val == "exterior3":
        return ("exterior", 3)
    return val


def max_null_system(form, ring="z2"):
    """Largest d with d classes alpha_i, all pairwise cup products zero.

    Mod 2 forms are searched exhaustively; exterior presentations use the
    rule that two independent degree-1 classes have nonzero product."""
    _check_ring(ring)
    if isinstance(form, tuple) and form[0] == "exterior":
        return 1 if form[1] >= 1 else 0
    n = len(form)
    if n == 0:
        return 0
    if ring == "z2":
        vectors = list(range(1, 1 << n))

        def pair(u, v):
            s = 0
            for i in range(n):
                if not (u >> i) & 1:
                    continue
                for j in range(n):
                    if (v >> j) & 1:
                        s ^= form[i][j] & 1
            return s

        best = 0
        # depth-first over echelon bases
        def extend(basis, space):
            nonlocal best
            best = max(best, len(basis))
            top = max(space) if space else 0
            for v in vectors:
                if v in space or (basis and v <= max(basis)):
                    continue
                ok = True
                for w in list(space) + [v]:
                    if pair(v, w) or pair(w, v):
                        ok = False
                        break
                if not ok:
                    continue
                new_space = set(space)
                for w in list(space) + [0]:
                    new_space.add(w ^ v)
                extend(basis + [v], new_space)

        extend([], set())
        return best
    # integer search over small coordinate vectors
    coords = [-1, 0, 1]
    vecs = [[]]
    for _ in range(n):
        vecs = [v + [c] for v in vecs for c in coords]
    vecs = [tuple(v) for v in vecs if any(v)]

    def pair(u, v):
        return sum(u[i] * form[i][j] * v[j] for i in range(n) for j in range(n))

    best = 0

    def indep(basis, v):
        # GF(2)-reduction is a cheap proxy; exact enough at these sizes
        rows = []
        for b in list(basis) + [v]:
            rows.append(sum((x % 2) << i for i, x in enumerate(b)))
        return gf2_rank(rows) == len(basis) + 1

    def extend(basis, start):
        nonlocal best
        best = max(best, len(basis))
        for i in range(start, len(vecs)):
            v = vecs[i]
            if not indep(basis, v):
                continue
            if any(pair(v, w) or pair(w, v) for w in list(basis) + [v]):
                continue
            extend(basis + [v], i + 1)

    extend([], 0)
    return best


# -- suspension helper --------------------------------------------------------

def suspension_pair_homology(x, ring="z"):
    """H_k(X x I, X x ends): should equal H_{k-1}(X) with torsion."""
    from . import complexes as cxm
    prod = cxm.product(x, cxm.interval(2))
    ends = set()
    for c in x.cells:
        ends.add(c + "&v:0")
        ends.add(c + "&v:2")
    ends = prod.closure(ends)
    pair = homology(prod, ring=ring, rel=ends)
    base = homology(x, ring=ring)
    return pair, base
