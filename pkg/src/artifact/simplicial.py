"""Finite simplicial complexes and their integral (co)homology.

A simplex is stored as the sorted tuple of its vertex positions; that
tuple is the canonical basis element of the alternating chain group, so
the boundary of (v0, ..., vn) is the sum of (-1)^i times the face that
omits vi.
"""

from __future__ import annotations

from itertools import combinations, permutations

from . import fgab
from .fgab import FgGroup, Homomorphism, Subquotient


class SimplicialError(ValueError):
    pass


def _perm_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


class SimplicialComplex:
    """Complex generated by its facets; vertex labels may be any hashable."""

    def __init__(self, vertices, facets):
        self.vertices = list(vertices)
        self._pos = {}
        for i, v in enumerate(self.vertices):
            if v in self._pos:
                raise SimplicialError(f"duplicate vertex {v!r}")
            self._pos[v] = i
        fs = set()
        for f in facets:
            try:
                idx = tuple(sorted({self._pos[v] for v in f}))
            except KeyError as e:
                raise SimplicialError(f"facet {list(f)!r} uses unknown vertex {e.args[0]!r}") from None
            if idx:
                fs.add(idx)
        covered = {v for f in fs for v in f}
        fs |= {(i,) for i in range(len(self.vertices)) if i not in covered}
        # keep only maximal faces
        fl = sorted(fs, key=lambda s: (-len(s), s))
        maximal = []
        for f in fl:
            sf = set(f)
            if not any(sf <= set(g) for g in maximal):
                maximal.append(f)
        self.facets = sorted(maximal, key=lambda s: (len(s), s))
        self._faces = {}
        self._cache = {}

    # -- construction helpers

    @classmethod
    def from_json(cls, obj):
        return cls(obj["vertices"], obj["facets"])

    def to_json(self):
        return {"vertices": self.vertices,
                "facets": [[self.vertices[i] for i in f] for f in self.facets]}

    @property
    def dim(self):
        return max((len(f) - 1 for f in self.facets), default=-1)

    def label(self, simplex):
        return tuple(self.vertices[i] for i in simplex)

    def index_of(self, labels):
        return tuple(sorted(self._pos[v] for v in labels))

    def faces(self, n):
        """Sorted list of n-simplices (as sorted index tuples)."""
        if n not in self._faces:
            if n < 0:
                out = []
            else:
                s = set()
                for f in self.facets:
                    if len(f) >= n + 1:
                        s.update(combinations(f, n + 1))
                out = sorted(s)
            self._faces[n] = out
        return self._faces[n]

    def all_faces(self):
        return [s for n in range(self.dim + 1) for s in self.faces(n)]

    def count(self, n):
        return len(self.faces(n))

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and \
            {frozenset(self.label(f)) for f in self.facets} == \
            {frozenset(other.label(f)) for f in other.facets} and \
            set(self.vertices) == set(other.vertices)

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"

    # -- subcomplexes

    def full_subcomplex(self, labels):
        keep = {self._pos[v] for v in labels}
        facets = set()
        for f in self.facets:
            g = tuple(v for v in f if v in keep)
            if g:
                facets.add(g)
        verts = [v for v in self.vertices if self._pos[v] in keep]
        return SimplicialComplex(verts, [self.label(f) for f in facets])


# ---------------------------------------------------------------------------
# chain level


def boundary_matrix(K, n):
    """Matrix of d_n: rows are (n-1)-simplices, columns n-simplices.

    >>> boundary_matrix(SimplicialComplex("ab", ["ab"]), 1)
    [[-1], [1]]
    """
    key = ("d", n)
    if key in K._cache:
        return K._cache[key]
    cols = K.faces(n)
    rows = K.faces(n - 1)
    pos = {s: i for i, s in enumerate(rows)}
    M = fgab.zeros(len(rows), len(cols))
    if n >= 1:
        for j, s in enumerate(cols):
            for i in range(len(s)):
                M[pos[s[:i] + s[i + 1:]]][j] += -1 if i % 2 else 1
    K._cache[key] = M
    return M


def augmentation(K):
    return [[1] * K.count(0)]


def _d(K, n, reduced):
    if reduced and n == 0:
        return augmentation(K)
    return boundary_matrix(K, n)


def _rows(K, n, reduced):
    if n - 1 == -1 and reduced:
        return 1
    return K.count(n - 1)


def _snf(K, key, M, cols):
    if key not in K._cache:
        K._cache[key] = fgab.smith_normal_form(M, cols)
    return K._cache[key]


def _rank_and_torsion(K, n, reduced, transpose=False):
    M = _d(K, n, reduced)
    r, c = _rows(K, n, reduced), K.count(n)
    if transpose:
        M = fgab.transpose(M, c)
        r, c = c, r
    sf = _snf(K, ("snf", n, reduced, transpose), M, c)
    rk = sum(1 for d in sf.invariants if d)
    return rk, [d for d in sf.invariants if d > 1]


def homology(K, n, reduced=False):
    """Invariant factors of H_n(K) (or the reduced group).

    >>> homology(simplex_boundary(2), 1)
    FgGroup(rank=0, torsion=())
    """
    if n < 0:
        return FgGroup()
    cn = K.count(n)
    rn, _ = _rank_and_torsion(K, n, reduced) if n > 0 or reduced else (0, [])
    rn1, tors = _rank_and_torsion(K, n + 1, reduced)
    return FgGroup(cn - rn - rn1, tuple(tors))


def cohomology(K, n, reduced=False):
    """H^n(K) = ker d_{n+1}^T / im d_n^T."""
    if n < 0:
        return FgGroup()
    cn = K.count(n)
    rn1, _ = _rank_and_torsion(K, n + 1, reduced, transpose=True)
    if n > 0 or reduced:
        rn, tors = _rank_and_torsion(K, n, reduced, transpose=True)
    else:
        rn, tors = 0, []
    return FgGroup(cn - rn - rn1, tuple(tors))


def cycles(K, n, reduced=False):
    """Basis rows of the cycle lattice Z_n."""
    key = ("Z", n, reduced)
    if key not in K._cache:
        cn = K.count(n)
        if n == 0 and not reduced:
            K._cache[key] = fgab.identity(cn)
        else:
            K._cache[key] = fgab.right_kernel(_d(K, n, reduced), cn)
    return K._cache[key]


def boundaries(K, n):
    """Columns of d_{n+1}, i.e. generators of B_n."""
    return [list(c) for c in fgab.transpose(boundary_matrix(K, n + 1), K.count(n + 1))]


def homology_subquotient(K, n, reduced=False):
    """H_n as Z_n / B_n with explicit generator cycles."""
    key = ("Hsq", n, reduced)
    if key not in K._cache:
        K._cache[key] = Subquotient(K.count(n), cycles(K, n, reduced), boundaries(K, n))
    return K._cache[key]


def cohomology_subquotient(K, n, reduced=False):
    key = ("Csq", n, reduced)
    if key not in K._cache:
        cn = K.count(n)
        dn1 = boundary_matrix(K, n + 1)
        Z = fgab.left_kernel(dn1, K.count(n + 1)) if K.count(n + 1) else fgab.identity(cn)
        if n > 0 or reduced:
            B = [list(r) for r in _d(K, n, reduced)]
        else:
            B = []
        K._cache[key] = Subquotient(cn, Z, B)
    return K._cache[key]


# ---------------------------------------------------------------------------
# maps


class SimplicialMap:
    def __init__(self, source, target, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        for v in source.vertices:
            if v not in self.vertex_map:
                raise SimplicialError(f"vertex {v!r} has no image")
            if self.vertex_map[v] not in target._pos:
                raise SimplicialError(f"vertex {v!r} maps to {self.vertex_map[v]!r}, not a target vertex")
        tf = [set(f) for f in target.facets]
        for f in source.facets:
            img = {target._pos[self.vertex_map[v]] for v in source.label(f)}
            if not any(img <= g for g in tf):
                raise SimplicialError(
                    f"face {list(source.label(f))!r} maps to {sorted(target.label(tuple(sorted(img))))!r}, "
                    "which is not a face of the target")

    def compose(self, other):
        """self ∘ other."""
        return SimplicialMap(other.source, self.target,
                             {v: self.vertex_map[other.vertex_map[v]] for v in other.source.vertices})

    def chain_matrix(self, n):
        """Matrix of the induced chain map C_n(source) -> C_n(target)."""
        S, T = self.source, self.target
        rows = T.faces(n)
        pos = {s: i for i, s in enumerate(rows)}
        M = fgab.zeros(len(rows), S.count(n))
        for j, s in enumerate(S.faces(n)):
            img = [T._pos[self.vertex_map[S.vertices[v]]] for v in s]
            if len(set(img)) < len(img):
                continue
            M[pos[tuple(sorted(img))]][j] = _perm_sign(img)
        return M


def induced_map(f, n, variance="homology", reduced=False):
    """H_n(f) or H^n(f) on the chosen generators."""
    F = f.chain_matrix(n)
    if variance == "homology":
        src = homology_subquotient(f.source, n, reduced)
        tgt = homology_subquotient(f.target, n, reduced)
        cols = [tgt.coords(fgab.matvec(F, list(g)) if F else []) for g in src.generators]
    elif variance == "cohomology":
        src = cohomology_subquotient(f.target, n, reduced)
        tgt = cohomology_subquotient(f.source, n, reduced)
        Ft = fgab.transpose(F, f.source.count(n))
        cols = [tgt.coords(fgab.matvec(Ft, list(g)) if Ft else []) for g in src.generators]
    else:
        raise ValueError(f"unknown variance {variance!r}")
    m = tgt.group.ngens
    M = tuple(map(tuple, fgab.transpose(cols, m))) if cols else tuple(() for _ in range(m))
    return Homomorphism(src.group, tgt.group, M)


# ---------------------------------------------------------------------------
# constructions


def nerve(cover):
    """Nerve of a finite cover: index sets with nonempty common intersection.

    >>> homology(nerve([{1, 2}, {2, 3}, {1, 3}]), 1)
    FgGroup(rank=1, torsion=())
    """
    sets = [set(s) for s in cover]
    for i, s in enumerate(sets):
        if not s:
            raise SimplicialError(f"cover member {i} is empty")
    points = set().union(*sets) if sets else set()
    facets = {tuple(i for i, s in enumerate(sets) if p in s) for p in points}
    return SimplicialComplex(list(range(len(sets))), facets)


def barycentric_subdivision(K):
    """Return (sd K, carrier) where carrier maps each new vertex to a face of K."""
    faces = K.all_faces()
    label = {s: i for i, s in enumerate(faces)}
    carrier = {i: frozenset(K.label(s)) for s, i in label.items()}
    facets = set()
    for f in K.facets:
        for order in permutations(f):
            facets.add(tuple(label[tuple(sorted(order[:k]))] for k in range(1, len(f) + 1)))
    return SimplicialComplex(list(range(len(faces))), facets), carrier


def subdivide(K, rounds):
    """Iterated subdivision with carriers composed back to the original complex."""
    carrier = {v: frozenset([v]) for v in K.vertices}
    for _ in range(rounds):
        K, c = barycentric_subdivision(K)
        carrier = {v: frozenset().union(*(carrier[w] for w in c[v])) for v in K.vertices}
    return K, carrier


def neighborhood_pair(K, X):
    """(L, T): faces of simplices meeting X, and simplices disjoint from X."""
    X = set(X)
    missing = [x for x in X if x not in K._pos]
    if missing:
        raise SimplicialError(f"vertices {missing!r} are not in the complex")
    if not X:
        raise SimplicialError("X must be nonempty")
    xi = {K._pos[x] for x in X}
    L_facets = [K.label(f) for f in K.facets if xi & set(f)]
    L_verts = sorted({v for f in L_facets for v in f}, key=K._pos.get)
    L = SimplicialComplex(L_verts, L_facets)
    T = K.full_subcomplex([v for v in K.vertices if v not in X])
    return L, T


# ---------------------------------------------------------------------------
# duality harness


def duality_check(K, X, rounds=2, stop_early=True):
    """Compare reduced H^k(T_m) with reduced H_{n-k}(X_m) level-wise.

    K triangulates S^{n+1} and X is a subcomplex of K (a SimplicialComplex
    or a list of faces).  At subdivision depth m >= 1, X_m is the full
    subcomplex of K_m on the vertices whose carrier is a face of X.
    """
    if not isinstance(X, SimplicialComplex):
        faces = [list(f) for f in X]
        X = SimplicialComplex(sorted({v for f in faces for v in f}, key=K._pos.get), faces)
    kf = {frozenset(K.label(s)) for s in K.all_faces()}
    xf = {frozenset(X.label(s)) for s in X.all_faces()}
    bad = xf - kf
    if bad:
        raise SimplicialError(f"X has faces that are not faces of K: {sorted(map(sorted, bad))!r}")
    n = K.dim - 1
    rows = []
    for m in range(rounds + 1):
        Km, carrier = subdivide(K, m)
        if m == 0:
            xm, Xm = list(X.vertices), X
        else:
            xm = [v for v in Km.vertices if carrier[v] in xf]
            Xm = Km.full_subcomplex(xm)
        L, T = neighborhood_pair(Km, xm)
        levels = []
        for k in range(n + 1):
            lhs = cohomology(T, k, reduced=True) if T.vertices else FgGroup()
            rhs = homology(Xm, n - k, reduced=True)
            levels.append({"k": k, "cohomology_T": lhs, "homology_X": rhs, "match": lhs == rhs})
        ok = all(r["match"] for r in levels)
        rows.append({"round": m, "vertices": len(Km.vertices), "degrees": levels, "match": ok})
        if ok and stop_early:
            break
    return {"sphere_dim": n + 1, "rounds": rows, "match": rows[-1]["match"]}


# ---------------------------------------------------------------------------
# corpus


def simplex(n):
    return SimplicialComplex(list(range(n + 1)), [list(range(n + 1))])


def simplex_boundary(n):
    """Boundary of the n-simplex, a triangulated (n-1)-sphere."""
    return SimplicialComplex(list(range(n + 1)), [list(c) for c in combinations(range(n + 1), n)])


def rp2():
    """Six-vertex projective plane."""
    f = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
         (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    return SimplicialComplex(list(range(1, 7)), f)


def octahedron():
    """Boundary of the octahedron; vertices 0..3 form the equator, 4 and 5 the poles."""
    eq = [0, 1, 2, 3]
    facets = [[eq[i], eq[(i + 1) % 4], p] for i in range(4) for p in (4, 5)]
    return SimplicialComplex(list(range(6)), facets)


def polygon(m):
    """Cycle on m >= 3 vertices."""
    return SimplicialComplex(list(range(m)), [[i, (i + 1) % m] for i in range(m)])


def torus():
    """Seven-vertex (Möbius) torus."""
    f = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + \
        [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return SimplicialComplex(list(range(7)), f)
