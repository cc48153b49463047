"""Inverse sequences of finitely generated abelian groups.

A tower is A_0 <- A_1 <- A_2 <- ... with maps p_{n+1}: A_{n+1} -> A_n.  It
is stored as a finite prefix plus a tail rule:

* ``Periodic(cycle)``: from the last prefix group on, the group stays fixed
  and the maps repeat the cycle of endomorphism matrices;
* ``IDENTITY``: the last prefix group repeats with identity maps;
* ``Rule(fn)``: levels produced by a function, with declared properties
  (all groups finite, all maps surjective) that act as certificates;
* ``None``: nothing is known beyond the prefix.

The shift map p sends (a_n) to (a_n - p_{n+1}(a_{n+1})); its kernel is lim
and its cokernel is lim^1.  Answers about lim and lim^1 are descriptors that
either carry a certificate or say plainly that they are truncations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import fgab, simplicial
from .adic import LatticeChain
from .fgab import FgGroup, Homomorphism, Lattice
from .steinitz import DivisorSequence, H0Structure, supernatural_of


class TowerError(ValueError):
    pass


@dataclass(frozen=True)
class Periodic:
    cycle: tuple


IDENTITY = "identity"


@dataclass(frozen=True)
class Rule:
    fn: object                # n -> (A_n, p_n) with p_0 = None
    finite_groups: bool = False
    surjective: bool = False
    divisor_sequence: object = None   # orders |A_n| when the rule is Z/a_n


def hom(src, tgt, M):
    M = [list(r) for r in M]
    return Homomorphism(src, tgt, tuple(map(tuple, M)) if M else tuple(() for _ in range(tgt.ngens)))


def _as_hom(m, src, tgt):
    return m if isinstance(m, Homomorphism) else hom(src, tgt, m)


class Tower:
    def __init__(self, groups, maps=(), tail=None):
        self.groups = list(groups)
        if not self.groups:
            raise TowerError("a tower needs at least one group")
        if len(maps) != len(self.groups) - 1:
            raise TowerError(f"{len(self.groups)} groups need {len(self.groups) - 1} maps, got {len(maps)}")
        self.maps = [_as_hom(m, self.groups[i + 1], self.groups[i]) for i, m in enumerate(maps)]
        for i, h in enumerate(self.maps):
            if h.source != self.groups[i + 1] or h.target != self.groups[i]:
                raise TowerError(f"map p_{i + 1} does not go from A_{i + 1} to A_{i}")
        if isinstance(tail, Periodic):
            G = self.groups[-1]
            cyc = tuple(_as_hom(m, G, G) for m in tail.cycle)
            if not cyc:
                raise TowerError("periodic tail needs a nonempty cycle")
            tail = Periodic(cyc)
        self.tail = tail
        self._cache = {}

    # -- factories

    @classmethod
    def multiplication(cls, m, d=1):
        """Constant Z^d with maps m * identity."""
        return cls([FgGroup(d)], [], Periodic(([[m * (i == j) for j in range(d)] for i in range(d)],)))

    @classmethod
    def periodic(cls, G, cycle, prefix_groups=(), prefix_maps=()):
        if isinstance(G, int):
            G = FgGroup(G)
        return cls(list(prefix_groups) + [G], list(prefix_maps), Periodic(tuple(cycle)))

    @classmethod
    def constant(cls, G):
        return cls([G], [], IDENTITY)

    @classmethod
    def from_divisor_sequence(cls, a):
        """(Z, x a_{n+1}/a_n)."""
        K = len(a.prefix) - 1
        Z = FgGroup(1)
        return cls([Z] * (K + 1), [[[a.cofactor(i)]] for i in range(K)], Periodic(tuple([[c]] for c in a.cycle)))

    @classmethod
    def from_json(cls, obj):
        groups = [FgGroup(g.get("rank", 0), tuple(g.get("torsion", []))) for g in obj["groups"]]
        maps = [_matrix_entries(m) for m in obj.get("maps", [])]
        tail = obj.get("tail")
        if tail is None:
            t = None
        elif tail.get("type") == "periodic":
            t = Periodic(tuple(_matrix_entries(m) for m in tail["cycle"]))
        elif tail.get("type") == "identity":
            t = IDENTITY
        else:
            raise TowerError(f"unknown tail type {tail.get('type')!r}")
        return cls(groups, maps, t)

    def to_json(self):
        out = {"groups": [g.to_json() for g in self.groups],
               "maps": [_matrix_json(h) for h in self.maps]}
        if isinstance(self.tail, Periodic):
            out["tail"] = {"type": "periodic", "cycle": [_matrix_json(h) for h in self.tail.cycle]}
        elif self.tail == IDENTITY:
            out["tail"] = {"type": "identity"}
        return out

    # -- access

    @property
    def K(self):
        return len(self.groups)

    def available(self, n):
        return n < self.K or self.tail is not None

    def _require(self, n):
        if not self.available(n):
            raise TowerError(f"level {n} exceeds the available tower data (prefix of {self.K} groups, no tail)")

    def group(self, n):
        self._require(n)
        if n < self.K:
            return self.groups[n]
        if isinstance(self.tail, Rule):
            return self._rule(n)[0]
        return self.groups[-1]

    def _rule(self, n):
        key = ("rule", n)
        if key not in self._cache:
            self._cache[key] = self.tail.fn(n)
        return self._cache[key]

    def map(self, n):
        """p_n: A_n -> A_{n-1} for n >= 1."""
        if n < 1:
            raise TowerError("p_n is defined for n >= 1")
        self._require(n)
        if n < self.K:
            return self.maps[n - 1]
        if isinstance(self.tail, Periodic):
            c = self.tail.cycle
            return c[(n - self.K) % len(c)]
        if self.tail == IDENTITY:
            return Homomorphism.identity(self.groups[-1])
        return self._rule(n)[1]

    def composite(self, k, n):
        """p_{k,n} = p_{k+1} ∘ ... ∘ p_n : A_n -> A_k."""
        if n < k:
            raise TowerError("composite needs k <= n")
        key = ("comp", k, n)
        if key not in self._cache:
            if n == k:
                h = Homomorphism.identity(self.group(k))
            else:
                h = self.composite(k, n - 1).compose(self.map(n))
            self._cache[key] = h
        return self._cache[key]

    def range_lattice(self, k, n):
        """ran(p_{k,n}) plus the relations of A_k, as a lattice in Z^{gens(A_k)}."""
        key = ("ran", k, n)
        if key not in self._cache:
            G = self.group(k)
            h = self.composite(k, n)
            cols = fgab._columns(h.rows(), h.source.ngens) if G.ngens else []
            rows = cols + fgab._relation_cols(G)
            self._cache[key] = Lattice.from_rows(rows, G.ngens) if rows else Lattice.zero(G.ngens)
        return self._cache[key]

    def coset_rep(self, k, n, x):
        """Canonical representative of x + ran(p_{k,n}) in A_k."""
        return self.group(k).normalize(self.range_lattice(k, n).reduce(list(x)))

    def tail_start(self):
        return self.K - 1


def _matrix_entries(m):
    if isinstance(m, dict):
        return m["entries"]
    return m


def _matrix_json(h):
    rows = h.rows()
    return {"rows": h.target.ngens, "cols": h.source.ngens, "entries": rows}


# ---------------------------------------------------------------------------
# elements and the shift map


@dataclass(frozen=True)
class TowerElement:
    """Element of the product: explicit prefix, then zeros or a repeating block."""

    prefix: tuple
    tail: object = "zero"     # "zero" or ("periodic", block)

    @classmethod
    def zero_tail(cls, coords):
        return cls(tuple(tuple(int(v) for v in c) for c in coords), "zero")

    @classmethod
    def from_json(cls, obj):
        tail = obj.get("tail", "zero")
        if tail != "zero":
            if isinstance(tail, dict) and tail.get("type") == "periodic":
                tail = ("periodic", tuple(tuple(c) for c in tail["block"]))
            else:
                raise TowerError(f"unsupported tail {tail!r}")
        return cls(tuple(tuple(c) for c in obj["prefix"]), tail)

    def to_json(self):
        t = self.tail if self.tail == "zero" else {"type": "periodic", "block": [list(c) for c in self.tail[1]]}
        return {"prefix": [list(c) for c in self.prefix], "tail": t}

    def coord(self, t, n):
        if n < len(self.prefix):
            return self.prefix[n]
        if self.tail == "zero":
            return t.group(n).zero()
        block = self.tail[1]
        return block[(n - len(self.prefix)) % len(block)]

    def coords(self, t, depth):
        return [self.coord(t, n) for n in range(depth)]


def check_element(t, a):
    for n, x in enumerate(a.prefix):
        if len(x) != t.group(n).ngens:
            raise TowerError(f"coordinate {n} has length {len(x)}, A_{n} has {t.group(n).ngens} generators")
    if a.tail != "zero":
        if _cycle_len(t) is None or len(a.prefix) < t.K - 1:
            raise TowerError("periodic element tails need a periodic tower tail reached by the prefix")


def _cycle_len(t):
    if isinstance(t.tail, Periodic):
        return len(t.tail.cycle)
    return 1 if t.tail == IDENTITY else None


def _sub(G, x, y):
    return G.normalize([a - b for a, b in zip(x, y)])


def _add(G, x, y):
    return G.normalize([a + b for a, b in zip(x, y)])


def shift_apply(t, a):
    """b_n = a_n - p_{n+1}(a_{n+1}).

    >>> t = Tower.multiplication(2)
    >>> shift_apply(t, TowerElement.zero_tail([[1], [1], [1]])).prefix
    ((-1,), (-1,), (1,))
    """
    check_element(t, a)
    L = len(a.prefix)
    pre = tuple(_sub(t.group(n), a.coord(t, n), t.map(n + 1)(a.coord(t, n + 1))) for n in range(L))
    if a.tail == "zero":
        return TowerElement(pre, "zero")
    period = _lcm(len(a.tail[1]), _cycle_len(t))
    block = tuple(_sub(t.group(n), a.coord(t, n), t.map(n + 1)(a.coord(t, n + 1)))
                  for n in range(L, L + period))
    return TowerElement(pre, ("periodic", block))


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def shift_solve(t, b):
    """Preimage of b under the shift map.

    Zero-tail b: back-substitution from the end of the support.  Periodic b
    (on a periodic tower): a periodic preimage is sought by solving one
    period exactly; None when no periodic preimage exists.

    >>> shift_solve(Tower.multiplication(2), TowerElement.zero_tail([[0], [1], [0]])).prefix
    ((2,), (1,), (0,))
    """
    check_element(t, b)
    L = len(b.prefix)
    if b.tail == "zero":
        a = [None] * L
        nxt = t.group(L).zero() if t.available(L) else None
        for n in range(L - 1, -1, -1):
            G = t.group(n)
            img = t.map(n + 1)(nxt) if nxt is not None else G.zero()
            a[n] = _add(G, b.prefix[n], img)
            nxt = a[n]
        return TowerElement(tuple(a), "zero")
    block = b.tail[1]
    period = _lcm(len(block), _cycle_len(t))
    G = t.group(L)
    g = G.ngens
    # unknowns u_0..u_{P-1} (coords at L..L+P-1), u_j - p(u_{j+1}) = b_{L+j}, u_P = u_0
    P = period
    rels = fgab._relation_cols(G)
    nvar = P * g + P * len(rels)
    A = fgab.zeros(P * g, nvar)
    rhs = []
    for j in range(P):
        M = t.map(L + j + 1).rows()
        for r in range(g):
            A[j * g + r][j * g + r] += 1
            jn = (j + 1) % P
            for s in range(g):
                A[j * g + r][jn * g + s] -= M[r][s]
            for q, rel in enumerate(rels):
                A[j * g + r][P * g + j * len(rels) + q] = rel[r]
        rhs += list(b.coord(t, L + j))
    sol = fgab.solve_linear(A, rhs, nvar)
    if sol is None:
        return None
    u = [G.normalize(sol[j * g:(j + 1) * g]) for j in range(P)]
    a = [None] * L
    nxt = u[0]
    for n in range(L - 1, -1, -1):
        a[n] = _add(t.group(n), b.prefix[n], t.map(n + 1)(nxt))
        nxt = a[n]
    return TowerElement(tuple(a), ("periodic", tuple(u)))


def elements_equal(t, x, y, depth):
    return all(t.group(n).normalize(x.coord(t, n)) == t.group(n).normalize(y.coord(t, n))
               for n in range(depth))


# ---------------------------------------------------------------------------
# descriptors


@dataclass
class LimDescriptor:
    kind: str                 # FgAnswer | StableLattice | Profinite | TruncationOnly
    group: FgGroup = None
    lattice: Lattice = None
    certificate: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self, verbose=False):
        out = {"kind": self.kind}
        if self.group is not None:
            out["group"] = self.group.to_json()
        if self.kind == "Profinite" and "supernatural" in self.data:
            out["supernatural"] = self.data["supernatural"]
        if verbose:
            out["certificate"] = self.certificate
            if self.lattice is not None:
                out["lattice"] = [list(r) for r in self.lattice.basis]
            out.update({k: v for k, v in self.data.items() if k not in out})
        return out


@dataclass
class Lim1Descriptor:
    kind: str                 # Zero | ProChain | TruncationOnly
    certificate: str = ""
    construction: str = ""    # "injective" or "sum"
    groups: list = field(default_factory=list)
    supernatural: object = None
    lattice_chain: object = None
    truncated: bool = False
    data: dict = field(default_factory=dict)

    def to_json(self, verbose=False):
        out = {"kind": self.kind}
        if self.supernatural is not None:
            out["supernatural"] = _sn_string(self.supernatural)
        if verbose:
            out["certificate"] = self.certificate
            if self.construction:
                out["construction"] = self.construction
            out["levels"] = [str(g) for g in self.groups]
            out["truncated"] = self.truncated
            if self.lattice_chain is not None:
                out["lattice_chain"] = self.lattice_chain.to_json()
            out.update(self.data)
        return out

    def same_as(self, other):
        if self.kind != other.kind:
            return False
        if self.kind == "ProChain":
            return self.supernatural == other.supernatural
        return True


def _sn_string(s):
    return str(s)


def _is_free(G):
    return not G.torsion


def _periodic_cycle_product(t, start_phase=0):
    """Matrix of p_{m, m+c} for a tail level m with the given cycle phase."""
    cyc = t.tail.cycle
    c = len(cyc)
    G = t.groups[-1]
    M = fgab.identity(G.ngens)
    for j in range(c):
        M = fgab.matmul(M, cyc[(start_phase + j) % c].rows())
    return M


def _stable_image_finite(G, Q):
    """Intersection of Q^j G for an endomorphism of a finite group, by exhaustion."""
    cur = set(G.elements())
    while True:
        nxt = {G.normalize(fgab.matvec(Q, list(x))) for x in cur}
        if nxt == cur:
            return cur
        cur = nxt


def _group_of_subset(G, elems):
    rows = [list(x) for x in elems] + fgab._relation_cols(G)
    L = Lattice.from_rows(rows, G.ngens) if rows else Lattice.zero(G.ngens)
    sq = fgab.Subquotient(G.ngens, L.rows(), fgab._relation_cols(G))
    return sq.group, L


def _all_surjective(homs):
    return all(fgab.is_surjective(h) for h in homs)


def _all_injective(homs):
    return all(fgab.is_injective(h) for h in homs)


def lim_of(t, depth=8):
    """Inverse limit descriptor.

    >>> lim_of(Tower.multiplication(2)).group
    FgGroup(rank=0, torsion=())
    """
    if t.tail == IDENTITY:
        return LimDescriptor("FgAnswer", t.groups[-1], certificate="maps are identities from the last prefix level")
    if isinstance(t.tail, Periodic):
        G = t.groups[-1]
        cyc = t.tail.cycle
        if _all_surjective(cyc):
            return LimDescriptor("FgAnswer", G,
                                 certificate="tail maps are surjective endomorphisms, hence automorphisms")
        Q = _periodic_cycle_product(t)
        if G.is_finite():
            S = _stable_image_finite(G, Q)
            grp, L = _group_of_subset(G, S)
            return LimDescriptor("FgAnswer", grp, L, "finite tail group: image chain stabilizes")
        if _is_free(G):
            S = fgab.stable_sublattice(Q)
            return LimDescriptor("StableLattice", FgGroup(S.rank), S,
                                 "stable sublattice of the cycle product")
    if isinstance(t.tail, Rule) and t.tail.finite_groups:
        data = {}
        if t.tail.divisor_sequence is not None:
            data["supernatural"] = str(supernatural_of(t.tail.divisor_sequence))
        return LimDescriptor("Profinite", None, None, "inverse limit of finite groups", data)
    chain = [t.range_lattice(0, n) for n in range(min(depth, t.K if t.tail is None else depth))]
    return LimDescriptor("TruncationOnly", None, None, "no certificate; images of p_{0,n} listed",
                         {"depth": len(chain), "images": [[list(r) for r in L.basis] for L in chain]})


def lim1_of(t, depth=8):
    """First derived limit descriptor.

    >>> lim1_of(Tower.multiplication(2)).to_json()
    {'kind': 'ProChain', 'supernatural': '2^inf'}
    """
    if t.tail == IDENTITY:
        return Lim1Descriptor("Zero", "maps are identities from the last prefix level")
    if isinstance(t.tail, Rule):
        if t.tail.finite_groups:
            return Lim1Descriptor("Zero", "all groups finite (Mittag-Leffler)")
        if t.tail.surjective:
            return Lim1Descriptor("Zero", "all maps surjective")
    if isinstance(t.tail, Periodic):
        G = t.groups[-1]
        cyc = t.tail.cycle
        if _all_surjective(cyc):
            return Lim1Descriptor("Zero", f"maps surjective from level {t.K - 1} on")
        if G.is_finite():
            return Lim1Descriptor("Zero", "finite tail group (Mittag-Leffler)")
        if _all_injective(list(t.maps) + list(cyc)):
            return _injective_prochain(t, depth)
    if t.tail is None:
        depth = min(depth, t.K)
    return _sum_prochain(t, depth)


def _injective_prochain(t, depth):
    A0 = t.group(0)
    groups = [fgab.hom_decompose(t.composite(0, n)).cokernel for n in range(depth)]
    desc = Lim1Descriptor("ProChain", "connective maps injective; C_n = A_0 / ran p_{0,n}",
                          "injective", groups)
    desc.data["dense_image"] = "image of A_0 under the diagonal map"
    if _is_free(A0) and all(_is_free(g) and g.rank == A0.rank for g in t.groups):
        d = A0.rank
        trans = [fgab.transpose(h.rows(), d) for h in t.maps]
        cyc = [fgab.transpose(h.rows(), d) for h in t.tail.cycle]
        chain = LatticeChain(d, trans, cyc)
        desc.lattice_chain = chain
        desc.supernatural = supernatural_of(chain.index_sequence())
        desc.data["trivial_intersection"] = chain.trivial_intersection()
    return desc


def sum_construction(t, n):
    """C_n = (A_0 ⊕ ... ⊕ A_n) / ran(p_{0,n} ⊕ ... ⊕ p_{n,n}) with its presentation data."""
    gs = [t.group(k) for k in range(n + 1)]
    sizes = [g.ngens for g in gs]
    total = sum(sizes)
    An = t.group(n)
    cols = []
    for j in range(An.ngens):
        e = [int(i == j) for i in range(An.ngens)]
        col = []
        for k in range(n + 1):
            col += list(t.composite(k, n)(e))
        cols.append(col)
    rels = []
    off = 0
    for g in gs:
        for c in fgab._relation_cols(g):
            rels.append([0] * off + c + [0] * (total - off - g.ngens))
        off += g.ngens
    rows = cols + rels
    grp = FgGroup.cokernel(fgab.transpose(rows, total), len(rows)) if rows else FgGroup(total)
    return grp


def _sum_prochain(t, depth):
    groups = [sum_construction(t, n) for n in range(depth)]
    return Lim1Descriptor("ProChain", "general tower reduced by the sum construction; no invariant certificate",
                          "sum", groups, truncated=True)


# ---------------------------------------------------------------------------
# N_m, L_k and the E0 reduction


def eta(t, k, x, depth):
    """Coset chain of x in A_k / ran(p_{k,n+1}) for n = k .. depth-1."""
    return [tuple(t.coset_rep(k, n + 1, x)) for n in range(k, depth)]


def e0_digits(t, b, depth):
    """Digits c[k][j] (k <= j < depth) of eta_k(b_k) along HNF transversals."""
    c = {}
    for k in range(depth):
        r = list(b.coord(t, k))
        for j in range(k, depth):
            G = t.group(j)
            cj = t.coset_rep(j, j + 1, r)
            c[(k, j)] = tuple(cj)
            rest = _sub(G, r, cj)
            pre = fgab.preimage(t.map(j + 1), rest)
            if pre is None:
                raise TowerError(f"digit residue at level {j} is not in the range of p_{j + 1}")
            r = list(pre)
    return c


def e0_reduce_all(t, b, depth):
    """f_s(b) truncated at depth, for every s < depth."""
    for n in range(depth + 1):
        t._require(n)
    c = e0_digits(t, b, depth)
    out = {}
    for s in range(depth):
        cosets = []
        acc = t.group(s).zero()
        for n in range(s, depth):
            Gn = t.group(n)
            d = Gn.zero()
            for k in range(s, n + 1):
                d = _add(Gn, d, c[(k, n)])
            acc = _add(t.group(s), acc, t.composite(s, n)(d))
            cosets.append(tuple(t.coset_rep(s, n + 1, acc)))
        out[s] = cosets
    return out


def e0_reduce(t, b, s, depth):
    """Truncated f_s(b) as coset representatives in A_s / ran(p_{s,n+1}), n = s .. depth-1."""
    if s >= depth:
        raise TowerError("start index must be below the depth")
    return e0_reduce_all(t, b, depth)[s]


@dataclass
class NResult:
    m: int
    group: FgGroup
    lattice: Lattice
    generators: list
    certificate: str
    truncation_only: bool = False
    lift_chains: list = field(default_factory=list)   # per generator: y_m, y_{m+1}, ... with p(y_{k+1}) = y_k
    shift_preimages: list = field(default_factory=list)  # per generator: a with p(a) = (0, .., g, 0, ...)
    witness_kinds: list = field(default_factory=list)    # "thread" (lift chain in N) or "local"
    verified: bool = False


def n_lattice(t, m):
    """N_m as a lattice of A_m coordinates (relations included), or None if not certifiable."""
    key = ("N", m)
    if key in t._cache:
        return t._cache[key]
    out = None
    if isinstance(t.tail, Periodic) or t.tail == IDENTITY:
        G = t.groups[-1]
        K1 = t.K - 1
        if t.tail == IDENTITY or _all_surjective(t.tail.cycle):
            tail_N = lambda j: Lattice.full(G.ngens) if G.ngens else Lattice.zero(0)
        elif G.is_finite():
            def tail_N(j):
                Q = _periodic_cycle_product(t, (j - K1) % len(t.tail.cycle))
                return _group_of_subset(G, _stable_image_finite(G, Q))[1]
        elif _is_free(G):
            def tail_N(j):
                Q = _periodic_cycle_product(t, (j - K1) % len(t.tail.cycle))
                S = fgab.stable_sublattice(Q)
                return S
        else:
            tail_N = None
        if tail_N is not None:
            if m >= K1:
                out = tail_N(m)
            else:
                out = _push_forward_intersection(t, m, K1, tail_N(K1))
    t._cache[key] = out
    return out


def _push_forward_intersection(t, m, K1, S):
    """∩_k ran p_{m,k} for a prefix level m, or None when it cannot be certified.

    An injective p_{m,K-1} carries the intersection over exactly, and so does
    any p_{m,K-1} whose image of N_{K-1} is already its whole range.  For a
    finite A_m the image chain is computed until it stabilizes.  Otherwise
    the image of N_{K-1} need not be the intersection, so nothing is claimed.
    """
    h = t.composite(m, K1)
    Gm = t.group(m)
    if Gm.is_finite():
        return _finite_target_intersection(t, h, Gm)
    rows = [list(h(list(v))) for v in S.basis] + fgab._relation_cols(Gm)
    img_S = Lattice.from_rows(rows, Gm.ngens) if rows else Lattice.zero(Gm.ngens)
    if fgab.is_injective(h):
        return img_S
    # h(N_{K-1}) ⊆ N_m ⊆ ran h, so equal ends pin N_m down
    full = [list(h(e)) for e in fgab.identity(h.source.ngens)] + fgab._relation_cols(Gm)
    img_all = Lattice.from_rows(full, Gm.ngens) if full else Lattice.zero(Gm.ngens)
    if fgab.lattice_equal(img_S, img_all):
        return img_S
    return None


def _finite_target_intersection(t, h, Gm):
    """∩_j h(Q^j G) for finite A_m: work in G/eG, where the image chain of Q
    is inductive and stops at the first repeat (e = exponent of A_m)."""
    G = t.groups[-1]
    g = G.ngens
    e = Gm.torsion[-1] if Gm.torsion else 1
    base = fgab._relation_cols(G) + [[e * (i == j) for j in range(g)] for i in range(g)]
    Q = _periodic_cycle_product(t) if isinstance(t.tail, Periodic) else fgab.identity(g)
    W = Lattice.full(g) if g else Lattice.zero(0)
    while g:
        nxt = Lattice.from_rows([fgab.matvec(Q, list(v)) for v in W.basis] + base, g)
        if fgab.lattice_equal(nxt, W):
            break
        W = nxt
    rows = [list(h(list(v))) for v in W.basis] + fgab._relation_cols(Gm)
    return Lattice.from_rows(rows, Gm.ngens) if rows else Lattice.zero(Gm.ngens)


def n_subgroup(t, m, depth=8):
    """N_m = ∩_k ran(p_{m,k}) with lift chains and shift-map preimages of its generators."""
    L = n_lattice(t, m)
    if L is None:
        return NResult(m, None, None, [], "tail not certifiable", truncation_only=True)
    G = t.group(m)
    sq = fgab.Subquotient(G.ngens, L.rows(), fgab._relation_cols(G))
    gens = [G.normalize(g) for g in sq.generators]
    res = NResult(m, sq.group, L, gens, "stable sublattice / stable image of the tail")
    ok = True
    for g in gens:
        chain = [tuple(g)]
        for k in range(m, m + depth):
            Lk1 = n_lattice(t, k + 1)
            Gk1 = t.group(k + 1)
            basis = Lk1.rows() if Lk1 is not None else []
            # solve p_{k+1}(B c) = y_k in A_k
            comp = fgab.matmul(t.map(k + 1).rows(), fgab.transpose(basis, Gk1.ngens)) if basis and \
                t.map(k + 1).matrix else fgab.zeros(t.group(k).ngens, len(basis))
            h = hom(FgGroup(len(basis)), t.group(k), comp)
            c = fgab.preimage(h, chain[-1])
            if c is None:
                break
            y = Gk1.normalize(fgab.matvec(fgab.transpose(basis, Gk1.ngens), list(c))) if basis else Gk1.zero()
            chain.append(tuple(y))
        if len(chain) == depth + 1:
            # a = (0, ..., 0, -y_{m+1}, -y_{m+2}, ...) has p(a) = g at level m and 0 after it
            pre = [t.group(k).zero() for k in range(m + 1)]
            pre += [t.group(m + k).normalize([-v for v in chain[k]]) for k in range(1, len(chain))]
            checked = m + depth
            kind = "thread"
        else:
            # N_m is larger than p(N_{m+1}); fall back to the element supported at level m
            pre = [t.group(k).zero() for k in range(m)] + [tuple(g)]
            checked = m + 1
            kind = "local"
        res.lift_chains.append(chain)
        res.witness_kinds.append(kind)
        a = TowerElement(tuple(tuple(x) for x in pre), "zero")
        res.shift_preimages.append(a)
        b = shift_apply(t, a)
        for k in range(checked):
            want = tuple(g) if k == m else t.group(k).zero()
            if tuple(t.group(k).normalize(b.coord(t, k))) != tuple(t.group(k).normalize(want)):
                ok = False
    res.verified = ok
    return res


# ---------------------------------------------------------------------------
# images of nested intersections


def box_vectors(G, radius):
    from itertools import product
    ranges = [range(t) for t in G.torsion] + [range(-radius, radius + 1)] * G.rank
    return [tuple(v) for v in product(*ranges)]


def image_chain_intersection(Q, phi, radius=3, max_depth=40):
    """∩_n φ(Q^n Z^d) by image-chain stabilization.

    Finite targets are handled exactly: φ factors through (Z/e)^d, where the
    chain Q^n (Z/e)^d stops at its first repeat.  Otherwise the chain is
    followed inside a coordinate box until the box set has been constant for
    d + 1 consecutive levels; the answer is then only a box-level statement.
    """
    d = len(Q)
    G = phi.target
    if G.is_finite():
        e = G.torsion[-1] if G.torsion else 1
        base = [[e * (i == j) for j in range(d)] for i in range(d)]
        W = Lattice.full(d)
        n = 0
        while True:
            nxt = Lattice.from_rows([fgab.matvec(Q, list(v)) for v in W.basis] + base, d)
            if fgab.lattice_equal(nxt, W):
                break
            W, n = nxt, n + 1
        rows = [list(phi(list(v))) for v in W.basis] + fgab._relation_cols(G)
        L = Lattice.from_rows(rows, G.ngens) if rows else Lattice.zero(G.ngens)
        box = box_vectors(G, radius)
        return {"exact": True, "lattice": L, "level": n, "box": {v for v in box if L.contains_vector(v)}}
    box = box_vectors(G, radius)
    survivors = list(box)
    Qn = fgab.identity(d)
    last, steady = None, 0
    for n in range(max_depth + 1):
        cols = fgab._columns(fgab.matmul(phi.rows(), Qn), d) if phi.matrix else []
        rows = cols + fgab._relation_cols(G)
        Ln = Lattice.from_rows(rows, G.ngens) if rows else Lattice.zero(G.ngens)
        survivors = [v for v in survivors if Ln.contains_vector(v)]
        steady = steady + 1 if survivors == last else 0
        last = survivors
        if steady >= d + 1:
            return {"exact": False, "lattice": None, "level": n, "box": set(survivors)}
        Qn = fgab.matmul(Qn, Q)
    return {"exact": False, "lattice": None, "level": max_depth, "box": set(survivors), "unsettled": True}


def compare_intersection_images(Q, phi, radius=3, max_depth=40):
    """Compare φ(∩ Q^n Z^d) (via the stable sublattice) with ∩ φ(Q^n Z^d).

    Returns ``equal`` and, on disagreement, a box vector lying in every
    φ(Q^n Z^d) that was examined but not in φ(∩ Q^n Z^d).
    """
    G = phi.target
    S = fgab.stable_sublattice(Q)
    lhs_rows = [list(phi(list(v))) for v in S.basis] + fgab._relation_cols(G)
    LHS = Lattice.from_rows(lhs_rows, G.ngens) if lhs_rows else Lattice.zero(G.ngens)
    rhs = image_chain_intersection(Q, phi, radius, max_depth)
    box = box_vectors(G, radius)
    lhs_box = {v for v in box if LHS.contains_vector(v)}
    if rhs["exact"]:
        equal = fgab.lattice_equal(LHS, rhs["lattice"])
    else:
        equal = lhs_box == rhs["box"]
    out = {"equal": equal, "exact": rhs["exact"], "level": rhs["level"], "lhs": LHS, "rhs": rhs["lattice"]}
    if not equal:
        extra = sorted(rhs["box"] - lhs_box)
        out["witness"] = list(extra[0]) if extra else None
    return out


def random_intersection_instance(rng, d=None):
    d = d or rng.randint(1, 3)
    while True:
        Q = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
        if fgab.det(Q) != 0:
            break
    rank = rng.randint(0, 2)
    tors = sorted(rng.choice([2, 3, 4, 6]) for _ in range(rng.randint(0, 2)))
    # force a divisibility chain
    chain = []
    for t in tors:
        chain.append(t if not chain else chain[-1] * t // _gcd(chain[-1], t) if t % chain[-1] else t)
    G = FgGroup(rank, tuple(chain))
    phi = hom(FgGroup(d), G, [[rng.randint(-3, 3) for _ in range(d)] for _ in range(G.ngens)])
    return Q, phi


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


# ---------------------------------------------------------------------------
# six-term sequence


class LevelExactnessError(TowerError):
    pass


@dataclass
class TowerMap:
    fn: object   # n -> Homomorphism

    def __call__(self, n):
        return self.fn(n)


def canonical_sequence(a):
    """0 -> (Z, x a_{n+1}/a_n) -> (Z, id) -> (Z/a_n, proj) -> 0 for a divisor sequence a."""
    A = Tower.from_divisor_sequence(a)
    Z = FgGroup(1)
    B = Tower.constant(Z)

    def cgroup(n):
        v = a.term(n)
        return FgGroup(0, (v,)) if v > 1 else FgGroup()

    def cfn(n):
        G = cgroup(n)
        if n == 0:
            return G, None
        H = cgroup(n - 1)
        return G, hom(G, H, [[1] * G.ngens] if H.ngens else [])

    C0 = cgroup(0)
    C = Tower([C0], [], Rule(cfn, finite_groups=True, surjective=True, divisor_sequence=a))
    C._cache[("rule", 0)] = (C0, None)
    i = TowerMap(lambda n: hom(Z, Z, [[a.term(n)]]))
    q = TowerMap(lambda n: hom(Z, cgroup(n), [[1]] if cgroup(n).ngens else []))
    return A, B, C, i, q


def six_term(A, B, C, i, q, depth=6, samples=5, seed=0):
    """Descriptors of lim and lim^1 for 0 -> A -> B -> C -> 0 plus sample checks of the connecting map."""
    for n in range(depth):
        iN, qN = i(n), q(n)
        if not fgab.is_injective(iN):
            raise LevelExactnessError(f"level {n}: A_{n} -> B_{n} is not injective")
        if not fgab.is_exact_at(iN, qN):
            raise LevelExactnessError(f"level {n}: not exact at B_{n}")
        if not fgab.is_surjective(qN):
            raise LevelExactnessError(f"level {n}: B_{n} -> C_{n} is not surjective")
        if n + 1 < depth:
            if not (B.map(n + 1).compose(i(n + 1)) - iN.compose(A.map(n + 1))).is_zero():
                raise LevelExactnessError(f"level {n}: A-B square does not commute")
            if not (C.map(n + 1).compose(q(n + 1)) - qN.compose(B.map(n + 1))).is_zero():
                raise LevelExactnessError(f"level {n}: B-C square does not commute")
    lims = [lim_of(T, depth) for T in (A, B, C)]
    lim1s = [lim1_of(T, depth) for T in (A, B, C)]
    rng = random.Random(seed)
    checks = []

    def boundary(x):
        """∂⁰ of a compatible x in prod C_n: canonical lifts, then pull back through i."""
        y = [fgab.preimage(q(n), x[n]) for n in range(depth)]
        z = []
        for n in range(depth - 1):
            w = _sub(B.group(n), y[n], B.map(n + 1)(y[n + 1]))
            zn = fgab.preimage(i(n), w)
            if zn is None:
                raise TowerError(f"level {n}: lifted difference is not in the image of A")
            z.append(zn)
        return y, z

    # samples from lim B: the connecting map kills them, with an explicit shift preimage
    limB = lims[1]
    gensB = []
    if limB.group is not None and limB.kind == "FgAnswer" and B.tail == IDENTITY:
        G = B.groups[-1]
        gensB = [tuple(rng.randint(-20, 20) for _ in range(G.ngens)) for _ in range(samples)]
    for g in gensB:
        yb = [tuple(B.groups[-1].normalize(g)) for _ in range(depth)]
        x = [q(n)(yb[n]) for n in range(depth)]
        y, z = boundary(x)
        # y_n - yb_n lies in i(A_n); u_n with i(u_n) = y_n - yb_n satisfies z = p(u)
        u = [fgab.preimage(i(n), _sub(B.group(n), y[n], yb[n])) for n in range(depth)]
        ok = all(tuple(A.group(n).normalize(z[n])) ==
                 tuple(_sub(A.group(n), u[n], A.map(n + 1)(u[n + 1]))) for n in range(depth - 1))
        checks.append({"kind": "image of lim B is killed", "sample": list(g), "ok": ok})
    # samples from lim^1 A: every zero-tail class is hit by the connecting map
    for _ in range(samples):
        zt = [tuple(rng.randint(-5, 5) for _ in range(A.group(n).ngens)) for n in range(depth - 2)]
        zel = TowerElement(tuple(zt), "zero")
        ib = TowerElement(tuple(tuple(i(n)(zt[n])) for n in range(len(zt))), "zero")
        yhat = shift_solve(B, ib)
        x = [q(n)(yhat.coord(B, n)) for n in range(depth)]
        y, z = boundary(x)
        u = [fgab.preimage(i(n), _sub(B.group(n), y[n], yhat.coord(B, n))) for n in range(depth)]
        ok = all(tuple(A.group(n).normalize([a - b for a, b in zip(z[n], zel.coord(A, n))])) ==
                 tuple(_sub(A.group(n), u[n], A.map(n + 1)(u[n + 1]))) for n in range(depth - 1))
        checks.append({"kind": "lim^1 A class hit by the connecting map", "sample": [list(v) for v in zt],
                       "ok": ok})
    return {"lim": lims, "lim1": lim1s, "level_exact_to": depth, "samples": checks,
            "all_ok": all(c["ok"] for c in checks)}


def canonical_expectation(a, six):
    """Compare descriptors with the expected exact sequence.

    Unbounded a: 0 -> 0 -> Z -> Z_a -> Z_a/Z -> 0 -> 0.  Bounded a: lim A = Z,
    lim C = Z/a_K and every lim^1 vanishes.
    """
    limA, limB, limC = six["lim"]
    l1A, l1B, l1C = six["lim1"]
    sn = supernatural_of(a)
    common = (limB.group == FgGroup(1) and limC.kind == "Profinite"
              and limC.data.get("supernatural") == str(sn) and l1B.kind == "Zero" and l1C.kind == "Zero")
    if a.is_bounded():
        return common and limA.group == FgGroup(1) and l1A.kind == "Zero"
    return common and limA.group == FgGroup() and l1A.kind == "ProChain" and l1A.supernatural == sn


# ---------------------------------------------------------------------------
# towers of complexes and Milnor sequences


class ComplexTower:
    """Complexes K_0 <- K_1 <- ... with simplicial maps maps[k]: K_{k+1} -> K_k."""

    def __init__(self, levels, maps, verify=True):
        self.levels = list(levels)
        self.maps = list(maps)
        if len(self.maps) != len(self.levels) - 1:
            raise TowerError("need one map per consecutive pair of levels")
        for k, f in enumerate(self.maps):
            if f.source is not self.levels[k + 1] or f.target is not self.levels[k]:
                raise TowerError(f"map {k} does not go from level {k + 1} to level {k}")
            if verify:
                for n in range(1, f.source.dim + 1):
                    lhs = fgab.matmul(simplicial.boundary_matrix(f.target, n), f.chain_matrix(n)) \
                        if f.target.count(n) else []
                    rhs = fgab.matmul(f.chain_matrix(n - 1), simplicial.boundary_matrix(f.source, n))
                    if lhs and lhs != rhs:
                        raise TowerError(f"map {k} does not commute with boundaries in degree {n}")
        self._cache = {}

    @property
    def depth(self):
        return len(self.levels)

    def chain_map(self, k, n):
        key = ("cm", k, n)
        if key not in self._cache:
            self._cache[key] = self.maps[k].chain_matrix(n)
        return self._cache[key]

    def homology_tower(self, n, reduced=False, infer_tail=True):
        """Tower of H_n(K_k) with induced maps; a periodic tail is inferred from the last map."""
        groups = [simplicial.homology_subquotient(K, n, reduced).group for K in self.levels]
        maps = [simplicial.induced_map(f, n, "homology", reduced) for f in self.maps]
        inferred = False
        tail = None
        if infer_tail and maps and groups[-1] == groups[-2] and \
                all(m.matrix == maps[-1].matrix and m.source == groups[-1] for m in maps[-2:]):
            tail = Periodic((maps[-1],))
            inferred = True
            t = Tower(groups, maps, tail)
        else:
            t = Tower(groups, maps, tail)
        t.inferred_tail = inferred
        return t


def polygon_tower(depth, start=2):
    """2^m-gons (m = start, start+1, ...) with vertex k -> k mod 2^m."""
    levels = [simplicial.polygon(2 ** (m + start)) for m in range(depth)]
    maps = [simplicial.SimplicialMap(levels[k + 1], levels[k],
                                     {v: v % (2 ** (k + start)) for v in levels[k + 1].vertices})
            for k in range(depth - 1)]
    return ComplexTower(levels, maps)


def milnor_homology(ct, n, reduced=False):
    """H_n of the inverse limit: Hw = lim H_n(K_k) and Hinf = lim^1 H_{n+1}(K_k)."""
    Tn = ct.homology_tower(n, reduced)
    Tn1 = ct.homology_tower(n + 1, reduced)
    depth = ct.depth
    Hw = lim_of(Tn, depth)
    Hinf = lim1_of(Tn1, depth)
    out = {"Hw": Hw, "Hinf": Hinf, "extension": "Hinf ⊕ Hw (split as groups)",
           "tail_inferred": bool(getattr(Tn, "inferred_tail", False) or getattr(Tn1, "inferred_tail", False))}
    if Hinf.kind == "ProChain" and Hinf.supernatural is not None and Hinf.lattice_chain is not None \
            and Hinf.lattice_chain.d == 1:
        h0 = H0Structure(Hinf.supernatural.infinite)
        out["structure"] = h0.structure
        out["infinite_primes"] = sorted(h0.infinite_primes)
        out["fin"] = h0.fin_description()
    return out


class MilnorRoundTrip:
    """The maps f: weak cycles -> prod H_{n+1} and g back, at truncation depth."""

    def __init__(self, ct, n):
        self.ct = ct
        self.n = n
        D = ct.depth
        self.D = D
        self.d = [simplicial.boundary_matrix(K, n + 1) for K in ct.levels]
        self.dsolve = [fgab.LinearSolver(self.d[k], ct.levels[k].count(n + 1)) for k in range(D)]
        self.pi_n = [ct.chain_map(k, n) for k in range(D - 1)]
        self.pi_n1 = [ct.chain_map(k, n + 1) for k in range(D - 1)]
        self.pisolve = [fgab.LinearSolver(self.pi_n1[k], ct.levels[k + 1].count(n + 1)) for k in range(D - 1)]
        self.H = [simplicial.homology_subquotient(K, n + 1) for K in ct.levels]
        self._cert = None

    def random_weak_cycle(self, rng, spread=3):
        D, n = self.D, self.n
        top = self.ct.levels[-1]
        c = [rng.randint(-spread, spread) for _ in range(top.count(n + 1))]
        b = [None] * D
        b[-1] = fgab.matvec(self.d[-1], c)
        for k in range(D - 2, -1, -1):
            b[k] = fgab.matvec(self.pi_n[k], b[k + 1])
        return b

    def f(self, b):
        D = self.D
        c = [self.dsolve[k].solve(b[k]) for k in range(D)]
        if any(x is None for x in c):
            raise TowerError("a level of the weak cycle is not a boundary")
        a = [[x - y for x, y in zip(c[k], fgab.matvec(self.pi_n1[k], c[k + 1]))] for k in range(D - 1)]
        return [self.H[k].coords(a[k]) for k in range(D - 1)]

    def g(self, coords):
        D = self.D
        reps = []
        for k, x in enumerate(coords):
            gens = self.H[k].generators
            size = self.ct.levels[k].count(self.n + 1)
            v = [0] * size
            for coef, gen in zip(x, gens):
                v = [a + coef * b for a, b in zip(v, gen)]
            reps.append(v)
        c = [[0] * self.ct.levels[0].count(self.n + 1)]
        for k in range(D - 1):
            rhs = [x - y for x, y in zip(c[k], reps[k])]
            nxt = self.pisolve[k].solve(rhs)
            if nxt is None:
                raise TowerError(f"chain map at level {k + 1} is not surjective")
            c.append(nxt)
        return [fgab.matvec(self.d[k], c[k]) for k in range(D)]

    def _certificate_solver(self):
        """Joint system: d e^k = r^k and π(e^{k+1}) = e^k for k = 0 .. D-2."""
        if self._cert is None:
            D, n = self.D, self.n
            sizes = [self.ct.levels[k].count(n + 1) for k in range(D - 1)]
            rsz = [self.ct.levels[k].count(n) for k in range(D - 1)]
            offs = [sum(sizes[:k]) for k in range(D - 1)]
            nvar = sum(sizes)
            rows = []
            for k in range(D - 1):
                for i in range(rsz[k]):
                    row = [0] * nvar
                    for j in range(sizes[k]):
                        row[offs[k] + j] = self.d[k][i][j]
                    rows.append(row)
            for k in range(D - 2):
                P = self.pi_n1[k]
                for i in range(sizes[k]):
                    row = [0] * nvar
                    row[offs[k] + i] = -1
                    for j in range(sizes[k + 1]):
                        row[offs[k + 1] + j] += P[i][j]
                    rows.append(row)
            self._cert = (fgab.LinearSolver(rows, nvar), sum(rsz), sizes)
        return self._cert

    def certify(self, b, b2):
        """Compatible e with d e = b2 - b on levels 0 .. D-2, or None."""
        solver, _, sizes = self._certificate_solver()
        rhs = []
        for k in range(self.D - 1):
            rhs += [x - y for x, y in zip(b2[k], b[k])]
        rhs += [0] * sum(sizes[:-1])
        return solver.solve(rhs)


def milnor_roundtrip(ct, n, trials, seed=0):
    rt = MilnorRoundTrip(ct, n)
    rng = random.Random(seed)
    results = []
    for _ in range(trials):
        b = rt.random_weak_cycle(rng)
        b2 = rt.g(rt.f(b))
        e = rt.certify(b, b2)
        results.append(e is not None)
    return results


def milnor_cohomology(nested, n):
    """Milnor sequence for an increasing union X_0 ⊆ X_1 ⊆ ... of complexes."""
    for k in range(len(nested) - 1):
        small, big = nested[k], nested[k + 1]
        if not set(small.vertices) <= set(big.vertices):
            raise TowerError(f"complex {k} is not contained in complex {k + 1}")
        bf = {frozenset(big.label(s)) for s in big.all_faces()}
        for s in small.all_faces():
            if frozenset(small.label(s)) not in bf:
                raise TowerError(f"complex {k} is not a subcomplex of complex {k + 1}: "
                                 f"face {list(small.label(s))!r}")
    incl = [simplicial.SimplicialMap(nested[k], nested[k + 1], {v: v for v in nested[k].vertices})
            for k in range(len(nested) - 1)]

    def tower(deg):
        groups = [simplicial.cohomology_subquotient(K, deg).group for K in nested]
        maps = [simplicial.induced_map(f, deg, "cohomology") for f in incl]
        tail = None
        if maps and all(m.matrix == maps[-1].matrix for m in maps[-2:]) and groups[-1] == groups[-2]:
            tail = Periodic((maps[-1],))
        return Tower(groups, maps, tail)

    return milnor_cohomology_from_towers(tower(n), tower(n - 1) if n >= 1 else None)


def milnor_cohomology_from_towers(Tn, Tn_minus_1):
    Hw = lim_of(Tn)
    Hinf = lim1_of(Tn_minus_1) if Tn_minus_1 is not None else Lim1Descriptor("Zero", "degree 0")
    return {"Hw": Hw, "Hinf": Hinf, "extension": "Hinf ⊕ Hw (split as groups when Hinf is divisible)"}


def kunneth_torus(t, d):
    """d-fold direct sum tower with block-diagonal maps."""
    if d < 1:
        raise TowerError("d must be at least 1")
    if d == 1:
        return t

    def dsum(G):
        tors = sorted(tt for tt in G.torsion for _ in range(d))
        return FgGroup(G.rank * d, tuple(tors))

    def order(G):
        # position of (copy i, generator j) in the canonical order of the sum
        m = len(G.torsion)
        keys = [(0, G.torsion[j], i, j) if j < m else (1, 0, i, j) for i in range(d) for j in range(G.ngens)]
        srt = sorted(keys)
        return {(k[2], k[3]): idx for idx, k in enumerate(srt)}

    def dsum_hom(h):
        S, T = dsum(h.source), dsum(h.target)
        os, ot = order(h.source), order(h.target)
        M = fgab.zeros(T.ngens, S.ngens)
        for i in range(d):
            for r in range(h.target.ngens):
                for c in range(h.source.ngens):
                    M[ot[(i, r)]][os[(i, c)]] = h.matrix[r][c]
        return hom(S, T, M)

    groups = [dsum(G) for G in t.groups]
    maps = [dsum_hom(h) for h in t.maps]
    if isinstance(t.tail, Periodic):
        tail = Periodic(tuple(dsum_hom(h) for h in t.tail.cycle))
    elif t.tail == IDENTITY or t.tail is None:
        tail = t.tail
    else:
        raise TowerError("Künneth sum is supported for periodic, identity and finite towers")
    return Tower(groups, maps, tail)


# ---------------------------------------------------------------------------
# random elements


def random_zero_tail(t, rng, length, spread=5):
    return TowerElement(tuple(tuple(t.group(n).normalize([rng.randint(-spread, spread)
                                                          for _ in range(t.group(n).ngens)]))
                              for n in range(length)), "zero")
