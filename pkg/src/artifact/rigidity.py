"""Trivial homomorphisms between completions of Z^d and chain conjugacy.

A trivial homomorphism from the completion along a chain ``r`` to the
completion along ``l`` is given on the clopen subgroup cl(r_{i0}) by an
integer matrix W whose row k is the image of the k-th basis row of r_{i0}.
On a deeper level r_i = Z^d V_i the image is the row span of
(A_{i-1} ... A_{i0}) W.  Continuity means every target level l_j contains
the image of some source level.

Two homomorphisms agree modulo Z^d exactly when they agree on a common
clopen domain, i.e. when the rational matrices V_{i0}^{-1} W coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import fgab
from .adic import LatticeChain, ProfiniteElement, profinite_reduce, _digitize
from .fgab import Lattice
from .steinitz import supernatural_of


@dataclass(frozen=True)
class TrivialHom:
    level: int
    W: tuple
    source: LatticeChain
    target: LatticeChain

    def __post_init__(self):
        W = tuple(tuple(int(v) for v in r) for r in self.W)
        d = self.source.d
        if self.target.d != d or len(W) != d or any(len(r) != d for r in W):
            raise fgab.DimensionError(f"W must be {d}x{d} and both chains must have dimension {d}")
        object.__setattr__(self, "W", W)

    def to_json(self):
        return {"level": self.level, "W": [list(r) for r in self.W]}

    def image_rows(self, i):
        """Rows spanning the image of r_i (i >= level)."""
        d = self.source.d
        C = fgab.identity(d)
        for k in range(self.level, i):
            C = fgab.matmul(self.source.transition(k), C)
        return fgab.matmul(C, [list(r) for r in self.W])

    def rational_matrix(self):
        """V_level^{-1} W, the map on Q^d in row convention."""
        Vinv = fgab.rational_inverse(self.source.V(self.level))
        d = self.source.d
        return tuple(tuple(sum(Fraction(Vinv[r][k]) * self.W[k][c] for k in range(d)) for c in range(d))
                     for r in range(d))

    def compose(self, other):
        """self ∘ other, defined when other's target chain is self's source chain."""
        if other.target != self.source:
            raise ValueError("chains do not match for composition")
        # choose a level i of other's source whose image lies in self's domain r_{level}
        cert = continuity_check(other, self.level, search=4 * (self.level + other.level + 4))
        if not cert.ok:
            raise ValueError("image of the inner map never enters the outer domain")
        i = cert.levels[self.level]
        rows = other.image_rows(i)
        # rows are vectors of r_{level}; express them in its basis, then apply W
        V = self.source.V(self.level)
        d = self.source.d
        Vinv = fgab.rational_inverse(V)
        coords = [[sum(Fraction(r[k]) * Vinv[k][c] for k in range(d)) for c in range(d)] for r in rows]
        img = [[sum(row[k] * self.W[k][c] for k in range(d)) for c in range(d)] for row in coords]
        if any(v.denominator != 1 for r in img for v in r):
            raise ValueError("composition left the integer lattice")
        return TrivialHom(i, tuple(tuple(int(v) for v in r) for r in img), other.source, self.target)


@dataclass
class ContinuityCertificate:
    ok: bool
    levels: dict = field(default_factory=dict)   # target level j -> least source level i
    blocking: int = None

    def to_json(self):
        if self.ok:
            return {"ok": True, "levels": {str(j): i for j, i in self.levels.items()}}
        return {"ok": False, "blocking_level": self.blocking}


def _row_lattice(rows, d):
    rows = [r for r in rows if any(r)]
    return Lattice.from_rows(rows, d) if rows else Lattice.zero(d)


def continuity_check(h, depth, search=None):
    """For each target level j <= depth, the least i >= level with σ(r_i) ⊆ l_j.

    ``search`` caps the source levels tried (default: level + 2 * depth + 2).

    >>> r = LatticeChain.powers(2)
    >>> continuity_check(TrivialHom(0, ((3,),), r, r), 3).levels
    {0: 0, 1: 1, 2: 2, 3: 3}
    """
    d = h.source.d
    if search is None:
        search = h.level + 2 * depth + 2
    levels = {}
    i = h.level
    for j in range(depth + 1):
        lj = h.target.lattice(j)
        # levels are nested, so the least i for j is at least the one for j - 1
        while i <= search and not fgab.contains(lj, _row_lattice(h.image_rows(i), d)):
            i += 1
        if i > search:
            return ContinuityCertificate(False, levels, j)
        levels[j] = i
    return ContinuityCertificate(True, levels)


def enumerate_trivial_homs(r, l, depth, bound):
    """Certified trivial homomorphisms with level <= bound and |W entries| <= bound,
    one per homotopy class.  Complete only relative to these bounds."""
    if r.d != l.d:
        raise fgab.DimensionError("chains have different dimensions")
    d = r.d
    seen = {}
    for level in range(bound + 1):
        for entries in itertools.product(range(-bound, bound + 1), repeat=d * d):
            W = tuple(tuple(entries[k * d:(k + 1) * d]) for k in range(d))
            h = TrivialHom(level, W, r, l)
            key = h.rational_matrix()
            if key in seen:
                continue
            cert = continuity_check(h, depth)
            if cert.ok:
                seen[key] = (h, cert)
    return [h for h, _ in seen.values()], [c for _, c in seen.values()]


def homotopic(h1, h2):
    return h1.rational_matrix() == h2.rational_matrix()


@dataclass
class ConjugacyReport:
    verdict: str            # Conjugate | NotConjugateAtDepth | Undecided
    depth: int
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"verdict": self.verdict, "depth": self.depth, "witness": self.witness}


def _cofinal_map(A, B, depth, search):
    """For each i <= depth the least j <= search with B_j ⊆ A_i, else None."""
    out = {}
    j = 0
    for i in range(depth + 1):
        while j <= search and not fgab.contains(A(i), B(j)):
            j += 1
        if j > search:
            return None
        out[i] = j
    return out


def _unimodular(d, bound):
    """Unimodular matrices with entries in [-bound, bound], the identity first."""
    I = fgab.identity(d)
    yield I
    for entries in itertools.product(range(-bound, bound + 1), repeat=d * d):
        M = [list(entries[k * d:(k + 1) * d]) for k in range(d)]
        if M != I and abs(fgab.det(M)) == 1:
            yield M


def chains_conjugate(r, l, depth=8, bound=1, search=None):
    """Search for M in GL_d(Z) making (r_i M) and (l_j) mutually cofinal.

    A negative verdict needs an invariant: the supernatural number of the
    index sequence [Z^d : r_i] is preserved by conjugacy.

    >>> chains_conjugate(LatticeChain.powers(2), LatticeChain.powers(4)).verdict
    'Conjugate'
    """
    if r.d != l.d:
        return ConjugacyReport("NotConjugateAtDepth", depth, {"reason": "different dimensions"})
    d = r.d
    if search is None:
        search = 4 * depth + 4
    if r == l:
        ident = {i: i for i in range(depth + 1)}
        return ConjugacyReport("Conjugate", depth, {"M": fgab.identity(d), "forward": ident, "backward": ident})
    for M in _unimodular(d, max(bound, 1)):
        rM = lambda i, M=M: _row_lattice(fgab.matmul(r.V(i), M), d)
        fwd = _cofinal_map(rM, l.lattice, depth, search)
        if fwd is None:
            continue
        bwd = _cofinal_map(l.lattice, rM, depth, search)
        if bwd is None:
            continue
        return ConjugacyReport("Conjugate", depth, {"M": M, "forward": fwd, "backward": bwd})
    sr, sl = supernatural_of(r.index_sequence()), supernatural_of(l.index_sequence())
    if sr != sl:
        return ConjugacyReport("NotConjugateAtDepth", depth,
                               {"invariant": "index supernatural number", "values": [str(sr), str(sl)]})
    return ConjugacyReport("Undecided", depth, {"searched": f"unimodular M with entries <= {max(bound, 1)}"})


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitPoint:
    element: ProfiniteElement
    integer: bool        # the point lies in Z^d, i.e. in the zero coset

    def key(self):
        return ("Z^d",) if self.integer else self.element.digits


def apply_hom(h, x):
    """σ(x) for an endomorphism σ of the completion (shared chain).

    The integer part below the domain level is discarded, which changes x
    only within its coset of Z^d.  Without a known residual the output
    precision drops to the largest target level covered by continuity.
    """
    if h.source != h.target or x.chain != h.source:
        raise ValueError("orbit homomorphisms must be endomorphisms of x's chain")
    d = h.source.d
    K = x.precision
    if K < h.level:
        raise ValueError("element precision is below the domain level")
    v = [0] * d
    for i in range(h.level, K):
        rows = h.image_rows(i)
        v = [a + b for a, b in zip(v, fgab.matvec(fgab.transpose(rows, d), list(x.digits[i])))]
    if x.residual is not None:
        rows = h.image_rows(K)
        v = [a + b for a, b in zip(v, fgab.matvec(fgab.transpose(rows, d), list(x.residual)))]
        return profinite_reduce(v, x.chain, K)
    cert = continuity_check(h, K, search=K)
    prec = max([j for j, i in cert.levels.items() if i <= K], default=0)
    digits, _ = _digitize(v, x.chain, prec)
    return ProfiniteElement(x.chain, digits, None)


def apply_hom_orbit(homs, x, steps):
    """Closure of {x} under the homs, up to ``steps`` rounds.

    Points are compared by their digits at the working precision; points
    whose value is a known integer vector are also marked as lying in Z^d.
    """
    start = OrbitPoint(x, x.residual is not None)
    seen = {start.element.digits: start}
    frontier = [x]
    for _ in range(steps):
        nxt = []
        for y in frontier:
            for h in homs:
                z = apply_hom(h, y)
                if z.digits not in seen:
                    seen[z.digits] = OrbitPoint(z, z.residual is not None)
                    nxt.append(z)
        if not nxt:
            break
        frontier = nxt
    points = list(seen.values())
    cosets = {p.key() for p in points}
    return {"orbit": points, "size": len(points), "cosets_mod_Zd": len(cosets)}
