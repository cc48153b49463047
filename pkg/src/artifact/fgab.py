"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain lists of lists of Python ints, so every operation is
exact.  Groups are stored by their invariant factors; elements of a group
with ``torsion = [t1, ..., tm]`` and free rank ``r`` are integer vectors of
length ``m + r`` (torsion coordinates first).

>>> smith_normal_form([[2, 0], [0, 3]]).invariants
(1, 6)
>>> FgGroup.from_invariants([1, 2, 0])
FgGroup(rank=1, torsion=(2,))
>>> intersect(Lattice.from_rows([[2]]), Lattice.from_rows([[3]])).basis
((6,),)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product


class DimensionError(ValueError):
    pass


class UnsupportedDimension(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix helpers


def mat(rows):
    return [[int(x) for x in r] for r in rows]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A, cols=None):
    """(rows, cols); ``cols`` disambiguates matrices with no rows."""
    r = len(A)
    if r:
        return r, len(A[0])
    return 0, (cols or 0)


def transpose(A, cols=None):
    r, c = shape(A, cols)
    return [[A[i][j] for i in range(r)] for j in range(c)]


def matmul(A, B, inner=None):
    if A and B and len(A[0]) != len(B):
        raise DimensionError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    c = len(B[0]) if B else 0
    # boundary and chain matrices are mostly zero, so work with the nonzero entries
    Bnz = [[(j, b) for j, b in enumerate(row) if b] for row in B]
    out = []
    for row in A:
        acc = [0] * c
        for k, a in enumerate(row):
            if a:
                for j, b in Bnz[k]:
                    acc[j] += a * b
        out.append(acc)
    return out


def matvec(A, v):
    if A and len(A[0]) != len(v):
        raise DimensionError(f"matrix has {len(A[0])} columns, vector has length {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def hstack(*mats, rows=None):
    n = rows if rows is not None else max((len(M) for M in mats), default=0)
    return [sum((list(M[i]) if M else [] for M in mats), []) for i in range(n)]


def det(A):
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    """Rank over Q via fraction-free elimination."""
    M = [list(r) for r in A]
    if not M:
        return 0
    r, c = len(M), len(M[0])
    rk = 0
    for j in range(c):
        piv = next((i for i in range(rk, r) if M[i][j]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(rk + 1, r):
            if M[i][j]:
                f, g = M[i][j], M[rk][j]
                M[i] = [g * x - f * y for x, y in zip(M[i], M[rk])]
        rk += 1
    return rk


def inverse_unimodular(U):
    """Integer inverse of a unimodular matrix."""
    n = len(U)
    H, T = _hnf_with_transform(U)
    # T U = H is upper triangular with unit pivots; finish reduction
    if len(H) != n or any(abs(H[i][i]) != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return _solve_upper_unit(H, T)


def _solve_upper_unit(H, T):
    # H X = T with H upper triangular, diagonal +-1
    n = len(H)
    X = [list(r) for r in T]
    for i in range(n - 1, -1, -1):
        for k in range(i + 1, n):
            if H[i][k]:
                X[i] = [a - H[i][k] * b for a, b in zip(X[i], X[k])]
        if H[i][i] == -1:
            X[i] = [-a for a in X[i]]
    return X


def rational_inverse(A):
    """Inverse over Q as a matrix of Fractions."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for j in range(n):
        piv = next((i for i in range(j, n) if M[i][j] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[j], M[piv] = M[piv], M[j]
        p = M[j][j]
        M[j] = [x / p for x in M[j]]
        for i in range(n):
            if i != j and M[i][j] != 0:
                f = M[i][j]
                M[i] = [x - f * y for x, y in zip(M[i], M[j])]
    return [row[n:] for row in M]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    U: tuple
    S: tuple
    V: tuple
    invariants: tuple


def smith_normal_form(A, cols=None):
    """Return U, S, V with U*A*V = S diagonal and d1 | d2 | ...

    Pivots are the smallest nonzero entry of the active block, ties broken
    by lowest row index and then lowest column index.

    >>> smith_normal_form([[0]]).invariants
    ()
    >>> smith_normal_form([[2, 1], [0, 2]]).invariants
    (1, 4)
    """
    A = mat(A)
    r, c = shape(A, cols)
    S = [list(row) for row in A]
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in S:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            done = True
            for i in range(t + 1, r):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, c):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        done = False
            if done:
                if abs(p) == 1:
                    break
                bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                            if S[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # re-pivot on the smallest remaining entry of row t / column t
            best = None
            for i in range(t, r):
                v = S[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, t)
            for j in range(t, c):
                v = S[t][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    invs = tuple(S[i][i] for i in range(min(r, c)) if S[i][i])
    return SmithForm(tuple(map(tuple, U)), tuple(map(tuple, S)), tuple(map(tuple, V)), invs)


def invariant_factors(A, cols=None):
    return smith_normal_form(A, cols).invariants


# ---------------------------------------------------------------------------
# Hermite normal form (row style)


def _hnf_with_transform(A, cols=None, transform=True):
    """Return (H, T) with T unimodular and T*A = H (zero rows kept at bottom).

    With transform=False, T is not tracked and None is returned in its place.
    """
    H = mat(A)
    r, c = shape(H, cols)
    T = identity(r) if transform else None
    row = 0
    for j in range(c):
        if row >= r:
            break
        # gcd-combine column j below `row`
        for i in range(row + 1, r):
            if H[i][j]:
                a, b = H[row][j], H[i][j]
                g, x, y = _xgcd(a, b)
                ag, bg = a // g, b // g
                r1 = [x * u + y * v for u, v in zip(H[row], H[i])]
                r2 = [-bg * u + ag * v for u, v in zip(H[row], H[i])]
                H[row], H[i] = r1, r2
                if transform:
                    T[row], T[i] = ([x * u + y * v for u, v in zip(T[row], T[i])],
                                    [-bg * u + ag * v for u, v in zip(T[row], T[i])])
        if H[row][j] == 0:
            continue
        if H[row][j] < 0:
            H[row] = [-x for x in H[row]]
            if transform:
                T[row] = [-x for x in T[row]]
        p = H[row][j]
        for i in range(row):
            q = H[i][j] // p
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[row])]
                if transform:
                    T[i] = [u - q * v for u, v in zip(T[i], T[row])]
        row += 1
    return H, T


def hnf(A, cols=None):
    """Row-style Hermite normal form with zero rows removed.

    >>> hnf([[4, 6], [2, 3]])
    [[2, 3]]
    """
    H, _ = _hnf_with_transform(A, cols, transform=False)
    return [r for r in H if any(r)]


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def left_kernel(A, cols=None):
    """Basis (rows) of {x : x*A = 0} over Z."""
    r, c = shape(A, cols)
    H, T = _hnf_with_transform(A, c)
    return hnf([T[i] for i in range(r) if not any(H[i])], r)


def right_kernel(A, cols=None):
    """Basis (as rows) of the saturated lattice {x : A*x = 0}."""
    r, c = shape(A, cols)
    sf = smith_normal_form(A, c)
    nz = sum(1 for d in sf.invariants if d)
    return hnf([[sf.V[i][j] for i in range(c)] for j in range(nz, c)], c)


class LinearSolver:
    """Integer solver for A*x = b with the Smith form of A computed once."""

    def __init__(self, A, cols=None):
        self.A = mat(A)
        self.r, self.c = shape(self.A, cols)
        self.sf = smith_normal_form(self.A, self.c)

    def solve(self, b):
        r, c, sf = self.r, self.c, self.sf
        if len(b) != r:
            raise DimensionError(f"right-hand side has length {len(b)}, expected {r}")
        rhs = matvec(sf.U, list(b)) if r else []
        y = [0] * c
        for i in range(r):
            d = sf.invariants[i] if i < len(sf.invariants) else 0
            if d == 0:
                if rhs[i]:
                    return None
            else:
                if rhs[i] % d:
                    return None
                y[i] = rhs[i] // d
        return [sum(sf.V[i][j] * y[j] for j in range(c)) for i in range(c)]


def solve_linear(A, b, cols=None):
    """Integer solution x of A*x = b, or None.

    >>> solve_linear([[2]], [4])
    [2]
    >>> solve_linear([[2]], [3]) is None
    True
    """
    return LinearSolver(A, cols).solve(b)


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^d given by an HNF row basis."""

    dim: int
    basis: tuple

    @classmethod
    def from_rows(cls, rows, dim=None):
        rows = mat(rows)
        if dim is None:
            if not rows:
                raise DimensionError("dimension needed for an empty lattice")
            dim = len(rows[0])
        if any(len(r) != dim for r in rows):
            raise DimensionError("rows do not match the ambient dimension")
        return cls(dim, tuple(tuple(r) for r in hnf(rows, dim)))

    @classmethod
    def full(cls, d):
        return cls.from_rows(identity(d), d)

    @classmethod
    def zero(cls, d):
        return cls(d, ())

    @property
    def rank(self):
        return len(self.basis)

    def rows(self):
        return [list(r) for r in self.basis]

    def contains_vector(self, v):
        v = list(v)
        for row in self.basis:
            j = next(k for k, x in enumerate(row) if x)
            if v[j] % row[j]:
                return False
            q = v[j] // row[j]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def coordinates(self, v):
        """Integer coefficients of v in the basis, or None."""
        v = list(v)
        coeffs = []
        for row in self.basis:
            j = next(k for k, x in enumerate(row) if x)
            if v[j] % row[j]:
                return None
            q = v[j] // row[j]
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return coeffs if not any(v) else None

    def reduce(self, v):
        """Canonical representative of v modulo the lattice (HNF transversal)."""
        v = list(v)
        for row in self.basis:
            j = next(k for k, x in enumerate(row) if x)
            q = v[j] // row[j]
            v = [a - q * b for a, b in zip(v, row)]
        return v

    def image(self, M):
        """Lattice spanned by M*x for x in self (M acts on column vectors)."""
        return Lattice.from_rows([matvec(M, r) for r in self.basis], len(M)) if self.basis \
            else Lattice.zero(len(M))


def _check_dims(L1, L2):
    if L1.dim != L2.dim:
        raise DimensionError(f"ambient dimensions differ: {L1.dim} vs {L2.dim}")


def lattice_sum(L1, L2):
    _check_dims(L1, L2)
    return Lattice.from_rows(list(L1.basis) + list(L2.basis), L1.dim)


def intersect(L1, L2):
    _check_dims(L1, L2)
    if not L1.basis or not L2.basis:
        return Lattice.zero(L1.dim)
    stacked = [list(r) for r in L1.basis] + [list(r) for r in L2.basis]
    K = left_kernel(stacked, L1.dim)
    k1 = len(L1.basis)
    rows = [matvec(transpose(L1.rows(), L1.dim), x[:k1]) for x in K]
    return Lattice.from_rows(rows, L1.dim) if rows else Lattice.zero(L1.dim)


def contains(L1, L2):
    """True when L2 is a subset of L1."""
    _check_dims(L1, L2)
    return all(L1.contains_vector(r) for r in L2.basis)


def _gram_det(L):
    B = L.rows()
    return det(matmul(B, transpose(B, L.dim))) if B else 1


def index(L1, L2):
    """[L1 : L1 ∩ L2]; math.inf when that index is infinite."""
    _check_dims(L1, L2)
    inter = intersect(L1, L2)
    if inter.rank < L1.rank:
        return math.inf
    ratio = Fraction(_gram_det(inter), _gram_det(L1))
    assert ratio.denominator == 1
    root = math.isqrt(ratio.numerator)
    assert root * root == ratio.numerator
    return root


def lattice_equal(L1, L2):
    return L1.dim == L2.dim and L1.basis == L2.basis


# ---------------------------------------------------------------------------
# stable sublattice of a constant transition matrix


def charpoly(M):
    """Characteristic polynomial det(xI - M), coefficients highest degree first."""
    import sympy

    x = sympy.Symbol("x")
    p = sympy.Matrix(M).charpoly(x)
    return [int(c) for c in p.all_coeffs()]


def _poly_factors(coeffs):
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(coeffs, x)
    _, facs = sympy.factor_list(poly)
    out = []
    for f, e in facs:
        out.append(([int(c) for c in sympy.Poly(f, x).all_coeffs()], e))
    return out


def poly_eval_matrix(coeffs, M):
    d = len(M)
    R = zeros(d, d)
    for c in coeffs:
        R = matmul(R, M)
        for i in range(d):
            R[i][i] += c
    return R


def stable_sublattice(M):
    """Largest sublattice L of Z^d with M*L = L; equals the intersection of M^n Z^d.

    Computed as Z^d ∩ ker f(M) where f collects the irreducible factors of
    the characteristic polynomial with constant term +-1.

    >>> stable_sublattice([[2, 0], [0, 1]]).basis
    ((0, 1),)
    """
    M = mat(M)
    d = len(M)
    if any(len(r) != d for r in M):
        raise DimensionError("matrix must be square")
    if d > 4:
        raise UnsupportedDimension(f"stable_sublattice supports d <= 4, got d = {d}")
    if d == 0:
        return Lattice.zero(0)
    f = [1]
    for g, e in _poly_factors(charpoly(M)):
        if abs(g[-1]) == 1:
            for _ in range(e):
                f = _polymul(f, g)
    F = poly_eval_matrix(f, M)
    K = right_kernel(F, d)
    return Lattice.from_rows(K, d) if K else Lattice.zero(d)


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgGroup:
    """Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tm with t1 | t2 | ... and each ti >= 2."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.rank < 0 or any(x < 2 for x in t):
            raise ValueError(f"invalid invariants rank={self.rank} torsion={t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")

    def __repr__(self):
        return f"FgGroup(rank={self.rank}, torsion={self.torsion})"

    @classmethod
    def from_invariants(cls, invs):
        """Group ⊕ Z/d for a divisibility chain (1's dropped, 0's give Z)."""
        invs = [abs(int(x)) for x in invs]
        return cls(sum(1 for x in invs if x == 0), tuple(x for x in invs if x > 1))

    @classmethod
    def cokernel(cls, A, cols=None):
        """Z^rows / (column span of A)."""
        r, c = shape(A, cols)
        invs = list(invariant_factors(A, c)) if r and c else []
        invs += [0] * (r - len(invs))
        return cls.from_invariants(invs)

    @property
    def ngens(self):
        return len(self.torsion) + self.rank

    def relations(self):
        """Relation matrix whose columns generate the relation lattice."""
        n = self.ngens
        return [[self.torsion[j] if (i == j and j < len(self.torsion)) else 0
                 for j in range(len(self.torsion))] for i in range(n)]

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def is_finite(self):
        return self.rank == 0

    def order(self):
        return math.prod(self.torsion) if self.rank == 0 else math.inf

    def normalize(self, x):
        x = [int(v) for v in x]
        if len(x) != self.ngens:
            raise DimensionError(f"element of length {len(x)} for a group with {self.ngens} generators")
        return tuple(v % t for v, t in zip(x, self.torsion)) + tuple(x[len(self.torsion):])

    def is_zero(self, x):
        return not any(self.normalize(x))

    def elements(self):
        """All elements of a finite group."""
        if self.rank:
            raise ValueError("group is infinite")
        return [tuple(e) for e in product(*(range(t) for t in self.torsion))]

    def zero(self):
        return (0,) * self.ngens

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = (["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []) \
            + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class Homomorphism:
    """Group homomorphism; column j of ``matrix`` is the image of generator j."""

    source: FgGroup
    target: FgGroup
    matrix: tuple = field(default=())

    def __post_init__(self):
        M = [list(r) for r in self.matrix]
        if len(M) != self.target.ngens or any(len(r) != self.source.ngens for r in M):
            raise DimensionError(
                f"matrix shape {len(M)}x{len(M[0]) if M else self.source.ngens} does not match "
                f"{self.target.ngens}x{self.source.ngens}")
        # reduce torsion rows and check relations
        k = len(self.target.torsion)
        for i in range(k):
            M[i] = [v % self.target.torsion[i] for v in M[i]]
        for j, t in enumerate(self.source.torsion):
            img = [t * M[i][j] for i in range(len(M))]
            if not self.target.is_zero(img):
                raise RelationError(f"generator {j} of order {t} maps to an element of larger order")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in M))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, tuple((0,) * source.ngens for _ in range(target.ngens)))

    @classmethod
    def identity(cls, G):
        return cls(G, G, tuple(map(tuple, identity(G.ngens))))

    def rows(self):
        return [list(r) for r in self.matrix]

    def __call__(self, x):
        x = list(x)
        if len(x) != self.source.ngens:
            raise DimensionError("element does not belong to the source")
        if not self.matrix:
            return ()
        return self.target.normalize(matvec(self.rows(), x))

    def compose(self, other):
        """self ∘ other."""
        if other.target != self.source:
            raise DimensionError("maps are not composable")
        M = matmul(self.rows(), other.rows()) if self.matrix and other.matrix else \
            zeros(self.target.ngens, other.source.ngens)
        return Homomorphism(other.source, self.target, tuple(map(tuple, M)))

    def __sub__(self, other):
        M = [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows(), other.rows())]
        return Homomorphism(self.source, self.target, tuple(map(tuple, M)))

    def is_zero(self):
        return all(self.target.is_zero(col) for col in transpose(self.rows(), self.source.ngens))


# ---------------------------------------------------------------------------
# subquotients


class Subquotient:
    """The group K/R for lattices R ⊆ K ⊆ Z^n (K given by columns).

    Exposes the invariant-factor group, generators as ambient vectors and a
    coordinate map from ambient vectors in K to group elements.
    """

    def __init__(self, n, gens, rels):
        self.n = n
        K = Lattice.from_rows(gens, n) if gens else Lattice.zero(n)
        self.K = K
        basis = K.rows()
        j = len(basis)
        C = []
        for r in rels:
            c = K.coordinates(r)
            if c is None:
                raise ValueError("relation lattice is not contained in the generating lattice")
            C.append(c)
        Cm = transpose(C, j) if C else zeros(j, 0)  # j x l, columns are relations
        sf = smith_normal_form(Cm, len(C)) if j else None
        if j == 0:
            self.group = FgGroup()
            self._U = []
            self._keep = []
            self._mods = []
            self.generators = []
            return
        invs = list(sf.invariants) + [0] * (j - len(sf.invariants))
        U = [list(r) for r in sf.U]
        Uinv = inverse_unimodular(U)
        keep = [i for i in range(j) if invs[i] != 1]
        # order: torsion (invs > 1) ascending then free; SNF already has that order
        self._U = U
        self._keep = keep
        self._mods = [invs[i] for i in keep]
        self.group = FgGroup.from_invariants([invs[i] for i in keep])
        Bt = transpose(basis, n)
        self.generators = [tuple(matvec(Bt, [Uinv[r][i] for r in range(j)])) for i in keep]

    def coords(self, x):
        c = self.K.coordinates(x)
        if c is None:
            raise ValueError("vector does not lie in the subgroup")
        if not self._keep:
            return ()
        y = matvec(self._U, c)
        return self.group.normalize([y[i] for i in self._keep])

    def contains(self, x):
        return self.K.contains_vector(x)


def _columns(M, ncols):
    return [list(c) for c in transpose(M, ncols)]


def _relation_cols(G):
    return [[G.torsion[j] if i == j else 0 for i in range(G.ngens)] for j in range(len(G.torsion))]


@dataclass
class Decomposition:
    kernel: FgGroup
    image: FgGroup
    cokernel: FgGroup
    kernel_generators: list
    image_generators: list
    kernel_inclusion: Homomorphism
    image_inclusion: Homomorphism
    cokernel_projection: Homomorphism
    _ker: Subquotient = None
    _coker: Subquotient = None


def kernel_lattice(h):
    """Lattice {x in Z^n : h(x) = 0} (contains the source relations)."""
    n = h.source.ngens
    rels_t = _relation_cols(h.target)
    if n == 0:
        return []
    M = h.rows()
    k = h.target.ngens
    if k == 0:
        return identity(n)
    big = hstack(M, transpose(rels_t, k) if rels_t else zeros(k, 0), rows=k)
    K = right_kernel(big, n + len(rels_t))
    gens = [r[:n] for r in K]
    return hnf(gens, n) if gens else []


def hom_decompose(h):
    """Kernel, image and cokernel of ``h`` with generator witnesses.

    >>> d = hom_decompose(Homomorphism(FgGroup(1), FgGroup(1), ((2,),)))
    >>> d.kernel, d.image, d.cokernel
    (FgGroup(rank=0, torsion=()), FgGroup(rank=1, torsion=()), FgGroup(rank=0, torsion=(2,)))
    """
    S, T = h.source, h.target
    n, k = S.ngens, T.ngens
    kq = Subquotient(n, kernel_lattice(h), _relation_cols(S))
    img_cols = _columns(h.rows(), n) if k else []
    rels_t = _relation_cols(T)
    iq = Subquotient(k, img_cols + rels_t, rels_t)
    cq = Subquotient(k, identity(k), img_cols + rels_t)
    ker_inc = Homomorphism(kq.group, S, tuple(map(tuple, transpose(
        [S.normalize(g) for g in kq.generators], n))) if kq.generators else
        tuple(() for _ in range(n)))
    img_inc = Homomorphism(iq.group, T, tuple(map(tuple, transpose(
        [T.normalize(g) for g in iq.generators], k))) if iq.generators else
        tuple(() for _ in range(k)))
    proj_cols = [cq.coords(e) for e in identity(k)]
    cm = cq.group.ngens
    proj = Homomorphism(T, cq.group, tuple(map(tuple, transpose(proj_cols, cm))) if k else
                        tuple(() for _ in range(cm)))
    return Decomposition(kq.group, iq.group, cq.group, kq.generators, iq.generators,
                         ker_inc, img_inc, proj, kq, cq)


def image_in(h, sub):
    """Express the image of each generator of h.source in the coordinates of ``sub``."""
    return [sub.coords(c) for c in _columns(h.rows(), h.source.ngens)]


@lru_cache(maxsize=4096)
def _hom_solver(h):
    T = h.target
    k, n = T.ngens, h.source.ngens
    rels = _relation_cols(T)
    big = hstack(h.rows(), transpose(rels, k) if rels else zeros(k, 0), rows=k)
    return LinearSolver(big, n + len(rels))


def preimage(h, y):
    """Some x with h(x) = y in h.target, or None."""
    y = list(y)
    if len(y) != h.target.ngens:
        raise DimensionError("element does not belong to the target")
    sol = _hom_solver(h).solve(y)
    if sol is None:
        return None
    return h.source.normalize(sol[:h.source.ngens])


def is_injective(h):
    return hom_decompose(h).kernel.is_trivial()


def is_surjective(h):
    return hom_decompose(h).cokernel.is_trivial()


# ---------------------------------------------------------------------------
# snake lemma


class DiagramError(ValueError):
    pass


@dataclass
class SnakeResult:
    delta: Homomorphism
    groups: list   # ker a, ker b, ker c, coker a, coker b, coker c
    maps: list     # five maps between consecutive groups
    exact: list    # exactness at ker b, ker c, coker a, coker b
    report: dict


def _check_exact_pair(f, g):
    """Exactness of X --f--> Y --g--> Z at Y."""
    if not g.compose(f).is_zero():
        return False
    n = f.target.ngens
    K = kernel_lattice(g)
    rels = _relation_cols(f.target)
    img = _columns(f.rows(), f.source.ngens) + rels if n else []
    L1 = Lattice.from_rows(K, n) if K else Lattice.zero(n)
    L2 = Lattice.from_rows(img, n) if img else Lattice.zero(n)
    return lattice_equal(L1, L2)


def is_exact_at(f, g):
    return _check_exact_pair(f, g)


def _induced(sub_src, sub_tgt, h, src_group, tgt_group):
    """Map between subquotients induced by h on ambient vectors."""
    cols = []
    for g in sub_src.generators:
        cols.append(sub_tgt.coords(list(matvec(h.rows(), list(g))) if h.matrix else []))
    m = tgt_group.ngens
    M = tuple(map(tuple, transpose(cols, m))) if cols else tuple(() for _ in range(m))
    return Homomorphism(src_group, tgt_group, M)


def connecting_hom(i, q, i2, q2, a, b, c):
    """Snake-lemma connecting map ker(c) -> coker(a).

    Rows are 0 -> A --i--> B --q--> C -> 0 and 0 -> A' --i2--> B' --q2--> C' -> 0,
    vertical maps a: A -> A', b: B -> B', c: C -> C'.
    """
    for name, g in (("top row", i), ("bottom row", i2)):
        if not is_injective(g):
            raise DiagramError(f"{name}: left map is not injective")
    if not _check_exact_pair(i, q):
        raise DiagramError("top row is not exact at B")
    if not _check_exact_pair(i2, q2):
        raise DiagramError("bottom row is not exact at B'")
    if not is_surjective(q):
        raise DiagramError("top row: right map is not surjective")
    if not is_surjective(q2):
        raise DiagramError("bottom row: right map is not surjective")
    if not (b.compose(i) - i2.compose(a)).is_zero():
        raise DiagramError("left square (A, B, A', B') does not commute")
    if not (c.compose(q) - q2.compose(b)).is_zero():
        raise DiagramError("right square (B, C, B', C') does not commute")

    da, db, dc = hom_decompose(a), hom_decompose(b), hom_decompose(c)
    cols = []
    for k in dc.kernel_generators:
        x = preimage(q, c.source.normalize(k))
        y = b(x)
        z = preimage(i2, y)
        if z is None:
            raise DiagramError("connecting map: lifted element does not come from A'")
        cols.append(da.cokernel_projection(z))
    m = da.cokernel.ngens
    delta = Homomorphism(dc.kernel, da.cokernel,
                         tuple(map(tuple, transpose(cols, m))) if cols else tuple(() for _ in range(m)))
    ka_kb = _induced(da._ker, db._ker, i, da.kernel, db.kernel)
    kb_kc = _induced(db._ker, dc._ker, q, db.kernel, dc.kernel)
    ca_cb = _coker_induced(da, db, i2)
    cb_cc = _coker_induced(db, dc, q2)
    kc_ca = delta
    maps = [ka_kb, kb_kc, kc_ca, ca_cb, cb_cc]
    groups = [da.kernel, db.kernel, dc.kernel, da.cokernel, db.cokernel, dc.cokernel]
    exact = [_check_exact_pair(maps[t], maps[t + 1]) for t in range(4)]
    names = ["ker b", "ker c", "coker a", "coker b"]
    return SnakeResult(delta, groups, maps, exact, dict(zip(names, exact)))


def _coker_induced(d1, d2, h):
    """Map coker(a) -> coker(b) induced by h on targets."""
    cols = []
    for g in d1._coker.generators:
        cols.append(d2.cokernel_projection(h(list(g))))
    m = d2.cokernel.ngens
    return Homomorphism(d1.cokernel, d2.cokernel,
                        tuple(map(tuple, transpose(cols, m))) if cols else tuple(() for _ in range(m)))


def gcd_list(xs):
    return reduce(math.gcd, xs, 0)
