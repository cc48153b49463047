"""Digit arithmetic in profinite completions of Z and Z^d.

``AdicInteger`` holds the first K digits of an element of Z_a for a divisor
sequence a, where digit x_i ranges over 0 .. a_{i+1}/a_i - 1 and the value
mod a_K is the sum of x_i * a_i.  A tail rule says what happens beyond the
stored digits: ``"zero"`` (a nonnegative integer), ``"max"`` (a negative
integer) or ``None`` (unknown at this precision).

``LatticeChain`` describes r_i = Z^d V_i with V_0 = I and V_{i+1} = A_i V_i
(row vectors), and ``ProfiniteElement`` stores digit vectors x_i such that
the element is the sum of x_i V_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import fgab
from .fgab import Lattice
from .steinitz import DEFAULT_PRIME_BOUND, DivisorSequence, factorize, supernatural_of


class PrecisionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Z_a for divisor sequences


@dataclass(frozen=True)
class AdicInteger:
    base: DivisorSequence
    digits: tuple
    tail: object = None

    @property
    def precision(self):
        return len(self.digits)

    def modulus(self):
        return self.base.term(self.precision)

    def value_mod(self):
        a = self.base.terms(self.precision)
        return sum(x * ai for x, ai in zip(self.digits, a))

    def __str__(self):
        t = {"zero": "0...", "max": "max...", None: "?"}[self.tail]
        return "[" + ",".join(map(str, self.digits)) + "|" + t + "]"

    def to_json(self):
        return {"digits": list(self.digits), "tail": self.tail or "unknown"}


def _digits_of(value, base, K):
    out = []
    for i in range(K):
        m = base.cofactor(i)
        out.append(value % m)
        value //= m
    return tuple(out)


def from_residue(value, base, K, tail=None):
    return AdicInteger(base, _digits_of(value % base.term(K), base, K), tail)


def from_int(n, base, K):
    """Canonical digits of an integer; negative integers get a max-digit tail.

    >>> from_int(-1, DivisorSequence.powers(2), 5).digits
    (1, 1, 1, 1, 1)
    >>> from_int(5, DivisorSequence((1, 2, 6, 24)), 3).digits
    (1, 2, 0)
    """
    M = base.term(K)
    if n >= 0:
        tail = "zero" if n < M else None
    else:
        tail = "max" if -n <= M else None
    return from_residue(n, base, K, tail)


def _check(x, y):
    if x.base != y.base:
        raise PrecisionError("operands have different bases")
    if x.precision != y.precision:
        raise PrecisionError(f"precision mismatch: {x.precision} vs {y.precision}")


def _int_or_none(x):
    if x.tail == "zero":
        return x.value_mod()
    if x.tail == "max":
        return x.value_mod() - x.modulus()
    return None


def _result(v_exact, v_mod, x):
    if v_exact is not None:
        return from_int(v_exact, x.base, x.precision)
    return from_residue(v_mod, x.base, x.precision)


def add(x, y):
    _check(x, y)
    a, b = _int_or_none(x), _int_or_none(y)
    exact = a + b if a is not None and b is not None else None
    return _result(exact, x.value_mod() + y.value_mod(), x)


def neg(x):
    a = _int_or_none(x)
    return _result(-a if a is not None else None, -x.value_mod(), x)


def sub(x, y):
    return add(x, neg(y))


def mul(x, y):
    _check(x, y)
    a, b = _int_or_none(x), _int_or_none(y)
    exact = a * b if a is not None and b is not None else None
    return _result(exact, x.value_mod() * y.value_mod(), x)


def scale(x, n):
    return mul(x, from_int(n, x.base, x.precision))


def adic_op(kind, *operands, base=None, precision=None):
    if kind == "from_int":
        return from_int(operands[0], base, precision)
    if kind == "add":
        return add(*operands)
    if kind == "neg":
        return neg(*operands)
    if kind == "mul":
        return mul(*operands)
    raise ValueError(f"unknown operation {kind!r}")


def integer_detect(x, min_tail=None):
    """Integer represented by x, judged from its tail rule or digit pattern.

    Without a rule the top ``min_tail`` digits (default: half) must be all
    zero or all maximal; otherwise None is returned.

    >>> integer_detect(from_int(-7, DivisorSequence.powers(2), 8))
    -7
    """
    v = _int_or_none(x)
    if v is not None:
        return v
    K = x.precision
    if min_tail is None:
        min_tail = max(1, K // 2)
    top = range(K - min_tail, K)
    if all(x.digits[i] == 0 for i in top):
        return x.value_mod()
    if all(x.digits[i] == x.base.cofactor(i) - 1 for i in top):
        return x.value_mod() - x.modulus()
    return None


def has_integer_pattern(x, min_tail=None):
    return integer_detect(x, min_tail) is not None


@dataclass
class DivisionWitness:
    y: AdicInteger
    method: str
    remainder: int  # q*y - x as an integer


def solve_divisibility(x, q, bound=DEFAULT_PRIME_BOUND):
    """y with q*y - x an integer, at the precision x allows.

    Three cases: q invertible in Z_a (modular inverse), q an infinite prime
    of a (insert q as the first cofactor of an equivalent sequence and shift
    digits), q a prime of finite positive exponent (divide x minus its
    residue mod q).

    >>> base = DivisorSequence.powers(2)
    >>> solve_divisibility(from_int(1, base, 5), 3).y.value_mod()
    11
    """
    q = int(q)
    if q < 2 or len(factorize(q, bound)) != 1 or sum(factorize(q, bound).values()) != 1:
        raise ValueError(f"{q} is not a prime")
    a, K = x.base, x.precision
    M = a.term(K)
    xv = x.value_mod()
    sn = supernatural_of(a, bound)
    if M % q:
        y = from_residue(xv * pow(q, -1, M), a, K)
        return DivisionWitness(y, "inverse", 0)
    # q | a_K: the representative below is exact mod a_K, but only the class
    # mod a_K / q depends on x alone
    if q in sn.infinite:
        # (1, q, a_j, a_{j+1}, ...) is cofinal with a; in it x has first
        # digit x'_0 = x mod q and y = x'_1 + x'_2 (a'_2/q) + ...
        x0 = xv % q
        y = from_residue((xv - x0) // q, a, K)
        return DivisionWitness(y, "digit-shift", -x0)
    n = xv % q
    y = from_residue((xv - n) // q, a, K)
    return DivisionWitness(y, "finite-exponent", -n)


def divisibility_check(x, q, w):
    """Digits of q*y - x at y's precision show an integer pattern equal to w.remainder."""
    y = w.y
    diff = sub(scale(y, q), from_residue(x.value_mod(), x.base, y.precision))
    n = integer_detect(diff, min_tail=max(1, y.precision // 2))
    return n is not None and n == w.remainder


# ---------------------------------------------------------------------------
# lattice chains in Z^d


class ChainError(ValueError):
    pass


class LatticeChain:
    """Chain r_i = Z^d V_i with V_{i+1} = A_i V_i; A_i = transitions then the cycle repeated."""

    def __init__(self, d, transitions=(), cycle=()):
        self.d = int(d)
        self.transitions = [fgab.mat(A) for A in transitions]
        self.cycle = [fgab.mat(A) for A in cycle]
        for A in self.transitions + self.cycle:
            if len(A) != self.d or any(len(r) != self.d for r in A):
                raise ChainError(f"transition {A} is not {self.d}x{self.d}")
            if fgab.det(A) == 0:
                raise ChainError(f"transition {A} is singular")
        if not self.cycle:
            raise ChainError("chain needs a nonempty cycle")
        self._V = [fgab.identity(self.d)]

    @classmethod
    def from_divisor_sequence(cls, a):
        K = len(a.prefix) - 1
        return cls(1, [[[a.cofactor(i)]] for i in range(K)], [[[c]] for c in a.cycle])

    @classmethod
    def powers(cls, m, d=1):
        return cls(d, [], [[[m if i == j else 0 for j in range(d)] for i in range(d)]])

    @classmethod
    def from_json(cls, obj):
        return cls(obj["d"], obj.get("transitions", []), obj["cycle"])

    def to_json(self):
        return {"d": self.d, "transitions": self.transitions, "cycle": self.cycle}

    def transition(self, i):
        if i < len(self.transitions):
            return self.transitions[i]
        return self.cycle[(i - len(self.transitions)) % len(self.cycle)]

    def V(self, i):
        while len(self._V) <= i:
            n = len(self._V) - 1
            self._V.append(fgab.matmul(self.transition(n), self._V[n]))
        return self._V[i]

    def lattice(self, i):
        return Lattice.from_rows(self.V(i), self.d)

    def index(self, i):
        """[Z^d : r_i]."""
        return abs(fgab.det(self.V(i)))

    def cycle_product(self):
        P = fgab.identity(self.d)
        for A in self.cycle:
            P = fgab.matmul(A, P)
        return P

    def trivial_intersection(self):
        P = self.cycle_product()
        return fgab.stable_sublattice(fgab.transpose(P)).rank == 0

    def index_sequence(self):
        """Divisor sequence of the indices [Z^d : r_i]."""
        K = len(self.transitions)
        prefix = [1]
        for i in range(K):
            prefix.append(prefix[-1] * abs(fgab.det(self.transition(i))))
        return DivisorSequence(tuple(prefix), tuple(abs(fgab.det(A)) for A in self.cycle))

    def divisor_sequence(self):
        if self.d != 1:
            raise ChainError("divisor sequences exist only for d = 1")
        return self.index_sequence()

    def __eq__(self, other):
        return isinstance(other, LatticeChain) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))


@lru_cache(maxsize=None)
def _hnf_rows(A):
    return Lattice.from_rows([list(r) for r in A], len(A))


def _key(A):
    return tuple(tuple(r) for r in A)


@dataclass
class DigitSet:
    level: int
    elements: list
    hnf: tuple
    box_orders: tuple     # m_k + 1: order of the k-th generator modulo r_{i+1}
    box_condition: bool   # whether {0..m_1} x ... x {0..m_d} is itself a transversal


def digit_sets(chain, depth):
    """Transversals F_i of r_i / r_{i+1} in V_i coordinates (HNF fundamental boxes)."""
    out = []
    for i in range(depth):
        A = chain.transition(i)
        L = _hnf_rows(_key(A))
        piv = [row[next(k for k, x in enumerate(row) if x)] for row in L.basis]
        elems = [list(x) for x in product(*(range(p) for p in piv))]
        orders = []
        for k in range(chain.d):
            e = [int(j == k) for j in range(chain.d)]
            m = 1
            while not L.contains_vector([m * x for x in e]):
                m += 1
            orders.append(m)
        box = math.prod(orders) == len(elems) and \
            len({tuple(L.reduce(x)) for x in product(*(range(o) for o in orders))}) == len(elems)
        out.append(DigitSet(i, elems, L.basis, tuple(orders), box))
    return out


@dataclass(frozen=True)
class ProfiniteElement:
    chain: LatticeChain
    digits: tuple
    residual: tuple = None  # y with element = sum x_i V_i + y V_K exactly; None if unknown

    @property
    def precision(self):
        return len(self.digits)

    def value_mod(self):
        """Integer vector sum x_i V_i (a representative modulo r_K)."""
        d = self.chain.d
        v = [0] * d
        for i, x in enumerate(self.digits):
            Vi = self.chain.V(i)
            v = [a + b for a, b in zip(v, fgab.matvec(fgab.transpose(Vi, d), list(x)))]
        return v

    def to_json(self):
        return {"digits": [list(x) for x in self.digits],
                "tail": "zero" if self.residual is not None and not any(self.residual)
                else ("residual" if self.residual is not None else "unknown"),
                "residual": list(self.residual) if self.residual is not None else None}

    def __eq__(self, other):
        return isinstance(other, ProfiniteElement) and self.digits == other.digits \
            and self.residual == other.residual

    def __hash__(self):
        return hash((self.digits, self.residual))


@lru_cache(maxsize=None)
def _row_solver(A):
    return fgab.LinearSolver(fgab.transpose([list(r) for r in A]), len(A))


def _digitize(coords, chain, depth):
    """Greedy digits from V_0 coordinates; returns digits and the final residual."""
    y = list(coords)
    digits = []
    for i in range(depth):
        A = _key(chain.transition(i))
        L = _hnf_rows(A)
        x = L.reduce(y)
        digits.append(tuple(x))
        c = _row_solver(A).solve([a - b for a, b in zip(y, x)])
        if c is None:
            raise ChainError("digit extraction failed; transversal is not complete")
        y = c
    return tuple(digits), tuple(y)


def profinite_reduce(v, chain, depth):
    """Digits of an integer vector v in the completion along the chain.

    >>> profinite_reduce([5], LatticeChain.powers(2), 4).digits
    ((1,), (0,), (1,), (0,))
    """
    if len(v) != chain.d:
        raise ChainError("vector dimension does not match the chain")
    digits, res = _digitize(v, chain, depth)
    return ProfiniteElement(chain, digits, res)


def profinite_value(x):
    """Exact integer vector when the residual is known, else None."""
    if x.residual is None:
        return None
    d = x.chain.d
    tail = fgab.matvec(fgab.transpose(x.chain.V(x.precision), d), list(x.residual))
    return [a + b for a, b in zip(x.value_mod(), tail)]


def profinite_add(x, y):
    if x.chain != y.chain or x.precision != y.precision:
        raise PrecisionError("elements live on different chains or precisions")
    vx, vy = profinite_value(x), profinite_value(y)
    if vx is not None and vy is not None:
        return profinite_reduce([a + b for a, b in zip(vx, vy)], x.chain, x.precision)
    s = [a + b for a, b in zip(x.value_mod(), y.value_mod())]
    digits, _ = _digitize(s, x.chain, x.precision)
    return ProfiniteElement(x.chain, digits, None)


def profinite_neg(x):
    vx = profinite_value(x)
    if vx is not None:
        return profinite_reduce([-a for a in vx], x.chain, x.precision)
    digits, _ = _digitize([-a for a in x.value_mod()], x.chain, x.precision)
    return ProfiniteElement(x.chain, digits, None)


def odometer_step(x, v):
    return profinite_add(x, profinite_reduce(v, x.chain, x.precision))


def profinite_integer_detect(x):
    """Integer vector represented by x, or None when the tail is not rule-based."""
    return profinite_value(x)


def level_residue(x, m):
    """Canonical digits of x modulo r_m."""
    return x.digits[:m]


# ---------------------------------------------------------------------------
# dual lattices


class RankError(ValueError):
    pass


@dataclass
class DualLatticeResult:
    basis: list          # rational rows generating A*
    lattice: Lattice     # the same lattice when it is integral, else None
    primal_basis: list   # rational HNF-style basis of A


def _to_fractions(rows):
    return [[Fraction(x) for x in r] for r in rows]


def dual_lattice(generators):
    """Dual lattice {g : <x, g> in Z for all x in A} of a full-rank A ⊆ Q^d.

    >>> dual_lattice([[Fraction(1, 6)]]).lattice.basis
    ((6,),)
    """
    G = _to_fractions(generators)
    if not G:
        raise RankError("no generators")
    d = len(G[0])
    D = 1
    for r in G:
        for x in r:
            D = D * x.denominator // math.gcd(D, x.denominator)
    B = fgab.hnf([[int(x * D) for x in r] for r in G], d)
    if len(B) != d:
        raise RankError(f"generators span a lattice of rank {len(B)} < {d}")
    inv = fgab.rational_inverse(B)  # B^{-1}
    dual = [[D * inv[j][i] for j in range(d)] for i in range(d)]  # rows of D (B^{-1})^T
    primal = [[Fraction(x, D) for x in r] for r in B]
    if all(x.denominator == 1 for r in dual for x in r):
        L = Lattice.from_rows([[int(x) for x in r] for r in dual], d)
        return DualLatticeResult(dual, L, primal)
    return DualLatticeResult(dual, None, primal)


def superlattice_index(generators):
    """[A : Z^d] for a lattice A containing Z^d."""
    res = dual_lattice(generators)
    return Fraction(1) / abs(_rdet(res.primal_basis))


def _rdet(M):
    n = len(M)
    M = [list(r) for r in M]
    det = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if M[i][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            M[j], M[piv] = M[piv], M[j]
            det = -det
        det *= M[j][j]
        for i in range(j + 1, n):
            f = M[i][j] / M[j][j]
            M[i] = [a - f * b for a, b in zip(M[i], M[j])]
    return det
