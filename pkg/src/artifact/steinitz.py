"""Supernatural numbers, Baer equivalence and solenoid classification.

A divisor sequence ``a`` is a finite prefix ``1 = a_0 | a_1 | ... | a_K``
followed by a repeating cycle of multipliers, ``a_{i+1} = a_i * c[i mod len]``
beyond the prefix.  Its supernatural number records, for every prime, the
supremum of the exponents along the sequence.

>>> s = supernatural_of(DivisorSequence([1, 3, 6], [2]))
>>> str(s)
'2^inf*3'
>>> r = classify_pair(DivisorSequence([1, 3], [2]), DivisorSequence([1, 9], [2]))
>>> r["steenrod_isomorphic"], r["homeomorphic"]
(True, False)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_PRIME_BOUND = 10**6


class FactorizationBoundError(ValueError):
    pass


class SequenceError(ValueError):
    pass


def factorize(n, bound=DEFAULT_PRIME_BOUND):
    """Prime factorization by trial division; primes above ``bound`` are rejected.

    >>> factorize(360)
    {2: 3, 3: 2, 5: 1}
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    p = 2
    while p * p <= n and p <= bound:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if n > bound:
            raise FactorizationBoundError(f"{n} has a prime factor above the bound {bound}")
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def primes(k, exclude=()):
    out, n = [], 2
    while len(out) < k:
        if is_prime(n) and n not in exclude:
            out.append(n)
        n += 1
    return out


@dataclass(frozen=True)
class DivisorSequence:
    prefix: tuple
    cycle: tuple = (1,)

    def __post_init__(self):
        p = tuple(int(x) for x in self.prefix)
        c = tuple(int(x) for x in self.cycle)
        object.__setattr__(self, "prefix", p)
        object.__setattr__(self, "cycle", c)
        if not p or p[0] != 1:
            raise SequenceError("prefix must start with a_0 = 1")
        if any(x < 1 for x in p) or any(p[i + 1] % p[i] for i in range(len(p) - 1)):
            raise SequenceError(f"prefix {list(p)} is not a divisibility chain of positive integers")
        if not c or any(x < 1 for x in c):
            raise SequenceError("cycle must be a nonempty list of positive integers")

    @classmethod
    def powers(cls, m):
        return cls((1,), (m,))

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["prefix"]), tuple(obj.get("cycle", [1])))

    def to_json(self):
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}

    def term(self, i):
        K = len(self.prefix) - 1
        if i <= K:
            return self.prefix[i]
        v = self.prefix[-1]
        for j in range(i - K):
            v *= self.cycle[j % len(self.cycle)]
        return v

    def terms(self, n):
        out = list(self.prefix[:n])
        while len(out) < n:
            j = len(out) - len(self.prefix)
            out.append(out[-1] * self.cycle[j % len(self.cycle)])
        return out

    def cofactor(self, i):
        """a_{i+1} / a_i."""
        K = len(self.prefix) - 1
        if i < K:
            return self.prefix[i + 1] // self.prefix[i]
        return self.cycle[(i - K) % len(self.cycle)]

    @property
    def cycle_product(self):
        return math.prod(self.cycle)

    def is_bounded(self):
        return self.cycle_product == 1


@dataclass(frozen=True)
class SupernaturalNumber:
    finite: tuple  # sorted ((p, e), ...) with e >= 1
    infinite: frozenset

    @classmethod
    def make(cls, finite, infinite):
        inf = frozenset(infinite)
        fin = tuple(sorted((p, e) for p, e in dict(finite).items() if e > 0 and p not in inf))
        return cls(fin, inf)

    def exponent(self, p):
        if p in self.infinite:
            return math.inf
        return dict(self.finite).get(p, 0)

    def __str__(self):
        parts = [(p, "inf") for p in self.infinite] + list(self.finite)
        parts.sort()
        if not parts:
            return "1"
        return "*".join(f"{p}^{e}" if e != 1 else str(p) for p, e in parts)

    def to_json(self):
        return str(self)


def supernatural_of(a, bound=DEFAULT_PRIME_BOUND):
    """Supernatural number of a divisor sequence.

    >>> str(supernatural_of(DivisorSequence.powers(6)))
    '2^inf*3^inf'
    """
    inf = set(factorize(a.cycle_product, bound)) if a.cycle_product > 1 else set()
    # exponents at primes not dividing the cycle stop growing after the prefix
    fin = factorize(a.prefix[-1], bound)
    return SupernaturalNumber.make(fin, inf)


@dataclass(frozen=True)
class H0Structure:
    """Structure of Z_a / Z: a continuum-rank Q-vector space plus Prüfer groups at Fin(a)."""

    infinite_primes: frozenset
    continuum_rank_flag: bool = True

    STRUCTURE = "Q^(2^ℵ0) ⊕ ⊕_{p∈Fin} Z(p^∞)"

    @property
    def structure(self):
        return self.STRUCTURE

    def fin_description(self):
        if not self.infinite_primes:
            return "all primes"
        return "all primes except {" + ", ".join(map(str, sorted(self.infinite_primes))) + "}"

    def in_fin(self, p):
        return p not in self.infinite_primes

    def to_json(self):
        return {"structure": self.STRUCTURE, "infinite_primes": sorted(self.infinite_primes),
                "fin": self.fin_description()}


def h0_structure(a):
    return H0Structure(supernatural_of(a).infinite)


def _search_bound(a, b, depth):
    maxexp = 1
    for i in range(len(a.prefix) - 1 + len(a.cycle)):
        c = a.cofactor(i)
        if c > 1:
            maxexp = max(maxexp, max(factorize(c).values()))
    return (depth + len(a.prefix)) * maxexp * len(b.cycle) + len(b.prefix) + 1


def cofinal(a, b, depth=32):
    """Every a_i (i <= depth) divides some b_j; j searched up to a bound derived from a and b."""
    J = _search_bound(a, b, depth)
    bj = b.terms(J + 1)
    witness = []
    for i, ai in enumerate(a.terms(depth + 1)):
        j = next((j for j, v in enumerate(bj) if v % ai == 0), None)
        if j is None:
            return False, witness
        witness.append((i, j))
    return True, witness


def baer_equivalent_direct(a, b, depth=32):
    ok1, _ = cofinal(a, b, depth)
    ok2, _ = cofinal(b, a, depth)
    return ok1 and ok2


def classify_pair(a, b, depth=32, bound=DEFAULT_PRIME_BOUND):
    """Baer equivalence, homeomorphism and Steenrod-isomorphism of two solenoids."""
    sa, sb = supernatural_of(a, bound), supernatural_of(b, bound)
    baer = sa == sb
    direct = baer_equivalent_direct(a, b, depth)
    return {
        "baer_equivalent": baer,
        "homeomorphic": baer,
        "steenrod_isomorphic": sa.infinite == sb.infinite,
        "supernatural": [str(sa), str(sb)],
        "fin_summary": [sorted(sa.infinite), sorted(sb.infinite)],
        "h0": [H0Structure(sa.infinite).to_json(), H0Structure(sb.infinite).to_json()],
        "cofinality_check": {"depth": depth, "agrees": direct == baer},
    }


def family_same_steenrod(k, base_prime):
    """k solenoids with infinite primes {base_prime} and distinct finite parts q, q^2, ..., q^k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if not is_prime(base_prime):
        raise ValueError(f"{base_prime} is not prime")
    q = primes(1, exclude=(2, base_prime))[0]
    return [DivisorSequence((1, q**j), (base_prime,)) for j in range(1, k + 1)]
