"""Randomized invariant suites behind ``protower props``.

Each suite draws a case from a seeded generator and checks it.  On the first
failure the case is shrunk (integer entries moved toward zero while the
check still fails) and reported as the witness.
"""

from __future__ import annotations

import random
from math import gcd

from . import adic, fgab, simplicial, steinitz, towers
from .fgab import FgGroup, Lattice


def _rand_matrix(rng, r=None, c=None, spread=9):
    r = r or rng.randint(1, 4)
    c = c or rng.randint(1, 4)
    return [[rng.randint(-spread, spread) for _ in range(c)] for _ in range(r)]


# -- snf


def gen_snf(rng, depth):
    return _rand_matrix(rng)


def check_snf(A, depth):
    cols = len(A[0])
    sf = fgab.smith_normal_form(A, cols)
    if fgab.matmul(fgab.matmul(sf.U, A), sf.V) != [list(r) for r in sf.S]:
        return False
    if abs(fgab.det(sf.U)) != 1 or abs(fgab.det(sf.V)) != 1:
        return False
    diag = [sf.S[i][i] for i in range(min(len(A), cols))]
    off = any(sf.S[i][j] for i in range(len(A)) for j in range(cols) if i != j)
    nz = [x for x in diag if x]
    return not off and all(x > 0 for x in nz) and all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1)) \
        and diag[:len(nz)] == nz


# -- hnf


def gen_hnf(rng, depth):
    return _rand_matrix(rng)


def check_hnf(A, depth):
    cols = len(A[0])
    H, T = fgab._hnf_with_transform(A, cols)
    if fgab.matmul(T, A) != [list(r) for r in H] or abs(fgab.det(T)) != 1:
        return False
    H = [r for r in H if any(r)]
    piv = [next(j for j, v in enumerate(r) if v) for r in H]
    if piv != sorted(set(piv)):
        return False
    for i, p in enumerate(piv):
        if H[i][p] <= 0 or any(not 0 <= H[k][p] < H[i][p] for k in range(i)):
            return False
    return True


# -- lattices


def gen_lattice(rng, depth):
    d = rng.randint(1, 3)
    while True:
        A = _rand_matrix(rng, d, d, 5)
        B = _rand_matrix(rng, d, d, 5)
        if fgab.det(A) and fgab.det(B):
            return [A, B]


def check_lattice(case, depth):
    A, B = case
    d = len(A)
    L1, L2 = Lattice.from_rows(A, d), Lattice.from_rows(B, d)
    I, S = fgab.intersect(L1, L2), fgab.lattice_sum(L1, L2)
    return fgab.index(L1, I) == fgab.index(S, L2) and fgab.contains(L1, I) and fgab.contains(S, L1)


# -- homology


def gen_homology(rng, depth):
    n = rng.randint(3, 7)
    return [sorted(rng.sample(range(n), rng.randint(1, min(4, n)))) for _ in range(rng.randint(1, 6))]


def check_homology(facets, depth):
    verts = sorted({v for f in facets for v in f})
    K = simplicial.SimplicialComplex(verts, facets)
    for n in range(1, K.dim):
        d1 = simplicial.boundary_matrix(K, n)
        d2 = simplicial.boundary_matrix(K, n + 1)
        if any(any(r) for r in fgab.matmul(d1, d2)):
            return False
    euler = sum((-1) ** n * K.count(n) for n in range(K.dim + 1))
    hom = sum((-1) ** n * simplicial.homology(K, n).rank for n in range(K.dim + 1))
    return euler == hom


# -- towers


def _rand_tower(rng, d=None):
    d = d or rng.randint(1, 2)
    while True:
        Q = _rand_matrix(rng, d, d, 3)
        if fgab.det(Q):
            break
    pre = []
    if rng.random() < 0.5:
        while True:
            P = _rand_matrix(rng, d, d, 3)
            if fgab.det(P):
                pre = [P]
                break
    return {"d": d, "prefix": pre, "cycle": [Q]}


def _tower_of(case):
    d = case["d"]
    G = FgGroup(d)
    return towers.Tower([G] * (len(case["prefix"]) + 1), case["prefix"], towers.Periodic(tuple(case["cycle"])))


def gen_e0(rng, depth):
    case = _rand_tower(rng)
    case["a"] = [[rng.randint(-5, 5) for _ in range(case["d"])] for _ in range(rng.randint(1, 4))]
    return case


def check_e0(case, depth):
    t = _tower_of(case)
    D = max(2, min(depth, 10))
    a = towers.TowerElement.zero_tail(case["a"])
    b = towers.shift_apply(t, a)
    f = towers.e0_reduce_all(t, b, D)
    return all(f[s] == towers.eta(t, s, a.coord(t, s), D) for s in range(D))


def gen_shift(rng, depth):
    case = _rand_tower(rng)
    case["b"] = [[rng.randint(-5, 5) for _ in range(case["d"])] for _ in range(rng.randint(1, 5))]
    return case


def check_shift(case, depth):
    t = _tower_of(case)
    b = towers.TowerElement.zero_tail(case["b"])
    a = towers.shift_solve(t, b)
    return towers.elements_equal(t, towers.shift_apply(t, a), b, len(case["b"]) + 2)


def gen_n_witness(rng, depth):
    return _rand_tower(rng)


def check_n_witness(case, depth):
    r = towers.n_subgroup(_tower_of(case), 0, max(2, min(depth, 6)))
    return r.truncation_only or r.verified


def gen_intersection(rng, depth):
    Q, phi = towers.random_intersection_instance(rng)
    return {"Q": Q, "phi": [list(r) for r in phi.matrix], "rank": phi.target.rank,
            "torsion": list(phi.target.torsion)}


def check_intersection(case, depth):
    Q = case["Q"]
    if fgab.det(Q) == 0:
        return True
    try:
        G = FgGroup(case["rank"], tuple(case["torsion"]))
        phi = towers.hom(FgGroup(len(Q)), G, case["phi"])
    except (ValueError, fgab.DimensionError):
        return True
    return towers.compare_intersection_images(Q, phi)["equal"]


# -- steinitz and adic


def gen_supernatural(rng, depth):
    def seq():
        prefix = [1]
        for _ in range(rng.randint(0, 2)):
            prefix.append(prefix[-1] * rng.choice([1, 2, 3, 5]))
        return {"prefix": prefix, "cycle": [rng.choice([1, 2, 3, 4, 6]) for _ in range(rng.randint(1, 2))]}
    return [seq(), seq()]


def check_supernatural(case, depth):
    a, b = (steinitz.DivisorSequence.from_json(s) for s in case)
    direct = steinitz.baer_equivalent_direct(a, b, max(depth, 12))
    return direct == (steinitz.supernatural_of(a) == steinitz.supernatural_of(b))


def gen_adic(rng, depth):
    return [rng.randint(-200, 200), rng.randint(-200, 200), rng.choice([2, 3, 6, 10])]


def check_adic(case, depth):
    x, y, m = case
    base = steinitz.DivisorSequence.powers(m) if m > 1 else steinitz.DivisorSequence.powers(2)
    K = max(depth, 12)
    X, Y = adic.from_int(x, base, K), adic.from_int(y, base, K)
    return adic.integer_detect(adic.add(X, Y)) == x + y and adic.integer_detect(adic.mul(X, Y)) == x * y \
        and adic.integer_detect(adic.neg(X)) == -x


def gen_dual(rng, depth):
    d = rng.randint(1, 2)
    gens = [[int(i == j) for j in range(d)] for i in range(d)]
    gens.append([f"{rng.randint(0, 5)}/{rng.randint(1, 6)}" for _ in range(d)])
    return gens


def check_dual(gens, depth):
    from fractions import Fraction
    G = [[Fraction(x) for x in r] for r in gens]
    res = adic.dual_lattice(G)
    if res.lattice is None:
        return False
    ok = all(sum(a * b for a, b in zip(x, g)) .denominator == 1 for x in G for g in res.lattice.basis)
    idx = abs(fgab.det([list(r) for r in res.lattice.basis]))
    return ok and Fraction(idx) == adic.superlattice_index(G)


SUITES = {
    "snf": (gen_snf, check_snf),
    "hnf": (gen_hnf, check_hnf),
    "lattice": (gen_lattice, check_lattice),
    "homology": (gen_homology, check_homology),
    "e0-identity": (gen_e0, check_e0),
    "shift": (gen_shift, check_shift),
    "n-witness": (gen_n_witness, check_n_witness),
    "intersection": (gen_intersection, check_intersection),
    "supernatural": (gen_supernatural, check_supernatural),
    "adic": (gen_adic, check_adic),
    "dual-lattice": (gen_dual, check_dual),
}


def _fails(check, case, depth):
    try:
        return not check(case, depth)
    except Exception:
        return False


def _paths(x, path=()):
    if isinstance(x, bool):
        return
    if isinstance(x, int):
        yield path
    elif isinstance(x, list):
        for i, v in enumerate(x):
            yield from _paths(v, path + (i,))
    elif isinstance(x, dict):
        for k in sorted(x):
            yield from _paths(x[k], path + (k,))


def _get(x, p):
    for k in p:
        x = x[k]
    return x


def _set(x, p, v):
    import copy
    y = copy.deepcopy(x)
    z = y
    for k in p[:-1]:
        z = z[k]
    z[p[-1]] = v
    return y


def shrink(check, case, depth, rounds=50):
    """Move integer entries toward zero while the case keeps failing."""
    for _ in range(rounds):
        changed = False
        for p in list(_paths(case)):
            v = _get(case, p)
            for cand in (0, v // 2 if v > 0 else -((-v) // 2), v - 1 if v > 0 else v + 1):
                if cand != v and abs(cand) < abs(v) or (cand == 0 and v != 0):
                    trial = _set(case, p, cand)
                    if _fails(check, trial, depth):
                        case, changed = trial, True
                        break
        if not changed:
            break
    return case


def run(name, trials, seed, depth):
    gen, check = SUITES[name]
    rng = random.Random(f"{name}:{seed}")
    for k in range(trials):
        case = gen(rng, depth)
        if not check(case, depth):
            return {"suite": name, "pass": False, "trials_run": k + 1, "witness": shrink(check, case, depth)}
    return {"suite": name, "pass": True, "trials_run": trials}
