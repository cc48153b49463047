"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from artifact import adic, fgab, rigidity, simplicial as S, steinitz, towers as T
from artifact.adic import LatticeChain
from artifact.fgab import FgGroup, Lattice
from artifact.steinitz import DivisorSequence, classify_pair
from artifact.towers import Tower

from acceptance_log import report
from corpus import SEQUENCES, periodic_towers, superlattices
from oracles import brute_dual, determinantal_invariants, quotient_order

Z = FgGroup(1)


def test_1_smith_normal_form():
    rng = random.Random(1)
    failures, oracle_checked, spent = [], 0, 0.0
    for k in range(1000):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)]
        t0 = time.perf_counter()
        sf = fgab.smith_normal_form(A, c)
        spent += time.perf_counter() - t0
        inv = list(sf.invariants)
        ok = fgab.matmul(fgab.matmul(sf.U, A), sf.V) == [list(x) for x in sf.S]
        ok = ok and abs(fgab.det(sf.U)) == 1 and abs(fgab.det(sf.V)) == 1
        ok = ok and all(sf.S[i][j] == 0 for i in range(r) for j in range(c) if i != j)
        ok = ok and all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))
        if r <= 4 and c <= 4:
            oracle_checked += 1
            ok = ok and inv == determinantal_invariants(A)
        if not ok:
            failures.append(k)
    assert report(1, not failures and spent < 30,
                  f"{len(failures)} failures, {oracle_checked} checked against minors, SNF time {spent:.1f}s")


def test_2_homology_corpus():
    t0 = time.perf_counter()
    ok = True
    for n in range(5):
        K = S.simplex_boundary(n + 1)
        for k in range(n + 2):
            want = Z if k in (0, n) else FgGroup()
            # two points: unreduced H_0 is Z^2, the reduced group is Z
            ok = ok and S.homology(K, k, reduced=(n == 0)) == want
        if n == 0:
            ok = ok and S.homology(K, 0) == FgGroup(2)
    rp2 = S.rp2()
    ok = ok and len(rp2.vertices) == 6
    ok = ok and S.homology(rp2, 1) == FgGroup(0, (2,)) and S.homology(rp2, 2) == FgGroup()
    spent = time.perf_counter() - t0
    assert report(2, ok and spent < 5, f"{spent:.2f}s")


def test_3_polygon_solenoid():
    ct = T.polygon_tower(8)
    h1 = T.milnor_homology(ct, 1)
    h0 = T.milnor_homology(ct, 0, reduced=True)
    hinf = h0["Hinf"]
    ok = h1["Hw"].group == FgGroup()
    ok = ok and hinf.kind == "ProChain" and str(hinf.supernatural) == "2^inf"
    ok = ok and h0["structure"] == "Q^(2^ℵ0) ⊕ ⊕_{p∈Fin} Z(p^∞)" and h0["infinite_primes"] == [2]
    assert report(3, ok, f"lim H1 = {h1['Hw'].group}, lim1 = {hinf.kind} {hinf.supernatural}")


def test_4_milnor_roundtrip():
    res = T.milnor_roundtrip(T.polygon_tower(6), 0, 100, seed=11)
    assert report(4, len(res) == 100 and all(res), f"{sum(res)}/100 certified")


def test_5_e0_identity():
    families = {"x2": Tower.multiplication(2), "x6": Tower.multiplication(6),
                "diag(2,3)": Tower.periodic(FgGroup(2), [[[2, 0], [0, 3]]])}
    D = 10
    bad = 0
    for name, t in families.items():
        rng = random.Random(name)
        for _ in range(100):
            a = T.random_zero_tail(t, rng, rng.randint(1, 6))
            f = T.e0_reduce_all(t, T.shift_apply(t, a), D)
            bad += sum(f[s] != T.eta(t, s, a.coord(t, s), D) for s in range(D))
    assert report(5, bad == 0, f"{bad} mismatched levels over 300 elements")


@pytest.mark.xfail(strict=True, reason="the intersection statement fails for some (chain, map) pairs; "
                                       "see the counterexamples in test_towers")
def test_6_intersection_images():
    rng = random.Random(6)
    disagree = []
    for k in range(200):
        Q, phi = T.random_intersection_instance(rng)
        r = T.compare_intersection_images(Q, phi)
        if not r["equal"]:
            disagree.append((Q, phi.matrix, phi.target, r["witness"]))
    detail = f"{len(disagree)}/200 instances disagree"
    if disagree:
        Q, M, G, w = disagree[0]
        detail += f"; first: Q={Q}, phi={[list(x) for x in M]} into {G}, witness {w}"
    assert report(6, not disagree, detail)


def test_7_n_witnesses():
    kinds, bad = [], []
    for name, t in periodic_towers().items():
        r = T.n_subgroup(t, 0, 6)
        ok = not r.truncation_only and len(r.shift_preimages) == len(r.generators)
        # re-apply each preimage and compare with g at level 0, zero above
        for g, a, kind in zip(r.generators, r.shift_preimages, r.witness_kinds):
            b = T.shift_apply(t, a)
            levels = 6 if kind == "thread" else 1
            for k in range(levels):
                G = t.group(k)
                want = tuple(g) if k == 0 else G.zero()
                ok = ok and tuple(G.normalize(b.coord(t, k))) == tuple(G.normalize(want))
            kinds.append(kind)
        if not ok:
            bad.append(name)
    assert report(7, not bad, f"{len(kinds)} generators over {len(periodic_towers())} towers"
                              f" ({kinds.count('thread')} thread, {kinds.count('local')} local); failing: {bad}")


def test_8_classification():
    c = classify_pair(SEQUENCES["2-powers"], SEQUENCES["3-powers"])
    ok = not c["homeomorphic"] and not c["steenrod_isomorphic"]
    c = classify_pair(SEQUENCES["3*2-powers"], SEQUENCES["9*2-powers"])
    ok = ok and c["steenrod_isomorphic"] and not c["homeomorphic"]
    ok = ok and classify_pair(SEQUENCES["2-powers"], SEQUENCES["4-powers"])["homeomorphic"]
    fam = steinitz.family_same_steenrod(5, 2)
    pairs = [classify_pair(a, b) for a, b in itertools.combinations(fam, 2)]
    ok = ok and len(pairs) == 10
    ok = ok and all((r["steenrod_isomorphic"], r["homeomorphic"]) == (True, False) for r in pairs)
    assert report(8, ok, f"family of 5 gives {len(pairs)} pairs")


def test_9_divisibility():
    bases = {"2-powers": DivisorSequence.powers(2), "6-powers": DivisorSequence.powers(6),
             "factorial-prefix": DivisorSequence((1, 2, 6, 24), (5,)),
             "3*2-powers": DivisorSequence((1, 3), (2,))}
    K, bad = 12, 0
    for name, base in bases.items():
        rng = random.Random(name)
        M = base.term(K)
        for _ in range(100):
            x = adic.from_residue(rng.randrange(M), base, K)
            q = rng.choice([2, 3, 5, 7, 11])
            w = adic.solve_divisibility(x, q)
            mod = M // q if M % q == 0 else M
            ok = adic.divisibility_check(x, q, w)
            ok = ok and (q * w.y.value_mod() - x.value_mod() - w.remainder) % mod == 0
            bad += not ok
    assert report(9, bad == 0, f"{bad} failures over {100 * len(bases)} cases")


def test_10_dual_lattices():
    bad = []
    for k, gens in enumerate(superlattices()):
        d = len(gens[0])
        L = adic.dual_lattice(gens).lattice
        ok = fgab.index(Lattice.full(d), L) == quotient_order(gens)
        box = 6 if d < 3 else 4
        pts = brute_dual(gens, box)
        every = itertools.product(range(-box, box + 1), repeat=d)
        ok = ok and pts == {g for g in every if L.contains_vector(list(g))}
        if not ok:
            bad.append(k)
    assert report(10, not bad, f"20 superlattices, failing: {bad}")


def test_11_duality_harness():
    t0 = time.perf_counter()
    r1 = S.duality_check(S.octahedron(), [[0, 1], [1, 2], [2, 3], [3, 0]])
    ok = r1["match"] and r1["rounds"][-1]["degrees"][0]["cohomology_T"] == Z
    r2 = S.duality_check(S.simplex_boundary(3), [[0], [1]], rounds=2)
    deg1 = r2["rounds"][-1]["degrees"][1]
    ok = ok and r2["match"] and deg1["cohomology_T"] == Z and deg1["homology_X"] == Z
    spent = time.perf_counter() - t0
    assert report(11, ok and spent < 60,
                  f"{spent:.1f}s, subdivisions used: {len(r1['rounds']) - 1} and {len(r2['rounds']) - 1}")


def test_12_rigidity():
    P2, P3 = LatticeChain.powers(2), LatticeChain.powers(3)
    homs, _ = rigidity.enumerate_trivial_homs(P2, P3, 8, 20)
    ok = [h.rational_matrix() for h in homs] == [((Fraction(0),),)]
    bound, depth = 3, 8
    homs, certs = rigidity.enumerate_trivial_homs(P2, P2, depth, bound)
    got = {h.rational_matrix()[0][0] for h in homs}
    expected = set()
    for s in range(bound + 1):
        for m in range(-bound, bound + 1):
            c = Fraction(m, 2 ** s)
            if all(any((c * 2 ** i).denominator == 1 and int(c * 2 ** i) % 2 ** j == 0
                       for i in range(s, s + 2 * depth + 3)) for j in range(depth + 1)):
                expected.add(c)
    ok = ok and got == expected and all(c.ok for c in certs)
    pairs = [("2-powers", "4-powers"), ("2-powers", "3-powers"), ("3*2-powers", "9*2-powers"),
             ("2-powers", "6-powers"), ("alternating-2-3", "6-powers"), ("2-powers", "3*2-powers"),
             ("factorials-then-bounded", "bounded-5"), ("trivial", "bounded-5"), ("4-powers", "4-powers"),
             ("3-powers", "9*2-powers")]
    agree = 0
    for a, b in pairs:
        rep = rigidity.chains_conjugate(LatticeChain.from_divisor_sequence(SEQUENCES[a]),
                                        LatticeChain.from_divisor_sequence(SEQUENCES[b]))
        agree += rep.verdict != "Undecided" and \
            (rep.verdict == "Conjugate") == classify_pair(SEQUENCES[a], SEQUENCES[b])["homeomorphic"]
    ok = ok and agree == len(pairs)
    assert report(12, ok, f"{len(got)} homs in the Z[1/2] box, conjugacy agrees on {agree}/{len(pairs)}")


def test_13_six_term():
    bad = []
    for name, a in SEQUENCES.items():
        six = T.six_term(*T.canonical_sequence(a), depth=6, samples=4)
        if not (six["all_ok"] and T.canonical_expectation(a, six)):
            bad.append(name)
    assert report(13, not bad, f"{len(SEQUENCES)} sequences, failing: {bad}")
