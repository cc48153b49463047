import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact import fgab, simplicial as S, towers as T
from artifact.fgab import FgGroup
from artifact.steinitz import DivisorSequence
from artifact.towers import IDENTITY, Periodic, Tower, TowerElement

from corpus import SEQUENCES, periodic_towers

Z = FgGroup(1)


def el(*coords):
    return TowerElement.zero_tail([list(c) if isinstance(c, (list, tuple)) else [c] for c in coords])


# -- shift map


def test_shift_apply_examples():
    t = Tower.multiplication(2)
    assert T.shift_apply(t, el(0, 0)).prefix == ((0,), (0,))
    assert T.shift_apply(t, el(1, 1, 1)).prefix == ((-1,), (-1,), (1,))
    c = Tower.constant(Z)
    b = T.shift_apply(c, TowerElement(((5,),), ("periodic", ((5,),))))
    assert all(b.coord(c, n) == (0,) for n in range(6))


def test_shift_solve_examples():
    t = Tower.multiplication(2)
    assert T.shift_solve(t, el(0, 0, 0)).prefix == ((0,), (0,), (0,))
    assert T.shift_solve(t, el(1, 0, 0)).prefix == ((1,), (0,), (0,))
    assert T.shift_solve(t, el(0, 1, 0)).prefix == ((2,), (1,), (0,))


def test_shift_rejects_foreign_element():
    with pytest.raises(T.TowerError):
        T.shift_apply(Tower.multiplication(2, 2), el(1, 1))


@pytest.mark.parametrize("name", sorted(periodic_towers()))
def test_shift_solve_right_inverse(name):
    t = periodic_towers()[name]
    rng = random.Random(name)
    for _ in range(1000):
        b = T.random_zero_tail(t, rng, rng.randint(1, 6))
        a = T.shift_solve(t, b)
        assert T.elements_equal(t, T.shift_apply(t, a), b, len(b.prefix) + 3)


def test_periodic_shift_solve():
    t = Tower.multiplication(1)
    b = TowerElement(((1,),), ("periodic", ((0,),)))
    a = T.shift_solve(t, b)
    assert T.elements_equal(t, T.shift_apply(t, a), b, 8)
    # constant 1 has no periodic preimage under a - a' on (Z, id)
    assert T.shift_solve(t, TowerElement((), ("periodic", ((1,),)))) is None


# -- lim and lim^1


def test_lim_examples():
    assert T.lim_of(Tower.constant(Z)).group == Z
    lim = T.lim_of(Tower.multiplication(2))
    assert lim.kind == "StableLattice" and lim.group == FgGroup()
    lim = T.lim_of(Tower.periodic(FgGroup(2), [[[2, 0], [0, 1]]]))
    assert lim.kind == "StableLattice" and lim.lattice.basis == ((0, 1),)
    assert T.lim_of(Tower.periodic(FgGroup(0, (4,)), [[[1]]])).group == FgGroup(0, (4,))


def test_lim1_examples():
    assert T.lim1_of(Tower.constant(Z)).kind == "Zero"
    d = T.lim1_of(Tower.multiplication(2))
    assert d.to_json() == {"kind": "ProChain", "supernatural": "2^inf"}
    assert [str(g) for g in d.groups[:4]] == ["0", "Z/2", "Z/4", "Z/8"]
    assert str(T.lim1_of(Tower.multiplication(6)).supernatural) == "2^inf*3^inf"


def test_lim1_zero_needs_certificate():
    t = Tower([FgGroup(0, (4,)), Z], [[[1]]], IDENTITY)
    d = T.lim1_of(t)
    assert d.kind == "Zero" and d.certificate


def test_lim1_general_tower_is_truncated_sum():
    # torsion generator killed, free generator sent to (1, 2): not injective
    t = Tower.periodic(FgGroup(1, (2,)), [[[0, 1], [0, 2]]])
    d = T.lim1_of(t, 4)
    assert d.kind == "ProChain" and d.construction == "sum" and d.truncated


def test_lim1_quotient_chain_oracle():
    # A_0 / ran p_{0,n} for x6 is Z/6^n
    d = T.lim1_of(Tower.multiplication(6), 5)
    assert [g.order() for g in d.groups] == [6 ** n for n in range(5)]


def test_tower_json_roundtrip():
    t = periodic_towers()["two-phase"]
    t2 = Tower.from_json(t.to_json())
    assert t2.to_json() == t.to_json()


def test_tower_rejects_bad_maps():
    with pytest.raises((T.TowerError, fgab.DimensionError)):
        Tower([Z, FgGroup(2)], [[[1]]], None)


# -- E0 reduction


def test_e0_zero():
    t = Tower.multiplication(2)
    assert T.e0_reduce(t, el(0, 0), 0, 4) == [(0,)] * 4


def test_e0_prefix_of_ones_against_search():
    t = Tower.multiplication(2)
    b = el(1, 1, 1)
    D = 5
    got = T.e0_reduce(t, b, 0, D)
    assert got == [(1,), (3,), (7,), (7,), (7,)]
    # brute force on the first levels: a_0 modulo 2^(n+1) over all a in a box
    # with a_k - 2 a_{k+1} = b_k for k <= n
    bs = [1, 1, 1, 0, 0]
    for n in range(3):
        found = set()
        for a in itertools.product(range(-8, 9), repeat=n + 2):
            if all(a[k] - 2 * a[k + 1] == bs[k] for k in range(n + 1)):
                found.add(a[0] % 2 ** (n + 1))
        assert found == {got[n][0]}


@pytest.mark.parametrize("tower", [Tower.multiplication(2), Tower.multiplication(6),
                                   Tower.periodic(FgGroup(2), [[[2, 0], [0, 3]]]),
                                   Tower.periodic(FgGroup(2), [[[1, 1], [0, 2]]]),
                                   Tower([FgGroup(0, (4,)), Z], [[[1]]], Periodic(([[3]],)))])
def test_e0_identity(tower):
    rng = random.Random(1)
    D = 8
    for _ in range(25):
        a = T.random_zero_tail(tower, rng, rng.randint(1, 5))
        f = T.e0_reduce_all(tower, T.shift_apply(tower, a), D)
        for s in range(D):
            assert f[s] == T.eta(tower, s, a.coord(tower, s), D)


def test_e0_depth_error():
    t = Tower([Z, Z], [[[2]]], None)
    with pytest.raises(T.TowerError):
        T.e0_reduce(t, el(1), 0, 4)


# -- N_m


def test_n_examples():
    assert T.n_subgroup(Tower.multiplication(2), 0).group == FgGroup()
    r = T.n_subgroup(Tower.periodic(FgGroup(2), [[[2, 0], [0, 1]]]), 0)
    assert r.group == Z and r.generators == [(0, 1)] and r.verified
    r = T.n_subgroup(Tower.periodic(FgGroup(0, (4,)), [[[1]]]), 0)
    assert r.group == FgGroup(0, (4,)) and r.verified


@pytest.mark.parametrize("name", sorted(periodic_towers()))
def test_n_witnesses_on_corpus(name):
    t = periodic_towers()[name]
    for m in range(3):
        r = T.n_subgroup(t, m, 6)
        assert not r.truncation_only and r.verified
        assert len(r.shift_preimages) == len(r.generators)


def test_n_thread_witness_needs_lift():
    # N_0 = Z/3 but N_1 = 0: no lift chain exists, only the local witness
    r = T.n_subgroup(periodic_towers()["Z/3<-Z-x2"], 0)
    assert r.group == FgGroup(0, (3,)) and r.witness_kinds == ["local"] and r.verified


def test_n_prefix_certificates():
    t = Tower([Z, Z], [[[0]]], Periodic(([[2]],)))
    assert T.n_subgroup(t, 1).verified
    assert T.n_lattice(t, 0) is not None  # zero map: h(N_1) = ran h = 0
    t = Tower([Z, FgGroup(2)], [[[1, 0]]], Periodic(([[2, 0], [0, 1]],)))
    assert T.n_subgroup(t, 0).truncation_only


def test_n_stable_lattice_against_box():
    from oracles import box_intersection
    for Q in ([[2, 0], [0, 1]], [[2, 1], [0, 1]], [[1, 1], [1, -1]]):
        S = fgab.stable_sublattice(Q)
        pts = box_intersection(Q, 6, 4)
        assert {p for p in pts if S.contains_vector(list(p))} == pts


# -- the intersection harness


def test_intersection_counterexample_documented():
    # B_n = 2^n Z, phi: Z -> Z/3 reduction: phi(∩ B_n) = 0 but every phi(B_n) is Z/3
    phi = T.hom(Z, FgGroup(0, (3,)), [[1]])
    r = T.compare_intersection_images([[2]], phi)
    assert r["exact"] and not r["equal"] and r["witness"] == [1]


def test_intersection_free_counterexample():
    phi = T.hom(FgGroup(2), Z, [[-3, 2]])
    r = T.compare_intersection_images([[1, 2], [1, -3]], phi)
    assert not r["equal"] and r["lhs"].rank == 0


def test_intersection_agrees_when_stable_part_is_everything():
    phi = T.hom(FgGroup(2), FgGroup(0, (4,)), [[1, 3]])
    assert T.compare_intersection_images([[1, 1], [0, 1]], phi)["equal"]


# -- six-term sequence


@pytest.mark.parametrize("name", sorted(SEQUENCES))
def test_six_term_canonical(name):
    a = SEQUENCES[name]
    six = T.six_term(*T.canonical_sequence(a), depth=6, samples=4)
    assert six["all_ok"] and T.canonical_expectation(a, six)


def test_six_term_spec_example_descriptors():
    six = T.six_term(*T.canonical_sequence(SEQUENCES["2-powers"]))
    limA, limB, limC = six["lim"]
    assert limA.group == FgGroup() and limB.group == Z and limC.data["supernatural"] == "2^inf"
    assert [d.kind for d in six["lim1"]] == ["ProChain", "Zero", "Zero"]


def test_six_term_constant():
    Z2 = FgGroup(0, (2,))
    A, B, C = Tower.constant(Z), Tower.constant(Z), Tower.constant(Z2)
    i = T.TowerMap(lambda n: T.hom(Z, Z, [[2]]))
    q = T.TowerMap(lambda n: T.hom(Z, Z2, [[1]]))
    six = T.six_term(A, B, C, i, q)
    assert [d.kind for d in six["lim1"]] == ["Zero"] * 3 and six["all_ok"]
    assert [d.group for d in six["lim"]] == [Z, Z, Z2]


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(-3, 3))
def test_six_term_random_split(a, c, x):
    A, C = Tower.multiplication(a), Tower.multiplication(c)
    B = Tower.periodic(FgGroup(2), [[[a, x], [0, c]]])
    i = T.TowerMap(lambda n: T.hom(Z, FgGroup(2), [[1], [0]]))
    q = T.TowerMap(lambda n: T.hom(FgGroup(2), Z, [[0, 1]]))
    six = T.six_term(A, B, C, i, q, depth=5, samples=3)
    assert six["all_ok"]


def test_six_term_rejects_inexact_level():
    A, B, C = Tower.constant(Z), Tower.constant(Z), Tower.constant(Z)
    i = T.TowerMap(lambda n: T.hom(Z, Z, [[2]]))
    q = T.TowerMap(lambda n: T.hom(Z, Z, [[1]]))
    with pytest.raises(T.LevelExactnessError, match="level 0"):
        T.six_term(A, B, C, i, q)


# -- Milnor sequences


def test_milnor_polygon_tower():
    ct = T.polygon_tower(6)
    h1 = T.milnor_homology(ct, 1)
    assert h1["Hw"].group == FgGroup()
    h0 = T.milnor_homology(ct, 0, reduced=True)
    hinf = h0["Hinf"]
    assert hinf.kind == "ProChain" and str(hinf.supernatural) == "2^inf"
    assert h0["structure"] == "Q^(2^ℵ0) ⊕ ⊕_{p∈Fin} Z(p^∞)" and h0["infinite_primes"] == [2]


def test_milnor_constant_tower():
    K = S.torus()
    idm = S.SimplicialMap(K, K, {v: v for v in K.vertices})
    ct = T.ComplexTower([K, K, K], [idm, idm])
    for n in range(3):
        r = T.milnor_homology(ct, n)
        assert r["Hw"].group == S.homology(K, n) and r["Hinf"].kind == "Zero"


def test_milnor_roundtrip():
    assert all(T.milnor_roundtrip(T.polygon_tower(5), 0, 10, seed=3))


def test_milnor_roundtrip_detects_tampering():
    rt = T.MilnorRoundTrip(T.polygon_tower(4), 0)
    b = rt.random_weak_cycle(random.Random(0))
    b2 = [list(x) for x in b]
    b2[0][0] += 1
    assert rt.certify(b, b2) is None


def _annulus(m, rings):
    verts = [(i, j) for j in range(rings + 1) for i in range(m)]
    facets = []
    for j in range(rings):
        for i in range(m):
            a, b2 = (i, j), ((i + 1) % m, j)
            c, d = (i, j + 1), ((i + 1) % m, j + 1)
            facets += [[a, b2, c], [b2, d, c]]
    return S.SimplicialComplex(verts, facets)


def test_milnor_cohomology_nested_annuli():
    nested = [_annulus(4, r) for r in (1, 2, 3, 4)]
    r = T.milnor_cohomology(nested, 1)
    assert r["Hw"].group == Z and r["Hinf"].kind == "Zero"
    r = T.milnor_cohomology(nested, 2)
    assert r["Hw"].group == FgGroup()


def test_milnor_cohomology_constant():
    K = S.rp2()
    r = T.milnor_cohomology([K, K, K], 2)
    assert r["Hw"].group == FgGroup(0, (2,)) and r["Hinf"].kind == "Zero"


def test_milnor_cohomology_rejects_non_nested():
    with pytest.raises(T.TowerError):
        T.milnor_cohomology([_annulus(4, 2), _annulus(4, 1)], 1)


def test_milnor_cohomology_supplied_tower():
    h1 = Tower.from_divisor_sequence(DivisorSequence((1,), (2, 3)))
    r = T.milnor_cohomology_from_towers(Tower.constant(FgGroup()), h1)
    assert r["Hinf"].kind == "ProChain" and str(r["Hinf"].supernatural) == "2^inf*3^inf"


# -- Kunneth


def test_kunneth():
    t = Tower.multiplication(2)
    assert T.kunneth_torus(t, 1) is t
    t2 = T.kunneth_torus(t, 2)
    assert t2.groups == [FgGroup(2)]
    d = T.lim1_of(t2, 5)
    assert d.kind == "ProChain" and str(d.supernatural) == "2^inf"
    assert [str(g) for g in d.groups[:3]] == ["0", "Z/2 + Z/2", "Z/4 + Z/4"]
    z = T.kunneth_torus(Tower.constant(FgGroup()), 3)
    assert T.lim_of(z).group == FgGroup() and T.lim1_of(z).kind == "Zero"


def test_kunneth_torsion_ordering():
    t = Tower.periodic(FgGroup(1, (2,)), [[[1, 0], [0, 3]]])
    t3 = T.kunneth_torus(t, 3)
    assert t3.groups[0] == FgGroup(3, (2, 2, 2))
    x = [1, 0, 1, 2, 0, 5]
    assert t3.map(1)(x) == t3.groups[0].normalize([1, 0, 1, 6, 0, 15])
