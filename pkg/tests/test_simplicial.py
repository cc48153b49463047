import pytest
from hypothesis import given, settings, strategies as st

from artifact import fgab, simplicial as S
from artifact.fgab import FgGroup

from oracles import boundary_oracle, homology_oracle

Z = FgGroup(1)
ZERO = FgGroup()


def corpus():
    return {
        "point": S.simplex(0),
        "triangle": S.simplex(2),
        "circle": S.simplex_boundary(2),
        "sphere2": S.simplex_boundary(3),
        "sphere3": S.simplex_boundary(4),
        "rp2": S.rp2(),
        "torus": S.torus(),
        "octahedron": S.octahedron(),
        "two_edges": S.SimplicialComplex([0, 1, 2, 3], [[0, 1], [2, 3]]),
    }


def test_boundary_examples():
    edge = S.SimplicialComplex(["a", "b"], [["a", "b"]])
    assert S.boundary_matrix(edge, 1) == [[-1], [1]]
    assert fgab.rank(S.boundary_matrix(S.simplex_boundary(2), 1)) == 2
    tri = S.simplex(2)
    assert not any(any(r) for r in fgab.matmul(S.boundary_matrix(tri, 1), S.boundary_matrix(tri, 2)))


@pytest.mark.parametrize("name", sorted(corpus()))
def test_boundary_matches_oracle_and_squares_to_zero(name):
    K = corpus()[name]
    for n in range(1, K.dim + 1):
        M, _, _ = boundary_oracle([list(f) for f in K.facets], n)
        assert S.boundary_matrix(K, n) == M
        if n < K.dim:
            assert not any(any(r) for r in fgab.matmul(S.boundary_matrix(K, n), S.boundary_matrix(K, n + 1)))


@pytest.mark.parametrize("name", sorted(corpus()))
def test_homology_matches_oracle(name):
    K = corpus()[name]
    facets = [list(f) for f in K.facets]
    bds = {n: boundary_oracle(facets, n)[0] for n in range(1, K.dim + 1)}
    counts = [K.count(n) for n in range(K.dim + 2)]
    for n in range(K.dim + 1):
        free, tors = homology_oracle(bds, n, counts)
        assert S.homology(K, n) == FgGroup(free, tuple(tors))


def test_homology_examples():
    assert S.homology(S.simplex(0), 0, reduced=True) == ZERO
    sph = S.simplex_boundary(3)
    assert [S.homology(sph, n) for n in range(3)] == [Z, ZERO, Z]
    assert S.homology(S.rp2(), 1) == FgGroup(0, (2,))
    assert S.homology(S.rp2(), 2) == ZERO
    assert S.homology(S.torus(), 1) == FgGroup(2)


def test_cohomology_examples():
    c = S.simplex_boundary(2)
    assert S.cohomology(c, 0) == Z and S.cohomology(c, 1) == Z
    assert S.cohomology(corpus()["two_edges"], 0) == FgGroup(2)
    assert S.cohomology(S.rp2(), 2) == FgGroup(0, (2,))
    assert S.cohomology(S.rp2(), 1) == ZERO


@pytest.mark.parametrize("name", sorted(corpus()))
def test_universal_coefficients(name):
    K = corpus()[name]
    for n in range(K.dim + 1):
        h, c = S.homology(K, n), S.cohomology(K, n)
        assert h.rank == c.rank
        if n + 1 <= K.dim:
            assert S.cohomology(K, n + 1).torsion == h.torsion


def test_spheres():
    for n in range(1, 6):
        K = S.simplex_boundary(n + 1)
        for k in range(n + 1):
            assert S.homology(K, k) == (Z if k in (0, n) else ZERO)


def test_induced_maps():
    K = S.polygon(8)
    assert S.induced_map(S.SimplicialMap(K, K, {v: v for v in K.vertices}), 1).matrix == ((1,),)
    big, small = S.polygon(8), S.polygon(4)
    f = S.SimplicialMap(big, small, {v: v % 4 for v in big.vertices})
    assert S.induced_map(f, 1).matrix == ((2,),)
    assert S.induced_map(f, 1, "cohomology").matrix == ((2,),)
    const = S.SimplicialMap(big, small, {v: 0 for v in big.vertices})
    assert S.induced_map(const, 1).is_zero()


def test_functoriality():
    a, b, c = S.polygon(16), S.polygon(8), S.polygon(4)
    f = S.SimplicialMap(a, b, {v: v % 8 for v in a.vertices})
    g = S.SimplicialMap(b, c, {v: v % 4 for v in b.vertices})
    gf = g.compose(f)
    assert S.induced_map(gf, 1) == S.induced_map(g, 1).compose(S.induced_map(f, 1))


def test_simplicial_map_rejects_non_face():
    a, b = S.polygon(4), S.polygon(5)
    with pytest.raises(S.SimplicialError):
        S.SimplicialMap(a, b, {0: 0, 1: 1, 2: 3, 3: 4})


def test_nerve_examples():
    N = S.nerve([{1, 2}, {2, 3}, {1, 3}])
    assert S.homology(N, 1) == Z
    N = S.nerve([{1, 2, 7}, {2, 3, 7}, {1, 3, 7}])
    assert N.dim == 2 and S.homology(N, 1) == ZERO
    N = S.nerve([{1}, {2}, {3}])
    assert N.dim == 0 and S.homology(N, 0) == FgGroup(3)


def test_nerve_of_vertex_stars():
    for K in (S.simplex_boundary(2), S.simplex_boundary(3), S.octahedron()):
        stars = []
        for v in K.vertices:
            stars.append({frozenset(K.label(f)) for f in K.all_faces() if v in K.label(f)})
        N = S.nerve(stars)
        for n in range(K.dim + 1):
            assert S.homology(N, n) == S.homology(K, n)


def test_subdivision_examples():
    sd, carrier = S.barycentric_subdivision(S.simplex(1))
    assert (sd.count(0), sd.count(1)) == (3, 2)
    sd, _ = S.barycentric_subdivision(S.simplex(2))
    assert sd.count(2) == 6
    for rounds in (1, 2):
        K, _ = S.subdivide(S.simplex_boundary(3), rounds)
        assert [S.homology(K, n) for n in range(3)] == [Z, ZERO, Z]


@pytest.mark.parametrize("name", ["circle", "rp2", "torus"])
def test_subdivision_invariance(name):
    K = corpus()[name]
    sd, _ = S.barycentric_subdivision(K)
    assert [S.homology(sd, n) for n in range(K.dim + 1)] == [S.homology(K, n) for n in range(K.dim + 1)]


def test_neighborhood_examples():
    K = S.simplex_boundary(3)
    Km, carrier = S.subdivide(K, 2)
    xm = [v for v in Km.vertices if carrier[v] <= {0, 1}]
    L, T = S.neighborhood_pair(Km, [v for v in xm if len(carrier[v]) == 1])
    assert S.homology(L, 0, reduced=True) == Z
    L, T = S.neighborhood_pair(K, K.vertices)
    assert not T.vertices and L == K
    O = S.octahedron()
    Om, carrier = S.subdivide(O, 1)
    xm = [v for v in Om.vertices if carrier[v] <= {0, 1, 2, 3}]
    L, _ = S.neighborhood_pair(Om, xm)
    assert S.homology(L, 1) == Z


def test_one_subdivision_is_not_enough_for_antipodal_vertices():
    K = S.simplex_boundary(3)
    Km, carrier = S.subdivide(K, 1)
    xm = [v for v in Km.vertices if carrier[v] in ({0}, {1})]
    L, _ = S.neighborhood_pair(Km, xm)
    assert S.homology(L, 0, reduced=True) == ZERO


def test_duality_harness():
    r = S.duality_check(S.octahedron(), [[0, 1], [1, 2], [2, 3], [3, 0]])
    assert r["match"] and r["rounds"][-1]["degrees"][0]["cohomology_T"] == Z
    r = S.duality_check(S.simplex_boundary(3), [[0], [1]], rounds=2)
    assert r["match"] and len(r["rounds"]) <= 3
    deg1 = r["rounds"][-1]["degrees"][1]
    assert deg1["cohomology_T"] == Z and deg1["homology_X"] == Z


def test_duality_rejects_foreign_faces():
    with pytest.raises(S.SimplicialError):
        S.duality_check(S.octahedron(), [[0, 2]])


def test_json_roundtrip():
    K = S.rp2()
    assert S.SimplicialComplex.from_json(K.to_json()) == K


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=6))
def test_random_complexes_match_oracle(facets):
    verts = sorted({v for f in facets for v in f})
    K = S.SimplicialComplex(verts, facets)
    maximal = [list(K.label(f)) for f in K.facets]
    bds = {n: boundary_oracle(maximal, n)[0] for n in range(1, K.dim + 1)}
    counts = [K.count(n) for n in range(K.dim + 2)]
    for n in range(K.dim + 1):
        free, tors = homology_oracle(bds, n, counts)
        assert S.homology(K, n) == FgGroup(free, tuple(tors))
