import itertools
from fractions import Fraction
from math import prod

import pytest

from tiltlab.clustercat import (ClusterCategory, HomologyDegreeOutOfRange, NotTilting, OrbitObject,
                                dynkin_algebra)
from tiltlab.homalg import ext_dim, knit_ar_quiver
from tiltlab.repmod import hom_dim

COXETER = {("A", 2): (3, [1, 2]), ("A", 3): (4, [1, 2, 3]), ("A", 4): (5, [1, 2, 3, 4]),
           ("D", 4): (6, [1, 3, 3, 5]), ("D", 5): (8, [1, 3, 5, 7, 4])}


def fuss_catalan(kind, n, m):
    h, exps = COXETER[(kind, n)]
    return int(prod(Fraction(m * h + e + 1, e + 1) for e in exps))


def positive_roots(kind, n):
    h, exps = COXETER[(kind, n)]
    return n * h // 2


@pytest.mark.parametrize("kind,n,d", [("A", 2, 2), ("A", 4, 2), ("D", 4, 2), ("D", 5, 2), ("A", 2, 3), ("A", 3, 3)])
def test_domain_size(kind, n, d):
    C = ClusterCategory(kind, n, d)
    assert len(C.domain) == (d - 1) * positive_roots(kind, n) + n


@pytest.mark.parametrize("kind,n,d", [("A", 2, 2), ("A", 3, 2), ("A", 4, 2), ("D", 4, 2), ("A", 2, 3), ("A", 3, 3)])
def test_cluster_tilting_counts(kind, n, d):
    C = ClusterCategory(kind, n, d)
    sets = C.enumerate_cluster_tilting()
    assert len(sets) == fuss_catalan(kind, n, d - 1)
    assert all(len(T) == n for T in sets)


@pytest.mark.parametrize("kind,n", [("A", 3), ("D", 4)])
def test_mutation_closure_and_involution(kind, n):
    C = ClusterCategory(kind, n, 2)
    sets, edges = C.mutation_closure()
    assert len(sets) == len(C.enumerate_cluster_tilting())
    assert C.involution_failures(sets) == []
    assert len(edges) == n * len(sets)


@pytest.mark.parametrize("kind,n,d", [("A", 3, 2), ("D", 4, 2), ("A", 2, 3), ("A", 3, 4)])
def test_serre_duality(kind, n, d):
    C = ClusterCategory(kind, n, d)
    lifts = [C.lift(X) for X in C.domain]
    for x, y in itertools.product(lifts, repeat=2):
        assert C.hom_dim(x, y) == C.hom_dim(y, C.D.shift(x, d))


def test_F_preserves_derived_homs():
    C = ClusterCategory("A", 3, 2)
    verts = [(m, q) for m in range(-2, 4) for q in range(3)]
    for x, y in itertools.product(verts, repeat=2):
        assert C.D.hom_dim(x, y) == C.D.hom_dim(C.F(x), C.F(y))


def test_mesh_homs_match_module_homs():
    C = ClusterCategory("A", 4, 2)
    a = dynkin_algebra("A", 4)
    mods = knit_ar_quiver(a).modules
    by_dims = {M.dims: M for M in mods}
    D = C.D
    verts = [D.vertex(k, 0) for k in range(len(D.modules))]
    for x, y in itertools.product(verts, repeat=2):
        Mx, My = by_dims[D.dim_vector(x)], by_dims[D.dim_vector(y)]
        assert D.hom_dim(x, y) == hom_dim(Mx, My)
        assert D.hom_dim(x, D.shift(y, 1)) == ext_dim(Mx, My, 1)


def test_endo_algebras_have_no_loops():
    C = ClusterCategory("D", 4, 2)
    for T in C.mutation_closure()[0]:
        assert all(C.no_loops(T))


def test_fixtures_are_cluster_tilted(a4, d4):
    assert ClusterCategory("A", 4, 2).find_isomorphic(a4) is not None
    assert ClusterCategory("D", 4, 2).find_isomorphic(d4) is not None
    assert ClusterCategory("A", 4, 2).find_isomorphic(d4) is None


def test_mutation_only_for_d2():
    C = ClusterCategory("A", 2, 3)
    with pytest.raises(ValueError):
        C.mutate(C.seed(), 0)


def test_exchange_triangles():
    C = ClusterCategory("A", 4, 2)
    for T in C.mutation_closure()[0][:8]:
        for k in range(4):
            r = C.neighbor_check(T, k)
            assert r["ok"], r


def test_triangular_resolutions_d2_and_d3():
    for kind, n, d in [("A", 4, 2), ("D", 4, 2), ("A", 2, 3), ("A", 3, 3)]:
        C = ClusterCategory(kind, n, d)
        for T in C.enumerate_cluster_tilting()[:5]:
            for Y in C.domain:
                r = C.triangular_resolution(T, Y)
                assert r["a"] and r["b"] and r["c"], r


def test_resolution_of_summand_is_trivial():
    C = ClusterCategory("A", 3, 3)
    S = C.seed()
    assert C.triangular_resolution(S, S[0])["length"] == 0


def test_tilting_projections():
    C = ClusterCategory("A", 3, 3)
    tiltings = C.tilting_objects()
    assert tiltings
    for T in tiltings:
        r = C.tilting_to_dcluster(list(T))
        assert r["cluster_tilting"] and r["hom_formula_ok"]


def test_tilting_input_validation():
    C = ClusterCategory("A", 2, 3)
    with pytest.raises(HomologyDegreeOutOfRange):
        C.tilting_to_dcluster([(0, 0), (1, 2)])
    with pytest.raises(NotTilting):
        C.tilting_to_dcluster([(0, 0)])
    with pytest.raises(NotTilting):
        # a repeated summand does not give one summand per vertex
        C.tilting_to_dcluster([(0, 0), (0, 0)])


def test_canonical_representative_is_stable():
    C = ClusterCategory("A", 3, 2)
    for X in C.domain:
        x = C.lift(X)
        assert C.canonical(x) == X
        assert C.canonical(C.F(x, 2)) == X and C.canonical(C.F(x, -1)) == X
    assert isinstance(C.domain[0], OrbitObject)
