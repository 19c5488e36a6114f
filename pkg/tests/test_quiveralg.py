import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tiltlab.clustercat import dynkin_algebra, dynkin_quiver
from tiltlab.fileformat import FIXTURES, load_fixture
from tiltlab.quiveralg import (FiniteAlgebra, NotFiniteDimensional, Quiver, build_algebra, parse_path,
                               present_algebra)

# hand counts of the nonzero paths of each fixture
FIXTURE_DIMS = {"a4_cluster": 9, "d4_cluster": 10, "sixvertex_gls": 21, "cycle4_radsq": 8, "a7_3cluster": 17}


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_linear_path_algebra_dimension(n):
    assert dynkin_algebra("A", n).dim == n * (n + 1) // 2


def test_d4_path_algebra_dimension():
    # 4 trivial paths, 3 arrows, 2 paths of length two
    assert dynkin_algebra("D", 4).dim == 9


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_dimension(name):
    assert load_fixture(name).dim == FIXTURE_DIMS[name]


def test_oriented_cycle_without_relations_is_rejected():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(NotFiniteDimensional):
        build_algebra(q, max_path_len=8)


def test_commutativity_relation_d4(d4):
    q = d4.quiver
    ab = d4.normal_form({parse_path(q, "alpha*beta"): 1})
    dg = d4.normal_form({parse_path(q, "delta*gamma"): 1})
    assert ab == dg and ab


@pytest.mark.parametrize("name", FIXTURES)
def test_rewriting_associative(name):
    a = load_fixture(name)
    A = FiniteAlgebra.from_bound_quiver(a)
    A.check_associative(limit=a.dim)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIXTURES), st.data())
def test_products_of_random_elements_associate(name, data):
    a = load_fixture(name)
    A = FiniteAlgebra.from_bound_quiver(a)
    vec = st.lists(st.integers(-2, 2), min_size=a.dim, max_size=a.dim)
    x, y, z = ([a.field(c) for c in data.draw(vec)] for _ in range(3))
    assert A.product(A.product(x, y), z) == A.product(x, A.product(y, z))


@pytest.mark.parametrize("name", ["a4_cluster", "d4_cluster", "cycle4_radsq"])
def test_presentation_recovers_quiver(name):
    a = load_fixture(name)
    pres = present_algebra(FiniteAlgebra.from_bound_quiver(a))
    assert pres.algebra.dim == a.dim
    assert pres.arrow_counts == a.quiver.arrow_matrix()


def test_opposite_transposes_cartan(a4):
    op = a4.opposite()
    c, cop = a4.cartan(), op.cartan()
    assert op.dim == a4.dim
    assert all(c[i][j] == cop[j][i] for i, j in itertools.product(range(a4.n), repeat=2))


def test_dynkin_quivers_are_trees():
    for kind, n in [("A", 5), ("D", 5), ("E", 6), ("E", 7), ("E", 8)]:
        q = dynkin_quiver(kind, n)
        assert len(q.arrows) == n - 1
