import pytest

from tiltlab.fileformat import load_fixture
from tiltlab.homalg import I, S, ext_dim
from tiltlab.stablecm import (NotGorensteinDim1, NotSelfinjective, cy3_report, cy_selfinjective_report,
                              is_selfinjective, preprojective_algebra, relative_cy_report, stable_cy_report,
                              stable_ext1_underline)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_preprojective_dimension(n):
    # dim of the preprojective algebra of A_n is n(n+1)(n+2)/6
    lam = preprojective_algebra(n)
    assert lam.dim == n * (n + 1) * (n + 2) // 6
    assert is_selfinjective(lam)


def test_cy3_on_d4_fixture(d4):
    rows = cy3_report(d4)
    assert len(rows) == 16
    assert all(r.equal for r in rows)
    assert all(r.naive_equal for r in rows if not r.exempt)


def test_cm_flags_on_a4_fixture(a4):
    rows = {(r.X, r.Y): r for r in cy3_report(a4)}
    # flags: X proj-CM, X inj-CM, Y proj-CM, Y inj-CM
    assert not rows[("S1", "S1")].cm_flags[1]
    assert not rows[("S2", "S2")].cm_flags[0]
    assert [k for k, r in rows.items() if r.exempt] == [("S2", "S1")]


def test_underline_ext_vanishes_from_injectives(a4):
    for v in range(a4.n):
        for w in range(a4.n):
            assert stable_ext1_underline(I(a4, v), S(a4, w)) == 0


def test_underline_ext_bounded_by_ext(d4):
    for v in range(d4.n):
        for w in range(d4.n):
            assert stable_ext1_underline(S(d4, v), S(d4, w)) <= ext_dim(S(d4, v), S(d4, w), 1)


def test_stable_cy_selfinjective_fixtures():
    assert cy_selfinjective_report(load_fixture("sixvertex_gls"), 2).passed
    assert cy_selfinjective_report(load_fixture("cycle4_radsq"), 3).passed


def test_a7_is_stably_4cy():
    a7 = load_fixture("a7_3cluster")
    assert stable_cy_report(a7, 4).passed
    assert not stable_cy_report(a7, 3).passed


def test_hypotheses_are_enforced(a4):
    with pytest.raises(NotSelfinjective):
        cy_selfinjective_report(a4, 2)
    lam = preprojective_algebra(3)
    with pytest.raises(NotGorensteinDim1):
        cy3_report(relative_endo(lam))


def relative_endo(lam):
    from tiltlab.stablecm import maximal_rigid_completion, module_endo_algebra
    return module_endo_algebra(maximal_rigid_completion(lam).summands)


def test_relative_cy_preprojective_a2():
    r = relative_cy_report(preprojective_algebra(2))
    assert r.global_dim == 3 and r.passed
    assert len(r.summands) == 3
