import pytest

from tiltlab.clustercat import dynkin_algebra
from tiltlab.homalg import I, P, S, knit_ar_quiver
from tiltlab.repmod import (cokernel, decompose, direct_sum, dual, hom_basis, hom_dim, image, is_indecomposable,
                            is_isomorphic, kernel)


def standard(a):
    return [S(a, v) for v in range(a.n)] + [P(a, v) for v in range(a.n)] + [I(a, v) for v in range(a.n)]


@pytest.mark.parametrize("fixture", ["a4", "d4"])
def test_yoneda_dimensions(fixture, request):
    a = request.getfixturevalue(fixture)
    for M in standard(a):
        for v in range(a.n):
            assert hom_dim(P(a, v), M) == M.dims[v]
            assert hom_dim(M, I(a, v)) == M.dims[v]


def test_hom_basis_elements_are_module_maps(a4):
    for M in standard(a4):
        for N in standard(a4):
            for f in hom_basis(M, N):
                for k, ar in enumerate(a4.quiver.arrows):
                    # arrow s -> t acts V_t -> V_s; f must commute with it
                    assert f.mats[ar.source] @ M.maps[k] == N.maps[k] @ f.mats[ar.target]
            assert len(hom_basis(M, N)) == hom_dim(M, N)


def test_dual_is_an_involution(a4):
    for M in standard(a4):
        assert is_isomorphic(dual(dual(M)), M)


def test_kernel_image_cokernel_dimensions(a4):
    for M in standard(a4):
        for N in standard(a4):
            for f in hom_basis(M, N):
                K, _ = kernel(f)
                Im = image(f)[0]
                C, _ = cokernel(f)
                for v in range(a4.n):
                    assert K.dims[v] + Im.dims[v] == M.dims[v]
                    assert C.dims[v] + Im.dims[v] == N.dims[v]


def test_decompose_recovers_summands():
    a = dynkin_algebra("A", 3)
    mods = knit_ar_quiver(a).modules
    M, _, _ = direct_sum([mods[0], mods[3], mods[3], mods[5]])
    dec = decompose(M)
    got = sorted(T.dims for T in dec.pieces)
    assert got == sorted([mods[0].dims, mods[3].dims, mods[3].dims, mods[5].dims])
    assert all(is_indecomposable(T) for T in dec.pieces)
    assert sorted(m for _, m in dec.summands) == [1, 1, 2]


def test_indecomposables_have_local_endomorphism_rings(d4):
    for M in knit_ar_quiver(d4).modules:
        assert is_indecomposable(M)
