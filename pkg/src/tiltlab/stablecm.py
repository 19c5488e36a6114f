"""Cohen-Macaulay tests, stable Hom spaces, Calabi-Yau dimension checks,
preprojective algebras and relative 3-CY reports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .exactlin import Matrix, QQ, Field, QuotientSpace, kernel_basis, solve
from .quiveralg import (BoundQuiverAlgebra, Quiver, Relation, build_algebra, category_algebra,
                        make_path, present_algebra)
from .repmod import (ModuleMap, Representation, cokernel, hom_basis, identity_map,
                     is_isomorphic, maps_span_dim)
from .homalg import (DEFAULT_CUTOFF, I, P, S, ext_dim, global_dim, gorenstein_report, hom_mod_injectives_dim,
                     injective_envelope, is_finite, is_projective, knit_ar_quiver,
                     min_resolution, projective_cover)


class NotGorenstein(ValueError):
    pass


class NotGorensteinDim1(NotGorenstein):
    pass


class NotSelfinjective(ValueError):
    pass


class NotRigid(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cohen-Macaulay


@dataclass
class CMReport:
    module: str
    projectively_cm: Optional[bool]
    injectively_cm: Optional[bool]
    bound: int


def is_proj_cm(M: Representation, bound: int = 3) -> bool:
    a = M.algebra
    return all(ext_dim(M, P(a, v), i) == 0 for i in range(1, bound + 1) for v in range(a.n))


def is_inj_cm(M: Representation, bound: int = 3) -> bool:
    a = M.algebra
    return all(ext_dim(I(a, v), M, i) == 0 for i in range(1, bound + 1) for v in range(a.n))


def is_cm(M: Representation, kind: str = "both", bound: int = 3) -> CMReport:
    pc = is_proj_cm(M, bound) if kind in ("both", "projective") else None
    ic = is_inj_cm(M, bound) if kind in ("both", "injective") else None
    return CMReport(M.label(), pc, ic, bound)


# ---------------------------------------------------------------------------
# Ext through injective coresolutions


def _coords_space(maps: Sequence[ModuleMap]):
    F = maps[0].source.field
    vecs = [m.vec() for m in maps]
    return Matrix.from_columns(F, vecs, len(vecs[0]))


def _cocycles(X: Representation, res, k: int) -> List[ModuleMap]:
    """Basis of {h in Hom(X, I^k) : d^{k+1} o h = 0}."""
    if k >= len(res.terms):
        return []
    H = hom_basis(X, res.terms[k])
    if not H or k + 1 >= len(res.terms):
        return H
    d = res.differentials[k + 1]
    imgs = [d.compose(h) for h in H]
    n = len(imgs[0].vec())
    if n == 0:
        return H
    K = kernel_basis(Matrix.from_columns(X.field, [g.vec() for g in imgs], n))
    out = []
    for col in K.columns():
        m = None
        for h, c in zip(H, col):
            if c:
                m = h.scale(c) if m is None else m + h.scale(c)
        out.append(m)
    return out


def _coboundaries(X: Representation, res, k: int) -> List[ModuleMap]:
    if k == 0 or k >= len(res.terms):
        return []
    d = res.differentials[k]
    return [d.compose(g) for g in hom_basis(X, res.terms[k - 1])]


def ext_dim_injective(X: Representation, Y: Representation, n: int) -> int:
    """dim Ext^n(X, Y) from the minimal injective coresolution of Y
    (independent of the projective-resolution computation)."""
    res = min_resolution(Y, "injective", n + 1)
    Z = _cocycles(X, res, n)
    B = _coboundaries(X, res, n)
    return len(Z) - maps_span_dim(B)


def stable_ext1_underline(X: Representation, Y: Representation, f: Optional[ModuleMap] = None) -> int:
    """dim of coker(Ext^1(I, Y) -> Ext^1(X, Y)) induced by a monomorphism
    f: X -> I into an injective (the injective envelope by default)."""
    if f is None:
        f = injective_envelope(X)
    res = min_resolution(Y, "injective", 2)
    ZX = _cocycles(X, res, 1)
    if not ZX:
        return 0
    BX = _coboundaries(X, res, 1)
    pulled = [z.compose(f) for z in _cocycles(f.target, res, 1)]
    return len(ZX) - maps_span_dim(BX + pulled)


# ---------------------------------------------------------------------------
# 3-CY duality over Gorenstein algebras of dimension <= 1


@dataclass
class DualityReport:
    X: str
    Y: str
    lhs: int  # dim Ext^2(Y, X)
    rhs: int  # dim underline-Ext^1(X, Y)
    equal: bool
    naive_ext1: int  # dim Ext^1(X, Y)
    naive_equal: bool  # dim Ext^1(X, Y) == dim Ext^2(Y, X)
    exempt: bool  # X not projectively CM and Y not injectively CM
    cm_flags: Tuple[bool, bool, bool, bool]  # X proj, X inj, Y proj, Y inj


def cy3_report(a: BoundQuiverAlgebra, test_modules=None, cutoff: int = DEFAULT_CUTOFF) -> List[DualityReport]:
    g = gorenstein_report(a, cutoff)
    if not is_finite(g.dimension) or g.dimension > 1:
        raise NotGorensteinDim1(f"Gorenstein dimension {g.dimension}")
    mods = test_modules if test_modules is not None else [S(a, v) for v in range(a.n)]
    flags = [(is_proj_cm(M), is_inj_cm(M)) for M in mods]
    out = []
    for i, X in enumerate(mods):
        for j, Y in enumerate(mods):
            lhs = ext_dim(Y, X, 2)
            rhs = stable_ext1_underline(X, Y)
            e1 = ext_dim(X, Y, 1)
            out.append(DualityReport(X.label(), Y.label(), lhs, rhs, lhs == rhs, e1, e1 == lhs,
                                     not flags[i][0] and not flags[j][1],
                                     flags[i] + flags[j]))
    return out


# ---------------------------------------------------------------------------
# stable CM category


def _cosyzygy_power(M: Representation, n: int) -> Representation:
    cache = getattr(M, "_cosyz", None)
    if cache is None:
        cache = M._cosyz = [M]
    while len(cache) <= n:
        C, _ = cokernel(injective_envelope(cache[-1]))
        cache.append(C)
    return cache[n]


def stable_cm_hom(X: Representation, Y: Representation, n: int, gdim) -> int:
    """dim of Hom(X, S^n Y) in the stable CM category, S the cosyzygy shift,
    computed as Hom modulo injectives between S^p X and S^{p+n} Y once both
    are injectively CM (p >= gdim suffices)."""
    if not is_finite(gdim):
        raise NotGorenstein(f"Gorenstein dimension {gdim}")
    p = max(gdim, gdim - n, 0)
    return hom_mod_injectives_dim(_cosyzygy_power(X, p), _cosyzygy_power(Y, p + n))


@dataclass
class CYCheck:
    X: str
    Y: str
    n: int
    lhs: int  # dim CM(X, S^n Y)
    rhs: int  # dim CM(Y, S^{cy-n} X)
    equal: bool


@dataclass
class StableCYReport:
    algebra: str
    cy_dimension: int
    gorenstein_dimension: object
    selfinjective: bool
    checks: List[CYCheck]

    @property
    def passed(self) -> bool:
        return all(c.equal for c in self.checks)


def is_selfinjective(a: BoundQuiverAlgebra) -> bool:
    return all(any(P(a, v).dims == I(a, w).dims and is_isomorphic(P(a, v), I(a, w))
                   for w in range(a.n)) for v in range(a.n))


def stable_cy_report(a: BoundQuiverAlgebra, cy: int, test_modules=None,
                     cutoff: int = DEFAULT_CUTOFF) -> StableCYReport:
    """Serre-duality dimension symmetry dim CM(X, S^n Y) = dim CM(Y, S^{cy-n} X)
    for 0 <= n <= cy over pairs of test modules (simples by default)."""
    g = gorenstein_report(a, cutoff).dimension
    if not is_finite(g):
        raise NotGorenstein(f"Gorenstein dimension {g}")
    mods = test_modules if test_modules is not None else [S(a, v) for v in range(a.n)]
    checks = []
    for X in mods:
        for Y in mods:
            for n in range(cy + 1):
                lhs = stable_cm_hom(X, Y, n, g)
                rhs = stable_cm_hom(Y, X, cy - n, g)
                checks.append(CYCheck(X.label(), Y.label(), n, lhs, rhs, lhs == rhs))
    return StableCYReport(a.name, cy, g, is_selfinjective(a), checks)


def cy_selfinjective_report(a: BoundQuiverAlgebra, d: int) -> StableCYReport:
    """Stable (d+1)-CY dimension symmetry for a selfinjective algebra."""
    if not is_selfinjective(a):
        raise NotSelfinjective(a.name)
    return stable_cy_report(a, d + 1)


# ---------------------------------------------------------------------------
# preprojective algebras


def preprojective_algebra(n: int, field: Field = QQ, max_path_len: int = 30) -> BoundQuiverAlgebra:
    """Preprojective algebra of type A_n: arrows a_i: i -> i+1 and
    b_i: i+1 -> i, relation a_i b_i - b_{i-1} a_{i-1} at each vertex i."""
    if n < 1:
        raise ValueError("n >= 1")
    verts = [str(i) for i in range(1, n + 1)]
    arrows = []
    for i in range(1, n):
        arrows.append((f"a{i}", str(i), str(i + 1)))
        arrows.append((f"b{i}", str(i + 1), str(i)))
    q = Quiver(verts, arrows)
    rels = []
    for i in range(1, n + 1):
        terms = {}
        if i < n:
            terms[make_path(q, [q.arrow_index(f"a{i}"), q.arrow_index(f"b{i}")])] = field.one
        if i > 1:
            terms[make_path(q, [q.arrow_index(f"b{i - 1}"), q.arrow_index(f"a{i - 1}")])] = -field.one
        if terms:
            rels.append(Relation(terms))
    return build_algebra(q, rels, max_path_len=max_path_len, field=field, name=f"preproj_A{n}")


# ---------------------------------------------------------------------------
# endomorphism algebras of modules


class _HomTable:
    """Hom bases between a list of modules, with coordinates of composites,
    optionally modulo maps factoring through projectives."""

    def __init__(self, mods: Sequence[Representation], stable: bool = False):
        self.mods = list(mods)
        n = len(mods)
        self.F = mods[0].field
        self.H = [[self._basis(i, j) for j in range(n)] for i in range(n)]
        self.V = [[_coords_space(self.H[i][j]) if self.H[i][j] else None for j in range(n)]
                  for i in range(n)]
        self.Q = None
        if stable:
            self.Q = [[self._stable_quotient(i, j) for j in range(n)] for i in range(n)]

    def _basis(self, i, j):
        H = hom_basis(self.mods[i], self.mods[j])
        if i == j:
            # identity first so idempotents are basis elements
            idm = identity_map(self.mods[i])
            rest = []
            span = [idm]
            r = 1
            for h in H:
                if maps_span_dim(span + [h]) > r:
                    span.append(h)
                    rest.append(h)
                    r += 1
            H = [idm] + rest
        return H

    def coords(self, f: ModuleMap, i, j):
        V = self.V[i][j]
        if V is None:
            return []
        x = solve(V, Matrix.from_columns(self.F, [f.vec()], V.nrows))
        if x is None:
            raise ValueError("map not in the Hom space")
        return x.column(0)

    def _stable_quotient(self, i, j):
        H = self.H[i][j]
        if not H:
            return None
        Mj = self.mods[j]
        pi = projective_cover(Mj)
        fact = [pi.compose(h) for h in hom_basis(self.mods[i], pi.source)]
        cols = [self.coords(g, i, j) for g in fact]
        sub = Matrix.from_columns(self.F, cols, len(H)) if cols else Matrix.zeros(self.F, len(H), 0)
        return QuotientSpace(sub, len(H), self.F)

    def dims(self):
        n = len(self.mods)
        if self.Q is None:
            return [[len(self.H[i][j]) for j in range(n)] for i in range(n)]
        return [[self.Q[i][j].dim if self.Q[i][j] else 0 for j in range(n)] for i in range(n)]

    def compose(self, i, j, k, x, y):
        if self.Q is None:
            f, g = self.H[i][j][x], self.H[j][k][y]
            return self.coords(g.compose(f), i, k)
        f = self.H[i][j][self.Q[i][j].basis[x]]
        g = self.H[j][k][self.Q[j][k].basis[y]]
        c = self.coords(g.compose(f), i, k)
        return self.Q[i][k].reduce(c)

    def identities(self):
        n = len(self.mods)
        out = []
        for i in range(n):
            e = [self.F.zero] * len(self.H[i][i])
            e[0] = self.F.one
            out.append(self.Q[i][i].reduce(e) if self.Q is not None else e)
        return out


def module_endo_algebra(mods: Sequence[Representation], name: str = ""):
    """Presentation of End(M_1 + ... + M_n), products left to right."""
    T = _HomTable(mods)
    alg = category_algebra(T.dims(), T.compose, T.F, T.identities())
    return present_algebra(alg, name=name).algebra


def stable_endo_algebra(lam: BoundQuiverAlgebra, mods: Sequence[Representation], name: str = ""):
    """End(M) modulo maps factoring through projectives; M given by its
    pairwise non-isomorphic indecomposable summands.  Projective summands are
    dropped (they vanish stably); returns None when nothing remains."""
    if not is_selfinjective(lam):
        raise NotSelfinjective(lam.name)
    keep = [M for M in mods if not is_projective(M)]
    if not keep:
        return None
    T = _HomTable(keep, stable=True)
    alg = category_algebra(T.dims(), T.compose, T.F, T.identities())
    return present_algebra(alg, name=name).algebra


# ---------------------------------------------------------------------------
# maximal rigid modules and the relative 3-CY report


def ext1_total(mods: Sequence[Representation]) -> int:
    return sum(ext_dim(X, Y, 1) for X in mods for Y in mods)


@dataclass
class RigidSearch:
    summands: List[Representation]
    transcript: List[str]


def maximal_rigid_completion(lam: BoundQuiverAlgebra, start: Sequence[Representation] = (),
                             max_modules: int = 200) -> RigidSearch:
    """Greedy completion of Lambda + start to a rigid module, over the knitted
    indecomposables in knitting order."""
    ar = knit_ar_quiver(lam, max_modules)
    chosen = [P(lam, v) for v in range(lam.n)] + list(start)
    if ext1_total(chosen):
        raise NotRigid("starting module is not rigid")
    log = []
    for M, nm in zip(ar.modules, ar.names):
        if is_projective(M) or any(is_isomorphic(M, C) for C in chosen):
            continue
        e = sum(ext_dim(M, C, 1) + ext_dim(C, M, 1) for C in chosen) + ext_dim(M, M, 1)
        if e == 0:
            chosen.append(M)
            log.append(f"add {nm} dims={M.dims}")
        else:
            log.append(f"skip {nm} dims={M.dims} ext1={e}")
    return RigidSearch(chosen, log)


@dataclass
class RelativeCYReport:
    algebra: str
    summands: List[str]
    endo_dim: int
    global_dim: object
    stable_vertices: List[int]
    table: List[Tuple[int, int, int, int, int]]  # (i, x, y, dim Ext^i(Sx,Sy), dim Ext^{3-i}(Sy,Sx))
    transcript: List[str]

    @property
    def passed(self) -> bool:
        return self.global_dim == 3 and all(l == r for *_, l, r in self.table) if self.stable_vertices \
            else all(l == r for *_, l, r in self.table)


def relative_cy_report(lam: BoundQuiverAlgebra, mods: Optional[Sequence[Representation]] = None,
                       cutoff: int = DEFAULT_CUTOFF) -> RelativeCYReport:
    if not is_selfinjective(lam):
        raise NotSelfinjective(lam.name)
    transcript = []
    if mods is None:
        rs = maximal_rigid_completion(lam)
        mods = rs.summands
        transcript = rs.transcript
    elif ext1_total(mods):
        raise NotRigid("Ext^1(M, M) != 0")
    E = module_endo_algebra(mods, name=f"End({lam.name})")
    gd = global_dim(E, cutoff)
    stable = [i for i, M in enumerate(mods) if not is_projective(M)]
    table = []
    for x in range(E.n):
        for y in stable:
            for i in range(4):
                table.append((i, x, y, ext_dim(S(E, x), S(E, y), i), ext_dim(S(E, y), S(E, x), 3 - i)))
    return RelativeCYReport(lam.name, [M.label() for M in mods], E.dim, gd, stable, table, transcript)
