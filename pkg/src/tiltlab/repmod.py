"""Finite-dimensional modules as contravariant quiver representations.

An arrow a: s -> t acts by a matrix of shape dim(s) x dim(t), i.e. a linear
map V_t -> V_s.  A path a1*a2*...*ak therefore acts by the product
M_a1 M_a2 ... M_ak (last arrow applied first).  With this convention the
indecomposable projective P_v has basis the normal-form paths ending at v.

Module maps are tuples of per-vertex matrices acting on column vectors;
``g.compose(f)`` means f first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import (Matrix, QuotientSpace, column_space_basis, hstack, kernel_basis,
                       rank, solve)
from .quiveralg import BoundQuiverAlgebra


class AlgebraMismatch(ValueError):
    pass


class InvalidRepresentation(ValueError):
    pass


class SplitFailure(RuntimeError):
    pass


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int],
                 maps: Sequence[Matrix], name: str = "", check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = tuple(int(d) for d in dims)
        self.maps = list(maps)
        self.name = name
        # projective / injective bookkeeping: ("P" | "I", vertices)
        self.standard: Optional[Tuple[str, Tuple[int, ...]]] = None
        self._path_cache: Dict[int, Matrix] = {}
        q = algebra.quiver
        if len(self.dims) != q.n or len(self.maps) != len(q.arrows):
            raise InvalidRepresentation("wrong number of vertices or arrows")
        for i, a in enumerate(q.arrows):
            m = self.maps[i]
            if m.shape != (self.dims[a.source], self.dims[a.target]):
                raise InvalidRepresentation(
                    f"arrow {a.name}: expected shape {(self.dims[a.source], self.dims[a.target])}, got {m.shape}")
        if check:
            self.check_relations()

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> Tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, i: int) -> Matrix:
        """Action of basis path i (s -> t) as a matrix dims[s] x dims[t]."""
        hit = self._path_cache.get(i)
        if hit is not None:
            return hit
        p = self.algebra.basis[i]
        if not p.arrows:
            m = Matrix.identity(self.field, self.dims[p.source])
        else:
            m = self.maps[p.arrows[0]]
            for a in p.arrows[1:]:
                m = m @ self.maps[a]
        self._path_cache[i] = m
        return m

    def poly_matrix(self, poly, s: int, t: int) -> Matrix:
        out = Matrix.zeros(self.field, self.dims[s], self.dims[t])
        for p, c in poly.items():
            if not p.arrows:
                m = Matrix.identity(self.field, self.dims[s])
            else:
                m = self.maps[p.arrows[0]]
                for a in p.arrows[1:]:
                    m = m @ self.maps[a]
            out = out + m.scale(c)
        return out

    def check_relations(self):
        a = self.algebra
        for r in a.relations:
            terms = {p: c for p, c in r.terms.items() if c}
            p0 = next(iter(terms))
            if not self.poly_matrix(terms, p0.source, p0.target).is_zero():
                raise InvalidRepresentation("relation not satisfied")

    def label(self) -> str:
        return self.name or f"M{self.dims}"

    def __repr__(self):
        return f"Representation({self.label()}, dims={self.dims})"


@dataclass
class ModuleMap:
    source: Representation
    target: Representation
    mats: List[Matrix]

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        return ModuleMap(first.source, self.target,
                         [g @ f for g, f in zip(self.mats, first.mats)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [m.scale(c) for m in self.mats])

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_natural(self) -> bool:
        q = self.source.algebra.quiver
        for i, a in enumerate(q.arrows):
            if self.mats[a.source] @ self.source.maps[i] != self.target.maps[i] @ self.mats[a.target]:
                return False
        return True

    def vec(self) -> list:
        out = []
        for m in self.mats:
            for r in m.rows:
                out.extend(r)
        return out

    def rank(self) -> int:
        return sum(rank(m) for m in self.mats)

    def is_iso(self) -> bool:
        return (self.source.dims == self.target.dims
                and all(rank(m) == m.nrows for m in self.mats))


def zero_map(M: Representation, N: Representation) -> ModuleMap:
    return ModuleMap(M, N, [Matrix.zeros(M.field, n, m) for m, n in zip(M.dims, N.dims)])


def identity_map(M: Representation) -> ModuleMap:
    return ModuleMap(M, M, [Matrix.identity(M.field, d) for d in M.dims])


def linear_combination(maps: Sequence[ModuleMap], coeffs: Sequence, M=None, N=None) -> ModuleMap:
    if not maps:
        return zero_map(M, N)
    out = None
    for f, c in zip(maps, coeffs):
        if not c:
            continue
        t = f.scale(c)
        out = t if out is None else out + t
    return out if out is not None else zero_map(maps[0].source, maps[0].target)


def _same_algebra(M: Representation, N: Representation):
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")


# ---------------------------------------------------------------------------
# standard modules


def zero_module(a: BoundQuiverAlgebra) -> Representation:
    return Representation(a, [0] * a.n,
                          [Matrix.zeros(a.field, 0, 0) for _ in a.quiver.arrows], "0")


def simple(a: BoundQuiverAlgebra, v) -> Representation:
    v = a.quiver.vertex_index(v) if not isinstance(v, int) else v
    if not 0 <= v < a.n:
        raise ValueError(f"unknown vertex {v}")
    dims = [0] * a.n
    dims[v] = 1
    maps = [Matrix.zeros(a.field, dims[ar.source], dims[ar.target]) for ar in a.quiver.arrows]
    return Representation(a, dims, maps, f"S{a.vertex_name(v)}", check=False)


def projective_sum(a: BoundQuiverAlgebra, verts: Sequence[int], name: str = "") -> Representation:
    """Direct sum of P_v over verts; the basis at u is ordered by summand and
    then by the normal paths u -> v_i."""
    verts = tuple(verts)
    q = a.quiver
    F = a.field
    blocks = {u: [(i, p) for i, v in enumerate(verts) for p in a.paths_between(u, v)] for u in range(a.n)}
    pos = {u: {bp: k for k, bp in enumerate(blocks[u])} for u in range(a.n)}
    dims = [len(blocks[u]) for u in range(a.n)]
    maps = []
    for ai, ar in enumerate(q.arrows):
        s, t = ar.source, ar.target
        m = Matrix.zeros(F, dims[s], dims[t])
        arrow_idx = a.arrow_basis_index(ai)
        for col, (i, p) in enumerate(blocks[t]):
            for r, c in a.mult(arrow_idx, p).items():
                m.rows[pos[s][(i, r)]][col] = m.rows[pos[s][(i, r)]][col] + c
        maps.append(m)
    if not name:
        name = "+".join(f"P{a.vertex_name(v)}" for v in verts) or "0"
    M = Representation(a, dims, maps, name, check=False)
    M.standard = ("P", verts)
    M._blocks = blocks
    M._pos = pos
    return M


def projective(a: BoundQuiverAlgebra, v) -> Representation:
    v = a.quiver.vertex_index(v) if not isinstance(v, int) else v
    if not 0 <= v < a.n:
        raise ValueError(f"unknown vertex {v}")
    return projective_sum(a, [v])


def generator_position(P: Representation, i: int) -> Tuple[int, int]:
    """(vertex, basis position) of the i-th generator e_{v_i} of a projective sum."""
    v = P.standard[1][i]
    return v, P._pos[v][(i, P.algebra.vertex_basis_index(v))]


def dual(M: Representation, name: str = "") -> Representation:
    """k-dual, a module over the opposite algebra."""
    op = M.algebra.opposite()
    D = Representation(op, M.dims, [m.T() for m in M.maps], name or f"D({M.label()})", check=False)
    if M.standard is not None:
        kind = "I" if M.standard[0] == "P" else "P"
        D.standard = (kind, M.standard[1])
        if hasattr(M, "_blocks"):
            D._blocks = M._blocks
            D._pos = M._pos
    return D


def dual_map(f: ModuleMap, DM: Representation = None, DN: Representation = None) -> ModuleMap:
    """f: M -> N gives Df: DN -> DM."""
    DN = DN or dual(f.target)
    DM = DM or dual(f.source)
    return ModuleMap(DN, DM, [m.T() for m in f.mats])


def injective_sum(a: BoundQuiverAlgebra, verts: Sequence[int], name: str = "") -> Representation:
    P = projective_sum(a.opposite(), verts)
    if not name:
        name = "+".join(f"I{a.vertex_name(v)}" for v in verts) or "0"
    return dual(P, name)


def injective(a: BoundQuiverAlgebra, v) -> Representation:
    v = a.quiver.vertex_index(v) if not isinstance(v, int) else v
    if not 0 <= v < a.n:
        raise ValueError(f"unknown vertex {v}")
    return injective_sum(a, [v])


def map_from_projective(P: Representation, M: Representation, images: Sequence[Sequence]) -> ModuleMap:
    """The map P -> M sending the i-th generator to images[i] in M_{v_i}."""
    a = P.algebra
    F = a.field
    mats = []
    for u in range(a.n):
        cols = []
        for (i, p) in P._blocks[u]:
            cols.append(M.path_matrix(p).apply(images[i]))
        mats.append(Matrix.from_columns(F, cols, M.dims[u]) if cols else Matrix.zeros(F, M.dims[u], 0))
    return ModuleMap(P, M, mats)


def map_to_injective(M: Representation, I: Representation, functionals: Sequence[Sequence]) -> ModuleMap:
    """The map M -> I(sum of I_{v_i}) whose i-th socle coordinate is the
    functional ``functionals[i]`` on M_{v_i}."""
    DI = dual(I)
    DM = dual(M)
    g = map_from_projective(DI, DM, functionals)
    return ModuleMap(M, I, [m.T() for m in g.mats])


# ---------------------------------------------------------------------------
# Hom spaces


def hom_system(M: Representation, N: Representation):
    """Coefficient matrix of the naturality equations, unknowns ordered by
    vertex then row-major entries of f_v (shape N_v x M_v)."""
    a = M.algebra
    F = a.field
    offs = []
    o = 0
    for v in range(a.n):
        offs.append(o)
        o += M.dims[v] * N.dims[v]
    nunk = o
    eqs = []
    for i, ar in enumerate(a.quiver.arrows):
        s, t = ar.source, ar.target
        Ma, Na = M.maps[i], N.maps[i]
        ns, ms, nt, mt = N.dims[s], M.dims[s], N.dims[t], M.dims[t]
        # (f_s Ma - Na f_t)[r, c] = 0 for r < ns, c < mt
        for r in range(ns):
            for c in range(mt):
                row = {}
                for k in range(ms):
                    x = Ma.rows[k][c]
                    if x:
                        idx = offs[s] + r * ms + k
                        row[idx] = row.get(idx, F.zero) + x
                for k in range(nt):
                    x = Na.rows[r][k]
                    if x:
                        idx = offs[t] + k * mt + c
                        row[idx] = row.get(idx, F.zero) - x
                if row:
                    eqs.append(row)
    return eqs, nunk, offs


def _vec_to_map(M, N, vec, offs) -> ModuleMap:
    F = M.field
    mats = []
    for v in range(M.algebra.n):
        n, m = N.dims[v], M.dims[v]
        rows = [[vec[offs[v] + r * m + c] for c in range(m)] for r in range(n)]
        mats.append(Matrix(F, n, m, rows))
    return ModuleMap(M, N, mats)


def _sparse_kernel(eqs, nunk, F):
    if not eqs:
        return [[F.one if i == j else F.zero for i in range(nunk)] for j in range(nunk)]
    # sparse Gaussian elimination on dict rows
    pivots = {}
    order = []
    for row in eqs:
        row = dict(row)
        for p in order:
            c = row.get(p)
            if c:
                for k, x in pivots[p].items():
                    v = row.get(k, F.zero) - c * x
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)
        row = {k: x for k, x in row.items() if x}
        if not row:
            continue
        p = min(row)
        inv = F.one / row[p]
        row = {k: x * inv for k, x in row.items()}
        for q in order:
            c = pivots[q].get(p)
            if c:
                pr = pivots[q]
                for k, x in row.items():
                    v = pr.get(k, F.zero) - c * x
                    if v:
                        pr[k] = v
                    else:
                        pr.pop(k, None)
        pivots[p] = row
        order.append(p)
    free = [i for i in range(nunk) if i not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * nunk
        v[f] = F.one
        for p, row in pivots.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def hom_basis(M: Representation, N: Representation) -> List[ModuleMap]:
    _same_algebra(M, N)
    eqs, nunk, offs = hom_system(M, N)
    return [_vec_to_map(M, N, v, offs) for v in _sparse_kernel(eqs, nunk, M.field)]


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_basis(M, N))


def maps_span_dim(maps: Sequence[ModuleMap]) -> int:
    maps = list(maps)
    if not maps:
        return 0
    vecs = [f.vec() for f in maps]
    n = len(vecs[0])
    if n == 0:
        return 0
    return rank(Matrix.from_columns(maps[0].source.field, vecs, n))


# ---------------------------------------------------------------------------
# submodules, quotients, kernels, cokernels


def submodule(M: Representation, bases: Sequence[Matrix], name: str = "") -> Tuple[Representation, ModuleMap]:
    """Submodule spanned vertexwise by the (independent) columns of bases[v]."""
    F = M.field
    q = M.algebra.quiver
    maps = []
    for i, ar in enumerate(q.arrows):
        s, t = ar.source, ar.target
        Bs, Bt = bases[s], bases[t]
        if Bt.ncols == 0 or Bs.ncols == 0:
            if Bt.ncols and not (M.maps[i] @ Bt).is_zero():
                raise InvalidRepresentation("subspace not closed under arrow action")
            maps.append(Matrix.zeros(F, Bs.ncols, Bt.ncols))
            continue
        x = solve(Bs, M.maps[i] @ Bt)
        if x is None:
            raise InvalidRepresentation("subspace not closed under arrow action")
        maps.append(x)
    S = Representation(M.algebra, [b.ncols for b in bases], maps, name, check=False)
    return S, ModuleMap(S, M, list(bases))


def quotient(M: Representation, bases: Sequence[Matrix], name: str = "") -> Tuple[Representation, ModuleMap]:
    """M modulo the submodule spanned by the columns of bases[v]."""
    F = M.field
    q = M.algebra.quiver
    quots = [QuotientSpace(bases[v], M.dims[v], F) for v in range(M.algebra.n)]
    projs = [Q.matrix() for Q in quots]
    maps = []
    for i, ar in enumerate(q.arrows):
        s, t = ar.source, ar.target
        cols = []
        for b in quots[t].basis:
            cols.append(quots[s].reduce(M.maps[i].column(b)))
        maps.append(Matrix.from_columns(F, cols, quots[s].dim) if cols else Matrix.zeros(F, quots[s].dim, 0))
    C = Representation(M.algebra, [Q.dim for Q in quots], maps, name, check=False)
    return C, ModuleMap(M, C, projs)


def kernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return submodule(f.source, [kernel_basis(m) for m in f.mats], "ker")


def cokernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return quotient(f.target, f.mats, "coker")


def image(f: ModuleMap) -> Tuple[Representation, ModuleMap, ModuleMap]:
    """(Im f, M -> Im f, Im f -> N)."""
    bases = [column_space_basis(m) for m in f.mats]
    I, inc = submodule(f.target, bases, "im")
    F = f.source.field
    mats = []
    for v, m in enumerate(f.mats):
        if bases[v].ncols == 0:
            mats.append(Matrix.zeros(F, 0, m.ncols))
        else:
            mats.append(solve(bases[v], m))
    return I, ModuleMap(f.source, I, mats), inc


def radical_bases(M: Representation) -> List[Matrix]:
    F = M.field
    q = M.algebra.quiver
    out = []
    for v in range(M.algebra.n):
        blocks = [M.maps[i] for i in q.arrows_from(v)]
        if not blocks or M.dims[v] == 0:
            out.append(Matrix.zeros(F, M.dims[v], 0))
        else:
            out.append(column_space_basis(hstack(F, M.dims[v], blocks)))
    return out


def socle_bases(M: Representation) -> List[Matrix]:
    F = M.field
    q = M.algebra.quiver
    out = []
    for v in range(M.algebra.n):
        rows = []
        for i in q.arrows_to(v):
            rows.extend(M.maps[i].rows)
        if not rows:
            out.append(Matrix.identity(F, M.dims[v]))
        else:
            out.append(kernel_basis(Matrix(F, len(rows), M.dims[v], [list(r) for r in rows])))
    return out


def radical(M: Representation):
    return submodule(M, radical_bases(M), f"rad {M.label()}")


def top(M: Representation):
    return quotient(M, radical_bases(M), f"top {M.label()}")


def socle(M: Representation):
    return submodule(M, socle_bases(M), f"soc {M.label()}")


def top_vector(M: Representation) -> Tuple[int, ...]:
    return tuple(d - b.ncols for d, b in zip(M.dims, radical_bases(M)))


def socle_vector(M: Representation) -> Tuple[int, ...]:
    return tuple(b.ncols for b in socle_bases(M))


# ---------------------------------------------------------------------------
# direct sums and decomposition


def direct_sum(mods: Sequence[Representation], name: str = "") -> Tuple[Representation, List[ModuleMap], List[ModuleMap]]:
    from .exactlin import block_diag
    mods = list(mods)
    a = mods[0].algebra
    F = a.field
    dims = [sum(M.dims[v] for M in mods) for v in range(a.n)]
    maps = [block_diag(F, [M.maps[i] for M in mods]) for i in range(len(a.quiver.arrows))]
    S = Representation(a, dims, maps, name or " + ".join(M.label() for M in mods), check=False)
    incs, projs = [], []
    offs = [0] * a.n
    for M in mods:
        inc, proj = [], []
        for v in range(a.n):
            I = Matrix.zeros(F, dims[v], M.dims[v])
            P = Matrix.zeros(F, M.dims[v], dims[v])
            for k in range(M.dims[v]):
                I.rows[offs[v] + k][k] = F.one
                P.rows[k][offs[v] + k] = F.one
            inc.append(I)
            proj.append(P)
        for v in range(a.n):
            offs[v] += M.dims[v]
        incs.append(ModuleMap(M, S, inc))
        projs.append(ModuleMap(S, M, proj))
    if all(M.standard and M.standard[0] == "P" for M in mods) and mods:
        pass
    return S, incs, projs


def _power(f: ModuleMap, n: int) -> ModuleMap:
    out = identity_map(f.source)
    base = f
    while n:
        if n & 1:
            out = base.compose(out)
        base = base.compose(base)
        n >>= 1
    return out


def _is_nilpotent(f: ModuleMap) -> bool:
    return _power(f, max(f.source.dims) if f.source.dims else 0).is_zero()


def _trace(f: ModuleMap):
    F = f.source.field
    t = F.zero
    for m in f.mats:
        for i in range(m.nrows):
            t = t + m.rows[i][i]
    return t


def _endo_radical_dim(E: List[ModuleMap]) -> int:
    F = E[0].source.field
    n = len(E)
    form = [[_trace(E[i].compose(E[j])) for j in range(n)] for i in range(n)]
    return n - rank(Matrix(F, n, n, form))


def _min_poly(f: ModuleMap):
    """Coefficients (low to high, monic) of the minimal polynomial of f."""
    F = f.source.field
    powers = [identity_map(f.source)]
    vecs = [powers[0].vec()]
    while True:
        nxt = f.compose(powers[-1])
        v = nxt.vec()
        m = Matrix.from_columns(F, vecs, len(v))
        x = solve(m, Matrix.from_columns(F, [v], len(v)))
        if x is not None:
            return [-c for c in x.column(0)] + [F.one]
        powers.append(nxt)
        vecs.append(v)


def _poly_eval(f: ModuleMap, coeffs) -> ModuleMap:
    out = zero_map(f.source, f.source)
    for c in reversed(coeffs):
        out = f.compose(out) + identity_map(f.source).scale(c)
    return out


def _split_element(E: List[ModuleMap]) -> Optional[ModuleMap]:
    """A non-nilpotent non-invertible endomorphism, or None if none found."""
    import sympy
    F = E[0].source.field
    cands = list(E)
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            cands.append(E[i] + E[j])
    t = sympy.symbols("t")
    for x in cands:
        inv = x.is_iso()
        nil = _is_nilpotent(x)
        if not inv and not nil:
            return x
        if nil:
            for y in E:
                xy = x.compose(y)
                if _trace(xy):
                    return xy
            continue
        coeffs = _min_poly(x)
        if F.p is None:
            poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)], t)
            factors = sympy.factor_list(poly.as_expr(), t)[1]
        else:
            poly = sympy.Poly([int(c.v) for c in reversed(coeffs)], t, modulus=F.p)
            factors = [(f_.as_expr(), e) for f_, e in poly.factor_list()[1]]
        if len(factors) < 2:
            continue
        fac, e = factors[0]
        fp = sympy.Poly(fac ** e, t)
        cs = [F(sympy.Rational(c).p) / F(sympy.Rational(c).q) for c in reversed(fp.all_coeffs())]
        return _poly_eval(x, cs)
    return None


@dataclass
class Decomposition:
    summands: List[Tuple[Representation, int]]
    inclusions: List[ModuleMap]
    projections: List[ModuleMap]
    pieces: List[Representation]

    def names(self) -> List[str]:
        out = []
        for M, m in self.summands:
            out.extend([M.label()] * m)
        return out


def _fitting_split(M: Representation, y: ModuleMap):
    N = _power(y, M.dim)
    K, kinc = submodule(M, [kernel_basis(m) for m in N.mats])
    I, iinc = submodule(M, [column_space_basis(m) for m in N.mats])
    F = M.field
    kproj, iproj = [], []
    for v in range(M.algebra.n):
        B = hstack(F, M.dims[v], [kinc.mats[v], iinc.mats[v]])
        if M.dims[v] == 0:
            kproj.append(Matrix.zeros(F, K.dims[v], 0))
            iproj.append(Matrix.zeros(F, I.dims[v], 0))
            continue
        inv = solve(B, Matrix.identity(F, M.dims[v]))
        kproj.append(Matrix(F, K.dims[v], M.dims[v], [list(r) for r in inv.rows[:K.dims[v]]]))
        iproj.append(Matrix(F, I.dims[v], M.dims[v], [list(r) for r in inv.rows[K.dims[v]:]]))
    return (K, kinc, ModuleMap(M, K, kproj)), (I, iinc, ModuleMap(M, I, iproj))


def is_local(M: Representation, E=None) -> bool:
    E = E if E is not None else hom_basis(M, M)
    if len(E) <= 1:
        return len(E) == 1
    return len(E) - _endo_radical_dim(E) == 1


def _pieces(M: Representation):
    """List of (indecomposable, inclusion into M, projection from M)."""
    if M.dim == 0:
        return []
    E = hom_basis(M, M)
    if is_local(M, E):
        return [(M, identity_map(M), identity_map(M))]
    y = _split_element(E)
    if y is None:
        raise SplitFailure(f"could not split {M.label()}: endomorphism ring not split over {M.field}")
    out = []
    for (S, inc, proj) in _fitting_split(M, y):
        for (T, i2, p2) in _pieces(S):
            out.append((T, inc.compose(i2), p2.compose(proj)))
    return out


def decompose(M: Representation) -> Decomposition:
    pieces = _pieces(M)
    groups: List[List[int]] = []
    for k, (T, _, _) in enumerate(pieces):
        for g in groups:
            if _iso_indecomposable(pieces[g[0]][0], T):
                g.append(k)
                break
        else:
            groups.append([k])
    summands = [(pieces[g[0]][0], len(g)) for g in groups]
    return Decomposition(summands, [p[1] for p in pieces], [p[2] for p in pieces], [p[0] for p in pieces])


def _iso_indecomposable(M: Representation, N: Representation) -> bool:
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    fs = hom_basis(M, N)
    if not fs:
        return False
    gs = hom_basis(N, M)
    for f in fs:
        if f.is_iso():
            return True
    for f in fs:
        for g in gs:
            if not _is_nilpotent(g.compose(f)):
                return True
    return False


def is_isomorphic(M: Representation, N: Representation) -> bool:
    _same_algebra(M, N)
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    if is_local(M) and is_local(N):
        return _iso_indecomposable(M, N)
    dm, dn = decompose(M), decompose(N)
    left = [T for T, m in dm.summands for _ in range(m)]
    right = [T for T, m in dn.summands for _ in range(m)]
    if len(left) != len(right):
        return False
    used = [False] * len(right)
    for T in left:
        for j, U in enumerate(right):
            if not used[j] and _iso_indecomposable(T, U):
                used[j] = True
                break
        else:
            return False
    return True


def is_indecomposable(M: Representation) -> bool:
    return M.dim > 0 and is_local(M)


def standard_name(M: Representation, cands: Dict[str, Representation]) -> str:
    """Name of an indecomposable M among named candidates, or its dim vector."""
    for nm, C in cands.items():
        if C.dims == M.dims and _iso_indecomposable(C, M):
            return nm
    return "M" + "".join(str(d) for d in M.dims)
