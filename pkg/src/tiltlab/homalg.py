"""Covers, envelopes, minimal resolutions, Ext, homological dimensions,
Auslander-Reiten translation and AR-quiver knitting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exactlin import Matrix, QuotientSpace, kernel_basis, rank, hstack
from .quiveralg import BoundQuiverAlgebra, Path
from .repmod import (ModuleMap, Representation, cokernel, decompose, direct_sum, dual,
                     hom_basis, injective, injective_sum, _iso_indecomposable, kernel,
                     map_from_projective, projective, projective_sum, quotient,
                     radical, radical_bases, simple, socle_bases, zero_map, maps_span_dim,
                     zero_module, _trace)

DEFAULT_CUTOFF = 20


class NonProjectiveInput(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AtLeast:
    """A homological dimension known only to be >= value."""

    value: int

    def __str__(self):
        return f">={self.value}"


Dim = Union[int, AtLeast]


def is_finite(d: Dim) -> bool:
    return not isinstance(d, AtLeast)


def dim_max(ds: Sequence[Dim]) -> Dim:
    inf = [d for d in ds if isinstance(d, AtLeast)]
    if inf:
        return AtLeast(min(d.value for d in inf))
    return max(ds) if ds else 0


def dim_str(d: Dim) -> str:
    return str(d)


# ---------------------------------------------------------------------------
# covers and envelopes


def top_generators(M: Representation) -> List[Tuple[int, list]]:
    """(vertex, vector) pairs whose classes form a basis of top(M)."""
    out = []
    F = M.field
    for v, rb in enumerate(radical_bases(M)):
        Q = QuotientSpace(rb, M.dims[v], F)
        for b in Q.basis:
            e = [F.zero] * M.dims[v]
            e[b] = F.one
            out.append((v, e))
    return out


def projective_cover(M: Representation) -> ModuleMap:
    gens = top_generators(M)
    P = projective_sum(M.algebra, [v for v, _ in gens])
    return map_from_projective(P, M, [e for _, e in gens])


def injective_envelope(M: Representation) -> ModuleMap:
    DM = dual(M)
    pi = projective_cover(DM)
    I = dual(pi.source)
    return ModuleMap(M, I, [m.T() for m in pi.mats])


def syzygy(M: Representation) -> Tuple[Representation, ModuleMap, ModuleMap]:
    """(Omega M, inclusion into P(M), cover P(M) -> M)."""
    pi = projective_cover(M)
    K, inc = kernel(pi)
    return K, inc, pi


def cosyzygy(M: Representation) -> Tuple[Representation, ModuleMap, ModuleMap]:
    """(Omega^-1 M, projection from I(M), envelope M -> I(M))."""
    iota = injective_envelope(M)
    C, proj = cokernel(iota)
    return C, proj, iota


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    kind: str  # "projective" | "injective"
    module: Representation
    terms: List[Representation]
    differentials: List[ModuleMap]  # projective: d_0: P_0 -> M, d_i: P_i -> P_{i-1}
    syzygies: List[Representation]
    complete: bool  # a zero (co)syzygy was reached
    minimal: bool = True
    _dual: Optional["Resolution"] = None

    @property
    def length(self) -> int:
        return len(self.terms) - 1 if self.terms else -1

    def term_names(self) -> List[List[str]]:
        a = self.module.algebra
        out = []
        for T in self.terms:
            kind, verts = T.standard
            out.append(sorted(f"{kind}{a.vertex_name(v)}" for v in verts))
        return out

    def multiplicities(self, n: int) -> List[int]:
        """Multiplicity of each indecomposable projective (injective) in degree n."""
        a = self.module.algebra
        m = [0] * a.n
        if n < len(self.terms):
            for v in self.terms[n].standard[1]:
                m[v] += 1
        return m

    def verify(self) -> Dict[str, bool]:
        """Complex, exactness and minimality certificates."""
        if self.kind == "injective":
            # checked on the dual projective resolution
            return self._dual.verify()
        ok_complex = True
        ok_exact = True
        ok_min = True
        d = self.differentials
        for i in range(1, len(d)):
            if not d[i - 1].compose(d[i]).is_zero():
                ok_complex = False
        # exactness: rank bookkeeping, vertexwise
        for i in range(len(d)):
            cur = d[i]
            nxt = d[i + 1] if i + 1 < len(d) else None
            for v in range(len(cur.mats)):
                k = cur.mats[v].ncols - rank(cur.mats[v])
                im = rank(nxt.mats[v]) if nxt is not None else 0
                if nxt is None and self.complete and k != 0:
                    ok_exact = False
                if nxt is not None and k != im:
                    ok_exact = False
        if d and rank_total(d[0]) != self.module.dim:
            ok_exact = False
        # minimality: d_i (i >= 1) lands in the radical of its target
        for i in range(1, len(d)):
            T = d[i].target
            rb = radical_bases(T)
            for v, m in enumerate(d[i].mats):
                if m.ncols and rb[v].ncols < m.nrows:
                    if rank(hstack(T.field, m.nrows, [rb[v], m])) != rb[v].ncols:
                        ok_min = False
        return {"complex": ok_complex, "exact": ok_exact, "minimal": ok_min}


def rank_total(f: ModuleMap) -> int:
    return sum(rank(m) for m in f.mats)


def _proj_res_cache(M: Representation):
    c = getattr(M, "_pres", None)
    if c is None:
        c = {"terms": [], "diffs": [], "syz": [M], "done": False}
        M._pres = c
    return c


def _extend_projective(M: Representation, n: int):
    """Ensure terms P_0..P_n are computed (or the resolution has ended)."""
    c = _proj_res_cache(M)
    while len(c["terms"]) <= n and not c["done"]:
        K = c["syz"][-1]
        if K.dim == 0:
            c["done"] = True
            break
        pi = projective_cover(K)
        Knext, inc = kernel(pi)
        if c["terms"]:
            # compose with inclusion of K into the previous term
            prev_inc = c["incs"][-1]
            d = prev_inc.compose(pi)
        else:
            d = pi
        c.setdefault("incs", []).append(inc)
        c["terms"].append(pi.source)
        c["diffs"].append(d)
        c["syz"].append(Knext)
        if Knext.dim == 0:
            c["done"] = True
    return c


def min_resolution(M: Representation, kind: str = "projective", max_len: int = DEFAULT_CUTOFF) -> Resolution:
    if kind == "injective":
        DM = dual(M)
        r = min_resolution(DM, "projective", max_len)
        terms = [dual(T) for T in r.terms]
        diffs = []
        for i, d in enumerate(r.differentials):
            src = terms[i - 1] if i else M
            diffs.append(ModuleMap(src, terms[i], [m.T() for m in d.mats]))
        syz = [dual(K) for K in r.syzygies]
        return Resolution("injective", M, terms, diffs, syz, r.complete, _dual=r)
    if kind != "projective":
        raise ValueError(f"unknown resolution kind {kind!r}")
    c = _extend_projective(M, max_len)
    k = min(len(c["terms"]), max_len + 1)
    complete = c["done"] and len(c["terms"]) <= max_len + 1
    return Resolution("projective", M, c["terms"][:k], c["diffs"][:k], c["syz"][:k + 1], complete)


def _yoneda_delta(d: ModuleMap, N: Representation) -> Matrix:
    """Matrix of Hom(P, N) -> Hom(Q, N), g -> g o d, for d: Q -> P between
    projective sums, in Yoneda coordinates (generator images)."""
    a = N.algebra
    F = N.field
    Q, P = d.source, d.target
    pv = P.standard[1]
    qv = Q.standard[1]
    col_off = []
    o = 0
    for v in pv:
        col_off.append(o)
        o += N.dims[v]
    ncols = o
    row_off = []
    o = 0
    for w in qv:
        row_off.append(o)
        o += N.dims[w]
    nrows = o
    out = Matrix.zeros(F, nrows, ncols)
    gid = a.vertex_basis_index
    for j, w in enumerate(qv):
        gpos = Q._pos[w][(j, gid(w))]
        col = d.mats[w].column(gpos)
        for k, (i, p) in enumerate(P._blocks[w]):
            c = col[k]
            if not c:
                continue
            m = N.path_matrix(p)
            for r in range(m.nrows):
                rr = out.rows[row_off[j] + r]
                mr = m.rows[r]
                for s in range(m.ncols):
                    if mr[s]:
                        rr[col_off[i] + s] = rr[col_off[i] + s] + c * mr[s]
    return out


def ext_dim(M: Representation, N: Representation, n: int) -> int:
    if n < 0:
        return 0
    c = _extend_projective(M, n + 1)
    terms, diffs = c["terms"], c["diffs"]
    if n >= len(terms):
        return 0
    homdim = sum(N.dims[v] for v in terms[n].standard[1])
    r_n = rank(_yoneda_delta(diffs[n + 1], N)) if n + 1 < len(terms) else 0
    r_prev = rank(_yoneda_delta(diffs[n], N)) if n >= 1 else 0
    return homdim - r_n - r_prev


def ext_dims(M: Representation, N: Representation, upto: int) -> List[int]:
    return [ext_dim(M, N, n) for n in range(upto + 1)]


def proj_dim(M: Representation, cutoff: int = DEFAULT_CUTOFF) -> Dim:
    if M.dim == 0:
        return -1
    c = _extend_projective(M, cutoff + 1)
    if c["done"]:
        return len(c["terms"]) - 1
    return AtLeast(cutoff)


def inj_dim(M: Representation, cutoff: int = DEFAULT_CUTOFF) -> Dim:
    return proj_dim(dual(M), cutoff)


def _module_cache(a: BoundQuiverAlgebra, kind: str, v: int) -> Representation:
    c = getattr(a, "_std_modules", None)
    if c is None:
        c = a._std_modules = {}
    key = (kind, v)
    if key not in c:
        c[key] = {"P": projective, "I": injective, "S": simple}[kind](a, v)
    return c[key]


def P(a, v):
    return _module_cache(a, "P", v)


def I(a, v):
    return _module_cache(a, "I", v)


def S(a, v):
    return _module_cache(a, "S", v)


@dataclass
class GorensteinReport:
    algebra: str
    inj_dim_projectives: List[Dim]
    proj_dim_injectives: List[Dim]
    dimension: Dim
    cutoff: int
    inference: str = ""

    def as_dict(self):
        return {"algebra": self.algebra,
                "inj_dim_P": [str(d) for d in self.inj_dim_projectives],
                "proj_dim_I": [str(d) for d in self.proj_dim_injectives],
                "gorenstein_dimension": str(self.dimension), "cutoff": self.cutoff,
                "inference": self.inference}


def gorenstein_report(a: BoundQuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> GorensteinReport:
    idp = [inj_dim(P(a, v), cutoff) for v in range(a.n)]
    pdi = [proj_dim(I(a, v), cutoff) for v in range(a.n)]
    d = dim_max(idp + pdi)
    return GorensteinReport(a.name, idp, pdi, d, cutoff)


def global_dim(a: BoundQuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> Dim:
    return dim_max([proj_dim(S(a, v), cutoff) for v in range(a.n)])


# ---------------------------------------------------------------------------
# transpose, AR translate, Nakayama


def minimal_presentation(M: Representation):
    """(d1: P1 -> P0, d0: P0 -> M)."""
    c = _extend_projective(M, 1)
    terms, diffs = c["terms"], c["diffs"]
    if not terms:
        return None, None
    d0 = diffs[0]
    if len(terms) > 1:
        d1 = diffs[1]
    else:
        d1 = zero_map(projective_sum(M.algebra, []), terms[0])
    return d1, d0


def _transpose_map(d1: ModuleMap) -> ModuleMap:
    """Hom(-, A) applied to d1: P1 -> P0 between projective sums."""
    a = d1.source.algebra
    op = a.opposite()
    P1, P0 = d1.source, d1.target
    v0 = P0.standard[1]
    v1 = P1.standard[1]
    Q0 = projective_sum(op, v0)
    Q1 = projective_sum(op, v1)
    F = a.field
    images = [[F.zero] * Q1.dims[v] for v in v0]
    gid = a.vertex_basis_index
    for j, w in enumerate(v1):
        gpos = P1._pos[w][(j, gid(w))]
        col = d1.mats[w].column(gpos)
        for k, (i, pidx) in enumerate(P0._blocks[w]):
            c = col[k]
            if not c:
                continue
            p = a.basis[pidx]
            rev = Path(p.target, p.source, tuple(reversed(p.arrows)))
            vi = v0[i]
            for r, cc in op.normal_form({rev: 1}).items():
                pos = Q1._pos[vi][(j, r)]
                images[i][pos] = images[i][pos] + c * cc
    return map_from_projective(Q0, Q1, images)


def transpose(M: Representation) -> Representation:
    if M.dim == 0:
        return zero_module(M.algebra.opposite())
    d1, _ = minimal_presentation(M)
    f = _transpose_map(d1)
    C, _ = cokernel(f)
    C.name = f"Tr({M.label()})"
    return C


def ar_translate(M: Representation) -> Representation:
    """tau M = D Tr M.  Projective summands of M are annihilated."""
    T = transpose(M)
    out = dual(T, f"tau({M.label()})")
    out.standard = None
    return out


def ar_translate_inv(M: Representation) -> Representation:
    """tau^-1 M = Tr D M.  Injective summands of M are annihilated."""
    T = transpose(dual(M))
    T.name = f"tau^-1({M.label()})"
    return T


def is_projective(M: Representation) -> bool:
    if M.standard is not None and M.standard[0] == "P":
        return True
    gens = top_generators(M)
    return sum(P(M.algebra, v).dim for v, _ in gens) == M.dim


def is_injective(M: Representation) -> bool:
    return is_projective(dual(M))


def nakayama(M: Representation) -> Representation:
    if not is_projective(M):
        raise NonProjectiveInput(f"{M.label()} is not projective")
    verts = [v for v, _ in top_generators(M)]
    return injective_sum(M.algebra, verts)


# ---------------------------------------------------------------------------
# stable Hom spaces


def hom_mod_injectives_dim(Y: Representation, Z: Representation) -> int:
    """dim Hom(Y, Z) modulo maps factoring through an injective."""
    full = hom_basis(Y, Z)
    if not full:
        return 0
    iota = injective_envelope(Y)
    fact = [h.compose(iota) for h in hom_basis(iota.target, Z)]
    return len(full) - maps_span_dim(fact)


def hom_mod_projectives_dim(Y: Representation, Z: Representation) -> int:
    """dim Hom(Y, Z) modulo maps factoring through a projective."""
    full = hom_basis(Y, Z)
    if not full:
        return 0
    pi = projective_cover(Z)
    fact = [pi.compose(h) for h in hom_basis(Y, pi.source)]
    return len(full) - maps_span_dim(fact)


# ---------------------------------------------------------------------------
# Auslander-Reiten sequences and knitting


def ar_sequence_middle(X: Representation, tauX: Optional[Representation] = None) -> Representation:
    """Middle term E of the almost split sequence 0 -> tau X -> E -> X -> 0
    (X indecomposable, non-projective)."""
    N = tauX if tauX is not None else ar_translate(X)
    F = X.field
    K, inc = kernel(projective_cover(X))
    pcov = projective_cover(X)
    H = hom_basis(K, N)
    if not H:
        raise ValueError("Ext^1(X, tau X) = 0: X projective?")
    W = [h.compose(inc) for h in hom_basis(pcov.source, N)]
    n = len(H[0].vec())
    Wm = Matrix.from_columns(F, [w.vec() for w in W], n) if W else Matrix.zeros(F, n, 0)
    Qs = QuotientSpace(Wm, n, F)
    # socle of Ext^1(X, N) as a left End(N)-module
    E = hom_basis(N, N)
    rad = [e for e in E if not _trace(e)]
    if len(E) > 1 and len(rad) < len(E) - 1:
        # trace-zero subspace, spanned explicitly
        tr = [_trace(e) for e in E]
        piv = next(i for i, t in enumerate(tr) if t)
        rad = [E[i] + E[piv].scale(-tr[i] / tr[piv]) for i in range(len(E)) if i != piv]
    conds = []
    for s in rad:
        cols = [Qs.reduce(s.compose(h).vec()) for h in H]
        for r in range(Qs.dim):
            conds.append([c[r] for c in cols])
    if conds:
        ker = kernel_basis(Matrix(F, len(conds), len(H), conds)).columns()
    else:
        ker = [[F.one if i == j else F.zero for i in range(len(H))] for j in range(len(H))]
    phi = None
    for coeffs in ker:
        cand = None
        for h, c in zip(H, coeffs):
            if c:
                cand = h.scale(c) if cand is None else cand + h.scale(c)
        if cand is not None and any(Qs.reduce(cand.vec())):
            phi = cand
            break
    if phi is None:
        raise ValueError("no almost split extension found")
    # pushout of P <- K -> N
    Psrc = pcov.source
    S, incs, _ = direct_sum([Psrc, N])
    emb = incs[0].compose(inc) + incs[1].compose(phi.scale(-1))
    Emod, _ = cokernel(emb)
    Emod.name = f"E({X.label()})"
    return Emod


@dataclass
class ARQuiver:
    modules: List[Representation]
    names: List[str]
    tau: Dict[int, Optional[int]]
    arrows: List[Tuple[int, int, int]]  # (from, to, multiplicity)

    def __len__(self):
        return len(self.modules)


class _Catalog:
    def __init__(self):
        self.mods: List[Representation] = []
        self.by_dims: Dict[tuple, List[int]] = {}

    def find(self, M):
        for i in self.by_dims.get(M.dims, []):
            if _iso_indecomposable(self.mods[i], M):
                return i
        return None

    def add(self, M):
        i = self.find(M)
        if i is not None:
            return i, False
        self.mods.append(M)
        self.by_dims.setdefault(M.dims, []).append(len(self.mods) - 1)
        return len(self.mods) - 1, True


def knit_ar_quiver(a: BoundQuiverAlgebra, max_modules: int = 200) -> ARQuiver:
    """Enumerate indecomposables of a representation-finite algebra by
    closing the projectives under almost split sequences."""
    cat = _Catalog()
    queue = []
    std_names = {}
    for kind in ("P", "I"):
        for v in range(a.n):
            M = _module_cache(a, kind, v)
            i, new = cat.add(M)
            std_names.setdefault(i, f"{kind}{a.vertex_name(v)}")
            if new:
                queue.append(i)
    proj = set(cat.find(P(a, v)) for v in range(a.n))
    inj = set(cat.find(I(a, v)) for v in range(a.n))
    tau: Dict[int, Optional[int]] = {}
    arrows: Dict[Tuple[int, int], int] = {}
    done = set()

    def add(M):
        i, new = cat.add(M)
        if len(cat.mods) > max_modules:
            raise BudgetExceeded(f"more than {max_modules} indecomposables (representation-infinite?)")
        if new:
            queue.append(i)
        return i

    while queue:
        x = queue.pop(0)
        if x in done:
            continue
        done.add(x)
        X = cat.mods[x]
        if x in proj:
            R, _ = radical(X)
            preds = decompose(R) if R.dim else None
            tau[x] = None
        else:
            t = ar_translate(X)
            ti = add(t)
            tau[x] = ti
            E = ar_sequence_middle(X, cat.mods[ti])
            preds = decompose(E)
        if preds is not None:
            for Y, m in preds.summands:
                y = add(Y)
                arrows[(y, x)] = m
        if x in inj:
            Q, _ = quotient(X, socle_bases(X))
            succ = decompose(Q) if Q.dim else None
        else:
            u = ar_translate_inv(X)
            ui = add(u)
            tau[ui] = x
            succ = decompose(ar_sequence_middle(cat.mods[ui], X))
        if succ is not None:
            for Y, m in succ.summands:
                y = add(Y)
                arrows[(x, y)] = m
    names = []
    for i, M in enumerate(cat.mods):
        names.append(std_names.get(i, "M" + ".".join(str(d) for d in M.dims)))
    return ARQuiver(cat.mods, names, tau, [(s, t, m) for (s, t), m in sorted(arrows.items())])


def presentation_ext_mismatches(a: BoundQuiverAlgebra, arrow_counts, relation_counts) -> List[tuple]:
    """Entries where arrows s -> t differ from dim Ext^1(S_t, S_s) or minimal
    relations s -> t differ from dim Ext^2(S_t, S_s)."""
    bad = []
    for s in range(a.n):
        for t in range(a.n):
            e1, e2 = ext_dim(S(a, t), S(a, s), 1), ext_dim(S(a, t), S(a, s), 2)
            if arrow_counts[s][t] != e1 or relation_counts[s][t] != e2:
                bad.append((s, t, arrow_counts[s][t], e1, relation_counts[s][t], e2))
    return bad
