"""Bounded derived categories of Dynkin quivers as mesh categories of ZQ,
their d-cluster orbit categories, cluster tilting, mutation, endomorphism
algebras, triangular resolutions and tilting objects.

A vertex (m, q) of ZQ stands for tau^{-m} P_q; arrows are (m, i) -> (m, j)
and (m, j) -> (m + 1, i) for every arrow i -> j of Q, all mesh relations
carry + signs.  Morphism spaces are computed exactly from the meshes and every
basis morphism comes with a path representative, so functors that act on the
translation quiver also act on morphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactlin import Matrix, QQ, QuotientSpace, rank
from .quiveralg import BoundQuiverAlgebra, Quiver, build_algebra, category_algebra, present_algebra

Vertex = Tuple[int, int]


class CompositionUnsupported(RuntimeError):
    pass


class NotFound(RuntimeError):
    pass


class AmbiguousComplement(RuntimeError):
    pass


class ApproximationFailure(RuntimeError):
    pass


class NotTilting(ValueError):
    pass


class HomologyDegreeOutOfRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# Dynkin quivers


def dynkin_quiver(kind: str, n: int) -> Quiver:
    """A_n: 1 -> 2 -> ... -> n.  D_n: chain 1 -> ... -> n-2 forking to n-1, n.
    E_n (n = 6, 7, 8): chain 1 -> ... -> n-1 with n attached below 3."""
    kind = kind.upper()
    verts = [str(i) for i in range(1, n + 1)]
    arrows = []
    if kind == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        arrows = [(f"x{i}", str(i), str(i + 1)) for i in range(1, n)]
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        arrows = [(f"x{i}", str(i), str(i + 1)) for i in range(1, n - 2)]
        arrows.append((f"x{n - 2}", str(n - 2), str(n - 1)))
        arrows.append((f"x{n - 1}", str(n - 2), str(n)))
    elif kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        arrows = [(f"x{i}", str(i), str(i + 1)) for i in range(1, n - 1)]
        arrows.append((f"x{n - 1}", "3", str(n)))
    else:
        raise ValueError(f"unknown Dynkin type {kind}")
    return Quiver(verts, arrows)


def dynkin_algebra(kind: str, n: int) -> BoundQuiverAlgebra:
    return build_algebra(dynkin_quiver(kind, n), name=f"{kind.upper()}{n}")


# ---------------------------------------------------------------------------
# mesh category


@dataclass
class HomTable:
    """Hom(x, -) for a fixed source vertex x."""

    source: Vertex
    dims: Dict[Vertex, int]
    paths: Dict[Vertex, List[Tuple[Vertex, ...]]]
    arrow_maps: Dict[Tuple[Vertex, Vertex], Matrix]
    last_slice: int


class MeshCategory:
    """Indecomposables of D^b(kQ) for a Dynkin quiver Q."""

    def __init__(self, q: Quiver, field=QQ):
        self.q = q
        self.n = q.n
        self.field = field
        self.order = self._topological_order()
        self.succ = {v: [a.target for a in q.arrows if a.source == v] for v in range(self.n)}
        self.pred = {v: [a.source for a in q.arrows if a.target == v] for v in range(self.n)}
        self._tables: Dict[Vertex, HomTable] = {}
        self._locate_modules()
        self._locate_nakayama()

    def _topological_order(self):
        indeg = [0] * self.q.n
        for a in self.q.arrows:
            indeg[a.target] += 1
        out = []
        ready = [v for v in range(self.q.n) if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            out.append(v)
            for a in self.q.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        if len(out) != self.q.n:
            raise ValueError("quiver has an oriented cycle")
        return out

    # translation quiver structure
    def arrows_into(self, z: Vertex) -> List[Vertex]:
        m, q = z
        return [(m, i) for i in self.pred[q]] + [(m - 1, j) for j in self.succ[q]]

    def arrows_out(self, z: Vertex) -> List[Vertex]:
        m, q = z
        return [(m, j) for j in self.succ[q]] + [(m + 1, i) for i in self.pred[q]]

    @staticmethod
    def tau(z: Vertex, k: int = 1) -> Vertex:
        return (z[0] - k, z[1])

    def table(self, x: Vertex) -> HomTable:
        t = self._tables.get(x)
        if t is None:
            t = self._tables[x] = self._build_table(x)
        return t

    def _build_table(self, x: Vertex) -> HomTable:
        F = self.field
        dims: Dict[Vertex, int] = {x: 1}
        paths: Dict[Vertex, List[Tuple[Vertex, ...]]] = {x: [(x,)]}
        R: Dict[Tuple[Vertex, Vertex], Matrix] = {}
        m = x[0]
        started = False
        while True:
            nonzero = False
            for q in self.order:
                z = (m, q)
                if z == x:
                    started = True
                    nonzero = True
                    continue
                if not started:
                    continue
                preds = [w for w in self.arrows_into(z) if dims.get(w, 0)]
                if not preds:
                    continue
                offs = {}
                tot = 0
                for w in preds:
                    offs[w] = tot
                    tot += dims[w]
                tz = self.tau(z)
                img = []
                for b in range(dims.get(tz, 0)):
                    col = [F.zero] * tot
                    for w in preds:
                        Rm = R.get((tz, w))
                        if Rm is None:
                            continue
                        for r in range(Rm.nrows):
                            col[offs[w] + r] = Rm.rows[r][b]
                    img.append(col)
                sub = Matrix.from_columns(F, img, tot) if img else Matrix.zeros(F, tot, 0)
                Q = QuotientSpace(sub, tot, F)
                if Q.dim == 0:
                    continue
                dims[z] = Q.dim
                pz = []
                for k in Q.basis:
                    w = next(w for w in preds if offs[w] <= k < offs[w] + dims[w])
                    pz.append(paths[w][k - offs[w]] + (z,))
                paths[z] = pz
                for w in preds:
                    cols = []
                    for c in range(dims[w]):
                        e = [F.zero] * tot
                        e[offs[w] + c] = F.one
                        cols.append(Q.reduce(e))
                    R[(w, z)] = Matrix.from_columns(F, cols, Q.dim)
                nonzero = True
            if not nonzero and m > x[0]:
                return HomTable(x, dims, paths, R, m - 1)
            m += 1

    def hom_dim(self, x: Vertex, y: Vertex) -> int:
        if y[0] < x[0]:
            return 0
        t = self.table(x)
        if y[0] > t.last_slice:
            return 0
        return t.dims.get(y, 0)

    def apply_path(self, x: Vertex, vec: list, path: Sequence[Vertex]) -> Optional[list]:
        """Post-compose an element of Hom(x, path[0]) with the path."""
        t = self.table(x)
        v = vec
        for a, b in zip(path, path[1:]):
            Rm = t.arrow_maps.get((a, b))
            if Rm is None:
                return None
            v = Rm.apply(v)
        return v

    # modules, Nakayama functor, shift
    def dim_vector(self, z: Vertex) -> Tuple[int, ...]:
        return tuple(self.hom_dim((0, v), z) for v in range(self.n))

    def _locate_modules(self):
        seen = {}
        for v in range(self.n):
            t = self.table((0, v))
            for z, d in t.dims.items():
                if d:
                    seen[z] = True
        self.modules: List[Vertex] = sorted(seen)
        self.module_id = {z: i for i, z in enumerate(self.modules)}
        self.max_module_slice = max(z[0] for z in self.modules)

    def _locate_nakayama(self):
        # I_q has dimension vector (#paths q -> v)_v; for a tree this is 0/1
        reach = []
        for q in range(self.n):
            r = [0] * self.n
            stack = [q]
            while stack:
                u = stack.pop()
                r[u] += 1
                stack.extend(self.succ[u])
            reach.append(tuple(r))
        by_dim = {}
        for z in self.modules:
            by_dim.setdefault(self.dim_vector(z), []).append(z)
        self.nu_pos = {}
        for q in range(self.n):
            cands = by_dim.get(reach[q], [])
            if len(cands) != 1:
                raise ValueError(f"cannot place I_{q + 1} in the mesh category")
            self.nu_pos[q] = cands[0]
        self.sigma = {q: self.nu_pos[q][1] for q in range(self.n)}
        self.sigma_inv = {v: q for q, v in self.sigma.items()}
        # the shift must be an automorphism of the translation quiver
        for q in range(self.n):
            z = (0, q)
            for w in self.arrows_out(z):
                if self.shift(w) not in self.arrows_out(self.shift(z)):
                    raise ValueError("shift does not preserve arrows")

    def nakayama(self, z: Vertex) -> Vertex:
        m, q = z
        a, s = self.nu_pos[q]
        return (m + a, s)

    def shift(self, z: Vertex, k: int = 1) -> Vertex:
        """z[k]; [1] = tau^{-1} nu."""
        m, q = z
        if k >= 0:
            for _ in range(k):
                a, s = self.nu_pos[q]
                m, q = m + a + 1, s
        else:
            for _ in range(-k):
                q0 = self.sigma_inv[q]
                m, q = m - self.nu_pos[q0][0] - 1, q0
        return (m, q)

    def serre(self, z: Vertex) -> Vertex:
        return self.nakayama(z)

    def label(self, z: Vertex) -> Tuple[int, int]:
        """(module id, shift) with z = M[shift]."""
        s = 0
        w = z
        while True:
            if w[0] < 0:
                w = self.shift(w, 1)
                s -= 1
            elif w in self.module_id:
                return self.module_id[w], s
            else:
                w = self.shift(w, -1)
                s += 1

    def vertex(self, module_id: int, shift: int = 0) -> Vertex:
        return self.shift(self.modules[module_id], shift)


# ---------------------------------------------------------------------------
# orbit categories


@dataclass(frozen=True)
class OrbitObject:
    module: int
    shift: int

    def __str__(self):
        return f"M{self.module}[{self.shift}]" if self.shift else f"M{self.module}"


@dataclass
class HomBlocks:
    """Hom_C(x, y) = sum over n of Hom_D(x, F^n y)."""

    blocks: List[Tuple[int, Vertex, int, int]]  # (n, F^n y, dim, offset)
    dim: int

    def block(self, n):
        for b in self.blocks:
            if b[0] == n:
                return b
        return None


class ClusterCategory:
    """The orbit category D^b(kQ) / F, F = tau o [1-d] (equivalently S^{-d} Sigma)."""

    def __init__(self, kind: str, n: int, d: int = 2, field=QQ):
        if d < 1:
            raise ValueError("d >= 1")
        self.kind = kind.upper()
        self.rank = n
        self.d = d
        self.q = dynkin_quiver(kind, n)
        self.D = MeshCategory(self.q, field)
        self.field = field
        self._hom: Dict[Tuple[Vertex, Vertex], HomBlocks] = {}
        self._canon: Dict[Vertex, OrbitObject] = {}
        self.domain = self._fundamental_domain()
        self.index = {X: i for i, X in enumerate(self.domain)}

    # F and its powers on vertices
    def F(self, z: Vertex, k: int = 1) -> Vertex:
        D = self.D
        if k >= 0:
            for _ in range(k):
                z = D.tau(D.shift(z, 1 - self.d))
        else:
            for _ in range(-k):
                z = D.shift(D.tau(z, -1), self.d - 1)
        return z

    def canonical(self, z: Vertex) -> OrbitObject:
        c = self._canon.get(z)
        if c is not None:
            return c
        D = self.D
        top = max(self.d - 1, 0)
        found = []
        w = z
        lab = D.label(w)
        while lab[1] >= 0:
            if lab[1] <= top:
                found.append(lab)
            w = self.F(w)
            lab = D.label(w)
        w = self.F(z, -1)
        lab = D.label(w)
        while lab[1] <= top:
            if lab[1] >= 0:
                found.append(lab)
            w = self.F(w, -1)
            lab = D.label(w)
        if not found:
            raise RuntimeError(f"orbit of {z} misses the shift window")
        m, s = min(found, key=lambda t: (t[1], t[0]))
        c = OrbitObject(m, s)
        self._canon[z] = c
        return c

    def lift(self, X: OrbitObject) -> Vertex:
        return self.D.vertex(X.module, X.shift)

    def _fundamental_domain(self) -> List[OrbitObject]:
        reps = set()
        for k in range(len(self.D.modules)):
            for s in range(max(self.d, 1)):
                reps.add(self.canonical(self.D.vertex(k, s)))
        return sorted(reps, key=lambda X: (X.shift, X.module))

    def name(self, X: OrbitObject) -> str:
        dv = self.D.dim_vector(self.D.modules[X.module])
        base = "M(" + ",".join(str(c) for c in dv) + ")"
        return base + (f"[{X.shift}]" if X.shift else "")

    # Hom spaces
    def hom_blocks(self, x: Vertex, y: Vertex) -> HomBlocks:
        key = (x, y)
        hb = self._hom.get(key)
        if hb is not None:
            return hb
        D = self.D
        t = D.table(x)
        lo, hi = x[0], t.last_slice
        found = []
        w, n = y, 0
        while w[0] >= lo:  # F strictly lowers the slice index
            if w[0] <= hi:
                found.append((n, w))
            w, n = self.F(w), n + 1
        w, n = self.F(y, -1), -1
        while w[0] <= hi:
            if w[0] >= lo:
                found.append((n, w))
            w, n = self.F(w, -1), n - 1
        blocks = []
        off = 0
        for n, w in sorted(found):
            dm = D.hom_dim(x, w)
            if dm:
                blocks.append((n, w, dm, off))
                off += dm
        hb = HomBlocks(blocks, off)
        self._hom[key] = hb
        return hb

    def hom_dim(self, x: Vertex, y: Vertex) -> int:
        return self.hom_blocks(x, y).dim

    def orbit_hom(self, X: OrbitObject, Y: OrbitObject) -> int:
        return self.hom_dim(self.lift(X), self.lift(Y))

    def ext_dim(self, x: Vertex, y: Vertex, i: int) -> int:
        return self.hom_dim(x, self.D.shift(y, i))

    def compose(self, x: Vertex, y: Vertex, z: Vertex, f: list, g: list) -> list:
        """g o f for f in Hom_C(x, y), g in Hom_C(y, z), in block coordinates."""
        F0 = self.field.zero
        hxy = self.hom_blocks(x, y)
        hyz = self.hom_blocks(y, z)
        hxz = self.hom_blocks(x, z)
        out = [F0] * hxz.dim
        tyz = self.D.table(y)
        for a, ya, da, oa in hxy.blocks:
            fa = f[oa:oa + da]
            if not any(fa):
                continue
            for b, zb, db, ob in hyz.blocks:
                gb = g[ob:ob + db]
                if not any(gb):
                    continue
                acc = None
                for k, c in enumerate(gb):
                    if not c:
                        continue
                    path = tuple(self.F(v, a) for v in tyz.paths[zb][k])
                    r = self.D.apply_path(x, fa, path)
                    if r is None:
                        continue
                    r = [c * e for e in r]
                    acc = r if acc is None else [u + v for u, v in zip(acc, r)]
                if acc is None or not any(acc):
                    continue
                blk = hxz.block(a + b)
                if blk is None:
                    raise CompositionUnsupported(f"composite lands outside the window (n={a + b})")
                _, _, dc, oc = blk
                for k in range(dc):
                    out[oc + k] = out[oc + k] + acc[k]
        return out

    def identity(self, x: Vertex) -> list:
        hb = self.hom_blocks(x, x)
        v = [self.field.zero] * hb.dim
        blk = hb.block(0)
        v[blk[3]] = self.field.one
        return v

    def basis_vector(self, x: Vertex, y: Vertex, k: int) -> list:
        v = [self.field.zero] * self.hom_dim(x, y)
        v[k] = self.field.one
        return v

    # ------------------------------------------------------------------
    # rigidity and cluster tilting

    def ext_table(self) -> List[List[int]]:
        """E[i][j] = sum_{0<l<d} dim Ext^l(X_i, X_j) over the domain."""
        t = getattr(self, "_ext_table", None)
        if t is None:
            lifts = [self.lift(X) for X in self.domain]
            t = [[sum(self.ext_dim(a, b, l) for l in range(1, self.d)) for b in lifts] for a in lifts]
            self._ext_table = t
        return t

    def is_cluster_tilting(self, S: Iterable[OrbitObject]) -> Tuple[bool, dict]:
        S = list(S)
        E = self.ext_table()
        idx = [self.index[X] for X in S]
        bad_pairs = [(str(S[a]), str(S[b])) for a in range(len(S)) for b in range(len(S))
                     if E[idx[a]][idx[b]]]
        witnesses = {}
        missing = []
        for j, X in enumerate(self.domain):
            if j in idx:
                continue
            w = next((self.domain[i] for i in idx if E[i][j]), None)
            if w is None:
                missing.append(str(X))
            else:
                witnesses[str(X)] = str(w)
        ok = not bad_pairs and not missing
        return ok, {"rigid_failures": bad_pairs, "not_excluded": missing, "witnesses": witnesses}

    def enumerate_cluster_tilting(self) -> List[Tuple[OrbitObject, ...]]:
        """All maximal rigid sets that are cluster tilting (exhaustive clique search)."""
        E = self.ext_table()
        N = len(self.domain)
        ok = [i for i in range(N) if E[i][i] == 0]
        compat = {i: {j for j in ok if j != i and E[i][j] == 0 and E[j][i] == 0} for i in ok}
        out = []

        def grow(cur, cands):
            extended = False
            for j in sorted(cands):
                if cur and j < cur[-1]:
                    continue
                extended = True
                grow(cur + [j], cands & compat[j])
            if not cands or not extended:
                S = tuple(self.domain[i] for i in cur)
                if cur and self.is_cluster_tilting(S)[0]:
                    out.append(S)

        grow([], set(ok))
        return sorted(set(out), key=lambda S: [self.index[X] for X in S])

    def seed(self) -> Tuple[OrbitObject, ...]:
        """Lifts of the indecomposable projectives of H."""
        return tuple(sorted((self.canonical((0, v)) for v in range(self.rank)),
                            key=lambda X: self.index[X]))

    def mutate(self, S: Sequence[OrbitObject], k: int) -> Tuple[OrbitObject, ...]:
        if self.d != 2:
            raise ValueError("mutation is provided for d = 2 only")
        S = list(S)
        rest = S[:k] + S[k + 1:]
        E = self.ext_table()
        cands = []
        for X in self.domain:
            if X in S:
                continue
            if self.is_cluster_tilting(rest + [X])[0]:
                cands.append(X)
        if not cands:
            raise NotFound(f"no complement for {S[k]}")
        if len(cands) > 1:
            raise AmbiguousComplement(f"{len(cands)} complements for {S[k]}")
        Tstar = cands[0]
        if not E[self.index[S[k]]][self.index[Tstar]]:
            raise NotFound("Ext^1(T_k, T*) vanishes")
        out = rest[:k] + [Tstar] + rest[k:]
        return tuple(out)

    def mutation_closure(self, seed=None):
        """BFS over mutations; returns (sets, edges)."""
        seed = tuple(seed or self.seed())
        key = lambda S: frozenset(S)
        seen = {key(seed): seed}
        edges = []
        queue = [seed]
        while queue:
            S = queue.pop(0)
            for k in range(len(S)):
                S2 = self.mutate(S, k)
                edges.append((key(S), k, key(S2)))
                if key(S2) not in seen:
                    seen[key(S2)] = S2
                    queue.append(S2)
        return list(seen.values()), edges

    # ------------------------------------------------------------------
    # endomorphism algebras

    def endo_finite_algebra(self, S: Sequence[OrbitObject]):
        lifts = [self.lift(X) for X in S]
        n = len(lifts)
        dims = [[self.hom_dim(lifts[i], lifts[j]) for j in range(n)] for i in range(n)]

        def comp(i, j, k, x, y):
            return self.compose(lifts[i], lifts[j], lifts[k],
                                self.basis_vector(lifts[i], lifts[j], x),
                                self.basis_vector(lifts[j], lifts[k], y))

        return category_algebra(dims, comp, self.field, [self.identity(z) for z in lifts],
                                labels=None)

    def endo_presentation(self, S: Sequence[OrbitObject], name: str = ""):
        return present_algebra(self.endo_finite_algebra(S), name=name)

    def endo_algebra(self, S: Sequence[OrbitObject], name: str = "") -> BoundQuiverAlgebra:
        return self.endo_presentation(S, name).algebra

    def no_loops(self, S: Sequence[OrbitObject]) -> List[bool]:
        """Per summand: End_C(T) is one-dimensional, so every non-isomorphism
        T -> T is zero and trivially factors through the rest of S."""
        return [self.orbit_hom(X, X) == 1 for X in S]

    # ------------------------------------------------------------------
    # the functor Hom_C(T, -) and module categories

    def hom_vector(self, S: Sequence[OrbitObject], x: Vertex) -> Tuple[int, ...]:
        return tuple(self.hom_dim(self.lift(T), x) for T in S)

    def module_category_check(self, S: Sequence[OrbitObject], max_modules: int = 500) -> dict:
        from .homalg import knit_ar_quiver
        A = self.endo_algebra(S)
        ar = knit_ar_quiver(A, max_modules)
        shifted = {self.canonical(self.D.shift(self.lift(T), 1)) for T in S}
        rest = [X for X in self.domain if X not in shifted]
        predicted = sorted(self.hom_vector(S, self.lift(X)) for X in rest)
        knitted = sorted(M.dims for M in ar.modules)
        return {"knitted": len(ar.modules), "domain": len(self.domain), "cluster": len(S),
                "count_ok": len(ar.modules) == len(self.domain) - len(S),
                "dims_ok": predicted == knitted, "algebra": A}

    # ------------------------------------------------------------------
    # approximations, computed in D by the F-orbit of S; minimal ones are
    # graded, so their cones project to the cones in the orbit category

    def _unit(self, n: int, k: int) -> list:
        e = [self.field.zero] * n
        e[k] = self.field.one
        return e

    def _margin(self) -> int:
        m = getattr(self, "_marg", None)
        if m is None:
            m = self._marg = max(self.D.table((0, q)).last_slice for q in range(self.rank)) + 1
        return m

    def _orbit_in(self, x: Vertex, lo: int, hi: int) -> List[Vertex]:
        """Members of the F-orbit of x with slice in [lo, hi]."""
        out = []
        w = x
        while w[0] >= lo:
            if w[0] <= hi:
                out.append(w)
            w = self.F(w)
        w = self.F(x, -1)
        while w[0] <= hi:
            if w[0] >= lo:
                out.append(w)
            w = self.F(w, -1)
        return out

    def d_hom_sum(self, x: Vertex, Y: Sequence[Vertex]) -> int:
        return sum(self.D.hom_dim(x, y) for y in Y)

    def _d_offsets(self, x: Vertex, Y: Sequence[Vertex]) -> List[int]:
        offs, o = [], 0
        for y in Y:
            offs.append(o)
            o += self.D.hom_dim(x, y)
        return offs

    def _d_post(self, w: Vertex, s: Vertex, Y: Sequence[Vertex], f: list, p: list) -> list:
        """p o f in Hom_D(w, sum Y), f in Hom_D(w, s), p in Hom_D(s, sum Y)."""
        out = []
        for y, o in zip(Y, self._d_offsets(s, Y)):
            out.extend(self.derived_compose(w, s, y, f, p[o:o + self.D.hom_dim(s, y)]))
        return out

    def right_approximation(self, S: Sequence[OrbitObject], Y: Sequence[Vertex]):
        """Minimal right approximation of sum Y (vertices of ZQ) by the F-orbits
        of S: a list of (vertex, map into sum Y)."""
        F = self.field
        sources = []
        for T in S:
            t = self.lift(T)
            for y in Y:
                for n, w, dm, off in self.hom_blocks(t, y).blocks:
                    src = self.F(t, -n)
                    if src not in sources:
                        sources.append(src)
        out = []
        for s in sources:
            tot = self.d_hom_sum(s, Y)
            rad = []
            for u in sources:
                if u == s:
                    continue
                nu = self.d_hom_sum(u, Y)
                for x in range(self.D.hom_dim(s, u)):
                    h = self._unit(self.D.hom_dim(s, u), x)
                    for g in range(nu):
                        rad.append(self._d_post(s, u, Y, h, self._unit(nu, g)))
            sub = Matrix.from_columns(F, rad, tot) if rad else Matrix.zeros(F, tot, 0)
            for k in QuotientSpace(sub, tot, F).basis:
                out.append((s, self._unit(tot, k)))
        for s in sources:
            if self._push_rank(s, out, Y) != self.d_hom_sum(s, Y):
                raise ApproximationFailure(f"not a right approximation at {s}")
        return out

    def _push_rank(self, w: Vertex, approx, Y) -> int:
        """rank of p_*: Hom_D(w, T) -> Hom_D(w, Y)."""
        cols = []
        for s, p in approx:
            n = self.D.hom_dim(w, s)
            for x in range(n):
                cols.append(self._d_post(w, s, Y, self._unit(n, x), p))
        m = self.d_hom_sum(w, Y)
        if not cols or not m:
            return 0
        return rank(Matrix.from_columns(self.field, cols, m))

    def _pull_rank(self, approx, Y: Sequence[Vertex], z: Vertex) -> int:
        """rank of p^*: Hom_D(Y, z) -> Hom_D(T, z)."""
        cols = []
        for k, y in enumerate(Y):
            ny = self.D.hom_dim(y, z)
            for g in range(ny):
                gv = self._unit(ny, g)
                col = []
                for s, p in approx:
                    o = self._d_offsets(s, Y)[k]
                    col.extend(self.derived_compose(s, y, z, p[o:o + self.D.hom_dim(s, y)], gv))
                cols.append(col)
        m = sum(self.D.hom_dim(s, z) for s, _ in approx)
        if not cols or not m:
            return 0
        return rank(Matrix.from_columns(self.field, cols, m))

    def _window(self, approx, Y) -> Tuple[int, int]:
        sl = [s[0] for s, _ in approx] + [self.D.shift(y, -1)[0] for y in Y] + [y[0] for y in Y]
        m = self._margin()
        return min(sl) - m, max(sl) + m

    def cocone(self, approx, Y: Sequence[Vertex]) -> List[Vertex]:
        """Z in the triangle Z -> T -> Y -> SZ of D, from
        dim Hom(W, Z) = dim coker(p_* on Hom(SW, -)) + dim ker(p_* on Hom(W, -));
        Hom(W, -) over a window of ZQ is unitriangular, so Z is determined."""
        lo, hi = self._window(approx, Y)
        win = [(m, q) for m in range(lo, hi + 1) for q in self.D.order]
        prof = []
        for w in win:
            sw = self.D.shift(w, 1)
            prof.append(self.d_hom_sum(sw, Y) - self._push_rank(sw, approx, Y)
                        + sum(self.D.hom_dim(w, s) for s, _ in approx) - self._push_rank(w, approx, Y))
        # back substitution: Hom(x, v) != 0 forces v >= x in the window order
        out = []
        mult: Dict[Vertex, int] = {}
        for i in reversed(range(len(win))):
            x = win[i]
            c = prof[i] - sum(mult[v] * self.D.hom_dim(x, v) for v in mult)
            if c < 0:
                raise ApproximationFailure(f"negative multiplicity at {x}")
            if c:
                mult[x] = c
                out.extend([x] * c)
        return out

    # graded ranks: Hom_C(x, -) is the sum of Hom_D(F^n x, -)
    def _c_push_rank(self, x: Vertex, approx, Y) -> int:
        lo, hi = self._window(approx, Y)
        return sum(self._push_rank(w, approx, Y) for w in self._orbit_in(x, lo, hi))

    def _c_pull_rank(self, approx, Y, z: Vertex) -> int:
        lo, hi = self._window(approx, Y)
        return sum(self._pull_rank(approx, Y, w) for w in self._orbit_in(z, lo, hi))

    def hom_to_sum(self, x: Vertex, Y: Sequence[Vertex]) -> int:
        return sum(self.hom_dim(x, y) for y in Y)

    def triangular_resolution(self, S: Sequence[OrbitObject], Y: OrbitObject) -> dict:
        """Triangles Z_0 -> T_0 -> Y, Z_i -> T_i -> Z_{i-1} with T_i in add S,
        ending with T_{d-1} = Z_{d-2}; checks the three properties of the resolution."""
        d = self.d
        if d < 2:
            raise ValueError("d >= 2")
        S = list(S)
        if Y in S:
            return {"Y": str(Y), "terms": [[str(Y)]], "a": True, "b": True, "c": True,
                    "b_rows": [], "c_rows": [], "length": 0}
        y = self.lift(Y)
        Zprev = [y]
        approxs, Zs = [], [[y]]
        for i in range(d - 1):
            ap = self.right_approximation(S, Zprev)
            approxs.append((ap, Zprev))
            Zprev = self.cocone(ap, Zprev)
            Zs.append(Zprev)
        last = [self.canonical(z) for z in Zprev]
        part_a = all(X in S for X in last)
        # b) cokernel of Hom(T, T_1) -> Hom(T, T_0) is Hom(T, Y)
        ap0, _ = approxs[0]
        part_b, b_rows = True, []
        for T in S:
            t = self.lift(T)
            st = self.D.shift(t, 1)
            hom_t0 = sum(self.hom_dim(t, u) for u, _ in ap0)
            kern = self.hom_dim(st, y) - self._c_push_rank(st, ap0, [y])
            img = self.hom_to_sum(t, Zs[1]) - kern
            lhs, rhs = hom_t0 - img, self.hom_dim(t, y)
            b_rows.append((str(T), lhs, rhs))
            part_b &= lhs == rhs
        # c) cokernel of Hom(T_{d-2}, T) -> Hom(T_{d-1}, T) is Hom(S^{-(d-1)} Y, T)
        apk, Zk = approxs[d - 2]
        part_c, c_rows = True, []
        s_y = self.D.shift(y, -(d - 1))
        for T in S:
            t = self.lift(T)
            hom_last = sum(self.hom_dim(z, t) for z in Zs[d - 1])
            hom_prev = sum(self.hom_dim(u, t) for u, _ in apk)
            lhs = hom_last - hom_prev + self._c_pull_rank(apk, Zk, t)
            rhs = self.hom_dim(s_y, t)
            c_rows.append((str(T), lhs, rhs))
            part_c &= lhs == rhs
        names = [[str(self.canonical(u)) for u, _ in ap] for ap, _ in approxs] + [[str(X) for X in last]]
        return {"Y": str(Y), "terms": names, "a": part_a, "b": part_b, "c": part_c,
                "b_rows": b_rows, "c_rows": c_rows, "length": d - 1}

    # ------------------------------------------------------------------
    # mutation data (d = 2)

    def exchange_data(self, S: Sequence[OrbitObject], k: int) -> dict:
        S = list(S)
        S2 = list(self.mutate(S, k))
        Tk, Tstar = S[k], S2[k]
        common = [X for X in S if X != Tk]
        apB = self.right_approximation(common, [self.lift(Tk)])
        Zb = [self.canonical(z) for z in self.cocone(apB, [self.lift(Tk)])]
        apB2 = self.right_approximation(common, [self.lift(Tstar)])
        Zb2 = [self.canonical(z) for z in self.cocone(apB2, [self.lift(Tstar)])]
        B = sorted(str(self.canonical(t)) for t, _ in apB)
        B2 = sorted(str(self.canonical(t)) for t, _ in apB2)
        return {"T": str(Tk), "T*": str(Tstar), "B": B, "B'": B2,
                "cocone_B": [str(X) for X in Zb], "cocone_B'": [str(X) for X in Zb2],
                "triangles_ok": Zb == [Tstar] and Zb2 == [Tk],
                "supports_ok": all(self.canonical(t) in common for t, _ in apB + apB2)}

    def neighbor_check(self, S: Sequence[OrbitObject], k: int) -> dict:
        from .homalg import knit_ar_quiver
        S = list(S)
        S2 = list(self.mutate(S, k))
        A, A2 = self.endo_algebra(S), self.endo_algebra(S2)
        n1, n2 = len(knit_ar_quiver(A).modules), len(knit_ar_quiver(A2).modules)
        ex = self.exchange_data(S, k)
        return {"simples": (A.n, A2.n), "residual": (n1 - 1, n2 - 1),
                "ok": A.n == A2.n and n1 - 1 == n2 - 1 and ex["triangles_ok"] and ex["supports_ok"],
                "exchange": ex}

    # ------------------------------------------------------------------
    # tilting objects of D and their projections

    def derived_compose(self, x: Vertex, y: Vertex, z: Vertex, f: list, g: list) -> list:
        ty = self.D.table(y)
        out = [self.field.zero] * self.D.hom_dim(x, z)
        for k, c in enumerate(g):
            if not c:
                continue
            r = self.D.apply_path(x, f, ty.paths[z][k])
            if r is not None:
                out = [u + c * v for u, v in zip(out, r)]
        return out

    def tilting_to_dcluster(self, T: Sequence[Tuple[int, int]]) -> dict:
        from .homalg import I as inj, P as proj, ext_dim
        d = self.d
        for m, s in T:
            if not 0 <= s <= d - 2:
                raise HomologyDegreeOutOfRange(f"M{m}[{s}] has homology in degree {-s}")
        lifts = [self.D.vertex(m, s) for m, s in T]
        if len(lifts) != self.rank or len(set(lifts)) != len(lifts):
            raise NotTilting("need one summand per vertex of Q")
        for (ma, sa), a in zip(T, lifts):
            for (mb, sb), b in zip(T, lifts):
                for i in (sa - sb, sa - sb + 1):
                    if i != 0 and self.D.hom_dim(a, self.D.shift(b, i)):
                        raise NotTilting(f"Hom(M{ma}[{sa}], M{mb}[{sb}][{i}]) != 0")
        F = self.field
        n = len(lifts)
        dims = [[self.D.hom_dim(lifts[i], lifts[j]) for j in range(n)] for i in range(n)]

        def comp(i, j, k, x, y):
            f = [F.zero] * dims[i][j]
            f[x] = F.one
            g = [F.zero] * dims[j][k]
            g[y] = F.one
            return self.derived_compose(lifts[i], lifts[j], lifts[k], f, g)

        ident = []
        for i in range(n):
            e = [F.zero] * dims[i][i]
            e[0] = F.one
            ident.append(e)
        B = present_algebra(category_algebra(dims, comp, F, ident), name="End_D(T)").algebra
        proj_T = [self.canonical(z) for z in lifts]
        ok, cert = self.is_cluster_tilting(proj_T)
        rows = []
        for i in range(n):
            for j in range(n):
                lhs = self.hom_dim(lifts[i], lifts[j])
                rhs = dims[i][j] + ext_dim(inj(B, i), proj(B, j), d)
                rows.append((i, j, lhs, dims[i][j], rhs - dims[i][j], lhs == rhs))
        return {"projection": [str(X) for X in proj_T], "cluster_tilting": ok, "certificate": cert,
                "hom_formula": rows, "hom_formula_ok": all(r[-1] for r in rows), "End_D": B}

    def tilting_objects(self, max_shift: Optional[int] = None) -> List[Tuple[Tuple[int, int], ...]]:
        """Tilting objects with summands M[s], 0 <= s <= max_shift (default d-2)."""
        top = self.d - 2 if max_shift is None else max_shift
        objs = [(m, s) for s in range(top + 1) for m in range(len(self.D.modules))]
        lift = {o: self.D.vertex(*o) for o in objs}

        def compatible(a, b):
            (_, sa), (_, sb) = a, b
            x, y = lift[a], lift[b]
            for i in (sa - sb, sa - sb + 1):
                if i != 0 and self.D.hom_dim(x, self.D.shift(y, i)):
                    return False
            return True

        good = [o for o in objs if compatible(o, o)]
        out = []
        for combo in itertools.combinations(good, self.rank):
            if all(compatible(a, b) for a in combo for b in combo):
                out.append(combo)
        return out

    # ------------------------------------------------------------------
    # bookkeeping over the whole exchange graph

    def involution_failures(self, sets) -> List[Tuple[str, int]]:
        bad = []
        for S in sets:
            for k in range(len(S)):
                if frozenset(self.mutate(self.mutate(S, k), k)) != frozenset(S):
                    bad.append((" ".join(map(str, S)), k))
        return bad

    def find_isomorphic(self, alg: BoundQuiverAlgebra, sets=None):
        """A cluster-tilting set whose endomorphism algebra matches alg up to a
        vertex permutation in arrow matrix, Cartan matrix and dimension."""
        sets = self.mutation_closure()[0] if sets is None else sets
        target = algebra_invariants(alg)
        for S in sets:
            B = self.endo_algebra(S)
            perm = match_invariants(target, algebra_invariants(B))
            if perm is not None:
                return S, perm
        return None


def algebra_invariants(a: BoundQuiverAlgebra) -> dict:
    from .repmod import projective
    n = a.n
    arrows = [[0] * n for _ in range(n)]
    for ar in a.quiver.arrows:
        arrows[ar.source][ar.target] += 1
    cartan = [list(projective(a, v).dims) for v in range(n)]
    return {"n": n, "dim": a.dim, "arrows": arrows, "cartan": cartan}


def match_invariants(x: dict, y: dict) -> Optional[Tuple[int, ...]]:
    """A permutation p with y[p(i)][p(j)] == x[i][j] on both matrices, or None."""
    if x["n"] != y["n"] or x["dim"] != y["dim"]:
        return None
    n = x["n"]
    for p in itertools.permutations(range(n)):
        if all(x["arrows"][i][j] == y["arrows"][p[i]][p[j]] and x["cartan"][i][j] == y["cartan"][p[i]][p[j]]
               for i in range(n) for j in range(n)):
            return p
    return None
