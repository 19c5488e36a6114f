"""Quivers, paths, admissible relations and bound quiver algebras.

Paths compose left to right: ``alpha*beta`` means alpha first.  A bound
quiver algebra is stored through its normal-form path basis, obtained from a
noncommutative Groebner basis of the relation ideal under the order
"length first, then lexicographic in arrow declaration order".  Paths of
length ``max_path_len`` or more are treated as zero during completion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .exactlin import QQ, Field, Matrix, kernel_basis, rref


class InvalidRelation(ValueError):
    pass


class NotFiniteDimensional(ValueError):
    pass


class NotBasic(ValueError):
    pass


class NotAssociative(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """Finite quiver; vertices are referred to internally by index."""

    def __init__(self, vertices: Sequence, arrows: Sequence[Tuple[str, object, object]]):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: List[Arrow] = []
        names = set()
        for name, s, t in arrows:
            if name in names:
                raise ValueError(f"duplicate arrow name {name!r}")
            names.add(name)
            self.arrows.append(Arrow(name, self.vertex_index(s), self.vertex_index(t)))
        self._aindex = {a.name: i for i, a in enumerate(self.arrows)}

    def vertex_index(self, v) -> int:
        try:
            return self._vindex[str(v)]
        except KeyError:
            raise ValueError(f"unknown vertex {v!r}") from None

    def arrow_index(self, name: str) -> int:
        try:
            return self._aindex[name]
        except KeyError:
            raise ValueError(f"unknown arrow {name!r}") from None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrows_from(self, v: int) -> List[int]:
        return [i for i, a in enumerate(self.arrows) if a.source == v]

    def arrows_to(self, v: int) -> List[int]:
        return [i for i, a in enumerate(self.arrows) if a.target == v]

    def arrow_matrix(self) -> List[List[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for a in self.arrows:
            m[a.source][a.target] += 1
        return m

    def opposite(self) -> "Quiver":
        v = self.vertices
        return Quiver(v, [(a.name, v[a.target], v[a.source]) for a in self.arrows])

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{self.vertices[a.source]}->{self.vertices[a.target]}" for a in self.arrows)
        return f"Quiver({self.vertices}, [{arr}])"


class Path(NamedTuple):
    source: int
    target: int
    arrows: Tuple[int, ...]

    def __len__(self):
        return len(self.arrows)

    @property
    def key(self):
        return (len(self.arrows), self.arrows, self.source)


def trivial(v: int) -> Path:
    return Path(v, v, ())


def make_path(q: Quiver, arrows: Sequence[int]) -> Path:
    arrows = tuple(arrows)
    if not arrows:
        raise ValueError("use trivial() for paths of length 0")
    for a, b in zip(arrows, arrows[1:]):
        if q.arrows[a].target != q.arrows[b].source:
            raise ValueError(f"arrows {q.arrows[a].name} and {q.arrows[b].name} do not compose")
    return Path(q.arrows[arrows[0]].source, q.arrows[arrows[-1]].target, arrows)


def concat(p: Path, q: Path) -> Optional[Path]:
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def parse_path(q: Quiver, text: str) -> Path:
    text = text.strip()
    if text.startswith("e_"):
        return trivial(q.vertex_index(text[2:]))
    return make_path(q, [q.arrow_index(t.strip()) for t in text.split("*")])


def path_str(q: Quiver, p: Path) -> str:
    if not p.arrows:
        return f"e_{q.vertices[p.source]}"
    return "*".join(q.arrows[a].name for a in p.arrows)


@dataclass
class Relation:
    """Linear combination of parallel paths of length >= 2."""

    terms: Dict[Path, object]

    def validate(self, q: Quiver):
        terms = {p: c for p, c in self.terms.items() if c}
        if not terms:
            raise InvalidRelation("relation has no nonzero coefficient")
        ends = {(p.source, p.target) for p in terms}
        if len(ends) != 1:
            raise InvalidRelation("relation paths are not parallel")
        for p in terms:
            if len(p) < 2:
                raise InvalidRelation(f"path {path_str(q, p)} has length < 2 (not admissible)")
        return terms


# ---------------------------------------------------------------------------
# Groebner completion on the path algebra


def _tip(poly: Dict[Path, object]) -> Path:
    return max(poly, key=lambda p: p.key)


def _find_divisor(arrows: Tuple[int, ...], tips: Dict[Tuple[int, ...], int], lengths):
    n = len(arrows)
    for L in lengths:
        if L > n:
            break
        for i in range(n - L + 1):
            g = tips.get(arrows[i:i + L])
            if g is not None:
                return g, i, L
    return None


class _Groebner:
    def __init__(self, quiver: Quiver, field: Field, max_len: int):
        self.quiver = quiver
        self.field = field
        self.max_len = max_len
        self.elems: List[Dict[Path, object]] = []
        self.tips: Dict[Tuple[int, ...], int] = {}
        self.lengths: List[int] = []

    def truncate(self, poly):
        return {p: c for p, c in poly.items() if c and len(p) < self.max_len}

    def reduce(self, poly):
        poly = self.truncate(poly)
        out = {}
        while poly:
            t = _tip(poly)
            c = poly.pop(t)
            hit = _find_divisor(t.arrows, self.tips, self.lengths) if t.arrows else None
            if hit is None:
                out[t] = c
                continue
            gi, i, L = hit
            g = self.elems[gi]
            pre, post = t.arrows[:i], t.arrows[i + L:]
            for p, d in g.items():
                if p.arrows == t.arrows[i:i + L]:
                    continue
                arr = pre + p.arrows + post
                if len(arr) >= self.max_len:
                    continue
                if arr:
                    np_ = Path(t.source, t.target, arr)
                else:
                    np_ = Path(t.source, t.target, ())
                v = poly.get(np_, self.field.zero) - c * d
                if v:
                    poly[np_] = v
                else:
                    poly.pop(np_, None)
        return out

    def add(self, poly):
        t = _tip(poly)
        c = poly[t]
        poly = {p: d / c for p, d in poly.items()}
        self.tips[t.arrows] = len(self.elems)
        self.elems.append(poly)
        self.lengths = sorted(set(self.lengths) | {len(t)})

    def complete(self, gens):
        queue = list(gens)
        pairs = []
        while queue or pairs:
            if queue:
                h = self.reduce(queue.pop(0))
                if h:
                    new = len(self.elems)
                    self.add(h)
                    for j in range(new + 1):
                        pairs.append((j, new))
                        if j != new:
                            pairs.append((new, j))
                continue
            i, j = pairs.pop(0)
            queue.extend(self._spolys(i, j))

    def _spolys(self, i, j):
        f, g = self.elems[i], self.elems[j]
        tf, tg = _tip(f).arrows, _tip(g).arrows
        out = []
        # suffix of tf equals prefix of tg
        for L in range(1, min(len(tf), len(tg))):
            if tf[len(tf) - L:] == tg[:L]:
                u, v = tf[:len(tf) - L], tg[L:]
                if len(tf) + len(v) >= self.max_len:
                    continue
                out.append(self._sub(self._mul(f, (), v), self._mul(g, u, ())))
        # tg inside tf
        if i != j and len(tg) <= len(tf):
            for k in range(len(tf) - len(tg) + 1):
                if tf[k:k + len(tg)] == tg:
                    out.append(self._sub(f, self._mul(g, tf[:k], tf[k + len(tg):])))
                    break
        return [s for s in out if s]

    def _mul(self, poly, pre, post):
        arrows = self.quiver.arrows
        res = {}
        for p, c in poly.items():
            s = arrows[pre[0]].source if pre else p.source
            t = arrows[post[-1]].target if post else p.target
            res[Path(s, t, tuple(pre) + p.arrows + tuple(post))] = c
        return res

    def _sub(self, a, b):
        out = dict(a)
        for p, c in b.items():
            v = out.get(p, self.field.zero) - c
            if v:
                out[p] = v
            else:
                out.pop(p, None)
        return out


class BoundQuiverAlgebra:
    """kQ/I with a normal-form path basis and lazily computed structure
    constants.  Use :func:`build_algebra` to construct."""

    def __init__(self, quiver: Quiver, relations: List[Relation], field: Field,
                 max_path_len: int, name: str = ""):
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.max_path_len = max_path_len
        self.name = name
        self._op: Optional[BoundQuiverAlgebra] = None
        self._gb = _Groebner(quiver, field, max_path_len)
        gens = []
        for r in relations:
            terms = r.validate(quiver)
            gens.append({p: field(c) for p, c in terms.items()})
        self._gb.complete(gens)
        self.basis: List[Path] = self._enumerate_basis()
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        self.nilpotency_index = max(len(p) for p in self.basis) + 1
        self._mult_cache: Dict[Tuple[int, int], Dict[int, object]] = {}
        self._between: Dict[Tuple[int, int], List[int]] = {}
        for i, p in enumerate(self.basis):
            self._between.setdefault((p.source, p.target), []).append(i)

    # basis ----------------------------------------------------------------
    def _is_normal_extension(self, arrows: Tuple[int, ...]) -> bool:
        n = len(arrows)
        for L in self._gb.lengths:
            if L > n:
                break
            if arrows[n - L:] in self._gb.tips:
                return False
        return True

    def _enumerate_basis(self) -> List[Path]:
        q = self.quiver
        layer = [trivial(v) for v in range(q.n)]
        basis = list(layer)
        length = 0
        while layer:
            length += 1
            if length >= self.max_path_len:
                raise NotFiniteDimensional(
                    f"normal-form paths of length {length - 1} survive at max_path_len={self.max_path_len}")
            nxt = []
            for p in layer:
                for a in q.arrows_from(p.target):
                    arr = p.arrows + (a,)
                    if self._is_normal_extension(arr):
                        nxt.append(Path(p.source, q.arrows[a].target, arr))
            nxt.sort(key=lambda p: p.key)
            basis.extend(nxt)
            layer = nxt
        if basis and max(len(p) for p in basis) >= self.max_path_len - 1:
            raise NotFiniteDimensional("nilpotency not witnessed below max_path_len")
        return basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.quiver.n

    def paths_between(self, s: int, t: int) -> List[int]:
        """Basis indices of normal paths from s to t."""
        return self._between.get((s, t), [])

    def paths_from(self, s: int) -> List[int]:
        return [i for i, p in enumerate(self.basis) if p.source == s]

    def paths_to(self, t: int) -> List[int]:
        return [i for i, p in enumerate(self.basis) if p.target == t]

    def normal_form(self, poly: Dict[Path, object]) -> Dict[int, object]:
        red = self._gb.reduce({p: self.field(c) for p, c in poly.items()})
        return {self.index[p]: c for p, c in red.items()}

    def mult(self, i: int, j: int) -> Dict[int, object]:
        """Normal form of basis[i] * basis[j] (i first) as {basis index: coeff}."""
        key = (i, j)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        p, q = self.basis[i], self.basis[j]
        if p.target != q.source:
            res = {}
        elif not p.arrows:
            res = {j: self.field.one}
        elif not q.arrows:
            res = {i: self.field.one}
        else:
            res = self.normal_form({Path(p.source, q.target, p.arrows + q.arrows): 1})
        self._mult_cache[key] = res
        return res

    def arrow_basis_index(self, a: int) -> int:
        ar = self.quiver.arrows[a]
        return self.index[Path(ar.source, ar.target, (a,))]

    def vertex_basis_index(self, v: int) -> int:
        return self.index[trivial(v)]

    def structure_constants(self) -> List[List[Dict[int, object]]]:
        return [[self.mult(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def cartan(self) -> List[List[int]]:
        """c[s][t] = dim e_s A e_t = number of basis paths s -> t."""
        return [[len(self.paths_between(s, t)) for t in range(self.n)] for s in range(self.n)]

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._op is None:
            qop = self.quiver.opposite()
            rels = []
            for r in self.relations:
                terms = {}
                for p, c in r.terms.items():
                    terms[Path(p.target, p.source, tuple(reversed(p.arrows)))] = c
                rels.append(Relation(terms))
            op = BoundQuiverAlgebra(qop, rels, self.field, self.max_path_len,
                                    name=(self.name + "^op") if self.name else "")
            op._op = self
            self._op = op
        return self._op

    def path_str(self, i: int) -> str:
        return path_str(self.quiver, self.basis[i])

    def vertex_name(self, v: int) -> str:
        return self.quiver.vertices[v]

    def is_hereditary_presentation(self) -> bool:
        return not self.relations

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name or '?'}, n={self.n}, dim={self.dim})"


def build_algebra(q: Quiver, rels: Sequence[Relation] = (), max_path_len: int = 30,
                  field: Field = QQ, name: str = "") -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(q, list(rels), field, max_path_len, name=name)


def opposite(a: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return a.opposite()


def relation_from_text(q: Quiver, terms: Sequence[Tuple[object, str]]) -> Relation:
    return Relation({parse_path(q, t): c for c, t in terms})


def enumerate_paths(q: Quiver, max_len: int) -> List[Path]:
    """All paths of length < max_len (brute force, no relations)."""
    out = [trivial(v) for v in range(q.n)]
    layer = list(out)
    for _ in range(1, max_len):
        nxt = []
        for p in layer:
            for a in q.arrows_from(p.target):
                nxt.append(Path(p.source, q.arrows[a].target, p.arrows + (a,)))
        out.extend(nxt)
        layer = nxt
        if not layer:
            break
    return out


# ---------------------------------------------------------------------------
# Presentation of a concretely given algebra


@dataclass
class FiniteAlgebra:
    """Associative unital algebra on k^dim; ``mult[i][j]`` is the product of
    basis elements i and j (i acting first, matching path concatenation)."""

    field: Field
    dim: int
    mult: List[List[Dict[int, object]]]
    idempotents: List[List[object]]
    labels: Optional[List[str]] = None

    def product(self, x: Sequence, y: Sequence) -> list:
        z = self.field.zero
        out = [z] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] = out[k] + ab * c
        return out

    def check_associative(self, limit: int = 12):
        idx = range(min(self.dim, limit))
        unit = [self.field.zero] * self.dim
        for e in self.idempotents:
            unit = [u + x for u, x in zip(unit, e)]
        for i, j, k in itertools.product(idx, idx, idx):
            ei, ej, ek = (self._e(t) for t in (i, j, k))
            if self.product(self.product(ei, ej), ek) != self.product(ei, self.product(ej, ek)):
                raise NotAssociative(f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})")
        for i in idx:
            ei = self._e(i)
            if self.product(unit, ei) != ei or self.product(ei, unit) != ei:
                raise NotAssociative("idempotents do not sum to the identity")

    def _e(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    @classmethod
    def from_bound_quiver(cls, a: BoundQuiverAlgebra) -> "FiniteAlgebra":
        idem = []
        for v in range(a.n):
            e = [a.field.zero] * a.dim
            e[a.vertex_basis_index(v)] = a.field.one
            idem.append(e)
        return cls(a.field, a.dim, a.structure_constants(), idem,
                   [a.path_str(i) for i in range(a.dim)])


@dataclass
class Presentation:
    algebra: BoundQuiverAlgebra
    arrow_elements: Dict[int, list]
    arrow_counts: List[List[int]]
    relation_counts: List[List[int]]
    radical_dim: int
    radical_nilpotency: int


def _span_basis(vectors, n, field):
    """Independent subset (as list) of vectors spanning their span."""
    if not vectors:
        return []
    m = Matrix.from_columns(field, vectors, n)
    _, piv = rref(m)
    return [vectors[j] for j in piv]


def _sandwich(alg: FiniteAlgebra, s: int, x, t: int):
    return alg.product(alg.product(alg.idempotents[s], x), alg.idempotents[t])


def present_algebra(alg: FiniteAlgebra, vertex_names: Optional[Sequence[str]] = None,
                    name: str = "", check: bool = True) -> Presentation:
    """Gabriel quiver with minimal relations of a basic split algebra.

    Arrow s->t spans e_s (rad/rad^2) e_t, so an arrow element x satisfies
    e_s x e_t = x under the left-to-right product.
    """
    F = alg.field
    n = alg.dim
    nv = len(alg.idempotents)
    if check:
        alg.check_associative()
    if n == 0:
        raise NotBasic("zero algebra has no presentation")
    # radical via the trace form of the regular representation (char 0 / large p)
    basis = [alg._e(i) for i in range(n)]
    lmul = []
    for i in range(n):
        cols = [alg.product(basis[i], basis[j]) for j in range(n)]
        lmul.append(Matrix.from_columns(F, cols, n))
    form = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m = lmul[i] @ lmul[j]
            tr = F.zero
            for k in range(n):
                tr = tr + m.rows[k][k]
            form[i][j] = form[j][i] = tr
    rad = kernel_basis(Matrix.from_rows(F, form)).columns()
    if n - len(rad) != nv:
        raise NotBasic(f"dim A/rad A = {n - len(rad)} but {nv} primitive idempotents given")
    # radical powers
    powers = [rad]
    cur = rad
    while cur:
        prod = [alg.product(x, y) for x in cur for y in rad]
        cur = _span_basis([v for v in prod if any(v)], n, F)
        powers.append(cur)
        if len(powers) > n + 2:
            raise NotBasic("radical is not nilpotent")
    nil = len(powers)  # rad^nil = 0
    rad2 = powers[1] if len(powers) > 1 else []
    names = list(vertex_names) if vertex_names else [str(i + 1) for i in range(nv)]
    arrows = []
    arrow_elems = {}
    for s in range(nv):
        for t in range(nv):
            low = [_sandwich(alg, s, x, t) for x in rad2]
            low = _span_basis([v for v in low if any(v)], n, F)
            full = [_sandwich(alg, s, x, t) for x in rad]
            full = [v for v in full if any(v)]
            chosen = []
            cur = list(low)
            r0 = len(cur)
            for v in full:
                if len(_span_basis(cur + [v], n, F)) > r0:
                    cur.append(v)
                    r0 += 1
                    chosen.append(v)
            for k, v in enumerate(chosen):
                aname = f"a{s + 1}_{t + 1}" + (f"_{k + 1}" if len(chosen) > 1 else "")
                arrow_elems[len(arrows)] = v
                arrows.append((aname, names[s], names[t]))
    q = Quiver(names, arrows)
    # paths up to length nil, mapped into the algebra
    all_paths = enumerate_paths(q, nil + 1)
    value = {}
    for p in all_paths:
        if not p.arrows:
            value[p] = alg.idempotents[p.source]
        else:
            v = arrow_elems[p.arrows[0]]
            for a in p.arrows[1:]:
                v = alg.product(v, arrow_elems[a])
            value[p] = v
    by_pair: Dict[Tuple[int, int], List[Path]] = {}
    for p in all_paths:
        by_pair.setdefault((p.source, p.target), []).append(p)
    # image must be everything
    img = _span_basis([v for v in value.values() if any(v)], n, F)
    if len(img) != n:
        raise NotBasic("paths in the Gabriel quiver do not span the algebra (not split basic?)")
    kernels: Dict[Tuple[int, int], List[Dict[Path, object]]] = {}
    for key, paths in by_pair.items():
        m = Matrix.from_columns(F, [value[p] for p in paths], n)
        ker = kernel_basis(m)
        if ker.ncols:
            rows, _ = rref(ker.T())
            kernels[key] = [{paths[i]: c for i, c in enumerate(r) if c} for r in rows]
        else:
            kernels[key] = []
    # J I + I J modulo paths of length > nil
    generated: Dict[Tuple[int, int], List[Dict[Path, object]]] = {}
    for (s, t), rels in kernels.items():
        for r in rels:
            for ai in q.arrows_from(t):
                a = q.arrows[ai]
                e = {Path(s, a.target, p.arrows + (ai,)): c for p, c in r.items() if len(p) + 1 <= nil}
                if e:
                    generated.setdefault((s, a.target), []).append(e)
            for ai in q.arrows_to(s):
                a = q.arrows[ai]
                e = {Path(a.source, t, (ai,) + p.arrows): c for p, c in r.items() if len(p) + 1 <= nil}
                if e:
                    generated.setdefault((a.source, t), []).append(e)
    relations = []
    rel_counts = [[0] * nv for _ in range(nv)]
    for key in sorted(kernels):
        paths = by_pair[key]
        pos = {p: i for i, p in enumerate(paths)}

        def vec(e):
            v = [F.zero] * len(paths)
            for p, c in e.items():
                v[pos[p]] = v[pos[p]] + c
            return v

        low = [vec(e) for e in generated.get(key, [])]
        base = _span_basis(low, len(paths), F) if low else []
        r0 = len(base)
        cur = list(base)
        for rel in sorted(kernels[key], key=lambda e: min(len(p) for p in e)):
            v = vec(rel)
            if len(_span_basis(cur + [v], len(paths), F)) > r0:
                cur.append(v)
                r0 += 1
                relations.append(Relation(dict(rel)))
                rel_counts[key[0]][key[1]] += 1
    a = build_algebra(q, relations, max_path_len=max(nil + 2, 4), field=F, name=name)
    if a.dim != n:
        raise NotBasic(f"presentation has dimension {a.dim}, expected {n}")
    return Presentation(a, arrow_elems, q.arrow_matrix(), rel_counts, len(rad), nil)


def category_algebra(hom_dims: Sequence[Sequence[int]], compose, field: Field = QQ,
                     identities=None, labels=None) -> FiniteAlgebra:
    """The algebra End(X_1 + ... + X_n) from Hom dimensions and a composition rule.

    ``compose(i, j, k, x, y)`` returns the coordinates in Hom(X_i, X_k) of the
    composite of basis map x of Hom(X_i, X_j) followed by basis map y of
    Hom(X_j, X_k).  Products are left to right: b_x * b_y = y o x.
    """
    n = len(hom_dims)
    off = {}
    tot = 0
    for i in range(n):
        for j in range(n):
            off[(i, j)] = tot
            tot += hom_dims[i][j]
    mult = [[{} for _ in range(tot)] for _ in range(tot)]
    for i in range(n):
        for j in range(n):
            for x in range(hom_dims[i][j]):
                bx = off[(i, j)] + x
                for k in range(n):
                    for y in range(hom_dims[j][k]):
                        by = off[(j, k)] + y
                        coords = compose(i, j, k, x, y)
                        mult[bx][by] = {off[(i, k)] + z: c for z, c in enumerate(coords) if c}
    idem = []
    for i in range(n):
        if hom_dims[i][i] < 1:
            raise ValueError(f"object {i} has no identity (zero object?)")
        e = [field.zero] * tot
        if identities is not None:
            for z, c in enumerate(identities[i]):
                e[off[(i, i)] + z] = c
        else:
            e[off[(i, i)] + identity_index(compose, i, hom_dims[i][i], field)] = field.one
        idem.append(e)
    return FiniteAlgebra(field, tot, mult, idem, labels)


def identity_index(compose, i, d, field):
    """The identity must be one of the basis maps of End(X_i)."""
    for x in range(d):
        ok = True
        for y in range(d):
            c = compose(i, i, i, x, y)
            if any((c[z] != (field.one if z == y else field.zero)) for z in range(d)):
                ok = False
                break
        if ok:
            return x
    raise ValueError("identity is not a basis element")
