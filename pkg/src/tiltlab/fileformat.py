"""Line-oriented text formats for algebras (.alg) and modules (.mod).

Algebra files::

    algebra a4_cluster
    field Q                # or: field Fp 101
    vertices 1 2 3 4
    arrow delta 1 2
    rel +1 alpha*beta      # paths compose left to right
    rel +1 beta*gamma -1 delta*gamma   (several terms on one line)

Module files::

    module M over a4_cluster
    dim 1 1 0 0
    map delta [[1]]
"""

from __future__ import annotations

import ast
from fractions import Fraction
from importlib import resources
from pathlib import Path as FsPath
from typing import List, Optional, Tuple

from .exactlin import Field, Matrix, QQ
from .quiveralg import BoundQuiverAlgebra, Quiver, Relation, build_algebra, parse_path, path_str
from .repmod import Representation


class FormatError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_field(tokens) -> Field:
    if tokens == ["Q"]:
        return QQ
    if len(tokens) == 2 and tokens[0] == "Fp":
        return Field(int(tokens[1]))
    raise FormatError(f"bad field spec {' '.join(tokens)!r}")


def field_from_flag(s: Optional[str]) -> Optional[Field]:
    """'Q', 'Fp:101' or '101'."""
    if not s:
        return None
    if s == "Q":
        return QQ
    return Field(int(s.split(":")[-1]))


def _coeff(tok: str, F: Field):
    try:
        return F(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad coefficient {tok!r}")


def parse_algebra(text: str, max_path_len: int = 30, field: Optional[Field] = None) -> BoundQuiverAlgebra:
    name = ""
    F = None
    verts: List[str] = []
    arrows = []
    rel_lines: List[Tuple[int, List[str]]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, *rest = line.split()
        if head == "algebra":
            name = " ".join(rest)
        elif head == "field":
            F = parse_field(rest)
        elif head == "vertices":
            verts = rest
        elif head == "arrow":
            if len(rest) != 3:
                raise FormatError("arrow needs <name> <src> <tgt>", ln)
            arrows.append(tuple(rest))
        elif head == "rel":
            if not rest or len(rest) % 2:
                raise FormatError("rel needs <coeff> <path> pairs", ln)
            rel_lines.append((ln, rest))
        else:
            raise FormatError(f"unknown directive {head!r}", ln)
    if not verts:
        raise FormatError("no vertices declared")
    F = field or F or QQ
    try:
        q = Quiver(verts, arrows)
    except ValueError as e:
        raise FormatError(str(e))
    rels = []
    for ln, toks in rel_lines:
        terms = {}
        for c, p in zip(toks[::2], toks[1::2]):
            try:
                path = parse_path(q, p)
            except (KeyError, ValueError) as e:
                raise FormatError(f"bad path {p!r}: {e}", ln)
            terms[path] = terms.get(path, F.zero) + _coeff(c, F)
        rels.append(Relation(terms))
    return build_algebra(q, rels, max_path_len=max_path_len, field=F, name=name)


def load_algebra(path, max_path_len: int = 30, field: Optional[Field] = None) -> BoundQuiverAlgebra:
    return parse_algebra(FsPath(path).read_text(encoding="utf-8"), max_path_len, field)


def format_algebra(a: BoundQuiverAlgebra, relations=None) -> str:
    q = a.quiver
    F = a.field
    out = [f"algebra {a.name or 'unnamed'}",
           "field Q" if F.p is None else f"field Fp {F.p}",
           "vertices " + " ".join(str(v) for v in q.vertices)]
    for ar in q.arrows:
        out.append(f"arrow {ar.name} {q.vertices[ar.source]} {q.vertices[ar.target]}")
    for r in (a.relations if relations is None else relations):
        toks = []
        for p, c in sorted(r.terms.items(), key=lambda t: t[0].key):
            s = str(c)
            toks.append(f"{'' if s.startswith('-') else '+'}{s} {path_str(q, p)}")
        out.append("rel " + " ".join(toks))
    return "\n".join(out) + "\n"


def parse_module(text: str, a: BoundQuiverAlgebra) -> Representation:
    name = ""
    dims = None
    maps = {}
    q = a.quiver
    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, *rest = line.split(None, 1)
        if head == "module":
            name = rest[0].split(" over ")[0].strip() if rest else ""
        elif head == "dim":
            dims = [int(x) for x in rest[0].split()]
        elif head == "map":
            arrow, _, mat = rest[0].partition(" ")
            try:
                rows = ast.literal_eval(mat.strip())
            except (SyntaxError, ValueError):
                raise FormatError(f"bad matrix for {arrow}", ln)
            maps[arrow] = rows
        else:
            raise FormatError(f"unknown directive {head!r}", ln)
    if dims is None or len(dims) != a.n:
        raise FormatError("dim line missing or wrong length")
    F = a.field
    mats = []
    for ar in q.arrows:
        r, c = dims[ar.source], dims[ar.target]
        rows = maps.get(ar.name)
        if rows is None or r == 0 or c == 0:
            mats.append(Matrix.zeros(F, r, c))
            continue
        rows = [[_coeff(str(x), F) for x in row] for row in rows]
        if len(rows) != r or any(len(row) != c for row in rows):
            raise FormatError(f"map {ar.name} must be {r}x{c}")
        mats.append(Matrix(F, r, c, rows))
    return Representation(a, dims, mats, name)


def load_module(path, a: BoundQuiverAlgebra) -> Representation:
    return parse_module(FsPath(path).read_text(encoding="utf-8"), a)


FIXTURES = ("a4_cluster", "d4_cluster", "sixvertex_gls", "cycle4_radsq", "a7_3cluster")


def fixture_text(name: str) -> str:
    return resources.files("tiltlab").joinpath("fixtures", f"{name}.alg").read_text(encoding="utf-8")


def load_fixture(name: str, max_path_len: int = 30, field: Optional[Field] = None) -> BoundQuiverAlgebra:
    return parse_algebra(fixture_text(name), max_path_len, field)
