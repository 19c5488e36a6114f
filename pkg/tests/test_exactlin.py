import sympy
from hypothesis import given, settings, strategies as st

from tiltlab.exactlin import Field, Matrix, QQ, QuotientSpace, kernel_basis, rank, solve

small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def as_matrix(rows, F=QQ):
    return Matrix.from_rows(F, [[F(x) for x in row] for row in rows])


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(rows):
    assert rank(as_matrix(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_kernel_is_kernel_and_rank_nullity(rows):
    m = as_matrix(rows)
    k = kernel_basis(m)
    assert rank(m) + k.ncols == m.ncols
    if k.ncols:
        assert (m @ k).is_zero()
        assert rank(k) == k.ncols


@settings(max_examples=100, deadline=None)
@given(int_matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_consistent_system(rows, y):
    m = as_matrix(rows)
    y = Matrix.from_columns(QQ, [[QQ(v) for v in y[:m.ncols]]], m.ncols)
    b = m @ y
    x = solve(m, b)
    assert x is not None and m @ x == b


def test_solve_inconsistent():
    m = as_matrix([[1, 0], [0, 0]])
    b = as_matrix([[0], [1]])
    assert solve(m, b) is None


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_quotient_dimension(rows):
    m = as_matrix(rows)
    Q = QuotientSpace(m, m.nrows, QQ)
    assert Q.dim == m.nrows - rank(m)
    for j in range(m.ncols):
        assert not any(Q.reduce(m.column(j)))


def test_prime_field_arithmetic():
    F = Field(101)
    for a in range(1, 101):
        assert F(a) * (F.one / F(a)) == F.one
    assert F(-1) == F(100)


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, 8]]
    assert rank(as_matrix(rows)) == 2
    assert rank(as_matrix(rows, Field(7))) == 1
