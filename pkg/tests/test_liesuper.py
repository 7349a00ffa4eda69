from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supalg.liesuper import (LieSuperAlgebra, ReducedPoint, adjoint, build_gl, check_antisymmetry,
                             check_jacobi, dual_number_check, generic_adjoint, torus_signature)
from supalg.superpoly import SuperPolynomial, evaluate

from strategies import diagonal_entries


def unit_matrix(size, i, j):
    return [[Fraction(int((r, c) == (i - 1, j - 1))) for c in range(size)] for r in range(size)]


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def matrix_bracket(L, i, j):
    """Oracle: supercommutator XY - (-1)^{|X||Y|} YX of elementary matrices."""
    m, n = L.gl_shape
    size = m + n
    X = unit_matrix(size, *L.gl_order[i])
    Y = unit_matrix(size, *L.gl_order[j])
    s = -1 if L.parities[i] and L.parities[j] else 1
    XY, YX = matmul(X, Y), matmul(Y, X)
    Z = [[XY[r][c] - s * YX[r][c] for c in range(size)] for r in range(size)]
    return tuple(Z[a - 1][b - 1] for a, b in L.gl_order)


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_brackets_match_matrix_supercommutator(shape):
    L = build_gl(*shape)
    for i, j in product(range(L.dim), repeat=2):
        assert L.bracket_basis(i, j) == matrix_bracket(L, i, j)


def vec(L, **coeffs):
    v = [Fraction(0)] * L.dim
    for name, c in coeffs.items():
        v[L.index(name)] = Fraction(c)
    return tuple(v)


def test_gl11_examples():
    L = build_gl(1, 1)
    E = L.basis_vector
    assert L.bracket(E("E12"), E("E21")) == vec(L, E11=1, E22=1)
    assert not any(L.bracket(E("E11"), E("E11")))
    assert L.bracket(E("E11"), E("E12")) == E("E12")
    assert L.dim == 4 and len(L.odd_indices) == 2


def test_gl21_odd_bracket_and_small_cases():
    L = build_gl(2, 1)
    assert L.bracket(L.basis_vector("E13"), L.basis_vector("E32")) == L.basis_vector("E12")
    L10 = build_gl(1, 0)
    assert L10.dim == 1 and not any(L10.bracket_basis(0, 0))


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2)])
def test_antisymmetry_and_jacobi(shape):
    L = build_gl(*shape)
    assert check_antisymmetry(L) == []
    assert check_jacobi(L) == []


def test_jacobi_detects_broken_constants():
    L = build_gl(1, 1)
    consts = [[list(c) for c in row] for row in L.consts]
    i, j = L.index("E12"), L.index("E21")
    consts[i][j][L.index("E11")] = Fraction(2)
    consts[j][i][L.index("E11")] = Fraction(2)
    broken = LieSuperAlgebra(list(zip(L.names, L.parities)), [[tuple(c) for c in row] for row in consts])
    assert check_jacobi(broken)


def test_json_round_trip():
    L = build_gl(2, 1)
    M = LieSuperAlgebra.from_json(L.to_json())
    assert M.names == L.names and M.consts == L.consts


def test_adjoint_examples():
    L = build_gl(1, 1)
    h = ReducedPoint.diagonal(2, 3)
    assert adjoint(L, h.inverse(), L.basis_vector("E12")) == vec(L, E12=Fraction(3, 2))
    for k in range(L.dim):
        x = L.basis_vector(k)
        assert adjoint(L, ReducedPoint.identity(1, 1), x) == x
    assert adjoint(L, h, L.basis_vector("E11")) == L.basis_vector("E11")


def test_singular_point_rejected():
    with pytest.raises(ZeroDivisionError):
        ReducedPoint.diagonal(0, 1)
    with pytest.raises(ValueError):
        ReducedPoint(1, 1, [[1, 1], [0, 1]])


def test_generic_adjoint_examples():
    L = build_gl(1, 1)
    sig = torus_signature(1, 1)
    a = lambda n, e=1: SuperPolynomial.gen(sig, n, e)
    assert generic_adjoint(L, L.basis_vector("E12"), sig) == {L.index("E12"): a("a11", -1) * a("a22")}
    assert generic_adjoint(L, L.basis_vector("E21"), sig) == {L.index("E21"): a("a11") * a("a22", -1)}
    assert generic_adjoint(L, L.basis_vector("E11"), sig) == {L.index("E11"): SuperPolynomial.one(sig)}


@settings(max_examples=20)
@given(diagonal_entries(2))
def test_generic_adjoint_specializes(entries):
    L = build_gl(1, 1)
    h = ReducedPoint.diagonal(*entries)
    vals = {"a11": entries[0], "a22": entries[1]}
    for k in range(L.dim):
        x = L.basis_vector(k)
        gen = generic_adjoint(L, x)
        got = [Fraction(0)] * L.dim
        for idx, p in gen.items():
            got[idx] += evaluate(p, vals)
        assert tuple(got) == adjoint(L, h.inverse(), x)


points21 = st.tuples(
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
    st.integers(-4, 4).filter(bool),
).filter(lambda t: t[0][0] * t[0][3] - t[0][1] * t[0][2] != 0)


@settings(max_examples=50)
@given(points21, st.integers(0, 8), st.integers(0, 8))
def test_adjoint_is_an_automorphism(pt, i, j):
    L = build_gl(2, 1)
    (a, b, c, d), e = pt
    h = ReducedPoint(2, 1, [[a, b, 0], [c, d, 0], [0, 0, e]])
    x, y = L.basis_vector(i), L.basis_vector(j)
    assert adjoint(L, h, L.bracket(x, y)) == L.bracket(adjoint(L, h, x), adjoint(L, h, y))


@settings(max_examples=30)
@given(points21, points21, st.integers(0, 8))
def test_adjoint_is_a_group_action(p, q, k):
    L = build_gl(2, 1)
    mk = lambda t: ReducedPoint(2, 1, [[t[0][0], t[0][1], 0], [t[0][2], t[0][3], 0], [0, 0, t[1]]])
    g, h = mk(p), mk(q)
    x = L.basis_vector(k)
    assert adjoint(L, g * h, x) == adjoint(L, g, adjoint(L, h, x))


def test_dual_number_differential():
    L = build_gl(1, 1)
    for z in L.even_indices:
        for k in range(L.dim):
            assert dual_number_check(L, L.basis_vector(z), L.basis_vector(k))
