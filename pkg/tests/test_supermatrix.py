import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superiwasawa.algebra import GeneratorTable, invert_even, mul, random_element, star
from superiwasawa.exceptions import MalformedInputError, NotInvertibleError, ParityError
from superiwasawa.hopf import HopfContext
from superiwasawa.supermatrix import (
    SuperDims,
    SuperMatrix,
    SuperVector,
    block_inverse,
    dagger,
    dagger_vec,
    matmul,
    matrix_from_json,
    matrix_to_json,
    matvec,
    scalar_product,
    sdet,
    sdet_alt,
    supertranspose,
    vec_scale_right,
    vec_supertranspose,
)

from _support import classical_det, random_even_matrix, random_vector

seeds = st.integers(min_value=0, max_value=2**32 - 1)
parities = st.sampled_from([0, 1])
small_sizes = st.sampled_from([(1, 1), (2, 1), (1, 2), (2, 2)])

T = GeneratorTable.grassmann(odd_pairs=2, degree=4)
th1, thb1, th2, thb2 = (T.gen(k) for k in range(4))
D11, D21 = SuperDims(1, 1), SuperDims(2, 1)


def mat(dims, seed, table=T):
    return random_even_matrix(dims, table, random.Random(seed))


# -- examples --------------------------------------------------------------------------


def test_identity_is_neutral():
    M = mat(D21, 3)
    I = SuperMatrix.identity(D21, T)
    assert matmul(I, M) == M
    assert matmul(M, I) == M


def test_matvec_extracts_column():
    ctx = HopfContext(2, 1, 2)
    M = ctx.generic_matrix()
    e1 = SuperVector.basis(ctx.dims, ctx.table, 0)
    assert matvec(M, e1) == M.column(0)


def test_right_scaling_by_odd_scalar_flips_parity():
    e1 = SuperVector.basis(D21, T, 0)
    v = vec_scale_right(e1, th1)
    assert v.parity == 1
    assert v.entries[0] == th1 and all(e.is_zero() for e in v.entries[1:])
    assert v.is_homogeneous()


def test_supertranspose_negates_b_block():
    b = th1
    M = SuperMatrix(D11, [[T.one(), b], [T.zero(), T.one()]], T)
    st_ = supertranspose(M)
    assert st_[1, 0] == -b
    assert st_[0, 1].is_zero()


def test_vec_supertranspose_signs():
    X = random_vector(D21, T, random.Random(1), 0)
    assert vec_supertranspose(X) == list(X.entries)
    Y = random_vector(D21, T, random.Random(2), 1)
    got = vec_supertranspose(Y)
    assert got[:2] == [-e for e in Y.entries[:2]]
    assert got[2] == Y.entries[2]


def test_dagger_examples():
    I = SuperMatrix.identity(D21, T)
    assert dagger(I) == I
    ctx = HopfContext(1, 1, 2)
    X = SuperVector(ctx.dims, [ctx.x(0, 1), ctx.table.zero()], 1, ctx.table)
    assert dagger_vec(X).entries[0] == ctx.xd(0, 1)


def test_block_inverse_of_identity():
    I = SuperMatrix.identity(D21, T)
    assert block_inverse(I) == I


def test_block_inverse_of_unipotent_is_neumann_series():
    dims = SuperDims(2, 1)
    rng = random.Random(5)
    rows = [[T.zero()] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            rows[i][j] = random_element(T, rng, (dims.parity(i) + dims.parity(j)) & 1, n_terms=2, min_degree=1)
    N = SuperMatrix(dims, rows, T)
    I = SuperMatrix.identity(dims, T)
    N2 = matmul(N, N)
    assert block_inverse(I + N) == I - N + N2 - matmul(N2, N)


def test_block_inverse_one_one_closed_form():
    beta, gamma = th1, th2
    M = SuperMatrix(D11, [[T.one(), beta], [gamma, T.one()]], T)
    a = invert_even(1 - mul(beta, gamma))
    d = invert_even(1 - mul(gamma, beta))
    want = SuperMatrix(D11, [[a, -mul(beta, d)], [-mul(gamma, a), d]], T)
    assert block_inverse(M) == want
    assert matmul(M, want) == SuperMatrix.identity(D11, T)


def test_sdet_examples():
    assert sdet(SuperMatrix.identity(D21, T)) == T.one()
    a = 2 + mul(th1, thb1)
    d = 3 + mul(th2, thb2)
    M = SuperMatrix(D11, [[a, T.zero()], [T.zero(), d]], T)
    assert sdet(M) == mul(a, invert_even(d))


def test_sdet_classical_case_matches_numpy():
    dims = SuperDims(3, 0)
    M = mat(dims, 11)
    assert abs(complex(sdet(M).body) - classical_det(M.rows)) < 1e-9


def test_scalar_product_of_basis_vector():
    e1 = SuperVector.basis(D21, T, 0)
    assert scalar_product(e1, e1) == T.one()


def test_odd_entries_in_even_slots_rejected():
    M = SuperMatrix(D11, [[th1, T.zero()], [T.zero(), T.one()]], T)
    assert M.parity_violations() == [(0, 0)]
    with pytest.raises(ParityError):
        sdet(M)
    with pytest.raises(ParityError):
        block_inverse(M)


def test_singular_body_raises():
    M = SuperMatrix(D11, [[T.one(), T.zero()], [T.zero(), T.zero()]], T)
    with pytest.raises(NotInvertibleError):
        block_inverse(M)
    with pytest.raises(NotInvertibleError):
        sdet(M)


def test_matrix_json_round_trip_and_validation():
    M = mat(D21, 4)
    data = json.loads(json.dumps(matrix_to_json(M)))
    assert matrix_from_json(data, T) == M
    data["entries"][0][2] = [{"coeff": ["1", "0"], "monomial": []}]
    with pytest.raises(MalformedInputError):
        matrix_from_json(data, T)
    with pytest.raises(MalformedInputError):
        matrix_from_json({"n": 1}, T)


# -- properties ------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(seeds, small_sizes)
def test_double_supertranspose(s, nm):
    dims = SuperDims(*nm)
    M = mat(dims, s)
    A, B, C, Dm = M.blocks()
    neg = lambda X: [[-e for e in r] for r in X]  # noqa: E731
    want = SuperMatrix.from_blocks(dims, A, neg(B), neg(C), Dm, T)
    assert supertranspose(supertranspose(M)) == want


@settings(max_examples=40, deadline=None)
@given(seeds, seeds, small_sizes)
def test_supertranspose_reverses_products(s1, s2, nm):
    dims = SuperDims(*nm)
    M, N = mat(dims, s1), mat(dims, s2)
    assert supertranspose(matmul(M, N)) == matmul(supertranspose(N), supertranspose(M))


@settings(max_examples=40, deadline=None)
@given(seeds, small_sizes)
def test_double_dagger_signs(s, nm):
    dims = SuperDims(*nm)
    M = mat(dims, s)
    DD = dagger(dagger(M))
    for i in range(dims.size):
        for j in range(dims.size):
            sign = (-1) ** (dims.parity(i) + dims.parity(j))
            assert DD[i, j] == M[i, j].scale(sign)


@settings(max_examples=60, deadline=None)
@given(seeds, small_sizes)
def test_block_inverse_two_sided(s, nm):
    dims = SuperDims(*nm)
    M = mat(dims, s)
    Mi = block_inverse(M)
    I = SuperMatrix.identity(dims, T)
    assert matmul(M, Mi) == I
    assert matmul(Mi, M) == I


@settings(max_examples=40, deadline=None)
@given(seeds, seeds, small_sizes)
def test_sdet_multiplicative(s1, s2, nm):
    dims = SuperDims(*nm)
    M, N = mat(dims, s1), mat(dims, s2)
    assert sdet(matmul(M, N)) == mul(sdet(M), sdet(N))


@settings(max_examples=60, deadline=None)
@given(seeds, small_sizes)
def test_sdet_formulas_agree(s, nm):
    M = mat(SuperDims(*nm), s)
    assert sdet(M) == sdet_alt(M)


@settings(max_examples=40, deadline=None)
@given(seeds, small_sizes)
def test_sdet_of_inverse_and_supertranspose(s, nm):
    M = mat(SuperDims(*nm), s)
    assert sdet(block_inverse(M)) == invert_even(sdet(M))
    assert sdet(supertranspose(M)) == sdet(M)


@settings(max_examples=60, deadline=None)
@given(seeds, small_sizes, parities, parities)
def test_scalar_product_conjugate_symmetry(s, nm, p, q):
    dims = SuperDims(*nm)
    rng = random.Random(s)
    X, Y = random_vector(dims, T, rng, p), random_vector(dims, T, rng, q)
    sign = (-1) ** ((p + q) * q)
    assert star(scalar_product(X, Y)) == scalar_product(Y, X).scale(sign)


@settings(max_examples=60, deadline=None)
@given(seeds, small_sizes, parities, parities)
def test_scalar_product_right_scaling(s, nm, p, r):
    dims = SuperDims(*nm)
    rng = random.Random(s)
    X, Y = random_vector(dims, T, rng, p), random_vector(dims, T, rng, rng.randint(0, 1))
    lam = random_element(T, rng, r, n_terms=3)
    lhs = scalar_product(vec_scale_right(X, lam), Y)
    rhs = mul(star(lam), scalar_product(X, Y)).scale((-1) ** ((p + 1) * r))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(seeds, small_sizes, parities)
def test_scalar_product_is_right_linear(s, nm, p):
    dims = SuperDims(*nm)
    rng = random.Random(s)
    X = random_vector(dims, T, rng, p)
    Y, Z = random_vector(dims, T, rng, 0), random_vector(dims, T, rng, 0)
    assert scalar_product(X, Y + Z) == scalar_product(X, Y) + scalar_product(X, Z)


def test_float_block_inverse_matches_numpy():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    table = GeneratorTable([], 1, "float")
    M = SuperMatrix(SuperDims(3, 0), [[table.scalar(complex(v)) for v in r] for r in A], table)
    Mi = block_inverse(M)
    got = np.array([[complex(Mi[i, j].body) for j in range(3)] for i in range(3)])
    np.testing.assert_allclose(got, np.linalg.inv(A), atol=1e-10)
