import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superiwasawa.algebra import AlgebraMorphism, mul, random_element
from superiwasawa.hopf import (
    HopfContext,
    TensorElement,
    antipode,
    coproduct,
    counit,
    project_an,
    project_su,
    sigma,
    sigma_sign,
    verify_bialgebra,
    verify_factorization,
    verify_hopf_ideals,
    verify_real_form_axioms,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

C11 = HopfContext(1, 1, 3)
C21 = HopfContext(2, 1, 3)


def statuses(records):
    return {r["axiom"]: r["status"] for r in records}


def failing(records):
    return sorted(r["axiom"] for r in records if r["status"] != "pass")


# -- coproduct and counit ---------------------------------------------------------------


def test_coproduct_of_x12_in_one_one():
    ctx = C11
    P = TensorElement.pure
    one, x11, x12, x22 = ctx.table.one(), ctx.x(0, 0), ctx.x(0, 1), ctx.x(1, 1)
    want = P(one, x12) + P(x12, one) + P(x11, x12) + P(x12, x22)
    assert coproduct(ctx, x12) == want


def test_coproduct_of_unit():
    one = C21.table.one()
    assert coproduct(C21, one) == TensorElement.pure(one, one)


@pytest.mark.parametrize("conj", [False, True])
def test_coproduct_is_matrix_comultiplication(conj):
    ctx = C21
    for i in range(3):
        for j in range(3):
            want = TensorElement.zero(ctx.table)
            for k in range(3):
                want = want + TensorElement.pure(ctx.y(i, k, conj), ctx.y(k, j, conj))
            assert coproduct(ctx, ctx.y(i, j, conj)) == want


def test_counit_examples():
    ctx = C11
    assert all(counit(ctx, ctx.x(i, j)) == 0 for i, j in ctx.holomorphic_generators())
    assert counit(ctx, 1 + mul(ctx.x(0, 0), ctx.x(1, 1))) == 1
    assert all(counit(ctx, antipode(ctx, ctx.x(i, j))) == 0 for i, j in ctx.holomorphic_generators())


def test_tensor_product_koszul_sign():
    ctx = C11
    P = TensorElement.pure
    one, b, c = ctx.table.one(), ctx.x(0, 1), ctx.x(1, 0)
    assert P(one, b) * P(c, one) == P(c, b).scale(-1)
    # an even middle factor gives no sign
    assert P(one, ctx.x(0, 0)) * P(c, one) == P(c, ctx.x(0, 0))


@settings(max_examples=30, deadline=None)
@given(seeds, seeds)
def test_coproduct_is_multiplicative(s1, s2):
    ctx = HopfContext(1, 1, 2)
    a = random_element(ctx.table, random.Random(s1), n_terms=3)
    b = random_element(ctx.table, random.Random(s2), n_terms=3)
    assert coproduct(ctx, mul(a, b)) == coproduct(ctx, a) * coproduct(ctx, b)


@settings(max_examples=20, deadline=None)
@given(seeds, seeds, seeds)
def test_tensor_multiplication_is_associative(s1, s2, s3):
    ctx = HopfContext(1, 1, 3)
    rng = random.Random(s1)
    ts = []
    for _ in range(3):
        a = random_element(ctx.table, rng, n_terms=2)
        b = random_element(ctx.table, rng, n_terms=2)
        ts.append(TensorElement.pure(a, b))
    assert (ts[0] * ts[1]) * ts[2] == ts[0] * (ts[1] * ts[2])


# -- antipode -------------------------------------------------------------------------


def test_antipode_leading_terms():
    ctx = C21
    for i, j in ctx.holomorphic_generators():
        s = antipode(ctx, ctx.x(i, j))
        assert s.body == 0
        lin = ctx.table.element({m: c for m, c in s.terms.items() if len(m) == 1})
        assert lin == -ctx.x(i, j)


def test_antipode_is_involutive():
    ctx = C21
    for i, j in ctx.holomorphic_generators():
        assert antipode(ctx, antipode(ctx, ctx.x(i, j))) == ctx.x(i, j)


def test_antipode_convolution():
    ctx = C21
    for i in range(3):
        for j in range(3):
            acc = ctx.table.zero()
            for k in range(3):
                acc = acc + mul(antipode(ctx, ctx.y(i, k)), ctx.y(k, j))
            assert acc == (ctx.table.one() if i == j else ctx.table.zero())


@settings(max_examples=30, deadline=None)
@given(seeds, seeds, st.sampled_from([0, 1]), st.sampled_from([0, 1]))
def test_antipode_is_graded_antimorphism(s1, s2, p, q):
    ctx = HopfContext(1, 1, 3)
    a = random_element(ctx.table, random.Random(s1), p, n_terms=2)
    b = random_element(ctx.table, random.Random(s2), q, n_terms=2)
    lhs = antipode(ctx, mul(a, b))
    rhs = mul(antipode(ctx, b), antipode(ctx, a)).scale((-1) ** (p * q))
    assert lhs == rhs


# -- sigma ----------------------------------------------------------------------------


def test_sigma_on_even_corner():
    ctx = C11
    assert sigma(ctx, ctx.x(0, 0)) == antipode(ctx, ctx.x(0, 0))


def test_sigma_squares_to_parity_sign():
    ctx = C21
    for i, j in ctx.holomorphic_generators():
        x = ctx.x(i, j)
        assert sigma(ctx, sigma(ctx, x)) == x.scale((-1) ** ctx.slot_parity(i, j))


def test_sigma_of_antipode_is_transpose():
    ctx = C21
    for p, j in ctx.holomorphic_generators():
        assert sigma(ctx, antipode(ctx, ctx.x(p, j))) == ctx.x(j, p).scale(sigma_sign(ctx, p, j))


def test_sigma_is_antilinear():
    ctx = C11
    x = ctx.x(0, 1)
    assert sigma(ctx, x.scale(1j)) == sigma(ctx, x).scale(-1j)


# -- axiom suites ---------------------------------------------------------------------


@pytest.mark.parametrize("nm", [(1, 1), (2, 1), (1, 2)])
def test_graded_real_form_passes(nm):
    ctx = HopfContext(*nm, 3)
    recs = verify_real_form_axioms(ctx, "graded")
    assert failing(recs) == []
    assert set(statuses(recs)) >= {"(1)", "(2)", "(3)", "(4)", "(5b)", "(6b)"}


def test_normal_real_form_fails_with_odd_block():
    recs = verify_real_form_axioms(C21, "normal")
    assert failing(recs) == ["(5a)", "(6a)"]
    for r in recs:
        if r["status"] == "fail":
            # slot 3 is the only odd slot, so the odd generators are those touching it
            assert r["counterexample"]["generator"] in {"x13", "x23", "x31", "x32"}


@pytest.mark.parametrize("kind", ["graded", "normal"])
def test_classical_real_form_passes_both_kinds(kind):
    ctx = HopfContext(3, 0, 3)
    assert failing(verify_real_form_axioms(ctx, kind)) == []


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        verify_real_form_axioms(C11, "weird")


def _with_sigma_images(ctx, images):
    ctx._sigma = AlgebraMorphism(ctx.table, images, antilinear=True)
    return ctx


def test_unsigned_sigma_is_caught():
    # negative control: σ(x_ij) = S(x_ji) without the parity sign
    ctx = HopfContext(2, 1, 3)
    images = dict(ctx.sigma_map.images)
    for i, j in ctx.holomorphic_generators():
        images[ctx.xid(i, j)] = ctx.antipode_map.images[ctx.xid(j, i)]
    bad = failing(verify_real_form_axioms(_with_sigma_images(ctx, images), "graded"))
    assert {"(1)", "(5b)", "(6b)"} <= set(bad)


def test_single_flipped_sign_is_caught():
    ctx = HopfContext(1, 1, 3)
    images = dict(ctx.sigma_map.images)
    images[ctx.xid(0, 0)] = -images[ctx.xid(0, 0)]
    bad = failing(verify_real_form_axioms(_with_sigma_images(ctx, images), "graded"))
    assert {"(1)", "(6b)"} <= set(bad)


def test_bialgebra_axioms():
    assert failing(verify_bialgebra(C21)) == []


# -- projections and ideals -------------------------------------------------------------


def test_projection_examples():
    ctx = C21
    for i, j in ctx.holomorphic_generators():
        assert project_su(ctx, sigma(ctx, ctx.x(i, j)) - ctx.xd(i, j)).is_zero()
    assert project_an(ctx, ctx.x(1, 0)).is_zero()
    assert project_an(ctx, ctx.xd(2, 0)).is_zero()
    assert project_an(ctx, ctx.x(0, 0) - ctx.xd(0, 0)).is_zero()
    assert project_an(ctx, ctx.x(0, 1)) == ctx.x(0, 1)


def test_ideals_are_coideals():
    assert failing(verify_hopf_ideals(C21)) == []


# -- factorization through the decomposition ------------------------------------------------


def test_factorization_one_one():
    recs = verify_factorization(HopfContext(1, 1, 3))
    assert failing(recs) == []
    assert statuses(recs)["factorization on the unit"] == "pass"


def test_factorization_two_one():
    assert failing(verify_factorization(HopfContext(2, 1, 2))) == []
