import numpy as np
import pytest
from hypothesis import given, strategies as st

from linperm import FieldError, LinPoly, SingularError, make_field
from linperm.linpoly import (binomial, dual_basis, default_basis, from_linear_map, lambda_poly,
                             lp_compose, lp_invert, lp_invert_binomial, lp_kernel, lp_matrix,
                             lp_rank, random_linpoly, transpose)

F27 = make_field(3, 1, 3)
F81 = make_field(3, 1, 4)
TOWER = make_field(3, 2, 3)


def linpolys(ctx):
    return st.lists(st.integers(0, ctx.order - 1), min_size=ctx.n, max_size=ctx.n).map(
        lambda cs: LinPoly(ctx, [ctx.elem(c) for c in cs]))


def as_map(L):
    return L.eval_array(L.ctx.all_values())


@given(linpolys(F81), linpolys(F81))
def test_composition_is_composition_of_maps(L, M):
    x = F81.all_values()
    assert np.array_equal(lp_compose(L, M).eval_array(x), L.eval_array(M.eval_array(x)))


@given(linpolys(F27), linpolys(F27), linpolys(F27))
def test_composition_associative(L, M, K):
    assert lp_compose(lp_compose(L, M), K) == lp_compose(L, lp_compose(M, K))


@given(linpolys(F27), linpolys(F27))
def test_matrix_is_multiplicative(L, M):
    A, B, C = lp_matrix(L), lp_matrix(M), lp_matrix(lp_compose(L, M))
    n = F27.n
    prod = [[sum((A[i][k] * B[k][j] for k in range(n)), F27.zero) for j in range(n)]
            for i in range(n)]
    assert prod == C


@given(linpolys(TOWER), st.integers(0, 728), st.integers(0, 728))
def test_transpose_is_adjoint(L, x, y):
    x, y = TOWER.elem(x), TOWER.elem(y)
    assert (y * L(x)).trace() == (transpose(L)(y) * x).trace()
    assert transpose(transpose(L)) == L


@given(linpolys(F81))
def test_rank_nullity(L):
    assert len(lp_kernel(L)) == F81.q ** (F81.n - lp_rank(L))


@given(linpolys(F81))
def test_kernel_methods_agree(L):
    scan = [x.value for x in lp_kernel(L, "scan")]
    null = [x.value for x in lp_kernel(L, "nullspace")]
    assert scan == null


@given(linpolys(TOWER))
def test_invert_round_trip(L):
    if lp_rank(L) < TOWER.n:
        with pytest.raises(SingularError):
            lp_invert(L)
        return
    M = lp_invert(L)
    ident = LinPoly.identity(TOWER)
    assert lp_compose(L, M) == ident and lp_compose(M, L) == ident


def test_linear_map_round_trip():
    rng = np.random.default_rng(3)
    L = random_linpoly(TOWER, rng)
    basis = default_basis(TOWER)
    assert from_linear_map(TOWER, [L(b) for b in basis], basis) == L


def test_dependent_basis_rejected():
    one = F27.one
    with pytest.raises(FieldError):
        dual_basis([one, one * 2, F27.elem(3)])


@pytest.mark.parametrize("k", [1, 2])
def test_binomial_inverse_f27(k):
    for a in F27.nonzero():
        if (-a).norm() == 1:
            with pytest.raises(SingularError):
                lp_invert_binomial(k, a)
            assert lp_rank(binomial(k, a)) < 3
            continue
        Linv = lp_invert_binomial(k, a)
        assert Linv == lp_invert(binomial(k, a))
        assert np.array_equal(as_map(lp_compose(binomial(k, a), Linv)), F27.all_values())


def test_binomial_inverse_gates():
    with pytest.raises(ValueError):
        lp_invert_binomial(2, F81.one * 2)  # gcd(2, 4) = 2
    with pytest.raises(ValueError):
        lp_invert_binomial(1, F81.zero)


def test_binomial_inverse_sparsity_matches_k():
    # terms of the inverse of x^(q^k)+ax sit at q^(k i)
    a = F27.elem(4)
    Linv = lp_invert_binomial(2, a)
    assert all(Linv[i] for i in range(3))


@pytest.mark.parametrize("key", [(3, 1, 3), (5, 1, 3), (3, 1, 5), (3, 2, 3)])
def test_lambda_identity(key):
    # lambda(c)^(q^2) + lambda(c) = -2c for n odd
    ctx = make_field(*key)
    lam = lambda_poly(ctx)
    x = ctx.all_values()
    lv = lam.eval_array(x)
    assert np.array_equal(ctx.vadd(ctx.vfrob(lv, 2), lv), ctx.vscale(ctx.vneg(x), 2))


def test_frobenius_and_qk_linearity():
    L = LinPoly.from_terms(F81, {0: 2, 2: F81.elem(7)})
    assert L.is_qk_linear(2) and not L.is_qk_linear(4 - 1)
    x = F81.all_values()
    assert np.array_equal(L.frobenius(1).eval_array(x), F81.vfrob(L.eval_array(x), 1))


def test_json_round_trip():
    L = LinPoly.from_terms(TOWER, {0: TOWER.elem(11), 2: TOWER.elem(500)})
    assert LinPoly.from_json(TOWER, L.to_json()) == L
    with pytest.raises(FieldError):
        LinPoly.from_json(TOWER, L.to_json()[:2])


def test_indices_fold_mod_n():
    assert LinPoly.monomial(F27, 4) == LinPoly.monomial(F27, 1)
