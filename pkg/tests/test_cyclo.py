import numpy as np
import pytest
from hypothesis import given, strategies as st

from linperm import CycInt, LinPoly, ParityError, make_field
from linperm.cyclo import (chi, chi_sum, count_roots_Mt, count_roots_Nt, eta, gauss_sum,
                           gauss_sum_base, lemma_s, parity_criterion, psi, weil_sum_closed,
                           weil_sum_direct, weil_theta, WeilParams)
from linperm.families import e1_linpolys
from linperm.linpoly import lp_invert_binomial
from oracle import RefField, complex_gauss, complex_weil, cyc_to_complex

F27 = make_field(3, 1, 3)
F125 = make_field(5, 1, 3)


def cycints(p):
    return st.lists(st.integers(-20, 20), min_size=p - 1, max_size=p - 1).map(
        lambda v: CycInt(p, v))


@given(cycints(5), cycints(5), cycints(5))
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0
    assert (a * b).conj() == a.conj() * b.conj()


@given(cycints(7))
def test_complex_embedding_is_a_homomorphism(a):
    b = CycInt.zeta_power(7, 3) + 2
    assert abs(cyc_to_complex(a * b) - cyc_to_complex(a) * cyc_to_complex(b)) < 1e-6


def test_sum_of_all_roots_is_zero():
    total = sum((CycInt.zeta_power(5, t) for t in range(5)), CycInt.integer(5, 0))
    assert total == 0
    assert CycInt.zeta_power(3, 3) == 1


def test_json_round_trip():
    a = CycInt(5, [1, -2, 3, 10 ** 30])
    assert CycInt.from_json(a.to_json()) == a


def test_frozen_gauss_sums():
    # G_1 over F_3 is z - z^2 = 1 + 2z; G over F_27 is G_1^3 = -3 G_1
    assert gauss_sum_base(F27) == CycInt(3, [1, 2])
    assert gauss_sum(F27) == CycInt(3, [-3, -6])


@pytest.mark.parametrize("key", [(3, 1, 3), (5, 1, 3), (3, 1, 2)])
def test_gauss_sum_matches_complex_oracle(key):
    ctx = make_field(*key)
    ref = RefField(ctx.p, ctx.modulus)
    assert abs(cyc_to_complex(gauss_sum(ctx)) - complex_gauss(ref)) < 1e-6


@pytest.mark.parametrize("key", [(3, 1, 3), (5, 1, 3), (3, 1, 5), (3, 2, 3)])
def test_gauss_identities(key):
    ctx = make_field(*key)
    q, n = ctx.q, ctx.n
    G1 = gauss_sum_base(ctx)
    assert G1 * G1 == eta(-ctx.one) * q
    assert gauss_sum(ctx) == G1 ** n * (-1) ** (n - 1)


def test_weil_matches_complex_oracle():
    ref = RefField(3, F27.modulus)
    for A, B in [(1, 0), (5, 7), (26, 13), (9, 2)]:
        want = complex_weil(ref, 3, A, B)
        got = weil_sum_direct(F27.elem(A), F27.elem(B))
        assert abs(cyc_to_complex(got) - want) < 1e-6


def test_weil_closed_form_sample_f125():
    rng = np.random.default_rng(5)
    G = gauss_sum(F125)
    for A, B in zip(rng.integers(1, 125, 60), rng.integers(0, 125, 60)):
        A, B = F125.elem(int(A)), F125.elem(int(B))
        assert weil_sum_direct(A, B) == weil_sum_closed(A, B, G)


def test_theta_solves_the_linearized_equation():
    for A in list(F27.nonzero())[::3]:
        for B in F27.elements():
            th = weil_theta(A, B)
            assert A.frob(1) * th.frob(2) + A * th + B.frob(1) == 0


def test_gates():
    F8 = make_field(2, 1, 3)
    with pytest.raises(ParityError):
        eta(F8.one)
    with pytest.raises(ParityError):
        weil_sum_closed(make_field(3, 1, 2).one, make_field(3, 1, 2).one)
    with pytest.raises(ValueError):
        WeilParams(F27.zero, F27.one)
    with pytest.raises(ValueError):
        count_roots_Mt(LinPoly.identity(F27), LinPoly.identity(F27), 0)


def test_chi_sum_weights_and_characters():
    vals = F27.all_values()
    assert chi_sum(F27, vals) == 0
    w = np.ones(27, dtype=np.int64) * 2
    assert chi_sum(F27, vals, w) == 0
    # trace transitivity: chi(c) = psi(Tr(c)) = psi(n c) for c in F_q
    tower = make_field(3, 2, 3)
    for c in tower.elements():
        if c.frob(1) == c:
            assert chi(c) == psi(c * tower.n)
    assert chi(F27.zero) == 1


def test_lemma_s():
    assert lemma_s(F27) == 9
    assert lemma_s(make_field(3, 1, 5)) == 9 + 81


def test_nt_brute_force():
    a = F27.elem(4)
    L = lp_invert_binomial(1, a) if (-a).norm() != 1 else LinPoly.identity(F27)
    ell = LinPoly.from_terms(F27, {1: 1, 0: 2})
    for t in range(3):
        want = 0
        for x in F27.elements():
            lv = ell(x)
            val = L(x ** 4) * (lv.inv() if lv else F27.zero)
            want += val + t == 0
        assert count_roots_Nt(L, ell, t) == want


@pytest.mark.parametrize("field", [F27, F125])
def test_mt_divisible_by_q_minus_one(field):
    ident = LinPoly.identity(field)
    for a in list(field.nonzero())[:8]:
        ell, _ = e1_linpolys(a)
        for t in list(field.nonzero())[:10]:
            assert count_roots_Mt(ident, ell, t) % (field.q - 1) == 0


def test_parity_criterion_on_a_known_permutation():
    # e1 over F_125 with N(a)^2 != 1 permutes
    a = next(x for x in F125.nonzero() if x.norm() ** 2 != 1)
    ell, _ = e1_linpolys(a)
    holds, counts = parity_criterion(LinPoly.identity(F125), ell)
    assert holds and len(counts) == 124
