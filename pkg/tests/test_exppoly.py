import numpy as np
import pytest
from hypothesis import given, strategies as st

from linperm import ExpPoly, LinPoly, NotAPermutationError, ScanBoundError, make_field
from linperm.exppoly import (ep_eval, ep_from_fraction, is_permutation, map_inverse_table,
                             maps_agree, reduce_exponent, verify_inverse)
from linperm.gf import find_generator
from linperm.linpoly import binomial
from oracle import RefField

F9 = make_field(3, 1, 2)
F27 = make_field(3, 1, 3)


def test_inverse_convention_at_zero():
    inv = ExpPoly.monomial(F27, -1)
    assert inv(F27.zero) == 0
    assert all(inv(x) * x == 1 for x in F27.nonzero())


def test_identity_map():
    f = ExpPoly.monomial(F27, 1)
    assert all(ep_eval(f, x) == x for x in F27.elements())
    assert is_permutation(f)
    assert verify_inverse(f, f)


def test_q_plus_one_power_over_f9():
    g = find_generator(F9)
    assert ExpPoly.monomial(F9, F9.q + 1)(g) == g ** 4


@given(st.lists(st.tuples(st.integers(0, 5000), st.integers(0, 26)), max_size=5),
       st.integers(0, 26))
def test_reduction_is_sound(terms, x):
    # evaluating the canonical form equals evaluating raw exponents
    ref = RefField(3, F27.modulus)
    f = ExpPoly(F27, [(e, F27.elem(c)) for e, c in terms])
    want = 0
    for e, c in terms:
        want = ref.add(want, ref.mul(c, ref.pow(x, e)))
    assert f(F27.elem(x)).value == want
    assert all(0 <= e < F27.order for e, _ in f.terms)
    assert len({e for e, _ in f.terms}) == len(f.terms)


def test_reduce_exponent():
    assert reduce_exponent(27, 0) == 0
    assert reduce_exponent(27, 26) == 26
    assert reduce_exponent(27, 27) == 1
    assert reduce_exponent(27, -1) == 25


def test_fraction_binomial_over_x_q_plus_one():
    a = F27.elem(5)
    q = F27.q
    got = ep_from_fraction(binomial(1, a), q + 1)
    assert got == ExpPoly(F27, [(-1, 1), (-q, a)])


def test_collapse_case_is_not_a_permutation():
    f = ep_from_fraction(LinPoly.identity(F27), 1)
    assert f == ExpPoly.monomial(F27, F27.order - 1)
    assert not is_permutation(f)


def test_even_exponent_witness():
    f = ExpPoly.monomial(F27, F27.q + 1)
    chk = is_permutation(f)
    assert not chk
    x1, x2 = F27(chk.witness["x1"]), F27(chk.witness["x2"])
    assert x1 != x2 and f(x1) == f(x2)
    assert x1 == -x2


def test_non_monomial_denominator_rejected():
    with pytest.raises(ValueError):
        ep_from_fraction(ExpPoly.monomial(F27, 1), ExpPoly(F27, [(1, 1), (2, 1)]))


def test_constant_denominator_scales():
    f = ExpPoly(F27, [(3, 1), (1, 2)])
    assert ep_from_fraction(f, ExpPoly.monomial(F27, 0, 2)) == f * F27(2).inv()


def test_inverse_table_and_mutation():
    f = ExpPoly(F27, [(5, 1)])  # gcd(5, 26) = 1
    g = map_inverse_table(f)
    assert verify_inverse(f, g, F27)
    assert verify_inverse(g, f, F27)
    mutated = g.copy()
    mutated[[3, 4]] = mutated[[4, 3]]
    chk = verify_inverse(f, mutated, F27)
    assert not chk and chk.witness["side"] in ("g(f(x))", "f(g(x))")


def test_inverse_symmetry_on_non_inverse_pairs():
    f = ExpPoly.monomial(F27, 5)
    for g in (ExpPoly.monomial(F27, 3), ExpPoly.monomial(F27, 21)):
        assert bool(verify_inverse(f, g)) == bool(verify_inverse(g, f))
    assert verify_inverse(f, ExpPoly.monomial(F27, 21))  # 5 * 21 = 105 = 1 mod 26


def test_inverse_table_requires_permutation():
    with pytest.raises(NotAPermutationError):
        map_inverse_table(ExpPoly.monomial(F27, 2))


def test_scan_bound():
    big = make_field(2, 1, 21)
    with pytest.raises(ScanBoundError):
        is_permutation(ExpPoly.monomial(big, 1))
    with pytest.raises(ScanBoundError):
        is_permutation(ExpPoly.monomial(F27, 1), scan_bound=10)


def test_algebra_and_transforms():
    a = F27.elem(7)
    f = ExpPoly(F27, [(2, a), (4, 1)])
    x = F27.all_values()
    assert np.array_equal((f * f).values(), F27.vmul(f.values(), f.values()))
    assert np.array_equal(f.frobenius(1).values(), F27.vfrob(f.values(), 1))
    assert np.array_equal(f.subs_power(5).values(), f.eval_array(F27.vpow(x, 5)))
    assert maps_agree(f.times_monomial(-1), F27.vmul(f.values(), F27.vinv(x)), F27)
    assert (f - f) == ExpPoly(F27)
    assert len(f + ExpPoly.monomial(F27, 2, -a)) == 1


def test_json_round_trip():
    f = ExpPoly(F27, [(25, F27.elem(4)), (3, 1)])
    data = f.to_json()
    assert all(isinstance(t["exp"], str) for t in data)
    assert ExpPoly.from_json(F27, data) == f
