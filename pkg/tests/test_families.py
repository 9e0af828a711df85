import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from linperm import LinPoly, make_field
from linperm.exppoly import ExpPoly, is_permutation
from linperm.families import (Family, HypothesisError, PreconditionError, audit_family,
                              check_cor_s3, check_theorem1, check_theorem2,
                              e1_linpolys, enumerate_family, family_conclusion, family_cor_n2k,
                              family_e0, family_e1, family_f4k, family_prop_first,
                              family_prop_n3_sextic, family_thm_reciprocal, family_thm_rs,
                              f4_primitive_elements, instance_from_report, rs_exponents,
                              search_family)
from linperm.linpoly import lp_invert_binomial
from oracle import RefField

F27 = make_field(3, 1, 3)
F125 = make_field(5, 1, 3)
F81 = make_field(3, 1, 4)


def ref_norms(ctx):
    """Norm of every element via the reference field (base q = p only)."""
    ref = RefField(ctx.p, ctx.modulus)
    e = (ctx.order - 1) // (ctx.q - 1)
    return {x: ref.pow(x, e) for x in range(1, ctx.order)}


def minus_one(ctx):
    return ctx.p - 1  # packed value of -1 in a prime base field


# -- parameter counts from the norm-fiber oracle --------------------------------

@pytest.mark.parametrize("ctx", [F27, F125])
def test_e0_count_matches_norm_fibers(ctx):
    norms = ref_norms(ctx)
    want = sum(1 for v in norms.values() if v != minus_one(ctx))
    assert want == (ctx.order - 1) - (ctx.order - 1) // (ctx.q - 1)
    assert sum(1 for _ in search_family(Family.E0_TRINOMIAL, ctx)) == want
    assert F27 is not ctx or want == 13


def test_thm_rs_count_uses_norm_of_minus_a():
    norms = ref_norms(F27)
    # N(-a) = -N(a) for n odd, so N(-a) = 1 iff N(a) = -1
    want = sum(1 for v in norms.values() if v != minus_one(F27))
    assert sum(1 for _ in search_family(Family.THM_RS_INVERSE, F27)) == want


def test_e1_has_no_valid_parameter_over_f27():
    # N(a) lies in F_3^* = {1, -1}, so N(a)^2 = 1 always
    assert all(v in (1, 2) for v in ref_norms(F27).values())
    assert list(search_family(Family.E1_FAMILY, F27)) == []
    with pytest.raises(PreconditionError, match=r"N\(a\)\^2 = 1"):
        family_e1(F27.elem(5))


def test_e1_count_over_f125():
    want = sum(1 for v in ref_norms(F125).values() if v not in (1, 4))
    res = audit_family(Family.E1_FAMILY, F125)
    assert res.valid == res.verified == want == 62


# -- individual families ----------------------------------------------------------

def test_prop_first_both_variants_f27():
    for variant in (1, 2):
        res = audit_family(Family.PROP_FIRST if variant == 1 else Family.PROP_SECOND, F27)
        assert res.ok and res.valid == 13


def test_prop_first_even_q():
    # q = 2 is vacuous: N(-a) = N(a) = 1 for every a; q = 4 is not
    assert audit_family(Family.PROP_FIRST, make_field(2, 1, 3)).valid == 0
    res = audit_family(Family.PROP_FIRST, make_field(2, 2, 3))
    assert res.ok and res.valid == 63 - 21


def test_prop_second_even_n_is_flagged():
    inst = next(search_family(Family.PROP_SECOND, F81))
    assert inst.params["even_n_remark"] is True


def test_prop_first_gate():
    a = next(x for x in F27.nonzero() if (-x).norm() == 1)
    with pytest.raises(PreconditionError, match=r"N\(-a\) = 1"):
        family_prop_first(a, 1)


@pytest.mark.parametrize("n", [3, 5, 7])
@pytest.mark.parametrize("q", [3, 5, 9])
def test_rs_integer_identity(q, n):
    r, s = rs_exponents(q, n)
    h = (n - 1) // 2
    # geometric-series closed forms
    assert r == (q ** (2 * h + 2) - 1) // (q * q - 1)
    assert s == q * (q ** (2 * h) - 1) // (q * q - 1)
    assert r == 1 + q * s


def test_thm_rs_worked_pair_display():
    inst = family_thm_rs(F125.elem(7))
    names = {c.name for c in inst.checks}
    assert {"worked forward display", "worked inverse display"} <= names
    assert inst.ok


def test_thm_rs_needs_odd_n():
    with pytest.raises(PreconditionError):
        family_thm_rs(F81.elem(5))


def test_reciprocal_branch_one():
    res = audit_family(Family.THM_RECIPROCAL_B1, F27)
    assert res.ok and res.valid == 13


def test_reciprocal_branch_two_mutation():
    L = LinPoly.from_terms(F81, {1: 1, 3: 1})  # case 2 form with b = 1
    inst = family_thm_reciprocal(2, L=L, beta=F81.one, k=2)
    assert inst.ok
    g = F81.elem(F81.generator)
    with pytest.raises(HypothesisError) as err:
        family_thm_reciprocal(2, L=L, beta=g, k=2)
    w = err.value.check.witness
    assert w is not None and "x" in w


def test_corollary_case2_only_squares():
    found = list(search_family(Family.COR_N2K_CASE2, F81))
    assert len(found) == 40
    assert all(inst.params["b"].is_square() for inst in found)


def test_corollary_case3_is_vacuous_for_q3():
    # squares have norm 1 in F_3, so N(a) = N(b) always
    assert all(x.norm() == 1 for x in F81.nonzero() if x.is_square())
    assert audit_family(Family.COR_N2K_CASE3, F81).valid == 0


def test_corollary_case3_over_f625():
    F = make_field(5, 1, 4)
    rng = np.random.default_rng(11)
    done = 0
    while done < 3:
        a, b = (F.elem(int(v)) for v in rng.integers(1, F.order, 2))
        try:
            inst = family_cor_n2k(3, b, a)
        except PreconditionError:
            continue
        assert inst.ok, inst.failed()
        done += 1


def test_corollary_conditions_are_named():
    with pytest.raises(PreconditionError, match="square"):
        family_cor_n2k(2, F81.elem(F81.generator))
    with pytest.raises(PreconditionError, match="k odd"):
        family_cor_n2k(1, F81.one)


def test_sextic_q3_and_q5():
    assert audit_family(Family.PROP_N3_SEXTIC, F27).ok
    rng = np.random.default_rng(7)
    done = 0
    while done < 3:
        a = F125.elem(int(rng.integers(1, 125)))
        if a.norm() == -1:
            continue
        inst = family_prop_n3_sextic(a)
        assert inst.ok
        # the two half-exponent terms carry N(a) - 1 and cancel when N(a) = 1
        assert len(inst.inverse) == (6 if a.norm() != 1 else 4)
        done += 1


def _e0_param(ctx):
    return next(x for x in ctx.nonzero() if x.norm() != -1)


def test_e0_variants_and_gates():
    a = _e0_param(F27)
    for v in ("base", "qth-power", "half-exponent"):
        assert family_e0(a, v).ok
    assert math.gcd(5, 26) == 1
    with pytest.raises(PreconditionError, match="q odd"):
        family_e0(make_field(2, 1, 3).elem(3), "half-exponent")
    bad = next(x for x in F27.nonzero() if x.norm() == -1)
    with pytest.raises(PreconditionError):
        family_e0(bad)


def test_e0_base_display():
    a = _e0_param(F27)
    q = 3
    want = ExpPoly(F27, [(q * q, 1), (q * q + q - 1, -a.frob(2)), (q, a ** (q * q + q))])
    assert family_e0(a).forward == want


def test_f4k_both_alphas():
    ctx = make_field(2, 2, 3)
    alphas = f4_primitive_elements(ctx)
    assert len(alphas) == 2 and all(x ** 3 == 1 and x != 1 for x in alphas)
    for choice in (0, 1):
        inst = family_f4k(1, choice)
        assert inst.ok
        assert isinstance(inst.forward, np.ndarray)
    assert (2 * 19 * 5) % 63 == 1


def test_cor_s3_on_e1_and_on_a_violation():
    a = next(x for x in F125.nonzero() if x.norm() ** 2 != 1)
    ell, h = e1_linpolys(a)
    Na = a.norm()
    rep = check_cor_s3(ell, h, a ** 10 / (Na - 1), -(Na - 1).inv(), 2)
    assert rep.hypothesis and rep.conclusion
    bogus = LinPoly.from_terms(F125, {0: 1, 1: 3})
    rep = check_cor_s3(bogus, h, a ** 10 / (Na - 1), -(Na - 1).inv(), 2)
    assert not rep.hypothesis and rep.conclusion is None
    failed = [c for c in rep.checks if not c.ok]
    assert failed and failed[0].witness


def test_theorem_checkers_examples():
    ident = LinPoly.identity(F27)
    t1 = check_theorem1(ident)
    # L = x gives x^-q, a permutation since gcd(q, q^3 - 1) = 1
    assert t1.predicates["P1"] and t1.ok
    singular = LinPoly.from_terms(F27, {1: 1, 0: -1})  # x^q - x kills F_q
    t2 = check_theorem2(singular)
    assert not t2.predicates["L"] and not t2.predicates["P1"] and t2.ok


def test_theorem_converse_never_asserted_for_even_n():
    rep = check_theorem1(LinPoly.identity(F81))
    assert rep.converse_asserted is False


def test_conclusion_presets():
    a = F27.elem(5) if (-F27.elem(5)).norm() != 1 else F27.elem(4)
    assert family_conclusion(1, a=a).ok
    assert family_conclusion(2, a=a).ok
    assert audit_family(Family.CONCLUSION_3, F81).verified == 40
    F = make_field(5, 1, 4)
    b = F.one
    a = next(x for x in F.nonzero() if x.is_square() and x.in_subfield(2) and x.norm() != 1)
    c4 = family_conclusion(4, a=a, b=b)
    assert c4.ok and c4.family is Family.CONCLUSION_4


def test_search_order_is_thread_independent():
    one = [i.to_report() for i in enumerate_family(Family.E0_TRINOMIAL, F27, threads=1)]
    two = [i.to_report() for i in enumerate_family(Family.E0_TRINOMIAL, F27, threads=3)]
    assert json.dumps(one) == json.dumps(two)


def test_filter_and_unsatisfiable_family():
    got = list(search_family(Family.E0_TRINOMIAL, F27, filter=lambda p: p["a"].value < 10))
    assert all(i.params["a"].value < 10 for i in got)
    assert list(search_family(Family.PROP_N3_SEXTIC, F81)) == []


def test_report_schema_and_replay():
    inst = family_thm_rs(F27.elem(3) if (-F27.elem(3)).norm() != 1 else F27.elem(4))
    rep = inst.to_report()
    assert set(rep) == {"family", "field", "params", "forward", "inverse", "checks"}
    assert all({"name", "pass"} <= set(c) for c in rep["checks"])
    assert instance_from_report(json.loads(json.dumps(rep))).to_report() == rep


@given(st.integers(1, 124))
def test_every_thm_rs_instance_verifies(v):
    a = F125.elem(v)
    if (-a).norm() == 1:
        with pytest.raises(PreconditionError):
            family_thm_rs(a)
        return
    inst = family_thm_rs(a)
    assert inst.ok
    assert is_permutation(inst.inverse)


def test_binomial_inverse_is_the_thm_rs_numerator():
    a = F27.elem(7)
    if (-a).norm() == 1:
        a = F27.elem(8)
    inst = family_thm_rs(a)
    assert inst.extras["L"] == lp_invert_binomial(2, a)
