"""Permutation-polynomial families with closed-form inverses, and checkers.

Every constructor validates its parameter preconditions (raising
:class:`PreconditionError`), builds the forward map and its inverse, and
records a list of :class:`~linperm.exppoly.Check` results.  Nothing is
assumed: bijectivity, two-sided inverses and the algebraic identities that
justify each construction are all evaluated on the whole field.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cyclo import rational_values
from .exppoly import (Check, ExpPoly, check_scan_bound, ep_from_fraction, is_permutation,
                      map_inverse_table, maps_agree, values_of, verify_inverse)
from .gf import FieldElem, make_field
from .linpoly import (LinPoly, SingularError, binomial, lp_compose, lp_invert,
                      lp_invert_binomial, lp_rank, random_linpoly, transpose)


class Family(str, enum.Enum):
    E0_TRINOMIAL = "E0_TRINOMIAL"
    PROP_FIRST = "PROP_FIRST"
    PROP_SECOND = "PROP_SECOND"
    THM_RS_INVERSE = "THM_RS_INVERSE"
    THM_RECIPROCAL_B1 = "THM_RECIPROCAL_B1"
    THM_RECIPROCAL_B2 = "THM_RECIPROCAL_B2"
    COR_N2K_CASE1 = "COR_N2K_CASE1"
    COR_N2K_CASE2 = "COR_N2K_CASE2"
    COR_N2K_CASE3 = "COR_N2K_CASE3"
    PROP_N3_SEXTIC = "PROP_N3_SEXTIC"
    E1_FAMILY = "E1_FAMILY"
    F4K_EXAMPLE = "F4K_EXAMPLE"
    CONCLUSION_1 = "CONCLUSION_1"
    CONCLUSION_2 = "CONCLUSION_2"
    CONCLUSION_3 = "CONCLUSION_3"
    CONCLUSION_4 = "CONCLUSION_4"


class PreconditionError(ValueError):
    pass


class HypothesisError(PreconditionError):
    """A scanned hypothesis failed; ``check`` carries the witness."""

    def __init__(self, check):
        super().__init__(f"hypothesis '{check.name}' fails: {check.to_json().get('witness')}")
        self.check = check


def _require(cond, msg):
    if not cond:
        raise PreconditionError(msg)


def _map_json(f):
    if f is None:
        return None
    if isinstance(f, ExpPoly):
        return f.to_json()
    if isinstance(f, LinPoly):
        return {"linpoly": f.to_json()}
    return {"table": [int(v) for v in f]}


def _param_json(v):
    if isinstance(v, FieldElem):
        return v.to_json()
    if isinstance(v, LinPoly):
        return {"linpoly": v.to_json()}
    return v


@dataclass
class FamilyInstance:
    family: Family
    ctx: object
    params: dict
    forward: object
    inverse: object
    checks: list
    extras: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.ok]

    def to_report(self):
        return {
            "family": self.family.value,
            "field": self.ctx.spec,
            "params": {k: _param_json(v) for k, v in self.params.items()},
            "forward": _map_json(self.forward),
            "inverse": _map_json(self.inverse),
            "checks": [c.to_json() for c in self.checks],
        }


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------

def _rational_x_over(L, inner, d):
    """L(x^inner) / x^d as an exponent polynomial."""
    return ep_from_fraction(ExpPoly.from_linpoly(L, inner), d)


def reciprocal_inverse_table(ctx, M):
    """Values of x^-1 / M(x^(-q-1))."""
    y = ctx.all_values()
    yi = ctx.vinv(y)
    return ctx.vmul(yi, ctx.vinv(M.eval_array(ctx.vpow(yi, ctx.q + 1))))


def _lin_identity_check(name, L, M):
    """L o M = M o L = x, symbolically."""
    ident = LinPoly.identity(L.ctx)
    ok = lp_compose(L, M) == ident and lp_compose(M, L) == ident
    return Check(name, ok)


def _check_equal(name, got, want):
    ok = got == want
    return Check(name, ok, None if ok else {"got": repr(got), "want": repr(want)})


def _inverse_of_a_xq_plus_x(a):
    """Inverse of a x^q + x, i.e. of a (x^q + a^-1 x)."""
    ctx = a.ctx
    ainv = a.inv()
    return lp_compose(lp_invert_binomial(1, ainv), LinPoly.monomial(ctx, 0, ainv))


def _half(k):
    if k % 2:
        raise PreconditionError(f"exponent {k} is odd; halving needs q odd")
    return k // 2


def rs_exponents(q, n):
    r = sum(q ** (2 * i) for i in range(0, (n - 1) // 2 + 1))
    s = sum(q ** (2 * i - 1) for i in range(1, (n - 1) // 2 + 1))
    return r, s


# ---------------------------------------------------------------------------
# Proposition: L^{-1}(x^{q+1})/x and L^{-1}(x)/x^{q+1}
# ---------------------------------------------------------------------------

def family_prop_first(a, variant=1):
    ctx = a.ctx
    q, n = ctx.q, ctx.n
    _require(a != 0, "a must be nonzero")
    _require((-a).norm() != 1, "N(-a) = 1")
    checks = []
    if variant == 1:
        B = binomial(1, a)
        Linv = lp_invert_binomial(1, a)
        checks.append(_lin_identity_check("closed-form inverse of x^q+ax", B, Linv))
        forward = _rational_x_over(Linv, q + 1, 1)
        ell = _inverse_of_a_xq_plus_x(a)
        inverse = reciprocal_inverse_table(ctx, ell)
        checks.append(is_permutation(forward))
        checks.append(verify_inverse(forward, inverse, ctx))
        return FamilyInstance(Family.PROP_FIRST, ctx, {"a": a, "variant": 1},
                              forward, inverse, checks, {"L_inverse": Linv})
    if variant != 2:
        raise ValueError("variant must be 1 or 2")
    _require(n >= 2, "n >= 2 needed for x^(q^(n-1)) + ax")
    B = binomial(n - 1, a)
    Linv = lp_invert_binomial(n - 1, a)
    checks.append(_lin_identity_check("closed-form inverse of x^(q^(n-1))+ax", B, Linv))
    forward = _rational_x_over(Linv, 1, q + 1)
    checks.append(is_permutation(forward))
    params = {"a": a, "variant": 2}
    if n % 2 and n >= 3:
        inverse = family_thm_rs(a).inverse
    else:
        # even n exercises the "arbitrary n" remark; no closed-form inverse
        params["even_n_remark"] = n % 2 == 0
        inverse = map_inverse_table(forward) if checks[-1] else None
    if inverse is not None:
        checks.append(verify_inverse(forward, inverse, ctx))
    return FamilyInstance(Family.PROP_SECOND, ctx, params, forward, inverse, checks,
                          {"L_inverse": Linv})


# ---------------------------------------------------------------------------
# Theorem (r, s): inverse of L(x)/x^{q+1} is ell(x^s)/x^r
# ---------------------------------------------------------------------------

def family_thm_rs(a):
    ctx = a.ctx
    q, n = ctx.q, ctx.n
    _require(n % 2 == 1 and n >= 3, "n must be odd and at least 3")
    _require(a != 0, "a must be nonzero")
    _require((-a).norm() != 1, "N(-a) = 1")
    r, s = rs_exponents(q, n)
    binom = binomial(n - 1, a)
    L = lp_invert_binomial(n - 1, a)
    ell_inv = LinPoly.from_terms(ctx, {n - 1: 1, 1: a})
    # x^(q^(n-1)) + a x^q = (x^(q^(n-2)) + a^(q^(n-1)) x)^q
    ell = lp_compose(lp_invert_binomial(n - 2, a.frob(n - 1)), LinPoly.monomial(ctx, n - 1))
    checks = [
        _lin_identity_check("L inverts x^(q^(n-1))+ax", binom, L),
        _lin_identity_check("ell inverts x^(q^(n-1))+ax^q", ell_inv, ell),
        _check_equal("ell matches matrix inversion", ell, lp_invert(ell_inv)),
        Check("r = 1 + q*s", r == 1 + q * s, info={"r": r, "s": s}),
    ]
    forward = _rational_x_over(L, 1, q + 1)
    inverse = _rational_x_over(ell, s, r)
    checks.append(is_permutation(forward))
    checks.append(verify_inverse(forward, inverse))
    lhs = ExpPoly.from_linpoly(binom) * ExpPoly.monomial(ctx, s)
    rhs = ExpPoly.from_linpoly(ell_inv, r)
    checks.append(maps_agree(lhs, rhs, name="L^-1(x) x^s = ell^-1(x^r)"))
    if n == 3:
        N1 = a.norm() + 1
        want_f = ExpPoly(ctx, [(q * q - q - 1, -a.frob(1)), (-1, 1), (-q, a ** (q * q + q))])
        want_g = ExpPoly(ctx, [(-q * q, a ** (q + 1)), (-1, 1), (q - q * q - 1, -a.frob(1))])
        checks.append(_check_equal("worked forward display", forward * N1, want_f))
        checks.append(_check_equal("worked inverse display", inverse * N1, want_g))
    return FamilyInstance(Family.THM_RS_INVERSE, ctx, {"a": a}, forward, inverse, checks,
                          {"L": L, "ell": ell})


# ---------------------------------------------------------------------------
# Theorem: inverse of L(x^{q+1})/x is x^{-1}/ell(x^{-q-1})
# ---------------------------------------------------------------------------

def reciprocal_hypotheses(L, beta, k):
    """Scan the second-branch hypotheses; returns (checks, ell)."""
    ctx = L.ctx
    q, n = ctx.q, ctx.n
    if k <= 0 or n % k:
        raise PreconditionError(f"k={k} must divide n={n}")
    _require(beta != 0, "beta must be nonzero")
    x = ctx.all_values()
    lx = L.eval_array(ctx.vpow(x, q + 1))
    img = ctx.vscale(ctx.vpow(lx, q + 1), beta.inv().value)
    bad = np.flatnonzero(ctx.vfrob(img, k) != img)
    checks = []
    if bad.size:
        w = int(bad[0])
        checks.append(Check("image of L(x^(q+1))^(q+1) in beta*F_(q^k)", False,
                            {"x": ctx.elem(w), "value": ctx.elem(int(ctx.vpow(lx, q + 1)[w]))}))
    else:
        checks.append(Check("image of L(x^(q+1))^(q+1) in beta*F_(q^k)", True))
    ell = lp_compose(L, LinPoly.monomial(ctx, 0, beta)).frobenius(1).scale(beta.inv())
    off = [i for i, c in enumerate(ell.coeffs) if i % k and c]
    checks.append(Check("ell is q^k-linear", not off,
                        {"index": off[0], "coeff": ell[off[0]]} if off else None))
    roots = np.flatnonzero(lx[1:] == 0)
    checks.append(Check("L(x^(q+1)) has no root in F^*", roots.size == 0,
                        {"x": ctx.elem(int(roots[0]) + 1)} if roots.size else None))
    return checks, ell


def _reciprocal_checks(L, ell):
    ctx = L.ctx
    q = ctx.q
    f = _rational_x_over(L, q + 1, 1)
    g = reciprocal_inverse_table(ctx, ell)
    f2 = _rational_x_over(ell, q + 1, 1)
    g2 = reciprocal_inverse_table(ctx, L)
    x = ctx.all_values()
    fx = f.eval_array(x)
    inner = ctx.vpow(ctx.vmul(x, ctx.vinv(L.eval_array(ctx.vpow(x, q + 1)))), q + 1)
    lhs = ctx.vmul(fx, ell.eval_array(inner))
    checks = [
        is_permutation(f, name="forward permutation"),
        verify_inverse(f, g, name="forward inverse"),
        is_permutation(f2, name="companion permutation"),
        verify_inverse(f2, g2, ctx, name="companion inverse"),
        maps_agree(lhs, ctx.vinv(x), ctx, name="f(x) ell((x/L(x^(q+1)))^(q+1)) = 1/x",
                   nonzero_only=True),
    ]
    return f, g, f2, g2, checks


def family_thm_reciprocal(branch, a=None, L=None, beta=None, k=None):
    if branch == 1:
        ctx = a.ctx
        _require(a != 0, "a must be nonzero")
        _require((-a).norm() != 1, "N(-a) = 1")
        L = lp_invert_binomial(1, a)
        ell = _inverse_of_a_xq_plus_x(a)
        checks = [
            _lin_identity_check("L inverts x^q+ax", binomial(1, a), L),
            _lin_identity_check("ell inverts ax^q+x",
                                LinPoly.from_terms(ctx, {1: a, 0: 1}), ell),
        ]
        params = {"a": a}
        family = Family.THM_RECIPROCAL_B1
    elif branch == 2:
        ctx = L.ctx
        beta = ctx.one if beta is None else beta
        hyp, ell = reciprocal_hypotheses(L, beta, k)
        for c in hyp:
            if not c:
                raise HypothesisError(c)
        checks = hyp
        params = {"L": L, "beta": beta, "k": k}
        family = Family.THM_RECIPROCAL_B2
    else:
        raise ValueError("branch must be 1 or 2")
    f, g, f2, g2, more = _reciprocal_checks(L, ell)
    return FamilyInstance(family, ctx, params, f, g, checks + more,
                          {"L": L, "ell": ell, "companion": f2, "companion_inverse": g2})


# ---------------------------------------------------------------------------
# Corollary, n = 2k
# ---------------------------------------------------------------------------

def cor_linpoly(case, b, a=None):
    ctx = b.ctx
    n = ctx.n
    k = n // 2
    if case in (1, 2):
        return LinPoly.from_terms(ctx, {n - 1: b.frob(n - 1), k - 1: b.frob(k - 1)})
    return LinPoly.from_terms(ctx, {3: a.frob(2), 2: b.frob(2), 1: a, 0: b})


def cor_preconditions(case, b, a=None):
    ctx = b.ctx
    q, n = ctx.q, ctx.n
    _require(n % 2 == 0, "n must be even")
    k = n // 2
    if case == 1:
        _require(k % 2 == 1, "case 1 needs k odd")
        _require(b != 0, "b must be nonzero")
        _require(b ** ((ctx.order - 1) // (q + 1)) != -1, "b^((q^n-1)/(q+1)) = -1")
    elif case == 2:
        _require(k % 2 == 0, "case 2 needs k even")
        _require(q % 2 == 1, "case 2 needs q odd")
        _require(b != 0 and b.is_square(), "b must be a nonzero square")
    elif case == 3:
        _require(n == 4, "case 3 needs n = 4")
        _require(q % 2 == 1, "case 3 needs q odd")
        _require(a is not None and a != 0 and a.is_square(), "a must be a nonzero square")
        _require(b != 0 and b.is_square(), "b must be a nonzero square")
        _require((a / b.frob(1)).in_subfield(2), "a b^-q not in F_(q^2)")
        _require(a.norm() != b.norm(), "N(a) = N(b)")
    else:
        raise ValueError("case must be 1, 2 or 3")


def family_cor_n2k(case, b, a=None):
    cor_preconditions(case, b, a)
    ctx = b.ctx
    L = cor_linpoly(case, b, a)
    # the image of L(x^(q+1))^(q+1) sits in F_(q^k) (cases 1, 2) or F_q (case 3)
    sub_k = ctx.n // 2 if case in (1, 2) else 1
    hyp, ell = reciprocal_hypotheses(L, ctx.one, sub_k)
    f, g, f2, g2, more = _reciprocal_checks(L, ell)
    stated = reciprocal_inverse_table(ctx, L.frobenius(1))
    checks = hyp + more + [
        maps_agree(stated, g, ctx, name="x^-1/L(x^(-q-1))^q equals reciprocal inverse"),
        verify_inverse(f, stated, name="stated inverse"),
    ]
    params = {"b": b} if a is None else {"a": a, "b": b}
    family = {1: Family.COR_N2K_CASE1, 2: Family.COR_N2K_CASE2, 3: Family.COR_N2K_CASE3}[case]
    return FamilyInstance(family, ctx, params, f, stated, checks,
                          {"L": L, "ell": ell, "companion": f2, "companion_inverse": g2})


# ---------------------------------------------------------------------------
# Proposition, n = 3: x^{q^2-q+1} + 2ax + a^2 x^{q^3-q^2+q}
# ---------------------------------------------------------------------------

def family_prop_n3_sextic(a):
    ctx = a.ctx
    q, n = ctx.q, ctx.n
    _require(n == 3, "n must be 3")
    _require(q % 2 == 1, "q must be odd")
    _require(a != 0, "a must be nonzero")
    Na = a.norm()
    _require(Na != -1, "N(a) = -1")
    q2, q3, q4 = q ** 2, q ** 3, q ** 4
    f = ExpPoly(ctx, [(q2 - q + 1, 1), (1, 2 * a), (q3 - q2 + q, a * a)])
    scale = ((Na + 1) ** 2).inv()
    inverse = ExpPoly(ctx, [
        (q2, -a ** (2 * q + 1)),
        (1, a ** (q2 + q)),
        (q, -a),
        (_half(q4 + q2), 2 * a ** (q + 1)),
        (_half(q3 + q), 1 - Na),
        (_half(q2 + 1), (Na - 1) * a.frob(1)),
    ]) * scale
    checks = [is_permutation(f), verify_inverse(f, inverse)]

    lin = ExpPoly(ctx, [(q2, 1), (q, a)])
    checks.append(maps_agree(f, ep_from_fraction(lin * lin, q2 + q - 1),
                             name="f = (x^(q^2)+ax^q)^2 / x^(q^2+q-1)"))
    x = ctx.all_values()
    fx = f.eval_array(x)
    rhs = ExpPoly(ctx, [(q2, 1), (q, a), (q2 - q + 1, a.frob(2)), (1, a ** (q2 + 1))])
    checks.append(maps_agree(ctx.vpow(fx, _half(q2 + 1)), rhs, ctx,
                             name="f^((q^2+1)/2) expansion"))
    g = ExpPoly(ctx, [(1, 1), (_half(q2 + 1), -a.frob(2).inv()), (_half(q3 + q), -a)])
    collapse = lin * (-a.frob(2).inv() * (Na + 1))
    checks.append(maps_agree(g.eval_array(fx), collapse, ctx,
                             name="g(f(x)) = -a^(-q^2)(N(a)+1)(x^(q^2)+ax^q)"))
    lin_map = LinPoly.from_terms(ctx, {2: 1, 1: a}).scale(-a.frob(2).inv() * (Na + 1))
    lin_inv = LinPoly.from_terms(ctx, {2: -a ** (2 * q + 1), 0: a ** (q2 + q), 1: -a}).scale(scale)
    checks.append(_lin_identity_check("linear part inverse", lin_map, lin_inv))
    return FamilyInstance(Family.PROP_N3_SEXTIC, ctx, {"a": a}, f, inverse, checks)


# ---------------------------------------------------------------------------
# Example e0 (n = 3)
# ---------------------------------------------------------------------------

E0_VARIANTS = ("base", "qth-power", "half-exponent")


def family_e0(a, variant="base"):
    ctx = a.ctx
    q, n = ctx.q, ctx.n
    if variant not in E0_VARIANTS:
        raise ValueError(f"variant must be one of {E0_VARIANTS}")
    _require(n == 3, "n must be 3")
    if variant == "half-exponent":
        _require(q % 2 == 1, "half-exponent variant needs q odd")
    _require(a != 0, "a must be nonzero")
    Na = a.norm()
    _require(Na != -1, "N(a) = -1")
    q2, q3 = q * q, q ** 3
    n1 = ctx.order - 1

    base = ExpPoly(ctx, [(q2, 1), (q2 + q - 1, -a.frob(2)), (q, a ** (q2 + q))])
    Linv = lp_invert_binomial(1, a)
    checks = [_check_equal("base = (N(a)+1) L^-1(x^(q+1))/x",
                           _rational_x_over(Linv, q + 1, 1) * (Na + 1), base)]
    ell = _inverse_of_a_xq_plus_x(a)
    h_inv = reciprocal_inverse_table(ctx, ell)
    y = ctx.all_values()
    base_inv = h_inv[ctx.vscale(y, (Na + 1).inv().value)]
    forward, inverse = base, base_inv
    params = {"a": a, "variant": variant}
    if variant != "base":
        qth = ExpPoly(ctx, [(1, 1), (q2 - q + 1, -a), (q2, a ** (q2 + 1))])
        checks.append(_check_equal("q-th power display", base.frobenius(1), qth))
        forward, inverse = qth, base_inv[ctx.vfrob(y, n - 1)]
    if variant == "half-exponent":
        m = _half(q3 + q)
        half = ExpPoly(ctx, [(m, 1), (1, -a), (_half(q2 + 1), a ** (q2 + 1))])
        checks.append(_check_equal("half-exponent display", qth.subs_power(m), half))
        checks.append(Check("gcd((q^2+1)/2, q^3-1) = 1", math.gcd(_half(q2 + 1), q3 - 1) == 1))
        checks.append(Check("(q^2+1)/2 (q^2-q+1) q = 1 mod q^3-1",
                            _half(q2 + 1) * (q2 - q + 1) * q % (q3 - 1) == 1))
        m_inv = pow(m, -1, n1)
        forward, inverse = half, ctx.vpow(inverse, m_inv)
    checks.append(is_permutation(forward))
    checks.append(verify_inverse(forward, inverse))
    return FamilyInstance(Family.E0_TRINOMIAL, ctx, params, forward, inverse, checks)


# ---------------------------------------------------------------------------
# Corollary with x^s ell'(x)^q = alpha h^{s0} + beta h^{s0 q^2}
# ---------------------------------------------------------------------------

@dataclass
class CorollaryReport:
    checks: list
    hypothesis: bool
    conclusion: bool | None

    @property
    def violated(self):
        return self.hypothesis and self.conclusion is False

    @property
    def ok(self):
        return not self.violated

    def to_json(self):
        return {"hypothesis": self.hypothesis, "conclusion": self.conclusion,
                "checks": [c.to_json() for c in self.checks]}


def check_cor_s3(ell, h, alpha, beta, s0, scan_bound=None):
    from .cyclo import _require_odd_qn, lemma_s

    ctx = ell.ctx
    _require_odd_qn(ctx)
    check_scan_bound(ctx, scan_bound)
    q = ctx.q
    n1 = ctx.order - 1
    s = lemma_s(ctx)
    hv = values_of(h, ctx)
    x = ctx.all_values()
    lhs = ctx.vmul(ctx.vpow(x, s), ctx.vfrob(transpose(ell).eval_array(x), 1))
    hs0 = ctx.vpow(hv, s0)
    rhs = ctx.vadd(ctx.vscale(hs0, alpha.value), ctx.vscale(ctx.vpow(hs0, q * q), beta.value))
    checks = [
        is_permutation(hv, ctx, name="h permutation"),
        Check("gcd(s0, q^n-1) = gcd(1+s, q^n-1)", math.gcd(s0, n1) == math.gcd(1 + s, n1)),
        Check("N(alpha) + N(beta) != 0", alpha.norm() + beta.norm() != 0),
        maps_agree(lhs, rhs, ctx, name="x^s ell'(x)^q = alpha h^s0 + beta h^(s0 q^2)"),
    ]
    hypothesis = all(c.ok for c in checks)
    conclusion = None
    if hypothesis:
        concl = is_permutation(ep_from_fraction(ell, q + 1), name="ell(x)/x^(q+1) permutation")
        checks.append(concl)
        conclusion = concl.ok
    return CorollaryReport(checks, hypothesis, conclusion)


# ---------------------------------------------------------------------------
# Example e1 (n = 3, q odd)
# ---------------------------------------------------------------------------

def e1_linpolys(a):
    ctx = a.ctx
    q = ctx.q
    Na = a.norm()
    ell = LinPoly.from_terms(ctx, {2: Na + 1, 1: 2 * a.frob(1), 0: 2 * a ** (q + 1)})
    h = LinPoly.from_terms(ctx, {2: a ** (q * q + 1), 1: a.frob(2), 0: 1})
    return ell, h


def family_e1(a):
    ctx = a.ctx
    q, n = ctx.q, ctx.n
    _require(n == 3, "n must be 3")
    _require(q % 2 == 1, "q must be odd")
    _require(a != 0, "a must be nonzero")
    Na = a.norm()
    _require(Na * Na != 1, "N(a)^2 = 1")
    q2 = q * q
    ell, h = e1_linpolys(a)
    ellt = transpose(ell)
    f1 = _rational_x_over(ell, 1, q + 1)
    f2 = _rational_x_over(ellt, q + 1, 1)
    checks = [
        _check_equal("ell(x)/x^(q+1) display", f1,
                     ExpPoly(ctx, [(q2 - q - 1, Na + 1), (-1, 2 * a.frob(1)),
                                   (-q, 2 * a ** (q + 1))])),
        _check_equal("ell'(x^(q+1))/x display", f2,
                     ExpPoly(ctx, [(q2 + q - 1, Na + 1), (q2, 2 * a), (q, 2 * a ** (q + 1))])),
        is_permutation(f1, name="ell(x)/x^(q+1) permutation"),
        is_permutation(f2, name="ell'(x^(q+1))/x permutation"),
        is_permutation(h, name="h permutation"),
    ]
    x = ctx.all_values()
    hv = h.eval_array(x)
    lhs = ctx.vsub(ctx.vscale(ctx.vpow(hv, 2 * q), (a ** (2 * q2)).value), ctx.vpow(hv, 2))
    rhs = ctx.vscale(ctx.vmul(x, ctx.vfrob(ellt.eval_array(x), 2)), (Na - 1).value)
    checks.append(maps_agree(lhs, rhs, ctx, name="a^(2q^2) h^(2q) - h^2 = (N(a)-1) x ell'(x)^(q^2)"))
    ell_inv = LinPoly.from_terms(ctx, {2: a ** (q2 + q), 1: (1 - Na) / 2, 0: -a.frob(2)}) \
        .scale(2 / (1 - Na * Na))
    checks.append(_lin_identity_check("displayed inverse of ell", ell, ell_inv))
    checks.append(Check("inverse of ell is not a binomial",
                        sum(1 for c in ell_inv.coeffs if c) == 3))
    cor = check_cor_s3(ell, h, alpha=a ** (2 * q) / (Na - 1), beta=-(Na - 1).inv(), s0=2)
    checks.extend(cor.checks)
    checks.append(Check("corollary hypothesis holds", cor.hypothesis))
    inverse = map_inverse_table(f1) if checks[2] else None
    extras = {"ell": ell, "h": h, "ell_inverse": ell_inv, "companion": f2}
    if checks[3]:
        extras["companion_inverse"] = map_inverse_table(f2)
    return FamilyInstance(Family.E1_FAMILY, ctx, {"a": a}, f1, inverse, checks, extras)


# ---------------------------------------------------------------------------
# q = 4^k, n = 3 example with L(l(x)) = x^{q^2}
# ---------------------------------------------------------------------------

def f4_primitive_elements(ctx):
    """The two elements of order 3 (primitive elements of F_4), by packed value."""
    third = (ctx.order - 1) // 3
    g = FieldElem(ctx, ctx.generator)
    return sorted([g ** third, g ** (2 * third)], key=lambda e: e.value)


def family_f4k(k, alpha_choice=0):
    _require(k >= 1, "k must be positive")
    ctx = make_field(2, 2 * k, 3)
    q = ctx.q
    q2, q3 = q * q, q ** 3
    alpha = f4_primitive_elements(ctx)[alpha_choice]
    L = LinPoly.from_terms(ctx, {2: 1, 1: 1, 0: alpha * alpha})
    ell = LinPoly.from_terms(ctx, {2: alpha, 1: 1, 0: 1})
    checks = [
        _check_equal("L(ell(x)) = x^(q^2)", lp_compose(L, ell), LinPoly.monomial(ctx, 2)),
        Check("(q/2)(q^2+q-1)(q+1) = 1 mod q^3-1",
              (q // 2) * (q2 + q - 1) * (q + 1) % (q3 - 1) == 1),
        Check("gcd(q+1, q^3-1) = 1", math.gcd(q + 1, q3 - 1) == 1),
    ]
    x = ctx.all_values()
    checks.append(maps_agree(L.eval_array(ell.eval_array(x)), ctx.vfrob(x, 2), ctx,
                             name="L(ell(x)) = x^(q^2) pointwise"))
    nested = L.eval_array(ctx.vpow(L.eval_array(x), q2 + q))
    target = ExpPoly(ctx, [(2, alpha * alpha), (q2 + q, alpha)])
    checks.append(maps_agree(nested, target, ctx,
                             name="L(L(x)^(q^2+q)) = alpha^2 x^2 + alpha x^(q^2+q)"))
    checks.append(is_permutation(target, name="alpha^2 x^2 + alpha x^(q^2+q) permutation"))
    checks.append(is_permutation(ExpPoly(ctx, [(1, alpha), ((q2 + q) // 2, alpha * alpha)]),
                                 name="alpha x + alpha^2 x^((q^2+q)/2) permutation"))
    shifted = ExpPoly(ctx, [(q2 + q - 1, alpha), (1, alpha * alpha)])
    checks.append(maps_agree(shifted, ctx.vmul(nested, ctx.vinv(x)), ctx,
                             name="alpha x^(q^2+q-1) + alpha^2 x = L(L(x)^(q^2+q))/x"))
    forward = rational_values(L, ell)
    lv = ell.eval_array(x)
    rewritten = ctx.vmul(L.eval_array(ctx.vpow(L.eval_array(lv), q2 + q)), ctx.vinv(lv))
    checks.append(maps_agree(forward, rewritten, ctx,
                             name="L(x^(q+1))/ell(x) = L(L(ell(x))^(q^2+q))/ell(x)"))
    perm = is_permutation(forward, ctx, name="L(x^(q+1))/ell(x) permutation")
    checks.append(perm)
    inverse = map_inverse_table(forward, ctx) if perm else None
    return FamilyInstance(Family.F4K_EXAMPLE, ctx,
                          {"k": k, "alpha_choice": alpha_choice, "alpha": alpha},
                          forward, inverse, checks, {"L": L, "ell": ell})


# ---------------------------------------------------------------------------
# Closing list of families
# ---------------------------------------------------------------------------

def _relabel(inst, family, **extra_params):
    inst.family = family
    inst.params.update(extra_params)
    return inst


def family_conclusion(which, b=None, a=None):
    if which == 1:
        return _relabel(family_prop_first(a, 1), Family.CONCLUSION_1)
    if which == 2:
        ctx = a.ctx
        inst = family_thm_rs(a) if ctx.n % 2 and ctx.n >= 3 else family_prop_first(a, 2)
        return _relabel(inst, Family.CONCLUSION_2)
    if which == 3:
        ctx = b.ctx
        q, n = ctx.q, ctx.n
        _require(n % 2 == 0, "n must be even")
        k = n // 2
        case = 1 if k % 2 else 2
        first = family_cor_n2k(case, b.frob(1))
        second = family_cor_n2k(case, b)
        disp1 = ExpPoly(ctx, [(q ** (n - 1), b), (q ** k + q ** (k - 1) - 1, b.frob(k))])
        disp2 = ExpPoly(ctx, [(q ** (k + 1) + q ** k - 1, b.frob(k)), (q, b)])
        checks = first.checks + second.checks + [
            _check_equal("first display = corollary form at b^q", first.forward, disp1),
            _check_equal("second display = companion form", second.extras["companion"], disp2),
        ]
        return FamilyInstance(Family.CONCLUSION_3, ctx, {"b": b, "case": case}, disp1,
                              first.inverse, checks,
                              {"second": disp2,
                               "second_inverse": second.extras["companion_inverse"]})
    if which == 4:
        inst = family_cor_n2k(3, b, a)
        ctx = b.ctx
        q = ctx.q
        disp = ExpPoly(ctx, [(q ** 3, a.frob(2)), (q ** 3 + q * q - 1, b.frob(2)),
                             (q * q + q - 1, a), (q, b)])
        inst.checks.append(_check_equal("display", inst.forward, disp))
        return _relabel(inst, Family.CONCLUSION_4)
    raise ValueError("which must be 1..4")


# ---------------------------------------------------------------------------
# Theorem checkers on arbitrary L
# ---------------------------------------------------------------------------

@dataclass
class TheoremReport:
    theorem: str
    n: int
    predicates: dict
    forward_ok: bool
    converse_holds: bool | None
    converse_asserted: bool

    @property
    def ok(self):
        return self.forward_ok and (self.converse_holds is not False or not self.converse_asserted)

    def to_json(self):
        return {"theorem": self.theorem, "n": self.n, "predicates": self.predicates,
                "forward_ok": self.forward_ok, "converse_holds": self.converse_holds,
                "converse_asserted": self.converse_asserted, "ok": self.ok}


def check_theorem1(L, scan_bound=None):
    ctx = L.ctx
    check_scan_bound(ctx, scan_bound)
    q = ctx.q
    p1 = is_permutation(_rational_x_over(L, 1, q + 1)).ok
    p2 = is_permutation(_rational_x_over(transpose(L), q + 1, 1)).ok
    return TheoremReport("theorem1", ctx.n, {"P1": p1, "P2": p2},
                         forward_ok=(not p1) or p2,
                         converse_holds=(not p2) or p1,
                         converse_asserted=ctx.n % 2 == 1)


def check_theorem2(L, scan_bound=None):
    ctx = L.ctx
    check_scan_bound(ctx, scan_bound)
    q = ctx.q
    p1 = is_permutation(_rational_x_over(L, 1, q + 1)).ok
    pl = lp_rank(L) == ctx.n
    p3 = False
    if pl:
        p3 = is_permutation(_rational_x_over(lp_invert(L), q + 1, 1)).ok
    return TheoremReport("theorem2", ctx.n, {"P1": p1, "L": pl, "P3": p3},
                         forward_ok=(not p1) or (pl and p3),
                         converse_holds=(not (pl and p3)) or p1,
                         converse_asserted=ctx.n % 2 == 1)


DEFAULT_SEED = 20240611


def theorem_suite(ctx, trials, seed=DEFAULT_SEED):
    """Seeded random L; yields (L, theorem1 report, theorem2 report)."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        L = random_linpoly(ctx, rng)
        yield L, check_theorem1(L), check_theorem2(L)


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

def _candidates(family, ctx, fixed):
    nz = list(ctx.nonzero())
    if family in (Family.E0_TRINOMIAL,):
        variant = fixed.get("variant", "base")
        return [((family_e0, (a, variant)), {"a": a, "variant": variant}) for a in nz]
    if family is Family.PROP_FIRST:
        return [((family_prop_first, (a, 1)), {"a": a}) for a in nz]
    if family is Family.PROP_SECOND:
        return [((family_prop_first, (a, 2)), {"a": a}) for a in nz]
    if family is Family.THM_RS_INVERSE:
        return [((family_thm_rs, (a,)), {"a": a}) for a in nz]
    if family is Family.THM_RECIPROCAL_B1:
        return [((family_thm_reciprocal, (1, a)), {"a": a}) for a in nz]
    if family in (Family.COR_N2K_CASE1, Family.COR_N2K_CASE2):
        case = 1 if family is Family.COR_N2K_CASE1 else 2
        return [((family_cor_n2k, (case, b)), {"b": b}) for b in nz]
    if family is Family.COR_N2K_CASE3:
        out = []
        for b in nz:
            for a in nz:
                out.append(((family_cor_n2k, (3, b, a)), {"a": a, "b": b}))
        return out
    if family is Family.PROP_N3_SEXTIC:
        return [((family_prop_n3_sextic, (a,)), {"a": a}) for a in nz]
    if family is Family.E1_FAMILY:
        return [((family_e1, (a,)), {"a": a}) for a in nz]
    if family is Family.F4K_EXAMPLE:
        if not (ctx.p == 2 and ctx.e % 2 == 0 and ctx.n == 3):
            return []
        return [((family_f4k, (ctx.e // 2, c)), {"alpha_choice": c}) for c in (0, 1)]
    if family in (Family.CONCLUSION_1, Family.CONCLUSION_2):
        which = 1 if family is Family.CONCLUSION_1 else 2
        return [((family_conclusion, (which,), {"a": a}), {"a": a}) for a in nz]
    if family is Family.CONCLUSION_3:
        return [((family_conclusion, (3,), {"b": b}), {"b": b}) for b in nz]
    if family is Family.CONCLUSION_4:
        out = []
        for b in nz:
            for a in nz:
                out.append(((family_conclusion, (4,), {"a": a, "b": b}), {"a": a, "b": b}))
        return out
    raise ValueError(f"{family.value} has no enumerable parameter space")


def _build(job):
    fn, args, *kw = job
    try:
        return fn(*args, **(kw[0] if kw else {}))
    except (PreconditionError, SingularError):
        return None


def enumerate_family(family, ctx, filter=None, threads=1, scan_bound=None, **fixed):
    """Every instance whose preconditions hold, verified or not, in
    parameter-enumeration order regardless of ``threads``."""
    family = Family(family)
    check_scan_bound(ctx, scan_bound)
    jobs = [job for job, params in _candidates(family, ctx, fixed)
            if filter is None or filter(params)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_build, jobs))
    else:
        results = map(_build, jobs)
    for inst in results:
        if inst is not None:
            yield inst


def search_family(family, ctx, filter=None, threads=1, scan_bound=None, **fixed):
    """Verified instances only."""
    for inst in enumerate_family(family, ctx, filter, threads, scan_bound, **fixed):
        if inst.ok:
            yield inst


def build_instance(family, ctx, params):
    """Construct one instance from decoded parameters (FieldElem / int / str)."""
    family = Family(family)
    a, b = params.get("a"), params.get("b")
    if family is Family.E0_TRINOMIAL:
        return family_e0(a, params.get("variant", "base"))
    if family is Family.PROP_FIRST:
        return family_prop_first(a, 1)
    if family is Family.PROP_SECOND:
        return family_prop_first(a, 2)
    if family is Family.THM_RS_INVERSE:
        return family_thm_rs(a)
    if family is Family.THM_RECIPROCAL_B1:
        return family_thm_reciprocal(1, a=a)
    if family is Family.THM_RECIPROCAL_B2:
        return family_thm_reciprocal(2, L=params["L"], beta=params.get("beta"),
                                     k=int(params["k"]))
    if family is Family.COR_N2K_CASE1:
        return family_cor_n2k(1, b)
    if family is Family.COR_N2K_CASE2:
        return family_cor_n2k(2, b)
    if family is Family.COR_N2K_CASE3:
        return family_cor_n2k(3, b, a)
    if family is Family.PROP_N3_SEXTIC:
        return family_prop_n3_sextic(a)
    if family is Family.E1_FAMILY:
        return family_e1(a)
    if family is Family.F4K_EXAMPLE:
        k = int(params["k"])
        if ctx is not None and ctx.key != (2, 2 * k, 3):
            raise PreconditionError(f"F4K_EXAMPLE with k={k} lives over p=2,e={2 * k},n=3")
        return family_f4k(k, int(params.get("alpha_choice", 0)))
    which = int(family.value[-1])
    return family_conclusion(which, b=b, a=a)


def decode_params(ctx, params):
    """Inverse of the report encoding of parameters."""
    out = {}
    for name, v in params.items():
        if isinstance(v, list):
            out[name] = ctx(v)
        elif isinstance(v, dict) and "linpoly" in v:
            out[name] = LinPoly.from_json(ctx, v["linpoly"])
        else:
            out[name] = v
    return out


def instance_from_report(report):
    """Rebuild (and so re-verify) the instance a report describes."""
    from .gf import parse_field_spec

    ctx = parse_field_spec(report["field"])
    return build_instance(report["family"], ctx, decode_params(ctx, report["params"]))


@dataclass
class AuditResult:
    family: Family
    field: str
    valid: int
    verified: int
    failures: list

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {"family": self.family.value, "field": self.field, "valid": self.valid,
                "verified": self.verified, "failures": self.failures}


def audit_family(family, ctx, filter=None, scan_bound=None, **fixed):
    """Like :func:`search_family` but counts precondition-valid tuples and
    keeps the reports of any instance that fails verification."""
    family = Family(family)
    check_scan_bound(ctx, scan_bound)
    valid = verified = 0
    failures = []
    for job, params in _candidates(family, ctx, fixed):
        if filter is not None and not filter(params):
            continue
        inst = _build(job)
        if inst is None:
            continue
        valid += 1
        if inst.ok:
            verified += 1
        else:
            failures.append(inst.to_report())
    return AuditResult(family, ctx.spec, valid, verified, failures)
