"""Exact character sums in Z[zeta_p].

Values of additive characters, Gauss sums and Weil sums are kept as
:class:`CycInt`, an element of Z[zeta_p] in the basis zeta^0 .. zeta^(p-2).
Direct summations reduce to counting how often each absolute trace value
occurs, so every sum is computed with integers only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldElem, FieldError
from .linpoly import LinPoly, lambda_poly, transpose


class ParityError(FieldError):
    """Operation needs q (and possibly n) odd."""


class DivisibilityError(ArithmeticError):
    """M_t was not divisible by q - 1; signals an implementation bug."""


class CycInt:
    __slots__ = ("p", "vec")

    def __init__(self, p, vec):
        vec = [int(v) for v in vec]
        if len(vec) == p:
            top = vec.pop()
            vec = [v - top for v in vec]
        if len(vec) != p - 1:
            raise ValueError(f"need {p - 1} or {p} coefficients, got {len(vec)}")
        self.p = p
        self.vec = tuple(vec)

    @classmethod
    def from_exponent_counts(cls, p, counts):
        """sum_t counts[t] * zeta^t for t in 0..p-1."""
        counts = [int(c) for c in counts]
        counts += [0] * (p - len(counts))
        return cls(p, counts)

    @classmethod
    def zeta_power(cls, p, t):
        counts = [0] * p
        counts[t % p] = 1
        return cls(p, counts)

    @classmethod
    def integer(cls, p, k):
        return cls(p, [k] + [0] * (p - 2))

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError("different cyclotomic rings")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, [a + b for a, b in zip(self.vec, o.vec)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.vec])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        prod = [0] * p
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(o.vec):
                    if b:
                        prod[(i + j) % p] += a * b
        return CycInt(p, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result, base = CycInt.integer(self.p, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self):
        """Image under zeta -> zeta^-1."""
        p = self.p
        counts = [0] * p
        for i, a in enumerate(self.vec):
            counts[(-i) % p] += a
        return CycInt(p, counts)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.vec == o.vec

    def __hash__(self):
        return hash((self.p, self.vec))

    def __repr__(self):
        terms = [f"{a}*z^{i}" if i else str(a) for i, a in enumerate(self.vec) if a]
        return f"CycInt[p={self.p}](" + (" + ".join(terms) or "0") + ")"

    def to_json(self):
        return {"p": self.p, "coeffs": [str(a) for a in self.vec]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["p"]), [int(a) for a in data["coeffs"]])


def _require_odd_q(ctx):
    if ctx.q % 2 == 0:
        raise ParityError(f"q={ctx.q} must be odd")


def _require_odd_qn(ctx):
    if ctx.q % 2 == 0 or ctx.n % 2 == 0:
        raise ParityError(f"q={ctx.q} and n={ctx.n} must both be odd")


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

def chi(a):
    """Canonical additive character zeta_p^(Tr_{F_{q^n}/F_p}(a))."""
    return CycInt.zeta_power(a.ctx.p, a.ctx.abs_trace(a.value))


def chi_sum(ctx, values, weights=None):
    """sum_i w_i chi(values[i]) with integer weights, exactly."""
    tr = ctx.vabs_trace(np.asarray(values, dtype=np.int64).ravel())
    if weights is None:
        counts = np.bincount(tr, minlength=ctx.p)
    else:
        w = np.asarray(weights, dtype=np.int64).ravel()
        counts = [int(w[tr == t].sum()) for t in range(ctx.p)]
    return CycInt.from_exponent_counts(ctx.p, [int(c) for c in counts])


def eta(a):
    """Quadratic character with eta(0) = 0."""
    ctx = a.ctx
    _require_odd_q(ctx)
    if a.value == 0:
        return 0
    return 1 if ctx.pow(a.value, (ctx.order - 1) // 2) == 1 else -1


def veta(ctx, values):
    _require_odd_q(ctx)
    values = np.asarray(values, dtype=np.int64)
    h = ctx.vpow(values, (ctx.order - 1) // 2)
    return np.where(values == 0, 0, np.where(h == 1, 1, -1))


def eta_base(c):
    """Quadratic character of F_q evaluated at c in F_q."""
    ctx = c.ctx
    _require_odd_q(ctx)
    if c.value == 0:
        return 0
    if c.frob(1) != c:
        raise FieldError("element is not in F_q")
    return 1 if ctx.pow(c.value, (ctx.q - 1) // 2) == 1 else -1


def psi(c):
    """Canonical additive character of F_q: zeta_p^(Tr_{F_q/F_p}(c))."""
    ctx = c.ctx
    if c.frob(1) != c:
        raise FieldError("element is not in F_q")
    t, x = 0, c.value
    for _ in range(ctx.e):
        t = ctx.add(t, x)
        x = ctx.pow(x, ctx.p)
    return CycInt.zeta_power(ctx.p, t)


def gauss_sum(ctx):
    """G = sum_{x != 0} eta(x) chi(x) over F_{q^n}."""
    xs = ctx.all_values()[1:]
    return chi_sum(ctx, xs, veta(ctx, xs))


def base_field_elements(ctx):
    return [x for x in ctx.elements() if x.frob(1) == x]


def gauss_sum_base(ctx):
    """G_1 = sum_{c in F_q^*} eta_1(c) psi(c)."""
    _require_odd_q(ctx)
    total = CycInt.integer(ctx.p, 0)
    for c in base_field_elements(ctx):
        if c.value:
            total = total + psi(c) * eta_base(c)
    return total


# ---------------------------------------------------------------------------
# Weil sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeilParams:
    A: FieldElem
    B: FieldElem

    def __post_init__(self):
        if self.A.ctx.key != self.B.ctx.key:
            raise FieldError("A and B from different fields")
        if self.A.value == 0:
            raise ValueError("A must be nonzero")

    @property
    def ctx(self):
        return self.A.ctx


def weil_sum_direct(A, B):
    """sum_w chi(A w^(q+1) + B w) over all of F_{q^n}; A = 0 allowed."""
    ctx = A.ctx
    w = ctx.all_values()
    arg = ctx.vadd(ctx.vscale(ctx.vpow(w, ctx.q + 1), A.value), ctx.vscale(w, B.value))
    return chi_sum(ctx, arg)


def lemma_s(ctx):
    """s = sum_{i=1}^{(n-1)/2} q^(2i)."""
    return sum(ctx.q ** (2 * i) for i in range(1, (ctx.n - 1) // 2 + 1))


def weil_theta(A, B):
    """theta = lambda(A^s B^q) / (2 A^(1+s))."""
    ctx = A.ctx
    s = lemma_s(ctx)
    lam = lambda_poly(ctx)
    return lam(A ** s * B.frob(1)) / (2 * A ** (1 + s))


def weil_sum_closed(A, B, G=None):
    """eta(A) G chi(-lambda(A^s B^q)^(q+1) / (4 N(A))), q and n odd."""
    ctx = A.ctx
    _require_odd_qn(ctx)
    WeilParams(A, B)
    if G is None:
        G = gauss_sum(ctx)
    s = lemma_s(ctx)
    lam = lambda_poly(ctx)(A ** s * B.frob(1))
    arg = -(lam ** (ctx.q + 1)) / (4 * A.norm())
    return G * chi(arg) * eta(A)


# ---------------------------------------------------------------------------
# Root counts for L(x^{q+1}) / ell(x)
# ---------------------------------------------------------------------------

def rational_values(L, ell):
    """Value table of L(x^(q+1)) / ell(x) with 1/0 = 0."""
    ctx = L.ctx
    x = ctx.all_values()
    num = L.eval_array(ctx.vpow(x, ctx.q + 1))
    return ctx.vmul(num, ctx.vinv(ell.eval_array(x)))


def count_roots_Nt(L, ell, t):
    """Number of x with L(x^(q+1))/ell(x) + t = 0."""
    ctx = L.ctx
    vals = rational_values(L, ell)
    return int(np.count_nonzero(vals == ctx.neg(ctx(t).value)))


def _mt_values(L, ell, t):
    """Tr(lambda(L'(x)^s ell'(t x)^q)^(q+1)) for x in F^*."""
    ctx = L.ctx
    s = lemma_s(ctx)
    Lt, ellt, lam = transpose(L), transpose(ell), lambda_poly(ctx)
    x = ctx.all_values()[1:]
    inner = ctx.vmul(ctx.vpow(Lt.eval_array(x), s),
                     ctx.vfrob(ellt.eval_array(ctx.vscale(x, ctx(t).value)), 1))
    return ctx.vtrace_rel(ctx.vpow(lam.eval_array(inner), ctx.q + 1))


def count_roots_Mt(L, ell, t):
    """Number of roots in F^* of Tr(lambda(L'(x)^s ell'(tx)^q)^(q+1))."""
    ctx = L.ctx
    _require_odd_qn(ctx)
    if ctx(t).value == 0:
        raise ValueError("t must be nonzero")
    mt = int(np.count_nonzero(_mt_values(L, ell, t) == 0))
    if mt % (ctx.q - 1):
        raise DivisibilityError(f"M_t={mt} not divisible by q-1={ctx.q - 1}")
    return mt


def parity_criterion(L, ell):
    """True iff M_t/(q-1) is even for every t != 0; also returns the M_t."""
    ctx = L.ctx
    counts = {}
    for t in ctx.nonzero():
        counts[t.value] = count_roots_Mt(L, ell, t)
    holds = all((m // (ctx.q - 1)) % 2 == 0 for m in counts.values())
    return holds, counts
