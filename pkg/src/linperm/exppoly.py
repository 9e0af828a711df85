"""Sparse polynomials treated as maps of F_{q^n}, and permutation checks.

Exponents follow the x^{q^n} = x convention: a positive exponent is
replaced by its representative in [1, q^n - 1], so x^{-1} is x^{q^n - 2}
and every non-constant term sends 0 to 0.

Maps are compared and composed through value tables: numpy arrays
``t`` with ``t[v]`` the image of the element with packed value ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import FieldElem, FieldMismatchError
from .linpoly import LinPoly

SCAN_BOUND = 1 << 20


class ScanBoundError(RuntimeError):
    pass


class NotAPermutationError(ValueError):
    pass


@dataclass
class Check:
    """Outcome of one verification step; witness materialises a failure."""

    name: str
    ok: bool
    witness: dict | None = None
    info: dict | None = field(default=None)

    def __bool__(self):
        return self.ok

    def to_json(self):
        out = {"name": self.name, "pass": bool(self.ok)}
        if self.witness is not None:
            out["witness"] = {k: _json_value(v) for k, v in self.witness.items()}
        if self.info is not None:
            out["info"] = {k: _json_value(v) for k, v in self.info.items()}
        return out


def _json_value(v):
    if isinstance(v, FieldElem):
        return v.to_json()
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    return v


def check_scan_bound(ctx, bound=None):
    bound = SCAN_BOUND if bound is None else bound
    if ctx.order > bound:
        raise ScanBoundError(f"exhaustive scan of {ctx.order} elements exceeds bound {bound}")


def reduce_exponent(order, e):
    if e == 0:
        return 0
    return (e - 1) % (order - 1) + 1


class ExpPoly:
    """sum c * x^e as a map; terms sorted by exponent, no zero coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=()):
        acc = {}
        for e, c in terms:
            e = reduce_exponent(ctx.order, int(e))
            c = ctx(c).value
            acc[e] = ctx.add(acc.get(e, 0), c)
        self.ctx = ctx
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def monomial(cls, ctx, e, c=1):
        return cls(ctx, [(e, c)])

    @classmethod
    def from_linpoly(cls, L, inner=1):
        """L(x^inner) as an exponent polynomial."""
        q = L.ctx.q
        return cls(L.ctx, [(inner * q ** i, FieldElem(L.ctx, a))
                           for i, a in enumerate(L.coeffs) if a])

    def items(self):
        return [(e, FieldElem(self.ctx, c)) for e, c in self.terms]

    def __call__(self, x):
        ctx = self.ctx
        x = ctx(x).value
        acc = 0
        for e, c in self.terms:
            acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
        return FieldElem(ctx, acc)

    def eval_array(self, xs):
        ctx = self.ctx
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros_like(xs)
        for e, c in self.terms:
            out = ctx.vadd(out, ctx.vscale(ctx.vpow(xs, e), c))
        return out

    def values(self):
        return self.eval_array(self.ctx.all_values())

    def _same(self, other):
        if other.ctx.key != self.ctx.key:
            raise FieldMismatchError(f"{other.ctx} vs {self.ctx}")

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        self._same(other)
        return ExpPoly(self.ctx, self.items() + other.items())

    def __neg__(self):
        return ExpPoly(self.ctx, [(e, -c) for e, c in self.items()])

    def __sub__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            self._same(other)
            return ExpPoly(self.ctx, [(e1 + e2, c1 * c2) for e1, c1 in self.items()
                                      for e2, c2 in other.items()])
        if isinstance(other, (FieldElem, int)):
            c = self.ctx(other)
            return ExpPoly(self.ctx, [(e, c * a) for e, a in self.items()])
        return NotImplemented

    __rmul__ = __mul__

    def times_monomial(self, d):
        """Multiply by x^d; negative d divides, with 1/x = x^(q^n - 2)."""
        n1 = self.ctx.order - 1
        out = []
        for e, c in self.items():
            if d < 0:
                # x^e * (x^(q^n-2))^|d|; keeps 0 -> 0 for the divided term
                out.append((e + (-d) * (n1 - 1), c))
            else:
                out.append((e + d, c))
        return ExpPoly(self.ctx, out)

    def subs_power(self, k):
        """f(x^k)."""
        n1 = self.ctx.order - 1
        if k < 0:
            k = (-k) * (n1 - 1)
        return ExpPoly(self.ctx, [(e * k if e else 0, c) for e, c in self.items()])

    def frobenius(self, j=1):
        """f(x)^(q^j)."""
        qj = self.ctx.q ** (j % self.ctx.n)
        return ExpPoly(self.ctx, [(e * qj, c.frob(j)) for e, c in self.items()])

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.ctx.key == other.ctx.key and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.key, self.terms))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"{self.ctx.to_coeffs(c)}*x^{e}" for e, c in self.terms)
        return f"ExpPoly({body or '0'})"

    def to_json(self):
        return [{"exp": str(e), "coeff": self.ctx.to_coeffs(c)} for e, c in self.terms]

    @classmethod
    def from_json(cls, ctx, data):
        return cls(ctx, [(int(t["exp"]), ctx(list(t["coeff"]))) for t in data])


def ep_eval(f, x):
    return f(x)


def ep_from_fraction(numer, denom):
    """numer / denom for a monomial denominator c*x^d (int d means x^d)."""
    if isinstance(numer, LinPoly):
        numer = ExpPoly.from_linpoly(numer)
    ctx = numer.ctx
    if isinstance(denom, int):
        denom = ExpPoly.monomial(ctx, denom)
    if len(denom.terms) != 1:
        raise ValueError("denominator must be a single monomial")
    (d, c), = denom.items()
    if d == 0:
        return numer * c.inv()
    n1 = ctx.order - 1
    # multiply by x^(q^n - 1 - d)
    return ExpPoly(ctx, [(e + n1 - d, a / c) for e, a in numer.items()])


# ---------------------------------------------------------------------------
# Maps as value tables
# ---------------------------------------------------------------------------

def values_of(f, ctx=None, scan_bound=None):
    """Value table of an ExpPoly, LinPoly, table, or array callable."""
    if isinstance(f, np.ndarray):
        return f
    if isinstance(f, (ExpPoly, LinPoly)):
        check_scan_bound(f.ctx, scan_bound)
        return f.eval_array(f.ctx.all_values())
    if ctx is None:
        raise ValueError("a field context is needed for a callable map")
    check_scan_bound(ctx, scan_bound)
    return np.asarray(f(ctx.all_values()), dtype=np.int64)


def _ctx_of(f, ctx):
    return f.ctx if isinstance(f, (ExpPoly, LinPoly)) else ctx


def is_permutation(f, ctx=None, scan_bound=None, name="permutation"):
    """Exhaustive bijectivity test; on failure the witness is a colliding pair."""
    ctx = _ctx_of(f, ctx)
    vals = values_of(f, ctx, scan_bound)
    uniq, first_idx = np.unique(vals, return_index=True)
    if uniq.size == ctx.order:
        return Check(name, True)
    first = np.full(ctx.order, -1, dtype=np.int64)
    first[uniq] = first_idx
    idx = np.arange(ctx.order, dtype=np.int64)
    clash = np.flatnonzero(first[vals] != idx)
    if clash.size == 0:
        return Check(name, True)
    x2 = int(clash[0])
    x1 = int(first[vals[x2]])
    return Check(name, False, {"x1": ctx.elem(x1), "x2": ctx.elem(x2),
                               "image": ctx.elem(int(vals[x2]))})


def map_inverse_table(f, ctx=None, scan_bound=None):
    ctx = _ctx_of(f, ctx)
    vals = values_of(f, ctx, scan_bound)
    check = is_permutation(vals, ctx)
    if not check:
        raise NotAPermutationError(f"map is not a permutation: {check.witness}")
    inv = np.empty(ctx.order, dtype=np.int64)
    inv[vals] = np.arange(ctx.order, dtype=np.int64)
    return inv


def verify_inverse(f, g, ctx=None, scan_bound=None, name="inverse"):
    """g(f(x)) = x and f(g(x)) = x for every x."""
    ctx = _ctx_of(f, ctx) or _ctx_of(g, ctx)
    fv = values_of(f, ctx, scan_bound)
    gv = values_of(g, ctx, scan_bound)
    idx = np.arange(ctx.order, dtype=np.int64)
    for side, comp in (("g(f(x))", gv[fv]), ("f(g(x))", fv[gv])):
        bad = np.flatnonzero(comp != idx)
        if bad.size:
            x = int(bad[0])
            return Check(name, False, {"side": side, "x": ctx.elem(x),
                                       "got": ctx.elem(int(comp[x]))})
    return Check(name, True)


def maps_agree(f, g, ctx=None, name="identity", nonzero_only=False, scan_bound=None):
    """Pointwise equality of two maps (optionally on F^* only)."""
    ctx = _ctx_of(f, ctx) or _ctx_of(g, ctx)
    fv = values_of(f, ctx, scan_bound)
    gv = values_of(g, ctx, scan_bound)
    diff = fv != gv
    if nonzero_only:
        diff[0] = False
    bad = np.flatnonzero(diff)
    if bad.size:
        x = int(bad[0])
        return Check(name, False, {"x": ctx.elem(x), "lhs": ctx.elem(int(fv[x])),
                                   "rhs": ctx.elem(int(gv[x]))})
    return Check(name, True)
