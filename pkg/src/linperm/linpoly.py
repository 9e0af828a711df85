"""q-linearized polynomials over F_{q^n}.

A :class:`LinPoly` stores n coefficients a_0 .. a_{n-1} for the map
x -> sum a_i x^(q^i); since x^(q^n) = x on F_{q^n}, every index is taken
mod n.  Matrices are over F_q, with entries represented as FieldElem values
lying in the subfield.
"""

from __future__ import annotations

import math

import numpy as np

from .gf import FieldError, FieldMismatchError, FieldElem

KERNEL_SCAN_LIMIT = 1 << 12


class SingularError(ArithmeticError):
    """A linear map or matrix that was required to be invertible is not."""


class LinPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        n = ctx.n
        folded = [0] * n
        for i, c in enumerate(coeffs):
            folded[i % n] = ctx.add(folded[i % n], ctx(c).value)
        self.ctx = ctx
        self.coeffs = tuple(folded)

    @classmethod
    def identity(cls, ctx):
        return cls.monomial(ctx, 0)

    @classmethod
    def monomial(cls, ctx, i, c=1):
        """c * x^(q^i)."""
        coeffs = [0] * ctx.n
        coeffs[i % ctx.n] = ctx(c)
        return cls(ctx, coeffs)

    @classmethod
    def from_terms(cls, ctx, terms):
        """Build from {i: c} meaning sum c * x^(q^i)."""
        coeffs = [ctx.zero] * ctx.n
        for i, c in terms.items():
            coeffs[i % ctx.n] = coeffs[i % ctx.n] + ctx(c)
        return cls(ctx, coeffs)

    def __getitem__(self, i):
        return FieldElem(self.ctx, self.coeffs[i % self.ctx.n])

    def __call__(self, x):
        return lp_eval(self, x)

    def eval_array(self, xs):
        ctx = self.ctx
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros_like(xs)
        for i, a in enumerate(self.coeffs):
            if a:
                out = ctx.vadd(out, ctx.vscale(ctx.vfrob(xs, i), a))
        return out

    def _check(self, other):
        if not isinstance(other, LinPoly):
            return NotImplemented
        if other.ctx.key != self.ctx.key:
            raise FieldMismatchError(f"{other.ctx} vs {self.ctx}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return lp_add(self, other)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return lp_add(self, -other)

    def __neg__(self):
        return LinPoly(self.ctx, [FieldElem(self.ctx, self.ctx.neg(a)) for a in self.coeffs])

    def scale(self, c):
        """c * L(x)."""
        c = self.ctx(c).value
        return LinPoly(self.ctx, [FieldElem(self.ctx, self.ctx.mul(c, a)) for a in self.coeffs])

    def compose(self, other):
        """self(other(x))."""
        return lp_compose(self, other)

    def frobenius(self, j=1):
        """L(x)^(q^j) as a linearized polynomial."""
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            out[(i + j) % n] = FieldElem(ctx, ctx.frob(a, j))
        return LinPoly(ctx, out)

    def transpose(self):
        return transpose(self)

    def is_qk_linear(self, k):
        """Only x^(q^(k*j)) terms occur."""
        return all(a == 0 for i, a in enumerate(self.coeffs) if i % k)

    def __eq__(self, other):
        if not isinstance(other, LinPoly):
            return NotImplemented
        return self.ctx.key == other.ctx.key and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self):
        terms = [f"{self.ctx.to_coeffs(a)}*x^(q^{i})" for i, a in enumerate(self.coeffs) if a]
        return "LinPoly(" + (" + ".join(terms) or "0") + ")"

    def to_json(self):
        return [self.ctx.to_coeffs(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, ctx, data):
        if len(data) != ctx.n:
            raise FieldError(f"LinPoly needs {ctx.n} coefficients, got {len(data)}")
        return cls(ctx, [ctx(list(c)) for c in data])


def lp_eval(L, x):
    ctx = L.ctx
    x = ctx(x)
    acc = 0
    for i, a in enumerate(L.coeffs):
        if a:
            acc = ctx.add(acc, ctx.mul(a, ctx.frob(x.value, i)))
    return FieldElem(ctx, acc)


def lp_add(L, M):
    if L.ctx.key != M.ctx.key:
        raise FieldMismatchError(f"{L.ctx} vs {M.ctx}")
    ctx = L.ctx
    return LinPoly(ctx, [FieldElem(ctx, ctx.add(a, b)) for a, b in zip(L.coeffs, M.coeffs)])


def lp_compose(L, M):
    """Coefficients c_k = sum_{i+j = k mod n} a_i b_j^(q^i)."""
    if L.ctx.key != M.ctx.key:
        raise FieldMismatchError(f"{L.ctx} vs {M.ctx}")
    ctx = L.ctx
    n = ctx.n
    out = [0] * n
    for i, a in enumerate(L.coeffs):
        if not a:
            continue
        for j, b in enumerate(M.coeffs):
            if b:
                k = (i + j) % n
                out[k] = ctx.add(out[k], ctx.mul(a, ctx.frob(b, i)))
    return LinPoly(ctx, [FieldElem(ctx, c) for c in out])


def transpose(L):
    """Adjoint under the trace form: coefficient of x^(q^(n-i)) is a_i^(q^(n-i))."""
    ctx = L.ctx
    n = ctx.n
    out = [0] * n
    for i, a in enumerate(L.coeffs):
        j = (n - i) % n
        out[j] = ctx.add(out[j], ctx.frob(a, j))
    return LinPoly(ctx, [FieldElem(ctx, c) for c in out])


# ---------------------------------------------------------------------------
# Linear algebra over F_q (matrices of FieldElem lying in the subfield)
# ---------------------------------------------------------------------------

def _row_reduce(rows):
    """Reduced row echelon form; returns (rref, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = rows[r][c].inv()
        rows[r] = [x * inv_p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def mat_rank(mat):
    return len(_row_reduce(mat)[1])


def mat_inverse(mat):
    k = len(mat)
    ctx = mat[0][0].ctx
    aug = [list(row) + [ctx.one if i == j else ctx.zero for j in range(k)]
           for i, row in enumerate(mat)]
    rref, pivots = _row_reduce(aug)
    if pivots[:k] != list(range(k)):
        raise SingularError("matrix is singular")
    return [row[k:] for row in rref]


def mat_nullspace(mat):
    """Basis of {v : mat v = 0}."""
    rref, pivots = _row_reduce(mat)
    ncols = len(mat[0])
    ctx = mat[0][0].ctx
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def default_basis(ctx):
    """1, g, ..., g^(n-1) for the fixed primitive element g: an F_q-basis."""
    g = FieldElem(ctx, ctx.generator)
    return [g ** i for i in range(ctx.n)]


def dual_basis(basis):
    """beta with Tr(alpha_i beta_j) = delta_ij; raises if basis is dependent."""
    ctx = basis[0].ctx
    gram = [[(a * b).trace() for b in basis] for a in basis]
    try:
        ginv = mat_inverse(gram)
    except SingularError:
        raise FieldError("basis is not F_q-linearly independent") from None
    n = len(basis)
    return [sum((ginv[k][j] * basis[k] for k in range(n)), ctx.zero) for j in range(n)]


def lp_matrix(L, basis=None):
    """Matrix with (i, j) entry Tr(beta_i L(alpha_j)), beta the dual basis."""
    basis = default_basis(L.ctx) if basis is None else list(basis)
    if len(basis) != L.ctx.n:
        raise FieldError(f"basis needs {L.ctx.n} elements")
    dual = dual_basis(basis)
    images = [L(a) for a in basis]
    return [[(b * img).trace() for img in images] for b in dual]


def lp_rank(L):
    return mat_rank(lp_matrix(L))


def lp_kernel(L, method="auto"):
    """Kernel elements, by exhaustive scan (small fields) or nullspace."""
    ctx = L.ctx
    if method == "auto":
        method = "scan" if ctx.order <= KERNEL_SCAN_LIMIT else "nullspace"
    if method == "scan":
        vals = L.eval_array(ctx.all_values())
        return [ctx.elem(v) for v in np.flatnonzero(vals == 0)]
    if method != "nullspace":
        raise ValueError(f"unknown method {method!r}")
    basis = default_basis(ctx)
    null = mat_nullspace(lp_matrix(L, basis))
    vectors = [sum((v[j] * basis[j] for j in range(ctx.n)), ctx.zero) for v in null]
    # all F_q-combinations of the nullspace vectors
    scalars = [x for x in ctx.elements() if x.frob(1) == x]
    span = [ctx.zero]
    for vec in vectors:
        span = [s + c * vec for s in span for c in scalars]
    return sorted(span, key=lambda x: x.value)


def from_linear_map(ctx, images, basis):
    """LinPoly agreeing with the F_q-linear map alpha_j -> images[j].

    Coefficient c_k = sum_j images[j] * beta_j^(q^k) with beta the dual basis.
    """
    dual = dual_basis(basis)
    coeffs = []
    for k in range(ctx.n):
        coeffs.append(sum((img * b.frob(k) for img, b in zip(images, dual)), ctx.zero))
    return LinPoly(ctx, coeffs)


def lp_invert(L):
    """Compositional inverse by inverting the F_q-matrix of L."""
    ctx = L.ctx
    basis = default_basis(ctx)
    try:
        minv = mat_inverse(lp_matrix(L, basis))
    except SingularError:
        raise SingularError("linearized polynomial is not invertible") from None
    n = ctx.n
    images = [sum((minv[i][j] * basis[i] for i in range(n)), ctx.zero) for j in range(n)]
    return from_linear_map(ctx, images, basis)


def lp_invert_binomial(k, a):
    """Closed-form inverse of x^(q^k) + a x, gcd(k, n) = 1, N(-a) != 1."""
    ctx = a.ctx
    n, q = ctx.n, ctx.q
    if k <= 0 or math.gcd(k, n) != 1:
        raise ValueError(f"gcd(k={k}, n={n}) must be 1")
    if a == 0:
        raise ValueError("a must be nonzero")
    if (-a).norm() == 1:
        raise SingularError("N(-a) = 1: binomial is not invertible")
    na = a.norm()
    scale = na / (na + (-1) ** (n - 1))
    ainv = a.inv()
    qk = q ** k
    terms = {}
    for i in range(n):
        expo = (qk ** (i + 1) - 1) // (qk - 1)
        c = ainv ** expo
        if i % 2:
            c = -c
        terms[(k * i) % n] = c * scale
    return LinPoly.from_terms(ctx, terms)


def binomial(k, a):
    """x^(q^k) + a x."""
    return LinPoly.monomial(a.ctx, k) + LinPoly.monomial(a.ctx, 0, a)


def lambda_poly(ctx):
    """sum_{i<n} (-1)^(i+1) x^(q^(2i)), indices folded mod n."""
    coeffs = [ctx.zero] * ctx.n
    for i in range(ctx.n):
        j = (2 * i) % ctx.n
        coeffs[j] = coeffs[j] + (1 if i % 2 else -1)
    return LinPoly(ctx, coeffs)


def random_linpoly(ctx, rng):
    vals = rng.integers(0, ctx.order, size=ctx.n)
    return LinPoly(ctx, [ctx.elem(int(v)) for v in vals])
