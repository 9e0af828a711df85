"""Independent reference arithmetic for cross-checking the library.

Field operations go through sympy's galoistools (dense polynomials over
F_p, highest degree first); character sums are evaluated numerically with
complex roots of unity.  Nothing here imports the library's arithmetic.
"""

import cmath
import itertools

from sympy import ZZ
from sympy.polys.galoistools import gf_add, gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem


class RefField:
    """F_p[y] / (f) with f given constant-term first."""

    def __init__(self, p, modulus):
        self.p = p
        self.m = len(modulus) - 1
        self.f = [ZZ(c) for c in reversed(modulus)]
        self.order = p ** self.m

    def unpack(self, v):
        cs = []
        for _ in range(self.m):
            v, r = divmod(v, self.p)
            cs.append(ZZ(r))
        while cs and cs[-1] == 0:
            cs.pop()
        return list(reversed(cs))

    def pack(self, poly):
        v = 0
        for c in poly:
            v = v * self.p + int(c)
        return v

    def add(self, a, b):
        return self.pack(gf_add(self.unpack(a), self.unpack(b), self.p, ZZ))

    def mul(self, a, b):
        prod = gf_mul(self.unpack(a), self.unpack(b), self.p, ZZ)
        return self.pack(gf_rem(prod, self.f, self.p, ZZ))

    def pow(self, a, k):
        if k == 0:
            return 1
        if a == 0:
            return 0
        return self.pack(gf_pow_mod(self.unpack(a), k, self.f, self.p, ZZ))

    def inv(self, a):
        return self.pow(a, self.order - 2)


def brute_smallest_irreducible(p, m):
    """First monic irreducible of degree m, constant term compared first."""
    for tail in itertools.product(range(p), repeat=m):
        coeffs = list(tail) + [1]
        if gf_irreducible_p([ZZ(c) for c in reversed(coeffs)], p, ZZ):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


def abs_trace(ref, x):
    t = 0
    for _ in range(ref.m):
        t = ref.add(t, x)
        x = ref.pow(x, ref.p)
    # an element of F_p packs to its constant coefficient
    return t


def complex_weil(ref, q, A, B):
    """sum_w exp(2 pi i Tr(A w^(q+1) + B w) / p) in floating point."""
    z = cmath.exp(2j * cmath.pi / ref.p)
    total = 0
    for w in range(ref.order):
        arg = ref.add(ref.mul(A, ref.pow(w, q + 1)), ref.mul(B, w))
        total += z ** abs_trace(ref, arg)
    return total


def complex_gauss(ref):
    z = cmath.exp(2j * cmath.pi / ref.p)
    half = (ref.order - 1) // 2
    total = 0
    for x in range(1, ref.order):
        eta = 1 if ref.pow(x, half) == 1 else -1
        total += eta * z ** abs_trace(ref, x)
    return total


def cyc_to_complex(c):
    z = cmath.exp(2j * cmath.pi / c.p)
    return sum(a * z ** i for i, a in enumerate(c.vec))
