"""Linearized polynomials: composition, inversion, the binomial closed form."""

import numpy as np

from linperm import (LinPoly, binomial, lp_compose, lp_invert, lp_invert_binomial, lp_rank,
                     make_field)

F = make_field(5, 1, 3)
a = next(x for x in F.nonzero() if (-x).norm() != 1)

B = binomial(2, a)            # x^{q^2} + a x
inv = lp_invert_binomial(2, a)
print("B      =", B)
print("B^-1   =", inv)
print("closed form equals generic inverse:", inv == lp_invert(B))
print("composition is identity:", lp_compose(B, inv) == LinPoly.identity(F))

xs = F.all_values()
print("pointwise round trip:", np.array_equal(inv.eval_array(B.eval_array(xs)), xs))

# x^q - x has kernel F_q, so no inverse exists
print("rank of x^q - x:", lp_rank(LinPoly.from_terms(F, {1: 1, 0: -1})))
