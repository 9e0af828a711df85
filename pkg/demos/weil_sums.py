"""Exact Weil sums in Z[zeta_p] against the Gauss-sum closed form."""

import cmath

from linperm import gauss_sum, gauss_sum_base, make_field, weil_sum_closed, weil_sum_direct

F = make_field(3, 1, 3)
G = gauss_sum(F)
print("Gauss sum over F_27:", G)
print("G_1 over F_3:", gauss_sum_base(F))

A, B = F.elem(F.generator), F.elem(4)
direct = weil_sum_direct(A, B)
print("direct:", direct)
print("closed:", weil_sum_closed(A, B, G))

# numeric sanity check of |S| = sqrt(q^n)
z = cmath.exp(2j * cmath.pi / F.p)
val = sum(c * z ** i for i, c in enumerate(direct.vec))
print("|S| =", abs(val), " sqrt(27) =", 27 ** 0.5)

bad = sum(weil_sum_direct(A, B) != weil_sum_closed(A, B, G)
          for A in F.nonzero() for B in F.elements())
print("mismatches over all 702 pairs:", bad)
