"""Permutation test for x^{-1}/L(x^{-q-1})-type maps via root counts mod 2."""

from linperm import LinPoly, ep_from_fraction, is_permutation, make_field, parity_criterion
from linperm.families import e1_linpolys

F = make_field(5, 1, 3)
ident = LinPoly.identity(F)

agree = 0
for a in F.nonzero():
    ell, _ = e1_linpolys(a)
    holds, counts = parity_criterion(ident, ell)
    bij = is_permutation(ep_from_fraction(ell, F.q + 1)).ok
    agree += holds == bij
print(f"criterion agrees with a direct scan for {agree} of {F.order - 1} values of a")
