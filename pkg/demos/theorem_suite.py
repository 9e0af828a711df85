"""Random L: the forward direction always holds, the converse only for n odd."""

from linperm import make_field
from linperm.families import DEFAULT_SEED, theorem_suite

for key in [(3, 1, 3), (3, 1, 2)]:
    F = make_field(*key)
    misses = perms = 0
    for L, t1, t2 in theorem_suite(F, 200, DEFAULT_SEED):
        perms += t1.predicates["P1"]
        misses += t1.converse_holds is False
    print(f"q^n = {F.order}: {perms} of 200 permute, converse misses {misses}")
