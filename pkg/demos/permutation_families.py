"""Build a few rational permutation families and check their inverses."""

from linperm import Family, audit_family, family_e0, family_thm_rs, make_field

F = make_field(3, 1, 3)
a = next(x for x in F.nonzero() if x.norm() != -1)

inst = family_e0(a)
print(inst.family.name, "a =", a)
print("  forward:", inst.forward)
print("  inverse:", inst.inverse)
for c in inst.checks:
    print("  ", "PASS" if c.ok else "FAIL", c.name)

inst = family_thm_rs(a)
print(inst.family.name, "verified:", inst.ok)

for fam in (Family.E0_TRINOMIAL, Family.THM_RS_INVERSE, Family.PROP_N3_SEXTIC):
    res = audit_family(fam, F)
    print(f"{fam.name:18s} valid {res.valid:3d}  verified {res.verified:3d}")

# sweep one family over a larger field
res = audit_family(Family.COR_N2K_CASE1, make_field(3, 1, 6))
print("case 1 over F_729:", res.valid, "parameters, all verified:", res.ok)
