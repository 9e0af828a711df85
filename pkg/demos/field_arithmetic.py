"""Arithmetic in F_{3^3} and the tower F_{9^3}."""

from linperm import make_field

F = make_field(3, 1, 3)
print(F)
print("modulus coefficients (constant first):", F.modulus)

g = F.elem(F.generator)
x = F.elem(5)
print("x =", x, " x^-1 =", x.inv(), " x * x^-1 =", x * x.inv())
print("norm of x:", x.norm(), " trace of x:", x.trace())
print("x^q == frobenius(x):", x ** 3 == x.frob(1))

# every nonzero element is a power of the generator
powers = {(g ** i).value for i in range(F.order - 1)}
print("generator order covers F^*:", len(powers) == F.order - 1)

# q = 9 as a base: coefficients live in F_9 but elements are still packed ints
T = make_field(3, 2, 3)
y = T.elem(100)
print(T, " y in F_9:", y.in_subfield(1), " N(y) in F_9:", y.norm().in_subfield(1))
