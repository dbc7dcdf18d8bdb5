"""
What_0 as a continued fraction in the other exponents
=====================================================

"""

from nsystems import canonical_params, cf_identity_check, cf_inputs, convergents
from nsystems.cfrac import PRINTED, constant_term_check, symbolic_identity

p = canonical_params(5)
d = cf_inputs(p)
print("e =", [str(x) for x in d.e])
print("f =", [str(x) for x in d.f])

seq = convergents(d)
for k in range(d.depth + 1):
    print(k, seq.numerator(k), seq.denominator(k), seq.ratio(k))

for c in cf_identity_check(p).checks:
    print(f"{c.name:<28} {str(c.lhs):>12} {str(c.rhs):>12}  {c.passed}")

# the recurrence with e and f swapped breaks the constant-term products
print("standard:", constant_term_check(4).ok, " swapped:", constant_term_check(4, PRINTED).ok)
print(symbolic_identity(4).name, symbolic_identity(4).passed)
