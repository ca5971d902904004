"""
Finite fields with discrete-log tables
======================================

Build small fields, look at their primitive roots, and see how primitivity
and u-freeness reduce to gcd conditions on exponents.
"""

from math import gcd

from primpair.ffcore import field_make

# A prime field: F_7 with its least primitive root.
F7 = field_make(7, 1)
print(f"F_7: primitive root g = {F7.g}")
print("powers of g:", [F7.exp_of(t) for t in range(6)])
print("dlog table :", {a: F7.dlog_of(a) for a in range(1, 7)})

# An element is primitive exactly when its dlog is coprime to q - 1.
print("\nprimitive elements of F_7:",
      [a for a in range(1, 7) if F7.is_primitive(a)])
print("phi(6) =", F7.qm1.euler_phi)

# u-free: not a d-th power for any divisor d > 1 of u.
# 2 = 3^2 is a square, so it is not 6-free; 3 generates everything.
for a in (2, 3):
    print(f"{a} is 6-free: {F7.is_ufree(a, 6)}")

# An extension field: F_16 = F_2[x]/(x^4 + x + 1), elements packed as ints.
F16 = field_make(2, 4)
print(f"\nF_16 modulus (low coeffs first): {F16.modulus}")
g = F16.g
print(f"generator g packs to {g}, coefficient vector {F16.coeffs_of(g)}")
print("orders of all nonzero elements:")
for a in range(1, 16):
    print(f"  {a:2d} = {F16.coeffs_of(a)} has order {F16.order_of(a)}")

# The dlog table is a group isomorphism to Z/(q-1).
a, b = 7, 11
assert F16.dlog_of(F16.mul(a, b)) == (F16.dlog_of(a) + F16.dlog_of(b)) % 15
print("\ndlog(a*b) = dlog(a) + dlog(b) mod q-1: verified for a=7, b=11")
