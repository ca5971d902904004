"""
Characters, the u-free indicator, and the pair-count expansion
==============================================================

The number of alpha with alpha and f(alpha) both u-free for given divisors
expands into Moebius-weighted character sums. Everything here is computed in
exact cyclotomic arithmetic; floats only appear when printing.
"""

from primpair.charsums import (
    MultChar,
    PairCountEvaluator,
    chi_f,
    rho_u,
    weil_bound_check,
)
from primpair.ffcore import field_make
from primpair.polyrat import RationalFunc

F13 = field_make(13, 1)

# The quadratic character sums to zero over all of F_13* (orthogonality).
chi = MultChar(F13, 2, 1)
s = chi_f(chi, MultChar(F13, 1, 0), RationalFunc.from_coeffs(F13, (0, 1)))
print("sum of the quadratic character over F_13*:", s.exact_int())

# rho_u is the indicator of u-free elements, straight from its definition.
print("\nrho_12 on F_13* (1 marks the primitive elements):")
print([int(rho_u(F13, a, 12)) for a in range(1, 13)])
print("primitive:", [a for a in range(1, 13) if F13.is_primitive(a)])

# The full expansion counts primitive pairs for f = (x^2+1)/x exactly.
f = RationalFunc.from_coeffs(F13, (1, 0, 1), (0, 1))
ev = PairCountEvaluator(f)
print(f"\nN_f(l1, l2) for f = (x^2+1)/x over F_13:")
for l1, l2 in ((1, 1), (12, 1), (1, 12), (12, 12)):
    print(f"  l1={l1:2d} l2={l2:2d}: {ev.count(l1, l2)}")

# Character sums of rational-function arguments obey the square-root bound.
report = weil_bound_check(chi, f)
print(f"\n|sum chi(f(alpha))| = {abs(report.total.value()):.4f}"
      f" <= (deg rad - 1) sqrt(q) = {report.bound:.4f}: ok={report.ok}")

# The same machinery over an extension field.
F9 = field_make(3, 2)
g = RationalFunc.from_coeffs(F9, (1, 1), (2, 1))
evg = PairCountEvaluator(g)
print(f"\nF_9, f = (x+1)/(x+2): N_f(8, 8) = {evg.count(8, 8)} primitive pairs")
