"""
From survivors to true exceptions
=================================

A survivor of the criterion scan is only a *possible* exception; exhaustive
search over the family settles each one. For the a(x+b)/(x+c) family the
classification up to 350 yields 28 genuine exceptions, ending at 331.
"""

from primpair.ffcore import field_make
from primpair.polyrat import RationalFunc
from primpair.search import classify_true_exceptions, pair_exists, q_in_Q

# Classify a small range for the (1,1) family (fast enough to watch live).
res = classify_true_exceptions(150, (1, 1))
print(f"(1,1) true exceptions up to 150: {res.q_list}")

# Each exception comes with its first failing function.
for exc in res.exceptions[:5]:
    print(f"  q={exc.q}: f = {exc.failing_num}/{exc.failing_den} has no pair")

# Verify one by hand: exhaust all primitive alpha for the failing function.
exc = res.exceptions[0]
ctx = field_make(exc.p, exc.k)
f = RationalFunc.from_coeffs(ctx, exc.failing_num, exc.failing_den)
w = pair_exists(ctx, f)
print(f"\nq={exc.q}: search exhausted {w.examined} primitive elements,"
      f" found={w.found}")

# Membership flips just past the last exception of the family.
for q in (331, 337):
    print(f"q = {q}: every (1,1) function has a pair ->"
          f" {q_in_Q(field_make(q, 1), 1, 1).member}")

# Quadratics: the classification convention counts only irreducible failing
# quadratics (20 exceptions up to 250); the full family adds six small fields
# that fail only through split quadratics.
res_irr = classify_true_exceptions(130, (2, 0))
res_all = classify_true_exceptions(130, (2, 0), quadratic_scope="all")
print(f"\n(2,0) up to 130, irreducible scope: {res_irr.q_list}")
print(f"(2,0) up to 130, full family      : {res_all.q_list}")
