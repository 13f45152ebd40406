"""Closed forms for the crank moment generating functions, checked exactly.

Run: python demos/02_moment_formulas.py
"""

from crankmoments import crank_table_product, theorem1_series, theorem2_series, verify_theorem, verify_theta_product

N = 40
table = crank_table_product(N)

print("M_2(n):      ", theorem1_series(1, 10).to_ints()[1:])
print("M_4(n):      ", theorem1_series(2, 10).to_ints()[1:])
print("M_2(-1,n):   ", theorem2_series(1, 10).to_ints()[1:])

for ell in range(1, 5):
    a = verify_theorem("theorem1", ell, N, table=table)
    b = verify_theorem("theorem2", ell, N, table=table)
    print(f"ell={ell}: untwisted {a['status']}, twisted {b['status']}")

# Multiplying by (-q)_inf^2 instead of dividing breaks the twisted identity at once.
bad = verify_theorem("theorem2", 1, N, table=table, prefactor="literal")
print("multiplying prefactor:", bad["status"], bad["first_mismatch"])

for variant in ("at_zero", "at_half"):
    print(f"theta expansion ({variant}) vs triple product:", verify_theta_product(variant, 6, 25)["status"])
