"""Circle-method main term against exact twisted moments.

Run: python demos/03_asymptotics.py
"""

from crankmoments import check_multiplier_identity, kloosterman_A, main_term, moment_series
from crankmoments.asymptotics import comparison_csv, comparison_rows

ns = [50, 150, 300, 600]
for ell in (0, 1, 2):
    exact = [int(c) for c in moment_series(ell, -1, max(ns)).coeffs]
    print(comparison_csv(comparison_rows(ell, ns, exact=exact)))

# The Kloosterman sum as defined carries an extra sqrt(2); A_1(n) is sqrt(2), not 1.
print("A_1(7) =", kloosterman_A(1, 7))
r = check_multiplier_identity(3, 5, literal=True)
print("unscaled Kloosterman / multiplier sum:", r["ratio"])

exact = int(moment_series(1, -1, 600)[600])
for form in ("corrected", "rescaled", "printed"):
    print(f"{form:9}  main/exact at n=600, ell=1: {main_term(1, 600, form=form) / exact:.12f}")
