"""Searching for congruences of crank moments in arithmetic progressions.

Run: python demos/04_congruences.py
"""

from crankmoments.congruences import reverify, scan

# ell = 0 untwisted is p(n): the scan recovers the three classical congruences.
report = scan(0, 1, 11, 11, 500)
print(report.to_csv())

twisted = scan(1, -1, 7, 8, 400)
print(twisted.to_csv())
print("failures on re-check from the crank table:", reverify(twisted))

try:
    scan(0, 1, 11, 11, 100)
except ValueError as exc:
    print("refused:", exc)
