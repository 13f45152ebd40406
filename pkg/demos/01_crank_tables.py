"""Crank counts two ways, and where they disagree.

Run: python demos/01_crank_tables.py
"""

from crankmoments import crank, crank_table_combinatorial, crank_table_product, enumerate_partitions, moment

print("partitions of 5 and their cranks:")
for lam in enumerate_partitions(5):
    print(f"  {lam!s:18} crank {crank(lam):+d}")

product = crank_table_product(12)
direct = crank_table_combinatorial(12)

# The product generating function and the combinatorial count agree except at n = 1.
for n in range(4):
    print(f"n={n}  product {dict(sorted(product.row(n).items()))}  counted {dict(sorted(direct.row(n).items()))}")
print("rows 2..12 identical:", all(product.row(n) == direct.row(n) for n in range(2, 13)))

# M_2(n) = 2 n p(n)
for n in range(1, 9):
    p = sum(product.row(n).values())
    print(f"n={n}  p(n)={p:3}  M_2(n)={moment(product, 2, n):5}  2np(n)={2 * n * p:5}")

big = crank_table_product(300)
print("p(300) from the crank product:", sum(big.row(300).values()))
