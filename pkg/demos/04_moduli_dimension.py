"""dim W² - 2k for T^{2k}×CP(m) against the binomial closed form."""
from math import comb

from symplext import moduli_dim_s2, torus_cp

print(" k  m  dimW2  moduli  closed form")
for k, m in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)]:
    md = moduli_dim_s2(torus_cp(k, m))
    closed = sum(comb(2 * k, 2 * s) for s in range(1, min(m, k) + 1))
    print(f"{k:2d} {m:2d} {md.dim_w2:6d} {md.value:7d} {closed:12d}")
