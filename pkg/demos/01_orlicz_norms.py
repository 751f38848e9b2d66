"""
Luxemburg norms of finitely supported sequences
===============================================

"""

import numpy as np

from szlenk.orlicz import OrliczFunction, SparseVector, lp_norm, luxemburg_norm, mab_constants, quartic_norm_closed_form

# the quartic Orlicz function t^4 + t^2
M = OrliczFunction.quartic(1, 1)
print("M(1) =", M(1.0), " M^-1(4) =", M.inverse(4.0))

# the norm is the unique lambda with sum M(|x_n| / lambda) = 1
x = SparseVector.from_dense([1.0, 1.0])
lam = luxemburg_norm(M, x)
print("||(1,1)||_M =", lam, " closed form:", quartic_norm_closed_form(1, 1, x))
print("normalising sum:", M.sum_over(np.abs(x.values) / lam))

# the quartic norm sits between two multiples of the l2 norm
c1, c2 = mab_constants(1, 1)
rng = np.random.default_rng(0)
ratios = []
for _ in range(500):
    idx = np.sort(rng.choice(np.arange(1, 50), size=rng.integers(1, 10), replace=False))
    y = SparseVector(tuple(zip(idx.tolist(), rng.uniform(-10, 10, idx.size).tolist())))
    ratios.append(luxemburg_norm(M, y) / lp_norm(2, y))
print(f"C1 = {c1:.6f} <= observed ratio in [{min(ratios):.6f}, {max(ratios):.6f}] <= C2 = {c2:.6f}")

# a power function gives back the l_q norm
print("t^3 norm of (3,4):", luxemburg_norm(OrliczFunction.power(3), SparseVector.from_dense([3, 4])),
      "vs l3:", lp_norm(3, SparseVector.from_dense([3, 4])))
