"""
Which Orlicz functions satisfy the partition identity
=====================================================

"""

import numpy as np

from szlenk.equations import homogeneity_residual, normalization_residual, power_law_fit, star_suite
from szlenk.orlicz import OrliczFunction

rng = np.random.default_rng(1)
points = rng.uniform(0.1, 3.0, (50, 2))

for name, M in [("t^2", OrliczFunction.power(2)),
                ("t^3.5", OrliczFunction.power(3.5)),
                ("t^4 + t^2", OrliczFunction.quartic(1, 1))]:
    hom = homogeneity_residual(M, points, 2.0)
    nrm = normalization_residual(M, points)
    star = star_suite(M, rng, samples=50)
    fit = power_law_fit(M, np.logspace(-2, 2, 40))
    print(f"{name:10s} homogeneity {hom.verdict:5s} ({hom.max_residual:.2e})  "
          f"normalization {nrm.verdict:5s} ({nrm.max_residual:.2e})  "
          f"star {star.verdict:5s} ({star.max_residual:.2e})  fit {fit}")
