"""
Radius bounds and the quartic stability sweep
=============================================

"""

import numpy as np

from szlenk.bounds import UNIT, EquivalenceConstants, ModulusTriple, lower_cutoff, lower_radius, lp_radius, radius_profile, upper_radius
from szlenk.errors import OutOfDomainError
from szlenk.orlicz import mab_constants

triple = ModulusTriple.power(2)

# with matching constants both bounds collapse to the exact l2 radius
for eps in (0.5, 1.0, 1.5):
    print(f"eps={eps}: lower={lower_radius(triple, UNIT, eps):.9f} "
          f"upper={upper_radius(triple, UNIT, eps):.9f} exact={lp_radius(2, eps):.9f}")

# the quartic norm is only equivalent to l2, so the bounds separate
consts = EquivalenceConstants(*mab_constants(1, 1))
print("lower bound valid below eps =", lower_cutoff(triple, consts))
profile = radius_profile(triple, consts, np.linspace(0.1, 1.9, 7))
print(profile.to_csv())

try:
    lower_radius(triple, consts, 1.9)
except OutOfDomainError as err:
    print("out of domain:", err)

# shrinking the quartic coefficient closes the gap
for A in (1.0, 0.1, 0.01, 0.001, 0.0):
    c = EquivalenceConstants(*mab_constants(A, 1.0))
    lo, up = lower_radius(triple, c, 1.0), upper_radius(triple, c, 1.0)
    print(f"A={A:<6} gap={up - lo:.6g}")
