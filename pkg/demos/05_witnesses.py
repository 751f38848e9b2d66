"""
Finite truncation witnesses
===========================

"""

import numpy as np

from szlenk.orlicz import SparseVector
from szlenk.witness import SpaceModel, inequality_probe, thm1_tail_bound_check, thm2_horizon, thm2_witness_check

l2 = SpaceModel.lq(2)

# a separated pair around x0 built from the basis vector just past the support
res = thm2_witness_check(l2, SparseVector.basis(1, 0.8), 1.0, 1.05, 1.1, 3)
print(res.to_json())
print("horizon:", thm2_horizon(l2, SparseVector.basis(1, 0.8), 1.0, 1.05, 1.1))

# a vector near x0 keeps a small tail past the support of x0
tb = thm1_tail_bound_check(l2, SparseVector(((1, 0.88), (2, 0.3))), SparseVector.basis(1, 0.9), 1, 0.05, 1.2)
print(f"tail {tb.tail_norm:.6f} < bound {tb.bound:.6f}: {tb.passed}")

# slack is measured in the reference norm, which is l_q in both models, so it vanishes
rng = np.random.default_rng(2)
for name, model in (("l3", SpaceModel.lq(3)), ("quartic A=1,B=1", SpaceModel.quartic(1, 1))):
    for direction in ("forward", "reverse"):
        rep = inequality_probe(model, direction, 200, (1, 32), rng)
        print(f"{name:16s} {direction:8s} worst slack {rep.worst_slack:+.3e} "
              f"violations {rep.violations}")
