"""
Iterating the radius map
========================

"""

from szlenk.bounds import ModulusTriple
from szlenk.iteration import exact_radius_function, iterate_radii, lp_iterated_radius, lp_szlenk_index, lp_radius_function, szlenk_index

# r_{n+1} = r_n * r(eps / r_n) until the radius drops to eps / 2
trace = iterate_radii(lp_radius_function(3), 0.4)
print(trace.summary())
for n, r in enumerate(trace.radii[:5], start=1):
    print(n, r, lp_iterated_radius(3, 0.4, n).radius)

# the recursion agrees with the closed form, ties included
for p, eps in [(2, 1.0), (2, 2 ** 0.5), (1.5, 0.3), (4, 1.2)]:
    print(f"p={p} eps={eps:.4f}: recursion {szlenk_index(lp_radius_function(p), eps)}, "
          f"closed form {lp_szlenk_index(p, eps)}")

# a t^3 triple is the l_{3/2} case, so this is ceil(0.2^-3)
print("t^3 triple, eps=0.4:", szlenk_index(exact_radius_function(ModulusTriple.power(3)), 0.4))
