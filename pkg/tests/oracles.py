"""High-precision reference computations, independent of the package code."""

from mpmath import mp, mpf, sqrt

mp.dps = 40


def mp_bisect(f, lo, hi, iters=200):
    """Root of an increasing ``f`` on [lo, hi] in 40-digit arithmetic."""
    lo, hi = mpf(lo), mpf(hi)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def posy(terms, t):
    t = mpf(t)
    return sum(mpf(a) * t ** mpf(p) for a, p in terms)


def posy_inverse(terms, y, hi=1e6):
    return mp_bisect(lambda t: posy(terms, t) - mpf(y), 0, hi)


def luxemburg(terms, values, hi=1e6):
    """Norm as the root of lam -> 1 - sum M(|x|/lam), which increases in lam."""
    vals = [abs(mpf(v)) for v in values if v != 0]
    if not vals:
        return mpf(0)
    return mp_bisect(lambda lam: 1 - sum(posy(terms, v / lam) for v in vals), mpf("1e-12"), hi)


QUARTIC = [(1, 4), (1, 2)]
SQUARE = [(1, 2)]
