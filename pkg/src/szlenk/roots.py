"""Bracketing bisection for monotone scalar equations on (0, inf)."""

MAX_ITER = 200
RTOL = 1e-12
_MAX_EXPAND = 2100  # enough doublings to cover the whole float range


def bracket(f, increasing, start=1.0):
    """Find ``(lo, hi)`` in (0, inf) on which monotone ``f`` changes sign.

    The search doubles or halves from ``start``.
    """
    x = float(start)
    fx = f(x)
    if fx == 0.0:
        return x, x
    positive = fx > 0
    go_up = positive != increasing
    for _ in range(_MAX_EXPAND):
        y = x * 2.0 if go_up else x * 0.5
        fy = f(y)
        if fy == 0.0:
            return y, y
        if (fy > 0) != positive:
            return (x, y) if go_up else (y, x)
        x = y
        if x == 0.0 or x == float("inf"):
            break
    raise ArithmeticError("could not bracket a sign change")


def bisect(f, lo, hi, rtol=RTOL, max_iter=MAX_ITER):
    """Root of ``f`` in ``[lo, hi]`` by bisection.

    Stops when the bracket width is at most ``rtol`` times its midpoint, or
    once the bracket cannot shrink further in floating point.
    """
    if lo == hi:
        return lo
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ArithmeticError(f"no sign change on [{lo}, {hi}]")
    lo_positive = flo > 0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == lo_positive:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * 0.5 * (lo + hi):
            break
    return 0.5 * (lo + hi)


def solve_monotone(f, increasing, start=1.0, rtol=RTOL):
    """Positive root of a strictly monotone ``f`` (bracket, then bisect)."""
    lo, hi = bracket(f, increasing, start)
    return bisect(f, lo, hi, rtol=rtol)
