"""Iterated derivation radii and finite epsilon-Szlenk indices.

If ``s_eps B`` is the ball of radius ``r(eps)``, the scaling rule
``s_eps(cK) = c s_{eps/c}(K)`` makes every iterate a ball too, with radii

    r_1 = r(eps),   r_{n+1} = r_n * r(eps / r_n)   while r_n > eps/2,

and the index is ``1 + min{n : r_n <= eps/2}``.
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import NamedTuple

from .bounds import conjugate_exponent, exact_radius, lp_radius
from .errors import BudgetExceededError, DomainError, InvariantError

__all__ = [
    "IterationTrace",
    "IteratedRadius",
    "TIE_ATOL",
    "iterate_radii",
    "szlenk_index",
    "lp_iterated_radius",
    "lp_szlenk_index",
    "lp_radius_function",
    "exact_radius_function",
]

TIE_ATOL = 1e-12  # r_n within this of eps/2 counts as r_n <= eps/2
DEFAULT_MAX_N = 10**6


@dataclass(frozen=True)
class IterationTrace:
    eps: float
    radii: tuple
    terminated: bool

    @property
    def terminal_index(self):
        return len(self.radii) if self.terminated else None

    @property
    def szlenk_index(self):
        return 1 + len(self.radii) if self.terminated else None

    def summary(self):
        return {
            "eps": self.eps,
            "terminal_index": self.terminal_index,
            "szlenk_index": self.szlenk_index,
            "terminated": self.terminated,
        }

    def to_csv(self, fmt=".12g"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r_n"])
        for n, r in enumerate(self.radii, start=1):
            w.writerow([n, format(r, fmt)])
        return buf.getvalue()


def _checked(r, arg):
    value = float(r(arg))
    if not 0.0 <= value <= 1.0:
        raise InvariantError(f"radius function returned {value} at {arg}, outside [0, 1]")
    return value


def iterate_radii(r, eps, max_n=DEFAULT_MAX_N):
    """Run the radius recursion for the radius function ``r`` at ``eps``.

    Stops at the first ``r_n <= eps/2`` (ties within ``TIE_ATOL`` terminate).
    If that does not happen within ``max_n`` steps the partial trace is
    returned with ``terminated=False``.
    """
    if not 0 < eps < 2:
        raise DomainError(f"eps must lie in (0, 2), got {eps}")
    if max_n < 1:
        raise DomainError(f"max_n must be positive, got {max_n}")
    half = 0.5 * eps
    rn = _checked(r, eps)
    radii = [rn]
    while rn > half + TIE_ATOL:
        if len(radii) >= max_n:
            return IterationTrace(eps, tuple(radii), False)
        nxt = rn * _checked(r, eps / rn)
        if nxt > rn:
            raise InvariantError(f"radii increased at step {len(radii) + 1}: {rn} -> {nxt}")
        rn = nxt
        radii.append(rn)
    return IterationTrace(eps, tuple(radii), True)


def szlenk_index(r, eps, max_n=DEFAULT_MAX_N):
    trace = iterate_radii(r, eps, max_n)
    if not trace.terminated:
        raise BudgetExceededError(
            f"radius recursion at eps={eps} did not reach eps/2 within {max_n} steps"
        )
    return trace.szlenk_index


class IteratedRadius(NamedTuple):
    radius: float
    depleted: bool


def lp_iterated_radius(p, eps, n):
    """Closed form ``(1 - n (eps/2)^q)^(1/q)`` of the n-th iterate for l_p-sums."""
    q = conjugate_exponent(p)
    if not 0 < eps < 2:
        raise DomainError(f"eps must lie in (0, 2), got {eps}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    bracket = 1.0 - n * (eps / 2.0) ** q
    if bracket <= 0.0:
        return IteratedRadius(0.0, True)
    return IteratedRadius(bracket ** (1.0 / q), False)


def lp_szlenk_index(p, eps):
    """``ceil((eps/2)^-q)``.

    Values within a relative 1e-12 of an integer are snapped to it, the
    closed-form counterpart of the ``TIE_ATOL`` tie rule of the recursion.
    """
    q = conjugate_exponent(p)
    if not 0 < eps < 2:
        raise DomainError(f"eps must lie in (0, 2), got {eps}")
    x = (eps / 2.0) ** (-q)
    k = round(x)
    if abs(x - k) <= 1e-12 * x:
        return int(k)
    return int(math.ceil(x))


def lp_radius_function(p):
    return lambda e: lp_radius(p, e)


def exact_radius_function(triple):
    return lambda e: exact_radius(triple, e)
