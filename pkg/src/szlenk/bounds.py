"""Radii of the enveloping balls of the epsilon-Szlenk derivation of a dual ball.

Given moduli ``(phi, psi, chi)`` relating the reference norms of a vector, its
head and its tail, and constants ``c1 |x|_Z <= |x| <= c2 |x|_Z``:

* ``upper_radius``: radius of a ball containing the derivation,
  ``c2 * phi^-1(chi(1/c1) - psi(eps / (2 c2)))``;
* ``lower_radius``: radius of a ball contained in it,
  ``c1 * phi^-1(chi(1/c2) - psi(eps / (2 c1)))``, valid for
  ``eps < 2 c1 psi^-1(chi(1/c2))``.

When the head/tail relation is an identity and ``c1 = c2 = 1`` the two agree
and ``exact_radius`` is the radius of the derivation itself.
"""

import csv
import io
import math
from dataclasses import dataclass

from .errors import DomainError, OutOfDomainError
from .orlicz import OrliczFunction

__all__ = [
    "ModulusTriple",
    "EquivalenceConstants",
    "RadiusProfile",
    "upper_radius",
    "lower_radius",
    "lower_cutoff",
    "exact_radius",
    "lp_radius",
    "conjugate_exponent",
    "radius_profile",
]


@dataclass(frozen=True)
class ModulusTriple:
    phi: OrliczFunction
    psi: OrliczFunction
    chi: OrliczFunction

    @classmethod
    def power(cls, q):
        f = OrliczFunction.power(q)
        return cls(f, f, f)

    @classmethod
    def uniform(cls, M):
        return cls(M, M, M)

    def to_json(self):
        return [self.phi.to_json(), self.psi.to_json(), self.chi.to_json()]

    @classmethod
    def from_json(cls, obj):
        """A list of three function specs, one function spec used for all
        three, or a ``"power:q"`` shorthand string."""
        if isinstance(obj, str):
            kind, _, arg = obj.partition(":")
            if kind != "power" or not arg:
                raise DomainError(f"unrecognised triple shorthand {obj!r}")
            return cls.power(float(arg))
        if isinstance(obj, dict):
            return cls.uniform(OrliczFunction.from_json(obj))
        if isinstance(obj, (list, tuple)) and len(obj) == 3:
            return cls(*(OrliczFunction.from_json(o) for o in obj))
        raise DomainError(f"a modulus triple needs three functions, got {obj!r}")


@dataclass(frozen=True)
class EquivalenceConstants:
    c1: float
    c2: float

    def __post_init__(self):
        c1, c2 = float(self.c1), float(self.c2)
        if not (0 < c1 < math.inf and 0 < c2 < math.inf):
            raise DomainError(f"constants must be positive and finite, got ({c1}, {c2})")
        if c1 > c2:
            raise DomainError(f"need c1 <= c2, got ({c1}, {c2})")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)


UNIT = EquivalenceConstants(1.0, 1.0)


def _check_eps(eps):
    if not 0 < eps < 2:
        raise DomainError(f"eps must lie in (0, 2), got {eps}")


def upper_radius(triple, consts, eps):
    """Upper bound for the radius of the smallest ball containing the derivation.

    A negative bracket means no nonzero vector survives; the radius is 0.
    """
    _check_eps(eps)
    c1, c2 = consts.c1, consts.c2
    inner = triple.chi(1.0 / c1) - triple.psi(eps / (2.0 * c2))
    return c2 * triple.phi.inverse(max(0.0, inner))


def lower_cutoff(triple, consts):
    """Right end of the open eps-interval on which ``lower_radius`` is valid."""
    return 2.0 * consts.c1 * triple.psi.inverse(triple.chi(1.0 / consts.c2))


def lower_radius(triple, consts, eps):
    """Lower bound for the radius of the largest ball inside the derivation.

    Raises ``OutOfDomainError`` (carrying the cutoff) for ``eps`` outside
    ``(0, lower_cutoff)``; outside that interval no bound is claimed.
    """
    cutoff = lower_cutoff(triple, consts)
    if not 0 < eps < cutoff:
        raise OutOfDomainError(
            f"lower bound needs 0 < eps < {cutoff!r}, got {eps!r}", cutoff
        )
    c1, c2 = consts.c1, consts.c2
    inner = triple.chi(1.0 / c2) - triple.psi(eps / (2.0 * c1))
    return c1 * triple.phi.inverse(max(0.0, inner))


def exact_radius(triple, eps):
    """``phi^-1(chi(1) - psi(eps/2))``, clamped at 0."""
    _check_eps(eps)
    return triple.phi.inverse(max(0.0, triple.chi(1.0) - triple.psi(eps / 2.0)))


def conjugate_exponent(p):
    """``q`` with ``1/p + 1/q = 1``."""
    if not 1 < p < math.inf:
        raise DomainError(f"conjugate exponent needs 1 < p < inf, got {p}")
    return p / (p - 1.0)


def lp_radius(p, eps):
    """Derivation radius for an l_p-sum of finite-dimensional spaces."""
    q = conjugate_exponent(p)
    _check_eps(eps)
    return max(0.0, 1.0 - (eps / 2.0) ** q) ** (1.0 / q)


@dataclass(frozen=True)
class RadiusProfile:
    epsilons: tuple
    lower: tuple  # None where eps >= validity_cutoff
    upper: tuple
    validity_cutoff: float

    def rows(self):
        return list(zip(self.epsilons, self.lower, self.upper))

    def to_json(self):
        return {
            "epsilons": list(self.epsilons),
            "lower": list(self.lower),
            "upper": list(self.upper),
            "validity_cutoff": self.validity_cutoff,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            tuple(obj["epsilons"]),
            tuple(obj["lower"]),
            tuple(obj["upper"]),
            obj["validity_cutoff"],
        )

    def to_csv(self, fmt=".12g"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps", "lower", "upper", "valid_lower"])
        for eps, lo, up in self.rows():
            w.writerow([
                format(eps, fmt),
                "" if lo is None else format(lo, fmt),
                format(up, fmt),
                0 if lo is None else 1,
            ])
        return buf.getvalue()


def radius_profile(triple, consts, eps_grid):
    grid = [float(e) for e in eps_grid]
    for e in grid:
        _check_eps(e)
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("eps grid must be sorted")
    cutoff = lower_cutoff(triple, consts)
    lower, upper = [], []
    for e in grid:
        upper.append(upper_radius(triple, consts, e))
        lower.append(lower_radius(triple, consts, e) if e < cutoff else None)
    return RadiusProfile(tuple(grid), tuple(lower), tuple(upper), cutoff)
