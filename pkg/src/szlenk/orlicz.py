"""Posynomial Orlicz functions, finite-support sequences and Luxemburg norms.

An Orlicz function here is a posynomial ``M(t) = sum_i a_i t**p_i`` with
``a_i > 0`` and ``p_i >= 1``. Every such function is continuous, convex,
strictly increasing, vanishes only at 0 and is unbounded, so it is a
non-degenerate Orlicz function without further checks.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .roots import solve_monotone

__all__ = [
    "OrliczFunction",
    "SparseVector",
    "ValidationReport",
    "evaluate",
    "inverse",
    "luxemburg_norm",
    "quartic_norm_closed_form",
    "mab_constants",
    "lp_norm",
    "validate_orlicz",
]


@dataclass(frozen=True)
class OrliczFunction:
    """``M(t) = sum(a * t**p for a, p in terms)``."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((float(a), float(p)) for a, p in self.terms)
        if not terms:
            raise DomainError("an Orlicz function needs at least one term")
        for a, p in terms:
            if not (a > 0 and math.isfinite(a)):
                raise DomainError(f"coefficient must be positive and finite, got {a}")
            if not (p >= 1 and math.isfinite(p)):
                raise DomainError(f"exponent must be a finite number >= 1, got {p}")
        # merge equal exponents, sort by exponent
        merged = {}
        for a, p in terms:
            merged[p] = merged.get(p, 0.0) + a
        object.__setattr__(self, "terms", tuple((merged[p], p) for p in sorted(merged)))

    @classmethod
    def power(cls, q, coefficient=1.0):
        return cls(((coefficient, q),))

    @classmethod
    def quartic(cls, A, B):
        """``M_{A,B}(t) = A t^4 + B t^2``; the quartic term is dropped when A = 0."""
        if not B > 0:
            raise DomainError(f"B must be positive, got {B}")
        if A < 0:
            raise DomainError(f"A must be non-negative, got {A}")
        terms = [(B, 2.0)]
        if A > 0:
            terms.append((A, 4.0))
        return cls(tuple(terms))

    @property
    def exponents(self):
        return tuple(p for _, p in self.terms)

    @property
    def is_power(self):
        return len(self.terms) == 1

    def __call__(self, t):
        return evaluate(self, t)

    def inverse(self, y):
        return inverse(self, y)

    def sum_over(self, values):
        """``sum_n M(values[n])`` for a non-negative array."""
        v = np.asarray(values, dtype=float)
        return float(sum(a * np.sum(v**p) for a, p in self.terms))

    def to_json(self):
        return {"terms": [[a, p] for a, p in self.terms]}

    @classmethod
    def from_json(cls, obj):
        """Accepts ``{"terms": [[a, p], ...]}``, ``{"power": q}`` or
        ``{"quartic": {"A": a, "B": b}}``."""
        if not isinstance(obj, dict):
            raise DomainError(f"Orlicz function spec must be an object, got {obj!r}")
        if "terms" in obj:
            return cls(tuple((a, p) for a, p in obj["terms"]))
        if "power" in obj:
            return cls.power(float(obj["power"]))
        if "quartic" in obj:
            q = obj["quartic"]
            return cls.quartic(float(q["A"]), float(q["B"]))
        raise DomainError(f"unrecognised Orlicz function spec: {obj!r}")


@dataclass(frozen=True)
class SparseVector:
    """Finite-support real sequence indexed from 1.

    Entries are ``(index, value)`` pairs with strictly increasing indices;
    explicit zeros are dropped on construction.
    """

    entries: tuple = ()
    _idx: np.ndarray = field(init=False, repr=False, compare=False)
    _val: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple((int(i), float(v)) for i, v in self.entries)
        last = 0
        for i, v in entries:
            if i < 1:
                raise DomainError(f"indices start at 1, got {i}")
            if i <= last:
                raise DomainError("indices must be strictly increasing")
            if not math.isfinite(v):
                raise DomainError(f"non-finite value at index {i}")
            last = i
        entries = tuple((i, v) for i, v in entries if v != 0.0)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_idx", np.array([i for i, _ in entries], dtype=np.int64))
        object.__setattr__(self, "_val", np.array([v for _, v in entries], dtype=float))

    @classmethod
    def from_dict(cls, mapping):
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def from_dense(cls, values, start=1):
        return cls(tuple((start + k, v) for k, v in enumerate(values)))

    @classmethod
    def basis(cls, n, value=1.0):
        """``value * e_n``."""
        return cls(((n, value),))

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, (list, tuple)):
            raise DomainError(f"a vector must be a list of [index, value] pairs, got {obj!r}")
        pairs = []
        for item in obj:
            if not (isinstance(item, (list, tuple)) and len(item) == 2):
                raise DomainError(f"bad vector entry {item!r}")
            pairs.append((int(item[0]), float(item[1])))
        return cls(tuple(sorted(pairs)))

    def to_json(self):
        return [[i, v] for i, v in self.entries]

    @property
    def indices(self):
        return self._idx

    @property
    def values(self):
        return self._val

    @property
    def max_index(self):
        return int(self._idx[-1]) if len(self._idx) else 0

    def is_zero(self):
        return not self.entries

    def get(self, n):
        for i, v in self.entries:
            if i == n:
                return v
        return 0.0

    def as_dict(self):
        return dict(self.entries)

    def dense(self, dim=None):
        dim = self.max_index if dim is None else dim
        out = np.zeros(dim)
        for i, v in self.entries:
            if i <= dim:
                out[i - 1] = v
        return out

    def __len__(self):
        return len(self.entries)

    def __add__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        acc = self.as_dict()
        for i, v in other.entries:
            acc[i] = acc.get(i, 0.0) + v
        return SparseVector.from_dict(acc)

    def __neg__(self):
        return SparseVector(tuple((i, -v) for i, v in self.entries))

    def __sub__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        c = float(c)
        return SparseVector(tuple((i, c * v) for i, v in self.entries))

    __rmul__ = __mul__


def evaluate(M, t):
    """``M(t)`` for ``t >= 0``."""
    t = float(t)
    if not t >= 0:
        raise DomainError(f"Orlicz functions are evaluated on [0, inf), got {t}")
    if t == 0.0:
        return 0.0
    return math.fsum(a * t**p for a, p in M.terms)


def inverse(M, y):
    """The unique ``t >= 0`` with ``M(t) = y``."""
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"inverse needs a finite argument, got {y}")
    if y < 0:
        raise DomainError(f"inverse is defined on [0, inf), got {y}")
    if y == 0.0:
        return 0.0
    if M.is_power:
        a, p = M.terms[0]
        return (y / a) ** (1.0 / p)
    return solve_monotone(lambda t: evaluate(M, t) - y, increasing=True)


def luxemburg_norm(M, x):
    """``inf{lam > 0 : sum_n M(|x_n| / lam) <= 1}``, computed by bisection."""
    if x.is_zero():
        return 0.0
    ax = np.abs(x.values)
    return solve_monotone(lambda lam: M.sum_over(ax / lam) - 1.0, increasing=False)


def lp_norm(p, x):
    """``(sum |x_n|^p)^(1/p)`` for ``p >= 1``."""
    if not p >= 1:
        raise DomainError(f"lp_norm needs p >= 1, got {p}")
    if x.is_zero():
        return 0.0
    ax = np.abs(x.values)
    scale = ax.max()
    # scaled to avoid overflow for large p
    return float(scale * np.sum((ax / scale) ** p) ** (1.0 / p))


def quartic_norm_closed_form(A, B, x):
    """Closed-form Luxemburg norm for ``M_{A,B}(t) = A t^4 + B t^2``.

    The defining equation reduces to ``lam^4 - B|x|_2^2 lam^2 - A|x|_4^4 = 0``.
    """
    if not B > 0:
        raise DomainError(f"B must be positive, got {B}")
    if A < 0:
        raise DomainError(f"A must be non-negative, got {A}")
    s2 = lp_norm(2, x) ** 2
    s4 = float(np.sum(x.values**4))
    return math.sqrt((B * s2 + math.sqrt(B * B * s2 * s2 + 4.0 * A * s4)) / 2.0)


def mab_constants(A, B):
    """Equivalence constants ``(C1, C2)`` of ``|.|_{M_{A,B}}`` against ``|.|_2``."""
    if not B > 0:
        raise DomainError(f"B must be positive, got {B}")
    if A < 0:
        raise DomainError(f"A must be non-negative, got {A}")
    return math.sqrt(B), math.sqrt((B + math.sqrt(B * B + 4.0 * A)) / 2.0)


@dataclass
class ValidationReport:
    checks: dict
    details: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def to_json(self):
        return {"passed": self.passed, "checks": dict(self.checks), "details": dict(self.details)}


def validate_orlicz(M, grid, growth_threshold=1.0, rtol=1e-12):
    """Grid check of the defining properties of a non-degenerate Orlicz function.

    Convexity is tested on consecutive triples by comparing the middle value
    with the chord through its neighbours, which reduces to the midpoint test
    on a uniform grid.
    """
    t = np.asarray(sorted(float(g) for g in grid))
    if t.size == 0:
        raise DomainError("validation grid is empty")
    if t[0] < 0:
        raise DomainError("validation grid must be non-negative")
    m = np.array([evaluate(M, s) for s in t])
    checks, details = {}, {}

    checks["zero_at_origin"] = evaluate(M, 0.0) == 0.0

    pos = m[t > 0]
    checks["positive"] = bool(np.all(pos > 0))

    dm = np.diff(m)
    checks["strictly_increasing"] = bool(np.all(dm[np.diff(t) > 0] > 0))

    worst = 0.0
    for k in range(1, t.size - 1):
        t0, t1, t2 = t[k - 1], t[k], t[k + 1]
        if t2 == t0:
            continue
        chord = ((t2 - t1) * m[k - 1] + (t1 - t0) * m[k + 1]) / (t2 - t0)
        worst = max(worst, (m[k] - chord) / max(1.0, abs(chord)))
    checks["convex"] = worst <= rtol
    details["worst_convexity_excess"] = worst

    details["value_at_max"] = float(m[-1])
    checks["growth"] = bool(m[-1] > growth_threshold)
    return ValidationReport(checks, details)
