"""Residual checks for the functional equations that single out power functions.

For an Orlicz function ``phi`` put ``F(s, t) = phi^-1(phi(s) + phi(t))``.
The head/tail identity ``phi(|P_n x|) + phi(|(I-P_n) x|) = phi(|x|)`` for the
Luxemburg norm of ``phi`` is equivalent to the partition condition checked by
``star_condition_residual``; it forces ``F`` to be homogeneous, and only
``phi(t) = phi(1) t^q`` passes. Power functions give residuals at solver
noise, any posynomial with two distinct exponents gives a visible one.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .orlicz import SparseVector, luxemburg_norm

__all__ = [
    "PASS_TOL",
    "FAIL_THRESHOLD",
    "ResidualReport",
    "f_phi",
    "homogeneity_residual",
    "normalization_residual",
    "star_condition_residual",
    "associativity_residual",
    "normalize_partition",
    "random_star_probe",
    "star_suite",
    "power_law_fit",
]

PASS_TOL = 1e-9
FAIL_THRESHOLD = 1e-3
_UNIT_SUM_TOL = 1e-10


@dataclass(frozen=True)
class ResidualReport:
    max_residual: float
    argmax_point: tuple
    samples: int
    tolerance: float
    notes: tuple = ()

    @property
    def passed(self):
        return self.max_residual <= self.tolerance

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_json(self):
        return {
            "max_residual": self.max_residual,
            "argmax_point": None if self.argmax_point is None else list(self.argmax_point),
            "samples": self.samples,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj):
        point = obj["argmax_point"]
        return cls(
            obj["max_residual"],
            None if point is None else tuple(point),
            obj["samples"],
            obj["tolerance"],
            tuple(obj.get("notes", ())),
        )


def _reduce(residuals, tolerance, notes=()):
    # first attaining argmax under the input ordering
    best, where, count = 0.0, None, 0
    for point, res in residuals:
        count += 1
        if where is None or res > best:
            best, where = res, point
    return ResidualReport(float(best), where, count, tolerance, tuple(notes))


def f_phi(M, s, t):
    """``M^-1(M(s) + M(t))``."""
    if s < 0 or t < 0:
        raise DomainError(f"f_phi is defined on [0, inf)^2, got ({s}, {t})")
    return M.inverse(M(s) + M(t))


def homogeneity_residual(M, points, k, tolerance=PASS_TOL):
    """Worst ``|F(ks, kt) - k F(s, t)| / max(1, k F(s, t))`` over ``points``."""
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")

    def gen():
        for s, t in points:
            ref = k * f_phi(M, s, t)
            yield (s, t), abs(f_phi(M, k * s, k * t) - ref) / max(1.0, ref)

    return _reduce(gen(), tolerance)


def normalization_residual(M, points, tolerance=PASS_TOL):
    """Worst ``|F(a s/F(s,t), a t/F(s,t)) - a| / a`` with ``a = M^-1(1)``.

    Points with ``F(s, t) = 0`` (only the origin) are skipped with a note.
    """
    alpha = M.inverse(1.0)
    notes = []

    def gen():
        for s, t in points:
            F = f_phi(M, s, t)
            if F == 0.0:
                notes.append(f"skipped ({s}, {t}): F = 0")
                continue
            yield (s, t), abs(f_phi(M, alpha * s / F, alpha * t / F) - alpha) / alpha

    residuals = list(gen())
    return _reduce(residuals, tolerance, notes)


def star_condition_residual(M, s_part, t_part, lam, mu):
    """``|LHS - 1|`` of the partition identity

        sum_i M(lam s_i / G) + sum_j M(mu t_j / G) = 1,  G = M^-1(M(lam) + M(mu)),

    for partitions with ``sum M(s_i) = 1 = sum M(t_j)``.
    """
    if not (lam > 0 and mu > 0):
        raise DomainError(f"lambda and mu must be positive, got ({lam}, {mu})")
    s = np.asarray(s_part, dtype=float)
    t = np.asarray(t_part, dtype=float)
    if np.any(s < 0) or np.any(t < 0):
        raise DomainError("partition entries must be non-negative")
    sum_s, sum_t = M.sum_over(s), M.sum_over(t)
    if abs(sum_s - 1.0) > _UNIT_SUM_TOL or abs(sum_t - 1.0) > _UNIT_SUM_TOL:
        raise DomainError(
            f"partitions must satisfy sum M = 1 within {_UNIT_SUM_TOL}; got {sum_s!r} and {sum_t!r}"
        )
    G = f_phi(M, lam, mu)
    lhs = math.fsum([M.sum_over(lam * s / G), M.sum_over(mu * t / G)])
    return abs(lhs - 1.0)


def associativity_residual(M, triples, tolerance=PASS_TOL):
    """Worst ``|F(F(a,b),c) - F(a,F(b,c))| / max(1, |.|)``."""

    def gen():
        for a, b, c in triples:
            left = f_phi(M, f_phi(M, a, b), c)
            right = f_phi(M, a, f_phi(M, b, c))
            yield (a, b, c), abs(left - right) / max(1.0, abs(left))

    return _reduce(gen(), tolerance)


def normalize_partition(M, raw):
    """Rescale non-negative ``raw`` (not all zero) so that ``sum M(s_i) = 1``.

    The scale is the reciprocal Luxemburg norm of ``raw``.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.size == 0 or np.any(raw < 0) or not np.any(raw > 0):
        raise DomainError("partition needs non-negative entries, not all zero")
    lam = luxemburg_norm(M, SparseVector.from_dense(raw))
    return raw / lam


def random_star_probe(M, rng, max_len=8, scale_range=(0.1, 10.0)):
    """One random ``(s_part, t_part, lam, mu)`` satisfying the unit-sum precondition."""
    k = int(rng.integers(1, max_len + 1))
    l = int(rng.integers(1, max_len + 1))
    s = normalize_partition(M, rng.uniform(0.05, 1.0, size=k))
    t = normalize_partition(M, rng.uniform(0.05, 1.0, size=l))
    lo, hi = np.log(scale_range[0]), np.log(scale_range[1])
    lam, mu = np.exp(rng.uniform(lo, hi, size=2))
    return s, t, float(lam), float(mu)


def star_suite(M, rng, samples=100, tolerance=PASS_TOL, max_len=8):
    """Maximum star residual over ``samples`` random probes."""

    def gen():
        for i in range(samples):
            s, t, lam, mu = random_star_probe(M, rng, max_len)
            yield (i, len(s), len(t), lam, mu), star_condition_residual(M, s, t, lam, mu)

    return _reduce(gen(), tolerance)


def power_law_fit(M, grid):
    """Log-log least-squares exponent of ``M`` and the worst deviation of
    ``log M(t) - log M(1) - q log t`` on ``grid``."""
    t = np.asarray(sorted(float(g) for g in grid))
    if t.size < 3 or t[0] <= 0:
        raise DomainError("power_law_fit needs at least 3 positive grid points")
    if np.log10(t[-1] / t[0]) < 2.0 - 1e-12:
        raise DomainError("power_law_fit grid must span at least two decades")
    logt = np.log(t)
    logm = np.log([M(x) for x in t])
    q_est, _ = np.polyfit(logt, logm, 1)
    dev = np.max(np.abs(logm - math.log(M(1.0)) - q_est * logt))
    return float(q_est), float(dev)
