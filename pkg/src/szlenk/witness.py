"""Finite-truncation checks of the two radius-bound constructions.

A ``SpaceModel`` stands in for a dual space with a 1-unconditional coordinate
basis: the partial-sum projection ``P_n`` is coordinate truncation and every
vector lives in ``[1, basis_dim]``.

* ``thm2_witness_check`` builds the pair ``P_n x0 +/- eps1/(2 c1 mu) e_{n+1}``
  and checks that it is more than ``eps`` apart while staying in the unit ball.
* ``thm1_tail_bound_check`` checks the tail estimate
  ``|(I - P_N) x| < c2 A(delta)`` for ``x`` in the unit ball near ``x0``.
* ``inequality_probe`` measures the head/tail slack
  ``chi(|x|_Z) - phi(|P_n x|_Z) - psi(|(I - P_n) x|_Z)``.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bounds import EquivalenceConstants, ModulusTriple, lower_cutoff
from .equations import ResidualReport
from .errors import DomainError
from .roots import bisect
from .orlicz import OrliczFunction, SparseVector, luxemburg_norm, lp_norm, mab_constants

__all__ = [
    "GUARD",
    "SpaceModel",
    "WitnessPair",
    "Thm2Result",
    "Thm1Result",
    "ProbeReport",
    "project",
    "tail",
    "rho_lower",
    "rho_upper",
    "tail_bound",
    "thm2_witness_check",
    "thm2_horizon",
    "thm1_tail_bound_check",
    "sample_thm1_probe",
    "random_sparse",
    "slack",
    "inequality_probe",
]

GUARD = 1e-12
SLACK_TOL = 1e-9
DEFAULT_DIM = 64


def project(x, n):
    """Restriction of ``x`` to indices ``<= n``."""
    if n < 0:
        raise DomainError(f"projection index must be >= 0, got {n}")
    return SparseVector(tuple((i, v) for i, v in x.entries if i <= n))


def tail(x, n):
    """``x - project(x, n)``."""
    return SparseVector(tuple((i, v) for i, v in x.entries if i > n))


@dataclass(frozen=True)
class SpaceModel:
    dual_norm: Callable
    z_norm: Callable
    consts: EquivalenceConstants
    triple: ModulusTriple
    mu: float = 1.0
    basis_dim: int = DEFAULT_DIM
    description: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu}")
        if self.basis_dim < 2:
            raise DomainError(f"basis_dim must be at least 2, got {self.basis_dim}")

    @classmethod
    def lq(cls, q, dim=DEFAULT_DIM):
        """l_q with its own norm as reference norm and moduli ``t^q``."""
        norm = lambda x: lp_norm(q, x)
        return cls(norm, norm, EquivalenceConstants(1.0, 1.0), ModulusTriple.power(q),
                   1.0, dim, {"dual": {"power": q}, "z": {"power": q}})

    @classmethod
    def quartic(cls, A, B, dim=DEFAULT_DIM):
        """Luxemburg norm of ``A t^4 + B t^2`` compared against l_2, moduli ``t^2``."""
        M = OrliczFunction.quartic(A, B)
        c1, c2 = mab_constants(A, B)
        return cls(lambda x: luxemburg_norm(M, x), lambda x: lp_norm(2, x),
                   EquivalenceConstants(c1, c2), ModulusTriple.power(2.0), 1.0, dim,
                   {"dual": {"quartic": {"A": A, "B": B}}, "z": {"power": 2.0}})

    @classmethod
    def from_json(cls, obj):
        """``{"dual": <function spec>, "z": {"power": q}, "c1", "c2", "triple",
        "mu", "dim"}``; the dual function spec becomes a Luxemburg norm."""
        try:
            dual_spec, z_spec = obj["dual"], obj["z"]
        except (KeyError, TypeError):
            raise DomainError("model spec needs 'dual' and 'z' entries") from None
        if set(z_spec) != {"power"}:
            raise DomainError(f"reference norm must be {{'power': q}}, got {z_spec!r}")
        zq = float(z_spec["power"])
        dual_fn = OrliczFunction.from_json(dual_spec)
        if dual_fn.is_power and dual_fn.terms[0][0] == 1.0:
            dq = dual_fn.terms[0][1]
            dual = lambda x: lp_norm(dq, x)
        else:
            dual = lambda x: luxemburg_norm(dual_fn, x)
        if "c1" in obj and "c2" in obj:
            consts = EquivalenceConstants(obj["c1"], obj["c2"])
        elif "quartic" in dual_spec and zq == 2.0:
            consts = EquivalenceConstants(*mab_constants(dual_spec["quartic"]["A"], dual_spec["quartic"]["B"]))
        else:
            raise DomainError("model spec needs 'c1' and 'c2'")
        triple = ModulusTriple.from_json(obj.get("triple", f"power:{zq}"))
        return cls(dual, lambda x: lp_norm(zq, x), consts, triple,
                   float(obj.get("mu", 1.0)), int(obj.get("dim", DEFAULT_DIM)),
                   {"dual": dual_spec, "z": z_spec})

    def check_sandwich(self, vectors, slack=1e-9):
        """Worst violation of ``c1 |x|_Z <= |x| <= c2 |x|_Z`` (0 if none)."""
        worst = 0.0
        for x in vectors:
            z, d = self.z_norm(x), self.dual_norm(x)
            worst = max(worst, self.consts.c1 * z - d, d - self.consts.c2 * z)
        return worst <= slack, worst

    def check_mu(self, rtol=1e-6):
        """Compare ``mu`` with ``|e_n|_Z`` over the upper half of the truncation."""
        ns = range(self.basis_dim // 2, self.basis_dim + 1)
        dev = max(abs(self.z_norm(SparseVector.basis(n)) - self.mu) / self.mu for n in ns)
        return dev <= rtol, dev


def rho_lower(model, eps):
    """``c1 phi^-1(chi(1/c2) - psi(eps/(2 c1)))``: admissible norm of the base point."""
    tr, c1, c2 = model.triple, model.consts.c1, model.consts.c2
    return c1 * tr.phi.inverse(max(0.0, tr.chi(1.0 / c2) - tr.psi(eps / (2.0 * c1))))


def rho_upper(model, eps):
    """``c2 phi^-1(chi(1/c1) - psi(eps/(2 c2)))``."""
    tr, c1, c2 = model.triple, model.consts.c1, model.consts.c2
    return c2 * tr.phi.inverse(max(0.0, tr.chi(1.0 / c1) - tr.psi(eps / (2.0 * c2))))


def tail_bound(model, eps1, delta):
    """``c2 A(delta)`` with ``A(delta) = psi^-1(chi(1/c1) - phi((rho(eps1) - delta)/c2))``."""
    tr, c1, c2 = model.triple, model.consts.c1, model.consts.c2
    head = max(0.0, rho_upper(model, eps1) - delta) / c2
    return c2 * tr.psi.inverse(max(0.0, tr.chi(1.0 / c1) - tr.phi(head)))


@dataclass(frozen=True)
class WitnessPair:
    y_plus: SparseVector
    y_minus: SparseVector
    n: int
    separation: float
    max_norm: float


@dataclass(frozen=True)
class Thm2Result:
    pair: WitnessPair
    separated: bool
    bounded: bool

    @property
    def passed(self):
        return self.separated and self.bounded

    def to_json(self):
        p = self.pair
        return {
            "n": p.n,
            "y_plus": p.y_plus.to_json(),
            "y_minus": p.y_minus.to_json(),
            "separation": p.separation,
            "max_norm": p.max_norm,
            "separated": self.separated,
            "bounded": self.bounded,
        }


def _thm2_gates(model, x0, eps, eps1, eps2):
    cutoff = lower_cutoff(model.triple, model.consts)
    if not 0 < eps < eps1 < eps2 < cutoff:
        raise DomainError(
            f"need 0 < eps < eps1 < eps2 < {cutoff!r}; got {eps!r}, {eps1!r}, {eps2!r}"
        )
    if x0.max_index > model.basis_dim:
        raise DomainError(f"x0 is supported beyond basis_dim={model.basis_dim}")
    rho = rho_lower(model, eps2)
    norm0 = model.dual_norm(x0)
    if norm0 > rho + GUARD:
        raise DomainError(f"base point norm {norm0!r} exceeds rho(eps2) = {rho!r}")


def _witness(model, x0, eps, eps1, n):
    head = project(x0, n)
    bump = SparseVector.basis(n + 1, eps1 / (2.0 * model.consts.c1 * model.mu))
    y_plus, y_minus = head + bump, head - bump
    sep = model.dual_norm(y_plus - y_minus)
    top = max(model.dual_norm(y_plus), model.dual_norm(y_minus))
    pair = WitnessPair(y_plus, y_minus, n, sep, top)
    return Thm2Result(pair, sep > eps + GUARD, top <= 1.0 + GUARD)


def thm2_witness_check(model, x0, eps, eps1, eps2, n):
    """Build the witness pair at index ``n`` and test (i) separation > eps and
    (ii) both norms <= 1.

    Preconditions ``0 < eps < eps1 < eps2 < cutoff`` and
    ``|x0| <= rho_lower(eps2)`` are enforced with ``DomainError``.
    """
    _thm2_gates(model, x0, eps, eps1, eps2)
    if not (1 <= n and n + 1 <= model.basis_dim):
        raise DomainError(f"need 1 <= n and n + 1 <= {model.basis_dim}, got n={n}")
    return _witness(model, x0, eps, eps1, n)


def thm2_horizon(model, x0, eps, eps1, eps2):
    """First ``n0`` such that both verdicts hold for every ``n0 <= n < basis_dim``,
    or ``None`` if there is none."""
    _thm2_gates(model, x0, eps, eps1, eps2)
    n0 = None
    for n in range(1, model.basis_dim):
        ok = _witness(model, x0, eps, eps1, n).passed
        if ok and n0 is None:
            n0 = n
        elif not ok:
            n0 = None
    return n0


@dataclass(frozen=True)
class Thm1Result:
    tail_norm: float
    bound: float

    @property
    def passed(self):
        return self.tail_norm < self.bound

    def to_json(self):
        return {"tail_norm": self.tail_norm, "bound": self.bound, "passed": self.passed}


def thm1_tail_bound_check(model, x, x0, N, delta, eps1):
    """Check ``|x - P_N x| < c2 A(delta)`` for ``x`` in the unit ball with
    ``|P_N(x - x0)| < delta`` and ``|P_N x0| > rho_upper(eps1)``."""
    if not 0 < eps1 < 2:
        raise DomainError(f"eps1 must lie in (0, 2), got {eps1}")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    nx = model.dual_norm(x)
    if nx > 1.0 + GUARD:
        raise DomainError(f"x is outside the unit ball: |x| = {nx!r}")
    gap = model.dual_norm(project(x - x0, N))
    if not gap < delta:
        raise DomainError(f"x is not in V_delta: |P_N(x - x0)| = {gap!r} >= {delta!r}")
    rho = rho_upper(model, eps1)
    head0 = model.dual_norm(project(x0, N))
    if not head0 > rho:
        raise DomainError(f"base point gate failed: |P_N x0| = {head0!r} <= rho(eps1) = {rho!r}")
    return Thm1Result(model.dual_norm(tail(x, N)), tail_bound(model, eps1, delta))


def random_sparse(rng, dim, max_support=20, low=-10.0, high=10.0):
    """Random vector with support size in ``[1, max_support]`` inside ``[1, dim]``."""
    size = int(rng.integers(1, min(max_support, dim) + 1))
    idx = np.sort(rng.choice(np.arange(1, dim + 1), size=size, replace=False))
    vals = rng.uniform(low, high, size=size)
    return SparseVector(tuple(zip(idx.tolist(), vals.tolist())))


def _scaled_to(model, v, target):
    n = model.dual_norm(v)
    return v * (target / n) if n > 0 else v


def _shifted(v, offset):
    return SparseVector(tuple((i + offset, x) for i, x in v.entries))


def sample_thm1_probe(model, rng, max_tries=1000):
    """Random ``(x, x0, N, delta, eps1)`` passing the gates of the tail check.

    ``x0`` has head norm above ``rho_upper(eps1)``. ``x`` moves the head of
    ``x0`` by less than ``delta`` and adds a random tail; half of the probes
    put ``x`` on the unit sphere, where the tail bound is tightest.
    """
    dim = model.basis_dim
    for _ in range(max_tries):
        N = int(rng.integers(1, dim // 2 + 1))
        eps1 = float(rng.uniform(0.05, 1.95))
        rho = rho_upper(model, eps1)
        if rho >= 1.0:
            continue
        delta = float(rng.uniform(1e-3, 0.5))
        head0 = _scaled_to(model, random_sparse(rng, N, 8), rng.uniform(rho, 1.0))
        tail0 = _scaled_to(model, _shifted(random_sparse(rng, dim - N, 8), N), rng.uniform(0.0, 1.0))
        x0 = head0 + tail0
        if not model.dual_norm(project(x0, N)) > rho:
            continue
        pert = _scaled_to(model, random_sparse(rng, N, 8), rng.uniform(0.0, 0.999) * delta)
        head = project(x0, N) + pert
        if model.dual_norm(head) >= 1.0:
            continue
        u = _scaled_to(model, _shifted(random_sparse(rng, dim - N, 8), N), 1.0)
        if rng.random() < 0.5:
            tau = bisect(lambda s: model.dual_norm(head + u * s) - 1.0, 0.0, 2.0, rtol=1e-10)
            tau *= 1.0 - 1e-9
        else:
            tau = float(rng.uniform(0.0, 1.0))
        x = head + u * tau
        if model.dual_norm(x) > 1.0:
            continue
        if not model.dual_norm(project(x - x0, N)) < delta:
            continue
        return x, x0, N, delta, eps1
    raise RuntimeError("could not draw a probe through the gates")


@dataclass(frozen=True)
class ProbeReport:
    """Worst head/tail slack over random vectors and projection indices."""

    direction: str
    worst_slack: float
    argworst: tuple
    samples: int
    n_range: tuple
    horizon: object  # first n from which every sample satisfied the inequality
    violations: int
    tolerance: float = SLACK_TOL

    @property
    def passed(self):
        return self.violations == 0

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_json(self):
        return {
            "direction": self.direction,
            "worst_slack": self.worst_slack,
            "argworst": list(self.argworst) if self.argworst else None,
            "samples": self.samples,
            "n_range": list(self.n_range),
            "horizon": self.horizon,
            "violations": self.violations,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }

    def as_residual_report(self):
        excess = max(0.0, -self.worst_slack if self.direction == "forward" else self.worst_slack)
        return ResidualReport(excess, self.argworst, self.samples, self.tolerance)


def slack(model, x, n):
    tr = model.triple
    return (tr.chi(model.z_norm(x)) - tr.phi(model.z_norm(project(x, n)))
            - tr.psi(model.z_norm(tail(x, n))))


def inequality_probe(model, direction, samples, n_range, rng, tolerance=SLACK_TOL):
    """Sample the head/tail inequality on random vectors.

    ``forward`` requires ``slack >= -tolerance`` (head and tail moduli bounded
    by the whole), ``reverse`` requires ``slack <= tolerance``.
    """
    if direction not in ("forward", "reverse"):
        raise DomainError(f"direction must be 'forward' or 'reverse', got {direction!r}")
    n_lo, n_hi = n_range
    if not 0 <= n_lo <= n_hi <= model.basis_dim:
        raise DomainError(f"need 0 <= n_lo <= n_hi <= {model.basis_dim}, got {n_range}")
    sign = 1.0 if direction == "forward" else -1.0
    worst, argworst, violations = math.inf, None, 0
    bad_ns = set()
    for k in range(samples):
        x = random_sparse(rng, model.basis_dim)
        for n in range(n_lo, n_hi + 1):
            s = slack(model, x, n)
            if argworst is None or sign * s < sign * worst:
                worst, argworst = s, (k, n)
            if sign * s < -tolerance:
                violations += 1
                bad_ns.add(n)
    horizon = n_lo if not bad_ns else (max(bad_ns) + 1 if max(bad_ns) < n_hi else None)
    return ProbeReport(direction, float(worst), argworst, samples, (n_lo, n_hi), horizon,
                       violations, tolerance)
