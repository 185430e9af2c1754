"""Builders for standard (m,n)-semirings and sampled checks on rule-defined carriers."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import (
    DEFAULT_LIMITS,
    Check,
    Limits,
    MNSemiring,
    OpTable,
    check_associativity,
    check_distributivity,
)
from .errors import ArityBound, ArityMismatch, IndexOutOfRange


@dataclass(frozen=True)
class BinarySemiringSpec:
    """An ordinary semiring given by binary ``add`` and ``mul`` tables."""

    add: OpTable
    mul: OpTable

    def __post_init__(self):
        if self.add.arity != 2 or self.mul.arity != 2:
            raise ArityMismatch("add and mul must be binary")
        if self.add.k != self.mul.k:
            raise ArityMismatch("add and mul must share a carrier")

    @property
    def k(self):
        return self.add.k

    def check(self) -> Check:
        for c in (check_associativity(self.add), check_associativity(self.mul),
                  check_distributivity(self.mul, self.add)):
            if not c:
                return c
        return Check(True)


def _fold(binary: np.ndarray, arity: int) -> np.ndarray:
    k = binary.shape[0]
    acc = np.arange(k)
    for step in range(1, arity):
        acc = binary[acc[..., None], np.arange(k).reshape((1,) * step + (k,))]
    return acc


def _check_arities(m, n, limits):
    for name, a in (("m", m), ("n", n)):
        if not limits.min_arity <= a <= limits.max_arity:
            raise ArityBound(f"{name}={a} outside [{limits.min_arity}, {limits.max_arity}]")


def from_binary_semiring(spec: BinarySemiringSpec, m: int, n: int, *,
                         limits: Limits = DEFAULT_LIMITS, name: str = "") -> MNSemiring:
    """``f`` is the left-folded m-fold sum, ``g`` the left-folded n-fold product."""
    _check_arities(m, n, limits)
    f = OpTable(_fold(spec.add.table, m), limits=limits)
    g = OpTable(_fold(spec.mul.table, n), limits=limits)
    return MNSemiring(f, g, name=name)


def modular_mn_semiring(k: int, m: int, n: int, *, limits: Limits = DEFAULT_LIMITS) -> MNSemiring:
    if not 1 <= k <= limits.max_carrier:
        raise ArityBound(f"carrier size {k} outside [1, {limits.max_carrier}]")
    add = OpTable.from_function(k, 2, lambda x, y: (x + y) % k, limits=limits)
    mul = OpTable.from_function(k, 2, lambda x, y: (x * y) % k, limits=limits)
    return from_binary_semiring(BinarySemiringSpec(add, mul), m, n, limits=limits, name=f"Z{k}")


def boolean_mn_semiring(atoms: int, m: int, n: int, *, limits: Limits = DEFAULT_LIMITS) -> MNSemiring:
    """Subsets of ``atoms`` atoms as bitmasks; ``f`` is union, ``g`` intersection."""
    if not 1 <= atoms <= 3:
        raise ArityBound(f"atoms={atoms} outside [1, 3]")
    k = 2**atoms
    add = OpTable.from_function(k, 2, lambda x, y: x | y, limits=limits)
    mul = OpTable.from_function(k, 2, lambda x, y: x & y, limits=limits)
    return from_binary_semiring(BinarySemiringSpec(add, mul), m, n, limits=limits, name=f"B{atoms}")


def derive_binary_ops(S: MNSemiring, a_fix: Optional[Sequence[int]] = None,
                      b_fix: Optional[Sequence[int]] = None) -> tuple[OpTable, OpTable]:
    """``x (+) y = f(x, a_fix, y)`` and ``x (x) y = g(x, b_fix, y)``.

    Omitted fixings default to the identities (zeros for ``f``, ones for
    ``g``), raising :class:`NoIdentity` if the identity is missing.
    """
    if a_fix is None:
        a_fix = (S.zero,) * (S.m - 2) if S.m > 2 else ()
    if b_fix is None:
        b_fix = (S.one,) * (S.n - 2) if S.n > 2 else ()
    a_fix, b_fix = tuple(a_fix), tuple(b_fix)
    if len(a_fix) != S.m - 2 or len(b_fix) != S.n - 2:
        raise ArityMismatch(f"need {S.m - 2} f-fixings and {S.n - 2} g-fixings")
    for x in a_fix + b_fix:
        if not 0 <= x < S.k:
            raise IndexOutOfRange(f"element {x} not in carrier of size {S.k}")
    xs = np.arange(S.k).reshape(-1, 1)
    ys = np.arange(S.k).reshape(1, -1)
    plus = S.f.table[(xs,) + a_fix + (ys,)]
    times = S.g.table[(xs,) + b_fix + (ys,)]
    return OpTable(plus), OpTable(times)


@dataclass
class RuleCarrier:
    """A possibly infinite carrier given by rules on integer pseudo-elements.

    ``sampler`` draws one element from a ``random.Random``; ``f_rule`` and
    ``g_rule`` take a tuple of any length.
    """

    name: str
    sampler: Callable[[random.Random], int]
    f_rule: Callable[[tuple], int]
    g_rule: Callable[[tuple], int]
    membership: Callable[[int], bool]


@dataclass
class SampledReport:
    name: str
    m: int
    n: int
    trials: int
    seed: int
    closure_violations: list = field(default_factory=list)
    associativity_violations: list = field(default_factory=list)
    distributivity_violations: list = field(default_factory=list)
    label: str = "sampled - not a proof"

    @property
    def clean(self) -> bool:
        return not (self.closure_violations or self.associativity_violations or self.distributivity_violations)

    def summary(self) -> str:
        return (f"{self.name} ({self.m},{self.n}): {self.trials} trials, seed {self.seed}; "
                f"closure violations {len(self.closure_violations)}, "
                f"associativity violations {len(self.associativity_violations)}, "
                f"distributivity violations {len(self.distributivity_violations)} [{self.label}]")


def sampled_verify(rc: RuleCarrier, m: int, n: int, trials: int, seed: int, *,
                   keep: int = 5) -> SampledReport:
    """Randomized search for closure, associativity and distributivity failures.

    Deterministic for a fixed seed. At most ``keep`` violations of each kind
    are recorded; each is a ``(rule, args, lhs, rhs)`` tuple.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    report = SampledReport(rc.name, m, n, trials, seed)

    def record(bucket, item):
        if len(bucket) < keep:
            bucket.append(item)

    def closure(rule_name, rule, args):
        out = rule(args)
        if not rc.membership(out):
            record(report.closure_violations, (rule_name, args, out, None))
        return out

    for _ in range(trials):
        for rule_name, rule, arity in (("f", rc.f_rule, m), ("g", rc.g_rule, n)):
            xs = tuple(rc.sampler(rng) for _ in range(2 * arity - 1))
            closure(rule_name, rule, xs[:arity])
            nests = [rule(xs[:i] + (rule(xs[i:i + arity]),) + xs[i + arity:]) for i in range(arity)]
            for i in range(arity - 1):
                if nests[i] != nests[i + 1]:
                    record(report.associativity_violations, (rule_name, xs, nests[i], nests[i + 1]))
                    break
        xs = tuple(rc.sampler(rng) for _ in range(n - 1))
        a = tuple(rc.sampler(rng) for _ in range(m))
        for i in range(n):
            lhs = rc.g_rule(xs[:i] + (rc.f_rule(a),) + xs[i:])
            rhs = rc.f_rule(tuple(rc.g_rule(xs[:i] + (aj,) + xs[i:]) for aj in a))
            if lhs != rhs:
                record(report.distributivity_violations, ("g/f", (xs, a, i + 1), lhs, rhs))
    return report


def negative_integers(n: int = 3, *, low: int = -10**6) -> RuleCarrier:
    """Z_- with binary addition and n-ary multiplication."""
    return RuleCarrier(
        name=f"Z- (+, {n}-ary *)",
        sampler=lambda rng: rng.randint(low, -1),
        f_rule=sum,
        g_rule=math.prod,
        membership=lambda x: x < 0,
    )


def wrap_finite(S: MNSemiring) -> RuleCarrier:
    """Expose a finite algebra through the rule interface (for cross-checking)."""
    return RuleCarrier(
        name=S.name or f"finite k={S.k}",
        sampler=lambda rng: rng.randrange(S.k),
        f_rule=lambda xs: int(S.f.table[tuple(xs)]),
        g_rule=lambda xs: int(S.g.table[tuple(xs)]),
        membership=lambda x: 0 <= x < S.k,
    )
