"""Finite carriers, operation tables and exhaustive axiom checkers.

An m-ary operation on the carrier ``{0, ..., k-1}`` is stored as a dense
numpy array of shape ``(k,) * m``; ``table[x1, ..., xm]`` is the result.
The flat row-major view (leftmost argument most significant) is the
serialization format.

Every checker returns a :class:`Check`, which is truthy when the property
holds and otherwise carries a :class:`Witness` that can be replayed.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ArityBound,
    ArityMismatch,
    BudgetExceeded,
    CarrierMismatch,
    IdentityConflict,
    IndexOutOfRange,
    NoIdentity,
)

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Limits:
    min_arity: int = 2
    max_arity: int = 4
    max_carrier: int = 12


DEFAULT_LIMITS = Limits()


def _dtype_for(k):
    return np.uint8 if k <= 256 else np.int32


class OpTable:
    """A k^arity-entry table realizing an ``arity``-ary operation."""

    __slots__ = ("arity", "k", "table")

    def __init__(self, table, *, limits: Limits = DEFAULT_LIMITS):
        arr = np.asarray(table)
        if arr.ndim < 1 or len(set(arr.shape)) != 1:
            raise ArityMismatch(f"operation table must be a hypercube, got shape {arr.shape}")
        k, arity = arr.shape[0], arr.ndim
        if not limits.min_arity <= arity <= limits.max_arity:
            raise ArityBound(f"arity {arity} outside [{limits.min_arity}, {limits.max_arity}]")
        if not 1 <= k <= limits.max_carrier:
            raise ArityBound(f"carrier size {k} outside [1, {limits.max_carrier}]")
        if not np.issubdtype(arr.dtype, np.integer):
            raise IndexOutOfRange("table entries must be integers")
        if arr.size and (arr.min() < 0 or arr.max() >= k):
            raise IndexOutOfRange(f"table entries must lie in [0, {k})")
        arr = arr.astype(_dtype_for(k))
        arr.flags.writeable = False
        self.arity = arity
        self.k = k
        self.table = arr

    @classmethod
    def from_entries(cls, k, arity, entries, *, limits: Limits = DEFAULT_LIMITS):
        entries = list(entries)
        if len(entries) != k**arity:
            raise ArityMismatch(f"expected {k**arity} entries for k={k}, arity={arity}, got {len(entries)}")
        return cls(np.array(entries, dtype=np.int64).reshape((k,) * arity), limits=limits)

    @classmethod
    def from_function(cls, k, arity, fn, *, limits: Limits = DEFAULT_LIMITS):
        entries = [fn(*args) for args in itertools.product(range(k), repeat=arity)]
        return cls.from_entries(k, arity, entries, limits=limits)

    @property
    def entries(self) -> tuple:
        return tuple(int(v) for v in self.table.ravel())

    def __call__(self, *args):
        return eval_op(self, args)

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return self.arity == other.arity and self.k == other.k and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.arity, self.k, self.table.tobytes()))

    def __repr__(self):
        return f"OpTable(k={self.k}, arity={self.arity})"


def eval_op(op: OpTable, args: Sequence[int]) -> int:
    if len(args) != op.arity:
        raise ArityMismatch(f"expected {op.arity} arguments, got {len(args)}")
    for a in args:
        if not 0 <= a < op.k:
            raise IndexOutOfRange(f"element {a} not in carrier of size {op.k}")
    return int(op.table[tuple(args)])


class WitnessKind(enum.Enum):
    ASSOC_FAIL = "AssocFail"
    COMM_FAIL = "CommFail"
    DIST_FAIL = "DistFail"
    CANCEL_FAIL = "CancelFail"
    ZERO_DIVISOR = "ZeroDivisor"
    ZERO_SUM = "ZeroSum"
    OTHER = "Other"


@dataclass(frozen=True)
class Witness:
    """A concrete counterexample.

    ``args`` holds the element tuples that reproduce the violation and
    ``positions`` the 1-based argument positions involved, if any.
    ``lhs``/``rhs`` are the two values the violated law claims equal (or,
    for cancellation, zero-divisor and zero-sum failures, the two values
    whose equality is the violation).
    """

    kind: WitnessKind
    args: tuple
    lhs: int
    rhs: int
    positions: tuple = ()
    detail: str = ""

    def replay(self, *tables: OpTable) -> bool:
        """Re-evaluate on ``tables`` and report whether the violation reproduces.

        AssocFail, CommFail, CancelFail and Other take the offending table;
        DistFail takes ``(g, f)``; ZeroDivisor and ZeroSum take the table
        whose zero-behaviour failed (``rhs`` holds the zero).
        """
        kind = self.kind
        if kind is WitnessKind.DIST_FAIL:
            g, f = tables
            (i,) = self.positions
            xs, a = self.args
            lhs, rhs = _distribute_pair(g, f, xs, a, i - 1)
            return (lhs, rhs) == (self.lhs, self.rhs) and lhs != rhs
        (op,) = tables
        if kind is WitnessKind.ASSOC_FAIL:
            (xs,) = self.args
            i, j = self.positions
            lhs, rhs = _nest(op, xs, i - 1), _nest(op, xs, j - 1)
            return (lhs, rhs) == (self.lhs, self.rhs) and lhs != rhs
        if kind is WitnessKind.COMM_FAIL:
            xs, ys = self.args
            lhs, rhs = eval_op(op, xs), eval_op(op, ys)
            return sorted(xs) == sorted(ys) and (lhs, rhs) == (self.lhs, self.rhs) and lhs != rhs
        if kind is WitnessKind.CANCEL_FAIL:
            xs, ys = self.args
            differ = [p for p in range(op.arity) if xs[p] != ys[p]]
            lhs, rhs = eval_op(op, xs), eval_op(op, ys)
            return len(differ) == 1 and (lhs, rhs) == (self.lhs, self.rhs) and lhs == rhs
        if kind is WitnessKind.ZERO_DIVISOR:
            (xs,) = self.args
            zero = self.rhs
            return eval_op(op, xs) == self.lhs == zero and all(x != zero for x in xs)
        if kind is WitnessKind.ZERO_SUM:
            (xs,) = self.args
            zero = self.rhs
            return eval_op(op, xs) == self.lhs == zero and any(x != zero for x in xs)
        (xs,) = self.args
        lhs = eval_op(op, xs)
        return lhs == self.lhs and lhs != self.rhs


@dataclass(frozen=True)
class Check:
    """Outcome of a property check: truthy iff the property holds."""

    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.holds


PASS = Check(True)


def _nest(op: OpTable, xs, i):
    """Evaluate ``op(x_1..x_i, op(x_{i+1}..x_{i+m}), ...)`` with 0-based inner start ``i``."""
    m = op.arity
    inner = int(op.table[tuple(xs[i:i + m])])
    return int(op.table[tuple(xs[:i]) + (inner,) + tuple(xs[i + m:])])


def _distribute_pair(g: OpTable, f: OpTable, xs, a, i):
    xs = tuple(xs)
    lhs = int(g.table[xs[:i] + (int(f.table[tuple(a)]),) + xs[i:]])
    parts = tuple(int(g.table[xs[:i] + (aj,) + xs[i:]]) for aj in a)
    return lhs, int(f.table[parts])


def _grid(k, nvars):
    """Open mesh: one broadcastable index array per free variable."""
    return [np.arange(k, dtype=np.intp).reshape((1,) * j + (k,) + (1,) * (nvars - j - 1)) for j in range(nvars)]


def _first_index(mask):
    return tuple(int(v) for v in np.unravel_index(int(np.argmax(mask)), mask.shape))


def _require_budget(needed, budget):
    if needed > budget:
        raise BudgetExceeded(needed, budget)


def check_associativity(op: OpTable, *, budget: int = DEFAULT_BUDGET) -> Check:
    """Exhaustive m-ary associativity check.

    Only adjacent inner positions (i, i+1) are compared: equality of all
    adjacent pairs chains to every pair i <= j.
    """
    m, k = op.arity, op.k
    nvars = 2 * m - 1
    _require_budget(k**nvars, budget)
    xs = _grid(k, nvars)
    T = op.table

    def nest(i):
        return T[tuple(xs[:i]) + (T[tuple(xs[i:i + m])],) + tuple(xs[i + m:])]

    prev = nest(0)
    for i in range(1, m):
        cur = nest(i)
        bad = prev != cur
        if bad.any():
            args = _first_index(bad)
            return Check(False, Witness(WitnessKind.ASSOC_FAIL, (args,), int(prev[args]), int(cur[args]), (i, i + 1)))
        prev = cur
    return PASS


def check_commutativity(op: OpTable, *, budget: int = DEFAULT_BUDGET) -> Check:
    m, k = op.arity, op.k
    _require_budget(k**m * (m - 1), budget)
    T = op.table
    for i in range(m - 1):
        swapped = T.swapaxes(i, i + 1)
        bad = T != swapped
        if bad.any():
            args = _first_index(bad)
            perm = list(args)
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            return Check(False, Witness(WitnessKind.COMM_FAIL, (args, tuple(perm)), int(T[args]), int(T[tuple(perm)]), (i + 1, i + 2)))
    return PASS


def check_distributivity(g: OpTable, f: OpTable, *, budget: int = DEFAULT_BUDGET) -> Check:
    """Check that ``g`` distributes over ``f`` in every argument position."""
    if g.k != f.k:
        raise CarrierMismatch(f"carrier sizes differ: {g.k} vs {f.k}")
    n, m, k = g.arity, f.arity, g.k
    nvars = n - 1 + m
    _require_budget(k**nvars * n, budget)
    grid = _grid(k, nvars)
    xs, a = grid[:n - 1], grid[n - 1:]
    G, F = g.table, f.table
    fa = F[tuple(a)]
    for i in range(n):
        before, after = tuple(xs[:i]), tuple(xs[i:])
        lhs = G[before + (fa,) + after]
        rhs = F[tuple(G[before + (aj,) + after] for aj in a)]
        lhs, rhs = np.broadcast_arrays(lhs, rhs)
        bad = lhs != rhs
        if bad.any():
            idx = _first_index(bad)
            w = Witness(WitnessKind.DIST_FAIL, (idx[:n - 1], idx[n - 1:]), int(lhs[idx]), int(rhs[idx]), (i + 1,))
            return Check(False, w)
    return PASS


def identity_elements(op: OpTable) -> tuple:
    """Every element neutral in every argument position.

    For arity > 2 there may be several: in the ternary product mod 4 both
    1 and 3 qualify since 3 * 3 = 1.
    """
    m, k = op.arity, op.k
    ar = np.arange(k)
    return tuple(
        e for e in range(k)
        if all(np.array_equal(op.table[(e,) * i + (slice(None),) + (e,) * (m - i - 1)], ar) for i in range(m))
    )


def find_identity(op: OpTable, *, unique: bool = False) -> Optional[int]:
    """Least identity element, or ``None``.

    With ``unique=True`` raise :class:`IdentityConflict` when several exist;
    that cannot happen for binary operations.
    """
    found = identity_elements(op)
    if unique and len(found) > 1:
        raise IdentityConflict(f"elements {list(found)} all satisfy the identity law")
    return found[0] if found else None


def idempotent_elements(op: OpTable, exclude: Optional[int] = None) -> frozenset:
    diag = op.table[(np.arange(op.k),) * op.arity]
    return frozenset(int(x) for x in np.flatnonzero(diag == np.arange(op.k)) if x != exclude)


def check_idempotent(op: OpTable, exclude: Optional[int] = None) -> Check:
    for x in range(op.k):
        if x == exclude:
            continue
        val = int(op.table[(x,) * op.arity])
        if val != x:
            return Check(False, Witness(WitnessKind.OTHER, ((x,) * op.arity,), val, x, detail="not idempotent"))
    return PASS


def is_cancellative(op: OpTable, *, exclude: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> Check:
    """Every one-argument slice ``a -> op(ctx, a, ctx')`` is injective.

    With ``exclude`` set, context elements equal to it are skipped (the
    varying argument still ranges over the whole carrier).
    """
    m, k = op.arity, op.k
    _require_budget(k**m * k, budget)
    for i in range(m):
        moved = np.moveaxis(op.table, i, -1).reshape(-1, k)
        contexts = list(itertools.product(range(k), repeat=m - 1))
        for row, ctx in zip(moved, contexts):
            if exclude is not None and exclude in ctx:
                continue
            seen = {}
            for a, val in enumerate(row):
                val = int(val)
                if val in seen:
                    b = seen[val]
                    xs = ctx[:i] + (b,) + ctx[i:]
                    ys = ctx[:i] + (a,) + ctx[i:]
                    return Check(False, Witness(WitnessKind.CANCEL_FAIL, (xs, ys), val, val, (i + 1,)))
                seen[val] = a
    return PASS


def is_left_cancellable_tuple(op: OpTable, prefix: Sequence[int]) -> bool:
    if len(prefix) != op.arity - 1:
        raise ArityMismatch(f"expected a tuple of length {op.arity - 1}, got {len(prefix)}")
    for x in prefix:
        if not 0 <= x < op.k:
            raise IndexOutOfRange(f"element {x} not in carrier of size {op.k}")
    row = op.table[tuple(prefix)]
    return len(np.unique(row)) == op.k


@dataclass(frozen=True)
class MNSemiring:
    """Carrier ``{0..k-1}`` with an m-ary ``f`` and an n-ary ``g``.

    Identities are detected from the tables unless given; a supplied
    identity is validated against the identity law. Construction does not
    verify the semiring axioms, see :func:`verify_mn_semiring`.
    """

    f: OpTable
    g: OpTable
    f_identity: Optional[int] = None
    g_identity: Optional[int] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.f.k != self.g.k:
            raise CarrierMismatch(f"f has carrier {self.f.k}, g has carrier {self.g.k}")
        for attr, op in (("f_identity", self.f), ("g_identity", self.g)):
            given = getattr(self, attr)
            if given is None:
                object.__setattr__(self, attr, find_identity(op))
            elif given not in identity_elements(op):
                raise NoIdentity(f"{given} is not an identity of {attr[0]}")

    @property
    def k(self):
        return self.f.k

    @property
    def m(self):
        return self.f.arity

    @property
    def n(self):
        return self.g.arity

    @property
    def zero(self) -> int:
        if self.f_identity is None:
            raise NoIdentity("f has no identity element")
        return self.f_identity

    @property
    def one(self) -> int:
        if self.g_identity is None:
            raise NoIdentity("g has no identity element")
        return self.g_identity

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<MNSemiring{label} k={self.k} (m,n)=({self.m},{self.n})>"


@dataclass(frozen=True)
class PropertyReport:
    associative_f: Check
    associative_g: Check
    distributive: Check
    commutative_f: Check
    commutative_g: Check
    f_identity: Optional[int] = None
    g_identity: Optional[int] = None
    absorbing_zero: Optional[bool] = None
    zero_divisor_free: Optional[Check] = None
    zero_sum_free: Optional[Check] = None
    add_cancellative: Optional[Check] = None
    mult_cancellative: Optional[Check] = None
    add_idempotent: Optional[Check] = None
    mult_idempotent: Optional[Check] = None

    @property
    def is_semiring(self) -> bool:
        return bool(self.associative_f and self.associative_g and self.distributive)

    def items(self):
        """(name, value) pairs in a fixed order; values are bools, ints or None."""
        for name in self.__dataclass_fields__:
            val = getattr(self, name)
            yield name, (val.holds if isinstance(val, Check) else val)


def verify_mn_semiring(S: MNSemiring, *, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Check the three semiring axioms; commutativity is reported alongside."""
    return PropertyReport(
        associative_f=check_associativity(S.f, budget=budget),
        associative_g=check_associativity(S.g, budget=budget),
        distributive=check_distributivity(S.g, S.f, budget=budget),
        commutative_f=check_commutativity(S.f, budget=budget),
        commutative_g=check_commutativity(S.g, budget=budget),
        f_identity=S.f_identity,
        g_identity=S.g_identity,
    )


def is_absorbing(S: MNSemiring, z: int) -> bool:
    if not 0 <= z < S.k:
        raise IndexOutOfRange(f"element {z} not in carrier of size {S.k}")
    G = S.g.table
    return all(bool((G.take(z, axis=i) == z).all()) for i in range(S.n))


def is_zero_divisor_free(S: MNSemiring) -> Check:
    zero = S.zero
    G = S.g.table
    mask = G == zero
    for axis in range(S.n):
        shape = [1] * S.n
        shape[axis] = S.k
        mask = mask & (np.arange(S.k) != zero).reshape(shape)
    if mask.any():
        args = _first_index(mask)
        return Check(False, Witness(WitnessKind.ZERO_DIVISOR, (args,), zero, zero))
    return PASS


def is_zero_sum_free(S: MNSemiring) -> Check:
    zero = S.zero
    F = S.f.table
    mask = F == zero
    mask[(zero,) * S.m] = False
    if mask.any():
        args = _first_index(mask)
        return Check(False, Witness(WitnessKind.ZERO_SUM, (args,), zero, zero))
    return PASS


def is_multiplicatively_left_cancellative(S: MNSemiring) -> bool:
    """Every (n-1)-tuple of nonzero elements is left cancellable in ``g``."""
    zero = S.zero
    nonzero = [x for x in range(S.k) if x != zero]
    return all(is_left_cancellable_tuple(S.g, t) for t in itertools.product(nonzero, repeat=S.n - 1))


def left_zero_divisor_witness(S: MNSemiring, prefix: Sequence[int]) -> Optional[int]:
    """Some ``a != 0`` with ``g(prefix, a) = 0``, or ``None``."""
    zero = S.zero
    row = S.g.table[tuple(prefix)]
    for a in range(S.k):
        if a != zero and int(row[a]) == zero:
            return a
    return None


def analyze(S: MNSemiring, *, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Full structural report: axioms plus every optional property."""
    base = verify_mn_semiring(S, budget=budget)
    has_zero = S.f_identity is not None
    zero = S.f_identity
    return PropertyReport(
        associative_f=base.associative_f,
        associative_g=base.associative_g,
        distributive=base.distributive,
        commutative_f=base.commutative_f,
        commutative_g=base.commutative_g,
        f_identity=S.f_identity,
        g_identity=S.g_identity,
        absorbing_zero=is_absorbing(S, zero) if has_zero else None,
        zero_divisor_free=is_zero_divisor_free(S) if has_zero else None,
        zero_sum_free=is_zero_sum_free(S) if has_zero else None,
        add_cancellative=is_cancellative(S.f, budget=budget),
        mult_cancellative=is_cancellative(S.g, budget=budget),
        add_idempotent=check_idempotent(S.f),
        mult_idempotent=check_idempotent(S.g, exclude=zero),
    )
