"""Congruences, quotients, homomorphisms and kernels.

Partitions of the carrier are stored as restricted-growth strings: element
``x`` lies in block ``block_of[x]`` and block ids appear in order of first
occurrence, so every partition has exactly one representation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import (
    Check,
    MNSemiring,
    OpTable,
    Witness,
    WitnessKind,
    idempotent_elements,
    identity_elements,
    is_absorbing,
)
from .errors import (
    ArityMismatch,
    CarrierMismatch,
    CarrierTooLarge,
    IndexOutOfRange,
    NotACongruence,
    NotAHomomorphism,
    SizeMismatch,
)

MAX_CONGRUENCE_CARRIER = 10
MAX_ISO_CARRIER = 8


def _canonical(labels: Sequence) -> tuple:
    seen = {}
    return tuple(seen.setdefault(lab, len(seen)) for lab in labels)


@dataclass(frozen=True)
class Congruence:
    """A partition of ``{0..k-1}``; compatibility is checked by :func:`is_congruence`."""

    block_of: tuple

    def __post_init__(self):
        object.__setattr__(self, "block_of", _canonical(self.block_of))

    @classmethod
    def from_blocks(cls, blocks, k=None) -> "Congruence":
        blocks = [sorted(b) for b in blocks]
        k = k if k is not None else sum(len(b) for b in blocks)
        labels = [None] * k
        for idx, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < k or labels[x] is not None:
                    raise IndexOutOfRange(f"element {x} is out of range or repeated")
                labels[x] = idx
        if None in labels:
            raise IndexOutOfRange(f"elements {[x for x, v in enumerate(labels) if v is None]} not covered")
        return cls(tuple(labels))

    @classmethod
    def parse(cls, text: str, k=None) -> "Congruence":
        """Parse ``"0,3|1,4|2,5"``."""
        blocks = [[int(x) for x in part.replace(",", " ").split()] for part in text.split("|")]
        return cls.from_blocks(blocks, k)

    @classmethod
    def discrete(cls, k) -> "Congruence":
        return cls(tuple(range(k)))

    @classmethod
    def total(cls, k) -> "Congruence":
        return cls((0,) * k)

    @property
    def k(self):
        return len(self.block_of)

    @property
    def num_blocks(self):
        return max(self.block_of) + 1 if self.block_of else 0

    @property
    def blocks(self) -> tuple:
        out = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return tuple(tuple(b) for b in out)

    @property
    def representatives(self) -> tuple:
        return tuple(b[0] for b in self.blocks)

    def refines(self, other: "Congruence") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        return all(len({other.block_of[x] for x in block}) == 1 for block in self.blocks)

    def __str__(self):
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)


@dataclass(frozen=True)
class Morphism:
    domain_size: int
    codomain_size: int
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.domain_size:
            raise SizeMismatch(f"map has {len(self.map)} entries for a domain of size {self.domain_size}")
        for v in self.map:
            if not 0 <= v < self.codomain_size:
                raise IndexOutOfRange(f"image {v} not in codomain of size {self.codomain_size}")

    @classmethod
    def identity(cls, k) -> "Morphism":
        return cls(k, k, tuple(range(k)))

    def __call__(self, x):
        return self.map[x]

    @property
    def injective(self):
        return len(set(self.map)) == self.domain_size

    @property
    def surjective(self):
        return len(set(self.map)) == self.codomain_size


def _check_substitution(op: OpTable, block: np.ndarray, which: str) -> Optional[Witness]:
    k, arity = op.k, op.arity
    T = op.table
    blocks_out = block[T]
    for i in range(arity):
        moved = np.moveaxis(blocks_out, i, -1).reshape(-1, k)
        contexts = itertools.product(range(k), repeat=arity - 1)
        for row, ctx in zip(moved, contexts):
            for a in range(k):
                for b in range(a + 1, k):
                    if block[a] == block[b] and row[a] != row[b]:
                        xs = ctx[:i] + (a,) + ctx[i:]
                        ys = ctx[:i] + (b,) + ctx[i:]
                        return Witness(WitnessKind.OTHER, (xs, ys), int(row[a]), int(row[b]), (i + 1,),
                                       detail=f"{which}: related arguments, unrelated results (block ids)")
    return None


def is_congruence(S: MNSemiring, part: Congruence) -> Check:
    """Single-position substitution test for ``f`` and ``g``.

    Replacing the arguments one at a time chains single substitutions into
    the full m-fold condition, so this is equivalent to the usual
    definition. A witness holds the two argument tuples and the block ids
    of their images.
    """
    if part.k != S.k:
        raise CarrierMismatch(f"partition of {part.k} elements, carrier has {S.k}")
    block = np.asarray(part.block_of)
    for op, which in ((S.f, "f"), (S.g, "g")):
        w = _check_substitution(op, block, which)
        if w is not None:
            return Check(False, w)
    return Check(True)


def _compatible_prefix(S: MNSemiring, labels: list) -> bool:
    """No violation among elements already assigned (used for pruning)."""
    t = len(labels)
    for op in (S.f, S.g):
        T = op.table
        sub = T[(slice(0, t),) * op.arity]
        for i in range(op.arity):
            for a in range(t):
                for b in range(a + 1, t):
                    if labels[a] != labels[b]:
                        continue
                    ra = np.take(sub, a, axis=i)
                    rb = np.take(sub, b, axis=i)
                    diff = ra != rb
                    if not diff.any():
                        continue
                    for u, v in zip(ra[diff], rb[diff]):
                        if u < t and v < t and labels[u] != labels[v]:
                            return False
    return True


def enumerate_congruences(S: MNSemiring, *, max_k: int = MAX_CONGRUENCE_CARRIER) -> list:
    """All congruences, in lexicographic order of their restricted-growth strings."""
    k = S.k
    if k > max_k:
        raise CarrierTooLarge(f"k={k} exceeds the partition enumeration guard {max_k}")
    found = []
    labels = [0] * k

    def rec(pos, maxlab):
        if not _compatible_prefix(S, labels[:pos]):
            return
        if pos == k:
            part = Congruence(tuple(labels))
            if is_congruence(S, part):
                found.append(part)
            return
        for lab in range(maxlab + 2):
            labels[pos] = lab
            rec(pos + 1, max(maxlab, lab))

    rec(1, 0)
    return found


def quotient(S: MNSemiring, sigma: Congruence) -> MNSemiring:
    """Algebra on the blocks of ``sigma`` (block ids are the new elements)."""
    c = is_congruence(S, sigma)
    if not c:
        raise NotACongruence(f"{sigma} is not a congruence: {c.witness}")
    reps = np.asarray(sigma.representatives)
    block = np.asarray(sigma.block_of)

    def lift(op):
        return OpTable(block[op.table[np.ix_(*([reps] * op.arity))]])

    return MNSemiring(lift(S.f), lift(S.g), name=f"{S.name}/{sigma}" if S.name else "")


def _check_hom_op(op_s: OpTable, op_t: OpTable, phi: np.ndarray, which: str) -> Optional[Witness]:
    lhs = phi[op_s.table]
    rhs = op_t.table[np.ix_(*([phi] * op_s.arity))]
    bad = lhs != rhs
    if bad.any():
        idx = tuple(int(v) for v in np.argwhere(bad)[0])
        return Witness(WitnessKind.OTHER, (idx,), int(lhs[idx]), int(rhs[idx]),
                       detail=f"{which}: phi(op(x)) != op'(phi(x))")
    return None


def is_homomorphism(S: MNSemiring, T: MNSemiring, phi: Morphism) -> Check:
    if (S.m, S.n) != (T.m, T.n):
        raise ArityMismatch(f"arities differ: ({S.m},{S.n}) vs ({T.m},{T.n})")
    if (phi.domain_size, phi.codomain_size) != (S.k, T.k):
        raise ArityMismatch("morphism sizes do not match the algebras")
    arr = np.asarray(phi.map, dtype=np.intp)
    for which in ("f", "g"):
        w = _check_hom_op(getattr(S, which), getattr(T, which), arr, which)
        if w is not None:
            return Check(False, w)
    return Check(True)


def compose_maps(phi: Morphism, psi: Morphism) -> Morphism:
    """``psi o phi``: apply ``phi`` first."""
    if phi.codomain_size != psi.domain_size:
        raise SizeMismatch(f"cannot compose: codomain {phi.codomain_size} vs domain {psi.domain_size}")
    return Morphism(phi.domain_size, psi.codomain_size, tuple(psi.map[v] for v in phi.map))


def kernel(phi: Morphism) -> Congruence:
    return Congruence(phi.map)


def projection(sigma: Congruence) -> Morphism:
    return Morphism(sigma.k, sigma.num_blocks, sigma.block_of)


def induced_injection(S: MNSemiring, T: MNSemiring, phi: Morphism) -> tuple[MNSemiring, Morphism]:
    """Factor ``phi`` as an injective homomorphism after the quotient map."""
    c = is_homomorphism(S, T, phi)
    if not c:
        raise NotAHomomorphism(f"not a homomorphism: {c.witness}")
    ker = kernel(phi)
    Q = quotient(S, ker)
    psi = Morphism(ker.num_blocks, T.k, tuple(phi.map[r] for r in ker.representatives))
    return Q, psi


def induced_partition(rho: Congruence, sigma: Congruence) -> Congruence:
    """The partition sigma/rho on the blocks of ``rho`` (requires rho refining sigma)."""
    if not rho.refines(sigma):
        raise NotACongruence(f"{rho} does not refine {sigma}")
    return Congruence(tuple(sigma.block_of[r] for r in rho.representatives))


def _profile(S: MNSemiring, x: int) -> tuple:
    """Isomorphism-invariant data of an element, used to prune the search.

    Identity roles use the full identity sets; the least identity depends on
    the labelling when there are several.
    """
    return (
        x in identity_elements(S.f),
        x in identity_elements(S.g),
        int(S.f.table[(x,) * S.m]) == x,
        int(S.g.table[(x,) * S.n]) == x,
        is_absorbing(S, x),
        int(np.count_nonzero(S.f.table == x)),
        int(np.count_nonzero(S.g.table == x)),
    )


def is_isomorphic(S: MNSemiring, T: MNSemiring, *, max_k: int = MAX_ISO_CARRIER) -> Optional[Morphism]:
    """A bijective homomorphism ``S -> T``, or ``None``.

    Candidates for each element are restricted to elements of ``T`` with
    the same profile (identity roles, idempotency, absorption and value
    counts), then assigned by backtracking with partial consistency checks.
    """
    if (S.m, S.n) != (T.m, T.n):
        raise ArityMismatch(f"arities differ: ({S.m},{S.n}) vs ({T.m},{T.n})")
    if S.k != T.k:
        return None
    k = S.k
    if k > max_k:
        raise CarrierTooLarge(f"k={k} exceeds the isomorphism search guard {max_k}")
    if len(idempotent_elements(S.f)) != len(idempotent_elements(T.f)):
        return None
    if len(idempotent_elements(S.g)) != len(idempotent_elements(T.g)):
        return None
    ps = [_profile(S, x) for x in range(k)]
    pt = [_profile(T, y) for y in range(k)]
    if sorted(ps) != sorted(pt):
        return None
    candidates = [[y for y in range(k) if pt[y] == ps[x]] for x in range(k)]
    order = sorted(range(k), key=lambda x: len(candidates[x]))
    phi = [-1] * k
    used = [False] * k

    def consistent(assigned):
        for op_s, op_t in ((S.f, T.f), (S.g, T.g)):
            for args in itertools.product(assigned, repeat=op_s.arity):
                out = int(op_s.table[args])
                if phi[out] >= 0 and phi[out] != int(op_t.table[tuple(phi[a] for a in args)]):
                    return False
        return True

    def rec(pos):
        if pos == k:
            return True
        x = order[pos]
        for y in candidates[x]:
            if used[y]:
                continue
            phi[x], used[y] = y, True
            if consistent(order[:pos + 1]) and rec(pos + 1):
                return True
            phi[x], used[y] = -1, False
        return False

    if not rec(0):
        return None
    result = Morphism(k, k, tuple(phi))
    assert is_homomorphism(S, T, result)
    return result


def all_homomorphisms(S: MNSemiring, T: MNSemiring) -> list:
    """Brute force over all ``T.k ** S.k`` maps; meant for tiny carriers."""
    return [
        phi for phi in (Morphism(S.k, T.k, images) for images in itertools.product(range(T.k), repeat=S.k))
        if is_homomorphism(S, T, phi)
    ]
