"""Ideals of finite (m,n)-semirings and the subset products built from them.

Subsets of the carrier are plain ``frozenset`` objects of elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .algebra import Check, MNSemiring, Witness, WitnessKind, check_commutativity
from .errors import EmptyIntersection, EmptySubset, IndexOutOfRange, PositionOutOfRange


def _subset(S: MNSemiring, members: Iterable[int]) -> frozenset:
    out = frozenset(int(x) for x in members)
    if not out:
        raise EmptySubset("subset must be nonempty")
    for x in out:
        if not 0 <= x < S.k:
            raise IndexOutOfRange(f"element {x} not in carrier of size {S.k}")
    return out


def _f_closed(S: MNSemiring, I: frozenset) -> Optional[Witness]:
    for args in itertools.product(sorted(I), repeat=S.m):
        out = int(S.f.table[args])
        if out not in I:
            return Witness(WitnessKind.OTHER, (args,), out, out, detail="f of members leaves the subset")
    return None


def _g_absorbs(S: MNSemiring, I: frozenset, i: int) -> Optional[Witness]:
    for a in sorted(I):
        for ctx in itertools.product(range(S.k), repeat=S.n - 1):
            args = ctx[:i - 1] + (a,) + ctx[i - 1:]
            out = int(S.g.table[args])
            if out not in I:
                return Witness(WitnessKind.OTHER, (args,), out, out, (i,),
                               detail=f"g with a member in position {i} leaves the subset")
    return None


def is_i_ideal(S: MNSemiring, I: Iterable[int], i: int) -> Check:
    """``I`` is closed under ``f`` and absorbs ``g`` in position ``i`` (1-based).

    A witness records the offending argument tuple and its image.
    """
    if not 1 <= i <= S.n:
        raise PositionOutOfRange(f"position {i} outside [1, {S.n}]")
    I = _subset(S, I)
    w = _f_closed(S, I) or _g_absorbs(S, I, i)
    return Check(w is None, w)


def is_ideal(S: MNSemiring, I: Iterable[int]) -> Check:
    I = _subset(S, I)
    for i in range(1, S.n + 1):
        c = is_i_ideal(S, I, i)
        if not c:
            return c
    return c


def _closure(S: MNSemiring, seed: frozenset, *, absorb: bool) -> frozenset:
    current = set(seed)
    while True:
        new = set()
        for args in itertools.product(sorted(current), repeat=S.m):
            new.add(int(S.f.table[args]))
        if absorb:
            for s in current:
                for ctx in itertools.product(range(S.k), repeat=S.n - 1):
                    for i in range(S.n):
                        new.add(int(S.g.table[ctx[:i] + (s,) + ctx[i:]]))
        if new <= current:
            return frozenset(current)
        current |= new


def ideal_generated_by(S: MNSemiring, X: Iterable[int]) -> frozenset:
    """Least ideal containing ``X`` (closure under ``f`` and ``g``-absorption)."""
    return _closure(S, _subset(S, X), absorb=True)


def f_closure(S: MNSemiring, X: Iterable[int]) -> frozenset:
    return _closure(S, _subset(S, X), absorb=False)


def f_image_of_ideals(S: MNSemiring, *subsets: Iterable[int]) -> frozenset:
    """``{f(a_1, ..., a_m) : a_j in I_j}``."""
    if len(subsets) != S.m:
        raise PositionOutOfRange(f"need {S.m} subsets, got {len(subsets)}")
    parts = [sorted(_subset(S, I)) for I in subsets]
    return frozenset(int(S.f.table[args]) for args in itertools.product(*parts))


def product_of_subsets(S: MNSemiring, *subsets: Iterable[int]) -> frozenset:
    """Closure under ``f`` of all elementary products ``g(a_1, ..., a_n)``.

    Associativity of ``f`` makes this equal to the set of iterated f-sums
    over ``k(m-1)+1`` elementary products for every k >= 0.
    """
    if len(subsets) != S.n:
        raise PositionOutOfRange(f"need {S.n} subsets, got {len(subsets)}")
    parts = [sorted(_subset(S, A)) for A in subsets]
    elementary = frozenset(int(S.g.table[args]) for args in itertools.product(*parts))
    return _closure(S, elementary, absorb=False)


def intersect_ideals(S: MNSemiring, *ideals: Iterable[int]) -> frozenset:
    if not ideals:
        raise EmptySubset("need at least one ideal")
    sets = [_subset(S, I) for I in ideals]
    out = frozenset.intersection(*sets)
    if not out:
        raise EmptyIntersection("intersection is empty; ideals are nonempty by definition")
    return out


def all_ideals(S: MNSemiring) -> list:
    """Every ideal, by brute force over nonempty subsets (small carriers only)."""
    out = []
    for mask in range(1, 2**S.k):
        I = frozenset(x for x in range(S.k) if mask >> x & 1)
        if is_ideal(S, I):
            out.append(I)
    return out


def is_minimal_ideal_over(S: MNSemiring, X: Iterable[int], candidate: frozenset) -> bool:
    """Every ideal containing ``X`` contains ``candidate``."""
    X = _subset(S, X)
    return all(candidate <= I for I in all_ideals(S) if X <= I)


@dataclass(frozen=True)
class ScalingCounterexample:
    ideal: frozenset
    fixed: tuple
    image: frozenset


def ideal_scaling_counterexamples(S: MNSemiring, I: Iterable[int]) -> list:
    """Cases where ``{g(x, a_2..a_n) : x in I}`` differs from ``I`` for ``a_j`` in ``I``.

    The property is claimed for every ideal; it fails whenever a fixed
    argument collapses the image (for instance ``a = 0`` in Z_6), so the
    failures are reported rather than raised.
    """
    I = _subset(S, I)
    found = []
    for fixed in itertools.product(sorted(I), repeat=S.n - 1):
        image = frozenset(int(S.g.table[(x,) + fixed]) for x in I)
        if image != I:
            found.append(ScalingCounterexample(I, fixed, image))
    return found


def product_with_ideal_is_ideal(S: MNSemiring, *subsets: Iterable[int]) -> Check:
    """For commutative algebras, a subset product with an ideal factor is an ideal.

    Returns the ideal check of the product; the preconditions (commutative
    ``f`` and ``g``, at least one ideal factor) raise ``ValueError`` when unmet.
    """
    if not (check_commutativity(S.f) and check_commutativity(S.g)):
        raise ValueError("algebra is not commutative")
    if not any(is_ideal(S, A) for A in subsets):
        raise ValueError("no factor is an ideal")
    return is_ideal(S, product_of_subsets(S, *subsets))
