"""Algebra of systems: series/parallel terms, exact failure probabilities, and
a sound (deliberately incomplete) derivation engine for the fault-tolerance order.

Terms are built from atoms (components), the constants ``0`` (always up)
and ``1`` (always down), ``F`` (series: fails if any child fails) and ``G``
(parallel: fails only if every child fails). ``s <= t`` means ``s`` is at
least as fault tolerant as ``t``. The reference semantics assigns each atom
an independent failure probability; every atom occurrence is treated as an
independent copy.

Text syntax::

    term  := "0" | "1" | IDENT | "(" ("f" | "g") term term+ ")"
    IDENT := [A-Za-z][A-Za-z0-9_]*
"""
from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import EmptyOperator, FormatError, PosetCycle, TermSyntaxError, TermTooWide, UnassignedAtom

MAX_CHILDREN = 16
GRID = 256


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


ZERO = Zero()
ONE = One()


@dataclass(frozen=True)
class F:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValueError("F needs at least one child")

    def __str__(self):
        return "(f " + " ".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class G:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValueError("G needs at least one child")

    def __str__(self):
        return "(g " + " ".join(map(str, self.children)) + ")"


Term = Union[Atom, Zero, One, F, G]

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _tokens(text):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        start = mt.start(mt.lastindex)
        yield start, mt.group(mt.lastindex)
        pos = mt.end()


def parse_term(text: str) -> Term:
    """Parse the s-expression syntax; operators need at least two children."""
    toks = list(_tokens(text))
    if not toks:
        raise TermSyntaxError("empty input", 0)
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(toks):
            raise TermSyntaxError("unexpected end of input", len(text))
        offset, tok = toks[pos]
        pos += 1
        if tok == "(":
            if pos >= len(toks):
                raise TermSyntaxError("unexpected end of input", len(text))
            op_offset, op = toks[pos]
            if op == ")":
                raise EmptyOperator("empty operator application", offset)
            if op not in ("f", "g"):
                raise TermSyntaxError(f"expected 'f' or 'g', got {op!r}", op_offset)
            pos += 1
            kids = []
            while True:
                if pos >= len(toks):
                    raise TermSyntaxError("unclosed '('", offset)
                if toks[pos][1] == ")":
                    pos += 1
                    break
                kids.append(parse())
            if not kids:
                raise EmptyOperator(f"({op}) has no operands", offset)
            if len(kids) < 2:
                raise TermSyntaxError(f"({op} ...) needs at least two operands", offset)
            return F(kids) if op == "f" else G(kids)
        if tok == ")":
            raise TermSyntaxError("unexpected ')'", offset)
        if tok == "0":
            return ZERO
        if tok == "1":
            return ONE
        if not _IDENT.match(tok):
            raise TermSyntaxError(f"bad identifier {tok!r}", offset)
        return Atom(tok)

    term = parse()
    if pos != len(toks):
        raise TermSyntaxError("trailing input", toks[pos][0])
    return term


def term_key(t: Term) -> tuple:
    """Total order: constants, then atoms by name, then F, then G (children lexicographic)."""
    if isinstance(t, Zero):
        return (0, 0)
    if isinstance(t, One):
        return (0, 1)
    if isinstance(t, Atom):
        return (1, t.name)
    return (2 if isinstance(t, F) else 3, tuple(term_key(c) for c in t.children))


def normalize(t: Term) -> Term:
    """AC normal form: flatten, drop identities, collapse absorbers, sort children.

    Duplicate children are kept: ``(f a a)`` is not ``a``.
    """
    if isinstance(t, (Atom, Zero, One)):
        return t
    kids = [normalize(c) for c in t.children]
    cls = type(t)
    unit, absorber = (ZERO, ONE) if cls is F else (ONE, ZERO)
    flat = []
    for c in kids:
        flat.extend(c.children if type(c) is cls else (c,))
    if absorber in flat:
        return absorber
    flat = [c for c in flat if c != unit]
    if not flat:
        return unit
    if len(flat) == 1:
        return flat[0]
    return cls(tuple(sorted(flat, key=term_key)))


def term_equal(t1: Term, t2: Term) -> bool:
    return normalize(t1) == normalize(t2)


def atoms_of(t: Term) -> frozenset:
    if isinstance(t, Atom):
        return frozenset((t.name,))
    if isinstance(t, (F, G)):
        return frozenset().union(*(atoms_of(c) for c in t.children))
    return frozenset()


class AtomPoset:
    """Reflexive-transitive closure of ``a <= b`` facts between atom names."""

    def __init__(self, pairs: Iterable[tuple] = (), atoms: Iterable[str] = ()):
        pairs = [(str(a), str(b)) for a, b in pairs]
        self.atoms = frozenset(atoms) | {a for p in pairs for a in p}
        up = {a: {a} for a in self.atoms}
        for a, b in pairs:
            up[a].add(b)
        changed = True
        while changed:
            changed = False
            for a in up:
                reach = set().union(*(up[b] for b in up[a]))
                if not reach <= up[a]:
                    up[a] |= reach
                    changed = True
        for a in up:
            for b in up[a]:
                if a != b and a in up[b]:
                    raise PosetCycle(f"{a} <= {b} <= {a}")
        self.up = {a: frozenset(s) for a, s in up.items()}
        self.pairs = frozenset((a, b) for a, s in self.up.items() for b in s)

    def leq(self, a: str, b: str) -> bool:
        return a == b or b in self.up.get(a, ())

    def __repr__(self):
        strict = sorted((a, b) for a, b in self.pairs if a != b)
        return f"AtomPoset({strict})"

    @classmethod
    def parse(cls, text: str) -> "AtomPoset":
        """Lines of ``a <= b``; a bare identifier declares an atom; ``#`` starts a comment."""
        pairs, atoms = [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "<=" in line:
                a, b = (s.strip() for s in line.split("<=", 1))
                if not (_IDENT.match(a) and _IDENT.match(b)):
                    raise FormatError(f"bad poset fact {raw!r}", lineno)
                pairs.append((a, b))
            elif _IDENT.match(line):
                atoms.append(line)
            else:
                raise FormatError(f"bad poset line {raw!r}", lineno)
        return cls(pairs, atoms)

    def format(self) -> str:
        strict = sorted((a, b) for a, b in self.pairs if a != b)
        related = {a for p in strict for a in p}
        lines = [f"{a} <= {b}" for a, b in strict] + sorted(self.atoms - related)
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class ReliabilityAssignment:
    """Exact failure probability per atom name."""

    prob: Mapping[str, Fraction]

    def __post_init__(self):
        clean = {}
        for name, p in self.prob.items():
            p = Fraction(p)
            if not 0 <= p <= 1:
                raise ValueError(f"probability of {name} is {p}, outside [0, 1]")
            clean[name] = p
        object.__setattr__(self, "prob", clean)

    def __getitem__(self, name):
        return self.prob[name]

    def consistent_with(self, poset: AtomPoset) -> bool:
        return all(self.prob[a] <= self.prob[b] for a, b in poset.pairs if a in self.prob and b in self.prob)

    @classmethod
    def parse(cls, text: str) -> "ReliabilityAssignment":
        """Lines of ``name = p/q``; ``#`` starts a comment."""
        prob = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            name, sep, value = (s.strip() for s in line.partition("="))
            if not sep or not _IDENT.match(name):
                raise FormatError(f"bad assignment {raw!r}", lineno)
            try:
                prob[name] = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad probability {value!r}", lineno) from None
            if not 0 <= prob[name] <= 1:
                raise FormatError(f"probability {value} outside [0, 1]", lineno)
        return cls(prob)

    def format(self) -> str:
        return "".join(f"{a} = {p}\n" for a, p in sorted(self.prob.items()))


def failure_probability(t: Term, r: Union[ReliabilityAssignment, Mapping[str, Fraction]]) -> Fraction:
    prob = r.prob if isinstance(r, ReliabilityAssignment) else r
    if isinstance(t, Zero):
        return Fraction(0)
    if isinstance(t, One):
        return Fraction(1)
    if isinstance(t, Atom):
        try:
            return Fraction(prob[t.name])
        except KeyError:
            raise UnassignedAtom(t.name) from None
    if isinstance(t, F):
        up = Fraction(1)
        for c in t.children:
            up *= 1 - failure_probability(c, prob)
        return 1 - up
    down = Fraction(1)
    for c in t.children:
        down *= failure_probability(c, prob)
    return down


class Relation(enum.Enum):
    LE = "LE"
    GE = "GE"
    EQ = "EQ"
    UNKNOWN = "UNKNOWN"
    INC = "INC"


@dataclass(frozen=True)
class OrderResult:
    relation: Relation
    derivation: tuple = ()


class _Deriver:
    """Memoized proof search for ``s <= t`` on normalized terms."""

    def __init__(self, poset: AtomPoset):
        self.poset = poset
        self.memo = {}

    def le(self, s, t) -> Optional[tuple]:
        key = (s, t)
        if key not in self.memo:
            self.memo[key] = self._le(s, t)
        return self.memo[key]

    def _le(self, s, t):
        if s == t:
            return (f"reflexivity: {s} <= {t}",)
        if isinstance(s, Zero) or isinstance(t, One):
            return (f"R1 bounds: {s} <= {t}",)
        if isinstance(t, Zero) or isinstance(s, One):
            return None
        if isinstance(s, Atom) and isinstance(t, Atom):
            return (f"R2 atom order: {s} <= {t}",) if self.poset.leq(s.name, t.name) else None
        if isinstance(s, F) and isinstance(t, F):
            proof = self._monotone(s, t, s.children, t.children, "R3 F-monotone")
            if proof:
                return proof
        if isinstance(s, G) and isinstance(t, G):
            proof = self._monotone(s, t, s.children, t.children, "R4 G-monotone", flip=True)
            if proof:
                return proof
        if isinstance(t, F):
            for c in t.children:
                sub = self.le(s, c)
                if sub:
                    return sub + (f"R5 membership: {c} <= {t}",)
        if isinstance(s, G):
            for c in s.children:
                sub = self.le(c, t)
                if sub:
                    return (f"R5 membership: {s} <= {c}",) + sub
        return None

    def _monotone(self, s, t, small, big, rule, flip=False):
        """Inject ``small`` children into ``big`` children (or the reverse for G).

        For F every child of ``s`` needs a distinct partner in ``t`` above it;
        for G every child of ``t`` needs a distinct partner in ``s`` below it.
        """
        if len(small) > MAX_CHILDREN or len(big) > MAX_CHILDREN:
            raise TermTooWide(f"more than {MAX_CHILDREN} children")
        if flip:
            left, right = big, small
            ok = lambda i, j: self.le(small[j], big[i])
        else:
            left, right = small, big
            ok = lambda i, j: self.le(small[i], big[j])
        if len(left) > len(right):
            return None
        edges = [[j for j in range(len(right)) if ok(i, j)] for i in range(len(left))]
        match = _bipartite_match(edges, len(right))
        if match is None:
            return None
        steps = []
        changed = fixed = 0
        for i, j in enumerate(match):
            sub = ok(i, j)
            if sub[0].startswith("reflexivity"):
                fixed += 1
            else:
                changed += 1
                steps.extend(sub)
        tag = rule
        if _is_replication(small, big):
            tag = "R6 replication"
        elif len(big) > len(small):
            tag += " with padding"
        steps.append(f"{tag}: {s} <= {t}")
        if changed and fixed:
            steps.append(f"R7 context: {changed} substituted, {fixed} fixed")
        return tuple(steps)


def _is_replication(small, big) -> bool:
    if len(big) % len(small) or len(big) == len(small):
        return False
    times = len(big) // len(small)
    return sorted(big, key=term_key) == sorted(list(small) * times, key=term_key)


def _bipartite_match(edges, nright) -> Optional[list]:
    """Augmenting-path matching saturating the left side, or ``None``."""
    owner = [-1] * nright

    def augment(i, seen):
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(len(edges)):
        if not augment(i, set()):
            return None
    match = [-1] * len(edges)
    for j, i in enumerate(owner):
        if i >= 0:
            match[i] = j
    return match


def derive_order(t1: Term, t2: Term, poset: Optional[AtomPoset] = None) -> OrderResult:
    """Syntactic comparison; LE/GE/EQ only when a derivation exists, else UNKNOWN."""
    poset = poset if poset is not None else AtomPoset()
    n1, n2 = normalize(t1), normalize(t2)
    if n1 == n2:
        return OrderResult(Relation.EQ, (f"reflexivity: {n1} <= {n2}",))
    d = _Deriver(poset)
    le, ge = d.le(n1, n2), d.le(n2, n1)
    if le and ge:
        return OrderResult(Relation.EQ, le + ge)
    if le:
        return OrderResult(Relation.LE, le)
    if ge:
        return OrderResult(Relation.GE, ge)
    return OrderResult(Relation.UNKNOWN)


def sample_assignment(atoms: Iterable[str], poset: AtomPoset, rng: random.Random, *,
                      tries: int = 32) -> ReliabilityAssignment:
    """Grid-valued assignment (multiples of 1/256) consistent with ``poset``.

    Independent uniform draws are rejected until consistent; after ``tries``
    failures the atoms are drawn along a linear extension, each no lower
    than its already-drawn predecessors.
    """
    names = sorted(set(atoms) | poset.atoms)
    for _ in range(tries):
        r = ReliabilityAssignment({a: Fraction(rng.randint(0, GRID), GRID) for a in names})
        if r.consistent_with(poset):
            return r
    order = sorted(names, key=lambda a: (sum(poset.leq(b, a) for b in names), a))
    vals = {}
    for a in order:
        low = max((vals[b] for b in vals if poset.leq(b, a)), default=0)
        vals[a] = rng.randint(low, GRID)
    return ReliabilityAssignment({a: Fraction(v, GRID) for a, v in vals.items()})


@dataclass(frozen=True)
class SemanticResult:
    relation: Relation
    witnesses: tuple = ()
    samples: int = 0


def semantic_order_sampled(t1: Term, t2: Term, poset: Optional[AtomPoset] = None, samples: int = 64,
                           seed: int = 0) -> SemanticResult:
    """Compare exact failure probabilities on random consistent assignments.

    LE/GE: one side never exceeds the other; EQ: equal on every sample;
    INC: strict differences in both directions (one witness for each).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    poset = poset if poset is not None else AtomPoset()
    rng = random.Random(seed)
    atoms = atoms_of(t1) | atoms_of(t2)
    below = above = None
    for _ in range(samples):
        r = sample_assignment(atoms, poset, rng)
        p1, p2 = failure_probability(t1, r), failure_probability(t2, r)
        if p1 < p2 and below is None:
            below = r
        elif p1 > p2 and above is None:
            above = r
        if below is not None and above is not None:
            return SemanticResult(Relation.INC, (below, above), samples)
    if below is None and above is None:
        return SemanticResult(Relation.EQ, (), samples)
    if above is None:
        return SemanticResult(Relation.LE, (below,), samples)
    return SemanticResult(Relation.GE, (above,), samples)


@dataclass(frozen=True)
class SoundnessReport:
    derived: OrderResult
    samples: int
    violations: tuple

    @property
    def sound(self) -> bool:
        return not self.violations


def check_soundness(t1: Term, t2: Term, poset: Optional[AtomPoset] = None, samples: int = 64,
                    seed: int = 0) -> SoundnessReport:
    """Confront the derived relation with exact probabilities on sampled assignments.

    Each violation is ``(assignment, P(t1), P(t2))``.
    """
    poset = poset if poset is not None else AtomPoset()
    res = derive_order(t1, t2, poset)
    rng = random.Random(seed)
    atoms = atoms_of(t1) | atoms_of(t2)
    violations = []
    if res.relation is not Relation.UNKNOWN:
        for _ in range(samples):
            r = sample_assignment(atoms, poset, rng)
            p1, p2 = failure_probability(t1, r), failure_probability(t2, r)
            bad = {Relation.LE: p1 > p2, Relation.GE: p1 < p2, Relation.EQ: p1 != p2}[res.relation]
            if bad:
                violations.append((r, p1, p2))
    return SoundnessReport(res, samples, tuple(violations))


def random_term(rng: random.Random, atoms: Iterable[str], depth: int = 3, width: int = 3, *,
                constants: bool = True, allow_duplicates: bool = True) -> Term:
    """Random raw term over ``atoms``; composites have 2..``width`` children.

    With ``allow_duplicates=False`` each atom occurs at most once (the pool
    of unused atoms shrinks; constants fill in when it runs dry).
    """
    pool = sorted(atoms)

    def leaf():
        if not allow_duplicates:
            if pool and (not constants or rng.random() < 0.85):
                return Atom(pool.pop(rng.randrange(len(pool))))
            return rng.choice((ZERO, ONE))
        if constants and rng.random() < 0.12:
            return rng.choice((ZERO, ONE))
        return Atom(rng.choice(pool))

    def build(d):
        if d == 0 or rng.random() < 0.3:
            return leaf()
        cls = rng.choice((F, G))
        return cls(tuple(build(d - 1) for _ in range(rng.randint(2, width))))

    return build(depth)


def random_poset(rng: random.Random, atoms: Iterable[str], density: float = 0.3) -> AtomPoset:
    """Random partial order: facts only go from earlier to later in a shuffled order."""
    names = list(atoms)
    rng.shuffle(names)
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:] if rng.random() < density]
    return AtomPoset(pairs, names)
