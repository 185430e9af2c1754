"""Command-line front end and the plain-text algebra file format.

Algebra files::

    # comments allowed
    size 4
    m 2
    n 3
    f rule mod-add
    g table
    0 0 0 0  0 1 2 3 ...        # k**n integers, leftmost argument most significant

Exit codes: 0 when every requested check passes (an UNKNOWN order is not a
failure), 1 when a check fails, 2 on usage or format errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import algebra, ideals, morphisms, systems
from .algebra import DEFAULT_BUDGET, DEFAULT_LIMITS, Limits, MNSemiring, OpTable
from .errors import AlgebraError, ArityBound, FormatError, TermSyntaxError, UnassignedAtom

RULES = {
    "mod-add": lambda k: lambda *xs: sum(xs) % k,
    "mod-mul": lambda k: lambda *xs: _prod(xs) % k,
    "union": lambda k: lambda *xs: _fold_bits(xs, int.__or__),
    "intersection": lambda k: lambda *xs: _fold_bits(xs, int.__and__),
}


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _fold_bits(xs, op):
    out = xs[0]
    for x in xs[1:]:
        out = op(out, x)
    return out


def parse_algebra(text: str, *, limits: Limits = DEFAULT_LIMITS) -> MNSemiring:
    """Build an (unverified) algebra from the text format."""
    header = {}
    ops = {}
    pending = None  # (name, arity, collected, start line)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if pending is not None and words[0].lstrip("-").isdigit():
            pending[2].extend(_ints(words, lineno))
            continue
        key = words[0]
        if key in ("size", "m", "n"):
            if len(words) != 2 or not words[1].isdigit():
                raise FormatError(f"expected '{key} <integer>'", lineno)
            if key in header:
                raise FormatError(f"duplicate '{key}' line", lineno)
            header[key] = int(words[1])
            continue
        if key in ("f", "g"):
            if key in ops:
                raise FormatError(f"duplicate '{key}' definition", lineno)
            missing = [h for h in ("size", "m", "n") if h not in header]
            if missing:
                raise FormatError(f"header {missing} must precede '{key}'", lineno)
            k, arity = header["size"], header["m" if key == "f" else "n"]
            if not limits.min_arity <= arity <= limits.max_arity:
                raise ArityBound(f"arity {arity} outside [{limits.min_arity}, {limits.max_arity}]")
            if not 1 <= k <= limits.max_carrier:
                raise ArityBound(f"carrier size {k} outside [1, {limits.max_carrier}]")
            if len(words) >= 2 and words[1] == "rule":
                if len(words) != 3 or words[2] not in RULES:
                    raise FormatError(f"unknown rule; expected one of {sorted(RULES)}", lineno)
                if words[2] in ("union", "intersection") and k & (k - 1):
                    raise FormatError(f"rule {words[2]} needs a power-of-two size", lineno)
                ops[key] = OpTable.from_function(k, arity, RULES[words[2]](k), limits=limits)
                pending = None
            elif len(words) >= 2 and words[1] == "table":
                pending = [key, arity, _ints(words[2:], lineno), lineno]
                ops[key] = pending
            else:
                raise FormatError(f"expected '{key} table' or '{key} rule NAME'", lineno)
            continue
        raise FormatError(f"unexpected line {raw.strip()!r}", lineno)
    for key in ("f", "g"):
        if key not in ops:
            raise FormatError(f"missing '{key}' definition")
        if isinstance(ops[key], list):
            _, arity, values, start = ops[key]
            k = header["size"]
            if len(values) != k**arity:
                raise FormatError(f"'{key}' table has {len(values)} entries, expected {k**arity}", start)
            if any(not 0 <= v < k for v in values):
                raise FormatError(f"'{key}' table entries must lie in [0, {k})", start)
            ops[key] = OpTable.from_entries(k, arity, values, limits=limits)
    return MNSemiring(ops["f"], ops["g"])


def _ints(words, lineno):
    try:
        return [int(w) for w in words]
    except ValueError:
        raise FormatError("table entries must be integers", lineno) from None


def parse_algebra_file(path, *, limits: Limits = DEFAULT_LIMITS) -> MNSemiring:
    S = parse_algebra(Path(path).read_text(encoding="utf-8"), limits=limits)
    return MNSemiring(S.f, S.g, name=Path(path).stem)


def format_algebra(S: MNSemiring) -> str:
    """Serialize with explicit tables, one row per combination of leading arguments."""
    out = [f"size {S.k}", f"m {S.m}", f"n {S.n}"]
    for key, op in (("f", S.f), ("g", S.g)):
        out.append(f"{key} table")
        flat = op.entries
        for i in range(0, len(flat), S.k):
            out.append(" ".join(str(v) for v in flat[i:i + S.k]))
    return "\n".join(out) + "\n"


class Report:
    """Key-value lines followed by free-form text, plus the exit code."""

    def __init__(self):
        self.fields = []
        self.text = []
        self.code = 0

    def add(self, key, value):
        if isinstance(value, bool):
            value = str(value).lower()
        self.fields.append((key, value))

    def note(self, line):
        self.text.append(line)

    def fail(self):
        self.code = max(self.code, 1)

    def render(self) -> str:
        lines = [f"{k}: {v}" for k, v in self.fields]
        if self.text:
            lines += [""] + self.text
        return "\n".join(lines) + "\n"


def _elements(text: str):
    return [int(x) for x in text.replace(",", " ").split()]


def _load(args, path):
    limits = Limits(max_carrier=max(DEFAULT_LIMITS.max_carrier, args.max_k or 0))
    return parse_algebra_file(path, limits=limits)


def _witness_line(w):
    if w is None:
        return ""
    pos = f" positions {w.positions}" if w.positions else ""
    detail = f" ({w.detail})" if w.detail else ""
    return f"witness {w.kind.value}: args {w.args}{pos} lhs {w.lhs} rhs {w.rhs}{detail}"


def cmd_algebra_check(args, rep):
    S = _load(args, args.file)
    r = algebra.verify_mn_semiring(S, budget=args.budget)
    rep.add("semiring", r.is_semiring)
    for name in ("associative_f", "associative_g", "distributive", "commutative_f", "commutative_g"):
        c = getattr(r, name)
        rep.add(name, c.holds)
        if not c:
            rep.note(f"{name}: {_witness_line(c.witness)}")
    if not r.is_semiring:
        rep.fail()


def cmd_algebra_props(args, rep):
    S = _load(args, args.file)
    r = algebra.analyze(S, budget=args.budget)
    rep.add("semiring", r.is_semiring)
    for name, value in r.items():
        rep.add(name, "none" if value is None else value)
        c = getattr(r, name)
        if isinstance(c, algebra.Check) and not c:
            rep.note(f"{name}: {_witness_line(c.witness)}")
    rep.add("f_identities", " ".join(map(str, algebra.identity_elements(S.f))) or "none")
    rep.add("g_identities", " ".join(map(str, algebra.identity_elements(S.g))) or "none")


def cmd_algebra_congruences(args, rep):
    S = _load(args, args.file)
    found = morphisms.enumerate_congruences(S, max_k=args.max_k or morphisms.MAX_CONGRUENCE_CARRIER)
    rep.add("count", len(found))
    for c in found:
        rep.note(str(c))


def cmd_algebra_quotient(args, rep):
    S = _load(args, args.file)
    sigma = morphisms.Congruence.parse(args.partition, S.k)
    check = morphisms.is_congruence(S, sigma)
    rep.add("congruence", check.holds)
    if not check:
        rep.note(_witness_line(check.witness))
        rep.fail()
        return
    Q = morphisms.quotient(S, sigma)
    rep.add("blocks", str(sigma))
    rep.note(format_algebra(Q).rstrip())


def cmd_algebra_iso(args, rep):
    S, T = _load(args, args.file), _load(args, args.other)
    phi = morphisms.is_isomorphic(S, T, max_k=args.max_k or morphisms.MAX_ISO_CARRIER)
    rep.add("isomorphic", phi is not None)
    if phi is not None:
        rep.add("map", " ".join(map(str, phi.map)))
    else:
        rep.fail()


def _morphism(args, S, T):
    return morphisms.Morphism(S.k, T.k, _elements(args.map))


def cmd_hom_check(args, rep):
    S, T = _load(args, args.source), _load(args, args.target)
    c = morphisms.is_homomorphism(S, T, _morphism(args, S, T))
    rep.add("homomorphism", c.holds)
    if not c:
        rep.note(_witness_line(c.witness))
        rep.fail()


def cmd_hom_kernel(args, rep):
    images = _elements(args.map)
    phi = morphisms.Morphism(len(images), max(images) + 1, images)
    rep.add("kernel", str(morphisms.kernel(phi)))


def cmd_hom_factor(args, rep):
    S, T = _load(args, args.source), _load(args, args.target)
    phi = _morphism(args, S, T)
    c = morphisms.is_homomorphism(S, T, phi)
    rep.add("homomorphism", c.holds)
    if not c:
        rep.note(_witness_line(c.witness))
        rep.fail()
        return
    Q, psi = morphisms.induced_injection(S, T, phi)
    ker = morphisms.kernel(phi)
    rep.add("kernel", str(ker))
    rep.add("quotient_size", Q.k)
    rep.add("injection", " ".join(map(str, psi.map)))
    rep.add("injective", psi.injective)
    rep.add("factorizes", morphisms.compose_maps(morphisms.projection(ker), psi) == phi)


def _fmt_set(s):
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def cmd_ideal_check(args, rep):
    S = _load(args, args.file)
    I = _elements(args.set[0])
    if args.position:
        c = ideals.is_i_ideal(S, I, args.position)
        rep.add(f"{args.position}-ideal", c.holds)
    else:
        c = ideals.is_ideal(S, I)
        rep.add("ideal", c.holds)
    if not c:
        rep.note(_witness_line(c.witness))
        rep.fail()


def cmd_ideal_generate(args, rep):
    S = _load(args, args.file)
    rep.add("generated", _fmt_set(ideals.ideal_generated_by(S, _elements(args.set[0]))))


def cmd_ideal_product(args, rep):
    S = _load(args, args.file)
    P = ideals.product_of_subsets(S, *(_elements(s) for s in args.set))
    rep.add("product", _fmt_set(P))
    rep.add("generated", _fmt_set(ideals.ideal_generated_by(S, P)))


def cmd_ideal_intersect(args, rep):
    S = _load(args, args.file)
    sets = [_elements(s) for s in args.set]
    out = ideals.intersect_ideals(S, *sets)
    rep.add("intersection", _fmt_set(out))
    rep.add("ideal", ideals.is_ideal(S, out).holds)


def _poset(path):
    return systems.AtomPoset.parse(Path(path).read_text(encoding="utf-8"))


def cmd_order_compare(args, rep):
    P = _poset(args.poset)
    t1, t2 = systems.parse_term(args.left), systems.parse_term(args.right)
    res = systems.derive_order(t1, t2, P)
    rep.add("relation", res.relation.value)
    if res.relation is systems.Relation.UNKNOWN:
        rep.note("unknown: no derivation found (the rule set is incomplete by design)")
    for step in res.derivation:
        rep.note(step)


def cmd_order_soundness(args, rep):
    P = _poset(args.poset)
    t1, t2 = systems.parse_term(args.left), systems.parse_term(args.right)
    sr = systems.check_soundness(t1, t2, P, samples=args.samples, seed=args.seed)
    sem = systems.semantic_order_sampled(t1, t2, P, samples=args.samples, seed=args.seed)
    rep.add("derived", sr.derived.relation.value)
    rep.add("sampled", sem.relation.value)
    rep.add("samples", sr.samples)
    rep.add("seed", args.seed)
    rep.add("violations", len(sr.violations))
    rep.add("sound", sr.sound)
    for r, p1, p2 in sr.violations[:3]:
        rep.note(f"violation: P(left)={p1} P(right)={p2} at " + ", ".join(f"{a}={p}" for a, p in sorted(r.prob.items())))
    if not sr.sound:
        rep.fail()


def cmd_reliability_eval(args, rep):
    r = systems.ReliabilityAssignment.parse(Path(args.assignment).read_text(encoding="utf-8"))
    t = systems.parse_term(args.term)
    p = systems.failure_probability(t, r)
    rep.add("term", str(systems.normalize(t)))
    rep.add("failure_probability", str(p))
    rep.add("reliability", str(1 - p))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=64)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--max-k", type=int, default=None, dest="max_k")

    parser = argparse.ArgumentParser(prog="mnsemiring", description="(m,n)-semiring and fault-tolerance workbench")
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, *positional, sets=False):
        p = group.add_parser(name, parents=[common])
        for arg in positional:
            p.add_argument(arg)
        if sets:
            p.add_argument("--set", action="append", required=True, help="comma-separated elements; repeat for several")
        p.set_defaults(fn=fn)
        return p

    g = groups.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    sub(g, "check", cmd_algebra_check, "file")
    sub(g, "props", cmd_algebra_props, "file")
    sub(g, "congruences", cmd_algebra_congruences, "file")
    sub(g, "quotient", cmd_algebra_quotient, "file").add_argument("--partition", required=True)
    sub(g, "iso", cmd_algebra_iso, "file", "other")

    g = groups.add_parser("hom").add_subparsers(dest="cmd", required=True)
    sub(g, "check", cmd_hom_check, "source", "target").add_argument("--map", required=True)
    sub(g, "kernel", cmd_hom_kernel, "map")
    sub(g, "factor", cmd_hom_factor, "source", "target").add_argument("--map", required=True)

    g = groups.add_parser("ideal").add_subparsers(dest="cmd", required=True)
    sub(g, "check", cmd_ideal_check, "file", sets=True).add_argument("--position", type=int, default=None)
    sub(g, "generate", cmd_ideal_generate, "file", sets=True)
    sub(g, "product", cmd_ideal_product, "file", sets=True)
    sub(g, "intersect", cmd_ideal_intersect, "file", sets=True)

    g = groups.add_parser("order").add_subparsers(dest="cmd", required=True)
    sub(g, "compare", cmd_order_compare, "poset", "left", "right")
    sub(g, "soundness", cmd_order_soundness, "poset", "left", "right")

    g = groups.add_parser("reliability").add_subparsers(dest="cmd", required=True)
    sub(g, "eval", cmd_reliability_eval, "assignment", "term")
    return parser


def run_command(argv: Sequence[str]) -> Report:
    """Parse ``argv`` and run the subcommand; usage and input errors give exit code 2."""
    rep = Report()
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as exc:
        rep.code = 2 if exc.code else 0
        return rep
    try:
        args.fn(args, rep)
    except (AlgebraError, FormatError, TermSyntaxError, UnassignedAtom, ValueError, OSError) as exc:
        rep = Report()
        rep.add("error", f"{type(exc).__name__}: {exc}")
        rep.code = 2
    return rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    rep = run_command(sys.argv[1:] if argv is None else argv)
    if rep.fields or rep.text:
        out = sys.stderr if rep.code == 2 else sys.stdout
        out.write(rep.render())
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
