"""Series/parallel systems: exact failure probabilities and the tolerance order."""
from fractions import Fraction

from mnsemiring.systems import (
    AtomPoset,
    check_soundness,
    derive_order,
    failure_probability,
    normalize,
    parse_term,
    semantic_order_sampled,
)

# f = series (fails if any part fails), g = parallel (fails if all fail)
prob = {"a": Fraction(1, 10), "b": Fraction(1, 5)}
series = parse_term("(f a b)")
doubled = parse_term("(f (f a b) (f a b))")
print(series, "fails with probability", failure_probability(series, prob))
print(doubled, "fails with probability", failure_probability(doubled, prob))
print("normal form:", normalize(doubled))

res = derive_order(series, doubled)
print("\nderived:", res.relation.value)
for step in res.derivation:
    print("  ", step)

# component a is known to be at least as reliable as c
P = AtomPoset.parse("a <= c\nb <= d\n")
s = parse_term("(g x (f a b) y)")
t = parse_term("(g x (f c d) y)")
res = derive_order(s, t, P)
print("\nnested:", res.relation.value)
for step in res.derivation:
    print("  ", step)

# the engine is incomplete: unrelated atoms stay unknown
print("\na vs b:", derive_order(parse_term("a"), parse_term("b")).relation.value)
sem = semantic_order_sampled(parse_term("a"), parse_term("b"), samples=64, seed=0)
print("sampled:", sem.relation.value, [dict(w.prob) for w in sem.witnesses])

report = check_soundness(s, t, P, samples=200, seed=1)
print("\nsoundness over", report.samples, "assignments:", report.sound)
