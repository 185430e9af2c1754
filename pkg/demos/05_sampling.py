"""Randomized evidence for an infinite carrier: the negative integers."""
from mnsemiring.constructions import modular_mn_semiring, negative_integers, sampled_verify, wrap_finite

# products of three negatives stay negative
print(sampled_verify(negative_integers(3), 2, 3, trials=10_000, seed=7).summary())

# products of two do not
report = sampled_verify(negative_integers(2), 2, 2, trials=100, seed=7)
print(report.summary())
rule, args, out, _ = report.closure_violations[0]
print(f"  {rule}{args} = {out}")

# the same sampler on a finite algebra agrees with the exhaustive check
print(sampled_verify(wrap_finite(modular_mn_semiring(5, 2, 3)), 2, 3, trials=1000, seed=0).summary())
