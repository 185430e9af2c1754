"""Ideals of Z6 and the subset products built from them."""
from mnsemiring.constructions import modular_mn_semiring
from mnsemiring.ideals import (
    all_ideals,
    f_image_of_ideals,
    ideal_generated_by,
    ideal_scaling_counterexamples,
    intersect_ideals,
    is_ideal,
    product_of_subsets,
)

Z6 = modular_mn_semiring(6, 2, 2)
evens, threes = {0, 2, 4}, {0, 3}

print("ideals of Z6:", [sorted(I) for I in all_ideals(Z6)])
print("{0,2,4} ideal:", bool(is_ideal(Z6, evens)), " {0,1} ideal:", bool(is_ideal(Z6, {0, 1})))
print("generated by {2}:", sorted(ideal_generated_by(Z6, {2})))
print("intersection:", sorted(intersect_ideals(Z6, evens, threes)))
print("sum set {0,3} + {0,2,4}:", sorted(f_image_of_ideals(Z6, threes, evens)))
print("product {1}{2}:", sorted(product_of_subsets(Z6, {1}, {2})))

# multiplying an ideal by one of its own elements can shrink it
for c in ideal_scaling_counterexamples(Z6, evens):
    print(f"  fixing {c.fixed}: image {sorted(c.image)} differs from {sorted(c.ideal)}")
