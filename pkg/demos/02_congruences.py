"""Congruences, quotients and the factorization of a homomorphism on Z6."""
from mnsemiring.constructions import modular_mn_semiring
from mnsemiring.morphisms import (
    Congruence,
    Morphism,
    compose_maps,
    enumerate_congruences,
    induced_injection,
    induced_partition,
    is_homomorphism,
    is_isomorphic,
    kernel,
    projection,
    quotient,
)

Z6 = modular_mn_semiring(6, 2, 2)
Z3 = modular_mn_semiring(3, 2, 2)

print("congruences of Z6:")
for c in enumerate_congruences(Z6):
    print("  ", c)

mod3 = Congruence.parse("0,3|1,4|2,5")
Q = quotient(Z6, mod3)
print("Z6 / mod3 has", Q.k, "elements; isomorphism to Z3:", is_isomorphic(Q, Z3).map)

phi = Morphism(6, 3, [x % 3 for x in range(6)])
print("x -> x mod 3 is a homomorphism:", bool(is_homomorphism(Z6, Z3, phi)))
print("kernel:", kernel(phi))

Q, psi = induced_injection(Z6, Z3, phi)
print("induced map on the quotient:", psi.map, "injective:", psi.injective)
print("phi = psi after projection:", compose_maps(projection(kernel(phi)), psi) == phi)

# quotient in two steps equals quotient in one
total = Congruence.total(6)
step = quotient(quotient(Z6, mod3), induced_partition(mod3, total))
print("two-step quotient size:", step.k, "matches:", is_isomorphic(step, quotient(Z6, total)) is not None)

shifted = Morphism(6, 3, [(x + 1) % 3 for x in range(6)])
print("x -> x + 1 mod 3:", is_homomorphism(Z6, Z3, shifted).witness)
