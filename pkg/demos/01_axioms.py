"""Build a few finite (m,n)-semirings and look at their structure."""
from mnsemiring import algebra as A
from mnsemiring.algebra import MNSemiring, OpTable
from mnsemiring.constructions import boolean_mn_semiring, derive_binary_ops, modular_mn_semiring

# integers mod 4, binary addition and ternary multiplication
Z4 = modular_mn_semiring(4, 2, 3)
print(Z4)
print("g(2, 2, 1) =", Z4.g(2, 2, 1))

report = A.analyze(Z4)
for name, value in report.items():
    print(f"  {name}: {value}")

# the ternary product has two identities, since 3 * 3 = 1 mod 4
print("g identities:", A.identity_elements(Z4.g))

# a failed check carries a witness that replays against the table
c = A.is_zero_divisor_free(Z4)
print("zero-divisor witness:", c.witness.args, "replays:", c.witness.replay(Z4.g))

# subsets of {a, b} as bitmasks, ternary union and binary intersection
B = boolean_mn_semiring(2, 3, 2)
print(B, "zero", B.zero, "one", B.one)
print("every element g-idempotent:", A.idempotent_elements(B.g) == set(range(4)))
c = A.is_cancellative(B.g)
print("g cancellative:", bool(c), c.witness.args)

# subtraction is not associative, so this is no semiring
sub = OpTable.from_function(3, 2, lambda x, y: (x - y) % 3)
mul = OpTable.from_function(3, 2, lambda x, y: x * y % 3)
r = A.verify_mn_semiring(MNSemiring(sub, mul))
print("semiring:", r.is_semiring, "witness", r.associative_f.witness)

# binary operations recovered by fixing the middle arguments
plus, times = derive_binary_ops(Z4)
print("derived times table:\n", times.table)
