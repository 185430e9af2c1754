import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from corpus import corpus
from mnsemiring import algebra as A
from mnsemiring.constructions import boolean_mn_semiring, derive_binary_ops, modular_mn_semiring
from mnsemiring.algebra import MNSemiring
from mnsemiring.errors import (
    ArityMismatch,
    CarrierMismatch,
    CarrierTooLarge,
    IndexOutOfRange,
    NotACongruence,
    NotAHomomorphism,
    SizeMismatch,
)
from mnsemiring.morphisms import (
    Congruence,
    Morphism,
    all_homomorphisms,
    compose_maps,
    enumerate_congruences,
    induced_injection,
    induced_partition,
    is_congruence,
    is_homomorphism,
    is_isomorphic,
    kernel,
    projection,
    quotient,
)

Z6 = modular_mn_semiring(6, 2, 2)
Z3 = modular_mn_semiring(3, 2, 2)
MOD3 = Congruence.parse("0,3|1,4|2,5")
PARITY = Congruence.parse("0,2,4|1,3,5")
SMALL = [S for S in corpus() if S.k <= 4]


def mod3_map():
    return Morphism(6, 3, [x % 3 for x in range(6)])


# partitions

def test_congruence_is_canonical():
    assert Congruence((5, 5, 2, 2)) == Congruence((0, 0, 1, 1))
    assert Congruence.from_blocks([[1, 4], [0, 3], [2, 5]]) == MOD3
    assert str(MOD3) == "0,3|1,4|2,5"
    assert MOD3.num_blocks == 3 and MOD3.representatives == (0, 1, 2)


def test_partition_parse_errors():
    with pytest.raises(IndexOutOfRange):
        Congruence.parse("0,1|1,2", 3)
    with pytest.raises(IndexOutOfRange):
        Congruence.parse("0,1", 3)


def test_refinement():
    assert Congruence.discrete(6).refines(MOD3)
    assert MOD3.refines(Congruence.total(6))
    assert not MOD3.refines(PARITY)


# congruences

def test_is_congruence_examples():
    assert is_congruence(Z6, MOD3)
    c = is_congruence(Z6, Congruence.parse("0,1|2,3|4,5"))
    assert not c
    xs, ys = c.witness.args
    op = Z6.f if "f:" in c.witness.detail else Z6.g
    bad = Congruence.parse("0,1|2,3|4,5").block_of
    assert all(bad[x] == bad[y] for x, y in zip(xs, ys))
    assert bad[op(*xs)] != bad[op(*ys)]
    assert is_congruence(Z6, Congruence.discrete(6))


def test_is_congruence_size_mismatch():
    with pytest.raises(CarrierMismatch):
        is_congruence(Z6, Congruence.discrete(5))


def test_enumerate_examples():
    found = enumerate_congruences(Z6)
    assert MOD3 in found and PARITY in found
    assert set(enumerate_congruences(modular_mn_semiring(5, 2, 2))) == {Congruence.total(5), Congruence.discrete(5)}
    assert len(enumerate_congruences(modular_mn_semiring(1, 2, 2))) == 1


def test_enumerate_guard():
    with pytest.raises(CarrierTooLarge):
        enumerate_congruences(modular_mn_semiring(11, 2, 2))


@pytest.mark.parametrize("S", SMALL, ids=lambda S: f"{S.name}-{S.k}-{S.m}{S.n}")
def test_enumeration_matches_brute_force(S):
    f, g = oracle.as_dict(S.f), oracle.as_dict(S.g)
    expected = oracle.congruences(f, g, S.k)
    got = sorted(oracle.canonical_blocks(c.blocks) for c in enumerate_congruences(S))
    assert got == expected


@pytest.mark.parametrize("S", [S for S in SMALL if S.k <= 4][::3], ids=lambda S: f"{S.name}-{S.k}-{S.m}{S.n}")
def test_single_substitution_matches_full_definition(S):
    f, g = oracle.as_dict(S.f), oracle.as_dict(S.g)
    for blocks in oracle.set_partitions(range(S.k)):
        assert bool(is_congruence(S, Congruence.from_blocks(blocks, S.k))) == oracle.is_congruence(f, g, S.k, blocks)


# quotients

def test_quotient_examples():
    Q = quotient(Z6, MOD3)
    assert Q.k == 3 and is_isomorphic(Q, Z3) is not None
    assert oracle.isomorphic(oracle.as_dict(Q.f), oracle.as_dict(Q.g), oracle.as_dict(Z3.f), oracle.as_dict(Z3.g), 3)
    same = quotient(Z6, Congruence.discrete(6))
    assert same.f == Z6.f and same.g == Z6.g
    assert quotient(Z6, Congruence.total(6)).k == 1


def test_quotient_rejects_non_congruence():
    with pytest.raises(NotACongruence):
        quotient(Z6, Congruence.parse("0,1|2,3|4,5"))


@pytest.mark.parametrize("S", [S for S in corpus() if S.k <= 6][::2], ids=lambda S: f"{S.name}-{S.k}-{S.m}{S.n}")
def test_quotients_are_semirings(S):
    for sigma in enumerate_congruences(S):
        assert A.verify_mn_semiring(quotient(S, sigma)).is_semiring


# homomorphisms

def test_homomorphism_examples():
    assert is_homomorphism(Z6, Z3, mod3_map())
    shifted = Morphism(6, 3, [(x + 1) % 3 for x in range(6)])
    c = is_homomorphism(Z6, Z3, shifted)
    assert not c
    (idx,) = c.witness.args
    op = Z6.f if c.witness.detail.startswith("f") else Z6.g
    top = Z3.f if op is Z6.f else Z3.g
    assert shifted(op(*idx)) == c.witness.lhs != c.witness.rhs == top(*(shifted(x) for x in idx))
    assert is_homomorphism(Z6, Z6, Morphism.identity(6))


def test_homomorphism_arity_mismatch():
    with pytest.raises(ArityMismatch):
        is_homomorphism(Z6, modular_mn_semiring(3, 2, 3), mod3_map())


def test_morphism_validation():
    with pytest.raises(SizeMismatch):
        Morphism(3, 3, [0, 1])
    with pytest.raises(IndexOutOfRange):
        Morphism(2, 2, [0, 2])


def test_compose_examples():
    phi = mod3_map()
    assert compose_maps(Morphism.identity(6), phi) == phi
    const = Morphism(6, 6, [2] * 6)
    assert set(compose_maps(const, phi).map) == {2}
    with pytest.raises(SizeMismatch):
        compose_maps(phi, phi)


@pytest.mark.parametrize("S", [S for S in corpus() if S.k <= 3][::4], ids=lambda S: f"{S.name}-{S.k}-{S.m}{S.n}")
def test_composition_of_homs_is_hom(S):
    homs = all_homomorphisms(S, S)
    assert Morphism.identity(S.k) in homs
    for phi, psi in itertools.product(homs, repeat=2):
        assert is_homomorphism(S, S, compose_maps(phi, psi))


def test_all_homomorphisms_matches_oracle():
    B = boolean_mn_semiring(1, 2, 2)
    Z2 = modular_mn_semiring(2, 2, 2)
    fs, gs = oracle.as_dict(B.f), oracle.as_dict(B.g)
    ft, gt = oracle.as_dict(Z2.f), oracle.as_dict(Z2.g)
    expected = [p for p in itertools.product(range(2), repeat=2) if oracle.is_hom(fs, gs, ft, gt, p)]
    assert [phi.map for phi in all_homomorphisms(B, Z2)] == expected


# kernels and factorization

def test_kernel_examples():
    assert kernel(mod3_map()) == MOD3
    assert kernel(Morphism.identity(4)) == Congruence.discrete(4)
    assert kernel(Morphism(4, 2, [1] * 4)) == Congruence.total(4)


@pytest.mark.parametrize("S", [S for S in corpus() if S.k <= 3][::3], ids=lambda S: f"{S.name}-{S.k}-{S.m}{S.n}")
def test_kernels_are_congruences(S):
    for T in (S, modular_mn_semiring(2, S.m, S.n)):
        for phi in all_homomorphisms(S, T):
            assert is_congruence(S, kernel(phi))


def test_induced_injection_examples():
    Q, psi = induced_injection(Z6, Z3, mod3_map())
    assert Q.k == 3 and psi.injective and psi.surjective
    assert is_homomorphism(Q, Z3, psi)
    assert compose_maps(projection(kernel(mod3_map())), psi) == mod3_map()

    Q, psi = induced_injection(Z6, Z6, Morphism.identity(6))
    assert Q.k == 6 and psi == Morphism.identity(6)

    one = modular_mn_semiring(1, 2, 2)
    Q, psi = induced_injection(Z6, one, Morphism(6, 1, [0] * 6))
    assert Q.k == 1 and psi.map == (0,)


def test_induced_injection_rejects_non_hom():
    with pytest.raises(NotAHomomorphism):
        induced_injection(Z6, Z3, Morphism(6, 3, [(x + 1) % 3 for x in range(6)]))


def test_second_isomorphism_chain():
    chain = [Congruence.discrete(6), MOD3, Congruence.total(6)]
    for rho, sigma in itertools.combinations(chain, 2):
        R = quotient(Z6, rho)
        induced = induced_partition(rho, sigma)
        assert is_congruence(R, induced)
        assert is_isomorphic(quotient(R, induced), quotient(Z6, sigma)) is not None


def test_induced_partition_requires_refinement():
    with pytest.raises(NotACongruence):
        induced_partition(MOD3, PARITY)


# isomorphism search

def test_isomorphism_examples():
    assert is_isomorphic(Z6, Z6) == Morphism.identity(6)
    Z4 = modular_mn_semiring(4, 2, 2)
    B = boolean_mn_semiring(2, 3, 2)
    plus, times = derive_binary_ops(B)
    collapsed = MNSemiring(plus, times)
    assert is_isomorphic(Z4, collapsed) is None


def test_isomorphism_guard():
    with pytest.raises(CarrierTooLarge):
        is_isomorphic(modular_mn_semiring(9, 2, 2), modular_mn_semiring(9, 2, 2))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([S for S in corpus() if 2 <= S.k <= 4]), st.randoms(use_true_random=False))
def test_relabelled_copy_is_found(S, rnd):
    perm = list(range(S.k))
    rnd.shuffle(perm)
    inv = [perm.index(y) for y in range(S.k)]

    def relabel(op):
        return A.OpTable.from_function(S.k, op.arity, lambda *ys: perm[op(*(inv[y] for y in ys))])

    T = MNSemiring(relabel(S.f), relabel(S.g))
    phi = is_isomorphic(S, T)
    assert phi is not None and phi.injective and is_homomorphism(S, T, phi)


@pytest.mark.parametrize("pair", list(itertools.combinations([S for S in corpus() if S.k == 3 and (S.m, S.n) == (2, 2)], 2))[::5])
def test_isomorphism_matches_oracle(pair):
    S, T = pair
    fast = is_isomorphic(S, T) is not None
    slow = oracle.isomorphic(oracle.as_dict(S.f), oracle.as_dict(S.g), oracle.as_dict(T.f), oracle.as_dict(T.g), 3)
    assert fast == slow
