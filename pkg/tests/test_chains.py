import random

import pytest
from hypothesis import given, settings, strategies as st

from maxchains.cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    Permutation,
    PrefixMap,
    UnorderedPartition,
    apply_partition,
    apply_unordered,
    random_map,
    transposition,
)
from maxchains.chains import (
    ChainApprox,
    act_chain,
    entry_points,
    hull_max,
    hull_min,
    in_neighborhood,
    in_vietoris_neighborhood,
    induced_order,
    induced_order_by_hulls,
    project_chain,
    refine_chain,
    root,
    theta,
)
from maxchains.suites import random_chain_on, random_partition

S = ClopenSet
OP = OrderedPartition.of
LEX = ChainApprox.lex(["00", "01", "10", "11"])
MIXED = ChainApprox(["10", "00", "11", "01"])
HALVES = OP(["0"], ["1"])


def test_root():
    assert root(LEX) == "00"
    assert root(MIXED) == "10"
    g = PrefixMap({"0": "1", "1": "0"})
    assert root(act_chain(g, MIXED)) == g(root(MIXED))


def test_hulls():
    assert hull_min(LEX, S(["10"])) == {"00", "01", "10"}
    assert hull_min(LEX, ClopenSet.whole()) == {"00"}
    assert hull_max(LEX, S(["0"])) == {"00", "01"}
    with pytest.raises(ContractError):
        hull_max(LEX, S(["1"]))
    with pytest.raises(ContractError):
        hull_min(LEX, ClopenSet.empty())


def test_induced_order_examples():
    halves = HALVES.unordered()
    assert induced_order(LEX, halves) == HALVES
    assert induced_order(MIXED, halves) == OP(["1"], ["0"])
    assert induced_order_by_hulls(MIXED, halves) == OP(["1"], ["0"])
    assert induced_order(MIXED, UnorderedPartition([ClopenSet.whole()])) == OP([""])


def test_induced_order_auto_refines():
    # the chain (0, 1) does not resolve {00}, {01}; splitting keeps 00 before 01
    c = ChainApprox(["1", "0"])
    alpha = UnorderedPartition([S(["00"]), S(["01", "1"])])
    assert induced_order(c, alpha) == OP(["01", "1"], ["00"])


def test_theta_examples():
    assert theta(LEX, HALVES).is_identity()
    assert theta(LEX, OP(["1"], ["0"])) == Permutation((2, 1))
    t = induced_order(MIXED, HALVES)
    assert theta(MIXED, t).is_identity()


def test_neighborhood_examples():
    assert in_neighborhood(LEX, HALVES)
    assert not in_neighborhood(LEX, OP(["1"], ["0"]))
    assert in_neighborhood(MIXED, induced_order(MIXED, HALVES))
    assert in_vietoris_neighborhood(LEX, HALVES) and not in_vietoris_neighborhood(LEX, OP(["1"], ["0"]))


def test_act_chain_examples():
    assert act_chain(PrefixMap.identity(), MIXED) == MIXED
    assert act_chain(transposition("0", "1"), ChainApprox(["0", "1"])) == ChainApprox(["1", "0"])


def test_refine_project_examples():
    c = ChainApprox(["0", "1"])
    fine = refine_chain(c, "0", "00", 3)
    assert fine == ChainApprox(["00", "1", "01"])
    assert project_chain(fine, ["0", "1"]) == c
    with pytest.raises(ContractError):
        refine_chain(c, "0", "00", 1)
    with pytest.raises(ContractError):
        refine_chain(c, "0", "10", 2)
    with pytest.raises(ContractError):
        refine_chain(c, "1", "10", 2)


def test_entry_points_examples():
    assert entry_points(LEX, HALVES) == ["00", "10"]
    assert entry_points(MIXED, OP([""])) == ["10"]
    assert entry_points(MIXED, HALVES) == ["10", "00"]


def test_chain_validation_and_json():
    with pytest.raises(ContractError):
        ChainApprox(["0", "10"])
    assert ChainApprox.from_json(MIXED.to_json()) == MIXED
    assert [e.sorted() for e in ChainApprox(["1", "0"]).elements()] == [["1"], [""]]


seeds = st.integers(0, 2**32)


@settings(max_examples=300)
@given(seeds)
def test_two_definitions_agree(seed):
    rng = random.Random(seed)
    c = random_chain_on(rng, 8)
    alpha = random_partition(rng, rng.randint(1, 5), 8)
    t = induced_order(c, alpha)
    assert t == induced_order_by_hulls(c, alpha)
    assert t.unordered() == alpha
    for x, part in zip(entry_points(c, alpha), t):
        assert part.contains_word(x)


@settings(max_examples=300)
@given(seeds)
def test_equivariance_and_theta(seed):
    rng = random.Random(seed)
    c = random_chain_on(rng, 8)
    g = random_map(rng, 8)
    k = rng.randint(1, 4)
    beta = random_partition(rng, k, 8)
    gc = act_chain(g, c)
    assert apply_partition(g, induced_order(c, beta)) == induced_order(gc, apply_unordered(g, beta))
    b = beta.as_ordered()
    assert theta(c, b) == theta(gc, apply_partition(g, b))
    t = induced_order(c, beta)
    for s in Permutation.all(k):
        assert theta(c, s.inverse().act(t)) == s


@settings(max_examples=300)
@given(seeds)
def test_neighborhood_law(seed):
    rng = random.Random(seed)
    c = random_chain_on(rng, 7)
    alpha = random_partition(rng, rng.randint(1, 4), 7)
    t = induced_order(c, alpha)
    assert in_vietoris_neighborhood(c, t)
    for s in Permutation.all(len(alpha)):
        a = s.act(t)
        assert in_neighborhood(c, a) == in_vietoris_neighborhood(c, a) == (a == t)


@given(seeds)
def test_refine_then_project(seed):
    rng = random.Random(seed)
    c = random_chain_on(rng, 8)
    leaf = rng.choice(c.order)
    pos = c.position(leaf) + 1
    fine = refine_chain(c, leaf, leaf + rng.choice("01"), rng.randint(pos + 1, len(c) + 1))
    assert project_chain(fine, c.code) == c
