import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from maxchains.cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    Permutation,
    PrefixMap,
    UnorderedPartition,
    all_codes,
    apply_clopen,
    apply_partition,
    canonicalize,
    complement,
    compose,
    homogeneity_witness,
    intersect,
    invert,
    is_complete_code,
    join,
    partition_refines,
    random_code,
    random_map,
    stabilizes,
    transposition,
    union,
)

S = ClopenSet
OP = OrderedPartition.of


def words(d):
    return ["".join(p) for p in product("01", repeat=d)]


def member(c: ClopenSet, w: str) -> bool:
    # w is long enough to decide membership
    return any(w.startswith(u) for u in c.cylinders)


def test_canonicalize_examples():
    assert canonicalize({"00", "01"}) == {"0"}
    assert canonicalize({"0", "01"}) == {"0"}
    assert canonicalize({"00", "01", "10", "11"}) == {""}
    assert S(["00", "01", "10", "11"]).is_whole()
    assert S().is_empty()


def test_bool_op_examples():
    assert complement(S(["0"])) == S(["1"])
    assert intersect(S(["0"]), S(["00", "11"])) == S(["00"])
    assert union(S(["0"]), S(["1"])) == ClopenSet.whole()
    assert complement(ClopenSet.whole()).is_empty()


def test_kraft_codes():
    assert is_complete_code(["0", "10", "11"])
    assert not is_complete_code(["0", "10"])
    assert not is_complete_code(["0", "01", "1"])
    assert [len(all_codes(n)) for n in range(1, 7)] == [1, 1, 2, 5, 14, 42]


clopen = st.lists(st.text("01", max_size=5), max_size=6).map(S)


@given(clopen, clopen)
def test_bool_ops_pointwise(a, b):
    d = max([a.depth(), b.depth(), 0]) + 1
    for w in words(d):
        assert member(a | b, w) == (member(a, w) or member(b, w))
        assert member(a & b, w) == (member(a, w) and member(b, w))
        assert member(~a, w) == (not member(a, w))
    assert S(a.cylinders) == a


def test_compose_examples():
    f = PrefixMap({"0": "00", "10": "01", "11": "1"})
    assert compose(f, invert(f)).is_identity()
    assert compose(PrefixMap.identity(), f) == f
    w = "0111" + "0" * 8
    assert invert(f)(f(w)) == w
    assert f("0111") == "00111"


def test_apply_examples():
    g = PrefixMap({"0": "00", "10": "01", "11": "1"})
    assert apply_clopen(PrefixMap.identity(), S(["0", "10"])) == S(["0", "10"])
    assert apply_clopen(g, S(["0"])) == S(["00"])
    assert apply_partition(g, OP(["0"], ["1"])) == OP(["00"], ["01", "1"])


def test_join_examples():
    a = OP(["0"], ["1"])
    assert join(a, a) == a
    assert join(a, OP(["00", "10"], ["01", "11"])) == OP(["00"], ["01"], ["10"], ["11"])
    assert join(a, OP(["1"], ["0"])) == a


def test_homogeneity_examples():
    a = OP(["0"], ["1"])
    assert homogeneity_witness(a, a).is_identity()
    g = homogeneity_witness(a, OP(["00"], ["01", "1"]))
    assert g == PrefixMap({"0": "00", "10": "01", "11": "1"})
    alpha, beta = OP(["00"], ["01"], ["1"]), OP(["1"], ["01"], ["00"])
    g = homogeneity_witness(alpha, beta)
    assert apply_partition(g, alpha) == beta
    with pytest.raises(ContractError):
        homogeneity_witness(a, OP([""]))


def test_stabilizes_examples():
    a = OP(["0"], ["1"])
    assert stabilizes(PrefixMap.identity(), a)
    assert not stabilizes(transposition("0", "1"), a)
    assert stabilizes(transposition("00", "01"), a)


def test_partition_validation():
    with pytest.raises(ContractError):
        OP(["0"], ["0", "1"])
    with pytest.raises(ContractError):
        OP(["0"])
    with pytest.raises(ContractError):
        OP(["0"], [], ["1"])
    assert OP(["0"], ["1"]) != UnorderedPartition(OP(["0"], ["1"]))


def test_unordered_canonical_order():
    u = UnorderedPartition([S(["1"]), S(["00"]), S(["01"])])
    assert [p.sorted() for p in u] == [["00"], ["01"], ["1"]]
    assert u == OP(["01"], ["1"], ["00"]).unordered()


def test_permutation_action():
    b = OP(["00"], ["01"], ["1"])
    s = Permutation.parse("231")
    assert s.act(b) == OP(["01"], ["1"], ["00"])
    # the action composes contravariantly: (s t) b = t (s b)
    t = Permutation.parse("213")
    assert (s * t).act(b) == t.act(s.act(b))
    assert s.inverse().act(s.act(b)) == b


def test_prefix_map_json():
    f = PrefixMap({"0": "11", "10": "0", "11": "10"})
    assert PrefixMap.from_json(f.to_json()) == f
    assert PrefixMap.from_json(["0->11", "10->0", "11->10"]) == f
    with pytest.raises(ContractError):
        PrefixMap({"0": "0", "1": "0"})
    with pytest.raises(ContractError):
        PrefixMap({"0": "0", "10": "1"})


def test_reduced_form():
    assert PrefixMap({"00": "00", "01": "01", "1": "1"}).is_identity()
    assert PrefixMap({"00": "10", "01": "11", "1": "0"}) == PrefixMap({"0": "1", "1": "0"})


maps = st.integers(0, 2**32).map(lambda s: random_map(random.Random(s), 8))


@settings(max_examples=200)
@given(maps, maps, maps)
def test_group_laws_pointwise(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert (f * invert(f)).is_identity() and (invert(f) * f).is_identity()
    assert PrefixMap.identity() * f == f == f * PrefixMap.identity()
    for w in words(12)[::97]:
        assert (f * g)(w) == f(g(w))


@settings(max_examples=100)
@given(maps, st.integers(0, 2**32), st.integers(1, 4))
def test_sk_action_commutes_with_g(g, seed, k):
    rng = random.Random(seed)
    code = random_code(rng, rng.randint(k, 8))
    labels = list(range(k)) + [rng.randrange(k) for _ in range(len(code) - k)]
    rng.shuffle(labels)
    alpha = OrderedPartition(S(w for w, b in zip(code, labels) if b == i) for i in range(k))
    for s in Permutation.all(k):
        assert apply_partition(g, s.act(alpha)) == s.act(apply_partition(g, alpha))
    beta = OrderedPartition(S(w for w, b in zip(code[::-1], labels) if b == i) for i in range(k))
    w = homogeneity_witness(alpha, beta)
    assert all(apply_clopen(w, a) == b for a, b in zip(alpha, beta))
    jn = join(alpha, beta)
    assert partition_refines(jn, alpha) and partition_refines(jn, beta)
