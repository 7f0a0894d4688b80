import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from maxchains.cantor import (
    ClopenSet,
    ContractError,
    OrderedPartition,
    PrefixMap,
    apply_clopen,
    fixes_pointwise,
    is_subset,
    transposition,
)
from maxchains.chains import ChainApprox, act_chain, in_neighborhood, induced_order
from maxchains.dynamics import (
    WitnessCertificate,
    certify_extreme_proximality,
    certify_incomparability,
    certify_minimality,
    certify_phi_minimality,
    certify_proximality,
    check_witness,
    extreme_proximality_witness,
    incomparability_witness,
    phi_minimality_witness,
    point_cover_witness,
    proximality_witness,
)
from maxchains.suites import random_chain_on, random_partition

S = ClopenSet
OP = OrderedPartition.of
LEX = ChainApprox.lex(["00", "01", "10", "11"])
HALVES = OP(["0"], ["1"])


def test_point_cover():
    assert point_cover_witness("01", S(["0"])).is_identity()
    assert point_cover_witness("0110", ClopenSet.whole()).is_identity()
    g = point_cover_witness("11", S(["0"]))
    assert apply_clopen(g, S(["0"])).contains_word("11")
    with pytest.raises(ContractError):
        point_cover_witness("1", ClopenSet.empty())


def test_extreme_proximality():
    g = extreme_proximality_witness(S(["0"]), S(["11"]))
    assert g == PrefixMap({"0": "110", "10": "111", "110": "0", "111": "10"})
    assert apply_clopen(g, S(["0"])) == S(["110"])
    assert extreme_proximality_witness(S(["0"]), S(["0", "10"])).is_identity()
    g = extreme_proximality_witness(S(["0", "10"]), S(["01"]))
    assert is_subset(apply_clopen(g, S(["0", "10"])), S(["01"]))
    with pytest.raises(ContractError):
        extreme_proximality_witness(ClopenSet.whole(), S(["1"]))


def test_phi_minimality():
    c = ChainApprox(["10", "00", "11", "01"])
    g = phi_minimality_witness(c, HALVES)
    assert apply_clopen(g, S(["1"])) == S(["0"]) and apply_clopen(g, S(["0"])) == S(["1"])
    assert in_neighborhood(act_chain(g, c), HALVES)
    assert phi_minimality_witness(c, OP([""])).is_identity()
    assert phi_minimality_witness(LEX, HALVES).is_identity()


def test_proximality():
    rev = ChainApprox(["11", "10", "01", "00"])
    g = proximality_witness(LEX, rev, HALVES)
    assert g == PrefixMap({"00": "00", "11": "01", "01": "10", "10": "11"})
    for c in (LEX, rev):
        assert induced_order(act_chain(g, c), HALVES) == HALVES
    assert proximality_witness(LEX, LEX, HALVES) == phi_minimality_witness(LEX, HALVES)
    # both roots already in the first part
    c2 = ChainApprox(["01", "00", "11", "10"])
    g = proximality_witness(LEX, c2, HALVES)
    assert all(in_neighborhood(act_chain(g, c), HALVES) for c in (LEX, c2))


def test_incomparability():
    g, a, b = incomparability_witness(LEX, S(["0"]))
    assert g == PrefixMap({"00": "00", "01": "1", "1": "01"})
    assert (a, b) == ("01", "1")
    assert fixes_pointwise(g, S(["00"]))
    with pytest.raises(ContractError):
        incomparability_witness(LEX, ClopenSet.whole())
    with pytest.raises(ContractError):
        incomparability_witness(LEX, S(["00"]))
    with pytest.raises(ContractError):
        incomparability_witness(LEX, S(["1"]))


def all_certs():
    rev = ChainApprox(["11", "10", "01", "00"])
    return [
        certify_minimality("11", S(["0"])),
        certify_extreme_proximality(S(["0"]), S(["11"])),
        certify_phi_minimality(rev, HALVES),
        certify_proximality(LEX, rev, HALVES),
        certify_incomparability(LEX, S(["0"])),
    ]


def test_certificates_roundtrip_json():
    for cert in all_certs():
        data = json.loads(cert.dumps())
        assert WitnessCertificate.from_dict(data) == cert
        assert check_witness(data).ok


def test_tampered_certificates_fail():
    swap = transposition("0", "1")
    for cert in all_certs():
        data = cert.to_dict()
        data["witness"] = (swap * cert.witness).to_json()
        assert not check_witness(data).ok, cert.kind


def test_malformed_and_mismatched():
    verdict = check_witness({"kind": "minimality"})
    assert not verdict.ok and "malformed" in verdict.reason
    data = certify_extreme_proximality(S(["0"]), S(["11"])).to_dict()
    data["inputs"]["U"] = ["10"]
    verdict = check_witness(data)
    assert not verdict.ok and verdict.reason
    data = certify_incomparability(LEX, S(["0"])).to_dict()
    data["inputs"]["F"] = ["1"]
    assert not check_witness(data).ok
    assert not check_witness({"kind": "nonsense", "inputs": {}, "witness": ["e->e"]}).ok


seeds = st.integers(0, 2**32)


@settings(max_examples=200)
@given(seeds)
def test_random_soundness(seed):
    rng = random.Random(seed)
    c1, c2 = random_chain_on(rng, 7), random_chain_on(rng, 7)
    alpha = random_partition(rng, rng.randint(1, 4), 7).as_ordered()
    for cert in (certify_phi_minimality(c1, alpha), certify_proximality(c1, c2, alpha)):
        assert check_witness(cert.to_dict()).ok
    g = proximality_witness(c1, c2, alpha)
    assert induced_order(act_chain(g, c1), alpha) == alpha == induced_order(act_chain(g, c2), alpha)
    if len(c1) >= 3:
        f = c1.elements()[rng.randrange(1, len(c1) - 1)]
        assert check_witness(certify_incomparability(c1, f).to_dict()).ok
