import json
import random

import pytest

from maxchains.cantor import ContractError, OrderedPartition, apply_partition
from maxchains.certcheck import check_dr_certificate
from maxchains.chains import ChainApprox, induced_order
from maxchains.dual_ramsey import (
    BUDGET_ENV,
    BudgetExceeded,
    adversarial_config,
    amalgamated_cover,
    default_budget,
    dr_number,
    extract_table,
    factor_coloring,
    find_monochromatic,
    search_bad_coloring,
    sorted_refinement,
    verify_dr,
    witnessed_certificate,
)
from maxchains.partitions import Coloring, SetPartition, rgs_list
from maxchains.suites import random_chain_on, random_partition
from maxchains.symbolic import SymbolConfig, Table, phi_config

P = SetPartition.of


def test_find_monochromatic_examples():
    const = Coloring(3, 2, {c: 0 for c in rgs_list(3, 2)})
    assert find_monochromatic(const, 3) == (P({1}, {2}, {3}), 0)
    split = Coloring(3, 2, {c: "A" if c == (0, 1, 1) else "B" for c in rgs_list(3, 2)})
    assert find_monochromatic(split, 3) is None
    col = Coloring(4, 2, {c: i for i, c in enumerate(rgs_list(4, 2))})
    assert find_monochromatic(col, 2) == (SetPartition.from_rgs(rgs_list(4, 2)[0]), 0)
    with pytest.raises(ContractError):
        find_monochromatic(const, 4)
    with pytest.raises(ContractError):
        find_monochromatic(const, 1)


def test_verify_trivial_families():
    for r in (1, 2, 3):
        for m in range(1, 5):
            assert verify_dr(m, m, m, r).holds
            assert verify_dr(m, 1, m, r).holds
            assert verify_dr(m + 1, 1, m, r).holds
            if m > 1:
                assert verify_dr(m - 1, 1, m, r).holds is False


def test_verify_3_2_3_2():
    res = verify_dr(3, 2, 3, 2)
    assert res.holds is False
    assert find_monochromatic(res.bad_coloring, 3) is None
    assert check_dr_certificate(res.certificate).ok


def test_search_bad_coloring_examples():
    assert search_bad_coloring(3, 3, 3, 2) is None
    assert search_bad_coloring(5, 1, 3, 2) is None
    last_bad = max(n for n in range(3, 8) if search_bad_coloring(n, 2, 3, 2) is not None)
    assert dr_number(2, 3, 2, 8).value == last_bad + 1


def test_dr_number():
    assert dr_number(1, 4, 3, 4).value == 4
    assert dr_number(3, 3, 2, 3).value == 3
    out = dr_number(2, 3, 2, 8)
    assert out.status == "exact" and out.value == 6 and out.lower == 5
    assert check_dr_certificate(out.upper_certificate).ok
    assert check_dr_certificate(out.lower_certificate).ok
    capped = dr_number(2, 3, 2, 5)
    assert capped.status == "lower_bound" and capped.value is None and capped.lower == 5
    assert check_dr_certificate(capped.lower_certificate).ok


def test_budget_is_explicit(monkeypatch):
    res = verify_dr(6, 2, 3, 2, budget=20)
    assert res.holds is None and res.status == "unknown" and res.certificate is None
    with pytest.raises(BudgetExceeded):
        search_bad_coloring(6, 2, 3, 2, budget=20)
    monkeypatch.setenv(BUDGET_ENV, "1e3")
    assert default_budget() == 1000
    assert dr_number(2, 3, 2, 8, budget=50).status == "lower_bound"


def test_pruning_and_workers_agree():
    for n, k, m, r in [(4, 2, 3, 2), (4, 2, 3, 3), (5, 2, 3, 2), (4, 3, 4, 3)]:
        a, b = verify_dr(n, k, m, r), verify_dr(n, k, m, r, pruned=False)
        assert a.holds == b.holds
        if a.bad_coloring is not None:
            assert a.bad_coloring.colors == b.bad_coloring.colors
        assert check_dr_certificate(b.certificate).ok
    one = verify_dr(6, 2, 3, 2, workers=1)
    two = verify_dr(6, 2, 3, 2, workers=2, shard_depth=2)
    assert one.holds == two.holds is True
    assert one.certificate == two.certificate


def test_transcript_resume(tmp_path):
    path = tmp_path / "t.jsonl"
    first = dr_number(2, 3, 2, 8, transcript_path=str(path))
    lines = path.read_text().splitlines()
    assert [json.loads(x)["status"] for x in lines] == ["fails", "fails", "fails", "holds"]
    again = dr_number(2, 3, 2, 8, transcript_path=str(path), resume=True)
    assert path.read_text().splitlines() == lines
    assert again.value == first.value and again.upper_certificate == first.upper_certificate


def test_certificate_mutation():
    cert = verify_dr(5, 2, 3, 2).certificate
    assert check_dr_certificate(cert).ok
    flips = 0
    for key in sorted(cert["coloring"]):
        bad = json.loads(json.dumps(cert))
        bad["coloring"][key] = 1 - bad["coloring"][key]
        flips += not check_dr_certificate(bad).ok
    assert flips > 0
    empty = dict(cert, coloring={})
    verdict = check_dr_certificate(empty)
    assert not verdict.ok and "empty" in verdict.reason
    assert not check_dr_certificate({"kind": "lower_bound"}).ok
    up = verify_dr(6, 2, 3, 2).certificate
    truncated = dict(up, leaves=up["leaves"][:-1])
    assert not check_dr_certificate(truncated).ok


def test_witnessed_certificate():
    col = Coloring(4, 2, {c: 0 for c in rgs_list(4, 2)})
    cert = witnessed_certificate(col, 3, 2)
    assert check_dr_certificate(cert).ok
    cert["color"] = 1
    assert not check_dr_certificate(cert).ok


def test_factor_coloring_constant():
    t = Table.parse("id:-1,swap:+1")
    rng = random.Random(3)
    for _ in range(5):
        c0 = random_chain_on(rng, 5)
        alpha = random_partition(rng, 2, 5).as_ordered()
        for n in (2, 3, 4):
            beta = sorted_refinement(c0, alpha, n)
            col = factor_coloring(phi_config(t, c0), c0, beta)
            assert set(col.colors.values()) == {t}
    with pytest.raises(ContractError):
        c0 = ChainApprox(["0", "1"])
        factor_coloring(phi_config(t, c0), c0, OrderedPartition.of(["1"], ["0"]))


def test_factor_coloring_locality_and_single_point():
    c0 = ChainApprox(["1", "0"])
    beta = OrderedPartition.of(["1"], ["0"])
    omega = SymbolConfig(2, lambda b: 1 if b[0].sorted() == ["1"] else -1)
    col = factor_coloring(omega, c0, beta)
    assert list(col.colors) == [(0, 1)]
    twin = SymbolConfig(2, lambda b: omega(b) if b.words() <= {"0", "1"} else -omega(b))
    assert factor_coloring(twin, c0, beta).colors == col.colors


def test_extract_round_trip_and_adversarial():
    rng = random.Random(11)
    for t in Table.all(2):
        c0 = random_chain_on(rng, 6)
        alpha = random_partition(rng, 3, 6).as_ordered()
        got = extract_table(phi_config(t, c0), c0, alpha, 3)
        assert got is not None and got.table == t
        assert got.eta.k == len(alpha) and got.beta == sorted_refinement(c0, alpha, 3)
        assert apply_partition(got.g_alpha, amalgamated_cover(got.beta, got.eta)) == induced_order(c0, alpha)
    assert extract_table(phi_config(Table.constant(2), c0), c0, alpha, 3).table == Table.constant(2)
    bad = verify_dr(5, 2, 3, 2).bad_coloring
    beta = sorted_refinement(c0, alpha, 5)
    assert extract_table(adversarial_config(beta, bad), c0, alpha, 5) is None
