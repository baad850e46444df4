import pytest

from app.errors import CrystalError, UndefinedOnChart
from app.services.cartan import TypeLabel, cartan_data
from app.services.harness import (
    _log2_exact,
    applies,
    run_campaign,
    run_check,
    verify_binf,
    verma_pairs,
)


def test_verma_pairs_cover_every_pair():
    assert len(verma_pairs(TypeLabel("A1", 2))) == 3
    assert len(verma_pairs(TypeLabel("C1", 2))) == 3
    assert len(verma_pairs(TypeLabel("A2dag", 2), chart=2)) == 1


def test_log2_exact():
    assert _log2_exact(1) == 0
    assert _log2_exact(4) == 2
    assert _log2_exact(0.25) == -2
    assert _log2_exact(3) is None


def test_reports_are_deterministic():
    a = run_check("chart", "B1", 3, mode="sampled", trials=5, seed=7).to_dict()
    b = run_check("chart", "B1", 3, mode="sampled", trials=5, seed=7).to_dict()
    assert a == b
    assert a["pass"] is True
    assert a["sample_size"] == 5


def test_unknown_check():
    with pytest.raises(CrystalError):
        run_check("nope", "A1", 2)


def test_bad_mode():
    with pytest.raises(CrystalError):
        run_check("chart", "A1", 2, mode="fast")


def test_checks_need_a_chart():
    with pytest.raises(UndefinedOnChart):
        run_check("verma", "A2even", 2)
    with pytest.raises(UndefinedOnChart):
        run_check("binf", "A2dag", 2)
    assert not applies("ud", TypeLabel("A2even", 2))
    assert applies("binf", TypeLabel("A2even", 2))


def test_binf_including_tensor_products():
    report = verify_binf(TypeLabel("A2even", 2), samples=100, seed=1)
    assert report.passed
    assert report.sample_size == 120


def test_small_campaign():
    reports = run_campaign(ranks="min", checks=("chart", "binf"), mode="sampled", families=("A1", "D2", "A2even"))
    assert [(r.check, r.type) for r in reports] == [
        ("chart", "A1"), ("chart", "D2"),
        ("binf", "A1"), ("binf", "D2"), ("binf", "A2even"),
    ]
    assert all(r.passed for r in reports)


def test_campaign_rank_choice():
    with pytest.raises(CrystalError):
        run_campaign(ranks="all")


def test_campaign_defaults_to_both_ranks():
    reports = run_campaign(checks=("chart",), mode="sampled", families=("A1",))
    assert [(r.type, r.rank) for r in reports] == [("A1", 2), ("A1", 3)]


@pytest.mark.parametrize("family,rank", [("B1", 3), ("D1", 4), ("A2odd", 3), ("C1", 2), ("D2", 2)])
def test_zero_index_commutes_where_cartan_entries_vanish(family, rank):
    t = TypeLabel(family, rank)
    cd = cartan_data(t)
    pairs = {(i, j): (lhs, rhs) for i, j, lhs, rhs in verma_pairs(t)}
    commuting = [j for j in range(1, rank + 1) if cd.a(0, j) == 0 and cd.a(j, 0) == 0]
    assert commuting
    for j in commuting:
        lhs, rhs = pairs[(0, j)]
        assert len(lhs) == len(rhs) == 2
        assert [letter for letter, _ in lhs] == ["i", "j"]
        assert [letter for letter, _ in rhs] == ["j", "i"]
