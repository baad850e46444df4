import pytest

from app.errors import IndexOutOfRange
from app.services.cartan import CHART_FAMILIES, MIN_RANK, TypeLabel
from app.services.fundamental import basis_labels, fund_basis, fund_f, sigma_label

SIZES = {"A1": 1, "B1": 1, "C1": 0, "D1": 0, "A2odd": 0, "D2": 2, "A2dag": 1}


@pytest.mark.parametrize("family", CHART_FAMILIES)
def test_basis_size(family):
    n = MIN_RANK[family]
    extra = SIZES[family]
    expected = n + 1 if family == "A1" else 2 * n + extra
    assert len(basis_labels(TypeLabel(family, n))) == expected


@pytest.mark.parametrize("family", CHART_FAMILIES)
@pytest.mark.parametrize("bump", [0, 1])
def test_f_lowers_weight_by_alpha(family, bump):
    basis = fund_basis(TypeLabel(family, MIN_RANK[family] + bump))
    assert basis.lowering_failures() == []


def test_b1_zero_vector_multiplicity():
    assert fund_f(TypeLabel("B1", 3), 3, "0") == {"-3": 2}
    assert fund_f(TypeLabel("B1", 3), 3, "1") == {}


def test_highest_weight():
    assert fund_basis(TypeLabel("A1", 2)).wt("1") == (-1, 1, 0)
    assert fund_basis(TypeLabel("D2", 2)).wt("1") == (-2, 1, 0)


def test_unknown_label():
    with pytest.raises(IndexOutOfRange):
        fund_f(TypeLabel("C1", 2), 1, "7")


def test_sigma_labels():
    c1 = TypeLabel("C1", 2)
    assert sigma_label(c1, "1") == "-2"
    assert sigma_label(c1, "-1") == "2"
    assert sigma_label(TypeLabel("D2", 2), "phi") == "0"
    assert sigma_label(TypeLabel("A1", 2), "3") == "1"
    assert sigma_label(TypeLabel("B1", 3), "-1") == "1"
    assert sigma_label(TypeLabel("A2dag", 2), "1") is None
