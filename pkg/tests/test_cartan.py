import pytest

from app.errors import CrystalError, RankError
from app.services.cartan import (
    DUAL_FAMILY,
    FAMILIES,
    MIN_RANK,
    TypeLabel,
    cartan_data,
    langlands_dual,
    type_label,
    verma_relation,
)


def all_types():
    for fam in FAMILIES:
        for n in (MIN_RANK[fam], MIN_RANK[fam] + 1):
            yield TypeLabel(fam, n)


def test_type_label_is_case_insensitive():
    assert type_label("a2odd", 3) == TypeLabel("A2odd", 3)


def test_type_label_rejects_small_rank():
    with pytest.raises(RankError):
        type_label("B1", 2)


def test_type_label_rejects_unknown_family():
    with pytest.raises(CrystalError):
        type_label("E8", 8)


def test_a1_matrix():
    cd = cartan_data(TypeLabel("A1", 2))
    assert cd.matrix == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))
    assert cd.column(0) == (2, -1, -1)


@pytest.mark.parametrize("t", list(all_types()), ids=str)
def test_marks_and_comarks_are_null_vectors(t):
    cd = cartan_data(t)
    idx = cd.index_set
    for i in idx:
        assert sum(cd.a(i, j) * cd.marks[j] for j in idx) == 0
    for j in idx:
        assert sum(cd.comarks[i] * cd.a(i, j) for i in idx) == 0


@pytest.mark.parametrize("t", list(all_types()), ids=str)
def test_dual_is_transpose(t):
    cd = cartan_data(t)
    dual = cartan_data(langlands_dual(t))
    assert dual.type.family == DUAL_FAMILY[t.family]
    for i in cd.index_set:
        for j in cd.index_set:
            assert dual.a(i, j) == cd.a(j, i)


@pytest.mark.parametrize("t", [t for t in all_types() if cartan_data(t).sigma is not None], ids=str)
def test_sigma_is_a_diagram_automorphism(t):
    cd = cartan_data(t)
    for i in cd.index_set:
        for j in cd.index_set:
            assert cd.a(cd.sigma[i], cd.sigma[j]) == cd.a(i, j)


def test_words():
    assert cartan_data(TypeLabel("A1", 3)).word_w1 == (3, 2, 1)
    assert cartan_data(TypeLabel("C1", 2)).word_w1 == (0, 1, 2, 1)
    assert cartan_data(TypeLabel("D1", 4)).word_w1 == (1, 2, 3, 4, 2, 1)
    assert cartan_data(TypeLabel("A2dag", 2)).word_w2 == (2, 1, 0, 1)
    assert cartan_data(TypeLabel("A2even", 2)).word_w1 is None


def test_verma_relations():
    assert verma_relation(0, 0) is not None
    assert verma_relation(-2, -1) is not None
    assert verma_relation(-1, -2) is None
    lhs, rhs = verma_relation(-3, -1)
    assert len(lhs) == len(rhs) == 6


def test_to_dict():
    d = cartan_data(TypeLabel("D2", 2)).to_dict()
    assert d["dual"] == "C1"
    assert d["index_set"] == [0, 1, 2]
    assert d["word_w2"] is None
