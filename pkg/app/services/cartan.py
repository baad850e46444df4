"""
Affine Cartan data for the eight type labels: matrix, marks/comarks, Dynkin automorphisms,
translation words and the Langlands dual pairing.
Index convention: a_ij = <alpha_i^vee, alpha_j>, so alpha_j has Lambda_i-coefficient a_ij (column j).
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.errors import CrystalError, RankError

FAMILIES = ("A1", "B1", "C1", "D1", "A2odd", "D2", "A2even", "A2dag")

MIN_RANK = {
    "A1": 2,
    "B1": 3,
    "C1": 2,
    "D1": 4,
    "A2odd": 3,
    "D2": 2,
    "A2even": 2,
    "A2dag": 2,
}

DUAL_FAMILY = {
    "A1": "A1",
    "B1": "A2odd",
    "A2odd": "B1",
    "C1": "D2",
    "D2": "C1",
    "D1": "D1",
    "A2even": "A2dag",
    "A2dag": "A2even",
}

# Families whose geometric chart is modelled (A2even only has a limit crystal)
CHART_FAMILIES = ("A1", "B1", "C1", "D1", "A2odd", "D2", "A2dag")

# (a_ij, a_ji) -> (lhs, rhs); each side lists (letter, (p1, p2)) read left to right,
# meaning e_letter^{c1^p1 c2^p2}. Composition applies the rightmost factor first.
VERMA_RELATIONS = {
    (0, 0): (
        [("i", (1, 0)), ("j", (0, 1))],
        [("j", (0, 1)), ("i", (1, 0))],
    ),
    (-1, -1): (
        [("i", (1, 0)), ("j", (1, 1)), ("i", (0, 1))],
        [("j", (0, 1)), ("i", (1, 1)), ("j", (1, 0))],
    ),
    (-2, -1): (
        [("i", (1, 0)), ("j", (2, 1)), ("i", (1, 1)), ("j", (0, 1))],
        [("j", (0, 1)), ("i", (1, 1)), ("j", (2, 1)), ("i", (1, 0))],
    ),
    (-3, -1): (
        [("i", (1, 0)), ("j", (3, 1)), ("i", (2, 1)), ("j", (3, 2)), ("i", (1, 1)), ("j", (0, 1))],
        [("j", (0, 1)), ("i", (1, 1)), ("j", (3, 2)), ("i", (2, 1)), ("j", (3, 1)), ("i", (1, 0))],
    ),
}


@dataclass(frozen=True)
class TypeLabel:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}(n={self.rank})"


@dataclass(frozen=True)
class CartanData:
    type: TypeLabel
    matrix: Tuple[Tuple[int, ...], ...]
    marks: Tuple[int, ...]
    comarks: Tuple[int, ...]
    sigma: Optional[Tuple[int, ...]]
    iota: Tuple[int, ...]
    word_w1: Optional[Tuple[int, ...]]
    word_w2: Optional[Tuple[int, ...]]
    dual: TypeLabel

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def index_set(self) -> range:
        return range(self.type.rank + 1)

    def a(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def column(self, i: int) -> Tuple[int, ...]:
        """Lambda-coefficients of cl(alpha_i)."""
        return tuple(row[i] for row in self.matrix)

    def to_dict(self) -> dict:
        return {
            "type": self.type.family,
            "rank": self.type.rank,
            "index_set": list(self.index_set),
            "matrix": [list(r) for r in self.matrix],
            "marks": list(self.marks),
            "comarks": list(self.comarks),
            "sigma": list(self.sigma) if self.sigma is not None else "none",
            "iota": list(self.iota),
            "word_w1": list(self.word_w1) if self.word_w1 is not None else None,
            "word_w2": list(self.word_w2) if self.word_w2 is not None else None,
            "dual": self.dual.family,
        }


def type_label(family: str, rank: int) -> TypeLabel:
    """Validated TypeLabel. Family names are matched case-insensitively."""
    lookup = {f.lower(): f for f in FAMILIES}
    key = (family or "").strip().lower()
    if key not in lookup:
        raise CrystalError(f"unknown type {family!r}; expected one of {', '.join(FAMILIES)}")
    fam = lookup[key]
    if not isinstance(rank, int) or rank < MIN_RANK[fam]:
        raise RankError(f"{fam} needs rank n >= {MIN_RANK[fam]}, got {rank}")
    return TypeLabel(fam, rank)


def langlands_dual(t: TypeLabel) -> TypeLabel:
    return TypeLabel(DUAL_FAMILY[t.family], t.rank)


def _empty(n: int) -> List[List[int]]:
    return [[2 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]


def _link(m: List[List[int]], i: int, j: int, aij: int = -1, aji: int = -1) -> None:
    m[i][j] = aij
    m[j][i] = aji


def _chain(m: List[List[int]], lo: int, hi: int) -> None:
    for i in range(lo, hi):
        _link(m, i, i + 1)


def _matrix(family: str, n: int) -> List[List[int]]:
    m = _empty(n)
    if family == "A1":
        _chain(m, 0, n)
        _link(m, n, 0)
    elif family == "B1":
        _chain(m, 1, n)
        _link(m, 0, 2)
        _link(m, n, n - 1, -2, -1)
    elif family == "C1":
        _chain(m, 0, n)
        _link(m, 1, 0, -2, -1)
        _link(m, n - 1, n, -2, -1)
    elif family == "D1":
        _chain(m, 1, n - 1)
        _link(m, 0, 2)
        _link(m, n - 2, n)
    elif family == "A2odd":
        _chain(m, 1, n)
        _link(m, 0, 2)
        _link(m, n - 1, n, -2, -1)
    elif family == "D2":
        _chain(m, 0, n)
        _link(m, 0, 1, -2, -1)
        _link(m, n, n - 1, -2, -1)
    elif family == "A2even":
        _chain(m, 0, n)
        _link(m, 0, 1, -2, -1)
        _link(m, n - 1, n, -2, -1)
    elif family == "A2dag":
        _chain(m, 0, n)
        _link(m, 1, 0, -2, -1)
        _link(m, n, n - 1, -2, -1)
    return m


def _marks(family: str, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(marks, comarks)."""
    twos = lambda k: [2] * k  # noqa: E731
    if family == "A1":
        return tuple([1] * (n + 1)), tuple([1] * (n + 1))
    if family == "B1":
        return tuple([1, 1] + twos(n - 1)), tuple([1, 1] + twos(n - 2) + [1])
    if family == "C1":
        return tuple([1] + twos(n - 1) + [1]), tuple([1] * (n + 1))
    if family == "D1":
        mk = tuple([1, 1] + twos(n - 3) + [1, 1])
        return mk, mk
    if family == "A2odd":
        return tuple([1, 1] + twos(n - 2) + [1]), tuple([1, 1] + twos(n - 1))
    if family == "D2":
        return tuple([1] * (n + 1)), tuple([1] + twos(n - 1) + [1])
    if family == "A2even":
        return tuple(twos(n) + [1]), tuple([1] + twos(n))
    # A2dag
    return tuple([1] + twos(n)), tuple(twos(n) + [1])


def _sigma(family: str, n: int) -> Optional[Tuple[int, ...]]:
    if family == "A1":
        return tuple((k + 1) % (n + 1) for k in range(n + 1))
    if family in ("B1", "D1", "A2odd"):
        return tuple([1, 0] + list(range(2, n + 1)))
    if family in ("C1", "D2"):
        return tuple(n - i for i in range(n + 1))
    return None


def _iota(family: str, n: int) -> Tuple[int, ...]:
    if family in ("A1", "B1", "A2odd"):
        return _sigma(family, n)
    if family == "D1":
        return tuple([1, 0] + list(range(2, n - 1)) + [n, n - 1])
    return tuple(range(n + 1))


def _words(family: str, n: int) -> Tuple[Optional[Tuple[int, ...]], Optional[Tuple[int, ...]]]:
    up = list(range(1, n + 1))
    if family == "A1":
        return tuple(range(n, 0, -1)), None
    if family in ("B1", "A2odd"):
        return tuple(up + list(range(n - 1, 0, -1))), None
    if family in ("C1", "D2"):
        return tuple([0] + up + list(range(n - 1, 0, -1))), None
    if family == "D1":
        return tuple(up + list(range(n - 2, 0, -1))), None
    if family == "A2dag":
        w1 = tuple([0] + up + list(range(n - 1, 0, -1)))
        w2 = tuple(list(range(n, 0, -1)) + [0] + list(range(1, n)))
        return w1, w2
    return None, None


_CACHE: Dict[TypeLabel, CartanData] = {}


def cartan_data(t: TypeLabel) -> CartanData:
    """Full Cartan record for a validated (family, rank)."""
    t = type_label(t.family, t.rank)
    if t in _CACHE:
        return _CACHE[t]
    n = t.rank
    marks, comarks = _marks(t.family, n)
    w1, w2 = _words(t.family, n)
    data = CartanData(
        type=t,
        matrix=tuple(tuple(r) for r in _matrix(t.family, n)),
        marks=marks,
        comarks=comarks,
        sigma=_sigma(t.family, n),
        iota=_iota(t.family, n),
        word_w1=w1,
        word_w2=w2,
        dual=langlands_dual(t),
    )
    _CACHE[t] = data
    return data


def has_chart(t: TypeLabel) -> bool:
    return t.family in CHART_FAMILIES


def verma_relation(aij: int, aji: int):
    """Relation for the ordered pair (i, j); None when the pair needs the other orientation."""
    return VERMA_RELATIONS.get((aij, aji))
