"""
Generic geometric crystal action on a Schubert cell chart Y_{i_1}(c_1)...Y_{i_k}(c_k).

For index i with occurrences m (i_m = i):
    t_m   = 1 / (prod_{l<m} c_l^{a_{i_l, i}} * c_m)
    C_j   = c_j * (sum_{m<=j} c t_m + sum_{m>j} t_m) / (sum_{m<j} c t_m + sum_{m>=j} t_m)
    eps_i = sum_m t_m
    gamma_i = prod_l c_l^{a_{i_l, i}}
Works on exact rationals and on PosRatExpr alike.
"""
from functools import reduce
import operator
from typing import List, Sequence, Tuple

from app.errors import UndefinedOnChart
from app.services.cartan import CartanData


def _sum(items):
    return reduce(operator.add, items)


def _prod(items, one):
    return reduce(operator.mul, items, one)


def _occurrences(word: Sequence[int], i: int) -> List[int]:
    occ = [m for m, letter in enumerate(word) if letter == i]
    if not occ:
        raise UndefinedOnChart(f"letter {i} does not occur in word {tuple(word)}")
    return occ


def _t_terms(word: Sequence[int], cd: CartanData, i: int, coords: Sequence) -> List[Tuple[int, object]]:
    out = []
    for m in _occurrences(word, i):
        denom = coords[m]
        for l in range(m):
            denom = denom * coords[l] ** cd.a(word[l], i)
        out.append((m, 1 / denom))
    return out


def schubert_e(word: Sequence[int], cd: CartanData, i: int, c, coords: Sequence) -> Tuple:
    terms = _t_terms(word, cd, i, coords)
    new = list(coords)
    for j, _ in terms:
        num = _sum([c * t if m <= j else t for m, t in terms])
        den = _sum([c * t if m < j else t for m, t in terms])
        new[j] = coords[j] * num / den
    return tuple(new)


def schubert_stats(word: Sequence[int], cd: CartanData, i: int, coords: Sequence) -> Tuple[object, object]:
    """(eps_i, gamma_i)."""
    eps = _sum([t for _, t in _t_terms(word, cd, i, coords)])
    gamma = _prod([coords[l] ** cd.a(word[l], i) for l in range(len(word))], 1)
    return eps, gamma
