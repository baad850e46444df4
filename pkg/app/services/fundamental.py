"""
Level-zero fundamental representation W(varpi_1): labeled basis, f_i tables and weights.

Labels are strings: "1".."n" for [i], "0" for [0], "-k" for the barred [k], "phi" for the extra D2 vector.
Type A1 uses "1".."n+1".
FundVec is a plain dict label -> coefficient (Fraction or PosRatExpr); zeros are never stored.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.errors import IndexOutOfRange, UndefinedOnChart
from app.services.cartan import CartanData, TypeLabel, cartan_data

FundVec = Dict[str, object]
Table = Dict[int, Dict[str, List[Tuple[str, int]]]]


def bar(k: int) -> str:
    return f"-{k}"


def basis_labels(t: TypeLabel) -> Tuple[str, ...]:
    n, fam = t.rank, t.family
    up = [str(i) for i in range(1, n + 1)]
    down = [bar(i) for i in range(n, 0, -1)]
    if fam == "A1":
        return tuple(str(i) for i in range(1, n + 2))
    if fam in ("B1", "A2dag"):
        return tuple(up + ["0"] + down)
    if fam == "D2":
        return tuple(up + ["0"] + down + ["phi"])
    if fam in ("C1", "A2odd", "D1"):
        return tuple(up + down)
    raise UndefinedOnChart(f"{fam} has no fundamental representation here")


def _f_table(t: TypeLabel) -> Table:
    n, fam = t.rank, t.family
    table: Table = {i: {} for i in range(n + 1)}

    def put(i: int, src: str, dst: str, mult: int = 1) -> None:
        table[i].setdefault(src, []).append((dst, mult))

    if fam == "A1":
        for i in range(1, n + 1):
            put(i, str(i), str(i + 1))
        put(0, str(n + 1), "1")
        return table

    for i in range(1, n):
        put(i, str(i), str(i + 1))
        put(i, bar(i + 1), bar(i))

    if fam == "B1":
        put(n, str(n), "0")
        put(n, "0", bar(n), 2)
        put(0, bar(2), "1")
        put(0, bar(1), "2")
    elif fam == "C1":
        put(n, str(n), bar(n))
        put(0, bar(1), "1")
    elif fam == "D1":
        put(n, str(n), bar(n - 1))
        put(n, str(n - 1), bar(n))
        put(0, bar(2), "1")
        put(0, bar(1), "2")
    elif fam == "A2odd":
        put(n, str(n), bar(n))
        put(0, bar(2), "1")
        put(0, bar(1), "2")
    elif fam == "D2":
        put(n, str(n), "0")
        put(n, "0", bar(n), 2)
        put(0, bar(1), "phi")
        put(0, "phi", "1", 2)
    elif fam == "A2dag":
        put(n, str(n), "0")
        put(n, "0", bar(n), 2)
        put(0, bar(1), "1")
    return table


def _highest_weight(cd: CartanData) -> Tuple[int, ...]:
    w = [0] * (cd.rank + 1)
    w[1] = 1
    w[0] = -2 if cd.type.family == "D2" else -1
    return tuple(w)


class FundBasis:
    """Basis, f_i action and weights of W(varpi_1) for one type."""

    def __init__(self, t: TypeLabel):
        self.type = t
        self.cartan = cartan_data(t)
        self.labels = basis_labels(t)
        self.table = _f_table(t)
        self.weights = self._propagate_weights()

    def _propagate_weights(self) -> Dict[str, Tuple[int, ...]]:
        weights = {"1": _highest_weight(self.cartan)}
        changed = True
        while changed:
            changed = False
            for i, rows in self.table.items():
                col = self.cartan.column(i)
                for src, targets in rows.items():
                    if src not in weights:
                        continue
                    for dst, _ in targets:
                        if dst not in weights:
                            weights[dst] = tuple(a - b for a, b in zip(weights[src], col))
                            changed = True
        missing = [lab for lab in self.labels if lab not in weights]
        if missing:
            raise ValueError(f"weights not reachable for {missing} in {self.type}")
        return weights

    def wt(self, label: str) -> Tuple[int, ...]:
        return self.weights[label]

    def f(self, i: int, label: str) -> FundVec:
        """f_i applied to a single basis vector; {} is the zero vector."""
        if i not in self.table:
            raise IndexOutOfRange(f"index {i} outside 0..{self.type.rank}")
        if label not in self.weights:
            raise IndexOutOfRange(f"unknown basis label {label!r} for {self.type}")
        return {dst: Fraction(m) for dst, m in self.table[i].get(label, [])}

    def apply_f(self, i: int, v: FundVec) -> FundVec:
        out: FundVec = {}
        for label, coef in v.items():
            for dst, m in self.table[i].get(label, []):
                term = coef * m if m != 1 else coef
                out[dst] = out[dst] + term if dst in out else term
        return drop_zeros(out)

    def lowering_failures(self) -> List[Tuple[int, str, str]]:
        """Edges (i, src, dst) where f_i fails to lower the weight by cl(alpha_i)."""
        bad = []
        for i, rows in self.table.items():
            col = self.cartan.column(i)
            for src, targets in rows.items():
                for dst, _ in targets:
                    want = tuple(a - b for a, b in zip(self.weights[src], col))
                    if self.weights[dst] != want:
                        bad.append((i, src, dst))
        return bad

    def order(self, v: FundVec) -> List[Tuple[str, object]]:
        return [(lab, v[lab]) for lab in self.labels if lab in v]


_BASES: Dict[TypeLabel, FundBasis] = {}


def fund_basis(t: TypeLabel) -> FundBasis:
    if t not in _BASES:
        _BASES[t] = FundBasis(t)
    return _BASES[t]


def fund_f(t: TypeLabel, i: int, label: str) -> FundVec:
    return fund_basis(t).f(i, label)


def drop_zeros(v: FundVec) -> FundVec:
    return {k: c for k, c in v.items() if not (isinstance(c, (int, Fraction)) and c == 0)}


def sigma_label(t: TypeLabel, label: str) -> Optional[str]:
    """Action of the diagram automorphism on basis labels; None for types without sigma."""
    n, fam = t.rank, t.family
    if fam == "A1":
        k = int(label)
        return str(k % (n + 1) + 1)
    if fam in ("B1", "D1", "A2odd"):
        return {"1": bar(1), bar(1): "1"}.get(label, label)
    if fam in ("C1", "D2"):
        if label == "0":
            return "phi"
        if label == "phi":
            return "0"
        k = int(label)
        return bar(n + 1 - k) if k > 0 else str(n + 1 + k)
    return None
