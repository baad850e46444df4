"""
Coordinate charts of the geometric crystals V(g).

Chart 1 follows the translation word of the type; A2dag also has chart 2 (word_w2 applied to [n-bar]).
Variable names: x0, x1, ..., xn for the ascending part, xb1.. for the descending part; y*/yb* on chart 2.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from app.errors import DivisionByZero, UndefinedOnChart
from app.services.cartan import TypeLabel, cartan_data, has_chart
from app.services.posrat import PosRatExpr, var


def x(k: int) -> str:
    return f"x{k}"


def xb(k: int) -> str:
    return f"xb{k}"


def chart_word(t: TypeLabel, chart: int = 1) -> List[Tuple[int, str]]:
    """(letter, coordinate name) pairs in word order."""
    if not has_chart(t):
        raise UndefinedOnChart(f"{t.family} has no geometric chart")
    cd = cartan_data(t)
    n = t.rank
    if chart == 2:
        if cd.word_w2 is None:
            raise UndefinedOnChart(f"{t.family} has only one chart")
        head = [(k, f"y{k}") for k in range(n, 0, -1)]
        return head + [(0, "y0")] + [(k, f"yb{k}") for k in range(1, n)]
    if chart != 1:
        raise UndefinedOnChart(f"chart must be 1 or 2, got {chart}")
    word = cd.word_w1
    if t.family == "A1":
        return [(k, x(k)) for k in word]
    out = []
    seen = set()
    for letter in word:
        name = xb(letter) if letter in seen else x(letter)
        seen.add(letter)
        out.append((letter, name))
    return out


def chart_names(t: TypeLabel, chart: int = 1) -> Tuple[str, ...]:
    """Coordinate order of ChartPoint values; A1 lists x1..xn, every other chart follows the word."""
    if t.family == "A1" and chart == 1:
        return tuple(x(k) for k in range(1, t.rank + 1))
    return tuple(name for _, name in chart_word(t, chart))


Value = Union[Fraction, PosRatExpr]


@dataclass(frozen=True)
class ChartPoint:
    type: TypeLabel
    chart: int
    values: Tuple[Value, ...]

    @property
    def names(self) -> Tuple[str, ...]:
        return chart_names(self.type, self.chart)

    def as_dict(self) -> Dict[str, Value]:
        return dict(zip(self.names, self.values))

    def __getitem__(self, name: str) -> Value:
        return self.as_dict()[name]

    def replace(self, updates: Dict[str, Value]) -> "ChartPoint":
        d = self.as_dict()
        d.update(updates)
        return ChartPoint(self.type, self.chart, tuple(d[k] for k in self.names))


def _coerce(v) -> Value:
    if isinstance(v, PosRatExpr):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


def make_point(t: TypeLabel, values: Union[Sequence, Dict[str, object]], chart: int = 1) -> ChartPoint:
    names = chart_names(t, chart)
    if isinstance(values, dict):
        missing = [k for k in names if k not in values]
        if missing:
            raise UndefinedOnChart(f"missing coordinates {missing} for {t} chart {chart}")
        raw = [values[k] for k in names]
    else:
        raw = list(values)
        if len(raw) != len(names):
            raise UndefinedOnChart(f"{t} chart {chart} needs {len(names)} coordinates {names}, got {len(raw)}")
    vals = tuple(_coerce(v) for v in raw)
    for name, v in zip(names, vals):
        if isinstance(v, Fraction) and v == 0:
            raise DivisionByZero(f"coordinate {name} must be nonzero")
    return ChartPoint(t, chart, vals)


def symbolic_point(t: TypeLabel, chart: int = 1) -> ChartPoint:
    names = chart_names(t, chart)
    return ChartPoint(t, chart, tuple(var(k) for k in names))


def random_chart_point(t: TypeLabel, rng: random.Random, chart: int = 1, bound: int = 50) -> ChartPoint:
    vals = []
    for _ in chart_names(t, chart):
        v = 0
        while v == 0:
            v = rng.randint(-bound, bound)
        vals.append(Fraction(v))
    return ChartPoint(t, chart, tuple(vals))
