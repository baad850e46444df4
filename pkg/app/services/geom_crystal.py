"""
Affine geometric crystals V(g) on their charts.

Every function is generic in the coefficient ring: coordinates and c may be exact Fractions
(fast numeric checks) or PosRatExpr (symbolic identities). Only +, *, / and integer powers are used,
so symbolic results stay subtraction-free.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.errors import IndexOutOfRange, UndefinedOnChart
from app.services.cartan import cartan_data
from app.services.charts import ChartPoint, chart_word, x as xn, xb as xbn
from app.services.fundamental import FundBasis, FundVec, bar, drop_zeros, fund_basis, sigma_label
from app.services.schubert import schubert_e, schubert_stats

MAX_EXP_DEGREE = 8


class _Pt:
    """x_k / xb_k / P_k access on a chart-1 point."""

    def __init__(self, point: ChartPoint):
        self.point = point
        self.t = point.type
        self.n = point.type.rank
        self.cd = cartan_data(point.type)
        self.d = point.as_dict()

    def has(self, name: str) -> bool:
        return name in self.d

    def x(self, k: int):
        return self.d[xn(k)]

    def xb(self, k: int):
        return self.d[xbn(k)]

    def P(self, k: int):
        return self.x(k) * self.xb(k)


def _check_index(point: ChartPoint, i: int) -> None:
    if not 0 <= i <= point.type.rank:
        raise IndexOutOfRange(f"index {i} outside 0..{point.type.rank}")


# --- W(varpi_1) side ---

def y_action(basis: FundBasis, i: int, c, v: FundVec) -> FundVec:
    """Y_i(c) = y_i(1/c) alpha_i^vee(c): scale by c^<alpha_i^vee, wt>, then apply exp(f_i / c)."""
    scaled: FundVec = {}
    for label, coef in v.items():
        k = basis.wt(label)[i]
        scaled[label] = coef * c ** k if k else coef
    result = dict(scaled)
    term = scaled
    for k in range(1, MAX_EXP_DEGREE + 1):
        term = basis.apply_f(i, term)
        if not term:
            break
        term = {label: coef / (k * c) for label, coef in term.items()}
        for label, coef in term.items():
            result[label] = result[label] + coef if label in result else coef
    else:
        raise ValueError(f"f_{i} is not nilpotent within degree {MAX_EXP_DEGREE}")
    return drop_zeros(result)


def v_matrix(point: ChartPoint) -> FundVec:
    """Y_{i_1}(x_1)...Y_{i_k}(x_k) applied to [1] (chart 2: to [n-bar])."""
    t = point.type
    basis = fund_basis(t)
    d = point.as_dict()
    v: FundVec = {"1": Fraction(1)} if point.chart == 1 else {bar(t.rank): Fraction(1)}
    for letter, name in reversed(chart_word(t, point.chart)):
        v = y_action(basis, letter, d[name], v)
    return v


def _xi(p: _Pt, i: int):
    """Coefficient of [i] in the chart-1 closed form."""
    fam, n = p.t.family, p.n
    if fam == "A1":
        return p.x(i)
    if fam == "D1":
        if i == n:
            return p.x(n)
        if i == n - 1:
            return (p.P(n - 2) + p.x(n - 1) * p.x(n)) / p.x(n - 2)
    if i == 1:
        if fam in ("B1", "A2odd", "D1"):
            return p.P(1)
        if fam in ("C1", "A2dag"):
            return (p.x(0) + p.P(1)) / p.x(0)
        return (p.x(0) ** 2 + p.P(1)) / p.x(0) ** 2
    if i == n:
        top = p.x(n) ** -p.cd.a(n, n - 1)
        return (p.P(n - 1) + top) / p.x(n - 1)
    return (p.P(i - 1) + p.P(i)) / p.x(i - 1)


def v_closed(point: ChartPoint) -> FundVec:
    """Closed-form coordinates of v(x) on the labeled basis."""
    t = point.type
    n, fam = t.rank, t.family
    if point.chart == 2:
        return _v_closed_chart2(point)
    p = _Pt(point)
    v: FundVec = {}
    if fam == "A1":
        for i in range(1, n + 1):
            v[str(i)] = p.x(i)
        v[str(n + 1)] = Fraction(1)
        return v
    for i in range(1, n + 1):
        v[str(i)] = _xi(p, i)
    if fam in ("B1", "D2", "A2dag"):
        v["0"] = p.x(n)
    if fam in ("C1", "A2dag"):
        for i in range(1, n + 1):
            v[bar(i)] = p.x(i - 1)
    else:
        for i in range(2, n + 1):
            v[bar(i)] = p.x(i - 1)
        v[bar(1)] = p.x(0) ** 2 if fam == "D2" else Fraction(1)
    if fam == "D2":
        v["phi"] = p.x(0)
    return v


def _v_closed_chart2(point: ChartPoint) -> FundVec:
    n = point.type.rank
    d = point.as_dict()
    y = lambda k: d[f"y{k}"]  # noqa: E731
    yb = lambda k: d[f"yb{k}"]  # noqa: E731
    v: FundVec = {}
    for i in range(1, n):
        v[str(i)] = y(i)
    v[str(n)] = y(n) ** 2
    v["0"] = y(n)
    v[bar(1)] = (y(0) + y(1) * yb(1)) / y(1)
    for i in range(2, n):
        v[bar(i)] = (y(i - 1) * yb(i - 1) + y(i) * yb(i)) / y(i)
    v[bar(n)] = (y(n - 1) * yb(n - 1) + y(n) ** 2) / y(n) ** 2
    return v


# --- chart-1 action for i != 0 ---

def _paired(p: _Pt) -> range:
    if p.t.family == "A1":
        return range(0)
    if p.t.family == "D1":
        return range(1, p.n - 1)
    return range(1, p.n)


def _q(p: _Pt, i: int):
    if i + 1 in _paired(p):
        return p.P(i + 1)
    n = p.n
    if p.t.family == "D1":
        return p.x(n - 1) * p.x(n)
    return p.x(n) ** -p.cd.a(n, n - 1)


def _lower(p: _Pt, i: int):
    """x_{i-1}^m with m = -a_{i-1,i}, or None when x_{i-1} is not a coordinate."""
    if not p.has(xn(i - 1)):
        return None
    return p.x(i - 1) ** -p.cd.a(i - 1, i)


def _gamma_den(p: _Pt, i: int):
    m = -p.cd.a(i - 1, i)
    if p.has(xbn(i - 1)):
        return p.P(i - 1) ** m
    return _lower(p, i)


def _e_nonzero(p: _Pt, i: int, c) -> Dict[str, object]:
    if i in _paired(p):
        P, Q = p.P(i), _q(p, i)
        return {
            xn(i): p.x(i) * (c * P + Q) / (P + Q),
            xbn(i): p.xb(i) * c * (P + Q) / (c * P + Q),
        }
    return {xn(i): c * p.x(i)}


def _eps_nonzero(p: _Pt, i: int):
    fam, n = p.t.family, p.n
    if fam == "A1":
        return p.x(i + 1) / p.x(i) if i < n else 1 / p.x(n)
    if i in _paired(p):
        P, Q = p.P(i), _q(p, i)
        low = _lower(p, i)
        num = P + Q if low is None else low * (P + Q)
        return num / (p.x(i) * P)
    if fam == "D1":
        return p.x(n - 2) / p.x(i)
    return p.x(n - 1) ** -p.cd.a(n - 1, n) / p.x(n)


def _gamma_nonzero(p: _Pt, i: int):
    fam, n = p.t.family, p.n
    if fam == "A1":
        den = None
        if i > 1:
            den = p.x(i - 1)
        if i < n:
            den = p.x(i + 1) if den is None else den * p.x(i + 1)
        return p.x(i) ** 2 if den is None else p.x(i) ** 2 / den
    if i in _paired(p):
        den = _gamma_den(p, i)
        Q = _q(p, i)
        return p.P(i) ** 2 / (Q if den is None else den * Q)
    if fam == "D1":
        return p.x(i) ** 2 / p.P(n - 2)
    return p.x(n) ** 2 / p.P(n - 1) ** -p.cd.a(n - 1, n)


# --- e_0 on chart 1 ---

def _e0_closed(p: _Pt, c) -> Dict[str, object]:
    fam, n = p.t.family, p.n
    names = p.point.names
    if fam == "A1":
        return {k: p.d[k] / c for k in names}
    if fam in ("B1", "D1", "A2odd"):
        P1, P2 = p.P(1), p.P(2)
        out = {k: p.d[k] / c for k in names}
        out[xn(1)] = p.x(1) * (c * P1 + P2) / (c * (P1 + P2))
        out[xbn(1)] = p.xb(1) * (P1 + P2) / (c * P1 + P2)
        if fam == "A2odd":
            out[xn(n)] = p.x(n) / c ** 2
        return out
    if fam in ("C1", "A2dag"):
        x0, P1 = p.x(0), p.P(1)
        R = (c * x0 + P1) / (x0 + P1)
        out = {k: p.d[k] * R / c for k in names}
        out[xn(0)] = x0 * R ** 2 / c
        if fam == "C1":
            out[xn(n)] = p.x(n) * R ** 2 / c ** 2
        return out
    if fam == "D2":
        x0, P1 = p.x(0), p.P(1)
        R = (c ** 2 * x0 ** 2 + P1) / (x0 ** 2 + P1)
        out = {k: p.d[k] * R / c ** 2 for k in names}
        out[xn(0)] = x0 * R / c
        return out
    raise UndefinedOnChart(f"no e_0 for {fam}")


def _eps0(p: _Pt):
    fam = p.t.family
    if fam == "A1":
        return p.x(1)
    if fam in ("B1", "D1", "A2odd"):
        return (p.P(1) + p.P(2)) / p.x(1)
    x0, P1 = p.x(0), p.P(1)
    if fam in ("C1", "A2dag"):
        return (x0 + P1) ** 2 / x0 ** 3
    return (x0 ** 2 + P1) / x0 ** 3


def _gamma0(p: _Pt):
    fam = p.t.family
    if fam == "A1":
        return 1 / (p.x(1) * p.x(p.n))
    if fam in ("B1", "D1", "A2odd"):
        return 1 / p.P(2)
    x0, P1 = p.x(0), p.P(1)
    if fam in ("C1", "A2dag"):
        return x0 ** 2 / P1 ** 2
    return x0 ** 2 / P1


# --- chart 2 (A2dag) ---

def _chart2_e(point: ChartPoint, i: int, c) -> ChartPoint:
    n = point.type.rank
    if i == n:
        raise UndefinedOnChart(f"e_{n} is not defined on chart 2")
    if i == 0:
        return point.replace({"y0": c * point["y0"]})
    word = [letter for letter, _ in chart_word(point.type, 2)]
    new = schubert_e(word, cartan_data(point.type), i, c, point.values)
    return ChartPoint(point.type, 2, tuple(new))


def _chart2_stats(point: ChartPoint, i: int):
    n = point.type.rank
    if i == n:
        raise UndefinedOnChart(f"eps_{n} / gamma_{n} are not defined on chart 2")
    d = point.as_dict()
    if i == 0:
        y0, y1, yb1 = d["y0"], d["y1"], d["yb1"]
        return y1 ** 2 / y0, y0 ** 2 / (y1 * yb1) ** 2
    word = [letter for letter, _ in chart_word(point.type, 2)]
    return schubert_stats(word, cartan_data(point.type), i, point.values)


# --- public operations ---

def geom_e(i: int, c, point: ChartPoint, method: str = "closed") -> ChartPoint:
    """e_i^c on the chart of point. method="sigma" computes e_0 by conjugating with sigma-bar."""
    _check_index(point, i)
    if point.chart == 2:
        return _chart2_e(point, i, c)
    p = _Pt(point)
    if i == 0:
        if method == "sigma":
            return e0_by_sigma(c, point)
        return point.replace(_e0_closed(p, c))
    return point.replace(_e_nonzero(p, i, c))


def epsilon(i: int, point: ChartPoint):
    _check_index(point, i)
    if point.chart == 2:
        return _chart2_stats(point, i)[0]
    p = _Pt(point)
    return _eps0(p) if i == 0 else _eps_nonzero(p, i)


def gamma(i: int, point: ChartPoint):
    _check_index(point, i)
    if point.chart == 2:
        return _chart2_stats(point, i)[1]
    p = _Pt(point)
    return _gamma0(p) if i == 0 else _gamma_nonzero(p, i)


def defined_indices(point: ChartPoint) -> List[int]:
    n = point.type.rank
    return list(range(n)) if point.chart == 2 else list(range(n + 1))


def geom_stats(point: ChartPoint) -> Dict[str, Dict[int, object]]:
    idx = defined_indices(point)
    return {
        "epsilon": {i: epsilon(i, point) for i in idx},
        "gamma": {i: gamma(i, point) for i in idx},
    }


# --- sigma-bar ---

def sigma_bar(point: ChartPoint) -> Tuple[object, ChartPoint]:
    """(a(x), y) with v(y) = a(x) sigma(v(x)); A2dag lands on chart 2 with v_2(y) = a(x) v_1(x)."""
    if point.chart != 1:
        raise UndefinedOnChart("sigma-bar starts from chart 1")
    p = _Pt(point)
    fam, n = p.t.family, p.n
    if fam == "A1":
        a = 1 / p.x(n)
        new = {xn(1): a}
        for i in range(2, n + 1):
            new[xn(i)] = p.x(i - 1) / p.x(n)
        return a, point.replace(new)
    if fam in ("B1", "D1", "A2odd"):
        a = 1 / p.P(1)
        new = {k: a * v for k, v in p.d.items()}
        if fam == "A2odd":
            new[xn(n)] = p.x(n) / p.P(1) ** 2
        return a, point.replace(new)
    if fam in ("C1", "D2"):
        top = p.x(n) ** -p.cd.a(n, n - 1)
        a = (p.P(n - 1) + top) / (p.x(n - 1) * top)
        new = {}
        for i in range(1, n):
            xi = _xi(p, n - i)
            new[xn(i)] = a * xi
            new[xbn(i)] = a * p.P(n - i) / xi
        if fam == "C1":
            new[xn(0)] = a ** 2 * p.x(n)
            new[xn(n)] = a ** 2 * p.x(0)
        else:
            new[xn(0)] = a * p.x(n)
            new[xn(n)] = a * p.x(0)
        return a, point.replace(new)
    if fam == "A2dag":
        a = (p.P(n - 1) + p.x(n) ** 2) / (p.x(n - 1) * p.x(n) ** 2)
        new = {"y0": a ** 2 * p.x(0), f"y{n}": a * p.x(n)}
        for i in range(1, n):
            xi = _xi(p, i)
            new[f"y{i}"] = a * xi
            new[f"yb{i}"] = a * p.P(i) / xi
        names = [name for _, name in chart_word(p.t, 2)]
        return a, ChartPoint(p.t, 2, tuple(new[k] for k in names))
    raise UndefinedOnChart(f"{fam} has no diagram automorphism")


def sigma_bar_inverse(point: ChartPoint) -> ChartPoint:
    t = point.type
    fam, n = t.family, t.rank
    if fam == "A2dag":
        if point.chart != 2:
            raise UndefinedOnChart("the inverse of sigma-bar for A2dag starts from chart 2")
        d = point.as_dict()
        y = lambda k: d[f"y{k}"]  # noqa: E731
        yb = lambda k: d[f"yb{k}"]  # noqa: E731
        Y = lambda k: y(k) * yb(k)  # noqa: E731
        a = y(0) * y(1) / (y(0) + Y(1))
        new = {xn(0): (y(0) + Y(1)) / (a * y(1)), xn(n): y(n) / a}
        for i in range(1, n - 1):
            new[xn(i)] = (Y(i) + Y(i + 1)) / (a * y(i + 1))
            new[xbn(i)] = Y(i) * y(i + 1) / (a * (Y(i) + Y(i + 1)))
        top = Y(n - 1) + y(n) ** 2
        new[xn(n - 1)] = top / (a * y(n) ** 2)
        new[xbn(n - 1)] = Y(n - 1) * y(n) ** 2 / (a * top)
        names = [name for _, name in chart_word(t, 1)]
        return ChartPoint(t, 1, tuple(new[k] for k in names))
    if fam == "A1":
        d = point.as_dict()
        y1 = d[xn(1)]
        new = {xn(n): 1 / y1}
        for i in range(2, n + 1):
            new[xn(i - 1)] = d[xn(i)] / y1
        return point.replace(new)
    return sigma_bar(point)[1]


def e0_by_sigma(c, point: ChartPoint) -> ChartPoint:
    """e_0 = sigma-bar^{-1} o e_{sigma(0)} o sigma-bar (chart 2's e_0 for A2dag)."""
    t = point.type
    cd = cartan_data(t)
    _, y = sigma_bar(point)
    if t.family == "A2dag":
        moved = _chart2_e(y, 0, c)
    else:
        target = cd.sigma[0]
        moved = y.replace(_e_nonzero(_Pt(y), target, c))
    return sigma_bar_inverse(moved)


# --- generic Schubert action on chart 1 ---

def schubert_chart_e(i: int, c, point: ChartPoint) -> ChartPoint:
    """e_i^c from the generic Schubert-cell formula on word_w1 (chart 1) or word_w2 (chart 2)."""
    word = chart_word(point.type, point.chart)
    d = point.as_dict()
    coords = [d[name] for _, name in word]
    new = schubert_e([w for w, _ in word], cartan_data(point.type), i, c, coords)
    return point.replace({name: val for (_, name), val in zip(word, new)})


def schubert_chart_stats(i: int, point: ChartPoint):
    word = chart_word(point.type, point.chart)
    d = point.as_dict()
    coords = [d[name] for _, name in word]
    return schubert_stats([w for w, _ in word], cartan_data(point.type), i, coords)


def sigma_vector(point: ChartPoint, v: FundVec) -> Optional[FundVec]:
    """sigma applied to the labels of v; A2dag returns v itself (v_2(y) = a v_1(x))."""
    if point.type.family == "A2dag":
        return dict(v)
    out = {}
    for label, coef in v.items():
        out[sigma_label(point.type, label)] = coef
    return out
