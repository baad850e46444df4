"""
Piecewise-linear crystals obtained by ultra-discretizing the chart-1 geometric crystals,
written out directly as integer formulas, and the isomorphisms mu onto B_infinity of the dual type.

Conventions: x is a dict name -> int over chart_names(t); P_k = x_k + xb_k.
e_i is the UD of e_i^c at c = 1, f_i the UD at c = -1, wt_i the UD of gamma_i, eps_i the UD of eps_i.
"""
import random
from fractions import Fraction
from typing import Dict, Tuple

from app.errors import IndexOutOfRange, InvalidElement, UndefinedOnChart
from app.services.b_infinity import BElt
from app.services.cartan import TypeLabel, cartan_data, has_chart, langlands_dual
from app.services.charts import chart_names, symbolic_point, x as xn, xb as xbn
from app.services.crystal_core import Crystal
from app.services.geom_crystal import epsilon, gamma, geom_e
from app.services.posrat import var
from app.services.tropic import TropExpr, teval, tropicalize

IntPoint = Dict[str, int]


def pos(v: int) -> int:
    return v if v > 0 else 0


class _U:
    def __init__(self, t: TypeLabel, x: IntPoint):
        if not has_chart(t):
            raise UndefinedOnChart(f"{t.family} has no chart")
        self.t = t
        self.fam = t.family
        self.n = t.rank
        self.cd = cartan_data(t)
        self.d = x

    def has(self, name: str) -> bool:
        return name in self.d

    def x(self, k: int) -> int:
        return self.d[xn(k)]

    def xb(self, k: int) -> int:
        return self.d[xbn(k)]

    def P(self, k: int) -> int:
        return self.x(k) + self.xb(k)

    def paired(self) -> range:
        if self.fam == "A1":
            return range(0)
        if self.fam == "D1":
            return range(1, self.n - 1)
        return range(1, self.n)

    def Q(self, i: int) -> int:
        if i + 1 in self.paired():
            return self.P(i + 1)
        n = self.n
        if self.fam == "D1":
            return self.x(n - 1) + self.x(n)
        return -self.cd.a(n, n - 1) * self.x(n)

    def low(self, i: int) -> int:
        if not self.has(xn(i - 1)):
            return 0
        return -self.cd.a(i - 1, i) * self.x(i - 1)

    def low_pair(self, i: int) -> int:
        m = -self.cd.a(i - 1, i)
        if self.has(xbn(i - 1)):
            return m * self.P(i - 1)
        return self.low(i)


def _check(u: _U, i: int) -> None:
    if not 0 <= i <= u.n:
        raise IndexOutOfRange(f"index {i} outside 0..{u.n}")


def _shift_all(d: IntPoint, by: int, overrides: Dict[str, int]) -> IntPoint:
    out = {k: v + by for k, v in d.items()}
    for k, delta in overrides.items():
        out[k] = d[k] + delta
    return out


def ud_e(t: TypeLabel, i: int, x: IntPoint) -> IntPoint:
    return _move(_U(t, x), i, raising=True)


def ud_f(t: TypeLabel, i: int, x: IntPoint) -> IntPoint:
    return _move(_U(t, x), i, raising=False)


def _move(u: _U, i: int, raising: bool) -> IntPoint:
    _check(u, i)
    d, n, fam = u.d, u.n, u.fam
    s = 1 if raising else -1
    out = dict(d)
    if i != 0:
        if i in u.paired():
            P, Q = u.P(i), u.Q(i)
            left = P >= Q if raising else P > Q
            key = xn(i) if left else xbn(i)
        else:
            key = xn(i)
        out[key] += s
        return out
    if fam == "A1":
        return _shift_all(d, -s, {})
    if fam in ("B1", "D1", "A2odd"):
        P1, P2 = u.P(1), u.P(2)
        left = P1 >= P2 if raising else P1 > P2
        keep = xn(1) if left else xbn(1)
        extra = {xn(n): -2 * s} if fam == "A2odd" else {}
        extra[keep] = 0
        return _shift_all(d, -s, extra)
    x0, P1 = u.x(0), u.P(1)
    if fam in ("C1", "A2dag"):
        if (x0 >= P1) if raising else (x0 > P1):
            out[xn(0)] += s
            return out
        extra = {xn(n): -2 * s} if fam == "C1" else {}
        return _shift_all(d, -s, extra)
    # D2
    if raising:
        if 2 * x0 >= P1:
            out[xn(0)] += 1
            return out
        if 2 * x0 + 1 == P1:
            return _shift_all(d, -1, {xn(0): 0})
        return _shift_all(d, -2, {xn(0): -1})
    if 2 * x0 > P1 + 1:
        out[xn(0)] -= 1
        return out
    if 2 * x0 - 1 == P1:
        return _shift_all(d, 1, {xn(0): 0})
    return _shift_all(d, 2, {xn(0): 1})


def ud_eps(t: TypeLabel, i: int, x: IntPoint) -> int:
    u = _U(t, x)
    _check(u, i)
    n, fam = u.n, u.fam
    if fam == "A1":
        if i == 0:
            return u.x(1)
        return (u.x(i + 1) if i < n else 0) - u.x(i)
    if i == 0:
        if fam in ("B1", "D1", "A2odd"):
            return max(u.P(1), u.P(2)) - u.x(1)
        if fam in ("C1", "A2dag"):
            return -u.x(0) + 2 * pos(u.P(1) - u.x(0))
        return -u.x(0) + pos(u.P(1) - 2 * u.x(0))
    if i in u.paired():
        return u.low(i) - u.x(i) + pos(u.Q(i) - u.P(i))
    if fam == "D1":
        return u.x(n - 2) - u.x(i)
    return -u.cd.a(n - 1, n) * u.x(n - 1) - u.x(n)


def ud_wt(t: TypeLabel, i: int, x: IntPoint) -> int:
    u = _U(t, x)
    _check(u, i)
    n, fam = u.n, u.fam
    if fam == "A1":
        if i == 0:
            return -u.x(1) - u.x(n)
        left = u.x(i - 1) if i > 1 else 0
        right = u.x(i + 1) if i < n else 0
        return 2 * u.x(i) - left - right
    if i == 0:
        if fam in ("B1", "D1", "A2odd"):
            return -u.P(2)
        if fam in ("C1", "A2dag"):
            return 2 * u.x(0) - 2 * u.P(1)
        return 2 * u.x(0) - u.P(1)
    if i in u.paired():
        return 2 * u.P(i) - u.low_pair(i) - u.Q(i)
    if fam == "D1":
        return 2 * u.x(i) - u.P(n - 2)
    return 2 * u.x(n) + u.cd.a(n - 1, n) * u.P(n - 1)


# --- mu : UD(V(g)) -> B_infinity(g^L) ---

def _assemble(target: str, n: int, b: Dict[int, Fraction], bb: Dict[int, Fraction]) -> BElt:
    if target == "A1":
        return tuple(Fraction(b[k]) for k in range(1, n + 2))
    top = n - 1 if target == "D1" else n
    return tuple(Fraction(b[k]) for k in range(1, n + 1)) + tuple(Fraction(bb[k]) for k in range(top, 0, -1))


def mu(t: TypeLabel, x: IntPoint) -> BElt:
    u = _U(t, x)
    n, fam = u.n, u.fam
    half = Fraction(1, 2)
    b: Dict[int, Fraction] = {}
    bb: Dict[int, Fraction] = {}
    if fam == "A1":
        prev = 0
        for i in range(1, n + 1):
            b[i] = Fraction(u.x(i) - prev)
            prev = u.x(i)
        b[n + 1] = Fraction(-u.x(n))
        return _assemble("A1", n, b, bb)
    last_pair = n - 2 if fam == "D1" else n - 1
    if fam == "D2":
        # xb_n stands for x_n here
        xbar = lambda k: u.x(n) if k == n else u.xb(k)  # noqa: E731
        b[1] = Fraction(u.xb(1))
        for i in range(2, n + 1):
            b[i] = Fraction(xbar(i) - xbar(i - 1))
        for i in range(2, n + 1):
            bb[i] = Fraction(u.x(i - 1) - u.x(i))
        bb[1] = Fraction(2 * u.x(0) - u.x(1))
        return _assemble("C1", n, b, bb)
    b[1] = Fraction(u.xb(1))
    for i in range(2, last_pair + 1):
        b[i] = Fraction(u.xb(i) - u.xb(i - 1))
    if fam == "D1":
        b[n - 1] = Fraction(u.x(n - 1) - u.xb(n - 2))
        b[n] = Fraction(u.x(n) - u.x(n - 1))
        bb[n - 1] = Fraction(u.x(n - 2) - u.x(n))
        for i in range(2, n - 1):
            bb[i] = Fraction(u.x(i - 1) - u.x(i))
        bb[1] = Fraction(-u.x(1))
        return _assemble("D1", n, b, bb)
    if fam in ("B1", "A2dag"):
        b[n] = Fraction(u.x(n) - u.xb(n - 1))
        for i in range(2, n + 1):
            bb[i] = Fraction(u.x(i - 1) - u.x(i))
        bb[1] = Fraction(-u.x(1)) if fam == "B1" else Fraction(u.x(0) - u.x(1))
        return _assemble(langlands_dual(t).family, n, b, bb)
    # C1 and A2odd: x_n is halved
    b[n] = u.x(n) * half - u.xb(n - 1)
    bb[n] = u.x(n - 1) - u.x(n) * half
    for i in range(2, n):
        bb[i] = Fraction(u.x(i - 1) - u.x(i))
    bb[1] = Fraction(u.x(0) - u.x(1)) if fam == "C1" else Fraction(-u.x(1))
    return _assemble(langlands_dual(t).family, n, b, bb)


def _split(target: str, n: int, belt: BElt) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
    if target == "A1":
        return {k: belt[k - 1] for k in range(1, n + 2)}, {}
    top = n - 1 if target == "D1" else n
    b = {k: belt[k - 1] for k in range(1, n + 1)}
    bb = {k: belt[n + (top - k)] for k in range(1, top + 1)}
    return b, bb


def mu_inverse(t: TypeLabel, belt: BElt) -> Dict[str, Fraction]:
    n, fam = t.rank, t.family
    target = langlands_dual(t).family
    b, bb = _split(target, n, tuple(Fraction(v) for v in belt))
    out: Dict[str, Fraction] = {}
    if fam == "A1":
        acc = Fraction(0)
        for i in range(1, n + 1):
            acc += b[i]
            out[xn(i)] = acc
        return out
    last_pair = n - 2 if fam == "D1" else n - 1
    acc = Fraction(0)
    for i in range(1, last_pair + 1):
        acc += b[i]
        out[xbn(i)] = acc
    if fam == "D2":
        out[xn(n)] = acc + b[n]
        for i in range(n, 1, -1):
            out[xn(i - 1)] = out[xn(i)] + bb[i]
        out[xn(0)] = (bb[1] + out[xn(1)]) / 2
        return out
    if fam == "D1":
        out[xn(1)] = -bb[1]
        for i in range(2, n - 1):
            out[xn(i)] = out[xn(i - 1)] - bb[i]
        out[xn(n - 1)] = b[n - 1] + out[xbn(n - 2)]
        out[xn(n)] = b[n] + out[xn(n - 1)]
        return out
    if fam in ("C1", "A2odd"):
        out[xn(n)] = 2 * (b[n] + out[xbn(n - 1)])
        if fam == "C1":
            out[xn(n - 1)] = bb[n] + out[xn(n)] / 2
            for i in range(n - 1, 0, -1):
                out[xn(i - 1)] = out[xn(i)] + bb[i]
        else:
            out[xn(1)] = -bb[1]
            for i in range(2, n):
                out[xn(i)] = out[xn(i - 1)] - bb[i]
        return out
    out[xn(n)] = b[n] + out[xbn(n - 1)]
    if fam == "B1":
        out[xn(1)] = -bb[1]
        for i in range(2, n):
            out[xn(i)] = out[xn(i - 1)] - bb[i]
    else:
        for i in range(n, 0, -1):
            out[xn(i - 1)] = out[xn(i)] + bb[i]
    return out


def random_int_point(t: TypeLabel, rng: random.Random, box: int) -> IntPoint:
    return {name: rng.randint(-box, box) for name in chart_names(t)}


class UDCrystal(Crystal):
    """The piecewise-linear chart crystal; its Cartan data is that of the Langlands dual."""

    def __init__(self, t: TypeLabel):
        if not has_chart(t):
            raise UndefinedOnChart(f"{t.family} has no chart")
        self.type = t
        self.names = chart_names(t)
        self.cartan = cartan_data(langlands_dual(t))

    def _d(self, b) -> IntPoint:
        return dict(zip(self.names, b))

    def _t(self, d: IntPoint) -> Tuple[int, ...]:
        return tuple(d[k] for k in self.names)

    def wt(self, b):
        d = self._d(b)
        return tuple(ud_wt(self.type, i, d) for i in self.index_set)

    def epsilon(self, i, b):
        return ud_eps(self.type, i, self._d(b))

    def phi(self, i, b):
        d = self._d(b)
        return ud_eps(self.type, i, d) + ud_wt(self.type, i, d)

    def e(self, i, b):
        return self._t(ud_e(self.type, i, self._d(b)))

    def f(self, i, b):
        return self._t(ud_f(self.type, i, self._d(b)))

    def validate(self, b) -> bool:
        return len(b) == len(self.names) and all(isinstance(v, int) for v in b)

    def sample(self, rng: random.Random, box: int = 8):
        return tuple(rng.randint(-box, box) for _ in self.names)

    def label(self, b) -> str:
        return "(" + ", ".join(f"{k}={v}" for k, v in zip(self.names, b)) + ")"


class TropicalChart:
    """Tropicalization of the symbolic chart-1 action: e_i coordinate maps at symbolic c, eps_i and gamma_i."""

    def __init__(self, t: TypeLabel):
        self.type = t
        point = symbolic_point(t)
        c = var("c")
        self.names = point.names
        self.e_maps: Dict[int, Dict[str, TropExpr]] = {}
        self.eps: Dict[int, TropExpr] = {}
        self.wt: Dict[int, TropExpr] = {}
        for i in cartan_data(t).index_set:
            moved = geom_e(i, c, point)
            self.e_maps[i] = {k: tropicalize(v) for k, v in moved.as_dict().items()}
            self.eps[i] = tropicalize(epsilon(i, point))
            self.wt[i] = tropicalize(gamma(i, point))

    def apply(self, i: int, x: IntPoint, c: int) -> IntPoint:
        point = dict(x)
        point["c"] = c
        return {k: teval(m, point) for k, m in self.e_maps[i].items()}

    def epsilon(self, i: int, x: IntPoint) -> int:
        return teval(self.eps[i], x)

    def weight(self, i: int, x: IntPoint) -> int:
        return teval(self.wt[i], x)


def as_int_point(t: TypeLabel, d: Dict[str, Fraction]) -> IntPoint:
    out = {}
    for k in chart_names(t):
        v = Fraction(d[k])
        if v.denominator != 1:
            raise InvalidElement(f"mu^-1 produced non-integer {k}={v}")
        out[k] = v.numerator
    return out
