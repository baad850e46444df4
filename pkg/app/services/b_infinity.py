"""
Limit crystals B_infinity(g) for the seven affine families.

Coordinates follow the usual order:
    A1:                       (b_1, ..., b_{n+1})
    B1, C1, A2odd, D2, A2even: (b_1, ..., b_n, bb_n, ..., bb_1)
    D1:                       (b_1, ..., b_n, bb_{n-1}, ..., bb_1)
Values are Fractions with denominator 1 or 2 (halves only at b_n, bb_n in B1 and D2).
Every operator is total: e_i and f_i never return None.
"""
import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from app.errors import IndexOutOfRange, InvalidElement
from app.services.cartan import CartanData, TypeLabel, cartan_data, type_label
from app.services.crystal_core import Crystal

BElt = Tuple[Fraction, ...]

HALF = Fraction(1, 2)
B_INFINITY_FAMILIES = ("A1", "B1", "C1", "D1", "A2odd", "D2", "A2even")


def pos(x) -> Fraction:
    return x if x > 0 else Fraction(0)


def _int(x: Fraction) -> int:
    if x.denominator != 1:
        raise InvalidElement(f"statistic {x} is not an integer")
    return x.numerator


class _Coords:
    """Mutable view with b(i)/bb(i) addressing."""

    def __init__(self, family: str, n: int, coords: Sequence):
        self.family = family
        self.n = n
        self.v: List[Fraction] = [Fraction(c) for c in coords]

    def _bar_pos(self, i: int) -> int:
        if self.family == "D1":
            return 2 * self.n - 1 - i
        return 2 * self.n - i

    def b(self, i: int) -> Fraction:
        return self.v[i - 1]

    def bb(self, i: int) -> Fraction:
        return self.v[self._bar_pos(i)]

    def add_b(self, i: int, d) -> None:
        self.v[i - 1] += d

    def add_bb(self, i: int, d) -> None:
        self.v[self._bar_pos(i)] += d

    def freeze(self) -> BElt:
        return tuple(self.v)


class BInfinity(Crystal):
    def __init__(self, t: TypeLabel):
        if t.family not in B_INFINITY_FAMILIES:
            raise InvalidElement(f"no limit crystal for {t.family}; use its Langlands dual label")
        self.cartan: CartanData = cartan_data(t)
        self.type = self.cartan.type
        self.family = t.family
        self.n = t.rank

    @property
    def length(self) -> int:
        if self.family == "A1":
            return self.n + 1
        if self.family == "D1":
            return 2 * self.n - 1
        return 2 * self.n

    def zero(self) -> BElt:
        return tuple(Fraction(0) for _ in range(self.length))

    def make(self, coords: Sequence) -> BElt:
        b = tuple(Fraction(c) for c in coords)
        if not self.validate(b):
            raise InvalidElement(f"{list(map(str, b))} is not an element of B_inf({self.type})")
        return b

    # --- index kinds ---

    def _kind(self, i: int) -> str:
        n, fam = self.n, self.family
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 0..{n}")
        if fam == "A1":
            return "a1_zero" if i == 0 else "a1"
        if i == 0:
            if fam in ("B1", "D1", "A2odd"):
                return "zero_pair"
            if fam == "C1":
                return "zero_c"
            return "zero_d2"
        if fam == "D1":
            if i == n - 1:
                return "d1_spin_minus"
            if i == n:
                return "d1_spin_plus"
            return "generic"
        if i == n:
            return "half_n" if fam in ("B1", "D2") else "one_n"
        return "generic"

    # --- operators ---

    def e(self, i: int, b: BElt) -> BElt:
        return self._move(i, b, raising=True)

    def f(self, i: int, b: BElt) -> BElt:
        return self._move(i, b, raising=False)

    def _move(self, i: int, b: BElt, raising: bool) -> BElt:
        kind = self._kind(i)
        x = _Coords(self.family, self.n, b)
        s = 1 if raising else -1
        if kind == "a1_zero":
            x.v[0] -= s
            x.v[self.n] += s
        elif kind == "a1":
            x.v[i - 1] += s
            x.v[i] -= s
        elif kind == "generic":
            bi1, bbi1 = x.b(i + 1), x.bb(i + 1)
            left = bi1 > bbi1 if raising else bi1 >= bbi1
            if left:
                x.add_b(i, s)
                x.add_b(i + 1, -s)
            else:
                x.add_bb(i + 1, s)
                x.add_bb(i, -s)
        elif kind == "zero_pair":
            b2, bb2 = x.b(2), x.bb(2)
            left = b2 > bb2 if raising else b2 >= bb2
            if left:
                x.add_b(2, -s)
                x.add_bb(1, s)
            else:
                x.add_b(1, -s)
                x.add_bb(2, s)
        elif kind == "zero_c":
            d = x.b(1) - x.bb(1)
            if raising:
                if d > 1:
                    x.add_b(1, -2)
                elif d == 1:
                    x.add_b(1, -1)
                    x.add_bb(1, 1)
                else:
                    x.add_bb(1, 2)
            else:
                if d >= 0:
                    x.add_b(1, 2)
                elif d == -1:
                    x.add_b(1, 1)
                    x.add_bb(1, -1)
                else:
                    x.add_bb(1, -2)
        elif kind == "zero_d2":
            b1, bb1 = x.b(1), x.bb(1)
            left = b1 > bb1 if raising else b1 >= bb1
            if left:
                x.add_b(1, -s)
            else:
                x.add_bb(1, s)
        elif kind == "half_n":
            x.add_b(self.n, s * HALF)
            x.add_bb(self.n, -s * HALF)
        elif kind == "one_n":
            x.add_b(self.n, s)
            x.add_bb(self.n, -s)
        elif kind == "d1_spin_minus":
            x.add_b(self.n - 1, s)
            x.add_b(self.n, -s)
        elif kind == "d1_spin_plus":
            x.add_b(self.n, s)
            x.add_bb(self.n - 1, -s)
        return x.freeze()

    # --- statistics ---

    def level(self, b: BElt) -> Fraction:
        """l(b) = sum of all coordinates."""
        return sum(b, Fraction(0))

    def _wt_i(self, i: int, x: _Coords) -> Fraction:
        kind = self._kind(i)
        n = self.n
        if kind == "a1_zero":
            return x.v[n] - x.v[0]
        if kind == "a1":
            return x.v[i - 1] - x.v[i]
        if kind == "generic":
            return x.b(i) - x.bb(i) + x.bb(i + 1) - x.b(i + 1)
        if kind == "zero_pair":
            return x.bb(1) - x.b(1) + x.bb(2) - x.b(2)
        if kind == "zero_c":
            return x.bb(1) - x.b(1)
        if kind == "zero_d2":
            return 2 * (x.bb(1) - x.b(1))
        if kind == "half_n":
            return 2 * (x.b(n) - x.bb(n))
        if kind == "one_n":
            return x.b(n) - x.bb(n)
        if kind == "d1_spin_minus":
            return x.b(n - 1) - x.bb(n - 1) - x.b(n)
        return x.b(n - 1) - x.bb(n - 1) + x.b(n)

    def _eps_i(self, i: int, x: _Coords) -> Fraction:
        kind = self._kind(i)
        n = self.n
        if kind == "a1_zero":
            return x.v[0]
        if kind == "a1":
            return x.v[i]
        if kind == "generic":
            return x.bb(i) + pos(x.b(i + 1) - x.bb(i + 1))
        if kind == "zero_pair":
            return x.b(1) + pos(x.b(2) - x.bb(2))
        if kind == "zero_c":
            return -self.level(x.v) / 2 + pos(x.b(1) - x.bb(1))
        if kind == "zero_d2":
            return -self.level(x.v) + 2 * pos(x.b(1) - x.bb(1))
        if kind == "half_n":
            return 2 * x.bb(n)
        if kind == "one_n":
            return x.bb(n)
        if kind == "d1_spin_minus":
            return x.b(n) + x.bb(n - 1)
        return x.bb(n - 1)

    def _phi_i(self, i: int, x: _Coords) -> Fraction:
        kind = self._kind(i)
        n = self.n
        if kind == "a1_zero":
            return x.v[n]
        if kind == "a1":
            return x.v[i - 1]
        if kind == "generic":
            return x.b(i) + pos(x.bb(i + 1) - x.b(i + 1))
        if kind == "zero_pair":
            return x.bb(1) + pos(x.bb(2) - x.b(2))
        if kind == "zero_c":
            return -self.level(x.v) / 2 + pos(x.bb(1) - x.b(1))
        if kind == "zero_d2":
            return -self.level(x.v) + 2 * pos(x.bb(1) - x.b(1))
        if kind == "half_n":
            return 2 * x.b(n)
        if kind == "one_n":
            return x.b(n)
        if kind == "d1_spin_minus":
            return x.b(n - 1)
        return x.b(n - 1) + x.b(n)

    def wt(self, b: BElt) -> Tuple[int, ...]:
        x = _Coords(self.family, self.n, b)
        return tuple(_int(self._wt_i(i, x)) for i in self.index_set)

    def epsilon(self, i: int, b: BElt) -> int:
        return _int(self._eps_i(i, _Coords(self.family, self.n, b)))

    def phi(self, i: int, b: BElt) -> int:
        return _int(self._phi_i(i, _Coords(self.family, self.n, b)))

    def stats(self, b: BElt) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
        """(wt, eps, phi) over all indices."""
        x = _Coords(self.family, self.n, b)
        idx = self.index_set
        return (
            tuple(_int(self._wt_i(i, x)) for i in idx),
            tuple(_int(self._eps_i(i, x)) for i in idx),
            tuple(_int(self._phi_i(i, x)) for i in idx),
        )

    # --- membership ---

    def validate(self, b) -> bool:
        try:
            v = [Fraction(c) for c in b]
        except (TypeError, ValueError):
            return False
        if len(v) != self.length:
            return False
        n, fam = self.n, self.family
        if fam in ("B1", "D2"):
            half_slots = {n - 1, n}
            for k, c in enumerate(v):
                if k in half_slots:
                    if (2 * c).denominator != 1:
                        return False
                elif c.denominator != 1:
                    return False
            if (v[n - 1] + v[n]).denominator != 1:
                return False
        elif any(c.denominator != 1 for c in v):
            return False
        total = sum(v, Fraction(0))
        if fam in ("A1", "B1", "D1", "A2odd"):
            return total == 0
        if fam == "C1":
            return total % 2 == 0
        return True

    def sample(self, rng: random.Random, box: int = 5) -> BElt:
        n, fam = self.n, self.family
        v = [Fraction(rng.randint(-box, box)) for _ in range(self.length)]
        if fam in ("B1", "D2") and rng.random() < 0.5:
            v[n - 1] += HALF
            v[n] += HALF
        total = sum(v, Fraction(0))
        if fam in ("A1", "B1", "D1", "A2odd"):
            v[0] -= total
        elif fam == "C1" and total % 2 != 0:
            v[0] += 1
        return tuple(v)

    def label(self, b: BElt) -> str:
        return "(" + ", ".join(str(c) for c in b) + ")"


def b_infinity(family: str, rank: int) -> BInfinity:
    return BInfinity(type_label(family, rank))


def belt_to_json(t: TypeLabel, b: BElt) -> Dict:
    return {"type": t.family, "rank": t.rank, "coords": [str(Fraction(c)) for c in b]}


def belt_from_json(data: Dict) -> Tuple[BInfinity, BElt]:
    try:
        crystal = b_infinity(data["type"], int(data["rank"]))
        coords = [Fraction(c) for c in data["coords"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidElement):
            raise
        raise InvalidElement(f"bad element encoding: {exc}")
    return crystal, crystal.make(coords)
