"""
Ultra-discretization: positive expressions -> max-plus piecewise-linear expressions.

    product -> +, quotient -> -, sum -> max, power k -> scale by k, positive constant -> 0
"""
from fractions import Fraction
from typing import Dict, Tuple, Union

from app.errors import CrystalError, MissingVariable
from app.services.posrat import Const, PosRatExpr, Pow, Prod, Quot, Sum, Var


class TropExpr:
    __slots__ = ()

    def __str__(self) -> str:
        return to_infix(self)

    def __repr__(self) -> str:
        return f"TropExpr({to_infix(self)!r})"


class TVar(TropExpr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name


class TZero(TropExpr):
    __slots__ = ()


class TAdd(TropExpr):
    __slots__ = ("terms",)

    def __init__(self, terms: Tuple[TropExpr, ...]):
        self.terms = terms


class TNeg(TropExpr):
    __slots__ = ("child",)

    def __init__(self, child: TropExpr):
        self.child = child


class TScale(TropExpr):
    __slots__ = ("k", "child")

    def __init__(self, k: int, child: TropExpr):
        self.k = k
        self.child = child


class TMax(TropExpr):
    __slots__ = ("terms",)

    def __init__(self, terms: Tuple[TropExpr, ...]):
        if not terms:
            raise CrystalError("max of an empty list")
        self.terms = terms


ZERO = TZero()


def t_add(*parts: TropExpr) -> TropExpr:
    flat = []
    for p in parts:
        if isinstance(p, TAdd):
            flat.extend(p.terms)
        elif not isinstance(p, TZero):
            flat.append(p)
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return TAdd(tuple(flat))


def t_neg(p: TropExpr) -> TropExpr:
    if isinstance(p, TZero):
        return ZERO
    if isinstance(p, TNeg):
        return p.child
    return TNeg(p)


def tropicalize(e: PosRatExpr) -> TropExpr:
    memo: Dict[int, TropExpr] = {}

    def go(node: PosRatExpr) -> TropExpr:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = TVar(node.name)
        elif isinstance(node, Const):
            out = ZERO
        elif isinstance(node, Sum):
            out = TMax(tuple(go(t) for t in node.terms))
        elif isinstance(node, Prod):
            out = t_add(*(go(f) for f in node.factors))
        elif isinstance(node, Quot):
            out = t_add(go(node.num), t_neg(go(node.den)))
        elif isinstance(node, Pow):
            out = TScale(node.exp, go(node.base))
        else:
            raise TypeError(f"unknown node {node!r}")
        memo[key] = out
        return out

    return go(e)


def _as_int(name: str, v: Union[int, Fraction]) -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    raise CrystalError(f"teval is integer-only; {name}={v} (scale half-integers first)")


def teval(t: TropExpr, point: Dict[str, int]) -> int:
    memo: Dict[int, int] = {}

    def go(node: TropExpr) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, TVar):
            if node.name not in point:
                raise MissingVariable(node.name)
            out = _as_int(node.name, point[node.name])
        elif isinstance(node, TZero):
            out = 0
        elif isinstance(node, TAdd):
            out = sum(go(t) for t in node.terms)
        elif isinstance(node, TNeg):
            out = -go(node.child)
        elif isinstance(node, TScale):
            out = node.k * go(node.child)
        elif isinstance(node, TMax):
            out = max(go(t) for t in node.terms)
        else:
            raise TypeError(f"unknown node {node!r}")
        memo[key] = out
        return out

    return go(t)


def to_infix(t: TropExpr) -> str:
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, TZero):
        return "0"
    if isinstance(t, TMax):
        return "max(" + ", ".join(to_infix(x) for x in t.terms) + ")"
    if isinstance(t, TScale):
        if isinstance(t.child, TVar):
            return f"{t.k}{t.child.name}"
        inner = to_infix(t.child)
        return f"{t.k}*({inner})" if isinstance(t.child, TAdd) else f"{t.k}*{inner}"
    if isinstance(t, TNeg):
        return "-" + _operand(t.child)
    if isinstance(t, TAdd):
        out = ""
        for k, term in enumerate(t.terms):
            if isinstance(term, TNeg):
                out += ("-" if k == 0 else " - ") + _operand(term.child)
            else:
                out += ("" if k == 0 else " + ") + to_infix(term)
        return out
    raise TypeError(f"unknown node {t!r}")


def _operand(t: TropExpr) -> str:
    s = to_infix(t)
    return f"({s})" if isinstance(t, TAdd) else s
