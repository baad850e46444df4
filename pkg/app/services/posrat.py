"""
Subtraction-free rational expressions over named variables with exact rational constants.

Expressions are immutable DAGs. Arithmetic builds new nodes and shares subtrees; nothing
is ever simplified beyond flattening sums/products and folding constants.
Equality of the denoted rational functions is decided by expanding both sides in a sympy
fraction field (gcd-reduced at every node) and cross-multiplying.
"""
import operator
import random
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, FracField

from app.config import EXPANSION_TERM_CAP, SAMPLE_RETRY_CAP
from app.errors import DivisionByZero, ExpansionTooLarge, MissingVariable, NegativeNotAllowed

Number = Union[int, Fraction]

PREFILTER_POINTS = 3
PREFILTER_RANGE = 10 ** 6


class PosRatExpr:
    __slots__ = ()

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __pow__(self, k: int):
        return power(self, k)

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"PosRatExpr({to_text(self)!r})"


class Var(PosRatExpr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name


class Const(PosRatExpr):
    __slots__ = ("value",)

    def __init__(self, value: Number):
        value = Fraction(value)
        if value <= 0:
            raise NegativeNotAllowed(f"constant {value} is not positive")
        self.value = value


class Sum(PosRatExpr):
    __slots__ = ("terms",)

    def __init__(self, terms: Tuple[PosRatExpr, ...]):
        self.terms = terms


class Prod(PosRatExpr):
    __slots__ = ("factors",)

    def __init__(self, factors: Tuple[PosRatExpr, ...]):
        self.factors = factors


class Quot(PosRatExpr):
    __slots__ = ("num", "den")

    def __init__(self, num: PosRatExpr, den: PosRatExpr):
        self.num = num
        self.den = den


class Pow(PosRatExpr):
    __slots__ = ("base", "exp")

    def __init__(self, base: PosRatExpr, exp: int):
        if exp < 1:
            raise NegativeNotAllowed(f"power exponent must be a positive integer, got {exp}")
        self.base = base
        self.exp = exp


ONE = Const(1)


def var(name: str) -> Var:
    return Var(name)


def const(value: Number) -> Const:
    return Const(value)


def as_expr(x) -> PosRatExpr:
    if isinstance(x, PosRatExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(x)
    raise TypeError(f"cannot use {type(x).__name__} in a positive expression")


def _is_one(e: PosRatExpr) -> bool:
    return isinstance(e, Const) and e.value == 1


def add(a, b) -> PosRatExpr:
    a, b = as_expr(a), as_expr(b)
    terms: List[PosRatExpr] = []
    for e in (a, b):
        terms.extend(e.terms if isinstance(e, Sum) else (e,))
    consts = [t for t in terms if isinstance(t, Const)]
    if len(consts) > 1:
        terms = [t for t in terms if not isinstance(t, Const)]
        terms.append(Const(sum(t.value for t in consts)))
    return Sum(tuple(terms))


def mul(a, b) -> PosRatExpr:
    a, b = as_expr(a), as_expr(b)
    factors: List[PosRatExpr] = []
    scalar = Fraction(1)
    for e in (a, b):
        for f in (e.factors if isinstance(e, Prod) else (e,)):
            if isinstance(f, Const):
                scalar *= f.value
            else:
                factors.append(f)
    if scalar != 1 or not factors:
        factors.insert(0, Const(scalar))
    if len(factors) == 1:
        return factors[0]
    return Prod(tuple(factors))


def div(a, b) -> PosRatExpr:
    a, b = as_expr(a), as_expr(b)
    if _is_one(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    return Quot(a, b)


def power(a, k: int) -> PosRatExpr:
    """Integer power; negative exponents become a quotient."""
    a = as_expr(a)
    if k == 0:
        return ONE
    if k < 0:
        return div(ONE, power(a, -k))
    if k == 1:
        return a
    if isinstance(a, Const):
        return Const(a.value ** k)
    return Pow(a, k)


def total(items: Iterable) -> PosRatExpr:
    out = None
    for it in items:
        out = as_expr(it) if out is None else add(out, it)
    if out is None:
        raise NegativeNotAllowed("empty sum is zero, which is not positive")
    return out


def product(items: Iterable) -> PosRatExpr:
    out: PosRatExpr = ONE
    for it in items:
        out = mul(out, it)
    return out


def parse(text: str) -> PosRatExpr:
    from app.services.expr_parser import parse_expression

    return parse_expression(text)


# --- traversal ---

def children(e: PosRatExpr) -> Tuple[PosRatExpr, ...]:
    if isinstance(e, Sum):
        return e.terms
    if isinstance(e, Prod):
        return e.factors
    if isinstance(e, Quot):
        return (e.num, e.den)
    if isinstance(e, Pow):
        return (e.base,)
    return ()


def variables(e: PosRatExpr) -> set:
    seen, out, stack = set(), set(), [e]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Var):
            out.add(node.name)
        stack.extend(children(node))
    return out


def evaluate(e: PosRatExpr, point: Dict[str, Number]) -> Fraction:
    """Exact value of e at point. No rounding anywhere."""
    memo: Dict[int, Fraction] = {}

    def go(node: PosRatExpr) -> Fraction:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            if node.name not in point:
                raise MissingVariable(node.name)
            val = Fraction(point[node.name])
        elif isinstance(node, Const):
            val = node.value
        elif isinstance(node, Sum):
            val = sum((go(t) for t in node.terms), Fraction(0))
        elif isinstance(node, Prod):
            val = Fraction(1)
            for f in node.factors:
                val *= go(f)
        elif isinstance(node, Quot):
            den = go(node.den)
            if den == 0:
                raise DivisionByZero(f"denominator {to_text(node.den)} vanishes")
            val = go(node.num) / den
        elif isinstance(node, Pow):
            val = go(node.base) ** node.exp
        else:
            raise TypeError(f"unknown node {node!r}")
        memo[key] = val
        return val

    return go(e)


def compose(e: PosRatExpr, sub: Dict[str, PosRatExpr]) -> PosRatExpr:
    """Substitute variables structurally; unmapped variables pass through and shared subtrees stay shared."""
    sub = {k: as_expr(v) for k, v in sub.items()}
    memo: Dict[int, PosRatExpr] = {}

    def go(node: PosRatExpr) -> PosRatExpr:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = sub.get(node.name, node)
        elif isinstance(node, Const):
            out = node
        else:
            kids = children(node)
            new = tuple(go(k) for k in kids)
            if all(a is b for a, b in zip(kids, new)):
                out = node
            elif isinstance(node, Sum):
                out = Sum(new)
            elif isinstance(node, Prod):
                out = Prod(new)
            elif isinstance(node, Quot):
                out = Quot(new[0], new[1])
            else:
                out = Pow(new[0], node.exp)
        memo[key] = out
        return out

    return go(e)


# --- printing ---

def _fmt_const(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"


def to_text(e: PosRatExpr) -> str:
    """Infix text that parse() reads back."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Sum):
        return " + ".join(to_text(t) for t in e.terms)
    if isinstance(e, Prod):
        return "*".join(_wrap(f, (Sum, Quot)) for f in e.factors)
    if isinstance(e, Quot):
        return f"{_wrap(e.num, (Sum, Quot))}/{_wrap(e.den, (Sum, Prod, Quot, Pow))}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, (Sum, Prod, Quot, Pow))}^{e.exp}"
    raise TypeError(f"unknown node {e!r}")


def _wrap(e: PosRatExpr, kinds) -> str:
    s = to_text(e)
    return f"({s})" if isinstance(e, kinds) else s


# --- expansion into reduced fractions ---

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]


class SparseFraction:
    """num/den as sparse polynomials over a fixed variable order, coprime, denominator leading coefficient positive.
    Cancelling a common factor can leave negative coefficients: (x^3 + 1)/(x + 1) is x^2 - x + 1."""

    __slots__ = ("names", "num", "den")

    def __init__(self, names: Tuple[str, ...], num: Poly, den: Poly):
        if not den:
            raise DivisionByZero("denominator is identically zero")
        self.names = names
        self.num, self.den = num, den

    def __repr__(self) -> str:
        return f"SparseFraction({len(self.num)} terms / {len(self.den)} terms over {self.names})"


def _as_poly(p, k: int) -> Poly:
    return {tuple(m[:k]): Fraction(int(c)) for m, c in p.items()}


class Expander:
    """Expands expressions into one sympy fraction field over fixed names.

    Each node is interned by structure, so a subexpression rebuilt as a new object
    (or a sum/product listed in another order) is expanded once per Expander. Every
    intermediate fraction is gcd-reduced by the field. ExpansionTooLarge fires when a
    reduced numerator or denominator has more than `cap` terms.
    """

    def __init__(self, names: Iterable[str], cap: Optional[int] = None):
        self.names = tuple(names)
        self.cap = EXPANSION_TERM_CAP if cap is None else cap
        # a field over no names still needs one generator; it never appears in a monomial
        self.field = FracField(",".join(self.names) or "t", ZZ)
        self._gens = dict(zip(self.names, self.field.gens))
        # id -> (node, key); holding the node keeps its id from being reused
        self._keys: Dict[int, Tuple[PosRatExpr, int]] = {}
        self._table: Dict[tuple, int] = {}
        self._values: Dict[int, FracElement] = {}

    def key(self, node: PosRatExpr) -> int:
        hit = self._keys.get(id(node))
        if hit is not None:
            return hit[1]
        if isinstance(node, Var):
            sig: tuple = ("var", node.name)
        elif isinstance(node, Const):
            sig = ("const", node.value)
        elif isinstance(node, Pow):
            sig = ("pow", self.key(node.base), node.exp)
        elif isinstance(node, Quot):
            sig = ("quot", self.key(node.num), self.key(node.den))
        elif isinstance(node, (Sum, Prod)):
            sig = (type(node).__name__, tuple(sorted(self.key(k) for k in children(node))))
        else:
            raise TypeError(f"unknown node {node!r}")
        k = self._table.setdefault(sig, len(self._table))
        self._keys[id(node)] = (node, k)
        return k

    def value(self, node: PosRatExpr) -> FracElement:
        k = self.key(node)
        hit = self._values.get(k)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            if node.name not in self._gens:
                raise MissingVariable(node.name)
            out = self._gens[node.name]
        elif isinstance(node, Const):
            out = self.field(node.value.numerator) / self.field(node.value.denominator)
        elif isinstance(node, Sum):
            out = reduce(operator.add, (self.value(t) for t in node.terms))
        elif isinstance(node, Prod):
            out = reduce(operator.mul, (self.value(f) for f in node.factors))
        elif isinstance(node, Quot):
            den = self.value(node.den)
            if not den:
                raise DivisionByZero(f"denominator {to_text(node.den)} is identically zero")
            out = self.value(node.num) / den
        else:
            out = self.value(node.base) ** node.exp
        self._check(out)
        self._values[k] = out
        return out

    def _check(self, f: FracElement) -> None:
        size = max(len(f.numer), len(f.denom))
        if size > self.cap:
            raise ExpansionTooLarge(f"expansion has {len(f.numer)}/{len(f.denom)} terms, cap is {self.cap}")

    def fraction(self, node: PosRatExpr) -> SparseFraction:
        f = self.value(node)
        k = len(self.names)
        return SparseFraction(self.names, _as_poly(f.numer, k), _as_poly(f.denom, k))

    def same(self, e1: PosRatExpr, e2: PosRatExpr) -> bool:
        """Cross-multiplied comparison num1*den2 == num2*den1 of the reduced fractions."""
        f1, f2 = self.value(e1), self.value(e2)
        return f1.numer * f2.denom == f2.numer * f1.denom


def expand(e: PosRatExpr, names: Optional[Tuple[str, ...]] = None, cap: Optional[int] = None) -> SparseFraction:
    """Expand e into a reduced num/den pair. Raises ExpansionTooLarge past the term cap."""
    names = tuple(sorted(variables(e))) if names is None else names
    return Expander(names, cap).fraction(e)


def random_point(names: Iterable[str], rng: random.Random, bound: int = PREFILTER_RANGE) -> Dict[str, int]:
    point = {}
    for name in sorted(names):
        v = 0
        while v == 0:
            v = rng.randint(-bound, bound)
        point[name] = v
    return point


def _prefilter_differs(e1: PosRatExpr, e2: PosRatExpr, names, rng: random.Random) -> bool:
    for _ in range(PREFILTER_POINTS):
        for _attempt in range(SAMPLE_RETRY_CAP):
            point = random_point(names, rng)
            try:
                v1, v2 = evaluate(e1, point), evaluate(e2, point)
            except DivisionByZero:
                continue
            if v1 != v2:
                return True
            break
    return False


def equal(e1, e2, cap: Optional[int] = None, seed: int = 0, expander: Optional[Expander] = None) -> bool:
    """True iff e1 and e2 denote the same rational function.
    Random exact evaluation can only answer False; True always comes from the expanded cross-multiplication.
    Pass one Expander to share expansions across many comparisons over the same names."""
    e1, e2 = as_expr(e1), as_expr(e2)
    if e1 is e2:
        return True
    names = tuple(sorted(variables(e1) | variables(e2)))
    if _prefilter_differs(e1, e2, names, random.Random(seed)):
        return False
    if expander is None:
        expander = Expander(names, cap)
    return expander.same(e1, e2)
