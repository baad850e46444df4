"""
Crystal contract (wt, epsilon_i, phi_i, e_i, f_i, validate), the tensor product rule,
the one-element crystals T_lambda, axiom checking and DOT export of crystal graphs.
"""
import random
from abc import ABC, abstractmethod
from collections import deque
from typing import Any, Hashable, Iterable, List, Optional, Sequence, Tuple

from app.services.cartan import CartanData
from app.services.report import Report

NEG_INF = float("-inf")

EDGE_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gray")


class Crystal(ABC):
    """Element-level crystal operations. e/f return None for the null element."""

    cartan: CartanData

    @property
    def index_set(self) -> range:
        return self.cartan.index_set

    @abstractmethod
    def wt(self, b) -> Tuple[int, ...]:
        ...

    @abstractmethod
    def epsilon(self, i: int, b):
        ...

    @abstractmethod
    def phi(self, i: int, b):
        ...

    @abstractmethod
    def e(self, i: int, b):
        ...

    @abstractmethod
    def f(self, i: int, b):
        ...

    @abstractmethod
    def validate(self, b) -> bool:
        ...

    def apply(self, op: str, i: int, b):
        if op == "e":
            return self.e(i, b)
        if op == "f":
            return self.f(i, b)
        raise ValueError(f"op must be 'e' or 'f', got {op!r}")

    def sample(self, rng: random.Random):
        raise NotImplementedError(f"{type(self).__name__} has no sampler")

    def label(self, b) -> str:
        return str(b)


class TLambda(Crystal):
    """The one-element crystal {t_lambda}; the element is the weight tuple itself."""

    def __init__(self, cartan: CartanData, lam: Sequence[int]):
        if len(lam) != cartan.rank + 1:
            raise ValueError(f"lambda needs {cartan.rank + 1} Lambda-coefficients, got {len(lam)}")
        self.cartan = cartan
        self.lam = tuple(int(v) for v in lam)

    @property
    def element(self) -> Tuple[int, ...]:
        return self.lam

    def wt(self, b):
        return self.lam

    def epsilon(self, i, b):
        return NEG_INF

    def phi(self, i, b):
        return NEG_INF

    def e(self, i, b):
        return None

    def f(self, i, b):
        return None

    def validate(self, b) -> bool:
        return tuple(b) == self.lam

    def sample(self, rng):
        return self.lam

    def label(self, b) -> str:
        return "t" + str(list(self.lam))


def tensor_apply(op: str, i: int, pair, ops1: Crystal, ops2: Crystal):
    """Routing rule of the tensor product.
    f_i acts on b1 iff phi_i(b1) > eps_i(b2); e_i acts on b1 iff phi_i(b1) >= eps_i(b2)."""
    if op not in ("e", "f"):
        raise ValueError(f"op must be 'e' or 'f', got {op!r}")
    b1, b2 = pair
    if tensor_route(op, i, pair, ops1, ops2) == 0:
        nb = ops1.apply(op, i, b1)
        return None if nb is None else (nb, b2)
    nb = ops2.apply(op, i, b2)
    return None if nb is None else (b1, nb)


def tensor_route(op: str, i: int, pair, ops1: Crystal, ops2: Crystal) -> int:
    """Which factor (0 or 1) the operator acts on."""
    b1, b2 = pair
    p1, e2 = ops1.phi(i, b1), ops2.epsilon(i, b2)
    return 0 if (p1 > e2 if op == "f" else p1 >= e2) else 1


def tensor_stats(i: int, pair, ops1: Crystal, ops2: Crystal):
    """(wt_i, eps_i, phi_i) of b1 (x) b2; -inf absorbs."""
    b1, b2 = pair
    w1, w2 = ops1.wt(b1), ops2.wt(b2)
    wt_i = w1[i] + w2[i]
    eps = max(ops1.epsilon(i, b1), ops2.epsilon(i, b2) - w1[i])
    phi = max(ops2.phi(i, b2), ops1.phi(i, b1) + w2[i])
    return wt_i, eps, phi


class TensorCrystal(Crystal):
    def __init__(self, left: Crystal, right: Crystal):
        if left.cartan.type != right.cartan.type:
            raise ValueError(f"cannot tensor {left.cartan.type} with {right.cartan.type}")
        self.cartan = left.cartan
        self.left = left
        self.right = right

    def wt(self, b):
        return tuple(a + c for a, c in zip(self.left.wt(b[0]), self.right.wt(b[1])))

    def epsilon(self, i, b):
        return tensor_stats(i, b, self.left, self.right)[1]

    def phi(self, i, b):
        return tensor_stats(i, b, self.left, self.right)[2]

    def e(self, i, b):
        return tensor_apply("e", i, b, self.left, self.right)

    def f(self, i, b):
        return tensor_apply("f", i, b, self.left, self.right)

    def validate(self, b) -> bool:
        return len(b) == 2 and self.left.validate(b[0]) and self.right.validate(b[1])

    def sample(self, rng):
        return (self.left.sample(rng), self.right.sample(rng))

    def label(self, b) -> str:
        return f"{self.left.label(b[0])} ⊗ {self.right.label(b[1])}"


def check_axioms(ops: Crystal, sample: Iterable[Hashable], report: Optional[Report] = None) -> Report:
    """Check, per element and index: phi - eps = <alpha_i^vee, wt>; e_i and f_i are mutually inverse;
    e_i shifts wt by column i of the Cartan matrix and moves eps/phi by -1/+1."""
    cd = ops.cartan
    if report is None:
        report = Report(check="axioms", type=cd.type.family, rank=cd.rank)
    for b in sample:
        report.sample_size += 1
        if not ops.validate(b):
            report.fail(b, None, "invalid", "valid", law="validate")
            continue
        w = ops.wt(b)
        for i in ops.index_set:
            eps, phi = ops.epsilon(i, b), ops.phi(i, b)
            if eps == NEG_INF or phi == NEG_INF:
                if eps != phi:
                    report.fail(b, i, phi, eps, law="phi=eps=-inf")
            elif phi - eps != w[i]:
                report.fail(b, i, phi - eps, w[i], law="phi-eps=wt")

            up = ops.e(i, b)
            if up is not None:
                if ops.f(i, up) != b:
                    report.fail(b, i, ops.f(i, up), b, law="f(e b)=b")
                want = tuple(x + y for x, y in zip(w, cd.column(i)))
                if ops.wt(up) != want:
                    report.fail(b, i, ops.wt(up), want, law="wt(e b)=wt(b)+alpha_i")
                if eps != NEG_INF and ops.epsilon(i, up) != eps - 1:
                    report.fail(b, i, ops.epsilon(i, up), eps - 1, law="eps(e b)=eps(b)-1")
                if phi != NEG_INF and ops.phi(i, up) != phi + 1:
                    report.fail(b, i, ops.phi(i, up), phi + 1, law="phi(e b)=phi(b)+1")
            down = ops.f(i, b)
            if down is not None and ops.e(i, down) != b:
                report.fail(b, i, ops.e(i, down), b, law="e(f b)=b")
    return report


def explore(ops: Crystal, seeds: Sequence[Hashable], radius: int):
    """BFS along f_i edges. Returns (nodes in discovery order, edges (src, i, dst))."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    order: List[Any] = []
    depth = {}
    queue = deque()
    for s in seeds:
        if s not in depth:
            depth[s] = 0
            order.append(s)
            queue.append(s)
    edges = []
    while queue:
        b = queue.popleft()
        if depth[b] >= radius:
            continue
        for i in ops.index_set:
            nb = ops.f(i, b)
            if nb is None:
                continue
            edges.append((b, i, nb))
            if nb not in depth:
                depth[nb] = depth[b] + 1
                order.append(nb)
                queue.append(nb)
    return order, edges


def graph_dot(ops: Crystal, seeds: Sequence[Hashable], radius: int, label_mode: str = "index") -> str:
    """Crystal graph patch as a DOT digraph. label_mode: "index" writes i on each arrow, "color" colours by i."""
    nodes, edges = explore(ops, seeds, radius)
    ids = {b: f"n{k}" for k, b in enumerate(nodes)}
    lines = [f'digraph "{ops.cartan.type.family}_{ops.cartan.rank}" {{', "\tnode [shape=box];"]
    for b in nodes:
        text = ops.label(b).replace('"', '\\"')
        lines.append(f'\t"{ids[b]}" [label="{text}"];')
    for src, i, dst in edges:
        if label_mode == "color":
            attr = f'color="{EDGE_COLORS[i % len(EDGE_COLORS)]}"'
        else:
            attr = f'label="{i}"'
        lines.append(f'\t"{ids[src]}" -> "{ids[dst]}" [{attr}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
