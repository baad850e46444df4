"""
Verification campaigns. Every check returns a Report; pass <=> no failures.

Symbolic mode runs the check once on a symbolic point and compares with posrat.equal;
when expansion exceeds EXPANSION_TERM_CAP it falls back to sampled mode and says so in the notes.
Sampled mode uses exact Fractions at seeded random points, rejecting points that hit a zero denominator.
"""
import logging
import random
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from app.config import (
    DEFAULT_BOX,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_UD_SAMPLES,
    EXPANSION_TERM_CAP,
    SAMPLE_RETRY_CAP,
)
from app.errors import CrystalError, ExpansionTooLarge, UndefinedOnChart
from app.services import geom_crystal as gc
from app.services import ud_tables as ud
from app.services.b_infinity import B_INFINITY_FAMILIES, BInfinity
from app.services.cartan import (
    FAMILIES,
    MIN_RANK,
    TypeLabel,
    cartan_data,
    has_chart,
    langlands_dual,
    type_label,
    verma_relation,
)
from app.services.charts import ChartPoint, random_chart_point, symbolic_point
from app.services.crystal_core import TensorCrystal, check_axioms
from app.services.posrat import Expander, PosRatExpr, equal, power, product, var, variables
from app.services.report import Report

logger = logging.getLogger(__name__)

# (law, index, lhs, rhs)
Comparison = Tuple[str, object, object, object]
Body = Callable[[ChartPoint, Dict[str, object]], List[Comparison]]

SAMPLE_BOUND = 9


# --- engine ---

def _nonzero(rng: random.Random, bound: int = SAMPLE_BOUND) -> Fraction:
    v = 0
    while v == 0:
        v = rng.randint(-bound, bound)
    return Fraction(v)


def _vec_comparisons(law: str, index, lhs: Dict[str, object], rhs: Dict[str, object]) -> List[Comparison]:
    out = []
    for label in sorted(set(lhs) | set(rhs)):
        if label not in lhs or label not in rhs:
            out.append((f"{law}[{label}]", index, lhs.get(label, 0), rhs.get(label, 0)))
        else:
            out.append((f"{law}[{label}]", index, lhs[label], rhs[label]))
    return out


def _point_comparisons(law: str, index, lhs: ChartPoint, rhs: ChartPoint) -> List[Comparison]:
    if lhs.chart != rhs.chart:
        return [(law, index, f"chart {lhs.chart}", f"chart {rhs.chart}")]
    return _vec_comparisons(law, index, lhs.as_dict(), rhs.as_dict())


def _symbolic_same(lhs, rhs, seed: int, expander: Expander) -> bool:
    if isinstance(lhs, str) or isinstance(rhs, str):
        return lhs == rhs
    if not isinstance(lhs, PosRatExpr) and not isinstance(rhs, PosRatExpr):
        return lhs == rhs
    if lhs == 0 or rhs == 0:
        return False
    return equal(lhs, rhs, seed=seed, expander=expander)


def _expander(comparisons: List[Comparison]) -> Expander:
    names = set()
    for cmp in comparisons:
        for side in cmp[2:]:
            if isinstance(side, PosRatExpr):
                names |= variables(side)
    return Expander(sorted(names), EXPANSION_TERM_CAP)


def _run_symbolic(report: Report, body: Body, t: TypeLabel, chart: int, c_names: Tuple[str, ...], seed: int) -> bool:
    """True when the symbolic run finished; False when it has to fall back."""
    point = symbolic_point(t, chart)
    cvals = {name: var(name) for name in c_names}
    try:
        comparisons = body(point, cvals)
        expander = _expander(comparisons)
        bad = [cmp for cmp in comparisons if not _symbolic_same(cmp[2], cmp[3], seed, expander)]
    except ExpansionTooLarge as exc:
        report.notes.append(f"chart {chart}: symbolic expansion over cap ({exc}); sampled instead")
        return False
    report.sample_size += 1
    for law, index, lhs, rhs in bad:
        report.fail(point.as_dict(), index, lhs, rhs, law=law, chart=chart)
    return True


def _run_sampled(report: Report, body: Body, t: TypeLabel, chart: int, c_names: Tuple[str, ...],
                 trials: int, rng: random.Random) -> None:
    for _ in range(trials):
        for _attempt in range(SAMPLE_RETRY_CAP):
            point = random_chart_point(t, rng, chart, bound=SAMPLE_BOUND)
            cvals = {name: _nonzero(rng) for name in c_names}
            try:
                comparisons = body(point, cvals)
            except ZeroDivisionError:
                continue
            break
        else:
            report.notes.append(f"chart {chart}: no admissible point after {SAMPLE_RETRY_CAP} draws")
            continue
        report.sample_size += 1
        for law, index, lhs, rhs in comparisons:
            if lhs != rhs:
                report.fail(point.as_dict(), index, lhs, rhs, law=law, chart=chart, c=cvals)


def _run(report: Report, body: Body, t: TypeLabel, mode: str, trials: int, seed: int,
         charts: Iterable[int] = (1,), c_names: Tuple[str, ...] = ("c",)) -> Report:
    if mode not in ("symbolic", "sampled"):
        raise CrystalError(f"mode must be symbolic or sampled, got {mode!r}")
    rng = random.Random(seed)
    for chart in charts:
        if mode == "symbolic" and _run_symbolic(report, body, t, chart, c_names, seed):
            continue
        if mode == "symbolic":
            report.mode = "sampled"
        _run_sampled(report, body, t, chart, c_names, trials, rng)
    return report


def _charts(t: TypeLabel) -> Tuple[int, ...]:
    return (1, 2) if cartan_data(t).word_w2 is not None else (1,)


def _indices(t: TypeLabel, chart: int) -> List[int]:
    n = t.rank
    return list(range(n)) if chart == 2 else list(range(n + 1))


def _require_chart(t: TypeLabel) -> None:
    if not has_chart(t):
        raise UndefinedOnChart(f"{t.family} has no geometric chart; check its dual {langlands_dual(t).family}")


# --- Verma relations ---

def verma_pairs(t: TypeLabel, chart: int = 1) -> List[Tuple[int, int, list, list]]:
    """(i, j, lhs word, rhs word) for every unordered pair of defined indices."""
    cd = cartan_data(t)
    idx = _indices(t, chart)
    out = []
    for a in idx:
        for b in idx:
            if a >= b:
                continue
            for i, j in ((a, b), (b, a)):
                rel = verma_relation(cd.a(i, j), cd.a(j, i))
                if rel is not None:
                    out.append((i, j, rel[0], rel[1]))
                    break
            else:
                raise CrystalError(f"no Verma relation for a_{a}{b}={cd.a(a, b)}, a_{b}{a}={cd.a(b, a)}")
    return out


def _c_power(cvals: Dict[str, object], p: Tuple[int, int]):
    c1, c2 = cvals["c1"], cvals["c2"]
    if isinstance(c1, PosRatExpr):
        return product(power(base, k) for base, k in ((c1, p[0]), (c2, p[1])) if k)
    return c1 ** p[0] * c2 ** p[1]


def apply_word(word, i: int, j: int, cvals: Dict[str, object], point: ChartPoint) -> ChartPoint:
    for letter, p in reversed(word):
        point = gc.geom_e(i if letter == "i" else j, _c_power(cvals, p), point)
    return point


def verify_verma(t: TypeLabel, mode: str = "symbolic", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> Report:
    _require_chart(t)
    report = Report(check="verma", type=t.family, rank=t.rank, mode=mode, seed=seed)

    for chart in _charts(t):
        pairs = verma_pairs(t, chart)

        def body(point, cvals, pairs=pairs):
            out = []
            for i, j, lhs, rhs in pairs:
                left = apply_word(lhs, i, j, cvals, point)
                right = apply_word(rhs, i, j, cvals, point)
                out.extend(_point_comparisons(f"verma({i},{j})", (i, j), left, right))
            return out

        _run(report, body, t, mode, trials, seed, charts=(chart,), c_names=("c1", "c2"))
    report.notes.append(f"{sum(len(verma_pairs(t, ch)) for ch in _charts(t))} index pairs")
    logger.info(report.summary())
    return report


# --- geometric crystal axioms ---

def _log2_exact(r) -> Optional[int]:
    r = Fraction(r)
    if r <= 0:
        return None
    k = 0
    while r.denominator == 1 and r.numerator % 2 == 0 and r != 1:
        r /= 2
        k += 1
    while r.numerator == 1 and r.denominator % 2 == 0:
        r *= 2
        k -= 1
    return k if r == 1 else None


def verify_geom_axioms(t: TypeLabel, mode: str = "symbolic", trials: int = DEFAULT_TRIALS,
                       seed: int = DEFAULT_SEED) -> Report:
    _require_chart(t)
    cd = cartan_data(t)
    report = Report(check="geom_axioms", type=t.family, rank=t.rank, mode=mode, seed=seed)

    def body(point, cvals):
        c = cvals["c"]
        idx = _indices(t, point.chart)
        out = []
        for i in idx:
            moved = gc.geom_e(i, c, point)
            out.append(("eps(e x)=eps/c", i, gc.epsilon(i, moved), gc.epsilon(i, point) / c))
            for j in idx:
                out.append((f"gamma_{j}(e x)", i, gc.gamma(j, moved), c ** cd.a(i, j) * gc.gamma(j, point)))
        if point.chart == 1 and cd.sigma is not None and t.family != "A2dag":
            _, y = gc.sigma_bar(point)
            for i in idx:
                s = cd.sigma[i]
                if i != 0 and s != 0:
                    out.append(("eps_sigma(i)(sigma x)", i, gc.epsilon(s, y), gc.epsilon(i, point)))
        return out

    _run(report, body, t, mode, trials, seed, charts=_charts(t))
    _exponent_matrix(report, t, seed)
    logger.info(report.summary())
    return report


def _exponent_matrix(report: Report, t: TypeLabel, seed: int) -> None:
    """Read a_ij off gamma_j(e_i^2 x) / gamma_j(x) at a random point."""
    cd = cartan_data(t)
    rng = random.Random(seed + 1)
    two = Fraction(2)
    for _ in range(SAMPLE_RETRY_CAP):
        point = random_chart_point(t, rng, 1, bound=SAMPLE_BOUND)
        try:
            ratios = {
                (i, j): gc.gamma(j, gc.geom_e(i, two, point)) / gc.gamma(j, point)
                for i in cd.index_set for j in cd.index_set
            }
        except ZeroDivisionError:
            continue
        break
    else:
        report.notes.append("exponent matrix: no admissible point")
        return
    for (i, j), r in ratios.items():
        k = _log2_exact(r)
        if k != cd.a(i, j):
            report.fail(point.as_dict(), (i, j), k, cd.a(i, j), law="gamma exponent")
    report.notes.append("gamma exponent matrix read at c=2")


# --- sigma-bar ---

def verify_sigma(t: TypeLabel, mode: str = "symbolic", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> Report:
    _require_chart(t)
    fam = t.family
    report = Report(check="sigma", type=fam, rank=t.rank, mode=mode, seed=seed)

    def body(point, cvals):
        if point.chart == 2:
            back = gc.sigma_bar(gc.sigma_bar_inverse(point))[1]
            return _point_comparisons("sigma(sigma^-1 y)=y", None, back, point)
        a, y = gc.sigma_bar(point)
        out = []
        if fam in ("A1", "A2dag"):
            out.extend(_point_comparisons("sigma^-1(sigma x)=x", None, gc.sigma_bar_inverse(y), point))
        else:
            out.extend(_point_comparisons("sigma^2=id", None, gc.sigma_bar(y)[1], point))
        twisted = {k: a * v for k, v in gc.sigma_vector(point, gc.v_closed(point)).items()}
        out.extend(_vec_comparisons("v(y)=a sigma(v(x))", None, gc.v_closed(y), twisted))
        c = cvals["c"]
        out.extend(_point_comparisons("e0 closed=e0 by sigma", 0, gc.geom_e(0, c, point),
                                      gc.geom_e(0, c, point, method="sigma")))
        return out

    _run(report, body, t, mode, trials, seed, charts=_charts(t))
    logger.info(report.summary())
    return report


# --- chart closed forms and the Schubert action ---

def verify_chart(t: TypeLabel, mode: str = "symbolic", trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> Report:
    _require_chart(t)
    report = Report(check="chart", type=t.family, rank=t.rank, mode=mode, seed=seed)

    def body(point, cvals):
        return _vec_comparisons("v_matrix=v_closed", None, gc.v_matrix(point), gc.v_closed(point))

    _run(report, body, t, mode, trials, seed, charts=_charts(t))
    logger.info(report.summary())
    return report


def verify_schubert(t: TypeLabel, mode: str = "symbolic", trials: int = DEFAULT_TRIALS,
                    seed: int = DEFAULT_SEED) -> Report:
    _require_chart(t)
    report = Report(check="schubert", type=t.family, rank=t.rank, mode=mode, seed=seed)

    def body(point, cvals):
        c = cvals["c"]
        out = []
        idx = [i for i in _indices(t, point.chart) if point.chart == 2 or i != 0]
        for i in idx:
            generic = gc.schubert_chart_e(i, c, point)
            eps, gam = gc.schubert_chart_stats(i, point)
            if point.chart == 2 and i != 0:
                # chart-2 e_i is the generic action itself; carry the chart-1 closed form across sigma-bar
                x = gc.sigma_bar_inverse(point)
                carried = gc.sigma_bar(gc.geom_e(i, c, x))[1]
                out.extend(_point_comparisons("e generic=chart-1 explicit", i, generic, carried))
                out.append(("eps generic=chart-1 explicit", i, eps, gc.epsilon(i, x)))
                continue
            out.extend(_point_comparisons("e generic=explicit", i, generic, gc.geom_e(i, c, point)))
            out.append(("eps generic=explicit", i, eps, gc.epsilon(i, point)))
            out.append(("gamma generic=explicit", i, gam, gc.gamma(i, point)))
        return out

    _run(report, body, t, mode, trials, seed, charts=_charts(t))
    logger.info(report.summary())
    return report


# --- ultra-discretization ---

def verify_ud(t: TypeLabel, box: int = DEFAULT_BOX, samples: int = DEFAULT_UD_SAMPLES, seed: int = DEFAULT_SEED) -> Report:
    """Tropicalized chart action against the transcribed piecewise-linear tables, then the crystal axioms."""
    _require_chart(t)
    report = Report(check="ud", type=t.family, rank=t.rank, mode="sampled", seed=seed)
    chart = ud.TropicalChart(t)
    rng = random.Random(seed)
    points = [ud.random_int_point(t, rng, box) for _ in range(samples)]
    for x in points:
        report.sample_size += 1
        for i in cartan_data(t).index_set:
            up = chart.apply(i, x, 1)
            if up != ud.ud_e(t, i, x):
                report.fail(x, i, up, ud.ud_e(t, i, x), law="trop e = table e")
            down = chart.apply(i, x, -1)
            if down != ud.ud_f(t, i, x):
                report.fail(x, i, down, ud.ud_f(t, i, x), law="trop f = table f")
            if ud.ud_e(t, i, down) != x:
                report.fail(x, i, ud.ud_e(t, i, down), x, law="e(f x)=x")
            eps = chart.epsilon(i, x)
            if eps != ud.ud_eps(t, i, x):
                report.fail(x, i, eps, ud.ud_eps(t, i, x), law="trop eps = table eps")
            w = chart.weight(i, x)
            if w != ud.ud_wt(t, i, x):
                report.fail(x, i, w, ud.ud_wt(t, i, x), law="trop gamma = table wt")
    crystal = ud.UDCrystal(t)
    axioms = check_axioms(crystal, [tuple(x[k] for k in crystal.names) for x in points[:200]])
    report.failures.extend(axioms.failures)
    logger.info(report.summary())
    return report


def verify_mu(t: TypeLabel, box: int = DEFAULT_BOX, samples: int = DEFAULT_UD_SAMPLES, seed: int = DEFAULT_SEED) -> Report:
    _require_chart(t)
    binf = BInfinity(langlands_dual(t))
    report = Report(check="mu", type=t.family, rank=t.rank, mode="sampled", seed=seed)
    report.notes.append(f"target B_inf({binf.type})")
    rng = random.Random(seed)
    for _ in range(samples):
        x = ud.random_int_point(t, rng, box)
        report.sample_size += 1
        b = ud.mu(t, x)
        if not binf.validate(b):
            report.fail(x, None, b, "valid element", law="mu lands in B_inf")
            continue
        if ud.as_int_point(t, ud.mu_inverse(t, b)) != x:
            report.fail(x, None, ud.mu_inverse(t, b), x, law="mu^-1(mu x)=x")
        target = binf.sample(rng, box)
        back = ud.mu(t, ud.as_int_point(t, ud.mu_inverse(t, target)))
        if back != target:
            report.fail(target, None, back, target, law="mu(mu^-1 b)=b")
        w = binf.wt(b)
        for i in binf.index_set:
            if ud.mu(t, ud.ud_e(t, i, x)) != binf.e(i, b):
                report.fail(x, i, ud.mu(t, ud.ud_e(t, i, x)), binf.e(i, b), law="mu e = e mu")
            if ud.mu(t, ud.ud_f(t, i, x)) != binf.f(i, b):
                report.fail(x, i, ud.mu(t, ud.ud_f(t, i, x)), binf.f(i, b), law="mu f = f mu")
            if binf.epsilon(i, b) != ud.ud_eps(t, i, x):
                report.fail(x, i, binf.epsilon(i, b), ud.ud_eps(t, i, x), law="eps preserved")
            if w[i] != ud.ud_wt(t, i, x):
                report.fail(x, i, w[i], ud.ud_wt(t, i, x), law="wt preserved")
    logger.info(report.summary())
    return report


# --- limit crystals ---

def verify_binf(t: TypeLabel, samples: int = 1000, box: int = 5, seed: int = DEFAULT_SEED) -> Report:
    if t.family not in B_INFINITY_FAMILIES:
        raise UndefinedOnChart(f"no limit crystal for {t.family}")
    binf = BInfinity(t)
    rng = random.Random(seed)
    report = Report(check="binf", type=t.family, rank=t.rank, mode="sampled", seed=seed)
    check_axioms(binf, [binf.sample(rng, box) for _ in range(samples)], report)
    pair = TensorCrystal(binf, binf)
    tensor = check_axioms(pair, [pair.sample(rng) for _ in range(max(samples // 5, 1))])
    report.sample_size += tensor.sample_size
    report.failures.extend(dict(f, law="tensor " + str(f.get("law"))) for f in tensor.failures)
    logger.info(report.summary())
    return report


# --- registry and campaign ---

CHECKS = ("verma", "geom_axioms", "sigma", "chart", "schubert", "ud", "mu", "binf")


def applies(check: str, t: TypeLabel) -> bool:
    if check == "binf":
        return t.family in B_INFINITY_FAMILIES
    return has_chart(t)


def run_check(check: str, family: str, rank: int, mode: str = "symbolic", trials: Optional[int] = None,
              box: Optional[int] = None, seed: Optional[int] = None) -> Report:
    t = type_label(family, rank)
    seed = DEFAULT_SEED if seed is None else seed
    if check not in CHECKS:
        raise CrystalError(f"unknown check {check!r}; expected one of {', '.join(CHECKS)}")
    if check in ("ud", "mu"):
        return {"ud": verify_ud, "mu": verify_mu}[check](
            t, box=DEFAULT_BOX if box is None else box, samples=DEFAULT_UD_SAMPLES if trials is None else trials, seed=seed
        )
    if check == "binf":
        return verify_binf(t, samples=1000 if trials is None else trials, box=5 if box is None else box, seed=seed)
    fn = {
        "verma": verify_verma,
        "geom_axioms": verify_geom_axioms,
        "sigma": verify_sigma,
        "chart": verify_chart,
        "schubert": verify_schubert,
    }[check]
    return fn(t, mode=mode, trials=DEFAULT_TRIALS if trials is None else trials, seed=seed)


def run_campaign(ranks: str = "both", checks: Iterable[str] = CHECKS, seed: int = DEFAULT_SEED,
                 mode: str = "symbolic", families: Iterable[str] = FAMILIES) -> List[Report]:
    """Every applicable (check, family, rank); ranks="min" uses the minimal rank, "both" adds rank+1."""
    if ranks not in ("min", "both"):
        raise CrystalError(f"ranks must be 'min' or 'both', got {ranks!r}")
    reports = []
    for check in checks:
        for family in families:
            low = MIN_RANK[family]
            for rank in ([low] if ranks == "min" else [low, low + 1]):
                t = TypeLabel(family, rank)
                if not applies(check, t):
                    continue
                reports.append(run_check(check, family, rank, mode=mode, seed=seed))
    failed = [r for r in reports if not r.passed]
    logger.info("campaign: %d reports, %d failed", len(reports), len(failed))
    return reports
