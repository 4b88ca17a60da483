"""Finite multi-metric spaces over exact rationals: axiom validation, metric
combinators, disks, finitely-presented sequence analysis, contraction
detection, and fixed-point counting with orbit iteration.

No floating point appears in any verdict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import CombinatorError, ContractError, InputError, ShapeError

COMBINATOR_SAMPLES = 120


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    raise InputError(f"cannot read {x!r} as an exact rational")


@dataclass(frozen=True)
class MetricTable:
    """A symmetric nonnegative rational distance grid on labelled points."""

    points: tuple[str, ...]
    d: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ShapeError("duplicate point labels")
        if len(self.d) != n or any(len(row) != n for row in self.d):
            raise ShapeError(f"distance grid is not {n}x{n}")

    @classmethod
    def from_rows(cls, points: Sequence[str], rows) -> "MetricTable":
        return cls(tuple(points), tuple(tuple(_frac(x) for x in row) for row in rows))

    @classmethod
    def from_line(cls, values: dict[str, Fraction]) -> "MetricTable":
        """|v(x) - v(y)| on labelled points embedded in the rational line."""
        points = tuple(values)
        rows = [[abs(_frac(values[a]) - _frac(values[b])) for b in points] for a in points]
        return cls.from_rows(points, rows)

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise KeyError(f"unknown point {label!r}") from None

    def dist(self, a: str, b: str) -> Fraction:
        return self.d[self.index(a)][self.index(b)]


@dataclass(frozen=True)
class MetricVerdict:
    valid: bool
    axiom: Optional[str]
    witness: Optional[tuple]


def validate_metric(t: MetricTable) -> MetricVerdict:
    """Exhaustive definiteness, symmetry and triangle checks with a witness."""
    n = len(t.points)
    for i in range(n):
        for j in range(n):
            v = t.d[i][j]
            if v < 0:
                return MetricVerdict(False, "nonnegativity", (t.points[i], t.points[j]))
            if (v == 0) != (i == j):
                return MetricVerdict(False, "definiteness", (t.points[i], t.points[j]))
    for i in range(n):
        for j in range(i + 1, n):
            if t.d[i][j] != t.d[j][i]:
                return MetricVerdict(False, "symmetry", (t.points[i], t.points[j]))
    for i, j, k in itertools.product(range(n), repeat=3):
        if t.d[i][j] + t.d[j][k] < t.d[i][k]:
            return MetricVerdict(
                False, "triangle", (t.points[i], t.points[j], t.points[k])
            )
    return MetricVerdict(True, None, None)


class MultiMetricSpace:
    """A union of labelled metric components; shared labels are shared points."""

    def __init__(self, components: Sequence[MetricTable]):
        self.components = tuple(components)
        if not self.components:
            raise ContractError("a multi-metric space needs at least one component")
        for i, t in enumerate(self.components):
            verdict = validate_metric(t)
            if not verdict.valid:
                raise ContractError(
                    f"component {i + 1} violates {verdict.axiom} at {verdict.witness}"
                )

    @property
    def m(self) -> int:
        return len(self.components)

    def union_points(self) -> tuple[str, ...]:
        out: list[str] = []
        for t in self.components:
            for p in t.points:
                if p not in out:
                    out.append(p)
        return tuple(out)

    def components_containing(self, label: str) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.components) if label in t.points)


@dataclass(frozen=True)
class CombinatorSpec:
    """One of the admissible metric combinators, or a sampled custom one."""

    kind: str  # sum | weighted_sum | bounded_sum | max | custom
    weights: Optional[tuple[Fraction, ...]] = None
    fn: Optional[Callable] = None

    def function(self, m: int) -> Callable:
        if self.kind == "sum":
            return lambda xs: sum(xs, Fraction(0))
        if self.kind == "weighted_sum":
            if self.weights is None or len(self.weights) != m:
                raise InputError("weighted_sum needs one positive weight per metric")
            weights = tuple(_frac(w) for w in self.weights)
            if any(w <= 0 for w in weights):
                raise InputError("weights must be positive")
            return lambda xs: sum((w * x for w, x in zip(weights, xs)), Fraction(0))
        if self.kind == "bounded_sum":
            return lambda xs: sum((x / (1 + x) for x in xs), Fraction(0))
        if self.kind == "max":
            return lambda xs: max(xs)
        if self.kind == "custom":
            if self.fn is None:
                raise InputError("custom combinator needs a callable")
            return self.fn
        raise InputError(f"unknown combinator kind {self.kind!r}")


def _sample_tuples(metrics: Sequence[MetricTable], rng: random.Random, count: int):
    """Nonnegative rational m-tuples: realised distance tuples plus noise."""
    m = len(metrics)
    n = len(metrics[0].points)
    pool = []
    for i in range(n):
        for j in range(n):
            pool.append(tuple(t.d[i][j] for t in metrics))
    while len(pool) < count:
        pool.append(tuple(Fraction(rng.randint(0, 24), rng.randint(1, 8)) for _ in range(m)))
    rng.shuffle(pool)
    return pool[:count]


def combine_metrics(
    metrics: Sequence[MetricTable], spec: CombinatorSpec, seed: int = 0
) -> MetricTable:
    """Apply an m-ary combinator entrywise and validate the result as a metric.

    The combinator's three admissibility hypotheses (monotonicity, zero only
    at zero, superadditivity) are first exercised on sampled tuples; built-in
    kinds are proven cases, custom ones are sampled-not-proven.
    """
    if not metrics:
        raise ContractError("need at least one metric")
    points = metrics[0].points
    for t in metrics:
        if t.points != points:
            raise ShapeError("all metrics must share one point set, in one order")
    m = len(metrics)
    fn = spec.function(m)
    rng = random.Random(seed)
    zero = tuple(Fraction(0) for _ in range(m))
    if fn(zero) != 0:
        raise CombinatorError(f"F(0,...,0) = {fn(zero)} != 0")
    samples = _sample_tuples(metrics, rng, COMBINATOR_SAMPLES)
    for xs in samples:
        if any(xs) and fn(xs) == 0:
            raise CombinatorError(f"zero-only-at-zero fails at {xs}")
        shrunk = tuple(x / 2 for x in xs)
        if fn(xs) < fn(shrunk):
            raise CombinatorError(f"monotonicity fails between {shrunk} and {xs}")
    for xs, ys in zip(samples, reversed(samples)):
        added = tuple(x + y for x, y in zip(xs, ys))
        if fn(xs) + fn(ys) < fn(added):
            raise CombinatorError(f"superadditivity-compatibility fails at {xs} + {ys}")
    n = len(points)
    rows = [[fn(tuple(t.d[i][j] for t in metrics)) for j in range(n)] for i in range(n)]
    combined = MetricTable.from_rows(points, rows)
    verdict = validate_metric(combined)
    if not verdict.valid:
        raise CombinatorError(
            f"combined table violates {verdict.axiom} at {verdict.witness}"
        )
    return combined


def r_disk(ms: MultiMetricSpace, x: str, radius) -> tuple[str, ...]:
    """Points within distance < radius of x in at least one shared component."""
    radius = _frac(radius)
    if radius <= 0:
        raise ContractError("disk radius must be positive")
    if not ms.components_containing(x):
        raise ContractError(f"point {x!r} is not in the space")
    out = []
    for y in ms.union_points():
        for k in ms.components_containing(x):
            t = ms.components[k]
            if y in t.points and t.dist(y, x) < radius:
                out.append(y)
                break
    return tuple(out)


@dataclass(frozen=True)
class SequenceSpec:
    """A finitely presented sequence: explicit prefix, then a repeating tail."""

    prefix: tuple[str, ...]
    tail_kind: str  # constant | periodic
    tail: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.tail_kind not in ("constant", "periodic"):
            raise InputError(f"unsupported tail kind {self.tail_kind!r}")
        if not self.tail:
            raise InputError("tail must be non-empty")
        if self.tail_kind == "constant" and len(self.tail) != 1:
            raise InputError("constant tails list exactly one point")


@dataclass(frozen=True)
class SequenceReport:
    convergent: bool
    limit: Optional[str]
    cauchy: bool
    tail_component: Optional[int]


def analyze_sequence(ms: MultiMetricSpace, seq: SequenceSpec) -> SequenceReport:
    """In a finite space a sequence converges iff it is eventually constant,
    and that is also exactly the Cauchy condition; the limit is then unique
    and some suffix lives inside a single component."""
    for p in list(seq.prefix) + list(seq.tail):
        if not ms.components_containing(p):
            raise InputError(f"sequence point {p!r} is not in the space")
    cycle = seq.tail if seq.tail_kind == "periodic" else seq.tail[:1]
    if len(set(cycle)) == 1:
        limit = cycle[0]
        component = ms.components_containing(limit)[0]
        return SequenceReport(True, limit, True, component)
    return SequenceReport(False, None, False, None)


class MappingTable:
    """A self-map of the point union, given pointwise."""

    def __init__(self, mapping: dict[str, str]):
        self.mapping = dict(mapping)

    def validate(self, ms: MultiMetricSpace) -> None:
        union = set(ms.union_points())
        if set(self.mapping) != union:
            raise InputError("mapping must be defined on exactly the point union")
        for v in self.mapping.values():
            if v not in union:
                raise InputError(f"image point {v!r} is outside the space")

    def __call__(self, x: str) -> str:
        return self.mapping[x]


@dataclass(frozen=True)
class ContractionReport:
    verdict: bool
    alpha: Optional[Fraction]
    component_map: tuple[tuple[int, int, Fraction], ...]


def is_contraction(ms: MultiMetricSpace, T: MappingTable, strict: bool = False) -> ContractionReport:
    """Scan component pairs (i, j) with T(M_i) inside M_j for the minimal
    ratio bound; the verdict is existential over pairs by default, or, with
    ``strict``, requires every component to contract into some target."""
    T.validate(ms)
    entries = []
    for i, src in enumerate(ms.components):
        images = [T(x) for x in src.points]
        for j, dst in enumerate(ms.components):
            if any(y not in dst.points for y in images):
                continue
            worst = Fraction(0)
            for a, b in itertools.combinations(src.points, 2):
                num = dst.dist(T(a), T(b))
                den = src.dist(a, b)
                ratio = num / den
                if ratio > worst:
                    worst = ratio
            entries.append((i, j, worst))
    contracting = [e for e in entries if e[2] < 1]
    if strict:
        verdict = all(any(e[0] == i and e[2] < 1 for e in entries) for i in range(ms.m))
    else:
        verdict = bool(contracting)
    alphas = [e[2] for e in (contracting if contracting else entries)]
    alpha = min(alphas) if alphas else None
    return ContractionReport(verdict, alpha, tuple(entries))


@dataclass(frozen=True)
class Orbit:
    seed: str
    path: tuple[str, ...]
    stabilized: bool
    settles_at: Optional[str]


@dataclass(frozen=True)
class FixedPointReport:
    points: tuple[str, ...]
    count: int
    bound_ok: Optional[bool]
    orbits: tuple[Orbit, ...]
    orbits_ok: Optional[bool]


def fixed_points(ms: MultiMetricSpace, T: MappingTable) -> FixedPointReport:
    """Exact fixed-point set plus the iterative scheme from one seed per
    component.  When the map is a verified contraction the report asserts
    1 <= count <= m and that every orbit stabilises at a reported fixed
    point within |union| steps."""
    T.validate(ms)
    fixed = tuple(x for x in ms.union_points() if T(x) == x)
    union = ms.union_points()
    orbits = []
    for comp in ms.components:
        seed = comp.points[0]
        path = [seed]
        for _ in range(len(union)):
            path.append(T(path[-1]))
        stabilized = path[-1] == path[-2]
        orbits.append(Orbit(seed, tuple(path), stabilized, path[-1] if stabilized else None))
    contraction = is_contraction(ms, T)
    if contraction.verdict:
        bound_ok = 1 <= len(fixed) <= ms.m
        orbits_ok = all(o.stabilized and o.settles_at in fixed for o in orbits)
    else:
        bound_ok = None
        orbits_ok = None
    return FixedPointReport(fixed, len(fixed), bound_ok, tuple(orbits), orbits_ok)
