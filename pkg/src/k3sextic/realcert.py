"""Certificates that a form is negative on R^3 minus the origin.

Interval arithmetic with outward rounding (every float result is widened by
one ulp with ``math.nextafter``), nested Horner evaluation, and a best-first
branch-and-bound over the chart squares x = 1, y = 1, z = 1 with the other
two coordinates in [-1, 1]. For a form of even degree these three squares
cover every real projective point up to sign.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .mpoly import MPoly

INF = math.inf
DEFAULT_EPS = 2.0**-20
DEFAULT_MAX_DEPTH = 40


def _down(x: float) -> float:
    return math.nextafter(x, -INF)


def _up(x: float) -> float:
    return math.nextafter(x, INF)


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper) or self.lower > self.upper:
            raise ValueError(f"bad interval [{self.lower}, {self.upper}]")

    @classmethod
    def point(cls, x) -> "Interval":
        """Smallest float interval containing the exact number x (int, float or Fraction)."""
        if isinstance(x, float):
            return cls(x, x)
        try:
            f = float(x)
        except OverflowError:
            return cls(-INF, INF)
        if Fraction(f) == Fraction(x):
            return cls(f, f)
        return cls(_down(f), _up(f))

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        lo_ok = self.lower == -INF or Fraction(self.lower) <= x
        hi_ok = self.upper == INF or x <= Fraction(self.upper)
        return lo_ok and hi_ok

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return self.lower / 2 + self.upper / 2

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(_down(self.lower + other.lower), _up(self.upper + other.upper))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.upper, -self.lower)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        prods = []
        for a in (self.lower, self.upper):
            for b in (other.lower, other.upper):
                p = a * b
                if math.isnan(p):  # 0 * inf: the true product set is unbounded or {0}
                    return Interval(-INF, INF)
                prods.append(p)
        return Interval(_down(min(prods)), _up(max(prods)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        if e == 0:
            return Interval(1.0, 1.0)
        result = Interval(1.0, 1.0)
        base = self
        if e % 2 == 0 and self.lower < 0 < self.upper:
            m = max(-self.lower, self.upper)
            hi = Interval(m, m) ** e
            return Interval(0.0, hi.upper)
        if e % 2 == 0 and self.upper <= 0:
            base = -self
        n = e
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


@dataclass(frozen=True)
class IntervalBox:
    """A box in one chart: the chart variable is 1, the other two range over u and v."""

    chart: int            # index of the variable set to 1
    u: Interval
    v: Interval
    depth: int = 0

    def split(self) -> tuple["IntervalBox", "IntervalBox"]:
        if self.u.width >= self.v.width:
            m = self.u.midpoint
            return (IntervalBox(self.chart, Interval(self.u.lower, m), self.v, self.depth + 1),
                    IntervalBox(self.chart, Interval(m, self.u.upper), self.v, self.depth + 1))
        m = self.v.midpoint
        return (IntervalBox(self.chart, self.u, Interval(self.v.lower, m), self.depth + 1),
                IntervalBox(self.chart, self.u, Interval(m, self.v.upper), self.depth + 1))

    def midpoint(self) -> tuple[Fraction, Fraction, Fraction]:
        mid = [Fraction(self.u.midpoint), Fraction(self.v.midpoint)]
        mid.insert(self.chart, Fraction(1))
        return tuple(mid)

    def assignment(self, variables) -> dict:
        others = [v for i, v in enumerate(variables) if i != self.chart]
        return {variables[self.chart]: Interval(1.0, 1.0), others[0]: self.u, others[1]: self.v}


# --- nested Horner evaluation ------------------------------------------------------


def _horner_tree(terms: list[tuple[tuple[int, ...], object]], depth: int):
    """Nested representation: a coefficient at the leaves, else {exponent: subtree} for variable depth."""
    if not terms:
        return None
    if depth == len(terms[0][0]):
        total = sum(Fraction(c) for _, c in terms)
        return total
    groups: dict[int, list] = {}
    for exps, c in terms:
        groups.setdefault(exps[depth], []).append((exps, c))
    return {e: _horner_tree(g, depth + 1) for e, g in groups.items()}


def _eval_tree(tree, values: list, depth: int):
    if not isinstance(tree, dict):
        return Interval.point(tree)
    x = values[depth]
    top = max(tree)
    acc = None
    for e in range(top, -1, -1):
        sub = tree.get(e)
        term = _eval_tree(sub, values, depth + 1) if sub is not None else None
        if acc is None:
            acc = term
        else:
            acc = acc * x
            if term is not None:
                acc = acc + term
    return acc if acc is not None else Interval(0.0, 0.0)


class _Evaluator:
    """Caches the Horner tree of f (variables ordered by descending degree)."""

    def __init__(self, f: MPoly):
        self.f = f
        self.variables = f.ring.variables
        items = list(f.items())
        order = sorted(range(f.ring.nvars), key=lambda i: -max((e[i] for e, _ in items), default=0))
        self.order = order
        self.tree = _horner_tree([(tuple(e[i] for i in order), c) for e, c in items], 0) if items else None

    def __call__(self, assignment: dict) -> Interval:
        if self.tree is None:
            return Interval(0.0, 0.0)
        values = [_as_interval(assignment[self.variables[i]]) for i in self.order]
        return _eval_tree(self.tree, values, 0)


def interval_eval(f: MPoly, box) -> Interval:
    """Enclosure of f over an IntervalBox (chart variable = 1) or a {variable: Interval} mapping."""
    assignment = box.assignment(f.ring.variables) if isinstance(box, IntervalBox) else box
    return _Evaluator(f)(assignment)


# --- branch and bound -------------------------------------------------------------


@dataclass
class RealCertificate:
    verdict: str                          # certified_negative | counterexample | inconclusive
    boxes_processed: int
    witness: tuple | None = None          # exact rational point with f >= 0
    value: Fraction | None = None
    max_depth_reached: int = 0
    open_boxes: int = 0
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "boxes_processed": self.boxes_processed,
               "max_depth_reached": self.max_depth_reached}
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
            out["value"] = str(self.value)
        if self.open_boxes:
            out["open_boxes"] = self.open_boxes
        return out


def certify_negative(f: MPoly, eps: float = DEFAULT_EPS, max_depth: int = DEFAULT_MAX_DEPTH,
                     max_boxes: int = 10**7) -> RealCertificate:
    """Prove f < 0 on R^3 minus 0, or find an exact rational point with f >= 0.

    Boxes are processed in order of decreasing upper bound. A box is discarded
    once its enclosure is negative. Otherwise its midpoint is checked: a float
    value >= -eps triggers an exact rational evaluation, and only an exact
    value >= 0 is reported as a counterexample. Boxes still open at
    ``max_depth`` make the verdict inconclusive.
    """
    if f.ring.nvars != 3:
        raise ValueError("expected a form in three variables")
    if f.is_zero():
        return RealCertificate("counterexample", 0, (Fraction(1), Fraction(0), Fraction(0)), Fraction(0))
    if not f.is_homogeneous() or f.total_degree() % 2:
        raise ValueError("certify_negative needs a homogeneous form of even degree")
    ev = _Evaluator(f)
    names = f.ring.variables
    exact_terms = [(e, Fraction(c)) for e, c in f.items()]
    float_terms = [(e, float(c)) for e, c in exact_terms]

    def exact_value(pt):
        return sum(c * pt[0] ** a * pt[1] ** b * pt[2] ** d for (a, b, d), c in exact_terms)

    def float_value(pt):
        x, y, z = (float(c) for c in pt)
        return sum(c * x**a * y**b * z**d for (a, b, d), c in float_terms)

    heap = []
    counter = 0
    for chart in range(3):
        box = IntervalBox(chart, Interval(-1.0, 1.0), Interval(-1.0, 1.0))
        enc = ev(box.assignment(names))
        heapq.heappush(heap, (-enc.upper, counter, box))
        counter += 1
    processed = 0
    deepest = 0
    open_boxes = 0
    exact_checks = 0
    while heap:
        neg_upper, _, box = heapq.heappop(heap)
        processed += 1
        deepest = max(deepest, box.depth)
        if -neg_upper < 0:
            continue
        mid = box.midpoint()
        if float_value(mid) >= -eps:
            exact_checks += 1
            val = exact_value(mid)
            if val >= 0:
                return RealCertificate("counterexample", processed, mid, val, deepest, 0,
                                       {"exact_checks": exact_checks})
        if box.depth >= max_depth or processed >= max_boxes:
            open_boxes += 1
            continue
        for child in box.split():
            enc = ev(child.assignment(names))
            if enc.upper < 0:
                processed += 1
                continue
            heapq.heappush(heap, (-enc.upper, counter, child))
            counter += 1
    stats = {"exact_checks": exact_checks}
    if open_boxes:
        return RealCertificate("inconclusive", processed, None, None, deepest, open_boxes, stats)
    return RealCertificate("certified_negative", processed, None, None, deepest, 0, stats)
