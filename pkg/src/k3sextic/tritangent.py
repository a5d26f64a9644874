"""Tritangent lines to a plane sextic.

A line L is tritangent to the sextic f = 0 when f restricted to L is c*g^2
with g a cubic binary form. Lines of P^2 are covered by three charts:

* ``A``: z = a*x + b*y, parametrized (1 : t : a + b*t);
* ``B``: y = a*x, parametrized (1 : a : t);
* ``C``: the line x = 0, parametrized (0 : 1 : t).

A degree-6 coefficient vector d0..d6 is a scaled square exactly when it lies
on the square cone, the image of (c0..c3) -> coefficients of (c0 + ... + c3 t^3)^2.
Its defining ideal is computed once by elimination and then specialized.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import gmpy2
import numpy as np

from .arith.fields import GF, QQ, ZZ, PrimeField
from .arith.primes import is_prime, trial_factor
from .arith.unipoly import UniPoly, unipoly_factor, unipoly_gcd, unipoly_is_scaled_square, unipoly_roots
from .groebner import DEFAULT_BUDGET, buchberger, elimination_ideal, solve_zero_dim
from .mpoly import GREVLEX, Ideal, MPoly, PolyRing

log = logging.getLogger(__name__)

CHARTS = ("A", "B", "C")
D_VARS = tuple(f"d{i}" for i in range(7))
C_VARS = tuple(f"c{i}" for i in range(4))
BRUTE_FORCE_LIMIT = 10**7
SMALL_PRIME_BOUND = 10**6
# (variable order, pair strategy) of the two logged runs per chart
RUN_VARIANTS = {
    "A": [(("a", "b"), "normal"), (("b", "a"), "normal")],
    "B": [(("a",), "normal"), (("a",), "sugar")],
}


class MethodInapplicable(ValueError):
    """Raised when the sextic has tritangent lines over the algebraic closure of Q."""


# --- the square cone -------------------------------------------------------------


class SquareConeIdeal:
    """Equations in d0..d6 cutting out the scaled squares c*g^2, deg g <= 3.

    ``generators`` are primitive integer polynomials. ``bad_primes`` are the
    primes dividing a number the rational elimination divided by; for those
    the cone is recomputed directly over F_p instead of reduced.
    """

    def __init__(self, generators: list[MPoly], bad_primes: tuple[int, ...], stats: dict | None = None):
        self.generators = generators
        self.bad_primes = bad_primes
        self.stats = stats or {}
        self._cache: dict = {}

    def __len__(self):
        return len(self.generators)

    @property
    def ring(self) -> PolyRing:
        return self.generators[0].ring

    def over(self, domain) -> list[MPoly]:
        """The cone's generators over QQ or F_p."""
        if domain in self._cache:
            return self._cache[domain]
        if isinstance(domain, PrimeField) and domain.p in self.bad_primes:
            gens = _eliminate_cone(domain)[0]
        else:
            ring = PolyRing(D_VARS, domain, GREVLEX)
            gens = [g.change_ring(ring) for g in self.generators]
            gens = [g for g in gens if not g.is_zero()]
        self._cache[domain] = gens
        return gens

    def contains(self, vector, domain) -> bool:
        """Whether all generators vanish at the coefficient vector (d0, ..., d6)."""
        values = dict(zip(D_VARS, vector))
        return all(domain.is_zero(g.evaluate(values, domain)) for g in self.over(domain))


def _eliminate_cone(domain, record: bool = False):
    ring = PolyRing(C_VARS + D_VARS, domain, GREVLEX)
    c = [ring.gen(v) for v in C_VARS]
    d = [ring.gen(v) for v in D_VARS]
    eqs = []
    for i in range(7):
        sq = ring.zero()
        for j in range(4):
            if 0 <= i - j < 4:
                sq = sq + c[j] * c[i - j]
        eqs.append(d[i] - sq)
    elim, gb = elimination_ideal(Ideal(eqs, ring), C_VARS, record_denominators=record)
    return elim.generators, gb


def _primitive_integer(g: MPoly, ring: PolyRing) -> MPoly:
    den = lcm(*(Fraction(c).denominator for _, c in g.items()))
    ints = {m: int(Fraction(c) * den) for m, c in g.terms.items()}
    content = gcd(*ints.values())
    if ints[g.lm] < 0:
        content = -content
    return ring.from_dict({m: c // content for m, c in ints.items()})


@lru_cache(maxsize=None)
def build_square_cone_ideal() -> SquareConeIdeal:
    """Eliminate c0..c3 from d_i = sum c_j c_{i-j}; cached for the process."""
    gens, gb = _eliminate_cone(QQ, record=True)
    zring = PolyRing(D_VARS, ZZ, GREVLEX)
    zgens = [_primitive_integer(g, zring) for g in gens]
    bad = set()
    for n in gb.denominators.distinct():
        fac, rest = trial_factor(n)
        if rest != 1:
            raise ArithmeticError(f"unexpected large denominator {n} in cone elimination")
        bad.update(fac)
    stats = dict(gb.stats, generators=len(zgens), degrees=sorted({g.total_degree() for g in zgens}))
    log.info("square cone: %d generators, bad primes %s", len(zgens), sorted(bad))
    return SquareConeIdeal(zgens, tuple(sorted(bad)), stats)


# --- restrictions and the scaled-square test --------------------------------------


def _check_sextic(f: MPoly):
    if f.ring.nvars != 3:
        raise ValueError("expected a form in three variables")
    if f.is_zero() or not f.is_homogeneous() or f.total_degree() != 6:
        raise ValueError("expected a nonzero homogeneous sextic")


def _chart_ring(chart: str, domain) -> PolyRing:
    if chart == "A":
        return PolyRing(("a", "b"), domain, GREVLEX)
    if chart == "B":
        return PolyRing(("a",), domain, GREVLEX)
    raise ValueError(f"chart {chart!r} has no parameter ring")


def restriction_coefficients(f: MPoly, chart: str, domain) -> list:
    """t-coefficients d0..d6 of f on the chart's parametrized line.

    For charts A and B these are polynomials in the chart parameters; for
    chart C they are constants of ``domain``.
    """
    _check_sextic(f)
    x, y, z = f.ring.variables
    if chart == "C":
        ring = PolyRing(("t",), domain, GREVLEX)
        t = ring.gen("t")
        g = f.change_ring(f.ring.with_domain(domain)).substitute({x: ring.zero(), y: ring.one(), z: t}, ring)
        out = [domain.zero] * 7
        for (e,), c in g.items():
            out[e] = c
        return out
    pring = _chart_ring(chart, domain)
    params = pring.variables
    ring = PolyRing(("t",) + params, domain, GREVLEX)
    t = ring.gen("t")
    if chart == "A":
        images = {x: ring.one(), y: t, z: ring.gen("a") + ring.gen("b") * t}
    else:
        images = {x: ring.one(), y: ring.gen("a"), z: t}
    g = f.change_ring(f.ring.with_domain(domain)).substitute(images, ring)
    buckets: list[dict] = [{} for _ in range(7)]
    for exps, c in g.items():
        buckets[exps[0]][exps[1:]] = c
    return [pring.from_terms(list(b.items())) for b in buckets]


def _substitute_cone(gens: list[MPoly], values: list[MPoly], ring: PolyRing) -> list[MPoly]:
    """Evaluate cone generators at polynomial d-values, sharing monomial products.

    Works on raw integer dicts: the d-values come from an integer sextic, so
    over QQ everything is integral and over F_p reduction happens at the end.
    """
    dom = ring.domain
    modp = isinstance(dom, PrimeField)
    p = dom.p if modp else None
    vals = [{m: int(c) for m, c in v.terms.items()} for v in values]
    cache: dict[tuple, dict] = {(0,) * 7: {0: 1}}

    def mul(u, v):
        acc: dict[int, int] = {}
        get = acc.get
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                m = m1 + m2
                acc[m] = get(m, 0) + c1 * c2
        if modp:
            return {m: c % p for m, c in acc.items() if c % p}
        return {m: c for m, c in acc.items() if c}

    def mono(exps):
        if exps in cache:
            return cache[exps]
        i = next(k for k, e in enumerate(exps) if e)
        prev = list(exps)
        prev[i] -= 1
        val = mul(mono(tuple(prev)), vals[i])
        cache[exps] = val
        return val

    out = []
    for g in gens:
        acc: dict[int, int] = {}
        get = acc.get
        for exps, c in g.items():
            c = int(c)
            for m, v in mono(exps).items():
                acc[m] = get(m, 0) + c * v
        if modp:
            acc = {m: c % p for m, c in acc.items() if c % p}
        else:
            acc = {m: Fraction(c) for m, c in acc.items() if c}
        if acc:
            out.append(ring.from_dict(acc, coerce=False))
    return out


def tritangent_ideal(f: MPoly, chart: str, domain=QQ):
    """Ideal of chart parameters whose lines are tritangent.

    Chart A gives an ideal in (a, b), chart B one in (a,); chart C is a single
    line, answered directly with a bool.
    """
    if chart not in CHARTS:
        raise ValueError(f"unknown chart {chart!r}")
    coeffs = restriction_coefficients(f, chart, domain)
    if chart == "C":
        return is_binary_scaled_square(UniPoly(domain, coeffs), 6) is not None
    cone = build_square_cone_ideal()
    ring = _chart_ring(chart, domain)
    return Ideal(_substitute_cone(cone.over(domain), coeffs, ring), ring)


def is_binary_scaled_square(D: UniPoly, degree: int = 6):
    """(c, g) when the binary form of ``degree`` dehomogenizing to D is c*g^2, else None.

    The form's root at infinity has multiplicity degree - deg D, which must be
    even. The zero polynomial is returned as (0, 0).
    """
    F = D.field
    if D.is_zero():
        return F.zero, UniPoly(F, [])
    if (degree - D.degree) % 2:
        return None
    return unipoly_is_scaled_square(D)


# --- lines ------------------------------------------------------------------------


@dataclass
class TritangentLine:
    chart: str
    a: object                # chart parameter (None for chart C)
    b: object                # second parameter (chart A only)
    field_degree: int
    field: object            # GF(p, field_degree)
    c: object
    g: UniPoly
    split_type: str | None = None

    def restriction(self, f: MPoly) -> UniPoly:
        return restrict_to_line(f, self.chart, self.a, self.b, self.field)

    def linear_form(self) -> tuple:
        """Coefficients (lx, ly, lz) with L: lx*x + ly*y + lz*z = 0."""
        F = self.field
        if self.chart == "A":
            return (self.a, self.b, F.neg(F.one))
        if self.chart == "B":
            return (self.a, F.neg(F.one), F.zero)
        return (F.one, F.zero, F.zero)

    def equation(self) -> str:
        F = self.field
        a = F.to_str(self.a) if self.a is not None else None
        b = F.to_str(self.b) if self.b is not None else None
        if self.chart == "A":
            return f"z = ({a})*x + ({b})*y"
        if self.chart == "B":
            return f"y = ({a})*x"
        return "x = 0"

    def frobenius(self) -> "TritangentLine":
        F = self.field
        fr = lambda v: None if v is None else F.frobenius(v)  # noqa: E731
        g = UniPoly(F, [F.frobenius(c) for c in self.g.coeffs])
        return TritangentLine(self.chart, fr(self.a), fr(self.b), self.field_degree, F, F.frobenius(self.c), g,
                              self.split_type)

    def key(self):
        conv = lambda v: () if v is None else (v if isinstance(v, tuple) else (v,))  # noqa: E731
        return (self.chart, self.field_degree, conv(self.a), conv(self.b))

    def to_json(self) -> dict:
        F = self.field
        enc = lambda v: None if v is None else F.to_json(v)  # noqa: E731
        return {
            "chart": self.chart,
            "a": enc(self.a),
            "b": enc(self.b),
            "field_degree": self.field_degree,
            "c": enc(self.c),
            "g": [F.to_json(c) for c in self.g.coeffs],
            "split_type": self.split_type,
            "equation": self.equation(),
        }


def restrict_to_line(f: MPoly, chart: str, a, b, F) -> UniPoly:
    """f on the chart's parametrized line, as a polynomial in t over F."""
    t = UniPoly(F, [F.zero, F.one])
    one = UniPoly(F, [F.one])
    if chart == "A":
        X, Y, Z = one, t, UniPoly(F, [a, b])
    elif chart == "B":
        X, Y, Z = one, UniPoly(F, [a]), t
    elif chart == "C":
        X, Y, Z = UniPoly(F, []), one, t
    else:
        raise ValueError(f"unknown chart {chart!r}")
    powers = [[one], [one], [one]]
    out = UniPoly(F, [])
    for exps, coeff in f.items():
        term = UniPoly(F, [F.from_int(coeff)])
        for i, (base, e) in enumerate(zip((X, Y, Z), exps)):
            pw = powers[i]
            while len(pw) <= e:
                pw.append(pw[-1] * base)
            term = term * pw[e]
        out = out + term
    return out


def _materialize(f: MPoly, chart: str, a, b, k: int, p: int) -> TritangentLine:
    F = GF(p, k)
    D = restrict_to_line(f, chart, a, b, F)
    cg = is_binary_scaled_square(D, 6)
    if cg is None:
        raise ArithmeticError(f"chart {chart} solution ({a}, {b}) does not restrict to a scaled square")
    line = TritangentLine(chart, a, b, k, F, cg[0], cg[1])
    if p != 2:
        line.split_type = split_type(line, p)
    return line


def split_type(line: TritangentLine, p: int) -> str:
    """'split', 'nonsplit' or 'degenerate' for the preimage w^2 = c*g^2 of the line.

    When c is a square the line is normalized in place to c = 1.
    """
    if p == 2:
        raise ValueError("split type is not defined in characteristic 2")
    F = line.field
    if line.g.is_zero() or F.is_zero(line.c):
        return "degenerate"
    if F.quadratic_character(line.c) != 1:
        return "nonsplit"
    r = F.sqrt(line.c)
    line.g = line.g.scale(r)
    line.c = F.one
    return "split"


# --- detection over finite fields -------------------------------------------------


@dataclass
class DetectionResult:
    """Lines of field degree <= bound, plus a count of the higher-degree ones."""

    p: int
    bound: int
    lines: list[TritangentLine]
    beyond_bound: int = 0
    degenerate: bool = False
    charts: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return not self.degenerate

    @property
    def none_over_closure(self) -> bool:
        """No tritangent line over the algebraic closure of F_p (decided exactly)."""
        return self.exact and not self.lines and self.beyond_bound == 0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "bound": self.bound,
            "lines": [l.to_json() for l in self.lines],
            "beyond_bound": self.beyond_bound,
            "degenerate": self.degenerate,
            "exact": self.exact,
        }


def _reduce_form(f: MPoly, p: int) -> MPoly:
    ring = f.ring.with_domain(GF(p))
    g = f.change_ring(ring)
    if g.is_zero():
        raise ValueError(f"the sextic vanishes identically mod {p}")
    return g


def _univariate(g: MPoly, F) -> UniPoly:
    deg = g.degree_in(g.ring.variables[0])
    coeffs = [F.zero] * (deg + 1)
    for (e,), c in g.items():
        coeffs[e] = c
    return UniPoly(F, coeffs)


def detect_tritangent(f: MPoly, p: int, bound: int = 3, budget: int = DEFAULT_BUDGET) -> DetectionResult:
    """Tritangent lines of f mod p over F_{p^k}, k <= bound, via the square-cone ideal.

    Every Galois conjugate is listed. Solutions of larger degree are counted in
    ``beyond_bound``, so an empty exact result means no line over the closure.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fp = _reduce_form(f, p)
    Fp = GF(p)
    result = DetectionResult(p, bound, [])

    # chart A
    idealA = tritangent_ideal(fp, "A", Fp)
    if idealA.generators:
        sol = solve_zero_dim(idealA, bound=bound, budget=budget)
        points = sol.points
        result.charts["A"] = {"eliminant_degrees": sol.eliminant_degrees, "beyond_bound": sol.beyond_bound}
        if sol.positive_dimensional:
            result.degenerate = True
            points = []
        result.beyond_bound += sol.beyond_bound
        for s in points:
            result.lines.append(_materialize(fp, "A", s.values["a"], s.values["b"], s.degree, p))
    else:
        result.degenerate = True
        result.charts["A"] = {"positive_dimensional": True}

    # chart B: a univariate ideal, so its gcd generates it
    idealB = tritangent_ideal(fp, "B", Fp)
    gB = UniPoly(Fp, [])
    for g in idealB.generators:
        gB = unipoly_gcd(gB, _univariate(g, Fp))
    if gB.is_zero():
        result.degenerate = True
        result.charts["B"] = {"positive_dimensional": True}
    else:
        degs = []
        for fac, _ in unipoly_factor(gB):
            k = fac.degree
            degs.append(k)
            if k > bound:
                result.beyond_bound += k
                continue
            K = GF(p, k)
            lifted = UniPoly(K, [K.embed_base(c) if k > 1 else c for c in fac.coeffs])
            for alpha in unipoly_roots(lifted):
                result.lines.append(_materialize(fp, "B", alpha, None, k, p))
        result.charts["B"] = {"eliminant_degrees": degs}

    # chart C
    if tritangent_ideal(fp, "C", Fp):
        result.lines.append(_materialize(fp, "C", None, None, 1, p))
        result.charts["C"] = {"tritangent": True}
    else:
        result.charts["C"] = {"tritangent": False}
    result.lines.sort(key=TritangentLine.key)
    return result


# --- brute force oracle -----------------------------------------------------------


def _element_table(F, k: int):
    """(elements, coefficient array of shape (q, k), minimal degree of each element)."""
    elems = list(F.elements())
    if k == 1:
        coords = np.arange(F.p, dtype=np.int64).reshape(-1, 1)
        degs = np.ones(F.p, dtype=np.int64)
    else:
        coords = np.array(elems, dtype=np.int64)
        degs = np.array([F.element_degree(e) for e in elems], dtype=np.int64)
    return elems, coords, degs


def _character_table(poly_at_t, F, elems):
    """chi(P(z)) for every z of F, P = poly_at_t given as F_p coefficients low first."""
    P = UniPoly(F, [F.from_int(c) for c in poly_at_t])
    return np.array([F.quadratic_character(P(z)) for z in elems], dtype=np.int8)


def _consistent(chis):
    """Rows (probes) x lines: True where all nonzero characters agree."""
    return ~(((chis == 1).any(axis=0)) & ((chis == -1).any(axis=0)))


def _slice_poly(fp: MPoly, fixed: dict, free: str, p: int) -> list[int]:
    """Coefficients (in the free variable) of fp with the other variables fixed to F_p values."""
    names = fp.ring.variables
    out = [0] * 7
    for exps, c in fp.items():
        v = c
        for name, e in zip(names, exps):
            if name != free:
                v = v * pow(fixed[name], e, p) % p
        out[exps[names.index(free)]] = (out[exps[names.index(free)]] + v) % p
    return out


def _candidates(fp: MPoly, chart: str, F, k: int, table, probes_max: int = 12):
    """Parameters of chart lines with minimal field F_{p^k} that pass the character filter."""
    p = F.p
    elems, coords, degs = table
    q = len(elems)
    weights = p ** np.arange(k, dtype=np.int64)
    probes = list(range(min(p, probes_max))) if p > 2 else []
    if chart == "B":
        keep = degs == k
        if probes:
            chis = np.stack([_character_table(_slice_poly(fp, {"x": 1, "z": t}, "y", p), F, elems) for t in probes])
            keep &= _consistent(chis)
        return [(elems[i], None) for i in np.nonzero(keep)[0]]
    if chart == "C":
        return [(None, None)] if k == 1 else []
    # chart A: the point (1, t, a + b t) of the line, for t in F_p
    tables = [_character_table(_slice_poly(fp, {"x": 1, "y": t}, "z", p), F, elems) for t in probes]
    out = []
    for ia in range(q):
        keep = np.lcm(degs[ia], degs) == k
        if not keep.any():
            continue
        if probes:
            chis = np.empty((len(probes), q), dtype=np.int8)
            for r, t in enumerate(probes):
                z = ((coords[ia] + t * coords) % p) @ weights
                chis[r] = tables[r][z]
            keep &= _consistent(chis)
        out.extend((elems[ia], elems[ib]) for ib in np.nonzero(keep)[0])
    return out


def brute_force_tritangent(f: MPoly, p: int, bound: int = 1) -> list[TritangentLine]:
    """Every tritangent line over F_{p^k}, k <= bound, by enumerating all lines.

    Each line appears once, over its minimal field of definition. A vectorized
    quadratic-character filter (on c*g^2 every nonzero value has the character
    of c) discards most lines before the exact squarefree test. Independent of
    the Groebner machinery; limited to p^(2*bound) <= 10^7.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if bound < 1 or p ** (2 * bound) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force needs p^(2K) <= {BRUTE_FORCE_LIMIT}, got p={p}, K={bound}")
    fp = _reduce_form(f, p)
    lines = []
    for k in range(1, bound + 1):
        F = GF(p, k)
        table = _element_table(F, k)
        for chart in CHARTS:
            for a, b in _candidates(fp, chart, F, k, table):
                cg = is_binary_scaled_square(restrict_to_line(fp, chart, a, b, F), 6)
                if cg is None:
                    continue
                line = TritangentLine(chart, a, b, k, F, cg[0], cg[1])
                if p != 2:
                    line.split_type = split_type(line, p)
                lines.append(line)
    lines.sort(key=TritangentLine.key)
    return lines


def galois_orbits(lines: list[TritangentLine]) -> list[list[TritangentLine]]:
    """Group lines into Frobenius orbits (each orbit sorted, orbits by first key)."""
    by_key = {l.key(): l for l in lines}
    seen, orbits = set(), []
    for l in lines:
        if l.key() in seen:
            continue
        orbit, cur = [], l
        while cur.key() not in seen:
            seen.add(cur.key())
            orbit.append(by_key.get(cur.key(), cur))
            cur = cur.frobenius()
        orbits.append(sorted(orbit, key=TritangentLine.key))
    return orbits


# --- candidate primes over Q ------------------------------------------------------


@dataclass
class CandidatePrimes:
    small: list[int]
    large: list[int]          # probable primes >= 10^6
    unresolved: list[int]     # composite cofactors nobody factored
    runs: dict = field(default_factory=dict)

    def contains(self, p: int) -> bool:
        """Whether p is accounted for (listed, or divides a listed large entry)."""
        if p in self.small:
            return True
        return any(n % p == 0 for n in self.large + self.unresolved)

    def refine(self, hints) -> "CandidatePrimes":
        """Split unresolved composites along externally supplied divisors.

        A hint only counts where it shares a factor with an unresolved entry;
        the pieces are reclassified with the usual primality test, so a wrong
        hint cannot promote a composite.
        """
        pieces, used = [], []
        for n in self.unresolved:
            parts = [n]
            for h in hints:
                nxt = []
                for m in parts:
                    g = gcd(m, int(h))
                    if 1 < g < m:
                        nxt += [g, m // g]
                        used.append(int(h))
                    else:
                        nxt.append(m)
                parts = nxt
            pieces += parts
        small, large, unresolved = classify_candidates(pieces)
        runs = dict(self.runs)
        if used:
            runs["factor_hints"] = sorted({str(h) for h in used})
        return CandidatePrimes(sorted(set(self.small) | set(small)), sorted(set(self.large) | set(large)),
                               unresolved, runs)

    def to_json(self) -> dict:
        return {
            "small": self.small,
            "large": [str(n) for n in self.large],
            "unresolved": [str(n) for n in self.unresolved],
            "runs": self.runs,
        }


def _closure(log1: list[int], log2: list[int]) -> list[int]:
    """gcd(x, prod(log2)) for x in log1: every prime dividing an entry of both logs divides one."""
    if not log1 or not log2:
        return []
    tree = [gmpy2.mpz(y) for y in sorted(set(log2))]
    while len(tree) > 1:
        tree = [tree[i] * tree[i + 1] if i + 1 < len(tree) else tree[i] for i in range(0, len(tree), 2)]
    big = tree[0]
    out = set()
    for x in set(log1):
        g = gmpy2.gcd(x, big % x)
        if g > 1:
            out.add(int(g))
    return sorted(out)


@lru_cache(maxsize=4)
def _primorial(bound: int):
    return gmpy2.primorial(bound - 1)


def _strip_small(n: int, bound: int = SMALL_PRIME_BOUND):
    """Small prime factors of n (below bound) and the remaining cofactor."""
    primorial = _primorial(bound)
    n = gmpy2.mpz(n)
    found = set()
    while True:
        g = gmpy2.gcd(n, primorial)
        if g == 1:
            break
        fac, rest = trial_factor(int(g), bound)
        found.update(q for q in fac if q < bound)
        for q in fac:
            while n % q == 0:
                n //= q
    return found, int(n)


def logged_runs(ideal: Ideal, variants, budget: int = DEFAULT_BUDGET):
    """Run buchberger over QQ once per (variable order, strategy) variant, recording denominators.

    Returns the distinct log of each run and per-run statistics. Raises
    MethodInapplicable unless every run ends in the unit ideal.
    """
    logs, stats = [], []
    for variables, strategy in variants:
        vring = ideal.ring.with_variables(variables)
        videal = Ideal([g.change_ring(vring) for g in ideal.generators], vring)
        gb = buchberger(videal, GREVLEX, record_denominators=True, strategy=strategy, budget=budget)
        if not gb.is_unit():
            raise MethodInapplicable("the ideal is proper over QQ: tritangent lines exist over the closure of Q")
        logs.append(gb.denominators.distinct())
        stats.append(dict(gb.stats, variables=list(variables), strategy=strategy,
                          log_entries=len(gb.denominators)))
    return logs, stats


def classify_candidates(numbers) -> tuple[list[int], list[int], list[int]]:
    """Split integers into (primes < 10^6, probable primes >= 10^6, unresolved composite cofactors)."""
    small, large, unresolved = set(), set(), set()
    for n in numbers:
        found, rest = _strip_small(n)
        small.update(found)
        if rest == 1:
            continue
        if rest < SMALL_PRIME_BOUND**2 or is_prime(rest):
            (small if rest < SMALL_PRIME_BOUND else large).add(rest)
        else:
            unresolved.add(rest)
    return sorted(small), sorted(large), sorted(unresolved)


def ideal_candidate_primes(ideal: Ideal, variants, budget: int = DEFAULT_BUDGET) -> CandidatePrimes:
    """Candidate primes of an ideal that is the unit ideal over QQ: common factors of two logged runs."""
    logs, stats = logged_runs(ideal, variants, budget)
    common = _closure(logs[0], logs[1]) if len(logs) > 1 else list(logs[0])
    small, large, unresolved = classify_candidates(common)
    return CandidatePrimes(small, large, unresolved, {"runs": stats})


_CANDIDATE_CACHE: dict = {}


def candidate_primes(f: MPoly, budget: int = DEFAULT_BUDGET) -> CandidatePrimes:
    """Primes that may carry a tritangent line, found from two rational Groebner runs per chart.

    A prime dividing none of the numbers a rational run divided by sees the
    same computation over F_p, ending in the unit ideal. Primes occurring in
    both runs' logs (plus the cone's bad primes and the content of f) are the
    candidates; entries are split into primes below 10^6, probable primes and
    unresolved composites. Results are memoized per sextic and budget.
    """
    _check_sextic(f)
    key = (f.to_str(), budget, repr(RUN_VARIANTS))
    if key not in _CANDIDATE_CACHE:
        _CANDIDATE_CACHE[key] = _candidate_primes(f, budget)
    return _CANDIDATE_CACHE[key]


def _candidate_primes(f: MPoly, budget: int) -> CandidatePrimes:
    cone = build_square_cone_ideal()
    candidates: set[int] = set()
    small: set[int] = set(cone.bad_primes)
    if any(Fraction(c).denominator != 1 for _, c in f.items()):
        raise ValueError("candidate_primes expects integer coefficients")
    content = gcd(*(int(c) for _, c in f.items()))
    runs: dict = {}

    # chart A: run 2 swaps the variable order and uses sugar pair selection
    runs["A"] = ideal_candidate_primes(tritangent_ideal(f, "A", QQ), RUN_VARIANTS["A"], budget)
    # chart B is univariate; the variation is in the pair strategy only
    runs["B"] = ideal_candidate_primes(tritangent_ideal(f, "B", QQ), RUN_VARIANTS["B"], budget)
    for res in (runs["A"], runs["B"]):
        small.update(res.small)
        candidates.update(res.large + res.unresolved)

    # chart C: a single line, tritangent mod p iff p divides every cone value
    coeffs = restriction_coefficients(f, "C", QQ)
    if is_binary_scaled_square(UniPoly(QQ, coeffs), 6) is not None:
        raise MethodInapplicable("the line x = 0 is tritangent over Q")
    values = dict(zip(D_VARS, coeffs))
    gC = 0
    for g in cone.generators:
        gC = gcd(gC, int(g.evaluate(values, QQ)))
    runs["C"] = {"gcd_digits": len(str(gC)) if gC else 0}
    if gC > 1:
        candidates.add(gC)

    if abs(content) > 1:
        candidates.add(abs(content))
    extra_small, large, unresolved = classify_candidates(candidates)
    small.update(extra_small)
    runs = {k: (v.runs["runs"] if isinstance(v, CandidatePrimes) else v) for k, v in runs.items()}
    return CandidatePrimes(sorted(small), large, unresolved, runs)
