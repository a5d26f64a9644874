"""Degree-2 K3 surfaces w^2 = f(x, y, z): smoothness, point counts, Weil polynomial checks."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd

import numpy as np

from .arith.fields import GF, QQ, ZZ, PrimeField, Rationals
from .arith.primes import is_prime, is_squarefree, primes_below, trial_factor
from .arith.unipoly import UniPoly, squarefree_decomposition, unipoly_factor
from .groebner import DEFAULT_BUDGET, GroebnerInconclusive, is_trivial, solve_zero_dim
from .mpoly import GREVLEX, Ideal, MPoly, PolyRing, parse_poly

log = logging.getLogger(__name__)

DEFAULT_POINT_BUDGET = 10**9
WEIL_DEGREE = 22
_CHUNK = 1 << 20


class BudgetExceeded(ValueError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"needs {required} point evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


# --- fixtures -------------------------------------------------------------------


def example_sextic(domain=ZZ) -> MPoly:
    """The 14-term sextic with all coefficients -1 shipped as a fixture."""
    text = resources.files("k3sextic.data").joinpath("example_sextic.txt").read_text()
    return parse_poly(text.strip(), ("x", "y", "z"), domain)


def example_weil_data() -> "WeilData":
    """The degree-22 Frobenius polynomial over F_31 shipped as a fixture."""
    text = resources.files("k3sextic.data").joinpath("weil_p31.txt").read_text()
    return WeilData.from_text(text)


def read_factor_hints(text: str) -> list[int]:
    """Integers one per line; '#' starts a comment."""
    return [int(ln.split("#", 1)[0]) for ln in text.splitlines() if ln.split("#", 1)[0].strip()]


def example_factor_hints() -> list[int]:
    """Known divisors of the example sextic's unresolved candidate, shipped as a fixture."""
    return read_factor_hints(resources.files("k3sextic.data").joinpath("factor_hints.txt").read_text())


# --- the surface ---------------------------------------------------------------


@dataclass
class K3Surface:
    """The double cover w^2 = f(x, y, z) of P^2 branched along f = 0."""

    f: MPoly

    def __post_init__(self):
        if self.f.ring.nvars != 3 or not self.f.is_homogeneous() or self.f.total_degree() != 6:
            raise ValueError("a degree-2 K3 surface needs a homogeneous sextic in three variables")

    def count_points(self, p: int, k: int = 1, budget: int = DEFAULT_POINT_BUDGET) -> int:
        return count_points(self.f, p, k, budget)

    def branch_smoothness(self, domain=QQ) -> "SmoothnessVerdict":
        return branch_smoothness(self.f, domain)


# --- smoothness of the branch curve ---------------------------------------------


@dataclass
class SmoothnessVerdict:
    status: str                          # smooth | singular | inconclusive
    witness: tuple | None = None         # projective point where f and all partials vanish
    charts: dict = field(default_factory=dict)

    @property
    def smooth(self) -> bool:
        return self.status == "smooth"

    def to_json(self) -> dict:
        return {"status": self.status, "witness": list(self.witness) if self.witness else None,
                "charts": self.charts}


def _singular_ideal(f: MPoly, chart: int, domain) -> Ideal:
    """(f, f_x, f_y, f_z) with the chart's variable set to 1, as an ideal in the other two."""
    names = f.ring.variables
    keep = tuple(v for i, v in enumerate(names) if i != chart)
    ring = PolyRing(keep, domain, GREVLEX)
    src = f.change_ring(f.ring.with_domain(domain))
    polys = [src] + [src.diff(v) for v in names]
    assignment = {names[chart]: ring.one()}
    assignment.update({v: ring.gen(v) for v in keep})
    gens = [g.substitute(assignment, ring) for g in polys]
    return Ideal([g for g in gens if not g.is_zero()], ring)


def _is_singular_point(f: MPoly, point, domain) -> bool:
    values = dict(zip(f.ring.variables, point))
    polys = [f] + [f.diff(v) for v in f.ring.variables]
    return all(domain.is_zero(g.evaluate(values, domain)) for g in polys)


def _small_points(height: int):
    """Projective points with integer coordinates |c| <= height, first nonzero coordinate positive."""
    pts = []
    for h in range(height + 1):
        for pt in itertools.product(range(-h, h + 1), repeat=3):
            if max(map(abs, pt)) != h or not any(pt):
                continue
            first = next(c for c in pt if c)
            if first < 0 or gcd(*pt) != 1:
                continue
            pts.append(pt)
    pts.sort(key=lambda pt: (max(map(abs, pt)), sum(1 for c in pt if c), [-abs(c) for c in pt], pt))
    return pts


def _find_witness(f: MPoly, domain, charts_singular: list[int]):
    if isinstance(domain, PrimeField):
        p = domain.p
        fp = f.change_ring(f.ring.with_domain(domain))
        if p * p <= 10**5:
            pts = [(1, y, z) for y in range(p) for z in range(p)] + [(0, 1, z) for z in range(p)] + [(0, 0, 1)]
            for pt in sorted(pts, key=lambda t: (sum(1 for c in t if c), [-c for c in t])):
                if _is_singular_point(fp, pt, domain):
                    return pt
            return None
        for chart in charts_singular:
            ideal = _singular_ideal(f, chart, domain)
            sol = solve_zero_dim(ideal, bound=1)
            for s in sol.points:
                vals = [s.values[v] for v in ideal.ring.variables]
                pt = tuple(vals[:chart]) + (1,) + tuple(vals[chart:])
                return pt
        return None
    fq = f.change_ring(f.ring.with_domain(QQ))
    for pt in _small_points(3):
        if _is_singular_point(fq, pt, QQ):
            return pt
    return None


def branch_smoothness(f: MPoly, domain=QQ, budget: int = DEFAULT_BUDGET) -> SmoothnessVerdict:
    """Decide whether f = 0 is a smooth curve over the algebraic closure of ``domain``.

    Smooth iff (f, f_x, f_y, f_z) is the unit ideal in each of the three
    affine charts. A singular verdict carries a witness when a search over
    small points finds one.
    """
    if f.ring.nvars != 3 or not f.is_homogeneous() or f.total_degree() != 6:
        raise ValueError("expected a homogeneous sextic in three variables")
    if not isinstance(domain, (Rationals, PrimeField)):
        raise TypeError("smoothness is decided over QQ or a prime field")
    charts = {}
    singular = []
    try:
        for chart, name in enumerate(f.ring.variables):
            trivial = is_trivial(_singular_ideal(f, chart, domain), budget=budget)
            charts[f"{name}=1"] = "trivial" if trivial else "proper"
            if not trivial:
                singular.append(chart)
    except GroebnerInconclusive as exc:
        charts["error"] = str(exc)
        return SmoothnessVerdict("inconclusive", None, charts)
    if not singular:
        return SmoothnessVerdict("smooth", None, charts)
    return SmoothnessVerdict("singular", _find_witness(f, domain, singular), charts)


# --- finite field tables for vectorized evaluation ------------------------------


class _FieldTables:
    """F_q with elements encoded as indices 0..q-1 (base-p digits of the coefficient vector).

    Multiplication goes through discrete logs to a primitive element, so the
    quadratic character is the parity of the log.
    """

    def __init__(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p**k
        F = GF(p, k)
        self.F = F
        q = self.q
        g = _primitive_element(F, p, k)
        exp = np.zeros(q - 1, dtype=np.int64)
        logt = np.full(q, -1, dtype=np.int64)
        x = F.one
        for e in range(q - 1):
            idx = self.index(x)
            exp[e] = idx
            logt[idx] = e
            x = F.mul(x, g)
        self.exp, self.log = exp, logt
        self.digits = p ** np.arange(k, dtype=np.int64)

    def index(self, x) -> int:
        return x if self.k == 1 else self.F.element_index(x)

    def add(self, u, v):
        if self.k == 1:
            return (u + v) % self.p
        p = self.p
        out = np.zeros(np.broadcast(u, v).shape, dtype=np.int64)
        for d in self.digits:
            out += ((u // d + v // d) % p) * d
        return out

    def mul(self, u, v):
        lu, lv = self.log[u], self.log[v]
        out = self.exp[(lu + lv) % (self.q - 1)]
        return np.where((lu < 0) | (lv < 0), 0, out)

    def chi(self, u):
        lu = self.log[u]
        return np.where(lu < 0, 0, 1 - 2 * (lu & 1))


def _primitive_element(F, p: int, k: int):
    q = p**k
    primes = list(trial_factor(q - 1)[0])
    for x in F.elements():
        if F.is_zero(x):
            continue
        if all(F.pow(x, (q - 1) // r) != F.one for r in primes):
            return x
    raise ArithmeticError("no primitive element found")


@lru_cache(maxsize=8)
def _tables(p: int, k: int) -> _FieldTables:
    return _FieldTables(p, k)


# --- point counts ---------------------------------------------------------------


def _check_count_args(f: MPoly, p: int, k: int, budget: int):
    if f.ring.nvars != 3 or not f.is_homogeneous() or f.total_degree() != 6:
        raise ValueError("expected a homogeneous sextic in three variables")
    if p == 2 or not is_prime(p):
        raise ValueError("count_points needs an odd prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    required = p ** (2 * k)
    if required > budget:
        raise BudgetExceeded(required, budget)


def character_sum(f: MPoly, p: int, k: int = 1) -> int:
    """Sum of chi(f(P)) over P in P^2(F_q): strata (1:y:z), (0:1:z), (0:0:1)."""
    T = _tables(p, k)
    q = T.q
    # coefficient c_ij of y^i z^j in f(1, y, z), reduced into F_q indices
    coef = {}
    for (ex, ey, ez), c in f.items():
        coef[(ey, ez)] = (coef.get((ey, ez), 0) + int(c)) % p
    zs = np.arange(q, dtype=np.int64)
    total = 0
    rows = max(1, _CHUNK // q)
    for start in range(0, q, rows):
        ys = np.arange(start, min(start + rows, q), dtype=np.int64)[:, None]
        # e_j(y) = sum_i c_ij y^i by Horner in y, then Horner in z
        acc = np.zeros((ys.shape[0], q), dtype=np.int64)
        for j in range(6, -1, -1):
            ej = np.zeros_like(ys)
            for i in range(6 - j, -1, -1):
                ej = T.add(T.mul(ej, ys), coef.get((i, j), 0))
            acc = T.add(T.mul(acc, zs[None, :]), ej)
        total += int(T.chi(acc).sum())
    # the line x = 0: points (0:1:z) and (0:0:1)
    line = np.zeros(q, dtype=np.int64)
    for j in range(6, -1, -1):
        line = T.add(T.mul(line, zs), coef_x0(f, j, p))
    total += int(T.chi(line).sum())
    top = coef_x0(f, 6, p)
    total += int(T.chi(np.array([top]))[0])
    return total


def coef_x0(f: MPoly, j: int, p: int) -> int:
    """Coefficient of y^(6-j) z^j in f(0, y, z), mod p."""
    return int(f.coefficient((0, 6 - j, j))) % p


def count_points(f: MPoly, p: int, k: int = 1, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """#S(F_q) for S: w^2 = f, q = p^k, via q^2 + q + 1 + sum of chi(f(P))."""
    _check_count_args(f, p, k, budget)
    q = p**k
    return q * q + q + 1 + character_sum(f, p, k)


def count_points_naive(f: MPoly, p: int) -> int:
    """Fiber-by-fiber count over F_p: list the w with w^2 = f(P) for every P."""
    if p == 2 or not is_prime(p):
        raise ValueError("needs an odd prime")
    pts = [(1, y, z) for y in range(p) for z in range(p)] + [(0, 1, z) for z in range(p)] + [(0, 0, 1)]
    squares: dict[int, int] = {}
    for w in range(p):
        s = w * w % p
        squares[s] = squares.get(s, 0) + 1
    terms = [(exps, int(c)) for exps, c in f.items()]
    total = 0
    for pt in pts:
        v = 0
        for (a, b, c), coeff in terms:
            v += coeff * pt[0] ** a * pt[1] ** b * pt[2] ** c
        total += squares.get(v % p, 0)
    return total


# --- Weil polynomial --------------------------------------------------------------


@dataclass
class WeilData:
    """Monic polynomial over QQ (leading coefficient first) with its prime."""

    coeffs: list[Fraction]
    p: int

    def __post_init__(self):
        self.coeffs = [Fraction(c) for c in self.coeffs]
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("Weil polynomial must be monic")

    @classmethod
    def from_text(cls, text: str, p: int | None = None) -> "WeilData":
        """One rational coefficient per line, leading first. A ``# p = N`` comment supplies p."""
        coeffs, header_p = [], None
        for raw in text.splitlines():
            line = raw.strip()
            if line.startswith("#"):
                key, sep, value = line[1:].partition("=")
                if sep and key.strip() == "p":
                    header_p = int(value)
            elif line:
                coeffs.append(Fraction(line))
        if p is None:
            p = header_p
        elif header_p is not None and header_p != p:
            raise ValueError(f"file declares p = {header_p}, caller asked for p = {p}")
        if p is None:
            raise ValueError("the prime is neither given nor declared in the file")
        return cls(coeffs, p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def poly(self) -> UniPoly:
        return UniPoly(QQ, list(reversed(self.coeffs)))

    def power_sums(self, K: int) -> list[Fraction]:
        return weil_power_sums(self, K)

    def predicted_count(self, k: int) -> Fraction:
        q = self.p**k
        return 1 + q * q + q * self.power_sums(k)[k - 1]

    def functional_equation_sign(self) -> int | None:
        c = self.coeffs[-1]
        return int(c) if c in (1, -1) else None


def weil_power_sums(W, K: int) -> list[Fraction]:
    """s_1..s_K of the roots by Newton's identities (exact rationals)."""
    coeffs = W.coeffs if isinstance(W, WeilData) else [Fraction(c) for c in W]
    if coeffs[0] != 1:
        raise ValueError("Newton's identities here need a monic polynomial")
    n = len(coeffs) - 1
    a = coeffs[1:]  # t^n + a_1 t^(n-1) + ... + a_n
    s: list[Fraction] = []
    for k in range(1, K + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, n) + 1):
            acc += a[i - 1] * s[k - i - 1]
        if k <= n:
            acc += k * a[k - 1]
        s.append(-acc)
    return s


def coefficients_from_power_sums(s: list[Fraction]) -> list[Fraction]:
    """Inverse Newton: monic coefficients (leading first) of degree len(s) from s_1..s_n."""
    n = len(s)
    a: list[Fraction] = []
    for k in range(1, n + 1):
        acc = s[k - 1]
        for i in range(1, k):
            acc += a[i - 1] * s[k - i - 1]
        a.append(-acc / k)
    return [Fraction(1)] + a


@dataclass
class LefschetzResult:
    k: int
    q: int
    count: int
    predicted: Fraction
    match: bool

    def to_json(self) -> dict:
        pred = self.predicted
        return {"k": self.k, "q": self.q, "count": self.count,
                "predicted": int(pred) if pred.denominator == 1 else str(pred), "match": self.match}


def lefschetz_check(f: MPoly, W: WeilData, K: int = 2, budget: int = DEFAULT_POINT_BUDGET) -> list[LefschetzResult]:
    """Compare #S(F_{p^k}) with 1 + p^2k + p^k s_k for k = 1..K."""
    out = []
    for k in range(1, K + 1):
        count = count_points(f, W.p, k, budget)
        predicted = W.predicted_count(k)
        out.append(LefschetzResult(k, W.p**k, count, predicted, predicted == count))
    return out


def weil_bound_ok(count: int, q: int, b2: int = WEIL_DEGREE) -> bool:
    """|#S(F_q) - 1 - q^2| <= b2 * q."""
    return abs(count - 1 - q * q) <= b2 * q


# --- roots of unity -------------------------------------------------------------


def _totient(n: int) -> int:
    result = n
    for r in trial_factor(n)[0]:
        result -= result // r
    return result


def totient_range(bound: int = WEIL_DEGREE) -> list[int]:
    """All k with phi(k) <= bound (phi(k) >= sqrt(k/2), so k <= 2 bound^2 suffices)."""
    return [k for k in range(1, 2 * bound * bound + 1) if _totient(k) <= bound]


def _mobius(n: int) -> int:
    fac = trial_factor(n)[0]
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Integer coefficients (low first) of the d-th cyclotomic polynomial.

    Phi_d = prod over e | d of (t^(d/e) - 1)^mu(e); multiplying and dividing
    by t^m - 1 are both linear-time recurrences on the coefficient list.
    """
    divs = [e for e in range(1, d + 1) if d % e == 0]
    poly = [1]
    for e in divs:
        if _mobius(e) == 1:
            m = d // e
            new = [0] * (len(poly) + m)
            for i, c in enumerate(poly):
                new[i + m] += c
                new[i] -= c
            poly = new
    for e in divs:
        if _mobius(e) == -1:
            m = d // e
            n = len(poly) - 1 - m
            q = [0] * (n + 1)
            for i in range(n, -1, -1):
                q[i] = poly[i + m] + (q[i + m] if i + m <= n else 0)
            poly = q
    return tuple(poly)


def unity_root_part(W, bound: int | None = None) -> tuple[int, UniPoly]:
    """gcd(W, prod over phi(k) <= deg W of (t^k - 1)): the factor with root-of-unity roots.

    The product factors as prod Phi_d^(n_d) with n_d = #{k in range : d | k},
    so the gcd is prod Phi_d^min(m_d, n_d), m_d the multiplicity of Phi_d in W.
    """
    P = W.poly() if isinstance(W, WeilData) else W
    F = P.field
    one = UniPoly(F, [F.one])
    if P.degree < 1:
        return 0, one
    ks = totient_range(bound if bound is not None else P.degree)
    rest = P.monic()
    g = one
    for d in ks:
        n_d = sum(1 for k in ks if k % d == 0)
        phi = UniPoly(F, [F(c) for c in cyclotomic(d)])
        if phi.degree > rest.degree:
            continue
        m = 0
        while m < n_d and rest.degree >= phi.degree:
            quo, rem = divmod(rest, phi)
            if not rem.is_zero():
                break
            rest, g, m = quo, g * phi, m + 1
    return g.degree, g


# --- irreducibility evidence ------------------------------------------------------


@dataclass
class IrreducibilityVerdict:
    status: str                     # irreducible | reducible | inconclusive
    factor: UniPoly | None = None
    primes: list[int] = field(default_factory=list)
    degree_patterns: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "factor": self.factor.to_str() if self.factor is not None else None,
                "primes": self.primes, "degree_patterns": {str(k): v for k, v in self.degree_patterns.items()}}


def primitive_integer_coeffs(P: UniPoly) -> list[int]:
    """Coefficients (low first) of the primitive integer multiple of P with positive lead."""
    coeffs = [Fraction(c) for c in P.coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    if ints[-1] < 0:
        cont = -cont
    return [c // cont for c in ints]


def _rational_root(ints: list[int], limit: int = 10**12):
    """A rational root of the integer polynomial, searched among +-d/e (d | a0, e | lead)."""
    a0, lead = ints[0], ints[-1]
    if a0 == 0:
        return Fraction(0)
    if abs(a0) > limit or abs(lead) > limit:
        return None

    def divisors(n):
        fac, rest = trial_factor(abs(n))
        if rest != 1:
            fac[rest] = fac.get(rest, 0) + 1
        ds = [1]
        for r, e in fac.items():
            ds = [d * r**i for d in ds for i in range(e + 1)]
        return ds

    for d in divisors(a0):
        for e in divisors(lead):
            for r in (Fraction(d, e), Fraction(-d, e)):
                if sum(c * r**i for i, c in enumerate(ints)) == 0:
                    return r
    return None


def irreducibility_sieve(P: UniPoly, max_primes: int = 25) -> IrreducibilityVerdict:
    """Irreducibility over QQ from factorization patterns modulo small primes.

    Any factor over QQ reduces to a product of mod-p factors, so its degree is
    a subset sum of every mod-p degree pattern. If only 0 and deg P survive
    the intersection, P is irreducible.
    """
    if P.is_zero():
        raise ValueError("zero polynomial")
    ints = primitive_integer_coeffs(P)
    n = len(ints) - 1
    Z = UniPoly(QQ, [Fraction(c) for c in ints])
    if n <= 0:
        return IrreducibilityVerdict("inconclusive")
    if n == 1:
        return IrreducibilityVerdict("irreducible")
    sqf = squarefree_decomposition(Z)
    if len(sqf) > 1 or sqf[0][1] > 1:
        rep = next(part for part, mult in sqf if part.degree >= 1)
        return IrreducibilityVerdict("reducible", rep if rep.degree < n else sqf[0][0])
    root = _rational_root(ints)
    if root is not None:
        return IrreducibilityVerdict("reducible", UniPoly(QQ, [-root, Fraction(1)]))
    possible = set(range(n + 1))
    used, patterns = [], {}
    for p in primes_below(10**4):
        if len(used) >= max_primes:
            break
        if ints[-1] % p == 0:
            continue
        Fp = GF(p)
        fp = UniPoly(Fp, [c % p for c in ints])
        if any(m > 1 for _, m in squarefree_decomposition(fp)):
            continue
        degs = sorted(g.degree for g, _ in unipoly_factor(fp))
        used.append(p)
        patterns[p] = degs
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        possible &= sums
        if possible == {0, n}:
            return IrreducibilityVerdict("irreducible", None, used, patterns)
    return IrreducibilityVerdict("inconclusive", None, used, patterns)


# --- the rank-2 lattice --------------------------------------------------------


@dataclass
class LatticeCheck:
    matrix: list[list[int]]
    discriminant: int
    squarefree: bool

    def to_json(self) -> dict:
        return {"matrix": self.matrix, "discriminant": self.discriminant, "squarefree": self.squarefree}


def lattice_discriminant(h2: int = 2, c1_sq: int = -2, c2_sq: int = -2) -> LatticeCheck:
    """Gram matrix of C1, C2 with C1 + C2 = h, so C1.C2 = (h^2 - C1^2 - C2^2) / 2."""
    twice = h2 - c1_sq - c2_sq
    if twice % 2:
        raise ValueError("h^2 - C1^2 - C2^2 must be even")
    c12 = twice // 2
    matrix = [[c1_sq, c12], [c12, c2_sq]]
    disc = c1_sq * c2_sq - c12 * c12
    return LatticeCheck(matrix, disc, disc != 0 and is_squarefree(abs(disc)))
