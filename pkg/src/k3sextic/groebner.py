"""Buchberger's algorithm, elimination, denominator recording and zero-dimensional solving.

Three reduction engines share one pair-handling loop (Gebauer-Moeller
criteria, normal or sugar selection):

* ``modp``  -- coefficients are ints mod p, divisors monic;
* ``field`` -- any field object from ``arith.fields`` (slow, generic);
* ``qq``    -- rationals handled fraction-free: every polynomial is kept as a
  primitive integer polynomial. Each leading coefficient that a division
  step would invert and each content that gets divided out is recorded in a
  :class:`DenominatorLog`. Primes dividing none of the logged numbers are
  primes at which the run reduces to a valid run over F_p.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .arith.fields import GF, ExtField, Integers, PrimeField, Rationals
from .mpoly import GREVLEX, LEX, Ideal, MonomialOrder, MPoly, PolyRing, block_order

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6
STRATEGIES = ("normal", "sugar")


class GroebnerInconclusive(RuntimeError):
    """Raised when a run exceeds its pair-reduction budget."""

    def __init__(self, message, steps=0):
        super().__init__(message)
        self.steps = steps


@dataclass
class DenominatorLog:
    """Integers > 1 that the rational run divided by (leading coefficients and contents)."""

    entries: list[int] = field(default_factory=list)

    def record(self, n) -> None:
        n = abs(int(n))
        if n > 1:
            self.entries.append(n)

    def distinct(self) -> list[int]:
        return sorted(set(self.entries))

    def __len__(self):
        return len(self.entries)


@dataclass
class GroebnerBasis:
    ring: PolyRing
    basis: list[MPoly]
    denominators: DenominatorLog | None = None
    strategy: str = "normal"
    stats: dict = field(default_factory=dict)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


# --- internal representation: list of (key, monomial, coeff), descending ---


def _internal(f: MPoly):
    key = f.ring.key
    return [(key(m), m, c) for m, c in f.terms.items()]


def _engine_kind(domain) -> str:
    if isinstance(domain, PrimeField):
        return "modp"
    if isinstance(domain, Rationals):
        return "qq"
    if isinstance(domain, ExtField):
        return "field"
    if isinstance(domain, Integers):
        raise TypeError("Groebner bases over ZZ need strong_gb_Z; use QQ or a finite field")
    raise TypeError(f"unsupported coefficient domain {domain}")


class _Engine:
    def __init__(self, ring: PolyRing, denominators: DenominatorLog | None = None):
        self.ring = ring
        self.kind = _engine_kind(ring.domain)
        self.dom = ring.domain
        self.p = ring.domain.p if self.kind == "modp" else None
        self.guard = ring.guard
        self.log = denominators

    # normalization ------------------------------------------------------------

    def normalize(self, terms):
        """Monic over a field; primitive with positive leading coefficient over QQ."""
        if not terms:
            return terms
        lc = terms[0][2]
        if self.kind == "modp":
            if lc == 1:
                return terms
            inv = pow(lc, -1, self.p)
            p = self.p
            return [(k, m, c * inv % p) for k, m, c in terms]
        if self.kind == "field":
            if lc == self.dom.one:
                return terms
            inv = self.dom.inv(lc)
            mul = self.dom.mul
            return [(k, m, mul(inv, c)) for k, m, c in terms]
        cont = 0
        for _, _, c in terms:
            cont = gcd(cont, c)
            if cont == 1:
                break
        if lc < 0:
            cont = -cont
        if self.log is not None:
            self.log.record(cont)
        if cont != 1:
            terms = [(k, m, c // cont) for k, m, c in terms]
        if self.log is not None:
            self.log.record(terms[0][2])
        return terms

    def from_mpoly(self, f: MPoly):
        if self.kind == "qq":
            den = 1
            for c in f.terms.values():
                den = lcm(den, Fraction(c).denominator)
            if self.log is not None:
                self.log.record(den)
            key = self.ring.key
            return [(key(m), m, int(Fraction(c) * den)) for m, c in f.terms.items()]
        return _internal(f)

    def to_mpoly(self, terms) -> MPoly:
        if self.kind == "qq":
            lc = terms[0][2] if terms else 1
            return MPoly(self.ring, {m: Fraction(c, lc) for _, m, c in terms})
        return MPoly(self.ring, {m: c for _, m, c in terms})

    # S-polynomials --------------------------------------------------------------

    def spoly(self, f, g, lcm_m: int, lcm_k: int):
        mf, kf, cf = f[0][1], f[0][0], f[0][2]
        mg, kg, cg = g[0][1], g[0][0], g[0][2]
        sf_m, sf_k = lcm_m - mf, lcm_k - kf
        sg_m, sg_k = lcm_m - mg, lcm_k - kg
        acc: dict[int, object] = {}
        keys: dict[int, int] = {}
        if self.kind == "qq":
            h = gcd(cf, cg)
            af, ag = cg // h, cf // h
            for k, m, c in f[1:]:
                mm = m + sf_m
                acc[mm] = af * c
                keys[mm] = k + sf_k
            for k, m, c in g[1:]:
                mm = m + sg_m
                v = acc.get(mm, 0) - ag * c
                if v:
                    acc[mm] = v
                    keys[mm] = k + sg_k
                else:
                    acc.pop(mm, None)
        elif self.kind == "modp":
            p = self.p
            for k, m, c in f[1:]:
                mm = m + sf_m
                acc[mm] = c
                keys[mm] = k + sf_k
            for k, m, c in g[1:]:
                mm = m + sg_m
                v = (acc.get(mm, 0) - c) % p
                if v:
                    acc[mm] = v
                    keys[mm] = k + sg_k
                else:
                    acc.pop(mm, None)
        else:
            dom = self.dom
            for k, m, c in f[1:]:
                mm = m + sf_m
                acc[mm] = c
                keys[mm] = k + sf_k
            for k, m, c in g[1:]:
                mm = m + sg_m
                v = dom.sub(acc.get(mm, dom.zero), c)
                if not dom.is_zero(v):
                    acc[mm] = v
                    keys[mm] = k + sg_k
                else:
                    acc.pop(mm, None)
        out = [(keys[m], m, c) for m, c in acc.items()]
        out.sort(reverse=True, key=lambda t: t[0])
        return out

    # reduction -------------------------------------------------------------------

    def reduce(self, f, divisors):
        """Full reduction of ``f`` by ``divisors`` (normalized internal polys)."""
        if not f or not divisors:
            return f
        if self.kind == "modp":
            return self._reduce_modp(f, divisors)
        if self.kind == "qq":
            return self._reduce_qq(f, divisors)
        return self._reduce_field(f, divisors)

    def _reduce_modp(self, f, divisors):
        p, guard = self.p, self.guard
        lms = [(g[0][1], g[0][0], g) for g in divisors]
        coeffs = {m: c for _, m, c in f}
        heap = [(-k, m) for k, m, _ in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rem = []
        # coefficients are kept unreduced and only reduced mod p when popped;
        # an entry that cancels to 0 mod p stays in the dict until then
        while heap:
            nk, m = pop(heap)
            c = coeffs.pop(m, None)
            if c is None:
                continue
            c %= p
            if not c:
                continue
            mg = m | guard
            for lm, lk, g in lms:
                if (mg - lm) & guard == guard:
                    break
            else:
                rem.append((-nk, m, c))
                continue
            sm, sk = m - lm, -nk - lk
            c = p - c
            for k2, m2, c2 in g[1:]:
                mm = m2 + sm
                old = coeffs.get(mm)
                if old is None:
                    coeffs[mm] = c * c2
                    push(heap, (-(k2 + sk), mm))
                else:
                    coeffs[mm] = old + c * c2
        return rem

    def _reduce_field(self, f, divisors):
        dom, guard = self.dom, self.guard
        mul, sub, neg, is_zero = dom.mul, dom.sub, dom.neg, dom.is_zero
        lms = [(g[0][1], g[0][0], g) for g in divisors]
        coeffs = {m: c for _, m, c in f}
        heap = [(-k, m) for k, m, _ in f]
        heapq.heapify(heap)
        rem = []
        while heap:
            nk, m = heapq.heappop(heap)
            c = coeffs.pop(m, None)
            if c is None:
                continue
            mg = m | guard
            for lm, lk, g in lms:
                if (mg - lm) & guard == guard:
                    break
            else:
                rem.append((-nk, m, c))
                continue
            sm, sk = m - lm, -nk - lk
            for k2, m2, c2 in g[1:]:
                mm = m2 + sm
                old = coeffs.get(mm)
                if old is None:
                    coeffs[mm] = neg(mul(c, c2))
                    heapq.heappush(heap, (-(k2 + sk), mm))
                else:
                    v = sub(old, mul(c, c2))
                    if is_zero(v):
                        del coeffs[mm]
                    else:
                        coeffs[mm] = v
        return rem

    def _reduce_qq(self, f, divisors):
        guard = self.guard
        lms = [(g[0][1], g[0][0], g[0][2], g) for g in divisors]
        coeffs = {m: c for _, m, c in f}
        heap = [(-k, m) for k, m, _ in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rem = []
        while heap:
            nk, m = pop(heap)
            c = coeffs.pop(m, None)
            if c is None:
                continue
            mg = m | guard
            for lm, lk, lc, g in lms:
                if (mg - lm) & guard == guard:
                    break
            else:
                rem.append((-nk, m, c))
                continue
            h = gcd(c, lc)
            a, b = lc // h, c // h
            if a != 1:
                for mm in coeffs:
                    coeffs[mm] *= a
                rem = [(k, mm, a * cc) for k, mm, cc in rem]
            sm, sk = m - lm, -nk - lk
            for k2, m2, c2 in g[1:]:
                mm = m2 + sm
                old = coeffs.get(mm)
                if old is None:
                    coeffs[mm] = -b * c2
                    push(heap, (-(k2 + sk), mm))
                else:
                    v = old - b * c2
                    if v:
                        coeffs[mm] = v
                    else:
                        del coeffs[mm]
        return rem


# --- Buchberger -------------------------------------------------------------------


def _check_strategy(strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown pair strategy {strategy!r}; choose from {STRATEGIES}")


def _prepare(ideal, order):
    if isinstance(ideal, Ideal):
        gens, ring = ideal.generators, ideal.ring
    else:
        gens = [g for g in ideal if not g.is_zero()]
        ring = gens[0].ring if gens else None
        if ring is None:
            raise ValueError("cannot infer ring from an empty generator list")
    if order is not None:
        ring = ring.with_order(order)
        gens = [g.change_ring(ring) for g in gens]
    return ring, gens


def buchberger(ideal, order: MonomialOrder | None = None, record_denominators: bool = False,
               strategy: str = "normal", budget: int = DEFAULT_BUDGET, certify: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis over QQ or a finite field.

    With ``record_denominators`` (QQ only) the returned basis carries a
    :class:`DenominatorLog`. Raises :class:`GroebnerInconclusive` once more
    than ``budget`` S-pairs have been reduced.
    """
    _check_strategy(strategy)
    ring, gens = _prepare(ideal, order)
    dlog = DenominatorLog() if record_denominators and isinstance(ring.domain, Rationals) else None
    eng = _Engine(ring, dlog)
    polys: list[list] = []
    lms: list[int] = []
    sugar: list[int] = []
    degree = ring.degree
    stats = {"pairs_reduced": 0, "zero_reductions": 0, "pairs_created": 0, "max_basis": 0}

    G: list[int] = []
    B: list[tuple] = []

    def add(terms, s):
        idx = len(polys)
        polys.append(terms)
        lms.append(terms[0][1])
        sugar.append(s)
        return idx

    def finish_unit():
        one = ring.one()
        res = GroebnerBasis(ring, [one], dlog, strategy, stats)
        return res

    inputs = []
    for g in gens:
        t = eng.normalize(eng.from_mpoly(g))
        if t:
            inputs.append(t)
    if not inputs:
        return GroebnerBasis(ring, [], dlog, strategy, stats)
    for t in inputs:
        if t[0][1] == 0:
            return finish_unit()
    inputs.sort(key=lambda t: t[0][0])
    for t in inputs:
        idx = add(t, max(degree(m) for _, m, _ in t))
        G, B = _update(G, B, idx, lms, sugar, polys, ring, stats)

    while B:
        pick = min(range(len(B)), key=(lambda i: (B[i][3], B[i][2], B[i][0], B[i][1])) if strategy == "sugar"
                   else (lambda i: (B[i][2], B[i][0], B[i][1])))
        i, j, lk, s, lm_ = B[pick]
        B[pick] = B[-1]
        B.pop()
        stats["pairs_reduced"] += 1
        if stats["pairs_reduced"] > budget:
            raise GroebnerInconclusive(f"pair budget {budget} exhausted", stats["pairs_reduced"])
        spol = eng.spoly(polys[i], polys[j], lm_, lk)
        h = eng.reduce(spol, [polys[g] for g in G])
        if not h:
            stats["zero_reductions"] += 1
            continue
        h = eng.normalize(h)
        if h[0][1] == 0:
            return finish_unit()
        idx = add(h, s)
        G, B = _update(G, B, idx, lms, sugar, polys, ring, stats)
        stats["max_basis"] = max(stats["max_basis"], len(G))

    basis = _reduce_basis(eng, [polys[g] for g in G])
    result = GroebnerBasis(ring, [eng.to_mpoly(t) for t in basis], dlog, strategy, stats)
    if certify:
        bad = certificate_failures(result.basis)
        if bad:
            raise AssertionError(f"Buchberger certificate failed on {len(bad)} pairs")
        stats["certified"] = True
    return result


def _update(G, B, h, lms, sugar, polys, ring, stats):
    """Gebauer-Moeller installation of a new basis element ``h``."""
    divides, lcm_ = ring.divides, ring.lcm
    degree, key = ring.degree, ring.key
    mh = lms[h]
    C = [(g, lcm_(mh, lms[g])) for g in G]
    D = []
    while C:
        g1, l1 = C.pop()
        if l1 == mh + lms[g1] or (not any(divides(l2, l1) for _, l2 in C)
                                  and not any(divides(l2, l1) for _, l2 in D)):
            D.append((g1, l1))
    B_new = []
    for pair in B:
        g1, g2, l12 = pair[0], pair[1], pair[4]
        if not divides(mh, l12) or lcm_(lms[g1], mh) == l12 or lcm_(mh, lms[g2]) == l12:
            B_new.append(pair)
    for g, l in D:
        if l != mh + lms[g]:
            dl = degree(l)
            s = max(sugar[h] + dl - degree(mh), sugar[g] + dl - degree(lms[g]))
            B_new.append((g, h, key(l), s, l))
            stats["pairs_created"] += 1
    G_new = [g for g in G if not divides(mh, lms[g])]
    G_new.append(h)
    return G_new, B_new


def _reduce_basis(eng: _Engine, basis):
    """Minimalize, interreduce and sort (descending leading monomial)."""
    ring = eng.ring
    basis = sorted(basis, key=lambda t: t[0][0])
    minimal = []
    for t in basis:
        if not any(ring.divides(u[0][1], t[0][1]) for u in minimal):
            minimal.append(t)
    out = []
    for i, t in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lead, tail = t[:1], t[1:]
        if eng.kind == "qq":
            # reduce the full polynomial so scaling of the lead stays consistent
            r = eng.reduce(t, others)
        else:
            r = lead + eng.reduce(tail, others)
        out.append(eng.normalize(r))
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


def certificate_failures(basis: list[MPoly]) -> list[tuple[int, int]]:
    """Index pairs whose S-polynomial does not reduce to 0 (product criterion skips coprime pairs)."""
    if not basis:
        return []
    ring = basis[0].ring
    eng = _Engine(ring)
    polys = [eng.normalize(eng.from_mpoly(b)) for b in basis]
    bad = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            mi, mj = polys[i][0][1], polys[j][0][1]
            l = ring.lcm(mi, mj)
            if l == mi + mj:
                continue
            s = eng.spoly(polys[i], polys[j], l, ring.key(l))
            if eng.reduce(s, polys):
                bad.append((i, j))
    return bad


def normal_form(f: MPoly, basis, order: MonomialOrder | None = None) -> MPoly:
    """Remainder of multivariate division of ``f`` by ``basis`` over a field."""
    ring = f.ring if order is None else f.ring.with_order(order)
    if isinstance(ring.domain, Integers):
        raise TypeError("normal_form needs field coefficients; use strong_gb_Z over ZZ")
    f = f.change_ring(ring)
    divisors = [b.change_ring(ring) for b in basis if not b.is_zero()]
    eng = _Engine(ring)
    if eng.kind == "qq":
        # the fraction-free engine only yields the remainder up to a scalar
        return _qq_true_remainder(f, divisors, ring)
    divs = [eng.normalize(eng.from_mpoly(d)) for d in divisors]
    return eng.to_mpoly(eng.reduce(eng.from_mpoly(f), divs))


def _qq_true_remainder(f: MPoly, divisors, ring) -> MPoly:
    """Exact division over QQ with monic rational divisors (slow path for normal_form)."""
    divs = [d.monic() for d in divisors]
    lms = [(d.lm, d) for d in divs]
    terms = dict(f.terms)
    rem = {}
    key = ring.key
    while terms:
        m = max(terms, key=key)
        c = terms.pop(m)
        for lm, d in lms:
            if ring.divides(lm, m):
                shift = m - lm
                for m2, c2 in list(d.terms.items())[1:]:
                    mm = m2 + shift
                    v = terms.get(mm, 0) - c * c2
                    if v:
                        terms[mm] = v
                    else:
                        terms.pop(mm, None)
                break
        else:
            rem[m] = c
    return MPoly(ring, rem)


# --- derived operations ---------------------------------------------------------


def elimination_ideal(ideal: Ideal, eliminate, strategy: str = "normal", budget: int = DEFAULT_BUDGET,
                      record_denominators: bool = False):
    """Generators of I intersected with the subring free of ``eliminate``.

    Uses block(eliminate; grevlex; grevlex). Returns ``(Ideal, GroebnerBasis)``;
    the ideal lives in the ring of the remaining variables.
    """
    eliminate = tuple(eliminate)
    ring = ideal.ring
    order = block_order(eliminate, GREVLEX, GREVLEX)
    gb = buchberger(ideal, order, record_denominators=record_denominators, strategy=strategy, budget=budget)
    keep = [v for v in ring.variables if v not in eliminate]
    sub = PolyRing(keep, ring.domain, GREVLEX)
    elim = [g for g in gb.basis if not (g.variables_used() & set(eliminate))]
    return Ideal([g.change_ring(sub) for g in elim], sub), gb


def is_trivial(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the ideal is the unit ideal (reduced basis {1})."""
    if any(g.is_constant() for g in ideal.generators):
        return True
    if not ideal.generators:
        return False
    return buchberger(ideal, GREVLEX, budget=budget).is_unit()


# --- zero-dimensional solving -----------------------------------------------------


@dataclass
class ZeroDimSolution:
    values: dict          # variable -> element of GF(p, degree)
    degree: int           # minimal field degree over F_p
    multiplicity_hint: int = 1


@dataclass
class ZeroDimResult:
    points: list[ZeroDimSolution]
    beyond_bound: int                    # number of geometric points of degree > K
    positive_dimensional: bool = False
    eliminant_degrees: list[int] = field(default_factory=list)
    lex_basis: list[MPoly] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.points and self.beyond_bound == 0 and not self.positive_dimensional


def lex_basis(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Lex basis, seeded with the grevlex basis (usually much faster than lex from scratch)."""
    gb = buchberger(ideal, GREVLEX, budget=budget)
    if gb.is_unit():
        return GroebnerBasis(ideal.ring.with_order(LEX), [ideal.ring.with_order(LEX).one()])
    return buchberger(Ideal(gb.basis, gb.ring), LEX, budget=budget)


def solve_zero_dim(ideal: Ideal, bound: int = 3, budget: int = DEFAULT_BUDGET) -> ZeroDimResult:
    """All points of a zero-dimensional ideal over F_p in two variables (first > second).

    Points whose minimal field of definition has degree <= ``bound`` are
    listed (every Galois conjugate separately); the rest are only counted.
    """
    from .arith.unipoly import unipoly_factor, unipoly_gcd, unipoly_roots

    ring = ideal.ring
    if not isinstance(ring.domain, PrimeField):
        raise TypeError("solve_zero_dim works over a prime field")
    if ring.nvars != 2:
        raise ValueError("solve_zero_dim expects exactly two variables")
    p = ring.domain.p
    va, vb = ring.variables
    gb = lex_basis(ideal, budget=budget)
    basis = gb.basis
    if gb.is_unit():
        return ZeroDimResult([], 0, lex_basis=basis)
    univ = [g for g in basis if g.variables_used() <= {vb}]
    a_lead = [g for g in basis if g.variables_used() and g.lm_exps()[1] == 0 and g.lm_exps()[0] > 0]
    if not univ or not a_lead:
        return ZeroDimResult([], 0, positive_dimensional=True, lex_basis=basis)
    Fp = GF(p)
    elim = _to_unipoly(univ[0], 1, Fp)
    factors = unipoly_factor(elim)
    points: list[ZeroDimSolution] = []
    beyond = 0
    degrees = []
    for fac, _mult in factors:
        kb = fac.degree
        degrees.append(kb)
        if kb > bound:
            # count the geometric points above these roots by working symbolically is
            # out of reach; every root of the eliminant carries at least one point
            beyond += kb * _fiber_count_generic(basis, fac, Fp)
            continue
        Kb = GF(p, kb)
        for beta in unipoly_roots(_embed_unipoly(fac, Kb)):
            polys_a = [_specialize_b(g, beta, Kb) for g in basis]
            polys_a = [u for u in polys_a if not u.is_zero()]
            ga = polys_a[0]
            for u in polys_a[1:]:
                ga = unipoly_gcd(ga, u)
            ga = ga.monic()
            if ga.degree < 1:
                continue
            for afac, _ in unipoly_factor(ga):
                ka = afac.degree
                total = kb * ka
                if total > bound:
                    beyond += ka
                    continue
                if total == kb:
                    alpha = Kb.neg(afac.coeffs[0])
                    points.append(ZeroDimSolution({va: alpha, vb: beta}, kb))
                else:
                    # only kb == 1 reaches here within bound <= 6 cases handled by embedding
                    Kt = GF(p, total)
                    beta_t = _embed_element(beta, Kb, Kt)
                    for alpha in unipoly_roots(_embed_unipoly(afac, Kt, Kb)):
                        points.append(ZeroDimSolution({va: alpha, vb: beta_t}, total))
    points.sort(key=lambda s: (s.degree, _element_sort_key(s.values[va]), _element_sort_key(s.values[vb])))
    return ZeroDimResult(points, beyond, eliminant_degrees=degrees, lex_basis=basis)


def _element_sort_key(x):
    return x if isinstance(x, tuple) else (x,)


def _fiber_count_generic(basis, fac, Fp) -> int:
    """Number of a-values over a generic root of ``fac`` (gcd computed in F_p[b]/(fac))."""
    # Work in the field F_p[b]/(fac) directly: it is F_{p^k} with a different modulus.
    k = fac.degree
    if k > 6:
        return 1
    K = ExtField(Fp.p, k, tuple(fac.monic().coeffs))
    beta = tuple([0, 1] + [0] * (k - 2)) if k > 1 else (Fp.neg(fac.monic().coeffs[0]),)
    from .arith.unipoly import unipoly_gcd

    polys_a = [u for u in (_specialize_b(g, beta, K) for g in basis) if not u.is_zero()]
    ga = polys_a[0]
    for u in polys_a[1:]:
        ga = unipoly_gcd(ga, u)
    return max(ga.degree, 1)


def _to_unipoly(f: MPoly, var_index: int, F):
    from .arith.unipoly import UniPoly

    deg = f.degree_in(f.ring.variables[var_index])
    coeffs = [F.zero] * (deg + 1)
    for exps, c in f.items():
        coeffs[exps[var_index]] = F.add(coeffs[exps[var_index]], F(c))
    return UniPoly(F, coeffs)


def _specialize_b(g: MPoly, beta, K):
    """Substitute the second variable by ``beta`` in K, giving a univariate poly in the first."""
    from .arith.unipoly import UniPoly

    deg = max(g.degree_in(g.ring.variables[0]), 0)
    coeffs = [K.zero] * (deg + 1)
    pw = {}
    for (ea, eb), c in g.items():
        if eb not in pw:
            pw[eb] = K.pow(beta, eb)
        coeffs[ea] = K.add(coeffs[ea], K.mul(K.from_int(c), pw[eb]))
    return UniPoly(K, coeffs)


def _embed_element(x, src, dst):
    """Embed an element of F_{p^k} (src) into F_{p^m} (dst), k | m."""
    if isinstance(src, PrimeField):
        return dst.embed_base(x) if isinstance(dst, ExtField) else x
    if src == dst:
        return x

    gen_image = _generator_image(src, dst)
    acc = dst.zero
    power = dst.one
    for c in x:
        acc = dst.add(acc, dst.mul(dst.embed_base(c), power))
        power = dst.mul(power, gen_image)
    return acc


_GEN_IMAGES: dict = {}


def _generator_image(src, dst):
    from .arith.unipoly import UniPoly, unipoly_roots

    key = (src, dst)
    if key not in _GEN_IMAGES:
        mod = UniPoly(dst, [dst.embed_base(c) for c in src.modulus])
        roots = unipoly_roots(mod)
        if not roots:
            raise ValueError(f"{src} does not embed in {dst}")
        _GEN_IMAGES[key] = roots[0]
    return _GEN_IMAGES[key]


def _embed_unipoly(f, dst, src=None):
    from .arith.unipoly import UniPoly

    src = src or f.field
    return UniPoly(dst, [_embed_element(c, src, dst) for c in f.coeffs])


# --- strong Groebner bases over ZZ ------------------------------------------------


def strong_gb_Z(ideal: Ideal, order: MonomialOrder | None = None, budget: int = 20000,
                max_bits: int | None = None, max_basis: int | None = None) -> list[MPoly]:
    """Strong Groebner basis over ZZ (Buchberger with S- and G-polynomials).

    A strong basis has, for every element of the ideal, a basis element whose
    leading term divides its leading term. Returned sorted and reduced
    (leading coefficients positive, no leading term divisible by another's).
    Raises GroebnerInconclusive when ``budget`` pairs have been processed, a
    coefficient exceeds ``max_bits`` bits or the basis grows past ``max_basis``.
    """
    ring, gens = _prepare(ideal, order)
    if not isinstance(ring.domain, Integers):
        raise TypeError("strong_gb_Z expects ZZ coefficients")
    key = ring.key
    divides, lcm_ = ring.divides, ring.lcm

    def internal(f):
        out = [(key(m), m, c) for m, c in f.terms.items()]
        return out

    def lt_reduce(f, G):
        """Full reduction over ZZ: a term c*m is reducible by g if LM(g) | m and |c| >= |LC(g)|."""
        coeffs = {m: c for _, m, c in f}
        keys = {m: k for k, m, _ in f}
        rem = []
        while coeffs:
            m = max(coeffs, key=lambda mm: keys[mm])
            c = coeffs[m]
            reducer = None
            for g in G:
                if divides(g[0][1], m):
                    q = _zdiv(c, g[0][2])
                    if q:
                        reducer = (g, q)
                        break
            if reducer is None:
                rem.append((keys[m], m, c))
                del coeffs[m]
                continue
            g, q = reducer
            sm, sk = m - g[0][1], keys[m] - g[0][0]
            for k2, m2, c2 in g:
                mm = m2 + sm
                v = coeffs.get(mm, 0) - q * c2
                if v:
                    if max_bits is not None and v.bit_length() > max_bits:
                        raise GroebnerInconclusive(f"ZZ coefficient exceeded {max_bits} bits", steps)
                    coeffs[mm] = v
                    keys[mm] = k2 + sk
                else:
                    coeffs.pop(mm, None)
        return rem

    def normalize(t):
        if t and t[0][2] < 0:
            t = [(k, m, -c) for k, m, c in t]
        return t

    G = [normalize(internal(g)) for g in gens if not g.is_zero()]
    pairs = [(i, j) for i in range(len(G)) for j in range(i)]
    steps = 0
    while pairs:
        i, j = pairs.pop()
        steps += 1
        if steps > budget:
            raise GroebnerInconclusive(f"ZZ pair budget {budget} exhausted", steps)
        f, g = G[i], G[j]
        l = lcm_(f[0][1], g[0][1])
        lk = key(l)
        a, b = f[0][2], g[0][2]
        c = lcm(a, b)
        news = []
        # S-polynomial: (c/a) (l/LM f) f - (c/b) (l/LM g) g
        s = _combine(f, c // a, l - f[0][1], lk - f[0][0], g, -(c // b), l - g[0][1], lk - g[0][0])
        news.append(s)
        # G-polynomial: u (l/LM f) f + v (l/LM g) g with u a + v b = gcd(a, b)
        _, u, v = _xgcd(a, b)
        news.append(_combine(f, u, l - f[0][1], lk - f[0][0], g, v, l - g[0][1], lk - g[0][0]))
        for h in news:
            r = normalize(lt_reduce(h, G))
            if r:
                G.append(r)
                if max_basis is not None and len(G) > max_basis:
                    raise GroebnerInconclusive(f"ZZ basis exceeded {max_basis} elements", steps)
                n = len(G) - 1
                pairs.extend((n, k) for k in range(n))
    # interreduce: drop elements whose leading term is divisible by another's
    G.sort(key=lambda t: (t[0][0], abs(t[0][2])))
    minimal = []
    for t in G:
        if not any(divides(u[0][1], t[0][1]) and t[0][2] % u[0][2] == 0 for u in minimal):
            minimal = [u for u in minimal if not (divides(t[0][1], u[0][1]) and u[0][2] % t[0][2] == 0)]
            minimal.append(t)
    out = []
    for i, t in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normalize(t[:1] + lt_reduce(t[1:], others))
        out.append(r)
    out.sort(key=lambda t: (t[0][0], t[0][2]), reverse=True)
    return [MPoly(ring, {m: c for _, m, c in t}) for t in out]


def _zdiv(c, lc):
    """Quotient for ZZ reduction: the q with c - q*lc balanced remainder, 0 if none applies."""
    q, r = divmod(c, lc)
    if r and 2 * r > abs(lc):
        q += 1 if lc > 0 else -1
    if r == 0:
        return q
    # partial reduction only when it strictly shrinks |c|
    return q if abs(c - q * lc) < abs(c) else 0


def _combine(f, a, fm, fk, g, b, gm, gk):
    acc, keys = {}, {}
    for k, m, c in f:
        mm = m + fm
        acc[mm] = acc.get(mm, 0) + a * c
        keys[mm] = k + fk
    for k, m, c in g:
        mm = m + gm
        acc[mm] = acc.get(mm, 0) + b * c
        keys[mm] = k + gk
    out = [(keys[m], m, c) for m, c in acc.items() if c]
    out.sort(reverse=True, key=lambda t: t[0])
    return out


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
