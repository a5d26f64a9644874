"""Dense univariate polynomials over a field, with factorization over F_q.

Coefficients are stored low degree first. The zero polynomial has an empty
coefficient tuple, so ``degree`` of zero is -1.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .fields import QQ, ExtField, PrimeField, Rationals

DEFAULT_SEED = 20240501
MAX_SPLIT_TRIES = 64


class UniPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def monomial(cls, field, n, c=None):
        return cls(field, [field.zero] * n + [field.one if c is None else c])

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    # --- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.field}, {self.to_str()})"

    def to_str(self, var="t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if self.field.is_zero(c):
                continue
            cs = self.field.to_str(c)
            if " " in cs or (isinstance(c, Fraction) and c.denominator != 1) or cs.startswith("-"):
                cs = f"({cs})"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                parts.append(cs)
            elif c == self.field.one:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def _check(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly(self.field, [self.field.from_int(other)])
        if other.field != self.field:
            raise TypeError(f"mixed domains {self.field} and {other.field}")
        return other

    # --- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UniPoly(F, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(F)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return UniPoly(F, out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        return UniPoly(F, [F.mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int):
        result = UniPoly(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv = F.inv(other.lc)
        bc = other.coeffs
        if len(rem) <= db:
            return UniPoly(F), self
        quo = [F.zero] * (len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            c = F.mul(rem[i + db], inv)
            quo[i] = c
            if not F.is_zero(c):
                for j in range(db + 1):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, bc[j]))
        return UniPoly(F, quo), UniPoly(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # --- utilities -------------------------------------------------------

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self):
        F = self.field
        return UniPoly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose(self, other):
        acc = UniPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly(self.field, [c])
        return acc

    def powmod(self, e: int, mod):
        result = UniPoly(self.field, [self.field.one]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def map_coeffs(self, field, fn):
        return UniPoly(field, [fn(c) for c in self.coeffs])

    def sort_key(self):
        return (self.degree, self.coeffs)


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor; ``gcd(a, 0) = monic(a)``."""
    if a.field != b.field:
        raise TypeError(f"mixed domains {a.field} and {b.field}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def unipoly_xgcd(a: UniPoly, b: UniPoly):
    """Return (g, s, t) with g = s*a + t*b monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly(F, [F.one]), UniPoly(F)
    t0, t1 = UniPoly(F), UniPoly(F, [F.one])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# --- squarefree decomposition ---------------------------------------------


def _pth_root(f: UniPoly) -> UniPoly:
    """Given f = g(t^p) over F_q, return h with h^p = f."""
    F = f.field
    p = F.characteristic
    e = F.order // p  # a -> a^(q/p) inverts Frobenius
    coeffs = [F.pow(f.coeffs[i], e) if F.order > p else f.coeffs[i] for i in range(0, len(f.coeffs), p)]
    return UniPoly(F, coeffs)


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Pairs (a_i, i) of coprime squarefree monic factors with monic(f) = prod a_i^i."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero polynomial")
    f = f.monic()
    if f.field.characteristic == 0:
        return _yun(f)
    return _sqf_finite(f)


def _yun(f):
    out = []
    fp = f.derivative()
    a0 = unipoly_gcd(f, fp)
    b = f // a0
    c = fp // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = unipoly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def _sqf_finite(f):
    F = f.field
    p = F.characteristic
    one = UniPoly(F, [F.one])
    out: dict[int, UniPoly] = {}

    def rec(f, mult):
        i = 1
        fp = f.derivative()
        if fp.is_zero():
            if f.degree > 0:
                rec(_pth_root(f), mult * p)
            return
        c = unipoly_gcd(f, fp)
        w = f // c
        while w != one:
            y = unipoly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                key = i * mult
                out[key] = out[key] * z if key in out else z
            i += 1
            w = y
            c = c // y
        if c != one:
            rec(_pth_root(c), mult * p)

    rec(f, 1)
    return sorted(((g.monic(), m) for m, g in out.items()), key=lambda t: t[1])


# --- factorization over finite fields ---------------------------------------


def distinct_degree_factorization(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """For squarefree monic f over F_q: pairs (g_d, d) with g_d the product of all degree-d factors."""
    F = f.field
    q = F.order
    x = UniPoly.x(F)
    h = x % f
    out = []
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = unipoly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _trace_map(a: UniPoly, f: UniPoly, n: int) -> UniPoly:
    """a + a^2 + a^4 + ... + a^(2^(n-1)) mod f (characteristic 2 splitting)."""
    acc = a % f
    term = acc
    for _ in range(n - 1):
        term = (term * term) % f
        acc = acc + term
    return acc


def equal_degree_factorization(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Split a squarefree monic f whose irreducible factors all have degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    q = F.order
    tries = 0
    while True:
        tries += 1
        if tries > MAX_SPLIT_TRIES:
            raise RuntimeError(f"Cantor-Zassenhaus failed to split after {MAX_SPLIT_TRIES} tries")
        a = UniPoly(F, [F.random(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if F.characteristic == 2:
            k = F.degree if isinstance(F, ExtField) else 1
            b = _trace_map(a, f, k * d)
        else:
            b = a.powmod((q**d - 1) // 2, f) - UniPoly(F, [F.one])
        g = unipoly_gcd(f, b)
        if 0 < g.degree < f.degree:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f // g, d, rng)


def unipoly_factor(f: UniPoly, seed: int = DEFAULT_SEED) -> list[tuple[UniPoly, int]]:
    """Complete factorization of f over F_q into monic irreducibles with multiplicities.

    Squarefree decomposition, then distinct-degree, then Cantor-Zassenhaus.
    Output is sorted by degree, then by coefficient vector.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not isinstance(f.field, (PrimeField, ExtField)):
        raise TypeError("unipoly_factor works over finite fields only")
    rng = random.Random(seed)
    out = []
    for part, mult in squarefree_decomposition(f):
        for g, d in distinct_degree_factorization(part):
            for h in equal_degree_factorization(g, d, rng):
                out.append((h, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return out


def unipoly_roots(f: UniPoly, seed: int = DEFAULT_SEED) -> list:
    """Distinct roots of f lying in its own coefficient field, sorted."""
    roots = []
    for g, _ in unipoly_factor(f, seed):
        if g.degree == 1:
            roots.append(f.field.neg(g.coeffs[0]))
    return sorted(roots)


def unipoly_is_scaled_square(f: UniPoly):
    """Return (c, g) with f = c*g^2 and g monic, or None if f is not of that form.

    The criterion is that every irreducible factor has even multiplicity,
    read off from the squarefree decomposition.
    """
    if f.is_zero():
        raise ValueError("unipoly_is_scaled_square needs a nonzero polynomial")
    F = f.field
    g = UniPoly(F, [F.one])
    for part, mult in squarefree_decomposition(f):
        if mult % 2:
            return None
        g = g * part ** (mult // 2)
    return f.lc, g


def is_irreducible(f: UniPoly) -> bool:
    """Irreducibility over F_q (Rabin-style via distinct-degree factorization)."""
    if f.degree < 1:
        return False
    sqf = squarefree_decomposition(f)
    if len(sqf) != 1 or sqf[0][1] != 1:
        return False
    ddf = distinct_degree_factorization(f.monic())
    return len(ddf) == 1 and ddf[0][1] == f.degree


def to_qq(f: UniPoly) -> UniPoly:
    return UniPoly(QQ, [Fraction(c) for c in f.coeffs])


def reduce_mod_p(f: UniPoly, field: PrimeField) -> UniPoly:
    """Image of a polynomial over Q (p-integral coefficients) in F_p[t]."""
    if not isinstance(f.field, Rationals):
        raise TypeError("expected a polynomial over QQ")
    return UniPoly(field, [field(c) for c in f.coeffs])
