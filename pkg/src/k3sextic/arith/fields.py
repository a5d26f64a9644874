"""Coefficient fields: rationals, prime fields and small-degree extensions.

Every field object exposes the same small vocabulary (``zero``, ``one``,
``add``, ``sub``, ``mul``, ``neg``, ``inv``, ``div``, ``pow``, ``is_zero``,
``from_int``) so that univariate polynomial code can be written once.
Elements themselves are plain immutable Python values: ``Fraction`` for the
rationals, ``int`` in ``[0, p)`` for prime fields and ``tuple`` of ints for
extension fields.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .primes import is_prime

MAX_EXT_DEGREE = 6


class Rationals:
    """The field Q with ``fractions.Fraction`` elements."""

    characteristic = 0
    order = None
    degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    from_int = __call__

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def pow(a, e):
        return a**e

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def to_str(a) -> str:
        return str(a)


QQ = Rationals()


class Integers:
    """The ring Z with plain int elements; ``inv`` only succeeds for units."""

    characteristic = 0
    order = None
    degree = 1
    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("ZZ")

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    from_int = __call__

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a not in (1, -1):
            raise ZeroDivisionError(f"{a} is not a unit in ZZ")
        return a

    @staticmethod
    def div(a, b):
        q, r = divmod(a, b)
        if r:
            raise ZeroDivisionError(f"{b} does not divide {a} in ZZ")
        return q

    @staticmethod
    def pow(a, e):
        return a**e

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def to_str(a) -> str:
        return str(a)


ZZ = Integers()


class PrimeField:
    """F_p with elements stored as ints in ``[0, p)``."""

    degree = 1
    zero = 0
    one = 1

    def __init__(self, p: int, check: bool = True):
        if check and (p < 2 or not is_prime(p)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return type(other) is PrimeField and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    from_int = __call__

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def frobenius(self, a, times: int = 1):
        return a

    def element_degree(self, a) -> int:
        return 1

    def embed_base(self, a):
        return a % self.p

    @staticmethod
    def to_str(a) -> str:
        return str(a)

    def to_json(self, a):
        return a

    def quadratic_character(self, a) -> int:
        return quadratic_character(a, self.p)

    def sqrt(self, a):
        return sqrt_mod(a, self.p)


def quadratic_character(a: int, p: int) -> int:
    """Legendre symbol of ``a`` modulo the odd prime ``p``: -1, 0 or +1."""
    if p == 2:
        raise ValueError("quadratic character needs an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int:
    """A square root of ``a`` mod ``p`` (Tonelli-Shanks); the smaller of the two."""
    a %= p
    if a == 0 or p == 2:
        return a
    if quadratic_character(a, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while quadratic_character(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


class ExtField:
    """F_{p^k} as F_p[x]/(m(x)) with m the smallest monic irreducible of degree k.

    Elements are k-tuples of ints (coefficients of 1, x, ..., x^{k-1}).
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not 1 <= k <= MAX_EXT_DEGREE:
            raise ValueError(f"extension degree {k} outside 1..{MAX_EXT_DEGREE}")
        self.base = PrimeField(p)
        self.p = p
        self.degree = k
        self.characteristic = p
        self.order = p**k
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        elif not _is_irreducible_base(list(modulus), p):
            raise ValueError(f"{modulus} is not irreducible over GF({p})")
        self.modulus = tuple(modulus)  # monic, low to high, length k+1
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._neg_mod = [(-c) % p for c in self.modulus[:k]]

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return type(other) is ExtField and other.p == self.p and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GFq", self.p, self.modulus))

    def __call__(self, x):
        if isinstance(x, tuple):
            if len(x) != self.degree:
                raise ValueError("wrong element length")
            return tuple(c % self.p for c in x)
        return self.embed_base(self.base(x))

    from_int = __call__

    def embed_base(self, a: int):
        return (a % self.p,) + (0,) * (self.degree - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        k, p = self.degree, self.p
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        nm = self._neg_mod
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(k):
                    prod[d - k + i] += c * nm[i]
        return tuple(c % p for c in prod[:k])

    def scale(self, c: int, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid in F_p[x] against the modulus
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _divmod_base(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _sub_base(s0, _mul_base(q, s1, p), p)
        c = pow(r0[0], -1, p)
        s0 = [x * c % p for x in s0]
        return tuple(s0 + [0] * (self.degree - len(s0)))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not any(a)

    def elements(self):
        for coeffs in product(range(self.p), repeat=self.degree):
            yield tuple(reversed(coeffs))

    def element_index(self, a) -> int:
        idx = 0
        for c in reversed(a):
            idx = idx * self.p + c
        return idx

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p**times)

    def element_degree(self, a) -> int:
        """Degree over F_p of the smallest subfield containing ``a``."""
        for d in range(1, self.degree + 1):
            if self.degree % d == 0 and self.frobenius(a, d) == a:
                return d
        return self.degree

    def to_str(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

    def to_json(self, a):
        return list(a)

    def quadratic_character(self, a) -> int:
        if self.p == 2:
            raise ValueError("quadratic character needs odd characteristic")
        if not any(a):
            return 0
        return 1 if self.pow(a, (self.order - 1) // 2) == self.one else -1

    def sqrt(self, a):
        """A square root via Tonelli-Shanks in the cyclic group F_q^*."""
        if not any(a):
            return a
        if self.quadratic_character(a) != 1:
            raise ValueError("not a square")
        q = self.order
        t, s = q - 1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        rng = random.Random(self.order)
        z = self.random(rng)
        while self.quadratic_character(z) != -1:
            z = self.random(rng)
        m, c, u, r = s, self.pow(z, t), self.pow(a, t), self.pow(a, (t + 1) // 2)
        while u != self.one:
            i, u2 = 0, u
            while u2 != self.one:
                u2 = self.mul(u2, u2)
                i += 1
            b = self.pow(c, 1 << (m - i - 1))
            m, c = i, self.mul(b, b)
            u, r = self.mul(u, c), self.mul(r, b)
        return min(r, self.neg(r))


def GF(p: int, k: int = 1):
    """The finite field with p^k elements (cached, canonical defining polynomial)."""
    if k == 1:
        return _prime_field(p)
    return _ext_field(p, k)


@lru_cache(maxsize=None)
def _prime_field(p):
    return PrimeField(p)


@lru_cache(maxsize=None)
def _ext_field(p, k):
    return ExtField(p, k)


# --- small helpers on dense F_p[x] lists (low to high) used by ExtField ---


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub_base(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _mul_base(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod_base(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _trim(q), _trim(a[: len(b) - 1])


def _powmod_base(base, e, mod, p):
    result = [1]
    base = _divmod_base(base, mod, p)[1]
    while e:
        if e & 1:
            result = _divmod_base(_mul_base(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _divmod_base(_mul_base(base, base, p), mod, p)[1]
    return result


def _gcd_base(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _divmod_base(a, b, p)[1]
    return a


def _is_irreducible_base(m, p) -> bool:
    """Rabin's test for a monic polynomial over F_p given low to high."""
    m = _trim([c % p for c in m])
    k = len(m) - 1
    if k < 1 or m[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    divisors = {k // q for q in _prime_divisors(k)}
    h = x
    for i in range(1, k + 1):
        h = _powmod_base(h, p, m, p)
        if i in divisors:
            g = _gcd_base(m, _sub_base(h, x, p), p)
            if len(g) > 1:
                return False
    return _sub_base(h, x, p) == []


def _prime_divisors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are ordered by the integer
    sum c_i p^i, i.e. lexicographically with the top coefficient most significant.
    """
    n = 0
    while True:
        coeffs, m = [], n
        for _ in range(k):
            m, r = divmod(m, p)
            coeffs.append(r)
        if m:
            raise RuntimeError("no irreducible polynomial found")  # impossible
        cand = coeffs + [1]
        if (cand[0] != 0 or k == 1) and _is_irreducible_base(cand, p):
            return tuple(cand)
        n += 1
