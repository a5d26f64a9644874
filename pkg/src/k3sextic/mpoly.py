"""Sparse multivariate polynomials with lex, grevlex and block orders.

Monomials are packed into a single int: exponent ``i`` lives in a 16-bit
field at bit offset ``16*i`` whose top bit is a guard (so exponents stay
below 2**15). Multiplication of monomials is integer addition and
divisibility is a borrow test on the guard bits.

Every supported order is a weight order, so the sort key of a monomial is a
linear functional of its exponents: ``key(m1*m2) == key(m1) + key(m2)``.
The Groebner engine relies on this to carry keys through multiplications.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce

from .arith.fields import QQ, ZZ, ExtField, Integers, PrimeField, Rationals

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1
BASE = 1 << FIELD_BITS


class MonomialOrder:
    """A monomial order: ``lex``, ``grevlex`` or ``block(elim, first, second)``.

    Variables are ranked by their position in the ring (first variable largest).
    """

    def __init__(self, name: str, elim: tuple[str, ...] = (), first: "MonomialOrder | None" = None,
                 second: "MonomialOrder | None" = None):
        if name not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.elim = tuple(elim)
        self.first = first
        self.second = second

    def __repr__(self):
        if self.name == "block":
            return f"block({','.join(self.elim)};{self.first};{self.second})"
        return self.name

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))

    def weights(self, variables: tuple[str, ...]) -> list[int]:
        """Per-variable key contributions; the key of x^e is sum(e_i * w_i)."""
        n = len(variables)
        if self.name == "lex":
            return [BASE ** (n - 1 - i) for i in range(n)]
        if self.name == "grevlex":
            return [BASE**n - BASE**i for i in range(n)]
        unknown = [v for v in self.elim if v not in variables]
        if unknown:
            raise ValueError(f"elimination variables {unknown} not in ring")
        front = [v for v in variables if v in self.elim]
        back = [v for v in variables if v not in self.elim]
        w_front = dict(zip(front, self.first.weights(tuple(front)))) if front else {}
        w_back = dict(zip(back, self.second.weights(tuple(back)))) if back else {}
        # back keys are bounded by BASE**(len(back)+1) in absolute value
        shift = BASE ** (len(back) + 2)
        return [w_front[v] * shift if v in w_front else w_back[v] for v in variables]


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(elim, first: MonomialOrder = GREVLEX, second: MonomialOrder = GREVLEX) -> MonomialOrder:
    return MonomialOrder("block", tuple(elim), first, second)


def parse_order(text: str) -> MonomialOrder:
    text = text.strip()
    if text in ("lex", "grevlex"):
        return MonomialOrder(text)
    m = re.fullmatch(r"block\(([^;]*);([^;]*);([^;]*)\)", text)
    if not m:
        raise ValueError(f"cannot parse monomial order {text!r}")
    elim = tuple(v.strip() for v in m.group(1).split(",") if v.strip())
    return block_order(elim, parse_order(m.group(2)), parse_order(m.group(3)))


def pack(exps) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        m |= e << (FIELD_BITS * i)
    return m


def unpack(m: int, n: int) -> tuple[int, ...]:
    return tuple((m >> (FIELD_BITS * i)) & FIELD_MASK for i in range(n))


class PolyRing:
    """A polynomial ring: ordered variable names, coefficient domain, monomial order."""

    def __init__(self, variables, domain=QQ, order: MonomialOrder | str = GREVLEX):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",")]
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        self.nvars = len(self.variables)
        self.domain = domain
        self.order = parse_order(order) if isinstance(order, str) else order
        self.weights = self.order.weights(self.variables)
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(self.nvars))
        self.full = (1 << (FIELD_BITS * self.nvars)) - 1
        self._keys: dict[int, int] = {}
        self._index = {v: i for i, v in enumerate(self.variables)}

    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.domain}; {self.order})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.domain == other.domain and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.domain, self.order))

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.variables, self.domain, order)

    def with_domain(self, domain) -> "PolyRing":
        return PolyRing(self.variables, domain, self.order)

    def with_variables(self, variables) -> "PolyRing":
        return PolyRing(variables, self.domain, self.order)

    # --- monomials ---------------------------------------------------------

    def key(self, m: int) -> int:
        k = self._keys.get(m)
        if k is None:
            k = 0
            i = 0
            mm = m
            while mm:
                e = mm & FIELD_MASK
                if e:
                    k += e * self.weights[i]
                mm >>= FIELD_BITS
                i += 1
            self._keys[m] = k
        return k

    def divides(self, m1: int, m2: int) -> bool:
        g = self.guard
        return ((m2 | g) - m1) & g == g

    def lcm(self, m1: int, m2: int) -> int:
        g = self.guard
        ge = ((m1 | g) - m2) & g
        mask = (ge >> (FIELD_BITS - 1)) * ((1 << (FIELD_BITS - 1)) - 1)
        return (m1 & mask) | (m2 & ~mask & self.full)

    def degree(self, m: int) -> int:
        d = 0
        while m:
            d += m & FIELD_MASK
            m >>= FIELD_BITS
        return d

    def var_monomial(self, name: str) -> int:
        return 1 << (FIELD_BITS * self._index[name])

    def index(self, name: str) -> int:
        return self._index[name]

    # --- constructors --------------------------------------------------------

    def coerce_coeff(self, c):
        dom = self.domain
        if isinstance(dom, Integers):
            return ZZ(c)
        if isinstance(dom, Rationals):
            return Fraction(c)
        if isinstance(dom, ExtField) and isinstance(c, tuple):
            return dom(c)
        if isinstance(dom, ExtField) and isinstance(c, Fraction):
            return dom.embed_base(dom.base(c))
        return dom(c)

    def from_dict(self, terms: dict, coerce: bool = True) -> "MPoly":
        dom = self.domain
        clean = {}
        for m, c in terms.items():
            if coerce:
                c = self.coerce_coeff(c)
            if not dom.is_zero(c):
                clean[m] = c
        return MPoly(self, clean)

    def from_terms(self, pairs) -> "MPoly":
        """Build from (exponent tuple, coefficient) pairs, summing repeats."""
        dom = self.domain
        acc: dict[int, object] = {}
        for exps, c in pairs:
            if len(exps) != self.nvars:
                raise ValueError("exponent vector length does not match ring")
            m = pack(exps)
            c = self.coerce_coeff(c)
            acc[m] = dom.add(acc[m], c) if m in acc else c
        return self.from_dict(acc, coerce=False)

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.constant(1)

    def constant(self, c) -> "MPoly":
        return self.from_dict({0: c})

    def gen(self, name: str) -> "MPoly":
        return MPoly(self, {self.var_monomial(name): self.domain.one})

    def gens(self) -> list["MPoly"]:
        return [self.gen(v) for v in self.variables]

    def parse(self, text: str) -> "MPoly":
        return parse_poly(text, self.variables, self.domain, self.order)


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomial to nonzero coefficient.

    Iteration order of ``terms`` is descending in the ring's order.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        key = ring.key
        self.terms = dict(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True))

    # --- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> int:
        return next(iter(self.terms))

    @property
    def lc(self):
        return next(iter(self.terms.values()))

    def lm_exps(self) -> tuple[int, ...]:
        return unpack(self.lm, self.ring.nvars)

    def monomials(self) -> list[tuple[int, ...]]:
        n = self.ring.nvars
        return [unpack(m, n) for m in self.terms]

    def items(self):
        n = self.ring.nvars
        return [(unpack(m, n), c) for m, c in self.terms.items()]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.degree(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((unpack(m, self.ring.nvars)[i] for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree(m) for m in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def variables_used(self) -> set[str]:
        used = 0
        for m in self.terms:
            used |= m
        return {v for i, v in enumerate(self.ring.variables) if (used >> (FIELD_BITS * i)) & FIELD_MASK}

    def coefficient(self, exps) -> object:
        return self.terms.get(pack(exps), self.ring.domain.zero)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(self.terms.items())))

    def __repr__(self):
        return f"MPoly({self.to_str()})"

    def __str__(self):
        return self.to_str()

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        dom = self.ring.domain
        names = self.ring.variables
        out = []
        for idx, (m, c) in enumerate(self.terms.items()):
            exps = unpack(m, self.ring.nvars)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, exps) if e]
            if isinstance(dom, ExtField):
                cs, neg = "(" + dom.to_str(c) + ")", False
            else:
                neg = c < 0
                cs = str(-c if neg else c)
            if factors and cs == "1":
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    # --- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise TypeError(f"mixed rings {self.ring} and {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        dom = self.ring.domain
        acc = dict(self.terms)
        for m, c in other.terms.items():
            if m in acc:
                v = dom.add(acc[m], c)
                if dom.is_zero(v):
                    del acc[m]
                else:
                    acc[m] = v
            else:
                acc[m] = c
        return MPoly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        dom = self.ring.domain
        return MPoly(self.ring, {m: dom.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        dom = self.ring.domain
        add, mul, is_zero = dom.add, dom.mul, dom.is_zero
        acc: dict[int, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                c = mul(c1, c2)
                if m in acc:
                    acc[m] = add(acc[m], c)
                else:
                    acc[m] = c
        return MPoly(self.ring, {m: c for m, c in acc.items() if not is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        dom = self.ring.domain
        c = self.ring.coerce_coeff(c)
        return self.ring.from_dict({m: dom.mul(c, v) for m, v in self.terms.items()}, coerce=False)

    def mul_monomial(self, m: int, c=None) -> "MPoly":
        dom = self.ring.domain
        if c is None:
            return MPoly(self.ring, {k + m: v for k, v in self.terms.items()})
        return MPoly(self.ring, {k + m: dom.mul(c, v) for k, v in self.terms.items()})

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        dom = self.ring.domain
        inv = dom.inv(self.lc)
        return MPoly(self.ring, {m: dom.mul(inv, c) for m, c in self.terms.items()})

    # --- ring changes ------------------------------------------------------

    def change_ring(self, ring: PolyRing) -> "MPoly":
        """Re-express in another ring: same or extended variables, any compatible domain.

        Resorting to a new order only happens here, never implicitly.
        """
        src = self.ring
        if src.variables == ring.variables:
            terms = self.terms
        else:
            pos = []
            for v in src.variables:
                if v not in ring._index:
                    if any(e for e in (unpack(m, src.nvars)[src.index(v)] for m in self.terms)):
                        raise ValueError(f"variable {v} not present in target ring")
                    pos.append(None)
                else:
                    pos.append(ring.index(v))
            terms = {}
            for m, c in self.terms.items():
                exps = unpack(m, src.nvars)
                new = [0] * ring.nvars
                for i, e in enumerate(exps):
                    if e:
                        new[pos[i]] = e
                terms[pack(new)] = c
        return ring.from_dict({m: _convert_coeff(c, src.domain, ring.domain) for m, c in terms.items()},
                              coerce=False)

    def diff(self, name: str) -> "MPoly":
        i = self.ring.index(name)
        unit = self.ring.var_monomial(name)
        dom = self.ring.domain
        out = {}
        for m, c in self.terms.items():
            e = (m >> (FIELD_BITS * i)) & FIELD_MASK
            if e:
                v = dom.mul(dom.from_int(e), c)
                if not dom.is_zero(v):
                    out[m - unit] = v
        return MPoly(self.ring, out)

    def evaluate(self, values: dict, domain=None):
        """Evaluate at a point given as ``{variable: value}`` in ``domain`` (default: ring domain)."""
        dom = domain or self.ring.domain
        n = self.ring.nvars
        vals = [values[v] for v in self.ring.variables]
        powers: list[dict[int, object]] = [{0: dom.one} for _ in range(n)]
        acc = dom.zero
        for m, c in self.terms.items():
            exps = unpack(m, n)
            t = _convert_coeff(c, self.ring.domain, dom)
            for i, e in enumerate(exps):
                if e:
                    pw = powers[i]
                    if e not in pw:
                        pw[e] = dom.pow(vals[i], e)
                    t = dom.mul(t, pw[e])
            acc = dom.add(acc, t)
        return acc

    def substitute(self, assignment: dict, target: PolyRing | None = None) -> "MPoly":
        """Ring homomorphism sending each variable to an MPoly (or constant).

        Variables missing from ``assignment`` map to the same-named variable of
        the target ring, which must then contain them.
        """
        images = [v for v in assignment.values() if isinstance(v, MPoly)]
        if target is None:
            target = images[0].ring if images else self.ring
        for img in images:
            if img.ring != target:
                raise TypeError("substitution images live in different rings")
        src = self.ring
        if target.domain != src.domain and not _domain_maps(src.domain, target.domain):
            raise TypeError(f"cannot map coefficients from {src.domain} to {target.domain}")
        gens = []
        for v in src.variables:
            if v in assignment:
                img = assignment[v]
                gens.append(img if isinstance(img, MPoly) else target.constant(img))
            else:
                gens.append(target.gen(v))
        power_cache: list[dict[int, MPoly]] = [{} for _ in src.variables]
        result: dict[int, object] = {}
        dom = target.domain
        for m, c in self.terms.items():
            exps = unpack(m, src.nvars)
            term = target.constant(_convert_coeff(c, src.domain, dom))
            for i, e in enumerate(exps):
                if e:
                    cache = power_cache[i]
                    if e not in cache:
                        cache[e] = gens[i] ** e
                    term = term * cache[e]
            for tm, tc in term.terms.items():
                result[tm] = dom.add(result[tm], tc) if tm in result else tc
        return target.from_dict(result, coerce=False)


def _domain_maps(src, dst) -> bool:
    if src == dst:
        return True
    if isinstance(src, Integers):
        return True
    if isinstance(src, Rationals):
        return not isinstance(dst, Integers)
    if isinstance(src, PrimeField) and isinstance(dst, ExtField):
        return src.p == dst.p
    return False


def _convert_coeff(c, src, dst):
    if src == dst:
        return c
    if isinstance(dst, Integers):
        return ZZ(c)
    if isinstance(dst, Rationals):
        if isinstance(src, (PrimeField, ExtField)):
            raise TypeError("cannot lift finite-field coefficients to QQ")
        return Fraction(c)
    if isinstance(dst, PrimeField):
        if isinstance(src, ExtField):
            raise TypeError("cannot map extension-field coefficients to a prime field")
        if isinstance(src, PrimeField) and src.p != dst.p:
            raise TypeError("mismatched characteristics")
        return dst(c)
    if isinstance(dst, ExtField):
        if isinstance(src, ExtField):
            raise TypeError("extension-field embeddings are not implicit")
        if isinstance(src, PrimeField) and src.p != dst.p:
            raise TypeError("mismatched characteristics")
        return dst.embed_base(dst.base(c))
    raise TypeError(f"no coefficient map {src} -> {dst}")


def partials(f: MPoly) -> list[MPoly]:
    """Formal partial derivatives in ring-variable order."""
    return [f.diff(v) for v in f.ring.variables]


def content_gcd(f: MPoly) -> int:
    """gcd of the numerators of an integer or rational polynomial."""
    from math import gcd

    return reduce(gcd, (int(Fraction(c).numerator) for c in f.terms.values()), 0)


# --- text format -------------------------------------------------------------


class PolySyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over: expr := term (('+'|'-') term)*,
    term := unary (('*'|'/') unary)*, unary := ('+'|'-')* power,
    power := atom ('^' INT)?, atom := INT | NAME | '(' expr ')'.
    Polynomials are built over QQ and coerced at the end."""

    def __init__(self, text, ring):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty polynomial", self.peek()[2])
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolySyntaxError("division only by nonzero constants", pos)
                value = value.scale(1 / rhs.lc)
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return -self.unary()
        if tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("int")[1]
            return base**exp
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return self.ring.constant(tok[1])
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.ring.variables:
                raise PolySyntaxError(f"unknown variable {tok[1]!r}", tok[2])
            return self.ring.gen(tok[1])
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise PolySyntaxError(f"unexpected {what}", tok[2])


def parse_poly(text: str, variables, domain=QQ, order: MonomialOrder | str = GREVLEX) -> MPoly:
    """Parse the polynomial text format into an MPoly over ``domain``.

    Raises PolySyntaxError (with ``offset``) on malformed text or unknown
    variables, ValueError when a coefficient does not fit the domain.
    """
    ring = PolyRing(variables, domain, order)
    qq_ring = ring.with_domain(QQ)
    value = _Parser(text, qq_ring).parse()
    if isinstance(domain, Integers):
        bad = [c for c in value.terms.values() if c.denominator != 1]
        if bad:
            raise ValueError(f"coefficient {bad[0]} not representable in ZZ")
    if isinstance(domain, (PrimeField, ExtField)):
        p = domain.p
        bad = [c for c in value.terms.values() if c.denominator % p == 0]
        if bad:
            raise ValueError(f"coefficient {bad[0]} not representable mod {p}")
    return value.change_ring(ring)


class Ideal:
    """A finite generating set in a common ring (zero generators dropped)."""

    def __init__(self, generators, ring: PolyRing | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise TypeError("ideal generators live in different rings")
        self.ring = ring
        self.generators = gens

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def change_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal([g.change_ring(ring) for g in self.generators], ring)


# --- ideal files ------------------------------------------------------------------
#
#   # comment
#   ring vars=a,b domain=GF(31) order=grevlex
#   a^2 - b
#   a*b + 3
#
# One generator per line after the header.


def parse_domain(text: str):
    """QQ, ZZ or GF(p) (prime p)."""
    text = text.strip()
    if text == "QQ":
        return QQ
    if text == "ZZ":
        return ZZ
    m = re.fullmatch(r"GF\((\d+)\)", text)
    if m:
        from .arith.fields import GF

        return GF(int(m.group(1)))
    raise ValueError(f"unknown coefficient domain {text!r}")


def parse_ideal(text: str) -> Ideal:
    """Read an ideal in the text format above."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("ring "):
        raise ValueError("ideal file must start with a 'ring vars=... domain=... order=...' header")
    fields = {}
    for item in lines[0].split()[1:]:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"malformed header item {item!r}")
        fields[key] = value
    if "vars" not in fields:
        raise ValueError("header lacks vars=")
    variables = tuple(v for v in fields["vars"].split(",") if v)
    domain = parse_domain(fields.get("domain", "QQ"))
    order = parse_order(fields.get("order", "grevlex"))
    ring = PolyRing(variables, domain, order)
    gens = [parse_poly(ln, variables, domain, order) for ln in lines[1:]]
    return Ideal(gens, ring)


def format_ideal(ideal: Ideal) -> str:
    ring = ideal.ring
    head = f"ring vars={','.join(ring.variables)} domain={ring.domain!r} order={ring.order!r}"
    return "\n".join([head] + [g.to_str() for g in ideal.generators]) + "\n"
