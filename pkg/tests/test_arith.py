import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3sextic.arith import (
    GF,
    QQ,
    UniPoly,
    is_prime,
    is_squarefree,
    primes_below,
    quadratic_character,
    trial_factor,
    unipoly_factor,
    unipoly_gcd,
    unipoly_is_scaled_square,
    unipoly_roots,
)
from k3sextic.arith.fields import smallest_irreducible


def up(field, ints):
    """UniPoly from integer coefficients, low degree first."""
    return UniPoly(field, [field(c) for c in ints])


# --- quadratic character --------------------------------------------------------


@pytest.mark.parametrize("a,p,expected", [(4, 5, 1), (0, 5, 0), (2, 5, -1)])
def test_quadratic_character_examples(a, p, expected):
    assert quadratic_character(a, p) == expected


def test_quadratic_character_rejects_two():
    with pytest.raises(ValueError):
        quadratic_character(1, 2)


@given(st.sampled_from([3, 5, 31, 1009, 7517]), st.integers(1, 10**6), st.integers(1, 10**6))
def test_quadratic_character_multiplicative(p, a, b):
    a, b = a % p or 1, b % p or 1
    assert quadratic_character(a * b % p, p) == quadratic_character(a, p) * quadratic_character(b, p)


@pytest.mark.parametrize("p,k", [(3, 1), (5, 2), (7, 3)])
def test_character_counts_squares(p, k):
    F = GF(p, k)
    elems = list(F.elements())
    squares = {F.mul(x, x) for x in elems}
    for a in elems:
        chi = F.quadratic_character(a)
        if F.is_zero(a):
            assert chi == 0
        else:
            assert chi == (1 if a in squares else -1)


# --- primality --------------------------------------------------------------------


def test_is_prime_examples():
    assert is_prime(7517)
    assert is_prime(84716037398136110308799)
    assert not is_prime(561)


def test_is_prime_rejects_small():
    with pytest.raises(ValueError):
        is_prime(1)


def test_is_prime_agrees_with_sieve_below_1e6():
    sieve = set(primes_below(10**6))
    assert all(is_prime(n) == (n in sieve) for n in range(2, 10**6))


def test_carmichael_and_strong_pseudoprimes():
    for n in (561, 1105, 1729, 2465, 2821, 6601, 8911, 3215031751, 3825123056546413051):
        assert not is_prime(n)


def test_trial_factor_splits_smooth_part():
    n = 2**5 * 3 * 7517 * 84716037398136110308799
    fac, rest = trial_factor(n, 10**4)
    assert fac == {2: 5, 3: 1, 7517: 1}
    assert rest == 84716037398136110308799


def test_is_squarefree():
    assert is_squarefree(5) and is_squarefree(30)
    assert not is_squarefree(12)


# --- field axioms -----------------------------------------------------------------


FIELDS = [(2, 1), (5, 1), (5, 2), (31, 1), (3, 3), (2, 4), (7517, 1)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    F = GF(p, k)
    rng = random.Random(p * 10 + k)
    for _ in range(300):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == F.zero
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one


def test_defining_polynomial_is_smallest_irreducible():
    # x^2 + 2 is the lexicographically first monic irreducible quadratic over F_5
    assert smallest_irreducible(5, 2)[:2] == (2, 0)
    F = GF(5, 2)
    assert len(set(F.elements())) == 25


@pytest.mark.parametrize("p,k", [(5, 2), (3, 3), (2, 4)])
def test_frobenius_order(p, k):
    F = GF(p, k)
    for a in F.elements():
        assert F.frobenius(a, k) == a
        assert F.frobenius(a) == F.pow(a, p)
        d = F.element_degree(a)
        assert k % d == 0 and F.frobenius(a, d) == a


def test_huge_prime_field():
    p = int(
        "4424904772196959344085200612883251617292465803437757948"
        "5992572698404066491363246248977477562371729031497984350"
        "0902180031058767256453958545754450340721124283977338015"
        "3664612642260759001523868554216076825404419681"
    )
    F = GF(p)
    a = F(2**700 + 12345)
    assert F.mul(a, F.inv(a)) == 1
    r = F.sqrt(F.mul(a, a))
    assert F.mul(r, r) == F.mul(a, a)


# --- univariate polynomials -------------------------------------------------------


def test_gcd_examples():
    assert unipoly_gcd(up(QQ, [-1, 0, 1]), up(QQ, [-1, 1])) == up(QQ, [-1, 1])
    F5 = GF(5)
    assert unipoly_gcd(up(F5, [0, 0, 0, 1]), up(F5, [0, 0, 1])) == up(F5, [0, 0, 1])
    phi12 = up(QQ, [1, 0, -1, 0, 1])
    t12 = up(QQ, [-1] + [0] * 11 + [1])
    assert unipoly_gcd(phi12, t12) == phi12
    # oracle for the last one: phi12 divides t^12 - 1 exactly
    assert (t12 % phi12).is_zero()


def test_gcd_with_zero_is_monic():
    a = up(QQ, [2, 4])
    assert unipoly_gcd(a, UniPoly(QQ, [])) == up(QQ, [Fraction(1, 2), 1])


def test_gcd_rejects_mixed_domains():
    with pytest.raises((TypeError, ValueError)):
        unipoly_gcd(up(GF(5), [1, 1]), up(GF(7), [1, 1]))


def test_factor_examples():
    F5, F7 = GF(5), GF(7)
    assert unipoly_factor(up(F5, [1, 0, 1])) == [(up(F5, [2, 1]), 1), (up(F5, [3, 1]), 1)]
    assert unipoly_factor(up(F5, [-2, 0, 1])) == [(up(F5, [-2, 0, 1]), 1)]
    facs = unipoly_factor(up(F7, [-1, 0, 0, 0, 0, 0, 1]))
    assert len(facs) == 6 and all(g.degree == 1 and m == 1 for g, m in facs)


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        unipoly_factor(UniPoly(GF(5), []))


@pytest.mark.parametrize("p,k", [(2, 1), (5, 1), (5, 2), (31, 1)])
def test_factor_reproduces_input(p, k):
    F = GF(p, k)
    rng = random.Random(1000 * p + k)
    one = UniPoly(F, [F.one])
    for _ in range(1000):
        deg = rng.randint(1, 8)
        coeffs = [F.random(rng) for _ in range(deg)] + [F.one]
        f = UniPoly(F, coeffs)
        facs = unipoly_factor(f)
        assert prod((g**m for g, m in facs), start=one) == f
        keys = [(g.degree, g.coeffs, m) for g, m in facs]
        assert keys == sorted(keys)
        assert all(g.lc == F.one for g, _ in facs)


def test_roots():
    F = GF(5)
    assert sorted(unipoly_roots(up(F, [1, 0, 1]))) == [2, 3]


def test_scaled_square_examples():
    assert unipoly_is_scaled_square(up(QQ, [4, 8, 4])) == (4, up(QQ, [1, 1]))
    assert unipoly_is_scaled_square(up(QQ, [1, 0, 1])) is None
    F5 = GF(5)
    g = up(F5, [1, 1, 0, 1])
    f = g * g * UniPoly(F5, [F5(2)])
    # oracle: the expansion is what we think it is
    assert f == up(F5, [2, 4, 2, 4, 4, 0, 2])
    c, h = unipoly_is_scaled_square(f)
    assert c == 2 and h == g


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 2), (31, 1)])
def test_scaled_square_roundtrip(p, k):
    F = GF(p, k)
    rng = random.Random(p + 17 * k)
    for _ in range(200):
        g = UniPoly(F, [F.random(rng) for _ in range(3)] + [F.one])
        c = F.random(rng)
        if F.is_zero(c):
            continue
        f = g * g * UniPoly(F, [c])
        res = unipoly_is_scaled_square(f)
        assert res is not None
        c2, h = res
        assert h * h * UniPoly(F, [c2]) == f


def test_scaled_square_rejects_odd_multiplicity():
    F = GF(5)
    g = up(F, [1, 1])
    assert unipoly_is_scaled_square(g * g * g) is None
