import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3sextic.arith import GF, QQ, ZZ, UniPoly, unipoly_factor, unipoly_gcd
from k3sextic.k3 import (
    BudgetExceeded,
    K3Surface,
    WeilData,
    branch_smoothness,
    coefficients_from_power_sums,
    count_points,
    count_points_naive,
    cyclotomic,
    irreducibility_sieve,
    lattice_discriminant,
    lefschetz_check,
    example_sextic,
    example_weil_data,
    totient_range,
    unity_root_part,
    weil_bound_ok,
    weil_power_sums,
)
from k3sextic.mpoly import PolyRing, parse_poly

XYZ = ("x", "y", "z")
# the degree-20 factor, numerators over 31, leading coefficient first
DEG20 = [31, -12, 15, -6, -3, -6, -5, 5, -13, 15, -22, 15, -13, 5, -5, -6, -3, -6, 15, -12, 31]


def sextic(text, domain=ZZ):
    return parse_poly(text, XYZ, domain)


def qpoly(coeffs_high_first):
    return UniPoly(QQ, [Fraction(c) for c in reversed(coeffs_high_first)])


MONOS6 = [e for e in product(range(7), repeat=3) if sum(e) == 6]


def random_sextic(rng, p, nterms=14):
    R = PolyRing(XYZ, ZZ)
    support = rng.sample(MONOS6, nterms)
    return R.from_terms([(m, rng.randrange(1, p)) for m in support])


# --- fixtures -----------------------------------------------------------------------


def test_weil_fixture_matches_factored_form():
    W = example_weil_data()
    assert W.p == 31 and W.degree == 22
    expected = qpoly([1, -2, 1]) * qpoly([Fraction(c, 31) for c in DEG20])
    assert W.poly() == expected
    assert W.functional_equation_sign() == 1


def test_example_sextic_fixture():
    S = example_sextic()
    assert len(S) == 14 and S.total_degree() == 6
    K3Surface(S)


# --- smoothness ---------------------------------------------------------------------


def test_smoothness_examples():
    assert branch_smoothness(sextic("x^6 + y^6 + z^6"), QQ).smooth
    v = branch_smoothness(sextic("x^6"), QQ)
    assert v.status == "singular" and v.witness == (0, 1, 0)
    assert branch_smoothness(example_sextic(), GF(31)).smooth


def test_smoothness_witness_mod_p():
    # a node at (0:0:1): the affine curve in the chart z = 1 starts with x*y
    f = sextic("x*y*z^4 + x^6 + y^6")
    v = branch_smoothness(f, GF(7))
    assert v.status == "singular" and v.witness == (0, 0, 1)


def test_smoothness_rejects_bad_input():
    with pytest.raises(ValueError):
        branch_smoothness(sextic("x^5*y + z^4"), QQ)


# --- point counts -------------------------------------------------------------------


def test_count_examples():
    assert count_points(sextic("x^6"), 5) == 56
    assert count_points(sextic("2*x^6"), 5) == 6


def test_count_example_31():
    assert count_points(example_sextic(), 31, 1) == 1036


def test_count_budget_refuses():
    with pytest.raises(BudgetExceeded) as exc:
        count_points(example_sextic(), 31, 3, budget=10**6)
    assert exc.value.required > 10**6


def test_count_rejects_char_2():
    with pytest.raises(ValueError):
        count_points(example_sextic(), 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_character_sum_matches_fiber_enumeration(p):
    rng = random.Random(p)
    for _ in range(50):
        f = random_sextic(rng, p)
        assert count_points(f, p) == count_points_naive(f, p)


@pytest.mark.parametrize("p,k", [(3, 2), (5, 2), (3, 3)])
def test_extension_counts_match_direct_sum(p, k):
    """Over F_{p^k}: compare with a slow sum of quadratic characters using the field API."""
    F = GF(p, k)
    rng = random.Random(p * k)
    f = random_sextic(rng, p)
    terms = [(e, F.from_int(int(c))) for e, c in f.items()]
    elems = list(F.elements())
    pts = [(F.one, y, z) for y in elems for z in elems] + [(F.zero, F.one, z) for z in elems]
    pts.append((F.zero, F.zero, F.one))
    chi = 0
    for pt in pts:
        v = F.zero
        for (a, b, c), coeff in terms:
            v = F.add(v, F.mul(coeff, F.mul(F.pow(pt[0], a), F.mul(F.pow(pt[1], b), F.pow(pt[2], c)))))
        chi += F.quadratic_character(v)
    q = p**k
    assert count_points(f, p, k) == q * q + q + 1 + chi


def test_weil_bound_on_smooth_surfaces():
    rng = random.Random(77)
    checked = 0
    for p in (5, 7, 11, 13):
        for _ in range(5):
            f = random_sextic(rng, p)
            if not branch_smoothness(f, GF(p)).smooth:
                continue
            assert weil_bound_ok(count_points(f, p), p)
            checked += 1
    assert checked >= 5


# --- Weil data ----------------------------------------------------------------------


def test_power_sum_examples():
    assert weil_power_sums([1, -2, 1], 2) == [2, 2]
    assert weil_power_sums([1, 0, -1], 2) == [0, 2]
    s = example_weil_data().power_sums(2)
    # independent Newton step: s1 = -a1 where a1 = -2 - 12/31
    assert s[0] == Fraction(74, 31)
    assert s[1] == Fraction(1136, 961)


def test_power_sums_reject_non_monic():
    with pytest.raises(ValueError):
        weil_power_sums([2, 1], 1)
    with pytest.raises(ValueError):
        WeilData([2, 1], 5)


def test_newton_inverse_on_fixture():
    W = example_weil_data()
    assert coefficients_from_power_sums(W.power_sums(22)) == W.coeffs


@settings(max_examples=100)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=40), min_size=1, max_size=12))
def test_newton_inverse_roundtrip(tail):
    coeffs = [Fraction(1)] + tail
    s = weil_power_sums(coeffs, len(tail))
    assert coefficients_from_power_sums(s) == coeffs


def test_weil_file_declares_prime():
    assert WeilData.from_text("# p = 7\n1\n-2\n1\n").p == 7
    with pytest.raises(ValueError):
        WeilData.from_text("1\n-2\n1\n")
    with pytest.raises(ValueError):
        WeilData.from_text("# p = 7\n1\n", 5)


def test_lefschetz_example_k1():
    (r,) = lefschetz_check(example_sextic(), example_weil_data(), 1)
    assert r.match and r.count == 1036 == r.predicted


def test_lefschetz_toy_mismatch():
    # x^6 over F_5 has 56 points, so s1 must be 6; (t-1)^2 gives s1 = 2
    (r,) = lefschetz_check(sextic("x^6"), WeilData([1, -2, 1], 5), 1)
    assert not r.match and r.count == 56 and r.predicted == 36


# --- unity roots ----------------------------------------------------------------------


def test_totient_range_complete():
    ks = totient_range(22)
    assert max(ks) <= 69
    from math import gcd

    phi = lambda n: sum(1 for i in range(1, n + 1) if gcd(i, n) == 1)  # noqa: E731
    assert ks == [n for n in range(1, 200) if phi(n) <= 22]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6, 12, 15, 30])
def test_cyclotomic_divides_t_d_minus_1(d):
    phi = UniPoly(QQ, [Fraction(c) for c in cyclotomic(d)])
    td = UniPoly(QQ, [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)])
    assert (td % phi).is_zero()


def test_unity_root_examples():
    deg, g = unity_root_part(qpoly([1, -2, 1]) * qpoly([1, 1, 1]))
    assert deg == 4
    assert unity_root_part(qpoly([1, 0, -2]))[0] == 0
    deg, g = unity_root_part(example_weil_data())
    assert deg == 2 and g == qpoly([1, -2, 1])


def test_unity_root_cofactor_coprime():
    """Cofactor has no root of unity: gcd with prod(t^k - 1) is 1, checked mod a large prime."""
    W = example_weil_data()
    deg, g = unity_root_part(W)
    cof, rem = divmod(W.poly(), g)
    assert rem.is_zero() and cof * g == W.poly()
    p = 1000003
    F = GF(p)
    red = UniPoly(F, [F(c.numerator * pow(c.denominator, -1, p)) for c in cof.coeffs])
    for k in totient_range(22):
        tk = UniPoly(F, [F(-1)] + [F.zero] * (k - 1) + [F.one])
        assert unipoly_gcd(red, tk).degree == 0


# --- irreducibility -----------------------------------------------------------------


def test_irreducibility_examples():
    assert irreducibility_sieve(qpoly([1, 0, 1])).status == "irreducible"
    v = irreducibility_sieve(qpoly([1, 0, -1]))
    assert v.status == "reducible" and v.factor.degree == 1
    assert irreducibility_sieve(qpoly([1, 0, 0, 0, 1])).status == "inconclusive"


def test_t4_plus_1_reducible_mod_small_primes():
    for p in (3, 5, 7, 11):
        F = GF(p)
        facs = unipoly_factor(UniPoly(F, [F(1), F(0), F(0), F(0), F(1)]))
        assert len(facs) > 1 or facs[0][1] > 1


def test_example_degree_20_factor_irreducible():
    v = irreducibility_sieve(qpoly([Fraction(c, 31) for c in DEG20]))
    assert v.status == "irreducible"
    assert v.primes


# --- lattice ------------------------------------------------------------------------


def test_lattice_examples():
    lat = lattice_discriminant()
    assert lat.matrix == [[-2, 3], [3, -2]] and lat.discriminant == -5 and lat.squarefree
    lat = lattice_discriminant(h2=4)
    assert lat.matrix[0][1] == 4 and lat.discriminant == -12 and not lat.squarefree
    assert lattice_discriminant(2, 0, -2).discriminant == -4
