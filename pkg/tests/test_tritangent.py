import random

import pytest

from k3sextic.arith import GF, QQ, ZZ, UniPoly, unipoly_is_scaled_square
from k3sextic.k3 import example_sextic
from k3sextic.mpoly import Ideal, PolyRing, parse_poly
from k3sextic.tritangent import (
    CandidatePrimes,
    MethodInapplicable,
    TritangentLine,
    brute_force_tritangent,
    build_square_cone_ideal,
    detect_tritangent,
    galois_orbits,
    ideal_candidate_primes,
    is_binary_scaled_square,
    restrict_to_line,
    split_type,
    tritangent_ideal,
)

XYZ = ("x", "y", "z")


def sextic(text, domain=ZZ):
    return parse_poly(text, XYZ, domain)


@pytest.fixture(scope="module")
def cone():
    return build_square_cone_ideal()


# --- the square cone ---------------------------------------------------------------


def test_cone_shape(cone):
    assert len(cone) == cone.stats["generators"] > 0
    assert all(g.is_homogeneous() for g in cone.generators)
    assert cone.ring.domain is ZZ


def test_cone_examples(cone):
    assert cone.contains((1, 0, 0, 2, 0, 0, 1), QQ)
    assert not cone.contains((1, 0, 0, 0, 0, 0, 1), QQ)


def test_cone_random_squares_mod_1009(cone):
    F = GF(1009)
    rng = random.Random(1009)
    for _ in range(500):
        g = UniPoly(F, [rng.randrange(1009) for _ in range(4)])
        sq = g * g
        vec = [sq[i] for i in range(7)]
        # oracle: the vector really is a square
        if not sq.is_zero():
            assert unipoly_is_scaled_square(sq) is not None
        assert cone.contains(vec, F)


def test_cone_over_bad_prime_is_recomputed(cone):
    for p in cone.bad_primes:
        F = GF(p)
        assert cone.over(F)
        assert cone.contains((1, 0, 0, 2, 0, 0, 1), F)


def test_binary_scaled_square_degree_drop():
    F = GF(7)
    # t^4 as a sextic form has a double root at infinity: x^2 * t^4 is a square
    assert is_binary_scaled_square(UniPoly(F, [0, 0, 0, 0, 1]), 6) is not None
    # t^5 leaves a simple root at infinity
    assert is_binary_scaled_square(UniPoly(F, [0, 0, 0, 0, 0, 1]), 6) is None
    c, g = is_binary_scaled_square(UniPoly(F, []), 6)
    assert c == 0 and g.is_zero()


# --- chart ideals -------------------------------------------------------------------


def test_chart_C_direct_answer():
    assert tritangent_ideal(sextic("x^6 + y^6 + z^6"), "C", QQ) is False


def test_example_chart_A_mod_5_vanishes_at_4_1():
    F = GF(5)
    I = tritangent_ideal(example_sextic(F), "A", F)
    assert I.generators
    assert all(g.evaluate({"a": 4, "b": 1}) == 0 for g in I.generators)


def test_global_square_is_degenerate():
    f = sextic("(x^3 + y^3 + z^3)^2")
    res = detect_tritangent(f, 7)
    assert res.degenerate and not res.exact


def test_rejects_wrong_degree():
    with pytest.raises(ValueError):
        tritangent_ideal(sextic("x^5*y + z^4"), "A", QQ)


# --- detection on the example sextic -----------------------------------------------


@pytest.fixture(scope="module")
def S():
    return example_sextic(ZZ)


def test_example_mod_5(S):
    res = detect_tritangent(S, 5)
    assert res.exact and res.beyond_bound == 0
    assert [(l.chart, l.a, l.b, l.field_degree) for l in res.lines] == [("A", 4, 1, 1)]
    assert res.lines[0].split_type == "split"
    brute = brute_force_tritangent(S, 5, 1)
    assert [l.key() for l in brute] == [l.key() for l in res.lines]


def test_example_mod_31(S):
    res = detect_tritangent(S, 31)
    assert [(l.chart, l.a, l.b, l.field_degree) for l in res.lines] == [("A", 24, 23, 1)]
    assert res.lines[0].equation() == "z = (24)*x + (23)*y"
    assert res.lines[0].split_type == "split"
    # all 993 lines of the plane over F_31
    assert [l.key() for l in brute_force_tritangent(S, 31, 1)] == [res.lines[0].key()]


@pytest.mark.parametrize("p", [2, 3, 7, 11, 13])
def test_example_no_lines(S, p):
    res = detect_tritangent(S, p)
    assert res.none_over_closure


def test_line_restriction_reproduces_c_g(S):
    line = detect_tritangent(S, 31).lines[0]
    D = restrict_to_line(S, line.chart, line.a, line.b, line.field)
    assert D == line.g * line.g * UniPoly(line.field, [line.c])


# --- split type ---------------------------------------------------------------------


def test_split_type_nonsplit_synthetic():
    F = GF(5)
    g = UniPoly(F, [1, 1, 0, 1])
    line = TritangentLine("C", None, None, 1, F, F(2), g)
    assert split_type(line, 5) == "nonsplit"
    line = TritangentLine("C", None, None, 1, F, F(4), g)
    assert split_type(line, 5) == "split"
    assert line.c == 1 and line.g * line.g == g * g * UniPoly(F, [F(4)])


def test_split_type_rejects_char_2():
    F = GF(2)
    with pytest.raises(ValueError):
        split_type(TritangentLine("C", None, None, 1, F, 1, UniPoly(F, [1])), 2)


def test_detect_reports_nonsplit():
    # on x = 0 the form restricts to 2*(y^3 + y z^2 + z^3)^2 and 2 is a nonsquare mod 5
    f = sextic("2*(y^3 + y*z^2 + z^3)^2 + x*(x^5 + y^5 + z^5 + x*y^2*z^2)")
    res = detect_tritangent(f, 5)
    chartC = [l for l in res.lines if l.chart == "C"]
    assert len(chartC) == 1 and chartC[0].split_type == "nonsplit"


# --- brute force oracle -------------------------------------------------------------


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_tritangent(sextic("x^6 + y^6 + z^6"), 101, 2)


def test_fermat_mod_3_tangents_to_conic():
    f = sextic("x^6 + y^6 + z^6")
    # mod 3 the form is q^3 with q = x^2 + y^2 + z^2, so a line is tritangent
    # iff it is tangent to the conic q = 0: a positive-dimensional family
    assert detect_tritangent(f, 3).degenerate
    F = GF(3)
    tangent = []
    for chart, a, b in [("A", a, b) for a in range(3) for b in range(3)] + \
            [("B", a, None) for a in range(3)] + [("C", None, None)]:
        # oracle: q restricted to the line has vanishing discriminant
        q = restrict_to_line(sextic("x^2 + y^2 + z^2"), chart, a, b, F)
        c0, c1, c2 = (q[i] for i in range(3))
        if (c1 * c1 - 4 * c0 * c2) % 3 == 0:
            tangent.append((chart, a, b))
    brute = brute_force_tritangent(f, 3, 1)
    assert {(l.chart, l.a, l.b) for l in brute} == set(tangent)
    assert len(tangent) == 4


# --- chart coverage and Galois stability -------------------------------------------


def random_form(ring, deg, rng, p):
    from itertools import product

    monos = [e for e in product(range(deg + 1), repeat=3) if sum(e) == deg]
    return ring.from_terms([(m, rng.randrange(p)) for m in monos])


def projective(form, F):
    """Linear form scaled so its first nonzero coefficient is 1."""
    lead = next(c for c in form if not F.is_zero(c))
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in form)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_planted_line_found_in_one_chart(p):
    rng = random.Random(p)
    F = GF(p)
    R = PolyRing(XYZ, F)
    x, y, z = R.gens()
    planted = [(z - x * 2 - y * 3, (2, 3, p - 1)), (y - x * 4, (4, p - 1, 0)), (x, (1, 0, 0))]
    found = 0
    for form, coeffs in planted:
        target = projective(tuple(F(c) for c in coeffs), F)
        for _ in range(3):
            g = random_form(R, 3, rng, p)
            h = random_form(R, 5, rng, p)
            res = detect_tritangent(g * g + form * h, p, bound=1)
            if res.degenerate:
                continue
            hits = [l for l in res.lines if projective(l.linear_form(), F) == target]
            assert len(hits) == 1
            found += 1
    assert found >= 6


@pytest.mark.parametrize("p", [3, 5, 7])
def test_galois_stability(p):
    rng = random.Random(100 + p)
    F = GF(p)
    R = PolyRing(XYZ, F)
    seen_higher = 0
    for _ in range(25):
        f = random_form(R, 6, rng, p)
        res = detect_tritangent(f, p, bound=3)
        if res.degenerate:
            continue
        keys = {l.key() for l in res.lines}
        for l in res.lines:
            assert l.frobenius().key() in keys
            seen_higher += l.field_degree > 1
        for orbit in galois_orbits(res.lines):
            assert len(orbit) == orbit[0].field_degree
    assert seen_higher > 0


# --- candidate primes: the mechanism on a toy ideal ---------------------------------


def test_candidate_prototype():
    R = PolyRing(("x",), QQ)
    I = Ideal([R.parse("x - 1"), R.parse("x - 4")], R)
    cands = ideal_candidate_primes(I, [(("x",), "normal"), (("x",), "sugar")])
    assert cands.small == [3] and cands.large == [] and cands.unresolved == []


def test_candidate_requires_unit_ideal():
    R = PolyRing(("x", "y"), QQ)
    I = Ideal([R.parse("x - 1"), R.parse("y^2 - 2")], R)
    with pytest.raises(MethodInapplicable):
        ideal_candidate_primes(I, [(("x", "y"), "normal"), (("y", "x"), "sugar")])


def test_refine_splits_along_hints():
    p, q = 1000003, 1000033
    r = 10**12 + 39  # prime
    c = CandidatePrimes([3], [], [p * q * r])
    assert c.refine([]).unresolved == [p * q * r]
    # a non-divisor changes nothing; a divisor splits, and the composite cofactor stays unresolved
    assert c.refine([7919]).unresolved == [p * q * r]
    split = c.refine([r])
    assert split.large == [r] and split.unresolved == [p * q]
    assert split.runs["factor_hints"] == [str(r)]
    done = c.refine([r, p])
    assert done.large == sorted([p, q, r]) and done.unresolved == [] and done.small == [3]
    # a composite hint cannot promote a composite piece
    assert c.refine([p * q]).unresolved == [p * q]
