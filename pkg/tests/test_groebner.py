import random

import pytest

from k3sextic.arith import GF, QQ, ZZ
from k3sextic.groebner import (
    GroebnerInconclusive,
    buchberger,
    certificate_failures,
    elimination_ideal,
    is_trivial,
    normal_form,
    solve_zero_dim,
    strong_gb_Z,
)
from k3sextic.mpoly import GREVLEX, LEX, Ideal, PolyRing


def ideal(ring, *texts):
    return Ideal([ring.parse(t) for t in texts], ring)


QXY = PolyRing(("x", "y"), QQ, LEX)


def test_normal_form_examples():
    assert normal_form(QXY.parse("x^2*y"), [QXY.parse("x")], LEX).is_zero()
    assert normal_form(QXY.parse("x^2 + y^2"), [QXY.parse("x - y")], LEX) == QXY.parse("2*y^2")
    R = PolyRing(("y", "x"), QQ, LEX)
    assert normal_form(R.parse("y^4"), [R.parse("y^2 - x"), R.parse("x^2 - 1")], LEX) == R.one()


def test_normal_form_rejects_ZZ():
    R = PolyRing(("x",), ZZ)
    with pytest.raises(TypeError):
        normal_form(R.parse("x^2"), [R.parse("2*x")])


def test_buchberger_examples():
    assert buchberger(ideal(QXY, "x", "y"), LEX).basis == [QXY.parse("x"), QXY.parse("y")]
    gb = buchberger(ideal(QXY, "x^2 + y^2 - 1", "x*y - 1"), LEX)
    assert sorted(map(str, gb.basis)) == sorted(["x + y^3 - y", "y^4 - y^2 + 1"])
    assert buchberger(ideal(QXY, "1"), LEX).basis == [QXY.one()]
    assert buchberger(ideal(QXY, "x + 1", "x*y + 3*y^2 + 5"), LEX).is_unit() is False


def test_buchberger_example_oracle_mod_10007():
    """Both claimed basis elements vanish on every point of V(I) over F_10007 and vice versa."""
    F = GF(10007)
    R = PolyRing(("x", "y"), F, LEX)
    gens = [R.parse("x^2 + y^2 - 1"), R.parse("x*y - 1")]
    claimed = [R.parse("x + y^3 - y"), R.parse("y^4 - y^2 + 1")]
    pts = solve_zero_dim(Ideal(gens, R), bound=4).points
    assert pts
    for s in pts:
        K = GF(10007, s.degree)
        for g in gens + claimed:
            assert K.is_zero(g.evaluate(s.values, K))
    # and the claimed elements lie in the ideal
    gb = buchberger(Ideal(gens, R), LEX)
    assert all(normal_form(g, gb.basis, LEX).is_zero() for g in claimed)


def test_buchberger_budget_is_inconclusive():
    R = PolyRing(("x", "y", "z"), QQ, GREVLEX)
    I = ideal(R, "x^2*y - z + 1", "x*y^2 - 2*z^2 + x", "x*y*z - 3")
    with pytest.raises(GroebnerInconclusive):
        buchberger(I, GREVLEX, budget=2)


def random_ideal(ring, rng, ngens=3, nterms=4, maxdeg=3):
    """Sparse generators of total degree <= maxdeg."""
    gens = []
    n = len(ring.variables)
    for _ in range(ngens):
        terms = []
        for _ in range(nterms):
            d = rng.randint(0, maxdeg)
            cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
            exps = [b - a for a, b in zip([0] + cuts, cuts + [d])]
            terms.append((tuple(exps), rng.randint(1, 30)))
        gens.append(ring.from_terms(terms))
    return gens


def test_certificate_on_random_ideals():
    rng = random.Random(1)
    for domain in (QQ, GF(31), GF(2)):
        R = PolyRing(("x", "y", "z"), domain, GREVLEX)
        for _ in range(15):
            gb = buchberger(Ideal(random_ideal(R, rng, ngens=rng.choice([2, 3])), R), GREVLEX)
            assert certificate_failures(gb.basis) == []
            assert gb.is_unit() or gb.stats.get("certified")


def test_reduced_basis_canonical_under_permutation():
    rng = random.Random(2)
    F = GF(31)
    for order in (GREVLEX, LEX):
        R = PolyRing(("x", "y", "z"), F, order)
        for _ in range(15):
            gens = random_ideal(R, rng, ngens=3, nterms=3)
            b1 = buchberger(Ideal(gens, R), order).basis
            rng.shuffle(gens)
            b2 = buchberger(Ideal(gens, R), order).basis
            assert b1 == b2
            assert all(g.lc == 1 for g in b1)


def test_elimination_examples():
    R = PolyRing(("x", "y", "z"), QQ)
    elim, _ = elimination_ideal(ideal(R, "x - y^2", "x - z"), ["x"])
    S = elim.ring
    gb = buchberger(elim, GREVLEX)
    assert normal_form(S.parse("y^2 - z"), gb.basis).is_zero()
    elim2, _ = elimination_ideal(ideal(PolyRing(("x", "y"), QQ), "x + y"), ["x"])
    assert len(elim2) == 0


def test_elimination_soundness_on_points():
    """Generators of the eliminated ideal vanish on projections of points of V(I)."""
    F = GF(101)
    rng = random.Random(4)
    R = PolyRing(("t", "u", "v"), F)
    checked = 0
    for _ in range(10):
        gens = [R.parse("t^2 - u"), R.parse("t^3 - v")] + random_ideal(R, rng, 1, 3, 2)
        elim, _ = elimination_ideal(Ideal(gens, R), ["t"])
        # points of the twisted cubic: (t, t^2, t^3) for every t in F_101
        for t in range(101):
            pt = {"u": t * t % 101, "v": t**3 % 101}
            full = dict(pt, t=t)
            if all(g.evaluate(full) == 0 for g in gens):
                assert all(g.evaluate(pt) == 0 for g in elim.generators)
                checked += 1
        # the cubic relation itself always lies in the eliminated ideal
        S = elim.ring
        if elim.generators:
            gb = buchberger(elim, GREVLEX)
            assert normal_form(S.parse("u^3 - v^2"), gb.basis).is_zero()
    assert checked > 0


def test_is_trivial_examples():
    R = PolyRing(("x",), QQ)
    assert is_trivial(ideal(R, "x", "x + 1"))
    assert not is_trivial(ideal(R, "x^2"))


def test_denominator_log_soundness():
    """Mod a prime dividing no logged entry, the F_q basis is the reduction of the QQ basis."""
    rng = random.Random(9)
    R = PolyRing(("x", "y", "z"), QQ, GREVLEX)
    checked = 0
    for _ in range(8):
        gens = random_ideal(R, rng, ngens=2)
        gb = buchberger(Ideal(gens, R), GREVLEX, record_denominators=True)
        if gb.is_unit():
            continue
        logged = gb.denominators.distinct()
        for q in (101, 103, 107, 109, 113, 127):
            if any(n % q == 0 for n in logged):
                continue
            Fq = GF(q)
            Rq = R.with_domain(Fq)
            gq = buchberger(Ideal([g.change_ring(Rq) for g in gens], Rq), GREVLEX)
            assert gq.basis == [g.change_ring(Rq) for g in gb.basis]
            checked += 1
            break
    assert checked >= 4


def test_denominator_log_records_divisions():
    R = PolyRing(("x",), QQ)
    gb = buchberger(ideal(R, "3*x - 1", "5*x^2 + 1"), GREVLEX, record_denominators=True)
    assert gb.is_unit()
    # 3x - 1 and 5x^2 + 1 share a root mod 2 and mod 7 (x = 1 and x = 5 respectively)
    for q in (2, 7):
        assert any(n % q == 0 for n in gb.denominators.entries)


def test_solve_zero_dim_examples():
    F5 = GF(5)
    R = PolyRing(("a", "b"), F5)
    res = solve_zero_dim(ideal(R, "a - 1", "b - 2"))
    assert [(s.values["a"], s.values["b"], s.degree) for s in res.points] == [(1, 2, 1)]
    res = solve_zero_dim(ideal(R, "a^2 - 2", "b"))
    assert len(res.points) == 2 and all(s.degree == 2 for s in res.points)
    res = solve_zero_dim(ideal(R, "a^2 - 2", "b"), bound=1)
    assert res.points == [] and res.beyond_bound == 2
    assert solve_zero_dim(ideal(R, "a*b")).positive_dimensional


def test_strong_gb_examples():
    R = PolyRing(("x",), ZZ)
    assert R.parse("x") in strong_gb_Z(ideal(R, "2*x", "3*x"))
    assert sorted(map(str, strong_gb_Z(ideal(R, "2*x", "x^2")))) == ["2*x", "x^2"]
    assert sorted(map(str, strong_gb_Z(ideal(R, "x - 1", "x - 4")))) == ["3", "x - 1"]


@pytest.mark.parametrize("gens", [("2*x", "3*x"), ("2*x", "x^2"), ("x - 1", "x - 4")])
def test_strong_gb_mod_p_compatibility(gens):
    R = PolyRing(("x",), ZZ)
    I = ideal(R, *gens)
    strong = strong_gb_Z(I)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97):
        Rp = R.with_domain(GF(p))
        direct = buchberger(Ideal([g.change_ring(Rp) for g in I.generators], Rp), GREVLEX)
        via = buchberger(Ideal([g.change_ring(Rp) for g in strong], Rp), GREVLEX)
        assert direct.basis == via.basis


def test_strong_gb_rejects_fields():
    with pytest.raises(TypeError):
        strong_gb_Z(ideal(PolyRing(("x",), QQ), "x"))
