import dataclasses
import random
from fractions import Fraction

import pytest

from sepvar import (
    Ring,
    binomial_sum,
    containment_curve_certificate,
    curve_construct,
    curve_verify,
    graph_ideal,
    ideal_I,
    ideal_I_radical_check,
    invariant_f,
    krull_dimension,
    lemma_b_value,
    m_set_ideal,
    matrix_M,
    product_setup,
    sep_presentation,
    slice_s,
    variety_contained,
    weitzenbock,
)
from sepvar.errors import ShapeError


def test_weitzenbock_shape():
    act = weitzenbock(2)
    D = act.derivation
    assert D.image("x0").is_zero()
    assert D.image("x1") == act.ring.var("x0")
    assert D.image("x2") == act.ring.var("x1")
    assert (act.m, act.m_prime) == (1, 0)
    assert act.derivation.is_verified()
    with pytest.raises(ValueError):
        weitzenbock(0)


def test_invariant_f_examples():
    R2 = weitzenbock(2).ring
    assert invariant_f(2, 1) == R2.parse("x0*x2 - 1/2*x1^2")
    assert invariant_f(2, 0) == R2.var("x0")
    R4 = weitzenbock(4).ring
    assert invariant_f(4, 2) == R4.parse("x0*x4 - x1*x3 + 1/2*x2^2")
    for n in range(1, 7):
        D = weitzenbock(n).derivation
        for m in range(n // 2 + 1):
            assert D.apply(invariant_f(n, m)).is_zero()
    with pytest.raises(ValueError):
        invariant_f(2, 2)
    with pytest.raises(ValueError):
        invariant_f(3, -1)


def _slice_oracle(n, m):
    # independent closed form: s_0 = x1, else
    # s_m = sum_k (-1)^k (2(m-k)+1)/2 * x_k x_{2m+1-k}
    R = weitzenbock(n).ring
    if m == 0:
        return R.var("x1")
    s = R.zero()
    for k in range(m + 1):
        coeff = Fraction(2 * (m - k) + 1, 2)
        if k % 2 == 1:
            coeff = -coeff
        s = s + R.var("x%d" % k) * R.var("x%d" % (2 * m + 1 - k)) * coeff
    return s


def test_slice_s_against_closed_form():
    R3 = weitzenbock(3).ring
    assert slice_s(3, 1).s == R3.parse("3/2*x0*x3 - 1/2*x1*x2")
    for n in range(1, 11):
        for m in range((n - 1) // 2 + 1):
            slc = slice_s(n, m)
            assert slc.s == _slice_oracle(n, m)
            assert slc.ds == invariant_f(n, m)
    with pytest.raises(ValueError):
        slice_s(2, 1)
    with pytest.raises(ValueError):
        slice_s(3, -1)


def test_ideal_I_and_radical_identity():
    I5 = ideal_I(5)
    assert [str(g) for g in I5.gens] == ["x0", "x1", "x2"]

    assert [str(g) for g in ideal_I(2).gens] == ["x0"]
    I3 = ideal_I(3)
    assert I3.groebner().normal_form(invariant_f(3, 1).rename(I3.ring)).is_zero()

    for n in range(1, 6):
        rep = ideal_I_radical_check(n)
        assert rep["ok"], rep
        assert all(r["in_radical"] is True for r in rep["radical_memberships"])
        assert all(r["remainder"] == "0" for r in rep["reductions"])
    rep3 = ideal_I_radical_check(3)
    assert {r["generator"] for r in rep3["radical_memberships"]} == {"x0", "x1"}


def test_sep_presentation_examples():
    c3 = sep_presentation(3)
    assert [c.label for c in c3] == ["graph_closure", "base_locus_product"]
    assert c3[0].ideal is None
    assert {str(g) for g in c3[1].ideal.gens} == {"x0", "x1", "y0", "y1"}

    c6 = sep_presentation(6)
    assert c6[1].label == "m_sets_union"
    P6 = c6[1].ideal.ring
    assert set(c6[1].ideal.gens) == {
        P6.var("x0"), P6.var("x1"), P6.var("x2"),
        P6.var("y0"), P6.var("y1"), P6.var("y2"),
        P6.parse("x3^2 - y3^2"),
    }

    c4 = sep_presentation(4)
    assert c4[1].label == "m_set_2"
    P4 = c4[1].ideal.ring
    assert set(c4[1].ideal.gens) == {
        P4.var("x0"), P4.var("x1"), P4.var("y0"), P4.var("y1"),
        P4.parse("y2 - x2"),
    }


def test_m_set_ideal_examples():
    M62 = m_set_ideal(6, 2)
    assert str(M62.gens[-1]) == "-x3 + y3"
    assert krull_dimension(M62).dim == 7

    M61 = m_set_ideal(6, 1)
    assert M61.gens[-1] == M61.ring.parse("y3 + x3")

    M21 = m_set_ideal(2, 1)
    assert [str(g) for g in M21.gens] == ["x0", "y0", "x1 + y1"]

    with pytest.raises(ValueError):
        m_set_ideal(5, 1)
    with pytest.raises(ValueError):
        m_set_ideal(6, 3)


def test_matrix_M_examples():
    M02 = matrix_M(0, 2)
    assert M02.entry(0, 0) == Fraction(1, 2)

    M14 = matrix_M(1, 4)
    assert [[M14.entry(i, j) for j in range(2)] for i in range(2)] == [
        [Fraction(1, 24), Fraction(1, 6)],
        [Fraction(1, 6), Fraction(1, 2)],
    ]
    assert M14.det() == Fraction(-1, 144)

    for n in range(0, 11):
        for m in range(n // 2 + 1):
            assert matrix_M(m, n).det() != 0

    with pytest.raises(ValueError):
        matrix_M(2, 3)


def test_lemma_b_value():
    assert lemma_b_value(1) == 2
    assert lemma_b_value(2) == 0
    assert lemma_b_value(3) == 2
    for m in range(1, 11):
        assert lemma_b_value(m) == 1 - (-1) ** m
    with pytest.raises(ValueError):
        lemma_b_value(0)


def test_binomial_sum_examples():
    lhs, rhs = binomial_sum(4, 2, 2)
    assert lhs == rhs == 1
    for p in range(7):
        for q in range(p + 1):
            lhs, rhs = binomial_sum(p, q, 0)
            assert lhs == rhs
    # the instances feeding the inverse-matrix identity
    for m in range(1, 7):
        for i in range(1, m + 1):
            lhs, rhs = binomial_sum(2 * m, i - 1, m)
            assert lhs == rhs
    with pytest.raises(ValueError):
        binomial_sum(2, 3, 1)
    with pytest.raises(ValueError):
        binomial_sum(3, 1, -1)


def test_curve_hand_instance_n2():
    c = curve_construct(2, (0, 1, 0), (0, -1, 0))
    R = c.ring
    u = R.var("u")
    assert c.x == (u * -2, R.one(), R.zero())
    assert c.y == (u * -2, -R.one(), R.zero())
    assert curve_verify(c).ok


def test_curve_zero_and_odd_instances():
    c = curve_construct(3, (0, 0, 0, 0), (0, 0, 0, 0))
    assert all(p.is_zero() for p in c.x) and all(p.is_zero() for p in c.y)
    assert curve_verify(c).ok

    c3 = curve_construct(3, (0, 0, 1, 2), (0, 0, 5, 7))
    rep = curve_verify(c3)
    assert rep.ok and not rep.mismatches


def test_curve_even_instance_n6():
    a = (0, 0, 0, 1, 1, 0, 0)
    b = (0, 0, 0, -1, 5, Fraction(7, 3), -2)
    c = curve_construct(6, a, b)
    rep = curve_verify(c)
    assert rep.ok
    zero_sub = {c.param: c.ring.zero()}
    assert tuple(p.substitute(zero_sub) for p in c.x) == c.a
    assert tuple(p.substitute(zero_sub) for p in c.y) == c.b


def test_curve_shape_errors():
    with pytest.raises(ShapeError, match="3 coordinates"):
        curve_construct(2, (0, 1), (0, -1, 0))
    with pytest.raises(ShapeError, match="x0"):
        curve_construct(2, (1, 0, 0), (0, 0, 0))
    with pytest.raises(ShapeError, match="y0"):
        curve_construct(2, (0, 1, 0), (1, -1, 0))
    with pytest.raises(ShapeError, match="pivot"):
        curve_construct(2, (0, 1, 0), (0, 1, 0))
    with pytest.raises(ShapeError, match="y1"):
        curve_construct(3, (0, 0, 1, 0), (0, 1, 0, 0))


def test_curve_verify_rejects_tampering():
    c = curve_construct(4, (0, 0, 2, 3, 4), (0, 0, 2, 1, 5))
    bad_y = list(c.y)
    bad_y[4] = bad_y[4] + c.ring.one()
    bad = dataclasses.replace(c, y=tuple(bad_y))
    rep = curve_verify(bad)
    assert not rep.ok
    assert not rep.flow_identity
    assert any("coordinate 4" in msg for msg in rep.mismatches)


def test_curve_random_instances():
    rng = random.Random(47)
    for n in range(2, 9):
        m, mp = n // 2, (n - 1) // 2
        for _ in range(10):
            a = [Fraction(0)] * (n + 1)
            b = [Fraction(0)] * (n + 1)
            for i in range(m, n + 1):
                a[i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            a[: mp + 1] = [Fraction(0)] * (mp + 1)
            if n % 2 == 0:
                b[m] = a[m] if m % 2 == 0 else -a[m]
            for i in range(m + 1, n + 1):
                b[i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            assert curve_verify(curve_construct(n, a, b)).ok


def test_containment_curve_certificate_all_small_n():
    for n in range(1, 9):
        cert = containment_curve_certificate(n)
        assert cert["ok"], cert["verification"]["mismatches"]
        m = n // 2
        if n % 2 == 1:
            assert cert["target"] == "base_locus_product"
        elif m % 2 == 1:
            assert cert["target"] == "m_set_1"
        else:
            assert cert["target"] == "m_set_2"


def _graph(n):
    act = weitzenbock(n)
    left = tuple("x%d" % i for i in range(n + 1))
    right = tuple("y%d" % i for i in range(n + 1))
    setup = product_setup(act.ring, left, right)
    return graph_ideal(act.derivation, setup)


def test_boundary_set_parity_against_graph4():
    G4 = _graph(4)
    good = variety_contained(m_set_ideal(4, 2), G4)
    assert good.holds
    crossed = variety_contained(m_set_ideal(4, 1), G4)
    assert not crossed.holds


def test_decompose_n2(decompositions):
    rep = decompositions(2)
    assert rep.graph_status == "computed"
    assert len(rep.components) == 1
    assert rep.components[0].dim == 4
    assert [c.label for c in rep.contained] == ["m_set_1", "m_set_2"]
    for c in rep.contained:
        assert c.status == "contained in graph closure"
        assert c.certificates["reduction"]["holds"]
    assert rep.contained[0].certificates["curve"]["ok"]
    assert rep.separating_algebra["polynomial_separating_algebra_exists"] is None


def test_decompose_n4(decompositions):
    rep = decompositions(4)
    assert rep.graph_status == "computed"
    assert len(rep.components) == 1
    assert rep.components[0].dim == 6
    assert [c.label for c in rep.contained] == ["m_set_2"]
    cert = rep.contained[0].certificates
    assert cert["reduction"]["holds"]
    assert cert["curve"]["ok"] and cert["curve"]["target"] == "m_set_2"


def test_decompose_odd_n(decompositions):
    for n in (1, 3):
        rep = decompositions(n)
        assert len(rep.components) == 1
        assert rep.components[0].dim == n + 2
        assert [c.label for c in rep.contained] == ["base_locus_product"]
        assert rep.contained[0].certificates["reduction"]["holds"]
        assert rep.contained[0].certificates["curve"]["ok"]
