import random
from fractions import Fraction

import pytest
import sympy

from sepvar import (
    Budget,
    ContainmentCertificate,
    GBTimeout,
    GrevLex,
    GroebnerBasis,
    Ideal,
    Lex,
    Ring,
    buchberger,
    dimension,
    dump_ideal,
    eliminate,
    graph_ideal,
    invariant_f,
    krull_dimension,
    load_ideal,
    normal_form,
    parse_ideal_text,
    product_setup,
    radical_member,
    save_ideal,
    spolynomial,
    variety_contained,
    weitzenbock,
)
from sepvar.errors import EmptyVarietyError, ParseError


def _setup(n):
    base = weitzenbock(n).ring
    left = tuple("x%d" % i for i in range(n + 1))
    right = tuple("y%d" % i for i in range(n + 1))
    return product_setup(base, left, right)


@pytest.fixture(scope="module")
def graph2():
    D = weitzenbock(2)
    setup = _setup(2)
    return setup, graph_ideal(D.derivation, setup)


def test_buchberger_examples():
    R = Ring(["x"], Lex())
    x = R.var("x")
    gb = buchberger(Ideal(R, [x ** 2 - 1, x - 1]), Lex())
    assert gb.polys == (x - 1,)

    gb1 = buchberger(Ideal(R, [R.one() * 3]))
    assert gb1.is_unit() and gb1.polys == (R.one(),)

    Re = Ring(["x0", "x1", "y0", "y1", "t"])
    Re = Ring(Re.names, Re.eliminating(["t"]))
    I = Ideal.from_strings(Re, ["y0 - x0", "y1 - x1 - t*x0"])
    gb2 = buchberger(I)
    strs = {str(p) for p in gb2.polys}
    assert "x0 - y0" in strs
    assert any("t" in p.support() for p in gb2.polys)


def test_buchberger_reduced_invariant():
    # pairwise: no term of one element divisible by another's lead
    R = Ring(["x", "y", "z"])
    gb = buchberger(Ideal.from_strings(R, ["x^2 + y", "x*y + z", "y^2 - z"]))
    leads = gb.lead_monomials()
    for i, p in enumerate(gb.polys):
        assert p.lead_coeff(gb.order) == 1
        for m, _ in p.items():
            for j, lm in enumerate(leads):
                if i != j:
                    assert not all(a >= b for a, b in zip(m, lm))
    assert gb.recheck_spolynomials()


def test_normal_form_examples(graph2):
    R = Ring(["x0", "x1", "x2"])
    x0, x1, x2 = R.gens()
    gb = buchberger(Ideal(R, [x1]))
    assert normal_form(x1 ** 2, gb).is_zero()
    assert normal_form(x0 * x2, gb) == x0 * x2

    setup, G = graph2
    delta_f1 = setup.delta(invariant_f(2, 1))
    assert G.groebner().normal_form(delta_f1).is_zero()


def test_radical_member_examples():
    R = Ring(["x", "y"])
    x, y = R.gens()
    assert radical_member(x, Ideal(R, [x ** 2])) is True
    assert radical_member(y, Ideal(R, [x])) is False

    R5 = weitzenbock(5).ring
    fs = [invariant_f(5, m) for m in range(3)]
    assert radical_member(R5.var("x0"), Ideal(R5, fs)) is True


def test_variety_contained_examples(graph2):
    R = Ring(["x", "y"])
    x, y = R.gens()
    cert = variety_contained(Ideal(R, [x, y]), Ideal(R, [x]))
    assert isinstance(cert, ContainmentCertificate) and cert.holds
    assert cert.records == [{"generator": "x", "method": "normal_form", "member": True}]

    cert2 = variety_contained(Ideal(R, [x]), Ideal(R, [x, y]))
    assert not cert2.holds and cert2.offending == y
    assert any(r["method"] == "normal_form_linear_prime" for r in cert2.records)

    setup, G = graph2
    Rp = setup.product
    M21 = Ideal.from_strings(Rp, ["x0", "y0", "x1 + y1"])
    cert3 = variety_contained(M21, G)
    assert cert3.holds
    assert all(r["method"] == "normal_form" and r["member"] for r in cert3.records)


def test_eliminate_examples():
    R = Ring(["x0", "x1", "y0", "y1", "t"])
    I = Ideal.from_strings(R, ["y0 - x0", "y1 - x1 - t*x0"])
    out = eliminate(I, ["t"])
    assert out.ring.names == ("x0", "x1", "y0", "y1")
    assert out.gens == (out.ring.parse("x0 - y0"),)

    Rz = Ring(["z", "w"])
    out2 = eliminate(Ideal(Rz, [Rz.var("z")]), ["z"])
    assert out2.gens == ()

    out3 = eliminate(I, [])
    gb = I.groebner(GrevLex())
    assert set(out3.gens) == set(gb.polys)


def test_eliminate_monotone_random():
    rng = random.Random(5)
    R = Ring(["x", "y", "z", "w"])
    for _ in range(8):
        gens = [_random_poly(R, rng, terms=3, maxdeg=2) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        I = Ideal(R, gens)
        out = eliminate(I, ["w"])
        gb = I.groebner(GrevLex())
        for g in out.gens:
            assert "w" not in g.support()
            assert gb.normal_form(g.rename(R)).is_zero()


def test_dimension_examples():
    names = ["x%d" % i for i in range(7)] + ["y%d" % i for i in range(7)]
    Rp = Ring(names)
    gens = [Rp.var("x%d" % i) for i in range(3)]
    gens += [Rp.var("y%d" % i) for i in range(3)]
    gens.append(Rp.var("y3") - Rp.var("x3"))
    assert dimension(Ideal(Rp, gens)) == 7

    Rk = Ring(["a", "b", "c", "d", "e"])
    res = krull_dimension(Ideal(Rk, []))
    assert res.dim == 5 and set(res.independent) == set(Rk.names)

    G1 = graph_ideal(weitzenbock(1).derivation, _setup(1))
    assert G1.ring.nvars == 4
    assert G1.gens == (G1.ring.parse("x0 - y0"),)
    assert dimension(G1) == 3

    with pytest.raises(EmptyVarietyError):
        dimension(Ideal.from_strings(Rk, ["a", "a + 1"]))


def test_dimension_linear_sweep():
    # c independent linear forms in N variables cut dimension to N - c
    rng = random.Random(11)
    for N in range(1, 15):
        R = Ring(["v%d" % i for i in range(N)])
        for c in sorted({1, max(1, N // 2), N}):
            gens = []
            for i in range(c):
                f = R.var("v%d" % i)
                for j in range(c, N):
                    w = rng.randint(-2, 2)
                    if w:
                        f = f + R.var("v%d" % j) * w
                gens.append(f)
            assert dimension(Ideal(R, gens)) == N - c


def test_variety_mutual_containment_iff_equal_radical():
    R = Ring(["x", "y"])
    x, y = R.gens()
    pairs = [
        (Ideal(R, [x ** 2]), Ideal(R, [x]), True),
        (Ideal(R, [x ** 3, x * y]), Ideal(R, [x]), True),
        (Ideal(R, [x]), Ideal(R, [x, y]), False),
        (Ideal(R, [x * y]), Ideal(R, [x]), False),
    ]
    for I, J, same in pairs:
        fwd = variety_contained(I, J).holds
        bwd = variety_contained(J, I).holds
        assert (fwd and bwd) == same


def test_normal_form_matches_evaluation_on_linear_ideals():
    # V(x-1, y-2) is the line {x=1, y=2}; NF modulo it is substitution
    rng = random.Random(23)
    R = Ring(["x", "y", "z"])
    gb = buchberger(Ideal.from_strings(R, ["x - 1", "y - 2"]))
    for _ in range(40):
        f = _random_poly(R, rng, terms=4, maxdeg=3)
        nf = gb.normal_form(f)
        restricted = f.substitute({"x": R.one(), "y": R.const(2)})
        assert nf == restricted
        zval = Fraction(rng.randint(-5, 5))
        lhs = nf.evaluate([1, 2, zval])
        assert lhs == f.evaluate([1, 2, zval])


def test_sympy_crosscheck_random():
    rng = random.Random(7)
    R_grev = Ring(["x", "y", "z"], GrevLex())
    R_lex = Ring(["x", "y", "z"], Lex())
    syms = sympy.symbols("x y z")
    for order_name, R in (("grevlex", R_grev), ("lex", R_lex)):
        for _ in range(6):
            gens = []
            while len(gens) < 2:
                g = _random_poly(R, rng, terms=3, maxdeg=2)
                if not g.is_zero():
                    gens.append(g)
            mine = buchberger(Ideal(R, gens), R.order)
            sp_gens = [sympy.sympify(str(g).replace("^", "**")) for g in gens]
            theirs = sympy.groebner(sp_gens, *syms, order=order_name)
            mine_set = {sympy.Poly(str(p).replace("^", "**"), *syms, domain="QQ") for p in mine.polys}
            theirs_set = {sympy.Poly(e, *syms, domain="QQ") for e in theirs.exprs}
            assert mine_set == theirs_set


def test_spolynomial_definition():
    R = Ring(["x", "y"])
    x, y = R.gens()
    s = spolynomial(x ** 2 - y, x * y - 1)
    # lcm x^2*y: y*(x^2 - y) - x*(x*y - 1) = x - y^2
    assert s == x - y ** 2


def test_budget_timeout_and_propagation():
    setup = _setup(4)
    D = weitzenbock(4).derivation
    elim = setup.elim_ring
    to_left = dict(zip(D.ring.names, setup.left_names))
    tvar = elim.var(setup.param)
    gens = []
    for i, name in enumerate(D.ring.names):
        flow = elim.zero()
        tpow = elim.one()
        for term in D.taylor(name):
            flow = flow + term.rename(elim, to_left) * tpow
            tpow = tpow * tvar
        gens.append(elim.var(setup.right_names[i]) - flow)
    I = Ideal(elim, gens)

    res = buchberger(I, budget=Budget(pairs=1))
    assert isinstance(res, GBTimeout)
    assert res.completed is False
    assert res.reason
    gb_full = buchberger(I)
    for p in res.partial:
        assert gb_full.normal_form(p).is_zero()

    res2 = eliminate(I, [setup.param], budget=Budget(pairs=1))
    assert isinstance(res2, GBTimeout)


def test_ideal_file_roundtrip(tmp_path):
    R = Ring(["x0", "x1", "t"])
    I = Ideal.from_strings(R, ["x0^2 - t", "x1 + 2*t"])
    text = dump_ideal(I)
    assert text.splitlines()[0] == "ring: x0,x1,t"
    back = parse_ideal_text(text)
    assert back.ring.names == I.ring.names
    assert back.gens == I.gens

    commented = "# leading comment\nring: x0,x1,t\n\nx0^2 - t\n# mid comment\nx1 + 2*t\n"
    assert parse_ideal_text(commented).gens == I.gens

    p = tmp_path / "ideal.txt"
    save_ideal(I, str(p))
    assert load_ideal(str(p)).gens == I.gens

    with pytest.raises(ParseError) as err:
        parse_ideal_text("ring: x\nx +* 2\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_ideal_text("x + 1\n")


def _random_poly(ring, rng, terms=4, maxdeg=3):
    p = ring.zero()
    for _ in range(terms):
        mon = tuple(rng.randint(0, maxdeg) for _ in ring.names)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if c:
            p = p + ring.poly({mon: c})
    return p
