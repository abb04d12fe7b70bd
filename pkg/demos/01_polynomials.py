"""Exact polynomial arithmetic: rings, parsing, monomial orders."""

from fractions import Fraction

from sepvar import GrevLex, Lex, Ring


def main():
    R = Ring(["x", "y", "z"])
    f = R.parse("3/2*x^2*y - z^3 + 7")
    g = R.parse("x*y - 1/3")
    print("ring:", ", ".join(R.names))
    print("f     =", f)
    print("g     =", g)
    print("f*g   =", f * g)
    print("f - f =", f - f)

    # every coefficient is a Fraction, so nothing ever rounds
    c = f.coefficient((2, 1, 0))
    print("coefficient of x^2*y in f:", c, type(c).__name__)
    assert c == Fraction(3, 2)

    # the leading term depends on the order, not on the polynomial
    h = R.parse("x^2 + x*y*z")
    print("h =", h)
    for order in (GrevLex(), Lex()):
        mon = R.poly({h.lead_monomial(order): Fraction(1)})
        print("  leading monomial under %s: %s" % (order, mon))

    # substitution maps into any ring that carries the unbound names
    S = Ring(["x", "y", "z", "t"])
    shifted = f.substitute({"x": S.parse("x + t")})
    print("f with x -> x + t:", shifted)


if __name__ == "__main__":
    main()
