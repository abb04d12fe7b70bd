"""Groebner bases with certificates: reduction, membership, elimination.

Every basis comes back reduced and monic, so equal ideals print the same
generators regardless of how they were entered.
"""

from sepvar import (
    Budget,
    GrevLex,
    Ideal,
    Lex,
    Ring,
    dimension,
    eliminate,
    radical_member,
    variety_contained,
)


def main():
    R = Ring(["x", "y"])
    I = Ideal.from_strings(R, ["x^2 + y^2 - 1", "x - y"])
    gb = I.groebner(GrevLex(), Budget(seconds=10))
    print("generators:", [str(g) for g in I.gens])
    print("reduced basis:", [str(g) for g in gb.polys])
    print("pairs considered:", gb.stats.pairs_generated)

    # membership is a normal-form computation with a zero remainder
    member = R.parse("x^3 - x*y^2 - x^2 + y^2")
    print("normal form of a member:", gb.normal_form(member))
    print("normal form of x:", gb.normal_form(R.parse("x")))

    # radical membership catches elements that only a power reaches
    J = Ideal.from_strings(R, ["x^2"])
    print("x in radical of (x^2):", radical_member(R.parse("x"), J, Budget(seconds=10)))

    # projections are elimination ideals under a block order
    S = Ring(["t", "x", "y"])
    circle_param = Ideal.from_strings(
        S, ["x*t^2 + x - 2*t", "y*t^2 + y - t^2 + 1"]
    )
    shadow = eliminate(circle_param, ["t"], Budget(seconds=10))
    print("eliminating the parameter:", [str(g) for g in shadow.gens])
    print("dimension of the image curve:", dimension(shadow, Budget(seconds=10)))

    # containment of varieties, certified generator by generator
    A = Ideal.from_strings(R, ["x", "y"])
    B = Ideal.from_strings(R, ["x"])
    cert = variety_contained(A, B, Budget(seconds=10))
    print("V(x, y) inside V(x):", cert.holds)
    for rec in cert.records:
        print("  %(generator)s via %(method)s: member=%(member)s" % rec)


if __name__ == "__main__":
    main()
