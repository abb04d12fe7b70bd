"""Locally nilpotent derivations and the one-parameter flows they generate."""

from fractions import Fraction

from sepvar import (
    Derivation,
    Point,
    Ring,
    act_on_point,
    exp_action,
    local_slice,
    orbit_decide,
    orbit_membership_exact,
    verify_locally_nilpotent,
)


def main():
    R = Ring(["x0", "x1", "x2"])
    D = Derivation(R, {"x1": R.parse("x0"), "x2": R.parse("x1")})
    print("derivation:", D)

    wit = verify_locally_nilpotent(D)
    print("nilpotency witness (steps to kill each generator):", wit.steps)

    # the flow is polynomial in the group parameter
    print("exp(tD) x2 =", exp_action(D, R.parse("x2")))
    f = R.parse("2*x0*x2 - x1^2")
    print("exp(tD) applied to an invariant:", exp_action(D, f))

    p = Point([Fraction(1), Fraction(0), Fraction(0)])
    q = act_on_point(D, Fraction(3, 2), p)
    print("flowing", p, "for t = 3/2 gives", q)

    # orbit questions are decided exactly, given a local slice
    slc = local_slice(D, R.parse("x1"))
    dec = orbit_decide(D, slc, p, q)
    print("same orbit?", dec.kind, "at t =", dec.t)

    r = Point([Fraction(1), Fraction(0), Fraction(5)])
    dec2 = orbit_decide(D, slc, p, r)
    print("p vs a separated point:", dec2.kind, "witness", str(dec2.witness))

    mem = orbit_membership_exact(D, p, q)
    print("exact membership re-check:", mem.in_orbit, "t =", mem.t)


if __name__ == "__main__":
    main()
