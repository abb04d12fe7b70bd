"""The graph closure of a flow: pairs (p, t*p) and their vanishing ideal.

Doubling the ring, writing down the flow equations, and eliminating the
group parameter yields defining equations for the closure of the graph.
Its dimension exceeds the source dimension by exactly one.
"""

from fractions import Fraction

from sepvar import (
    Budget,
    Point,
    act_on_point,
    dimension,
    graph_ideal,
    invariant_f,
    product_setup,
    weitzenbock,
)


def main():
    action = weitzenbock(2)
    D = action.derivation
    left = tuple("x%d" % i for i in range(3))
    right = tuple("y%d" % i for i in range(3))
    setup = product_setup(D.ring, left, right)
    print("doubled ring:", ", ".join(setup.product.names))

    invs = [invariant_f(2, m) for m in range(2)]
    G = graph_ideal(D, setup=setup, budget=Budget(seconds=60), invariants=invs)
    print("graph ideal generators:")
    for g in G.gens:
        print("  ", g)

    dim = dimension(G, Budget(seconds=60))
    print("dimension:", dim, "(source has dimension 3)")

    # any pair (p, flow of p) satisfies every generator
    p = Point([Fraction(2), Fraction(-1), Fraction(1, 3)])
    q = act_on_point(D, Fraction(5), p)
    pair = setup.pair_point(p, q)
    print("sample pair on the graph:", pair)
    print("generator values there:", [str(g.evaluate(pair)) for g in G.gens])


if __name__ == "__main__":
    main()
