"""The triangular family: shift action, invariants, slices, pivot values."""

from sepvar import (
    binomial_sum,
    invariant_f,
    lemma_b_value,
    matrix_M,
    slice_s,
    weitzenbock,
)


def main():
    action = weitzenbock(6)
    D = action.derivation
    print("action on 7 variables:", D)

    # one invariant per weight class, each killed exactly
    for m in range(4):
        f = invariant_f(6, m)
        print("f_%d = %s" % (m, f))
        assert D.apply(f).is_zero()
    print("all four lie in the kernel")

    # slices map onto the invariants one degree up
    for m in range(3):
        s = slice_s(6, m)
        print("s_%d = %s, D s_%d = f_%d" % (m, s.s, m, m))
        assert D.apply(s.s) == invariant_f(6, m)

    # the factorial matrices behind the curve construction are never singular
    A = matrix_M(2, 6)
    print("factorial matrix for n = 6:")
    for i in range(A.rows):
        print("  ", [str(c) for c in A.row(i)])
    print("determinant:", A.det())

    # the pivot value alternates between 2 and 0 with the parity of m
    print("pivot values:", [str(lemma_b_value(m)) for m in range(1, 7)])

    # and the alternating binomial identity that drives the telescoping
    lhs, rhs = binomial_sum(6, 3, 4)
    print("binomial identity at (6, 3, 4):", lhs, "=", rhs)


if __name__ == "__main__":
    main()
