"""Census of the separating variety for the triangular family.

For most n the separating variety is just the graph closure. The first
departure is n = 6, where a second irreducible component of smaller
dimension appears; that gap rules out any polynomial separating algebra.
Run with --full to include the n = 6 computation (about two minutes).
"""

import argparse

from sepvar import Budget, decompose


def describe(rep):
    print("n = %d" % rep.n)
    print("  graph elimination:", rep.graph_status)
    for comp in rep.components:
        print(
            "  component %-10s dim %s (expected %s): %s"
            % (comp.label, comp.dim, comp.expected_dim, comp.status)
        )
    for cand in rep.contained:
        certs = sorted(cand.certificates)
        print("  absorbed %-12s %s [%s]" % (cand.label, cand.status, ", ".join(certs)))
    sep = rep.separating_algebra
    print("  polynomial separating algebra:", sep["polynomial_separating_algebra_exists"])
    print("    reason:", sep["reason"])
    for note in rep.notes:
        print("  note:", note)
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true", help="include n = 6")
    args = ap.parse_args()

    for n in (2, 3, 4):
        describe(decompose(n, budget=Budget(seconds=300)))

    if args.full:
        describe(decompose(6, budget=Budget(seconds=900)))
    else:
        print("skipped n = 6 (pass --full to run it; about two minutes)")


if __name__ == "__main__":
    main()
