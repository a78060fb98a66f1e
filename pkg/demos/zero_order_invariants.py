"""Classical invariants from Seifert matrices, all in exact arithmetic.

Walks through the four catalog knots: Alexander polynomial, Arf invariant,
the full Levine-Tristram signature profile, the certified signature average
rho0, and the Fox-Milnor factorization test.
"""

from fractions import Fraction

from concord import (
    FIGURE_EIGHT,
    K9_46,
    TREFOIL,
    UNKNOT,
    alexander_polynomial,
    arf,
    connected_sum,
    fox_milnor_test,
    lt_signature,
    mirror,
    rho0,
    signature_profile,
)
from concord.rings import CirclePoint

KNOTS = [UNKNOT, TREFOIL, FIGURE_EIGHT, K9_46]


def describe(V):
    print(f"== {V.name or 'unnamed'} (genus {V.genus}) ==")
    print(f"  Seifert matrix: {V.entries}")
    print(f"  Alexander polynomial: {alexander_polynomial(V)}")
    print(f"  Arf invariant: {arf(V)}")

    profile = signature_profile(V)
    print(f"  signature jumps on the upper semicircle: {profile.jump_count}")
    print(f"  signature arc values: {profile.arc_values}")
    print(f"  signature at omega = -1: {profile.value_at_minus_one}")

    r = rho0(V, tol=Fraction(1, 10 ** 9))
    print(f"  rho0 (signature average over the circle): {r}")
    print(f"  Fox-Milnor factorization exists: {fox_milnor_test(V)}")
    print()


def main():
    for V in KNOTS:
        describe(V)

    # Signatures at specific circle points.  CirclePoint(s) is the point
    # with tangent half-angle s; s = None is omega = -1.
    print("trefoil signature at omega = i:", lt_signature(TREFOIL, CirclePoint(1)))
    print("trefoil signature at omega = -1:",
          lt_signature(TREFOIL, CirclePoint(None)))

    # rho0 negates under mirror image and adds under connected sum; a knot
    # summed with its mirror passes Fox-Milnor (it is slice).
    K = connected_sum(TREFOIL, FIGURE_EIGHT)
    print("\nrho0(trefoil # figure-eight):", rho0(K))
    print("rho0(mirror):", rho0(mirror(K)))
    ribbon = connected_sum(K, mirror(K))
    print("Fox-Milnor on K # mirror(K):", fox_milnor_test(ribbon))


if __name__ == "__main__":
    main()
