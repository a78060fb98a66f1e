"""Sliceness and infinite-order obstruction verdicts with replayable
certificates.

Each check returns OBSTRUCTED, CONSISTENT, or CONDITIONAL.  Unknown
analytic constants (the signature-average bounds C, C', and the set
membership constant D) stay symbolic: verdicts that depend on them come
back CONDITIONAL with the exact constraint listed.  Every verdict carries
a certificate that verify_certificate can re-derive.
"""

from fractions import Fraction

from concord import (
    FIG8_DOUBLING,
    R946_DOUBLING,
    RHO1_9_46,
    TREFOIL,
    UNKNOT,
    Assignment,
    RhoLedger,
    as_expr,
    check_doubling_tower,
    check_first_order_signatures,
    check_infinite_order,
    check_iterated_double,
    check_torsion,
    doubling_tower_constant,
    first_order_signatures,
    independence_check,
    infect,
    iterate_operator,
    rho0_atom,
    verify_certificate,
)


def show(label, verdict):
    print(f"--- {label}")
    print(verdict)
    print(f"    certificate replays: {verify_certificate(verdict)}")
    print()


def main():
    fig8_tt = infect(FIG8_DOUBLING, {"a": TREFOIL, "b": TREFOIL})
    J1 = iterate_operator(R946_DOUBLING, 1, TREFOIL)
    J2 = iterate_operator(R946_DOUBLING, 2, TREFOIL)

    # First-order signatures: all entries certified nonzero => obstructed.
    show("first-order signatures, fig8 doubling of the trefoil",
         check_first_order_signatures(fig8_tt))
    show("first-order signatures, J_1(unknot) (honestly slice)",
         check_first_order_signatures(iterate_operator(R946_DOUBLING, 1, UNKNOT)))
    show("first-order signatures, J_1(trefoil) (hinges on rho1)",
         check_first_order_signatures(J1))

    # Pinning rho1(9_46) resolves the conditional either way.
    show("same, with rho1(9_46) := 0 assigned",
         check_first_order_signatures(J1, Assignment({RHO1_9_46: Fraction(0)})))

    # Twice-iterated doubles: membership of rho0 in {0, D}.
    show("iterated double, rho0 = -4/3, rho1 unassigned",
         check_iterated_double(Fraction(-4, 3)))
    show("iterated double, rho0 = -4/3, rho1(9_46) := 0",
         check_iterated_double(Fraction(-4, 3),
                               Assignment({RHO1_9_46: Fraction(0)})))

    # Infinite-order towers: |rho0(seed)| against the constant C.
    show("tower J_2(trefoil) without a value for C",
         check_infinite_order(J2))
    show("tower J_2(trefoil) with C := 1",
         check_infinite_order(J2, bound=Fraction(1)))

    # The sharpened tower bound: constant (m^n - 1)/(m - 1) * C'.
    towers = (R946_DOUBLING,) * 3
    const = doubling_tower_constant(towers, unit_bound=Fraction(1))
    print(f"tower constant for three 2-site levels at C' = 1: {const}")
    show(f"seed rho0 exactly at the constant ({const})",
         check_doubling_tower(towers, UNKNOT, k_rho0=Fraction(const),
                              unit_bound=Fraction(1)))
    show("seed rho0 just above the constant",
         check_doubling_tower(towers, UNKNOT,
                              k_rho0=Fraction(const) + Fraction(1, 10 ** 9),
                              unit_bound=Fraction(1)))

    # Torsion: odd multiples die on the Arf invariant, even multiples feed
    # a figure-eight outer tower.
    fig8_uu = infect(FIG8_DOUBLING, {"a": UNKNOT, "b": UNKNOT})
    show("3 * (fig8 doubling): Arf obstruction", check_torsion(fig8_uu, 3))
    show("2 * (fig8 doubling), |rho0| = 100, C' = 1",
         check_torsion(fig8_uu, 2, k_rho0=Fraction(100),
                       unit_bound=Fraction(1)))

    # Linear independence of signature ledgers over Q.
    ledgers = [first_order_signatures(e).entries[0].ledger for e in (J1, J2)]
    target = RhoLedger.of_atom(rho0_atom(as_expr(TREFOIL)))
    rank, hit = independence_check(ledgers, target)
    print(f"ledger family rank: {rank}; some combination reaches "
          f"rho0(trefoil): {hit}")


if __name__ == "__main__":
    main()
