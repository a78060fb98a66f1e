"""Doubling operators, iterated infection towers, and first-order signatures.

The 9_46 doubling operator R946_op carries two infection sites (alpha, beta)
along the metabolizer generators of its base knot.  Iterating it over a seed
knot builds the J_n tower; first_order_signatures computes the resulting
signature ledgers symbolically, one per isotropic submodule.
"""

from concord import (
    FIG8_DOUBLING,
    R946_DOUBLING,
    TREFOIL,
    UNKNOT,
    arf,
    connected_sum,
    first_order_signatures,
    infect,
    iterate_operator,
    rho0_multiplicity_bound,
    rho0_of,
    seifert_of,
    solvability_lower_bound,
)


def show_fos(label, e):
    print(f"{label}: {e}")
    fs = first_order_signatures(e)
    for entry in fs.entries:
        print(f"  {entry.submodule}: {entry.ledger}")
    if fs.context:
        pairs = ", ".join(f"{a} <- {k}" for a, k in fs.context)
        print(f"  (context: {pairs})")
    print()


def main():
    print("The operator template:", R946_DOUBLING)
    print("  sites:", R946_DOUBLING.site_names)
    print()

    # A single infection: J_1(trefoil).  The ledger on the zero submodule
    # picks up rho1 of the pattern plus one rho0 term per site.
    J1 = infect(R946_DOUBLING, {"alpha": TREFOIL, "beta": TREFOIL})
    show_fos("J_1(trefoil)", J1)

    # Deeper towers: the inner layers are rationally solvable, so their
    # rho0 contributions vanish identically and only rho1 survives.
    for n in (2, 3):
        show_fos(f"J_{n}(trefoil)", iterate_operator(R946_DOUBLING, n, TREFOIL))

    # The figure-eight doubling operator of the genus-one family.
    fig8 = infect(FIG8_DOUBLING, {"a": TREFOIL, "b": TREFOIL})
    show_fos("fig8 doubling of the trefoil", fig8)

    # Infection is invisible to every zero-order invariant: the infected
    # knot shares the Seifert form data of the pattern.
    print("arf(J_1) =", arf(seifert_of(J1)), " rho0(J_1) =", rho0_of(J1))
    print()

    # Solvability levels.  An Arf-zero seed gives the full tower depth; the
    # trefoil (Arf 1) loses one level; the unknot seed is honestly slice.
    arf0 = connected_sum(TREFOIL, TREFOIL)
    print("solvability lower bounds:")
    for n in (1, 2, 4, 6):
        tower = iterate_operator(R946_DOUBLING, n, arf0)
        print(f"  J_{n}(trefoil # trefoil): level {solvability_lower_bound(tower)},"
              f" rho0 multiplicity bound {rho0_multiplicity_bound(tower)}")
    print("  J_3(trefoil):", solvability_lower_bound(
        iterate_operator(R946_DOUBLING, 3, TREFOIL)))
    print("  J_5(unknot):", solvability_lower_bound(
        iterate_operator(R946_DOUBLING, 5, UNKNOT)))


if __name__ == "__main__":
    main()
