"""The rational Blanchfield pairing on the 9_46 Alexander module.

Builds the module from the Seifert matrix, evaluates the pairing on basis
classes, enumerates the submodule lattice, and classifies each submodule as
isotropic and/or a metabolizer.  These self-annihilating submodules are what
the sliceness obstructions quantify over.
"""

from concord import (
    K9_46,
    TREFOIL,
    blanchfield_pair,
    class_in_quotient,
    cyclic_generator,
    is_isotropic,
    is_metabolizer,
    module_from_seifert,
    orthogonal,
    submodule_lattice,
    submodule_spanned_by,
)
from concord.rings import LaurentPoly

E1 = (LaurentPoly.const(1), LaurentPoly.zero())
E2 = (LaurentPoly.zero(), LaurentPoly.const(1))


def main():
    m = module_from_seifert(K9_46)
    print("Alexander module of 9_46")
    print(f"  order: {m.order}")
    print(f"  square-free: {m.square_free}")
    print(f"  cyclic generator: {cyclic_generator(m)}")
    print()

    print("Blanchfield pairing on the basis classes (values in Q(t)/Q[t,1/t]):")
    for name_x, x in (("e1", E1), ("e2", E2)):
        for name_y, y in (("e1", E1), ("e2", E2)):
            print(f"  pair({name_x}, {name_y}) = {blanchfield_pair(m, x, y)}")
    print()

    print("Submodule lattice (one submodule per monic divisor of the order):")
    for sub in submodule_lattice(m):
        flags = []
        if is_isotropic(m, sub):
            flags.append("isotropic")
        if is_metabolizer(m, sub):
            flags.append("metabolizer")
        print(f"  {sub}: orthogonal = {orthogonal(m, sub)}"
              + (f"  [{', '.join(flags)}]" if flags else ""))
    print()

    print("Spans of the basis classes:")
    print(f"  span(e1) = {submodule_spanned_by(m, [E1])}")
    print(f"  span(e2) = {submodule_spanned_by(m, [E2])}")
    print()

    # class_in_quotient reports where a class lands in the quotient by a
    # submodule: 0 means it dies there.
    P = submodule_spanned_by(m, [E1])
    print(f"  e1 in module/{P}: {class_in_quotient(m, E1, P)}")
    print(f"  e2 in module/{P}: {class_in_quotient(m, E2, P)}")
    print()

    # Genus-one comparison: the trefoil module is cyclic of irreducible
    # order, so the only proper submodule is zero and nothing metabolizes.
    mt = module_from_seifert(TREFOIL)
    print(f"trefoil module order: {mt.order}")
    for sub in submodule_lattice(mt):
        print(f"  {sub}: metabolizer = {is_metabolizer(mt, sub)}")


if __name__ == "__main__":
    main()
