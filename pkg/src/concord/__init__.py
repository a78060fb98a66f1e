"""Exact-arithmetic knot concordance invariants.

Zero-order invariants (Alexander polynomial, Arf, Levine-Tristram signature
profile, the integrated signature rho0) from rational Seifert matrices; the
rational Blanchfield linking form with its submodule lattice; satellite
infection expressions with symbolic first-order signature ledgers; and
obstruction checks that emit replayable certificates.  All computation is in
exact rational arithmetic -- the only approximations are certified interval
enclosures, and those carry their error bounds.
"""

from .intervals import RatInterval, simplest_rational
from .rings import CirclePoint, GaussRational, LaurentPoly, hermitian_signature
from .seifert import (
    DEFAULT_TOL,
    FIGURE_EIGHT,
    K9_46,
    TREFOIL,
    UNKNOT,
    AtOne,
    AtRootOfAlexander,
    Rho0Result,
    SeifertMatrix,
    SignatureProfile,
    alexander_polynomial,
    arf,
    connected_sum,
    fox_milnor_test,
    lt_signature,
    mirror,
    rho0,
    signature_profile,
)
from .blanchfield import (
    AlexanderModule,
    BlanchfieldValue,
    NotCyclic,
    NotSquareFree,
    Submodule,
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
from .infection import (
    FIG8_DOUBLING,
    R946_DOUBLING,
    Atom,
    FirstOrderSignatureSet,
    FosEntry,
    Infect,
    KnotExpr,
    LedgerValue,
    MissingSite,
    RhoAtom,
    RhoLedger,
    Site,
    SiteNotSeifertDisjoint,
    SolvLevel,
    Sum,
    Template,
    UnknownSite,
    UnsupportedGenus,
    arf_of,
    as_expr,
    evaluate,
    first_order_signatures,
    infect,
    iterate_operator,
    rho0_atom,
    rho0_multiplicity_bound,
    rho0_of,
    rho1_atom,
    rho_sub_atom,
    seifert_of,
    solvability_lower_bound,
)
from .obstruction import (
    CONDITIONAL,
    CONSISTENT,
    OBSTRUCTED,
    RHO1_9_46,
    Assignment,
    HypothesisFailed,
    Verdict,
    check_doubling_tower,
    check_first_order_signatures,
    check_infinite_order,
    check_iterated_double,
    check_torsion,
    doubling_tower_constant,
    independence_check,
    verify_certificate,
)
from .catalog import Catalog, ParseError, ValidationError, load, loads

__version__ = "0.1.0"
