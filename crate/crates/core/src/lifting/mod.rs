//! Group algebras of finite abelian groups, realizations of diagonal braidings over them,
//! linking conditions, and the liftings A_γ of type A_n Nichols algebras: the families
//! u_{i,j}(γ) replacing e_{i,j}^N = 0, their coproducts, centrality and dimension.
//!
//! Pair indices are one-based, as in the `typea` module.

mod family;
mod group;
mod realization;
mod smash;

pub use family::{
    c_coefficient, centrality_check, check_admissibility, compute_u_family, distinguish_liftings, lift_dimension,
    lift_dimension_with_mode, recover_gamma, u_family_explicit, verify_coproduct_identity, AdmissibilityMode,
    CentralityReport, CoproductCheck, Distinction, GammaFamily, LiftCondition, LiftOutcome, LiftReport, UFamily,
    Violation,
};
pub use group::{AbelianGroup, Character, GroupAlgebraElement, GroupAlgebraTensor, GroupElement};
pub use realization::{
    validate_linking, validate_realization, LinkCondition, LinkingReport, PairLinking, PropertyCheck, Realization,
    RealizationCheck,
};
pub use smash::smash_coproduct_check;
