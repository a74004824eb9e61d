//! Structure maps of the Hopf algebroid: right unit, coproduct, counit, and the
//! suites verifying invariance of `I_h`, the conjugation identity and the
//! Hopf-algebroid axioms.

mod checks;
mod coproduct;
mod right_unit;

pub use checks::{
    coassociativity_sides, conjugation_identity, conjugation_terms, coproduct_mod_in, hopf_axiom_suite,
    verify_invariance, InvariantIdeal,
};
pub use coproduct::{
    coproduct_logmatch, coproduct_t, coproducts_witt, counit_left, counit_right, CoproductRoute, CoproductSets,
};
pub use right_unit::{
    counit, eta_r_closed, eta_r_logs, eta_r_logs_of, eta_r_v, right_unit_closed, CorrectionSet, RightUnit,
    Specialization,
};
