//! Checkable, machine-level versions of the complexity results, with
//! measured constants where the statements hide them.

mod audits;
mod bounds;
mod report;
mod seeded;

pub use audits::{
    audit_consistency, audit_hard_basis, audit_incompressibility_classical,
    audit_incompressibility_quantum, audit_upper_bound, cloning_check, concatenate,
    construct_hard_basis, invariance_gap, rotation_corpus, subadditive_restricted_audit,
    subadditivity_state, subadditivity_witness, HardBasis, CLONING_WITNESS,
};
pub use bounds::{audit_multiples, binomial, log2_big, log_binomial, multiples_bounds};
pub use report::{AuditReport, Claim, Verdict};
pub use seeded::{seeded_basis, seeded_state};
