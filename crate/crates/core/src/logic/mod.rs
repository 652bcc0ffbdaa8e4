//! Conjunction-only deduction: formulas, closure, ultrawords and checks of
//! the consequence-operator axioms.

use thiserror::Error;

mod formula;
mod operator;
mod system;
mod ultraword;

pub use formula::{Formula, FormulaSet, ParseFormulaError};
pub use operator::{
    classical_compare, closure_operator, continuity_shadow, entails, identity_operator, is_tautology, subsets,
    verify_operator_axioms, AxiomOutcome, ClassicalReport, ContinuityReport, Counterexample, OperatorAxiom,
    OperatorReport, OperatorTable, SetOperator,
};
pub use system::{axiom_consequences, closure, is_axiom, member};
pub use ultraword::{
    characterize, make_ultraword, ultimate_witness, ultraword_atoms, unfold, Characterization, Justification,
    ProofStep, ProofTrace,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("an ultraword needs at least two atoms, got {0}")]
    TooFewAtoms(usize),
    #[error("atom `{0}` appears twice")]
    DuplicateAtom(String),
    #[error("`{0}` is not a left-ordered conjunction of distinct atoms")]
    NotAnUltraword(String),
    #[error(transparent)]
    Parse(#[from] ParseFormulaError),
}
