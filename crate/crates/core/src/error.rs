use thiserror::Error;

use crate::transfer::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order {0} exceeds the supported maximum of {max}", max = crate::grp::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("unknown or unsupported group: {0}")]
    UnknownGroup(String),
    #[error("map is not multiplicative: f({a}*{b}) != f({a})*f({b})")]
    NotMultiplicative { a: usize, b: usize },
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("unknown homomorphism: {0}")]
    UnknownHom(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("{0} is not a subgroup")]
    NotSubgroup(String),
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("{0} subgroups exceed the supported maximum of 128")]
    TooManySubgroups(usize),
    #[error("relation does not refine inclusion: subgroup {0} is not contained in subgroup {1}")]
    NotRefining(usize, usize),
    #[error("transfer system axiom violated: {0}")]
    Axiom(Violation),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("search budget of {0} visits exceeded")]
    BudgetExceeded(u64),
    #[error("homomorphism must be injective")]
    NotInjective,
    #[error("homomorphism must be noninjective")]
    Injective,
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("functor pairing runs in incompatible directions: {0}")]
    Pairing(String),
    #[error("materialization guard exceeded: {0} points")]
    Guard(u128),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("stabilizer is not a graph subgroup")]
    NotGraph,
    #[error("no factorization chain for ({0}, {1}) through the two factors")]
    NoChain(usize, usize),
    #[error("rewrite step budget of {0} exceeded")]
    StepBudget(u64),
    #[error("window {requested} exceeds the materialized window {available}")]
    Window { requested: usize, available: usize },
    #[error("invalid rewrite data: {0}")]
    Signature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
