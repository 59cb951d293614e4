use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("{value} is not a quadratic residue mod {p}")]
    NonResidue { value: u32, p: u32 },
    #[error("no element of order {n} in F_{p}*: {n} does not divide p-1")]
    NoSuchOrder { n: u32, p: u32 },
    #[error("matrix has determinant {det} mod {p}, expected 1")]
    NotUnimodular { det: u32, p: u32 },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("group order {order} exceeds the memory budget of {budget} elements")]
    BudgetExceeded { order: u64, budget: u64 },
    #[error("sets live over different group tables")]
    TableMismatch,
    #[error("set is not a subgroup")]
    NotASubgroup,
    #[error("element lies in H")]
    XInH,
    #[error("x^2 does not lie in H, so H together with the coset core is not symmetric")]
    XSquaredNotInH,
    #[error("element has order 2")]
    OrderTwo,
    #[error("set is not closed under negation")]
    NotCentrallyClosed,
    #[error("{kind} is not realizable in SL(2,{p}): {reason}")]
    NotRealizable {
        kind: String,
        p: u32,
        reason: String,
    },
    #[error("randomized construction gave up after {0} attempts")]
    SearchExhausted(u32),
    #[error("no suitable element x found")]
    NoneFound,
    #[error("published set interpretation mismatch: built a set of size {0}, expected 30")]
    InterpretationMismatch(u64),
    #[error("coset index {0} is out of range (need c >= 2 and c dividing |H|)")]
    BadIndex(u64),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
