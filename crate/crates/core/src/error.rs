use thiserror::Error;

/// Errors raised while building or validating algebraic structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order relation has a cycle through `{0}`")]
    Cycle(String),
    #[error("not a lattice: `{0}` and `{1}` have no join")]
    NoJoin(String, String),
    #[error("not a lattice: `{0}` and `{1}` have no meet")]
    NoMeet(String, String),
    #[error("map table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("index {0} is out of range")]
    OutOfRange(usize),
    #[error("map is not join-preserving: f({x} ∨ {y}) ≠ f({x}) ∨ f({y})")]
    NotJoinPreserving { x: String, y: String },
    #[error("map does not send bottom to bottom")]
    BottomNotPreserved,
    #[error("multiplication is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("multiplication does not distribute over joins: {a}·({b} ∨ {c}) ≠ {a}·{b} ∨ {a}·{c}")]
    NotLeftDistributive { a: String, b: String, c: String },
    #[error("multiplication does not distribute over joins: ({b} ∨ {c})·{a} ≠ {b}·{a} ∨ {c}·{a}")]
    NotRightDistributive { a: String, b: String, c: String },
    #[error("multiplication by bottom is not bottom: {0}")]
    ZeroNotAbsorbing(String),
    #[error("declared unit `{0}` is not neutral")]
    NotNeutral(String),
    #[error("quantale is not unital")]
    NotUnital,
    #[error("no cyclic dualizing element is designated")]
    NoDualizer,
    #[error("`{element}` is not a cyclic dualizing element")]
    NotGirard { element: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A size limit was hit before an enumeration started.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub needed: u128,
    pub limit: u128,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
