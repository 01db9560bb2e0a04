use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: missing or malformed header, expected `p n k`")]
    BadHeader { line: usize },
    #[error("line {line}: malformed token `{token}`")]
    MalformedToken { line: usize, token: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable index {index} outside [1..{k}]")]
    VarIndexOutOfRange { index: u32, k: u32 },
    #[error("variable z{index} is declared but never used")]
    UnusedVariable { index: u32 },
    #[error("{what} {} out of range [1..{bound}]", .index + 1)]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("invalid equivalence operation: {0}")]
    InvalidOp(String),
    #[error("line {line}: malformed op script entry `{text}`")]
    MalformedOp { line: usize, text: String },
    #[error("design is not a complex orthogonal design")]
    NotCod,
    #[error("design is not a balanced complex orthogonal design")]
    NotBcod,
    #[error("balanced design needs an even column count and p = 2k (got p={p}, n={n}, k={k})")]
    BcodShape { p: usize, n: usize, k: u32 },
    #[error("column count {0} is odd; left patterns need n = 2m")]
    OddWidth(usize),
    #[error("z{var} is not in B_{var} form: {reason}")]
    NotBjCompatible { var: u32, reason: String },
    #[error("design is not in standard form")]
    NotStandardForm,
    #[error("z{to} is not reachable from z{from} through shared rows")]
    UnreachableVariable { from: u32, to: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("row {} has no complement row", .row + 1)]
    NoComplement { row: usize },
    #[error("row {} has several complement candidates: {}", .row + 1, one_based(.candidates))]
    MultipleComplements { row: usize, candidates: Vec<usize> },
    #[error("row {} mixes conjugated and plain variables", .row + 1)]
    NotConjugationSeparated { row: usize },
    #[error("row {} is all zeros", .row + 1)]
    ZeroRow { row: usize },
    #[error("pattern width {0} exceeds 64 columns")]
    PatternTooWide(usize),
    #[error("half-width m={m} outside supported range [1..{max}]")]
    UnsupportedHalfWidth { m: usize, max: usize },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("search exceeded node limit of {limit}")]
    ResourceLimit { limit: u64 },
    #[error("n={0} outside the domain of this bound")]
    BoundDomain(usize),
    #[error("arithmetic overflow")]
    Overflow,
}

fn one_based(rows: &[usize]) -> String {
    rows.iter().map(|r| (r + 1).to_string()).collect::<Vec<_>>().join(",")
}
