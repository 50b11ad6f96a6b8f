use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by constructions and analyses in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The table is not square, or an entry is out of range.
    MalformedTable(String),
    /// `(a·b)·c ≠ a·(b·c)` for the named triple.
    NotAssociative { a: usize, b: usize, c: usize },
    /// Row or column `index` of the table disagrees with identity at 0.
    NoIdentityAtZero { index: usize },
    /// Row (or column, when `column` is set) repeats an entry.
    NotLatinSquare { index: usize, column: bool },
    /// A permutation is not a bijection fixing 0, or does not respect the product.
    NotAutomorphism(String),
    /// The subgroup is not normal in the ambient group.
    NotNormal,
    /// `θ(K) ≠ K`.
    NotInvariant,
    /// The constant `b` is moved by `θ`.
    BNotFixed { b: usize, image: usize },
    /// `θ^{n-1}` differs from conjugation by `b` at `element`.
    PowerCondition { element: usize },
    /// The element does not commute with every element.
    NotCentral { element: usize },
    /// Wrong number of arguments.
    ArityMismatch { expected: usize, got: usize },
    /// An element index is outside the carrier.
    ElementOutOfRange { element: usize, order: usize },
    /// The structure exceeds an order cap.
    OrderCapExceeded { order: usize, cap: usize },
    /// The arity exceeds the arity cap.
    ArityCapExceeded { arity: usize, cap: usize },
    /// The computation needs more elementary evaluations than allowed.
    CostCapExceeded { required: u128, cap: u128 },
    /// The raw table fails the n-ary group axioms.
    NotPolyadicGroup(String),
    /// A positional equation has no solution.
    NoSolution { position: usize },
    /// A positional equation has more than one solution.
    NotUnique { position: usize },
    /// The reconstructed presentation disagrees with the operation.
    RoundTripMismatch { args: Vec<usize> },
    /// The set is not closed under the n-ary operation and skew.
    NotPolyadicSubgroup,
    /// A quotient operation depends on the choice of representatives.
    IllDefined,
    /// One of the two homomorphism conditions fails.
    ConditionViolated(&'static str),
    /// A validated homomorphism did not decompose.
    DecompositionFailed(String),
    /// The map is not a polyadic homomorphism.
    NotHomomorphism { args: Vec<usize> },
    /// Two independent methods returned different answers.
    MethodDisagreement(&'static str),
    /// A property guaranteed by the theory failed; indicates a bug.
    Internal(&'static str),
}

impl Error {
    /// True for errors caused by a configured cap rather than by invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::ArityCapExceeded { .. }
                | Error::CostCapExceeded { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedTable(msg) => write!(f, "malformed table: {msg}"),
            Error::NotAssociative { a, b, c } => {
                write!(f, "not associative: (a·b)·c ≠ a·(b·c) at ({a}, {b}, {c})")
            }
            Error::NoIdentityAtZero { index } => {
                write!(f, "element 0 is not the identity (fails at {index})")
            }
            Error::NotLatinSquare { index, column } => {
                let what = if *column { "column" } else { "row" };
                write!(f, "not a Latin square: {what} {index} repeats an entry")
            }
            Error::NotAutomorphism(msg) => write!(f, "not an automorphism: {msg}"),
            Error::NotNormal => write!(f, "subgroup is not normal"),
            Error::NotInvariant => write!(f, "subgroup is not invariant under the automorphism"),
            Error::BNotFixed { b, image } => {
                write!(f, "θ(b) = b fails: θ({b}) = {image}")
            }
            Error::PowerCondition { element } => write!(
                f,
                "θ^(n-1) = conjugation by b fails at element {element}"
            ),
            Error::NotCentral { element } => write!(f, "element {element} is not central"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} arguments, got {got}")
            }
            Error::ElementOutOfRange { element, order } => {
                write!(f, "element {element} out of range for order {order}")
            }
            Error::OrderCapExceeded { order, cap } => {
                write!(f, "order {order} exceeds the cap {cap}")
            }
            Error::ArityCapExceeded { arity, cap } => {
                write!(f, "arity {arity} exceeds the cap {cap}")
            }
            Error::CostCapExceeded { required, cap } => write!(
                f,
                "needs {required} elementary evaluations, cap is {cap}"
            ),
            Error::NotPolyadicGroup(msg) => write!(f, "not an n-ary group: {msg}"),
            Error::NoSolution { position } => {
                write!(f, "equation at position {position} has no solution")
            }
            Error::NotUnique { position } => write!(
                f,
                "equation at position {position} has several solutions"
            ),
            Error::RoundTripMismatch { args } => write!(
                f,
                "derived presentation disagrees with the operation at {args:?}"
            ),
            Error::NotPolyadicSubgroup => {
                write!(f, "set is not closed under the operation and skew")
            }
            Error::IllDefined => write!(f, "quotient operation is not well defined"),
            Error::ConditionViolated(which) => write!(f, "condition violated: {which}"),
            Error::DecompositionFailed(msg) => write!(f, "decomposition failed: {msg}"),
            Error::NotHomomorphism { args } => {
                write!(f, "not a homomorphism, witness {args:?}")
            }
            Error::MethodDisagreement(what) => {
                write!(f, "independent methods disagree: {what}")
            }
            Error::Internal(what) => write!(f, "internal error: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
