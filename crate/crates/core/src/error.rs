use std::fmt;

use thiserror::Error;

/// Ring and module axioms checked exhaustively by the validators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveCommutativity,
    AdditiveAssociativity,
    AdditiveInverse,
    MultiplicativeAssociativity,
    MultiplicativeIdentity,
    LeftDistributivity,
    RightDistributivity,
    /// `x·1 = x` for module elements.
    UnitalAction,
    /// `x·(ab) = (x·a)·b`.
    ActionAssociativity,
    /// `(x+y)·a = x·a + y·a`.
    ActionDistributesOverModule,
    /// `x·(a+b) = x·a + x·b`.
    ActionDistributesOverRing,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AdditiveIdentity => "0 is not an additive identity",
            Axiom::AdditiveCommutativity => "addition is not commutative",
            Axiom::AdditiveAssociativity => "addition is not associative",
            Axiom::AdditiveInverse => "additive inverse missing",
            Axiom::MultiplicativeAssociativity => "multiplication is not associative",
            Axiom::MultiplicativeIdentity => "one is not identity",
            Axiom::LeftDistributivity => "left distributivity fails",
            Axiom::RightDistributivity => "right distributivity fails",
            Axiom::UnitalAction => "x*1 = x fails",
            Axiom::ActionAssociativity => "x*(ab) = (x*a)*b fails",
            Axiom::ActionDistributesOverModule => "(x+y)*a = x*a + y*a fails",
            Axiom::ActionDistributesOverRing => "x*(a+b) = x*a + x*b fails",
        };
        f.write_str(s)
    }
}

struct Tuple<'a>(&'a [usize]);

impl fmt::Display for Tuple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Shape(String),

    #[error("{table}[{row}][{col}] = {value} is out of range 0..{order}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },

    #[error("{axiom} at {}", Tuple(witness))]
    Axiom { axiom: Axiom, witness: Vec<usize> },

    #[error("order {requested} exceeds the order cap {cap}")]
    OrderCap { requested: String, cap: usize },

    #[error("submodule lattice of a module of order {module_order} exceeded the cap of {cap} submodules")]
    LatticeCap { module_order: usize, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring spec: {0}")]
    RingSpec(String),

    #[error("not a submodule: {0}")]
    NotSubmodule(String),

    #[error("element id {id} out of range for a module of order {order}")]
    ElementOutOfRange { id: usize, order: usize },

    #[error("modules are over different rings")]
    RingMismatch,

    #[error("the unit ideal has zero quotient")]
    UnitIdeal,

    #[error("ideal {0} is not comonoform")]
    NotComonoform(String),

    #[error("module is not uniform")]
    NotUniform,

    #[error("ring is not commutative: {a}*{b} != {b}*{a}")]
    NotCommutative { a: usize, b: usize },

    #[error("{count} atoms exceed the enumeration limit of {max}")]
    TooManyAtoms { count: usize, max: usize },

    #[error("closure universe exceeded {cap} subquotient sections")]
    UniverseCap { cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
