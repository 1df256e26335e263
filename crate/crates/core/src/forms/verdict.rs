//! Witt-class verdicts with re-verifiable certificates.

use std::fmt;

/// Outcome of a Witt-zero decision. Zero and NonZero always carry material
/// that an independent checker can re-verify; Unknown is an explicit "the
/// search budget ran out" and is never silently treated as a decision.
#[derive(Clone, Debug)]
pub enum WittVerdict {
    Zero(ZeroCertificate),
    NonZero(NonZeroWitness),
    Unknown(String),
}

impl WittVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, WittVerdict::Zero(_))
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self, WittVerdict::NonZero(_))
    }

    pub fn summary(&self) -> String {
        match self {
            WittVerdict::Zero(c) => format!("zero ({c})"),
            WittVerdict::NonZero(w) => format!("nonzero ({w})"),
            WittVerdict::Unknown(r) => format!("unknown ({r})"),
        }
    }
}

/// Evidence that a class vanishes.
#[derive(Clone, Debug)]
pub enum ZeroCertificate {
    /// Empty form.
    Trivial,
    /// All complete invariants of the hyperbolic form of this dimension are
    /// matched; the record lists what was compared, for re-running.
    Invariants(InvariantRecord),
    /// An explicit verified Lagrangian, printed column-major.
    Lagrangian { dim: usize, basis: Vec<Vec<String>> },
}

impl fmt::Display for ZeroCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroCertificate::Trivial => write!(f, "empty form"),
            ZeroCertificate::Invariants(r) => write!(f, "invariants: {r}"),
            ZeroCertificate::Lagrangian { dim, basis } => {
                let cols: Vec<String> = basis.iter().map(|c| format!("({})", c.join(", "))).collect();
                write!(f, "lagrangian dim {}/{dim}: {}", basis.len(), cols.join(" "))
            }
        }
    }
}

/// The list of invariant comparisons performed by a complete decision.
#[derive(Clone, Debug)]
pub struct InvariantRecord {
    pub field: String,
    pub dim: usize,
    pub checks: Vec<String>,
}

impl fmt::Display for InvariantRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dim {}: {}", self.field, self.dim, self.checks.join("; "))
    }
}

/// Evidence that a class does not vanish: one failing complete invariant, or
/// a sound obstruction.
#[derive(Clone, Debug)]
pub enum NonZeroWitness {
    OddRank(usize),
    Signature { place: String, value: i64 },
    Discriminant { detail: String },
    Hasse { place: String, got: i32, expected: i32 },
    ReducedNormClass { detail: String },
}

impl fmt::Display for NonZeroWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonZeroWitness::OddRank(n) => write!(f, "odd rank {n}"),
            NonZeroWitness::Signature { place, value } => {
                write!(f, "signature {value} at {place}")
            }
            NonZeroWitness::Discriminant { detail } => write!(f, "discriminant: {detail}"),
            NonZeroWitness::Hasse { place, got, expected } => {
                write!(f, "hasse at {place}: {got} (hyperbolic has {expected})")
            }
            NonZeroWitness::ReducedNormClass { detail } => {
                write!(f, "reduced norm class: {detail}")
            }
        }
    }
}
