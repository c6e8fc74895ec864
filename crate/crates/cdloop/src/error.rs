use thiserror::Error;

/// Errors reported by the loop and algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("basis index {index} out of range for doubling level {level}")]
    BasisIndexOutOfRange { index: usize, level: u32 },

    #[error("doubling level {level} exceeds the supported maximum {max}")]
    LevelTooLarge { level: u32, max: u32 },

    #[error("element {element} has distinct left and right inverses")]
    AsymmetricInverse { element: u16 },

    #[error("left-associated powers of element {element} do not reach the identity")]
    NonCyclicPowers { element: u16 },

    #[error("coefficient vector of length {got} does not match algebra dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("meet or join of nodes {a} and {b} is missing from the enumeration")]
    IncompleteEnumeration { a: usize, b: usize },

    #[error("elements {a} and {b} have no {kind} in the given order")]
    NotALattice { a: usize, b: usize, kind: &'static str },

    #[error("order-16 subloop with support {support:#x} is in neither octonion class")]
    UnclassifiedMaximal { support: u128 },

    #[error("subloop with support {support:#x} is not a lattice node")]
    UnknownSubloop { support: u128 },
}
