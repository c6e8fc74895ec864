//! Signed basis elements encoded as single integer codes.
//!
//! A loop of order `2N` over the basis `e_0 .. e_{N-1}` stores the element
//! `+e_i` as code `i` and `-e_i` as code `i + N`. Negation is then the
//! involution `code -> (code + N) mod 2N`, and the basis index is `code mod N`.

use std::fmt;

/// One signed basis element `+e_i` or `-e_i` of a basis loop.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SignedIndex(u16);

impl SignedIndex {
    /// Wraps a raw element code.
    pub const fn from_code(code: u16) -> Self {
        SignedIndex(code)
    }

    /// The element `+e_index`.
    pub fn positive(index: usize) -> Self {
        SignedIndex(index as u16)
    }

    /// The element `-e_index` in a loop with `half` basis elements.
    pub fn negative(index: usize, half: usize) -> Self {
        SignedIndex((index + half) as u16)
    }

    pub const fn code(self) -> u16 {
        self.0
    }

    /// Basis index, discarding the sign.
    pub fn index(self, half: usize) -> usize {
        self.0 as usize % half
    }

    pub fn is_positive(self, half: usize) -> bool {
        (self.0 as usize) < half
    }

    pub fn sign(self, half: usize) -> i8 {
        if self.is_positive(half) {
            1
        } else {
            -1
        }
    }

    /// Additive negation; involutive.
    pub fn negate(self, half: usize) -> Self {
        SignedIndex(((self.0 as usize + half) % (2 * half)) as u16)
    }

    /// Human-readable form such as `+e3` or `-e17`.
    pub fn describe(self, half: usize) -> String {
        format!(
            "{}e{}",
            if self.is_positive(half) { '+' } else { '-' },
            self.index(half)
        )
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
