//! Cayley tables and the generic finite-loop predicates over them.

use serde::Serialize;

use crate::element::SignedIndex;
use crate::error::LoopError;

/// Anything that exposes a finite Cayley table.
///
/// Elements are the indices `0..order()`. `label_of` is the stable external
/// name of an element: the parent loop code for extracted subloops, the
/// index itself otherwise. Witnesses are always reported in labels.
pub trait CayleyTable {
    fn order(&self) -> usize;
    fn mul_idx(&self, a: usize, b: usize) -> usize;
    fn identity_idx(&self) -> usize;

    fn label_of(&self, idx: usize) -> u16 {
        idx as u16
    }
}

/// The full Cayley table of a signed basis loop of order `2^(dim_log + 1)`.
///
/// Immutable after construction; every product is a single lookup.
#[derive(Clone, Debug)]
pub struct LoopTable {
    dim_log: u32,
    half: usize,
    order: usize,
    identity: SignedIndex,
    table: Vec<SignedIndex>,
}

#[derive(Serialize)]
struct LoopTableJson {
    dim_log: u32,
    order: usize,
    table: Vec<u16>,
}

impl LoopTable {
    pub(crate) fn from_parts(dim_log: u32, table: Vec<SignedIndex>) -> Self {
        let half = 1usize << dim_log;
        let order = 2 * half;
        debug_assert_eq!(table.len(), order * order);
        LoopTable {
            dim_log,
            half,
            order,
            identity: SignedIndex::from_code(0),
            table,
        }
    }

    /// Doubling level `n`; the algebra dimension is `2^n`.
    pub fn dim_log(&self) -> u32 {
        self.dim_log
    }

    /// Number of basis elements, i.e. half the loop order.
    pub fn half_order(&self) -> usize {
        self.half
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> SignedIndex {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: SignedIndex, y: SignedIndex) -> SignedIndex {
        self.table[x.code() as usize * self.order + y.code() as usize]
    }

    pub fn negate(&self, x: SignedIndex) -> SignedIndex {
        x.negate(self.half)
    }

    /// Sign of the basis product `e_i e_j`, read back from the table.
    pub fn basis_sign(&self, i: usize, j: usize) -> i8 {
        self.mul(SignedIndex::positive(i), SignedIndex::positive(j))
            .sign(self.half)
    }

    pub fn elements(&self) -> impl Iterator<Item = SignedIndex> + '_ {
        (0..self.order as u16).map(SignedIndex::from_code)
    }

    /// Two-sided inverse of `x`; errors if the left and right inverses differ.
    pub fn inverse(&self, x: SignedIndex) -> Result<SignedIndex, LoopError> {
        two_sided_inverse(self, x.code() as usize).map(|idx| SignedIndex::from_code(idx as u16))
    }

    /// Deterministic JSON export: `dim_log`, `order`, row-major code table.
    pub fn to_json(&self) -> String {
        let json = LoopTableJson {
            dim_log: self.dim_log,
            order: self.order,
            table: self.table.iter().map(|x| x.code()).collect(),
        };
        serde_json::to_string(&json).expect("loop table serializes")
    }
}

impl CayleyTable for LoopTable {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b].code() as usize
    }

    fn identity_idx(&self) -> usize {
        0
    }
}

/// A subloop re-indexed as a standalone Cayley table.
///
/// `labels[i]` is the parent code of local element `i`; extraction keeps the
/// parent's code order, so local index 0 is always the identity.
#[derive(Clone, Debug)]
pub struct SubTable {
    order: usize,
    identity: usize,
    table: Vec<u16>,
    labels: Vec<u16>,
}

impl SubTable {
    /// Restricts `parent` to a product-closed element set.
    pub fn extract(parent: &impl CayleyTable, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = elements.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let order = members.len();
        let mut local = vec![usize::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let mut table = vec![0u16; order * order];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                let p = parent.mul_idx(x, y);
                let l = local[p];
                assert!(l != usize::MAX, "element set is not closed under product");
                table[i * order + j] = l as u16;
            }
        }
        let identity = local[parent.identity_idx()];
        assert!(identity != usize::MAX, "element set must contain the identity");
        SubTable {
            order,
            identity,
            table,
            labels: members.iter().map(|&m| parent.label_of(m)).collect(),
        }
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }
}

impl CayleyTable for SubTable {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    fn identity_idx(&self) -> usize {
        self.identity
    }

    fn label_of(&self, idx: usize) -> u16 {
        self.labels[idx]
    }
}

/// True iff every row and every column is a permutation of the elements.
pub fn is_latin_square(t: &impl CayleyTable) -> bool {
    let n = t.order();
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.fill(false);
        for b in 0..n {
            let p = t.mul_idx(a, b);
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        seen.fill(false);
        for b in 0..n {
            let p = t.mul_idx(b, a);
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
    }
    true
}

/// True iff the identity row and column act as the identity permutation.
pub fn has_identity(t: &impl CayleyTable) -> bool {
    let e = t.identity_idx();
    (0..t.order()).all(|a| t.mul_idx(e, a) == a && t.mul_idx(a, e) == a)
}

/// The unique `y` with `x y = y x = identity`.
///
/// Errors when the left and right inverses disagree, i.e. the table is not
/// an inverse-property loop on `x`.
pub fn two_sided_inverse(t: &impl CayleyTable, x: usize) -> Result<usize, LoopError> {
    let n = t.order();
    let e = t.identity_idx();
    let right = (0..n).find(|&y| t.mul_idx(x, y) == e);
    let left = (0..n).find(|&y| t.mul_idx(y, x) == e);
    match (right, left) {
        (Some(r), Some(l)) if r == l => Ok(r),
        _ => Err(LoopError::AsymmetricInverse {
            element: t.label_of(x),
        }),
    }
}

/// Inverse vector for the whole table, or the first offending element.
pub fn inverse_vector(t: &impl CayleyTable) -> Result<Vec<usize>, LoopError> {
    (0..t.order()).map(|x| two_sided_inverse(t, x)).collect()
}

/// Least `k >= 1` with `x^k = identity` under left-associated powers.
///
/// Errors if the power sequence cycles without passing through the identity.
pub fn element_order(t: &impl CayleyTable, x: usize) -> Result<usize, LoopError> {
    let e = t.identity_idx();
    let mut p = x;
    for k in 1..=t.order() {
        if p == e {
            return Ok(k);
        }
        p = t.mul_idx(p, x);
    }
    Err(LoopError::NonCyclicPowers {
        element: t.label_of(x),
    })
}

/// True iff `(x y) z = x (y z)` for all triples.
pub fn is_associative(t: &impl CayleyTable) -> bool {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            let xy = t.mul_idx(x, y);
            for z in 0..n {
                if t.mul_idx(xy, z) != t.mul_idx(x, t.mul_idx(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}
