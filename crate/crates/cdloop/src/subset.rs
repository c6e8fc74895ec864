//! Element subsets of a loop as bit masks, and generated-subloop closure.

use crate::table::CayleyTable;

/// Capacity of an [`ElementSet`]: loops up to order 128.
pub const MAX_SET_ORDER: usize = 128;

/// A subset of a loop's elements, one bit per element index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(idx: usize) -> Self {
        ElementSet(1u128 << idx)
    }

    pub fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < MAX_SET_ORDER);
        self.0 |= 1u128 << idx;
    }

    pub fn contains(self, idx: usize) -> bool {
        idx < MAX_SET_ORDER && self.0 >> idx & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let idx = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(idx)
            }
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for idx in iter {
            s.insert(idx);
        }
        s
    }
}

/// Least product-closed subset containing `gens` and the identity.
///
/// Worklist closure: every new element is multiplied against everything
/// known, in both orders, until nothing grows. Always terminates because
/// the set is bounded by the loop order.
pub fn closure(t: &impl CayleyTable, gens: ElementSet) -> ElementSet {
    assert!(
        t.order() <= MAX_SET_ORDER,
        "element sets support loops up to order {MAX_SET_ORDER}"
    );
    let mut set = gens;
    set.insert(t.identity_idx());
    let mut frontier: Vec<usize> = set.iter().collect();
    while let Some(x) = frontier.pop() {
        for y in set.iter() {
            for p in [t.mul_idx(x, y), t.mul_idx(y, x)] {
                if !set.contains(p) {
                    set.insert(p);
                    frontier.push(p);
                }
            }
        }
    }
    set
}

/// True iff `(x y) z = x (y z)` for all triples drawn from `set`.
pub fn is_associative_subset(t: &impl CayleyTable, set: ElementSet) -> bool {
    for x in set.iter() {
        for y in set.iter() {
            let xy = t.mul_idx(x, y);
            for z in set.iter() {
                if t.mul_idx(xy, z) != t.mul_idx(x, t.mul_idx(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}
