//! Subloop enumeration, normality, and maximal-subloop relations.
//!
//! Every product-closed subset of a signed basis loop other than the
//! trivial `{e_0}` contains `-e_0` and is the full signed lift of an
//! XOR-closed set of basis indices. The primary enumeration therefore walks
//! the linear subspaces of the index space; a generic closure-driven
//! enumeration is kept alongside as an independent cross-check.

use serde::Serialize;

use crate::subset::{closure, ElementSet};
use crate::table::{CayleyTable, LoopTable};

/// A subloop of a signed basis loop, stored as its element set plus the
/// XOR-closed set of basis indices occurring in it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subloop {
    order: usize,
    support: u128,
    elements: ElementSet,
}

/// Export record for one subloop.
#[derive(Serialize)]
pub struct SubloopRecord {
    pub order: usize,
    pub support: Vec<usize>,
    pub normal: bool,
}

impl Subloop {
    /// The trivial subloop `{e_0}`.
    pub fn trivial() -> Self {
        Subloop {
            order: 1,
            support: 1,
            elements: ElementSet::singleton(0),
        }
    }

    /// The signed lift `±{e_i : i in support}` of an XOR-closed index set.
    pub fn from_support(support: u128, half: usize) -> Self {
        let mut elements = ElementSet::EMPTY;
        let mut bits = support;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            elements.insert(i);
            elements.insert(i + half);
        }
        Subloop {
            order: 2 * support.count_ones() as usize,
            support,
            elements,
        }
    }

    /// Rebuilds the support from an arbitrary closed element set.
    pub fn from_elements(elements: ElementSet, half: usize) -> Self {
        let mut support = 0u128;
        for e in elements.iter() {
            support |= 1u128 << (e % half);
        }
        Subloop {
            order: elements.len(),
            support,
            elements,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> ElementSet {
        self.elements
    }

    pub fn support_mask(&self) -> u128 {
        self.support
    }

    pub fn support_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.support.count_ones() as usize);
        let mut bits = self.support;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        out
    }

    /// Dimension of the generated subalgebra (= order/2 for lifted subloops).
    pub fn dim(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Set inclusion of element sets.
    pub fn contains(&self, other: &Subloop) -> bool {
        other.elements.is_subset_of(self.elements)
    }

    fn sort_key(&self) -> (usize, u128) {
        (self.order, self.support)
    }
}

/// Gaussian binomial `[n k]_2`: the number of k-dimensional subspaces of an
/// n-dimensional binary vector space. Exact integer evaluation of
/// `prod_{i=0..k-1} (2^(n-i) - 1) / (2^(i+1) - 1)`.
pub fn gaussian_binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    num / den
}

/// All XOR-closed index subsets of `{0 .. 2^n - 1}` as element masks,
/// enumerated as row-reduced echelon bases so each subspace appears once.
fn xor_subspaces(n: u32) -> Vec<u128> {
    let mut out = Vec::new();
    let cols: Vec<u32> = (0..n).collect();
    // choose pivot columns as a bitmask over coordinate positions
    for pivots in 0u32..(1 << n) {
        let pivot_cols: Vec<u32> = cols.iter().copied().filter(|c| pivots >> c & 1 == 1).collect();
        let k = pivot_cols.len();
        // free positions: for the row led by pivot c, every non-pivot column above c
        let mut free_slots: Vec<(usize, u32)> = Vec::new();
        for (row, &c) in pivot_cols.iter().enumerate() {
            for f in (c + 1)..n {
                if pivots >> f & 1 == 0 {
                    free_slots.push((row, f));
                }
            }
        }
        let free = free_slots.len();
        for assign in 0u64..(1 << free) {
            let mut rows = vec![0u64; k];
            for (row, &c) in pivot_cols.iter().enumerate() {
                rows[row] = 1 << c;
            }
            for (slot, &(row, f)) in free_slots.iter().enumerate() {
                if assign >> slot & 1 == 1 {
                    rows[row] |= 1 << f;
                }
            }
            // span the rows
            let mut mask = 0u128;
            for combo in 0u64..(1 << k) {
                let mut v = 0u64;
                for (row, r) in rows.iter().enumerate() {
                    if combo >> row & 1 == 1 {
                        v ^= r;
                    }
                }
                mask |= 1u128 << v;
            }
            out.push(mask);
        }
    }
    out
}

/// XOR-span of a set of basis indices given as a bit mask over indices.
pub fn xor_span(index_mask: u128) -> u128 {
    let mut basis: Vec<u64> = Vec::new();
    let mut bits = index_mask;
    while bits != 0 {
        let mut v = bits.trailing_zeros() as u64;
        bits &= bits - 1;
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    let mut mask = 0u128;
    for combo in 0u64..(1 << basis.len()) {
        let mut v = 0u64;
        for (i, b) in basis.iter().enumerate() {
            if combo >> i & 1 == 1 {
                v ^= b;
            }
        }
        mask |= 1u128 << v;
    }
    mask
}

/// All subloops of a signed basis loop, including the trivial subloop and
/// the loop itself, sorted by order then support mask.
pub fn enumerate_subloops(l: &LoopTable) -> Vec<Subloop> {
    let half = l.half_order();
    let mut out: Vec<Subloop> = xor_subspaces(l.dim_log())
        .into_iter()
        .map(|support| Subloop::from_support(support, half))
        .collect();
    out.push(Subloop::trivial());
    out.sort_by_key(Subloop::sort_key);
    out
}

/// Independent enumeration by closure: grow the set of known subloops by
/// closing each known subloop together with one extra element until no new
/// subloop appears. Makes no use of the XOR structure of the indices.
pub fn enumerate_subloops_by_closure(l: &LoopTable) -> Vec<Subloop> {
    let half = l.half_order();
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = Vec::new();

    let trivial = closure(l, ElementSet::singleton(0));
    seen.insert(trivial);
    queue.push(trivial);

    while let Some(set) = queue.pop() {
        for x in 0..l.order() {
            if set.contains(x) {
                continue;
            }
            let mut gens = set;
            gens.insert(x);
            let grown = closure(l, gens);
            if seen.insert(grown) {
                queue.push(grown);
            }
        }
    }

    let mut out: Vec<Subloop> = seen
        .into_iter()
        .map(|elements| Subloop::from_elements(elements, half))
        .collect();
    out.sort_by_key(Subloop::sort_key);
    out
}

/// Coset-based normality: `xN = Nx`, `(xN)y = x(Ny)` and `y(xN) = (yx)N`
/// as set equalities, checked exhaustively over the parent loop.
pub fn is_normal(l: &LoopTable, n: &Subloop) -> bool {
    let order = l.order();
    let members: Vec<usize> = n.elements().iter().collect();

    // left[x] = mask of x*N, right[x] = mask of N*x
    let mut left = vec![0u128; order];
    let mut right = vec![0u128; order];
    for x in 0..order {
        for &m in &members {
            left[x] |= 1u128 << l.mul_idx(x, m);
            right[x] |= 1u128 << l.mul_idx(m, x);
        }
        if left[x] != right[x] {
            return false;
        }
    }

    for x in 0..order {
        for y in 0..order {
            let mut xn_y = 0u128;
            let mut x_ny = 0u128;
            let mut y_xn = 0u128;
            for &m in &members {
                xn_y |= 1u128 << l.mul_idx(l.mul_idx(x, m), y);
                x_ny |= 1u128 << l.mul_idx(x, l.mul_idx(m, y));
                y_xn |= 1u128 << l.mul_idx(y, l.mul_idx(x, m));
            }
            if xn_y != x_ny {
                return false;
            }
            if y_xn != left[l.mul_idx(y, x)] {
                return false;
            }
        }
    }
    true
}

/// Non-trivial subloops properly contained in `s` with no non-trivial
/// subloop strictly between.
pub fn maximal_subloops<'a>(s: &Subloop, all: &'a [Subloop]) -> Vec<&'a Subloop> {
    let below: Vec<&Subloop> = all
        .iter()
        .filter(|t| !t.is_trivial() && t.order() < s.order() && s.contains(t))
        .collect();
    below
        .iter()
        .copied()
        .filter(|t| !below.iter().any(|u| u.order() > t.order() && u.contains(t)))
        .collect()
}

/// Census of subloop orders, smallest first.
pub fn census(subloops: &[Subloop]) -> Vec<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for s in subloops {
        *counts.entry(s.order()).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

/// Export records (order, support, normality) for a full enumeration.
pub fn subloop_records(l: &LoopTable, subloops: &[Subloop]) -> Vec<SubloopRecord> {
    subloops
        .iter()
        .map(|s| SubloopRecord {
            order: s.order(),
            support: s.support_indices(),
            normal: is_normal(l, s),
        })
        .collect()
}
