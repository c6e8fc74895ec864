//! Loop isomorphism and the classification of subloops into isomorphy
//! classes.
//!
//! The isomorphism search backtracks over images of a small generating
//! sequence, extending each partial assignment through the homomorphism
//! property and pruning on per-element invariants. A mismatch in the cheap
//! fingerprints settles most pairs without any search.

use std::collections::BTreeMap;
use std::fmt;

use crate::construct::build_cd_loop;
use crate::error::LoopError;
use crate::subloops::Subloop;
use crate::subset::{closure, ElementSet};
use crate::table::{element_order, is_associative, CayleyTable, LoopTable, SubTable};

const UNSET: usize = usize::MAX;

/// Per-element invariant used both as a whole-loop fingerprint (sorted) and
/// as a candidate filter during the search.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct ElementProfile {
    order: u8,
    commutant: u16,
    mul_orders: Vec<u8>,
}

fn element_profiles(t: &impl CayleyTable) -> Vec<ElementProfile> {
    let n = t.order();
    let orders: Vec<u8> = (0..n)
        .map(|x| element_order(t, x).map(|k| k as u8).unwrap_or(0))
        .collect();
    (0..n)
        .map(|x| {
            let mut mul_orders: Vec<u8> = (0..n).map(|y| orders[t.mul_idx(x, y)]).collect();
            mul_orders.sort_unstable();
            let commutant = (0..n).filter(|&y| t.mul_idx(x, y) == t.mul_idx(y, x)).count() as u16;
            ElementProfile {
                order: orders[x],
                commutant,
                mul_orders,
            }
        })
        .collect()
}

fn is_moufang(t: &impl CayleyTable) -> bool {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            let xy = t.mul_idx(x, y);
            for z in 0..n {
                // (xy)(zx) = x((yz)x)
                let lhs = t.mul_idx(xy, t.mul_idx(z, x));
                let rhs = t.mul_idx(x, t.mul_idx(t.mul_idx(y, z), x));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Greedy generating sequence: repeatedly adjoin the smallest element not
/// yet generated. Signed basis loops need at most `dim_log + 1` steps.
fn generating_sequence(t: &impl CayleyTable) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut generated = closure(t, ElementSet::EMPTY);
    while generated.len() < t.order() {
        let g = (0..t.order())
            .find(|&x| !generated.contains(x))
            .expect("closure is smaller than the loop");
        gens.push(g);
        generated = closure(t, ElementSet::from_iter(gens.iter().copied()));
    }
    gens
}

struct IsoSearch<'a, A: CayleyTable, B: CayleyTable> {
    a: &'a A,
    b: &'a B,
    profiles_a: &'a [ElementProfile],
    profiles_b: &'a [ElementProfile],
    map: Vec<usize>,
    inv: Vec<usize>,
    assigned: Vec<usize>,
}

impl<'a, A: CayleyTable, B: CayleyTable> IsoSearch<'a, A, B> {
    /// Records `x -> y` and propagates products of all assigned pairs.
    /// Returns the number of assignments made, or None on conflict; the
    /// caller must roll back exactly that many on failure elsewhere.
    fn assign_and_propagate(&mut self, x: usize, y: usize) -> Option<usize> {
        let start = self.assigned.len();
        if !self.push_assignment(x, y) {
            return None;
        }
        let mut cursor = start;
        while cursor < self.assigned.len() {
            let u = self.assigned[cursor];
            cursor += 1;
            for i in 0..self.assigned.len() {
                let v = self.assigned[i];
                for (p, q) in [(u, v), (v, u)] {
                    let z = self.a.mul_idx(p, q);
                    let w = self.b.mul_idx(self.map[p], self.map[q]);
                    if self.map[z] == UNSET {
                        if !self.push_assignment(z, w) {
                            self.rollback(start);
                            return None;
                        }
                    } else if self.map[z] != w {
                        self.rollback(start);
                        return None;
                    }
                }
            }
        }
        Some(self.assigned.len() - start)
    }

    fn push_assignment(&mut self, x: usize, y: usize) -> bool {
        if self.inv[y] != UNSET || self.profiles_a[x] != self.profiles_b[y] {
            return false;
        }
        self.map[x] = y;
        self.inv[y] = x;
        self.assigned.push(x);
        true
    }

    fn rollback(&mut self, to: usize) {
        while self.assigned.len() > to {
            let x = self.assigned.pop().unwrap();
            let y = self.map[x];
            self.map[x] = UNSET;
            self.inv[y] = UNSET;
        }
    }

    fn search(&mut self, gens: &[usize]) -> bool {
        let Some((&g, rest)) = gens.split_first() else {
            return self.assigned.len() == self.a.order();
        };
        debug_assert_eq!(self.map[g], UNSET);
        for h in 0..self.b.order() {
            if self.inv[h] != UNSET || self.profiles_a[g] != self.profiles_b[h] {
                continue;
            }
            let before = self.assigned.len();
            if self.assign_and_propagate(g, h).is_some() {
                if self.search(rest) {
                    return true;
                }
                self.rollback(before);
            }
        }
        false
    }
}

/// Product-preserving bijection from `a` to `b` mapping identity to
/// identity, or None if the loops are not isomorphic.
pub fn are_isomorphic(a: &impl CayleyTable, b: &impl CayleyTable) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let profiles_a = element_profiles(a);
    let profiles_b = element_profiles(b);
    {
        let mut sa = profiles_a.clone();
        let mut sb = profiles_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    if is_associative(a) != is_associative(b) || is_moufang(a) != is_moufang(b) {
        return None;
    }

    let gens = generating_sequence(a);
    let n = a.order();
    let mut search = IsoSearch {
        a,
        b,
        profiles_a: &profiles_a,
        profiles_b: &profiles_b,
        map: vec![UNSET; n],
        inv: vec![UNSET; n],
        assigned: Vec::with_capacity(n),
    };
    search
        .assign_and_propagate(a.identity_idx(), b.identity_idx())
        .expect("identity maps to identity");
    if !search.search(&gens) {
        return None;
    }

    let map = search.map;
    debug_assert!(map.iter().all(|&y| y != UNSET));
    debug_assert!((0..n).all(|x| (0..n).all(|y| map[a.mul_idx(x, y)] == b.mul_idx(map[x], map[y]))));
    Some(map)
}

/// Names for the isomorphy classes arising in signed basis loops.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ClassLabel {
    /// Standard sedenion loop `S_L` of order 32.
    Sedenion,
    /// Alpha sedenion-type loop: maximal composition `[2+13]`.
    SedenionAlpha,
    /// Beta sedenion-type loop: maximal composition `[0+15]`.
    SedenionBeta,
    /// Gamma sedenion-type loop: composition `[8+7]` but not isomorphic to `S_L`.
    SedenionGamma,
    /// Standard octonion loop `O_L` of order 16 (Moufang).
    Octonion,
    /// Quasi-octonion loop of order 16 (fails Moufang).
    QuasiOctonion,
    /// Quaternion group `Q8`.
    QuaternionGroup,
    /// Cyclic group of order 4.
    Cyclic4,
    /// Cyclic group of order 2.
    Cyclic2,
    /// Anything outside the named families.
    Unnamed { order: usize, seq: usize },
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Sedenion => write!(f, "S_L"),
            ClassLabel::SedenionAlpha => write!(f, "S_L^a"),
            ClassLabel::SedenionBeta => write!(f, "S_L^b"),
            ClassLabel::SedenionGamma => write!(f, "S_L^g"),
            ClassLabel::Octonion => write!(f, "O_L"),
            ClassLabel::QuasiOctonion => write!(f, "~O_L"),
            ClassLabel::QuaternionGroup => write!(f, "Q8"),
            ClassLabel::Cyclic4 => write!(f, "C4"),
            ClassLabel::Cyclic2 => write!(f, "C2"),
            ClassLabel::Unnamed { order, seq } => write!(f, "L{order}-{seq}"),
        }
    }
}

/// A maximal set of mutually isomorphic subloops with a chosen representative.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub label: ClassLabel,
    pub representative: Subloop,
    pub members: Vec<Subloop>,
}

impl IsoClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Counts of octonion-class versus quasi-octonion-class maximal subloops of
/// a sedenion-type subloop.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CompositionProfile {
    pub octonion: usize,
    pub quasi_octonion: usize,
}

impl fmt::Display for CompositionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}+{}]", self.octonion, self.quasi_octonion)
    }
}

/// Counts the octonion / quasi-octonion split among the maximal (order-16)
/// subloops of a sedenion-type subloop, given the classified order-16
/// classes of the parent.
pub fn composition_profile(
    s: &Subloop,
    classes16: &[IsoClass],
) -> Result<CompositionProfile, LoopError> {
    let mut octonion = 0;
    let mut quasi = 0;
    let mut covered = 0;
    for class in classes16.iter().filter(|c| c.order() == 16) {
        let inside = class
            .members
            .iter()
            .filter(|m| s.contains(m) && m.order() < s.order())
            .count();
        covered += inside;
        match class.label {
            ClassLabel::Octonion => octonion += inside,
            ClassLabel::QuasiOctonion => quasi += inside,
            _ if inside > 0 => {
                return Err(LoopError::UnclassifiedMaximal {
                    support: class.representative.support_mask(),
                })
            }
            _ => {}
        }
    }
    let expected = s.order() / 2 - 1; // 2^k - 1 maximal subloops below dimension k
    if covered != expected {
        return Err(LoopError::UnclassifiedMaximal {
            support: s.support_mask(),
        });
    }
    Ok(CompositionProfile {
        octonion,
        quasi_octonion: quasi,
    })
}

fn extract(l: &LoopTable, s: &Subloop) -> SubTable {
    SubTable::extract(l, s.elements().iter())
}

/// Partitions subloops of one parent into isomorphy classes and labels each
/// class by structural tests: group recognition for the small orders,
/// reference-table isomorphism for the octonion split, and composition
/// profiles plus the isomorphism search for the sedenion types.
pub fn classify(l: &LoopTable, subloops: &[Subloop]) -> Vec<IsoClass> {
    let mut by_order: BTreeMap<usize, Vec<Subloop>> = BTreeMap::new();
    for s in subloops {
        by_order.entry(s.order()).or_default().push(*s);
    }
    for bucket in by_order.values_mut() {
        bucket.sort_by_key(|s| (s.support_mask(), s.elements()));
    }

    let octonion_ref = build_cd_loop(3).expect("octonion loop builds");
    let mut classes: Vec<IsoClass> = Vec::new();

    for (&order, bucket) in &by_order {
        // Sedenion-type subloops are pre-bucketed by composition profile so
        // the isomorphism search only ever compares equal-profile loops.
        let profile_of: Option<BTreeMap<u128, CompositionProfile>> = if order == 32 {
            let classes16: Vec<IsoClass> = classes.iter().filter(|c| c.order() == 16).cloned().collect();
            if classes16.is_empty() {
                None
            } else {
                let mut map = BTreeMap::new();
                for s in bucket.iter() {
                    if let Ok(p) = composition_profile(s, &classes16) {
                        map.insert(s.support_mask(), p);
                    }
                }
                Some(map)
            }
        } else {
            None
        };

        let mut reps: Vec<(SubTable, IsoClass)> = Vec::new();
        for s in bucket.iter() {
            let t = extract(l, s);
            let mut placed = false;
            for (rep_table, class) in reps.iter_mut() {
                if let Some(profiles) = &profile_of {
                    let pa = profiles.get(&s.support_mask());
                    let pb = profiles.get(&class.representative.support_mask());
                    if pa != pb {
                        continue;
                    }
                }
                if are_isomorphic(&t, rep_table).is_some() {
                    class.members.push(*s);
                    placed = true;
                    break;
                }
            }
            if !placed {
                reps.push((
                    t,
                    IsoClass {
                        label: ClassLabel::Unnamed { order, seq: 0 },
                        representative: *s,
                        members: vec![*s],
                    },
                ));
            }
        }

        // label the new classes
        let mut unnamed_seq = 0;
        let mut new_classes: Vec<IsoClass> = Vec::new();
        for (rep_table, mut class) in reps {
            class.label = label_class(&rep_table, &class, order, &octonion_ref, profile_of.as_ref());
            if let ClassLabel::Unnamed { order, .. } = class.label {
                class.label = ClassLabel::Unnamed {
                    order,
                    seq: unnamed_seq,
                };
                unnamed_seq += 1;
            }
            new_classes.push(class);
        }
        classes.extend(new_classes);
    }

    // Two [8+7] classes can coexist: the one containing the standard
    // sedenion support keeps the S_L label, the other becomes gamma.
    disambiguate_sedenion_labels(&mut classes);

    classes.sort_by(|a, b| {
        b.order()
            .cmp(&a.order())
            .then_with(|| a.label.cmp(&b.label))
            .then_with(|| a.representative.support_mask().cmp(&b.representative.support_mask()))
    });
    classes
}

fn label_class(
    rep_table: &SubTable,
    class: &IsoClass,
    order: usize,
    octonion_ref: &LoopTable,
    profiles: Option<&BTreeMap<u128, CompositionProfile>>,
) -> ClassLabel {
    match order {
        2 => ClassLabel::Cyclic2,
        4 => {
            let cyclic = (0..4).any(|x| element_order(rep_table, x) == Ok(4));
            if cyclic {
                ClassLabel::Cyclic4
            } else {
                ClassLabel::Unnamed { order, seq: 0 }
            }
        }
        8 => {
            if are_isomorphic(rep_table, &build_cd_loop(2).expect("quaternion loop builds")).is_some()
            {
                ClassLabel::QuaternionGroup
            } else {
                ClassLabel::Unnamed { order, seq: 0 }
            }
        }
        16 => {
            if are_isomorphic(rep_table, octonion_ref).is_some() {
                ClassLabel::Octonion
            } else if !is_moufang(rep_table) && !is_associative(rep_table) {
                ClassLabel::QuasiOctonion
            } else {
                ClassLabel::Unnamed { order, seq: 0 }
            }
        }
        32 => match profiles.and_then(|p| p.get(&class.representative.support_mask())) {
            Some(CompositionProfile {
                octonion: 2,
                quasi_octonion: 13,
            }) => ClassLabel::SedenionAlpha,
            Some(CompositionProfile {
                octonion: 0,
                quasi_octonion: 15,
            }) => ClassLabel::SedenionBeta,
            Some(CompositionProfile {
                octonion: 8,
                quasi_octonion: 7,
            }) => ClassLabel::Sedenion, // gamma is split off afterwards
            _ => ClassLabel::Unnamed { order, seq: 0 },
        },
        _ => ClassLabel::Unnamed { order, seq: 0 },
    }
}

fn disambiguate_sedenion_labels(classes: &mut [IsoClass]) {
    let standard_support: u128 = 0xffff; // indices 0..15
    let sedenion_indices: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.label == ClassLabel::Sedenion)
        .map(|(i, _)| i)
        .collect();
    if sedenion_indices.len() <= 1 {
        return;
    }
    for &i in &sedenion_indices {
        let has_standard = classes[i]
            .members
            .iter()
            .any(|m| m.support_mask() == standard_support);
        if !has_standard {
            classes[i].label = ClassLabel::SedenionGamma;
        }
    }
}
