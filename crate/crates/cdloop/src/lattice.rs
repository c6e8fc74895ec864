//! The subloop lattice: Hasse diagram, meets and joins, modularity, and
//! DOT / JSON exports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::LoopError;
use crate::iso::IsoClass;
use crate::subloops::{xor_span, Subloop};
use crate::subset::{closure, ElementSet};
use crate::table::LoopTable;

/// A violating triple for the modular law: `a <= c` but
/// `join(a, meet(b, c)) != meet(join(a, b), c)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModularityWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Total meet and join tables over nodes `0..n`; the order relation is
/// recovered as `a <= b  iff  meet(a, b) = a`.
#[derive(Clone, Debug)]
pub struct MeetJoinTable {
    n: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
}

impl MeetJoinTable {
    pub fn from_tables(n: usize, meet: Vec<u32>, join: Vec<u32>) -> Self {
        debug_assert_eq!(meet.len(), n * n);
        debug_assert_eq!(join.len(), n * n);
        MeetJoinTable { n, meet, join }
    }

    /// Builds the tables from an arbitrary partial order, scanning for the
    /// greatest lower / least upper bound of every pair. Errors if some
    /// pair has none, i.e. the order is not a lattice.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, LoopError> {
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&x| leq(x, a) && leq(x, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&x| lower.iter().all(|&y| leq(y, x)));
                let upper: Vec<usize> = (0..n).filter(|&x| leq(a, x) && leq(b, x)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&x| upper.iter().all(|&y| leq(x, y)));
                match (glb, lub) {
                    (Some(m), Some(j)) => {
                        meet[a * n + b] = m as u32;
                        join[a * n + b] = j as u32;
                    }
                    (None, _) => return Err(LoopError::NotALattice { a, b, kind: "meet" }),
                    (_, None) => return Err(LoopError::NotALattice { a, b, kind: "join" }),
                }
            }
        }
        Ok(MeetJoinTable { n, meet, join })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// Exhaustive modular-law scan over all pairs `a <= c` and all `b`.
    pub fn is_modular(&self) -> Result<(), ModularityWitness> {
        for a in 0..self.n {
            for c in 0..self.n {
                if !self.leq(a, c) {
                    continue;
                }
                for b in 0..self.n {
                    if self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c) {
                        return Err(ModularityWitness { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct LatticeJson {
    nodes: Vec<NodeJson>,
    covers: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct NodeJson {
    order: usize,
    support: Vec<usize>,
}

/// Hasse diagram plus precomputed meet/join tables over a complete subloop
/// enumeration.
#[derive(Clone, Debug)]
pub struct SubloopLattice {
    nodes: Vec<Subloop>,
    covers: Vec<(usize, usize)>,
    tables: MeetJoinTable,
    bottom: usize,
    top: usize,
}

impl SubloopLattice {
    /// Builds the lattice from a full enumeration (which must include the
    /// trivial subloop and the loop itself). Meets are element-set
    /// intersections; joins lift the XOR-span of the two supports. A meet
    /// or join falling outside the node set signals an incomplete
    /// enumeration.
    pub fn build(l: &LoopTable, subloops: &[Subloop]) -> Result<Self, LoopError> {
        let mut nodes: Vec<Subloop> = subloops.to_vec();
        nodes.sort_by_key(|s| (s.order(), s.support_mask()));
        nodes.dedup();
        let n = nodes.len();

        let index: BTreeMap<ElementSet, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements(), i))
            .collect();

        let lookup = |elements: ElementSet, a: usize, b: usize| -> Result<usize, LoopError> {
            index
                .get(&elements)
                .copied()
                .ok_or(LoopError::IncompleteEnumeration { a, b })
        };

        let half = l.half_order();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let meet_elems = nodes[a].elements().intersection(nodes[b].elements());
                meet[a * n + b] = lookup(meet_elems, a, b)? as u32;

                let joined = if nodes[a].is_trivial() {
                    nodes[b]
                } else if nodes[b].is_trivial() {
                    nodes[a]
                } else {
                    let span = xor_span(nodes[a].support_mask() | nodes[b].support_mask());
                    Subloop::from_support(span, half)
                };
                join[a * n + b] = lookup(joined.elements(), a, b)? as u32;
            }
        }

        // covers: strict inclusions with nothing strictly between
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !nodes[j].contains(&nodes[i]) {
                    continue;
                }
                let between = (0..n).any(|k| {
                    k != i
                        && k != j
                        && nodes[k].contains(&nodes[i])
                        && nodes[j].contains(&nodes[k])
                });
                if !between {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();

        let bottom = (0..n)
            .find(|&i| (0..n).all(|j| nodes[j].contains(&nodes[i])))
            .ok_or(LoopError::IncompleteEnumeration { a: 0, b: 0 })?;
        let top = (0..n)
            .find(|&i| (0..n).all(|j| nodes[i].contains(&nodes[j])))
            .ok_or(LoopError::IncompleteEnumeration { a: 0, b: 0 })?;

        Ok(SubloopLattice {
            nodes,
            covers,
            tables: MeetJoinTable::from_tables(n, meet, join),
            bottom,
            top,
        })
    }

    pub fn nodes(&self) -> &[Subloop] {
        &self.nodes
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn tables(&self) -> &MeetJoinTable {
        &self.tables
    }

    pub fn meet(&self, a: usize, b: usize) -> &Subloop {
        &self.nodes[self.tables.meet(a, b)]
    }

    pub fn join(&self, a: usize, b: usize) -> &Subloop {
        &self.nodes[self.tables.join(a, b)]
    }

    /// Join computed the slow way, by closing the union of the element
    /// sets; used to cross-check the span-lifted join.
    pub fn join_by_closure(&self, l: &LoopTable, a: usize, b: usize) -> Result<usize, LoopError> {
        let union = self.nodes[a].elements().union(self.nodes[b].elements());
        let closed = closure(l, union);
        self.nodes
            .iter()
            .position(|s| s.elements() == closed)
            .ok_or(LoopError::IncompleteEnumeration { a, b })
    }

    pub fn is_modular(&self) -> Result<(), ModularityWitness> {
        self.tables.is_modular()
    }

    /// Length in edges of the longest chain from bottom to top.
    pub fn height(&self) -> usize {
        let n = self.nodes.len();
        let mut longest = vec![0usize; n];
        // nodes are sorted by order, so covers always point upward in index
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.nodes[i].order());
        for &i in &order {
            for &(lo, hi) in &self.covers {
                if lo == i {
                    longest[hi] = longest[hi].max(longest[i] + 1);
                }
            }
        }
        longest[self.top]
    }

    /// Full Hasse diagram in DOT syntax, one node per subloop.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph subloops {\n  rankdir=BT;\n");
        for (i, s) in self.nodes.iter().enumerate() {
            let label = if s.is_trivial() {
                "1:trivial".to_string()
            } else {
                format!("{}:{:#x}", s.order(), s.support_mask())
            };
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for &(lo, hi) in &self.covers {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }

    /// Block-form diagram: one node per isomorphy class plus the trivial
    /// bottom and the full loop on top. An edge is drawn between two blocks
    /// whenever some member of one covers some member of the other.
    pub fn to_dot_by_class(&self, classes: &[IsoClass]) -> Result<String, LoopError> {
        // block id per node: 0 = bottom, 1.. = classes, last = top
        let top_block = classes.len() + 1;
        let mut block_of = vec![usize::MAX; self.nodes.len()];
        block_of[self.bottom] = 0;
        block_of[self.top] = top_block;
        for (ci, class) in classes.iter().enumerate() {
            for member in &class.members {
                let idx = self
                    .nodes
                    .iter()
                    .position(|s| s == member)
                    .ok_or(LoopError::UnknownSubloop {
                        support: member.support_mask(),
                    })?;
                if block_of[idx] == usize::MAX {
                    block_of[idx] = ci + 1;
                }
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(LoopError::UnknownSubloop {
                support: self.nodes[missing].support_mask(),
            });
        }

        let mut out = String::from("digraph subloop_classes {\n  rankdir=BT;\n");
        let _ = writeln!(out, "  b0 [label=\"trivial (1)\"];");
        for (ci, class) in classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  b{} [label=\"{} x{}\"];",
                ci + 1,
                class.label,
                class.size()
            );
        }
        let _ = writeln!(
            out,
            "  b{top_block} [label=\"full loop ({})\"];",
            self.nodes[self.top].order()
        );

        let mut edges: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(lo, hi)| (block_of[lo], block_of[hi]))
            .filter(|&(a, b)| a != b)
            .collect();
        edges.sort_unstable();
        edges.dedup();
        for (a, b) in edges {
            let _ = writeln!(out, "  b{a} -> b{b};");
        }
        out.push_str("}\n");
        Ok(out)
    }

    /// JSON export: nodes with orders and supports, plus the cover list.
    pub fn to_json(&self) -> String {
        let json = LatticeJson {
            nodes: self
                .nodes
                .iter()
                .map(|s| NodeJson {
                    order: s.order(),
                    support: s.support_indices(),
                })
                .collect(),
            covers: self.covers.clone(),
        };
        serde_json::to_string(&json).expect("lattice serializes")
    }
}

/// The pentagon N5: the canonical non-modular lattice. Test fixture.
pub fn pentagon_fixture() -> MeetJoinTable {
    // 0 = bottom, 4 = top, chain 1 < 3, and 2 incomparable to both
    let leq = |a: usize, b: usize| -> bool {
        if a == b || a == 0 || b == 4 {
            return true;
        }
        matches!((a, b), (1, 3))
    };
    MeetJoinTable::from_leq(5, leq).expect("N5 is a lattice")
}

/// The diamond M3: modular but not distributive. Test fixture.
pub fn diamond_fixture() -> MeetJoinTable {
    // 0 = bottom, 4 = top, 1, 2, 3 pairwise incomparable
    let leq = |a: usize, b: usize| -> bool { a == b || a == 0 || b == 4 };
    MeetJoinTable::from_leq(5, leq).expect("M3 is a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_cd_loop;
    use crate::subloops::enumerate_subloops;

    #[test]
    fn quaternion_loop_lattice() {
        let l = build_cd_loop(2).unwrap();
        let subs = enumerate_subloops(&l);
        let lat = SubloopLattice::build(&l, &subs).unwrap();
        assert_eq!(lat.nodes().len(), 6);
        assert_eq!(lat.covers().len(), 7);
        assert_eq!(lat.height(), 3);
        assert!(lat.is_modular().is_ok());
    }

    #[test]
    fn single_node_lattice() {
        let l = build_cd_loop(0).unwrap();
        let lat = SubloopLattice::build(&l, &[Subloop::trivial()]).unwrap();
        assert_eq!(lat.nodes().len(), 1);
        assert!(lat.covers().is_empty());
        assert_eq!(lat.bottom(), lat.top());
        assert_eq!(lat.height(), 0);
    }

    #[test]
    fn meet_join_examples() {
        let l = build_cd_loop(3).unwrap();
        let subs = enumerate_subloops(&l);
        let lat = SubloopLattice::build(&l, &subs).unwrap();
        let n = lat.nodes().len();
        for a in 0..n {
            assert_eq!(lat.tables().meet(a, a), a);
            assert_eq!(lat.tables().join(lat.bottom(), a), a);
        }
        // two distinct order-4 subloops meet in the order-2 subloop
        let fours: Vec<usize> = (0..n).filter(|&i| lat.nodes()[i].order() == 4).collect();
        let m = lat.meet(fours[0], fours[1]);
        assert_eq!(m.order(), 2);
        assert_eq!(m.support_mask(), 1);
    }

    #[test]
    fn absorption_laws() {
        let l = build_cd_loop(3).unwrap();
        let subs = enumerate_subloops(&l);
        let lat = SubloopLattice::build(&l, &subs).unwrap();
        let t = lat.tables();
        for a in 0..t.len() {
            for b in 0..t.len() {
                assert_eq!(t.meet(a, t.join(a, b)), a);
                assert_eq!(t.join(a, t.meet(a, b)), a);
                assert_eq!(t.meet(a, b), t.meet(b, a));
                assert_eq!(t.join(a, b), t.join(b, a));
            }
        }
    }

    #[test]
    fn join_matches_closure_route() {
        let l = build_cd_loop(3).unwrap();
        let subs = enumerate_subloops(&l);
        let lat = SubloopLattice::build(&l, &subs).unwrap();
        for a in 0..lat.nodes().len() {
            for b in 0..lat.nodes().len() {
                assert_eq!(
                    lat.tables().join(a, b),
                    lat.join_by_closure(&l, a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn incomplete_enumeration_is_detected() {
        let l = build_cd_loop(2).unwrap();
        let subs = enumerate_subloops(&l);
        // drop the order-2 node; meets of distinct order-4 subloops now miss
        let pruned: Vec<Subloop> = subs.iter().filter(|s| s.order() != 2).copied().collect();
        assert!(matches!(
            SubloopLattice::build(&l, &pruned),
            Err(LoopError::IncompleteEnumeration { .. })
        ));
    }

    #[test]
    fn pentagon_is_not_modular() {
        let n5 = pentagon_fixture();
        let witness = n5.is_modular().unwrap_err();
        // re-evaluate the witness
        let ModularityWitness { a, b, c } = witness;
        assert!(n5.leq(a, c));
        assert_ne!(n5.join(a, n5.meet(b, c)), n5.meet(n5.join(a, b), c));
    }

    #[test]
    fn diamond_is_modular() {
        assert!(diamond_fixture().is_modular().is_ok());
    }

    #[test]
    fn dot_export_is_a_bounded_dag() {
        let l = build_cd_loop(2).unwrap();
        let subs = enumerate_subloops(&l);
        let lat = SubloopLattice::build(&l, &subs).unwrap();
        let dot = lat.to_dot();
        let node_count = dot.lines().filter(|line| line.contains("[label=")).count();
        let edge_count = dot.lines().filter(|line| line.contains("->")).count();
        assert_eq!(node_count, 6);
        assert_eq!(edge_count, 7);
    }
}
