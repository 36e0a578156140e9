//! Cayley graphs `Cay(Γ, S)`: vertices are group elements and `u ~ v` iff
//! `v·u⁻¹ ∈ S`.
//!
//! Because `S` is inverse-closed, `v·u⁻¹ ∈ S` and `u·v⁻¹ ∈ S` are the same
//! condition, so the graph is undirected. Right multiplication `u ↦ u·w`
//! preserves `v·u⁻¹` and is therefore an automorphism for every `w`.

use thiserror::Error;

use crate::graph::BitGraph;
use crate::groups::GroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionSetError {
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("connection set contains {x} but not its inverse {inv}")]
    NotInverseClosed { x: usize, inv: usize },
    #[error("element {0} is outside the group")]
    OutOfRange(usize),
}

/// An inverse-closed, identity-free subset of a group, as a bitmask over
/// element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    mask: u64,
    group_order: usize,
}

impl ConnectionSet {
    pub fn new(g: &GroupTable, mask: u64) -> Result<Self, ConnectionSetError> {
        let n = g.order();
        if n < 64 && mask >> n != 0 {
            return Err(ConnectionSetError::OutOfRange(
                63 - mask.leading_zeros() as usize,
            ));
        }
        if mask & 1 != 0 {
            return Err(ConnectionSetError::ContainsIdentity);
        }
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            let inv = g.inv(x);
            if mask >> inv & 1 == 0 {
                return Err(ConnectionSetError::NotInverseClosed { x, inv });
            }
        }
        Ok(ConnectionSet {
            mask,
            group_order: n,
        })
    }

    pub fn from_elements(g: &GroupTable, elements: &[usize]) -> Result<Self, ConnectionSetError> {
        let mut mask = 0u64;
        for &x in elements {
            if x >= g.order() {
                return Err(ConnectionSetError::OutOfRange(x));
            }
            mask |= 1 << x;
        }
        ConnectionSet::new(g, mask)
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_mask_unchecked(mask: u64, group_order: usize) -> Self {
        ConnectionSet { mask, group_order }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.mask;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
}

/// Builds `Cay(g, s)`. Row `u` is `{s·u : s ∈ S}`.
///
/// Panics if `s` was built for a group of a different order.
pub fn cayley_graph(g: &GroupTable, s: &ConnectionSet) -> BitGraph {
    assert_eq!(
        g.order(),
        s.group_order(),
        "connection set is for another group"
    );
    let rows = cayley_rows(g, s.mask());
    BitGraph::from_rows(rows).expect("inverse-closed set gives a simple graph")
}

pub(crate) fn cayley_rows(g: &GroupTable, mask: u64) -> Vec<u64> {
    let n = g.order();
    let elements = ConnectionSet::from_mask_unchecked(mask, n).elements();
    (0..n)
        .map(|u| elements.iter().fold(0u64, |acc, &s| acc | 1 << g.mul(s, u)))
        .collect()
}

/// True iff `S` generates the group, i.e. the closure of the identity under
/// right multiplication by `S` is everything. Equivalent to connectivity of
/// `Cay(g, s)`.
pub fn generates(g: &GroupTable, s: &ConnectionSet) -> bool {
    let n = g.order();
    let elements = s.elements();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut reached = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            for &t in &elements {
                next |= 1 << g.mul(x, t);
            }
        }
        frontier = next & !reached;
        reached |= next;
        if reached == full {
            return true;
        }
    }
    reached == full
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_cyclic, build_dihedral, build_symmetric, parse_group_spec};

    fn cycle(n: usize) -> BitGraph {
        BitGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn circulant_five_cycle() {
        let c5 = build_cyclic(5).unwrap();
        let s = ConnectionSet::from_elements(&c5, &[1, 4]).unwrap();
        assert_eq!(cayley_graph(&c5, &s), cycle(5));
        assert!(generates(&c5, &s));
    }

    #[test]
    fn two_triangles() {
        let c6 = build_cyclic(6).unwrap();
        let s = ConnectionSet::from_elements(&c6, &[2, 4]).unwrap();
        let g = cayley_graph(&c6, &s);
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.component_of(0), 0b010101);
        assert!(!generates(&c6, &s));
    }

    #[test]
    fn k2_from_c2() {
        let c2 = build_cyclic(2).unwrap();
        let s = ConnectionSet::from_elements(&c2, &[1]).unwrap();
        assert_eq!(cayley_graph(&c2, &s), BitGraph::from_edges(2, &[(0, 1)]));
    }

    #[test]
    fn invalid_sets() {
        let c4 = build_cyclic(4).unwrap();
        assert_eq!(
            ConnectionSet::new(&c4, 0b0001),
            Err(ConnectionSetError::ContainsIdentity)
        );
        assert_eq!(
            ConnectionSet::new(&c4, 0b0010),
            Err(ConnectionSetError::NotInverseClosed { x: 1, inv: 3 })
        );
        assert_eq!(
            ConnectionSet::new(&c4, 0b10100),
            Err(ConnectionSetError::OutOfRange(4))
        );
    }

    #[test]
    fn generation_examples() {
        let c4 = build_cyclic(4).unwrap();
        assert!(!generates(
            &c4,
            &ConnectionSet::from_elements(&c4, &[2]).unwrap()
        ));
        let s4 = build_symmetric(4).unwrap();
        let transpositions: Vec<usize> = (1..24).filter(|&x| is_transposition(&s4, x)).collect();
        assert_eq!(transpositions.len(), 6);
        // Two transpositions sharing a point generate a copy of S(3).
        for (i, &a) in transpositions.iter().enumerate() {
            for &b in &transpositions[i + 1..] {
                let s = ConnectionSet::from_elements(&s4, &[a, b]).unwrap();
                let shares_point = s4.mul(a, b) != s4.mul(b, a);
                let closure = bfs_closure(&s4, &[a, b]);
                assert_eq!(closure, if shares_point { 6 } else { 4 });
                assert!(!generates(&s4, &s));
            }
        }
    }

    /// Transpositions of S(4) form the conjugacy class of size 6.
    fn is_transposition(g: &GroupTable, x: usize) -> bool {
        let class: std::collections::BTreeSet<usize> = (0..g.order())
            .map(|w| g.mul(g.mul(w, x), g.inv(w)))
            .collect();
        g.inv(x) == x && x != 0 && class.len() == 6
    }

    /// Independent closure: subgroup generated by `gens`, by repeated products.
    fn bfs_closure(g: &GroupTable, gens: &[usize]) -> usize {
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &t in gens {
                let y = g.mul(x, t);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().filter(|&&b| b).count()
    }

    #[test]
    fn generation_matches_connectivity_on_small_groups() {
        for spec in ["C(8)", "D(8)", "C(2) x C(2) x C(2)", "A(4)", "S(3) x C(2)"] {
            let g = parse_group_spec(spec).unwrap();
            let p = g.involution_pair_partition();
            for bits in 0..p.subset_count() {
                let mut mask = 0u64;
                for (i, &x) in p.involutions.iter().enumerate() {
                    if bits >> i & 1 == 1 {
                        mask |= 1 << x;
                    }
                }
                for (j, &(x, y)) in p.pairs.iter().enumerate() {
                    if bits >> (p.involutions.len() + j) & 1 == 1 {
                        mask |= 1 << x | 1 << y;
                    }
                }
                let s = ConnectionSet::new(&g, mask).unwrap();
                let graph = cayley_graph(&g, &s);
                assert_eq!(generates(&g, &s), graph.is_connected(), "{spec} {mask:b}");
                assert_eq!(graph.regular_degree(), Some(s.len()));
                assert_eq!(graph.neighbors(0), mask);
            }
        }
    }

    #[test]
    fn right_translations_are_automorphisms() {
        for spec in ["D(10)", "A(4)", "S(3) x C(3)"] {
            let g = parse_group_spec(spec).unwrap();
            let n = g.order();
            // S = {all involutions} ∪ one inverse pair.
            let p = g.involution_pair_partition();
            let mut elems = p.involutions.clone();
            if let Some(&(x, y)) = p.pairs.first() {
                elems.extend([x, y]);
            }
            let s = ConnectionSet::from_elements(&g, &elems).unwrap();
            let graph = cayley_graph(&g, &s);
            for w in 0..n {
                let perm: Vec<usize> = (0..n).map(|u| g.mul(u, w)).collect();
                assert_eq!(graph.relabeled(&perm), graph, "{spec}, w = {w}");
            }
        }
    }

    #[test]
    fn left_translations_need_not_be_automorphisms() {
        let g = build_dihedral(6).unwrap();
        let s = ConnectionSet::from_elements(&g, &[3]).unwrap();
        let graph = cayley_graph(&g, &s);
        let preserved = (0..6).all(|w| {
            let perm: Vec<usize> = (0..6).map(|u| g.mul(w, u)).collect();
            graph.relabeled(&perm) == graph
        });
        assert!(!preserved);
    }

    #[test]
    fn vertex_transitivity_invariants() {
        let g = parse_group_spec("A(4) x C(2)").unwrap();
        let p = g.involution_pair_partition();
        let mut elems = p.involutions[..3].to_vec();
        for &(x, y) in &p.pairs[..2] {
            elems.extend([x, y]);
        }
        let s = ConnectionSet::from_elements(&g, &elems).unwrap();
        let graph = cayley_graph(&g, &s);
        let triangles = |v: usize| -> u32 {
            let nb = graph.neighbors(v);
            let mut t = 0;
            let mut m = nb;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                t += (graph.neighbors(u) & nb).count_ones();
            }
            t / 2
        };
        let t0 = triangles(0);
        assert!((0..g.order()).all(|v| triangles(v) == t0));
        assert!(graph.regular_degree().is_some());
    }
}
