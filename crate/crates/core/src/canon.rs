//! Canonical labeling by individualization and refinement.
//!
//! Cells of an ordered partition are refined until equitable: every vertex in
//! a cell has the same number of neighbours in every other cell. A discrete
//! partition gives a vertex order; the canonical form is the order whose
//! upper-triangle adjacency bitstring is lexicographically least over the
//! whole search tree. Automorphisms discovered at equal leaves prune sibling
//! branches that lie in the same orbit of the pointwise stabiliser of the
//! current path.

use std::fmt;

use thiserror::Error;

use crate::graph::BitGraph;

/// Search-tree nodes allowed before giving up.
pub const DEFAULT_NODE_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical labeling aborted after {0} search nodes")]
    NodeLimit(u64),
}

/// Packed upper triangle (row-major, `i < j`, most significant bit first) of
/// the canonically relabelled adjacency matrix, prefixed by the order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCert {
    n: usize,
    bits: Vec<u8>,
}

impl CanonCert {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_hex(&self) -> String {
        let mut s = format!("{:02x}", self.n);
        for b in &self.bits {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) || s.len() < 2 {
            return None;
        }
        let bytes: Vec<u8> = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<_>>()?;
        let n = bytes[0] as usize;
        let bits = bytes[1..].to_vec();
        (bits.len() == (n * n.saturating_sub(1) / 2).div_ceil(8)).then_some(CanonCert { n, bits })
    }

    /// Rebuilds the canonical graph encoded by this cert.
    pub fn to_graph(&self) -> BitGraph {
        let mut g = BitGraph::empty(self.n).expect("cert order is at most 64");
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.bits[k / 8] >> (7 - k % 8) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonCert({})", self.to_hex())
    }
}

impl fmt::Display for CanonCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub cert: CanonCert,
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: Vec<usize>,
}

fn cert_for_order(g: &BitGraph, order: &[usize], out: &mut Vec<u8>) {
    let n = g.n();
    out.clear();
    out.resize((n * n.saturating_sub(1) / 2).div_ceil(8), 0);
    let mut k = 0;
    for i in 0..n {
        let row = g.neighbors(order[i]);
        for &vj in &order[i + 1..] {
            if row >> vj & 1 == 1 {
                out[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
}

/// Refines an ordered partition (cells as vertex masks) to the coarsest
/// equitable refinement. Split cells keep their position; the parts are
/// ordered by increasing neighbour count into the splitting cell.
fn refine(g: &BitGraph, cells: &mut Vec<u64>) {
    let mut buckets = [0u64; 65];
    let mut next = Vec::with_capacity(g.n());
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            next.clear();
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                let (mut lo, mut hi) = (64usize, 0usize);
                let mut m = cell;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let c = (g.neighbors(v) & splitter).count_ones() as usize;
                    buckets[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                for b in &mut buckets[lo..=hi] {
                    if *b != 0 {
                        next.push(*b);
                        *b = 0;
                    }
                }
            }
            if next.len() != cells.len() {
                std::mem::swap(cells, &mut next);
                changed = true;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    automorphisms: Vec<Vec<u8>>,
    nodes: u64,
    limit: u64,
    scratch: Vec<u8>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Result<(), CanonError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(CanonError::NodeLimit(self.limit));
        }
        refine(self.g, &mut cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            self.leaf(&cells);
            return Ok(());
        };
        let cell = cells[target];
        let mut tried: Vec<usize> = Vec::new();
        let mut m = cell;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, path) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            self.run(child, path)?;
            path.pop();
        }
        Ok(())
    }

    fn leaf(&mut self, cells: &[u64]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        cert_for_order(self.g, &order, &mut self.scratch);
        match &self.best {
            None => self.best = Some((self.scratch.clone(), order)),
            Some((bits, best_order)) => match self.scratch.cmp(bits) {
                std::cmp::Ordering::Less => self.best = Some((self.scratch.clone(), order)),
                std::cmp::Ordering::Equal => {
                    // Both orders give the same labelled graph, so matching
                    // positions is an automorphism.
                    let mut gamma = vec![0u8; order.len()];
                    for (pos, &v) in order.iter().enumerate() {
                        gamma[v] = best_order[pos] as u8;
                    }
                    if gamma.iter().enumerate().any(|(i, &x)| x as usize != i) {
                        self.automorphisms.push(gamma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `v` shares an orbit with an already explored sibling under the
    /// automorphisms found so far that fix `path` pointwise.
    fn equivalent_to_tried(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&u| gamma[u] as usize != u) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y as usize));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

pub fn canonical_form(g: &BitGraph) -> Result<CanonicalForm, CanonError> {
    canonical_form_with_limit(g, DEFAULT_NODE_LIMIT)
}

pub fn canonical_form_with_limit(g: &BitGraph, limit: u64) -> Result<CanonicalForm, CanonError> {
    let n = g.n();
    if n == 0 {
        return Ok(CanonicalForm {
            cert: CanonCert {
                n: 0,
                bits: Vec::new(),
            },
            perm: Vec::new(),
        });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
        nodes: 0,
        limit,
        scratch: Vec::new(),
    };
    search.run(vec![all], &mut Vec::new())?;
    let (bits, order) = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(CanonicalForm {
        cert: CanonCert { n, bits },
        perm,
    })
}

/// Returns an explicit isomorphism `g → h` (`map[v]` is the image of `v`)
/// when one exists. The map is checked edge by edge before it is returned.
pub fn is_isomorphic(g: &BitGraph, h: &BitGraph) -> Result<Option<Vec<usize>>, CanonError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let cg = canonical_form(g)?;
    let ch = canonical_form(h)?;
    Ok(witness(g, h, &cg, &ch))
}

/// Composes two canonical labelings into an isomorphism, verified.
pub fn witness(
    g: &BitGraph,
    h: &BitGraph,
    cg: &CanonicalForm,
    ch: &CanonicalForm,
) -> Option<Vec<usize>> {
    if cg.cert != ch.cert {
        return None;
    }
    let n = g.n();
    let mut h_at = vec![0; n];
    for (v, &pos) in ch.perm.iter().enumerate() {
        h_at[pos] = v;
    }
    let map: Vec<usize> = cg.perm.iter().map(|&pos| h_at[pos]).collect();
    assert_eq!(
        &g.relabeled(&map),
        h,
        "canonical labelings agree but the composed map is not an isomorphism"
    );
    Some(map)
}
