#![allow(dead_code)]

use nucifera_core::BitGraph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// All `i < j` vertex pairs in row-major upper-triangle order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// The graph whose edge set is selected by the bits of `code` over `pairs(n)`.
pub fn graph_from_code(n: usize, code: u64) -> BitGraph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| code >> k & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    BitGraph::from_edges(n, &edges)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> BitGraph {
    let density: f64 = rng.gen_range(0.2..0.8);
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    BitGraph::from_edges(n, &edges)
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Exact rational Gauss–Jordan on `[A | I]`. Returns `det(A)` and, when it
/// is nonzero, `A⁻¹` row-major.
pub fn rational_inverse(g: &BitGraph) -> (BigRational, Option<Vec<BigRational>>) {
    let n = g.n();
    let w = 2 * n;
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..w)
                .map(|j| {
                    let v = if j < n {
                        g.has_edge(i, j) as i64
                    } else {
                        (j - n == i) as i64
                    };
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return (BigRational::zero(), None);
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let p = m[k][k].clone();
        det *= &p;
        for c in 0..w {
            m[k][c] = &m[k][c] / &p;
        }
        for r in 0..n {
            if r == k || m[r][k].is_zero() {
                continue;
            }
            let f = m[r][k].clone();
            for c in 0..w {
                let t = &f * &m[k][c];
                m[r][c] -= t;
            }
        }
    }
    let inv = m
        .into_iter()
        .flat_map(|row| row.into_iter().skip(n))
        .collect();
    (det, Some(inv))
}

/// Determinant by permutation expansion (n ≤ 6 or so).
pub fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i64 = (0..n).map(|i| m[i][p[i]]).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
    });
    total
}

/// Calls `f` on every rearrangement of `p[k..]`.
pub fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Brute-force isomorphism by backtracking over vertex maps with degree
/// and adjacency consistency checks.
pub fn brute_isomorphic(g: &BitGraph, h: &BitGraph) -> bool {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    fn extend(g: &BitGraph, h: &BitGraph, map: &mut Vec<usize>, used: u64) -> bool {
        let v = map.len();
        if v == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used >> w & 1 == 1 || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                map.push(w);
                if extend(g, h, map, used | 1 << w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    extend(g, h, &mut Vec::with_capacity(n), 0)
}
