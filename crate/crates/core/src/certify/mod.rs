//! Exact verdicts on adjacency matrices.
//!
//! The determinant and the adjugate `adj(A) = det(A)·A⁻¹` are computed modulo
//! two primes near `2^62` and recovered by Chinese remaindering. The product
//! of the primes exceeds twice Hadamard's bound, so the recovered integers are
//! exact and every "this entry is zero" decision is made on an exact value.
//! A single nonzero residue is enough to prove an entry nonzero.
//!
//! Since `det(A) ≠ 0` whenever a verdict other than `Singular` is issued, the
//! zero pattern of `adj(A)` is the zero pattern of `A⁻¹`.

mod crt;
pub mod modular;
pub mod screen;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::BitGraph;
use crt::{exact_for, hadamard_bound_u128, CrtPair};
use modular::{det_and_adjugate_mod, det_mod_odd, det_mod_two, rank_mod, MontField};

pub use crt::hadamard_bound;

/// The two working primes (the largest primes below `2^62`) followed by two
/// spares used only if a working prime divides `det(A)`.
pub const PRIMES: [u64; 4] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("graph on {n} vertices is outside the certified range (max {max})")]
    ExactnessNotGuaranteed { n: usize, max: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("exactness violation: {0}")]
    ExactnessViolation(String),
    #[error("certificate verdict is {0}, expected nuciferous")]
    NotNuciferous(Verdict),
    #[error("certificate is for {cert} vertices but the graph has {graph}")]
    SizeMismatch { cert: usize, graph: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Singular,
    /// Smallest `i` with `adj[i][i] ≠ 0`.
    DiagNonzero {
        i: usize,
    },
    /// Lexicographically smallest `(i, j)`, `i ≠ j`, with `adj[i][j] = 0`.
    OffdiagZero {
        i: usize,
        j: usize,
    },
    Nuciferous,
}

impl Verdict {
    pub fn is_nuciferous(&self) -> bool {
        matches!(self, Verdict::Nuciferous)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Singular => write!(f, "singular"),
            Verdict::DiagNonzero { i } => {
                write!(f, "diagonal entry ({i}, {i}) of the inverse is nonzero")
            }
            Verdict::OffdiagZero { i, j } => {
                write!(f, "off-diagonal entry ({i}, {j}) of the inverse is zero")
            }
            Verdict::Nuciferous => write!(f, "nuciferous"),
        }
    }
}

/// The configured moduli. Two must be "good" (not dividing `det(A)`) for the
/// adjugate to be recovered.
#[derive(Debug, Clone)]
pub struct PrimeSet {
    primes: Vec<u64>,
    fields: Vec<MontField>,
}

impl Default for PrimeSet {
    fn default() -> Self {
        PrimeSet::new(&PRIMES)
    }
}

impl PrimeSet {
    /// All entries must be distinct odd primes below `2^63`, at least two.
    pub fn new(primes: &[u64]) -> Self {
        assert!(primes.len() >= 2);
        PrimeSet {
            primes: primes.to_vec(),
            fields: primes.iter().map(|&p| MontField::new(p)).collect(),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn field(&self, idx: usize) -> &MontField {
        &self.fields[idx]
    }

    fn pair_product(&self, a: usize, b: usize) -> u128 {
        self.primes[a] as u128 * self.primes[b] as u128
    }

    /// Largest order `n` for which any two of the configured primes certify
    /// every determinant and cofactor of an `n × n` 0/1 matrix.
    pub fn certified_max_order(&self) -> usize {
        let mut sorted = self.primes.clone();
        sorted.sort_unstable();
        let weakest = sorted[0] as u128 * sorted[1] as u128;
        (1..=crate::graph::MAX_VERTICES)
            .take_while(|&n| exact_for(n, weakest))
            .last()
            .unwrap_or(0)
    }
}

/// Exact determinant and adjugate of an adjacency matrix, with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub det: i128,
    /// Row-major `n × n` adjugate; `None` when the matrix is singular.
    pub adj: Option<Vec<i128>>,
    pub verdict: Verdict,
    pub primes_used: Vec<u64>,
}

impl Certificate {
    pub fn adj_entry(&self, i: usize, j: usize) -> Option<i128> {
        self.adj.as_ref().map(|a| a[i * self.n + j])
    }

    /// `A⁻¹[i][j]` as a reduced fraction `(numerator, denominator)` with a
    /// positive denominator.
    pub fn inverse_entry(&self, i: usize, j: usize) -> Option<(i128, i128)> {
        let num = self.adj_entry(i, j)?;
        let (mut num, mut den) = (num, self.det);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        Some((num / g, den / g))
    }

    /// Checks `A·adj = det·I` entry by entry in exact arithmetic.
    pub fn check_adjugate_identity(&self, a: &BitGraph) -> Result<(), CertifyError> {
        let Some(adj) = &self.adj else {
            return Ok(());
        };
        let n = self.n;
        if a.n() != n {
            return Err(CertifyError::SizeMismatch {
                cert: n,
                graph: a.n(),
            });
        }
        for i in 0..n {
            let row = a.neighbors(i);
            for j in 0..n {
                let mut acc: i128 = 0;
                let mut m = row;
                while m != 0 {
                    let k = m.trailing_zeros() as usize;
                    m &= m - 1;
                    acc = acc.checked_add(adj[k * n + j]).ok_or_else(|| {
                        CertifyError::ExactnessViolation("overflow in A·adj".into())
                    })?;
                }
                let want = if i == j { self.det } else { 0 };
                if acc != want {
                    return Err(CertifyError::ExactnessViolation(format!(
                        "(A·adj)[{i}][{j}] = {acc}, expected {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            n: self.n,
            det: self.det.to_string(),
            adj: self.adj.as_ref().map(|a| {
                a.chunks(self.n.max(1))
                    .map(|r| r.iter().map(|v| v.to_string()).collect())
                    .collect()
            }),
            verdict: self.verdict,
            primes: self.primes_used.clone(),
        }
    }
}

/// Lossless serialisable form: 128-bit values as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: usize,
    pub det: String,
    pub adj: Option<Vec<Vec<String>>>,
    pub verdict: Verdict,
    pub primes: Vec<u64>,
}

impl CertificateRecord {
    pub fn to_certificate(&self) -> Result<Certificate, String> {
        let parse = |s: &str| {
            s.parse::<i128>()
                .map_err(|e| format!("bad integer {s:?}: {e}"))
        };
        let adj = match &self.adj {
            None => None,
            Some(rows) => {
                let mut flat = Vec::with_capacity(self.n * self.n);
                for r in rows {
                    if r.len() != self.n {
                        return Err("ragged adjugate".into());
                    }
                    for v in r {
                        flat.push(parse(v)?);
                    }
                }
                if flat.len() != self.n * self.n {
                    return Err("adjugate has the wrong size".into());
                }
                Some(flat)
            }
        };
        Ok(Certificate {
            n: self.n,
            det: parse(&self.det)?,
            adj,
            verdict: self.verdict,
            primes_used: self.primes.clone(),
        })
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// `det(A) mod p` for any prime `p < 2^63`.
pub fn det_mod(a: &BitGraph, p: u64) -> u64 {
    if p == 2 {
        det_mod_two(a.rows())
    } else {
        det_mod_odd(&MontField::new(p), a.rows())
    }
}

fn check_range(a: &BitGraph, primes: &PrimeSet) -> Result<(), CertifyError> {
    if a.n() == 0 {
        return Err(CertifyError::EmptyGraph);
    }
    let max = primes.certified_max_order();
    if a.n() > max {
        return Err(CertifyError::ExactnessNotGuaranteed { n: a.n(), max });
    }
    Ok(())
}

/// Exact determinant, adjugate and verdict using the default primes.
pub fn adjugate_exact(a: &BitGraph) -> Result<Certificate, CertifyError> {
    adjugate_exact_with(a, &PrimeSet::default())
}

pub fn adjugate_exact_with(a: &BitGraph, primes: &PrimeSet) -> Result<Certificate, CertifyError> {
    check_range(a, primes)?;
    let n = a.n();
    let rows = a.rows();

    let mut zero_mod = Vec::new();
    let mut good: Vec<(usize, u64, Vec<u64>)> = Vec::with_capacity(2);
    for idx in 0..primes.primes().len() {
        let (det, adj) = det_and_adjugate_mod(primes.field(idx), rows);
        match adj {
            Some(adj) => good.push((idx, det, adj)),
            None => zero_mod.push(idx),
        }
        // Zero modulo two primes: det ≡ 0 mod their product, which exceeds
        // twice the bound on |det|, so det = 0.
        if zero_mod.len() >= 2 && exact_for(n, primes.pair_product(zero_mod[0], zero_mod[1])) {
            return Ok(Certificate {
                n,
                det: 0,
                adj: None,
                verdict: Verdict::Singular,
                primes_used: zero_mod[..2].iter().map(|&i| primes.primes()[i]).collect(),
            });
        }
        if good.len() == 2 {
            break;
        }
    }
    if good.len() < 2 {
        return Err(CertifyError::ExactnessViolation(
            "not enough primes coprime to the determinant".into(),
        ));
    }
    let (ia, det_a, adj_a) = &good[0];
    let (ib, det_b, adj_b) = &good[1];
    let crt = CrtPair::new(primes.primes()[*ia], primes.primes()[*ib]);
    debug_assert!(exact_for(n, crt.product()));
    let det = crt.reconstruct(*det_a, *det_b);
    let adj: Vec<i128> = adj_a
        .iter()
        .zip(adj_b)
        .map(|(&x, &y)| crt.reconstruct(x, y))
        .collect();

    let det_bound = hadamard_bound_u128(n);
    let cof_bound = hadamard_bound_u128(n - 1);
    if det == 0 || det.unsigned_abs() > det_bound {
        return Err(CertifyError::ExactnessViolation(format!(
            "|det| = {} violates 0 < |det| <= {det_bound}",
            det.unsigned_abs()
        )));
    }
    if let Some(v) = adj.iter().find(|v| v.unsigned_abs() > cof_bound) {
        return Err(CertifyError::ExactnessViolation(format!(
            "adjugate entry {v} exceeds the cofactor bound {cof_bound}"
        )));
    }

    let verdict = classify(n, &adj);
    let cert = Certificate {
        n,
        det,
        adj: Some(adj),
        verdict,
        primes_used: vec![primes.primes()[*ia], primes.primes()[*ib]],
    };
    cert.check_adjugate_identity(a)?;
    if verdict.is_nuciferous() && !a.is_connected() {
        return Err(CertifyError::ExactnessViolation(
            "nuciferous verdict on a disconnected graph".into(),
        ));
    }
    Ok(cert)
}

fn classify(n: usize, adj: &[i128]) -> Verdict {
    if let Some(i) = (0..n).find(|&i| adj[i * n + i] != 0) {
        return Verdict::DiagNonzero { i };
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && adj[i * n + j] == 0 {
                return Verdict::OffdiagZero { i, j };
            }
        }
    }
    Verdict::Nuciferous
}

/// Certificate for the nuciferous property. Singular matrices are detected
/// from determinants alone before any adjugate work.
pub fn is_nuciferous(a: &BitGraph) -> Result<Certificate, CertifyError> {
    let primes = PrimeSet::default();
    check_range(a, &primes)?;
    let d0 = det_mod_odd(primes.field(0), a.rows());
    let d1 = det_mod_odd(primes.field(1), a.rows());
    if d0 == 0 && d1 == 0 {
        return Ok(Certificate {
            n: a.n(),
            det: 0,
            adj: None,
            verdict: Verdict::Singular,
            primes_used: primes.primes()[..2].to_vec(),
        });
    }
    adjugate_exact_with(a, &primes)
}

/// Whether deleting vertex `v` leaves a matrix of nullity exactly one.
///
/// `adj[v][v] = 0` is the determinant of `A − v`, so the nullity is at least
/// one. If `A − v` has rank `n − 2` modulo some prime its rational rank is
/// at least that, so the nullity is at most one. If the rank drops modulo
/// both working primes, every `(n−2)`-minor vanishes modulo their product,
/// which exceeds the bound on those minors, so the nullity really is larger.
pub fn vertex_deleted_nullity_is_one(
    a: &BitGraph,
    cert: &Certificate,
    v: usize,
) -> Result<bool, CertifyError> {
    if !cert.verdict.is_nuciferous() {
        return Err(CertifyError::NotNuciferous(cert.verdict));
    }
    if cert.n != a.n() {
        return Err(CertifyError::SizeMismatch {
            cert: cert.n,
            graph: a.n(),
        });
    }
    if v >= a.n() {
        return Err(CertifyError::VertexOutOfRange { v, n: a.n() });
    }
    debug_assert_eq!(cert.adj_entry(v, v), Some(0));
    let reduced = a.delete_vertex(v);
    let target = a.n() - 2;
    let primes = PrimeSet::default();
    for idx in 0..2 {
        let r = rank_mod(primes.field(idx), reduced.rows());
        if r > target {
            return Err(CertifyError::ExactnessViolation(format!(
                "vertex-deleted matrix has rank {r} but its determinant is zero"
            )));
        }
        if r == target {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> BitGraph {
        BitGraph::from_edges(2, &[(0, 1)])
    }

    fn cycle(n: usize) -> BitGraph {
        BitGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn k2_is_nuciferous() {
        let c = adjugate_exact(&k2()).unwrap();
        assert_eq!(c.det, -1);
        assert_eq!(c.adj, Some(vec![0, -1, -1, 0]));
        assert_eq!(c.verdict, Verdict::Nuciferous);
        assert_eq!(c.inverse_entry(0, 1), Some((1, 1)));
        assert_eq!(is_nuciferous(&k2()).unwrap().verdict, Verdict::Nuciferous);
        for v in 0..2 {
            assert!(vertex_deleted_nullity_is_one(&k2(), &c, v).unwrap());
        }
    }

    #[test]
    fn five_cycle_has_nonzero_diagonal() {
        let c5 = cycle(5);
        let c = adjugate_exact(&c5).unwrap();
        assert_eq!(c.det, 2);
        for i in 0..5 {
            assert_eq!(c.adj_entry(i, i), Some(1));
        }
        assert_eq!(c.verdict, Verdict::DiagNonzero { i: 0 });
        assert!(matches!(
            vertex_deleted_nullity_is_one(&c5, &c, 0),
            Err(CertifyError::NotNuciferous(_))
        ));
    }

    #[test]
    fn two_disjoint_edges_have_zero_offdiagonal() {
        let g = BitGraph::from_edges(4, &[(0, 1), (2, 3)]);
        let c = is_nuciferous(&g).unwrap();
        assert_eq!(c.verdict, Verdict::OffdiagZero { i: 0, j: 2 });
        assert_eq!(c.det, 1);
    }

    #[test]
    fn four_cycle_is_singular() {
        let c = is_nuciferous(&cycle(4)).unwrap();
        assert_eq!(c.verdict, Verdict::Singular);
        assert_eq!(c.det, 0);
        assert_eq!(
            adjugate_exact(&cycle(4)).unwrap().verdict,
            Verdict::Singular
        );
        assert_eq!(det_mod(&cycle(4), 1_000_000_007), 0);
        assert_eq!(det_mod(&cycle(4), 2), 0);
    }

    #[test]
    fn det_mod_of_k2() {
        assert_eq!(det_mod(&k2(), 1_000_000_007), 1_000_000_006);
        assert_eq!(det_mod(&k2(), 2), 1);
    }

    #[test]
    fn range_errors() {
        assert_eq!(PrimeSet::default().certified_max_order(), 44);
        let big = BitGraph::empty(45).unwrap();
        assert_eq!(
            adjugate_exact(&big),
            Err(CertifyError::ExactnessNotGuaranteed { n: 45, max: 44 })
        );
        assert_eq!(
            adjugate_exact(&BitGraph::empty(0).unwrap()),
            Err(CertifyError::EmptyGraph)
        );
    }

    #[test]
    fn single_vertex_is_singular() {
        let c = adjugate_exact(&BitGraph::empty(1).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Singular);
    }

    #[test]
    fn unlucky_prime_falls_through_to_spares() {
        // K4 has determinant -3; with 3 as the first modulus the
        // elimination must move on to the next two primes.
        let c5 = cycle(5); // det 2
        let k4 = BitGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]); // det -3
        let primes = PrimeSet::new(&[3, PRIMES[0], PRIMES[1]]);
        let cert = adjugate_exact_with(&k4, &primes).unwrap();
        assert_eq!(cert.det, -3);
        assert_eq!(cert.primes_used, vec![PRIMES[0], PRIMES[1]]);
        assert_eq!(cert.verdict, Verdict::DiagNonzero { i: 0 });
        let reference = adjugate_exact(&c5).unwrap();
        let again = adjugate_exact_with(&c5, &PrimeSet::new(&[PRIMES[2], PRIMES[3]])).unwrap();
        assert_eq!(reference.adj, again.adj);
    }

    #[test]
    fn record_round_trip() {
        let c = adjugate_exact(&cycle(5)).unwrap();
        let json = serde_json::to_string(&c.to_record()).unwrap();
        assert!(json.contains("\"det\":\"2\""));
        let back: CertificateRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_certificate().unwrap(), c);
    }

    #[test]
    fn corrupted_adjugate_fails_identity() {
        let g = cycle(5);
        let mut c = adjugate_exact(&g).unwrap();
        c.adj.as_mut().unwrap()[3] += 1;
        assert!(matches!(
            c.check_adjugate_identity(&g),
            Err(CertifyError::ExactnessViolation(_))
        ));
    }
}
