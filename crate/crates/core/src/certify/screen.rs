//! Cheap per-candidate screening used by the exhaustive search.
//!
//! The first pass works modulo the Mersenne prime `2^31 − 1`, where a
//! reduction is two shifts and two adds. Only conclusions that hold over the
//! integers are reported:
//!
//! * `det(A) ≢ 0` and `(A⁻¹)[0][0] ≢ 0` modulo any prime proves both integers
//!   nonzero;
//! * singularity is reported only together with an integer kernel vector
//!   that has been checked exactly against `A`.
//!
//! Anything else falls through to the big-prime screen.

use super::modular::{forward_eliminate_nodet, MontField};

/// `2^31 − 1`.
pub const MERSENNE31: u64 = (1 << 31) - 1;
const P: u64 = MERSENNE31;
/// Rational reconstruction bound `⌊√(P/2)⌋`.
const RR_BOUND: i64 = 32767;
/// Largest common denominator accepted for a reconstructed kernel vector.
const MAX_DENOMINATOR: i64 = 1 << 24;

/// Reusable buffers for [`screen_first_diagonal`] and [`fast_screen`].
#[derive(Debug, Default)]
pub struct ScreenScratch {
    buf: Vec<u64>,
    pivot_col: Vec<usize>,
    x: Vec<u64>,
}

/// What one prime says about `A` and `(A⁻¹)[0][0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnScreen {
    /// `det(A) ≡ 0` modulo this prime.
    SingularMod,
    /// `det(A) ≢ 0` and `(A⁻¹)[0][0] ≢ 0`: the entry is certainly nonzero.
    CornerNonzero,
    /// `det(A) ≢ 0` and `(A⁻¹)[0][0] ≡ 0`: the entry may be zero.
    CornerZeroMod,
}

/// Outcome of [`fast_screen`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastScreen {
    /// `A` is invertible and `(A⁻¹)[0][0] ≠ 0`, exactly.
    CornerNonzero,
    /// An integer vector `x ≠ 0` with `A·x = 0` was found and verified.
    SingularCertified,
    /// No exact conclusion.
    Inconclusive,
}

/// Loads `A` with vertex 0 moved to the last index (new index `i` is vertex
/// `(i + 1) mod n`), augmented with the column `e_last`.
fn load_rotated(rows: &[u64], one: u64, a: &mut Vec<u64>) {
    let n = rows.len();
    let width = n + 1;
    a.clear();
    a.resize(n * width, 0);
    for i in 0..n {
        let r = rows[(i + 1) % n];
        let mut m = (r >> 1) | ((r & 1) << (n - 1));
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            a[i * width + j] = one;
        }
    }
    a[(n - 1) * width + n] = one;
}

/// Decides over `GF(p)` whether `A` is invertible and whether `(A⁻¹)[0][0]`
/// vanishes.
///
/// `A·x = e₀` is reduced to echelon form with vertex 0 last. The last
/// unknown is then the right-hand side of the last row divided by a nonzero
/// pivot, so no back substitution is needed.
pub fn screen_first_diagonal(
    f: &MontField,
    rows: &[u64],
    scratch: &mut ScreenScratch,
) -> ColumnScreen {
    let n = rows.len();
    let width = n + 1;
    load_rotated(rows, f.one(), &mut scratch.buf);
    let a = &mut scratch.buf;
    if forward_eliminate_nodet(f, a, n, width) {
        ColumnScreen::SingularMod
    } else if a[(n - 1) * width + n] != 0 {
        ColumnScreen::CornerNonzero
    } else {
        ColumnScreen::CornerZeroMod
    }
}

#[inline]
fn red(x: u64) -> u64 {
    let x = (x & P) + (x >> 31);
    let x = (x & P) + (x >> 31);
    if x >= P {
        x - P
    } else {
        x
    }
}

#[inline]
fn mulm(a: u64, b: u64) -> u64 {
    red(a * b)
}

fn invm(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base);
        }
        base = mulm(base, base);
        e >>= 1;
    }
    acc
}

/// First-pass screen modulo `2^31 − 1`. See the module docs for soundness.
pub fn fast_screen(rows: &[u64], scratch: &mut ScreenScratch) -> FastScreen {
    let n = rows.len();
    let width = n + 1;
    load_rotated(rows, 1, &mut scratch.buf);
    let a = &mut scratch.buf;
    let pivot_col = &mut scratch.pivot_col;
    pivot_col.clear();
    let mut free = None;
    for col in 0..n {
        let rank = pivot_col.len();
        let Some(piv) = (rank..n).find(|&r| a[r * width + col] != 0) else {
            free.get_or_insert(col);
            continue;
        };
        if piv != rank {
            for c in col..width {
                a.swap(piv * width + c, rank * width + c);
            }
        }
        let pinv = invm(a[rank * width + col]);
        let (top, bottom) = a.split_at_mut((rank + 1) * width);
        let prow = &top[rank * width + col + 1..(rank + 1) * width];
        for row in bottom.chunks_exact_mut(width) {
            let lead = row[col];
            if lead == 0 {
                continue;
            }
            let neg = P - mulm(lead, pinv);
            row[col] = 0;
            for (x, &t) in row[col + 1..].iter_mut().zip(prow) {
                *x = red(*x + neg * t);
            }
        }
        pivot_col.push(col);
    }
    match free {
        None if a[(n - 1) * width + n] != 0 => FastScreen::CornerNonzero,
        None => FastScreen::Inconclusive,
        Some(f) => {
            if kernel_certified(rows, a, pivot_col, f, &mut scratch.x) {
                FastScreen::SingularCertified
            } else {
                FastScreen::Inconclusive
            }
        }
    }
}

/// Back-substitutes the echelon form for the kernel vector with free
/// variable `free` set to 1 (other free variables 0), lifts it to the
/// integers by rational reconstruction and checks `A·x = 0` exactly.
fn kernel_certified(
    rows: &[u64],
    a: &[u64],
    pivot_col: &[usize],
    free: usize,
    x: &mut Vec<u64>,
) -> bool {
    let n = rows.len();
    let width = n + 1;
    x.clear();
    x.resize(n, 0);
    x[free] = 1;
    for (r, &c) in pivot_col.iter().enumerate().rev() {
        let mut s = 0;
        for j in c + 1..n {
            s = red(s + a[r * width + j] * x[j]);
        }
        x[c] = if s == 0 {
            0
        } else {
            mulm(P - s, invm(a[r * width + c]))
        };
    }
    let mut frac = Vec::with_capacity(n);
    let mut denom: i64 = 1;
    for &v in x.iter() {
        let Some((num, den)) = reconstruct(v) else {
            return false;
        };
        denom = denom / gcd(denom, den) * den;
        if denom > MAX_DENOMINATOR {
            return false;
        }
        frac.push((num, den));
    }
    // Integer vector in original vertex order: rotated index i is vertex i + 1.
    let mut z = vec![0i64; n];
    for (i, &(num, den)) in frac.iter().enumerate() {
        z[(i + 1) % n] = num * (denom / den);
    }
    debug_assert!(z.iter().any(|&v| v != 0));
    rows.iter().all(|&r| {
        let mut m = r;
        let mut s = 0i64;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            s += z[j];
        }
        s == 0
    })
}

/// `v ≡ num/den (mod P)` with `|num|, den ≤ RR_BOUND`, if such a fraction
/// exists.
fn reconstruct(v: u64) -> Option<(i64, i64)> {
    let (mut r0, mut r1) = (P as i64, v as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > RR_BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > RR_BOUND {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    (gcd(num.abs(), den) == 1).then_some((num, den))
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
