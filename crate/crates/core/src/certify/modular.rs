//! Linear algebra over prime fields `GF(p)` for odd `p < 2^63`, using
//! Montgomery multiplication so no 128-bit division sits in the inner loops.

/// Arithmetic modulo an odd prime `p < 2^63` in Montgomery form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MontField {
    p: u64,
    /// `-p⁻¹ mod 2^64`
    p_neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
    /// `2^192 mod p`
    r3: u64,
    one: u64,
}

impl MontField {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p > 2 && p < 1 << 63,
            "modulus must be an odd prime below 2^63"
        );
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        let r3 = ((r2 as u128 * r as u128) % p as u128) as u64;
        MontField {
            p,
            p_neg_inv: inv.wrapping_neg(),
            r2,
            r3,
            one: r,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.one
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero Montgomery-form element.
    ///
    /// Binary extended Euclid on the raw value `aR` gives `a⁻¹R⁻¹`;
    /// multiplying by `R³` in Montgomery form restores `a⁻¹R`.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.mul(binary_inverse(a, self.p), self.r3)
    }
}

/// `a⁻¹ mod p` for odd `p < 2^63` and `0 < a < p`.
fn binary_inverse(a: u64, p: u64) -> u64 {
    let (mut u, mut v) = (a, p);
    let (mut x1, mut x2) = (1u64, 0u64);
    let half = p.div_ceil(2);
    let halve = |x: u64| if x & 1 == 0 { x >> 1 } else { (x >> 1) + half };
    while u != 1 && v != 1 {
        while u & 1 == 0 {
            u >>= 1;
            x1 = halve(x1);
        }
        while v & 1 == 0 {
            v >>= 1;
            x2 = halve(x2);
        }
        if u >= v {
            u -= v;
            x1 = if x1 >= x2 { x1 - x2 } else { x1 + p - x2 };
        } else {
            v -= u;
            x2 = if x2 >= x1 { x2 - x1 } else { x2 + p - x1 };
        }
    }
    if u == 1 {
        x1
    } else {
        x2
    }
}

/// Loads a 0/1 adjacency matrix (rows as bitmasks) into a dense `n × width`
/// Montgomery-form buffer. Columns past `n` are zeroed.
pub(crate) fn load_rows(f: &MontField, rows: &[u64], width: usize, out: &mut Vec<u64>) {
    let n = rows.len();
    out.clear();
    out.resize(n * width, 0);
    let one = f.one();
    for (i, &r) in rows.iter().enumerate() {
        let mut m = r;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            out[i * width + j] = one;
        }
    }
}

/// Forward elimination on an `n × width` buffer (first `n` columns square).
/// Returns the determinant of the square part in Montgomery form, zero if
/// it is singular. Rows below each pivot are cleared; the buffer is left in
/// row-echelon form with unnormalised pivots.
pub(crate) fn forward_eliminate(f: &MontField, a: &mut [u64], n: usize, width: usize) -> u64 {
    let mut det = f.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r * width + k] != 0) else {
            return 0;
        };
        if piv != k {
            for c in k..width {
                a.swap(piv * width + c, k * width + c);
            }
            det = f.neg(det);
        }
        let pivot = a[k * width + k];
        det = f.mul(det, pivot);
        let pinv = f.inv(pivot);
        let (top, bottom) = a.split_at_mut((k + 1) * width);
        let prow = &top[k * width..];
        for row in bottom.chunks_exact_mut(width) {
            let lead = row[k];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, pinv);
            row[k] = 0;
            for c in k + 1..width {
                let t = prow[c];
                if t != 0 {
                    row[c] = f.sub(row[c], f.mul(factor, t));
                }
            }
        }
    }
    det
}

/// Rank of an `n × n` 0/1 matrix over `GF(p)`.
pub fn rank_mod(f: &MontField, rows: &[u64]) -> usize {
    let n = rows.len();
    let mut a = Vec::new();
    load_rows(f, rows, n, &mut a);
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        for c in 0..n {
            a.swap(piv * n + c, rank * n + c);
        }
        let pinv = f.inv(a[rank * n + col]);
        for r in rank + 1..n {
            let lead = a[r * n + col];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, pinv);
            for c in col..n {
                let t = a[rank * n + c];
                a[r * n + c] = f.sub(a[r * n + c], f.mul(factor, t));
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of an adjacency matrix modulo a prime, as a plain residue.
pub fn det_mod_odd(f: &MontField, rows: &[u64]) -> u64 {
    let n = rows.len();
    let mut a = Vec::new();
    load_rows(f, rows, n, &mut a);
    f.from_mont(forward_eliminate(f, &mut a, n, n))
}

/// Determinant over `GF(2)` by XOR elimination on the bitmask rows.
pub fn det_mod_two(rows: &[u64]) -> u64 {
    let mut a = rows.to_vec();
    let n = a.len();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r] >> k & 1 == 1) else {
            return 0;
        };
        a.swap(piv, k);
        let prow = a[k];
        for row in a[k + 1..].iter_mut() {
            if *row >> k & 1 == 1 {
                *row ^= prow;
            }
        }
    }
    1
}

/// Determinant and adjugate of an adjacency matrix modulo `p`, both as
/// plain residues. Returns `None` for the adjugate when the matrix is
/// singular mod `p`.
pub(crate) fn det_and_adjugate_mod(f: &MontField, rows: &[u64]) -> (u64, Option<Vec<u64>>) {
    let n = rows.len();
    let width = 2 * n;
    let mut a = Vec::new();
    load_rows(f, rows, width, &mut a);
    for i in 0..n {
        a[i * width + n + i] = f.one();
    }
    let det = forward_eliminate(f, &mut a, n, width);
    if det == 0 {
        return (0, None);
    }
    // Back substitution to reduced form; the right half becomes A⁻¹.
    for k in (0..n).rev() {
        let pinv = f.inv(a[k * width + k]);
        for c in k..width {
            a[k * width + c] = f.mul(a[k * width + c], pinv);
        }
        for r in 0..k {
            let lead = a[r * width + k];
            if lead == 0 {
                continue;
            }
            a[r * width + k] = 0;
            for c in n..width {
                let t = a[k * width + c];
                a[r * width + c] = f.sub(a[r * width + c], f.mul(lead, t));
            }
        }
    }
    let mut adj = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            adj.push(f.from_mont(f.mul(det, a[i * width + n + j])));
        }
    }
    (f.from_mont(det), Some(adj))
}

/// Echelon reduction without tracking the determinant. Returns true when
/// the square part is singular.
pub(crate) fn forward_eliminate_nodet(
    f: &MontField,
    a: &mut [u64],
    n: usize,
    width: usize,
) -> bool {
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r * width + k] != 0) else {
            return true;
        };
        if piv != k {
            for c in k..width {
                a.swap(piv * width + c, k * width + c);
            }
        }
        let pinv = f.inv(a[k * width + k]);
        let (top, bottom) = a.split_at_mut((k + 1) * width);
        let prow = &top[k * width + k + 1..(k + 1) * width];
        for row in bottom.chunks_exact_mut(width) {
            let lead = row[k];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, pinv);
            for (x, &t) in row[k + 1..].iter_mut().zip(prow) {
                if t != 0 {
                    *x = f.sub(*x, f.mul(factor, t));
                }
            }
        }
    }
    false
}
