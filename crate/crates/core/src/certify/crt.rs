use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// Chinese remaindering for two coprime moduli whose product fits in `u127`,
/// returning the unique representative in `(-pq/2, pq/2]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CrtPair {
    p: u64,
    q: u64,
    /// `p⁻¹ mod q`
    p_inv_mod_q: u64,
    product: u128,
}

impl CrtPair {
    pub(crate) fn new(p: u64, q: u64) -> Self {
        let product = p as u128 * q as u128;
        assert!(product < 1 << 127, "modulus product must fit in i128");
        CrtPair {
            p,
            q,
            p_inv_mod_q: mod_inverse(p % q, q),
            product,
        }
    }

    pub(crate) fn product(&self) -> u128 {
        self.product
    }

    pub(crate) fn reconstruct(&self, a: u64, b: u64) -> i128 {
        let q = self.q as u128;
        // x = a + p·t with t = (b − a)·p⁻¹ mod q
        let diff = (b as u128 + q - (a as u128 % q)) % q;
        let t = mul_mod(diff, self.p_inv_mod_q as u128, q);
        let x = a as u128 + self.p as u128 * t;
        if x > self.product / 2 {
            -((self.product - x) as i128)
        } else {
            x as i128
        }
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m < 2^64, so the product fits.
    (a * b) % m
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    assert_eq!(old_r, 1, "moduli are not coprime");
    old_s.rem_euclid(m as i128) as u64
}

/// `⌊m^(m/2)⌋`, Hadamard's bound on `|det|` of an `m × m` 0/1 matrix.
pub fn hadamard_bound(m: usize) -> BigUint {
    BigUint::from(m).pow(m as u32).sqrt()
}

/// Same bound as `u128`, saturating.
pub(crate) fn hadamard_bound_u128(m: usize) -> u128 {
    hadamard_bound(m).to_u128().unwrap_or(u128::MAX)
}

/// True when values bounded by `⌊n^(n/2)⌋` (and hence all cofactors of an
/// `n × n` 0/1 matrix) are recovered exactly from residues modulo `product`.
pub(crate) fn exact_for(n: usize, product: u128) -> bool {
    let bound = hadamard_bound(n.max(1));
    bound * 2u32 + BigUint::one() <= BigUint::from(product)
}
