use std::collections::HashMap;

use super::{GroupError, GroupTable, MAX_ORDER};

/// Cyclic group `C(n)` of order `n`, written additively.
pub fn build_cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GroupError::OrderOutOfRange { order: n });
    }
    GroupTable::from_fn(n, format!("C({n})"), |a, b| (a + b) % n)
}

/// Dihedral group `D(n)` of order `n` (not `2n`): `n/2` rotations followed by
/// `n/2` reflections.
///
/// Index `i < m` is the rotation `r^i` and index `m + i` is `s·r^i`, where
/// `m = n/2` and `r^a·s = s·r^-a`.
pub fn build_dihedral(n: usize) -> Result<GroupTable, GroupError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(GroupError::InvalidDihedral(n));
    }
    if n > MAX_ORDER {
        return Err(GroupError::OrderOutOfRange { order: n });
    }
    let m = n / 2;
    GroupTable::from_fn(n, format!("D({n})"), |a, b| {
        let (ra, ea) = (a >= m, a % m);
        let (rb, eb) = (b >= m, b % m);
        match (ra, rb) {
            (false, false) => (ea + eb) % m,
            (false, true) => m + (eb + m - ea) % m,
            (true, false) => m + (ea + eb) % m,
            (true, true) => (eb + m - ea) % m,
        }
    })
}

/// Symmetric group `S(k)` on `k` points. Elements are permutations in
/// lexicographic order, so the identity comes first.
pub fn build_symmetric(k: usize) -> Result<GroupTable, GroupError> {
    let perms = permutations(k, "S", k, false)?;
    permutation_group(perms, format!("S({k})"))
}

/// Alternating group `A(k)`: the even permutations of `k` points.
pub fn build_alternating(k: usize) -> Result<GroupTable, GroupError> {
    let perms = permutations(k, "A", k, true)?;
    permutation_group(perms, format!("A({k})"))
}

fn permutations(
    k: usize,
    tag: &str,
    arg: usize,
    even_only: bool,
) -> Result<Vec<Vec<u8>>, GroupError> {
    if k == 0 {
        return Err(GroupError::OrderOutOfRange { order: 0 });
    }
    let full: usize = (1..=k).product();
    let order = if even_only && k >= 2 { full / 2 } else { full };
    if order > MAX_ORDER {
        return Err(GroupError::OrderExceedsCap {
            what: format!("{tag}({arg})"),
            order,
        });
    }
    let mut out = Vec::with_capacity(full);
    let mut p: Vec<u8> = (0..k as u8).collect();
    loop {
        if !even_only || is_even(&p) {
            out.push(p.clone());
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    Ok(out)
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Product `a·b` is the composition `x ↦ a(b(x))`.
fn permutation_group(perms: Vec<Vec<u8>>, name: String) -> Result<GroupTable, GroupError> {
    let index: HashMap<&[u8], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut scratch = vec![0u8; perms[0].len()];
    GroupTable::from_fn(perms.len(), name, |a, b| {
        for (x, slot) in scratch.iter_mut().enumerate() {
            *slot = perms[a][perms[b][x] as usize];
        }
        index[scratch.as_slice()]
    })
}

/// Direct product `g × h`; the pair `(x, y)` gets index `x·|h| + y`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable, GroupError> {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    let name = format!("{} x {}", g.name(), h.name());
    if order > MAX_ORDER {
        return Err(GroupError::OrderExceedsCap { what: name, order });
    }
    GroupTable::from_fn(order, name, |a, b| {
        g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh)
    })
}
