use crate::cayley::ConnectionSet;
use crate::groups::GroupTable;

/// Index space of inverse-closed, identity-free subsets.
///
/// Bit `i` of an index selects involution `i` for `i < #involutions`; the
/// remaining bits select inverse pairs. Index order is plain binary counting.
#[derive(Debug, Clone)]
pub struct SubsetSpace {
    parts: Vec<u64>,
    order: usize,
}

impl SubsetSpace {
    pub fn new(g: &GroupTable) -> Self {
        let p = g.involution_pair_partition();
        let parts = p
            .involutions
            .iter()
            .map(|&x| 1u64 << x)
            .chain(p.pairs.iter().map(|&(x, y)| 1u64 << x | 1u64 << y))
            .collect();
        SubsetSpace {
            parts,
            order: g.order(),
        }
    }

    pub fn parts(&self) -> usize {
        self.parts.len()
    }

    pub fn len(&self) -> u64 {
        1u64 << self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mask(&self, index: u64) -> u64 {
        let mut mask = 0;
        let mut bits = index;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            mask |= self.parts[i];
        }
        mask
    }

    pub fn connection_set(&self, index: u64) -> ConnectionSet {
        ConnectionSet::from_mask_unchecked(self.mask(index), self.order)
    }
}

/// Every inverse-closed identity-free subset with size in
/// `degree_min..=degree_max`, each exactly once, in index order.
pub fn enumerate_connection_sets(
    g: &GroupTable,
    degree_min: usize,
    degree_max: usize,
) -> impl Iterator<Item = ConnectionSet> {
    let space = SubsetSpace::new(g);
    (0..space.len()).filter_map(move |i| {
        let s = space.connection_set(i);
        (degree_min..=degree_max).contains(&s.len()).then_some(s)
    })
}
