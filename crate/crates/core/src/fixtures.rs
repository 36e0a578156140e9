//! Reference data shipped with the crate.

/// The 24-vertex nuciferous graph on `A(4) x C(2)` as adjacency text.
pub const TABLE2_ADJ: &str = include_str!("../fixtures/table2.adj");

/// The integer matrix `M` with `A⁻¹ = M / 21` for [`TABLE2_ADJ`].
pub const TABLE2_INVERSE_X21: &str = include_str!("../fixtures/table2_inverse_x21.txt");

/// Denominator of the stored inverse.
pub const TABLE2_DENOMINATOR: i128 = 21;

/// Expected `order,group,degree,count` rows for the groups of order 24, 28
/// and 30 that carry nuciferous Cayley graphs.
pub const TABLE1_CSV: &str = include_str!("../fixtures/table1.csv");

/// The ten groups listed in [`TABLE1_CSV`], in the same order.
pub const TABLE1_GROUPS: [&str; 10] = [
    "A(4) x C(2)",
    "D(12) x C(2)",
    "D(24)",
    "S(3) x C(4)",
    "S(4)",
    "D(28)",
    "C(30)",
    "D(10) x C(3)",
    "D(30)",
    "D(6) x C(5)",
];

/// Parses [`TABLE2_INVERSE_X21`] into rows.
pub fn table2_inverse_x21() -> Vec<Vec<i128>> {
    TABLE2_INVERSE_X21
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse().expect("fixture entries are integers"))
                .collect()
        })
        .collect()
}
