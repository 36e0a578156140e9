//! Small finite groups stored as validated multiplication tables.
//!
//! Every [`GroupTable`] keeps the identity at index 0, has Latin-square rows
//! and columns, is associative, and carries its inverse map. Orders are capped
//! at [`MAX_ORDER`] so that a set of elements fits in one `u64`.

mod builders;
mod spec;

use std::fmt;

use thiserror::Error;

pub use builders::{
    build_alternating, build_cyclic, build_dihedral, build_symmetric, direct_product,
};
pub use spec::parse_group_spec;

/// Largest supported group order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {order} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange { order: usize },
    #[error("dihedral order must be even and at least 4, got {0}")]
    InvalidDihedral(usize),
    #[error("{what} has order {order}, which exceeds the cap of {MAX_ORDER}")]
    OrderExceedsCap { what: String, order: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry mul[{a}][{b}] = {value} is out of range 0..{order}")]
    EntryOutOfRange {
        a: usize,
        b: usize,
        value: usize,
        order: usize,
    },
    #[error("Latin-square violation in row {row}: value {value} repeats at columns {first} and {second}")]
    LatinRow {
        row: usize,
        value: usize,
        first: usize,
        second: usize,
    },
    #[error("Latin-square violation in column {col}: value {value} repeats at rows {first} and {second}")]
    LatinColumn {
        col: usize,
        value: usize,
        first: usize,
        second: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails for ({a}, {b}, {c}): (ab)c = {left}, a(bc) = {right}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },
    #[error("element {x} has right inverse {right} but it is not a left inverse")]
    Inverse { x: usize, right: usize },
    #[error("malformed table file: {0}")]
    Format(String),
}

/// A finite group as a multiplication table with the identity at index 0.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    name: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl GroupTable {
    /// Builds a table from a product closure. The closure must already describe
    /// a group with identity 0; this is checked in debug builds.
    pub(crate) fn from_fn(
        order: usize,
        name: impl Into<String>,
        mut product: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange { order });
        }
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = product(a, b) as u8;
            }
        }
        let inv = (0..order)
            .map(|x| (0..order).find(|&y| mul[x * order + y] == 0).unwrap_or(0) as u8)
            .collect();
        let table = GroupTable {
            order,
            mul,
            inv,
            name: name.into(),
        };
        debug_assert!(table.check_axioms().is_ok(), "builder produced a non-group");
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Index of the product `a·b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.mul[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&x| x as usize)
    }

    /// Multiplicative order of element `x`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    /// The rows of the table as plain indices.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }

    /// Ingests an arbitrary square table, checking every group axiom and
    /// renumbering so that the identity sits at index 0.
    pub fn validate_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange { order: n });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange {
                        a: r,
                        b: c,
                        value: v,
                        order: n,
                    });
                }
            }
        }
        check_latin(n, |a, b| rows[a][b])?;
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        // Swap labels e <-> 0 so the identity is index 0.
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u8;
            }
        }
        let inv: Vec<u8> = (0..n)
            .map(|x| (0..n).find(|&y| mul[x * n + y] == 0).unwrap() as u8)
            .collect();
        let table = GroupTable {
            order: n,
            mul,
            inv,
            name: format!("table({n})"),
        };
        // Witnesses are reported in the caller's labels.
        let back = |err| match err {
            GroupError::NotAssociative {
                a,
                b,
                c,
                left,
                right,
            } => GroupError::NotAssociative {
                a: relabel(a),
                b: relabel(b),
                c: relabel(c),
                left: relabel(left),
                right: relabel(right),
            },
            GroupError::Inverse { x, right } => GroupError::Inverse {
                x: relabel(x),
                right: relabel(right),
            },
            other => other,
        };
        table.check_associative().map_err(back)?;
        table.check_inverses().map_err(back)?;
        Ok(table)
    }

    /// Re-checks all four axioms. Used by tests and debug assertions.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::NoIdentity);
            }
        }
        check_latin(n, |a, b| self.mul(a, b))?;
        self.check_associative()?;
        self.check_inverses()
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let left = self.mul(ab, c);
                    let right = self.mul(a, self.mul(b, c));
                    if left != right {
                        return Err(GroupError::NotAssociative {
                            a,
                            b,
                            c,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_inverses(&self) -> Result<(), GroupError> {
        for x in 0..self.order {
            let y = self.inv(x);
            if self.mul(x, y) != 0 || self.mul(y, x) != 0 {
                return Err(GroupError::Inverse { x, right: y });
            }
        }
        Ok(())
    }

    /// Splits the non-identity elements into involutions and inverse pairs.
    pub fn involution_pair_partition(&self) -> InvolutionPairPartition {
        let mut involutions = Vec::new();
        let mut pairs = Vec::new();
        for x in 1..self.order {
            let y = self.inv(x);
            if y == x {
                involutions.push(x);
            } else if x < y {
                pairs.push((x, y));
            }
        }
        InvolutionPairPartition { involutions, pairs }
    }

    /// Parses the text table format: first line `n`, then `n` rows of `n`
    /// whitespace-separated indices.
    pub fn parse_table_text(text: &str) -> Result<Vec<Vec<usize>>, GroupError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or(GroupError::Empty)?
            .parse()
            .map_err(|_| GroupError::Format("first line must be the order".into()))?;
        let rows: Vec<Vec<usize>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| GroupError::Format(format!("bad entry {t:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if rows.len() != n {
            return Err(GroupError::Format(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Ok(rows)
    }

    pub fn to_table_text(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn check_latin(n: usize, entry: impl Fn(usize, usize) -> usize) -> Result<(), GroupError> {
    for r in 0..n {
        let mut seen = [usize::MAX; MAX_ORDER];
        for c in 0..n {
            let v = entry(r, c);
            if seen[v] != usize::MAX {
                return Err(GroupError::LatinRow {
                    row: r,
                    value: v,
                    first: seen[v],
                    second: c,
                });
            }
            seen[v] = c;
        }
    }
    for c in 0..n {
        let mut seen = [usize::MAX; MAX_ORDER];
        for r in 0..n {
            let v = entry(r, c);
            if seen[v] != usize::MAX {
                return Err(GroupError::LatinColumn {
                    col: c,
                    value: v,
                    first: seen[v],
                    second: r,
                });
            }
            seen[v] = r;
        }
    }
    Ok(())
}

/// Non-identity elements split into self-inverse elements and `{x, x⁻¹}`
/// pairs. Inverse-closed subsets are exactly unions of parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionPairPartition {
    pub involutions: Vec<usize>,
    /// Each pair is stored as `(x, x⁻¹)` with `x < x⁻¹`.
    pub pairs: Vec<(usize, usize)>,
}

impl InvolutionPairPartition {
    /// Number of independent choices when building an inverse-closed set.
    pub fn parts(&self) -> usize {
        self.involutions.len() + self.pairs.len()
    }

    /// Size of the space of inverse-closed identity-free subsets.
    pub fn subset_count(&self) -> u64 {
        1u64 << self.parts()
    }
}
