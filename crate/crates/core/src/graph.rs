//! Simple graphs on at most 64 vertices, one `u64` neighbourhood mask per
//! vertex, plus the two interchange formats: plain 0/1 adjacency text and
//! graph6.

use std::fmt;

use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("adjacency matrix is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) is {token:?}, expected 0 or 1")]
    NonBinary {
        row: usize,
        col: usize,
        token: String,
    },
    #[error("vertex {0} has a loop (nonzero diagonal entry)")]
    Loop(usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
}

/// Undirected simple graph; row `i` is the neighbourhood bitmask of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitGraph {
    n: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for BitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitGraph({}, {})", self.n, self.to_graph6())
    }
}

impl BitGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(BitGraph {
            n,
            rows: vec![0; n],
        })
    }

    /// Builds a graph from neighbourhood masks, checking symmetry, the zero
    /// diagonal and that no bit points past `n`.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let valid = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (i, &r) in rows.iter().enumerate() {
            if r & !valid != 0 {
                return Err(GraphError::NotSquare {
                    row: i,
                    len: 64 - r.leading_zeros() as usize,
                    expected: n,
                });
            }
            if r >> i & 1 == 1 {
                return Err(GraphError::Loop(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (rows[i] >> j & 1) != (rows[j] >> i & 1) {
                    return Err(GraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(BitGraph { n, rows })
    }

    /// Builds a graph from an edge list. Panics on out-of-range vertices or loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = BitGraph::empty(n).expect("too many vertices");
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.n && v < self.n && u != v,
            "invalid edge ({u}, {v})"
        );
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rows.first().map_or(0, |r| r.count_ones());
        self.rows
            .iter()
            .all(|r| r.count_ones() == d)
            .then_some(d as usize)
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Vertices reachable from `start`, as a mask.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut reached = 1u64 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[v];
            }
            frontier = next & !reached;
            reached |= next;
        }
        reached
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).count_ones() as usize == self.n
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> BitGraph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            let mut r = self.rows[u];
            let mut out = 0;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                out |= 1 << perm[v];
            }
            rows[perm[u]] = out;
        }
        BitGraph { n: self.n, rows }
    }

    /// The induced subgraph with vertex `v` removed; later vertices shift down.
    pub fn delete_vertex(&self, v: usize) -> BitGraph {
        let low = (1u64 << v) - 1;
        let squeeze = |r: u64| (r & low) | ((r >> 1) & !low);
        let rows = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| squeeze(self.rows[u]))
            .collect();
        BitGraph {
            n: self.n - 1,
            rows,
        }
    }

    /// Rows of space-separated 0/1 entries.
    pub fn to_adjacency_text(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n * 2);
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    s.push(' ');
                }
                s.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses a 0/1 adjacency matrix. Rows are separated by newlines or `/`;
    /// entries by whitespace or commas. Lines starting with `#` are skipped.
    pub fn from_adjacency_text(text: &str) -> Result<Self, GraphError> {
        let mut rows: Vec<Vec<String>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            for part in line.split('/') {
                let tokens: Vec<&str> = part
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .collect();
                match tokens.as_slice() {
                    [] => {}
                    [single] if single.len() > 1 => {
                        rows.push(single.chars().map(String::from).collect())
                    }
                    _ => rows.push(tokens.iter().map(|t| t.to_string()).collect()),
                }
            }
        }
        let n = rows.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut masks = vec![0u64; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, tok) in row.iter().enumerate() {
                match tok.as_str() {
                    "0" => {}
                    "1" => masks[i] |= 1 << j,
                    _ => {
                        return Err(GraphError::NonBinary {
                            row: i,
                            col: j,
                            token: tok.clone(),
                        })
                    }
                }
            }
        }
        BitGraph::from_rows(masks)
    }

    /// Standard graph6 encoding (no `>>graph6<<` header).
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = String::new();
        if n <= 62 {
            out.push((n as u8 + 63) as char);
        } else {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        }
        let mut acc = 0u8;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                k += 1;
                if k == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push(((acc << (6 - k)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(text: &str) -> Result<Self, GraphError> {
        let s = text.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(GraphError::Graph6(format!("invalid byte 0x{b:02x}")));
        }
        let (n, body) = match bytes {
            [] => return Err(GraphError::Graph6("empty string".into())),
            [126, 126, ..] => return Err(GraphError::Graph6("order too large".into())),
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(GraphError::Graph6("truncated order field".into()));
                }
                let n = rest[..3]
                    .iter()
                    .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
                if n < 63 {
                    return Err(GraphError::Graph6("non-canonical order field".into()));
                }
                (n, &rest[3..])
            }
            [first, rest @ ..] => ((first - 63) as usize, rest),
        };
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let bits = n * n.saturating_sub(1) / 2;
        let want = bits.div_ceil(6);
        if body.len() != want {
            return Err(GraphError::Graph6(format!(
                "expected {want} data bytes for n = {n}, found {}",
                body.len()
            )));
        }
        let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        if (bits..want * 6).any(bit) {
            return Err(GraphError::Graph6("nonzero padding bits".into()));
        }
        let mut g = BitGraph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Accepts either graph6 or adjacency text, deciding by content.
    pub fn parse_any(text: &str) -> Result<Self, GraphError> {
        let body: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let looks_like_matrix = body.iter().all(|l| {
            l.chars()
                .all(|c| matches!(c, '0' | '1' | ' ' | '\t' | ',' | '/'))
        });
        if body.len() == 1 && !looks_like_matrix {
            BitGraph::from_graph6(body[0])
        } else {
            BitGraph::from_adjacency_text(text)
        }
    }
}
