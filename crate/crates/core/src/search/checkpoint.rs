//! Block-granularity resume file.
//!
//! ```text
//! # nucifera resume v1
//! space <group> <order> <subsets> <block_size> <degree_min> <degree_max> <prune>
//! block <index> <enumerated> <pruned> <singular> <diag_rejected> <certified> [hit-mask-hex ...]
//! ```
//!
//! One `block` line is appended (and flushed) per completed block.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{BlockOutcome, BlockStats, SearchError};

const MAGIC: &str = "# nucifera resume v1";

pub(crate) struct Checkpoint {
    file: File,
}

pub(crate) fn space_line(
    group: &str,
    order: usize,
    subsets: u64,
    block_size: u64,
    degree_min: usize,
    degree_max: usize,
    prune: bool,
) -> String {
    // Group names contain spaces; store them without.
    let compact: String = group.chars().filter(|c| !c.is_whitespace()).collect();
    format!(
        "space {compact} {order} {subsets} {block_size} {degree_min} {degree_max} {}",
        prune as u8
    )
}

impl Checkpoint {
    /// Opens or creates the resume file, returning the blocks already done.
    pub(crate) fn open(
        path: &Path,
        space: &str,
    ) -> Result<(Self, BTreeMap<u64, BlockOutcome>), SearchError> {
        let io = |e: std::io::Error| SearchError::Io(format!("{}: {e}", path.display()));
        let mut done = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(io)?);
            let mut lines = reader.lines();
            let magic = lines.next().transpose().map_err(io)?;
            let header = lines.next().transpose().map_err(io)?;
            if magic.as_deref() != Some(MAGIC) || header.as_deref() != Some(space) {
                return Err(SearchError::ResumeMismatch(format!(
                    "{} was written for a different search ({:?})",
                    path.display(),
                    header.unwrap_or_default()
                )));
            }
            for line in lines {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                // A torn final line from an interrupted write is ignored;
                // that block simply runs again.
                if let Some((idx, outcome)) = parse_block_line(&line) {
                    done.insert(idx, outcome);
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io)?;
        if done.is_empty() && file.metadata().map_err(io)?.len() == 0 {
            writeln!(file, "{MAGIC}\n{space}").map_err(io)?;
            file.flush().map_err(io)?;
        }
        Ok((Checkpoint { file }, done))
    }

    pub(crate) fn record(&mut self, index: u64, outcome: &BlockOutcome) -> Result<(), SearchError> {
        let s = &outcome.stats;
        let mut line = format!(
            "block {index} {} {} {} {} {}",
            s.enumerated, s.pruned, s.singular, s.diag_rejected, s.certified
        );
        for m in &outcome.hits {
            line.push_str(&format!(" {m:x}"));
        }
        line.push('\n');
        self.file
            .write_all(line.as_bytes())
            .and_then(|_| self.file.flush())
            .map_err(|e| SearchError::Io(e.to_string()))
    }
}

fn parse_block_line(line: &str) -> Option<(u64, BlockOutcome)> {
    let mut it = line.split_whitespace();
    if it.next()? != "block" {
        return None;
    }
    let idx = it.next()?.parse().ok()?;
    let mut nums = [0u64; 5];
    for slot in &mut nums {
        *slot = it.next()?.parse().ok()?;
    }
    let hits = it
        .map(|t| u64::from_str_radix(t, 16).ok())
        .collect::<Option<Vec<_>>>()?;
    let stats = BlockStats {
        enumerated: nums[0],
        pruned: nums[1],
        singular: nums[2],
        diag_rejected: nums[3],
        certified: nums[4],
    };
    Some((idx, BlockOutcome { stats, hits }))
}
