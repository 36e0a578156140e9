pub mod groups;
pub mod iso;
pub mod report;
pub mod search;
pub mod verify;

use std::path::Path;

use nucifera_core::{parse_group_spec, BitGraph, GroupError, GroupTable};

use crate::layout::read_file;
use crate::CliError;

/// Reads a graph in graph6 or adjacency-matrix text.
pub(crate) fn load_graph(path: &Path) -> Result<BitGraph, CliError> {
    let text = read_file(path)?;
    BitGraph::parse_any(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Reads and validates a table file; the group is named after the file
/// stem unless `name` is given.
pub(crate) fn load_table(path: &Path, name: Option<&str>) -> Result<GroupTable, GroupError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Format(format!("{}: {e}", path.display())))?;
    let rows = GroupTable::parse_table_text(&text)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".into());
    Ok(GroupTable::validate_table(&rows)?.with_name(name.unwrap_or(&stem)))
}

/// A group spec such as `"S(3) x C(4)"`, or `@FILE` for a table file.
pub(crate) fn resolve_group(spec: &str) -> Result<GroupTable, CliError> {
    match spec.strip_prefix('@') {
        Some(path) => load_table(Path::new(path), None)
            .map_err(|e| CliError::Usage(format!("group {spec:?}: {e}"))),
        None => parse_group_spec(spec).map_err(|e| CliError::Usage(format!("group {spec:?}: {e}"))),
    }
}

/// True for errors in the file itself rather than in the group axioms.
pub(crate) fn is_format_error(e: &GroupError) -> bool {
    matches!(
        e,
        GroupError::Format(_)
            | GroupError::Empty
            | GroupError::NotSquare { .. }
            | GroupError::EntryOutOfRange { .. }
            | GroupError::OrderOutOfRange { .. }
    )
}
