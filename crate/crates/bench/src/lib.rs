//! Inputs shared by the benchmarks.

use nucifera_core::fixtures::TABLE2_ADJ;
use nucifera_core::search::SubsetSpace;
use nucifera_core::{cayley_graph, parse_group_spec, BitGraph};

/// The shipped 24-vertex nuciferous graph.
pub fn table2_graph() -> BitGraph {
    BitGraph::from_adjacency_text(TABLE2_ADJ).expect("fixture parses")
}

/// Cayley graphs of `spec` for the first `count` connection sets that
/// give connected graphs.
pub fn cayley_sample(spec: &str, count: usize) -> Vec<BitGraph> {
    let g = parse_group_spec(spec).expect("valid spec");
    let space = SubsetSpace::new(&g);
    (0..space.len())
        .map(|i| cayley_graph(&g, &space.connection_set(i)))
        .filter(BitGraph::is_connected)
        .take(count)
        .collect()
}
