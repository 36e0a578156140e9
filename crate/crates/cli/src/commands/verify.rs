//! `nucifera verify`: exact certificate for one graph.

use std::fmt::Write as _;
use std::io::Write;

use nucifera_core::fixtures::{table2_inverse_x21, TABLE2_ADJ, TABLE2_DENOMINATOR};
use nucifera_core::{is_nuciferous, vertex_deleted_nullity_is_one, BitGraph, Certificate};

use super::load_graph;
use crate::{emit, CliError, Format, VerifyArgs, EXIT_NEGATIVE, EXIT_OK};

pub fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.format == Some(Format::Csv) {
        return Err(CliError::Usage(
            "verify supports --format graph6, adj or json".into(),
        ));
    }
    let (source, graph) = match &args.path {
        Some(p) => (p.display().to_string(), load_graph(p)?),
        None => (
            "builtin 24-vertex fixture".to_string(),
            BitGraph::from_adjacency_text(TABLE2_ADJ)?,
        ),
    };
    let cert = is_nuciferous(&graph)?;
    cert.check_adjugate_identity(&graph)?;
    let nullity = deletion_nullities(&graph, &cert)?;
    let fixture = match args.path {
        None => Some(fixture_agreement(&cert)),
        Some(_) => None,
    };
    let ok = cert.verdict.is_nuciferous()
        && nullity.as_ref().is_none_or(|v| v.iter().all(|&b| b))
        && fixture.is_none_or(|(good, total)| good == total);

    let text = if args.format == Some(Format::Json) {
        json(&source, &graph, &cert, &nullity, fixture, args.inverse)
    } else {
        let mut s = String::new();
        match args.format {
            Some(Format::Graph6) => writeln!(s, "{}", graph.to_graph6()).unwrap(),
            Some(Format::Adj) => s.push_str(&graph.to_adjacency_text()),
            _ => {}
        }
        s.push_str(&text(
            &source,
            &graph,
            &cert,
            &nullity,
            fixture,
            args.inverse,
        ));
        s
    };
    emit(out, &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

/// Nullity-one test for every vertex deletion of a nuciferous graph.
fn deletion_nullities(graph: &BitGraph, cert: &Certificate) -> Result<Option<Vec<bool>>, CliError> {
    if !cert.verdict.is_nuciferous() {
        return Ok(None);
    }
    let v: Result<Vec<bool>, _> = (0..graph.n())
        .map(|v| vertex_deleted_nullity_is_one(graph, cert, v))
        .collect();
    Ok(Some(v?))
}

/// Entries where `A⁻¹` equals the fixture matrix over its denominator,
/// compared by cross-multiplication.
fn fixture_agreement(cert: &Certificate) -> (usize, usize) {
    let m = table2_inverse_x21();
    let n = m.len();
    let good = (0..n * n)
        .filter(|&k| {
            let (i, j) = (k / n, k % n);
            cert.adj_entry(i, j)
                .is_some_and(|a| TABLE2_DENOMINATOR * a == cert.det * m[i][j])
        })
        .count();
    (good, n * n)
}

fn fraction(cert: &Certificate, i: usize, j: usize) -> String {
    let (num, den) = cert.inverse_entry(i, j).expect("invertible");
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn text(
    source: &str,
    graph: &BitGraph,
    cert: &Certificate,
    nullity: &Option<Vec<bool>>,
    fixture: Option<(usize, usize)>,
    inverse: bool,
) -> String {
    let mut s = String::new();
    let n = graph.n();
    writeln!(s, "source: {source}").unwrap();
    writeln!(s, "vertices: {n}").unwrap();
    writeln!(s, "edges: {}", graph.edge_count()).unwrap();
    match graph.regular_degree() {
        Some(d) => writeln!(s, "regular: {d}").unwrap(),
        None => writeln!(s, "regular: no").unwrap(),
    }
    writeln!(
        s,
        "connected: {}",
        if graph.is_connected() { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(s, "det: {}", cert.det).unwrap();
    writeln!(s, "verdict: {}", cert.verdict).unwrap();
    if let Some(v) = nullity {
        let bad: Vec<String> = (0..n).filter(|&i| !v[i]).map(|i| i.to_string()).collect();
        if bad.is_empty() {
            writeln!(s, "vertex deletion: nullity 1 at all {n} vertices").unwrap();
        } else {
            writeln!(s, "vertex deletion: nullity above 1 at {}", bad.join(" ")).unwrap();
        }
    }
    if let Some((good, total)) = fixture {
        writeln!(
            s,
            "fixture inverse (x{TABLE2_DENOMINATOR}): {good}/{total} entries agree"
        )
        .unwrap();
    }
    if inverse {
        if cert.adj.is_some() {
            writeln!(s, "inverse:").unwrap();
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| fraction(cert, i, j)).collect();
                writeln!(s, "{}", row.join(" ")).unwrap();
            }
        } else {
            writeln!(s, "inverse: none (singular)").unwrap();
        }
    }
    s
}

fn json(
    source: &str,
    graph: &BitGraph,
    cert: &Certificate,
    nullity: &Option<Vec<bool>>,
    fixture: Option<(usize, usize)>,
    inverse: bool,
) -> String {
    let n = graph.n();
    let mut value = serde_json::json!({
        "source": source,
        "vertices": n,
        "edges": graph.edge_count(),
        "regular_degree": graph.regular_degree(),
        "connected": graph.is_connected(),
        "graph6": graph.to_graph6(),
        "nuciferous": cert.verdict.is_nuciferous(),
        "certificate": cert.to_record(),
        "deletion_nullity_one": nullity,
    });
    if let Some((good, total)) = fixture {
        value["fixture_inverse_agreement"] = serde_json::json!({"agree": good, "entries": total});
    }
    if inverse && cert.adj.is_some() {
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| fraction(cert, i, j)).collect())
            .collect();
        value["inverse"] = serde_json::json!(rows);
    }
    serde_json::to_string_pretty(&value).expect("json") + "\n"
}
