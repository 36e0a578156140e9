//! `nucifera report`: trusts nothing in a results directory. Every stored
//! hit is re-parsed, re-certified, checked against its group table and
//! re-canonicalised; the summary files are rebuilt from those results and
//! compared byte for byte with the stored ones.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nucifera_core::{
    canonical_form, cayley_graph, is_nuciferous, BitGraph, ConnectionSet, GroupTable,
};

use crate::layout::{read_file, slug, HitRecord, Layout, Summary};
use crate::{emit, CliError, Format, ReportArgs, EXIT_OK};

pub fn run(args: &ReportArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    if !matches!(args.format, Format::Csv | Format::Json) {
        return Err(CliError::Usage(
            "report supports --format csv or json".into(),
        ));
    }
    let root = args.dir.clone().unwrap_or_else(|| args.out.clone());
    if !root.is_dir() {
        return Err(CliError::Usage(format!(
            "{} is not a directory",
            root.display()
        )));
    }
    let layout = Layout::new(&root);
    let summary = rebuild(&layout)?;
    let _ = writeln!(
        err,
        "re-certified {} hits",
        summary
            .classes
            .classes
            .values()
            .map(|c| c.records)
            .sum::<usize>()
    );
    compare(&layout.summary_csv(), &summary.csv(), err)?;
    compare(&layout.totals_txt(), &summary.totals(), err)?;
    compare(&layout.classes_csv(), &summary.classes_csv(), err)?;
    let text = match args.format {
        Format::Json => summary.json(),
        _ => summary.csv() + &summary.totals(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// Summary recomputed from the stored hits alone.
pub fn rebuild(layout: &Layout) -> Result<Summary, CliError> {
    let mut summary = Summary::default();
    let mut tables: BTreeMap<String, GroupTable> = BTreeMap::new();
    for g6 in hit_files(&layout.hits_dir())? {
        let (group, order, degree, cert) = recertify(layout, &g6, &mut tables)?;
        summary.add_hit(&group, order, degree, &cert);
    }
    summary.tally_rows();
    Ok(summary)
}

fn bad(path: &Path, what: impl std::fmt::Display) -> CliError {
    CliError::Negative(format!("{}: {what}", path.display()))
}

/// Checks one hit; returns its group, order, degree and canonical cert.
fn recertify(
    layout: &Layout,
    g6: &Path,
    tables: &mut BTreeMap<String, GroupTable>,
) -> Result<(String, usize, usize, nucifera_core::CanonCert), CliError> {
    let sidecar = g6.with_extension("cert.json");
    let graph = BitGraph::from_graph6(read_file(g6)?.trim()).map_err(|e| bad(g6, e))?;
    let record: HitRecord =
        serde_json::from_str(&read_file(&sidecar)?).map_err(|e| bad(&sidecar, e))?;

    // Where the file sits must agree with what it claims.
    let degree_dir = g6.parent().ok_or_else(|| bad(g6, "misplaced hit"))?;
    let slug_dir = degree_dir
        .parent()
        .ok_or_else(|| bad(g6, "misplaced hit"))?;
    let order_dir = slug_dir.parent().ok_or_else(|| bad(g6, "misplaced hit"))?;
    let dir_name = |p: &Path| {
        p.file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    let group_slug = dir_name(slug_dir);
    if slug(&record.group) != group_slug
        || dir_name(order_dir) != record.order.to_string()
        || dir_name(degree_dir) != format!("d{}", record.degree)
    {
        return Err(bad(
            g6,
            "path does not match the recorded group, order or degree",
        ));
    }
    if graph.to_graph6() != record.graph6 {
        return Err(bad(g6, "graph differs from the graph6 in its certificate"));
    }
    if graph.n() != record.order || graph.regular_degree() != Some(record.degree) {
        return Err(bad(
            g6,
            "graph is not regular of the recorded order and degree",
        ));
    }

    let cert = is_nuciferous(&graph)?;
    if !cert.verdict.is_nuciferous() {
        return Err(bad(g6, format!("not nuciferous: {}", cert.verdict)));
    }
    cert.check_adjugate_identity(&graph)?;
    if cert.to_record() != record.certificate {
        return Err(bad(
            &sidecar,
            "stored certificate differs from the recomputed one",
        ));
    }

    if !tables.contains_key(&group_slug) {
        let path = layout.group_table(&group_slug);
        let rows = GroupTable::parse_table_text(&read_file(&path)?).map_err(|e| bad(&path, e))?;
        let g = GroupTable::validate_table(&rows).map_err(|e| bad(&path, e))?;
        tables.insert(group_slug.clone(), g);
    }
    let g = &tables[&group_slug];
    if g.order() != record.order {
        return Err(bad(g6, "group table has a different order"));
    }
    let s =
        ConnectionSet::from_elements(g, &record.connection_set).map_err(|e| bad(&sidecar, e))?;
    if s.len() != record.degree || cayley_graph(g, &s) != graph {
        return Err(bad(
            g6,
            "graph is not the Cayley graph of its connection set",
        ));
    }

    let canon = canonical_form(&graph)?.cert;
    if canon.to_hex() != record.canonical_cert {
        return Err(bad(
            &sidecar,
            "stored canonical cert differs from the recomputed one",
        ));
    }
    Ok((record.group, record.order, record.degree, canon))
}

/// Every `.g6` under `dir`, sorted; an orphaned sidecar is an error.
fn hit_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    if !dir.exists() {
        return Ok(out);
    }
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).map_err(CliError::io(&d))? {
            let path = entry.map_err(CliError::io(&d))?.path();
            let name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            if path.is_dir() {
                stack.push(path);
            } else if name.ends_with(".g6") {
                out.push(path);
            } else if let Some(stem) = name.strip_suffix(".cert.json") {
                if !d.join(format!("{stem}.g6")).exists() {
                    return Err(bad(&path, "certificate without a graph6 file"));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A stored summary file must match its recomputed contents exactly; a
/// missing one is reported but not an error.
fn compare(path: &Path, expected: &str, err: &mut dyn Write) -> Result<(), CliError> {
    if !path.exists() {
        let _ = writeln!(err, "{}: absent, not compared", path.display());
        return Ok(());
    }
    if read_file(path)? != expected {
        return Err(bad(path, "differs from the recomputed summary"));
    }
    let _ = writeln!(err, "{}: matches", path.display());
    Ok(())
}
