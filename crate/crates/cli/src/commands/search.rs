//! `nucifera search`: exhaustive search of one or more groups, with every
//! hit written to disk alongside its certificate.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use nucifera_core::{
    is_nuciferous, search_group, BitGraph, CertificateRecord, GroupReport, GroupTable,
    SearchOptions, SearchRecord,
};

use super::resolve_group;
use crate::layout::{hit_stem, slug, write_file, HitRecord, Layout, Summary};
use crate::{emit, CliError, Format, SearchArgs, EXIT_OK};

/// Validated search settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub groups: Vec<GroupTable>,
    pub degree_min: usize,
    pub degree_max: Option<usize>,
    pub jobs: usize,
    pub out: PathBuf,
    pub format: Format,
    pub resume: bool,
    pub block_size: u64,
}

impl RunConfig {
    /// Resolves every group before any work starts, so a bad spec fails
    /// fast.
    pub fn from_args(args: &SearchArgs) -> Result<Self, CliError> {
        if !matches!(args.format, Format::Csv | Format::Json) {
            return Err(CliError::Usage(
                "search supports --format csv or json".into(),
            ));
        }
        let jobs = match args.jobs {
            Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
            Some(j) => j,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if args.block_size == 0 {
            return Err(CliError::Usage("--block-size must be at least 1".into()));
        }
        let groups = args
            .groups
            .iter()
            .map(|s| resolve_group(s))
            .collect::<Result<Vec<_>, _>>()?;
        let degree_min = args.degree_min.unwrap_or(0);
        if let Some(max) = args.degree_max {
            if degree_min > max {
                return Err(CliError::Usage(format!(
                    "--degree-min {degree_min} exceeds --degree-max {max}"
                )));
            }
        }
        fs::create_dir_all(&args.out).map_err(CliError::io(&args.out))?;
        Ok(RunConfig {
            groups,
            degree_min,
            degree_max: args.degree_max,
            jobs,
            out: args.out.clone(),
            format: args.format,
            resume: args.resume,
            block_size: args.block_size,
        })
    }
}

pub fn run(args: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let config = RunConfig::from_args(args)?;
    let layout = Layout::new(&config.out);
    for g in &config.groups {
        let started = Instant::now();
        let report = search_one(&layout, &config, g)?;
        let _ = writeln!(
            err,
            "{}: {} subsets, {} hits, {} classes in {:.2?}",
            g.name(),
            report.subsets_enumerated,
            report.records.len(),
            report.class_details.len(),
            started.elapsed()
        );
    }
    let summary = Summary::from_reports(&load_reports(&layout)?);
    summary.write(&layout)?;
    let text = match config.format {
        Format::Json => summary.json(),
        _ => summary.csv() + &summary.totals(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn search_one(
    layout: &Layout,
    config: &RunConfig,
    g: &GroupTable,
) -> Result<GroupReport, CliError> {
    let s = slug(g.name());
    let resume = layout.resume_file(&s);
    fs::create_dir_all(layout.group_dir(&s)).map_err(CliError::io(layout.group_dir(&s)))?;
    if !config.resume && resume.exists() {
        fs::remove_file(&resume).map_err(CliError::io(&resume))?;
    }
    write_file(&layout.group_table(&s), &g.to_table_text())?;
    let options = SearchOptions {
        degree_min: config.degree_min,
        degree_max: config.degree_max,
        jobs: config.jobs,
        block_size: config.block_size,
        checkpoint: Some(resume),
        ..SearchOptions::default()
    };
    let report = search_group(g, &options)?;

    let hits = layout.group_hits(g.order(), &s);
    if hits.exists() {
        fs::remove_dir_all(&hits).map_err(CliError::io(&hits))?;
    }
    for r in &report.records {
        write_hit(layout, &s, r)?;
    }
    write_file(&layout.report_json(&s), &(report.to_json() + "\n"))?;
    Ok(report)
}

fn write_hit(layout: &Layout, slug: &str, r: &SearchRecord) -> Result<(), CliError> {
    let certificate: CertificateRecord = match &r.certificate {
        Some(c) => c.to_record(),
        None => is_nuciferous(&BitGraph::from_graph6(&r.graph6)?)?.to_record(),
    };
    let record = HitRecord {
        group: r.group.clone(),
        order: r.order,
        degree: r.degree,
        connection_set: r.connection_set.clone(),
        graph6: r.graph6.clone(),
        canonical_cert: r.cert.to_hex(),
        certificate,
    };
    let dir = layout.hit_dir(r.order, slug, r.degree);
    let stem = hit_stem(&r.cert, r.mask());
    write_file(&dir.join(format!("{stem}.g6")), &format!("{}\n", r.graph6))?;
    let json = serde_json::to_string_pretty(&record).expect("hit record serialises") + "\n";
    write_file(&dir.join(format!("{stem}.cert.json")), &json)
}

/// Every group report stored under `layout`, in directory order.
pub fn load_reports(layout: &Layout) -> Result<Vec<GroupReport>, CliError> {
    let dir = layout.groups_dir();
    let mut reports = Vec::new();
    if !dir.exists() {
        return Ok(reports);
    }
    let mut entries: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(CliError::io(&dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    entries.sort();
    for group_dir in entries {
        let path = group_dir.join("report.json");
        if !path.exists() {
            continue;
        }
        let text = fs::read_to_string(&path).map_err(CliError::io(&path))?;
        let report = GroupReport::from_json(&text)
            .map_err(|e| CliError::Negative(format!("{}: {e}", path.display())))?;
        reports.push(report);
    }
    Ok(reports)
}
