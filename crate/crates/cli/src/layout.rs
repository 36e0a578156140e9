//! On-disk layout of a results directory and the summary files derived
//! from it.
//!
//! ```text
//! <root>/groups/<slug>/{report.json, resume.txt, group.table}
//! <root>/hits/<order>/<slug>/d<degree>/<cert16>-<mask>.{g6, cert.json}
//! <root>/{summary.csv, totals.txt, classes.csv}
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use nucifera_core::search::GlobalClass;
use nucifera_core::{CanonCert, CertificateRecord, GlobalClasses, GroupReport};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Directory-safe form of a group name: `"D(12) x C(2)"` → `"d12_x_c2"`.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if (c.is_whitespace() || c == '-' || c == '_')
            && !out.ends_with('_')
            && !out.is_empty()
        {
            out.push('_');
        }
    }
    let out = out.trim_end_matches('_').to_string();
    if out.is_empty() {
        "group".into()
    } else {
        out
    }
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub root: PathBuf,
}

impl Layout {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Layout { root: root.into() }
    }

    pub fn groups_dir(&self) -> PathBuf {
        self.root.join("groups")
    }

    pub fn group_dir(&self, slug: &str) -> PathBuf {
        self.groups_dir().join(slug)
    }

    pub fn report_json(&self, slug: &str) -> PathBuf {
        self.group_dir(slug).join("report.json")
    }

    pub fn resume_file(&self, slug: &str) -> PathBuf {
        self.group_dir(slug).join("resume.txt")
    }

    pub fn group_table(&self, slug: &str) -> PathBuf {
        self.group_dir(slug).join("group.table")
    }

    pub fn hits_dir(&self) -> PathBuf {
        self.root.join("hits")
    }

    pub fn group_hits(&self, order: usize, slug: &str) -> PathBuf {
        self.hits_dir().join(order.to_string()).join(slug)
    }

    pub fn hit_dir(&self, order: usize, slug: &str, degree: usize) -> PathBuf {
        self.group_hits(order, slug).join(format!("d{degree}"))
    }

    pub fn tables_dir(&self) -> PathBuf {
        self.root.join("tables")
    }

    pub fn summary_csv(&self) -> PathBuf {
        self.root.join("summary.csv")
    }

    pub fn totals_txt(&self) -> PathBuf {
        self.root.join("totals.txt")
    }

    pub fn classes_csv(&self) -> PathBuf {
        self.root.join("classes.csv")
    }
}

/// File stem of a stored hit: leading cert digits and the connection-set
/// mask, both hex.
pub fn hit_stem(cert: &CanonCert, mask: u64) -> String {
    let hex = cert.to_hex();
    format!("{}-{mask:x}", &hex[..hex.len().min(16)])
}

/// Sidecar of a stored hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitRecord {
    pub group: String,
    pub order: usize,
    pub degree: usize,
    pub connection_set: Vec<usize>,
    pub graph6: String,
    pub canonical_cert: String,
    pub certificate: CertificateRecord,
}

/// Per-(order, group, degree) class counts plus the cross-group classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: BTreeMap<(usize, String, usize), usize>,
    pub classes: GlobalClasses,
}

impl Summary {
    pub fn from_reports(reports: &[GroupReport]) -> Self {
        let mut rows = BTreeMap::new();
        for r in reports {
            for c in &r.class_details {
                *rows
                    .entry((r.order, r.group.clone(), c.degree))
                    .or_default() += 1;
            }
        }
        Summary {
            rows,
            classes: nucifera_core::dedup_cross_group(reports),
        }
    }

    /// Adds one certified hit; used when rebuilding from stored artifacts.
    pub fn add_hit(&mut self, group: &str, order: usize, degree: usize, cert: &CanonCert) {
        let entry = self
            .classes
            .classes
            .entry(cert.clone())
            .or_insert_with(|| GlobalClass {
                cert: cert.clone(),
                order,
                degree,
                groups: BTreeSet::new(),
                records: 0,
            });
        entry.records += 1;
        entry.groups.insert(group.to_string());
    }

    /// Fills `rows` from the classes once every hit has been added.
    pub fn tally_rows(&mut self) {
        self.rows.clear();
        for c in self.classes.classes.values() {
            for g in &c.groups {
                *self.rows.entry((c.order, g.clone(), c.degree)).or_default() += 1;
            }
        }
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("order,group,degree,count\n");
        for ((order, group, degree), count) in &self.rows {
            s.push_str(&format!("{order},{},{degree},{count}\n", quote(group)));
        }
        s
    }

    pub fn totals(&self) -> String {
        format!("{}\n", self.classes.totals_line())
    }

    pub fn classes_csv(&self) -> String {
        let mut s = String::from("cert,order,degree,groups,connection_sets\n");
        let mut classes: Vec<&GlobalClass> = self.classes.classes.values().collect();
        classes.sort_by(|a, b| (a.order, a.degree, &a.cert).cmp(&(b.order, b.degree, &b.cert)));
        for c in classes {
            let groups: Vec<&str> = c.groups.iter().map(String::as_str).collect();
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                c.cert.to_hex(),
                c.order,
                c.degree,
                quote(&groups.join("; ")),
                c.records
            ));
        }
        s
    }

    pub fn json(&self) -> String {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|((order, group, degree), count)| {
                serde_json::json!({"order": order, "group": group, "degree": degree, "count": count})
            })
            .collect();
        let per_order: BTreeMap<String, usize> = self
            .classes
            .per_order()
            .into_iter()
            .map(|(o, c)| (o.to_string(), c))
            .collect();
        let classes: Vec<_> = self
            .classes
            .classes
            .values()
            .map(|c| {
                serde_json::json!({
                    "cert": c.cert.to_hex(),
                    "order": c.order,
                    "degree": c.degree,
                    "groups": c.groups,
                    "connection_sets": c.records,
                })
            })
            .collect();
        let value = serde_json::json!({
            "rows": rows,
            "per_order": per_order,
            "total": self.classes.total(),
            "classes": classes,
        });
        serde_json::to_string_pretty(&value).expect("summary serialises") + "\n"
    }

    /// Writes the three summary files under `layout.root`.
    pub fn write(&self, layout: &Layout) -> Result<(), CliError> {
        write_file(&layout.summary_csv(), &self.csv())?;
        write_file(&layout.totals_txt(), &self.totals())?;
        write_file(&layout.classes_csv(), &self.classes_csv())
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
    }
    fs::write(path, contents).map_err(CliError::io(path))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}
