use std::collections::{BTreeMap, BTreeSet};

use crate::canon::CanonCert;

use super::GroupReport;

/// An isomorphism class seen across one or more group searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalClass {
    pub cert: CanonCert,
    pub order: usize,
    pub degree: usize,
    /// Groups whose search produced this class.
    pub groups: BTreeSet<String>,
    /// Connection sets (over all groups) realising the class.
    pub records: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GlobalClasses {
    pub classes: BTreeMap<CanonCert, GlobalClass>,
}

impl GlobalClasses {
    /// Distinct classes per vertex count.
    pub fn per_order(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in self.classes.values() {
            *out.entry(c.order).or_default() += 1;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.classes.len()
    }

    /// `"24:6 28:3 30:12 total:21"`.
    pub fn totals_line(&self) -> String {
        let mut parts: Vec<String> = self
            .per_order()
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        parts.push(format!("total:{}", self.total()));
        parts.join(" ")
    }

    /// Classes realised in more than one group.
    pub fn coincidences(&self) -> impl Iterator<Item = &GlobalClass> {
        self.classes.values().filter(|c| c.groups.len() > 1)
    }
}

/// Merges per-group hits by canonical cert.
pub fn dedup_cross_group(reports: &[GroupReport]) -> GlobalClasses {
    let mut out = GlobalClasses::default();
    for report in reports {
        for r in &report.records {
            let entry = out
                .classes
                .entry(r.cert.clone())
                .or_insert_with(|| GlobalClass {
                    cert: r.cert.clone(),
                    order: r.order,
                    degree: r.degree,
                    groups: BTreeSet::new(),
                    records: 0,
                });
            entry.groups.insert(r.group.clone());
            entry.records += 1;
        }
    }
    out
}
