//! Gathers `(η(AA⁻¹), dl(G/C_G(A)))` for every class of every corpus group
//! and summarizes the least `q` with `dl ≤ q·η + r`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classes::all_classes;
use crate::constructions::GroupSpec;
use crate::structure::is_solvable;

use super::{Analysis, DerivedCache};

/// Offsets `r` reported in the summary.
pub const OFFSETS: [i64; 3] = [-1, 0, 1];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub group_label: String,
    pub order: usize,
    pub solvable: bool,
    pub supersolvable: bool,
    pub class_rep: usize,
    pub class_size: usize,
    pub eta_aa: usize,
    /// `None` when `G/C_G(A)` is not solvable.
    pub dl_mod_centralizer: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedGroup {
    pub group_label: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaSummary {
    pub eta: usize,
    pub max_dl: usize,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffsetSummary {
    pub r: i64,
    pub least_q: usize,
}

/// Aggregates over the solvable rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub groups: usize,
    pub rows: usize,
    pub solvable_rows: usize,
    pub supersolvable_rows: usize,
    pub by_eta: Vec<EtaSummary>,
    pub least_q: Vec<OffsetSummary>,
    pub skipped: Vec<SkippedGroup>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("supersolvable bound violated in {group}: class of {rep} has eta {eta} and dl {dl}")]
    BoundViolated {
        group: String,
        rep: usize,
        eta: usize,
        dl: String,
    },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub max_order: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

fn scan_group(spec: &GroupSpec, max_order: usize) -> Result<Vec<ScanRow>, SkippedGroup> {
    let label = spec.label();
    let g = spec.build(max_order).map_err(|e| SkippedGroup {
        group_label: label.clone(),
        reason: e.to_string(),
    })?;
    let an = Analysis::new(&g);
    let solvable = is_solvable(&g);
    let supersolvable = an.is_supersolvable();
    let cc = an.class_centralizers();
    let etas = an.eta_aa();
    let mut cache = DerivedCache::new(&g);
    Ok(all_classes(&g)
        .iter()
        .enumerate()
        .map(|(i, c)| ScanRow {
            group_label: label.clone(),
            order: g.order(),
            solvable,
            supersolvable,
            class_rep: c.representative(),
            class_size: c.len(),
            eta_aa: etas[i],
            dl_mod_centralizer: cache.dl(an.whole(), &cc[i]).value(),
        })
        .collect())
}

/// One row per (group, class), sorted by group label then representative.
///
/// Groups that fail to build are listed in the summary. A supersolvable row
/// above `2η − 1` aborts the scan.
pub fn conjecture_scan(corpus: &[GroupSpec], opts: ScanOptions) -> Result<ScanResult, ScanError> {
    let work = || -> Vec<_> {
        corpus
            .par_iter()
            .map(|s| scan_group(s, opts.max_order))
            .collect()
    };
    let per_group = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ScanError::ThreadPool(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut groups = 0;
    for r in per_group {
        match r {
            Ok(v) => {
                groups += 1;
                rows.extend(v);
            }
            Err(s) => skipped.push(s),
        }
    }
    rows.sort_by(|a, b| {
        a.group_label
            .cmp(&b.group_label)
            .then(a.class_rep.cmp(&b.class_rep))
    });
    for row in &rows {
        let within = row.dl_mod_centralizer.is_some_and(|d| d < 2 * row.eta_aa);
        if row.supersolvable && !within {
            return Err(ScanError::BoundViolated {
                group: row.group_label.clone(),
                rep: row.class_rep,
                eta: row.eta_aa,
                dl: row
                    .dl_mod_centralizer
                    .map_or_else(|| "nonsolvable".to_string(), |d| d.to_string()),
            });
        }
    }
    let summary = summarize(&rows, groups, skipped);
    Ok(ScanResult { rows, summary })
}

fn summarize(rows: &[ScanRow], groups: usize, skipped: Vec<SkippedGroup>) -> ScanSummary {
    let mut by_eta: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut least_q = [0usize; OFFSETS.len()];
    let mut solvable_rows = 0;
    for row in rows.iter().filter(|r| r.solvable) {
        let Some(dl) = row.dl_mod_centralizer else {
            continue;
        };
        solvable_rows += 1;
        let e = by_eta.entry(row.eta_aa).or_default();
        e.0 = e.0.max(dl);
        e.1 += 1;
        for (q, r) in least_q.iter_mut().zip(OFFSETS) {
            let need = dl as i64 - r;
            let eta = row.eta_aa as i64;
            if need > 0 {
                *q = (*q).max(((need + eta - 1) / eta) as usize);
            }
        }
    }
    ScanSummary {
        groups,
        rows: rows.len(),
        solvable_rows,
        supersolvable_rows: rows.iter().filter(|r| r.supersolvable).count(),
        by_eta: by_eta
            .into_iter()
            .map(|(eta, (max_dl, rows))| EtaSummary { eta, max_dl, rows })
            .collect(),
        least_q: OFFSETS
            .iter()
            .zip(least_q)
            .map(|(&r, least_q)| OffsetSummary { r, least_q })
            .collect(),
        skipped,
    }
}

pub const CSV_HEADER: &str =
    "group,order,solvable,supersolvable,class_rep,class_size,eta_aa,dl_mod_centralizer";

/// Writes the header and one line per row; a non-solvable section is `NA`.
pub fn emit_scan_csv<W: Write>(rows: &[ScanRow], sink: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        let dl = r
            .dl_mod_centralizer
            .map_or_else(|| "NA".to_string(), |d| d.to_string());
        w.write_record([
            r.group_label.clone(),
            r.order.to_string(),
            r.solvable.to_string(),
            r.supersolvable.to_string(),
            r.class_rep.to_string(),
            r.class_size.to_string(),
            r.eta_aa.to_string(),
            dl,
        ])?;
    }
    w.flush()
}

pub fn render_summary(s: &ScanSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "groups={} rows={} solvable_rows={} supersolvable_rows={}",
        s.groups, s.rows, s.solvable_rows, s.supersolvable_rows
    );
    let _ = writeln!(out, "eta  max_dl  rows");
    for e in &s.by_eta {
        let _ = writeln!(out, "{:<4} {:<7} {}", e.eta, e.max_dl, e.rows);
    }
    for o in &s.least_q {
        let _ = writeln!(out, "least q with dl <= q*eta + ({}): {}", o.r, o.least_q);
    }
    for k in &s.skipped {
        let _ = writeln!(out, "skipped {}: {}", k.group_label, k.reason);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::DEFAULT_MAX_ORDER;

    fn opts() -> ScanOptions {
        ScanOptions {
            max_order: DEFAULT_MAX_ORDER,
            threads: Some(2),
        }
    }

    #[test]
    fn cyclic_corpus() {
        let corpus: Vec<_> = (2..=10).map(GroupSpec::cyclic).collect();
        let res = conjecture_scan(&corpus, opts()).unwrap();
        assert_eq!(res.rows.len(), (2..=10).sum::<usize>());
        assert!(res
            .rows
            .iter()
            .all(|r| r.eta_aa == 1 && r.dl_mod_centralizer == Some(0)));
        let q0 = res.summary.least_q.iter().find(|o| o.r == 0).unwrap();
        assert_eq!(q0.least_q, 0);
    }

    #[test]
    fn s3_and_s4() {
        let res = conjecture_scan(&[GroupSpec::symmetric(3)], opts()).unwrap();
        assert_eq!(res.rows.len(), 3);
        let e2 = res.summary.by_eta.iter().find(|e| e.eta == 2).unwrap();
        assert_eq!(e2.max_dl, 2);
        let mut csv = Vec::new();
        emit_scan_csv(&res.rows, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with(CSV_HEADER));

        let res = conjecture_scan(&[GroupSpec::symmetric(4)], opts()).unwrap();
        assert!(res.rows.iter().all(|r| r.solvable && !r.supersolvable));
        let four_cycle = res.rows.iter().find(|r| r.class_size == 6 && r.eta_aa == 3);
        assert_eq!(four_cycle.unwrap().dl_mod_centralizer, Some(3));
    }

    #[test]
    fn build_failures_are_skipped() {
        let corpus = vec![GroupSpec::cyclic(3), GroupSpec::symmetric(9)];
        let res = conjecture_scan(&corpus, opts()).unwrap();
        assert_eq!(res.rows.len(), 3);
        assert_eq!(res.summary.skipped.len(), 1);
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut csv = Vec::new();
        emit_scan_csv(&[], &mut csv).unwrap();
        assert_eq!(csv, format!("{CSV_HEADER}\n").into_bytes());
    }
}
