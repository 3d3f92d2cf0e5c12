//! Catalog batches. Entries are independent; results come back in catalog order.

use std::fmt::Write as _;
use std::path::Path;

use polysep::generators::builtin_catalog;
use polysep::{CatalogSpec, VerifyOptions, VertexPolicy};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::run::{sha256_hex, verify, ReportDocument};
use crate::vrep::VRepDocument;

/// One catalog line: either a generator spec or an inline V-representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogEntry {
    Generated {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        generate: CatalogSpec,
    },
    Inline {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        vrep: VRepDocument,
    },
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        match self {
            CatalogEntry::Generated { name, generate } => {
                name.clone().unwrap_or_else(|| generate.to_string())
            }
            CatalogEntry::Inline { name, vrep } => name
                .clone()
                .or_else(|| vrep.name.clone())
                .unwrap_or_else(|| "inline".to_string()),
        }
    }

    fn run(&self, opts: &VerifyOptions) -> Result<ReportDocument> {
        let name = self.name();
        match self {
            CatalogEntry::Generated { generate, .. } => {
                let p = generate.build()?;
                let doc = VRepDocument::from_polytope(Some(name.clone()), &p);
                let digest = sha256_hex(doc.to_json().as_bytes());
                verify(&name, &p, digest, None, Vec::new(), opts)
            }
            CatalogEntry::Inline { vrep, .. } => {
                let (p, stripped) = vrep.to_polytope(VertexPolicy::Strict)?;
                let digest = sha256_hex(vrep.to_json().as_bytes());
                verify(&name, &p, digest, vrep.expected.as_ref(), stripped, opts)
            }
        }
    }
}

pub fn builtin_entries() -> Vec<CatalogEntry> {
    builtin_catalog()
        .into_iter()
        .map(|spec| CatalogEntry::Generated {
            name: None,
            generate: spec,
        })
        .collect()
}

/// Reads a catalog file: a JSON array of entries.
pub fn read_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let bytes = crate::read_file(path)?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

/// One summary row. `verdict` is `ERROR` when the entry could not be built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub dim: Option<usize>,
    pub vertex_count: Option<usize>,
    pub connectivity: Option<usize>,
    pub d_separators: Option<usize>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub struct BatchResult {
    pub rows: Vec<BatchRow>,
    pub reports: Vec<Option<ReportDocument>>,
}

impl BatchResult {
    /// 3 if any contradiction, else 2 if any failure, else 1 if any entry errored, else 0.
    pub fn exit_code(&self) -> i32 {
        let has = |v: &str| self.rows.iter().any(|r| r.verdict == v);
        if has("CONTRADICTION") {
            3
        } else if has("FAIL") {
            2
        } else if has("ERROR") {
            1
        } else {
            0
        }
    }

    pub fn table(&self) -> String {
        let dash = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        let width = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!(
            "{:<width$}  {:>2}  {:>3}  {:>3}  {:>6}  verdict\n",
            "name", "d", "n", "κ", "#d-sep"
        );
        for r in &self.rows {
            let _ = write!(
                out,
                "{:<width$}  {:>2}  {:>3}  {:>3}  {:>6}  {}",
                r.name,
                dash(r.dim),
                dash(r.vertex_count),
                dash(r.connectivity),
                dash(r.d_separators),
                r.verdict
            );
            if let Some(e) = &r.error {
                let _ = write!(out, "  ({e})");
            }
            out.push('\n');
        }
        out
    }
}

/// Verifies every entry on a pool of `jobs` threads.
pub fn run_batch(entries: &[CatalogEntry], opts: &VerifyOptions, jobs: usize) -> BatchResult {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<(String, Result<ReportDocument>)> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| (e.name(), e.run(opts)))
            .collect()
    });
    let mut rows = Vec::with_capacity(outcomes.len());
    let mut reports = Vec::with_capacity(outcomes.len());
    for (name, outcome) in outcomes {
        match outcome {
            Ok(r) => {
                rows.push(BatchRow {
                    name,
                    dim: Some(r.summary.dim),
                    vertex_count: Some(r.summary.vertex_count),
                    connectivity: Some(r.summary.connectivity),
                    d_separators: Some(r.summary.d_separator_count),
                    verdict: r.verdict.as_str().to_string(),
                    error: None,
                });
                reports.push(Some(r));
            }
            Err(e) => {
                rows.push(BatchRow {
                    name,
                    dim: None,
                    vertex_count: None,
                    connectivity: None,
                    d_separators: None,
                    verdict: "ERROR".to_string(),
                    error: Some(e.to_string()),
                });
                reports.push(None);
            }
        }
    }
    BatchResult { rows, reports }
}

/// Writes `summary.json` and one `NNN-name.json` report per successful entry.
pub fn write_reports(dir: &Path, result: &BatchResult) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    for (i, (row, report)) in result.rows.iter().zip(&result.reports).enumerate() {
        if let Some(r) = report {
            let file = dir.join(format!("{i:03}-{}.json", file_stem(&row.name)));
            crate::write_json(&file, r)?;
        }
    }
    crate::write_json(&dir.join("summary.json"), &result.rows)
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}
