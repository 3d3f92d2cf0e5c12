//! Analysis, verification, and the report document.

use std::time::Instant;

use itertools::Itertools;
use polysep::graph::vertex_connectivity;
use polysep::{full_verification, Polytope, Verdict, VerificationSummary, VerifyOptions};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::vrep::Expected;

pub const TOOL: &str = "polysep";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code for a verdict: 0 for PASS or VACUOUS, 2 for FAIL, 3 for CONTRADICTION.
pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Vacuous | Verdict::Pass => 0,
        Verdict::Fail => 2,
        Verdict::Contradiction => 3,
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub name: Option<String>,
    pub dim: usize,
    pub vertex_count: usize,
    pub f_vector: Vec<usize>,
    pub simplicial: bool,
    pub degrees: Vec<usize>,
    pub connectivity: usize,
}

pub fn analyze(name: Option<String>, p: &Polytope) -> Result<Analysis> {
    let g = p.graph();
    Ok(Analysis {
        name,
        dim: p.dim(),
        vertex_count: p.vertex_count(),
        f_vector: p.f_vector(),
        simplicial: p.is_simplicial(),
        degrees: g.degrees(),
        connectivity: vertex_connectivity(&g)?,
    })
}

impl Analysis {
    /// `d=3 n=8 f=(8,12,6) simplicial=false κ=3`
    pub fn headline(&self) -> String {
        format!(
            "d={} n={} f=({}) simplicial={} κ={}",
            self.dim,
            self.vertex_count,
            self.f_vector.iter().join(","),
            self.simplicial,
            self.connectivity
        )
    }

    pub fn degree_line(&self) -> String {
        format!("degrees=[{}]", self.degrees.iter().join(","))
    }
}

/// Compares the optional `expected` block of an input against the computed facts.
pub fn expectation_mismatches(expected: &Expected, summary: &VerificationSummary) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(k) = expected.connectivity {
        if k != summary.connectivity {
            out.push(format!(
                "expected connectivity {k}, computed {}",
                summary.connectivity
            ));
        }
    }
    if let Some(f) = expected.facets {
        let facets = summary.f_vector.last().copied().unwrap_or(0);
        if f != facets {
            out.push(format!("expected {f} facets, computed {facets}"));
        }
    }
    if let Some(s) = expected.simplicial {
        if s != summary.simplicial {
            out.push(format!(
                "expected simplicial={s}, computed {}",
                summary.simplicial
            ));
        }
    }
    out
}

/// A verification summary together with provenance. Everything except
/// `elapsed_ms` is reproducible from the input and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    pub seed: u64,
    pub options: VerifyOptions,
    /// Input points dropped as non-vertices in lenient mode.
    pub stripped_points: Vec<usize>,
    pub expectation_mismatches: Vec<String>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub summary: VerificationSummary,
}

pub fn verify(
    name: &str,
    p: &Polytope,
    digest: String,
    expected: Option<&Expected>,
    stripped_points: Vec<usize>,
    opts: &VerifyOptions,
) -> Result<ReportDocument> {
    let start = Instant::now();
    let summary = full_verification(p, name, opts)?;
    let mismatches = expected
        .map(|e| expectation_mismatches(e, &summary))
        .unwrap_or_default();
    let mut verdict = summary.verdict;
    if !mismatches.is_empty() {
        verdict = verdict.combine(Verdict::Fail);
    }
    Ok(ReportDocument {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        input_digest: digest,
        seed: opts.seed,
        options: opts.clone(),
        stripped_points,
        expectation_mismatches: mismatches,
        verdict,
        elapsed_ms: start.elapsed().as_millis() as u64,
        summary,
    })
}
