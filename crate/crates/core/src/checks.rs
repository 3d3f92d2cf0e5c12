//! Checks that confront computed lattices, links and separators with
//! Balinski's theorem and the known structure of `d`-separators:
//!
//! * the graph of a `d`-polytope is `d`-connected;
//! * removing a proper subset of the vertices on a hyperplane never
//!   disconnects the graph, so a `d`-separator is affinely independent;
//! * for `d >= 3`, each vertex `x` of a `d`-separator `X` lies in the link of
//!   every other vertex of `X`, and `X \ {x}` separates the link graph of `x`;
//! * in a simplicial polytope every `d`-separator is an empty `(d-1)`-simplex.
//!
//! A violated theorem is reported as [`Verdict::Contradiction`], not as an
//! ordinary failure: it can only mean a bug upstream.

use itertools::Itertools;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{affinely_independent, classify_side, hyperplane_through, Point, Side};
use crate::graph::{
    enumerate_min_separators, induced_subgraph, is_connected_after_removal, vertex_connectivity,
    PolytopeGraph, Separator,
};
use crate::lattice::{LinkComplex, Polytope, VertexSet};
use crate::{binomial, SUBSET_BOUND};

/// Proper subsets of a hyperplane's vertex set are enumerated exhaustively
/// up to this many subsets and sampled beyond it.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 4096;

/// Random `d`-subsets drawn per requested hyperplane before giving up on
/// finding an affinely independent one.
const SPANNING_ATTEMPTS: usize = 1000;

/// Ordered from least to most severe; combining verdicts takes the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Vacuous,
    Pass,
    Fail,
    Contradiction,
}

impl Verdict {
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Vacuous)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Vacuous => "VACUOUS",
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Contradiction => "CONTRADICTION",
        }
    }
}

fn holds(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Contradiction
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalinskiOutcome {
    pub dim: usize,
    pub connectivity: usize,
    pub verdict: Verdict,
}

/// Vertex connectivity of the graph of `p`, which must be at least `d`.
pub fn check_balinski(p: &Polytope) -> Result<BalinskiOutcome> {
    let connectivity = vertex_connectivity(&p.graph())?;
    Ok(balinski_outcome(p, connectivity))
}

fn balinski_outcome(p: &Polytope, connectivity: usize) -> BalinskiOutcome {
    BalinskiOutcome {
        dim: p.dim(),
        connectivity,
        verdict: holds(connectivity >= p.dim()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneOutcome {
    pub spanning: Vec<usize>,
    /// Every vertex on the hyperplane through `spanning`.
    pub on_hyperplane: Vec<usize>,
    pub subsets_checked: usize,
    pub exhaustive: bool,
    /// Proper subsets whose removal disconnected the graph.
    pub violations: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

/// Removes proper subsets of `H ∩ V(P)`, where `H` is spanned by the `d`
/// vertices in `spanning`, and checks the graph stays connected. Subsets are
/// exhaustive when there are at most [`EXHAUSTIVE_SUBSET_LIMIT`] of them and
/// otherwise sampled uniformly using `seed`.
pub fn check_hyperplane_removal(
    p: &Polytope,
    spanning: &[usize],
    seed: u64,
) -> Result<HyperplaneOutcome> {
    hyperplane_removal(p, &p.graph(), spanning, seed)
}

fn hyperplane_removal(
    p: &Polytope,
    graph: &PolytopeGraph,
    spanning: &[usize],
    seed: u64,
) -> Result<HyperplaneOutcome> {
    for &v in spanning {
        p.check_vertex(v)?;
    }
    let points: Vec<Point> = spanning.iter().map(|&v| p.vertex(v).clone()).collect();
    let plane = hyperplane_through(&points)?;
    let mut on = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if classify_side(&plane, v)? == Side::On {
            on.push(i);
        }
    }
    if on.len() == p.vertex_count() {
        return Err(Error::HyperplaneContainsAll);
    }

    let mut violations = Vec::new();
    let mut check = |removed: Vec<usize>| -> Result<()> {
        if !is_connected_after_removal(graph, &removed)? {
            violations.push(removed);
        }
        Ok(())
    };
    let size = on.len();
    let exhaustive = size < usize::BITS as usize && (1usize << size) <= EXHAUSTIVE_SUBSET_LIMIT;
    let subsets_checked = if exhaustive {
        let proper = (1usize << size) - 1;
        for mask in 0..proper {
            check(pick(&on, |i| mask >> i & 1 == 1))?;
        }
        proper
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut drawn = 0;
        while drawn < EXHAUSTIVE_SUBSET_LIMIT {
            let keep: Vec<bool> = (0..size).map(|_| rng.gen()).collect();
            if keep.iter().all(|&k| k) {
                continue;
            }
            check(pick(&on, |i| keep[i]))?;
            drawn += 1;
        }
        drawn
    };
    let verdict = holds(violations.is_empty());
    Ok(HyperplaneOutcome {
        spanning: spanning.to_vec(),
        on_hyperplane: on,
        subsets_checked,
        exhaustive,
        violations,
        verdict,
    })
}

fn pick(items: &[usize], keep: impl Fn(usize) -> bool) -> Vec<usize> {
    items
        .iter()
        .enumerate()
        .filter(|&(i, _)| keep(i))
        .map(|(_, &v)| v)
        .collect()
}

fn require_d_separator(p: &Polytope, size: usize) -> Result<()> {
    if size != p.dim() {
        return Err(Error::WrongSeparatorSize { size, dim: p.dim() });
    }
    Ok(())
}

/// Whether the `d` vertices of a `d`-separator are affinely independent.
pub fn check_separator_affine_independence(p: &Polytope, s: &Separator) -> Result<bool> {
    require_d_separator(p, s.len())?;
    for &v in &s.vertices {
        p.check_vertex(v)?;
    }
    let points: Vec<Point> = s.vertices.iter().map(|&v| p.vertex(v).clone()).collect();
    affinely_independent(&points)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkOutcome {
    /// Every `x` in `X` is a vertex of the link of every other member.
    pub membership_ok: bool,
    /// `X \ {x}` disconnects the link graph of each `x` in `X`.
    pub separation_ok: bool,
    /// Vertex connectivity of the link graph of each member, in order.
    pub link_connectivity: Vec<usize>,
    pub failures: Vec<String>,
}

/// Link clauses for a `d`-separator of a polytope with `d >= 3`.
pub fn check_separator_links(p: &Polytope, s: &Separator) -> Result<LinkOutcome> {
    if p.dim() < 3 {
        return Err(Error::LinkClauseDimension(p.dim()));
    }
    require_d_separator(p, s.len())?;
    let links = s
        .vertices
        .iter()
        .map(|&x| p.vertex_link(x))
        .collect::<Result<Vec<_>>>()?;
    link_outcome(s, |x| {
        let i = s.vertices.iter().position(|&v| v == x).unwrap();
        &links[i]
    })
}

fn link_outcome<'a>(
    s: &Separator,
    link_of: impl Fn(usize) -> &'a LinkComplex,
) -> Result<LinkOutcome> {
    let mut failures = Vec::new();
    let mut membership_ok = true;
    let mut separation_ok = true;
    let mut link_connectivity = Vec::with_capacity(s.len());
    for &x in &s.vertices {
        let link = link_of(x);
        let others: Vec<usize> = s.vertices.iter().copied().filter(|&v| v != x).collect();
        let mut removed = Vec::with_capacity(others.len());
        for &other in &others {
            match link.graph.vertex_with_label(other) {
                Some(v) => removed.push(v),
                None => {
                    membership_ok = false;
                    failures.push(format!("vertex {other} is not in the link of vertex {x}"));
                }
            }
        }
        let separates = removed.len() == others.len()
            && matches!(is_connected_after_removal(&link.graph, &removed), Ok(false));
        if !separates {
            separation_ok = false;
            failures.push(format!(
                "removing {others:?} does not disconnect the link graph of vertex {x}"
            ));
        }
        link_connectivity.push(vertex_connectivity(&link.graph)?);
    }
    Ok(LinkOutcome {
        membership_ok,
        separation_ok,
        link_connectivity,
        failures,
    })
}

/// Classification of a `d`-set of vertices against the definition of an
/// empty `(d-1)`-simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EmptySimplex {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO_not_all_subsets_faces")]
    NoNotAllSubsetsFaces,
    #[serde(rename = "NO_is_a_face")]
    NoIsAFace,
}

impl EmptySimplex {
    pub fn as_str(self) -> &'static str {
        match self {
            EmptySimplex::Yes => "YES",
            EmptySimplex::NoNotAllSubsetsFaces => "NO_not_all_subsets_faces",
            EmptySimplex::NoIsAFace => "NO_is_a_face",
        }
    }
}

/// `Yes` iff `s` is not a face but every proper subset is. When both
/// clauses fail, the missing subface is what gets reported.
pub fn check_empty_simplex(p: &Polytope, s: &VertexSet) -> Result<EmptySimplex> {
    require_d_separator(p, s.len())?;
    let members: Vec<usize> = s.iter().copied().collect();
    let full = (1usize << members.len()) - 1;
    for mask in 0..full {
        let sub: VertexSet = pick(&members, |i| mask >> i & 1 == 1).into_iter().collect();
        if !p.is_face(&sub)? {
            return Ok(EmptySimplex::NoNotAllSubsetsFaces);
        }
    }
    if p.is_face(s)? {
        Ok(EmptySimplex::NoIsAFace)
    } else {
        Ok(EmptySimplex::Yes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialSeparator {
    pub separator: Separator,
    pub classification: EmptySimplex,
    pub induces_complete_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialOutcome {
    pub connectivity: usize,
    pub separators: Vec<SimplicialSeparator>,
    pub verdict: Verdict,
}

/// For a simplicial `d`-polytope, checks that every `d`-separator is an
/// empty `(d-1)`-simplex, inducing a complete subgraph when `d >= 3`. Vacuous when the
/// graph is more than `d`-connected.
pub fn check_simplicial_separators(p: &Polytope) -> Result<SimplicialOutcome> {
    let graph = p.graph();
    let connectivity = vertex_connectivity(&graph)?;
    let separators = if connectivity == p.dim() {
        enumerate_min_separators(&graph, connectivity)?
    } else {
        Vec::new()
    };
    simplicial_outcome(p, &graph, connectivity, &separators)
}

fn simplicial_outcome(
    p: &Polytope,
    graph: &PolytopeGraph,
    connectivity: usize,
    separators: &[Separator],
) -> Result<SimplicialOutcome> {
    if p.dim() < 2 || !p.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if connectivity > p.dim() {
        return Ok(SimplicialOutcome {
            connectivity,
            separators: Vec::new(),
            verdict: Verdict::Vacuous,
        });
    }
    let mut verdict = holds(connectivity == p.dim());
    let mut checked = Vec::with_capacity(separators.len());
    for s in separators {
        let set: VertexSet = s.vertices.iter().copied().collect();
        let classification = check_empty_simplex(p, &set)?;
        let induces_complete_graph = induced_subgraph(graph, &s.vertices)?.is_complete();
        // a polygon's 2-separators are nonadjacent pairs; completeness is a d >= 3 fact
        let complete_ok = p.dim() < 3 || induces_complete_graph;
        verdict = verdict.combine(holds(classification == EmptySimplex::Yes && complete_ok));
        checked.push(SimplicialSeparator {
            separator: s.clone(),
            classification,
            induces_complete_graph,
        });
    }
    Ok(SimplicialOutcome {
        connectivity,
        separators: checked,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatorReport {
    pub separator: Separator,
    pub affinely_independent: bool,
    /// `None` when `d < 3` or link checks were not requested.
    pub link_membership_ok: Option<bool>,
    pub link_separation_ok: Option<bool>,
    pub link_connectivity: Vec<usize>,
    /// `None` when the empty-simplex check was not requested.
    pub empty_simplex: Option<EmptySimplex>,
    pub witness: Vec<String>,
    pub verdict: Verdict,
}

/// Which checks [`full_verification`] runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub balinski: bool,
    pub hyperplanes: bool,
    pub links: bool,
    pub empty_simplex: bool,
    /// Number of random spanning `d`-subsets for the hyperplane check.
    pub hyperplane_samples: usize,
    /// Check every hyperplane spanned by `d` vertices instead of sampling.
    pub exhaustive_hyperplanes: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            balinski: true,
            hyperplanes: true,
            links: true,
            empty_simplex: true,
            hyperplane_samples: 10,
            exhaustive_hyperplanes: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub name: String,
    pub dim: usize,
    pub vertex_count: usize,
    pub f_vector: Vec<usize>,
    pub connectivity: usize,
    pub simplicial: bool,
    pub d_separator_count: usize,
    /// Number of minimum separators when they are larger than `d`; reported
    /// without judgement. `None` if not counted.
    pub larger_minimum_separators: Option<usize>,
    pub balinski: Option<BalinskiOutcome>,
    pub hyperplanes: Vec<HyperplaneOutcome>,
    pub reports: Vec<SeparatorReport>,
    pub simplicial_separators: Option<SimplicialOutcome>,
    pub verdict: Verdict,
}

/// Runs the selected checks on `p` and aggregates their verdicts.
pub fn full_verification(
    p: &Polytope,
    name: &str,
    opts: &VerifyOptions,
) -> Result<VerificationSummary> {
    let d = p.dim();
    let graph = p.graph();
    let connectivity = vertex_connectivity(&graph)?;
    let mut verdict = Verdict::Pass;

    let balinski = opts.balinski.then(|| balinski_outcome(p, connectivity));
    if let Some(b) = &balinski {
        verdict = verdict.combine(b.verdict);
    }

    let hyperplanes = if opts.hyperplanes {
        sample_hyperplanes(p, &graph, opts)?
    } else {
        Vec::new()
    };
    for h in &hyperplanes {
        verdict = verdict.combine(h.verdict);
    }

    let separators = if connectivity == d {
        enumerate_min_separators(&graph, d)?
    } else {
        Vec::new()
    };
    let larger_minimum_separators = if connectivity > d && connectivity + 2 <= graph.n() {
        match enumerate_min_separators(&graph, connectivity) {
            Ok(s) => Some(s.len()),
            Err(Error::TooManySubsets { .. }) => None,
            Err(e) => return Err(e),
        }
    } else if connectivity > d {
        Some(0)
    } else {
        None
    };

    let check_links = opts.links && d >= 3 && !separators.is_empty();
    let links: Vec<LinkComplex> = if check_links {
        (0..p.vertex_count())
            .map(|v| p.vertex_link(v))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let mut reports = Vec::with_capacity(separators.len());
    for s in &separators {
        let mut witness = Vec::new();
        let affinely_independent = check_separator_affine_independence(p, s)?;
        if !affinely_independent {
            witness.push("separator vertices are affinely dependent".to_string());
        }
        let mut report_verdict = holds(affinely_independent);

        let (mut membership, mut separation, mut link_connectivity) = (None, None, Vec::new());
        if check_links {
            let outcome = link_outcome(s, |x| &links[x])?;
            report_verdict =
                report_verdict.combine(holds(outcome.membership_ok && outcome.separation_ok));
            let expected = d - 1;
            if outcome.link_connectivity.iter().any(|&k| k != expected) {
                witness.push(format!(
                    "link connectivities {:?} differ from {expected}",
                    outcome.link_connectivity
                ));
                report_verdict = Verdict::Contradiction;
            }
            membership = Some(outcome.membership_ok);
            separation = Some(outcome.separation_ok);
            link_connectivity = outcome.link_connectivity;
            witness.extend(outcome.failures);
        }

        let empty_simplex = if opts.empty_simplex {
            let set: VertexSet = s.vertices.iter().copied().collect();
            Some(check_empty_simplex(p, &set)?)
        } else {
            None
        };

        verdict = verdict.combine(report_verdict);
        reports.push(SeparatorReport {
            separator: s.clone(),
            affinely_independent,
            link_membership_ok: membership,
            link_separation_ok: separation,
            link_connectivity,
            empty_simplex,
            witness,
            verdict: report_verdict,
        });
    }

    let simplicial = p.is_simplicial();
    let simplicial_separators = if opts.empty_simplex && simplicial && d >= 2 {
        let outcome = simplicial_outcome(p, &graph, connectivity, &separators)?;
        verdict = verdict.combine(outcome.verdict);
        Some(outcome)
    } else {
        None
    };

    Ok(VerificationSummary {
        name: name.to_string(),
        dim: d,
        vertex_count: p.vertex_count(),
        f_vector: p.f_vector(),
        connectivity,
        simplicial,
        d_separator_count: separators.len(),
        larger_minimum_separators,
        balinski,
        hyperplanes,
        reports,
        simplicial_separators,
        verdict,
    })
}

fn sample_hyperplanes(
    p: &Polytope,
    graph: &PolytopeGraph,
    opts: &VerifyOptions,
) -> Result<Vec<HyperplaneOutcome>> {
    let (n, d) = (p.vertex_count(), p.dim());
    let independent = |subset: &[usize]| -> Result<bool> {
        let pts: Vec<Point> = subset.iter().map(|&v| p.vertex(v).clone()).collect();
        affinely_independent(&pts)
    };
    let mut outcomes = Vec::new();
    if opts.exhaustive_hyperplanes {
        let count = binomial(n, d);
        if count > SUBSET_BOUND {
            return Err(Error::TooManySubsets {
                count,
                bound: SUBSET_BOUND,
            });
        }
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for (i, subset) in (0..n).combinations(d).enumerate() {
            if seen.iter().any(|on| subset.iter().all(|v| on.contains(v))) || !independent(&subset)?
            {
                continue;
            }
            let outcome = hyperplane_removal(p, graph, &subset, opts.seed.wrapping_add(i as u64))?;
            seen.push(outcome.on_hyperplane.clone());
            outcomes.push(outcome);
        }
        return Ok(outcomes);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.hyperplane_samples {
        let mut found = None;
        for _ in 0..SPANNING_ATTEMPTS {
            let mut subset = index::sample(&mut rng, n, d).into_vec();
            subset.sort_unstable();
            if independent(&subset)? {
                found = Some(subset);
                break;
            }
        }
        let subset = found.ok_or(Error::DegenerateSpanningSet { expected: d })?;
        let subset_seed = rng.gen();
        outcomes.push(hyperplane_removal(p, graph, &subset, subset_seed)?);
    }
    Ok(outcomes)
}
