//! Undirected simple graphs, vertex connectivity via unit-capacity max-flow,
//! and exhaustive enumeration of minimum separators.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::{binomial, SUBSET_BOUND};

/// An abstract simple graph on vertices `0..n`.
///
/// `labels`, when present, maps each vertex back to an index in some larger
/// structure (a polytope vertex for link graphs and induced subgraphs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeGraph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<usize>>,
}

impl PolytopeGraph {
    /// Builds a graph from an edge list. Repeated edges collapse to one.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adjacency.iter().all(|list| list.len() + 1 == n)
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels.as_ref().map_or(v, |l| l[v])
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Graph vertex carrying `label`, if any.
    pub fn vertex_with_label(&self, label: usize) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|&x| x == label),
            None => (label < self.n()).then_some(label),
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex {
                index: v,
                count: self.n(),
            })
        }
    }

    /// Marks vertices reachable from `start` while avoiding `blocked`.
    fn reach(&self, start: usize, blocked: &[bool]) -> Vec<bool> {
        let mut seen = blocked.to_vec();
        let mut reached = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        reached[start] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached[v] = true;
                    queue.push_back(v);
                }
            }
        }
        reached
    }

    /// Splits the vertices left after removing `blocked` into the component of
    /// the lowest remaining vertex and the first vertex outside it, if any.
    fn split(&self, blocked: &[bool]) -> Option<(usize, Option<usize>)> {
        let start = (0..self.n()).find(|&v| !blocked[v])?;
        let reached = self.reach(start, blocked);
        let other = (0..self.n()).find(|&v| !blocked[v] && !reached[v]);
        Some((start, other))
    }
}

/// A vertex set whose removal leaves `witness.0` and `witness.1` in
/// different components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Separator {
    pub vertices: Vec<usize>,
    pub witness: (usize, usize),
}

impl Separator {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn blocked_mask(g: &PolytopeGraph, removed: &[usize]) -> Result<Vec<bool>> {
    let mut blocked = vec![false; g.n()];
    for &v in removed {
        g.check_vertex(v)?;
        blocked[v] = true;
    }
    Ok(blocked)
}

/// True iff the subgraph induced on the vertices not in `removed` is
/// connected.
pub fn is_connected_after_removal(g: &PolytopeGraph, removed: &[usize]) -> Result<bool> {
    let blocked = blocked_mask(g, removed)?;
    match g.split(&blocked) {
        None => Err(Error::EmptiesGraph),
        Some((_, other)) => Ok(other.is_none()),
    }
}

/// Maximum number of internally disjoint paths between two nonadjacent
/// vertices, with the paths themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalConnectivity {
    pub count: usize,
    /// Each path runs from `y` to `z` and lists graph vertices in order.
    pub paths: Vec<Vec<usize>>,
}

struct Arc {
    to: usize,
    cap: u32,
    forward: bool,
}

/// Residual network for unit-capacity flow. Arcs are stored in insertion
/// order, which fixes the augmenting-path search order.
struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc {
            to,
            cap: 1,
            forward: true,
        });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            forward: false,
        });
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via: Vec<Option<usize>> = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    via[arc.to] = Some(a);
                    if arc.to == sink {
                        queue.clear();
                        break;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut node = sink;
        while let Some(a) = via[node] {
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            node = self.arcs[a ^ 1].to;
        }
        true
    }

    fn carries_flow(&self, a: usize) -> bool {
        self.arcs[a].forward && self.arcs[a].cap == 0
    }
}

/// Menger's number for a nonadjacent pair, computed by max-flow on the
/// vertex-split network (every inner vertex has capacity one).
pub fn local_connectivity(g: &PolytopeGraph, y: usize, z: usize) -> Result<LocalConnectivity> {
    g.check_vertex(y)?;
    g.check_vertex(z)?;
    if y == z {
        return Err(Error::SameEndpoint(y));
    }
    if g.are_adjacent(y, z) {
        return Err(Error::AdjacentPair(y, z));
    }
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let mut net = FlowNetwork::new(2 * g.n());
    for v in 0..g.n() {
        if v != y && v != z {
            net.add_arc(vin(v), vout(v));
        }
        for &w in g.neighbors(v) {
            net.add_arc(vout(v), vin(w));
        }
    }
    let (source, sink) = (vout(y), vin(z));
    let mut count = 0;
    while net.augment(source, sink) {
        count += 1;
    }

    let mut used = vec![false; net.arcs.len()];
    let mut paths = Vec::with_capacity(count);
    for &first in &net.out[source] {
        if !net.carries_flow(first) {
            continue;
        }
        used[first] = true;
        let mut path = vec![y];
        let mut node = net.arcs[first].to;
        while node != sink {
            // node is some v_in; cross to v_out, then leave along a used edge
            let v = node / 2;
            path.push(v);
            let next = net.out[vout(v)]
                .iter()
                .copied()
                .find(|&a| net.carries_flow(a) && !used[a])
                .expect("flow conservation at inner vertex");
            used[next] = true;
            node = net.arcs[next].to;
        }
        path.push(z);
        paths.push(path);
    }
    debug_assert_eq!(paths.len(), count);
    Ok(LocalConnectivity { count, paths })
}

/// Vertex connectivity: `n - 1` for complete graphs, otherwise the minimum
/// of [`local_connectivity`] over nonadjacent pairs. By Whitney's theorem
/// some minimum separator disconnects a nonadjacent pair, so adjacent pairs
/// never need to be examined.
pub fn vertex_connectivity(g: &PolytopeGraph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::GraphTooSmall {
            needed: 2,
            found: n,
        });
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut best = usize::MAX;
    for (y, z) in (0..n).tuple_combinations() {
        if g.are_adjacent(y, z) {
            continue;
        }
        best = best.min(local_connectivity(g, y, z)?.count);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Every `k`-subset whose removal disconnects the remaining graph, in
/// lexicographic order. Called with `k` equal to the vertex connectivity
/// this lists all minimum separators.
pub fn enumerate_min_separators(g: &PolytopeGraph, k: usize) -> Result<Vec<Separator>> {
    let n = g.n();
    let count = binomial(n, k);
    if count > SUBSET_BOUND {
        return Err(Error::TooManySubsets {
            count,
            bound: SUBSET_BOUND,
        });
    }
    if k + 2 > n {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut blocked = vec![false; n];
    for subset in (0..n).combinations(k) {
        for &v in &subset {
            blocked[v] = true;
        }
        if let Some((y, Some(z))) = g.split(&blocked) {
            found.push(Separator {
                vertices: subset.clone(),
                witness: (y, z),
            });
        }
        for &v in &subset {
            blocked[v] = false;
        }
    }
    Ok(found)
}

/// Subgraph on `keep` (sorted, deduplicated). Vertex `i` of the result is
/// the `i`-th smallest kept vertex; labels carry over from `g`.
pub fn induced_subgraph(g: &PolytopeGraph, keep: &[usize]) -> Result<PolytopeGraph> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::GraphTooSmall {
            needed: 1,
            found: 0,
        });
    }
    let mut position = vec![None; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        g.check_vertex(v)?;
        position[v] = Some(i);
    }
    let edges = g
        .edges()
        .filter_map(|(u, v)| Some((position[u]?, position[v]?)))
        .collect::<Vec<_>>();
    let labels = keep.iter().map(|&v| g.label(v)).collect();
    PolytopeGraph::new(keep.len(), edges)?.with_labels(labels)
}
