//! Face lattices of full-dimensional polytopes given by their vertices.
//!
//! Facets are found by exhaustive search over `d`-subsets of the input: each
//! affinely independent subset spans a hyperplane, which is a facet
//! hyperplane iff every input point lies in one of its closed halfspaces.
//! This costs `O(C(n, d) * n)` rational dot products, so the number of
//! subsets is capped at [`SUBSET_BOUND`](crate::SUBSET_BOUND). All other
//! faces are intersections of facets.
//!
//! Faces are pure vertex-index sets; no geometry survives lattice
//! construction except the vertex coordinates themselves.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{affine_rank, classify_side, hyperplane_through, Hyperplane, Point, Side};
use crate::graph::PolytopeGraph;
use crate::{binomial, SUBSET_BOUND};

/// A sorted set of polytope vertex indices.
pub type VertexSet = BTreeSet<usize>;

/// A face of a polytope, identified by its vertex set. The empty face has
/// dimension `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub dim: isize,
    pub vertices: VertexSet,
}

impl Face {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// A face is a simplex when its vertices are affinely independent.
    pub fn is_simplex(&self) -> bool {
        self.dim + 1 == self.vertices.len() as isize
    }
}

/// How [`Polytope`] construction treats input points that are not vertices
/// of their convex hull.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum VertexPolicy {
    /// Reject the input.
    #[default]
    Strict,
    /// Drop such points and report their indices.
    Lenient,
}

/// A full-dimensional convex polytope in `Q^d` with its boundary complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Face>,
    /// Boundary complex including the empty face, sorted by `(dim, vertices)`.
    faces: Vec<Face>,
    face_index: HashMap<VertexSet, usize>,
    vertex_facets: Vec<Vec<usize>>,
}

fn dim_of(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.dim();
    if dim == 0 {
        return Err(Error::DegeneratePolytope {
            hull_dim: 0,
            dim: 0,
        });
    }
    Ok(dim)
}

fn check_full_dimensional(points: &[Point], dim: usize) -> Result<()> {
    let hull_dim = affine_rank(points)?;
    if hull_dim < dim {
        return Err(Error::DegeneratePolytope { hull_dim, dim });
    }
    Ok(())
}

/// Facet vertex sets of `conv(points)`, sorted lexicographically.
///
/// Requires a full-dimensional point set. Points that are not vertices are
/// not detected here; they simply appear on whichever facets contain them.
pub fn enumerate_facets(points: &[Point], dim: usize) -> Result<Vec<VertexSet>> {
    if dim_of(points)? != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: points[0].dim(),
        });
    }
    check_full_dimensional(points, dim)?;
    let count = binomial(points.len(), dim);
    if count > SUBSET_BOUND {
        return Err(Error::TooManySubsets {
            count,
            bound: SUBSET_BOUND,
        });
    }

    let mut seen: HashSet<Hyperplane> = HashSet::new();
    let mut facets: Vec<VertexSet> = Vec::new();
    for subset in (0..points.len()).combinations(dim) {
        // an independent d-subset of a known facet spans that facet again
        if facets.iter().any(|f| subset.iter().all(|v| f.contains(v))) {
            continue;
        }
        let spanning: Vec<Point> = subset.iter().map(|&i| points[i].clone()).collect();
        let plane = match hyperplane_through(&spanning) {
            Ok(h) => h,
            Err(Error::DegenerateSpanningSet { .. }) => continue,
            Err(e) => return Err(e),
        };
        if seen.contains(&plane) {
            continue;
        }
        let mut on = VertexSet::new();
        let (mut above, mut below) = (false, false);
        for (i, p) in points.iter().enumerate() {
            match classify_side(&plane, p)? {
                Side::On => {
                    on.insert(i);
                }
                Side::Positive => above = true,
                Side::Negative => below = true,
            }
            if above && below {
                break;
            }
        }
        if !(above && below) {
            facets.push(on);
        }
        seen.insert(plane);
    }
    facets.sort();
    Ok(facets)
}

/// All intersections of facets, i.e. every face except the polytope itself,
/// including the empty face. Dimensions are assigned from the coordinates.
pub fn build_lattice(points: &[Point], facets: &[VertexSet]) -> Result<Vec<Face>> {
    let mut sets: HashSet<VertexSet> = facets.iter().cloned().collect();
    let mut queue: VecDeque<VertexSet> = facets.iter().cloned().collect();
    while let Some(face) = queue.pop_front() {
        for facet in facets {
            let meet: VertexSet = face.intersection(facet).copied().collect();
            if !sets.contains(&meet) {
                sets.insert(meet.clone());
                queue.push_back(meet);
            }
        }
    }
    let mut faces = sets
        .into_iter()
        .map(|vertices| {
            let dim = if vertices.is_empty() {
                -1
            } else {
                let pts: Vec<Point> = vertices.iter().map(|&i| points[i].clone()).collect();
                affine_rank(&pts)? as isize
            };
            Ok(Face { dim, vertices })
        })
        .collect::<Result<Vec<_>>>()?;
    faces.sort();
    Ok(faces)
}

/// Indices of input points that are not vertices of the hull.
///
/// A point is a vertex iff the facets through it meet only in copies of that
/// point; of several equal points, all but the first are non-vertices.
fn non_vertices(points: &[Point], facets: &[VertexSet]) -> Vec<usize> {
    let mut bad = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            bad.push(i);
            continue;
        }
        let mut meet: Option<VertexSet> = None;
        for f in facets.iter().filter(|f| f.contains(&i)) {
            meet = Some(match meet {
                None => f.clone(),
                Some(m) => m.intersection(f).copied().collect(),
            });
        }
        let is_vertex = meet.is_some_and(|m| m.iter().all(|&j| points[j] == *p));
        if !is_vertex {
            bad.push(i);
        }
    }
    bad
}

impl Polytope {
    /// Convex hull of `points`, all of which must be vertices.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::with_policy(points, VertexPolicy::Strict).map(|(p, _)| p)
    }

    /// Convex hull of `points`. Under [`VertexPolicy::Lenient`] non-vertex
    /// points are removed and their original indices returned.
    pub fn with_policy(points: Vec<Point>, policy: VertexPolicy) -> Result<(Self, Vec<usize>)> {
        let dim = dim_of(&points)?;
        let facets = enumerate_facets(&points, dim)?;
        let stripped = non_vertices(&points, &facets);
        if stripped.is_empty() {
            return Ok((Self::assemble(points, dim, facets)?, stripped));
        }
        if policy == VertexPolicy::Strict {
            return Err(Error::NonVertex(stripped[0]));
        }
        let kept: Vec<Point> = points
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !stripped.contains(i))
            .map(|(_, p)| p)
            .collect();
        let facets = enumerate_facets(&kept, dim)?;
        Ok((Self::assemble(kept, dim, facets)?, stripped))
    }

    fn assemble(vertices: Vec<Point>, dim: usize, facet_sets: Vec<VertexSet>) -> Result<Self> {
        let faces = build_lattice(&vertices, &facet_sets)?;
        let face_index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let facets: Vec<Face> = facet_sets
            .into_iter()
            .map(|vertices| Face {
                dim: dim as isize - 1,
                vertices,
            })
            .collect();
        let mut vertex_facets = vec![Vec::new(); vertices.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in &f.vertices {
                vertex_facets[v].push(fi);
            }
        }
        Ok(Self {
            dim,
            vertices,
            facets,
            faces,
            face_index,
            vertex_facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point {
        &self.vertices[v]
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// The boundary complex plus the empty face.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, dim: isize) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// Indices into [`Polytope::facets`] of the facets containing `v`.
    pub fn facets_of_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    /// Face counts `(f_0, ..., f_{d-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim];
        for f in &self.faces {
            if f.dim >= 0 {
                counts[f.dim as usize] += 1;
            }
        }
        counts
    }

    pub fn is_simplicial(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.dim)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex {
                index: v,
                count: self.vertices.len(),
            })
        }
    }

    /// Whether `set` is the vertex set of a face. The empty set and the full
    /// vertex set (the polytope itself) both count as faces.
    pub fn is_face(&self, set: &VertexSet) -> Result<bool> {
        for &v in set {
            self.check_vertex(v)?;
        }
        Ok(set.len() == self.vertices.len() || self.face_index.contains_key(set))
    }

    pub fn face(&self, set: &VertexSet) -> Option<&Face> {
        self.face_index.get(set).map(|&i| &self.faces[i])
    }

    /// The graph of the polytope: its vertices and edges. For `d = 1` the
    /// polytope itself is the single edge.
    pub fn graph(&self) -> PolytopeGraph {
        let edges: Vec<(usize, usize)> = if self.dim == 1 {
            vec![(0, 1)]
        } else {
            self.faces_of_dim(1)
                .map(|f| {
                    let mut it = f.vertices.iter();
                    (*it.next().unwrap(), *it.next().unwrap())
                })
                .collect()
        };
        PolytopeGraph::new(self.vertices.len(), edges).expect("edges of a polytope are valid")
    }

    /// Faces not containing `apex` that lie in some facet containing `apex`.
    pub fn vertex_link(&self, apex: usize) -> Result<LinkComplex> {
        self.check_vertex(apex)?;
        let star: Vec<&Face> = self.vertex_facets[apex]
            .iter()
            .map(|&i| &self.facets[i])
            .collect();
        let faces: Vec<Face> = self
            .faces
            .iter()
            .filter(|f| !f.contains(apex))
            .filter(|f| star.iter().any(|s| f.vertices.is_subset(&s.vertices)))
            .cloned()
            .collect();
        let labels: Vec<usize> = faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| *f.vertices.first().unwrap())
            .collect();
        let edges = faces.iter().filter(|f| f.dim == 1).map(|f| {
            let mut it = f.vertices.iter().map(|v| labels.binary_search(v).unwrap());
            (it.next().unwrap(), it.next().unwrap())
        });
        let graph = PolytopeGraph::new(labels.len(), edges)?.with_labels(labels)?;
        Ok(LinkComplex { apex, faces, graph })
    }
}

/// The link of a vertex: a polytopal complex together with its graph, whose
/// labels are polytope vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComplex {
    pub apex: usize,
    pub faces: Vec<Face>,
    pub graph: PolytopeGraph,
}

impl LinkComplex {
    /// Polytope vertices that are vertices of the link.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).map(|v| self.graph.label(v)).collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.graph.vertex_with_label(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube3() -> Polytope {
        let pts = (0..8)
            .map(|i| Point::from_ints(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]))
            .collect();
        Polytope::new(pts).unwrap()
    }

    fn simplex3() -> Polytope {
        Polytope::new(vec![
            Point::from_ints(&[0, 0, 0]),
            Point::from_ints(&[1, 0, 0]),
            Point::from_ints(&[0, 1, 0]),
            Point::from_ints(&[0, 0, 1]),
        ])
        .unwrap()
    }

    fn octahedron() -> Polytope {
        let mut pts = Vec::new();
        for axis in 0..3 {
            for sign in [1, -1] {
                let mut c = [0i64; 3];
                c[axis] = sign;
                pts.push(Point::from_ints(&c));
            }
        }
        Polytope::new(pts).unwrap()
    }

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn facet_counts() {
        let cube = cube3();
        assert_eq!(cube.facets().len(), 6);
        assert!(cube.facets().iter().all(|f| f.len() == 4));
        let simplex = simplex3();
        assert_eq!(simplex.facets().len(), 4);
        assert!(simplex.facets().iter().all(|f| f.len() == 3));
        let oct = octahedron();
        assert_eq!(oct.facets().len(), 8);
        assert!(oct.facets().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn f_vectors() {
        assert_eq!(cube3().f_vector(), vec![8, 12, 6]);
        assert_eq!(simplex3().f_vector(), vec![4, 6, 4]);
        assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn lattice_has_empty_face_and_excludes_top() {
        let cube = cube3();
        assert_eq!(
            cube.faces()[0],
            Face {
                dim: -1,
                vertices: VertexSet::new()
            }
        );
        assert!(cube.faces().iter().all(|f| f.len() < 8));
    }

    #[test]
    fn degenerate_input() {
        let flat = vec![
            Point::from_ints(&[0, 0, 0]),
            Point::from_ints(&[1, 0, 0]),
            Point::from_ints(&[0, 1, 0]),
            Point::from_ints(&[1, 1, 0]),
        ];
        assert_eq!(
            Polytope::new(flat),
            Err(Error::DegeneratePolytope {
                hull_dim: 2,
                dim: 3
            })
        );
        assert_eq!(Polytope::new(vec![]), Err(Error::EmptyPointSet));
        let err =
            Polytope::new(vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])]).unwrap_err();
        assert_eq!(
            err.to_string(),
            "degenerate polytope: affine hull has dimension 1 < 2"
        );
    }

    #[test]
    fn non_vertex_points() {
        let square_with_center = vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[2, 0]),
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[0, 2]),
            Point::from_ints(&[2, 2]),
        ];
        assert_eq!(
            Polytope::new(square_with_center.clone()),
            Err(Error::NonVertex(2))
        );
        let (p, stripped) =
            Polytope::with_policy(square_with_center, VertexPolicy::Lenient).unwrap();
        assert_eq!(stripped, vec![2]);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.f_vector(), vec![4, 4]);

        // midpoint of an edge and a duplicated vertex
        let with_midpoint = vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[2, 0]),
            Point::from_ints(&[0, 2]),
        ];
        assert_eq!(Polytope::new(with_midpoint), Err(Error::NonVertex(1)));
        let duplicate = vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[0, 1]),
            Point::from_ints(&[1, 0]),
        ];
        assert_eq!(Polytope::new(duplicate), Err(Error::NonVertex(3)));
    }

    #[test]
    fn segment() {
        let p = Polytope::new(vec![Point::from_ints(&[0]), Point::from_ints(&[1])]).unwrap();
        assert_eq!(p.f_vector(), vec![2]);
        assert_eq!(p.graph().edge_count(), 1);
        let link = p.vertex_link(0).unwrap();
        assert_eq!(link.graph.n(), 0);
    }

    #[test]
    fn face_queries() {
        let cube = cube3();
        assert!(cube.is_face(&set(&[5])).unwrap());
        assert!(!cube.is_face(&set(&[0, 7])).unwrap());
        assert!(cube.is_face(&set(&[0, 1])).unwrap());
        assert!(cube.is_face(&VertexSet::new()).unwrap());
        assert!(cube.is_face(&(0..8).collect()).unwrap());
        assert!(cube.is_face(&set(&[8])).is_err());
    }

    #[test]
    fn graphs() {
        let g = simplex3().graph();
        assert!(g.is_complete());
        let g = cube3().graph();
        assert_eq!(g.n(), 8);
        assert!(g.degrees().iter().all(|&d| d == 3));
        let g = octahedron().graph();
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn cube_link_is_hexagon() {
        let cube = cube3();
        for v in 0..8 {
            let link = cube.vertex_link(v).unwrap();
            assert_eq!(link.graph.n(), 6);
            assert_eq!(link.graph.edge_count(), 6);
            assert!(link.graph.degrees().iter().all(|&d| d == 2));
            assert!(link.faces.iter().all(|f| !f.contains(v)));
        }
    }

    #[test]
    fn simplex_link_is_complete() {
        let link = simplex3().vertex_link(2).unwrap();
        assert_eq!(link.vertices(), vec![0, 1, 3]);
        assert!(link.graph.is_complete());
    }

    #[test]
    fn simpliciality() {
        assert!(octahedron().is_simplicial());
        assert!(!cube3().is_simplicial());
        assert!(simplex3().is_simplicial());
    }

    #[test]
    fn facet_guard() {
        assert!(binomial(60, 6) > SUBSET_BOUND);
        let pts: Vec<Point> = (1..=60)
            .map(|t: i64| Point::from_ints(&[t, t * t, t.pow(3), t.pow(4), t.pow(5), t.pow(6)]))
            .collect();
        assert!(matches!(
            enumerate_facets(&pts, 6),
            Err(Error::TooManySubsets { .. })
        ));
    }
}
