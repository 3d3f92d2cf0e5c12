//! Constructors for the fixture catalog. All coordinates are exact.
//!
//! The random family draws from [`ChaCha8Rng`] seeded with
//! `seed_from_u64(seed)`. Each point is drawn by rejection from the cube
//! `[-1, 1)^d` with one `gen_range` call per coordinate, normalized onto the
//! unit sphere in `f64`, and rounded to the nearest multiple of `2^-16`. Only IEEE-exact operations (`+`, `*`,
//! `sqrt`, `round`) touch the floats, so the stream reproduces everywhere.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{int, Point, Rational};
use crate::lattice::Polytope;

pub const MAX_NESTING: usize = 3;
pub const MAX_CUBE_DIM: usize = 5;
pub const SPHERE_DENOMINATOR: i64 = 1 << 16;
const MAX_REJECTIONS: usize = 100;

/// A catalog polytope description.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CatalogSpec {
    Simplex { d: usize },
    Cube { d: usize },
    CrossPolytope { d: usize },
    Cyclic { d: usize, n: usize },
    Pyramid { base: Box<CatalogSpec> },
    Bipyramid { base: Box<CatalogSpec> },
    Prism { base: Box<CatalogSpec> },
    RandomSphere { d: usize, n: usize, seed: u64 },
}

impl CatalogSpec {
    /// Number of pyramid/bipyramid/prism layers wrapped around a base family.
    pub fn nesting(&self) -> usize {
        match self {
            CatalogSpec::Pyramid { base }
            | CatalogSpec::Bipyramid { base }
            | CatalogSpec::Prism { base } => 1 + base.nesting(),
            _ => 0,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            CatalogSpec::Simplex { d }
            | CatalogSpec::Cube { d }
            | CatalogSpec::CrossPolytope { d }
            | CatalogSpec::Cyclic { d, .. }
            | CatalogSpec::RandomSphere { d, .. } => *d,
            CatalogSpec::Pyramid { base }
            | CatalogSpec::Bipyramid { base }
            | CatalogSpec::Prism { base } => base.dim() + 1,
        }
    }

    pub fn build(&self) -> Result<Polytope> {
        if self.nesting() > MAX_NESTING {
            return Err(Error::InvalidSpec(format!(
                "nesting depth {} exceeds {MAX_NESTING}",
                self.nesting()
            )));
        }
        match self {
            CatalogSpec::Simplex { d } => make_simplex(*d),
            CatalogSpec::Cube { d } => make_cube(*d),
            CatalogSpec::CrossPolytope { d } => make_cross_polytope(*d),
            CatalogSpec::Cyclic { d, n } => make_cyclic(*d, *n),
            CatalogSpec::Pyramid { base } => make_pyramid(&base.build()?),
            CatalogSpec::Bipyramid { base } => make_bipyramid(&base.build()?),
            CatalogSpec::Prism { base } => make_prism(&base.build()?),
            CatalogSpec::RandomSphere { d, n, seed } => make_random_sphere(*d, *n, *seed),
        }
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpec::Simplex { d } => write!(f, "simplex-{d}"),
            CatalogSpec::Cube { d } => write!(f, "cube-{d}"),
            CatalogSpec::CrossPolytope { d } => write!(f, "cross-{d}"),
            CatalogSpec::Cyclic { d, n } => write!(f, "cyclic-{d}-{n}"),
            CatalogSpec::Pyramid { base } => write!(f, "pyramid({base})"),
            CatalogSpec::Bipyramid { base } => write!(f, "bipyramid({base})"),
            CatalogSpec::Prism { base } => write!(f, "prism({base})"),
            CatalogSpec::RandomSphere { d, n, seed } => write!(f, "sphere-{d}-{n}-s{seed}"),
        }
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSpec(msg()))
    }
}

/// The origin together with the standard basis vectors.
pub fn make_simplex(d: usize) -> Result<Polytope> {
    require(d >= 1, || "simplex needs d >= 1".into())?;
    let mut points = vec![Point::new(vec![int(0); d])];
    for i in 0..d {
        let mut c = vec![int(0); d];
        c[i] = int(1);
        points.push(Point::new(c));
    }
    Polytope::new(points)
}

/// All `±1` vectors. Vertex `i` has coordinate `j` equal to `+1` iff bit `j`
/// of `i` is set.
pub fn make_cube(d: usize) -> Result<Polytope> {
    require((1..=MAX_CUBE_DIM).contains(&d), || {
        format!("cube dimension must be in 1..={MAX_CUBE_DIM}, got {d}")
    })?;
    let points = (0..1usize << d)
        .map(|i| {
            Point::new(
                (0..d)
                    .map(|j| int(if i >> j & 1 == 1 { 1 } else { -1 }))
                    .collect(),
            )
        })
        .collect();
    Polytope::new(points)
}

/// `±e_i`, ordered `+e_1, -e_1, +e_2, ...`.
pub fn make_cross_polytope(d: usize) -> Result<Polytope> {
    require(d >= 2, || "cross-polytope needs d >= 2".into())?;
    let mut points = Vec::with_capacity(2 * d);
    for axis in 0..d {
        for sign in [1, -1] {
            let mut c = vec![int(0); d];
            c[axis] = int(sign);
            points.push(Point::new(c));
        }
    }
    Polytope::new(points)
}

/// Points `(t, t^2, ..., t^d)` on the moment curve for `t = 1..=n`.
pub fn make_cyclic(d: usize, n: usize) -> Result<Polytope> {
    require(d >= 2 && n > d, || {
        format!("cyclic polytope needs d >= 2 and n >= d + 1, got d = {d}, n = {n}")
    })?;
    let points = (1..=n)
        .map(|t| {
            let t = BigInt::from(t);
            let mut power = BigInt::from(1);
            Point::new(
                (0..d)
                    .map(|_| {
                        power *= &t;
                        Rational::from_integer(power.clone())
                    })
                    .collect(),
            )
        })
        .collect();
    Polytope::new(points)
}

fn lift(p: &Point, height: Rational) -> Point {
    let mut c = p.coords().to_vec();
    c.push(height);
    Point::new(c)
}

fn centroid(base: &Polytope) -> Point {
    let n = Rational::from_integer(BigInt::from(base.vertex_count()));
    let coords = (0..base.dim())
        .map(|j| {
            base.vertices()
                .iter()
                .map(|v| &v.coords()[j])
                .sum::<Rational>()
                / &n
        })
        .collect();
    Point::new(coords)
}

fn embedded(base: &Polytope) -> Vec<Point> {
    base.vertices().iter().map(|v| lift(v, int(0))).collect()
}

/// The base at height 0 plus an apex at height 1 above its centroid.
pub fn make_pyramid(base: &Polytope) -> Result<Polytope> {
    let mut points = embedded(base);
    points.push(lift(&centroid(base), int(1)));
    Polytope::new(points)
}

/// The base at height 0 plus apexes at heights `1` and `-1` over its centroid.
pub fn make_bipyramid(base: &Polytope) -> Result<Polytope> {
    let mut points = embedded(base);
    let c = centroid(base);
    points.push(lift(&c, int(1)));
    points.push(lift(&c, int(-1)));
    Polytope::new(points)
}

/// The base at heights 0 and 1.
pub fn make_prism(base: &Polytope) -> Result<Polytope> {
    let mut points = embedded(base);
    points.extend(base.vertices().iter().map(|v| lift(v, int(1))));
    Polytope::new(points)
}

fn sphere_point(rng: &mut ChaCha8Rng, d: usize) -> Point {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        if !(1e-6..=1.0).contains(&norm2) {
            continue;
        }
        let norm = norm2.sqrt();
        let coords = v
            .iter()
            .map(|x| {
                let k = (x / norm * SPHERE_DENOMINATOR as f64).round() as i64;
                Rational::new(BigInt::from(k), BigInt::from(SPHERE_DENOMINATOR))
            })
            .collect();
        return Point::new(coords);
    }
}

/// `n` seeded pseudorandom points near the unit sphere, redrawn as a whole
/// until they are in convex position and span `Q^d`.
pub fn make_random_sphere(d: usize, n: usize, seed: u64) -> Result<Polytope> {
    require(d >= 1 && n > d, || {
        format!("random polytope needs d >= 1 and n >= d + 1, got d = {d}, n = {n}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let points: Vec<Point> = (0..n).map(|_| sphere_point(&mut rng, d)).collect();
        match Polytope::new(points) {
            Ok(p) => return Ok(p),
            Err(Error::NonVertex(_) | Error::DegeneratePolytope { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::CouldNotRealize(MAX_REJECTIONS))
}

/// The default verification catalog.
pub fn builtin_catalog() -> Vec<CatalogSpec> {
    use CatalogSpec::*;
    let mut catalog = Vec::new();
    catalog.extend((1..=5).map(|d| Simplex { d }));
    catalog.extend((1..=4).map(|d| Cube { d }));
    catalog.extend((2..=4).map(|d| CrossPolytope { d }));
    catalog.extend((4..=8).map(|n| Cyclic { d: 3, n }));
    catalog.extend((5..=8).map(|n| Cyclic { d: 4, n }));
    catalog.push(Pyramid {
        base: Box::new(Cube { d: 2 }),
    });
    catalog.push(Bipyramid {
        base: Box::new(Simplex { d: 2 }),
    });
    catalog.push(Prism {
        base: Box::new(Simplex { d: 2 }),
    });
    catalog.extend(random_entries());
    catalog
}

/// Twenty seeded random polytopes cycling through `d = 2, 3, 4` with
/// `d + 2 <= n <= 12`.
fn random_entries() -> impl Iterator<Item = CatalogSpec> {
    (0..20u64).map(|i| {
        let d = 2 + (i % 3) as usize;
        let n = (d + 2 + (i as usize * 3) % (11 - d)).min(12);
        CatalogSpec::RandomSphere {
            d,
            n,
            seed: 1000 + i,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_examples() {
        let s = make_simplex(1).unwrap();
        assert_eq!(s.vertex_count(), 2);
        let s = make_simplex(3).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert!(s.graph().is_complete());
        assert!(make_simplex(0).is_err());
    }

    #[test]
    fn cube_examples() {
        assert_eq!(make_cube(2).unwrap().f_vector(), vec![4, 4]);
        let c = make_cube(3).unwrap();
        assert_eq!((c.vertex_count(), c.facets().len()), (8, 6));
        let c = make_cube(4).unwrap();
        assert_eq!((c.vertex_count(), c.facets().len()), (16, 8));
        assert!(make_cube(0).is_err());
        assert!(make_cube(6).is_err());
    }

    #[test]
    fn cross_polytope_examples() {
        let sq = make_cross_polytope(2).unwrap();
        assert_eq!(sq.f_vector(), vec![4, 4]);
        let oct = make_cross_polytope(3).unwrap();
        assert!(oct.is_simplicial());
        let c4 = make_cross_polytope(4).unwrap();
        assert_eq!((c4.vertex_count(), c4.facets().len()), (8, 16));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(make_cyclic(4, 6).unwrap().facets().len(), 9);
        assert_eq!(make_cyclic(4, 7).unwrap().facets().len(), 14);
        let pentagon = make_cyclic(2, 5).unwrap();
        assert_eq!(pentagon.f_vector(), vec![5, 5]);
        assert!(make_cyclic(3, 3).is_err());
    }

    #[test]
    fn product_constructions() {
        let triangle = make_simplex(2).unwrap();
        let bi = make_bipyramid(&triangle).unwrap();
        assert_eq!((bi.vertex_count(), bi.facets().len()), (5, 6));
        assert!(bi.is_simplicial());
        let pyr = make_pyramid(&make_cube(2).unwrap()).unwrap();
        assert_eq!(pyr.facets().len(), 5);
        let prism = make_prism(&triangle).unwrap();
        assert_eq!((prism.vertex_count(), prism.facets().len()), (6, 5));
    }

    #[test]
    fn random_sphere_is_deterministic() {
        let a = make_random_sphere(3, 8, 7).unwrap();
        let b = make_random_sphere(3, 8, 7).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_ne!(
            a.vertices(),
            make_random_sphere(3, 8, 8).unwrap().vertices()
        );
        assert_eq!(a.vertex_count(), 8);
        let f = a.f_vector();
        assert_eq!(f[0] as isize - f[1] as isize + f[2] as isize, 2);
    }

    #[test]
    fn random_pentagon() {
        let p = make_random_sphere(2, 5, 1).unwrap();
        assert_eq!(p.f_vector(), vec![5, 5]);
    }

    #[test]
    fn random_unrealizable() {
        // only two points of the 0-sphere exist, so three never form a segment
        assert_eq!(
            make_random_sphere(1, 3, 0),
            Err(Error::CouldNotRealize(100))
        );
    }

    #[test]
    fn nesting_limit() {
        let mut spec = CatalogSpec::Simplex { d: 1 };
        for _ in 0..4 {
            spec = CatalogSpec::Prism {
                base: Box::new(spec),
            };
        }
        assert_eq!(spec.dim(), 5);
        assert!(matches!(spec.build(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn catalog_shape() {
        let catalog = builtin_catalog();
        let random: Vec<_> = catalog
            .iter()
            .filter_map(|s| match s {
                CatalogSpec::RandomSphere { d, n, .. } => Some((*d, *n)),
                _ => None,
            })
            .collect();
        assert_eq!(random.len(), 20);
        assert!(random.iter().all(|&(d, n)| d <= 4 && n <= 12 && n > d + 1));
    }
}
