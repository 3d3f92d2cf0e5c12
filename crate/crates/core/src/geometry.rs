//! Exact rational linear algebra over points in `Q^d`.
//!
//! Everything here works on [`BigRational`] values, which `num-rational`
//! keeps reduced with a positive denominator. Elimination always pivots on
//! the first row (top to bottom) that has a nonzero entry in the current
//! column, so results are reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    fn sub(&self, other: &Point) -> Vec<Rational> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Side of a hyperplane a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    On,
    Positive,
    Negative,
}

/// The locus `normal · x = offset`, stored so that the first nonzero entry
/// of `normal` is `1`. Two hyperplanes are the same set iff they compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        let lead = normal
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(Error::ZeroNormal)?;
        let normal = normal.into_iter().map(|c| c / &lead).collect();
        Ok(Self {
            normal,
            offset: offset / lead,
        })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }
}

/// Result of [`solve_exact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub rank: usize,
    /// One solution (free variables set to zero), or `None` if inconsistent.
    pub solution: Option<Vec<Rational>>,
}

/// Reduced row echelon form of a matrix together with its pivot columns.
struct Echelon {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

fn reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        for c in col..rows[next].len() {
            let scaled = &rows[next][c] * &inv;
            rows[next][c] = scaled;
        }
        for r in 0..rows.len() {
            if r == next || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..rows[r].len() {
                let delta = &factor * &rows[next][c];
                rows[r][c] -= delta;
            }
        }
        pivots.push(col);
        next += 1;
    }
    Echelon { rows, pivots }
}

fn check_rectangular(matrix: &[Vec<Rational>]) -> Result<usize> {
    let cols = matrix.first().map_or(0, Vec::len);
    if let Some(row) = matrix.iter().find(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch(format!(
            "ragged matrix: row of length {} in a matrix of width {cols}",
            row.len()
        )));
    }
    Ok(cols)
}

/// Gaussian elimination of `matrix · x = rhs` over the rationals.
pub fn solve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Solution> {
    let cols = check_rectangular(matrix)?;
    if rhs.len() != matrix.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} rows but {} right-hand side entries",
            matrix.len(),
            rhs.len()
        )));
    }
    let augmented = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let ech = reduce(augmented, cols);
    let rank = ech.pivots.len();
    let consistent = ech.rows[rank..].iter().all(|row| row[cols].is_zero());
    let solution = consistent.then(|| {
        let mut x = vec![Rational::zero(); cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.rows[r][cols].clone();
        }
        x
    });
    Ok(Solution { rank, solution })
}

/// Rank of a rectangular rational matrix.
pub fn rank(matrix: &[Vec<Rational>]) -> Result<usize> {
    let cols = check_rectangular(matrix)?;
    Ok(reduce(matrix.to_vec(), cols).pivots.len())
}

fn check_uniform(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    Ok(dim)
}

/// Rank of the difference vectors `p_i - p_last`. The points are affinely
/// independent iff this equals `points.len() - 1`.
pub fn affine_rank(points: &[Point]) -> Result<usize> {
    check_uniform(points)?;
    let (base, rest) = points.split_last().expect("nonempty after check");
    let diffs: Vec<_> = rest.iter().map(|p| p.sub(base)).collect();
    rank(&diffs)
}

pub fn affinely_independent(points: &[Point]) -> Result<bool> {
    Ok(affine_rank(points)? + 1 == points.len())
}

/// The unique hyperplane through `d` affinely independent points of `Q^d`.
pub fn hyperplane_through(points: &[Point]) -> Result<Hyperplane> {
    let dim = check_uniform(points)?;
    if points.len() != dim {
        return Err(Error::DegenerateSpanningSet { expected: dim });
    }
    let base = &points[0];
    let diffs: Vec<_> = points[1..].iter().map(|p| p.sub(base)).collect();
    let ech = reduce(diffs, dim);
    if ech.pivots.len() + 1 != dim {
        return Err(Error::DegenerateSpanningSet { expected: dim });
    }
    // The kernel is one-dimensional: set the single free column to 1.
    let free = (0..dim)
        .find(|c| !ech.pivots.contains(c))
        .expect("rank d-1 leaves one free column");
    let mut normal = vec![Rational::zero(); dim];
    normal[free] = Rational::one();
    for (r, &p) in ech.pivots.iter().enumerate() {
        normal[p] = -ech.rows[r][free].clone();
    }
    let offset = dot(&normal, base.coords());
    Hyperplane::new(normal, offset)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn classify_side(h: &Hyperplane, p: &Point) -> Result<Side> {
    if h.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: p.dim(),
        });
    }
    let value = dot(&h.normal, p.coords()) - &h.offset;
    Ok(if value.is_zero() {
        Side::On
    } else if value.is_positive() {
        Side::Positive
    } else {
        Side::Negative
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[&[i64]]) -> Vec<Point> {
        rows.iter().map(|r| Point::from_ints(r)).collect()
    }

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn affine_rank_examples() {
        assert_eq!(affine_rank(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap(), 2);
        assert_eq!(affine_rank(&pts(&[&[5, 7]])).unwrap(), 0);
        let collinear = pts(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert_eq!(affine_rank(&collinear).unwrap(), 1);
        assert!(!affinely_independent(&collinear).unwrap());
    }

    #[test]
    fn affine_rank_errors() {
        assert_eq!(affine_rank(&[]), Err(Error::EmptyPointSet));
        assert!(matches!(
            affine_rank(&pts(&[&[0, 0], &[1, 0, 0]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hyperplane_examples() {
        let h = hyperplane_through(&pts(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(h.normal(), ints(&[1, 1]).as_slice());
        assert_eq!(h.offset(), &int(1));

        let h = hyperplane_through(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(h.normal(), ints(&[1, 1, 1]).as_slice());
        assert_eq!(h.offset(), &int(1));

        assert_eq!(
            hyperplane_through(&pts(&[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0]])),
            Err(Error::DegenerateSpanningSet { expected: 3 })
        );
        assert!(hyperplane_through(&pts(&[&[0, 0, 0], &[1, 0, 0]])).is_err());
    }

    #[test]
    fn hyperplane_in_one_dimension() {
        let h = hyperplane_through(&pts(&[&[-3]])).unwrap();
        assert_eq!(h.normal(), ints(&[1]).as_slice());
        assert_eq!(h.offset(), &int(-3));
    }

    #[test]
    fn canonical_form_scales_lead_to_one() {
        let h = Hyperplane::new(ints(&[0, -2, 4]), int(6)).unwrap();
        assert_eq!(h.normal(), ints(&[0, 1, -2]).as_slice());
        assert_eq!(h.offset(), &int(-3));
        assert_eq!(
            Hyperplane::new(ints(&[0, 0]), int(1)),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn classify_examples() {
        let h = hyperplane_through(&pts(&[&[1, 0], &[0, 1]])).unwrap();
        let side = |p: &[i64]| classify_side(&h, &Point::from_ints(p)).unwrap();
        assert_eq!(side(&[0, 0]), Side::Negative);
        assert_eq!(side(&[1, 0]), Side::On);
        assert_eq!(side(&[1, 1]), Side::Positive);
        assert!(classify_side(&h, &Point::from_ints(&[1, 1, 1])).is_err());
    }

    #[test]
    fn solve_examples() {
        let identity = vec![ints(&[1, 0]), ints(&[0, 1])];
        let s = solve_exact(&identity, &ints(&[3, 4])).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.solution, Some(ints(&[3, 4])));

        let zero = vec![ints(&[0, 0]), ints(&[0, 0])];
        let s = solve_exact(&zero, &ints(&[0, 0])).unwrap();
        assert_eq!(s.rank, 0);
        assert!(s.solution.is_some());

        let s = solve_exact(&zero, &ints(&[1, 0])).unwrap();
        assert_eq!(s.solution, None);

        assert!(solve_exact(&identity, &ints(&[1])).is_err());
        assert!(solve_exact(&[ints(&[1, 2]), ints(&[1])], &ints(&[0, 0])).is_err());
    }

    #[test]
    fn solve_rational_system() {
        // 2x + 3y = 1, 4x - y = 2  =>  x = 1/2, y = 0
        let m = vec![ints(&[2, 3]), ints(&[4, -1])];
        let s = solve_exact(&m, &ints(&[1, 2])).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(s.solution, Some(vec![half, int(0)]));
    }
}
