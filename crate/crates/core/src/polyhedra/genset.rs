use serde::{Deserialize, Serialize};

use crate::arith::linalg::{self, Vector};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Generator form `conv(points) + cone(rays) + span(lines)`. The set is
/// empty exactly when `points` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGenSet")]
pub struct GenSet {
    pub dim: usize,
    #[serde(default)]
    pub points: Vec<Vector>,
    #[serde(default)]
    pub rays: Vec<Vector>,
    #[serde(default)]
    pub lines: Vec<Vector>,
}

#[derive(Deserialize)]
struct RawGenSet {
    dim: usize,
    #[serde(default)]
    points: Vec<Vector>,
    #[serde(default)]
    rays: Vec<Vector>,
    #[serde(default)]
    lines: Vec<Vector>,
}

impl TryFrom<RawGenSet> for GenSet {
    type Error = Error;
    fn try_from(r: RawGenSet) -> Result<Self> {
        GenSet::new(r.dim, r.points, r.rays, r.lines)
    }
}

impl GenSet {
    /// Validates lengths and drops zero rays and lines.
    pub fn new(dim: usize, points: Vec<Vector>, rays: Vec<Vector>, lines: Vec<Vector>) -> Result<Self> {
        for v in points.iter().chain(&rays).chain(&lines) {
            linalg::check_dim(dim, v.len())?;
        }
        let rays = rays.into_iter().filter(|r| !linalg::is_zero(r)).collect();
        let lines = lines.into_iter().filter(|r| !linalg::is_zero(r)).collect();
        Ok(GenSet { dim, points, rays, lines })
    }

    pub fn empty(dim: usize) -> Self {
        GenSet { dim, points: vec![], rays: vec![], lines: vec![] }
    }

    pub fn point(p: Vector) -> Self {
        GenSet { dim: p.len(), points: vec![p], rays: vec![], lines: vec![] }
    }

    /// `cone(rays) + span(lines)`, always containing the origin.
    pub fn cone(dim: usize, rays: Vec<Vector>, lines: Vec<Vector>) -> Self {
        let rays = rays.into_iter().filter(|r| !linalg::is_zero(r)).collect();
        let lines = lines.into_iter().filter(|r| !linalg::is_zero(r)).collect();
        GenSet { dim, points: vec![linalg::zeros(dim)], rays, lines }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Image under the coordinate projection onto `keep`.
    pub fn project(&self, keep: &[usize]) -> GenSet {
        let pr = |v: &Vector| keep.iter().map(|&i| v[i].clone()).collect::<Vector>();
        let lines = self.lines.iter().map(pr).filter(|v| !linalg::is_zero(v)).collect();
        let rays = self.rays.iter().map(pr).filter(|v| !linalg::is_zero(v)).collect();
        GenSet { dim: keep.len(), points: self.points.iter().map(pr).collect(), rays, lines }
    }

    /// Image under `x -> A x + b` given row-wise.
    pub fn affine_image(&self, rows: &[Vector], b: &[Rational]) -> GenSet {
        let lin = |v: &Vector| rows.iter().map(|r| linalg::dot(r, v)).collect::<Vector>();
        GenSet {
            dim: rows.len(),
            points: self.points.iter().map(|p| linalg::add(&lin(p), b)).collect(),
            rays: self.rays.iter().map(lin).filter(|v| !linalg::is_zero(v)).collect(),
            lines: self.lines.iter().map(lin).filter(|v| !linalg::is_zero(v)).collect(),
        }
    }

    /// `{x + y}` over generator lists; empty if either operand is.
    pub fn minkowski_sum(&self, other: &GenSet) -> Result<GenSet> {
        linalg::check_dim(self.dim, other.dim)?;
        if self.is_empty() || other.is_empty() {
            return Ok(GenSet::empty(self.dim));
        }
        let mut points = Vec::with_capacity(self.points.len() * other.points.len());
        for p in &self.points {
            for q in &other.points {
                points.push(linalg::add(p, q));
            }
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lines = self.lines.clone();
        lines.extend(other.lines.iter().cloned());
        Ok(GenSet { dim: self.dim, points, rays, lines })
    }

    /// Sorts and deduplicates each list, with rays and lines scaled to
    /// primitive integer form; used to make output deterministic.
    pub fn normalized(&self) -> GenSet {
        let mut points = self.points.clone();
        points.sort();
        points.dedup();
        let mut rays: Vec<Vector> = self.rays.iter().map(|r| linalg::primitive(r)).collect();
        rays.sort();
        rays.dedup();
        let mut lines: Vec<Vector> = self
            .lines
            .iter()
            .map(|l| linalg::primitive(&linalg::normalize_leading_signed(l)))
            .collect();
        lines.sort();
        lines.dedup();
        GenSet { dim: self.dim, points, rays, lines }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::linalg::ivec;

    #[test]
    fn zero_generators_are_dropped() {
        let g = GenSet::new(2, vec![ivec(&[0, 0])], vec![ivec(&[0, 0]), ivec(&[1, 0])], vec![]).unwrap();
        assert_eq!(g.rays, vec![ivec(&[1, 0])]);
        assert!(GenSet::new(2, vec![ivec(&[0])], vec![], vec![]).is_err());
    }

    #[test]
    fn json_schema() {
        let g = GenSet::cone(2, vec![ivec(&[1, 0])], vec![ivec(&[0, 1])]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"dim":2,"points":[["0","0"]],"rays":[["1","0"]],"lines":[["0","1"]]}"#);
        let back: GenSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn normalized_is_canonical() {
        let g = GenSet::cone(2, vec![ivec(&[2, 4]), ivec(&[1, 2])], vec![ivec(&[-3, 0])]);
        let n = g.normalized();
        assert_eq!(n.rays, vec![ivec(&[1, 2])]);
        assert_eq!(n.lines, vec![ivec(&[1, 0])]);
    }
}
