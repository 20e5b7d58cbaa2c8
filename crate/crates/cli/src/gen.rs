//! Seeded random instances. Polyhedra are drawn in generator form and
//! converted, so every instance is nonempty by construction and its
//! generators stay available to the checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use polycalc_core::arith::linalg::{self, Matrix, Vector};
use polycalc_core::function::{AffineMap, PolyFunc};
use polycalc_core::mapping::{sample_points, PolyMap};
use polycalc_core::ovf::OvfInstance;
use polycalc_core::polyhedra::{dd_reverse, relative_interior_point, Constraint, GenSet, HPoly};
use polycalc_core::Rational;

/// One random instance of a rule, with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    NormalCone { p: HPoly, x: Vector },
    Intersection { p: HPoly, q: HPoly, x: Vector },
    Sum { f1: PolyMap, f2: PolyMap, x: Vector, y: Vector, v: Vector, indicator: bool },
    Chain { f: PolyMap, g: PolyMap, x: Vector, z: Vector, w: Vector },
    Preimage { f: PolyMap, theta: HPoly, x: Vector, y: Vector },
    Sublevel { f: PolyFunc, x: Vector },
    MultiSublevel { fs: Vec<PolyFunc>, gammas: Vec<Rational>, x: Vector, restricted: bool },
    SubdiffSum { f1: PolyFunc, f2: PolyFunc, x: Vector },
    AffineChain { f: PolyFunc, map: AffineMap, x: Vector },
    Ovf { inst: OvfInstance, x: Vector },
    MonotoneCompose { phi: PolyFunc, f: PolyFunc, x: Vector },
    Separation { p: HPoly, omega: HPoly },
    DdRoundtrip { g: Option<GenSet>, h: HPoly },
    FmVsDd { g: Option<GenSet>, h: HPoly, drop: Vec<usize> },
}

pub struct Gen {
    rng: ChaCha8Rng,
    bound: i64,
    max_dim: usize,
}

impl Gen {
    pub fn new(seed: u64, bound: i64, max_dim: usize) -> Self {
        assert!(bound >= 1 && max_dim >= 2);
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), bound, max_dim }
    }

    /// A stream determined by the seed, the rule and the instance index
    /// alone, so selecting different rules never shifts other streams.
    pub fn for_instance(seed: u64, rule: &str, index: usize, bound: i64, max_dim: usize) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in rule.bytes().chain(index.to_le_bytes()) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        Gen::new(seed ^ h, bound, max_dim)
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn int(&mut self) -> i64 {
        self.rng.random_range(-self.bound..=self.bound)
    }

    /// Mostly integers, sometimes halves, numerator within the bound.
    pub fn scalar(&mut self) -> Rational {
        let n = self.int();
        if self.bound >= 2 && self.chance(0.2) {
            Rational::new(n, 2)
        } else {
            Rational::from_integer(n)
        }
    }

    pub fn vector(&mut self, dim: usize) -> Vector {
        (0..dim).map(|_| self.scalar()).collect()
    }

    pub fn nonzero_vector(&mut self, dim: usize) -> Vector {
        loop {
            let v = self.vector(dim);
            if !linalg::is_zero(&v) {
                return v;
            }
        }
    }

    pub fn nonneg(&mut self) -> Rational {
        Rational::from_integer(self.rng.random_range(0..=self.bound))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let r = (0..rows).map(|_| self.vector(cols)).collect();
        Matrix::new(rows, cols, r).expect("shape")
    }

    pub fn genset(&mut self, dim: usize) -> GenSet {
        let np = self.range(1, dim.min(3) + 1);
        let nr = self.range(0, 2);
        let nl = usize::from(self.chance(0.25));
        let points = (0..np).map(|_| self.vector(dim)).collect();
        let rays = (0..nr).map(|_| self.vector(dim)).collect();
        let lines = (0..nl).map(|_| self.vector(dim)).collect();
        GenSet::new(dim, points, rays, lines).expect("dimensions")
    }

    /// A generator set through `x`.
    pub fn genset_through(&mut self, x: &[Rational]) -> GenSet {
        let mut g = self.genset(x.len());
        g.points.push(x.to_vec());
        g
    }

    pub fn poly(&mut self, dim: usize) -> (GenSet, HPoly) {
        let g = self.genset(dim);
        let h = dd_reverse(&g);
        assert!(!h.is_empty(), "generated polyhedron is empty");
        (g, h)
    }

    /// Random constraints, possibly describing the empty set.
    pub fn raw_hpoly(&mut self, dim: usize) -> HPoly {
        let ni = self.range(0, 2 * dim + 1);
        let ne = usize::from(self.chance(0.2));
        let ineqs = (0..ni).map(|_| Constraint::new(self.vector(dim), self.scalar())).collect();
        let eqs = (0..ne).map(|_| Constraint::new(self.vector(dim), self.scalar())).collect();
        HPoly::new(dim, ineqs, eqs).expect("dimensions")
    }

    /// A point of the polyhedron: a generator point, a midpoint, a push along
    /// a ray or line, or the relative-interior point.
    pub fn point_of(&mut self, g: &GenSet, h: &HPoly) -> Vector {
        let pick = self.range(0, 3);
        let i = self.range(0, g.points.len() - 1);
        let x = match pick {
            0 => g.points[i].clone(),
            1 => {
                let j = self.range(0, g.points.len() - 1);
                linalg::midpoint(&g.points[i], &g.points[j])
            }
            2 if !g.rays.is_empty() || !g.lines.is_empty() => {
                let dirs: Vec<&Vector> = g.rays.iter().chain(&g.lines).collect();
                let k = self.range(0, dirs.len() - 1);
                linalg::add(&g.points[i], dirs[k])
            }
            _ => relative_interior_point(h).expect("nonempty"),
        };
        debug_assert!(h.contains(&x).unwrap());
        x
    }

    fn split(&mut self, total: usize) -> (usize, usize) {
        let a = self.range(1, total - 1);
        (a, total - a)
    }

    fn dims(&mut self) -> usize {
        self.range(1, self.max_dim)
    }

    /// A mapping whose graph contains every `(x, y)` in `through`.
    pub fn mapping_through(&mut self, nx: usize, ny: usize, through: &[(Vector, Vector)]) -> PolyMap {
        let mut g = self.genset(nx + ny);
        for (x, y) in through {
            let mut z = x.clone();
            z.extend_from_slice(y);
            g.points.push(z);
        }
        PolyMap::new(nx, ny, dd_reverse(&g)).expect("dimensions")
    }

    /// `max_j (a_j . x + b_j)` over the whole space or over a random
    /// polyhedron through `x`.
    pub fn function_through(&mut self, x: &[Rational], restricted: bool) -> PolyFunc {
        let nx = x.len();
        let k = self.range(1, 3);
        let pieces: Vec<Constraint> = (0..k).map(|_| Constraint::new(self.vector(nx), self.scalar())).collect();
        let dom = if restricted { dd_reverse(&self.genset_through(x)) } else { HPoly::whole_space(nx) };
        PolyFunc::from_pieces(&pieces, &dom).expect("valid function")
    }

    /// `t -> max_j (s_j t + c_j)` with every slope `s_j >= 0`, finite on
    /// `(-inf, hi]` or everywhere.
    pub fn monotone_phi(&mut self, at: &Rational) -> PolyFunc {
        let k = self.range(1, 3);
        let pieces: Vec<Constraint> =
            (0..k).map(|_| Constraint::new(vec![self.nonneg()], self.scalar())).collect();
        let dom = if self.chance(0.3) {
            let hi = at + &self.nonneg();
            HPoly::new(1, vec![Constraint::new(vec![Rational::one()], hi)], vec![]).expect("dimensions")
        } else {
            HPoly::whole_space(1)
        };
        PolyFunc::from_pieces(&pieces, &dom).expect("valid function")
    }

    /// A convex function on the line that decreases somewhere.
    pub fn non_monotone_phi(&mut self) -> PolyFunc {
        let k = self.range(1, 3);
        let mut pieces: Vec<Constraint> =
            (0..k).map(|_| Constraint::new(vec![self.scalar()], self.scalar())).collect();
        let bounded_below = self.chance(0.3);
        if !bounded_below {
            let s = -Rational::from_integer(self.rng.random_range(1..=self.bound));
            pieces.push(Constraint::new(vec![s], self.scalar()));
        }
        let dom = if bounded_below {
            HPoly::new(1, vec![Constraint::new(vec![-Rational::one()], self.scalar())], vec![]).expect("dimensions")
        } else {
            HPoly::whole_space(1)
        };
        PolyFunc::from_pieces(&pieces, &dom).expect("valid function")
    }

    pub fn instance(&mut self, rule: &str) -> Instance {
        match rule {
            "normal-cone" => {
                let d = self.dims();
                let (g, p) = self.poly(d);
                let x = self.point_of(&g, &p);
                Instance::NormalCone { p, x }
            }
            "intersection" => {
                let d = self.dims();
                let (g, p) = self.poly(d);
                let x = self.point_of(&g, &p);
                let q = if self.chance(0.2) {
                    let c = self.nonzero_vector(d);
                    let b = linalg::dot(&c, &x);
                    HPoly::new(d, vec![], vec![Constraint::new(c, b)]).expect("dimensions")
                } else {
                    dd_reverse(&self.genset_through(&x))
                };
                Instance::Intersection { p, q, x }
            }
            "sum" => {
                let (nx, ny) = self.split(self.max_dim);
                let x = self.vector(nx);
                let y1 = self.vector(ny);
                let indicator = self.chance(0.3);
                // moving d from one summand to the other gives a second split
                let shift = (!indicator && self.chance(0.5)).then(|| self.nonzero_vector(ny));
                let mut through = vec![(x.clone(), y1.clone())];
                if let Some(d) = &shift {
                    through.push((x.clone(), linalg::add(&y1, d)));
                }
                let f1 = self.mapping_through(nx, ny, &through);
                let (f2, y2) = if indicator {
                    (PolyMap::indicator(&dd_reverse(&self.genset_through(&x)), ny), linalg::zeros(ny))
                } else {
                    let y2 = self.vector(ny);
                    let mut through = vec![(x.clone(), y2.clone())];
                    if let Some(d) = &shift {
                        through.push((x.clone(), linalg::sub(&y2, d)));
                    }
                    (self.mapping_through(nx, ny, &through), y2)
                };
                let y = linalg::add(&y1, &y2);
                let v = self.vector(ny);
                Instance::Sum { f1, f2, x, y, v, indicator }
            }
            "chain" => {
                let ny = self.range(1, self.max_dim - 1);
                let nx = self.range(1, self.max_dim - ny);
                let nz = self.range(1, self.max_dim - ny);
                let (x, z) = (self.vector(nx), self.vector(nz));
                let y1 = self.vector(ny);
                let y2 = loop {
                    let y = self.vector(ny);
                    if y != y1 {
                        break y;
                    }
                };
                let f = self.mapping_through(nx, ny, &[(x.clone(), y1.clone()), (x.clone(), y2.clone())]);
                let g = self.mapping_through(ny, nz, &[(y1, z.clone()), (y2, z.clone())]);
                let w = self.vector(nz);
                Instance::Chain { f, g, x, z, w }
            }
            "preimage" => {
                let (nx, ny) = self.split(self.max_dim);
                let (x, y) = (self.vector(nx), self.vector(ny));
                let f = self.mapping_through(nx, ny, &[(x.clone(), y.clone())]);
                let theta = dd_reverse(&self.genset_through(&y));
                Instance::Preimage { f, theta, x, y }
            }
            "sublevel" => {
                let nx = self.range(1, self.max_dim - 1);
                let x = self.vector(nx);
                let restricted = self.chance(0.5);
                let f = self.function_through(&x, restricted);
                Instance::Sublevel { f, x }
            }
            "multi-sublevel" => {
                let nx = self.range(1, self.max_dim - 1);
                let m = self.range(2, 3);
                let x = self.vector(nx);
                let restrict = self.chance(0.5);
                let forced = self.range(0, m - 1);
                let mut fs = Vec::new();
                let mut gammas = Vec::new();
                for i in 0..m {
                    let extra = self.chance(0.3);
                    let f = self.function_through(&x, restrict && (i == forced || extra));
                    let fx = f.evaluate(&x).expect("dimensions").finite().cloned().expect("x in dom");
                    let gamma = if self.chance(0.7) { fx } else { &fx + &Rational::from_integer(1 + self.range(0, 2) as i64) };
                    fs.push(f);
                    gammas.push(gamma);
                }
                let restricted = fs.iter().any(|f| f.domain().minimized().num_constraints() > 0);
                Instance::MultiSublevel { fs, gammas, x, restricted }
            }
            "subdiff-sum" => {
                let nx = self.range(1, self.max_dim - 1);
                let x = self.vector(nx);
                let r1 = self.chance(0.5);
                let r2 = self.chance(0.5);
                let f1 = self.function_through(&x, r1);
                let f2 = self.function_through(&x, r2);
                Instance::SubdiffSum { f1, f2, x }
            }
            "affine-chain" => {
                let m = self.range(1, self.max_dim - 1);
                let n = self.range(1, self.max_dim - 1);
                let map = AffineMap::new(self.matrix(m, n), self.vector(m)).expect("shape");
                let x = self.vector(n);
                let y = map.apply(&x).expect("shape");
                let restricted = self.chance(0.5);
                let f = self.function_through(&y, restricted);
                Instance::AffineChain { f, map, x }
            }
            "ovf" => self.ovf(),
            "monotone-compose" => {
                let nx = self.range(1, self.max_dim - 1);
                let x = self.vector(nx);
                let restricted = self.chance(0.5);
                let f = self.function_through(&x, restricted);
                let fx = f.evaluate(&x).expect("dimensions").finite().cloned().expect("x in dom");
                let phi = self.monotone_phi(&fx);
                Instance::MonotoneCompose { phi, f, x }
            }
            "separation" => {
                let d = self.dims();
                let (go, omega) = self.poly(d);
                let p = match self.range(0, 2) {
                    0 => {
                        let q = self.point_of(&go, &omega);
                        dd_reverse(&self.genset_through(&q))
                    }
                    1 => {
                        let q = go.points[self.range(0, go.points.len() - 1)].clone();
                        dd_reverse(&self.genset_through(&q))
                    }
                    _ => self.poly(d).1,
                };
                Instance::Separation { p, omega }
            }
            "dd-roundtrip" => {
                let d = self.dims();
                if self.chance(0.5) {
                    let (g, h) = self.poly(d);
                    Instance::DdRoundtrip { g: Some(g), h }
                } else {
                    Instance::DdRoundtrip { g: None, h: self.raw_hpoly(d) }
                }
            }
            "fm-vs-dd" => {
                let d = self.dims();
                let drop: Vec<usize> = (0..d).filter(|_| self.chance(0.5)).collect();
                if self.chance(0.5) {
                    let (g, h) = self.poly(d);
                    Instance::FmVsDd { g: Some(g), h, drop }
                } else {
                    Instance::FmVsDd { g: None, h: self.raw_hpoly(d), drop }
                }
            }
            other => panic!("unknown rule {other}"),
        }
    }

    /// Redraws until the optimal value function is proper with a nonempty
    /// domain, then picks `x` in that domain.
    fn ovf(&mut self) -> Instance {
        loop {
            let (nx, ny) = self.split(self.max_dim);
            let (x0, y0) = (self.vector(nx), self.vector(ny));
            // a cost blind to coordinate k of y, over a graph with a segment
            // along it above x0
            let blind = self.chance(0.5).then(|| self.range(0, ny - 1));
            let mut through = vec![(x0.clone(), y0.clone())];
            if let Some(k) = blind {
                let mut y = y0.clone();
                y[k] += Rational::from_integer(self.range(1, 2) as i64);
                through.push((x0.clone(), y));
            }
            let f = self.mapping_through(nx, ny, &through);
            let mut xy = x0.clone();
            xy.extend_from_slice(&y0);
            let restricted = self.chance(0.3);
            let mut phi = self.function_through(&xy, restricted);
            if let Some(k) = blind {
                phi.epi.ineqs.iter_mut().for_each(|c| {
                    if c.a[nx + ny].is_negative() {
                        c.a[nx + k] = Rational::zero();
                    }
                });
            }
            let Ok(phi) = PolyFunc::new(nx + ny, phi.epi) else { continue };
            let Ok(inst) = OvfInstance::new(phi, f) else { continue };
            let x = if blind.is_some() && self.chance(0.7) {
                x0
            } else {
                let dom = inst.mu_function().expect("validated").domain();
                let pts = sample_points(&dom, 6).expect("nonempty domain");
                pts[self.range(0, pts.len() - 1)].clone()
            };
            return Instance::Ovf { inst, x };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = Gen::for_instance(7, "sum", 3, 3, 4).instance("sum");
        let b = Gen::for_instance(7, "sum", 3, 3, 4).instance("sum");
        assert_eq!(a, b);
        let c = Gen::for_instance(7, "sum", 4, 3, 4).instance("sum");
        assert_ne!(a, c);
    }

    #[test]
    fn polyhedra_are_nonempty() {
        let mut g = Gen::new(1, 3, 4);
        for d in 1..=4 {
            let (gs, h) = g.poly(d);
            assert_eq!(h.dim, d);
            assert!(!h.is_empty());
            let x = g.point_of(&gs, &h);
            assert!(h.contains(&x).unwrap());
        }
    }

    #[test]
    fn functions_pass_their_checks() {
        let mut g = Gen::new(2, 3, 4);
        let x = g.vector(1);
        let f = g.function_through(&x, true);
        assert_eq!(f.nx, 1);
        assert!(f.evaluate(&x).unwrap().finite().is_some());
        let phi = g.monotone_phi(&Rational::zero());
        assert!(polycalc_core::function::is_nondecreasing(&phi));
        let bad = g.non_monotone_phi();
        assert!(!polycalc_core::function::is_nondecreasing(&bad));
    }

    #[test]
    fn ovf_instances_are_valid() {
        for i in 0..5 {
            let Instance::Ovf { inst, x } = Gen::for_instance(0, "ovf", i, 3, 3).instance("ovf") else {
                panic!("wrong kind")
            };
            assert!(inst.solution_set(&x).is_ok());
        }
    }

    #[test]
    fn instances_serialize() {
        let inst = Gen::new(5, 2, 3).instance("separation");
        let s = serde_json::to_string(&inst).unwrap();
        assert!(s.starts_with(r#"{"kind":"separation""#));
        let back: Instance = serde_json::from_str(&s).unwrap();
        assert_eq!(back, inst);
    }
}
