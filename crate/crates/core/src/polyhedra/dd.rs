//! Double description: conversion between constraint and generator form.
//!
//! Both directions reduce to enumerating the extreme rays and lineality
//! space of a homogeneous cone `{z : E z = 0, H z <= 0}`. Constraints are
//! added one at a time; adjacency of rays is decided combinatorially from
//! their zero sets.

use crate::arith::linalg::{self, Vector};
use crate::arith::Rational;

use super::{Constraint, GenSet, HPoly};

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vector,
    zero: Bits,
}

/// Extreme rays and a lineality basis of `{z : eqs.z = 0, ineqs.z <= 0}`.
pub(crate) fn cone_generators(n: usize, eqs: &[Vector], ineqs: &[Vector]) -> (Vec<Vector>, Vec<Vector>) {
    let m = eqs.len() + ineqs.len();
    let rows = eqs.iter().map(|h| (h, true)).chain(ineqs.iter().map(|h| (h, false)));
    let mut lines: Vec<Vector> = (0..n).map(|i| linalg::unit(n, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, (h, is_eq)) in rows.enumerate() {
        let vals: Vec<Rational> = lines.iter().map(|l| linalg::dot(h, l)).collect();
        if let Some(idx) = vals.iter().position(|v| !v.is_zero()) {
            let l0 = lines[idx].clone();
            let h0 = vals[idx].clone();
            let mut next = Vec::with_capacity(lines.len() - 1);
            for (j, l) in lines.iter().enumerate() {
                if j == idx {
                    continue;
                }
                if vals[j].is_zero() {
                    next.push(l.clone());
                } else {
                    next.push(linalg::primitive(&linalg::axpy(l, &(-&vals[j] / &h0), &l0)));
                }
            }
            lines = next;
            for r in &mut rays {
                let s = linalg::dot(h, &r.v);
                if !s.is_zero() {
                    r.v = linalg::primitive(&linalg::axpy(&r.v, &(-&s / &h0), &l0));
                }
                r.zero.set(k);
            }
            if !is_eq {
                let dir = if h0.is_positive() { linalg::neg(&l0) } else { l0 };
                let mut zero = Bits::new(m);
                for i in 0..k {
                    zero.set(i);
                }
                rays.push(Ray { v: linalg::primitive(&dir), zero });
            }
            continue;
        }

        let signs: Vec<Rational> = rays.iter().map(|r| linalg::dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_negative()).collect();
        let need = n.saturating_sub(lines.len() + 2);

        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zero.and(&rays[q].zero);
                if common.count() < need {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && r.zero.contains_all(&common));
                if blocked {
                    continue;
                }
                let v = linalg::add(
                    &linalg::scale(&rays[p].v, &(-&signs[q])),
                    &linalg::scale(&rays[q].v, &signs[p]),
                );
                let mut zero = common;
                zero.set(k);
                created.push(Ray { v: linalg::primitive(&v), zero });
            }
        }

        let old = std::mem::take(&mut rays);
        for (i, mut r) in old.into_iter().enumerate() {
            if signs[i].is_zero() {
                r.zero.set(k);
                rays.push(r);
            } else if signs[i].is_negative() && !is_eq {
                rays.push(r);
            }
        }
        rays.extend(created);
    }

    (rays.into_iter().map(|r| r.v).collect(), lines)
}

/// Generator form of an H-polyhedron.
pub fn dd_convert(p: &HPoly) -> GenSet {
    let n = p.dim;
    let homog = |c: &Constraint| {
        let mut v = c.a.clone();
        v.push(-&c.b);
        v
    };
    let eqs: Vec<Vector> = p.eqs.iter().map(homog).collect();
    let mut t_row = linalg::zeros(n + 1);
    t_row[n] = -Rational::one();
    let ineqs: Vec<Vector> = std::iter::once(t_row).chain(p.ineqs.iter().map(homog)).collect();
    let (rays, lines) = cone_generators(n + 1, &eqs, &ineqs);

    let mut out = GenSet::empty(n);
    for r in rays {
        let t = r[n].clone();
        if t.is_zero() {
            out.rays.push(r[..n].to_vec());
        } else {
            let inv = t.recip();
            out.points.push(linalg::scale(&r[..n], &inv));
        }
    }
    if out.points.is_empty() {
        return GenSet::empty(n);
    }
    out.lines = lines.into_iter().map(|l| l[..n].to_vec()).collect();
    out
}

/// Constraint form of a generator set, via the polar cone of its
/// homogenization.
pub fn dd_reverse(g: &GenSet) -> HPoly {
    let n = g.dim;
    if g.is_empty() {
        return HPoly::empty(n);
    }
    let lift = |v: &Vector, t: Rational| {
        let mut w = v.clone();
        w.push(t);
        w
    };
    let eqs: Vec<Vector> = g.lines.iter().map(|l| lift(l, Rational::zero())).collect();
    let ineqs: Vec<Vector> = g
        .points
        .iter()
        .map(|p| lift(p, Rational::one()))
        .chain(g.rays.iter().map(|r| lift(r, Rational::zero())))
        .collect();
    let (rays, lines) = cone_generators(n + 1, &eqs, &ineqs);

    let split = |w: &Vector| Constraint::new(w[..n].to_vec(), -&w[n]);
    let out = HPoly {
        dim: n,
        ineqs: rays.iter().map(split).filter(|c| !c.is_trivial()).collect(),
        eqs: lines.iter().map(split).collect(),
    };
    out.canonicalize()
}
