//! Fourier–Motzkin projection.

use std::collections::BTreeSet;

use crate::arith::linalg;

use super::{Constraint, HPoly};

fn remove_column(p: &mut HPoly, j: usize) {
    for c in p.ineqs.iter_mut().chain(p.eqs.iter_mut()) {
        c.a.remove(j);
    }
    p.dim -= 1;
}

/// `c - (c_j / e_j) e`, which has a zero in column `j`.
fn cancel(c: &Constraint, e: &Constraint, j: usize) -> Constraint {
    if c.a[j].is_zero() {
        return c.clone();
    }
    let f = -(&c.a[j] / &e.a[j]);
    Constraint::new(linalg::axpy(&c.a, &f, &e.a), &c.b + &f * &e.b)
}

/// Projection onto the coordinates not listed in `drop`, keeping their
/// order. Equalities are used for exact substitution first; the remaining
/// coordinates are eliminated one at a time with redundancy removal after
/// each step.
pub fn fm_eliminate(p: &HPoly, drop: &[usize]) -> HPoly {
    let drop: BTreeSet<usize> = drop.iter().copied().collect();
    assert!(drop.iter().all(|&j| j < p.dim), "drop index out of range");
    let kept = p.dim - drop.len();
    if drop.is_empty() {
        return p.clone();
    }
    if p.is_empty() {
        return HPoly::empty(kept);
    }

    let mut cur = p.canonicalize();
    // original coordinate index of each current column
    let mut cols: Vec<usize> = (0..p.dim).collect();

    loop {
        let hit = cur.eqs.iter().enumerate().find_map(|(k, e)| {
            (0..cols.len())
                .filter(|&j| drop.contains(&cols[j]) && !e.a[j].is_zero())
                .next()
                .map(|j| (k, j))
        });
        let Some((k, j)) = hit else { break };
        let e = cur.eqs.remove(k);
        for c in cur.ineqs.iter_mut() {
            *c = cancel(c, &e, j);
        }
        for c in cur.eqs.iter_mut() {
            *c = cancel(c, &e, j);
        }
        remove_column(&mut cur, j);
        cols.remove(j);
    }
    cur = cur.canonicalize();

    loop {
        let candidates: Vec<usize> = (0..cols.len()).filter(|&j| drop.contains(&cols[j])).collect();
        let Some(&j) = candidates.iter().min_by_key(|&&j| {
            let pos = cur.ineqs.iter().filter(|c| c.a[j].is_positive()).count();
            let neg = cur.ineqs.iter().filter(|c| c.a[j].is_negative()).count();
            (pos * neg) as isize - (pos + neg) as isize
        }) else {
            break;
        };
        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for c in &cur.ineqs {
            if c.a[j].is_positive() {
                pos.push(c.scaled_abs(j));
            } else if c.a[j].is_negative() {
                neg.push(c.scaled_abs(j));
            } else {
                next.push(c.clone());
            }
        }
        for u in &pos {
            for l in &neg {
                next.push(Constraint::new(linalg::add(&u.a, &l.a), &u.b + &l.b));
            }
        }
        cur.ineqs = next;
        remove_column(&mut cur, j);
        cols.remove(j);
        cur = cur.canonicalize().remove_redundant();
    }
    debug_assert_eq!(cur.dim, kept);
    cur
}

impl Constraint {
    /// Divides by `|a_j|`.
    fn scaled_abs(&self, j: usize) -> Constraint {
        let s = self.a[j].abs().recip();
        Constraint::new(linalg::scale(&self.a, &s), &self.b * &s)
    }
}
