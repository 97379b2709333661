// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c.x` subject to `A x >= b` with `x` free.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arith::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        self.rows[i].last().expect("rhs column")
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over columns `< ncols`; `false` when unbounded.
    fn run(&mut self, cost: &[Rat], ncols: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((i, _)) = leave else { return false };
            self.pivot(i, j);
        }
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        self.basis.iter().enumerate().fold(Rat::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }
}

/// `min c.x` subject to `a_i . x >= b_i` for every row, `x` unrestricted.
pub fn minimize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    // columns: x+ (n), x- (n), surplus (m), artificial (m), rhs
    let art = 2 * n + m;
    let width = art + m + 1;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let s = if b[i].is_negative() { -Rat::one() } else { Rat::one() };
        let mut row = vec![Rat::zero(); width];
        for j in 0..n {
            row[j] = &s * &a[i][j];
            row[n + j] = -&s * &a[i][j];
        }
        row[2 * n + i] = -s.clone();
        row[art + i] = Rat::one();
        row[width - 1] = &s * &b[i];
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (art..art + m).collect() };

    let mut phase1 = vec![Rat::zero(); art + m];
    for x in phase1[art..].iter_mut() {
        *x = Rat::one();
    }
    t.run(&phase1, art + m);
    if t.objective(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art {
            if let Some(j) = (0..art).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let mut phase2 = vec![Rat::zero(); art + m];
    for j in 0..n {
        phase2[j] = c[j].clone();
        phase2[n + j] = -c[j].clone();
    }
    if !t.run(&phase2, art) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] += t.rhs(i);
        } else if bj < 2 * n {
            x[bj - n] -= t.rhs(i);
        }
    }
    let value = x.iter().zip(c).fold(Rat::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { value, x }
}
