// Copyright 2026 The irvlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense two-phase primal simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · x >= rhs`, with `coeffs` as sparse `(variable, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, BigRational)>,
    pub rhs: BigRational,
}

/// Minimize `objective · x` subject to every constraint and `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { x: Vec<BigRational>, objective: BigRational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    /// Whether `x` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: BigRational = c.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
                lhs >= c.rhs
            })
    }

    pub fn solve(&self) -> LpSolution {
        Tableau::new(self).run(self)
    }
}

struct Tableau {
    /// `m` rows of `cols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Structural, surplus, then artificial columns.
    n: usize,
    m: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.num_vars;
        let m = lp.constraints.len();
        let cols = n + 2 * m;
        let mut rows = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![BigRational::zero(); cols + 1];
            for (j, a) in &c.coeffs {
                row[*j] += a;
            }
            row[n + i] = -BigRational::one();
            row[cols] = c.rhs.clone();
            if c.rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
            row[n + m + i] = BigRational::one();
            rows.push(row);
        }
        Tableau { rows, basis: (n + m..n + 2 * m).collect(), n, m }
    }

    fn width(&self) -> usize {
        self.n + 2 * self.m
    }

    /// Reduced-cost row for `cost`, with the negated objective value last.
    fn reduced_costs(&self, cost: &[BigRational]) -> Vec<BigRational> {
        let mut z: Vec<BigRational> = cost.to_vec();
        z.push(BigRational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (zj, v) in z.iter_mut().zip(row) {
                if !v.is_zero() {
                    *zj -= cb * v;
                }
            }
        }
        z
    }

    fn pivot(&mut self, z: &mut [BigRational], r: usize, col: usize) {
        let inv = BigRational::one() / &self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let nz: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |target: &mut [BigRational]| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                target[j] -= &f * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(z);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns false if
    /// unbounded.
    fn optimize(&mut self, z: &mut [BigRational], allowed: usize) -> bool {
        let rhs = self.width();
        loop {
            // Bland: lowest-index improving column.
            let Some(col) = (0..allowed).find(|&j| z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, r, _)) = best else {
                return false;
            };
            self.pivot(z, r, col);
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpSolution {
        let (n, m) = (self.n, self.m);
        let width = self.width();
        // Phase 1: minimize the artificial sum.
        let mut cost1 = vec![BigRational::zero(); width];
        for c in cost1.iter_mut().skip(n + m) {
            *c = BigRational::one();
        }
        let mut z = self.reduced_costs(&cost1);
        self.optimize(&mut z, width);
        if !z[width].is_zero() {
            return LpSolution::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= n + m {
                match (0..n + m).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(col) => self.pivot(&mut z, r, col),
                    None => {
                        // Redundant constraint.
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        // Phase 2 over structural and surplus columns only.
        let mut cost2 = vec![BigRational::zero(); width];
        cost2[..n].clone_from_slice(&lp.objective);
        let mut z = self.reduced_costs(&cost2);
        if !self.optimize(&mut z, n + m) {
            return LpSolution::Unbounded;
        }
        let mut x = vec![BigRational::zero(); n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < n {
                x[b] = row[width].clone();
            }
        }
        let objective = x.iter().zip(&lp.objective).map(|(a, c)| a * c).sum();
        LpSolution::Optimal { x, objective }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn row(coeffs: &[(usize, i64)], rhs: i64) -> Constraint {
        Constraint { coeffs: coeffs.iter().map(|&(j, a)| (j, q(a))).collect(), rhs: q(rhs) }
    }

    #[test]
    fn small_minimum() {
        // min x + y s.t. x + 2y >= 4, 3x + y >= 6.
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![q(1), q(1)],
            constraints: vec![row(&[(0, 1), (1, 2)], 4), row(&[(0, 3), (1, 1)], 6)],
        };
        match lp.solve() {
            LpSolution::Optimal { x, objective } => {
                assert!(lp.is_feasible(&x));
                assert_eq!(objective, BigRational::new(14.into(), 5.into()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_gaps_are_infeasible() {
        // x >= y + 1 and y >= x + 1.
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![q(1), q(1)],
            constraints: vec![row(&[(0, 1), (1, -1)], 1), row(&[(1, 1), (0, -1)], 1)],
        };
        assert_eq!(lp.solve(), LpSolution::Infeasible);
        // x >= 1 and -x >= 0.
        let lp = LinearProgram {
            num_vars: 1,
            objective: vec![q(1)],
            constraints: vec![row(&[(0, 1)], 1), row(&[(0, -1)], 0)],
        };
        assert_eq!(lp.solve(), LpSolution::Infeasible);
    }

    #[test]
    fn unbounded_and_redundant() {
        let lp = LinearProgram { num_vars: 1, objective: vec![q(-1)], constraints: vec![row(&[(0, 1)], 1)] };
        assert_eq!(lp.solve(), LpSolution::Unbounded);
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![q(2), q(3)],
            constraints: vec![row(&[(0, 1), (1, 1)], 2), row(&[(0, 1), (1, 1)], 2), row(&[], -1)],
        };
        match lp.solve() {
            LpSolution::Optimal { objective, x } => {
                assert_eq!(objective, q(4));
                assert_eq!(x, vec![q(2), q(0)]);
            }
            other => panic!("{other:?}"),
        }
    }
}
