//! Dense two-phase primal simplex with Bland's rule.
//!
//! Variables are nonnegative. Phase one is run once per problem; the
//! resulting feasible basis is then reused for any number of objectives.

use crate::compile::Relation;

/// Pivot-element and reduced-cost tolerance.
pub const PIVOT_TOL: f64 = 1e-9;
const CLEAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, point: Vec<f64> },
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexError {
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct Tableau {
    num_vars: usize,
    /// m rows of `cols + 1` entries, the last being the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    /// Columns that may never enter the basis again (artificials after phase one).
    blocked: Vec<bool>,
    pub pivots: usize,
    max_iterations: usize,
}

impl Tableau {
    /// Builds the phase-one tableau and drives it to a feasible basis.
    ///
    /// Returns `Ok(None)` when the constraints are infeasible. Strict
    /// relations must have been rewritten before calling this.
    pub fn feasible(num_vars: usize, rows: &[Row]) -> Result<Option<Tableau>, SimplexError> {
        let m = rows.len();
        let mut slack_count = 0;
        let mut art_count = 0;
        // normalize rhs >= 0
        let norm: Vec<(Vec<f64>, Relation, f64)> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.coeffs.len(), num_vars, "row width");
                assert!(!r.relation.is_strict(), "strict relations must be rewritten first");
                if r.rhs < 0.0 {
                    let rel = match r.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        other => other,
                    };
                    (r.coeffs.iter().map(|c| -c).collect(), rel, -r.rhs)
                } else {
                    (r.coeffs.clone(), r.relation, r.rhs)
                }
            })
            .collect();
        for (_, rel, _) in &norm {
            match rel {
                Relation::Le => slack_count += 1,
                Relation::Ge => {
                    slack_count += 1;
                    art_count += 1
                }
                _ => art_count += 1,
            }
        }
        let cols = num_vars + slack_count + art_count;
        let art_start = num_vars + slack_count;
        let mut tab = Tableau {
            num_vars,
            rows: Vec::with_capacity(m),
            basis: Vec::with_capacity(m),
            cols,
            blocked: vec![false; cols],
            pivots: 0,
            max_iterations: 50 * (cols + m) + 10_000,
        };
        let (mut next_slack, mut next_art) = (num_vars, art_start);
        for (coeffs, rel, rhs) in norm {
            let mut row = vec![0.0; cols + 1];
            row[..num_vars].copy_from_slice(&coeffs);
            row[cols] = rhs;
            match rel {
                Relation::Le => {
                    row[next_slack] = 1.0;
                    tab.basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    tab.basis.push(next_art);
                    next_art += 1;
                }
                _ => {
                    row[next_art] = 1.0;
                    tab.basis.push(next_art);
                    next_art += 1;
                }
            }
            tab.rows.push(row);
        }

        if art_count > 0 {
            let mut cost = vec![0.0; cols];
            cost[art_start..].iter_mut().for_each(|c| *c = 1.0);
            let scale = 1.0 + tab.rows.iter().map(|r| r[cols].abs()).fold(0.0, f64::max);
            match tab.optimize(&cost)? {
                LpOutcome::Optimal { value, .. } if value <= PIVOT_TOL * scale => {}
                _ => return Ok(None),
            }
            tab.evict_artificials(art_start);
            for j in art_start..cols {
                tab.blocked[j] = true;
            }
        }
        Ok(Some(tab))
    }

    /// Pivots zero-valued artificials out of the basis, dropping rows that
    /// turn out to be redundant.
    fn evict_artificials(&mut self, art_start: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= art_start {
                let col = (0..art_start).find(|&j| self.rows[i][j].abs() > PIVOT_TOL);
                match col {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols + 1;
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == 0.0 {
                continue;
            }
            for j in 0..width {
                row[j] -= f * pivot_row[j];
                if row[j].abs() < CLEAN_TOL {
                    row[j] = 0.0;
                }
            }
            row[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Minimizes `cost · z` over the tableau's columns from the current basis.
    fn optimize(&mut self, cost: &[f64]) -> Result<LpOutcome, SimplexError> {
        let width = self.cols + 1;
        // reduced-cost row; last entry holds −(objective value)
        let mut z = vec![0.0; width];
        z[..self.cols].copy_from_slice(cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (zj, rj) in z.iter_mut().zip(&self.rows[i]) {
                    *zj -= cb * rj;
                }
            }
        }
        let mut iterations = 0;
        loop {
            // Bland: lowest-index improving column
            let entering = (0..self.cols).find(|&j| !self.blocked[j] && z[j] < -PIVOT_TOL);
            let Some(c) = entering else {
                let mut point = vec![0.0; self.num_vars];
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < self.num_vars {
                        point[b] = self.rows[i][self.cols];
                    }
                }
                return Ok(LpOutcome::Optimal {
                    value: -z[self.cols],
                    point,
                });
            };
            // ratio test, ties broken by lowest basic index
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[c];
                if a > PIVOT_TOL {
                    let ratio = row[self.cols] / a;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - CLEAN_TOL || (ratio <= lr + CLEAN_TOL && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Ok(LpOutcome::Unbounded);
            };
            self.pivot(r, c);
            let f = z[c];
            for (zj, rj) in z.iter_mut().zip(&self.rows[r]) {
                *zj -= f * rj;
            }
            z[c] = 0.0;
            iterations += 1;
            if iterations > self.max_iterations {
                return Err(SimplexError::IterationLimit);
            }
        }
    }

    /// Minimizes `objective · x` (structural variables only) from the current
    /// feasible basis.
    pub fn minimize(&mut self, objective: &[f64]) -> Result<LpOutcome, SimplexError> {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        let mut cost = vec![0.0; self.cols];
        cost[..self.num_vars].copy_from_slice(objective);
        self.optimize(&cost)
    }
}
