//! Exact linear programming over the rationals.
//!
//! State-space questions about a diagram reduce to feasibility and
//! minimization over systems of the form `A x = b, x >= 0` with rational
//! coefficients. Floating point cannot certify a strict verdict such as
//! "no probabilistic state exists", so everything here runs in exact
//! `BigRational` arithmetic: a dense two-phase simplex with Bland's rule,
//! which cannot cycle and therefore always terminates.
//!
//! The problems involved are tiny (tens of variables, a handful of rows),
//! so a dense tableau is the simplest correct choice.

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A system of linear equalities over nonnegative variables.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    nvars: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

/// Result of minimizing a linear objective over a [`LinearProgram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// No nonnegative solution satisfies the equalities.
    Infeasible,
    /// A minimizer exists; `point` attains `value`.
    Optimal { value: Rational, point: Vec<Rational> },
    /// The objective decreases without bound over the feasible region.
    Unbounded,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram { nvars, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds the equality `sum of coeff * x_var = rhs`, with the left side
    /// given sparsely. Repeated variables accumulate.
    pub fn add_eq(&mut self, terms: &[(usize, Rational)], rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.nvars];
        for (var, c) in terms {
            assert!(*var < self.nvars, "variable {var} out of range");
            coeffs[*var] += c;
        }
        self.rows.push((coeffs, rhs));
    }

    /// Convenience for unit-coefficient equalities such as block sums:
    /// `sum of x_var over vars = rhs`.
    pub fn add_unit_eq(&mut self, vars: &[usize], rhs: Rational) {
        let terms: Vec<(usize, Rational)> = vars.iter().map(|&v| (v, Rational::one())).collect();
        self.add_eq(&terms, rhs);
    }

    /// A nonnegative solution of the system, if one exists.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        Tableau::phase_one(self).map(|t| t.solution(self.nvars))
    }

    /// Minimizes `objective . x` over the system.
    pub fn minimize(&self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.nvars);
        let Some(mut t) = Tableau::phase_one(self) else {
            return LpOutcome::Infeasible;
        };
        t.set_objective(objective);
        if !t.optimize() {
            return LpOutcome::Unbounded;
        }
        let point = t.solution(self.nvars);
        let value = objective
            .iter()
            .zip(&point)
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |a, b| a + b);
        LpOutcome::Optimal { value, point }
    }
}

/// Dense simplex tableau: `rows[i]` holds the coefficients of constraint
/// `i` followed by its right-hand side; `cost` holds the reduced costs
/// followed by the negated objective value; `basis[i]` is the column basic
/// in row `i`.
struct Tableau {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    cost: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    /// Runs phase one on the program: artificial variables are introduced,
    /// their sum is minimized, and on success they are pivoted or dropped
    /// out, leaving a basic feasible tableau over the original columns.
    /// Returns `None` when the system is infeasible.
    fn phase_one(lp: &LinearProgram) -> Option<Tableau> {
        let m = lp.rows.len();
        let n = lp.nvars;
        let ncols = n + m;
        let mut rows = Vec::with_capacity(m);
        for (i, (coeffs, rhs)) in lp.rows.iter().enumerate() {
            let mut row: Vec<Rational> = Vec::with_capacity(ncols + 1);
            row.extend(coeffs.iter().cloned());
            row.extend(std::iter::repeat_with(Rational::zero).take(m));
            row.push(rhs.clone());
            if row[ncols].is_negative() {
                for c in row.iter_mut() {
                    *c = -c.clone();
                }
            }
            row[n + i] = Rational::one();
            rows.push(row);
        }
        // reduced costs for minimizing the artificial sum: subtract every
        // row from the unit costs of the artificial columns
        let mut cost = vec![Rational::zero(); ncols + 1];
        for row in &rows {
            for (c, a) in cost.iter_mut().zip(row) {
                *c -= a;
            }
        }
        for c in cost[n..ncols].iter_mut() {
            *c = Rational::zero();
        }
        let mut t = Tableau { ncols, rows, cost, basis: (n..ncols).collect() };
        assert!(t.optimize(), "artificial sum is bounded below by zero");
        if t.objective_value().is_positive() {
            return None;
        }
        t.evict_artificials(n);
        t.ncols = n;
        for row in t.rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.truncate(n);
            row.push(rhs);
        }
        t.cost = vec![Rational::zero(); n + 1];
        Some(t)
    }

    /// The current objective value (the cost row stores its negation).
    fn objective_value(&self) -> Rational {
        -self.cost[self.ncols].clone()
    }

    /// After phase one, any artificial still basic sits at value zero.
    /// Pivot it out on an original column where possible; a row with no
    /// original coefficients is a redundant constraint and is dropped.
    fn evict_artificials(&mut self, n: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= n {
                match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.swap_remove(i);
                        self.basis.swap_remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    /// Installs reduced costs for a fresh objective over the current basis.
    fn set_objective(&mut self, objective: &[Rational]) {
        let mut cost = vec![Rational::zero(); self.ncols + 1];
        cost[..objective.len()].clone_from_slice(objective);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[i]].clone();
            if !cb.is_zero() {
                for (c, a) in cost.iter_mut().zip(row) {
                    *c -= &cb * a;
                }
            }
        }
        self.cost = cost;
    }

    /// Simplex iterations under Bland's rule until optimal (`true`) or
    /// unbounded (`false`).
    fn optimize(&mut self) -> bool {
        loop {
            // entering: smallest column with negative reduced cost
            let Some(enter) = (0..self.ncols).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            // leaving: minimum ratio, ties broken by smallest basic variable
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[self.ncols] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((leave, _)) = leave else {
                return false;
            };
            self.pivot(leave, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for c in self.rows[row].iter_mut() {
            *c /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (c, pc) in r.iter_mut().zip(&pivot_row) {
                    *c -= &f * pc;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (c, pc) in self.cost.iter_mut().zip(&pivot_row) {
                *c -= &f * pc;
            }
        }
        self.basis[row] = col;
    }

    /// Values of the first `n` variables at the current basic solution.
    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[i][self.ncols].clone();
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn check(lp: &LinearProgram, x: &[Rational]) {
        for (coeffs, rhs) in &lp.rows {
            let sum: Rational = coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
            assert_eq!(&sum, rhs);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn simple_feasibility() {
        let mut lp = LinearProgram::new(2);
        lp.add_unit_eq(&[0, 1], r(1));
        let x = lp.feasible_point().unwrap();
        check(&lp, &x);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut lp = LinearProgram::new(2);
        lp.add_unit_eq(&[0, 1], r(1));
        lp.add_unit_eq(&[0, 1], r(2));
        assert!(lp.feasible_point().is_none());
        assert_eq!(lp.minimize(&[r(1), r(0)]), LpOutcome::Infeasible);
    }

    #[test]
    fn nonnegativity_can_force_infeasibility() {
        let mut lp = LinearProgram::new(2);
        lp.add_unit_eq(&[0, 1], r(-1));
        assert!(lp.feasible_point().is_none());
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let mut lp = LinearProgram::new(2);
        lp.add_unit_eq(&[0, 1], r(1));
        lp.add_unit_eq(&[0, 1], r(1));
        let x = lp.feasible_point().unwrap();
        check(&lp, &x);
    }

    #[test]
    fn minimization_reaches_zero() {
        let mut lp = LinearProgram::new(2);
        lp.add_unit_eq(&[0, 1], r(1));
        match lp.minimize(&[r(1), r(0)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(0));
                check(&lp, &point);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn maximization_via_negated_objective() {
        let mut lp = LinearProgram::new(2);
        lp.add_unit_eq(&[0, 1], r(1));
        match lp.minimize(&[r(-1), r(0)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(-1));
                assert_eq!(point[0], r(1));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn unconstrained_direction_is_unbounded() {
        let lp = LinearProgram::new(1);
        assert_eq!(lp.minimize(&[r(-1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn exact_fractions_survive() {
        let mut lp = LinearProgram::new(2);
        lp.add_eq(&[(0, frac(1, 3)), (1, frac(1, 3))], r(1));
        lp.add_eq(&[(0, r(1)), (1, r(-1))], frac(1, 7));
        let x = lp.feasible_point().unwrap();
        check(&lp, &x);
        assert_eq!(&x[0] + &x[1], r(3));
        assert_eq!(&x[0] - &x[1], frac(1, 7));
    }

    #[test]
    fn negative_rhs_rows_are_normalized() {
        let mut lp = LinearProgram::new(1);
        lp.add_eq(&[(0, r(-1))], r(-1));
        let x = lp.feasible_point().unwrap();
        assert_eq!(x[0], r(1));
    }

    #[test]
    fn accumulates_repeated_terms() {
        let mut lp = LinearProgram::new(1);
        lp.add_eq(&[(0, r(1)), (0, r(1))], r(1));
        let x = lp.feasible_point().unwrap();
        assert_eq!(x[0], frac(1, 2));
    }

    #[test]
    fn zero_variable_systems() {
        let mut lp = LinearProgram::new(0);
        lp.add_eq(&[], r(0));
        assert!(lp.feasible_point().is_some());
        let mut bad = LinearProgram::new(0);
        bad.add_eq(&[], r(1));
        assert!(bad.feasible_point().is_none());
    }
}
