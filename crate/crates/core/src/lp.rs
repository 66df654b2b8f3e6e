//! Exact rational linear programming.
//!
//! Minimizes a linear objective over `{x >= 0, Ax >= b}` with
//! arbitrary-precision rational arithmetic: dense tableau, two-phase
//! simplex, Bland's anti-cycling pivot rule. No rounding happens anywhere,
//! so optima and optimal points are exact and solves are deterministic.

use std::fmt::Write as _;

use num::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational scalar, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num::BigRational;

/// Shorthand for `numer / denom` as a [`Rational`].
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// A linear constraint `coefficients . x >= lower_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub lower_bound: Rational,
}

/// Minimize `objective . x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Result<Self, Error> {
        if objective.is_empty() {
            return Err(Error::ShapeMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(LinearProgram {
            num_vars: objective.len(),
            objective,
            constraints: Vec::new(),
        })
    }

    pub fn add_constraint(
        &mut self,
        coefficients: Vec<Rational>,
        lower_bound: Rational,
    ) -> Result<(), Error> {
        if coefficients.len() != self.num_vars {
            return Err(Error::ShapeMismatch {
                expected: self.num_vars,
                got: coefficients.len(),
            });
        }
        self.constraints.push(Constraint {
            coefficients,
            lower_bound,
        });
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Exact check that `point` satisfies every constraint and `x >= 0`.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(|x| !x.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coefficients.iter().zip(point).map(|(a, x)| a * x).sum();
                lhs >= c.lower_bound
            })
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        self.objective.iter().zip(point).map(|(c, x)| c * x).sum()
    }
}

/// Outcome of a solve. `Optimal` carries the exact optimum and an optimal
/// vertex; the other variants report why no optimum exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn optimal(self) -> Option<(Rational, Vec<Rational>)> {
        match self {
            LpSolution::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Solve with default settings. Each call builds a fresh tableau, so
/// distinct solves may run concurrently.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    Simplex::new(lp).solve()
}

/// Dense two-phase simplex over rationals.
///
/// Row setup: every constraint gets one slack column. Rows whose bound is
/// positive additionally get an artificial column and start phase 1 with the
/// artificial basic; rows with a non-positive bound are negated so their
/// slack can start basic with a non-negative right-hand side.
pub struct Simplex<'a> {
    lp: &'a LinearProgram,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    artificial_start: usize,
    total_cols: usize,
    trace: bool,
}

enum PhaseOutcome {
    Optimal,
    Unbounded,
}

impl<'a> Simplex<'a> {
    pub fn new(lp: &'a LinearProgram) -> Self {
        let n = lp.num_vars;
        let m = lp.constraints.len();
        let num_artificial = lp
            .constraints
            .iter()
            .filter(|c| c.lower_bound.is_positive())
            .count();
        let artificial_start = n + m;
        let total_cols = artificial_start + num_artificial;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_artificial = artificial_start;
        for (i, constraint) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); total_cols];
            if constraint.lower_bound.is_positive() {
                // coeffs . x - slack + artificial = bound
                row[..n].clone_from_slice(&constraint.coefficients);
                row[n + i] = -Rational::one();
                row[next_artificial] = Rational::one();
                basis.push(next_artificial);
                next_artificial += 1;
                rhs.push(constraint.lower_bound.clone());
            } else {
                // -(coeffs . x) + slack = -bound, slack starts basic
                for (j, a) in constraint.coefficients.iter().enumerate() {
                    row[j] = -a.clone();
                }
                row[n + i] = Rational::one();
                basis.push(n + i);
                rhs.push(-constraint.lower_bound.clone());
            }
            rows.push(row);
        }

        Simplex {
            lp,
            rows,
            rhs,
            basis,
            artificial_start,
            total_cols,
            trace: false,
        }
    }

    /// Dump each tableau to stderr while solving.
    pub fn set_trace(&mut self, trace: bool) {
        self.trace = trace;
    }

    pub fn solve(mut self) -> LpSolution {
        let n = self.lp.num_vars;

        if self.artificial_start < self.total_cols {
            // Phase 1: minimize the sum of the artificials.
            let mut cost = vec![Rational::zero(); self.total_cols];
            for entry in cost.iter_mut().skip(self.artificial_start) {
                *entry = Rational::one();
            }
            self.price_out(&mut cost);
            if self.trace {
                self.dump_tableau("phase 1 start", &cost);
            }
            match self.run(&mut cost, self.total_cols) {
                PhaseOutcome::Optimal => {}
                PhaseOutcome::Unbounded => {
                    unreachable!("a sum of nonnegative variables is bounded below")
                }
            }
            let artificial_mass: Rational = self
                .basis
                .iter()
                .zip(&self.rhs)
                .filter(|(b, _)| **b >= self.artificial_start)
                .map(|(_, v)| v.clone())
                .sum();
            if !artificial_mass.is_zero() {
                return LpSolution::Infeasible;
            }
            self.evict_artificials();
        }

        // Phase 2: the real objective, artificial columns banned.
        let mut cost = vec![Rational::zero(); self.total_cols];
        cost[..n].clone_from_slice(&self.lp.objective);
        self.price_out(&mut cost);
        if self.trace {
            self.dump_tableau("phase 2 start", &cost);
        }
        match self.run(&mut cost, self.artificial_start) {
            PhaseOutcome::Unbounded => LpSolution::Unbounded,
            PhaseOutcome::Optimal => {
                let mut point = vec![Rational::zero(); n];
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < n {
                        point[b] = self.rhs[i].clone();
                    }
                }
                let value = self.lp.objective_value(&point);
                debug_assert!(self.lp.is_feasible(&point));
                LpSolution::Optimal { value, point }
            }
        }
    }

    /// Subtract basic rows from the cost vector so basic columns price to
    /// zero (turns raw costs into reduced costs for the current basis).
    fn price_out(&self, cost: &mut [Rational]) {
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() {
                let factor = cost[b].clone();
                for (c, r) in cost.iter_mut().zip(&self.rows[i]) {
                    *c -= &factor * r;
                }
            }
        }
    }

    /// Bland's rule: entering column is the lowest-index one with a negative
    /// reduced cost, the leaving row minimizes the ratio with ties broken by
    /// the lowest basic variable index.
    fn run(&mut self, cost: &mut [Rational], allowed_cols: usize) -> PhaseOutcome {
        loop {
            let entering = (0..allowed_cols).find(|&j| cost[j].is_negative());
            let Some(col) = entering else {
                return PhaseOutcome::Optimal;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return PhaseOutcome::Unbounded;
            };
            self.pivot(row, col, cost);
            if self.trace {
                self.dump_tableau(&format!("pivot row {row}, col {col}"), cost);
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize, cost: &mut [Rational]) {
        let pivot = self.rows[row][col].clone();
        for entry in &mut self.rows[row] {
            *entry /= &pivot;
        }
        self.rhs[row] /= &pivot;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let factor = self.rows[i][col].clone();
                for (entry, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                    *entry -= &factor * p;
                }
                self.rhs[i] -= &factor * &pivot_rhs;
            }
        }
        if !cost[col].is_zero() {
            let factor = cost[col].clone();
            for (entry, p) in cost.iter_mut().zip(&pivot_row) {
                *entry -= &factor * p;
            }
        }
        self.basis[row] = col;
    }

    /// After a zero-mass phase 1, pivot any basic artificial (necessarily at
    /// value zero) out of the basis; a row with no usable pivot column is a
    /// redundant constraint and is dropped.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.artificial_start {
                debug_assert!(self.rhs[i].is_zero());
                let col = (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero());
                match col {
                    Some(col) => {
                        let mut dummy = vec![Rational::zero(); self.total_cols];
                        self.pivot(i, col, &mut dummy);
                    }
                    None => {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn dump_tableau(&self, label: &str, cost: &[Rational]) {
        let mut out = String::new();
        let _ = writeln!(out, "-- {label} --");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "x{:<3} | {} | {}",
                self.basis[i],
                cells.join(" "),
                self.rhs[i]
            );
        }
        let cells: Vec<String> = cost.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "cost | {}", cells.join(" "));
        eprint!("{out}");
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::ideal::bipyramid_ideal;
    use crate::simplicial::BipyramidSpec;

    fn rints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| ratio(v, 1)).collect()
    }

    fn program(objective: &[i64], constraints: &[(&[i64], i64)]) -> LinearProgram {
        let mut lp = LinearProgram::new(rints(objective)).unwrap();
        for (coeffs, bound) in constraints {
            lp.add_constraint(rints(coeffs), ratio(*bound, 1)).unwrap();
        }
        lp
    }

    /// Test oracle: exact optimum by enumerating all basic points (every
    /// square subsystem of constraint/axis rows), independent of the pivot
    /// path the solver takes.
    fn vertex_enumeration_optimum(lp: &LinearProgram) -> Option<(Rational, Vec<Rational>)> {
        use itertools::Itertools;

        let n = lp.num_vars();
        let mut rows: Vec<(Vec<Rational>, Rational)> = lp
            .constraints()
            .iter()
            .map(|c| (c.coefficients.clone(), c.lower_bound.clone()))
            .collect();
        for i in 0..n {
            let mut unit = vec![Rational::zero(); n];
            unit[i] = Rational::one();
            rows.push((unit, Rational::zero()));
        }

        let mut best: Option<(Rational, Vec<Rational>)> = None;
        for subset in (0..rows.len()).combinations(n) {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
            let Some(point) = solve_square_system(a, b) else {
                continue;
            };
            if !lp.is_feasible(&point) {
                continue;
            }
            let value = lp.objective_value(&point);
            if best.as_ref().is_none_or(|(v, _)| value < *v) {
                best = Some((value, point));
            }
        }
        best
    }

    fn solve_square_system(
        mut a: Vec<Vec<Rational>>,
        mut b: Vec<Rational>,
    ) -> Option<Vec<Rational>> {
        let n = b.len();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot_row);
            b.swap(col, pivot_row);
            let pivot = a[col][col].clone();
            for entry in &mut a[col] {
                *entry /= &pivot;
            }
            b[col] /= &pivot;
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    let (source, b_src) = (a[col].clone(), b[col].clone());
                    for (entry, s) in a[r].iter_mut().zip(&source) {
                        *entry -= &factor * s;
                    }
                    b[r] -= &factor * &b_src;
                }
            }
        }
        Some(b)
    }

    #[test]
    fn single_variable_bound() {
        let lp = program(&[1], &[(&[1], 3)]);
        let (value, point) = solve_lp(&lp).optimal().unwrap();
        assert_eq!(value, ratio(3, 1));
        assert_eq!(point, rints(&[3]));
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let lp = program(&[1], &[(&[1], 1), (&[-1], 0)]);
        assert_eq!(solve_lp(&lp), LpSolution::Infeasible);
    }

    #[test]
    fn unbounded_below() {
        let lp = program(&[-1], &[]);
        assert_eq!(solve_lp(&lp), LpSolution::Unbounded);

        let lp = program(&[-1, 0], &[(&[0, 1], 1)]);
        assert_eq!(solve_lp(&lp), LpSolution::Unbounded);
    }

    #[test]
    fn no_constraints_optimum_at_origin() {
        let lp = program(&[2, 3], &[]);
        let (value, point) = solve_lp(&lp).optimal().unwrap();
        assert_eq!(value, ratio(0, 1));
        assert_eq!(point, rints(&[0, 0]));
    }

    #[test]
    fn pinned_variable() {
        let lp = program(&[1], &[(&[1], 2), (&[-1], -2)]);
        let (value, point) = solve_lp(&lp).optimal().unwrap();
        assert_eq!(value, ratio(2, 1));
        assert_eq!(point, rints(&[2]));
    }

    #[test]
    fn redundant_rows_are_handled() {
        let lp = program(&[1, 1], &[(&[1, 1], 1), (&[1, 1], 1), (&[2, 2], 2)]);
        let (value, _) = solve_lp(&lp).optimal().unwrap();
        assert_eq!(value, ratio(1, 1));
    }

    #[test]
    fn bipyramid_six_covering_relaxation() {
        // min sum(a) with every minimal prime of I_{B_6} covering at least 1.
        let ideal = bipyramid_ideal(BipyramidSpec::new(6).unwrap());
        let primes = ideal.minimal_primes();
        assert_eq!(primes.len(), 12);
        let mut lp = LinearProgram::new(vec![Rational::one(); 8]).unwrap();
        for prime in primes {
            let mut row = vec![Rational::zero(); 8];
            for v in prime.iter() {
                row[v] = Rational::one();
            }
            lp.add_constraint(row, Rational::one()).unwrap();
        }
        let (value, point) = solve_lp(&lp).optimal().unwrap();
        assert_eq!(value, ratio(3, 2));
        assert!(lp.is_feasible(&point));
    }

    #[test]
    fn deterministic_resolves() {
        let lp = program(
            &[3, 4, 2],
            &[(&[1, 1, 0], 4), (&[0, 1, 3], 6), (&[2, 0, 1], 5)],
        );
        let first = solve_lp(&lp);
        let second = solve_lp(&lp);
        assert_eq!(first, second);
    }

    #[test]
    fn agrees_with_vertex_enumeration_on_fixed_programs() {
        let cases = vec![
            program(&[3, 4], &[(&[1, 0], 2), (&[0, 1], 1), (&[1, 1], 4)]),
            program(&[1, 2, 3], &[(&[1, 1, 1], 6), (&[-1, 2, 0], 2)]),
            program(&[5, 1], &[(&[-1, 1], 1), (&[1, 1], 3)]),
            program(
                &[2, 2, 1, 1],
                &[(&[1, 0, 1, 0], 3), (&[0, 1, 0, 1], 2), (&[1, 1, 1, 1], 4)],
            ),
        ];
        for lp in cases {
            let (value, point) = solve_lp(&lp).optimal().unwrap();
            let (oracle_value, _) = vertex_enumeration_optimum(&lp).unwrap();
            assert_eq!(value, oracle_value);
            assert!(lp.is_feasible(&point));
            assert_eq!(lp.objective_value(&point), value);
        }
    }

    #[test]
    fn shape_errors() {
        assert!(LinearProgram::new(vec![]).is_err());
        let mut lp = program(&[1, 2], &[]);
        assert_eq!(
            lp.add_constraint(rints(&[1]), ratio(0, 1)).unwrap_err(),
            Error::ShapeMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    /// Nonnegative objectives keep the programs bounded, so the solver must
    /// report optimal or infeasible and agree exactly with the oracle.
    fn small_program() -> impl Strategy<Value = LinearProgram> {
        (1usize..4, 0usize..5).prop_flat_map(|(n, m)| {
            let objective = proptest::collection::vec(0i64..6, n);
            let row = (proptest::collection::vec(-3i64..6, n), -4i64..6);
            (objective, proptest::collection::vec(row, m)).prop_map(|(obj, rows)| {
                let mut lp = LinearProgram::new(rints(&obj)).unwrap();
                for (coeffs, bound) in rows {
                    lp.add_constraint(rints(&coeffs), ratio(bound, 1)).unwrap();
                }
                lp
            })
        })
    }

    proptest! {
        #[test]
        fn matches_vertex_enumeration(lp in small_program()) {
            match solve_lp(&lp) {
                LpSolution::Optimal { value, point } => {
                    prop_assert!(lp.is_feasible(&point));
                    prop_assert_eq!(lp.objective_value(&point), value.clone());
                    let (oracle_value, _) = vertex_enumeration_optimum(&lp).unwrap();
                    prop_assert_eq!(value, oracle_value);
                }
                LpSolution::Infeasible => {
                    prop_assert!(vertex_enumeration_optimum(&lp).is_none());
                }
                LpSolution::Unbounded => {
                    // x >= 0 and a nonnegative objective bound the problem below.
                    prop_assert!(false, "bounded program reported unbounded");
                }
            }
        }

        #[test]
        fn weak_duality_spot_check(
            lp in small_program(),
            multipliers in proptest::collection::vec(0i64..4, 5),
        ) {
            if let LpSolution::Optimal { value, .. } = solve_lp(&lp) {
                let y: Vec<Rational> = lp
                    .constraints()
                    .iter()
                    .enumerate()
                    .map(|(i, _)| ratio(multipliers[i % multipliers.len()], 1))
                    .collect();
                // If y^T A <= c componentwise then y . b lower-bounds the optimum.
                let mut combined = vec![Rational::zero(); lp.num_vars()];
                let mut bound = Rational::zero();
                for (yi, c) in y.iter().zip(lp.constraints()) {
                    for (acc, a) in combined.iter_mut().zip(&c.coefficients) {
                        *acc += yi * a;
                    }
                    bound += yi * &c.lower_bound;
                }
                let dual_feasible =
                    combined.iter().zip(lp.objective()).all(|(lhs, c)| lhs <= c);
                if dual_feasible {
                    prop_assert!(bound <= value);
                }
            }
        }
    }
}
