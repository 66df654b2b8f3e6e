//! Initial degree of symbolic powers.
//!
//! `alpha_symbolic` solves the integer program
//!
//! ```text
//! minimize   sum_i a_i
//! subject to sum_{i in P} a_i >= m   for every minimal prime P,
//!            a in Z^N, a >= 0
//! ```
//!
//! by branch and bound over the exact LP relaxation, so the reported value
//! comes with a proved lower bound and a witness monomial attaining it.
//! `alpha_bruteforce` is the independent oracle: plain enumeration of
//! exponent vectors in increasing total degree.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::ideal::{bipyramid_ideal, Monomial, SquarefreeMonomialIdeal};
use crate::lp::{solve_lp, LinearProgram, LpSolution, Rational};
use crate::simplicial::BipyramidSpec;

/// The minimal degree in a symbolic power, with a monomial attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaResult {
    pub value: u64,
    pub witness: Monomial,
}

struct Node {
    lower: Vec<u64>,
    upper: Vec<Option<u64>>,
}

/// Exact minimum degree of a monomial in the m-th symbolic power.
pub fn alpha_symbolic(ideal: &SquarefreeMonomialIdeal, m: u64) -> Result<AlphaResult, Error> {
    if m == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let num_vars = ideal.num_variables();

    // The m-th power of any single generator is a member, which gives a
    // finite starting incumbent; the smallest support gives the best one.
    let smallest = ideal
        .generator_supports()
        .iter()
        .min_by_key(|s| (s.len(), (*s).clone()))
        .expect("ideals have at least one generator");
    let mut seed = vec![0u64; num_vars];
    for v in smallest.iter() {
        seed[v] = m;
    }
    let mut incumbent = Incumbent {
        degree: seed.iter().sum(),
        exponents: seed,
    };

    let root = Node {
        lower: vec![0; num_vars],
        upper: vec![None; num_vars],
    };
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        let lp = relaxation(ideal, m, &node);
        let (value, point) = match solve_lp(&lp) {
            LpSolution::Optimal { value, point } => (value, point),
            LpSolution::Infeasible => continue,
            LpSolution::Unbounded => {
                unreachable!("covering relaxations are bounded below by zero")
            }
        };

        // Rounding the LP point up keeps every covering row satisfied, so it
        // is always a feasible integer solution of the original program.
        let rounded: Vec<u64> = point.iter().map(|x| to_u64(&x.ceil())).collect();
        incumbent.offer(rounded);

        let bound = to_u64(&value.ceil());
        if bound >= incumbent.degree {
            continue;
        }

        match most_fractional(&point) {
            None => {
                let integral: Vec<u64> = point.iter().map(to_u64).collect();
                incumbent.offer(integral);
            }
            Some(branch_var) => {
                let split = to_u64(&point[branch_var].floor());
                let mut floor_child = Node {
                    lower: node.lower.clone(),
                    upper: node.upper.clone(),
                };
                floor_child.upper[branch_var] = Some(split);
                let mut ceil_child = Node {
                    lower: node.lower,
                    upper: node.upper,
                };
                ceil_child.lower[branch_var] = split + 1;

                if floor_child.lower[branch_var] <= split {
                    stack.push(floor_child);
                }
                if ceil_child.upper[branch_var].is_none_or(|u| split < u) {
                    // Pushed last, so the raised side is explored first.
                    stack.push(ceil_child);
                }
            }
        }
    }

    let witness = Monomial::new(incumbent.exponents);
    debug_assert!(ideal.symbolic_membership(&witness, m)?);
    Ok(AlphaResult {
        value: incumbent.degree,
        witness,
    })
}

struct Incumbent {
    degree: u64,
    exponents: Vec<u64>,
}

impl Incumbent {
    /// Keeps the lexicographically smallest exponent vector among the best
    /// candidates seen.
    fn offer(&mut self, exponents: Vec<u64>) {
        let degree: u64 = exponents.iter().sum();
        if degree < self.degree || (degree == self.degree && exponents < self.exponents) {
            self.degree = degree;
            self.exponents = exponents;
        }
    }
}

fn relaxation(ideal: &SquarefreeMonomialIdeal, m: u64, node: &Node) -> LinearProgram {
    let num_vars = ideal.num_variables();
    let mut lp = LinearProgram::new(vec![Rational::one(); num_vars]).expect("nonempty objective");
    for prime in ideal.minimal_primes() {
        let mut row = vec![Rational::zero(); num_vars];
        for v in prime.iter() {
            row[v] = Rational::one();
        }
        lp.add_constraint(row, from_u64(m))
            .expect("row length matches");
    }
    for (j, &lb) in node.lower.iter().enumerate() {
        if lb > 0 {
            let mut row = vec![Rational::zero(); num_vars];
            row[j] = Rational::one();
            lp.add_constraint(row, from_u64(lb))
                .expect("row length matches");
        }
    }
    for (j, ub) in node.upper.iter().enumerate() {
        if let Some(ub) = ub {
            let mut row = vec![Rational::zero(); num_vars];
            row[j] = -Rational::one();
            lp.add_constraint(row, -from_u64(*ub))
                .expect("row length matches");
        }
    }
    lp
}

/// Index of the coordinate farthest from an integer, ties to the lowest
/// index; `None` when the point is integral.
fn most_fractional(point: &[Rational]) -> Option<usize> {
    let mut best: Option<(usize, Rational)> = None;
    for (j, x) in point.iter().enumerate() {
        let frac = x - x.floor();
        if frac.is_zero() {
            continue;
        }
        let distance = frac.clone().min(Rational::one() - &frac);
        if best.as_ref().is_none_or(|(_, d)| distance > *d) {
            best = Some((j, distance));
        }
    }
    best.map(|(j, _)| j)
}

fn from_u64(value: u64) -> Rational {
    Rational::from_integer(value.into())
}

fn to_u64(value: &Rational) -> u64 {
    debug_assert!(value.is_integer());
    value.to_integer().to_u64().expect("value fits in u64")
}

/// Independent oracle: enumerate exponent vectors in increasing total
/// degree (lexicographically within a degree) and return the first member.
///
/// The caller supplies a degree cap known to be feasible, e.g. `2 m` via the
/// m-th power of a quadratic generator; running past it reports an error
/// rather than looping forever.
pub fn alpha_bruteforce(
    ideal: &SquarefreeMonomialIdeal,
    m: u64,
    degree_cap: u64,
) -> Result<AlphaResult, Error> {
    if m == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let num_vars = ideal.num_variables();
    for degree in 0..=degree_cap {
        let mut exponents = vec![0u64; num_vars];
        if let Some(witness) = search_degree(ideal, m, degree, 0, &mut exponents) {
            return Ok(AlphaResult {
                value: degree,
                witness,
            });
        }
    }
    Err(Error::DegreeCapExhausted(degree_cap))
}

fn search_degree(
    ideal: &SquarefreeMonomialIdeal,
    m: u64,
    remaining: u64,
    position: usize,
    exponents: &mut Vec<u64>,
) -> Option<Monomial> {
    if position + 1 == exponents.len() {
        exponents[position] = remaining;
        let candidate = Monomial::new(exponents.clone());
        exponents[position] = 0;
        return ideal
            .symbolic_membership(&candidate, m)
            .expect("same variable count")
            .then_some(candidate);
    }
    for e in 0..=remaining {
        exponents[position] = e;
        if let Some(found) = search_degree(ideal, m, remaining - e, position + 1, exponents) {
            exponents[position] = 0;
            return Some(found);
        }
    }
    exponents[position] = 0;
    None
}

/// Degree predicted by a closed form for the bipyramid `B_n` at symbolic
/// power `m`, when one applies:
///
/// * even base `n = 2k`, `m = s (k - 1)`: degree `s k`;
/// * odd base `n = 2k - 1 >= 5`, `m = s (2k - 3)`: degree `s (2k - 1)`;
/// * stationary range `n >= 2 (m + 1)`: degree `m + 1`.
pub fn closed_form_alpha(n: usize, m: u64) -> Option<u64> {
    if n < 4 || m == 0 {
        return None;
    }
    let mut predictions: Vec<u64> = Vec::new();
    if n.is_multiple_of(2) {
        let k = (n / 2) as u64;
        if m.is_multiple_of(k - 1) {
            predictions.push(m / (k - 1) * k);
        }
    } else {
        let k = n.div_ceil(2) as u64;
        if m.is_multiple_of(2 * k - 3) {
            predictions.push(m / (2 * k - 3) * (2 * k - 1));
        }
    }
    if n as u64 >= 2 * (m + 1) {
        predictions.push(m + 1);
    }
    debug_assert!(predictions.windows(2).all(|w| w[0] == w[1]));
    predictions.first().copied()
}

/// One grid cell of [`alpha_table`]. `result` is `None` when the budget ran
/// out before the cell was computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTableCell {
    pub n: usize,
    pub m: u64,
    pub result: Option<AlphaResult>,
    pub prediction: Option<u64>,
}

impl AlphaTableCell {
    /// Whether the computed value matches the closed-form prediction;
    /// `None` when either side is missing.
    pub fn matches(&self) -> Option<bool> {
        match (&self.result, self.prediction) {
            (Some(result), Some(prediction)) => Some(result.value == prediction),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TableOptions {
    /// Worker threads for grid cells; 0 and 1 both mean sequential.
    pub jobs: usize,
    /// Wall-clock budget; cells not started in time are left as gaps.
    pub budget: Option<Duration>,
}

/// `alpha` of `I_{B_n}^(m)` over a grid of base sizes and symbolic powers,
/// in row-major order (n outer, m inner), each cell annotated with the
/// closed-form prediction when one applies.
pub fn alpha_table(
    n_range: RangeInclusive<usize>,
    m_range: RangeInclusive<u64>,
    options: &TableOptions,
) -> Result<Vec<AlphaTableCell>, Error> {
    if *m_range.start() == 0 && !m_range.is_empty() {
        return Err(Error::InvalidMultiplicity);
    }
    let mut ideals: BTreeMap<usize, SquarefreeMonomialIdeal> = BTreeMap::new();
    for n in n_range.clone() {
        let ideal = bipyramid_ideal(BipyramidSpec::new(n)?);
        ideal.minimal_primes();
        ideals.insert(n, ideal);
    }
    let cells: Vec<(usize, u64)> = n_range
        .flat_map(|n| m_range.clone().map(move |m| (n, m)))
        .collect();
    let deadline = options.budget.map(|b| Instant::now() + b);
    let results = run_budgeted(cells.len(), options.jobs, deadline, |idx| {
        let (n, m) = cells[idx];
        alpha_symbolic(&ideals[&n], m).expect("m >= 1 was validated")
    });
    Ok(cells
        .into_iter()
        .zip(results)
        .map(|((n, m), result)| AlphaTableCell {
            n,
            m,
            result,
            prediction: closed_form_alpha(n, m),
        })
        .collect())
}

/// Evaluates `f` over `0..count` on `jobs` threads, leaving `None` gaps for
/// indices not started before the deadline. Results are merged by index, so
/// the output order does not depend on scheduling.
pub(crate) fn run_budgeted<T, F>(
    count: usize,
    jobs: usize,
    deadline: Option<Instant>,
    f: F,
) -> Vec<Option<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if count == 0 {
        return Vec::new();
    }
    let results: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let counter = AtomicUsize::new(0);
    let workers = jobs.clamp(1, count);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = counter.fetch_add(1, Ordering::Relaxed);
                if idx >= count {
                    break;
                }
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    continue;
                }
                let value = f(idx);
                *results[idx].lock().expect("no poisoned cells") = Some(value);
            });
        }
    });
    results
        .into_iter()
        .map(|cell| cell.into_inner().expect("no poisoned cells"))
        .collect()
}
