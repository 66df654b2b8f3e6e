//! Waldschmidt constants: the limit of `alpha(I^(m)) / m`.
//!
//! For a squarefree monomial ideal the limit equals the optimum of the
//! fractional covering program over the minimal primes (scale a degree-d
//! member of `I^(m)` by `1/m` for one direction, clear denominators of an
//! optimal LP vertex for the other), so `gamma_lp` computes it exactly in
//! finite time. `gamma_report` corroborates the value against the actual
//! `alpha(m) / m` sequence instead of assuming that argument.

use std::time::{Duration, Instant};

use num::{One, Zero};

use crate::alpha::{alpha_symbolic, run_budgeted, AlphaResult};
use crate::error::Error;
use crate::ideal::{bipyramid_ideal, SquarefreeMonomialIdeal};
use crate::lp::{ratio, solve_lp, LinearProgram, Rational};
use crate::simplicial::BipyramidSpec;

/// Exact optimum of `min sum(a)` subject to `sum_{i in P} a_i >= 1` for
/// every minimal prime `P` and `a >= 0`.
pub fn gamma_lp(ideal: &SquarefreeMonomialIdeal) -> Rational {
    let (value, _) = gamma_lp_with_point(ideal);
    value
}

/// As [`gamma_lp`], also returning an optimal vertex of the covering LP.
pub fn gamma_lp_with_point(ideal: &SquarefreeMonomialIdeal) -> (Rational, Vec<Rational>) {
    solve_lp(&covering_lp(ideal))
        .optimal()
        .expect("the covering LP is feasible (all-ones) and bounded below")
}

/// The fractional covering program itself, for callers that want to drive
/// the solver directly (e.g. with tableau tracing enabled).
pub fn covering_lp(ideal: &SquarefreeMonomialIdeal) -> LinearProgram {
    let num_vars = ideal.num_variables();
    let mut lp = LinearProgram::new(vec![Rational::one(); num_vars]).expect("nonempty objective");
    for prime in ideal.minimal_primes() {
        let mut row = vec![Rational::zero(); num_vars];
        for v in prime.iter() {
            row[v] = Rational::one();
        }
        lp.add_constraint(row, Rational::one())
            .expect("row length matches");
    }
    lp
}

/// `n / (n - 2)` in lowest terms, for `n >= 4`. The base case `n = 3` is a
/// complete intersection with constant 2 and is rejected here.
pub fn gamma_closed_form(n: usize) -> Result<Rational, Error> {
    if n < 4 {
        return Err(Error::ClosedFormUndefined(n));
    }
    Ok(ratio(n as i64, n as i64 - 2))
}

/// One row of the `alpha(m) / m` sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceEntry {
    pub m: u64,
    pub alpha: u64,
    pub ratio: Rational,
}

/// The LP value of the Waldschmidt constant next to the evidence for it:
/// the `alpha(m) / m` sequence up to `m_max` and the closed form when the
/// ideal is a bipyramid with `n >= 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub lp_value: Rational,
    pub closed_form: Option<Rational>,
    pub sequence: Vec<SequenceEntry>,
    /// Minimum of `alpha(m) / m` over the computed sequence.
    pub upper_env: Option<Rational>,
    /// True when the budget cut the sequence short of `m_max`.
    pub truncated: bool,
    /// False exactly when a closed form is present and differs from the LP
    /// value. Reports are still emitted in that case; the mismatch is the
    /// most important possible output.
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub m_max: u64,
    pub jobs: usize,
    pub budget: Option<Duration>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            m_max: 12,
            jobs: 1,
            budget: None,
        }
    }
}

/// Report for an arbitrary squarefree monomial ideal (no closed form).
pub fn gamma_report(
    ideal: &SquarefreeMonomialIdeal,
    options: &ReportOptions,
) -> Result<GammaReport, Error> {
    assemble_report(ideal, None, options)
}

/// Report for `I_{B_n}`, carrying the closed form `n / (n - 2)` whenever
/// `n >= 4` so the consistency flag is meaningful.
pub fn gamma_report_bipyramid(
    spec: BipyramidSpec,
    options: &ReportOptions,
) -> Result<GammaReport, Error> {
    let ideal = bipyramid_ideal(spec);
    let closed_form = gamma_closed_form(spec.n()).ok();
    assemble_report(&ideal, closed_form, options)
}

fn assemble_report(
    ideal: &SquarefreeMonomialIdeal,
    closed_form: Option<Rational>,
    options: &ReportOptions,
) -> Result<GammaReport, Error> {
    if options.m_max == 0 {
        return Err(Error::InvalidMultiplicity);
    }
    let lp_value = gamma_lp(ideal);
    let deadline = options.budget.map(|b| Instant::now() + b);
    let count = options.m_max as usize;
    let alphas: Vec<Option<AlphaResult>> = run_budgeted(count, options.jobs, deadline, |idx| {
        alpha_symbolic(ideal, idx as u64 + 1).expect("m >= 1 by construction")
    });
    // A budget gap ends the sequence; entries beyond it are discarded so the
    // report stays a prefix.
    let sequence: Vec<SequenceEntry> = alphas
        .into_iter()
        .enumerate()
        .map_while(|(idx, result)| {
            let m = idx as u64 + 1;
            result.map(|r| SequenceEntry {
                m,
                alpha: r.value,
                ratio: Rational::new(r.value.into(), m.into()),
            })
        })
        .collect();
    let truncated = (sequence.len() as u64) < options.m_max;
    let upper_env = sequence.iter().map(|e| e.ratio.clone()).min();
    let consistent = closed_form.as_ref().is_none_or(|cf| *cf == lp_value);
    Ok(GammaReport {
        lp_value,
        closed_form,
        sequence,
        upper_env,
        truncated,
        consistent,
    })
}

impl GammaReport {
    /// Structured text with exact rationals printed as `p/q`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("gamma_lp: {}\n", self.lp_value));
        match &self.closed_form {
            Some(cf) => out.push_str(&format!("closed_form: {cf}\n")),
            None => out.push_str("closed_form: none\n"),
        }
        out.push_str(&format!("consistent: {}\n", self.consistent));
        match &self.upper_env {
            Some(env) => out.push_str(&format!("upper_env: {env}\n")),
            None => out.push_str("upper_env: none\n"),
        }
        out.push_str(&format!("truncated: {}\n", self.truncated));
        out.push_str("sequence:\n");
        for entry in &self.sequence {
            out.push_str(&format!(
                "m={} alpha={} ratio={}\n",
                entry.m, entry.alpha, entry.ratio
            ));
        }
        out
    }

    /// The sequence as CSV with header `m,alpha,ratio`.
    pub fn sequence_csv(&self) -> String {
        let mut out = String::from("m,alpha,ratio\n");
        for entry in &self.sequence {
            out.push_str(&format!("{},{},{}\n", entry.m, entry.alpha, entry.ratio));
        }
        out
    }
}
