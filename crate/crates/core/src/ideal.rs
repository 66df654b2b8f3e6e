//! Monomials, squarefree monomial ideals, and symbolic-power membership.
//!
//! A squarefree monomial ideal is stored by the supports of its minimal
//! generators. Its minimal primes are the minimal transversals of that
//! hypergraph, and a monomial lies in the m-th symbolic power exactly when
//! its weight (sum of exponents) against every minimal prime is at least m.

use std::fmt;
use std::sync::OnceLock;

use crate::error::Error;
use crate::simplicial::{self, build_bipyramid, BipyramidSpec, VertexSet};

/// A monomial as its exponent vector over variables `0..num_variables`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: Vec<u64>,
}

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial { exponents }
    }

    /// The unit monomial (all exponents zero).
    pub fn one(num_variables: usize) -> Self {
        Monomial {
            exponents: vec![0; num_variables],
        }
    }

    /// The squarefree monomial with the given support.
    pub fn from_support(support: &VertexSet, num_variables: usize) -> Self {
        let mut exponents = vec![0; num_variables];
        for v in support.iter() {
            exponents[v] = 1;
        }
        Monomial { exponents }
    }

    pub fn num_variables(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponent(&self, variable: usize) -> u64 {
        self.exponents[variable]
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(
            self.num_variables(),
            other.num_variables(),
            "variable counts must agree"
        );
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u64) -> Monomial {
        Monomial {
            exponents: self.exponents.iter().map(|a| a * exponent).collect(),
        }
    }

    /// Parses the `idx:exp` pair format, e.g. `0:3 3:2 5:1`. The bare token
    /// `1` denotes the unit monomial.
    pub fn parse(text: &str, num_variables: usize) -> Result<Monomial, Error> {
        let text = text.trim();
        let mut exponents = vec![0u64; num_variables];
        if text == "1" || text.is_empty() {
            return Ok(Monomial { exponents });
        }
        for token in text.split_whitespace() {
            let (idx, exp) = token.split_once(':').ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected `idx:exp`, got `{token}`"),
            })?;
            let idx: usize = idx.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("bad variable index in `{token}`"),
            })?;
            let exp: u64 = exp.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("bad exponent in `{token}`"),
            })?;
            if idx >= num_variables {
                return Err(Error::VertexOutOfRange {
                    vertex: idx,
                    limit: num_variables,
                });
            }
            exponents[idx] += exp;
        }
        Ok(Monomial { exponents })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &exp) in self.exponents.iter().enumerate() {
            if exp > 0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{idx}:{exp}")?;
                first = false;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sum of the exponents of `f` over the variables of `prime`.
pub fn weight(f: &Monomial, prime: &VertexSet) -> Result<u64, Error> {
    if let Some(v) = prime.max() {
        if v >= f.num_variables() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                limit: f.num_variables(),
            });
        }
    }
    Ok(prime.iter().map(|v| f.exponent(v)).sum())
}

/// Replaces both apex exponents of a bipyramid monomial by their minimum.
/// Membership in any symbolic power is preserved.
pub fn symmetrize_apexes(f: &Monomial, n: usize) -> Monomial {
    assert_eq!(
        f.num_variables(),
        n + 2,
        "expected a monomial on n + 2 variables"
    );
    let t = f.exponent(0).min(f.exponent(n + 1));
    let mut exponents = f.exponents.clone();
    exponents[0] = t;
    exponents[n + 1] = t;
    Monomial { exponents }
}

/// Decrements every base exponent toward zero, apexes untouched. Drops the
/// weight against each minimal prime by at most `n - 2`.
pub fn reduce_base(f: &Monomial, n: usize) -> Monomial {
    assert_eq!(
        f.num_variables(),
        n + 2,
        "expected a monomial on n + 2 variables"
    );
    let mut exponents = f.exponents.clone();
    for e in exponents.iter_mut().take(n + 1).skip(1) {
        *e = e.saturating_sub(1);
    }
    Monomial { exponents }
}

/// Cyclically shifts the base exponents by `shift` positions (vertex `i`
/// moves to `i + shift` on the cycle); apex exponents stay put.
pub fn rotate_base(f: &Monomial, n: usize, shift: i64) -> Monomial {
    assert_eq!(
        f.num_variables(),
        n + 2,
        "expected a monomial on n + 2 variables"
    );
    let shift = shift.rem_euclid(n as i64) as usize;
    let mut exponents = f.exponents.clone();
    for i in 1..=n {
        let target = (i - 1 + shift) % n + 1;
        exponents[target] = f.exponent(i);
    }
    Monomial { exponents }
}

/// A squarefree monomial ideal given by the supports of a minimal generating
/// set. Minimal primes are computed on first use and cached; the value is
/// immutable afterwards, so ideals can be shared across threads freely.
#[derive(Debug)]
pub struct SquarefreeMonomialIdeal {
    num_variables: usize,
    generator_supports: Vec<VertexSet>,
    minimal_primes: OnceLock<Vec<VertexSet>>,
}

impl Clone for SquarefreeMonomialIdeal {
    fn clone(&self) -> Self {
        SquarefreeMonomialIdeal {
            num_variables: self.num_variables,
            generator_supports: self.generator_supports.clone(),
            minimal_primes: self.minimal_primes.clone(),
        }
    }
}

impl PartialEq for SquarefreeMonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.num_variables == other.num_variables
            && self.generator_supports == other.generator_supports
    }
}

impl Eq for SquarefreeMonomialIdeal {}

impl SquarefreeMonomialIdeal {
    /// Rejects the zero ideal (no generators) and the unit ideal (a
    /// generator with empty support); prunes non-minimal supports.
    pub fn new(num_variables: usize, supports: Vec<VertexSet>) -> Result<Self, Error> {
        if supports.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        for support in &supports {
            if support.is_empty() {
                return Err(Error::UnitIdeal);
            }
            if let Some(v) = support.max() {
                if v >= num_variables {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        limit: num_variables,
                    });
                }
            }
        }
        let mut minimal = prune_to_minimal(supports);
        minimal.sort();
        Ok(SquarefreeMonomialIdeal {
            num_variables,
            generator_supports: minimal,
            minimal_primes: OnceLock::new(),
        })
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn generator_supports(&self) -> &[VertexSet] {
        &self.generator_supports
    }

    /// All inclusion-minimal vertex sets meeting every generator support
    /// (the minimal transversals of the generator hypergraph), sorted.
    pub fn minimal_primes(&self) -> &[VertexSet] {
        self.minimal_primes
            .get_or_init(|| minimal_transversals(&self.generator_supports))
    }

    /// Minimum weight of `f` over the minimal primes, with one prime
    /// attaining it (the lexicographically first such prime).
    pub fn min_prime_weight(&self, f: &Monomial) -> Result<(u64, &VertexSet), Error> {
        if f.num_variables() != self.num_variables {
            return Err(Error::VariableMismatch {
                expected: self.num_variables,
                got: f.num_variables(),
            });
        }
        let mut best: Option<(u64, &VertexSet)> = None;
        for prime in self.minimal_primes() {
            let w = weight(f, prime)?;
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                best = Some((w, prime));
            }
        }
        Ok(best.expect("an ideal has at least one minimal prime"))
    }

    /// True iff `f` lies in the m-th symbolic power, i.e. the weight of `f`
    /// against every minimal prime is at least `m`.
    pub fn symbolic_membership(&self, f: &Monomial, m: u64) -> Result<bool, Error> {
        if m == 0 {
            return Err(Error::InvalidMultiplicity);
        }
        Ok(self.min_prime_weight(f)?.0 >= m)
    }

    /// Text form: `variables N` then one generator support per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("variables {}\n", self.num_variables);
        for support in &self.generator_supports {
            out.push_str(&support.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut lines = simplicial::content_lines(text);
        let (line_number, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let num_variables = header
            .strip_prefix("variables ")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or(Error::Parse {
                line: line_number,
                message: "expected header `variables N`".into(),
            })?;
        let mut supports = Vec::new();
        for (line_number, line) in lines {
            supports.push(VertexSet::new(simplicial::parse_index_line(
                line,
                line_number,
            )?));
        }
        SquarefreeMonomialIdeal::new(num_variables, supports)
    }
}

/// Keeps only the inclusion-minimal sets. Sorting by size first means a
/// subset can only appear before its supersets, so one pass suffices.
fn prune_to_minimal(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<VertexSet> = Vec::new();
    for set in sets {
        if !kept.iter().any(|k| k.is_subset_of(&set)) {
            kept.push(set);
        }
    }
    kept
}

/// Incremental minimal-transversal construction: fold in one support at a
/// time, extending each partial transversal that misses it by each of its
/// vertices, pruning non-minimal sets after every step.
fn minimal_transversals(supports: &[VertexSet]) -> Vec<VertexSet> {
    let mut partials = vec![VertexSet::empty()];
    for support in supports {
        let mut extended: Vec<VertexSet> = Vec::new();
        for partial in &partials {
            if partial.intersects(support) {
                extended.push(partial.clone());
            } else {
                for v in support.iter() {
                    extended.push(partial.with(v));
                }
            }
        }
        partials = prune_to_minimal(extended);
    }
    partials.sort();
    partials.dedup();
    partials
}

/// The Stanley-Reisner ideal of the bipyramid, generated by its minimal
/// non-faces. Works for every `n >= 3`.
pub fn bipyramid_ideal(spec: BipyramidSpec) -> SquarefreeMonomialIdeal {
    let complex = build_bipyramid(spec);
    SquarefreeMonomialIdeal::new(complex.num_vertices(), complex.minimal_nonfaces())
        .expect("a bipyramid has non-faces")
}

/// Closed-form generator supports for `n >= 4`: the apex pair plus every
/// base pair at cyclic distance at least 2. Cross-checked against the
/// general non-face route in tests.
pub fn bipyramid_generators(spec: BipyramidSpec) -> Result<Vec<VertexSet>, Error> {
    let n = spec.n();
    if n < 4 {
        return Err(Error::PathsUndefined(n));
    }
    let mut supports = vec![VertexSet::new(vec![spec.upper_apex(), spec.lower_apex()])];
    for i in 1..=n {
        for j in i + 1..=n {
            if spec.cyclic_distance(i, j) >= 2 {
                supports.push(VertexSet::new(vec![i, j]));
            }
        }
    }
    supports.sort();
    Ok(supports)
}
