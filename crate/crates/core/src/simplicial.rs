//! Simplicial complexes given by their facets, and the bipyramid over an
//! n-gon in particular.
//!
//! Vertex labels for a bipyramid with base size `n`: `0` is the upper apex,
//! `1..=n` is the base cycle, `n + 1` is the lower apex.

use std::fmt;

use itertools::Itertools;

use crate::error::Error;

/// A sorted, duplicate-free set of vertex indices.
///
/// Ordering is lexicographic on the sorted member list, which makes sorted
/// collections of vertex sets deterministic to print.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn empty() -> Self {
        VertexSet {
            members: Vec::new(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.members.binary_search(&vertex).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.members.last().copied()
    }

    /// Subset test by merge walk over the two sorted member lists.
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        let mut rest = other.members.as_slice();
        for &v in &self.members {
            match rest.iter().position(|&w| w >= v) {
                Some(i) if rest[i] == v => rest = &rest[i + 1..],
                _ => return false,
            }
        }
        true
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// A copy of this set with `vertex` added.
    pub fn with(&self, vertex: usize) -> VertexSet {
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&vertex) {
            members.insert(pos, vertex);
        }
        VertexSet { members }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        VertexSet::new(members)
    }

    /// Complement within `{0, .., num_vertices - 1}`.
    pub fn complement(&self, num_vertices: usize) -> VertexSet {
        VertexSet {
            members: (0..num_vertices).filter(|&v| !self.contains(v)).collect(),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members.iter().join(" "))
    }
}

/// A simplicial complex presented by its facets (inclusion-maximal faces).
///
/// Faces are never materialized; `is_face` is a subset-of-facet test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Validates that facets are in range, mutually incomparable, and cover
    /// every vertex. Facets are stored sorted and deduplicated.
    pub fn new(num_vertices: usize, facets: Vec<VertexSet>) -> Result<Self, Error> {
        if facets.is_empty() {
            return Err(Error::NoFacets);
        }
        let mut facets = facets;
        facets.sort();
        facets.dedup();
        for facet in &facets {
            if let Some(v) = facet.max() {
                if v >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        limit: num_vertices,
                    });
                }
            }
        }
        for (i, a) in facets.iter().enumerate() {
            for (j, b) in facets.iter().enumerate() {
                if i != j && a.is_subset_of(b) {
                    return Err(Error::NonMaximalFacet(a.to_string()));
                }
            }
        }
        let mut covered = vec![false; num_vertices];
        for facet in &facets {
            for v in facet.iter() {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::UncoveredVertex(v));
        }
        Ok(SimplicialComplex {
            num_vertices,
            facets,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn max_facet_size(&self) -> usize {
        self.facets.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// True iff `s` is contained in some facet. The empty set is a face.
    pub fn is_face(&self, s: &VertexSet) -> Result<bool, Error> {
        if let Some(v) = s.max() {
            if v >= self.num_vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    limit: self.num_vertices,
                });
            }
        }
        Ok(self.is_face_unchecked(s))
    }

    fn is_face_unchecked(&self, s: &VertexSet) -> bool {
        self.facets.iter().any(|facet| s.is_subset_of(facet))
    }

    /// All inclusion-minimal non-faces, in lexicographic order. These are the
    /// supports of the minimal generators of the Stanley-Reisner ideal.
    ///
    /// Uses the default search cap `max_facet_size() + 1`, which never binds:
    /// removing one vertex from a minimal non-face yields a face, so minimal
    /// non-faces have at most `max_facet_size() + 1` vertices.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        self.minimal_nonfaces_capped(self.max_facet_size() + 1)
            .expect("default cap cannot bind")
    }

    /// As `minimal_nonfaces`, returning only non-faces of size `<= cap`.
    ///
    /// The tail is checked explicitly: minimal non-faces never exceed
    /// `max_facet_size() + 1` vertices, so the sizes from `cap + 1` up to
    /// that bound are scanned, and if any minimal non-face lives there the
    /// cap binds and an error is returned instead of a silently truncated
    /// answer.
    pub fn minimal_nonfaces_capped(&self, cap: usize) -> Result<Vec<VertexSet>, Error> {
        let bound = (self.max_facet_size() + 1).min(self.num_vertices);
        let mut result: Vec<VertexSet> = Vec::new();
        for size in 1..=bound {
            for subset in (0..self.num_vertices).combinations(size) {
                let candidate = VertexSet::new(subset);
                if self.is_minimal_nonface(&candidate) {
                    if size > cap {
                        return Err(Error::NonfaceCapBinds(cap));
                    }
                    result.push(candidate);
                }
            }
        }
        result.sort();
        Ok(result)
    }

    /// Non-face whose maximal proper subsets are all faces. Since faces are
    /// downward closed this makes every proper subset a face.
    fn is_minimal_nonface(&self, s: &VertexSet) -> bool {
        if self.is_face_unchecked(s) {
            return false;
        }
        s.iter().all(|v| {
            let smaller = VertexSet::new(s.iter().filter(|&w| w != v).collect());
            self.is_face_unchecked(&smaller)
        })
    }

    /// Complements of the facets, sorted and deduplicated. These are the
    /// minimal primes among the vertex-set complements of all faces, and
    /// their intersection presents the Stanley-Reisner ideal.
    pub fn facet_complement_primes(&self) -> Vec<VertexSet> {
        let mut primes: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|facet| facet.complement(self.num_vertices))
            .collect();
        primes.sort();
        primes.dedup();
        primes
    }

    /// Text form: `vertices N` then one facet per line, space separated.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.num_vertices);
        for facet in &self.facets {
            out.push_str(&facet.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut lines = content_lines(text);
        let (line_number, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let num_vertices = header
            .strip_prefix("vertices ")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or(Error::Parse {
                line: line_number,
                message: "expected header `vertices N`".into(),
            })?;
        let mut facets = Vec::new();
        for (line_number, line) in lines {
            facets.push(VertexSet::new(parse_index_line(line, line_number)?));
        }
        SimplicialComplex::new(num_vertices, facets)
    }
}

/// 1-indexed lines with blanks and `#` comments removed.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

pub(crate) fn parse_index_line(line: &str, line_number: usize) -> Result<Vec<usize>, Error> {
    line.split_whitespace()
        .map(|token| {
            token.parse::<usize>().map_err(|_| Error::Parse {
                line: line_number,
                message: format!("expected a vertex index, got `{token}`"),
            })
        })
        .collect()
}

/// The base size of a bipyramid, validated once.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BipyramidSpec {
    n: usize,
}

impl BipyramidSpec {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::BaseTooSmall(n));
        }
        Ok(BipyramidSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.n + 2
    }

    pub fn upper_apex(&self) -> usize {
        0
    }

    pub fn lower_apex(&self) -> usize {
        self.n + 1
    }

    /// Successor of base vertex `i` on the cycle `1..=n`.
    pub fn cyclic_successor(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        i % self.n + 1
    }

    /// Cyclic distance between base vertices.
    pub fn cyclic_distance(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        let d = (i as i64 - j as i64).unsigned_abs() as usize;
        d.min(self.n - d)
    }
}

/// The boundary complex of the bipyramid over an n-gon: for each base edge
/// `{i, i+1}` (cyclically) the two triangles through the apexes, `2n` facets
/// in total on `n + 2` vertices.
pub fn build_bipyramid(spec: BipyramidSpec) -> SimplicialComplex {
    let n = spec.n();
    let mut facets = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let j = spec.cyclic_successor(i);
        facets.push(VertexSet::new(vec![spec.upper_apex(), i, j]));
        facets.push(VertexSet::new(vec![spec.lower_apex(), i, j]));
    }
    SimplicialComplex::new(spec.num_vertices(), facets).expect("bipyramid facets are valid")
}

/// The `n` paths of `n - 2` consecutive base vertices, one per omitted base
/// edge `{i, i+1}`. Every subtree of the n-cycle on fewer than n vertices is
/// such a path; for `n = 3` the family degenerates and is rejected.
pub fn enumerate_base_paths(n: usize) -> Result<Vec<VertexSet>, Error> {
    if n < 4 {
        return Err(Error::PathsUndefined(n));
    }
    let spec = BipyramidSpec::new(n)?;
    let mut paths: Vec<VertexSet> = (1..=n)
        .map(|i| {
            let j = spec.cyclic_successor(i);
            (1..=n).filter(|&v| v != i && v != j).collect()
        })
        .collect();
    paths.sort();
    Ok(paths)
}
