//! Realizing diagrams as exact rational vector sets, and verifying
//! candidate vector sets against a diagram's orthogonality blocks.
//!
//! A diagram is *realized* in dimension d by assigning each vertex a
//! nonzero rational vector so that vectors sharing a block are pairwise
//! orthogonal. Only ray directions matter, so vectors may be scaled freely.
//! A realized diagram with no 0-1 state is a Kochen-Specker set: its rays
//! admit no noncontextual 0/1 valuation. All arithmetic here is exact;
//! verdicts never depend on floating point.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{label_index, MmpDiagram, ALPHABET};
use crate::linalg::{dot, null_space_basis, reduce_content};
use crate::Rational;

/// An assignment of exact rational vectors of a fixed dimension to
/// diagram vertices. Vectors are always nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    dimension: usize,
    vectors: BTreeMap<usize, Vec<Rational>>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VectorError {
    #[error("vector has {found} components, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension must be positive")]
    ZeroDimension,
}

impl VectorSet {
    pub fn new(dimension: usize) -> Result<Self, VectorError> {
        if dimension == 0 {
            return Err(VectorError::ZeroDimension);
        }
        Ok(VectorSet { dimension, vectors: BTreeMap::new() })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Inserts or replaces the vector of a vertex.
    pub fn insert(&mut self, vertex: usize, vector: Vec<Rational>) -> Result<(), VectorError> {
        if vector.len() != self.dimension {
            return Err(VectorError::WrongDimension {
                expected: self.dimension,
                found: vector.len(),
            });
        }
        if vector.iter().all(Rational::is_zero) {
            return Err(VectorError::ZeroVector);
        }
        self.vectors.insert(vertex, vector);
        Ok(())
    }

    pub fn get(&self, vertex: usize) -> Option<&[Rational]> {
        self.vectors.get(&vertex).map(Vec::as_slice)
    }

    /// Vertices with vectors, ascending, with their vectors.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[Rational])> {
        self.vectors.iter().map(|(&v, vec)| (v, vec.as_slice()))
    }
}

/// One failed orthogonality: two vertices share a block but their vectors
/// have a nonzero inner product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityViolation {
    pub block: usize,
    pub vertices: (usize, usize),
    pub inner_product: Rational,
}

/// Outcome of exact verification: valid exactly when no within-block pair
/// has a nonzero inner product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    violations: Vec<OrthogonalityViolation>,
}

impl RealizationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[OrthogonalityViolation] {
        &self.violations
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("vertex {label} has no vector")]
    MissingVector { label: String },
    #[error("block {block} has {size} vertices, more than the dimension {dimension}")]
    BlockTooLarge { block: usize, size: usize, dimension: usize },
}

/// Checks every within-block vertex pair for exact orthogonality. The
/// verdict is scale-invariant: only ray directions enter.
pub fn verify_realization(
    d: &MmpDiagram,
    v: &VectorSet,
) -> Result<RealizationReport, VerifyError> {
    for vertex in 0..d.vertex_count() {
        if v.get(vertex).is_none() {
            return Err(VerifyError::MissingVector { label: d.vertex_label(vertex) });
        }
    }
    for (i, block) in d.blocks().iter().enumerate() {
        if block.len() > v.dimension() {
            return Err(VerifyError::BlockTooLarge {
                block: i,
                size: block.len(),
                dimension: v.dimension(),
            });
        }
    }
    let mut violations = Vec::new();
    for (i, block) in d.blocks().iter().enumerate() {
        for (k, &x) in block.iter().enumerate() {
            for &y in &block[k + 1..] {
                let ip = dot(v.get(x).unwrap(), v.get(y).unwrap());
                if !ip.is_zero() {
                    violations.push(OrthogonalityViolation {
                        block: i,
                        vertices: (x, y),
                        inner_product: ip,
                    });
                }
            }
        }
    }
    Ok(RealizationReport { violations })
}

/// Options for the realization solver.
#[derive(Debug, Clone)]
pub struct RealizeOptions {
    /// Randomized assignment passes before giving up.
    pub retries: u64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { retries: 100 }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("block {block} has {size} vertices; no realization exists in dimension {dimension}")]
    DimensionTooSmall { block: usize, size: usize, dimension: usize },
    #[error(
        "no realization found in {attempts} attempts ({dead_ends} dead ends); \
         existence remains undecided"
    )]
    BudgetExhausted { attempts: u64, dead_ends: u64 },
}

/// Searches for an exact realization of a valid diagram in the given
/// dimension.
///
/// Vertices are assigned in block order; each vector is a random integer
/// combination of a null-space basis of its already-assigned block
/// neighbors, so all orthogonalities hold by construction once every vertex
/// is placed. A pass dead-ends when some vertex's assigned neighbors
/// already span the whole space; the solver then restarts with fresh
/// randomness, up to `opts.retries` passes.
///
/// The search is randomized, not exhaustive, so failure is reported as a
/// budget verdict — never as a claim that no realization exists. The one
/// exception is a block with more vertices than the dimension, which is
/// impossible outright. Identical inputs and seed give identical output.
pub fn realize(
    d: &MmpDiagram,
    dimension: usize,
    seed: u64,
    opts: &RealizeOptions,
) -> Result<VectorSet, RealizeError> {
    if dimension == 0 {
        return Err(RealizeError::ZeroDimension);
    }
    for (i, block) in d.blocks().iter().enumerate() {
        if block.len() > dimension {
            return Err(RealizeError::DimensionTooSmall {
                block: i,
                size: block.len(),
                dimension,
            });
        }
    }

    // block-driven vertex order: blocks left to right, then any uncovered
    // vertices (absent in valid diagrams)
    let mut order: Vec<usize> = Vec::with_capacity(d.vertex_count());
    let mut seen = vec![false; d.vertex_count()];
    for block in d.blocks() {
        for &v in block {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    order.extend(seen.iter().enumerate().filter(|(_, s)| !**s).map(|(v, _)| v));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dead_ends = 0;
    for _ in 0..opts.retries {
        if let Some(set) = assignment_pass(d, dimension, &order, &mut rng) {
            let report = verify_realization(d, &set).expect("solver assigns every vertex");
            assert!(report.valid(), "solver produced a non-orthogonal assignment");
            return Ok(set);
        }
        dead_ends += 1;
    }
    Err(RealizeError::BudgetExhausted { attempts: opts.retries, dead_ends })
}

fn assignment_pass(
    d: &MmpDiagram,
    dimension: usize,
    order: &[usize],
    rng: &mut ChaCha8Rng,
) -> Option<VectorSet> {
    let mut set = VectorSet::new(dimension).expect("dimension checked positive");
    for &v in order {
        let constraints: Vec<Vec<Rational>> = d
            .neighbors(v)
            .into_iter()
            .filter_map(|w| set.get(w).map(<[Rational]>::to_vec))
            .collect();
        let basis = null_space_basis(&constraints, dimension);
        if basis.is_empty() {
            return None;
        }
        let mut vector = vec![Rational::zero(); dimension];
        while vector.iter().all(Rational::is_zero) {
            for x in &mut vector {
                *x = Rational::zero();
            }
            for b in &basis {
                let coeff = rng.random_range(-9i64..=9);
                if coeff == 0 {
                    continue;
                }
                let c = Rational::from_integer(coeff.into());
                for (x, e) in vector.iter_mut().zip(b) {
                    *x += &c * e;
                }
            }
        }
        reduce_content(&mut vector);
        set.insert(v, vector).expect("sampled vector is nonzero");
    }
    Some(set)
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VectorParseError {
    #[error("line {line}: missing ':' between label and components")]
    MissingSeparator { line: usize },
    #[error("line {line}: unknown vertex label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: cannot read component {text:?}")]
    BadComponent { line: usize, text: String },
    #[error("line {line}: {found} components where earlier lines had {expected}")]
    RaggedRow { line: usize, expected: usize, found: usize },
    #[error("line {line}: zero vector")]
    ZeroVector { line: usize },
    #[error("line {line}: second vector for label {label:?}")]
    DuplicateLabel { line: usize, label: String },
    #[error("no vectors in input")]
    Empty,
}

/// Parses a vector file: one `label: c1 c2 ... cd` line per vertex, with
/// integer or `p/q` rational components. Blank lines and `#` comments are
/// skipped. A label is either a single character (the char-format vertex
/// labels) or a 1-based vertex number; an all-digit token is always read
/// as a number.
pub fn parse_vectors(text: &str) -> Result<VectorSet, VectorParseError> {
    let mut rows: Vec<(usize, Vec<Rational>, usize)> = Vec::new();
    let mut expected_dim: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((label_part, components_part)) = body.split_once(':') else {
            return Err(VectorParseError::MissingSeparator { line });
        };
        let label = label_part.trim();
        let vertex = parse_label(label)
            .ok_or_else(|| VectorParseError::UnknownLabel { line, label: label.to_string() })?;
        if rows.iter().any(|&(v, _, _)| v == vertex) {
            return Err(VectorParseError::DuplicateLabel { line, label: label.to_string() });
        }
        let mut vector = Vec::new();
        for token in components_part.split_whitespace() {
            let value = parse_rational(token).ok_or_else(|| VectorParseError::BadComponent {
                line,
                text: token.to_string(),
            })?;
            vector.push(value);
        }
        match expected_dim {
            None if vector.is_empty() => {
                return Err(VectorParseError::ZeroVector { line });
            }
            None => expected_dim = Some(vector.len()),
            Some(expected) if expected != vector.len() => {
                return Err(VectorParseError::RaggedRow {
                    line,
                    expected,
                    found: vector.len(),
                });
            }
            Some(_) => {}
        }
        if vector.iter().all(Rational::is_zero) {
            return Err(VectorParseError::ZeroVector { line });
        }
        rows.push((vertex, vector, line));
    }
    let dimension = expected_dim.ok_or(VectorParseError::Empty)?;
    let mut set = VectorSet::new(dimension).expect("dimension is positive");
    for (vertex, vector, _) in rows {
        set.insert(vertex, vector).expect("validated above");
    }
    Ok(set)
}

fn parse_rational(token: &str) -> Option<Rational> {
    match token.split_once('/') {
        None => {
            let n: num_bigint::BigInt = token.parse().ok()?;
            Some(Rational::from_integer(n))
        }
        Some((numer, denom)) => {
            let n: num_bigint::BigInt = numer.parse().ok()?;
            let d: num_bigint::BigInt = denom.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

fn parse_label(label: &str) -> Option<usize> {
    if !label.is_empty() && label.bytes().all(|b| b.is_ascii_digit()) {
        let n: usize = label.parse().ok()?;
        return n.checked_sub(1);
    }
    let mut chars = label.chars();
    let c = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    label_index(c)
}

/// Writes a vector set in the format read by [`parse_vectors`]: character
/// labels when every vertex has one distinct from digit labels, 1-based
/// numbers otherwise.
pub fn serialize_vectors(v: &VectorSet) -> String {
    let char_labels = v.iter().all(|(vertex, _)| vertex < 52);
    let mut out = String::new();
    for (vertex, vector) in v.iter() {
        if char_labels {
            let _ = write!(out, "{}:", ALPHABET[vertex]);
        } else {
            let _ = write!(out, "{}:", vertex + 1);
        }
        for c in vector {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}
