//! The abstract structure `(V, H, G)`: a context hypergraph together with an
//! anticommutation graph, its validation, its incidence and adjacency matrices,
//! and the assignability test `H × G = 0`.
//!
//! Vertices are numbered from 1 in [`RawHypergram`] (the form read from and
//! written to files) and from 0 in a validated [`Hypergram`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assign::PauliAssignment;
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{product_sign, PauliError, PauliObservable};

/// Machine-readable identifier of a violated clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationCode {
    EmptyHyperedge,
    IsolatedVertex,
    LoopEdge,
    OutOfRange,
    EdgeInsideHyperedge,
    NotReducedZeroRow,
    NotReducedDuplicateRow,
    DuplicateHyperedge,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn codes(&self) -> BTreeSet<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "valid hypergram");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.code, v.detail))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl std::error::Error for ValidationReport {}

/// Unvalidated hypergram data with 1-based vertices, as it appears in files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawHypergram {
    pub vertices: usize,
    pub hyperedges: Vec<Vec<usize>>,
    pub anticommutations: Vec<(usize, usize)>,
}

impl RawHypergram {
    pub fn new(vertices: usize, hyperedges: Vec<Vec<usize>>, anticommutations: Vec<(usize, usize)>) -> Self {
        Self {
            vertices,
            hyperedges,
            anticommutations,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn into_hypergram(self) -> Result<Hypergram, ValidationReport> {
        Hypergram::new(&self)
    }

    /// `C(H) × A(G)` computed before validation.
    ///
    /// Only needs every index to be in range and no loop in `G`; returns `None`
    /// otherwise.
    pub fn assignability_product(&self) -> Option<BitMatrix> {
        let n = self.vertices;
        let in_range = |v: usize| (1..=n).contains(&v);
        if self.hyperedges.iter().flatten().any(|&v| !in_range(v))
            || self
                .anticommutations
                .iter()
                .any(|&(a, b)| a == b || !in_range(a) || !in_range(b))
        {
            return None;
        }
        let edges: Vec<Vec<usize>> = self
            .hyperedges
            .iter()
            .map(|e| e.iter().map(|v| v - 1).collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let pairs: Vec<(usize, usize)> = self.anticommutations.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        incidence_matrix(n, &edges).mat_mul(&adjacency_matrix(n, &pairs)).ok()
    }

    /// `H × G = 0` on unvalidated data; `None` when the product is undefined.
    pub fn is_assignable(&self) -> Option<bool> {
        self.assignability_product().map(|p| p.is_zero())
    }
}

/// Checks every clause of the hypergram definition and reports all violations.
pub fn validate(raw: &RawHypergram) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |code, detail: String| out.push(Violation { code, detail });
    let n = raw.vertices;
    if n == 0 {
        push(ViolationCode::OutOfRange, "vertex count must be positive".into());
    }
    let in_range = |v: usize| (1..=n).contains(&v);

    let mut seen_edges: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut edge_sets: Vec<BTreeSet<usize>> = Vec::new();
    for (k, edge) in raw.hyperedges.iter().enumerate() {
        if edge.is_empty() {
            push(ViolationCode::EmptyHyperedge, format!("hyperedge {} is empty", k + 1));
        }
        for &v in edge {
            if !in_range(v) {
                push(
                    ViolationCode::OutOfRange,
                    format!("hyperedge {} contains vertex {v} outside 1..={n}", k + 1),
                );
            }
        }
        let set: BTreeSet<usize> = edge.iter().copied().filter(|&v| in_range(v)).collect();
        if !edge.is_empty() {
            if let Some(&first) = seen_edges.get(&set) {
                push(
                    ViolationCode::DuplicateHyperedge,
                    format!("hyperedge {} repeats hyperedge {}", k + 1, first + 1),
                );
            } else {
                seen_edges.insert(set.clone(), k);
            }
        }
        edge_sets.push(set);
    }

    let mut covered = vec![false; n];
    for set in &edge_sets {
        for &v in set {
            covered[v - 1] = true;
        }
    }
    for (v, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        push(
            ViolationCode::IsolatedVertex,
            format!("vertex {} lies in no hyperedge", v + 1),
        );
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b) in &raw.anticommutations {
        if a == b {
            push(
                ViolationCode::LoopEdge,
                format!("anticommutation {{{a},{b}}} is a loop"),
            );
            continue;
        }
        if !in_range(a) || !in_range(b) {
            push(
                ViolationCode::OutOfRange,
                format!("anticommutation {{{a},{b}}} leaves 1..={n}"),
            );
            continue;
        }
        pairs.insert((a.min(b), a.max(b)));
    }

    for &(a, b) in &pairs {
        if let Some(k) = edge_sets.iter().position(|s| s.contains(&a) && s.contains(&b)) {
            push(
                ViolationCode::EdgeInsideHyperedge,
                format!("anticommutation {{{a},{b}}} lies inside hyperedge {}", k + 1),
            );
        }
    }

    let mut neighborhoods: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in &pairs {
        neighborhoods[a - 1].insert(b);
        neighborhoods[b - 1].insert(a);
    }
    let mut classes: BTreeMap<&BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for (v, nb) in neighborhoods.iter().enumerate() {
        if nb.is_empty() {
            push(
                ViolationCode::NotReducedZeroRow,
                format!("vertex {} has no anticommutation", v + 1),
            );
        } else {
            classes.entry(nb).or_default().push(v + 1);
        }
    }
    let mut duplicates: Vec<&Vec<usize>> = classes.values().filter(|c| c.len() > 1).collect();
    duplicates.sort();
    for class in duplicates {
        push(
            ViolationCode::NotReducedDuplicateRow,
            format!("vertices {class:?} have identical anticommutation neighborhoods"),
        );
    }

    ValidationReport::from_violations(out)
}

/// A validated hypergram with 0-based vertices.
///
/// Hyperedges keep their input order (it fixes the order of sign vectors);
/// members of each hyperedge are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergram {
    vertex_count: usize,
    hyperedges: Vec<Vec<usize>>,
    anticommutations: Vec<(usize, usize)>,
}

impl Hypergram {
    pub fn new(raw: &RawHypergram) -> Result<Self, ValidationReport> {
        let report = validate(raw);
        if !report.ok {
            return Err(report);
        }
        let hyperedges = raw
            .hyperedges
            .iter()
            .map(|e| {
                let set: BTreeSet<usize> = e.iter().map(|v| v - 1).collect();
                set.into_iter().collect()
            })
            .collect();
        let pairs: BTreeSet<(usize, usize)> = raw
            .anticommutations
            .iter()
            .map(|&(a, b)| (a.min(b) - 1, a.max(b) - 1))
            .collect();
        Ok(Self {
            vertex_count: raw.vertices,
            hyperedges,
            anticommutations: pairs.into_iter().collect(),
        })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    #[inline]
    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Anticommuting pairs `(i, j)` with `i < j`, sorted.
    #[inline]
    pub fn anticommutations(&self) -> &[(usize, usize)] {
        &self.anticommutations
    }

    /// Back to the 1-based external form.
    pub fn to_raw(&self) -> RawHypergram {
        RawHypergram {
            vertices: self.vertex_count,
            hyperedges: self
                .hyperedges
                .iter()
                .map(|e| e.iter().map(|v| v + 1).collect())
                .collect(),
            anticommutations: self.anticommutations.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
        }
    }

    pub fn context_matrix(&self) -> BitMatrix {
        incidence_matrix(self.vertex_count, &self.hyperedges)
    }

    pub fn anticommutation_matrix(&self) -> BitMatrix {
        adjacency_matrix(self.vertex_count, &self.anticommutations)
    }

    pub fn complement_graph(&self) -> Vec<(usize, usize)> {
        complement_graph(self.vertex_count, &self.hyperedges)
    }

    /// `C(H) × A(G)`; zero iff the hypergram admits a Pauli assignment.
    pub fn assignability_product(&self) -> BitMatrix {
        self.context_matrix()
            .mat_mul(&self.anticommutation_matrix())
            .expect("incidence and adjacency matrices share the vertex dimension")
    }

    pub fn is_assignable(&self) -> bool {
        self.assignability_product().is_zero()
    }

    /// The necessary condition `|V| ≤ 2^{dim ker C(H)} − 1`.
    pub fn kernel_capacity_ok(&self) -> bool {
        let nullity = self.vertex_count - self.context_matrix().rank();
        if nullity >= 64 {
            return true;
        }
        (self.vertex_count as u128) < (1u128 << nullity)
    }

    /// True iff `{a, b}` (0-based) is an anticommuting pair.
    pub fn anticommute(&self, a: usize, b: usize) -> bool {
        self.anticommutations.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// Incidence matrix `C(H)` (`|H| × vertex_count`) of 0-based hyperedges.
pub fn incidence_matrix(vertex_count: usize, hyperedges: &[Vec<usize>]) -> BitMatrix {
    let rows = hyperedges
        .iter()
        .map(|e| BitVector::from_ones(vertex_count, e.iter().copied()))
        .collect();
    BitMatrix::from_rows(vertex_count, rows).expect("rows built with vertex_count columns")
}

/// Symmetric adjacency matrix `A(G)` of 0-based pairs.
pub fn adjacency_matrix(vertex_count: usize, pairs: &[(usize, usize)]) -> BitMatrix {
    let mut m = BitMatrix::zeros(vertex_count, vertex_count);
    for &(a, b) in pairs {
        m.set(a, b, true);
        m.set(b, a, true);
    }
    m
}

/// Distinct 0-based pairs `(a, b)`, `a < b`, not sharing any hyperedge.
pub fn complement_graph(vertex_count: usize, hyperedges: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut adjacent = vec![BitVector::zeros(vertex_count); vertex_count];
    for e in hyperedges {
        for &a in e {
            for &b in e {
                adjacent[a].set(b, true);
            }
        }
    }
    let mut out = Vec::new();
    for (a, row) in adjacent.iter().enumerate() {
        for b in a + 1..vertex_count {
            if !row.get(b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigurationError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("observables {0} and {1} are equal")]
    DuplicateObservable(usize, usize),
    #[error("observable {0} is the identity")]
    IdentityObservable(usize),
    #[error("context {context} refers to observable {index}, out of range")]
    UnknownObservable { context: usize, index: usize },
    #[error("context {context}: {source}")]
    InvalidContext { context: usize, source: PauliError },
    #[error("configuration does not yield a hypergram: {0}")]
    NotAHypergram(ValidationReport),
}

/// Reads a quantum configuration back as a hypergram plus the labeling it came with.
///
/// `observables[v]` labels vertex `v`; contexts list 0-based observable indices.
/// Anticommutations are read off the observables.
pub fn hypergram_from_configuration(
    observables: &[PauliObservable],
    contexts: &[Vec<usize>],
) -> Result<(Hypergram, PauliAssignment), ConfigurationError> {
    let assignment = PauliAssignment::new(observables.to_vec())?;
    let mut first_seen: HashMap<&PauliObservable, usize> = HashMap::new();
    for (i, o) in observables.iter().enumerate() {
        if o.is_identity() {
            return Err(ConfigurationError::IdentityObservable(i));
        }
        if let Some(&j) = first_seen.get(o) {
            return Err(ConfigurationError::DuplicateObservable(j, i));
        }
        first_seen.insert(o, i);
    }
    for (k, ctx) in contexts.iter().enumerate() {
        if let Some(&index) = ctx.iter().find(|&&i| i >= observables.len()) {
            return Err(ConfigurationError::UnknownObservable { context: k, index });
        }
        let members: Vec<PauliObservable> = ctx.iter().map(|&i| observables[i].clone()).collect();
        product_sign(&members).map_err(|source| ConfigurationError::InvalidContext { context: k, source })?;
    }
    let mut pairs = Vec::new();
    for a in 0..observables.len() {
        for b in a + 1..observables.len() {
            if !observables[a].commutes_unchecked(&observables[b]) {
                pairs.push((a + 1, b + 1));
            }
        }
    }
    let raw = RawHypergram {
        vertices: observables.len(),
        hyperedges: contexts.iter().map(|c| c.iter().map(|i| i + 1).collect()).collect(),
        anticommutations: pairs,
    };
    let hg = Hypergram::new(&raw).map_err(ConfigurationError::NotAHypergram)?;
    Ok((hg, assignment))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_s() -> RawHypergram {
        RawHypergram::new(5, vec![vec![1, 2, 3], vec![1, 4, 5]], vec![(3, 5)])
    }

    #[test]
    fn example_s_matrices() {
        // S is not reduced (vertices 1, 2, 4 have no anticommutation), so use the raw builders
        let raw = example_s();
        let edges: Vec<Vec<usize>> = raw
            .hyperedges
            .iter()
            .map(|e| e.iter().map(|v| v - 1).collect())
            .collect();
        let h = incidence_matrix(5, &edges);
        let expected = BitMatrix::from_fn(2, 5, |i, j| [[1, 1, 1, 0, 0], [1, 0, 0, 1, 1]][i][j] == 1);
        assert_eq!(h, expected);
        let g = adjacency_matrix(5, &[(2, 4)]);
        assert_eq!(g, BitMatrix::from_fn(5, 5, |i, j| (i, j) == (2, 4) || (i, j) == (4, 2)));
        let hg = h.mat_mul(&g).unwrap();
        let ones: Vec<(usize, usize)> = (0..2)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&(i, j)| hg.get(i, j))
            .collect();
        // G is symmetric, so {3,5} also puts a 1 at (row 2, col 3)
        assert_eq!(ones, vec![(0, 4), (1, 2)]);
    }

    #[test]
    fn example_s_raw_product() {
        let raw = example_s();
        let p = raw.assignability_product().unwrap();
        assert_eq!((p.rows(), p.cols()), (2, 5));
        assert!(p.get(0, 4));
        assert!(p.get(1, 2));
        assert_eq!(p.row(0).weight() + p.row(1).weight(), 2);
        assert_eq!(raw.is_assignable(), Some(false));
        // not reduced: vertices 1, 2 and 4 have no anticommutation
        let report = raw.validate();
        assert_eq!(
            report.codes().into_iter().collect::<Vec<_>>(),
            vec![ViolationCode::NotReducedZeroRow]
        );
        assert_eq!(report.violations.len(), 3);
        assert_eq!(
            RawHypergram::new(2, vec![vec![1, 3]], vec![]).assignability_product(),
            None
        );
    }

    #[test]
    fn degenerate_matrices() {
        assert_eq!(incidence_matrix(1, &[vec![0]]), BitMatrix::identity(1));
        assert!(adjacency_matrix(4, &[]).is_zero());
    }

    #[test]
    fn complement_of_full_hyperedge_is_empty() {
        assert!(complement_graph(4, &[vec![0, 1, 2, 3]]).is_empty());
        assert_eq!(complement_graph(3, &[vec![0, 1]]), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn reports_every_violation() {
        let raw = RawHypergram::new(
            4,
            vec![vec![1, 2], vec![], vec![2, 1], vec![5]],
            vec![(3, 3), (1, 2), (0, 1)],
        );
        let codes = validate(&raw).codes();
        for code in [
            ViolationCode::EmptyHyperedge,
            ViolationCode::DuplicateHyperedge,
            ViolationCode::OutOfRange,
            ViolationCode::IsolatedVertex,
            ViolationCode::LoopEdge,
            ViolationCode::EdgeInsideHyperedge,
            ViolationCode::NotReducedZeroRow,
        ] {
            assert!(codes.contains(&code), "missing {code}");
        }
    }

    #[test]
    fn duplicate_neighborhoods_are_reported() {
        // 1 and 2 both anticommute with exactly {3}
        let raw = RawHypergram::new(3, vec![vec![1, 2], vec![3]], vec![(1, 3), (2, 3)]);
        let report = validate(&raw);
        assert!(report.has(ViolationCode::NotReducedDuplicateRow));
        assert!(!report.ok);
    }

    #[test]
    fn zero_vertices() {
        let report = validate(&RawHypergram::new(0, vec![], vec![]));
        assert_eq!(
            report.codes().into_iter().collect::<Vec<_>>(),
            vec![ViolationCode::OutOfRange]
        );
    }

    #[test]
    fn single_vertex_fails_reducedness() {
        let report = validate(&RawHypergram::new(1, vec![vec![1]], vec![]));
        assert_eq!(
            report.codes().into_iter().collect::<Vec<_>>(),
            vec![ViolationCode::NotReducedZeroRow]
        );
    }

    #[test]
    fn configuration_errors() {
        let o = |s: &str| s.parse::<PauliObservable>().unwrap();
        assert_eq!(
            hypergram_from_configuration(&[o("XI"), o("II")], &[]).unwrap_err(),
            ConfigurationError::IdentityObservable(1)
        );
        assert_eq!(
            hypergram_from_configuration(&[o("XI"), o("ZI"), o("XI")], &[]).unwrap_err(),
            ConfigurationError::DuplicateObservable(0, 2)
        );
        assert!(matches!(
            hypergram_from_configuration(&[o("XI"), o("ZI")], &[vec![0, 1]]).unwrap_err(),
            ConfigurationError::InvalidContext { context: 0, .. }
        ));
        assert!(matches!(
            hypergram_from_configuration(&[o("XI"), o("ZI")], &[vec![0, 7]]).unwrap_err(),
            ConfigurationError::UnknownObservable { context: 0, index: 7 }
        ));
    }

    #[test]
    fn single_context_configuration() {
        // {XI, IX, XX} with ZI and IZ to make the anticommutation graph reduced
        let o = |s: &str| s.parse::<PauliObservable>().unwrap();
        let obs = [o("XI"), o("IX"), o("XX"), o("ZI"), o("IZ"), o("ZZ")];
        let (hg, alpha) = hypergram_from_configuration(&obs, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(hg.vertex_count(), 6);
        assert_eq!(alpha.qubits(), 2);
        assert!(hg.is_assignable());
        assert!(hg.anticommute(0, 3));
        assert!(!hg.anticommute(0, 4));
    }
}
