//! Pauli assignments of hypergrams and classical assignments of their vertices.
//!
//! * [`pauli_assignment_from_anticommutations`] labels the vertices of an
//!   assignable hypergram with `rank(G)/2`-qubit observables by eliminating the
//!   anticommutation matrix two columns at a time.
//! * [`classical_assignment_commutative`] satisfies every context of a
//!   commutative configuration, by decomposing each observable on a basis.
//! * [`transfer_classical`] moves a classical assignment between two Pauli
//!   assignments of the same hypergram, keeping the unsatisfied hyperedges.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, SpanSolver};
use crate::hypergram::Hypergram;
use crate::pauli::{product, product_sign, sign_of_product, symplectic_form, Pauli, PauliError, PauliObservable, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignError {
    #[error("hypergram is not assignable: H x G has a 1 at hyperedge {hyperedge}, vertex {vertex}")]
    NotAssignable { hyperedge: usize, vertex: usize },
    #[error("anticommutation matrix has rank {rank}, which is not twice the {qubits} qubits produced")]
    OddRank { rank: usize, qubits: usize },
    #[error("loop invariant broken at iteration {iteration}: {detail}")]
    InvariantViolated { iteration: usize, detail: String },
    #[error("labels have {found} qubits, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("assignment covers {found} vertices, hypergram has {expected}")]
    VertexSetMismatch { expected: usize, found: usize },
    #[error("observables {0} and {1} do not commute")]
    NonCommutingInput(usize, usize),
    #[error("context {context} is invalid: {source}")]
    InvalidContext { context: usize, source: PauliError },
    #[error("context {context} refers to observable {index}, out of range")]
    UnknownObservable { context: usize, index: usize },
    #[error("hyperedge {hyperedge}: {source}")]
    InvalidHyperedge { hyperedge: usize, source: PauliError },
    #[error("classical assignment has {found} values, hypergram has {expected} vertices")]
    MissingValue { expected: usize, found: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// A vertex labeling by phase-free observables of a common width.
///
/// Whether it is a Pauli assignment of a given hypergram is decided by
/// [`verify_assignment`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliAssignment {
    n: usize,
    labels: Vec<PauliObservable>,
}

impl PauliAssignment {
    pub fn new(labels: Vec<PauliObservable>) -> Result<Self, PauliError> {
        let n = labels.first().map_or(0, PauliObservable::qubits);
        if let Some(bad) = labels.iter().find(|l| l.qubits() != n) {
            return Err(PauliError::QubitCountMismatch {
                left: n,
                right: bad.qubits(),
            });
        }
        Ok(Self { n, labels })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[PauliObservable] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> &PauliObservable {
        &self.labels[vertex]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// A `±1` value per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalAssignment {
    values: Vec<Sign>,
}

impl ClassicalAssignment {
    pub fn new(values: Vec<Sign>) -> Self {
        Self { values }
    }

    pub fn all_plus(vertex_count: usize) -> Self {
        Self::new(vec![Sign::Plus; vertex_count])
    }

    /// `a(v) = (-1)^{x_v}`.
    pub fn from_bits(x: &BitVector) -> Self {
        Self::new(
            (0..x.len())
                .map(|v| if x.get(v) { Sign::Minus } else { Sign::Plus })
                .collect(),
        )
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    pub fn value(&self, vertex: usize) -> Sign {
        self.values[vertex]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_bits(&self) -> BitVector {
        BitVector::from_bools(&self.values.iter().map(|s| s.is_negative()).collect::<Vec<_>>())
    }

    /// Pointwise product.
    pub fn times(&self, other: &ClassicalAssignment) -> ClassicalAssignment {
        ClassicalAssignment::new(self.values.iter().zip(&other.values).map(|(&a, &b)| a * b).collect())
    }
}

/// One sign per hyperedge, in hyperedge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector {
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    pub fn all_plus(len: usize) -> Self {
        Self::new(vec![Sign::Plus; len])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|s| s.is_negative()).count()
    }

    pub fn negative_indices(&self) -> Vec<usize> {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_negative())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn hamming_distance(&self, other: &SignVector) -> usize {
        self.signs.iter().zip(&other.signs).filter(|(a, b)| a != b).count()
    }
}

/// Lexicographically smallest `(i, j)`, `i < j`, with `b[i][j] = 1`.
pub fn find_overdiagonal_one(b: &BitMatrix) -> Option<(usize, usize)> {
    (0..b.rows()).find_map(|i| b.row(i).iter_ones().find(|&j| j > i).map(|j| (i, j)))
}

/// Per-iteration record of the labeling algorithm, filled in checked mode.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelingTrace {
    /// Pivot `(i, j)` of each iteration.
    pub pivots: Vec<(usize, usize)>,
    /// `rank(B)` before the first iteration and after each one.
    pub ranks: Vec<usize>,
}

/// Labels the vertices of an assignable hypergram with `rank(G)/2`-qubit observables.
pub fn pauli_assignment_from_anticommutations(hg: &Hypergram) -> Result<PauliAssignment, AssignError> {
    label_from_anticommutations(hg, false).map(|(a, _)| a)
}

/// Same as [`pauli_assignment_from_anticommutations`], asserting after every
/// iteration that `B = G + Gram(α)`, that `B` stays symmetric with a zero
/// diagonal, and that its rank drops by exactly two.
pub fn pauli_assignment_checked(hg: &Hypergram) -> Result<(PauliAssignment, LabelingTrace), AssignError> {
    label_from_anticommutations(hg, true)
}

fn label_from_anticommutations(hg: &Hypergram, checked: bool) -> Result<(PauliAssignment, LabelingTrace), AssignError> {
    let product = hg.assignability_product();
    if let Some((hyperedge, vertex)) = (0..product.rows()).find_map(|k| product.row(k).first_one().map(|v| (k, v))) {
        return Err(AssignError::NotAssignable { hyperedge, vertex });
    }

    let g = hg.anticommutation_matrix();
    let size = g.rows();
    let mut b = g.clone();
    let mut labels = vec![PauliObservable::empty(); size];
    // ψ of the labels built so far; only maintained in checked mode
    let mut encodings = vec![BitVector::zeros(0); size];
    let mut trace = LabelingTrace::default();
    if checked {
        trace.ranks.push(b.rank());
    }

    while let Some((i, j)) = find_overdiagonal_one(&b) {
        let col_i = b.row(i).clone();
        let col_j = b.row(j).clone();
        for k in 0..size {
            let (hi, lo) = (col_i.get(k), col_j.get(k));
            labels[k].push(Pauli::decode(hi, lo));
            if checked {
                encodings[k].push(hi);
                encodings[k].push(lo);
            }
        }
        // B += B e_i (B e_j)^T + B e_j (B e_i)^T, using the symmetry of B
        for l in 0..size {
            let row = b.row_mut(l);
            if col_i.get(l) {
                row.xor_assign(&col_j);
            }
            if col_j.get(l) {
                row.xor_assign(&col_i);
            }
        }
        if checked {
            trace.pivots.push((i, j));
            let iteration = trace.pivots.len();
            check_loop_invariants(&b, &g, &encodings, iteration)?;
            let rank = b.rank();
            let previous = *trace.ranks.last().expect("initial rank recorded");
            if rank + 2 != previous {
                return Err(AssignError::InvariantViolated {
                    iteration,
                    detail: format!("rank went from {previous} to {rank}"),
                });
            }
            trace.ranks.push(rank);
        }
    }

    let qubits = labels.first().map_or(0, PauliObservable::qubits);
    let rank = g.rank();
    if rank != 2 * qubits {
        return Err(AssignError::OddRank { rank, qubits });
    }
    let assignment = PauliAssignment::new(labels).expect("every label gains one letter per iteration");
    Ok((assignment, trace))
}

fn check_loop_invariants(
    b: &BitMatrix,
    g: &BitMatrix,
    encodings: &[BitVector],
    iteration: usize,
) -> Result<(), AssignError> {
    let fail = |detail: String| AssignError::InvariantViolated { iteration, detail };
    for l in 0..b.rows() {
        if b.get(l, l) {
            return Err(fail(format!("B[{l},{l}] = 1")));
        }
        for m in 0..b.rows() {
            if b.get(l, m) != b.get(m, l) {
                return Err(fail(format!("B not symmetric at ({l},{m})")));
            }
            let form = symplectic_form(&encodings[l], &encodings[m])?;
            if b.get(l, m) != (g.get(l, m) ^ form) {
                return Err(fail(format!("B[{l},{m}] differs from G[{l},{m}] + <a(l),a(m)>")));
            }
        }
    }
    Ok(())
}

/// Outcome of [`verify_assignment_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignmentFailure {
    VertexCount {
        expected: usize,
        found: usize,
    },
    NotInjective(usize, usize),
    IdentityLabel(usize),
    Commutation {
        a: usize,
        b: usize,
        anticommute_expected: bool,
    },
    Product {
        hyperedge: usize,
        reason: String,
    },
}

pub fn verify_assignment(alpha: &PauliAssignment, hg: &Hypergram) -> bool {
    verify_assignment_report(alpha, hg).is_empty()
}

/// Every failed condition of the Pauli-assignment definition (empty when valid).
pub fn verify_assignment_report(alpha: &PauliAssignment, hg: &Hypergram) -> Vec<AssignmentFailure> {
    let mut out = Vec::new();
    if alpha.len() != hg.vertex_count() {
        out.push(AssignmentFailure::VertexCount {
            expected: hg.vertex_count(),
            found: alpha.len(),
        });
        return out;
    }
    let mut seen: HashMap<&PauliObservable, usize> = HashMap::new();
    for (v, label) in alpha.labels().iter().enumerate() {
        if label.is_identity() {
            out.push(AssignmentFailure::IdentityLabel(v));
        }
        if let Some(&u) = seen.get(label) {
            out.push(AssignmentFailure::NotInjective(u, v));
        } else {
            seen.insert(label, v);
        }
    }
    let labels = alpha.labels();
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            let expected = hg.anticommute(a, b);
            if labels[a].commutes_unchecked(&labels[b]) == expected {
                out.push(AssignmentFailure::Commutation {
                    a,
                    b,
                    anticommute_expected: expected,
                });
            }
        }
    }
    for (k, edge) in hg.hyperedges().iter().enumerate() {
        if let Err(e) = sign_of_product(product(edge.iter().map(|&v| &labels[v])).expect("hyperedges are non-empty")) {
            out.push(AssignmentFailure::Product {
                hyperedge: k,
                reason: e.to_string(),
            });
        }
    }
    out
}

/// `sgn_α`: the sign of the product of the labels on each hyperedge.
pub fn sign_function(alpha: &PauliAssignment, hg: &Hypergram) -> Result<SignVector, AssignError> {
    if alpha.len() != hg.vertex_count() {
        return Err(AssignError::VertexSetMismatch {
            expected: hg.vertex_count(),
            found: alpha.len(),
        });
    }
    let signs = hg
        .hyperedges()
        .iter()
        .enumerate()
        .map(|(k, edge)| {
            let members: Vec<PauliObservable> = edge.iter().map(|&v| alpha.label(v).clone()).collect();
            product_sign(&members).map_err(|source| AssignError::InvalidHyperedge { hyperedge: k, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SignVector::new(signs))
}

/// `sgn_a(h) = ∏_{v ∈ h} a(v)`.
pub fn classical_sign_function(a: &ClassicalAssignment, hg: &Hypergram) -> Result<SignVector, AssignError> {
    if a.len() != hg.vertex_count() {
        return Err(AssignError::MissingValue {
            expected: hg.vertex_count(),
            found: a.len(),
        });
    }
    Ok(SignVector::new(
        hg.hyperedges()
            .iter()
            .map(|edge| edge.iter().fold(Sign::Plus, |acc, &v| acc * a.value(v)))
            .collect(),
    ))
}

/// Hyperedges whose quantum and classical signs differ.
pub fn unsatisfied_set(
    alpha: &PauliAssignment,
    a: &ClassicalAssignment,
    hg: &Hypergram,
) -> Result<BTreeSet<usize>, AssignError> {
    let quantum = sign_function(alpha, hg)?;
    let classical = classical_sign_function(a, hg)?;
    Ok(differing_indices(&quantum, &classical))
}

pub fn differing_indices(a: &SignVector, b: &SignVector) -> BTreeSet<usize> {
    a.signs()
        .iter()
        .zip(b.signs())
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| i)
        .collect()
}

fn check_pairwise_commuting(observables: &[PauliObservable]) -> Result<(), AssignError> {
    for (i, p) in observables.iter().enumerate() {
        for (j, q) in observables.iter().enumerate().skip(i + 1) {
            if !p.commutes(q)? {
                return Err(AssignError::NonCommutingInput(i, j));
            }
        }
    }
    Ok(())
}

/// Indices of a maximally independent subset: the lowest-index GF(2) column
/// basis of the encodings.
pub fn basis(observables: &[PauliObservable]) -> Result<Vec<usize>, AssignError> {
    check_pairwise_commuting(observables)?;
    Ok(encoding_basis(observables))
}

fn encoding_basis(observables: &[PauliObservable]) -> Vec<usize> {
    let width = observables.first().map_or(0, |o| 2 * o.qubits());
    let columns: Vec<BitVector> = observables.iter().map(PauliObservable::encode).collect();
    BitMatrix::from_columns(width, &columns)
        .expect("observables checked to share a width")
        .column_basis()
}

/// A classical assignment satisfying every context of a commutative configuration.
///
/// Basis members get `+1`; any other observable `t` gets the sign `s` in
/// `t = s · ∏ A_t`, where `A_t` is its unique decomposition on the basis.
pub fn classical_assignment_commutative(
    observables: &[PauliObservable],
    contexts: &[Vec<usize>],
) -> Result<ClassicalAssignment, AssignError> {
    check_pairwise_commuting(observables)?;
    for (k, ctx) in contexts.iter().enumerate() {
        if let Some(&index) = ctx.iter().find(|&&i| i >= observables.len()) {
            return Err(AssignError::UnknownObservable { context: k, index });
        }
        let prod = product(ctx.iter().map(|&i| &observables[i]))
            .map_err(|source| AssignError::InvalidContext { context: k, source })?;
        sign_of_product(prod).map_err(|source| AssignError::InvalidContext { context: k, source })?;
    }
    if observables.is_empty() {
        return Ok(ClassicalAssignment::new(Vec::new()));
    }

    let basis_idx = encoding_basis(observables);
    let encodings: Vec<BitVector> = basis_idx.iter().map(|&i| observables[i].encode()).collect();
    let width = 2 * observables[0].qubits();
    let solver = SpanSolver::new(width, &encodings).expect("column basis is independent");

    let values = observables
        .iter()
        .map(|t| {
            let coeffs = solver
                .solve(&t.encode())
                .expect("width checked")
                .expect("every observable lies in the span of a basis");
            if coeffs.is_zero() {
                // identity: the empty product
                return Ok(Sign::Plus);
            }
            let decomposition = product(coeffs.iter_ones().map(|c| &observables[basis_idx[c]]))?;
            debug_assert_eq!(&decomposition.obs, t);
            // t commutes with everything, so the phase is real
            match decomposition.phase_exp() {
                0 => Ok(Sign::Plus),
                2 => Ok(Sign::Minus),
                _ => Err(AssignError::Pauli(PauliError::ImaginaryPhase)),
            }
        })
        .collect::<Result<Vec<_>, AssignError>>()?;
    Ok(ClassicalAssignment::new(values))
}

/// `v ↦ α₁(v) ⊗ α₂(v)`.
///
/// All labels commute pairwise, so this is a commutative configuration rather
/// than a Pauli assignment of the original hypergram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeConfiguration {
    n: usize,
    labels: Vec<PauliObservable>,
}

impl CommutativeConfiguration {
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[PauliObservable] {
        &self.labels
    }
}

pub fn tensor_assignment(
    alpha1: &PauliAssignment,
    alpha2: &PauliAssignment,
) -> Result<CommutativeConfiguration, AssignError> {
    if alpha1.len() != alpha2.len() {
        return Err(AssignError::VertexSetMismatch {
            expected: alpha1.len(),
            found: alpha2.len(),
        });
    }
    let labels: Vec<PauliObservable> = alpha1
        .labels()
        .iter()
        .zip(alpha2.labels())
        .map(|(p, q)| p.tensor(q))
        .collect();
    Ok(CommutativeConfiguration {
        n: alpha1.qubits() + alpha2.qubits(),
        labels,
    })
}

/// A classical assignment `a₂` leaving unsatisfied, for `α₂`, exactly the
/// hyperedges that `a₁` leaves unsatisfied for `α₁`.
pub fn transfer_classical(
    alpha1: &PauliAssignment,
    alpha2: &PauliAssignment,
    a1: &ClassicalAssignment,
    hg: &Hypergram,
) -> Result<ClassicalAssignment, AssignError> {
    for alpha in [alpha1, alpha2] {
        if alpha.len() != hg.vertex_count() {
            return Err(AssignError::VertexSetMismatch {
                expected: hg.vertex_count(),
                found: alpha.len(),
            });
        }
    }
    if a1.len() != hg.vertex_count() {
        return Err(AssignError::MissingValue {
            expected: hg.vertex_count(),
            found: a1.len(),
        });
    }
    let product_config = tensor_assignment(alpha1, alpha2)?;
    let a12 = classical_assignment_commutative(product_config.labels(), hg.hyperedges())?;
    Ok(a12.times(a1))
}
