mod common;

use common::{pad, random_assignable, random_observable, transvect};
use hypergram::assign::{
    basis, classical_assignment_commutative, classical_sign_function, pauli_assignment_checked,
    pauli_assignment_from_anticommutations, sign_function, tensor_assignment, transfer_classical, unsatisfied_set,
    verify_assignment, AssignError, ClassicalAssignment,
};
use hypergram::geometry::{doily, nonassignable_example, transfer_fixtures, two_spread, two_spread_variant};
use hypergram::hypergram::{hypergram_from_configuration, RawHypergram};
use hypergram::{PauliObservable, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn words(ws: &[&str]) -> Vec<PauliObservable> {
    ws.iter().map(|w| w.parse().unwrap()).collect()
}

#[test]
fn labeling_on_fixtures() {
    for (name, (hg, _)) in [
        ("doily", doily()),
        ("two-spread", two_spread()),
        ("variant", two_spread_variant()),
    ] {
        let (alpha, trace) = pauli_assignment_checked(&hg).unwrap();
        assert!(verify_assignment(&alpha, &hg), "{name}");
        let rank = hg.anticommutation_matrix().rank();
        assert_eq!(2 * alpha.qubits(), rank, "{name}");
        assert_eq!(trace.pivots.len(), alpha.qubits());
        assert_eq!(trace.ranks.first(), Some(&rank));
        assert_eq!(trace.ranks.last(), Some(&0));
        assert_eq!(pauli_assignment_from_anticommutations(&hg).unwrap(), alpha);
    }
    assert_eq!(
        pauli_assignment_from_anticommutations(&two_spread().0)
            .unwrap()
            .qubits(),
        2
    );
    assert_eq!(
        pauli_assignment_from_anticommutations(&two_spread_variant().0)
            .unwrap()
            .qubits(),
        3
    );
}

#[test]
fn labeling_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=4);
        let contexts = rng.gen_range(3..=8);
        let (hg, given) = random_assignable(&mut rng, n, contexts);
        assert!(verify_assignment(&given, &hg));
        let (alpha, _) = pauli_assignment_checked(&hg).unwrap();
        assert!(verify_assignment(&alpha, &hg));
        // the given labels may use more qubits than needed, never fewer
        assert!(alpha.qubits() <= given.qubits());
    }
}

#[test]
fn reduced_nonassignable_is_rejected() {
    let hg = RawHypergram::new(
        7,
        vec![vec![1, 2, 3], vec![1, 4, 5], vec![6, 7]],
        vec![(3, 5), (1, 6), (2, 7), (4, 6), (4, 7)],
    )
    .into_hypergram()
    .unwrap();
    assert!(!hg.is_assignable());
    assert!(matches!(
        pauli_assignment_from_anticommutations(&hg),
        Err(AssignError::NotAssignable { .. })
    ));
    assert_eq!(nonassignable_example().is_assignable(), Some(false));
}

#[test]
fn sign_functions() {
    let (hg, alpha) = two_spread();
    let signs = sign_function(&alpha, &hg).unwrap();
    assert_eq!(signs.negative_indices(), vec![8]); // {7, 9, 14}
    let all_plus = ClassicalAssignment::all_plus(15);
    assert_eq!(classical_sign_function(&all_plus, &hg).unwrap().negative_count(), 0);
    assert_eq!(
        unsatisfied_set(&alpha, &all_plus, &hg)
            .unwrap()
            .into_iter()
            .collect::<Vec<_>>(),
        vec![8]
    );
}

#[test]
fn commutative_configurations_are_satisfied() {
    // a classical assignment from the basis decomposition satisfies every context
    let obs = words(&["XX", "ZZ", "YY", "XI", "IX"]);
    assert!(basis(&obs).is_err());
    let obs = words(&["XX", "ZZ", "YY"]);
    assert_eq!(basis(&obs).unwrap(), vec![0, 1]);
    let a = classical_assignment_commutative(&obs, &[vec![0, 1, 2]]).unwrap();
    // XX ZZ YY = -I
    assert_eq!(a.values(), &[Sign::Plus, Sign::Plus, Sign::Minus]);

    let (hg, alpha) = doily();
    let (alpha3, _, _) = transfer_fixtures();
    let config = tensor_assignment(&alpha, &alpha3).unwrap();
    let a = classical_assignment_commutative(config.labels(), hg.hyperedges()).unwrap();
    for (k, edge) in hg.hyperedges().iter().enumerate() {
        let members: Vec<PauliObservable> = edge.iter().map(|&v| config.labels()[v].clone()).collect();
        let quantum = hypergram::pauli::product_sign(&members).unwrap();
        let classical = edge.iter().fold(Sign::Plus, |s, &v| s * a.value(v));
        assert_eq!(quantum, classical, "context {k}");
    }
}

#[test]
fn transfer_preserves_unsatisfied_sets() {
    let (hg, _) = doily();
    let (alpha1, alpha2, a1) = transfer_fixtures();
    let a2 = transfer_classical(&alpha1, &alpha2, &a1, &hg).unwrap();
    let before = unsatisfied_set(&alpha1, &a1, &hg).unwrap();
    assert_eq!(before.len(), 3);
    assert_eq!(unsatisfied_set(&alpha2, &a2, &hg).unwrap(), before);
    // identity transfer
    let same = transfer_classical(&alpha1, &alpha1, &a1, &hg).unwrap();
    assert_eq!(unsatisfied_set(&alpha1, &same, &hg).unwrap(), before);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let t = random_observable(&mut rng, 5);
        let beta = transvect(&pad(&alpha1, 2), &t);
        assert!(verify_assignment(&beta, &hg));
        let a = ClassicalAssignment::new(
            (0..15)
                .map(|_| if rng.gen() { Sign::Minus } else { Sign::Plus })
                .collect(),
        );
        let b = transfer_classical(&alpha1, &beta, &a, &hg).unwrap();
        assert_eq!(
            unsatisfied_set(&beta, &b, &hg).unwrap(),
            unsatisfied_set(&alpha1, &a, &hg).unwrap()
        );
    }
}

#[test]
fn read_back_of_labels() {
    let (hg, alpha) = doily();
    let (read, labels) = hypergram_from_configuration(alpha.labels(), hg.hyperedges()).unwrap();
    assert_eq!(read, hg);
    assert_eq!(labels, alpha);
}
