//! Entropy inequalities over seeded random states.

use qfoundry::bell::ghz;
use qfoundry::linalg::kron;
use qfoundry::qstate::{haar_random_state_indexed, haar_random_unitary, subsystem_entropy, von_neumann_entropy};
use qfoundry::{DensityMatrix, HilbertPartition, StateVector};

const INSTANCES: u64 = 1000;
const TOL: f64 = 1e-10;

/// Random mixed state on qubits A, B, C: a Haar state with two ancillas traced out.
fn random_mixed(seed: u64, index: u64) -> DensityMatrix<f64> {
    let p = HilbertPartition::new(vec![2; 5], vec!["A", "B", "C", "E1", "E2"]).unwrap();
    haar_random_state_indexed::<f64>(&p, seed, index).reduced(&["A", "B", "C"]).unwrap()
}

#[test]
fn strong_subadditivity_and_subadditivity() {
    for k in 0..INSTANCES {
        let rho = random_mixed(17, k);
        let s = |l: &[&str]| subsystem_entropy(&rho, l).unwrap();
        let (ab, bc, b, abc) = (s(&["A", "B"]), s(&["B", "C"]), s(&["B"]), von_neumann_entropy(&rho));
        assert!(ab + bc >= b + abc - TOL, "SSA fails at instance {k}");
        assert!(ab <= s(&["A"]) + b + TOL, "subadditivity fails at instance {k}");
        assert!((s(&["A", "C"]) - (s(&["A"]) + s(&["C"]))) <= TOL);
    }
}

#[test]
fn pure_state_complement_symmetry() {
    let p = HilbertPartition::new(vec![2, 3, 2], vec!["A", "B", "C"]).unwrap();
    for k in 0..INSTANCES {
        let psi = haar_random_state_indexed::<f64>(&p, 23, k);
        let a = psi.entanglement_entropy(&["A"]).unwrap();
        let bc = psi.entanglement_entropy(&["B", "C"]).unwrap();
        assert!((a - bc).abs() < 1e-9, "instance {k}");
        let ab = psi.reduced(&["A", "B"]).unwrap();
        let c = psi.reduced(&["C"]).unwrap();
        assert!((von_neumann_entropy(&ab) - von_neumann_entropy(&c)).abs() < 1e-9);
    }
}

#[test]
fn ghz_reductions_under_local_unitaries() {
    let ln2 = std::f64::consts::LN_2;
    let g = ghz::<f64>();
    for k in 0..INSTANCES {
        let u = kron(
            &kron(&haar_random_unitary(2, 31, 3 * k), &haar_random_unitary(2, 31, 3 * k + 1)),
            &haar_random_unitary(2, 31, 3 * k + 2),
        );
        let psi = StateVector::new(&u * g.amplitudes(), g.partition().clone()).unwrap();
        let pair = psi.reduced(&["A", "B"]).unwrap();
        assert!((von_neumann_entropy(&pair) - ln2).abs() < 1e-12);
        assert!(pair.min_partial_transpose_eigenvalue(&["B"]).unwrap() >= -1e-12, "instance {k}");
        let single = psi.reduced(&["C"]).unwrap();
        let half = DensityMatrix::maximally_mixed(single.partition().clone());
        assert!(single.distance(&half) < 1e-12);
    }
}
