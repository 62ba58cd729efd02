use std::f64::consts::FRAC_PI_2;

use qweave::classifier::{ClassLabel, ClassifierParams, DataPoint};
use qweave::linalg::CMatrix;
use qweave::synthesis::*;
use qweave::{Circuit, Error, GateKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn target(kinds: &[GateKind]) -> TargetUnitary {
    let mut c = Circuit::new(1);
    for &k in kinds {
        c.add(k, &[0]).unwrap();
    }
    TargetUnitary::from_circuit(&c).unwrap()
}

#[test]
fn identity_needs_no_gates() {
    let r = greedy_synthesize(&target(&[]), &GateSet::steane(), &SynthesisOptions::for_qubits(1)).unwrap();
    assert!(r.circuit.is_empty());
    assert!((r.fidelity - 1.0).abs() < 1e-12);
    assert_eq!(r.history, vec![r.fidelity]);
}

#[test]
fn hadamard_and_quarter_turn_are_found_exactly() {
    let opts = SynthesisOptions::for_qubits(1);
    let h = greedy_synthesize(&target(&[GateKind::H]), &GateSet::steane(), &opts).unwrap();
    assert_eq!(h.circuit.to_text(), "width 1\nH 0\n");
    let s = greedy_synthesize(&target(&[GateKind::RZ(FRAC_PI_2)]), &GateSet::steane(), &opts).unwrap();
    assert_eq!(s.circuit.to_text(), "width 1\nS 0\n");
    assert!((s.fidelity - 1.0).abs() < 1e-12);
}

#[test]
fn two_qubit_clifford_targets_are_reached() {
    let mut c = Circuit::new(2);
    c.add(GateKind::H, &[0]).unwrap().add(GateKind::CX, &[0, 1]).unwrap().add(GateKind::X, &[1]).unwrap();
    let t = TargetUnitary::from_circuit(&c).unwrap();
    let r = greedy_synthesize(&t, &GateSet::surface(), &SynthesisOptions::for_qubits(2)).unwrap();
    assert!((r.fidelity - 1.0).abs() < 1e-9);
}

#[test]
fn one_qubit_fidelity_floor_holds_for_random_targets() {
    // Every single-qubit unitary lies within trace fidelity cos^2(pi/8) of some Clifford.
    let floor = 0.8535;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let opts = SynthesisOptions::for_qubits(1);
    let mut worst: f64 = 1.0;
    for _ in 0..1000 {
        let a: f64 = rng.random_range(-3.2..3.2);
        let b: f64 = rng.random_range(-3.2..3.2);
        let c: f64 = rng.random_range(-3.2..3.2);
        let t = target(&[GateKind::RZ(a), GateKind::RY(b), GateKind::RZ(c)]);
        let r = greedy_synthesize(&t, &GateSet::steane(), &opts).unwrap();
        assert!(r.history.windows(2).all(|w| w[1] >= w[0]));
        assert!(r.circuit.len() <= opts.max_gates);
        assert!((fidelity(t.matrix(), &CMatrix::from_circuit(&r.circuit).unwrap()) - r.fidelity).abs() < 1e-9);
        worst = worst.min(r.fidelity);
    }
    assert!(worst >= floor, "worst fidelity {worst}");
}

#[test]
fn synthesis_is_deterministic() {
    let p = DataPoint::new(vec![0.6, 0.8], ClassLabel::C).unwrap();
    let params = ClassifierParams::new(vec![0.3, 1.1]).unwrap();
    let opts = SynthesisOptions::for_qubits(1);
    let a = synthesize_point(&p, &params, &GateSet::steane(), &opts).unwrap();
    let b = synthesize_point(&p, &params, &GateSet::steane(), &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn gate_sets_are_clifford_only() {
    assert!(matches!(GateSet::new("bad", vec![GateKind::RX(0.1)]), Err(Error::NonClifford(_))));
    assert!(GateSet::new("empty", vec![]).is_err());
    assert_eq!("surface".parse::<GateSet>().unwrap(), GateSet::surface());
    assert!("t-gates".parse::<GateSet>().is_err());
    assert!(!GateSet::surface().kinds().contains(&GateKind::S));
}

#[test]
fn targets_must_be_small_unitaries() {
    assert!(TargetUnitary::new(CMatrix::identity(8)).is_err());
    let mut m = CMatrix::identity(2);
    m.set(0, 1, num_complex::Complex64::new(1.0, 0.0));
    assert!(TargetUnitary::new(m).is_err());
}

#[test]
fn accuracy_report_counts_points() {
    let pts = [
        DataPoint::new(vec![1.0, 0.0], ClassLabel::M).unwrap(),
        DataPoint::new(vec![0.0, 1.0], ClassLabel::C).unwrap(),
        DataPoint::new(vec![0.0, 1.0], ClassLabel::M).unwrap(),
    ];
    let refs: Vec<&DataPoint> = pts.iter().collect();
    let r = synthesis_accuracy_report(&refs, &ClassifierParams::zeros(1), &GateSet::pauli(), &SynthesisOptions::for_qubits(1)).unwrap();
    assert_eq!(r.points, 3);
    assert!((r.original - 2.0 / 3.0).abs() < 1e-12);
    assert!((r.synthesized - 2.0 / 3.0).abs() < 1e-12);
    assert!(r.reduction_pct.abs() < 1e-9);
    assert!(synthesis_accuracy_report(&[], &ClassifierParams::zeros(1), &GateSet::pauli(), &SynthesisOptions::for_qubits(1)).is_err());
}
