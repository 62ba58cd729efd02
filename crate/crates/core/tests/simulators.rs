use num_complex::Complex64;
use proptest::prelude::*;
use qweave::noise::{expected_fault_count, sample_faults, FaultSampler};
use qweave::tableau::run_clifford_circuit;
use qweave::{Circuit, Error, ErrorMode, GateKind, NoiseModel, Pauli, PauliString, StateVector, Tableau};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn clifford_gate() -> impl Strategy<Value = (u8, usize, usize)> {
    (0u8..8, 0usize..5, 0usize..4)
}

fn build(width: usize, ops: &[(u8, usize, usize)]) -> Circuit {
    use GateKind::*;
    let kinds = [H, S, Sdg, X, Y, Z, CX, CZ];
    let mut c = Circuit::new(width);
    for &(k, a, off) in ops {
        let kind = kinds[k as usize];
        let a = a % width;
        if kind.arity() == 2 {
            if width < 2 {
                continue;
            }
            let b = (a + 1 + off % (width - 1)) % width;
            c.add(kind, &[a, b]).unwrap();
        } else {
            c.add(kind, &[a]).unwrap();
        }
    }
    c
}

fn expectation(sv: &StateVector, p: &PauliString) -> f64 {
    let mut w = sv.clone();
    for q in 0..p.num_qubits() {
        let pq = p.get(q);
        if pq != Pauli::I {
            w.apply_pauli(q, pq).unwrap();
        }
    }
    sv.inner(&w).re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tableau_stabilizers_match_statevector(width in 1usize..6, ops in proptest::collection::vec(clifford_gate(), 0..40)) {
        let c = build(width, &ops);
        let mut sv = StateVector::new(width).unwrap();
        sv.apply_circuit(&c).unwrap();
        let mut t = Tableau::new(width);
        for g in c.gates() {
            t.apply_gate(g).unwrap();
        }
        prop_assert!(t.is_valid());
        for (negative, p) in t.stabilizers() {
            let e = expectation(&sv, &p);
            let want = if negative { -1.0 } else { 1.0 };
            prop_assert!((e - want).abs() < 1e-9, "{} has expectation {}", p, e);
        }
    }

    #[test]
    fn text_form_round_trips(width in 1usize..6, ops in proptest::collection::vec(clifford_gate(), 0..40), angle in -10.0f64..10.0) {
        let mut c = build(width, &ops);
        c.add(GateKind::RY(angle), &[0]).unwrap().add(GateKind::MeasureZ, &[0]).unwrap();
        let back = Circuit::from_text(&c.to_text()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn inverse_returns_to_zero_state(width in 1usize..5, ops in proptest::collection::vec(clifford_gate(), 0..30), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mut c = build(width, &ops);
        c.add(GateKind::RX(a), &[0]).unwrap().add(GateKind::RZ(b), &[width - 1]).unwrap();
        let mut sv = StateVector::new(width).unwrap();
        sv.apply_circuit(&c).unwrap();
        prop_assert!((sv.norm_sqr() - 1.0).abs() < 1e-10);
        sv.apply_circuit(&c.inverse().unwrap()).unwrap();
        prop_assert!((sv.fidelity(&StateVector::new(width).unwrap()) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn peek_agrees_with_statevector_expectation(width in 1usize..5, ops in proptest::collection::vec(clifford_gate(), 0..30), xs in proptest::collection::vec(any::<bool>(), 4), zs in proptest::collection::vec(any::<bool>(), 4)) {
        let c = build(width, &ops);
        let p = PauliString::from_xz(&xs[..width], &zs[..width]);
        let mut sv = StateVector::new(width).unwrap();
        sv.apply_circuit(&c).unwrap();
        let mut t = Tableau::new(width);
        for g in c.gates() {
            t.apply_gate(g).unwrap();
        }
        let e = expectation(&sv, &p);
        match t.peek_pauli(&p) {
            Some(negative) => {
                let want = if negative { -1.0 } else { 1.0 };
                prop_assert!((e - want).abs() < 1e-9)
            }
            None => prop_assert!(e.abs() < 1e-9),
        }
    }
}

#[test]
fn compose_maps_qubits() {
    let mut a = Circuit::new(3);
    a.add(GateKind::H, &[0]).unwrap();
    let mut b = Circuit::new(2);
    b.add(GateKind::CX, &[0, 1]).unwrap();
    let c = a.compose(&b, &[2, 0]).unwrap();
    assert_eq!(c.to_text(), "width 3\nH 0\nCX 2 0\n");
    assert!(matches!(a.compose(&b, &[1, 1]), Err(Error::NonInjectiveMap)));
}

#[test]
fn invalid_gates_are_rejected() {
    let mut c = Circuit::new(2);
    assert!(matches!(c.add(GateKind::H, &[2]), Err(Error::OperandOutOfRange { .. })));
    assert!(matches!(c.add(GateKind::CX, &[1, 1]), Err(Error::DuplicateOperands(_))));
    assert!(matches!(c.add(GateKind::CX, &[1]), Err(Error::WrongArity { .. })));
    assert!(matches!(c.add(GateKind::RX(f64::NAN), &[0]), Err(Error::NonFiniteAngle)));
    assert!(matches!(StateVector::new(27), Err(Error::WidthExceedsDenseCap { .. })));
}

#[test]
fn bell_state_statistics_agree_across_backends() {
    let mut c = Circuit::new(2);
    c.add(GateKind::H, &[0]).unwrap().add(GateKind::CX, &[0, 1]).unwrap();
    c.add(GateKind::MeasureZ, &[0]).unwrap().add(GateKind::MeasureZ, &[1]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ones = 0;
    for _ in 0..4000 {
        let a = run_clifford_circuit(&c, &[], &mut rng).unwrap();
        let b = qweave::statevector::run_statevector(&c, &[], &mut rng).unwrap();
        assert_eq!(a[0], a[1]);
        assert_eq!(b[0], b[1]);
        ones += usize::from(a[0]);
    }
    assert!((1800..2200).contains(&ones));
}

#[test]
fn amplitudes_follow_qubit_zero_as_most_significant() {
    let mut sv = StateVector::new(2).unwrap();
    sv.apply_gate(&qweave::Gate::single(GateKind::X, 0).unwrap()).unwrap();
    assert_eq!(sv.probabilities(), vec![0.0, 0.0, 1.0, 0.0]);
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let plus = StateVector::from_amplitudes(vec![amp, amp]).unwrap();
    assert!((plus.prob_one(0).unwrap() - 0.5).abs() < 1e-12);
}

fn chain(len: usize) -> Circuit {
    let mut c = Circuit::new(1);
    for _ in 0..len {
        c.add(GateKind::H, &[0]).unwrap();
    }
    c
}

#[test]
fn zero_probability_yields_no_faults() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for mode in ErrorMode::ALL {
        let m = NoiseModel::new(mode, 0.0).unwrap();
        assert!(sample_faults(&chain(50), &m, &mut rng).is_empty());
        assert_eq!(expected_fault_count(&chain(50), &m), 0.0);
    }
}

#[test]
fn certain_bit_and_phase_flip_coincide_as_y() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = sample_faults(&chain(1), &NoiseModel::new(ErrorMode::BP, 1.0).unwrap(), &mut rng);
    assert_eq!(f.len(), 1);
    assert_eq!((f[0].gate_index, f[0].qubit, f[0].pauli), (0, 0, Pauli::Y));
}

#[test]
fn expected_counts_match_closed_forms() {
    let d = expected_fault_count(&chain(10), &NoiseModel::new(ErrorMode::D, 0.1).unwrap());
    assert!((d - 1.0).abs() < 1e-12);
    let bp = expected_fault_count(&chain(50), &NoiseModel::new(ErrorMode::BP, 0.01).unwrap());
    assert!((bp - 0.995).abs() < 1e-12);
    let p: f64 = 0.01;
    let bpd = expected_fault_count(&chain(50), &NoiseModel::new(ErrorMode::BPD, p).unwrap());
    // Identity survives when BP draws nothing and D draws nothing, or BP and D draw the same Pauli.
    let bp_dist = [(1.0 - p) * (1.0 - p), p * (1.0 - p), p * p, (1.0 - p) * p];
    let keep = bp_dist[0] * (1.0 - p) + (bp_dist[1] + bp_dist[2] + bp_dist[3]) * p / 3.0;
    assert!((bpd - 50.0 * (1.0 - keep)).abs() < 1e-12);
}

#[test]
fn sampled_rates_match_declared_rates() {
    let c = chain(100);
    let samples = 100_000;
    for mode in ErrorMode::ALL {
        let m = NoiseModel::new(mode, 0.01).unwrap();
        let sampler = FaultSampler::new(&c, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut per_pauli = [0usize; 4];
        let mut total = 0usize;
        for _ in 0..samples {
            let f = sampler.sample(&mut rng);
            assert!(f.windows(2).all(|w| w[0].gate_index <= w[1].gate_index));
            total += f.len();
            for x in f {
                per_pauli[x.pauli as usize] += 1;
            }
        }
        let mean = total as f64 / samples as f64;
        let expect = expected_fault_count(&c, &m);
        // Poisson-binomial spread of the total over 100 locations.
        let sd = (expect * (1.0 - expect / 100.0) / samples as f64).sqrt();
        assert!((mean - expect).abs() < 3.0 * sd, "{mode}: mean {mean}, expected {expect}");
        let dist = m.pauli_distribution();
        let trials = (samples * 100) as f64;
        for k in 1..4 {
            let rate = per_pauli[k] as f64 / trials;
            let sd = (dist[k] * (1.0 - dist[k]) / trials).sqrt();
            assert!((rate - dist[k]).abs() < 3.0 * sd + 1e-12, "{mode} pauli {k}: {rate} vs {}", dist[k]);
        }
    }
}

#[test]
fn depolarizing_mean_count_is_one_on_hundred_locations() {
    let m = NoiseModel::new(ErrorMode::D, 0.01).unwrap();
    let sampler = FaultSampler::new(&chain(100), &m);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let total: usize = (0..100_000).map(|_| sampler.sample(&mut rng).len()).sum();
    let mean = total as f64 / 1e5;
    assert!((mean - 1.0).abs() < 0.1);
}

#[test]
fn fault_mass_orders_modes() {
    let c = chain(20);
    let e = |mode| expected_fault_count(&c, &NoiseModel::new(mode, 0.01).unwrap());
    assert!(e(ErrorMode::BPD) >= e(ErrorMode::BP) && e(ErrorMode::BP) >= e(ErrorMode::D));
}

#[test]
fn fixed_seed_gives_identical_faults() {
    let m = NoiseModel::new(ErrorMode::BPD, 0.05).unwrap();
    let a = sample_faults(&chain(40), &m, &mut ChaCha8Rng::seed_from_u64(8));
    let b = sample_faults(&chain(40), &m, &mut ChaCha8Rng::seed_from_u64(8));
    assert_eq!(a, b);
}

#[test]
fn faults_land_before_measurement_and_after_reset() {
    let mut c = Circuit::new(1);
    c.add(GateKind::Reset, &[0]).unwrap().add(GateKind::MeasureZ, &[0]).unwrap();
    let x_after_reset = [qweave::FaultRealization { gate_index: 0, qubit: 0, pauli: Pauli::X }];
    let x_before_measure = [qweave::FaultRealization { gate_index: 1, qubit: 0, pauli: Pauli::X }];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    assert_eq!(run_clifford_circuit(&c, &x_after_reset, &mut rng).unwrap(), vec![true]);
    assert_eq!(run_clifford_circuit(&c, &x_before_measure, &mut rng).unwrap(), vec![true]);
    assert_eq!(qweave::statevector::run_statevector(&c, &x_after_reset, &mut rng).unwrap(), vec![true]);
}
