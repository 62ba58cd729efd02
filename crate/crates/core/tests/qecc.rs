use qweave::qecc::{
    assemble_protected_circuit, build_code, build_lookup_table, encoder_circuit, logical_gate,
    syndrome_extraction_circuit, CheckType, CodeKind, StabilizerCode,
};
use qweave::statevector::StateVector;
use qweave::tableau::{run_clifford_circuit, run_on_tableau, Tableau};
use qweave::{Circuit, FaultRealization, GateKind, Pauli, PauliString};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_codes() -> Vec<StabilizerCode> {
    CodeKind::ALL.iter().map(|&k| build_code(k)).collect()
}

#[test]
fn generator_counts_and_sizes() {
    let expect = [(CodeKind::Steane, 7, 3, 3), (CodeKind::D3Surface, 9, 4, 4), (CodeKind::D5Surface, 25, 12, 12)];
    for (kind, n, nx, nz) in expect {
        let c = build_code(kind);
        assert_eq!(c.n(), n);
        let count = |t| c.generators().iter().filter(|g| g.check == t).count();
        assert_eq!(count(CheckType::X), nx);
        assert_eq!(count(CheckType::Z), nz);
        assert_eq!(c.num_generators(), n - 1);
    }
    assert_eq!(build_code(CodeKind::Steane).qubits_per_patch(), 10);
    assert_eq!(build_code(CodeKind::D3Surface).qubits_per_patch(), 17);
    assert_eq!(build_code(CodeKind::D5Surface).qubits_per_patch(), 49);
}

#[test]
fn generators_commute_and_logicals_are_valid() {
    for c in all_codes() {
        let gens: Vec<PauliString> = (0..c.num_generators()).map(|i| c.generator_pauli(i)).collect();
        for a in &gens {
            for b in &gens {
                assert!(a.commutes_with(b), "{:?}", c.kind());
            }
            assert!(a.commutes_with(&c.logical_x()));
            assert!(a.commutes_with(&c.logical_z()));
        }
        assert!(!c.logical_x().commutes_with(&c.logical_z()));
        assert!(!c.is_stabilizer(&c.logical_x()));
        assert!(!c.is_stabilizer(&c.logical_z()));
        assert_eq!(c.logical_x().weight(), c.distance());
        assert_eq!(c.logical_z().weight(), c.distance());
        for g in &gens {
            assert!(c.is_stabilizer(g));
        }
    }
}

#[test]
fn single_data_error_flips_containing_checks() {
    let steane = build_code(CodeKind::Steane);
    let e = PauliString::from_support(7, &[0], Pauli::X);
    let s = steane.syndrome(&e);
    for (i, g) in steane.generators().iter().enumerate() {
        let fires = g.check == CheckType::Z && g.support.contains(&0);
        assert_eq!((s >> i) & 1 == 1, fires);
    }
}

fn encoded_tableau(code: &StabilizerCode, prep: &[GateKind]) -> Tableau {
    let mut c = Circuit::new(code.n());
    for &k in prep {
        c.add(k, &[code.input_qubit()]).unwrap();
    }
    let c = c.compose(&encoder_circuit(code).unwrap(), &(0..code.n()).collect::<Vec<_>>()).unwrap();
    let mut t = Tableau::new(code.n());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    run_on_tableau(&mut t, &c, &[], &mut rng).unwrap();
    t
}

#[test]
fn encoder_maps_basis_states_to_logical_states() {
    for code in all_codes() {
        let mut t = encoded_tableau(&code, &[]);
        for i in 0..code.num_generators() {
            assert_eq!(t.peek_pauli(&code.generator_pauli(i)), Some(false));
        }
        assert_eq!(t.peek_pauli(&code.logical_z()), Some(false));
        let mut t = encoded_tableau(&code, &[GateKind::X]);
        assert_eq!(t.peek_pauli(&code.logical_z()), Some(true));
        let mut t = encoded_tableau(&code, &[GateKind::H]);
        assert_eq!(t.peek_pauli(&code.logical_x()), Some(false));
        for i in 0..code.num_generators() {
            assert_eq!(t.peek_pauli(&code.generator_pauli(i)), Some(false));
        }
    }
}

#[test]
fn encoder_is_unitary_and_matches_statevector_for_steane() {
    let code = build_code(CodeKind::Steane);
    let enc = encoder_circuit(&code).unwrap();
    let mut sv = StateVector::new(7).unwrap();
    sv.apply_gate(&qweave::Gate::single(GateKind::RY(0.7), code.input_qubit()).unwrap()).unwrap();
    sv.apply_circuit(&enc).unwrap();
    // <Z_L> = cos(0.7)
    let z = code.logical_z();
    let mut zsv = sv.clone();
    for q in z.support() {
        zsv.apply_pauli(q, Pauli::Z).unwrap();
    }
    let expval = sv.inner(&zsv).re;
    assert!((expval - 0.7f64.cos()).abs() < 1e-10);
}

#[test]
fn lookup_corrects_every_error_up_to_t() {
    for code in all_codes() {
        let table = build_lookup_table(&code);
        assert!(table.max_weight() >= code.t());
        let n = code.n();
        let mut errors: Vec<PauliString> = Vec::new();
        for q in 0..n {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                errors.push(PauliString::from_support(n, &[q], p));
            }
        }
        if code.t() >= 2 {
            for a in 0..n {
                for b in a + 1..n {
                    for pa in [Pauli::X, Pauli::Y, Pauli::Z] {
                        for pb in [Pauli::X, Pauli::Y, Pauli::Z] {
                            let mut e = PauliString::identity(n);
                            e.set(a, pa);
                            e.set(b, pb);
                            errors.push(e);
                        }
                    }
                }
            }
        }
        for e in errors {
            let fix = table.lookup(code.syndrome(&e)).unwrap();
            assert!(code.is_stabilizer(&fix.product(&e)), "{:?} {}", code.kind(), e);
        }
    }
}

#[test]
fn hook_errors_are_harmless_for_distance_three_surface() {
    let code = build_code(CodeKind::D3Surface);
    let table = build_lookup_table(&code);
    for g in code.generators() {
        let k = g.support.len();
        for start in 1..k {
            let e = PauliString::from_support(code.n(), &g.support[start..], g.check.pauli());
            let fix = table.lookup(code.syndrome(&e)).unwrap();
            assert!(code.is_stabilizer(&fix.product(&e)), "hook {e}");
        }
    }
}

#[test]
fn extraction_on_encoded_state_gives_zero_syndrome() {
    for code in all_codes() {
        let per = code.qubits_per_patch();
        let mut c = Circuit::new(per);
        c = c.compose(&encoder_circuit(&code).unwrap(), &(0..code.n()).collect::<Vec<_>>()).unwrap();
        let ext = syndrome_extraction_circuit(&code).unwrap();
        let ident: Vec<usize> = (0..per).collect();
        c = c.compose(&ext, &ident).unwrap().compose(&ext, &ident).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rec = run_clifford_circuit(&c, &[], &mut rng).unwrap();
        assert_eq!(rec.len(), 2 * code.num_generators());
        assert!(rec.iter().all(|&b| !b), "{:?}", code.kind());
    }
}

#[test]
fn logical_gate_widths_and_unsupported_s_on_surface() {
    for code in all_codes() {
        assert_eq!(logical_gate(&code, GateKind::CX).unwrap().width(), 2 * code.n());
        assert_eq!(logical_gate(&code, GateKind::H).unwrap().len(), code.n());
    }
    assert!(logical_gate(&build_code(CodeKind::D3Surface), GateKind::S).is_err());
    assert!(logical_gate(&build_code(CodeKind::Steane), GateKind::S).is_ok());
    assert!(logical_gate(&build_code(CodeKind::Steane), GateKind::RX(0.1)).is_err());
}

fn random_logical(code: &StabilizerCode, width: usize, len: usize, rng: &mut ChaCha8Rng) -> Circuit {
    let mut kinds = vec![GateKind::H, GateKind::X, GateKind::Y, GateKind::Z];
    if code.supports_logical(GateKind::S) {
        kinds.extend([GateKind::S, GateKind::Sdg]);
    }
    let mut c = Circuit::new(width);
    for _ in 0..len {
        if width > 1 && rng.random_bool(0.3) {
            let a = rng.random_range(0..width);
            let b = (a + rng.random_range(1..width)) % width;
            c.add(GateKind::CX, &[a, b]).unwrap();
        } else {
            let k = kinds[rng.random_range(0..kinds.len())];
            c.add(k, &[rng.random_range(0..width)]).unwrap();
        }
    }
    c
}

#[test]
fn noiseless_protected_circuits_reproduce_logical_statistics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for code in all_codes() {
        for width in 1..=2 {
            for _ in 0..12 {
                let logical = random_logical(&code, width, 6, &mut rng);
                let mut sv = StateVector::new(width).unwrap();
                sv.apply_circuit(&logical).unwrap();
                let ideal = sv.probabilities();
                let mut measured = logical.clone();
                for q in 0..width {
                    measured.add(GateKind::MeasureZ, &[q]).unwrap();
                }
                let plan = assemble_protected_circuit(&measured, &code, 1).unwrap();
                for _ in 0..8 {
                    let rec = run_clifford_circuit(plan.circuit(), &[], &mut rng).unwrap();
                    let out = plan.decode_and_readout(&rec).unwrap();
                    let idx = out.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b));
                    assert!(ideal[idx] > 1e-9, "{:?} produced impossible outcome", code.kind());
                }
                // inverse round trip is deterministic
                let round = logical.compose(&logical.inverse().unwrap(), &(0..width).collect::<Vec<_>>()).unwrap();
                let plan = assemble_protected_circuit(&round, &code, 1).unwrap();
                let rec = run_clifford_circuit(plan.circuit(), &[], &mut rng).unwrap();
                assert!(plan.decode_and_readout(&rec).unwrap().iter().all(|&b| !b));
            }
        }
    }
}

#[test]
fn record_length_is_checked() {
    let code = build_code(CodeKind::Steane);
    let plan = assemble_protected_circuit(&Circuit::new(1), &code, 1).unwrap();
    assert!(plan.decode_and_readout(&[false; 3]).is_err());
    assert!(assemble_protected_circuit(&Circuit::new(1), &code, 0).is_err());
}

#[test]
fn single_fault_after_preparation_is_corrected() {
    let code = build_code(CodeKind::D3Surface);
    let mut logical = Circuit::new(1);
    logical.add(GateKind::X, &[0]).unwrap().add(GateKind::MeasureZ, &[0]).unwrap();
    let plan = assemble_protected_circuit(&logical, &code, 1).unwrap();
    let prep_end = plan.circuit().gates().iter().position(|g| g.kind() == GateKind::X).unwrap() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in 0..code.n() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let f = [FaultRealization { gate_index: prep_end, qubit: q, pauli: p }];
            let rec = run_clifford_circuit(plan.circuit(), &f, &mut rng).unwrap();
            assert_eq!(plan.decode_and_readout(&rec).unwrap(), vec![true]);
        }
    }
}

#[test]
fn steane_phase_gates_compose_exactly() {
    let code = build_code(CodeKind::Steane);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (middle, expected) in [([GateKind::S, GateKind::S], true), ([GateKind::S, GateKind::Sdg], false)] {
        let mut c = Circuit::new(1);
        c.add(GateKind::H, &[0]).unwrap();
        for k in middle {
            c.add(k, &[0]).unwrap();
        }
        c.add(GateKind::H, &[0]).unwrap().add(GateKind::MeasureZ, &[0]).unwrap();
        let plan = assemble_protected_circuit(&c, &code, 1).unwrap();
        for _ in 0..4 {
            let rec = run_clifford_circuit(plan.circuit(), &[], &mut rng).unwrap();
            assert_eq!(plan.decode_and_readout(&rec).unwrap(), vec![expected]);
        }
    }
}
