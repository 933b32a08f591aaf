use gaugeflow_core::checkers::replay;
use gaugeflow_core::{verify_all, CheckConfig, CycleSpec, Property, Space, Status};

fn quick(space: Space, seed: u64) -> CheckConfig {
    CheckConfig {
        space,
        seed,
        s_grid: 20,
        axiom_triples: 2000,
        ..CheckConfig::default()
    }
}

#[test]
fn default_run_verifies_every_property() {
    let spec = CycleSpec::default();
    let reports = verify_all(&spec, &CheckConfig::default()).unwrap();
    let props: Vec<_> = reports.iter().map(|r| r.property).collect();
    assert_eq!(props[..5], Property::CORE);
    assert_eq!(props[5], Property::UniformityAxioms);
    for r in &reports {
        assert_eq!(r.status, Status::Verified, "{}", r.property);
        replay(&spec, r, 1e-9).unwrap();
    }
}

#[test]
fn single_cycle_contrast() {
    let spec = CycleSpec::default();
    let reports = verify_all(&spec, &quick(Space::SingleCycle, 0)).unwrap();
    for r in &reports {
        let expected = match r.property {
            Property::NonMinimality | Property::NonEquicontinuity => Status::Falsified,
            _ => Status::Verified,
        };
        assert_eq!(r.status, expected, "{}", r.property);
        replay(&spec, r, 1e-9).unwrap();
    }
}

#[test]
fn runs_are_deterministic_per_seed() {
    let spec = CycleSpec::default();
    let a = verify_all(&spec, &quick(Space::Full, 11)).unwrap();
    let b = verify_all(&spec, &quick(Space::Full, 11)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tampered_witness_fails_replay() {
    let spec = CycleSpec::default();
    let mut reports = verify_all(&spec, &quick(Space::Full, 3)).unwrap();
    let t = &mut reports[0];
    let w = &mut t.witnesses[0];
    w.bindings
        .insert("s".into(), gaugeflow_core::Value::Group(0.123456));
    assert!(replay(&spec, t, 1e-9).is_err());
}
