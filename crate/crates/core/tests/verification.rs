use revschwarz_core::triangle::TriangleOp;
use revschwarz_core::verify::hexfloat::{dehexify, hexify};
use revschwarz_core::verify::{
    certify_sharpness, equality_witness, fuzz, sample_inputs, sample_inputs_at, sample_triangle,
    sharpness_search, FuzzConfig, Method, Witness,
};
use revschwarz_core::{BoundId, Direction, Error, Field};

/// Bounds whose literal statement admits counterexamples.
const KNOWN_FALSE: [BoundId; 4] = [
    BoundId::GrcRaw,
    BoundId::AlphaRot,
    BoundId::GammaBandUp,
    BoundId::GammaBandLow,
];

fn small() -> FuzzConfig {
    FuzzConfig {
        samples: 500,
        ..FuzzConfig::default()
    }
}

#[test]
fn same_index_same_sample() {
    let cfg = FuzzConfig {
        seed: 0,
        ..FuzzConfig::default()
    };
    let a = sample_inputs(BoundId::AaQuad, &cfg, 0).unwrap();
    assert_eq!(a, sample_inputs(BoundId::AaQuad, &cfg, 0).unwrap());
    assert_ne!(a, sample_inputs(BoundId::AaQuad, &cfg, 1).unwrap());
}

#[test]
fn depth_zero_on_boundary() {
    let s = sample_inputs_at(BoundId::Angular, &FuzzConfig::default(), 7, 0.0).unwrap();
    let r = revschwarz_core::catalog::evaluate(BoundId::Angular, &s.inputs, &s.params).unwrap();
    assert!(r.hypothesis_slack.abs() <= 1e-12);
    assert!(sample_inputs_at(BoundId::Angular, &FuzzConfig::default(), 7, 1.0).is_err());
}

#[test]
fn zero_samples_is_a_config_error() {
    let cfg = FuzzConfig {
        samples: 0,
        ..FuzzConfig::default()
    };
    assert!(matches!(
        fuzz(BoundId::Angular, &cfg),
        Err(Error::ParamDomain(_))
    ));
}

#[test]
fn angular_fuzz_is_clean() {
    let cfg = FuzzConfig {
        dims: vec![2, 3, 5],
        ..FuzzConfig::default()
    };
    let r = fuzz(BoundId::Angular, &cfg).unwrap();
    assert_eq!(r.violations, 0);
    assert!(r.admissible <= r.attempted);
}

#[test]
fn unconditional_bounds_are_always_admissible() {
    for id in [
        BoundId::Kurepa,
        BoundId::Hile,
        BoundId::GammaBandUp,
        BoundId::PowerP,
    ] {
        let r = fuzz(id, &small()).unwrap();
        assert_eq!(r.admissible, r.attempted, "{id}");
    }
}

#[test]
fn complex_only_bounds_are_skipped_over_reals() {
    let cfg = FuzzConfig {
        fields: vec![Field::Real],
        ..small()
    };
    assert_eq!(fuzz(BoundId::ComplexAlpha, &cfg).unwrap().admissible, 0);
    assert!(sample_triangle(TriangleOp::ReverseComplexAlpha, &cfg, 0).is_err());
}

#[test]
fn worst_input_replays() {
    let r = fuzz(BoundId::Crossnorm, &small()).unwrap();
    let worst = r.worst_input.unwrap();
    let plain = dehexify(&worst).unwrap();
    assert_eq!(hexify(&plain), worst);
    assert_eq!(plain["index"], r.worst_index.unwrap());
}

#[test]
fn witness_rejects_unknown_cases() {
    assert_eq!(
        equality_witness(BoundId::Hile).unwrap_err(),
        Error::NoKnownWitness(BoundId::Hile)
    );
}

#[test]
fn certify_prefers_constructed_witnesses() {
    let cfg = FuzzConfig::default();
    let r = certify_sharpness(BoundId::GammaDisc, &cfg).unwrap();
    assert_eq!(r.method, Method::Constructed);
    assert!((r.best_tightness - 1.0).abs() <= 1e-9);
    assert_eq!(
        certify_sharpness(BoundId::Hile, &cfg).unwrap().method,
        Method::Searched
    );
}

#[test]
fn search_results_reproduce_from_hex_witness() {
    let cfg = FuzzConfig::default();
    for id in [BoundId::Angular, BoundId::GammaDisc, BoundId::Phase] {
        let r = sharpness_search(id, &cfg).unwrap();
        assert!(r.best_tightness >= 0.999, "{id}: {}", r.best_tightness);
        let text = serde_json::to_string(r.witness.as_ref().unwrap()).unwrap();
        let back = Witness::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.evaluate().unwrap().tightness, Some(r.best_tightness));
    }
}

#[test]
fn search_never_beats_one_on_sound_bounds() {
    let cfg = FuzzConfig::default();
    for id in BoundId::ALL
        .into_iter()
        .filter(|id| !KNOWN_FALSE.contains(id))
    {
        let r = sharpness_search(id, &cfg).unwrap();
        let Some(w) = r.witness else { continue };
        let rep = w.evaluate().unwrap();
        assert_eq!(rep.satisfied, Some(true), "{id}");
        // The comparison tolerance, carried over to the ratio.
        let den = if rep.direction == Direction::Lower {
            rep.lhs
        } else {
            rep.rhs
        };
        let allowed = 1e-9 * 1f64.max(rep.lhs.abs()).max(rep.rhs.abs()) / den;
        assert!(
            r.best_tightness <= 1.0 + allowed.max(1e-9),
            "{id}: {}",
            r.best_tightness
        );
    }
}

#[test]
fn search_exposes_known_false_bounds() {
    let cfg = FuzzConfig::default();
    for id in [BoundId::GammaBandUp, BoundId::GammaBandLow] {
        let r = sharpness_search(id, &cfg).unwrap();
        assert!(r.best_tightness > 1.0 + 1e-9, "{id}: {}", r.best_tightness);
        let w = r.witness.unwrap();
        assert_eq!(w.evaluate().unwrap().satisfied, Some(false));
    }
}
