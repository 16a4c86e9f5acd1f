use proptest::prelude::*;
use revschwarz_core::catalog::{evaluate, BoundInputs};
use revschwarz_core::space::{complex_inner, inner, norm};
use revschwarz_core::triangle::{reverse_k, reverse_power, triangle_gap};
use revschwarz_core::verify::{sample_inputs, sample_inputs_at, FuzzConfig};
use revschwarz_core::{BoundId, ComplexifiedVector, Field, Scalar, Tolerance, Vector};

fn build(field: Field, raw: &[f64]) -> Vector {
    match field {
        Field::Real => Vector::real(raw).unwrap(),
        Field::Complex => {
            let c: Vec<Scalar> = raw.chunks(2).map(|p| Scalar::new(p[0], p[1])).collect();
            Vector::complex(&c).unwrap()
        }
    }
}

/// `count` vectors of one random field and dimension.
fn vectors(count: usize) -> impl Strategy<Value = (Field, Vec<Vector>)> {
    (1usize..6, any::<bool>()).prop_flat_map(move |(dim, complex)| {
        let field = if complex { Field::Complex } else { Field::Real };
        let width = if complex { 2 * dim } else { dim };
        prop::collection::vec(prop::collection::vec(-5.0f64..5.0, width), count)
            .prop_map(move |raws| (field, raws.iter().map(|r| build(field, r)).collect()))
    })
}

fn scaled(v: &Vector, t: f64) -> Vector {
    Vector::new(v.field(), v.coords().iter().map(|c| c * t).collect()).unwrap()
}

fn unit(v: &Vector) -> Option<Vector> {
    let n = norm(v);
    (n > 1e-6).then(|| scaled(v, 1.0 / n))
}

proptest! {
    #[test]
    fn conjugate_symmetry((_, vs) in vectors(2)) {
        let xy = inner(&vs[0], &vs[1]).unwrap();
        let yx = inner(&vs[1], &vs[0]).unwrap();
        prop_assert!((xy - yx.conj()).norm() <= 1e-12 * (1.0 + xy.norm()));
    }

    #[test]
    fn schwarz_baseline((_, vs) in vectors(2)) {
        let xy = inner(&vs[0], &vs[1]).unwrap();
        prop_assert!(Tolerance::default().le(xy.norm(), norm(&vs[0]) * norm(&vs[1])));
    }

    #[test]
    fn complexification_norm((_, vs) in vectors(2)) {
        let (a, b) = (vs[0].real_parts(), vs[1].real_parts());
        let a = Vector::real(&a).unwrap();
        let b = Vector::real(&b).unwrap();
        let z = ComplexifiedVector::new(a.clone(), b.clone()).unwrap();
        let zz = complex_inner(&z, &z).unwrap();
        let expect = norm(&a).powi(2) + norm(&b).powi(2);
        prop_assert!((zz.re - expect).abs() <= 1e-12 * (1.0 + expect));
        prop_assert!(zz.im.abs() <= 1e-12 * (1.0 + expect));
    }

    #[test]
    fn tightness_is_scale_invariant(index in 0u64..500, t in 0.01f64..100.0) {
        let cfg = FuzzConfig::default();
        for id in [BoundId::Angular, BoundId::AaQuad, BoundId::Crossnorm, BoundId::Dw, BoundId::Hile] {
            let s = sample_inputs(id, &cfg, index).unwrap();
            let base = evaluate(id, &s.inputs, &s.params).unwrap();
            let inputs = BoundInputs::pair(
                scaled(s.inputs.x.as_ref().unwrap(), t),
                scaled(s.inputs.y.as_ref().unwrap(), t),
            );
            let moved = evaluate(id, &inputs, &s.params).unwrap();
            if let (Some(a), Some(b)) = (base.tightness, moved.tightness) {
                prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{id}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn samples_are_deterministic(index in 0u64..10_000, seed in any::<u64>()) {
        let cfg = FuzzConfig { seed, ..FuzzConfig::default() };
        for id in BoundId::ALL {
            prop_assert_eq!(sample_inputs(id, &cfg, index), sample_inputs(id, &cfg, index));
        }
    }

    #[test]
    fn samples_satisfy_their_hypothesis(index in 0u64..10_000) {
        let cfg = FuzzConfig::default();
        for id in BoundId::ALL {
            let s = sample_inputs(id, &cfg, index).unwrap();
            let r = evaluate(id, &s.inputs, &s.params).unwrap();
            prop_assert!(r.hypothesis_slack >= -1e-9, "{id}: slack {}", r.hypothesis_slack);
        }
    }

    #[test]
    fn depth_zero_is_the_boundary(index in 0u64..10_000) {
        let cfg = FuzzConfig::default();
        for id in BoundId::ALL.into_iter().filter(|id| id.info().conditional) {
            let s = sample_inputs_at(id, &cfg, index, 0.0).unwrap();
            let r = evaluate(id, &s.inputs, &s.params).unwrap();
            if r.hypothesis_slack.is_infinite() || (id == BoundId::Proj && s.dim == 1) {
                continue;
            }
            let inputs = &s.inputs;
            let scale = 1.0 + [&inputs.x, &inputs.y, &inputs.a].iter().filter_map(|v| v.as_ref()).map(norm).sum::<f64>();
            prop_assert!(r.hypothesis_slack.abs() <= 1e-9 * scale, "{id}: slack {}", r.hypothesis_slack);
        }
    }

    #[test]
    fn triangle_gap_is_dominated((_, vs) in vectors(4)) {
        let Some(e) = unit(&vs[0]) else { return Ok(()) };
        let xs = &vs[1..];
        let gap = triangle_gap(xs).unwrap();
        prop_assert!(gap >= -1e-12);
        let k = reverse_k(xs, &e).unwrap();
        prop_assert_eq!(k.satisfied, Some(true));
        let k_total = k.bound;
        let p = reverse_power(xs, &e, 1.0).unwrap();
        let scale: f64 = xs.iter().map(|x| (norm(x) + 1.0).powi(2)).sum();
        prop_assert!((p.bound - k_total).abs() <= 1e-12 * scale);
        for q in [1.5, 2.0, 3.0] {
            prop_assert_eq!(reverse_power(xs, &e, q).unwrap().satisfied, Some(true));
        }
    }
}
