//! Cross-module invariants that tie the pulse generators, the error model
//! and the order-fitting machinery together.

use std::f64::consts::PI;

use cpulse_core::{
    bb1, fidelity, fit_order, naive, realize_sequence, rot, sweep, Bb1Placement, ErrorAxis,
    ErrorModel, GateHandle, Pulse, PulseSequence, SweepSpec,
};

/// An order-n propagator error corresponds to an order-2n infidelity: the
/// mis-set 180 pulse has a first-order error term and a quadratic
/// infidelity.
#[test]
fn error_order_is_half_the_infidelity_order() {
    let target = rot(PI, 0.0).unwrap();
    let seq = naive(PI, 0.0).unwrap();

    // Propagator error: slope of log10 max|V - U| against log10 eps.
    let mut points = Vec::new();
    for i in 0..20 {
        let eps = 1e-3 * 10.0_f64.powf(i as f64 / 9.5);
        if eps > 0.1 {
            break;
        }
        let v = realize_sequence(
            &seq,
            ErrorModel {
                epsilon: eps,
                f: 0.0,
            },
        )
        .unwrap();
        let err = v.max_abs_diff(&target);
        points.push((eps.log10(), err.log10()));
    }
    let n = points.len() as f64;
    let mean_x: f64 = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y: f64 = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let error_slope = sxy / sxx;
    assert!(
        (error_slope - 1.0).abs() <= 0.05,
        "propagator error slope {error_slope}"
    );

    // Infidelity order through the standard fit.
    let spec = SweepSpec::new(ErrorAxis::Epsilon, 1e-3, 0.12, 160).unwrap();
    let result = sweep(&GateHandle::Sequence(seq), &target, "rot(180, 0)", &spec).unwrap();
    let fit = fit_order(&result, (1e-3, 0.1)).unwrap();
    assert!(
        (fit.slope - 2.0 * error_slope).abs() <= 0.1,
        "infidelity slope {} vs twice the error slope {}",
        fit.slope,
        2.0 * error_slope
    );
}

/// The sign of the W1 phase angle is a matter of convention: both choices
/// give the same fidelity at every pulse-length error.
#[test]
fn bb1_phase_sign_choice_does_not_matter() {
    let theta = PI;
    let target = rot(theta, 0.0).unwrap();
    let plus = bb1(theta, 0.0, Bb1Placement::Before).unwrap();

    // Rebuild the Before placement with phi1 -> -phi1 by hand.
    let phi1 = (-theta / (4.0 * PI)).acos();
    let minus = PulseSequence::new(
        "bb1-minus",
        vec![
            Pulse::new(PI, -phi1).unwrap(),
            Pulse::new(2.0 * PI, -3.0 * phi1).unwrap(),
            Pulse::new(PI, -phi1).unwrap(),
            Pulse::new(theta, 0.0).unwrap(),
        ],
    )
    .unwrap();

    for i in 0..=60 {
        let eps = -0.3 + 0.01 * i as f64;
        let e = ErrorModel {
            epsilon: eps,
            f: 0.0,
        };
        let f_plus = fidelity(&realize_sequence(&plus, e).unwrap(), &target).unwrap();
        let f_minus = fidelity(&realize_sequence(&minus, e).unwrap(), &target).unwrap();
        assert!(
            (f_plus - f_minus).abs() <= 1e-12,
            "eps {eps}: {f_plus} vs {f_minus}"
        );
    }
}
