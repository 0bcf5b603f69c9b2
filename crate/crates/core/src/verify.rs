//! Exact-identity checks behind the `verify` command: each check evaluates
//! an algebraic identity numerically and reports the worst residual
//! against its tolerance.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::pulse::{realize_sequence, ErrorModel};
use crate::sequences::{bb1, composite_z, corpse, Bb1Placement, CorpseParams};
use crate::two_qubit::{controlled_z, spin_echo_coupling, zz_evolution, TwoSpinSystem};
use crate::unitary::{phase_distance, rot, rot_z, CMatrix, Unitary, TOL_CHAIN, TOL_EXACT};

use num_complex::Complex64 as C64;

/// Seed for the randomized spin-echo frequencies; printed in the report
/// header so runs are reproducible.
pub const DEFAULT_SEED: u64 = 42;

/// One identity check: its worst residual and the tolerance it must meet.
#[derive(Clone, Debug)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl VerifyCheck {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Runs the whole identity suite with the given seed for the randomized
/// spin-echo frequencies.
pub fn run_identity_checks(seed: u64) -> Vec<VerifyCheck> {
    vec![
        composite_z_check(),
        controlled_z_check(),
        w1_identity_check(),
        corpse_zero_error_check(),
        spin_echo_check(seed),
    ]
}

/// Composite Z-rotation equals a z-rotation for 30, 90, 180, 270 degrees.
fn composite_z_check() -> VerifyCheck {
    let mut worst = 0.0_f64;
    for deg in [30.0, 90.0, 180.0, 270.0] {
        let theta = f64::to_radians(deg);
        let u = realize_sequence(&composite_z(theta).unwrap(), ErrorModel::NONE).unwrap();
        worst = worst.max(phase_distance(&u, &rot_z(theta)).unwrap());
    }
    VerifyCheck {
        name: "composite-Z residual",
        residual: worst,
        tolerance: TOL_EXACT,
    }
}

/// The four-factor controlled-Z product equals diag(1, 1, 1, -1),
/// global phase included.
fn controlled_z_check() -> VerifyCheck {
    let mut expect = CMatrix::identity(4);
    expect.set(3, 3, C64::new(-1.0, 0.0));
    let residual = controlled_z().matrix().max_abs_diff(&expect);
    VerifyCheck {
        name: "controlled-Z residual",
        residual,
        tolerance: TOL_EXACT,
    }
}

/// The W1 block alone composes to the identity up to global phase.
fn w1_identity_check() -> VerifyCheck {
    let mut worst = 0.0_f64;
    for deg in [45.0, 90.0, 180.0] {
        let seq = bb1(f64::to_radians(deg), 0.0, Bb1Placement::Before).unwrap();
        let block = crate::pulse::PulseSequence::new("w1", seq.pulses()[..3].to_vec()).unwrap();
        let u = realize_sequence(&block, ErrorModel::NONE).unwrap();
        worst = worst.max(phase_distance(&u, &Unitary::identity(2)).unwrap());
    }
    VerifyCheck {
        name: "W1 identity residual",
        residual: worst,
        tolerance: TOL_EXACT,
    }
}

/// CORPSE at zero error reproduces its target rotation.
fn corpse_zero_error_check() -> VerifyCheck {
    let mut worst = 0.0_f64;
    for deg in [45.0, 90.0, 180.0] {
        let theta = f64::to_radians(deg);
        let seq = corpse(theta, 0.0, CorpseParams::default()).unwrap();
        let u = realize_sequence(&seq, ErrorModel::NONE).unwrap();
        worst = worst.max(phase_distance(&u, &rot(theta, 0.0).unwrap()).unwrap());
    }
    VerifyCheck {
        name: "CORPSE zero-error residual",
        residual: worst,
        tolerance: TOL_EXACT,
    }
}

/// The spin-echo sandwich equals pure-coupling evolution for randomized
/// offset frequencies.
fn spin_echo_check(seed: u64) -> VerifyCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = 10.0;
    let t = 1.0 / (2.0 * j);
    let target = zz_evolution(PI * j * t);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let sys = TwoSpinSystem {
            nu_i: rng.gen_range(-1000.0..1000.0),
            nu_s: rng.gen_range(-1000.0..1000.0),
            j,
        };
        let u = spin_echo_coupling(sys, t).unwrap();
        worst = worst.max(phase_distance(&u, &target).unwrap());
    }
    VerifyCheck {
        name: "spin-echo residual",
        residual: worst,
        tolerance: TOL_CHAIN,
    }
}
