//! Generators for the named composite-pulse sequences.
//!
//! Each generator returns a [`PulseSequence`] whose zero-error propagator
//! reproduces the target rotation up to global phase. Phases are expressed
//! relative to an arbitrary `phi`; shifting `phi` by a constant conjugates
//! the zero-error propagator by a z-rotation of the same amount.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::pulse::{Pulse, PulseSequence};

/// Winding numbers for the three CORPSE flip angles. The default `(1, 1, 0)`
/// gives the best-performing member of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpseParams {
    pub n1: u32,
    pub n2: u32,
    pub n3: u32,
}

impl Default for CorpseParams {
    fn default() -> Self {
        Self {
            n1: 1,
            n2: 1,
            n3: 0,
        }
    }
}

/// Where the W1 error-correcting block sits relative to the naive pulse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bb1Placement {
    /// W1 first, then the naive pulse.
    Before,
    /// Naive pulse first, then W1.
    After,
    /// Naive pulse split symmetrically around W1: `theta/2, W1, theta/2`.
    Middle,
}

impl Bb1Placement {
    pub fn label(self) -> &'static str {
        match self {
            Bb1Placement::Before => "bb1-before",
            Bb1Placement::After => "bb1-after",
            Bb1Placement::Middle => "bb1-mid",
        }
    }
}

/// Baseline single-pulse sequence.
pub fn naive(theta: f64, phi: f64) -> Result<PulseSequence> {
    PulseSequence::new("naive", vec![Pulse::new(theta, phi)?])
}

/// CORPSE composite pulse correcting off-resonance errors: three pulses
/// along `+phi, phi+pi, +phi` with flip angles
///
/// ```text
/// theta_1 = 2 pi n1 + theta/2 - k
/// theta_2 = 2 pi n2 - 2 k          where k = arcsin(sin(theta/2) / 2)
/// theta_3 = 2 pi n3 + theta/2 - k
/// ```
pub fn corpse(theta: f64, phi: f64, params: CorpseParams) -> Result<PulseSequence> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    let k = ((theta / 2.0).sin() / 2.0).asin();
    let CorpseParams { n1, n2, n3 } = params;
    let angles = [
        2.0 * PI * n1 as f64 + theta / 2.0 - k,
        2.0 * PI * n2 as f64 - 2.0 * k,
        2.0 * PI * n3 as f64 + theta / 2.0 - k,
    ];
    for angle in angles {
        if angle < 0.0 {
            return Err(Error::NegativeFlipAngle {
                n1,
                n2,
                n3,
                angle_deg: angle.to_degrees(),
            });
        }
    }
    PulseSequence::new(
        "corpse",
        vec![
            Pulse::new(angles[0], phi)?,
            Pulse::new(angles[1], phi + PI)?,
            Pulse::new(angles[2], phi)?,
        ],
    )
}

/// Tycko's composite 90 degree pulse: the literal published angles
/// `385, 320, 25` degrees along `+phi, phi+pi, +phi`.
pub fn tycko90(phi: f64) -> Result<PulseSequence> {
    PulseSequence::new(
        "tycko90",
        vec![
            Pulse::new(385.0_f64.to_radians(), phi)?,
            Pulse::new(320.0_f64.to_radians(), phi + PI)?,
            Pulse::new(25.0_f64.to_radians(), phi)?,
        ],
    )
}

/// W1 error-correcting block for a target rotation by `theta`:
/// `180_(phi+phi1) 360_(phi+3 phi1) 180_(phi+phi1)` with
/// `phi1 = arccos(-theta / 4 pi)`. At zero error it composes to the
/// identity up to global phase.
fn w1(theta: f64, phi: f64) -> Result<Vec<Pulse>> {
    let ratio = -theta / (4.0 * PI);
    if !(-1.0..=1.0).contains(&ratio) {
        return Err(Error::AngleDomain(format!(
            "|theta| = {:.4} rad exceeds 4 pi for the W1 phase angle",
            theta.abs()
        )));
    }
    let phi1 = ratio.acos();
    Ok(vec![
        Pulse::new(PI, phi + phi1)?,
        Pulse::new(2.0 * PI, phi + 3.0 * phi1)?,
        Pulse::new(PI, phi + phi1)?,
    ])
}

/// BB1 composite pulse correcting pulse-length errors: the W1 block
/// combined with the naive `theta` pulse at the requested placement.
pub fn bb1(theta: f64, phi: f64, placement: Bb1Placement) -> Result<PulseSequence> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    let block = w1(theta, phi)?;
    let pulses = match placement {
        Bb1Placement::Before => {
            let mut v = block;
            v.push(Pulse::new(theta, phi)?);
            v
        }
        Bb1Placement::After => {
            let mut v = vec![Pulse::new(theta, phi)?];
            v.extend(block);
            v
        }
        Bb1Placement::Middle => {
            let half = Pulse::new(theta / 2.0, phi)?;
            let mut v = vec![half];
            v.extend(block);
            v.push(half);
            v
        }
    };
    PulseSequence::new(placement.label(), pulses)
}

/// Composite Z-rotation `90_y theta_x 90_{-y}`; at zero error it realizes
/// `exp(-i theta Iz)` exactly (z-rotation by `theta`, no extra phase).
pub fn composite_z(theta: f64) -> Result<PulseSequence> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    PulseSequence::new(
        "composite-z",
        vec![
            Pulse::new(PI / 2.0, PI / 2.0)?,
            Pulse::new(theta, 0.0)?,
            Pulse::new(PI / 2.0, -PI / 2.0)?,
        ],
    )
}
