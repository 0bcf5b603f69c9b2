//! Maps ideal pulse descriptions plus systematic-error coordinates to the
//! propagators actually produced.
//!
//! The error coordinates are a fractional pulse-length error `epsilon`
//! (the flip angle actually delivered is `theta (1 + epsilon)`) and an
//! off-resonance fraction `f` (resonance offset over the nominal nutation
//! frequency), which tilts the rotation axis out of the xy plane.
//!
//! When both errors are nonzero the generator is
//! `theta [(1 + epsilon)(Ix cos phi + Iy sin phi) + f Iz]`: the pulse
//! duration is fixed by the nominal calibration, so a field-strength error
//! rescales the transverse component only while the offset term is
//! field-independent. This composition is a model choice; it reduces
//! exactly to each single-error case.

use crate::error::{Error, Result};
use crate::unitary::{compose, rot, CMatrix, Unitary};

use num_complex::Complex64 as C64;

/// One hard RF pulse: nominal flip angle and phase, both in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pulse {
    pub theta: f64,
    pub phi: f64,
}

impl Pulse {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        Ok(Self { theta, phi })
    }
}

/// Ordered pulse list; the first element is applied first in time.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence {
    pulses: Vec<Pulse>,
    label: String,
}

impl PulseSequence {
    pub fn new(label: impl Into<String>, pulses: Vec<Pulse>) -> Result<Self> {
        if pulses.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self {
            pulses,
            label: label.into(),
        })
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Parses the plain-text sequence format: one pulse per line as two
    /// whitespace-separated decimal fields `theta_deg phase_deg`; lines
    /// beginning with `#` are comments and blank lines are ignored.
    /// Angles are degrees in files and radians internally.
    pub fn parse(text: &str, label: impl Into<String>) -> Result<Self> {
        let mut pulses = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::SequenceParse {
                    line,
                    message: format!("expected 2 fields, found {}", fields.len()),
                });
            }
            let mut angles = [0.0_f64; 2];
            for (slot, field) in angles.iter_mut().zip(fields.iter()) {
                *slot = field.parse().map_err(|_| Error::SequenceParse {
                    line,
                    message: format!("invalid number `{field}`"),
                })?;
                if !slot.is_finite() {
                    return Err(Error::SequenceParse {
                        line,
                        message: format!("non-finite angle `{field}`"),
                    });
                }
            }
            pulses.push(Pulse {
                theta: angles[0].to_radians(),
                phi: angles[1].to_radians(),
            });
        }
        if pulses.is_empty() {
            return Err(Error::SequenceParse {
                line: text.lines().count(),
                message: "no pulses found".into(),
            });
        }
        Self::new(label, pulses)
    }

    /// Renders the sequence in the file format, angles in degrees with six
    /// decimal places.
    pub fn to_file_format(&self) -> String {
        let mut out = String::new();
        for p in &self.pulses {
            out.push_str(&format!(
                "{:.6} {:.6}\n",
                p.theta.to_degrees(),
                p.phi.to_degrees()
            ));
        }
        out
    }
}

/// Systematic error coordinates; `(0, 0)` is the error-free point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorModel {
    /// Fractional pulse-length error.
    pub epsilon: f64,
    /// Off-resonance fraction (offset over nominal nutation frequency).
    pub f: f64,
}

impl ErrorModel {
    pub const NONE: ErrorModel = ErrorModel {
        epsilon: 0.0,
        f: 0.0,
    };

    pub fn new(epsilon: f64, f: f64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::NonFinite("epsilon"));
        }
        if !f.is_finite() {
            return Err(Error::NonFinite("f"));
        }
        Ok(Self { epsilon, f })
    }
}

/// Propagator of one pulse under the error model:
/// `exp[-i theta ((1 + eps)(Ix cos phi + Iy sin phi) + f Iz)]`, a rotation
/// by `theta sqrt((1+eps)^2 + f^2)` about the unit axis
/// `((1+eps) cos phi, (1+eps) sin phi, f) / sqrt((1+eps)^2 + f^2)`.
///
/// Reduces exactly to [`rot`] at the error-free point (same code path).
pub fn realize(p: Pulse, e: ErrorModel) -> Result<Unitary> {
    if !p.theta.is_finite() || !p.phi.is_finite() {
        return Err(Error::NonFinite("pulse angle"));
    }
    if !e.epsilon.is_finite() || !e.f.is_finite() {
        return Err(Error::NonFinite("error model"));
    }
    if e.epsilon == 0.0 && e.f == 0.0 {
        return rot(p.theta, p.phi);
    }
    let scale = 1.0 + e.epsilon;
    let norm = scale.hypot(e.f);
    if norm == 0.0 {
        // Zero generator (eps = -1, f = 0): no rotation at all.
        return Ok(Unitary::identity(2));
    }
    let (sin_phi, cos_phi) = p.phi.sin_cos();
    let (nx, ny, nz) = (scale * cos_phi / norm, scale * sin_phi / norm, e.f / norm);
    let alpha = p.theta * norm;
    let c = (alpha / 2.0).cos();
    let s = (alpha / 2.0).sin();
    Ok(Unitary::from_cmatrix_unchecked(CMatrix::from_rows(
        2,
        vec![
            C64::new(c, -s * nz),
            C64::new(-s * ny, -s * nx),
            C64::new(s * ny, -s * nx),
            C64::new(c, s * nz),
        ],
    )))
}

/// Propagator of a whole sequence; the same systematic error applies to
/// every pulse.
pub fn realize_sequence(seq: &PulseSequence, e: ErrorModel) -> Result<Unitary> {
    let realized: Vec<Unitary> = seq
        .pulses()
        .iter()
        .map(|&p| realize(p, e))
        .collect::<Result<_>>()?;
    compose(&realized)
}
