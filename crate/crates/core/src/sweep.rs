//! Fidelity sweeps over systematic-error coordinates and numerical
//! estimation of infidelity orders.
//!
//! A sweep evaluates one gate against one target on a uniform grid along a
//! single error axis. Grid points are independent pure evaluations; they
//! are computed in ascending order and the output is deterministic for
//! identical inputs.
//!
//! `fit_order` extracts the leading power of the infidelity `1 - F` from a
//! sweep by a least-squares slope in log-log coordinates. Fits are only
//! meaningful in the asymptotic window, so points below the double-precision
//! floor (`1 - F < 1e-13`) or outside the series regime (`1 - F > 0.1`)
//! are excluded, and the fit resamples the surviving rows at log-spaced
//! abscissas so a uniform grid does not over-weight its dense high end.

use crate::error::{Error, Result};
use crate::pulse::{realize_sequence, ErrorModel, PulseSequence};
use crate::two_qubit::{bb1_ising, coupling_pulse, CouplingErrorModel};
use crate::unitary::{fidelity, Unitary};

/// Infidelities below this are double-precision noise and excluded from fits.
pub const FIT_FLOOR: f64 = 1e-13;
/// Infidelities above this are outside the power-series regime.
pub const FIT_CEILING: f64 = 0.1;
/// Minimum usable points for an order fit.
pub const MIN_FIT_POINTS: usize = 5;
/// Number of log-spaced abscissas the fit resamples onto.
const RESAMPLE_TARGETS: usize = 16;

/// Which systematic-error coordinate a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorAxis {
    /// Fractional pulse-length error of every pulse in a sequence.
    Epsilon,
    /// Off-resonance fraction of every pulse in a sequence.
    OffResonance,
    /// Fractional coupling-strength error of a two-qubit gate.
    Coupling,
}

impl ErrorAxis {
    pub fn name(self) -> &'static str {
        match self {
            ErrorAxis::Epsilon => "epsilon",
            ErrorAxis::OffResonance => "offres",
            ErrorAxis::Coupling => "coupling",
        }
    }
}

/// Uniform grid over one error axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub axis: ErrorAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn new(axis: ErrorAxis, start: f64, stop: f64, points: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidSweepSpec("non-finite bounds".into()));
        }
        if start >= stop {
            return Err(Error::InvalidSweepSpec(format!(
                "start {start} must be below stop {stop}"
            )));
        }
        if points < 2 {
            return Err(Error::InvalidSweepSpec(format!(
                "need at least 2 points, got {points}"
            )));
        }
        Ok(Self {
            axis,
            start,
            stop,
            points,
        })
    }

    fn value_at(&self, index: usize) -> f64 {
        if index == self.points - 1 {
            self.stop
        } else {
            let step = (self.stop - self.start) / (self.points - 1) as f64;
            self.start + step * index as f64
        }
    }
}

/// One tabulated grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub error_value: f64,
    pub fidelity: f64,
}

/// Tabulated `(error value, fidelity)` pairs, sorted ascending in the
/// error value, one row per grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub sequence_label: String,
    pub target_label: String,
}

/// The gate whose robustness a sweep measures: either a single-qubit pulse
/// sequence (epsilon / off-resonance axes) or a two-qubit coupling gate
/// (coupling axis).
#[derive(Clone, Debug)]
pub enum GateHandle {
    Sequence(PulseSequence),
    /// Plain coupling evolution by `theta`, mis-set by the coupling error.
    CouplingNaive {
        theta: f64,
    },
    /// Coupling-robust BB1 analog for a `theta` coupling angle.
    CouplingBb1 {
        theta: f64,
    },
}

impl GateHandle {
    pub fn dim(&self) -> usize {
        match self {
            GateHandle::Sequence(_) => 2,
            _ => 4,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GateHandle::Sequence(seq) => seq.label().to_string(),
            GateHandle::CouplingNaive { .. } => "coupling-naive".into(),
            GateHandle::CouplingBb1 { .. } => "bb1-ising".into(),
        }
    }

    /// Realizes the gate with the swept axis set to `value` and every other
    /// error coordinate zero.
    pub fn realize(&self, axis: ErrorAxis, value: f64) -> Result<Unitary> {
        match (self, axis) {
            (GateHandle::Sequence(seq), ErrorAxis::Epsilon) => realize_sequence(
                seq,
                ErrorModel {
                    epsilon: value,
                    f: 0.0,
                },
            ),
            (GateHandle::Sequence(seq), ErrorAxis::OffResonance) => realize_sequence(
                seq,
                ErrorModel {
                    epsilon: 0.0,
                    f: value,
                },
            ),
            (GateHandle::CouplingNaive { theta }, ErrorAxis::Coupling) => Ok(coupling_pulse(
                *theta,
                0.0,
                CouplingErrorModel { epsilon_j: value },
            )),
            (GateHandle::CouplingBb1 { theta }, ErrorAxis::Coupling) => {
                bb1_ising(*theta, CouplingErrorModel { epsilon_j: value })
            }
            _ => Err(Error::AxisMismatch {
                axis: axis.name(),
                gate: self.label(),
            }),
        }
    }
}

/// Evaluates the gate on every grid point of `spec` and tabulates its
/// fidelity against `target`.
pub fn sweep(
    gate: &GateHandle,
    target: &Unitary,
    target_label: &str,
    spec: &SweepSpec,
) -> Result<SweepResult> {
    if gate.dim() != target.dim() {
        return Err(Error::DimensionMismatch(gate.dim(), target.dim()));
    }
    SweepSpec::new(spec.axis, spec.start, spec.stop, spec.points)?;
    let mut rows = Vec::with_capacity(spec.points);
    for i in 0..spec.points {
        let x = spec.value_at(i);
        let achieved = gate.realize(spec.axis, x)?;
        rows.push(SweepRow {
            error_value: x,
            fidelity: fidelity(&achieved, target)?,
        });
    }
    Ok(SweepResult {
        rows,
        sequence_label: gate.label(),
        target_label: target_label.to_string(),
    })
}

/// Fitted infidelity order from a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderFit {
    /// Least-squares slope of `log10(1 - F)` against `log10 |error|`.
    pub slope: f64,
    pub r_squared: f64,
    /// Smallest and largest error magnitudes that entered the fit.
    pub range: (f64, f64),
    pub points_used: usize,
}

/// Fits the infidelity order over `fit_range = (min, max)` error
/// magnitudes. Rows outside the magnitude range, below [`FIT_FLOOR`] or
/// above [`FIT_CEILING`] are dropped; at least [`MIN_FIT_POINTS`] must
/// survive.
pub fn fit_order(result: &SweepResult, fit_range: (f64, f64)) -> Result<OrderFit> {
    let (lo, hi) = fit_range;
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || lo >= hi {
        return Err(Error::InvalidSweepSpec(format!(
            "fit range [{lo}, {hi}] must satisfy 0 < min < max"
        )));
    }

    let mut usable: Vec<(f64, f64)> = result
        .rows
        .iter()
        .filter_map(|row| {
            let mag = row.error_value.abs();
            let infidelity = 1.0 - row.fidelity;
            ((lo..=hi).contains(&mag) && (FIT_FLOOR..=FIT_CEILING).contains(&infidelity))
                .then_some((mag, infidelity))
        })
        .collect();
    usable.sort_by(|a, b| a.0.total_cmp(&b.0));

    if usable.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewFitPoints {
            found: usable.len(),
            need: MIN_FIT_POINTS,
            lo,
            hi,
        });
    }

    let selected = resample_log_spaced(&usable);
    let points: Vec<(f64, f64)> = selected
        .iter()
        .map(|&(mag, infidelity)| (mag.log10(), infidelity.log10()))
        .collect();

    let n = points.len() as f64;
    let sum_x: f64 = points.iter().map(|p| p.0).sum();
    let sum_y: f64 = points.iter().map(|p| p.1).sum();
    let mean_x = sum_x / n;
    let mean_y = sum_y / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };

    Ok(OrderFit {
        slope,
        r_squared,
        range: (selected[0].0, selected[selected.len() - 1].0),
        points_used: selected.len(),
    })
}

/// Picks the usable row nearest to each of a set of log-spaced magnitudes,
/// deduplicated. Falls back to the full set if too few survive.
fn resample_log_spaced(usable: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let lo = usable[0].0;
    let hi = usable[usable.len() - 1].0;
    let k = RESAMPLE_TARGETS.min(usable.len());
    if lo <= 0.0 || hi / lo < 1.0 + 1e-12 || k < 2 {
        return usable.to_vec();
    }
    let mut picked: Vec<usize> = Vec::with_capacity(k);
    let log_lo = lo.ln();
    let log_step = (hi / lo).ln() / (k - 1) as f64;
    for i in 0..k {
        let target = (log_lo + log_step * i as f64).exp();
        let idx = nearest_index(usable, target);
        if picked.last() != Some(&idx) {
            picked.push(idx);
        }
    }
    picked.sort_unstable();
    picked.dedup();
    if picked.len() < MIN_FIT_POINTS {
        return usable.to_vec();
    }
    picked.into_iter().map(|i| usable[i]).collect()
}

fn nearest_index(sorted: &[(f64, f64)], target: f64) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, &(mag, _)) in sorted.iter().enumerate() {
        let d = (mag - target).abs();
        if d < best_dist {
            best_dist = d;
            best = i;
        }
    }
    best
}
