//! Dense complex-matrix algebra for propagators: construction, composition,
//! fidelity, and global-phase-invariant comparison.
//!
//! All matrices are 2x2 (one spin) or 4x4 (two spins), stored row-major.
//! Propagators follow the convention `U = exp(-i theta G)` with `G` the
//! product-operator generator, so `rot(theta, phi)` is
//! `exp[-i theta (Ix cos phi + Iy sin phi)]`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance for exact algebraic identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for identities reached through chains of more than eight
/// matrix products, where rounding accumulates.
pub const TOL_CHAIN: f64 = 1e-10;

/// Dense row-major complex matrix of dimension 2 or 4.
///
/// This is the raw container; it also holds non-unitary values such as
/// Hermitian generators and Hamiltonians. [`Unitary`] wraps it with the
/// unitarity invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries. Panics unless `dim` is 2 or 4
    /// and `data.len() == dim * dim`.
    pub fn from_rows(dim: usize, data: Vec<C64>) -> Self {
        assert!(dim == 2 || dim == 4, "dimension must be 2 or 4, got {dim}");
        assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_rows(dim, vec![C64::new(0.0, 0.0); dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Diagonal matrix from complex entries (length must equal the dim).
    pub fn diagonal(diag: &[C64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, z) in diag.iter().enumerate() {
            m.set(i, i, *z);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Matrix product `self * rhs`. Panics on dimension mismatch.
    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.entry(i, k) * rhs.entry(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, factor: C64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.entry(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Kronecker product of two 2x2 matrices; the left factor is spin I.
    pub fn kron(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, 2, "kron is defined for 2x2 factors only");
        assert_eq!(rhs.dim, 2, "kron is defined for 2x2 factors only");
        let mut out = CMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.set(2 * i + k, 2 * j + l, self.entry(i, j) * rhs.entry(k, l));
                    }
                }
            }
        }
        out
    }

    /// Largest elementwise magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix diff");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise magnitude of `self * self† - E`.
    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.adjoint())
            .max_abs_diff(&CMatrix::identity(self.dim))
    }
}

/// Unitary propagator: a [`CMatrix`] with `U U† = E` to within
/// [`TOL_EXACT`] elementwise.
///
/// Instances are immutable; every operation returns a new value.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    m: CMatrix,
}

impl Unitary {
    /// Validated construction from row-major entries.
    pub fn try_new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::DimensionMismatch(dim, 2));
        }
        let m = CMatrix::from_rows(dim, data);
        let residual = m.unitarity_residual();
        if residual > TOL_EXACT {
            return Err(Error::NotUnitary(residual));
        }
        Ok(Self { m })
    }

    /// Wraps a matrix that is unitary by construction, skipping the check.
    pub(crate) fn from_cmatrix_unchecked(m: CMatrix) -> Self {
        debug_assert!(m.unitarity_residual() <= 1e-9);
        Self { m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim),
        }
    }

    /// Diagonal unitary with entries `exp(-i phase_k)`.
    pub fn from_phases(phases: &[f64]) -> Self {
        let diag: Vec<C64> = phases.iter().map(|p| C64::from_polar(1.0, -p)).collect();
        Self {
            m: CMatrix::diagonal(&diag),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m.entry(row, col)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary {
            m: self.m.adjoint(),
        }
    }

    /// Matrix product `self * rhs` (i.e. `rhs` applied first in time).
    /// Panics on dimension mismatch; use [`compose`] for checked products.
    pub fn mul(&self, rhs: &Unitary) -> Unitary {
        Unitary {
            m: self.m.mul(&rhs.m),
        }
    }

    /// Kronecker product of two single-spin unitaries (left factor is spin I).
    pub fn kron(&self, rhs: &Unitary) -> Unitary {
        Unitary {
            m: self.m.kron(&rhs.m),
        }
    }

    pub fn max_abs_diff(&self, rhs: &Unitary) -> f64 {
        self.m.max_abs_diff(&rhs.m)
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.m.unitarity_residual()
    }
}

/// `sigma_x` as a (unitary, Hermitian) matrix.
pub fn sigma_x() -> Unitary {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Unitary::from_cmatrix_unchecked(CMatrix::from_rows(2, vec![o, one, one, o]))
}

/// `sigma_y` as a (unitary, Hermitian) matrix.
pub fn sigma_y() -> Unitary {
    let o = C64::new(0.0, 0.0);
    Unitary::from_cmatrix_unchecked(CMatrix::from_rows(
        2,
        vec![o, C64::new(0.0, -1.0), C64::new(0.0, 1.0), o],
    ))
}

/// `sigma_z` as a (unitary, Hermitian) matrix.
pub fn sigma_z() -> Unitary {
    let o = C64::new(0.0, 0.0);
    Unitary::from_cmatrix_unchecked(CMatrix::from_rows(
        2,
        vec![C64::new(1.0, 0.0), o, o, C64::new(-1.0, 0.0)],
    ))
}

/// Spin-half operator `Ix = sigma_x / 2`.
pub fn spin_x() -> CMatrix {
    sigma_x().matrix().scale(C64::new(0.5, 0.0))
}

/// Spin-half operator `Iy = sigma_y / 2`.
pub fn spin_y() -> CMatrix {
    sigma_y().matrix().scale(C64::new(0.5, 0.0))
}

/// Spin-half operator `Iz = sigma_z / 2`.
pub fn spin_z() -> CMatrix {
    sigma_z().matrix().scale(C64::new(0.5, 0.0))
}

/// Resonant pulse propagator
/// `exp[-i theta (Ix cos phi + Iy sin phi)]
///  = cos(theta/2) E - i sin(theta/2)(sigma_x cos phi + sigma_y sin phi)`.
///
/// A negative `theta` is a rotation by `|theta|` about the inverted axis.
pub fn rot(theta: f64, phi: f64) -> Result<Unitary> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let (sin_phi, cos_phi) = phi.sin_cos();
    let diag = C64::new(c, 0.0);
    Ok(Unitary::from_cmatrix_unchecked(CMatrix::from_rows(
        2,
        vec![
            diag,
            C64::new(-s * sin_phi, -s * cos_phi),
            C64::new(s * sin_phi, -s * cos_phi),
            diag,
        ],
    )))
}

/// Z-axis rotation `exp(-i theta Iz) = diag(e^{-i theta/2}, e^{i theta/2})`.
pub fn rot_z(theta: f64) -> Unitary {
    Unitary::from_phases(&[theta / 2.0, -theta / 2.0])
}

/// Product of a propagator sequence with the FIRST element applied first in
/// time: `compose([U1, U2, ..., Un]) = Un * ... * U2 * U1`.
pub fn compose(seq: &[Unitary]) -> Result<Unitary> {
    let first = seq.first().ok_or(Error::EmptySequence)?;
    let dim = first.dim();
    for u in seq {
        if u.dim() != dim {
            return Err(Error::DimensionMismatch(dim, u.dim()));
        }
    }
    let mut acc = first.clone();
    for u in &seq[1..] {
        acc = u.mul(&acc);
    }
    Ok(acc)
}

/// Propagator fidelity `F = |Tr(V U†)| / dim`, invariant under a global
/// phase of either argument. Clamped to `[0, 1]` against rounding.
pub fn fidelity(v: &Unitary, u: &Unitary) -> Result<f64> {
    if v.dim() != u.dim() {
        return Err(Error::DimensionMismatch(v.dim(), u.dim()));
    }
    let overlap = v.matrix().mul(&u.matrix().adjoint()).trace();
    Ok((overlap.norm() / v.dim() as f64).min(1.0))
}

/// Global-phase-invariant distance: `max_ij |e^{i alpha} V_ij - U_ij|` with
/// the phase `alpha` read off the largest-magnitude entry of `V U†`.
/// Zero iff `V` equals `U` up to global phase.
pub fn phase_distance(v: &Unitary, u: &Unitary) -> Result<f64> {
    if v.dim() != u.dim() {
        return Err(Error::DimensionMismatch(v.dim(), u.dim()));
    }
    let overlap = v.matrix().mul(&u.matrix().adjoint());
    let mut largest = C64::new(0.0, 0.0);
    for z in overlap.entries() {
        if z.norm() > largest.norm() {
            largest = *z;
        }
    }
    // For unitary arguments the largest entry of V U† has magnitude >= 1/dim.
    let phase = largest / largest.norm();
    let aligned = v.matrix().scale(phase.conj());
    Ok(aligned.max_abs_diff(u.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn det2(u: &Unitary) -> C64 {
        u.entry(0, 0) * u.entry(1, 1) - u.entry(0, 1) * u.entry(1, 0)
    }

    #[test]
    fn rot_pi_about_x_matches_closed_form() {
        let u = rot(PI, 0.0).unwrap();
        let expect = [
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 0.0),
        ];
        for (i, want) in expect.iter().enumerate() {
            assert!((u.entry(i / 2, i % 2) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn rot_zero_angle_is_identity() {
        for phi in [0.0, 0.7, -2.0, PI] {
            let u = rot(0.0, phi).unwrap();
            assert!(u.max_abs_diff(&Unitary::identity(2)) < 1e-15);
        }
    }

    #[test]
    fn rot_quarter_turn_about_y() {
        // cos(pi/4) E - i sin(pi/4) sigma_y = (1/sqrt2) [[1, -1], [1, 1]]
        let u = rot(PI / 2.0, PI / 2.0).unwrap();
        let r = 0.5_f64.sqrt();
        let expect = [r, -r, r, r];
        for (i, want) in expect.iter().enumerate() {
            assert!((u.entry(i / 2, i % 2) - C64::new(*want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rot_rejects_non_finite() {
        assert!(rot(f64::NAN, 0.0).is_err());
        assert!(rot(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn compose_collinear_rotations_add() {
        let half = rot(PI / 2.0, 0.0).unwrap();
        let full = compose(&[half.clone(), half]).unwrap();
        assert!(full.max_abs_diff(&rot(PI, 0.0).unwrap()) < 1e-15);
    }

    #[test]
    fn compose_single_element_is_identity_op() {
        let u = rot(1.0, 0.3).unwrap();
        assert_eq!(
            compose(std::slice::from_ref(&u)).unwrap().max_abs_diff(&u),
            0.0
        );
    }

    #[test]
    fn compose_sandwich_gives_z_rotation() {
        // 90_y  theta_x  90_{-y} composes to exp(-i theta Iz).
        for theta in [0.3, PI / 2.0, PI, 4.5] {
            let seq = [
                rot(PI / 2.0, PI / 2.0).unwrap(),
                rot(theta, 0.0).unwrap(),
                rot(PI / 2.0, -PI / 2.0).unwrap(),
            ];
            let u = compose(&seq).unwrap();
            assert!(u.max_abs_diff(&rot_z(theta)) < 1e-15);
        }
    }

    #[test]
    fn compose_rejects_empty_and_mismatched() {
        assert!(matches!(compose(&[]), Err(Error::EmptySequence)));
        let a = rot(1.0, 0.0).unwrap();
        let b = Unitary::identity(4);
        assert!(matches!(
            compose(&[a, b]),
            Err(Error::DimensionMismatch(2, 4))
        ));
    }

    #[test]
    fn fidelity_of_self_is_one() {
        let u = rot(1.234, 0.567).unwrap();
        let f = fidelity(&u, &u).unwrap();
        assert!(1.0 - f <= 2e-16);
        let e = Unitary::identity(4);
        assert_eq!(fidelity(&e, &e).unwrap(), 1.0);
    }

    #[test]
    fn fidelity_of_mis_set_pi_pulse_follows_series() {
        // 1 - F = eps^2 pi^2 / 8 + O(eps^4)
        for eps in [1e-3, 3e-3, 1e-2] {
            let v = rot(PI * (1.0 + eps), 0.0).unwrap();
            let u = rot(PI, 0.0).unwrap();
            let f = fidelity(&v, &u).unwrap();
            assert!(((1.0 - f) - eps * eps * PI * PI / 8.0).abs() <= 5e-7);
        }
    }

    #[test]
    fn fidelity_of_identity_vs_pi_pulse_is_zero() {
        let f = fidelity(&Unitary::identity(2), &rot(PI, 0.0).unwrap()).unwrap();
        assert!(f < 1e-15);
    }

    #[test]
    fn fidelity_rejects_dimension_mismatch() {
        assert!(fidelity(&Unitary::identity(2), &Unitary::identity(4)).is_err());
    }

    #[test]
    fn fidelity_is_phase_invariant_in_both_arguments() {
        let u = rot(0.9, 1.1).unwrap();
        let v = rot(1.0, 1.1).unwrap();
        let f0 = fidelity(&v, &u).unwrap();
        for alpha in [0.4, -1.9, PI] {
            let phase = C64::from_polar(1.0, alpha);
            let v2 = Unitary::from_cmatrix_unchecked(v.matrix().scale(phase));
            let u2 = Unitary::from_cmatrix_unchecked(u.matrix().scale(phase));
            assert!((fidelity(&v2, &u).unwrap() - f0).abs() < 1e-15);
            assert!((fidelity(&v, &u2).unwrap() - f0).abs() < 1e-15);
        }
    }

    #[test]
    fn phase_distance_ignores_global_sign() {
        let u = rot(2.1, 0.4).unwrap();
        let minus = Unitary::from_cmatrix_unchecked(u.matrix().scale(C64::new(-1.0, 0.0)));
        assert!(phase_distance(&minus, &u).unwrap() < 1e-15);
    }

    #[test]
    fn phase_distance_of_opposite_phase_pi_pulses_is_zero() {
        // rot(pi, pi) = -rot(pi, 0)
        let a = rot(PI, PI).unwrap();
        let b = rot(PI, 0.0).unwrap();
        assert!(phase_distance(&a, &b).unwrap() < 1e-15);
    }

    #[test]
    fn phase_distance_separates_distinct_rotations() {
        let d = phase_distance(&Unitary::identity(2), &rot(PI, 0.0).unwrap()).unwrap();
        assert!(d > 0.5);
    }

    #[test]
    fn phase_distance_rejects_dimension_mismatch() {
        assert!(phase_distance(&Unitary::identity(2), &Unitary::identity(4)).is_err());
    }

    #[test]
    fn try_new_enforces_unitarity() {
        let ok = Unitary::try_new(
            2,
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
            ],
        );
        assert!(ok.is_ok());
        let bad = Unitary::try_new(
            2,
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.5, 0.0),
            ],
        );
        assert!(matches!(bad, Err(Error::NotUnitary(_))));
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let e2 = Unitary::identity(2);
        assert!(e2.kron(&e2).max_abs_diff(&Unitary::identity(4)) < 1e-15);
    }

    proptest! {
        #[test]
        fn rot_is_special_unitary(theta in -4.0 * PI..4.0 * PI, phi in -PI..PI) {
            let u = rot(theta, phi).unwrap();
            prop_assert!(u.unitarity_residual() <= 1e-12);
            prop_assert!((det2(&u) - C64::new(1.0, 0.0)).norm() <= 1e-12);
        }

        #[test]
        fn same_axis_rotations_add(
            theta1 in -2.0 * PI..2.0 * PI,
            theta2 in -2.0 * PI..2.0 * PI,
            phi in -PI..PI,
        ) {
            let lhs = rot(theta2, phi).unwrap().mul(&rot(theta1, phi).unwrap());
            let rhs = rot(theta1 + theta2, phi).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }

        #[test]
        fn unit_fidelity_iff_zero_phase_distance(
            theta in 0.1..2.0 * PI,
            phi in -PI..PI,
            alpha in -PI..PI,
            theta2 in 0.1..2.0 * PI,
            phi2 in -PI..PI,
        ) {
            let u = rot(theta, phi).unwrap();
            // A pure global phase keeps F = 1 and phase distance ~ 0.
            let v = Unitary::from_cmatrix_unchecked(
                u.matrix().scale(C64::from_polar(1.0, alpha)),
            );
            prop_assert!(1.0 - fidelity(&v, &u).unwrap() <= 1e-12);
            prop_assert!(phase_distance(&v, &u).unwrap() <= 1e-10);
            // An independent rotation agrees on both sides of the iff.
            let w = rot(theta2, phi2).unwrap();
            let near_unit = 1.0 - fidelity(&w, &u).unwrap() <= 1e-12;
            let near_zero = phase_distance(&w, &u).unwrap() <= 1e-10;
            prop_assert_eq!(near_unit, near_zero);
        }
    }
}
