//! Two-level rotations, their embedding into K dimensions, and the effect of
//! unitary maps on amplitude vectors and their dispersion.
//!
//! The generating blocks are 2x2 matrices with a = cos(tau) + i sin(tau)
//! cos(theta) and b = sin(tau) sin(theta) e^{-i phi}, arranged as
//! [[a, b], [-conj(b), conj(a)]]. Any K-dimensional unitary of interest here
//! is a product of such blocks embedded at index pairs (i, j). The total
//! dispersion of an amplitude vector is invariant under all of them; only
//! the split across components moves.

use num_complex::Complex64;

use crate::dist::{LogFactorialTable, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::repvec::{
    cross_amplitude_moment, dispersion_total, expectation_eta_with_table, frequency_moment,
    DispersionReport, PhaseVector, RepKind, RepVector,
};

/// Angles of a two-level rotation, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation2Params {
    pub tau: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Rotation2Params {
    pub fn new(tau: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(tau.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(Error::domain("rotation angles must be finite"));
        }
        Ok(Self { tau, theta, phi })
    }

    /// The identity rotation (tau = 0 makes theta and phi irrelevant).
    pub fn identity() -> Self {
        Self {
            tau: 0.0,
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn from_degrees(tau: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(tau.to_radians(), theta.to_radians(), phi.to_radians())
    }
}

/// A 2x2 unitary stored by its defining pair (a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    a: Complex64,
    b: Complex64,
}

impl Unitary2 {
    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Row-major entries [[a, b], [-conj(b), conj(a)]].
    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [-self.b.conj(), self.a.conj()]]
    }
}

/// Builds the two-level rotation for the given angles.
pub fn rotation2(params: Rotation2Params) -> Unitary2 {
    let (sin_tau, cos_tau) = params.tau.sin_cos();
    Unitary2 {
        a: Complex64::new(cos_tau, sin_tau * params.theta.cos()),
        b: Complex64::from_polar(sin_tau * params.theta.sin(), -params.phi),
    }
}

/// A two-level rotation placed at component pair (row, col) of a
/// `dim`-dimensional identity. Indices are zero-based with row < col.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedRotation {
    dim: usize,
    row: usize,
    col: usize,
    params: Rotation2Params,
}

impl EmbeddedRotation {
    pub fn new(dim: usize, row: usize, col: usize, params: Rotation2Params) -> Result<Self> {
        if dim < 2 {
            return Err(Error::domain("embedding dimension must be at least 2"));
        }
        if row >= col || col >= dim {
            return Err(Error::domain(format!(
                "component pair ({row}, {col}) is not ordered within dimension {dim}"
            )));
        }
        Ok(Self {
            dim,
            row,
            col,
            params,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.row, self.col)
    }

    pub fn params(&self) -> Rotation2Params {
        self.params
    }
}

/// A K-dimensional unitary, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryK {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryK {
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.dim && col < self.dim, "index out of range");
        self.entries[row * self.dim + col]
    }

    /// Row-major entry slice, length dim^2.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Matrix product self * rhs.
    pub fn mul(&self, rhs: &UnitaryK) -> Result<UnitaryK> {
        if self.dim != rhs.dim {
            return Err(Error::dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.entries[r * d + k] * rhs.entries[k * d + c];
                }
                entries[r * d + c] = acc;
            }
        }
        Ok(UnitaryK { dim: d, entries })
    }

    /// Largest elementwise deviation of U * U^dagger from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.entries[r * d + k] * self.entries[c * d + k].conj();
                }
                let target = if r == c {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// Expands a two-level rotation to its full-dimensional matrix: the identity
/// with the 2x2 block written into rows and columns (row, col).
pub fn embed(er: &EmbeddedRotation) -> UnitaryK {
    let block = rotation2(er.params);
    let mut u = UnitaryK::identity(er.dim);
    let d = er.dim;
    let (i, j) = (er.row, er.col);
    u.entries[i * d + i] = block.a;
    u.entries[i * d + j] = block.b;
    u.entries[j * d + i] = -block.b.conj();
    u.entries[j * d + j] = block.a.conj();
    u
}

/// Composes embedded rotations into one unitary. Factors act in list order:
/// the result is F_n * ... * F_2 * F_1, so the first listed factor is the
/// first applied to a vector. An empty list yields the identity.
pub fn compose(dim: usize, factors: &[EmbeddedRotation]) -> Result<UnitaryK> {
    if dim < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    let mut acc = UnitaryK::identity(dim);
    for f in factors {
        if f.dim() != dim {
            return Err(Error::dimension(format!(
                "factor on {} components inside a dimension-{} product",
                f.dim(),
                dim
            )));
        }
        acc = embed(f).mul(&acc)?;
    }
    Ok(acc)
}

/// Applies a unitary to an amplitude vector. Only the amplitude form
/// transforms this way; the real-valued forms are rejected.
pub fn apply(u: &UnitaryK, v: &RepVector) -> Result<RepVector> {
    if v.kind() != RepKind::Amplitude {
        return Err(Error::domain(format!(
            "unitaries act on amplitude vectors, not {} vectors",
            v.kind().label()
        )));
    }
    if u.dim() != v.k() {
        return Err(Error::dimension(format!(
            "{}x{} matrix applied to a {}-component vector",
            u.dim(),
            u.dim(),
            v.k()
        )));
    }
    let d = u.dim();
    let components = (0..d)
        .map(|r| {
            let mut acc = Complex64::ZERO;
            for c in 0..d {
                acc += u.entries[r * d + c] * v.components()[c];
            }
            acc
        })
        .collect();
    Ok(RepVector::new_unchecked(RepKind::Amplitude, components))
}

/// Dispersion of the transformed vector psi = U eta, component by component.
///
/// Each component uses D_k^2 = E(|psi_k|^2) - |E(psi_k)|^2, with E(psi_k)
/// from linearity and E(|psi_k|^2) from the first moments E(L_j/N) and the
/// joint amplitude moments E(sqrt(L_j L_l))/N. The first moments are
/// evaluated as binomial sums rather than taken as p_j so that the identity
/// transformation reproduces `dispersion_total` down to float identity.
pub fn dispersion_transformed(
    n: u64,
    dist: &OutcomeDistribution,
    phases: &PhaseVector,
    u: &UnitaryK,
) -> Result<DispersionReport> {
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    let k = dist.k();
    if phases.len() != k {
        return Err(Error::dimension(format!(
            "{} phases for {} outcomes",
            phases.len(),
            k
        )));
    }
    if u.dim() != k {
        return Err(Error::dimension(format!(
            "{}x{} matrix for {} outcomes",
            u.dim(),
            u.dim(),
            k
        )));
    }
    let table = LogFactorialTable::new(n as usize);
    let probs = dist.probs();
    let phs = phases.phases();
    let m1: Vec<f64> = probs
        .iter()
        .map(|&p| frequency_moment(&table, n, p))
        .collect();
    let ebar: Vec<Complex64> = probs
        .iter()
        .zip(phs)
        .map(|(&p, &phi)| expectation_eta_with_table(&table, n, p, phi))
        .collect();
    // Joint moments E(eta_j conj(eta_l)) for j < l; the (l, j) term is the
    // conjugate and is folded into the factor 2 below.
    let mut joint = vec![Complex64::ZERO; k * k];
    for j in 0..k {
        for l in (j + 1)..k {
            let c = cross_amplitude_moment(&table, n, probs, j, l)?;
            joint[j * k + l] = Complex64::from_polar(c, phs[j] - phs[l]);
        }
    }
    let per_component = (0..k)
        .map(|row| {
            let mut second = 0.0;
            for j in 0..k {
                second += u.entry(row, j).norm_sqr() * m1[j];
            }
            for j in 0..k {
                for l in (j + 1)..k {
                    let w = u.entry(row, j) * u.entry(row, l).conj() * joint[j * k + l];
                    second += 2.0 * w.re;
                }
            }
            let mut mean = Complex64::ZERO;
            for j in 0..k {
                mean += u.entry(row, j) * ebar[j];
            }
            second - mean.norm_sqr()
        })
        .collect();
    Ok(DispersionReport::from_components(n, per_component))
}

/// Dispersion sum of the two components touched by a two-level rotation,
/// evaluated from the expanded expectation form.
///
/// The expansion keeps the cross terms that cancel analytically, so this is
/// an independent path to D_j'^2 + D_l'^2; no joint count moment enters. The
/// result must agree with the direct transformed evaluation and, by the
/// conservation identity, with D_j^2 + D_l^2 of the untransformed vector.
pub fn pair_dispersion_sum_expanded(
    rot: &Unitary2,
    n: u64,
    p_j: f64,
    p_l: f64,
    phi_j: f64,
    phi_l: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    for (name, p) in [("p_j", p_j), ("p_l", p_l)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("{name}={p} outside [0, 1]")));
        }
    }
    if p_j + p_l > 1.0 + 1e-12 {
        return Err(Error::domain(format!(
            "pair probabilities sum to {}, more than 1",
            p_j + p_l
        )));
    }
    let table = LogFactorialTable::new(n as usize);
    let m = frequency_moment(&table, n, p_j) + frequency_moment(&table, n, p_l);
    let ej = expectation_eta_with_table(&table, n, p_j, phi_j);
    let el = expectation_eta_with_table(&table, n, p_l, phi_l);
    let (a2, b2) = (rot.a().norm_sqr(), rot.b().norm_sqr());
    let cross = rot.a() * rot.b().conj() * ej * el.conj();
    let t1 = m;
    let t2 = -(a2 * ej.norm_sqr() + b2 * el.norm_sqr());
    let t3 = -2.0 * cross.re;
    let t4 = -(b2 * ej.norm_sqr() + a2 * el.norm_sqr());
    let t5 = 2.0 * cross.re;
    Ok(t1 + t2 + t3 + t4 + t5)
}

/// Total dispersion before and after a unitary, with their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationCheck {
    pub total_before: f64,
    pub total_after: f64,
    pub abs_difference: f64,
}

/// Compares the total dispersion of the raw and the transformed vector. The
/// two totals agree analytically for every unitary; the reported difference
/// is pure floating-point summation error.
pub fn conservation_check(
    n: u64,
    dist: &OutcomeDistribution,
    phases: &PhaseVector,
    u: &UnitaryK,
) -> Result<ConservationCheck> {
    let before = dispersion_total(n, dist, phases)?;
    let after = dispersion_transformed(n, dist, phases, u)?;
    Ok(ConservationCheck {
        total_before: before.total,
        total_after: after.total,
        abs_difference: (after.total - before.total).abs(),
    })
}
