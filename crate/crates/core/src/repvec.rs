//! Representation vectors built from observed trial frequencies and the
//! dispersion of the amplitude form.
//!
//! Three two-component real vectors track a binary experiment: the frequency
//! pair (nu, 1 - nu), its arcsine-encoded counterpart, and the amplitude pair
//! (sqrt(nu), sqrt(1 - nu)) which always ends on the unit quarter circle. The
//! amplitude form generalizes to K outcomes as the complex unit vector with
//! components sqrt(L_j / N) e^{i phi_j}; its scatter around the expectation
//! vector shrinks like (K - 1) / (4 N) regardless of the outcome
//! probabilities, which is what makes the amplitude scale the efficient one.

use num_complex::Complex64;

use crate::dist::{self, LogFactorialTable, OutcomeDistribution, TrialCounts};
use crate::encode::{encode_value, BitBudget, EncodingKind};
use crate::error::{Error, Result};

/// Which representation a vector carries. Mirrors `EncodingKind`: the
/// frequency and arcsine forms are real-valued pairs, the amplitude form is
/// the complex unit vector.
pub type RepKind = EncodingKind;

/// Per-component phases of an amplitude vector, stored reduced mod 2 pi.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    phases: Vec<f64>,
}

impl PhaseVector {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::domain("phases must be finite"));
        }
        let phases = phases
            .into_iter()
            .map(|p| p.rem_euclid(std::f64::consts::TAU))
            .collect();
        Ok(Self { phases })
    }

    /// All-zero phases for `k` components.
    pub fn zeros(k: usize) -> Self {
        Self {
            phases: vec![0.0; k],
        }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn is_zero(&self) -> bool {
        self.phases.iter().all(|&p| p == 0.0)
    }
}

/// A representation vector over K outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct RepVector {
    kind: RepKind,
    components: Vec<Complex64>,
}

impl RepVector {
    /// Amplitude vector from explicit complex components; the norm must be 1
    /// within 1e-12, as produced by count data or a unitary image of it.
    pub fn from_amplitudes(components: Vec<Complex64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::domain("a representation vector needs K >= 2"));
        }
        let norm = components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "amplitude vector norm is {norm}, expected 1"
            )));
        }
        Ok(Self {
            kind: RepKind::Amplitude,
            components,
        })
    }

    pub(crate) fn new_unchecked(kind: RepKind, components: Vec<Complex64>) -> Self {
        Self { kind, components }
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Builds the representation vector for observed counts.
///
/// Frequency and arcsine vectors are defined for K = 2 and require zero
/// phases; the amplitude vector takes any K and one phase per component.
pub fn build_vector(
    kind: RepKind,
    counts: &TrialCounts,
    phases: &PhaseVector,
) -> Result<RepVector> {
    if phases.len() != counts.k() {
        return Err(Error::dimension(format!(
            "{} phases for {} components",
            phases.len(),
            counts.k()
        )));
    }
    let n = counts.total();
    match kind {
        RepKind::Amplitude => {
            if counts.k() < 2 {
                return Err(Error::domain("amplitude vector needs K >= 2"));
            }
            let components = counts
                .counts()
                .iter()
                .zip(phases.phases())
                .map(|(&l, &phi)| Complex64::from_polar((l as f64 / n as f64).sqrt(), phi))
                .collect();
            Ok(RepVector { kind, components })
        }
        RepKind::Frequency | RepKind::Arcsine => {
            if counts.k() != 2 {
                return Err(Error::domain(format!(
                    "{} vectors are defined for two outcomes, got {}",
                    kind.label(),
                    counts.k()
                )));
            }
            if !phases.is_zero() {
                return Err(Error::domain(format!(
                    "{} vectors are real-valued; phases must be zero",
                    kind.label()
                )));
            }
            let nu = counts.counts()[0] as f64 / n as f64;
            let first = match kind {
                RepKind::Frequency => nu,
                RepKind::Arcsine => encode_value(EncodingKind::Arcsine, nu)?,
                RepKind::Amplitude => unreachable!(),
            };
            Ok(RepVector {
                kind,
                components: vec![Complex64::new(first, 0.0), Complex64::new(1.0 - first, 0.0)],
            })
        }
    }
}

/// Length of the locus on which a two-outcome vector endpoint can lie: the
/// diagonal line of length sqrt(2) for the frequency and arcsine forms, the
/// quarter circle of length pi/2 for the amplitude form.
pub fn endpoint_locus_length(kind: RepKind) -> f64 {
    match kind {
        RepKind::Frequency | RepKind::Arcsine => std::f64::consts::SQRT_2,
        RepKind::Amplitude => std::f64::consts::FRAC_PI_2,
    }
}

fn endpoint_pair(kind: RepKind, nu: f64) -> (f64, f64) {
    match kind {
        RepKind::Frequency => (nu, 1.0 - nu),
        RepKind::Arcsine => {
            let chi = crate::encode::encode_value(EncodingKind::Arcsine, nu)
                .expect("nu from counts lies in [0, 1]");
            (chi, 1.0 - chi)
        }
        RepKind::Amplitude => (nu.sqrt(), (1.0 - nu).sqrt()),
    }
}

/// Probability that the observed vector endpoint lies within the S-bit
/// radius of the true endpoint, for a two-outcome experiment.
///
/// The radius is the fraction 2^-(S+1) of the endpoint locus length, and the
/// distance is the Euclidean distance in the plane.
pub fn endpoint_prob(kind: RepKind, n: u64, p: f64, bits: BitBudget) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    let table = LogFactorialTable::new(n as usize);
    endpoint_prob_with_table(&table, kind, n, p, bits)
}

pub(crate) fn endpoint_prob_with_table(
    table: &LogFactorialTable,
    kind: RepKind,
    n: u64,
    p: f64,
    bits: BitBudget,
) -> Result<f64> {
    let (tx, ty) = endpoint_pair(kind, p);
    let radius = endpoint_locus_length(kind) * bits.radius();
    dist::binomial_sum(table, n, p, |l| {
        let (x, y) = endpoint_pair(kind, l as f64 / n as f64);
        ((x - tx).powi(2) + (y - ty).powi(2)).sqrt() < radius
    })
}

pub(crate) fn amplitude_moment(table: &LogFactorialTable, n: u64, p: f64) -> f64 {
    let kernel = dist::binomial_expectation(table, n, p, |l| (l as f64 / n as f64).sqrt());
    kernel.expect("validated arguments")
}

pub(crate) fn frequency_moment(table: &LogFactorialTable, n: u64, p: f64) -> f64 {
    dist::binomial_expectation(table, n, p, |l| l as f64 / n as f64).expect("validated arguments")
}

/// Joint amplitude moment E(sqrt(L_j L_l)) / N for two distinct outcomes.
///
/// With two outcomes the counts are tied (L_l = N - L_j) and a single
/// binomial sum suffices; otherwise the pair is trinomial and the certified
/// tail cutoff bounds the skipped mass.
pub(crate) fn cross_amplitude_moment(
    table: &LogFactorialTable,
    n: u64,
    probs: &[f64],
    j: usize,
    l: usize,
) -> Result<f64> {
    debug_assert!(j != l && j < probs.len() && l < probs.len());
    if probs.len() == 2 {
        dist::binomial_expectation(table, n, probs[j], |a| {
            ((a as f64) * ((n - a) as f64)).sqrt() / n as f64
        })
    } else {
        dist::trinomial_expectation(
            table,
            n,
            probs[j],
            probs[l],
            |a, b| ((a as f64) * (b as f64)).sqrt() / n as f64,
            Some(dist::DEFAULT_TAIL_CUTOFF),
        )
    }
}

/// Expectation of the amplitude component sqrt(L/N) e^{i phi} at outcome
/// probability `p_j`: the phase factors out of the binomial sum.
pub fn expectation_eta(n: u64, p_j: f64, phi_j: f64) -> Complex64 {
    assert!(n > 0, "trial count must be positive");
    assert!((0.0..=1.0).contains(&p_j), "p_j={p_j} outside [0, 1]");
    let table = LogFactorialTable::new(n as usize);
    expectation_eta_with_table(&table, n, p_j, phi_j)
}

pub(crate) fn expectation_eta_with_table(
    table: &LogFactorialTable,
    n: u64,
    p_j: f64,
    phi_j: f64,
) -> Complex64 {
    Complex64::from_polar(amplitude_moment(table, n, p_j), phi_j)
}

/// Dispersion of one amplitude component: E(L/N) - |E(sqrt(L/N))|^2.
///
/// Phase-independent; both moments are computed as full binomial sums.
pub fn dispersion_component(n: u64, p_j: f64) -> f64 {
    assert!(n > 0, "trial count must be positive");
    assert!((0.0..=1.0).contains(&p_j), "p_j={p_j} outside [0, 1]");
    let table = LogFactorialTable::new(n as usize);
    dispersion_component_with_table(&table, n, p_j)
}

pub(crate) fn dispersion_component_with_table(table: &LogFactorialTable, n: u64, p_j: f64) -> f64 {
    let r = amplitude_moment(table, n, p_j);
    frequency_moment(table, n, p_j) - r * r
}

/// The same dispersion evaluated from its defining three-term sum
/// E(|eta - E(eta)|^2); kept as an independent evaluation path.
pub fn dispersion_component_expanded(n: u64, p_j: f64, phi_j: f64) -> f64 {
    assert!(n > 0, "trial count must be positive");
    assert!((0.0..=1.0).contains(&p_j), "p_j={p_j} outside [0, 1]");
    let table = LogFactorialTable::new(n as usize);
    let mean = expectation_eta_with_table(&table, n, p_j, phi_j);
    let mean_sq = mean.norm_sqr();
    dist::binomial_expectation(&table, n, p_j, |l| {
        let eta = Complex64::from_polar((l as f64 / n as f64).sqrt(), phi_j);
        l as f64 / n as f64 - 2.0 * (eta.conj() * mean).re + mean_sq
    })
    .expect("validated arguments")
}

/// Dispersion of an amplitude vector, per component and in total.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionReport {
    pub trials: u64,
    pub per_component: Vec<f64>,
    pub total: f64,
    pub n_scaled_total: f64,
}

impl DispersionReport {
    pub(crate) fn from_components(trials: u64, per_component: Vec<f64>) -> Self {
        let total: f64 = per_component.iter().sum();
        DispersionReport {
            trials,
            per_component,
            total,
            n_scaled_total: trials as f64 * total,
        }
    }
}

/// Total dispersion D^2 = sum_j D_j^2 of the K-outcome amplitude vector.
///
/// Phases are accepted for interface symmetry with the transformed case and
/// do not influence the result.
pub fn dispersion_total(
    n: u64,
    dist: &OutcomeDistribution,
    phases: &PhaseVector,
) -> Result<DispersionReport> {
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    if phases.len() != dist.k() {
        return Err(Error::dimension(format!(
            "{} phases for {} outcomes",
            phases.len(),
            dist.k()
        )));
    }
    let table = LogFactorialTable::new(n as usize);
    let per_component = dist
        .probs()
        .iter()
        .map(|&p| dispersion_component_with_table(&table, n, p))
        .collect();
    Ok(DispersionReport::from_components(n, per_component))
}

/// Large-N limit of the total dispersion: (K - 1) / (4 N).
pub fn asymptotic_dispersion(k: usize, n: u64) -> f64 {
    assert!(k >= 2, "outcome count must be at least 2");
    assert!(n > 0, "trial count must be positive");
    (k as f64 - 1.0) / (4.0 * n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(bits: u32) -> BitBudget {
        BitBudget::new(bits).unwrap()
    }

    #[test]
    fn amplitude_vector_from_quarter_counts() {
        let counts = TrialCounts::pair(1000, 4000).unwrap();
        let v = build_vector(RepKind::Amplitude, &counts, &PhaseVector::zeros(2)).unwrap();
        assert_eq!(v.components()[0], Complex64::new(0.5, 0.0));
        assert!((v.components()[1].re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_vector_carries_phases() {
        let counts = TrialCounts::new(vec![2, 3, 5]).unwrap();
        let phases = PhaseVector::new(vec![0.0, 1.0, -1.0]).unwrap();
        let v = build_vector(RepKind::Amplitude, &counts, &phases).unwrap();
        assert_eq!(v.k(), 3);
        assert!((v.norm() - 1.0).abs() < 1e-12);
        assert!((v.components()[1].arg() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn real_vectors_reject_nonzero_phases_and_k() {
        let counts = TrialCounts::pair(3, 10).unwrap();
        let phases = PhaseVector::new(vec![0.1, 0.0]).unwrap();
        assert!(build_vector(RepKind::Frequency, &counts, &phases).is_err());
        let three = TrialCounts::new(vec![1, 2, 7]).unwrap();
        assert!(build_vector(RepKind::Arcsine, &three, &PhaseVector::zeros(3)).is_err());
    }

    #[test]
    fn frequency_vector_components_sum_to_one() {
        let counts = TrialCounts::pair(3, 10).unwrap();
        for kind in [RepKind::Frequency, RepKind::Arcsine] {
            let v = build_vector(kind, &counts, &PhaseVector::zeros(2)).unwrap();
            let total = v.components()[0].re + v.components()[1].re;
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_vector_reduces_modulo_tau() {
        let p = PhaseVector::new(vec![std::f64::consts::TAU, -1.0]).unwrap();
        assert!(p.phases()[0].abs() < 1e-15);
        assert!((p.phases()[1] - (std::f64::consts::TAU - 1.0)).abs() < 1e-15);
        assert!(PhaseVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn from_amplitudes_checks_norm() {
        assert!(RepVector::from_amplitudes(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.8, 0.0),
        ])
        .is_ok());
        assert!(RepVector::from_amplitudes(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.6, 0.0),
        ])
        .is_err());
    }

    #[test]
    fn locus_lengths() {
        assert_eq!(
            endpoint_locus_length(RepKind::Frequency),
            std::f64::consts::SQRT_2
        );
        assert_eq!(
            endpoint_locus_length(RepKind::Amplitude),
            std::f64::consts::FRAC_PI_2
        );
    }

    #[test]
    fn frequency_endpoint_matches_scalar_curve() {
        // The diagonal-line distance is sqrt(2) |nu - p| against a radius
        // scaled by the same sqrt(2), so the scalar curve is recovered.
        for &p in &[0.1, 0.37, 0.5, 0.92] {
            let vector = endpoint_prob(RepKind::Frequency, 400, p, s(6)).unwrap();
            let scalar =
                crate::encode::prob_bits_correct(EncodingKind::Frequency, 400, p, s(6)).unwrap();
            assert!((vector - scalar).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn arcsine_endpoint_matches_scalar_curve() {
        for &p in &[0.1, 0.37, 0.5, 0.92] {
            let vector = endpoint_prob(RepKind::Arcsine, 400, p, s(6)).unwrap();
            let scalar =
                crate::encode::prob_bits_correct(EncodingKind::Arcsine, 400, p, s(6)).unwrap();
            assert!((vector - scalar).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn expectation_eta_degenerate_endpoints() {
        assert_eq!(expectation_eta(500, 1.0, 0.0), Complex64::new(1.0, 0.0));
        assert_eq!(expectation_eta(500, 0.0, 0.7).norm_sqr(), 0.0);
    }

    #[test]
    fn expectation_eta_phase_factors_out() {
        let r0 = expectation_eta(200, 0.3, 0.0);
        let r1 = expectation_eta(200, 0.3, 2.0);
        assert!((r0.norm() - r1.norm()).abs() < 1e-15);
        assert!((r1.arg() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dispersion_component_near_asymptote() {
        // N * D_j^2 approaches (1 - p_j) / 4 for large N.
        let d = dispersion_component(4000, 0.5);
        assert!(
            (4000.0 * d - 0.125).abs() < 0.125 * 0.02,
            "got {}",
            4000.0 * d
        );
    }

    #[test]
    fn dispersion_component_degenerate_p() {
        assert_eq!(dispersion_component(100, 1.0), 0.0);
        assert_eq!(dispersion_component(100, 0.0), 0.0);
    }

    #[test]
    fn dispersion_small_n_sits_below_asymptote() {
        let scaled_small = 100.0 * dispersion_component(100, 0.05);
        let scaled_large = 4000.0 * dispersion_component(4000, 0.05);
        let asym = 0.95 / 4.0;
        assert!((scaled_large - asym).abs() < 0.01 * asym);
        assert!(
            (scaled_small - asym).abs() > 5.0 * (scaled_large - asym).abs(),
            "N=100 should deviate visibly: {scaled_small} vs asymptote {asym}"
        );
    }

    #[test]
    fn expanded_dispersion_matches_simplified() {
        for &(n, p, phi) in &[(50u64, 0.3, 0.0), (400, 0.5, 1.3), (400, 0.05, 2.0)] {
            let simple = dispersion_component(n, p);
            let expanded = dispersion_component_expanded(n, p, phi);
            assert!(
                (simple - expanded).abs() < 1e-12,
                "n={n} p={p} phi={phi}: {simple} vs {expanded}"
            );
        }
    }

    #[test]
    fn dispersion_total_sums_components() {
        let dist = OutcomeDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let report = dispersion_total(1000, &dist, &PhaseVector::zeros(3)).unwrap();
        assert_eq!(report.per_component.len(), 3);
        let direct: f64 = report.per_component.iter().sum();
        assert_eq!(report.total, direct);
        assert_eq!(report.n_scaled_total, 1000.0 * report.total);
        for (j, &p) in dist.probs().iter().enumerate() {
            assert_eq!(report.per_component[j], dispersion_component(1000, p));
        }
    }

    #[test]
    fn dispersion_total_checks_phase_length() {
        let dist = OutcomeDistribution::pair(0.5).unwrap();
        assert!(dispersion_total(100, &dist, &PhaseVector::zeros(3)).is_err());
    }

    #[test]
    fn dispersion_total_is_phase_independent_bitwise() {
        let dist = OutcomeDistribution::new(vec![0.25, 0.35, 0.4]).unwrap();
        let a = dispersion_total(500, &dist, &PhaseVector::zeros(3)).unwrap();
        let b = dispersion_total(
            500,
            &dist,
            &PhaseVector::new(vec![0.0, 1.0, std::f64::consts::FRAC_PI_3]).unwrap(),
        )
        .unwrap();
        for (x, y) in a.per_component.iter().zip(&b.per_component) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        assert_eq!(a.total.to_bits(), b.total.to_bits());
    }

    #[test]
    fn asymptote_values() {
        assert_eq!(asymptotic_dispersion(2, 4000), 1.0 / 16000.0);
        assert_eq!(asymptotic_dispersion(4, 100), 3.0 / 400.0);
    }

    #[test]
    fn total_dispersion_approaches_asymptote_uniformly() {
        for k in [2usize, 3, 4] {
            let dist = OutcomeDistribution::uniform(k).unwrap();
            let report = dispersion_total(4000, &dist, &PhaseVector::zeros(k)).unwrap();
            let asym = asymptotic_dispersion(k, 4000);
            let gap = (report.total - asym).abs() / asym;
            assert!(gap < 0.02, "K={k} relative gap {gap}");
        }
    }

    #[test]
    fn dispersion_decreases_with_n() {
        let mut prev = f64::INFINITY;
        for n in [100u64, 400, 1600, 6400] {
            let d = dispersion_component(n, 0.3);
            assert!(d < prev, "n={n}");
            prev = d;
        }
    }
}
