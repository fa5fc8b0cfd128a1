//! Finite-bit encodings of an observed frequency and the probability that
//! their leading bits are trustworthy.
//!
//! A result written with S bits pins its value to within 2^-(S+1). The
//! probability that the encoded frequency lands that close to the encoded
//! limit is an exact binomial sum; it depends strongly on which of three
//! encodings carries the value:
//!
//! * `Frequency`: the frequency nu itself;
//! * `Amplitude`: sqrt(nu), the natural scale of amplitude vectors;
//! * `Arcsine`: (1/pi) asin(2 nu - 1) + 1/2, the variance-stabilized scale
//!   whose statistical width is independent of p.

use rayon::prelude::*;

use crate::dist::{self, LogFactorialTable};
use crate::error::{Error, Result};

/// Which transformation carries the observed frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    Frequency,
    Amplitude,
    Arcsine,
}

impl EncodingKind {
    pub const ALL: [EncodingKind; 3] = [
        EncodingKind::Frequency,
        EncodingKind::Amplitude,
        EncodingKind::Arcsine,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EncodingKind::Frequency => "frequency",
            EncodingKind::Amplitude => "amplitude",
            EncodingKind::Arcsine => "arcsine",
        }
    }
}

impl std::fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for EncodingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "frequency" => Ok(EncodingKind::Frequency),
            "amplitude" => Ok(EncodingKind::Amplitude),
            "arcsine" => Ok(EncodingKind::Arcsine),
            other => Err(Error::domain(format!(
                "unknown encoding kind {other:?}; expected frequency, amplitude or arcsine"
            ))),
        }
    }
}

/// Number of leading bits whose correctness is being assessed. S >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitBudget(u32);

impl BitBudget {
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 {
            return Err(Error::domain("bit budget must be at least 1"));
        }
        Ok(BitBudget(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Half the spacing of S-bit values: 2^-(S+1).
    pub fn radius(self) -> f64 {
        2.0f64.powi(-(self.0 as i32 + 1))
    }
}

/// Scale constant of the arcsine encoding, 1/pi.
pub fn arcsine_scale_constant() -> f64 {
    std::f64::consts::FRAC_1_PI
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "{name} is {x}, expected a value in [0, 1]"
        )));
    }
    Ok(())
}

fn map_value(kind: EncodingKind, nu: f64) -> f64 {
    match kind {
        EncodingKind::Frequency => nu,
        EncodingKind::Amplitude => nu.sqrt(),
        EncodingKind::Arcsine => {
            // 2 nu - 1 can spill past +-1 by rounding; asin would return NaN.
            let arg = (2.0 * nu - 1.0).clamp(-1.0, 1.0);
            arcsine_scale_constant() * arg.asin() + 0.5
        }
    }
}

/// Encodes an observed frequency nu in [0, 1].
pub fn encode_value(kind: EncodingKind, nu: f64) -> Result<f64> {
    check_unit_interval("nu", nu)?;
    Ok(map_value(kind, nu))
}

/// Encodes the limiting probability p; the same map as `encode_value`,
/// evaluated at the value the frequency converges to.
pub fn encode_limit(kind: EncodingKind, p: f64) -> Result<f64> {
    check_unit_interval("p", p)?;
    Ok(map_value(kind, p))
}

/// Statistical spread sqrt(p (1 - p) / N) of the raw frequency.
pub fn sigma_nu(p: f64, n: u64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "p={p} outside [0, 1]");
    assert!(n > 0, "trial count must be positive");
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Bits conveyed by the moduli of a K-outcome frequency record: (K - 1) * S.
pub fn info_content(k: usize, bits: BitBudget) -> u64 {
    assert!(k >= 2, "outcome count must be at least 2");
    (k as u64 - 1) * bits.bits() as u64
}

pub(crate) fn prob_bits_with_table(
    table: &LogFactorialTable,
    kind: EncodingKind,
    n: u64,
    p: f64,
    bits: BitBudget,
) -> Result<f64> {
    let target = map_value(kind, p);
    let radius = bits.radius();
    dist::binomial_sum(table, n, p, |l| {
        (map_value(kind, l as f64 / n as f64) - target).abs() < radius
    })
}

/// Probability that the first S bits of the encoded frequency agree with the
/// encoded limit: the binomial mass of counts l whose encoded value lies
/// strictly within 2^-(S+1) of the encoded p.
pub fn prob_bits_correct(kind: EncodingKind, n: u64, p: f64, bits: BitBudget) -> Result<f64> {
    check_unit_interval("p", p)?;
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    let table = LogFactorialTable::new(n as usize);
    prob_bits_with_table(&table, kind, n, p, bits)
}

/// `prob_bits_correct` evaluated over a grid of p values.
#[derive(Debug, Clone)]
pub struct ProbabilityCurve {
    grid: Vec<f64>,
    values: Vec<f64>,
    meta: CurveMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveMeta {
    pub kind: EncodingKind,
    pub trials: u64,
    pub bits: u32,
}

impl ProbabilityCurve {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn meta(&self) -> CurveMeta {
        self.meta
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// (p, value) at the smallest curve value.
    pub fn min_point(&self) -> (f64, f64) {
        self.index_of_min_max().0
    }

    /// (p, value) at the largest curve value.
    pub fn max_point(&self) -> (f64, f64) {
        self.index_of_min_max().1
    }

    fn index_of_min_max(&self) -> ((f64, f64), (f64, f64)) {
        assert!(!self.grid.is_empty());
        let mut min = (self.grid[0], self.values[0]);
        let mut max = min;
        for (&p, &v) in self.grid.iter().zip(&self.values) {
            if v < min.1 {
                min = (p, v);
            }
            if v > max.1 {
                max = (p, v);
            }
        }
        (min, max)
    }
}

/// Default grid of interior p values: k / (points + 1) for k = 1..=points.
pub fn default_grid(points: usize) -> Vec<f64> {
    let denom = (points + 1) as f64;
    (1..=points).map(|k| k as f64 / denom).collect()
}

/// Evaluates `prob_bits_correct` over `grid`, concurrently across points.
///
/// Grid values must be strictly increasing and lie in the open interval
/// (0, 1); the degenerate endpoints are handled by callers that need them.
pub fn prob_curve(
    kind: EncodingKind,
    n: u64,
    bits: BitBudget,
    grid: &[f64],
) -> Result<ProbabilityCurve> {
    if grid.is_empty() {
        return Err(Error::domain("probability grid must not be empty"));
    }
    for &p in grid {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::domain(format!(
                "grid value {p} outside the open interval (0, 1)"
            )));
        }
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("grid values must be strictly increasing"));
    }
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    let table = LogFactorialTable::new(n as usize);
    let values = grid
        .par_iter()
        .map(|&p| prob_bits_with_table(&table, kind, n, p, bits))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbabilityCurve {
        grid: grid.to_vec(),
        values,
        meta: CurveMeta {
            kind,
            trials: n,
            bits: bits.bits(),
        },
    })
}
