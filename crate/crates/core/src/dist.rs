//! Exact finite-N outcome statistics: binomial, trinomial and multinomial
//! weights for repeated K-outcome trials.
//!
//! Every weight is assembled in log space from one shared table of log
//! factorials and exponentiated once, so trial counts in the thousands stay
//! near machine precision without overflow. Terms whose log weight falls
//! below `ln(1e-300)` are returned as exact zeros.

use crate::error::{Error, Result};

/// Largest number of compositions `multinomial_enumerate` will visit.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// Default relative mass budget for certified tail truncation.
pub const DEFAULT_TAIL_CUTOFF: f64 = 1e-15;

/// Log weights below this threshold are treated as exact zeros.
const MIN_LOG_WEIGHT: f64 = -300.0 * std::f64::consts::LN_10;

/// Absolute slack allowed when probabilities must sum to one.
const PROB_SUM_TOL: f64 = 1e-12;

/// Probability distribution over the K >= 2 outcomes of a single trial.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates that every entry lies in [0, 1] and the entries sum to 1
    /// within 1e-12.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::domain(
                "an outcome distribution needs at least two entries",
            ));
        }
        for (j, &p) in probs.iter().enumerate() {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!(
                    "outcome probability {j} is {p}, expected a value in [0, 1]"
                )));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::domain(format!(
                "outcome probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Two-outcome distribution (p, 1 - p).
    pub fn pair(p: f64) -> Result<Self> {
        Self::new(vec![p, 1.0 - p])
    }

    /// Uniform distribution over `k` outcomes.
    pub fn uniform(k: usize) -> Result<Self> {
        Self::new(vec![1.0 / k as f64; k])
    }

    pub fn k(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, j: usize) -> f64 {
        self.probs[j]
    }
}

/// Observed outcome counts of N repeated trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialCounts {
    counts: Vec<u64>,
    total: u64,
}

impl TrialCounts {
    /// The total N is derived from the counts and must be positive.
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::domain("trial counts must not be empty"));
        }
        let total = counts.iter().try_fold(0u64, |acc, &c| {
            acc.checked_add(c)
                .ok_or_else(|| Error::domain("trial counts overflow u64"))
        })?;
        if total == 0 {
            return Err(Error::domain("total trial count must be positive"));
        }
        Ok(Self { counts, total })
    }

    /// Two-outcome counts (l, n - l).
    pub fn pair(l: u64, n: u64) -> Result<Self> {
        if l > n {
            return Err(Error::domain(format!("count {l} exceeds total {n}")));
        }
        Self::new(vec![l, n - l])
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }
}

/// Table of ln(n!) for n = 0..=n_max, built once per N.
///
/// The running sum is Kahan-compensated: each entry is within a few ulps of
/// the true value even at n around 1e4, which keeps pmf weights assembled from
/// differences of entries at relative error ~1e-12.
#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    pub fn new(n_max: usize) -> Self {
        let mut values = Vec::with_capacity(n_max + 1);
        values.push(0.0);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for n in 1..=n_max {
            let y = (n as f64).ln() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            values.push(sum);
        }
        Self { values }
    }

    pub fn n_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn ln_factorial(&self, n: u64) -> f64 {
        assert!(
            n <= self.n_max(),
            "ln_factorial({n}) exceeds table size {}",
            self.n_max()
        );
        self.values[n as usize]
    }

    /// ln C(n, k), grouped so that (n, k) and (n, n-k) evaluate bitwise
    /// identically.
    pub fn ln_choose(&self, n: u64, k: u64) -> f64 {
        assert!(k <= n, "ln_choose({n}, {k}) with k > n");
        self.ln_factorial(n) - (self.ln_factorial(k) + self.ln_factorial(n - k))
    }
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!(
            "{name} is {p}, expected a probability in [0, 1]"
        )));
    }
    Ok(())
}

fn check_table(table: &LogFactorialTable, n: u64) -> Result<()> {
    if n > table.n_max() {
        return Err(Error::domain(format!(
            "trial count {n} exceeds log-factorial table size {}",
            table.n_max()
        )));
    }
    Ok(())
}

/// Cached per-(N, p) pieces of the log-space binomial pmf.
///
/// The power term is accumulated before the combinatorial one so the pmf is
/// bitwise symmetric under (p, l) -> (1-p, N-l) whenever both probabilities
/// round-trip exactly.
pub(crate) struct BinomialKernel<'a> {
    table: &'a LogFactorialTable,
    n: u64,
    p: f64,
    ln_p: f64,
    ln_q: f64,
}

impl<'a> BinomialKernel<'a> {
    pub(crate) fn new(table: &'a LogFactorialTable, n: u64, p: f64) -> Self {
        debug_assert!(n <= table.n_max());
        debug_assert!((0.0..=1.0).contains(&p));
        Self {
            table,
            n,
            p,
            ln_p: p.ln(),
            ln_q: (1.0 - p).ln(),
        }
    }

    pub(crate) fn pmf(&self, l: u64) -> f64 {
        debug_assert!(l <= self.n);
        if self.p == 0.0 {
            return if l == 0 { 1.0 } else { 0.0 };
        }
        if self.p == 1.0 {
            return if l == self.n { 1.0 } else { 0.0 };
        }
        let powers = l as f64 * self.ln_p + (self.n - l) as f64 * self.ln_q;
        let lw = self.table.ln_choose(self.n, l) + powers;
        if lw < MIN_LOG_WEIGHT {
            0.0
        } else {
            lw.exp()
        }
    }

    /// Index of (one of) the heaviest terms.
    fn mode(&self) -> u64 {
        (((self.n + 1) as f64 * self.p) as u64).min(self.n)
    }

    /// Weighted sum of `f` restricted to a central window that carries at
    /// least 1 - tail of the total mass. The window grows outward from the
    /// mode, so the skipped mass is certified <= tail (up to summation
    /// roundoff of order 1e-11).
    fn expect_central(&self, tail: f64, mut f: impl FnMut(u64) -> f64) -> f64 {
        let mode = self.mode();
        let w0 = self.pmf(mode);
        let mut acc = w0 * f(mode);
        let mut mass = w0;
        let mut lo = mode;
        let mut hi = mode;
        let target = 1.0 - tail;
        while mass < target && (lo > 0 || hi < self.n) {
            let wl = if lo > 0 { self.pmf(lo - 1) } else { -1.0 };
            let wr = if hi < self.n { self.pmf(hi + 1) } else { -1.0 };
            if wl >= wr {
                lo -= 1;
                acc += wl * f(lo);
                mass += wl;
            } else {
                hi += 1;
                acc += wr * f(hi);
                mass += wr;
            }
        }
        acc
    }
}

/// Probability of exactly `l` successes in `n` trials at success probability
/// `p`.
pub fn binomial_pmf(table: &LogFactorialTable, n: u64, p: f64, l: u64) -> Result<f64> {
    check_table(table, n)?;
    check_prob("p", p)?;
    if l > n {
        return Err(Error::domain(format!("count {l} exceeds trial count {n}")));
    }
    Ok(BinomialKernel::new(table, n, p).pmf(l))
}

/// Sum of binomial weights over the counts selected by `accept`.
pub fn binomial_sum(
    table: &LogFactorialTable,
    n: u64,
    p: f64,
    accept: impl Fn(u64) -> bool,
) -> Result<f64> {
    check_table(table, n)?;
    check_prob("p", p)?;
    let kernel = BinomialKernel::new(table, n, p);
    let mut sum = 0.0;
    for l in 0..=n {
        if accept(l) {
            sum += kernel.pmf(l);
        }
    }
    Ok(sum)
}

/// Expectation of `f(l)` under the binomial distribution, summed over the
/// full count range.
pub fn binomial_expectation(
    table: &LogFactorialTable,
    n: u64,
    p: f64,
    f: impl Fn(u64) -> f64,
) -> Result<f64> {
    check_table(table, n)?;
    check_prob("p", p)?;
    let kernel = BinomialKernel::new(table, n, p);
    let mut sum = 0.0;
    for l in 0..=n {
        sum += kernel.pmf(l) * f(l);
    }
    Ok(sum)
}

fn check_trinomial_probs(p_a: f64, p_b: f64) -> Result<()> {
    check_prob("p_a", p_a)?;
    check_prob("p_b", p_b)?;
    if p_a + p_b > 1.0 + PROB_SUM_TOL {
        return Err(Error::domain(format!(
            "p_a + p_b = {} exceeds 1",
            p_a + p_b
        )));
    }
    Ok(())
}

/// Probability of observing (l_a, l_b, n - l_a - l_b) outcome counts in `n`
/// trials over three outcomes with probabilities (p_a, p_b, 1 - p_a - p_b).
pub fn trinomial_pmf(
    table: &LogFactorialTable,
    n: u64,
    p_a: f64,
    p_b: f64,
    l_a: u64,
    l_b: u64,
) -> Result<f64> {
    check_table(table, n)?;
    check_trinomial_probs(p_a, p_b)?;
    if l_a > n || l_b > n - l_a {
        return Err(Error::domain(format!(
            "counts ({l_a}, {l_b}) exceed trial count {n}"
        )));
    }
    // Rounding spill from the subtraction is clamped to an exact zero.
    let p_rem = (1.0 - p_a - p_b).max(0.0);
    let l_rem = n - l_a - l_b;
    let mut lw = table.ln_factorial(n)
        - (table.ln_factorial(l_a) + table.ln_factorial(l_b) + table.ln_factorial(l_rem));
    // A zero-probability outcome contributes factor 1 when its count is zero
    // and kills the weight otherwise.
    for (p, l) in [(p_a, l_a), (p_b, l_b), (p_rem, l_rem)] {
        if p == 0.0 {
            if l != 0 {
                return Ok(0.0);
            }
        } else {
            lw += l as f64 * p.ln();
        }
    }
    Ok(if lw < MIN_LOG_WEIGHT { 0.0 } else { lw.exp() })
}

/// Expectation of `f(l_a, l_b)` under the trinomial distribution.
///
/// With `tail_cutoff: None` the full O(N^2) grid is summed. With
/// `Some(tail)`, rows of the marginal in l_a and each conditional in l_b are
/// restricted to central windows holding at least 1 - tail of their mass, so
/// the total skipped mass is certified below 2 * tail * sup|f|.
pub fn trinomial_expectation(
    table: &LogFactorialTable,
    n: u64,
    p_a: f64,
    p_b: f64,
    f: impl Fn(u64, u64) -> f64,
    tail_cutoff: Option<f64>,
) -> Result<f64> {
    check_table(table, n)?;
    check_trinomial_probs(p_a, p_b)?;
    // Conditional success probability of outcome b once l_a trials are spent.
    let p_cond = if p_a >= 1.0 {
        0.0
    } else {
        (p_b / (1.0 - p_a)).min(1.0)
    };
    let row_kernel = BinomialKernel::new(table, n, p_a);
    match tail_cutoff {
        None => {
            let mut sum = 0.0;
            for l_a in 0..=n {
                let w_row = row_kernel.pmf(l_a);
                if w_row == 0.0 {
                    continue;
                }
                let cond = BinomialKernel::new(table, n - l_a, p_cond);
                let mut inner = 0.0;
                for l_b in 0..=(n - l_a) {
                    inner += cond.pmf(l_b) * f(l_a, l_b);
                }
                sum += w_row * inner;
            }
            Ok(sum)
        }
        Some(tail) => {
            if !(tail > 0.0 && tail < 1.0) {
                return Err(Error::domain(format!(
                    "tail cutoff {tail} must lie in (0, 1)"
                )));
            }
            let mut sum = 0.0;
            let mut mass = 0.0;
            let mode = row_kernel.mode();
            let mut lo = mode;
            let mut hi = mode;
            let row = |l_a: u64, w_row: f64| {
                let cond = BinomialKernel::new(table, n - l_a, p_cond);
                w_row * cond.expect_central(tail, |l_b| f(l_a, l_b))
            };
            let w0 = row_kernel.pmf(mode);
            sum += row(mode, w0);
            mass += w0;
            let target = 1.0 - tail;
            while mass < target && (lo > 0 || hi < n) {
                let wl = if lo > 0 { row_kernel.pmf(lo - 1) } else { -1.0 };
                let wr = if hi < n { row_kernel.pmf(hi + 1) } else { -1.0 };
                if wl >= wr {
                    lo -= 1;
                    sum += row(lo, wl);
                    mass += wl;
                } else {
                    hi += 1;
                    sum += row(hi, wr);
                    mass += wr;
                }
            }
            Ok(sum)
        }
    }
}

/// Number of weak compositions of `n` into `k` parts, C(n + k - 1, k - 1),
/// saturating at u128::MAX on overflow.
pub fn composition_count(n: u64, k: usize) -> u128 {
    if k == 0 {
        return 0;
    }
    let mut result: u128 = 1;
    // C(n + k - 1, k - 1) built multiplicatively; exact at every step.
    for i in 1..=(k - 1) as u128 {
        let factor = n as u128 + i;
        result = match result.checked_mul(factor) {
            Some(r) => r / i,
            None => return u128::MAX,
        };
    }
    result
}

/// Iterator over every composition of N trials into K outcome counts,
/// paired with its multinomial probability.
pub struct MultinomialEnumeration<'a> {
    table: &'a LogFactorialTable,
    dist: &'a OutcomeDistribution,
    n: u64,
    current: Option<Vec<u64>>,
}

impl MultinomialEnumeration<'_> {
    fn weight(&self, counts: &[u64]) -> f64 {
        let mut lw = self.table.ln_factorial(self.n);
        for &l in counts {
            lw -= self.table.ln_factorial(l);
        }
        for (&l, &p) in counts.iter().zip(self.dist.probs()) {
            if p == 0.0 {
                if l != 0 {
                    return 0.0;
                }
            } else {
                lw += l as f64 * p.ln();
            }
        }
        if lw < MIN_LOG_WEIGHT {
            0.0
        } else {
            lw.exp()
        }
    }
}

impl Iterator for MultinomialEnumeration<'_> {
    type Item = (TrialCounts, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let counts = self.current.as_ref()?.clone();
        let weight = self.weight(&counts);
        let current = self.current.as_mut().expect("checked above");
        let k = counts.len();
        // Advance to the next composition: move one unit right of the last
        // positive entry before the final slot, folding the tail back in.
        if counts[k - 1] == self.n {
            self.current = None;
        } else {
            let i = (0..k - 1)
                .rev()
                .find(|&i| current[i] > 0)
                .expect("a composition with final entry below N has an earlier positive entry");
            let tail = current[k - 1];
            current[k - 1] = 0;
            current[i] -= 1;
            current[i + 1] = tail + 1;
        }
        let counts = TrialCounts::new(counts).expect("compositions of N > 0 are valid counts");
        Some((counts, weight))
    }
}

/// Enumerates all (TrialCounts, probability) pairs for `n` trials over
/// `dist`, provided the composition count stays within `ENUMERATION_LIMIT`.
pub fn multinomial_enumerate<'a>(
    table: &'a LogFactorialTable,
    n: u64,
    dist: &'a OutcomeDistribution,
) -> Result<MultinomialEnumeration<'a>> {
    check_table(table, n)?;
    if n == 0 {
        return Err(Error::domain("trial count must be positive"));
    }
    let required = composition_count(n, dist.k());
    if required > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            required,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut first = vec![0u64; dist.k()];
    first[0] = n;
    Ok(MultinomialEnumeration {
        table,
        dist,
        n,
        current: Some(first),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_direct_log_factorial() {
        let table = LogFactorialTable::new(4000);
        assert_eq!(table.ln_factorial(0), 0.0);
        assert_eq!(table.ln_factorial(1), 0.0);
        // Successive differences reproduce ln n to high relative accuracy.
        for n in 2..=4000u64 {
            let diff = table.ln_factorial(n) - table.ln_factorial(n - 1);
            let expected = (n as f64).ln();
            assert!(
                (diff - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                "difference at n={n}: {diff} vs {expected}"
            );
            assert!(table.ln_factorial(n) > table.ln_factorial(n - 1));
        }
    }

    #[test]
    fn pmf_small_cases() {
        let table = LogFactorialTable::new(16);
        assert_eq!(binomial_pmf(&table, 2, 0.5, 1).unwrap(), 0.5);
        let p = binomial_pmf(&table, 10, 0.25, 0).unwrap();
        assert!((p - 0.75f64.powi(10)).abs() < 1e-15);
    }

    #[test]
    fn pmf_degenerate_probabilities() {
        let table = LogFactorialTable::new(10);
        assert_eq!(binomial_pmf(&table, 10, 0.0, 0).unwrap(), 1.0);
        assert_eq!(binomial_pmf(&table, 10, 0.0, 3).unwrap(), 0.0);
        assert_eq!(binomial_pmf(&table, 10, 1.0, 10).unwrap(), 1.0);
        assert_eq!(binomial_pmf(&table, 10, 1.0, 9).unwrap(), 0.0);
    }

    #[test]
    fn pmf_rejects_out_of_domain_arguments() {
        let table = LogFactorialTable::new(10);
        assert!(binomial_pmf(&table, 10, -0.1, 0).is_err());
        assert!(binomial_pmf(&table, 10, 1.1, 0).is_err());
        assert!(binomial_pmf(&table, 10, 0.5, 11).is_err());
        assert!(binomial_pmf(&table, 100, 0.5, 0).is_err());
    }

    #[test]
    fn pmf_underflow_is_exact_zero() {
        let table = LogFactorialTable::new(4000);
        assert_eq!(binomial_pmf(&table, 4000, 0.5, 0).unwrap(), 0.0);
    }

    #[test]
    fn pmf_symmetric_on_dyadic_probabilities() {
        let table = LogFactorialTable::new(400);
        for &p in &[0.5, 0.25, 0.75, 0.125, 5.0 / 8.0, 3.0 / 256.0] {
            for n in [1u64, 7, 50, 400] {
                for l in 0..=n {
                    let a = binomial_pmf(&table, n, p, l).unwrap();
                    let b = binomial_pmf(&table, n, 1.0 - p, n - l).unwrap();
                    assert_eq!(a.to_bits(), b.to_bits(), "n={n} p={p} l={l}");
                }
            }
        }
    }

    #[test]
    fn binomial_sum_normalizes() {
        for n in [1u64, 2, 3, 7, 10, 50, 100, 1000, 4000, 10000] {
            let table = LogFactorialTable::new(n as usize);
            for k in 0..=100u32 {
                let p = k as f64 / 100.0;
                let total = binomial_sum(&table, n, p, |_| true).unwrap();
                assert!((total - 1.0).abs() <= 1e-10, "n={n} p={p} total={total}");
            }
        }
    }

    #[test]
    fn binomial_expectation_of_count_is_np() {
        let table = LogFactorialTable::new(500);
        for &(n, p) in &[(10u64, 0.3), (500, 0.12), (77, 0.9)] {
            let mean = binomial_expectation(&table, n, p, |l| l as f64).unwrap();
            assert!(
                (mean - n as f64 * p).abs() < 1e-9,
                "n={n} p={p} mean={mean}"
            );
        }
    }

    #[test]
    fn trinomial_marginal_matches_binomial() {
        let pairs = [(0.2, 0.3), (0.5, 0.5), (0.1, 0.0), (0.3, 0.65)];
        for n in [1u64, 2, 3, 5, 8, 13, 50, 200] {
            let table = LogFactorialTable::new(n as usize);
            for &(pa, pb) in &pairs {
                for l_a in 0..=n {
                    let mut marginal = 0.0;
                    for l_b in 0..=(n - l_a) {
                        marginal += trinomial_pmf(&table, n, pa, pb, l_a, l_b).unwrap();
                    }
                    let direct = binomial_pmf(&table, n, pa, l_a).unwrap();
                    assert!(
                        (marginal - direct).abs() < 1e-12,
                        "n={n} pa={pa} pb={pb} l_a={l_a}: {marginal} vs {direct}"
                    );
                }
            }
        }
    }

    #[test]
    fn trinomial_degenerate_remainder() {
        let table = LogFactorialTable::new(6);
        // p_a + p_b = 1 forces the third count to zero.
        let w = trinomial_pmf(&table, 6, 0.4, 0.6, 2, 4).unwrap();
        let direct = binomial_pmf(&table, 6, 0.4, 2).unwrap();
        assert!((w - direct).abs() < 1e-15);
        assert_eq!(trinomial_pmf(&table, 6, 0.4, 0.6, 2, 3).unwrap(), 0.0);
    }

    #[test]
    fn trinomial_rejects_bad_arguments() {
        let table = LogFactorialTable::new(6);
        assert!(trinomial_pmf(&table, 6, 0.7, 0.7, 1, 1).is_err());
        assert!(trinomial_pmf(&table, 6, 0.2, 0.3, 4, 3).is_err());
    }

    #[test]
    fn trinomial_expectation_tail_cutoff_matches_full_sum() {
        let table = LogFactorialTable::new(300);
        let f = |a: u64, b: u64| ((a * b) as f64).sqrt() / 300.0;
        let full = trinomial_expectation(&table, 300, 0.3, 0.45, f, None).unwrap();
        let cut =
            trinomial_expectation(&table, 300, 0.3, 0.45, f, Some(DEFAULT_TAIL_CUTOFF)).unwrap();
        assert!((full - cut).abs() < 1e-13, "{full} vs {cut}");
    }

    #[test]
    fn trinomial_expectation_mass_is_one() {
        let table = LogFactorialTable::new(50);
        let mass = trinomial_expectation(&table, 50, 0.25, 0.3, |_, _| 1.0, None).unwrap();
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn composition_count_small_values() {
        assert_eq!(composition_count(2, 3), 6);
        assert_eq!(composition_count(8, 4), 165);
        assert_eq!(composition_count(1, 2), 2);
    }

    #[test]
    fn enumeration_visits_every_composition_once() {
        let table = LogFactorialTable::new(8);
        let dist = OutcomeDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let items: Vec<_> = multinomial_enumerate(&table, 8, &dist).unwrap().collect();
        assert_eq!(items.len() as u128, composition_count(8, 3));
        let mut seen = std::collections::HashSet::new();
        let mut mass = 0.0;
        for (counts, w) in &items {
            assert_eq!(counts.total(), 8);
            assert!(seen.insert(counts.counts().to_vec()));
            mass += w;
        }
        assert!((mass - 1.0).abs() < 1e-12, "total mass {mass}");
    }

    #[test]
    fn enumeration_respects_zero_probability_outcomes() {
        let table = LogFactorialTable::new(4);
        let dist = OutcomeDistribution::new(vec![0.4, 0.6, 0.0]).unwrap();
        for (counts, w) in multinomial_enumerate(&table, 4, &dist).unwrap() {
            if counts.counts()[2] > 0 {
                assert_eq!(w, 0.0);
            }
        }
    }

    #[test]
    fn enumeration_rejects_oversized_requests() {
        let table = LogFactorialTable::new(100);
        let dist = OutcomeDistribution::uniform(10).unwrap();
        match multinomial_enumerate(&table, 100, &dist).map(|_| ()) {
            Err(Error::TooLarge { required, limit }) => {
                assert!(required > limit);
            }
            other => panic!("expected TooLarge, got {other:?}"),
        }
    }

    #[test]
    fn outcome_distribution_validation() {
        assert!(OutcomeDistribution::new(vec![1.0]).is_err());
        assert!(OutcomeDistribution::new(vec![0.6, 0.6]).is_err());
        assert!(OutcomeDistribution::new(vec![-0.1, 1.1]).is_err());
        assert!(OutcomeDistribution::pair(0.3).is_ok());
        assert!(OutcomeDistribution::uniform(4).is_ok());
    }

    #[test]
    fn trial_counts_validation() {
        assert!(TrialCounts::new(vec![]).is_err());
        assert!(TrialCounts::new(vec![0, 0]).is_err());
        let c = TrialCounts::pair(3, 10).unwrap();
        assert_eq!(c.counts(), &[3, 7]);
        assert_eq!(c.total(), 10);
        assert!(TrialCounts::pair(11, 10).is_err());
    }
}
