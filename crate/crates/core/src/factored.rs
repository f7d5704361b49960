//! Exact arithmetic on fully factored positive integers, and `Π_K(x)`.
//!
//! `Π_K(x)` has far too many digits to materialize for interesting `x`, so it
//! is only ever handled as a prime→exponent map plus a cached natural log.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal_count::IdealCountSieve;
use crate::primes;

/// Relative tolerance of the log filter used before exact comparisons.
pub const LOG_TOLERANCE: f64 = 1e-6;

/// A positive integer as `∏ p^e`. The empty map is 1.
#[derive(Debug, Clone, Default)]
pub struct FactoredValue {
    exps: BTreeMap<u64, u64>,
    log_mag: f64,
}

impl FactoredValue {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(n: u64) -> Self {
        assert!(n >= 1, "FactoredValue represents positive integers");
        Self::from_factors(primes::factorize(n).into_iter().map(|(p, k)| (p, k as u64)))
    }

    /// From `(prime, exponent)` pairs; zero exponents are dropped and repeated
    /// primes accumulate.
    pub fn from_factors(factors: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut exps = BTreeMap::new();
        for (p, e) in factors {
            if e > 0 {
                *exps.entry(p).or_insert(0) += e;
            }
        }
        let log_mag = log_of(&exps);
        FactoredValue { exps, log_mag }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u64> {
        &self.exps
    }

    pub fn exponent(&self, p: u64) -> u64 {
        self.exps.get(&p).copied().unwrap_or(0)
    }

    /// Natural log of the value.
    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Recomputes the log from the exponents.
    pub fn recomputed_log(&self) -> f64 {
        log_of(&self.exps)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.mul_assign(other)?;
        Ok(out)
    }

    pub fn mul_assign(&mut self, other: &Self) -> Result<()> {
        for (&p, &e) in &other.exps {
            let slot = self.exps.entry(p).or_insert(0);
            *slot = slot.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        self.log_mag += other.log_mag;
        Ok(())
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one());
        }
        let mut exps = BTreeMap::new();
        for (&p, &k) in &self.exps {
            exps.insert(p, k.checked_mul(e).ok_or(Error::ExponentOverflow)?);
        }
        Ok(FactoredValue { exps, log_mag: self.log_mag * e as f64 })
    }

    /// `self^(1/e)` when every exponent is divisible by `e`.
    pub fn root(&self, e: u64) -> Option<Self> {
        if e == 0 || self.exps.values().any(|k| k % e != 0) {
            return None;
        }
        let exps: BTreeMap<u64, u64> = self.exps.iter().map(|(&p, &k)| (p, k / e)).collect();
        Some(FactoredValue { exps, log_mag: self.log_mag / e as f64 })
    }

    /// Value as `u128` when it fits.
    pub fn to_u128(&self) -> Option<u128> {
        let mut acc = 1u128;
        for (&p, &k) in &self.exps {
            let k = u32::try_from(k).ok()?;
            acc = acc.checked_mul((p as u128).checked_pow(k)?)?;
        }
        Some(acc)
    }

    pub fn log10(&self) -> f64 {
        self.log_mag / std::f64::consts::LN_10
    }
}

/// Log filter followed by the exact exponent comparison.
impl PartialEq for FactoredValue {
    fn eq(&self, other: &Self) -> bool {
        logs_match(self.log_mag, other.log_mag, LOG_TOLERANCE) && self.exps == other.exps
    }
}

impl Eq for FactoredValue {}

/// `2^3 * 3 * 5`; `1` for the empty product.
impl fmt::Display for FactoredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

fn log_of(exps: &BTreeMap<u64, u64>) -> f64 {
    exps.iter().map(|(&p, &e)| e as f64 * (p as f64).ln()).sum()
}

/// `|a - b| ≤ tol · max(1, |a|, |b|)`.
pub fn logs_match(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Per-norm deltas `n^{a(n)}` and prefix logs of `Π_K` over a sieve.
#[derive(Debug, Clone)]
pub struct PiTable {
    sieve: Arc<IdealCountSieve>,
    /// `delta_start[i]..delta_start[i+1]` indexes the factors of the i-th
    /// norm value's contribution.
    delta_start: Vec<u32>,
    delta_primes: Vec<u32>,
    delta_exps: Vec<u64>,
    /// `ln Π_K(norm_values[i])`.
    prefix_log: Vec<f64>,
}

impl PiTable {
    pub fn new(sieve: Arc<IdealCountSieve>) -> Self {
        let norms = sieve.norm_values();
        let mut delta_start = Vec::with_capacity(norms.len() + 1);
        let mut delta_primes = Vec::new();
        let mut delta_exps = Vec::new();
        let mut prefix_log = Vec::with_capacity(norms.len());
        // Neumaier-compensated running sum.
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for &n in norms {
            delta_start.push(delta_primes.len() as u32);
            let a = sieve.counts()[n as usize] as u64;
            let term = a as f64 * (n as f64).ln();
            for (p, k) in sieve.factor(n) {
                delta_primes.push(p as u32);
                delta_exps.push(k as u64 * a);
            }
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            prefix_log.push(sum + comp);
        }
        delta_start.push(delta_primes.len() as u32);
        PiTable { sieve, delta_start, delta_primes, delta_exps, prefix_log }
    }

    pub fn build(sieve: IdealCountSieve) -> Self {
        Self::new(Arc::new(sieve))
    }

    pub fn sieve(&self) -> &IdealCountSieve {
        &self.sieve
    }

    pub fn sieve_arc(&self) -> &Arc<IdealCountSieve> {
        &self.sieve
    }

    pub fn limit(&self) -> u64 {
        self.sieve.limit()
    }

    /// Prefix logs aligned with `sieve().norm_values()`.
    pub fn prefix_logs(&self) -> &[f64] {
        &self.prefix_log
    }

    /// Number of norm values `≤ x`.
    pub fn norm_rank(&self, x: u64) -> usize {
        self.sieve.norm_values().partition_point(|&v| v <= x)
    }

    fn check(&self, x: u64) -> Result<()> {
        if x > self.limit() {
            return Err(Error::OutOfRange { what: "x", value: x, max: self.limit() });
        }
        Ok(())
    }

    /// `ln Π_K(x)`; zero for `x < 2` and whenever the product is empty.
    pub fn pi_log(&self, x: u64) -> Result<f64> {
        self.check(x)?;
        Ok(self.log_at_rank(self.norm_rank(x)))
    }

    /// `ln Π_K` over the first `rank` norm values.
    pub fn log_at_rank(&self, rank: usize) -> f64 {
        rank.checked_sub(1).map_or(0.0, |i| self.prefix_log[i])
    }

    /// Exact factorization of `Π_K(x)`.
    pub fn pi_factored(&self, x: u64) -> Result<FactoredValue> {
        self.check(x)?;
        Ok(self.range_factored(0, self.norm_rank(x)))
    }

    /// Product of `n^{a(n)}` over norm values with rank in `lo..hi`.
    pub fn range_factored(&self, lo: usize, hi: usize) -> FactoredValue {
        let mut exps: BTreeMap<u64, u64> = BTreeMap::new();
        if lo < hi {
            let (s, e) = (self.delta_start[lo] as usize, self.delta_start[hi] as usize);
            for (&p, &k) in self.delta_primes[s..e].iter().zip(&self.delta_exps[s..e]) {
                *exps.entry(p as u64).or_insert(0) += k;
            }
        }
        let log_mag = self.log_at_rank(hi) - self.log_at_rank(lo);
        FactoredValue { exps, log_mag }
    }

    /// Adds the exponents of the norm value of rank `idx` into a dense vector
    /// indexed by prime.
    pub(crate) fn add_delta_dense(&self, idx: usize, dense: &mut [u64]) {
        let (s, e) = (self.delta_start[idx] as usize, self.delta_start[idx + 1] as usize);
        for (&p, &k) in self.delta_primes[s..e].iter().zip(&self.delta_exps[s..e]) {
            dense[p as usize] += k;
        }
    }

    /// Exponent of the prime `q` in `Π_K(x)`.
    pub fn exponent_of(&self, q: u64, x: u64) -> Result<u64> {
        self.check(x)?;
        let hi = self.norm_rank(x);
        let e = self.delta_start[hi] as usize;
        Ok(self.delta_primes[..e]
            .iter()
            .zip(&self.delta_exps[..e])
            .filter(|(&p, _)| p as u64 == q)
            .map(|(_, &k)| k)
            .sum())
    }
}
