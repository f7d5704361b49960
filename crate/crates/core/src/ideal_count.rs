//! The ideal-counting function `a_K(n)`: the number of ideals of `O_K` of norm
//! exactly `n`.
//!
//! `a_K` is multiplicative, and at a prime power `p^k` it only depends on the
//! residue degrees `f_i` of the primes above `p`: an ideal of norm `p^k` is
//! `∏ P_i^{m_i}` with `Σ f_i m_i = k`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::primes;

/// Number of `(m_1, …, m_g) ≥ 0` with `Σ f_i m_i = k`, i.e. `a(p^k)` for a
/// prime with the given residue degrees.
pub fn count_prime_power(residue_degrees: &[u32], k: u32) -> u64 {
    let k = k as usize;
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for &f in residue_degrees {
        let f = f as usize;
        if f == 0 {
            continue;
        }
        for t in f..=k {
            ways[t] = ways[t].saturating_add(ways[t - f]);
        }
    }
    ways[k]
}

/// `a_K(n)` by factoring `n`.
pub fn a_of(field: &FieldDescriptor, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("a_K(n) needs n >= 1".into()));
    }
    if field.is_rational() {
        return Ok(1);
    }
    let mut acc = 1u64;
    for (p, k) in primes::factorize(n) {
        let degrees = field.splitting_type(p)?.residue_degrees();
        acc = acc.checked_mul(count_prime_power(&degrees, k)).ok_or(Error::CountOverflow(n))?;
        if acc == 0 {
            break;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy)]
pub struct SieveOptions {
    /// Refuse to build sieves whose tables would exceed this many bytes.
    pub memory_cap_bytes: u64,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions { memory_cap_bytes: 2 << 30 }
    }
}

/// Approximate bytes per sieve entry (counts, spf table, norm list).
pub const BYTES_PER_ENTRY: u64 = 12;

/// `a_K(n)` for all `n ≤ X`, the attained norms, and a smallest-prime-factor
/// table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCountSieve {
    field: FieldDescriptor,
    limit: u64,
    counts: Vec<u32>,
    norm_values: Vec<u64>,
    spf: Vec<u32>,
}

impl IdealCountSieve {
    pub fn build(field: &FieldDescriptor, limit: u64) -> Result<Self> {
        Self::build_with(field, limit, SieveOptions::default())
    }

    pub fn build_with(field: &FieldDescriptor, limit: u64, opts: SieveOptions) -> Result<Self> {
        check_cap(limit, opts)?;
        let n = limit as usize;
        let (spf, _) = primes::spf_table(n);
        let mut counts = vec![0u32; n + 1];
        if n >= 1 {
            counts[1] = 1;
        }
        // Residue degrees of primes whose square is in range; larger primes
        // only ever appear to the first power.
        let mut degrees: HashMap<u64, Vec<u32>> = HashMap::new();
        for i in 2..=n {
            let p = spf[i] as usize;
            let mut rest = i / p;
            let mut k = 1u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            counts[i] = if rest == 1 {
                if field.is_rational() {
                    1
                } else {
                    let degs = if k == 1 {
                        let d = field.splitting_type(p as u64)?.residue_degrees();
                        if (p as u64).saturating_mul(p as u64) <= limit {
                            degrees.insert(p as u64, d.clone());
                        }
                        d
                    } else {
                        degrees[&(p as u64)].clone()
                    };
                    u32::try_from(count_prime_power(&degs, k)).map_err(|_| Error::CountOverflow(i as u64))?
                }
            } else {
                counts[rest]
                    .checked_mul(counts[i / rest])
                    .ok_or(Error::CountOverflow(i as u64))?
            };
        }
        Ok(Self::assemble(field.clone(), limit, counts, spf))
    }

    /// Rebuilds a sieve from previously computed counts (e.g. from cache).
    pub(crate) fn from_counts(field: FieldDescriptor, counts: Vec<u32>, opts: SieveOptions) -> Result<Self> {
        let limit = counts.len().saturating_sub(1) as u64;
        check_cap(limit, opts)?;
        let (spf, _) = primes::spf_table(limit as usize);
        Ok(Self::assemble(field, limit, counts, spf))
    }

    fn assemble(field: FieldDescriptor, limit: u64, counts: Vec<u32>, spf: Vec<u32>) -> Self {
        let norm_values = counts
            .iter()
            .enumerate()
            .filter(|&(n, &a)| n >= 1 && a > 0)
            .map(|(n, _)| n as u64)
            .collect();
        IdealCountSieve { field, limit, counts, norm_values, spf }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// The bound `X`.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Counts indexed by `n` (index 0 unused and zero).
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `a_K(n)` for `1 ≤ n ≤ X`.
    pub fn a(&self, n: u64) -> Result<u64> {
        self.check(n, "n")?;
        Ok(self.counts[n as usize] as u64)
    }

    /// All `n ≤ X` with `a_K(n) > 0`, ascending. Always starts with 1.
    pub fn norm_values(&self) -> &[u64] {
        &self.norm_values
    }

    pub fn is_norm(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit && self.counts[n as usize] > 0
    }

    /// Smallest prime factor of `2 ≤ n ≤ X`.
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// Prime factorization of `2 ≤ n ≤ X` via the spf table.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf(n);
            n /= p;
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Largest norm strictly below `n`.
    pub fn predecessor_norm(&self, n: u64) -> Result<Option<u64>> {
        self.check(n, "n")?;
        let idx = self.norm_values.partition_point(|&v| v < n);
        Ok(idx.checked_sub(1).map(|i| self.norm_values[i]))
    }

    /// Largest norm `≤ n`.
    pub fn floor_norm(&self, n: u64) -> Result<u64> {
        self.check(n, "n")?;
        let idx = self.norm_values.partition_point(|&v| v <= n);
        Ok(self.norm_values[idx - 1])
    }

    /// Smallest norm strictly above `n`, if within range.
    pub fn successor_norm(&self, n: u64) -> Option<u64> {
        let idx = self.norm_values.partition_point(|&v| v <= n);
        self.norm_values.get(idx).copied()
    }

    fn check(&self, n: u64, what: &'static str) -> Result<()> {
        if n == 0 || n > self.limit {
            return Err(Error::OutOfRange { what, value: n, max: self.limit });
        }
        Ok(())
    }
}

fn check_cap(limit: u64, opts: SieveOptions) -> Result<()> {
    if limit == 0 {
        return Err(Error::Domain("sieve bound must be at least 1".into()));
    }
    if limit.saturating_mul(BYTES_PER_ENTRY) > opts.memory_cap_bytes || limit > u32::MAX as u64 {
        return Err(Error::MemoryCap { requested: limit, cap_bytes: opts.memory_cap_bytes });
    }
    Ok(())
}
