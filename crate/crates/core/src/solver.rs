//! Solutions of `Π_K(l_1) ··· Π_K(l_{m-1}) = Π_K(l_m)` with
//! `2 ≤ l_1 ≤ … ≤ l_{m-1} < l_m`.
//!
//! A solution is *trivial* when no ideal norm lies strictly between `l_{m-1}`
//! and `l_m`. Equivalently (for `l_m` a norm), `Π_K(l_1)···Π_K(l_{m-2}) =
//! l_m^{a(l_m)}`; [`lemma_check`] decides that condition directly and rebuilds
//! `l_{m-1}` as the largest norm in `[l_{m-2}, l_m)`.
//!
//! Searches enumerate *canonical* tuples only: every entry is an attained
//! norm value. `Π_K` is constant between consecutive norms, so every other
//! solution sits in the interval family of a canonical one
//! (see [`canonicalize`] and [`expand_family`]).
//!
//! All searches filter candidates by comparing prefix logs within a relative
//! tolerance and confirm every hit by exact exponent comparison.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factored::{logs_match, FactoredValue, PiTable, LOG_TOLERANCE};
use crate::ideal_count::{a_of, count_prime_power, IdealCountSieve};

/// Default cap on `m` for [`search_general_m`].
pub const DEFAULT_ARITY_CAP: usize = 5;

/// Log tolerance for prefix sums longer than this many terms is widened.
const WIDE_TOLERANCE_AFTER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SolutionKind {
    Trivial,
    NonTrivial,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::Trivial => "Trivial",
            SolutionKind::NonTrivial => "NonTrivial",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Trivial,
    #[serde(rename = "nontrivial")]
    NonTrivial,
    All,
}

impl SearchMode {
    pub fn admits(self, kind: SolutionKind) -> bool {
        match self {
            SearchMode::All => true,
            SearchMode::Trivial => kind == SolutionKind::Trivial,
            SearchMode::NonTrivial => kind == SolutionKind::NonTrivial,
        }
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(SearchMode::Trivial),
            "nontrivial" | "non-trivial" => Ok(SearchMode::NonTrivial),
            "all" => Ok(SearchMode::All),
            _ => Err(Error::syntax(0, format!("unknown mode '{s}'"))),
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Trivial => "trivial",
            SearchMode::NonTrivial => "nontrivial",
            SearchMode::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionTuple {
    pub ls: Vec<u64>,
    pub kind: SolutionKind,
    /// Every entry is an attained norm value.
    pub canonical: bool,
}

impl SolutionTuple {
    pub fn m(&self) -> usize {
        self.ls.len()
    }

    pub fn last(&self) -> u64 {
        *self.ls.last().expect("tuples have m >= 3 entries")
    }
}

/// Counters reported with every search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Outer candidates examined (pairs, heads).
    pub checked: u64,
    /// Log-filter hits sent to exact comparison.
    pub log_collisions: u64,
}

impl std::ops::Add for SearchStats {
    type Output = SearchStats;

    fn add(self, o: SearchStats) -> SearchStats {
        SearchStats { checked: self.checked + o.checked, log_collisions: self.log_collisions + o.log_collisions }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    pub solutions: Vec<SolutionTuple>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    fn merge(parts: Vec<SearchOutcome>) -> SearchOutcome {
        let mut out = SearchOutcome::default();
        for p in parts {
            out.solutions.extend(p.solutions);
            out.stats = out.stats + p.stats;
        }
        sort_solutions(&mut out.solutions);
        out
    }

    pub fn tuples(&self) -> Vec<Vec<u64>> {
        self.solutions.iter().map(|s| s.ls.clone()).collect()
    }
}

/// Report order: lexicographic in `(l_m, l_{m-1}, …, l_1)`.
pub fn sort_solutions(sols: &mut [SolutionTuple]) {
    sols.sort_by(|a, b| a.ls.iter().rev().cmp(b.ls.iter().rev()));
}

fn tolerance(rank: usize) -> f64 {
    if rank > WIDE_TOLERANCE_AFTER {
        10.0 * LOG_TOLERANCE
    } else {
        LOG_TOLERANCE
    }
}

/// Checks `m ≥ 3`, `2 ≤ l_1 ≤ … ≤ l_{m-1} < l_m ≤ X`.
fn validate(sieve: &IdealCountSieve, ls: &[u64]) -> Result<()> {
    let m = ls.len();
    let ordered = m >= 3 && ls[0] >= 2 && ls[..m - 1].windows(2).all(|w| w[0] <= w[1]) && ls[m - 2] < ls[m - 1];
    if !ordered {
        return Err(Error::Ordering(ls.to_vec()));
    }
    if ls[m - 1] > sieve.limit() {
        return Err(Error::OutOfRange { what: "l_m", value: ls[m - 1], max: sieve.limit() });
    }
    Ok(())
}

/// Whether `ls` solves the equation: log filter, then exact comparison.
pub fn is_solution(table: &PiTable, ls: &[u64]) -> Result<bool> {
    validate(table.sieve(), ls)?;
    let (head, last) = ls.split_at(ls.len() - 1);
    let target = table.pi_log(last[0])?;
    let mut sum = 0.0;
    for &l in head {
        sum += table.pi_log(l)?;
    }
    if !logs_match(sum, target, tolerance(table.norm_rank(last[0]))) {
        return Ok(false);
    }
    let mut prod = FactoredValue::one();
    for &l in head {
        prod.mul_assign(&table.pi_factored(l)?)?;
    }
    Ok(prod.exponents() == table.pi_factored(last[0])?.exponents())
}

/// Trivial iff no norm lies strictly between `l_{m-1}` and `l_m`. Does not
/// check that `ls` is a solution.
pub fn kind_of(sieve: &IdealCountSieve, ls: &[u64]) -> Result<SolutionKind> {
    validate(sieve, ls)?;
    let m = ls.len();
    let pred = sieve.predecessor_norm(ls[m - 1])?.unwrap_or(0);
    Ok(if pred <= ls[m - 2] { SolutionKind::Trivial } else { SolutionKind::NonTrivial })
}

/// Classifies a solution; errors if `ls` is not one.
pub fn classify(table: &PiTable, ls: &[u64]) -> Result<SolutionKind> {
    if !is_solution(table, ls)? {
        return Err(Error::NotASolution(ls.to_vec()));
    }
    kind_of(table.sieve(), ls)
}

/// Decides `Π_K(l_1)···Π_K(l_{m-2}) = l_m^{a(l_m)}`. On success returns
/// `l_{m-1}`, the largest norm in `[l_{m-2}, l_m)`, which makes
/// `(head…, l_{m-1}, l_m)` a trivial solution.
pub fn lemma_check(table: &PiTable, head: &[u64], lm: u64) -> Result<Option<u64>> {
    let sieve = table.sieve();
    let ordered = !head.is_empty()
        && head[0] >= 2
        && head.windows(2).all(|w| w[0] <= w[1])
        && *head.last().unwrap() < lm;
    if !ordered {
        let mut ls = head.to_vec();
        ls.push(lm);
        return Err(Error::Ordering(ls));
    }
    let a = sieve.a(lm)?;
    if a == 0 {
        return Err(Error::NotANorm(lm));
    }
    let rhs_log = a as f64 * (lm as f64).ln();
    let mut lhs_log = 0.0;
    for &l in head {
        lhs_log += table.pi_log(l)?;
    }
    if !logs_match(lhs_log, rhs_log, LOG_TOLERANCE) {
        return Ok(None);
    }
    let mut prod = FactoredValue::one();
    for &l in head {
        prod.mul_assign(&table.pi_factored(l)?)?;
    }
    if prod.exponents() != FactoredValue::from_u64(lm).pow(a)?.exponents() {
        return Ok(None);
    }
    let lo = *head.last().unwrap();
    match sieve.predecessor_norm(lm)? {
        Some(prev) if prev >= lo => Ok(Some(prev)),
        _ => Err(Error::EmptyInterval { lo, hi: lm }),
    }
}

/// Ranks `k` with `norms[k] ≤ x`, starting at the first norm ≥ 3.
fn outer_ranks(table: &PiTable, x: u64) -> Result<std::ops::Range<usize>> {
    if x > table.limit() {
        return Err(Error::OutOfRange { what: "X", value: x, max: table.limit() });
    }
    let norms = table.sieve().norm_values();
    let start = norms.partition_point(|&v| v < 3);
    Ok(start..table.norm_rank(x).max(start))
}

/// Ranks `j` in `lo..hi` whose prefix log is within `tol` of `target`.
fn ranks_near(prefix: &[f64], lo: usize, hi: usize, target: f64, tol: f64) -> std::ops::Range<usize> {
    if lo >= hi {
        return lo..lo;
    }
    let slice = &prefix[lo..hi];
    let a = slice.partition_point(|&v| v < target - tol);
    let b = slice.partition_point(|&v| v <= target + tol);
    lo + a..lo + b.max(a)
}

/// All canonical trivial 3-tuples with `l_3 ≤ x`, found through
/// [`lemma_check`]: for each norm `l_3`, the `l_1` with
/// `ln Π_K(l_1) = a(l_3)·ln l_3`.
pub fn search_trivial_m3(table: &PiTable, x: u64) -> Result<SearchOutcome> {
    let ranks = outer_ranks(table, x)?;
    let sieve = table.sieve();
    let norms = sieve.norm_values();
    let prefix = table.prefix_logs();
    let parts: Result<Vec<SearchOutcome>> = ranks
        .into_par_iter()
        .map(|k| {
            let l3 = norms[k];
            let a = sieve.counts()[l3 as usize] as u64;
            let target = a as f64 * (l3 as f64).ln();
            let tol = tolerance(k) * target.max(1.0);
            let mut out = SearchOutcome::default();
            out.stats.checked += 1;
            for i in ranks_near(prefix, 1, k, target, tol) {
                out.stats.log_collisions += 1;
                if let Some(l2) = lemma_check(table, &[norms[i]], l3)? {
                    out.solutions.push(SolutionTuple {
                        ls: vec![norms[i], l2, l3],
                        kind: SolutionKind::Trivial,
                        canonical: true,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    Ok(SearchOutcome::merge(parts?))
}

/// All canonical 3-tuples with `l_3 ≤ x` of the requested kind.
pub fn search_m3(table: &PiTable, x: u64, mode: SearchMode) -> Result<SearchOutcome> {
    let ranks = outer_ranks(table, x)?;
    let norms = table.sieve().norm_values();
    let prefix = table.prefix_logs();
    let parts: Vec<SearchOutcome> = ranks
        .into_par_iter()
        .map(|k| {
            let total = prefix[k];
            let tol = tolerance(k) * total.max(1.0);
            let whole = table.range_factored(0, k + 1);
            let mut out = SearchOutcome::default();
            let mut i = 1;
            // l_1 ≤ l_2 forces 2·ln Π(l_1) ≤ ln Π(l_3).
            while i < k && 2.0 * prefix[i] <= total + tol {
                out.stats.checked += 1;
                let target = total - prefix[i];
                for j in ranks_near(prefix, i, k, target, tol) {
                    out.stats.log_collisions += 1;
                    // Π(l_3)/Π(l_2) against Π(l_1)
                    let quotient = table.range_factored(j + 1, k + 1);
                    if quotient.exponents() == table.range_factored(0, i + 1).exponents() {
                        debug_assert_eq!(
                            table.range_factored(0, i + 1).mul(&table.range_factored(0, j + 1)).unwrap().exponents(),
                            whole.exponents()
                        );
                        let kind = if j + 1 == k { SolutionKind::Trivial } else { SolutionKind::NonTrivial };
                        if mode.admits(kind) {
                            out.solutions.push(SolutionTuple {
                                ls: vec![norms[i], norms[j], norms[k]],
                                kind,
                                canonical: true,
                            });
                        }
                    }
                }
                i += 1;
            }
            out
        })
        .collect();
    Ok(SearchOutcome::merge(parts))
}

/// All canonical `m`-tuples with `l_m ≤ x` of the requested kind, by
/// depth-first enumeration of non-decreasing heads.
pub fn search_general_m(table: &PiTable, x: u64, m: usize, mode: SearchMode, cap: usize) -> Result<SearchOutcome> {
    if m > cap {
        return Err(Error::ArityCap { m, cap });
    }
    if m < 3 {
        return Err(Error::Domain(format!("m must be at least 3, got {m}")));
    }
    let ranks = outer_ranks(table, x)?;
    let top = ranks.end;
    let prefix = table.prefix_logs();
    let limit_log = table.log_at_rank(top);
    let first_rank = 1usize;
    let parts: Vec<SearchOutcome> = (first_rank..top)
        .into_par_iter()
        .map(|i1| {
            let mut out = SearchOutcome::default();
            let mut head = vec![i1];
            dfs(table, m, mode, top, limit_log, prefix[i1], &mut head, &mut out);
            out
        })
        .collect();
    Ok(SearchOutcome::merge(parts))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    table: &PiTable,
    m: usize,
    mode: SearchMode,
    top: usize,
    limit_log: f64,
    sum: f64,
    head: &mut Vec<usize>,
    out: &mut SearchOutcome,
) {
    let prefix = table.prefix_logs();
    let tol = tolerance(top) * limit_log.max(1.0);
    let last = *head.last().unwrap();
    let remaining = m - 1 - head.len();
    if remaining > 0 && sum + remaining as f64 * prefix[last] > limit_log + tol {
        return;
    }
    if remaining == 0 {
        out.stats.checked += 1;
        for t in ranks_near(prefix, last + 1, top, sum, tol) {
            out.stats.log_collisions += 1;
            let mut prod = FactoredValue::one();
            for &h in head.iter() {
                prod.mul_assign(&table.range_factored(0, h + 1)).expect("exponents fit u64");
            }
            if prod.exponents() == table.range_factored(0, t + 1).exponents() {
                let kind = if t == last + 1 { SolutionKind::Trivial } else { SolutionKind::NonTrivial };
                if mode.admits(kind) {
                    let norms = table.sieve().norm_values();
                    let mut ls: Vec<u64> = head.iter().map(|&h| norms[h]).collect();
                    ls.push(norms[t]);
                    out.solutions.push(SolutionTuple { ls, kind, canonical: true });
                }
            }
        }
        return;
    }
    let mut next = last;
    while next < top && sum + remaining as f64 * prefix[next] <= limit_log + tol {
        head.push(next);
        dfs(table, m, mode, top, limit_log, sum + prefix[next], head, out);
        head.pop();
        next += 1;
    }
}

/// Replaces `l_1 … l_{m-1}` by the largest norm not exceeding each; `Π_K`
/// values are unchanged.
pub fn canonicalize(sieve: &IdealCountSieve, ls: &[u64]) -> Result<Vec<u64>> {
    validate(sieve, ls)?;
    let m = ls.len();
    let mut out = Vec::with_capacity(m);
    for &l in &ls[..m - 1] {
        let c = sieve.floor_norm(l)?;
        if c < 2 {
            return Err(Error::BelowFirstNorm(l));
        }
        out.push(c);
    }
    out.push(ls[m - 1]);
    Ok(out)
}

/// Every tuple with the same `Π_K` values as `sol` obtained by moving
/// `l_1 … l_{m-1}` within their norm gaps (`l_m` fixed). The kind is
/// preserved; entries other than `sol` itself are non-canonical.
pub fn expand_family(sieve: &IdealCountSieve, sol: &SolutionTuple) -> Vec<SolutionTuple> {
    let m = sol.m();
    let lm = sol.last();
    let ranges: Vec<(u64, u64)> = sol.ls[..m - 1]
        .iter()
        .map(|&l| {
            let hi = sieve.successor_norm(l).map_or(lm - 1, |s| s - 1).min(lm - 1);
            (l, hi)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(
        ranges: &[(u64, u64)],
        lm: u64,
        sol: &SolutionTuple,
        cur: &mut Vec<u64>,
        out: &mut Vec<SolutionTuple>,
    ) {
        let pos = cur.len();
        if pos == ranges.len() {
            let mut ls = cur.clone();
            ls.push(lm);
            let canonical = ls == sol.ls;
            out.push(SolutionTuple { ls, kind: sol.kind, canonical });
            return;
        }
        let (lo, hi) = ranges[pos];
        let lo = cur.last().map_or(lo, |&p| lo.max(p));
        for v in lo..=hi {
            cur.push(v);
            rec(ranges, lm, sol, cur, out);
            cur.pop();
        }
    }
    rec(&ranges, lm, sol, &mut cur, &mut out);
    sort_solutions(&mut out);
    out
}

/// A trivial 3-tuple found by [`search_trivial_m3_heads`]; `l_3` may lie far
/// beyond the sieve.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadTrivial {
    pub l1: u64,
    /// `None` when `l_3` is too large to locate its predecessor norm.
    pub l2: Option<u64>,
    pub l3: FactoredValue,
    pub a_l3: u64,
}

/// Steps taken when scanning below an out-of-range `l_3` for `l_2`.
const PREDECESSOR_SCAN: u64 = 1_000_000;

/// Trivial 3-tuples with canonical `l_1 ∈ [lo, hi]` and *any* `l_3`.
///
/// `Π_K(l_1) = l_3^a` with `a = a(l_3)` forces `a` to divide the gcd of the
/// exponents of `Π_K(l_1)`, and then `l_3 = Π_K(l_1)^{1/a}` is known in
/// factored form, so `a(l_3)` can be evaluated without bounding `l_3`.
pub fn search_trivial_m3_heads(table: &PiTable, lo: u64, hi: u64) -> Result<Vec<HeadTrivial>> {
    let sieve = table.sieve();
    let field = sieve.field();
    if hi > sieve.limit() {
        return Err(Error::OutOfRange { what: "l_1", value: hi, max: sieve.limit() });
    }
    let norms = sieve.norm_values();
    let primes: Vec<u64> = crate::primes::primes_up_to(hi);
    let mut dense = vec![0u64; hi as usize + 1];
    let mut degrees: HashMap<u64, Vec<u32>> = HashMap::new();
    let mut out = Vec::new();
    for (rank, &l1) in norms.iter().enumerate().skip(1) {
        if l1 > hi {
            break;
        }
        table.add_delta_dense(rank, &mut dense);
        if l1 < lo.max(2) {
            continue;
        }
        let mut g = 0u64;
        for &p in primes.iter().take_while(|&&p| p <= l1) {
            let e = dense[p as usize];
            if e > 0 {
                g = g.gcd(&e);
                if g == 1 {
                    break;
                }
            }
        }
        let log_pi = table.log_at_rank(rank + 1);
        for a in (1..=g).filter(|d| g.is_multiple_of(*d)) {
            // l_3 > l_1
            if log_pi / a as f64 <= (l1 as f64).ln() + 1e-9 {
                continue;
            }
            let mut count = 1u64;
            for &p in primes.iter().take_while(|&&p| p <= l1) {
                let e = dense[p as usize];
                if e == 0 {
                    continue;
                }
                let degs = match degrees.get(&p) {
                    Some(d) => d,
                    None => {
                        let d = field.splitting_type(p)?.residue_degrees();
                        degrees.entry(p).or_insert(d)
                    }
                };
                let k = u32::try_from(e / a).map_err(|_| Error::ExponentOverflow)?;
                count = count.saturating_mul(count_prime_power(degs, k));
                if count == 0 || count > a {
                    break;
                }
            }
            if count != a {
                continue;
            }
            let l3 = FactoredValue::from_factors(
                primes.iter().take_while(|&&p| p <= l1).map(|&p| (p, dense[p as usize] / a)),
            );
            let l2 = match l3.to_u128().and_then(|v| u64::try_from(v).ok()) {
                Some(v) if v <= sieve.limit() => sieve.predecessor_norm(v)?.filter(|&p| p >= l1),
                Some(v) => {
                    let mut found = None;
                    let stop = l1.max(v.saturating_sub(PREDECESSOR_SCAN));
                    let mut n = v - 1;
                    while n >= stop {
                        if a_of(field, n)? > 0 {
                            found = Some(n);
                            break;
                        }
                        n -= 1;
                    }
                    found
                }
                None => None,
            };
            out.push(HeadTrivial { l1, l2, l3, a_l3: a });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_field;

    fn table(spec: &str, x: u64) -> PiTable {
        PiTable::build(IdealCountSieve::build(&parse_field(spec).unwrap(), x).unwrap())
    }

    #[test]
    fn is_solution_examples() {
        let q = table("Q", 20);
        assert!(is_solution(&q, &[6, 7, 10]).unwrap());
        assert!(!is_solution(&q, &[2, 3, 4]).unwrap());
        let k = table("quadratic:-3", 300);
        assert!(is_solution(&k, &[4, 9, 12]).unwrap());
        assert!(is_solution(&k, &[12, 247, 252]).unwrap());
        assert!(is_solution(&k, &[16, 111, 117]).unwrap());
        assert!(is_solution(&k, &[5, 9, 12]).unwrap());
        assert!(matches!(is_solution(&k, &[9, 4, 12]), Err(Error::Ordering(_))));
        assert!(matches!(is_solution(&k, &[1, 4, 12]), Err(Error::Ordering(_))));
        assert!(matches!(is_solution(&k, &[4, 12, 12]), Err(Error::Ordering(_))));
        assert!(matches!(is_solution(&k, &[4, 9, 400]), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn fixture_identities() {
        let k = table("quadratic:-3", 300);
        assert_eq!(k.pi_factored(16).unwrap().to_u128(), Some(171_714_816));
        let ratio = k.range_factored(k.norm_rank(111), k.norm_rank(117));
        assert_eq!(ratio.to_u128(), Some(13104u128 * 13104));
    }

    #[test]
    fn classify_examples() {
        let k = table("quadratic:-3", 300);
        assert_eq!(classify(&k, &[4, 9, 12]).unwrap(), SolutionKind::Trivial);
        assert_eq!(classify(&k, &[16, 111, 117]).unwrap(), SolutionKind::NonTrivial);
        assert_eq!(classify(&table("Q", 20), &[6, 7, 10]).unwrap(), SolutionKind::NonTrivial);
        assert!(matches!(classify(&k, &[4, 9, 13]), Err(Error::NotASolution(_))));
    }

    #[test]
    fn lemma_examples() {
        let k = table("quadratic:-3", 300);
        assert_eq!(lemma_check(&k, &[4], 12).unwrap(), Some(9));
        assert_eq!(lemma_check(&k, &[12], 252).unwrap(), Some(247));
        assert_eq!(lemma_check(&k, &[4], 13).unwrap(), None);
        assert_eq!(lemma_check(&k, &[4], 10), Err(Error::NotANorm(10)));
        assert!(matches!(lemma_check(&k, &[], 12), Err(Error::Ordering(_))));
        // m = 4: Π(3)·Π(4) = 3·12 = 36 = 6^2 but a(6) = 0; Π(2)·Π(4) = 12.
        assert_eq!(lemma_check(&k, &[2, 4], 12).unwrap(), Some(9));
    }

    #[test]
    fn search_trivial_examples() {
        let k = table("quadratic:-3", 300);
        assert_eq!(search_trivial_m3(&k, 300).unwrap().tuples(), vec![vec![4, 9, 12], vec![12, 247, 252]]);
        assert!(search_trivial_m3(&k, 11).unwrap().solutions.is_empty());
        // Over Q the lemma gives l_1! = l_3, l_2 = l_3 - 1.
        let q = table("Q", 100);
        assert_eq!(search_trivial_m3(&q, 100).unwrap().tuples(), vec![vec![3, 5, 6], vec![4, 23, 24]]);
    }

    #[test]
    fn search_m3_examples() {
        let k = table("quadratic:-3", 300);
        let all = search_m3(&k, 300, SearchMode::All).unwrap();
        assert!(all.solutions.contains(&SolutionTuple { ls: vec![4, 9, 12], kind: SolutionKind::Trivial, canonical: true }));
        assert!(all.solutions.contains(&SolutionTuple { ls: vec![16, 111, 117], kind: SolutionKind::NonTrivial, canonical: true }));
        assert_eq!(search_m3(&k, 300, SearchMode::Trivial).unwrap().solutions, search_trivial_m3(&k, 300).unwrap().solutions);
        assert!(search_m3(&k, 10, SearchMode::All).unwrap().solutions.is_empty());
        let q = table("Q", 20);
        assert!(search_m3(&q, 20, SearchMode::NonTrivial).unwrap().tuples().contains(&vec![6, 7, 10]));
    }

    #[test]
    fn general_m_matches_m3() {
        for spec in ["Q", "quadratic:-3", "quadratic:5"] {
            let t = table(spec, 200);
            for mode in [SearchMode::All, SearchMode::Trivial, SearchMode::NonTrivial] {
                assert_eq!(
                    search_general_m(&t, 200, 3, mode, DEFAULT_ARITY_CAP).unwrap().solutions,
                    search_m3(&t, 200, mode).unwrap().solutions,
                    "{spec} {mode}"
                );
            }
        }
        let t = table("Q", 10);
        assert_eq!(search_general_m(&t, 10, 6, SearchMode::All, 5), Err(Error::ArityCap { m: 6, cap: 5 }));
    }

    #[test]
    fn canonicalize_examples() {
        let k = table("quadratic:-3", 300);
        assert_eq!(canonicalize(k.sieve(), &[5, 9, 12]).unwrap(), vec![4, 9, 12]);
        assert_eq!(canonicalize(k.sieve(), &[4, 9, 12]).unwrap(), vec![4, 9, 12]);
        assert_eq!(canonicalize(k.sieve(), &[2, 9, 10]), Err(Error::BelowFirstNorm(2)));
        let q = table("Q", 50);
        assert_eq!(canonicalize(q.sieve(), &[6, 7, 10]).unwrap(), vec![6, 7, 10]);
        for ls in [[5u64, 9, 12], [6, 9, 12], [5, 10, 12], [16, 111, 117], [17, 111, 117]] {
            let c = canonicalize(k.sieve(), &ls).unwrap();
            assert_eq!(is_solution(&k, &ls).unwrap(), is_solution(&k, &c).unwrap());
        }
    }

    #[test]
    fn family_expansion() {
        let k = table("quadratic:-3", 300);
        let sol = SolutionTuple { ls: vec![4, 9, 12], kind: SolutionKind::Trivial, canonical: true };
        let fam = expand_family(k.sieve(), &sol);
        let tuples: Vec<Vec<u64>> = fam.iter().map(|s| s.ls.clone()).collect();
        assert_eq!(tuples, vec![vec![4, 9, 12], vec![5, 9, 12], vec![6, 9, 12], vec![4, 10, 12], vec![5, 10, 12], vec![6, 10, 12], vec![4, 11, 12], vec![5, 11, 12], vec![6, 11, 12]]);
        assert_eq!(fam.iter().filter(|s| s.canonical).count(), 1);
        for s in &fam {
            assert!(is_solution(&k, &s.ls).unwrap());
            assert_eq!(kind_of(k.sieve(), &s.ls).unwrap(), s.kind);
        }
    }

    #[test]
    fn head_search_recovers_fixtures() {
        let k = table("quadratic:-3", 300);
        let found = search_trivial_m3_heads(&k, 2, 300).unwrap();
        let got: Vec<(u64, Option<u64>, Option<u128>)> = found.iter().map(|h| (h.l1, h.l2, h.l3.to_u128())).collect();
        assert_eq!(got, vec![(4, Some(9), Some(12)), (12, Some(247), Some(252))]);
        let q = table("Q", 10);
        let got: Vec<(u64, Option<u64>)> = search_trivial_m3_heads(&q, 2, 6).unwrap().iter().map(|h| (h.l1, h.l2)).collect();
        assert_eq!(got, vec![(3, Some(5)), (4, Some(23)), (5, Some(119)), (6, Some(719))]);
    }
}
