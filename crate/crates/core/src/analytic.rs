//! Completely split primes and the explicit constants of the finiteness
//! bound.
//!
//! The Bertrand-type statement is: for `A > 1` and `x > exp(c(A)·k·(ln D)²)`
//! there is a prime `p` splitting completely in `K` with `x < p ≤ A·x`, where
//! `k = [K^gal : Q]` and `D = |disc K^gal|`. Below that (astronomical)
//! threshold it can only be checked empirically, which is what
//! [`bertrand_failures`] does. The inequality the constant `c(A)` is chosen
//! to satisfy is evaluated by [`bertrand_inequality_sides`]; every such
//! evaluation takes `ln x` rather than `x`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::ideal_count::IdealCountSieve;
use crate::primes;

/// Lower branch of `c(2) = max(2.65e7, 1 + 1/c3)`.
pub const C2_FLOOR: f64 = 2.65e7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    /// Error-term constant of the effective Chebotarev estimate.
    pub c1: f64,
    /// Exponent constant of the same estimate.
    pub c2: f64,
    /// Constant in the exceptional-zero bound `β < 1 - c3·D^{-1/k}`.
    pub c3: f64,
    /// Interval ratio: a split prime is sought in `(x, A·x]`.
    #[serde(rename = "A")]
    pub a: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants { c1: 7.84e14, c2: 1.0 / 99.0, c3: std::f64::consts::PI / 6.0, a: 2.0 }
    }
}

impl BoundConstants {
    pub fn validate(&self) -> Result<()> {
        let ok = self.c1 > 0.0 && self.c2 > 0.0 && self.c2 < 1.0 && self.c3 > 0.0 && self.a > 1.0;
        if !ok || ![self.c1, self.c2, self.c3, self.a].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!(
                "constants need c1 > 0, 0 < c2 < 1, c3 > 0, A > 1; got {self:?}"
            )));
        }
        Ok(())
    }

    /// `β₀ = 1 - c3·D^{-1/k}` from `ln D`.
    pub fn beta0(&self, k: u32, ln_d: f64) -> f64 {
        1.0 - self.c3 * (-ln_d / k as f64).exp()
    }
}

/// Galois-closure data `(k, ln D)` of a field.
pub fn closure_data(field: &FieldDescriptor) -> Result<(u32, f64)> {
    let k = field.galois_degree().ok_or(Error::UnknownGalois("k"))?;
    let d = field.galois_abs_disc().ok_or(Error::UnknownGalois("D"))?;
    let ln_d = match d.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => d.bits() as f64 * std::f64::consts::LN_2,
    };
    Ok((k, ln_d))
}

/// Primes `p ≤ x` that split completely in `K`.
pub fn split_primes(field: &FieldDescriptor, x: u64) -> Result<Vec<u64>> {
    let n = field.degree();
    let mut out = Vec::new();
    for p in primes::primes_up_to(x) {
        if field.is_rational() || field.splitting_type(p)?.splits_completely(n) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Number of completely split primes `≤ x`.
pub fn pi_sc(field: &FieldDescriptor, x: u64) -> Result<u64> {
    Ok(split_primes(field, x)?.len() as u64)
}

/// Smallest ideal norm greater than 1.
pub fn p1(sieve: &IdealCountSieve) -> Result<u64> {
    sieve.norm_values().get(1).copied().ok_or(Error::NotFound(sieve.limit()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BertrandReport {
    pub field: String,
    #[serde(rename = "A")]
    pub a: f64,
    pub xmax: u64,
    /// Integers `x ∈ [2, xmax]` with no split prime in `(x, A·x]`.
    pub failures: Vec<u64>,
    /// Split primes up to `A·xmax`.
    pub split_primes_found: u64,
}

/// Every integer `x ∈ [2, xmax]` for which `(x, A·x]` holds no completely
/// split prime.
pub fn bertrand_failures(field: &FieldDescriptor, a: f64, xmax: u64) -> Result<BertrandReport> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::Domain(format!("A must exceed 1, got {a}")));
    }
    let reach = (a * xmax as f64).floor() as u64;
    let split = split_primes(field, reach.max(xmax))?;
    let mut failures = Vec::new();
    let mut next = 0usize;
    for x in 2..=xmax {
        while next < split.len() && split[next] <= x {
            next += 1;
        }
        let ok = split.get(next).is_some_and(|&q| q as f64 <= a * x as f64);
        if !ok {
            failures.push(x);
        }
    }
    Ok(BertrandReport {
        field: field.render(),
        a,
        xmax,
        failures,
        split_primes_found: split.iter().filter(|&&q| q <= reach).count() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub m: usize,
    /// Smallest split prime with `n^{|P_sc(q)|} > n(m-2)`.
    pub q: u64,
    /// `|P_sc(q)|`.
    pub split_count: u64,
    /// `n(m-2)`.
    pub required: u64,
    /// `ln` of the analytic requirement `exp(c(2)·k·(ln D)²)` on `q`, when
    /// the Galois data is known.
    pub analytic_log_bound: Option<f64>,
    /// Whether `ln q` reaches the analytic bound (never at desk scale).
    pub analytic_condition_met: bool,
}

/// Smallest completely split prime `q ≤ search_limit` with
/// `n^{|P_sc(q)|} > n·(m-2)`.
pub fn threshold_q(field: &FieldDescriptor, m: usize, search_limit: u64) -> Result<ThresholdReport> {
    if field.is_rational() {
        return Err(Error::RationalExcluded);
    }
    if m < 3 {
        return Err(Error::Domain(format!("m must be at least 3, got {m}")));
    }
    let n = field.degree() as u128;
    let required = n * (m as u128 - 2);
    let mut power = 1u128;
    for (idx, q) in split_primes(field, search_limit)?.into_iter().enumerate() {
        power = power.saturating_mul(n);
        if power > required {
            let analytic_log_bound = explicit_bound_log(field, &BoundConstants::default()).ok();
            return Ok(ThresholdReport {
                m,
                q,
                split_count: idx as u64 + 1,
                required: required as u64,
                analytic_log_bound,
                analytic_condition_met: analytic_log_bound.is_some_and(|b| (q as f64).ln() >= b),
            });
        }
    }
    Err(Error::NotFound(search_limit))
}

/// `c(2) = max(2.65e7, 1 + 1/c3)`.
pub fn explicit_c2(constants: &BoundConstants) -> Result<f64> {
    constants.validate()?;
    Ok(C2_FLOOR.max(1.0 + 1.0 / constants.c3))
}

/// `c(2)·k·(ln D)²`, the natural log of the bound beyond which no trivial
/// solution has `l_{m-2}` above it.
pub fn explicit_bound_log(field: &FieldDescriptor, constants: &BoundConstants) -> Result<f64> {
    if field.is_rational() {
        return Err(Error::RationalExcluded);
    }
    let (k, ln_d) = closure_data(field)?;
    if ln_d < 3f64.ln() - 1e-12 {
        return Err(Error::Domain("D must be at least 3".into()));
    }
    Ok(explicit_c2(constants)? * k as f64 * ln_d * ln_d)
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const G_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * GK_WEIGHTS[7];
    let mut gauss = fc * G_WEIGHTS[3];
    for i in 0..7 {
        let dx = h * GK_NODES[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += GK_WEIGHTS[i] * s;
        if i % 2 == 1 {
            gauss += G_WEIGHTS[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod for a positive integrand: each accepted piece has
/// estimated error below `rel` times its own value, so the total relative
/// error is below `rel` as well.
fn integrate_positive(f: impl Fn(f64) -> f64, a: f64, b: f64, rel: f64) -> f64 {
    let mut total = 0.0;
    let mut comp = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = gk15(&f, lo, hi);
        if err <= rel * val.abs() || depth >= 60 {
            let y = val - comp;
            let t = total + y;
            comp = (t - total) - y;
            total = t;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    total
}

/// `∫_a^b dt / ln t` for `2 ≤ a ≤ b`.
pub fn li(a: f64, b: f64) -> Result<f64> {
    if !(a >= 2.0 && b >= a && b.is_finite()) {
        return Err(Error::Domain(format!("li needs 2 <= a <= b, got a={a}, b={b}")));
    }
    li_log(a.ln(), b.ln())
}

/// `∫ dt / ln t` over `[e^{log_a}, e^{log_b}]`, substituting `t = e^u`.
pub fn li_log(log_a: f64, log_b: f64) -> Result<f64> {
    if !(log_a >= std::f64::consts::LN_2 - 1e-15 && log_b >= log_a) {
        return Err(Error::Domain(format!("li needs ln 2 <= log_a <= log_b, got {log_a}, {log_b}")));
    }
    if log_a == log_b {
        return Ok(0.0);
    }
    Ok(integrate_positive(|u| u.exp() / u, log_a, log_b, 1e-11))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalitySides {
    pub log_x: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalitySides {
    pub fn holds(&self) -> bool {
        self.lhs > self.rhs
    }
}

/// The two sides of the sufficient condition for a split prime in
/// `(x, A·x]`:
///
/// ```text
/// lhs = A · (β₀ - (Ax)^{β₀-1}) / (β₀ - x^{β₀-1}) · ln x / ln(Ax)
/// rhs = 1 + 2Aβ₀k·c1 · ln x / (β₀ - x^{β₀-1}) · exp(-c2·√(ln x / k))
/// ```
///
/// with `β₀ = 1 - c3·D^{-1/k}`, evaluated at `x = e^{log_x}`.
pub fn bertrand_inequality_sides(constants: &BoundConstants, k: u32, ln_d: f64, log_x: f64) -> Result<InequalitySides> {
    constants.validate()?;
    if !(log_x > 0.0 && log_x.is_finite()) || k == 0 {
        return Err(Error::Domain(format!("need x > 1 and k >= 1, got ln x = {log_x}, k = {k}")));
    }
    let beta = constants.beta0(k, ln_d);
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!("beta0 = {beta} outside (0, 1)")));
    }
    let ln_a = constants.a.ln();
    let x_pow = ((beta - 1.0) * log_x).exp();
    let ax_pow = ((beta - 1.0) * (log_x + ln_a)).exp();
    let denom = beta - x_pow;
    if denom <= 0.0 {
        return Err(Error::Domain(format!("beta0 - x^(beta0-1) = {denom} <= 0; x too small")));
    }
    let lhs = constants.a * ((beta - ax_pow) / denom) * (log_x / (log_x + ln_a));
    let kf = k as f64;
    let log_term = (2.0 * constants.a * beta * kf * constants.c1 * log_x / denom).ln() - constants.c2 * (log_x / kf).sqrt();
    let rhs = 1.0 + log_term.exp();
    Ok(InequalitySides { log_x, lhs, rhs })
}

/// The inequality defining `c(2)`: [`bertrand_inequality_sides`] with
/// `A = 2` at `x = exp(c·k·(ln D)²)`.
pub fn c2_inequality_sides(constants: &BoundConstants, k: u32, ln_d: f64, c: f64) -> Result<InequalitySides> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Domain(format!("c must be positive, got {c}")));
    }
    let at_two = BoundConstants { a: 2.0, ..*constants };
    bertrand_inequality_sides(&at_two, k, ln_d, c * k as f64 * ln_d * ln_d)
}

/// Samples of [`bertrand_inequality_sides`] at `points` log-uniform values of
/// `ln x` in `[log_from, log_to]`. Rows where the inequality is undefined are
/// skipped.
pub fn inequality_grid(
    constants: &BoundConstants,
    k: u32,
    ln_d: f64,
    log_from: f64,
    log_to: f64,
    points: usize,
) -> Result<Vec<InequalitySides>> {
    if !(log_from > 0.0 && log_to >= log_from) || points == 0 {
        return Err(Error::Domain("grid needs 0 < from <= to and at least one point".into()));
    }
    let (a, b) = (log_from.ln(), log_to.ln());
    let step = if points > 1 { (b - a) / (points - 1) as f64 } else { 0.0 };
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let lx = match i {
            0 => log_from,
            _ if i + 1 == points => log_to,
            _ => (a + step * i as f64).exp(),
        };
        match bertrand_inequality_sides(constants, k, ln_d, lx) {
            Ok(r) => rows.push(r),
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

/// `(4/π)^k (k!)² / k^{2k-1}`.
pub fn minkowski_middle(k: u32) -> f64 {
    let kf = k as f64;
    let ln_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    (kf * (4.0 / std::f64::consts::PI).ln() + 2.0 * ln_fact - (2.0 * kf - 1.0) * kf.ln()).exp()
}

/// `k/D ≤ (4/π)^k (k!)²/k^{2k-1} ≤ 8/π²`.
pub fn minkowski_check(k: u32, d: u128) -> Result<bool> {
    if k < 2 || d < 3 {
        return Err(Error::Domain(format!("Minkowski check needs k >= 2 and D >= 3, got k={k}, D={d}")));
    }
    let middle = minkowski_middle(k);
    let first = (k as f64 / d as f64) <= middle * (1.0 + 1e-12);
    // middle / (8/π²) = 4^k (k!)² / (8 k^{2k-1} π^{k-2}); equality at k = 2.
    let second = if k == 2 {
        true
    } else {
        let ln_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
        let kf = k as f64;
        let ln_ratio = kf * 4f64.ln() + 2.0 * ln_fact - 8f64.ln() - (2.0 * kf - 1.0) * kf.ln()
            - (kf - 2.0) * std::f64::consts::PI.ln();
        ln_ratio <= 0.0
    };
    Ok(first && second)
}
