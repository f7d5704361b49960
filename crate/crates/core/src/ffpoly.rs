//! Polynomials over prime fields, just enough to read off how a monic integer
//! polynomial factors modulo `p`: squarefree decomposition, distinct-degree
//! counting and the Dedekind criterion.
//!
//! No equal-degree splitting is performed, so everything here is
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{LocalSplitting, SplitPart};

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A polynomial over `F_p`, constant coefficient first, trailing zeros
/// stripped. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimePoly(mod {}: {})", self.p, self)
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl PrimePoly {
    /// Builds a polynomial from unreduced residues.
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let mut out = PrimePoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        out.normalize();
        out
    }

    /// Reduces signed integer coefficients modulo `p`.
    pub fn from_ints(p: u64, coeffs: &[i64]) -> Self {
        let m = p as i128;
        Self::new(p, coeffs.iter().map(|&c| (c as i128).rem_euclid(m) as u64))
    }

    pub fn zero(p: u64) -> Self {
        PrimePoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, [1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, [0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        Self::new(
            p,
            (0..n).map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            }),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        Self::new(
            p,
            (0..n).map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            }),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.deg_or_zero();
        let inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], inv, p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - mul_mod(c, d, p)) % p;
            }
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p)),
        )
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// For `f(x) = g(x^p)`, returns `g` with coefficients mapped through the
    /// inverse Frobenius (the identity on `F_p`).
    fn pth_root(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().step_by(self.p as usize).copied())
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &PrimePoly, b: &PrimePoly) -> Result<PrimePoly> {
    a.check(b)?;
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// `x^(p^d) mod f` by `d` successive `p`-th powers.
pub fn frobenius_power(f: &PrimePoly, d: u32) -> PrimePoly {
    let p = f.modulus();
    let mut h = PrimePoly::x(p).rem(f);
    for _ in 0..d {
        h = h.pow_mod(p, f);
    }
    h
}

/// Writes monic `f` as `∏ g_i^i` with every `g_i` squarefree and the `g_i`
/// pairwise coprime. Output is sorted by multiplicity.
pub fn squarefree_decomposition(f: &PrimePoly) -> Vec<(PrimePoly, u32)> {
    let mut out = Vec::new();
    sfd_into(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, i)| *i);
    out
}

fn sfd_into(f: &PrimePoly, scale: u32, out: &mut Vec<(PrimePoly, u32)>) {
    let p = f.modulus();
    if f.deg_or_zero() == 0 {
        return;
    }
    let gcd = |a: &PrimePoly, b: &PrimePoly| poly_gcd(a, b).expect("same modulus");
    let mut c = gcd(f, &f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd(&w, &c);
        let factor = w.div_rem(&y).0;
        if factor.deg_or_zero() > 0 {
            out.push((factor, i * scale));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root();
        sfd_into(&root, scale * p as u32, out);
    }
}

/// Number of distinct monic irreducible factors of each degree of a monic
/// squarefree `f`.
pub fn distinct_degree_counts(f: &PrimePoly) -> Result<BTreeMap<usize, usize>> {
    let p = f.modulus();
    let mut rest = f.monic();
    let deg = rest.deg_or_zero();
    if deg >= 1 {
        let fp = rest.derivative();
        if fp.is_zero() || !poly_gcd(&rest, &fp)?.is_one() {
            return Err(Error::NotSquarefreeModP(p));
        }
    }
    let mut counts = BTreeMap::new();
    let x = PrimePoly::x(p);
    let mut h = x.rem(&rest);
    let mut d = 1usize;
    while 2 * d <= rest.deg_or_zero() {
        h = h.pow_mod(p, &rest);
        let g = poly_gcd(&rest, &h.sub(&x))?;
        let gd = g.deg_or_zero();
        if gd > 0 {
            counts.insert(d, gd / d);
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    let left = rest.deg_or_zero();
    if left > 0 {
        counts.insert(left, 1);
    }
    Ok(counts)
}

/// Irreducible factor shape of a polynomial modulo `p`: `count` distinct
/// factors of each `degree`, each appearing to the power `multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeProfile {
    pub entries: Vec<DegreeProfileEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreeProfileEntry {
    pub degree: usize,
    pub count: usize,
    pub multiplicity: u32,
}

impl DegreeProfile {
    pub fn of(f: &PrimePoly) -> Result<Self> {
        let mut entries = Vec::new();
        for (g, mult) in squarefree_decomposition(f) {
            for (degree, count) in distinct_degree_counts(&g)? {
                entries.push(DegreeProfileEntry { degree, count, multiplicity: mult });
            }
        }
        entries.sort();
        Ok(DegreeProfile { entries })
    }

    /// `Σ degree·count·multiplicity`.
    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|e| e.degree * e.count * e.multiplicity as usize).sum()
    }
}

/// Largest polynomial degree for which the discriminant is computed.
pub const MAX_DEGREE: usize = 8;

/// A monic integer polynomial of degree `2..=8` together with its exact
/// discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonicIntPoly {
    coeffs: Vec<i64>,
    disc: BigInt,
}

impl MonicIntPoly {
    /// Validates monicity and degree and computes the discriminant.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.last() != Some(&1) {
            return Err(Error::NotMonic);
        }
        let deg = coeffs.len() - 1;
        if !(2..=MAX_DEGREE).contains(&deg) {
            return Err(Error::InvalidField(format!(
                "polynomial degree {deg} outside supported range 2..={MAX_DEGREE}"
            )));
        }
        let disc = discriminant(&coeffs);
        Ok(MonicIntPoly { coeffs, disc })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn reduce(&self, p: u64) -> PrimePoly {
        PrimePoly::from_ints(p, &self.coeffs)
    }

    /// Exact value at an integer point.
    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * &x + c)
    }
}

/// `disc(f) = (-1)^{n(n-1)/2} res(f, f')` for monic `f`.
fn discriminant(coeffs: &[i64]) -> BigInt {
    let n = coeffs.len() - 1;
    let f: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let res = resultant(&f, &df);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Resultant via the Sylvester matrix and fraction-free (Bareiss)
/// elimination. Coefficients are constant-first.
fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

/// Splitting of `p` read off from the factorization of `f` modulo `p`.
///
/// Valid when `p` does not divide the index `[O_K : Z[θ]]`. Since
/// `disc(f) = index² · disc(K)`, the condition `p² ∤ disc(f)` guarantees this;
/// otherwise the caller must assert it.
pub fn dedekind_split(f: &MonicIntPoly, p: u64, index_coprime_asserted: bool) -> Result<LocalSplitting> {
    if !crate::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !index_coprime_asserted {
        let p2 = BigInt::from(p) * BigInt::from(p);
        if (f.discriminant() % &p2).is_zero() {
            return Err(Error::IndexDivisorRisk { p, disc: f.discriminant().to_string() });
        }
    }
    let profile = DegreeProfile::of(&f.reduce(p))?;
    let mut parts = Vec::new();
    for e in &profile.entries {
        for _ in 0..e.count {
            parts.push(SplitPart { residue_degree: e.degree as u32, ramification: e.multiplicity });
        }
    }
    Ok(LocalSplitting::new(p, parts))
}

/// Whether `p²` divides the discriminant of `f`.
pub fn index_divisor_risk(f: &MonicIntPoly, p: u64) -> bool {
    let p2 = BigInt::from(p) * BigInt::from(p);
    (f.discriminant().abs() % p2).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(p: u64, c: &[u64]) -> PrimePoly {
        PrimePoly::new(p, c.iter().copied())
    }

    #[test]
    fn gcd_examples() {
        // x^2 - 1 and x - 1 mod 5
        let g = poly_gcd(&pp(5, &[4, 0, 1]), &pp(5, &[4, 1])).unwrap();
        assert_eq!(g, pp(5, &[4, 1]));
        let f = pp(5, &[2, 0, 3]);
        assert_eq!(poly_gcd(&f, &PrimePoly::zero(5)).unwrap(), f.monic());
        assert!(poly_gcd(&pp(5, &[1, 0, 1]), &pp(5, &[1, 1])).unwrap().is_one());
        assert!(poly_gcd(&PrimePoly::zero(5), &PrimePoly::zero(5)).unwrap().is_zero());
        assert_eq!(
            poly_gcd(&pp(5, &[1, 1]), &pp(7, &[1, 1])),
            Err(Error::ModulusMismatch(5, 7))
        );
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_power(&pp(3, &[1, 0, 1]), 1), pp(3, &[0, 2]));
        assert!(frobenius_power(&pp(7, &[0, 1]), 1).is_zero());
        assert_eq!(frobenius_power(&pp(2, &[1, 1, 1]), 2), pp(2, &[0, 1]));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decomposition(&pp(2, &[1, 0, 1])), vec![(pp(2, &[1, 1]), 2)]);
        assert_eq!(squarefree_decomposition(&pp(5, &[1, 0, 1])), vec![(pp(5, &[1, 0, 1]), 1)]);
        assert_eq!(squarefree_decomposition(&pp(3, &[0, 0, 0, 1])), vec![(pp(3, &[0, 1]), 3)]);
        // x (x+1)^2 (x+2)^3 mod 3 mixes the separable loop with a p-th root.
        let f = pp(3, &[0, 1]).mul(&pp(3, &[1, 1]).mul(&pp(3, &[1, 1]))).mul(&pp(3, &[2, 1]).pow_mod(3, &pp(3, &[0, 0, 0, 0, 0, 0, 0, 1])));
        assert_eq!(
            squarefree_decomposition(&f),
            vec![(pp(3, &[0, 1]), 1), (pp(3, &[1, 1]), 2), (pp(3, &[2, 1]), 3)]
        );
    }

    #[test]
    fn distinct_degree_examples() {
        let c = |p, v: &[u64]| distinct_degree_counts(&pp(p, v)).unwrap().into_iter().collect::<Vec<_>>();
        assert_eq!(c(5, &[1, 0, 1]), vec![(1, 2)]);
        assert_eq!(c(3, &[1, 0, 1]), vec![(2, 1)]);
        assert_eq!(c(7, &[1, 1, 1]), vec![(1, 2)]);
        assert_eq!(
            distinct_degree_counts(&pp(2, &[1, 0, 1])),
            Err(Error::NotSquarefreeModP(2))
        );
    }

    #[test]
    fn discriminants() {
        assert_eq!(MonicIntPoly::new(vec![1, 1, 1]).unwrap().discriminant(), &BigInt::from(-3));
        assert_eq!(MonicIntPoly::new(vec![-5, 0, 1]).unwrap().discriminant(), &BigInt::from(20));
        // x^3 - x - 1 has discriminant -23; x^3 + x + 1 has -31.
        assert_eq!(MonicIntPoly::new(vec![-1, -1, 0, 1]).unwrap().discriminant(), &BigInt::from(-23));
        assert_eq!(MonicIntPoly::new(vec![1, 1, 0, 1]).unwrap().discriminant(), &BigInt::from(-31));
        // x^4 + 1: 256
        assert_eq!(MonicIntPoly::new(vec![1, 0, 0, 0, 1]).unwrap().discriminant(), &BigInt::from(256));
        assert_eq!(MonicIntPoly::new(vec![1, 2, 2]), Err(Error::NotMonic));
    }

    #[test]
    fn dedekind_examples() {
        let f = MonicIntPoly::new(vec![1, 1, 1]).unwrap();
        let s = dedekind_split(&f, 7, false).unwrap();
        assert_eq!(s.parts, vec![SplitPart::new(1, 1), SplitPart::new(1, 1)]);
        let s = dedekind_split(&f, 3, false).unwrap();
        assert_eq!(s.parts, vec![SplitPart::new(2, 1)]);
        let g = MonicIntPoly::new(vec![-5, 0, 1]).unwrap();
        assert!(matches!(dedekind_split(&g, 2, false), Err(Error::IndexDivisorRisk { p: 2, .. })));
        // asserted: naive factorization (x+1)^2 reports ramification.
        assert_eq!(dedekind_split(&g, 2, true).unwrap().parts, vec![SplitPart::new(2, 1)]);
    }

    /// All monic polynomials of the given degree mod p.
    fn monics(p: u64, deg: usize) -> Vec<PrimePoly> {
        let total = p.pow(deg as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(deg + 1);
                for _ in 0..deg {
                    c.push(idx % p);
                    idx /= p;
                }
                c.push(1);
                PrimePoly::new(p, c)
            })
            .collect()
    }

    /// Factorization by trial division with every monic polynomial of small
    /// degree; returns sorted (degree, multiplicity) per irreducible factor.
    fn brute_factor(f: &PrimePoly) -> Vec<(usize, u32)> {
        let p = f.modulus();
        let mut rest = f.monic();
        let mut out = Vec::new();
        for d in 1..=rest.deg_or_zero() {
            if rest.deg_or_zero() == 0 {
                break;
            }
            for g in monics(p, d) {
                let mut mult = 0;
                loop {
                    let (q, r) = rest.div_rem(&g);
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((d, mult));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn dedekind_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let primes = crate::primes::primes_up_to(50);
        for _ in 0..120 {
            let deg = rng.gen_range(2..=4);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-6..=6)).collect();
            c.push(1);
            let f = MonicIntPoly::new(c).unwrap();
            if f.discriminant().is_zero() {
                continue;
            }
            for &p in &primes {
                if index_divisor_risk(&f, p) {
                    continue;
                }
                let s = dedekind_split(&f, p, false).unwrap();
                let mut got: Vec<(usize, u32)> =
                    s.parts.iter().map(|x| (x.residue_degree as usize, x.ramification)).collect();
                got.sort();
                assert_eq!(got, brute_factor(&f.reduce(p)), "f={:?} p={p}", f.coeffs());
            }
        }
    }

    proptest! {
        #[test]
        fn ddc_degrees_sum_to_degree(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), c in prop::collection::vec(0u64..13, 1..6)) {
            let mut c = c;
            c.push(1);
            let f = PrimePoly::new(p, c);
            let profile = DegreeProfile::of(&f).unwrap();
            prop_assert_eq!(profile.total_degree(), f.degree().unwrap());
            for (g, _) in squarefree_decomposition(&f) {
                let counts = distinct_degree_counts(&g).unwrap();
                let total: usize = counts.iter().map(|(d, n)| d * n).sum();
                prop_assert_eq!(total, g.degree().unwrap());
            }
        }

        #[test]
        fn squarefree_product_reconstructs(p in prop::sample::select(vec![2u64, 3, 5]), c in prop::collection::vec(0u64..5, 1..7)) {
            let mut c = c;
            c.push(1);
            let f = PrimePoly::new(p, c);
            let mut prod = PrimePoly::one(p);
            for (g, i) in squarefree_decomposition(&f) {
                for _ in 0..i {
                    prod = prod.mul(&g);
                }
            }
            prop_assert_eq!(prod, f);
        }
    }
}
