//! Number field descriptors and the splitting of rational primes.
//!
//! Field specs use a small ASCII grammar:
//!
//! ```text
//! spec     := base suffix*
//! base     := "Q" | "quadratic:" int | "poly:" int ("," int)+
//! suffix   := ";k=" int | ";D=" int
//! ```
//!
//! Polynomial coefficients are listed constant-first and must end in 1.
//! Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ffpoly::{self, MonicIntPoly};
use crate::primes;

/// Coefficient bound for `poly:` specs; keeps rational-root search exact.
pub const MAX_COEFF: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    /// `Q(√d)` for squarefree `d ∉ {0, 1}`.
    Quadratic(i64),
    /// `Q[x]/(f)` with `O_K` assumed to behave like `Z[x]/(f)` at the primes
    /// used (see [`ffpoly::dedekind_split`]).
    Monogenic(MonicIntPoly),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    degree: u32,
    field_disc: BigInt,
    galois_k: Option<u32>,
    galois_abs_disc: Option<BigUint>,
    index_coprime_asserted: bool,
}

/// One prime ideal above `p`: `N(P) = p^residue_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitPart {
    pub residue_degree: u32,
    pub ramification: u32,
}

impl SplitPart {
    /// `(e, f)` in the conventional order.
    pub fn new(ramification: u32, residue_degree: u32) -> Self {
        SplitPart { residue_degree, ramification }
    }
}

/// Decomposition of `p O_K`, parts sorted by `(f, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalSplitting {
    pub p: u64,
    pub parts: Vec<SplitPart>,
}

impl LocalSplitting {
    pub fn new(p: u64, mut parts: Vec<SplitPart>) -> Self {
        parts.sort();
        LocalSplitting { p, parts }
    }

    /// `Σ e_i f_i`, which equals `[K:Q]`.
    pub fn total_degree(&self) -> u32 {
        self.parts.iter().map(|s| s.ramification * s.residue_degree).sum()
    }

    pub fn residue_degrees(&self) -> Vec<u32> {
        self.parts.iter().map(|s| s.residue_degree).collect()
    }

    pub fn splits_completely(&self, degree: u32) -> bool {
        self.parts.len() == degree as usize
            && self.parts.iter().all(|s| s.ramification == 1 && s.residue_degree == 1)
    }

    pub fn is_ramified(&self) -> bool {
        self.parts.iter().any(|s| s.ramification > 1)
    }
}

impl fmt::Display for LocalSplitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.parts.iter().map(|s| format!("(e={},f={})", s.ramification, s.residue_degree)).collect();
        write!(f, "{}: {}", self.p, parts.join(" "))
    }
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor {
            kind: FieldKind::Rational,
            degree: 1,
            field_disc: BigInt::one(),
            galois_k: Some(1),
            galois_abs_disc: Some(BigUint::one()),
            index_coprime_asserted: false,
        }
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidField(format!("quadratic parameter {d} must not be 0 or 1")));
        }
        if !primes::is_squarefree(d.unsigned_abs()) {
            return Err(Error::NotSquarefree(d));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(FieldDescriptor {
            kind: FieldKind::Quadratic(d),
            degree: 2,
            field_disc: BigInt::from(disc),
            galois_k: Some(2),
            galois_abs_disc: Some(BigUint::from(disc.unsigned_abs())),
            index_coprime_asserted: false,
        })
    }

    /// Field generated by a root of monic `f` (constant-first). Irreducibility
    /// beyond the squarefree and rational-root checks is taken on trust.
    pub fn monogenic(coeffs: Vec<i64>) -> Result<Self> {
        if let Some(&c) = coeffs.iter().find(|c| c.abs() > MAX_COEFF) {
            return Err(Error::InvalidField(format!("coefficient {c} exceeds 2^31 in magnitude")));
        }
        let f = MonicIntPoly::new(coeffs)?;
        if f.discriminant().is_zero() {
            return Err(Error::RepeatedFactor);
        }
        if let Some(r) = rational_root(&f) {
            return Err(Error::RationalRoot(r));
        }
        Ok(FieldDescriptor {
            degree: f.degree() as u32,
            field_disc: f.discriminant().clone(),
            kind: FieldKind::Monogenic(f),
            galois_k: None,
            galois_abs_disc: None,
            index_coprime_asserted: false,
        })
    }

    /// Supplies `k = [K^gal : Q]`.
    pub fn with_galois_degree(mut self, k: u32) -> Result<Self> {
        if k < self.degree {
            return Err(Error::InvalidField(format!("k={k} is smaller than the degree {}", self.degree)));
        }
        match (&self.kind, self.galois_k) {
            (FieldKind::Monogenic(_), _) => self.galois_k = Some(k),
            (_, Some(known)) if known == k => {}
            _ => return Err(Error::InvalidField(format!("k={k} contradicts the field"))),
        }
        Ok(self)
    }

    /// Supplies `D = |disc K^gal|`.
    pub fn with_galois_disc(mut self, d: BigUint) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidField("D must be positive".into()));
        }
        match (&self.kind, &self.galois_abs_disc) {
            (FieldKind::Monogenic(_), _) => self.galois_abs_disc = Some(d),
            (_, Some(known)) if *known == d => {}
            _ => return Err(Error::InvalidField(format!("D={d} contradicts the field"))),
        }
        Ok(self)
    }

    /// Trust Dedekind's criterion even where `p² | disc(f)`.
    pub fn assert_index_coprime(mut self, yes: bool) -> Self {
        self.index_coprime_asserted = yes;
        self
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// `n = [K:Q]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Discriminant of the field (quadratic, rational) or of the defining
    /// polynomial (monogenic).
    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    pub fn galois_degree(&self) -> Option<u32> {
        self.galois_k
    }

    pub fn galois_abs_disc(&self) -> Option<&BigUint> {
        self.galois_abs_disc.as_ref()
    }

    pub fn index_coprime_asserted(&self) -> bool {
        self.index_coprime_asserted
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind, FieldKind::Rational)
    }

    /// Canonical spec string; parses back to an equal descriptor.
    pub fn render(&self) -> String {
        match &self.kind {
            FieldKind::Rational => "Q".to_string(),
            FieldKind::Quadratic(d) => format!("quadratic:{d}"),
            FieldKind::Monogenic(f) => {
                let c: Vec<String> = f.coeffs().iter().map(i64::to_string).collect();
                let mut s = format!("poly:{}", c.join(","));
                if let Some(k) = self.galois_k {
                    s.push_str(&format!(";k={k}"));
                }
                if let Some(d) = &self.galois_abs_disc {
                    s.push_str(&format!(";D={d}"));
                }
                s
            }
        }
    }

    /// Splitting type of the rational prime `p`.
    pub fn splitting_type(&self, p: u64) -> Result<LocalSplitting> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match &self.kind {
            FieldKind::Rational => Ok(LocalSplitting::new(p, vec![SplitPart::new(1, 1)])),
            FieldKind::Quadratic(_) => {
                let disc = self.field_disc.to_i64().expect("quadratic discriminant fits i64");
                let parts = match kronecker(disc, p) {
                    1 => vec![SplitPart::new(1, 1), SplitPart::new(1, 1)],
                    -1 => vec![SplitPart::new(1, 2)],
                    _ => vec![SplitPart::new(2, 1)],
                };
                Ok(LocalSplitting::new(p, parts))
            }
            FieldKind::Monogenic(f) => ffpoly::dedekind_split(f, p, self.index_coprime_asserted),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_field(s)
    }
}

fn rational_root(f: &MonicIntPoly) -> Option<i64> {
    // Monic: rational roots are integers dividing the constant term.
    let c0 = f.coeffs()[0];
    if c0 == 0 {
        return Some(0);
    }
    let n = c0.unsigned_abs();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            for cand in [d, n / d] {
                for r in [cand as i64, -(cand as i64)] {
                    if f.eval(r).is_zero() {
                        return Some(r);
                    }
                }
            }
        }
        d += 1;
    }
    None
}

/// Parses a field spec; see the module docs for the grammar.
pub fn parse_field(spec: &str) -> Result<FieldDescriptor> {
    // Keep original byte offsets for error positions while skipping spaces.
    let chars: Vec<(usize, char)> = spec.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let text: String = chars.iter().map(|&(_, c)| c).collect();
    let pos = |i: usize| chars.get(i).map(|&(p, _)| p).unwrap_or(spec.len());
    if text.is_empty() {
        return Err(Error::syntax(0, "empty field spec"));
    }

    let mut sections = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == ';' {
            sections.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    sections.push((start, &text[start..]));

    let (base_at, base) = sections[0];
    let mut field = if base == "Q" {
        FieldDescriptor::rational()
    } else if let Some(rest) = base.strip_prefix("quadratic:") {
        let at = base_at + "quadratic:".len();
        let d = parse_int(rest).map_err(|m| Error::syntax(pos(at), m))?;
        FieldDescriptor::quadratic(d)?
    } else if let Some(rest) = base.strip_prefix("poly:") {
        let mut at = base_at + "poly:".len();
        let mut coeffs = Vec::new();
        for tok in rest.split(',') {
            coeffs.push(parse_int(tok).map_err(|m| Error::syntax(pos(at), m))?);
            at += tok.len() + 1;
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidField("polynomial must have degree at least 2".into()));
        }
        if coeffs.last() != Some(&1) {
            return Err(Error::NotMonic);
        }
        FieldDescriptor::monogenic(coeffs)?
    } else {
        return Err(Error::syntax(pos(base_at), format!("expected 'Q', 'quadratic:' or 'poly:', found '{base}'")));
    };

    let (mut seen_k, mut seen_d) = (false, false);
    for &(at, sec) in &sections[1..] {
        if let Some(v) = sec.strip_prefix("k=") {
            if seen_k {
                return Err(Error::syntax(pos(at), "duplicate k suffix"));
            }
            seen_k = true;
            let k = parse_int(v).map_err(|m| Error::syntax(pos(at + 2), m))?;
            let k = u32::try_from(k).map_err(|_| Error::syntax(pos(at + 2), "k must be positive"))?;
            field = field.with_galois_degree(k)?;
        } else if let Some(v) = sec.strip_prefix("D=") {
            if seen_d {
                return Err(Error::syntax(pos(at), "duplicate D suffix"));
            }
            seen_d = true;
            let d: BigUint = v.parse().map_err(|_| Error::syntax(pos(at + 2), format!("invalid D '{v}'")))?;
            field = field.with_galois_disc(d)?;
        } else {
            return Err(Error::syntax(pos(at), format!("unknown suffix '{sec}'")));
        }
    }
    Ok(field)
}

fn parse_int(tok: &str) -> std::result::Result<i64, String> {
    if tok.is_empty() {
        return Err("expected an integer".into());
    }
    tok.parse::<i64>().map_err(|_| format!("invalid integer '{tok}'"))
}

/// Kronecker symbol `(a | m)` for `m ≥ 1`.
pub fn kronecker(a: i64, m: u64) -> i8 {
    assert!(m >= 1, "kronecker symbol needs m >= 1");
    let mut m = m;
    let mut sign = 1i8;
    let twos = m.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a|2) = -1 iff a ≡ ±3 (mod 8)
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        m >>= twos;
    }
    let r = (a as i128).rem_euclid(m as i128) as u64;
    sign * jacobi(r, m)
}

/// Jacobi symbol for odd `n ≥ 1` and `0 ≤ a`.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut result = 1i8;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let q = parse_field("Q").unwrap();
        assert_eq!((q.degree(), q.galois_degree(), q.galois_abs_disc().cloned()), (1, Some(1), Some(BigUint::one())));
        let k = parse_field("quadratic:-3").unwrap();
        assert_eq!(k.kind(), &FieldKind::Quadratic(-3));
        assert_eq!(k.degree(), 2);
        assert_eq!(k.field_disc(), &BigInt::from(-3));
        assert_eq!(k.galois_degree(), Some(2));
        assert_eq!(k.galois_abs_disc(), Some(&BigUint::from(3u32)));
        assert_eq!(parse_field("quadratic:12"), Err(Error::NotSquarefree(12)));
        assert_eq!(parse_field("quadratic:-1").unwrap().field_disc(), &BigInt::from(-4));
        assert_eq!(parse_field("quadratic:5").unwrap().field_disc(), &BigInt::from(5));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_field("quadratic:x"), Err(Error::Syntax { position: 10, .. })));
        assert!(matches!(parse_field("cubic:2"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_field("Q;z=1"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_field("poly:1,,1"), Err(Error::Syntax { position: 7, .. })));
        assert!(matches!(parse_field(""), Err(Error::Syntax { .. })));
        assert_eq!(parse_field("poly:1,1,2"), Err(Error::NotMonic));
        assert_eq!(parse_field("poly:-1,0,1"), Err(Error::RationalRoot(1)));
        assert_eq!(parse_field("poly:0,1,1"), Err(Error::RationalRoot(0)));
        assert_eq!(parse_field("poly:1,2,1"), Err(Error::RepeatedFactor));
        assert!(matches!(parse_field("poly:1,1"), Err(Error::InvalidField(_))));
        assert!(matches!(parse_field("quadratic:0"), Err(Error::InvalidField(_))));
        assert!(matches!(parse_field("quadratic:-3;k=3"), Err(Error::InvalidField(_))));
        assert!(parse_field("quadratic:-3;k=2;D=3").is_ok());
    }

    #[test]
    fn render_round_trip() {
        for s in ["Q", "quadratic:-3", "quadratic:5", "poly:1,1,1", "poly:-1,-1,0,1;k=6;D=12167", "poly:2,0,0,1;k=6"] {
            let f = parse_field(s).unwrap();
            assert_eq!(f.render(), s);
            assert_eq!(parse_field(&f.render()).unwrap(), f);
        }
        assert_eq!(parse_field(" quadratic : -3 ").unwrap().render(), "quadratic:-3");
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, 3), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(5, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(7, 1), 1);
        assert_eq!(kronecker(-1, 1), 1);
    }

    fn euler(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u128;
        if r == 0 {
            return 0;
        }
        let mut acc = 1u128;
        let mut b = r;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        if acc == 1 { 1 } else { -1 }
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in primes::primes_up_to(400).into_iter().skip(1) {
            for a in -60..60 {
                assert_eq!(kronecker(a, p), euler(a, p), "a={a} p={p}");
            }
        }
    }

    proptest! {
        #[test]
        fn kronecker_multiplicative_in_m(a in -500i64..500, m1 in 1u64..300, m2 in 1u64..300) {
            prop_assert_eq!(kronecker(a, m1 * m2), kronecker(a, m1) * kronecker(a, m2));
        }
    }

    #[test]
    fn quadratic_splitting_table() {
        let k = parse_field("quadratic:-3").unwrap();
        assert_eq!(k.splitting_type(7).unwrap().parts, vec![SplitPart::new(1, 1), SplitPart::new(1, 1)]);
        assert_eq!(k.splitting_type(2).unwrap().parts, vec![SplitPart::new(1, 2)]);
        assert_eq!(k.splitting_type(3).unwrap().parts, vec![SplitPart::new(2, 1)]);
        assert_eq!(k.splitting_type(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldDescriptor::rational().splitting_type(5).unwrap().parts, vec![SplitPart::new(1, 1)]);
    }

    #[test]
    fn fundamental_identity_and_quadratic_dichotomy() {
        let fields: Vec<FieldDescriptor> = ["Q", "quadratic:-3", "quadratic:5", "quadratic:-1", "quadratic:-5", "poly:-1,-1,0,1", "poly:2,0,0,0,1"]
            .iter()
            .map(|s| parse_field(s).unwrap().assert_index_coprime(true))
            .collect();
        for f in &fields {
            for p in primes::primes_up_to(500) {
                let s = f.splitting_type(p).unwrap();
                assert_eq!(s.total_degree(), f.degree(), "{f} at {p}");
                if let FieldKind::Quadratic(_) = f.kind() {
                    let d = f.field_disc().to_i64().unwrap();
                    if d % p as i64 != 0 {
                        assert_eq!(s.splits_completely(2), kronecker(d, p) == 1);
                        assert_eq!(s.parts == vec![SplitPart::new(1, 2)], kronecker(d, p) == -1);
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_kronecker_matches_dedekind() {
        // minimal polynomial of the standard integral generator
        for d in [-3i64, 5, -1, -5, 2, 13, -7, 10] {
            let k = FieldDescriptor::quadratic(d).unwrap();
            let coeffs = if d.rem_euclid(4) == 1 { vec![(1 - d) / 4, -1, 1] } else { vec![-d, 0, 1] };
            let f = MonicIntPoly::new(coeffs).unwrap();
            assert_eq!(f.discriminant(), k.field_disc());
            for p in primes::primes_up_to(10_000) {
                if ffpoly::index_divisor_risk(&f, p) {
                    continue;
                }
                assert_eq!(k.splitting_type(p).unwrap(), ffpoly::dedekind_split(&f, p, false).unwrap(), "d={d} p={p}");
            }
        }
    }
}
