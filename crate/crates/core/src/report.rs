//! Serializable reports. Every report carries `schema_version`; field
//! descriptors appear in their canonical rendered form.

use serde::{Deserialize, Serialize};

use crate::analytic::{BertrandReport, BoundConstants, InequalitySides, ThresholdReport};
use crate::error::Result;
use crate::factored::FactoredValue;
use crate::field::{FieldDescriptor, LocalSplitting};
use crate::ideal_count::IdealCountSieve;
use crate::solver::{SearchMode, SearchOutcome, SolutionKind, SolutionTuple};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    /// `a(l_m)`.
    pub a_lm: u64,
    /// Largest norm value below `l_m`.
    pub pred_norm: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub ls: Vec<u64>,
    pub kind: SolutionKind,
    pub canonical: bool,
    pub witnesses: Witnesses,
}

impl SolutionRecord {
    pub fn new(sieve: &IdealCountSieve, sol: &SolutionTuple) -> Result<Self> {
        let lm = sol.last();
        Ok(SolutionRecord {
            ls: sol.ls.clone(),
            kind: sol.kind,
            canonical: sol.canonical,
            witnesses: Witnesses { a_lm: sieve.a(lm)?, pred_norm: sieve.predecessor_norm(lm)? },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub checked: u64,
    pub log_collisions: u64,
    /// Only present when timing was requested; it would otherwise break
    /// byte-identical reruns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub field: String,
    #[serde(rename = "X")]
    pub x: u64,
    pub m: usize,
    pub mode: SearchMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub solutions: Vec<SolutionRecord>,
    pub stats: StatsRecord,
}

impl SearchReport {
    pub fn new(sieve: &IdealCountSieve, m: usize, mode: SearchMode, outcome: &SearchOutcome) -> Result<Self> {
        let solutions = outcome.solutions.iter().map(|s| SolutionRecord::new(sieve, s)).collect::<Result<_>>()?;
        let note = sieve
            .field()
            .is_rational()
            .then(|| "over Q every integer is a norm, so a solution is trivial iff l_m - l_{m-1} = 1".to_string());
        Ok(SearchReport {
            schema_version: SCHEMA_VERSION,
            field: sieve.field().render(),
            x: sieve.limit(),
            m,
            mode,
            note,
            solutions,
            stats: StatsRecord {
                checked: outcome.stats.checked,
                log_collisions: outcome.stats.log_collisions,
                runtime_ms: None,
            },
        })
    }

    pub fn tuples(&self) -> Vec<Vec<u64>> {
        self.solutions.iter().map(|s| s.ls.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartRecord {
    pub e: u32,
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRecord {
    pub p: u64,
    pub parts: Vec<SplitPartRecord>,
    pub splits_completely: bool,
    pub ramified: bool,
}

impl SplittingRecord {
    pub fn new(s: &LocalSplitting, degree: u32) -> Self {
        SplittingRecord {
            p: s.p,
            parts: s.parts.iter().map(|q| SplitPartRecord { e: q.ramification, f: q.residue_degree }).collect(),
            splits_completely: s.splits_completely(degree),
            ramified: s.is_ramified(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfoReport {
    pub schema_version: u32,
    pub field: String,
    pub degree: u32,
    /// Discriminant of the defining polynomial (of the field for Q and
    /// quadratic fields), as a decimal string.
    pub discriminant: String,
    pub galois_degree: Option<u32>,
    pub galois_abs_disc: Option<String>,
    pub index_coprime_asserted: bool,
    /// Splitting of every prime up to the requested bound.
    pub splitting: Vec<SplittingRecord>,
}

impl FieldInfoReport {
    pub fn new(field: &FieldDescriptor, splitting: &[LocalSplitting]) -> Self {
        FieldInfoReport {
            schema_version: SCHEMA_VERSION,
            field: field.render(),
            degree: field.degree(),
            discriminant: field.field_disc().to_string(),
            galois_degree: field.galois_degree(),
            galois_abs_disc: field.galois_abs_disc().map(|d| d.to_string()),
            index_coprime_asserted: field.index_coprime_asserted(),
            splitting: splitting.iter().map(|s| SplittingRecord::new(s, field.degree())).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: u64,
    pub a: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCountReport {
    pub schema_version: u32,
    pub field: String,
    #[serde(rename = "X")]
    pub x: u64,
    /// `Σ_{n ≤ X} a(n)`.
    pub total: u64,
    pub rows: Vec<CountRow>,
}

impl IdealCountReport {
    /// Rows for every `n ≤ X`, or only attained norms when `nonzero_only`.
    pub fn new(sieve: &IdealCountSieve, nonzero_only: bool) -> Self {
        let rows: Vec<CountRow> = sieve
            .counts()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|&(_, &a)| !nonzero_only || a > 0)
            .map(|(n, &a)| CountRow { n: n as u64, a: a as u64 })
            .collect();
        IdealCountReport {
            schema_version: SCHEMA_VERSION,
            field: sieve.field().render(),
            x: sieve.limit(),
            total: sieve.counts().iter().map(|&a| a as u64).sum(),
            rows,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeExponent {
    pub p: u64,
    pub e: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorialReport {
    pub schema_version: u32,
    pub field: String,
    pub x: u64,
    /// `"2^3 * 3 * 5"`.
    pub factored: String,
    pub log10: f64,
    /// Decimal value when it fits in 128 bits.
    pub value: Option<String>,
    pub exponents: Vec<PrimeExponent>,
}

impl FactorialReport {
    pub fn new(field: &FieldDescriptor, x: u64, value: &FactoredValue) -> Self {
        FactorialReport {
            schema_version: SCHEMA_VERSION,
            field: field.render(),
            x,
            factored: value.to_string(),
            log10: value.log10(),
            value: value.to_u128().map(|v| v.to_string()),
            exponents: value.exponents().iter().map(|(&p, &e)| PrimeExponent { p, e }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPrimesReport {
    pub schema_version: u32,
    pub field: String,
    #[serde(rename = "X")]
    pub x: u64,
    pub count: u64,
    pub primes: Vec<u64>,
}

impl SplitPrimesReport {
    pub fn new(field: &FieldDescriptor, x: u64, primes: Vec<u64>) -> Self {
        SplitPrimesReport {
            schema_version: SCHEMA_VERSION,
            field: field.render(),
            x,
            count: primes.len() as u64,
            primes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BertrandCheckReport {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: BertrandReport,
}

impl From<BertrandReport> for BertrandCheckReport {
    fn from(report: BertrandReport) -> Self {
        BertrandCheckReport { schema_version: SCHEMA_VERSION, report }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub field: String,
    pub constants: BoundConstants,
    /// `c(2)`.
    pub c2: f64,
    /// `[K^gal : Q]`, when known.
    pub k: Option<u32>,
    /// `ln |disc K^gal|`, when known.
    pub ln_d: Option<f64>,
    /// `c(2)·k·(ln D)²`.
    pub log_bound: Option<f64>,
    /// The defining inequality at `ln x = c(2)·k·(ln D)²`.
    pub c2_sides: Option<InequalitySides>,
    pub threshold: Option<ThresholdReport>,
    /// `(log_x, lhs, rhs)` samples for plotting.
    pub grid: Vec<InequalitySides>,
}
