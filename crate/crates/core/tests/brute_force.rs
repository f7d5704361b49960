//! Searches against unpruned enumeration. The oracle here recomputes `a(n)`
//! from the divisor sum `Σ_{d|n} χ(d)` (quadratic fields) and builds `Π_K` as
//! dense exponent vectors, sharing nothing with `PiTable`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use nfactorial::field::{kronecker, parse_field};
use nfactorial::primes::{factorize, primes_up_to};
use nfactorial::solver::{lemma_check, search_general_m, search_m3, search_trivial_m3_heads};
use nfactorial::{FieldDescriptor, FieldKind, IdealCountSieve, PiTable, SearchMode, SolutionKind};

fn quad_disc(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

fn oracle_counts(field: &FieldDescriptor, x: u64) -> Vec<u64> {
    (0..=x)
        .map(|n| match field.kind() {
            _ if n == 0 => 0,
            FieldKind::Rational => 1,
            FieldKind::Quadratic(d) => {
                let disc = quad_disc(*d);
                (1..=n).filter(|k| n % k == 0).map(|k| kronecker(disc, k) as i64).sum::<i64>() as u64
            }
            FieldKind::Monogenic(_) => panic!("no divisor-sum oracle"),
        })
        .collect()
}

struct Oracle {
    counts: Vec<u64>,
    prime_index: HashMap<u64, usize>,
    /// `pis[x]` = exponent vector of `Π_K(x)`.
    pis: Vec<Vec<u64>>,
}

impl Oracle {
    fn new(field: &FieldDescriptor, x: u64) -> Self {
        let counts = oracle_counts(field, x);
        let primes = primes_up_to(x);
        let prime_index: HashMap<u64, usize> = primes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut cur = vec![0u64; primes.len()];
        let mut pis = vec![cur.clone()];
        for n in 1..=x {
            for (p, e) in factorize(n) {
                cur[prime_index[&p]] += e as u64 * counts[n as usize];
            }
            pis.push(cur.clone());
        }
        Oracle { counts, prime_index, pis }
    }

    fn is_norm(&self, n: u64) -> bool {
        self.counts[n as usize] > 0
    }

    fn kind(&self, l_prev: u64, lm: u64) -> SolutionKind {
        if (l_prev + 1..lm).any(|n| self.is_norm(n)) {
            SolutionKind::NonTrivial
        } else {
            SolutionKind::Trivial
        }
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// Canonical solutions `(l_1, …, l_m)` with `l_m ≤ x`, from every
    /// non-decreasing head of integers `≥ 2`.
    fn solutions(&self, x: u64, m: usize) -> BTreeSet<(Vec<u64>, SolutionKind)> {
        let mut by_value: HashMap<&[u64], Vec<u64>> = HashMap::new();
        for l in 2..=x {
            by_value.entry(&self.pis[l as usize]).or_default().push(l);
        }
        let mut out = BTreeSet::new();
        let mut head = Vec::new();
        self.heads(x, m - 1, 2, &mut head, &mut |head| {
            let sum = head.iter().skip(1).fold(self.pis[head[0] as usize].clone(), |acc, &l| {
                self.add(&acc, &self.pis[l as usize])
            });
            let last = *head.last().unwrap();
            for &lm in by_value.get(sum.as_slice()).into_iter().flatten() {
                if lm > last && self.is_norm(lm) && head.iter().all(|&l| self.is_norm(l)) {
                    let mut ls = head.to_vec();
                    ls.push(lm);
                    out.insert((ls, self.kind(last, lm)));
                }
            }
        });
        out
    }

    fn heads(&self, x: u64, len: usize, from: u64, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for l in from..x {
            cur.push(l);
            self.heads(x, len, l, cur, f);
            cur.pop();
        }
    }
}

fn table(spec: &str, x: u64) -> PiTable {
    PiTable::new(Arc::new(IdealCountSieve::build(&parse_field(spec).unwrap(), x).unwrap()))
}

fn found(outcome: &nfactorial::SearchOutcome) -> BTreeSet<(Vec<u64>, SolutionKind)> {
    assert!(outcome.solutions.iter().all(|s| s.canonical));
    outcome.solutions.iter().map(|s| (s.ls.clone(), s.kind)).collect()
}

#[test]
fn oracle_sanity() {
    let f = parse_field("quadratic:-3").unwrap();
    let o = Oracle::new(&f, 20);
    assert_eq!(&o.counts[1..=13], &[1, 0, 1, 1, 0, 0, 2, 0, 1, 0, 0, 1, 2]);
    let q = Oracle::new(&parse_field("Q").unwrap(), 10);
    assert_eq!(q.pis[10][q.prime_index[&2]], 8);
}

#[test]
fn m3_matches_triple_enumeration() {
    for spec in ["quadratic:-3", "quadratic:5", "quadratic:-1", "Q"] {
        let field = parse_field(spec).unwrap();
        let x = 300;
        let oracle = Oracle::new(&field, x);
        let t = table(spec, x);
        assert_eq!(
            t.sieve().counts().iter().map(|&a| a as u64).collect::<Vec<_>>(),
            oracle.counts,
            "{spec} counts"
        );
        let expected = oracle.solutions(x, 3);
        assert_eq!(found(&search_m3(&t, x, SearchMode::All).unwrap()), expected, "{spec}");
        for mode in [SearchMode::Trivial, SearchMode::NonTrivial] {
            let sub: BTreeSet<_> = expected.iter().filter(|(_, k)| mode.admits(*k)).cloned().collect();
            assert_eq!(found(&search_m3(&t, x, mode).unwrap()), sub, "{spec} {mode}");
        }
    }
}

#[test]
fn m4_matches_quadruple_enumeration() {
    let spec = "quadratic:-3";
    let x = 120;
    let oracle = Oracle::new(&parse_field(spec).unwrap(), x);
    let t = table(spec, x);
    let expected = oracle.solutions(x, 4);
    assert!(!expected.is_empty());
    assert_eq!(found(&search_general_m(&t, x, 4, SearchMode::All, 5).unwrap()), expected);
}

#[test]
fn lemma_agrees_with_brute_force() {
    let spec = "quadratic:-3";
    let x = 300;
    let oracle = Oracle::new(&parse_field(spec).unwrap(), x);
    let t = table(spec, x);
    let norms: Vec<u64> = (2..=x).filter(|&n| oracle.is_norm(n)).collect();
    let mut hits = 0;
    for (i, &l1) in norms.iter().enumerate() {
        for &l3 in &norms[i + 1..] {
            let pred = (l1..l3).rev().find(|&n| oracle.is_norm(n)).unwrap();
            let sum = oracle.add(&oracle.pis[l1 as usize], &oracle.pis[pred as usize]);
            let brute = sum == oracle.pis[l3 as usize];
            let lemma = lemma_check(&t, &[l1], l3).unwrap();
            assert_eq!(lemma.is_some(), brute, "({l1}, {l3})");
            if brute {
                assert_eq!(lemma, Some(pred));
                assert_eq!(oracle.kind(pred, l3), SolutionKind::Trivial);
                hits += 1;
            }
        }
    }
    assert_eq!(hits, 2);
}

#[test]
fn cubic_field_matches_enumeration() {
    // x^3 - x - 1; the oracle uses the sieve counts, which are checked
    // against a(n) multiplicativity in the unit tests.
    let spec = "poly:-1,-1,0,1";
    let x = 200;
    let t = table(spec, x);
    let mut oracle = Oracle::new(&parse_field("Q").unwrap(), x);
    oracle.counts = t.sieve().counts().iter().map(|&a| a as u64).collect();
    let primes = primes_up_to(x);
    let mut cur = vec![0u64; primes.len()];
    for n in 1..=x {
        for (p, e) in factorize(n) {
            cur[oracle.prime_index[&p]] += e as u64 * oracle.counts[n as usize];
        }
        oracle.pis[n as usize] = cur.clone();
    }
    assert_eq!(found(&search_m3(&t, x, SearchMode::All).unwrap()), oracle.solutions(x, 3));
}

#[test]
fn no_trivial_heads_past_threshold() {
    let t = table("quadratic:-3", 10_000);
    let heads = search_trivial_m3_heads(&t, 2, 10_000).unwrap();
    let l1s: Vec<u64> = heads.iter().map(|h| h.l1).collect();
    assert_eq!(l1s, vec![4, 12]);
    assert!(search_trivial_m3_heads(&t, 13, 10_000).unwrap().is_empty());
}
