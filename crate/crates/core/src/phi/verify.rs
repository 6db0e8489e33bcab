//! Exhaustive check that gluing counts equal stuffle multiplicities.
//!
//! A cell is `(w1, w2, N)`. For each cell every pair in
//! `MP_{w1}(N1) x MP_{w2}(N - N1)` is glued and the results are tallied.
//! Every glued marked partition must then occur exactly `m(w1, w2; type)`
//! times, and every marked partition of weight `N` whose type occurs in
//! `w1 * w2` must occur at all (a zero tally is a mismatch too).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use super::{min_part, phi};
use crate::exec::Exec;
use crate::partitions::{enumerate_marked, type_word_unchecked, MarkedPartition};
use crate::stuffle;
use crate::word::{admissible_words, Word};

/// Which branch of the induction a preimage pair falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProofCase {
    /// One side is the empty marked partition.
    Base,
    /// `min_part(a) < min_part(b)`
    Less,
    Greater,
    Equal,
}

impl ProofCase {
    fn of(a: &MarkedPartition, b: &MarkedPartition) -> Self {
        match (min_part(a), min_part(b)) {
            (Ok(x), Ok(y)) if x < y => ProofCase::Less,
            (Ok(x), Ok(y)) if x > y => ProofCase::Greater,
            (Ok(_), Ok(_)) => ProofCase::Equal,
            _ => ProofCase::Base,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub exec: Exec,
    /// Drops the first glued pair of every cell. Test fixture for the
    /// counterexample path; never set it otherwise.
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub w1: Word,
    pub w2: Word,
    pub target: MarkedPartition,
    pub count: u64,
    pub expected: u64,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "counterexample w1={} w2={} target={} count={} expected={}",
            self.w1, self.w2, self.target, self.count, self.expected
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoremSummary {
    pub max_len: usize,
    pub max_index: u64,
    pub max_weight: usize,
    pub cells: u64,
    /// Targets compared against the stuffle multiplicity.
    pub targets: u64,
    /// Glued pairs examined.
    pub preimages: u64,
    pub cases: BTreeMap<ProofCase, u64>,
    /// Distinct `(w1, w2, type of phi(a, b))` triples seen.
    pub observed_types: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl TheoremSummary {
    pub fn mismatches(&self) -> u64 {
        self.counterexamples.len() as u64
    }

    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn case_count(&self, case: ProofCase) -> u64 {
        self.cases.get(&case).copied().unwrap_or(0)
    }
}

impl fmt::Display for TheoremSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "cells={} preimages={} mismatches={}",
            self.cells,
            self.preimages,
            self.mismatches()
        )?;
        writeln!(
            f,
            "bounds max_len={} max_index={} max_N={}",
            self.max_len, self.max_index, self.max_weight
        )?;
        writeln!(
            f,
            "targets={} observed_types={}",
            self.targets, self.observed_types
        )?;
        writeln!(
            f,
            "cases base={} less={} greater={} equal={}",
            self.case_count(ProofCase::Base),
            self.case_count(ProofCase::Less),
            self.case_count(ProofCase::Greater),
            self.case_count(ProofCase::Equal)
        )?;
        for c in &self.counterexamples {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct CellReport {
    targets: u64,
    preimages: u64,
    cases: BTreeMap<ProofCase, u64>,
    observed_types: u64,
    counterexamples: Vec<Counterexample>,
}

type Enumerations = DashMap<(Word, usize), Arc<Vec<MarkedPartition>>>;

fn marked(cache: &Enumerations, w: &Word, n: usize) -> Arc<Vec<MarkedPartition>> {
    let key = (w.clone(), n);
    if let Some(hit) = cache.get(&key).map(|r| Arc::clone(r.value())) {
        return hit;
    }
    let v = Arc::new(enumerate_marked(w, n).expect("admissible word"));
    cache.insert(key, Arc::clone(&v));
    v
}

fn check_cell(
    w1: &Word,
    w2: &Word,
    n: usize,
    cache: &Enumerations,
    inject_fault: bool,
) -> CellReport {
    let mut report = CellReport::default();
    let mut tally: HashMap<MarkedPartition, u64> = HashMap::new();
    let mut dropped = !inject_fault;
    for n1 in 0..=n {
        let left = marked(cache, w1, n1);
        if left.is_empty() {
            continue;
        }
        let right = marked(cache, w2, n - n1);
        for a in left.iter() {
            for b in right.iter() {
                report.preimages += 1;
                *report.cases.entry(ProofCase::of(a, b)).or_default() += 1;
                if !dropped {
                    dropped = true;
                    continue;
                }
                *tally.entry(phi(a, b)).or_default() += 1;
            }
        }
    }

    let product = stuffle::stuffle_words(w1, w2);
    let expected_for = |w: &Word| -> u64 {
        let c = product.coefficient_of(w);
        num_traits::ToPrimitive::to_u64(&c.to_integer()).expect("nonnegative multiplicity")
    };

    let mut types_seen: HashMap<Word, ()> = HashMap::new();
    // every glued result carries the multiplicity of its type
    for (target, &count) in &tally {
        let ty = type_word_unchecked(target);
        let expected = expected_for(&ty);
        types_seen.insert(ty, ());
        if count != expected {
            report.counterexamples.push(Counterexample {
                w1: w1.clone(),
                w2: w2.clone(),
                target: target.clone(),
                count,
                expected,
            });
        }
    }
    report.observed_types = types_seen.len() as u64;
    // every marked partition of a type in the product is reached
    for (ty, _) in product.iter() {
        for target in marked(cache, ty, n).iter() {
            report.targets += 1;
            if !tally.contains_key(target) {
                report.counterexamples.push(Counterexample {
                    w1: w1.clone(),
                    w2: w2.clone(),
                    target: target.clone(),
                    count: 0,
                    expected: expected_for(ty),
                });
            }
        }
    }
    report
        .counterexamples
        .sort_by(|x, y| x.target.cmp(&y.target));
    report
}

/// Checks every ordered pair of admissible words with at most `max_len`
/// letters, all indices `<= max_index`, against every target of weight
/// `<= max_weight`.
pub fn verify_theorem(
    max_len: usize,
    max_index: u64,
    max_weight: usize,
    options: &VerifyOptions,
) -> TheoremSummary {
    let words = admissible_words(max_len, max_index);
    let mut cells = Vec::with_capacity(words.len() * words.len() * (max_weight + 1));
    for w1 in &words {
        for w2 in &words {
            for n in 0..=max_weight {
                cells.push((w1, w2, n));
            }
        }
    }
    let cache = Enumerations::new();
    let reports = options.exec.map(&cells, |&(w1, w2, n)| {
        check_cell(w1, w2, n, &cache, options.inject_fault)
    });

    let mut summary = TheoremSummary {
        max_len,
        max_index,
        max_weight,
        cells: cells.len() as u64,
        ..Default::default()
    };
    for r in reports {
        summary.targets += r.targets;
        summary.preimages += r.preimages;
        summary.observed_types += r.observed_types;
        for (case, k) in r.cases {
            *summary.cases.entry(case).or_default() += k;
        }
        summary.counterexamples.extend(r.counterexamples);
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_hold() {
        let s = verify_theorem(1, 1, 6, &VerifyOptions::default());
        assert!(s.holds(), "{s}");
        assert_eq!(s.cells, 2 * 2 * 7);
        assert!(s.preimages > 0);
    }

    #[test]
    fn injected_fault_is_reported() {
        let opts = VerifyOptions {
            inject_fault: true,
            ..Default::default()
        };
        let s = verify_theorem(1, 1, 3, &opts);
        assert!(!s.holds());
        assert!(s.to_string().contains("counterexample w1="));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let seq = verify_theorem(2, 2, 6, &VerifyOptions::default());
        let par = verify_theorem(
            2,
            2,
            6,
            &VerifyOptions {
                exec: Exec::Parallel { jobs: 3 },
                ..Default::default()
            },
        );
        assert_eq!(seq, par);
        assert!(seq.holds());
    }
}
