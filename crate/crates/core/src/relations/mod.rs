//! Linear relations among truncated `sz` values.
//!
//! Words are taken from a box (length `<= L`, indices `<= I`). The kernel of
//! the matrix whose columns are `sz(w)` through `q^Q` gives candidate
//! relations; these hold *through `q^Q`* only, since truncation can add
//! spurious relations but never lose true ones. The known relations are the
//! duality relations `w - tau(w)` and their stuffle multiples, restricted to
//! the box. Every known relation is a genuine identity and must lie in the
//! kernel.

mod matrix;

pub use matrix::{kernel_basis, primitive, RationalMatrix};

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::duality::tau;
use crate::exec::Exec;
use crate::qseries::SzEvaluator;
use crate::stuffle::stuffle;
use crate::word::{admissible_words, Coeff, Letter, LinearCombination, Word};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 30;

/// Orders below `ORDER_MARGIN * max_len` are flagged as unreliable.
pub const ORDER_MARGIN: usize = 10;

pub fn order_is_thin(max_len: usize, order: usize) -> bool {
    order < ORDER_MARGIN * max_len
}

/// Admissible words of a box, in word order, with index lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBasis {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordBasis {
    pub fn new(words: Vec<Word>) -> Self {
        let mut words = words;
        words.sort();
        words.dedup();
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        WordBasis { words, index }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Coordinates of a combination, or `None` if it leaves the basis.
    pub fn coordinates(&self, lc: &LinearCombination) -> Option<Vec<Coeff>> {
        let mut v = vec![Coeff::zero(); self.len()];
        for (w, c) in lc.iter() {
            v[self.index_of(w)?] = c.clone();
        }
        Some(v)
    }

    pub fn combination(&self, v: &[Coeff]) -> LinearCombination {
        self.words
            .iter()
            .zip(v)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }
}

pub fn enumerate_basis(max_len: usize, max_index: Letter) -> WordBasis {
    WordBasis::new(admissible_words(max_len, max_index))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    DualityGenerated,
    StuffleGenerated,
    KernelOnly,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::DualityGenerated => "duality-generated",
            Provenance::StuffleGenerated => "stuffle-generated",
            Provenance::KernelOnly => "kernel-only",
        })
    }
}

/// A combination whose `sz` value vanishes through `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCandidate {
    pub combination: LinearCombination,
    pub order: usize,
    pub provenance: Provenance,
}

impl RelationCandidate {
    fn new(combination: &LinearCombination, order: usize, provenance: Provenance) -> Self {
        RelationCandidate {
            combination: normalize(combination),
            order,
            provenance,
        }
    }

    /// Recomputes `sz` of the combination and checks it is zero.
    pub fn vanishes(&self, ev: &SzEvaluator) -> bool {
        ev.eval_lin(&self.combination)
            .map(|s| s.is_zero())
            .unwrap_or(false)
    }
}

/// Coprime integer coefficients, first term positive.
fn normalize(lc: &LinearCombination) -> LinearCombination {
    let words: Vec<Word> = lc.words().cloned().collect();
    let coeffs: Vec<Coeff> = lc.iter().map(|(_, c)| c.clone()).collect();
    words.into_iter().zip(primitive(&coeffs)).collect()
}

impl fmt::Display for RelationCandidate {
    /// `provenance | c · word + c · word - c · word`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.provenance)?;
        for (i, (w, c)) in self.combination.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, " {lead}{} · {w}", c.abs())?;
            } else {
                write!(f, " {sign} {} · {w}", c.abs())?;
            }
        }
        Ok(())
    }
}

fn sz_matrix(basis: &WordBasis, order: usize, exec: Exec) -> (RationalMatrix, SzEvaluator) {
    let ev = SzEvaluator::new(order);
    let columns: Vec<Vec<Coeff>> = exec.map(basis.words(), |w| {
        ev.eval(w)
            .expect("basis words are admissible")
            .coeffs()
            .to_vec()
    });
    let m = RationalMatrix::from_columns(&columns, order + 1).expect("equal-length columns");
    (m, ev)
}

/// Kernel of the truncated evaluation map on the box.
pub fn discover(
    max_len: usize,
    max_index: Letter,
    order: usize,
    exec: Exec,
) -> Vec<RelationCandidate> {
    discover_in(&enumerate_basis(max_len, max_index), order, exec)
}

pub fn discover_in(basis: &WordBasis, order: usize, exec: Exec) -> Vec<RelationCandidate> {
    let (m, ev) = sz_matrix(basis, order, exec);
    let out: Vec<RelationCandidate> = m
        .kernel_basis()
        .iter()
        .map(|v| RelationCandidate::new(&basis.combination(v), order, Provenance::KernelOnly))
        .collect();
    for r in &out {
        assert!(
            r.vanishes(&ev),
            "kernel vector {r} does not vanish through q^{order}"
        );
    }
    out
}

/// Greedy independent subset of `relations`, keeping input order.
fn independent(basis: &WordBasis, relations: Vec<RelationCandidate>) -> Vec<RelationCandidate> {
    let mut kept: Vec<RelationCandidate> = Vec::new();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for r in relations {
        let v = basis
            .coordinates(&r.combination)
            .expect("generated relations stay in the box");
        rows.push(v);
        let m = RationalMatrix::new(rows.clone()).expect("rectangular");
        if m.rank() == rows.len() {
            kept.push(r);
        } else {
            rows.pop();
        }
    }
    kept
}

/// Duality relations `w - tau(w)` with both words in the box, then the
/// stuffle multiples `(w - tau(w)) * v` and their duals whose words all lie
/// in the box, reduced to an independent subset.
pub fn known_span(max_len: usize, max_index: Letter, order: usize) -> Vec<RelationCandidate> {
    known_span_in(&enumerate_basis(max_len, max_index), order)
}

pub fn known_span_in(basis: &WordBasis, order: usize) -> Vec<RelationCandidate> {
    let mut generated = Vec::new();
    let mut push = |lc: LinearCombination, provenance| {
        if !lc.is_zero() && lc.words().all(|w| basis.contains(w)) {
            generated.push(RelationCandidate::new(&lc, order, provenance));
        }
    };
    let mut duals = Vec::new();
    for w in basis.words().iter().filter(|w| !w.is_empty()) {
        let t = tau(w).expect("basis words are admissible");
        if t == *w {
            continue;
        }
        let mut rel = LinearCombination::from_word(w.clone());
        rel.add_term(t.clone(), -Coeff::from_integer(1.into()));
        if w < &t {
            push(rel.clone(), Provenance::DualityGenerated);
        }
        duals.push(rel);
    }
    for rel in &duals {
        for v in basis.words().iter().filter(|v| !v.is_empty()) {
            let prod = stuffle(rel, &LinearCombination::from_word(v.clone()));
            push(prod.clone(), Provenance::StuffleGenerated);
            if prod.is_admissible() {
                if let Ok(dual) = crate::duality::tau_lin(&prod) {
                    push(dual, Provenance::StuffleGenerated);
                }
            }
        }
    }
    independent(basis, generated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub max_len: usize,
    pub max_index: Letter,
    pub order: usize,
    pub dim_kernel: usize,
    pub dim_known: usize,
    /// Every known relation lies in the discovered kernel.
    pub containment: bool,
    pub kernel: Vec<RelationCandidate>,
    pub known: Vec<RelationCandidate>,
}

impl Comparison {
    pub fn thin_order(&self) -> bool {
        order_is_thin(self.max_len, self.order)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dim_kernel={} dim_known={} containment={}",
            self.dim_kernel, self.dim_known, self.containment
        )?;
        writeln!(
            f,
            "grading=box max_len={} max_index={} through=q^{}",
            self.max_len, self.max_index, self.order
        )?;
        for r in &self.known {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn compare(max_len: usize, max_index: Letter, order: usize, exec: Exec) -> Comparison {
    let basis = enumerate_basis(max_len, max_index);
    let (m, _) = sz_matrix(&basis, order, exec);
    let kernel = discover_in(&basis, order, exec);
    let known = known_span_in(&basis, order);
    let containment = known.iter().all(|r| {
        let v = basis
            .coordinates(&r.combination)
            .expect("known relations stay in the box");
        m.mul_vec(&v).iter().all(Zero::is_zero)
    });
    Comparison {
        max_len,
        max_index,
        order,
        dim_kernel: kernel.len(),
        dim_known: known.len(),
        containment,
        kernel,
        known,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::int;

    fn w<const N: usize>(l: [u64; N]) -> Word {
        Word::from(l)
    }

    fn duality_2_10() -> LinearCombination {
        [(w([2]), int(1)), (w([1, 0]), int(-1))]
            .into_iter()
            .collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(
            enumerate_basis(1, 2).words(),
            &[Word::empty(), w([1]), w([2])]
        );
        assert_eq!(enumerate_basis(0, 4).words(), &[Word::empty()]);
        assert_eq!(
            enumerate_basis(2, 1).words(),
            &[Word::empty(), w([1]), w([1, 0]), w([1, 1])]
        );
    }

    #[test]
    fn discover_duality_pair() {
        let basis = WordBasis::new(vec![w([2]), w([1, 0])]);
        let found = discover_in(&basis, 30, Exec::Sequential);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].combination, duality_2_10());
        assert_eq!(found[0].to_string(), "kernel-only | 1 · 2 - 1 · 1,0");
    }

    #[test]
    fn discover_trivial_basis() {
        let basis = WordBasis::new(vec![Word::empty()]);
        assert!(discover_in(&basis, 12, Exec::Sequential).is_empty());
    }

    #[test]
    fn discover_box_contains_duality() {
        let basis = enumerate_basis(2, 2);
        let found = discover_in(&basis, 30, Exec::Sequential);
        let rows: Vec<Vec<Coeff>> = found
            .iter()
            .map(|r| basis.coordinates(&r.combination).unwrap())
            .collect();
        let base_rank = RationalMatrix::new(rows.clone()).unwrap().rank();
        let mut with = rows;
        with.push(basis.coordinates(&duality_2_10()).unwrap());
        assert_eq!(RationalMatrix::new(with).unwrap().rank(), base_rank);
    }

    #[test]
    fn known_span_examples() {
        let known = known_span(2, 2, 30);
        assert!(known.iter().any(
            |r| r.combination == duality_2_10() && r.provenance == Provenance::DualityGenerated
        ));
        assert!(known_span_in(&WordBasis::new(vec![]), 30).is_empty());
        assert!(known_span(1, 1, 30).is_empty());
    }

    #[test]
    fn compare_examples() {
        let c = compare(1, 1, 30, Exec::Sequential);
        assert_eq!((c.dim_kernel, c.dim_known, c.containment), (0, 0, true));
        let c = compare(2, 2, 30, Exec::Sequential);
        assert!(c.dim_known >= 1);
        assert!(c.containment);
        let c = compare(0, 0, 10, Exec::Sequential);
        assert_eq!((c.dim_kernel, c.dim_known, c.containment), (0, 0, true));
    }

    #[test]
    fn thin_orders_are_flagged() {
        assert!(order_is_thin(3, 29));
        assert!(!order_is_thin(3, 30));
    }
}
