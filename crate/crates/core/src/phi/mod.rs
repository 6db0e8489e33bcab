//! The gluing pairing on marked partitions and the decomposition into the
//! lowest horizontal block and the rest.
//!
//! `phi(a, b)` stacks the horizontal blocks of both inputs by decreasing
//! width, putting `a`'s block above `b`'s when both have one of the same
//! width. Row marks travel with their blocks; a column is marked in the
//! result iff it is marked in `a` or in `b`.

mod verify;

pub use verify::{verify_theorem, Counterexample, ProofCase, TheoremSummary, VerifyOptions};

use std::collections::HashMap;
use std::fmt;

use crate::error::{domain, Result};
use crate::partitions::{
    enumerate_marked, type_word, validate, HorizontalBlock, MarkedPartition, Partition,
};
use crate::stuffle::{self, MultiplicityQuery};
use crate::word::Word;

/// Glues two marked partitions.
///
/// # Panics
///
/// If the glued diagram fails [`validate`]; valid inputs always glue to a
/// valid marked partition.
pub fn phi(a: &MarkedPartition, b: &MarkedPartition) -> MarkedPartition {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let blocks_a = a.blocks();
    let blocks_b = b.blocks();
    let mut merged: Vec<&HorizontalBlock> = Vec::with_capacity(blocks_a.len() + blocks_b.len());
    let (mut i, mut j) = (0, 0);
    while i < blocks_a.len() || j < blocks_b.len() {
        let take_a = match (blocks_a.get(i), blocks_b.get(j)) {
            (Some(x), Some(y)) => x.width >= y.width,
            (Some(_), None) => true,
            _ => false,
        };
        if take_a {
            merged.push(&blocks_a[i]);
            i += 1;
        } else {
            merged.push(&blocks_b[j]);
            j += 1;
        }
    }
    let mut parts = Vec::with_capacity(a.parts().len() + b.parts().len());
    let mut rows = Vec::with_capacity(a.row_marks().len() + b.row_marks().len());
    for block in merged {
        let top = parts.len();
        rows.extend(block.row_marks_local.iter().map(|r| top + r));
        parts.extend(std::iter::repeat_n(block.width, block.height));
    }
    let cols = union_sorted(a.col_marks(), b.col_marks());
    let out = MarkedPartition::from_sorted(
        Partition::new(parts).expect("blocks merged by decreasing width"),
        rows,
        cols,
    );
    if let Err(v) = validate(&out) {
        panic!("phi({a}, {b}) produced an invalid marked partition {out}: {v}");
    }
    out
}

fn union_sorted(x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(x[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

/// Smallest part.
pub fn min_part(mp: &MarkedPartition) -> Result<usize> {
    mp.partition()
        .smallest()
        .ok_or_else(|| domain("the empty marked partition has no minimal part"))
}

/// Column marks at indices `<= min_part(mp)`.
pub fn min_block_col_marks(mp: &MarkedPartition) -> Result<Vec<usize>> {
    let sm = min_part(mp)?;
    Ok(mp
        .col_marks()
        .iter()
        .copied()
        .filter(|&c| c <= sm)
        .collect())
}

/// The lowest horizontal block with its row marks and the column marks
/// inside it.
pub fn split_lower(mp: &MarkedPartition) -> Result<MarkedPartition> {
    let sm = min_part(mp)?;
    let height = mp.parts().iter().rev().take_while(|&&p| p == sm).count();
    let top = mp.parts().len() - height;
    let rows = mp
        .row_marks()
        .iter()
        .filter(|&&r| r > top)
        .map(|&r| r - top)
        .collect();
    let cols = min_block_col_marks(mp)?;
    Ok(MarkedPartition::from_sorted(
        Partition::new(vec![sm; height]).expect("constant parts"),
        rows,
        cols,
    ))
}

/// Everything above the lowest horizontal block; column marks inside that
/// block are dropped.
pub fn split_rest(mp: &MarkedPartition) -> Result<MarkedPartition> {
    let sm = min_part(mp)?;
    let height = mp.parts().iter().rev().take_while(|&&p| p == sm).count();
    let top = mp.parts().len() - height;
    let rows = mp
        .row_marks()
        .iter()
        .copied()
        .filter(|&r| r <= top)
        .collect();
    let cols = mp.col_marks().iter().copied().filter(|&c| c > sm).collect();
    Ok(MarkedPartition::from_sorted(
        Partition::new(mp.parts()[..top].to_vec()).expect("prefix of a partition"),
        rows,
        cols,
    ))
}

/// The brute-force count `#{(a, b) : phi(a, b) = target}` over
/// `MP_{w1} x MP_{w2}`, next to the stuffle multiplicity of the target's type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub w1: Word,
    pub w2: Word,
    pub target: MarkedPartition,
    pub target_type: Word,
    pub preimages: Vec<(MarkedPartition, MarkedPartition)>,
    pub count: u64,
    pub expected: u64,
    pub agrees: bool,
}

impl fmt::Display for PhiReport {
    /// Preimage pairs under `pair <i>:` headers, then a summary line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.preimages.iter().enumerate() {
            writeln!(f, "pair {}:", i + 1)?;
            writeln!(f, "{a}")?;
            writeln!(f, "{b}")?;
        }
        writeln!(
            f,
            "count={} expected={} agrees={}",
            self.count, self.expected, self.agrees
        )
    }
}

fn parts_fit(small: &[usize], big: &[usize]) -> bool {
    let mut need: HashMap<usize, isize> = HashMap::new();
    for &p in big {
        *need.entry(p).or_default() += 1;
    }
    small.iter().all(|&p| {
        let slot = need.entry(p).or_default();
        *slot -= 1;
        *slot >= 0
    })
}

fn cols_fit(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|c| big.binary_search(c).is_ok())
}

/// Enumerates `MP_{w1}(N1) x MP_{w2}(N2)` over all splits of the target's
/// weight and keeps the pairs gluing to `target`. Candidates whose parts
/// or column marks do not occur in the target are discarded before gluing,
/// since gluing only ever adds rows and column marks.
pub fn mp_multiplicity(w1: &Word, w2: &Word, target: &MarkedPartition) -> Result<PhiReport> {
    let target_type = type_word(target)?;
    let q = MultiplicityQuery::new(w1.clone(), w2.clone(), target_type.clone())?;
    let n = target.weight();
    let mut preimages = Vec::new();
    for n1 in 0..=n {
        let left: Vec<MarkedPartition> = enumerate_marked(w1, n1)?
            .into_iter()
            .filter(|a| {
                parts_fit(a.parts(), target.parts()) && cols_fit(a.col_marks(), target.col_marks())
            })
            .collect();
        if left.is_empty() {
            continue;
        }
        let right: Vec<MarkedPartition> = enumerate_marked(w2, n - n1)?
            .into_iter()
            .filter(|b| {
                parts_fit(b.parts(), target.parts()) && cols_fit(b.col_marks(), target.col_marks())
            })
            .collect();
        for a in &left {
            for b in &right {
                if phi(a, b) == *target {
                    preimages.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let count = preimages.len() as u64;
    let expected = stuffle::multiplicity(&q);
    Ok(PhiReport {
        w1: w1.clone(),
        w2: w2.clone(),
        target: target.clone(),
        target_type,
        preimages,
        count,
        expected,
        agrees: count == expected,
    })
}
