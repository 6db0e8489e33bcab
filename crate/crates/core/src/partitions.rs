//! Partitions, Young diagrams with distinct row and column markings, and the
//! enumeration of marked partitions of a given type.
//!
//! Rows are numbered from the top and columns from the left, both starting
//! at 1. A *row group* is a maximal run of rows of equal length (a horizontal
//! block); the *column group* of the `j`-th row group consists of columns
//! `m_{j+1}+1 ..= m_j`, i.e. the columns whose height ends inside that block.
//! A marking is distinct when the lowest row of every row group and the
//! rightmost column of every column group are marked. Forced marks are
//! stored explicitly.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::word::{CanonicalForm, Letter, Word};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(&0) = parts.last() {
            return Err(domain("partition parts must be positive"));
        }
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(domain(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn smallest(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Column heights, tallest first.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// `(width, height)` of each horizontal block, top to bottom.
    pub fn block_shapes(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .dedup_with_count()
            .map(|(height, &width)| (width, height))
            .collect()
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

/// A maximal run of equal rows, with its row marks numbered inside the block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HorizontalBlock {
    pub width: usize,
    pub height: usize,
    pub row_marks_local: Vec<usize>,
}

pub fn horizontal_blocks(p: &Partition) -> Vec<HorizontalBlock> {
    p.block_shapes()
        .into_iter()
        .map(|(width, height)| HorizontalBlock {
            width,
            height,
            row_marks_local: Vec::new(),
        })
        .collect()
}

/// A Young diagram with row and column marks. Construction only checks the
/// shape; [`validate`] checks the markings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPartition {
    partition: Partition,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MarkedPartition {
    /// Mark lists are sorted and deduplicated.
    pub fn new(parts: Vec<usize>, mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        let partition = Partition::new(parts)?;
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Ok(MarkedPartition {
            partition,
            rows,
            cols,
        })
    }

    /// Like [`new`](Self::new), but also requires a distinct marking.
    pub fn new_valid(parts: Vec<usize>, rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let mp = Self::new(parts, rows, cols)?;
        validate(&mp).map_err(|v| domain(format!("invalid marked partition: {v}")))?;
        Ok(mp)
    }

    pub(crate) fn from_sorted(partition: Partition, rows: Vec<usize>, cols: Vec<usize>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(cols.windows(2).all(|w| w[0] < w[1]));
        MarkedPartition {
            partition,
            rows,
            cols,
        }
    }

    /// The unique marked partition of 0.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn parts(&self) -> &[usize] {
        self.partition.parts()
    }

    pub fn row_marks(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_marks(&self) -> &[usize] {
        &self.cols
    }

    pub fn weight(&self) -> usize {
        self.partition.weight()
    }

    /// Horizontal blocks, top to bottom, each carrying its own row marks.
    pub fn blocks(&self) -> Vec<HorizontalBlock> {
        let mut top = 0;
        let mut out = Vec::new();
        for (width, height) in self.partition.block_shapes() {
            let row_marks_local = self
                .rows
                .iter()
                .filter(|&&r| r > top && r <= top + height)
                .map(|&r| r - top)
                .collect();
            out.push(HorizontalBlock {
                width,
                height,
                row_marks_local,
            });
            top += height;
        }
        out
    }

    /// `{"parts":[...],"rows":[...],"cols":[...]}`
    pub fn to_line(&self) -> String {
        serde_json::to_string(&Record {
            parts: self.partition.parts.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
        })
        .expect("plain integer lists serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let rec: Record = serde_json::from_str(line.trim()).map_err(|e| Error::Parse {
            what: "marked partition",
            token: format!("{} ({e})", line.trim()),
        })?;
        Self::new(rec.parts, rec.rows, rec.cols)
    }
}

impl fmt::Display for MarkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    parts: Vec<usize>,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

/// Reads one marked partition per nonblank line.
pub fn read_lines(text: &str) -> Result<Vec<MarkedPartition>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(MarkedPartition::from_line)
        .collect()
}

/// First reason a marking fails to be distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RowOutOfRange {
        row: usize,
        rows: usize,
    },
    ColumnOutOfRange {
        col: usize,
        cols: usize,
    },
    /// The lowest row of the group of rows of this length is unmarked.
    RowGroupUnmarked {
        length: usize,
        lowest_row: usize,
    },
    /// The rightmost column of the group of columns of this height is unmarked.
    ColumnGroupUnmarked {
        height: usize,
        rightmost_col: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowOutOfRange { row, rows } => {
                write!(f, "row mark {row} exceeds the {rows} rows")
            }
            Violation::ColumnOutOfRange { col, cols } => {
                write!(f, "column mark {col} exceeds the {cols} columns")
            }
            Violation::RowGroupUnmarked { length, lowest_row } => write!(
                f,
                "row group of length {length}: lowest row {lowest_row} is unmarked"
            ),
            Violation::ColumnGroupUnmarked {
                height,
                rightmost_col,
            } => write!(
                f,
                "column group of height {height}: rightmost column {rightmost_col} is unmarked"
            ),
        }
    }
}

/// 1-based index of the last entry of every run of equal values.
fn run_ends(seq: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    let mut end = 0;
    seq.iter().dedup_with_count().map(move |(count, &value)| {
        end += count;
        (value, end)
    })
}

pub fn validate(mp: &MarkedPartition) -> std::result::Result<(), Violation> {
    let p = &mp.partition;
    if let Some(&row) = mp.rows.iter().find(|&&r| r == 0 || r > p.rows()) {
        return Err(Violation::RowOutOfRange {
            row,
            rows: p.rows(),
        });
    }
    if let Some(&col) = mp.cols.iter().find(|&&c| c == 0 || c > p.largest()) {
        return Err(Violation::ColumnOutOfRange {
            col,
            cols: p.largest(),
        });
    }
    for (length, lowest_row) in run_ends(p.parts()) {
        if mp.rows.binary_search(&lowest_row).is_err() {
            return Err(Violation::RowGroupUnmarked { length, lowest_row });
        }
    }
    // rows of the conjugate are the columns; its lowest row of a given
    // length is the rightmost column of that height
    for (height, rightmost_col) in run_ends(p.conjugate().parts()) {
        if mp.cols.binary_search(&rightmost_col).is_err() {
            return Err(Violation::ColumnGroupUnmarked {
                height,
                rightmost_col,
            });
        }
    }
    Ok(())
}

/// The word `u_{k1} u_0^{z1-1} ... u_{kd} u_0^{zd-1}` read off the marks.
pub fn type_word(mp: &MarkedPartition) -> Result<Word> {
    validate(mp).map_err(|v| domain(format!("type of an invalid marked partition: {v}")))?;
    Ok(type_word_unchecked(mp))
}

pub(crate) fn type_word_unchecked(mp: &MarkedPartition) -> Word {
    let shapes = mp.partition.block_shapes();
    let mut letters: Vec<Letter> = Vec::new();
    let mut top = 0;
    for (j, &(width, height)) in shapes.iter().enumerate() {
        let k = mp
            .rows
            .iter()
            .filter(|&&r| r > top && r <= top + height)
            .count();
        let next_width = shapes.get(j + 1).map_or(0, |s| s.0);
        let z = mp
            .cols
            .iter()
            .filter(|&&c| c > next_width && c <= width)
            .count();
        letters.push(k as Letter);
        letters.extend(std::iter::repeat_n(0, z - 1));
        top += height;
    }
    Word::new(letters)
}

/// Per-group data of a type: `k` marked rows, `z` marked columns.
#[derive(Clone, Copy, Debug)]
struct GroupType {
    rows: usize,
    cols: usize,
}

fn group_types(cf: &CanonicalForm) -> Vec<GroupType> {
    cf.blocks
        .iter()
        .map(|b| GroupType {
            rows: b.head as usize,
            cols: b.zeros + 1,
        })
        .collect()
}

/// Distinct parts `m_1 > ... > m_d` and multiplicities `n_j` of every shape
/// of weight `n` compatible with the type, in lexicographic order of
/// `(m, n)`.
fn shapes(groups: &[GroupType], n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let d = groups.len();
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push((Vec::new(), Vec::new()));
        }
        return out;
    }
    // smallest admissible m_j given m_{j+1}: m_j >= m_{j+1} + z_j
    let mut min_m = vec![0; d + 1];
    for j in (0..d).rev() {
        min_m[j] = min_m[j + 1] + groups[j].cols;
    }
    let mut ms = Vec::with_capacity(d);
    choose_parts(groups, &min_m, n, 0, &mut ms, &mut out);
    out.sort();
    out
}

fn choose_parts(
    groups: &[GroupType],
    min_m: &[usize],
    n: usize,
    level: usize,
    ms: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let d = groups.len();
    if level == d {
        // m_d must leave room below it for z_d columns
        let mut ns = Vec::with_capacity(d);
        choose_multiplicities(groups, ms, n, 0, &mut ns, out);
        return;
    }
    let upper = if level == 0 {
        n
    } else {
        ms[level - 1] - groups[level - 1].cols
    };
    // lightest completion: n_j = k_j at every level
    let used: usize = ms.iter().zip(groups).map(|(m, g)| m * g.rows).sum();
    for m in min_m[level]..=upper {
        let floor: usize = used
            + m * groups[level].rows
            + (level + 1..d)
                .map(|i| min_m[i] * groups[i].rows)
                .sum::<usize>();
        if floor > n {
            break;
        }
        ms.push(m);
        choose_parts(groups, min_m, n, level + 1, ms, out);
        ms.pop();
    }
}

fn choose_multiplicities(
    groups: &[GroupType],
    ms: &[usize],
    remaining: usize,
    level: usize,
    ns: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let d = groups.len();
    if level == d {
        if remaining == 0 {
            out.push((ms.to_vec(), ns.clone()));
        }
        return;
    }
    let rest_floor: usize = (level + 1..d).map(|i| ms[i] * groups[i].rows).sum();
    let mut nj = groups[level].rows;
    while ms[level] * nj + rest_floor <= remaining {
        ns.push(nj);
        choose_multiplicities(groups, ms, remaining - ms[level] * nj, level + 1, ns, out);
        ns.pop();
        nj += 1;
    }
}

/// Every way to pick one subset per group, concatenated and sorted.
fn mark_choices(options: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    options
        .iter()
        .multi_cartesian_product()
        .map(|pick| {
            let mut v: Vec<usize> = pick.into_iter().flatten().copied().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// `forced` plus every `extra`-subset of `free`.
fn group_options(free: std::ops::Range<usize>, extra: usize, forced: usize) -> Vec<Vec<usize>> {
    free.combinations(extra)
        .map(|mut c| {
            c.push(forced);
            c
        })
        .collect()
}

/// All marked partitions of `n` of type `w`, ordered lexicographically by
/// `(m, n, rows, cols)`.
pub fn enumerate_marked(w: &Word, n: usize) -> Result<Vec<MarkedPartition>> {
    let cf = w.canonical_form().map_err(|_| {
        domain(format!(
            "marked partitions need an admissible type, got `{w}`"
        ))
    })?;
    let groups = group_types(&cf);
    if groups.is_empty() {
        return Ok(if n == 0 {
            vec![MarkedPartition::empty()]
        } else {
            Vec::new()
        });
    }
    let mut out = Vec::new();
    for (ms, ns) in shapes(&groups, n) {
        let d = groups.len();
        let parts: Vec<usize> = ms
            .iter()
            .zip(&ns)
            .flat_map(|(&m, &c)| std::iter::repeat_n(m, c))
            .collect();
        let partition = Partition { parts };

        let mut top = 0;
        let mut row_opts = Vec::with_capacity(d);
        let mut col_opts = Vec::with_capacity(d);
        for j in 0..d {
            let bottom = top + ns[j];
            row_opts.push(group_options(top + 1..bottom, groups[j].rows - 1, bottom));
            let left = ms.get(j + 1).copied().unwrap_or(0);
            col_opts.push(group_options(left + 1..ms[j], groups[j].cols - 1, ms[j]));
            top = bottom;
        }
        let rows = mark_choices(&row_opts);
        let cols = mark_choices(&col_opts);
        let mut batch: Vec<MarkedPartition> = rows
            .iter()
            .cartesian_product(&cols)
            .map(|(r, c)| MarkedPartition::from_sorted(partition.clone(), r.clone(), c.clone()))
            .collect();
        batch.sort_by(|a, b| a.rows.cmp(&b.rows).then_with(|| a.cols.cmp(&b.cols)));
        out.extend(batch);
    }
    Ok(out)
}

/// Partitions of `n`, parts weakly decreasing, in reverse lexicographic
/// order (`[n]` first).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, parts: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: parts.clone(),
            });
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            parts.push(p);
            go(rest - p, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every marked partition of `n`, of any type.
pub fn enumerate_all_marked(n: usize) -> Vec<MarkedPartition> {
    let mut out = Vec::new();
    for partition in partitions_of(n) {
        let shapes = partition.block_shapes();
        let mut top = 0;
        let mut row_opts = Vec::with_capacity(shapes.len());
        let mut col_opts = Vec::with_capacity(shapes.len());
        for (j, &(width, height)) in shapes.iter().enumerate() {
            let bottom = top + height;
            row_opts.push(all_subsets(top + 1..bottom, bottom));
            let left = shapes.get(j + 1).map_or(0, |s| s.0);
            col_opts.push(all_subsets(left + 1..width, width));
            top = bottom;
        }
        let rows = mark_choices(&row_opts);
        let cols = mark_choices(&col_opts);
        for (r, c) in rows.iter().cartesian_product(&cols) {
            out.push(MarkedPartition::from_sorted(
                partition.clone(),
                r.clone(),
                c.clone(),
            ));
        }
    }
    out
}

fn all_subsets(free: std::ops::Range<usize>, forced: usize) -> Vec<Vec<usize>> {
    free.powerset()
        .map(|mut c| {
            c.push(forced);
            c
        })
        .collect()
}

/// Number of marked partitions of `n` of type `w`.
pub fn psi_census(w: &Word, n: usize) -> Result<usize> {
    Ok(enumerate_marked(w, n)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w<const N: usize>(l: [u64; N]) -> Word {
        Word::from(l)
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn example_1_1() -> MarkedPartition {
        MarkedPartition::new(
            vec![9, 9, 9, 5, 5, 2, 2],
            vec![1, 3, 5, 7],
            vec![1, 2, 5, 6, 7, 9],
        )
        .unwrap()
    }

    #[test]
    fn partition_shape_checks() {
        assert!(Partition::new(vec![3, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(part(&[9, 9, 9, 5, 5, 2, 2]).weight(), 41);
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&part(&[3, 1])), part(&[2, 1, 1]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
        assert_eq!(
            conjugate(&part(&[9, 9, 9, 5, 5, 2, 2])),
            part(&[7, 7, 5, 5, 5, 3, 3, 3, 3])
        );
    }

    #[test]
    fn blocks() {
        let shapes = |p: &[usize]| -> Vec<(usize, usize)> {
            horizontal_blocks(&part(p))
                .iter()
                .map(|b| (b.width, b.height))
                .collect()
        };
        assert_eq!(shapes(&[9, 9, 9, 5, 5, 2, 2]), vec![(9, 3), (5, 2), (2, 2)]);
        assert_eq!(shapes(&[4]), vec![(4, 1)]);
        assert_eq!(shapes(&[2, 2, 2]), vec![(2, 3)]);
        let local: Vec<Vec<usize>> = example_1_1()
            .blocks()
            .into_iter()
            .map(|b| b.row_marks_local)
            .collect();
        assert_eq!(local, vec![vec![1, 3], vec![2], vec![2]]);
    }

    #[test]
    fn validation() {
        assert_eq!(validate(&example_1_1()), Ok(()));
        let bad = MarkedPartition::new(vec![2, 2], vec![1], vec![2]).unwrap();
        assert_eq!(
            validate(&bad),
            Err(Violation::RowGroupUnmarked {
                length: 2,
                lowest_row: 2
            })
        );
        assert_eq!(validate(&MarkedPartition::empty()), Ok(()));
        let bad = MarkedPartition::new(vec![3, 1], vec![1, 2], vec![3]).unwrap();
        assert_eq!(
            validate(&bad),
            Err(Violation::ColumnGroupUnmarked {
                height: 2,
                rightmost_col: 1
            })
        );
        let bad = MarkedPartition::new(vec![3], vec![1, 2], vec![3]).unwrap();
        assert!(matches!(
            validate(&bad),
            Err(Violation::RowOutOfRange { .. })
        ));
        let bad = MarkedPartition::new(vec![3], vec![1], vec![3, 4]).unwrap();
        assert!(matches!(
            validate(&bad),
            Err(Violation::ColumnOutOfRange { .. })
        ));
    }

    #[test]
    fn types() {
        assert_eq!(type_word(&example_1_1()).unwrap(), w([2, 0, 0, 1, 1, 0]));
        assert_eq!(type_word(&MarkedPartition::empty()).unwrap(), Word::empty());
        let mp = MarkedPartition::new(vec![3], vec![1], vec![3]).unwrap();
        assert_eq!(type_word(&mp).unwrap(), w([1]));
        let bad = MarkedPartition::new(vec![2, 2], vec![1], vec![2]).unwrap();
        assert!(type_word(&bad).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let got = enumerate_marked(&w([1]), 4).unwrap();
        let lines: Vec<String> = got.iter().map(|m| m.to_line()).collect();
        assert_eq!(
            lines,
            vec![
                r#"{"parts":[1,1,1,1],"rows":[4],"cols":[1]}"#,
                r#"{"parts":[2,2],"rows":[2],"cols":[2]}"#,
                r#"{"parts":[4],"rows":[1],"cols":[4]}"#,
            ]
        );
        assert_eq!(
            enumerate_marked(&Word::empty(), 0).unwrap(),
            vec![MarkedPartition::empty()]
        );
        assert!(enumerate_marked(&Word::empty(), 1).unwrap().is_empty());
        assert!(enumerate_marked(&w([0, 1]), 3).is_err());
    }

    #[test]
    fn census_examples() {
        assert_eq!(psi_census(&w([1]), 12).unwrap(), 6);
        assert_eq!(psi_census(&w([2]), 3).unwrap(), 2);
        let found = enumerate_marked(&w([2, 0, 0, 1, 1, 0]), 41).unwrap();
        assert!(found.contains(&example_1_1()));
    }

    #[test]
    fn line_format() {
        assert_eq!(
            MarkedPartition::empty().to_line(),
            r#"{"parts":[],"rows":[],"cols":[]}"#
        );
        let mp = example_1_1();
        assert_eq!(MarkedPartition::from_line(&mp.to_line()).unwrap(), mp);
        assert!(MarkedPartition::from_line("{\"parts\":[1]}").is_err());
        assert!(MarkedPartition::from_line("{\"parts\":[1,2],\"rows\":[],\"cols\":[]}").is_err());
        let parsed = read_lines("\n{\"parts\":[2],\"rows\":[1],\"cols\":[2,1]}\n\n").unwrap();
        assert_eq!(parsed[0].col_marks(), &[1, 2]);
    }

    #[test]
    fn all_marked_small_weights() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(enumerate_all_marked(0), vec![MarkedPartition::empty()]);
        // [2]: cols {2} or {1,2}; [1,1]: rows {2} or {1,2}
        assert_eq!(enumerate_all_marked(2).len(), 4);
        for n in 0..=5 {
            let all = enumerate_all_marked(n);
            for mp in &all {
                assert!(validate(mp).is_ok());
            }
            let by_type: usize = crate::word::admissible_words(n, n as u64)
                .iter()
                .map(|w| psi_census(w, n).unwrap())
                .sum();
            assert_eq!(all.len(), by_type, "n={n}");
        }
    }
}
