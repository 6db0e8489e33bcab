//! Words over the alphabet `{u_0, u_1, u_2, ...}` and finite rational linear
//! combinations of them.
//!
//! A [`Word`] stores the letter indices; `u_j` is represented by `j`. Words are
//! totally ordered first by length and then lexicographically, and every
//! [`LinearCombination`] iterates in that order.

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{domain, Error, Result};

/// Letter index: `j` stands for `u_j`.
pub type Letter = u64;

/// Exact coefficient type used throughout the crate.
pub type Coeff = BigRational;

pub(crate) type Letters = SmallVec<[Letter; 8]>;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Letters);

impl Word {
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word(letters.into_iter().collect())
    }

    /// The empty word `1`.
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(j: Letter) -> Self {
        Word(smallvec::smallvec![j])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters different from `u_0`.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&j| j != 0).count()
    }

    /// Sum of the letter indices.
    pub fn index_sum(&self) -> Letter {
        self.0.iter().sum()
    }

    /// Admissible words are the empty word and words not starting with `u_0`.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&j| j > 0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `u_j · self`
    pub fn prepend(&self, j: Letter) -> Word {
        let mut letters = Letters::with_capacity(self.len() + 1);
        letters.push(j);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// `self · u_j`
    pub fn append(&self, j: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(j);
        Word(letters)
    }

    /// `self · u_j · u_0^zeros`
    pub fn append_block(&self, j: Letter, zeros: usize) -> Word {
        let mut letters = Letters::with_capacity(self.len() + 1 + zeros);
        letters.extend_from_slice(&self.0);
        letters.push(j);
        letters.extend(std::iter::repeat_n(0, zeros));
        Word(letters)
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// The word without its first letter.
    pub fn rest(&self) -> Word {
        Word(self.0.iter().skip(1).copied().collect())
    }

    /// The word without its last letter.
    pub fn init(&self) -> Word {
        let n = self.len().saturating_sub(1);
        Word(self.0[..n].iter().copied().collect())
    }

    /// Regroups an admissible word as `u_{k_1} u_0^{z_1} ... u_{k_d} u_0^{z_d}`.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        if !self.is_admissible() {
            return Err(domain(format!(
                "canonical form needs an admissible word, got `{self}`"
            )));
        }
        let mut blocks: Vec<Block> = Vec::with_capacity(self.depth());
        for &j in &self.0 {
            if j == 0 {
                // admissible, so a block is already open
                blocks.last_mut().expect("admissible word").zeros += 1;
            } else {
                blocks.push(Block { head: j, zeros: 0 });
            }
        }
        Ok(CanonicalForm { blocks })
    }

    /// Splits `w = prefix · u_j · u_0^n` with `j ≥ 1`.
    pub fn tail_split(&self) -> Result<TailSplit> {
        let pos = self
            .0
            .iter()
            .rposition(|&j| j != 0)
            .ok_or_else(|| domain(format!("tail split needs depth >= 1, got `{self}`")))?;
        Ok(TailSplit {
            prefix: Word(self.0[..pos].iter().copied().collect()),
            head: self.0[pos],
            zeros: self.len() - pos - 1,
        })
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word::new(letters.iter().copied())
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(letters: [Letter; N]) -> Self {
        Word::new(letters)
    }
}

/// Reads a comma- or whitespace-separated list of letter indices.
pub fn parse_word(text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Word::empty());
    }
    let mut letters = Letters::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::Parse {
                what: "word",
                token: String::new(),
            });
        }
        for token in piece.split_whitespace() {
            // `u64::from_str` accepts a leading '+'; the format does not
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    what: "word",
                    token: token.to_string(),
                });
            }
            let j = token.parse::<Letter>().map_err(|_| Error::Parse {
                what: "word",
                token: token.to_string(),
            })?;
            letters.push(j);
        }
    }
    Ok(Word(letters))
}

/// One `u_k u_0^z` group of the canonical form, `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub head: Letter,
    pub zeros: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub blocks: Vec<Block>,
}

impl CanonicalForm {
    pub fn from_pairs<I: IntoIterator<Item = (Letter, usize)>>(pairs: I) -> Self {
        CanonicalForm {
            blocks: pairs
                .into_iter()
                .map(|(head, zeros)| Block { head, zeros })
                .collect(),
        }
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Letters::new();
        for b in &self.blocks {
            letters.push(b.head);
            letters.extend(std::iter::repeat_n(0, b.zeros));
        }
        Word(letters)
    }

    pub fn pairs(&self) -> Vec<(Letter, usize)> {
        self.blocks.iter().map(|b| (b.head, b.zeros)).collect()
    }
}

/// Result of [`Word::tail_split`]: `word = prefix · u_head · u_0^zeros`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSplit {
    pub prefix: Word,
    pub head: Letter,
    pub zeros: usize,
}

/// A finite `Q`-linear combination of words. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LinearCombination {
    terms: BTreeMap<Word, Coeff>,
}

impl LinearCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, Coeff::one())
    }

    pub fn term(w: Word, c: Coeff) -> Self {
        let mut lc = Self::zero();
        lc.add_term(w, c);
        lc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of words with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Word, Coeff> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &Coeff, other: &LinearCombination) {
        if c.is_zero() {
            return;
        }
        for (w, x) in other.iter() {
            self.add_term(w.clone(), c * x);
        }
    }

    pub fn add(&self, other: &LinearCombination) -> LinearCombination {
        let mut out = self.clone();
        out.add_scaled(&Coeff::one(), other);
        out
    }

    pub fn scale(&self, c: &Coeff) -> LinearCombination {
        if c.is_zero() {
            return Self::zero();
        }
        LinearCombination {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), c * x)).collect(),
        }
    }

    /// Applies `f` to every word, summing coefficients of words that collide.
    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> LinearCombination {
        let mut out = Self::zero();
        for (w, c) in self.iter() {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Fallible variant of [`map_words`](Self::map_words).
    pub fn try_map_words<F: FnMut(&Word) -> Result<Word>>(
        &self,
        mut f: F,
    ) -> Result<LinearCombination> {
        let mut out = Self::zero();
        for (w, c) in self.iter() {
            out.add_term(f(w)?, c.clone());
        }
        Ok(out)
    }

    /// Every word with a nonzero coefficient is admissible.
    pub fn is_admissible(&self) -> bool {
        self.words().all(Word::is_admissible)
    }
}

impl FromIterator<(Word, Coeff)> for LinearCombination {
    fn from_iter<I: IntoIterator<Item = (Word, Coeff)>>(iter: I) -> Self {
        let mut lc = Self::zero();
        for (w, c) in iter {
            lc.add_term(w, c);
        }
        lc
    }
}

impl From<Word> for LinearCombination {
    fn from(w: Word) -> Self {
        Self::from_word(w)
    }
}

impl<'a> IntoIterator for &'a LinearCombination {
    type Item = (&'a Word, &'a Coeff);
    type IntoIter = btree_map::Iter<'a, Word, Coeff>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl fmt::Display for LinearCombination {
    /// One `num/den : word` line per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, c) in self.iter() {
            writeln!(f, "{c} : {w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in self.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}·{w:?}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// All admissible words with at most `max_len` letters, each index at most
/// `max_index`, in word order.
pub fn admissible_words(max_len: usize, max_index: Letter) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    if max_index == 0 {
        return out;
    }
    let mut layer: Vec<Word> = (1..=max_index).map(Word::letter).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|w| (0..=max_index).map(move |j| w.append(j)))
            .collect();
    }
    out
}

/// Integer constant as a coefficient.
pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w<const N: usize>(l: [Letter; N]) -> Word {
        Word::from(l)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word("2,0,0,1,1,0").unwrap(), w([2, 0, 0, 1, 1, 0]));
        assert_eq!(parse_word("").unwrap(), Word::empty());
        assert_eq!(parse_word("1 0 1 0").unwrap(), w([1, 0, 1, 0]));
        assert_eq!(parse_word(" 1, 0 ").unwrap(), w([1, 0]));
    }

    #[test]
    fn parse_errors_name_token() {
        match parse_word("1,-2,3") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "-2"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_word("1,x") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_word("1,,2").is_err());
        assert!(parse_word("+1").is_err());
    }

    #[test]
    fn concat_and_identity() {
        assert_eq!(w([1]).concat(&w([0, 1])), w([1, 0, 1]));
        assert_eq!(Word::empty().concat(&w([2, 0])), w([2, 0]));
        assert_eq!(w([2, 0]).concat(&Word::empty()), w([2, 0]));
    }

    #[test]
    fn length_depth_admissibility() {
        let x = w([2, 0, 0, 1, 1, 0]);
        assert_eq!(x.len(), 6);
        assert_eq!(x.depth(), 3);
        assert_eq!(Word::empty().len(), 0);
        assert_eq!(Word::empty().depth(), 0);
        assert_eq!(w([1]).len(), 1);
        assert_eq!(w([0, 0]).depth(), 0);
        assert!(w([2, 0, 1]).is_admissible());
        assert!(!w([0, 1]).is_admissible());
        assert!(Word::empty().is_admissible());
    }

    #[test]
    fn canonical_forms() {
        let cf = w([2, 0, 0, 1, 1, 0]).canonical_form().unwrap();
        assert_eq!(cf.pairs(), vec![(2, 2), (1, 0), (1, 1)]);
        assert_eq!(cf.depth(), 3);
        assert!(Word::empty().canonical_form().unwrap().blocks.is_empty());
        assert_eq!(
            w([3, 0, 0, 1, 0]).canonical_form().unwrap().pairs(),
            vec![(3, 2), (1, 1)]
        );
        assert!(matches!(w([0, 1]).canonical_form(), Err(Error::Domain(_))));
    }

    #[test]
    fn tail_splits() {
        let t = w([2, 0, 0, 1, 1, 0]).tail_split().unwrap();
        assert_eq!((t.prefix, t.head, t.zeros), (w([2, 0, 0, 1]), 1, 1));
        let t = w([1]).tail_split().unwrap();
        assert_eq!((t.prefix, t.head, t.zeros), (Word::empty(), 1, 0));
        let t = w([1, 0, 1, 0]).tail_split().unwrap();
        assert_eq!((t.prefix, t.head, t.zeros), (w([1, 0]), 1, 1));
        assert!(w([0, 0]).tail_split().is_err());
        assert!(Word::empty().tail_split().is_err());
    }

    #[test]
    fn word_order_is_graded() {
        let mut v = vec![w([2]), w([1, 1]), Word::empty(), w([1, 0]), w([1])];
        v.sort();
        assert_eq!(v, vec![Word::empty(), w([1]), w([2]), w([1, 0]), w([1, 1])]);
    }

    #[test]
    fn admissible_word_boxes() {
        assert_eq!(admissible_words(1, 2), vec![Word::empty(), w([1]), w([2])]);
        assert_eq!(admissible_words(0, 5), vec![Word::empty()]);
        assert_eq!(
            admissible_words(2, 1),
            vec![Word::empty(), w([1]), w([1, 0]), w([1, 1])]
        );
        assert_eq!(admissible_words(3, 3).len(), 1 + 3 + 12 + 48);
        let v = admissible_words(3, 2);
        assert!(v.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn linear_combination_arithmetic() {
        let mut x = LinearCombination::zero();
        x.add_term(w([1, 1]), int(2));
        x.add_term(w([2]), int(1));
        assert_eq!(x.coefficient_of(&w([2])), int(1));
        assert_eq!(x.coefficient_of(&w([3])), int(0));
        assert!(x.add(&x.scale(&int(-1))).is_zero());
        assert!(x.scale(&int(0)).is_zero());
        assert_eq!(x.to_string(), "1 : 2\n2 : 1,1\n");
        let half = Coeff::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            LinearCombination::term(Word::empty(), half).to_string(),
            "1/2 : \n"
        );
    }
}
