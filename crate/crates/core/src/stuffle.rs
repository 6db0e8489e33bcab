//! The Schlesinger-Zudilin stuffle product and its multiplicities.
//!
//! Three routes compute the same product on words:
//!
//! * [`stuffle`] / [`stuffle_words`]: the defining recursion on the first letters,
//!   `u_a A * u_b B = u_a (A * u_b B) + u_b (u_a A * B) + u_{a+b} (A * B)`;
//! * [`stuffle_reversed`]: the mirrored recursion on the last letters;
//! * [`stuffle_block`]: the closed triple sum that peels a whole tail
//!   `u_j u_0^n` off each factor at once.
//!
//! Multiplicities `m(W1, W2; W)` come either from coefficient extraction
//! ([`multiplicity`]) or from the recursion on tails ([`multiplicity_recursive`]),
//! which never forms the product.

use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::word::{Coeff, LinearCombination, Word};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn binom_u(n: usize, k: usize) -> BigInt {
    binomial(n as i64, k as i64)
}

/// Which recursion computes a word product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StuffleImpl {
    Front,
    Back,
    Block,
}

impl std::str::FromStr for StuffleImpl {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "front" => Ok(StuffleImpl::Front),
            "back" => Ok(StuffleImpl::Back),
            "block" => Ok(StuffleImpl::Block),
            other => Err(crate::Error::Parse {
                what: "stuffle implementation",
                token: other.to_string(),
            }),
        }
    }
}

type Product = Arc<LinearCombination>;
type PairKey = (Word, Word);

/// Memoizing evaluator for the three product recursions and the
/// multiplicity recursion. All tables are concurrent maps; racing writers
/// store identical values.
pub struct Stuffler {
    symmetric_key: bool,
    front: DashMap<PairKey, Product>,
    back: DashMap<PairKey, Product>,
    block: DashMap<PairKey, Product>,
    mult: DashMap<(Word, Word, Word), u64>,
}

impl Default for Stuffler {
    fn default() -> Self {
        Self::new()
    }
}

static SHARED: LazyLock<Stuffler> = LazyLock::new(Stuffler::new);

/// Process-wide evaluator used by the free functions.
pub fn shared() -> &'static Stuffler {
    &SHARED
}

impl Stuffler {
    /// Front-recursion results are keyed by the sorted word pair.
    pub fn new() -> Self {
        Stuffler {
            symmetric_key: true,
            front: DashMap::new(),
            back: DashMap::new(),
            block: DashMap::new(),
            mult: DashMap::new(),
        }
    }

    /// Keys every table by the ordered pair, so that `a * b` and `b * a` are
    /// computed independently.
    pub fn ordered() -> Self {
        Stuffler {
            symmetric_key: false,
            ..Self::new()
        }
    }

    fn front_key(&self, a: &Word, b: &Word) -> PairKey {
        if self.symmetric_key && b < a {
            (b.clone(), a.clone())
        } else {
            (a.clone(), b.clone())
        }
    }

    pub fn product(&self, which: StuffleImpl, a: &Word, b: &Word) -> Product {
        match which {
            StuffleImpl::Front => self.front(a, b),
            StuffleImpl::Back => self.back(a, b),
            StuffleImpl::Block => self.block(a, b),
        }
    }

    /// Front recursion on first letters.
    pub fn front(&self, a: &Word, b: &Word) -> Product {
        if a.is_empty() {
            return Arc::new(LinearCombination::from_word(b.clone()));
        }
        if b.is_empty() {
            return Arc::new(LinearCombination::from_word(a.clone()));
        }
        let key = self.front_key(a, b);
        if let Some(hit) = self.front.get(&key).map(|r| Arc::clone(r.value())) {
            return hit;
        }
        let (ja, ra) = (a.first().unwrap(), a.rest());
        let (jb, rb) = (b.first().unwrap(), b.rest());
        let mut out = LinearCombination::zero();
        for (w, c) in self.front(&ra, b).iter() {
            out.add_term(w.prepend(ja), c.clone());
        }
        for (w, c) in self.front(a, &rb).iter() {
            out.add_term(w.prepend(jb), c.clone());
        }
        let merged = ja.checked_add(jb).expect("letter index overflow");
        for (w, c) in self.front(&ra, &rb).iter() {
            out.add_term(w.prepend(merged), c.clone());
        }
        let out = Arc::new(out);
        self.front.insert(key, Arc::clone(&out));
        out
    }

    /// Back recursion on last letters.
    pub fn back(&self, a: &Word, b: &Word) -> Product {
        if a.is_empty() {
            return Arc::new(LinearCombination::from_word(b.clone()));
        }
        if b.is_empty() {
            return Arc::new(LinearCombination::from_word(a.clone()));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.back.get(&key).map(|r| Arc::clone(r.value())) {
            return hit;
        }
        let (ja, ia) = (a.last().unwrap(), a.init());
        let (jb, ib) = (b.last().unwrap(), b.init());
        let mut out = LinearCombination::zero();
        for (w, c) in self.back(&ia, b).iter() {
            out.add_term(w.append(ja), c.clone());
        }
        for (w, c) in self.back(a, &ib).iter() {
            out.add_term(w.append(jb), c.clone());
        }
        let merged = ja.checked_add(jb).expect("letter index overflow");
        for (w, c) in self.back(&ia, &ib).iter() {
            out.add_term(w.append(merged), c.clone());
        }
        let out = Arc::new(out);
        self.back.insert(key, Arc::clone(&out));
        out
    }

    /// Tail-block triple sum. Factors of depth zero fall through to the
    /// front recursion.
    pub fn block(&self, a: &Word, b: &Word) -> Product {
        let (Ok(ta), Ok(tb)) = (a.tail_split(), b.tail_split()) else {
            return self.front(a, b);
        };
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.block.get(&key).map(|r| Arc::clone(r.value())) {
            return hit;
        }
        let (w1p, j1, n1) = (&ta.prefix, ta.head, ta.zeros);
        let (w2p, j2, n2) = (&tb.prefix, tb.head, tb.zeros);
        let mut out = LinearCombination::zero();

        // (W1' * W2' u_{j2} u_0^{n2-j-e}) u_{j1} u_0^{n1+k}
        for j in 0..=n2 {
            for k in 0..=j {
                let c = binom_u(n1 + k, n1) * binomial(n1 as i64, (j - k) as i64);
                if c.is_zero() {
                    continue;
                }
                let c = Coeff::from_integer(c);
                for eps in 0..=1.min(n2 - j) {
                    let right = w2p.append_block(j2, n2 - j - eps);
                    for (w, x) in self.block(w1p, &right).iter() {
                        out.add_term(w.append_block(j1, n1 + k), &c * x);
                    }
                }
            }
        }
        // (W1' u_{j1} u_0^{n1-j-e} * W2') u_{j2} u_0^{n2+k}
        for j in 0..=n1 {
            for k in 0..=j {
                let c = binom_u(n2 + k, n2) * binomial(n2 as i64, (j - k) as i64);
                if c.is_zero() {
                    continue;
                }
                let c = Coeff::from_integer(c);
                for eps in 0..=1.min(n1 - j) {
                    let left = w1p.append_block(j1, n1 - j - eps);
                    for (w, x) in self.block(&left, w2p).iter() {
                        out.add_term(w.append_block(j2, n2 + k), &c * x);
                    }
                }
            }
        }
        // (W1' * W2') u_{j1+j2} u_0^{n1+k}
        let merged = j1.checked_add(j2).expect("letter index overflow");
        let inner = self.block(w1p, w2p);
        for k in 0..=n2 {
            let c = binom_u(n1 + k, n1) * binomial(n1 as i64, (n2 - k) as i64);
            if c.is_zero() {
                continue;
            }
            let c = Coeff::from_integer(c);
            for (w, x) in inner.iter() {
                out.add_term(w.append_block(merged, n1 + k), &c * x);
            }
        }
        let out = Arc::new(out);
        self.block.insert(key, Arc::clone(&out));
        out
    }

    /// Bilinear extension of the chosen word product.
    pub fn product_lin(
        &self,
        which: StuffleImpl,
        a: &LinearCombination,
        b: &LinearCombination,
    ) -> LinearCombination {
        let mut out = LinearCombination::zero();
        for (wa, ca) in a.iter() {
            for (wb, cb) in b.iter() {
                let c = ca * cb;
                out.add_scaled(&c, &self.product(which, wa, wb));
            }
        }
        out
    }

    /// Coefficient of `q.target` in `q.w1 * q.w2`.
    pub fn multiplicity(&self, q: &MultiplicityQuery) -> u64 {
        coeff_to_count(&self.front(&q.w1, &q.w2).coefficient_of(&q.target))
    }

    /// Multiplicity via the tail recursion; never expands the product.
    pub fn multiplicity_recursive(&self, q: &MultiplicityQuery) -> u64 {
        self.mult_rec(&q.w1, &q.w2, &q.target)
    }

    fn mult_rec(&self, w1: &Word, w2: &Word, w: &Word) -> u64 {
        if w1.is_empty() {
            return u64::from(w == w2);
        }
        if w2.is_empty() {
            return u64::from(w == w1);
        }
        if w.is_empty() {
            // W1, W2 are both nonempty here
            return 0;
        }
        let key = (w1.clone(), w2.clone(), w.clone());
        if let Some(hit) = self.mult.get(&key).map(|r| *r.value()) {
            return hit;
        }
        let t1 = w1.tail_split().expect("admissible nonempty word");
        let t2 = w2.tail_split().expect("admissible nonempty word");
        let t3 = w.tail_split().expect("admissible nonempty word");
        let (w1p, j1, n1) = (&t1.prefix, t1.head, t1.zeros);
        let (w2p, j2, n2) = (&t2.prefix, t2.head, t2.zeros);
        let (wp, j3, n3) = (&t3.prefix, t3.head, t3.zeros);

        let mut total = BigInt::zero();
        for j in 0..=n2 {
            for k in 0..=j {
                if !(j1 == j3 && n1 + k == n3) {
                    continue;
                }
                let c = binom_u(n1 + k, n1) * binomial(n1 as i64, (j - k) as i64);
                for eps in 0..=1.min(n2 - j) {
                    let right = w2p.append_block(j2, n2 - j - eps);
                    total += &c * self.mult_rec(w1p, &right, wp);
                }
            }
        }
        for j in 0..=n1 {
            for k in 0..=j {
                if !(j2 == j3 && n2 + k == n3) {
                    continue;
                }
                let c = binom_u(n2 + k, n2) * binomial(n2 as i64, (j - k) as i64);
                for eps in 0..=1.min(n1 - j) {
                    let left = w1p.append_block(j1, n1 - j - eps);
                    total += &c * self.mult_rec(&left, w2p, wp);
                }
            }
        }
        if j1.checked_add(j2) == Some(j3) {
            for k in 0..=n2 {
                if n1 + k != n3 {
                    continue;
                }
                let c = binom_u(n1 + k, n1) * binomial(n1 as i64, (n2 - k) as i64);
                total += c * self.mult_rec(w1p, w2p, wp);
            }
        }
        let m = total.to_u64().expect("multiplicity fits in u64");
        self.mult.insert(key, m);
        m
    }
}

fn coeff_to_count(c: &Coeff) -> u64 {
    assert!(c.is_integer(), "stuffle multiplicity {c} is not an integer");
    let n = c.to_integer();
    assert!(!n.is_negative(), "stuffle multiplicity {n} is negative");
    n.to_u64().expect("multiplicity fits in u64")
}

/// Triple `(W1, W2; W)` of admissible words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityQuery {
    pub w1: Word,
    pub w2: Word,
    pub target: Word,
}

impl MultiplicityQuery {
    pub fn new(w1: Word, w2: Word, target: Word) -> Result<Self> {
        for (name, w) in [("W1", &w1), ("W2", &w2), ("W", &target)] {
            if !w.is_admissible() {
                return Err(domain(format!(
                    "multiplicity needs admissible words, {name} = `{w}` starts with u_0"
                )));
            }
        }
        Ok(MultiplicityQuery { w1, w2, target })
    }
}

/// Bilinear stuffle product (front recursion, shared memo).
pub fn stuffle(a: &LinearCombination, b: &LinearCombination) -> LinearCombination {
    shared().product_lin(StuffleImpl::Front, a, b)
}

/// Stuffle product of two words (front recursion, shared memo).
pub fn stuffle_words(a: &Word, b: &Word) -> Arc<LinearCombination> {
    shared().front(a, b)
}

pub fn stuffle_reversed(a: &Word, b: &Word) -> LinearCombination {
    (*shared().back(a, b)).clone()
}

pub fn stuffle_block(a: &Word, b: &Word) -> LinearCombination {
    (*shared().block(a, b)).clone()
}

pub fn multiplicity(q: &MultiplicityQuery) -> u64 {
    shared().multiplicity(q)
}

pub fn multiplicity_recursive(q: &MultiplicityQuery) -> u64 {
    shared().multiplicity_recursive(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::int;

    fn w<const N: usize>(l: [u64; N]) -> Word {
        Word::from(l)
    }

    fn lc(terms: &[(i64, Word)]) -> LinearCombination {
        terms.iter().map(|(c, w)| (w.clone(), int(*c))).collect()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520));
    }

    #[test]
    fn front_examples() {
        let one = LinearCombination::from_word(w([1]));
        assert_eq!(stuffle(&one, &one), lc(&[(2, w([1, 1])), (1, w([2]))]));
        let e = LinearCombination::from_word(Word::empty());
        let x = LinearCombination::from_word(w([2, 0]));
        assert_eq!(stuffle(&e, &x), x);
        let zero = LinearCombination::from_word(w([0]));
        assert_eq!(
            stuffle(&one, &zero),
            lc(&[(1, w([1, 0])), (1, w([0, 1])), (1, w([1]))])
        );
    }

    #[test]
    fn reversed_examples() {
        assert_eq!(
            stuffle_reversed(&w([1]), &w([1])),
            lc(&[(2, w([1, 1])), (1, w([2]))])
        );
        assert_eq!(
            stuffle_reversed(&Word::empty(), &w([3, 0, 1])),
            LinearCombination::from_word(w([3, 0, 1]))
        );
        assert_eq!(
            stuffle_reversed(&w([1, 0]), &w([2])),
            *stuffle_words(&w([1, 0]), &w([2]))
        );
    }

    #[test]
    fn block_examples() {
        assert_eq!(
            stuffle_block(&w([1, 0]), &w([1])),
            *stuffle_words(&w([1, 0]), &w([1]))
        );
        assert_eq!(
            stuffle_block(&w([1]), &w([1])),
            lc(&[(2, w([1, 1])), (1, w([2]))])
        );
        let p = stuffle_block(&w([1, 0, 1, 0]), &w([2, 0, 0]));
        // six quasi-shuffles fuse into u3 u0^2 u1 u0
        assert_eq!(p.coefficient_of(&w([3, 0, 0, 1, 0])), int(6));
        assert_eq!(p, *stuffle_words(&w([1, 0, 1, 0]), &w([2, 0, 0])));
    }

    #[test]
    fn block_falls_through_on_depth_zero() {
        assert_eq!(
            stuffle_block(&w([0, 0]), &w([1, 0])),
            *stuffle_words(&w([0, 0]), &w([1, 0]))
        );
        assert_eq!(
            stuffle_block(&Word::empty(), &w([2])),
            LinearCombination::from_word(w([2]))
        );
    }

    #[test]
    fn multiplicity_examples() {
        let q = MultiplicityQuery::new(w([1, 0, 1, 0]), w([2, 0, 0]), w([3, 0, 0, 1, 0])).unwrap();
        assert_eq!(multiplicity(&q), 6);
        assert_eq!(multiplicity_recursive(&q), 6);

        let x = w([2, 1, 0]);
        let q = MultiplicityQuery::new(Word::empty(), x.clone(), x).unwrap();
        assert_eq!(multiplicity(&q), 1);
        assert_eq!(multiplicity_recursive(&q), 1);

        let q = MultiplicityQuery::new(w([1]), w([1]), w([1, 1])).unwrap();
        assert_eq!(multiplicity(&q), 2);
        assert_eq!(multiplicity_recursive(&q), 2);
    }

    #[test]
    fn recursion_base_cases() {
        let q = MultiplicityQuery::new(Word::empty(), w([2, 0]), w([2, 0])).unwrap();
        assert_eq!(multiplicity_recursive(&q), 1);
        let q = MultiplicityQuery::new(w([1]), w([3]), Word::empty()).unwrap();
        assert_eq!(multiplicity_recursive(&q), 0);
        let q = MultiplicityQuery::new(Word::empty(), Word::empty(), Word::empty()).unwrap();
        assert_eq!(multiplicity_recursive(&q), 1);
        let q = MultiplicityQuery::new(w([1]), Word::empty(), w([2])).unwrap();
        assert_eq!(multiplicity_recursive(&q), 0);
    }

    #[test]
    fn query_rejects_non_admissible() {
        assert!(MultiplicityQuery::new(w([0, 1]), w([1]), w([1])).is_err());
    }

    #[test]
    fn ordered_memo_still_commutes() {
        let s = Stuffler::ordered();
        let (a, b) = (w([2, 0, 1]), w([1, 3]));
        assert_eq!(*s.front(&a, &b), *s.front(&b, &a));
    }

    #[test]
    fn impl_names_parse() {
        assert_eq!("back".parse::<StuffleImpl>().unwrap(), StuffleImpl::Back);
        assert!("sideways".parse::<StuffleImpl>().is_err());
    }
}
