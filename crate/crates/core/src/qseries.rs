//! Truncated q-expansions of Schlesinger-Zudilin q-zeta values.
//!
//! For an admissible word `u_{k1} u_0^{z1} ... u_{kd} u_0^{zd}`
//!
//! ```text
//! sz = sum_{m1 > ... > md > 0} prod_j C(m_j - m_{j+1} - 1, z_j) q^{m_j k_j} / (1 - q^{m_j})^{k_j}
//! ```
//!
//! with `m_{d+1} = 0`. Each summand starts at `q^{m1 k1 + ... + md kd}`, which is
//! at least `q^{m1}`, so restricting to `m1 <= Q` loses nothing below `q^{Q+1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::stuffle::binomial;
use crate::word::{CanonicalForm, Coeff, LinearCombination, Word};

/// Coefficients of `q^0 ... q^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Coeff>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Coeff::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Coeff::one();
        s
    }

    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Coeff>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain(
                "a truncated series needs at least the q^0 coefficient",
            ));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Coeff::from_integer(c.into()))
                .collect(),
        )
    }

    fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        TruncatedSeries {
            coeffs: coeffs.into_iter().map(Coeff::from_integer).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> Coeff {
        self.coeffs.get(n).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let q = self.order();
        let mut out = Self::zero(q);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=q - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Every coefficient is an integer `>= 0`.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Display for TruncatedSeries {
    /// One `N: num/den` line per coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}: {c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(q^{})", parts.join(", "), self.order() + 1)
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.add(b)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// Sparse `q^{mk} / (1 - q^m)^k = sum_{n >= k} C(n-1, k-1) q^{mn}` up to `q^order`.
fn inner_factor(m: usize, k: usize, order: usize) -> Vec<(usize, BigInt)> {
    let mut terms = Vec::new();
    let mut n = k;
    while m * n <= order {
        terms.push((m * n, binomial(n as i64 - 1, k as i64 - 1)));
        n += 1;
    }
    terms
}

/// Evaluates `sz` through a fixed order, caching inner factors and word values.
pub struct SzEvaluator {
    order: usize,
    words: DashMap<Word, Arc<TruncatedSeries>>,
}

impl SzEvaluator {
    pub fn new(order: usize) -> Self {
        SzEvaluator {
            order,
            words: DashMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn eval(&self, w: &Word) -> Result<Arc<TruncatedSeries>> {
        if let Some(hit) = self.words.get(w).map(|r| Arc::clone(r.value())) {
            return Ok(hit);
        }
        let cf = w
            .canonical_form()
            .map_err(|_| domain(format!("sz needs an admissible word, got `{w}`")))?;
        let s = Arc::new(sz_canonical(&cf, self.order));
        self.words.insert(w.clone(), Arc::clone(&s));
        Ok(s)
    }

    /// Linear extension to combinations of admissible words.
    pub fn eval_lin(&self, a: &LinearCombination) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(self.order);
        for (w, c) in a.iter() {
            let s = self.eval(w)?;
            for (o, x) in out.coeffs.iter_mut().zip(s.coeffs()) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }
}

struct Descent<'a> {
    heads: Vec<usize>,
    zeros: Vec<usize>,
    order: usize,
    factors: HashMap<(usize, usize), Vec<(usize, BigInt)>>,
    out: &'a mut Vec<BigInt>,
}

impl Descent<'_> {
    /// Smallest q-order the parts below `level` can still contribute.
    fn tail_floor(&self, level: usize) -> usize {
        let d = self.heads.len();
        (level..d).map(|i| (d - i) * self.heads[i]).sum()
    }

    fn factor(&mut self, m: usize, k: usize) -> Vec<(usize, BigInt)> {
        let order = self.order;
        self.factors
            .entry((m, k))
            .or_insert_with(|| inner_factor(m, k, order))
            .clone()
    }

    /// Chooses `m_{level+1} < prev`; `acc` already holds the product for the
    /// parts above, `acc_order` its leading exponent lower bound.
    fn descend(&mut self, level: usize, prev: usize, acc: &[BigInt], acc_order: usize) {
        let d = self.heads.len();
        let k = self.heads[level];
        let floor_below = self.tail_floor(level + 1);
        let lowest = d - level;
        for m in lowest..prev {
            let lead = acc_order + m * k;
            if lead + floor_below > self.order {
                break;
            }
            // C(m_{level-1} - m - 1, z_{level-1}) couples this part to the one above
            let coupling = if level == 0 {
                BigInt::one()
            } else {
                binomial((prev - m - 1) as i64, self.zeros[level - 1] as i64)
            };
            if coupling.is_zero() {
                continue;
            }
            let factor = self.factor(m, k);
            let mut next = vec![BigInt::zero(); self.order + 1];
            for (e, c) in &factor {
                let c = c * &coupling;
                for (i, a) in acc[..=self.order - e].iter().enumerate() {
                    if !a.is_zero() {
                        next[i + e] += &c * a;
                    }
                }
            }
            if level + 1 == d {
                let last = binomial(m as i64 - 1, self.zeros[level] as i64);
                if last.is_zero() {
                    continue;
                }
                for (o, x) in self.out.iter_mut().zip(&next) {
                    if !x.is_zero() {
                        *o += &last * x;
                    }
                }
            } else {
                self.descend(level + 1, m, &next, lead);
            }
        }
    }
}

fn sz_canonical(cf: &CanonicalForm, order: usize) -> TruncatedSeries {
    let mut out = vec![BigInt::zero(); order + 1];
    if cf.blocks.is_empty() {
        out[0] = BigInt::one();
        return TruncatedSeries::from_bigints(out);
    }
    let mut one = vec![BigInt::zero(); order + 1];
    one[0] = BigInt::one();
    let mut descent = Descent {
        heads: cf.blocks.iter().map(|b| b.head as usize).collect(),
        zeros: cf.blocks.iter().map(|b| b.zeros).collect(),
        order,
        factors: HashMap::new(),
        out: &mut out,
    };
    descent.descend(0, order + 1, &one, 0);
    TruncatedSeries::from_bigints(out)
}

/// `sz(w)` through `q^order`.
pub fn sz(w: &Word, order: usize) -> Result<TruncatedSeries> {
    let cf = w
        .canonical_form()
        .map_err(|_| domain(format!("sz needs an admissible word, got `{w}`")))?;
    Ok(sz_canonical(&cf, order))
}

/// `sz` extended linearly to combinations of admissible words.
pub fn sz_lin(a: &LinearCombination, order: usize) -> Result<TruncatedSeries> {
    SzEvaluator::new(order).eval_lin(a)
}

/// The `N`-th coefficient `psi_N(w)` of `sz(w)`.
pub fn psi(w: &Word, n: usize) -> Result<Coeff> {
    let c = sz(w, n)?.coeff(n);
    assert!(
        c.is_integer() && !c.is_negative(),
        "psi_{n}({w}) = {c} is not a nonnegative integer"
    );
    Ok(c)
}
