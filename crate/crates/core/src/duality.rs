//! The duality involution on admissible words.

use crate::error::{domain, Result};
use crate::word::{CanonicalForm, LinearCombination, Word};

/// `u_{k1} u_0^{z1} ... u_{kd} u_0^{zd}  ->  u_{zd+1} u_0^{kd-1} ... u_{z1+1} u_0^{k1-1}`
pub fn tau(w: &Word) -> Result<Word> {
    let cf = w
        .canonical_form()
        .map_err(|_| domain(format!("duality needs an admissible word, got `{w}`")))?;
    let dual = CanonicalForm::from_pairs(
        cf.blocks
            .iter()
            .rev()
            .map(|b| (b.zeros as u64 + 1, (b.head - 1) as usize)),
    );
    Ok(dual.to_word())
}

pub fn tau_lin(a: &LinearCombination) -> Result<LinearCombination> {
    a.try_map_words(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::int;

    fn w<const N: usize>(l: [u64; N]) -> Word {
        Word::from(l)
    }

    #[test]
    fn examples() {
        assert_eq!(tau(&Word::empty()).unwrap(), Word::empty());
        assert_eq!(tau(&w([2, 0, 0, 1, 1, 0])).unwrap(), w([2, 1, 3, 0]));
        assert_eq!(tau(&w([3])).unwrap(), w([1, 0, 0]));
        assert!(tau(&w([0, 2])).is_err());
    }

    #[test]
    fn linear_examples() {
        let mut x = LinearCombination::zero();
        x.add_term(w([2]), int(2));
        x.add_term(w([1, 0]), int(1));
        let mut y = LinearCombination::zero();
        y.add_term(w([1, 0]), int(2));
        y.add_term(w([2]), int(1));
        assert_eq!(tau_lin(&x).unwrap(), y);
        assert!(tau_lin(&LinearCombination::zero()).unwrap().is_zero());
        let e = LinearCombination::from_word(Word::empty());
        assert_eq!(tau_lin(&e).unwrap(), e);
        assert!(tau_lin(&LinearCombination::from_word(w([0]))).is_err());
    }
}
