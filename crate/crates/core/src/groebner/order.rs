use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::GroebnerError;
use crate::poly::Monomial;
use crate::rational::{serde_rat_vec, Rational};

/// A monomial order on a fixed number of variables (`x0 > x1 > ... > xN`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Compare `sum w_i e_i` first, break ties with grevlex.
    Weighted {
        #[serde(with = "serde_rat_vec")]
        weights: Vec<Rational>,
    },
}

impl MonomialOrder {
    pub fn weighted(weights: Vec<Rational>) -> Result<Self, GroebnerError> {
        if weights.iter().any(Signed::is_negative) {
            return Err(GroebnerError::NegativeWeight);
        }
        Ok(MonomialOrder::Weighted { weights })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Weighted { .. } => "weighted",
        }
    }

    pub(crate) fn check(&self, num_vars: usize) -> Result<(), GroebnerError> {
        if let MonomialOrder::Weighted { weights } = self {
            if weights.len() != num_vars {
                return Err(GroebnerError::WeightLength { expected: num_vars, found: weights.len() });
            }
            if weights.iter().any(Signed::is_negative) {
                return Err(GroebnerError::NegativeWeight);
            }
        }
        Ok(())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Weighted { weights } => {
                let w = |m: &Monomial| {
                    m.exponents()
                        .iter()
                        .zip(weights)
                        .filter(|(&e, _)| e > 0)
                        .fold(Rational::zero(), |acc, (&e, c)| acc + c * Rational::from_integer(e.into()))
                };
                w(a).cmp(&w(b)).then_with(|| a.cmp(b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;
    use crate::rational::int;

    #[test]
    fn lex_vs_grevlex() {
        let a = Monomial::new(vec![1, 0, 1]);
        let b = Monomial::new(vec![0, 2, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn weighted_then_grevlex() {
        let o = MonomialOrder::weighted(vec![int(0), int(0), int(1)]).unwrap();
        let a = Monomial::new(vec![0, 0, 1]);
        let b = Monomial::new(vec![1, 0, 0]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        let c = Monomial::new(vec![0, 1, 0]);
        assert_eq!(o.cmp(&b, &c), Ordering::Greater);
        assert!(MonomialOrder::weighted(vec![int(-1)]).is_err());
    }

    #[test]
    fn orders_are_multiplicative_and_total() {
        let orders = [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::weighted(vec![int(2), int(0), int(1)]).unwrap(),
        ];
        let ms: Vec<Monomial> = (1..=3).flat_map(|d| monomials_of_degree(3, d)).collect();
        let w = Monomial::new(vec![1, 2, 0]);
        for o in &orders {
            for a in &ms {
                for b in &ms {
                    let c = o.cmp(a, b);
                    assert_eq!(c == Ordering::Equal, a == b);
                    assert_eq!(o.cmp(&a.mul(&w), &b.mul(&w)), c);
                }
            }
        }
    }
}
