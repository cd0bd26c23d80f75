use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError};
use crate::rational::Rational;

/// A homogeneous polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector in grevlex order,
/// so iteration (and therefore printing and serialisation) is deterministic.
/// Zero coefficients are never stored; the zero polynomial has no terms and
/// no degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomoPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomoPoly {
    pub fn zero(num_vars: usize) -> Self {
        HomoPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(num_vars), c)
    }

    pub fn var(index: usize, num_vars: usize) -> Self {
        Self::monomial(Monomial::var(index, num_vars), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let num_vars = m.num_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HomoPoly { num_vars, terms }
    }

    /// Builds a polynomial from terms, summing repeated monomials and
    /// dropping zero coefficients.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut deg: Option<u32> = None;
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(PolyError::AmbientMismatch { first: num_vars, second: m.num_vars() });
            }
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(PolyError::NotHomogeneous { first: d, second: m.degree() })
                }
                _ => {}
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomoPoly { num_vars, terms: map })
    }

    pub(crate) fn from_map_unchecked(num_vars: usize, terms: BTreeMap<Monomial, Rational>) -> Self {
        HomoPoly { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Result<u32, PolyError> {
        self.terms.keys().next().map(Monomial::degree).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn scale(&self, c: &Rational) -> HomoPoly {
        if c.is_zero() {
            return HomoPoly::zero(self.num_vars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        HomoPoly { num_vars: self.num_vars, terms }
    }

    fn check_compatible(&self, other: &HomoPoly) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars {
            return Err(PolyError::AmbientMismatch { first: self.num_vars, second: other.num_vars });
        }
        if let (Ok(a), Ok(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(PolyError::DegreeMismatch { first: a, second: b });
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &HomoPoly) -> Result<HomoPoly, PolyError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(HomoPoly { num_vars: self.num_vars, terms })
    }

    pub fn sub(&self, other: &HomoPoly) -> Result<HomoPoly, PolyError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &HomoPoly) -> Result<HomoPoly, PolyError> {
        if self.num_vars != other.num_vars {
            return Err(PolyError::AmbientMismatch { first: self.num_vars, second: other.num_vars });
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *terms.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomoPoly { num_vars: self.num_vars, terms })
    }

    pub fn pow(&self, e: u32) -> HomoPoly {
        let mut acc = HomoPoly::constant(self.num_vars, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.num_vars {
            return Err(PolyError::DimensionMismatch { expected: self.num_vars, found: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= crate::rational::pow(x, e as u64);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at an integer point.
    pub fn eval_int(&self, point: &[BigInt]) -> Result<Rational, PolyError> {
        let p: Vec<Rational> = point.iter().cloned().map(Rational::from_integer).collect();
        self.eval(&p)
    }

    /// The unique positive scalar multiple with coprime integer
    /// coefficients and positive leading coefficient.
    pub fn primitive(&self) -> HomoPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd_num = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm_den / c.denom()))));
        let lead_neg = self.terms().next().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut factor = Rational::new(lcm_den, gcd_num);
        if lead_neg {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Largest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.exponents().iter().rposition(|&e| e > 0))
            .max()
    }
}

impl fmt::Display for HomoPoly {
    /// Exact, re-parseable rendering, e.g. `x0^2 - 3/2*x1*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let show_coef = !a.is_one() || m.is_one();
            if show_coef {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            if !m.is_one() {
                if show_coef {
                    f.write_str("*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// `sum_j coeffs[j] * polys[j]`.
pub fn poly_combine(coeffs: &[Rational], polys: &[HomoPoly]) -> Result<HomoPoly, PolyError> {
    if polys.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    if coeffs.len() != polys.len() {
        return Err(PolyError::DimensionMismatch { expected: polys.len(), found: coeffs.len() });
    }
    let num_vars = polys[0].num_vars();
    let mut degree: Option<u32> = None;
    for p in polys {
        if p.num_vars() != num_vars {
            return Err(PolyError::AmbientMismatch { first: num_vars, second: p.num_vars() });
        }
        if let Ok(d) = p.degree() {
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(PolyError::DegreeMismatch { first: e, second: d }),
                _ => {}
            }
        }
    }
    let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (c, p) in coeffs.iter().zip(polys) {
        if c.is_zero() {
            continue;
        }
        for (m, a) in &p.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += c * a;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(HomoPoly::from_map_unchecked(num_vars, terms))
}

#[derive(Clone, Debug)]
pub struct LcmDegree {
    pub lcm: u32,
    /// `d / d_i` for each member.
    pub lift_exponents: Vec<u32>,
}

impl LcmDegree {
    /// Each member raised to `d / d_i`, so that all share degree `d`.
    pub fn lift(&self, family: &[HomoPoly]) -> Vec<HomoPoly> {
        family.iter().zip(&self.lift_exponents).map(|(p, &e)| p.pow(e)).collect()
    }
}

pub fn lcm_degree(family: &[HomoPoly]) -> Result<LcmDegree, PolyError> {
    if family.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let degrees = family.iter().map(HomoPoly::degree).collect::<Result<Vec<_>, _>>()?;
    let lcm = degrees.iter().fold(1u32, |acc, &d| if d == 0 { acc } else { acc.lcm(&d) });
    let lift_exponents = degrees.iter().map(|&d| lcm.checked_div(d).unwrap_or(0)).collect();
    Ok(LcmDegree { lcm, lift_exponents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::{int, ratio};

    fn p(s: &str, n: usize) -> HomoPoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn eval_examples() {
        let conic = p("x0*x2 - x1^2", 3);
        assert_eq!(conic.eval(&[int(1), int(1), int(1)]).unwrap(), int(0));
        assert_eq!(conic.eval(&[int(1), int(2), int(3)]).unwrap(), int(-1));
        assert_eq!(conic.eval(&[int(0), int(0), int(0)]).unwrap(), int(0));
        assert!(matches!(
            conic.eval(&[int(1)]),
            Err(PolyError::DimensionMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn combine_examples() {
        let x0 = p("x0", 3);
        assert!(poly_combine(&[int(1), int(-1)], &[x0.clone(), x0.clone()]).unwrap().is_zero());
        let s = poly_combine(&[int(1), int(1)], &[p("x1", 3), p("x2", 3)]).unwrap();
        assert_eq!(s, p("x1 + x2", 3));
        let s = poly_combine(&[int(2), int(3)], &[p("x0^2", 3), p("x1*x2", 3)]).unwrap();
        assert_eq!(s, p("2x0^2 + 3x1*x2", 3));
        assert_eq!(poly_combine(&[], &[]), Err(PolyError::EmptyInput));
        assert!(matches!(
            poly_combine(&[int(1), int(1)], &[p("x0", 3), p("x1^2", 3)]),
            Err(PolyError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn lcm_examples() {
        let fam = |s: &[&str]| s.iter().map(|t| p(t, 3)).collect::<Vec<_>>();
        assert_eq!(lcm_degree(&fam(&["x0", "x1", "x2"])).unwrap().lcm, 1);
        assert_eq!(lcm_degree(&fam(&["x0^2", "x1^3"])).unwrap().lcm, 6);
        let l = lcm_degree(&fam(&["x0^4", "x1^6", "x2^10"])).unwrap();
        assert_eq!(l.lcm, 60);
        assert_eq!(l.lift_exponents, vec![15, 10, 6]);
        assert_eq!(lcm_degree(&[HomoPoly::zero(3)]).unwrap_err(), PolyError::ZeroPolynomial);
        let lifted = lcm_degree(&fam(&["x0", "x1^2"])).unwrap().lift(&fam(&["x0", "x1^2"]));
        assert_eq!(lifted[0], p("x0^2", 3));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(HomoPoly::zero(2).degree(), Err(PolyError::ZeroPolynomial));
        assert_eq!(HomoPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn display_and_primitive() {
        let q = p("-x0^2 + 3/2x1*x2", 3);
        assert_eq!(q.to_string(), "-x0^2 + 3/2*x1*x2");
        assert_eq!(q.primitive(), p("2x0^2 - 3x1*x2", 3));
        assert_eq!(p("4x0 + 6x1", 2).primitive(), p("2x0 + 3x1", 2));
        assert_eq!(p("x0", 2).scale(&ratio(1, 3)).to_string(), "1/3*x0");
    }
}
