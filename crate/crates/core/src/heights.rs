//! Places of ℚ, normalized absolute values, heights, Weil functions and
//! empirical margins for the Schmidt-type inequality.
//!
//! Everything that is the logarithm of a rational is kept as a
//! [`LogRational`]; numbers are rendered only at the very end.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::Exec;
use crate::numeric::{fmt_fixed, ln_combination, ln_fixed};
use crate::poly::{HomoPoly, PolyError};
use crate::position::{HypersurfaceFamily, PositionError, Variety};
use crate::rational::{fmt_rat, int, pow, serde_rat, Rational};

/// Default number of decimal digits in `_approx` fields.
pub const DISPLAY_DIGITS: u32 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightsError {
    #[error("zero has no absolute value here")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point lies on hypersurface {index}")]
    PointOnHypersurface { index: usize },
    #[error("point {point:?} is not on the variety")]
    PointNotOnVariety { point: Vec<String> },
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Position(#[from] PositionError),
}

impl HeightsError {
    pub fn name(&self) -> &'static str {
        match self {
            HeightsError::ZeroInput => "ZeroInput",
            HeightsError::NotPrime(_) => "NotPrime",
            HeightsError::ZeroPoint => "ZeroPoint",
            HeightsError::DimensionMismatch { .. } => "DimensionMismatch",
            HeightsError::PointOnHypersurface { .. } => "PointOnHypersurface",
            HeightsError::PointNotOnVariety { .. } => "PointNotOnVariety",
            HeightsError::ZeroPolynomial => "ZeroPolynomial",
            HeightsError::NonPositiveEpsilon => "NonPositiveEpsilon",
            HeightsError::Poly(e) => e.name(),
            HeightsError::Position(e) => e.name(),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A place of ℚ. Over ℚ every local degree is 1, so `‖x‖_v = |x|_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Place, HeightsError> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(HeightsError::NotPrime(p))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Place::Infinite => s.serialize_str("inf"),
            Place::Finite(p) => s.serialize_u64(*p),
        }
    }
}

/// `{∞, 2, 3, 5, 7, 11, 13}`.
pub fn default_places() -> Vec<Place> {
    std::iter::once(Place::Infinite)
        .chain([2, 3, 5, 7, 11, 13].into_iter().map(Place::Finite))
        .collect()
}

/// Exponent of `p` in a non-zero integer.
pub fn ord_p(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    while !x.is_zero() && x.is_multiple_of(&p) {
        x /= &p;
        k += 1;
    }
    k
}

/// Distinct prime divisors of a non-zero integer by trial division.
pub fn prime_divisors(x: &BigInt) -> Vec<u64> {
    let mut x = x.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= x {
        if x.is_multiple_of(&d) {
            out.push(d.to_u64().expect("divisor below sqrt fits"));
            while x.is_multiple_of(&d) {
                x /= &d;
            }
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if x > BigInt::one() {
        out.push(x.to_u64().unwrap_or_else(|| panic!("prime factor {x} exceeds u64")));
    }
    out
}

/// `|x|_v`: the usual absolute value at ∞, `p^{-ord_p(x)}` at `p`.
pub fn normalized_abs(x: &Rational, v: Place) -> Result<Rational, HeightsError> {
    if x.is_zero() {
        return Err(HeightsError::ZeroInput);
    }
    Ok(match v {
        Place::Infinite => x.abs(),
        Place::Finite(p) => {
            let e = ord_p(x.numer(), p) as i64 - ord_p(x.denom(), p) as i64;
            let pp = pow(&int(p as i64), e.unsigned_abs());
            if e >= 0 {
                pp.recip()
            } else {
                pp
            }
        }
    })
}

/// Places where some of `values` is not a unit: ∞ and the primes dividing a
/// numerator or denominator.
pub fn contributing_places<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<Place> {
    let mut primes = BTreeSet::new();
    for x in values {
        if x.is_zero() {
            continue;
        }
        primes.extend(prime_divisors(x.numer()));
        primes.extend(prime_divisors(x.denom()));
    }
    std::iter::once(Place::Infinite).chain(primes.into_iter().map(Place::Finite)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFormulaReport {
    #[serde(with = "serde_rat")]
    pub product: Rational,
    pub ok: bool,
    pub factors: Vec<PlaceValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceValue {
    pub place: Place,
    #[serde(with = "serde_rat")]
    pub value: Rational,
}

pub fn product_formula_check(x: &Rational) -> Result<ProductFormulaReport, HeightsError> {
    if x.is_zero() {
        return Err(HeightsError::ZeroInput);
    }
    let factors = contributing_places([x])
        .into_iter()
        .map(|v| Ok(PlaceValue { place: v, value: normalized_abs(x, v)? }))
        .collect::<Result<Vec<_>, HeightsError>>()?;
    let product: Rational = factors.iter().map(|f| f.value.clone()).product();
    Ok(ProductFormulaReport { ok: product.is_one(), product, factors })
}

/// A positive rational kept under a deferred logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogRational(Rational);

impl LogRational {
    pub fn new(arg: Rational) -> Result<Self, HeightsError> {
        if !arg.is_positive() {
            return Err(HeightsError::ZeroInput);
        }
        Ok(LogRational(arg))
    }

    /// `log 1 = 0`.
    pub fn zero() -> Self {
        LogRational(Rational::one())
    }

    pub fn argument(&self) -> &Rational {
        &self.0
    }

    /// `log a + log b`.
    pub fn add(&self, other: &LogRational) -> LogRational {
        LogRational(&self.0 * &other.0)
    }

    /// `log a - log b`.
    pub fn sub(&self, other: &LogRational) -> LogRational {
        LogRational(&self.0 / &other.0)
    }

    /// `k · log a`.
    pub fn times(&self, k: u64) -> LogRational {
        LogRational(pow(&self.0, k))
    }

    pub fn is_nonneg(&self) -> bool {
        self.0 >= Rational::one()
    }

    /// Decimal rendering of `ln(arg)`.
    pub fn approx(&self, digits: u32) -> String {
        fmt_fixed(&ln_fixed(&self.0, digits), digits)
    }
}

impl Serialize for LogRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(&self.0))
    }
}

/// `log⁺` height of a scalar: `Σ_v log max(1, |x|_v) = log max(|a|, |b|)`
/// for `x = a/b` in lowest terms.
pub fn height_scalar(x: &Rational) -> LogRational {
    let m = x.numer().abs().max(x.denom().clone()).max(BigInt::one());
    LogRational(Rational::from_integer(m))
}

/// Projective point with coprime integer coordinates, first non-zero one
/// positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<BigInt>);

impl RationalPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self, HeightsError> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(HeightsError::ZeroPoint);
        }
        let first_neg = coords.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative);
        let g = if first_neg { -g } else { g };
        Ok(RationalPoint(coords.into_iter().map(|c| c / &g).collect()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, HeightsError> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators of rational homogeneous coordinates.
    pub fn from_rationals(coords: &[Rational]) -> Result<Self, HeightsError> {
        let l = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::new(coords.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(":"))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// `‖x‖_v = max_i |x_i|_v` (zero coordinates skipped).
pub fn point_norm(x: &RationalPoint, v: Place) -> Rational {
    x.to_rationals()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| normalized_abs(c, v).expect("non-zero"))
        .max()
        .expect("a point has a non-zero coordinate")
}

/// `h(x)`; for coprime integers only the archimedean place contributes.
pub fn height_point(x: &RationalPoint) -> LogRational {
    LogRational(point_norm(x, Place::Infinite))
}

/// `‖Q‖_v = max_I |a_I|_v`.
pub fn poly_norm(q: &HomoPoly, v: Place) -> Result<Rational, HeightsError> {
    q.terms()
        .map(|(_, c)| normalized_abs(c, v))
        .try_fold(None::<Rational>, |m, a| a.map(|a| Some(m.map_or(a.clone(), |m| m.max(a)))))?
        .ok_or(HeightsError::ZeroPolynomial)
}

/// `h(Q) = Σ_v log ‖Q‖_v`, summed over the places where some coefficient is
/// not a unit.
pub fn height_poly(q: &HomoPoly) -> Result<LogRational, HeightsError> {
    if q.is_zero() {
        return Err(HeightsError::ZeroPolynomial);
    }
    let coeffs: Vec<Rational> = q.terms().map(|(_, c)| c.clone()).collect();
    let mut acc = Rational::one();
    for v in contributing_places(&coeffs) {
        acc *= poly_norm(q, v)?;
    }
    Ok(LogRational(acc))
}

fn check_point(q: &HomoPoly, x: &RationalPoint) -> Result<Rational, HeightsError> {
    if q.num_vars() != x.num_vars() {
        return Err(HeightsError::DimensionMismatch { expected: q.num_vars(), found: x.num_vars() });
    }
    let val = q.eval(&x.to_rationals())?;
    if val.is_zero() {
        return Err(HeightsError::PointOnHypersurface { index: 0 });
    }
    Ok(val)
}

/// `λ_{Q,v}(x) = log(‖x‖_v^d · ‖Q‖_v / ‖Q(x)‖_v)`.
pub fn weil_function(q: &HomoPoly, x: &RationalPoint, v: Place) -> Result<LogRational, HeightsError> {
    let val = check_point(q, x)?;
    let d = q.degree()? as u64;
    let arg = pow(&point_norm(x, v), d) * poly_norm(q, v)? / normalized_abs(&val, v)?;
    Ok(LogRational(arg))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilIdentity {
    /// `Σ_v λ_{Q,v}(x)` over every place where a term is non-zero.
    pub sum: LogRational,
    /// `d·h(x) + h(Q)`.
    pub expected: LogRational,
    pub ok: bool,
    pub places: Vec<Place>,
}

/// Sums `λ_{Q,v}(x)` over all places where it can be non-zero and compares
/// with `d·h(x) + h(Q)`.
pub fn weil_identity_check(q: &HomoPoly, x: &RationalPoint) -> Result<WeilIdentity, HeightsError> {
    let val = check_point(q, x)?;
    let mut values: Vec<Rational> = q.terms().map(|(_, c)| c.clone()).collect();
    values.push(val);
    values.extend(x.to_rationals());
    let places = contributing_places(&values);
    let mut sum = LogRational::zero();
    for &v in &places {
        sum = sum.add(&weil_function(q, x, v)?);
    }
    let expected = height_point(x).times(q.degree()? as u64).add(&height_poly(q)?);
    Ok(WeilIdentity { ok: sum == expected, sum, expected, places })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginReport {
    pub point: RationalPoint,
    /// `A` with `lhs = log(A) / D`, `D` the lcm of the degrees.
    pub lhs_argument: LogRational,
    pub lhs_denominator: u32,
    /// `Δ(n+1) + ε`.
    #[serde(with = "serde_rat")]
    pub rhs_multiplier: Rational,
    /// `h(x)`.
    pub height: LogRational,
    pub lhs_approx: String,
    pub rhs_approx: String,
    pub slack_approx: String,
    /// Decided exactly: `A^q > H^{pD}` where `Δ(n+1)+ε = p/q`.
    pub negative_slack: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginSummary {
    pub reports: Vec<MarginReport>,
    pub min_slack_approx: Option<String>,
    /// Every point whose slack is negative, in input order.
    pub negative_slack_points: Vec<RationalPoint>,
}

/// Index of the first member vanishing at `x`.
pub fn containing_member(fam: &HypersurfaceFamily, x: &RationalPoint) -> Result<Option<usize>, HeightsError> {
    let r = x.to_rationals();
    for (j, q) in fam.members().iter().enumerate() {
        if q.eval(&r)?.is_zero() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Evaluates both sides of
/// `Σ_{v∈S} Σ_j λ_{Q_j,v}(x)/deg Q_j <= (Δ(n+1)+ε) h(x)` at each point.
/// Negative slack is data, not an error.
#[allow(clippy::too_many_arguments)]
pub fn subspace_margin(
    v: &Variety,
    fam: &HypersurfaceFamily,
    delta: &Rational,
    eps: &Rational,
    places: &[Place],
    points: &[RationalPoint],
    digits: u32,
    exec: Exec,
) -> Result<MarginSummary, HeightsError> {
    if !eps.is_positive() {
        return Err(HeightsError::NonPositiveEpsilon);
    }
    let mult = delta * int(v.dim() as i64 + 1) + eps;
    let big_d = fam.lcm_degree();
    for x in points {
        if x.num_vars() != v.num_vars() {
            return Err(HeightsError::DimensionMismatch { expected: v.num_vars(), found: x.num_vars() });
        }
        if !v.contains_point(&x.to_rationals())? {
            return Err(HeightsError::PointNotOnVariety { point: x.coords().iter().map(ToString::to_string).collect() });
        }
        if let Some(index) = containing_member(fam, x)? {
            return Err(HeightsError::PointOnHypersurface { index });
        }
    }
    let reports = exec.map(points, |x| margin_at(fam, &mult, big_d, places, x, digits));
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let slacks: Vec<(Rational, &MarginReport)> = reports
        .iter()
        .map(|r| (slack_scaled(r, digits), r))
        .collect();
    let min_slack_approx = slacks.iter().min_by(|a, b| a.0.cmp(&b.0)).map(|(_, r)| r.slack_approx.clone());
    let negative_slack_points = reports.iter().filter(|r| r.negative_slack).map(|r| r.point.clone()).collect();
    Ok(MarginSummary { reports, min_slack_approx, negative_slack_points })
}

fn slack_scaled(r: &MarginReport, digits: u32) -> Rational {
    let v = crate::numeric::ln_combination(
        &[
            (r.rhs_multiplier.clone(), r.height.argument().clone()),
            (Rational::new(BigInt::from(-1), BigInt::from(r.lhs_denominator)), r.lhs_argument.argument().clone()),
        ],
        digits,
    );
    Rational::from_integer(v)
}

fn margin_at(
    fam: &HypersurfaceFamily,
    mult: &Rational,
    big_d: u32,
    places: &[Place],
    x: &RationalPoint,
    digits: u32,
) -> Result<MarginReport, HeightsError> {
    let mut a = LogRational::zero();
    for (q, &d) in fam.members().iter().zip(fam.degrees()) {
        for &v in places {
            a = a.add(&weil_function(q, x, v)?.times((big_d / d) as u64));
        }
    }
    let h = height_point(x);
    let p = mult.numer().to_u64().expect("small multiplier");
    let qd = mult.denom().to_u64().expect("small multiplier");
    let negative_slack = pow(a.argument(), qd) > pow(h.argument(), p * big_d as u64);
    let inv_d = Rational::new(BigInt::one(), BigInt::from(big_d));
    let lhs = ln_combination(&[(inv_d.clone(), a.argument().clone())], digits);
    let rhs = ln_combination(&[(mult.clone(), h.argument().clone())], digits);
    let slack = ln_combination(
        &[(mult.clone(), h.argument().clone()), (-inv_d, a.argument().clone())],
        digits,
    );
    Ok(MarginReport {
        point: x.clone(),
        lhs_argument: a,
        lhs_denominator: big_d,
        rhs_multiplier: mult.clone(),
        height: h,
        lhs_approx: fmt_fixed(&lhs, digits),
        rhs_approx: fmt_fixed(&rhs, digits),
        slack_approx: fmt_fixed(&slack, digits),
        negative_slack,
    })
}

/// Canonical points with `max |x_i| = k` for `k = min_norm, min_norm+1, ...`,
/// kept when they lie on `v`, until `count` are collected or `max_norm` is
/// passed. Within a shell the order is lexicographic on coordinates.
pub fn sample_points(v: &Variety, min_norm: u64, max_norm: u64, count: usize) -> Vec<RationalPoint> {
    let nv = v.num_vars();
    let mut out = Vec::new();
    for k in min_norm.max(1)..=max_norm {
        let k = k as i64;
        let mut shell = Vec::new();
        let mut cur = vec![-k; nv];
        loop {
            let first = cur.iter().find(|&&c| c != 0).copied();
            let coprime = cur.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1;
            if first.is_some_and(|f| f > 0) && coprime && cur.iter().any(|c| c.abs() == k) {
                shell.push(RationalPoint::from_i64(&cur).expect("non-zero"));
            }
            let Some(i) = (0..nv).rev().find(|&i| cur[i] < k) else { break };
            cur[i] += 1;
            for c in cur.iter_mut().skip(i + 1) {
                *c = -k;
            }
        }
        for x in shell {
            if v.contains_point(&x.to_rationals()).unwrap_or(false) {
                out.push(x);
                if out.len() >= count {
                    return out;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::ratio;

    #[test]
    fn abs_values() {
        assert_eq!(normalized_abs(&int(6), Place::Finite(2)).unwrap(), ratio(1, 2));
        assert_eq!(normalized_abs(&int(1), Place::Finite(7)).unwrap(), int(1));
        assert_eq!(normalized_abs(&ratio(-3, 4), Place::Infinite).unwrap(), ratio(3, 4));
        assert_eq!(normalized_abs(&ratio(1, 8), Place::Finite(2)).unwrap(), int(8));
        assert_eq!(normalized_abs(&int(0), Place::Infinite), Err(HeightsError::ZeroInput));
        assert_eq!(Place::finite(9), Err(HeightsError::NotPrime(9)));
    }

    #[test]
    fn product_formula_examples() {
        let r = product_formula_check(&int(6)).unwrap();
        assert!(r.ok);
        assert_eq!(r.factors.len(), 3);
        assert!(product_formula_check(&int(1)).unwrap().ok);
        let r = product_formula_check(&ratio(-20, 9)).unwrap();
        assert!(r.ok);
        assert_eq!(r.factors.iter().map(|f| f.place).collect::<Vec<_>>(), vec![
            Place::Infinite,
            Place::Finite(2),
            Place::Finite(3),
            Place::Finite(5)
        ]);
    }

    #[test]
    fn point_heights() {
        let x = RationalPoint::from_i64(&[1, 2, 3]).unwrap();
        assert_eq!(height_point(&x).argument(), &int(3));
        assert_eq!(height_point(&RationalPoint::from_i64(&[0, 1]).unwrap()).argument(), &int(1));
        assert_eq!(RationalPoint::from_i64(&[2, 4, 6]).unwrap(), x);
        assert_eq!(RationalPoint::from_i64(&[0, -2, 4]).unwrap().coords(), &[0.into(), 1.into(), (-2).into()]);
        assert_eq!(height_point(&x).approx(50), "1.09861228866810969139524523692252570464749055782275");
        assert_eq!(RationalPoint::from_i64(&[0, 0]), Err(HeightsError::ZeroPoint));
        assert_eq!(height_scalar(&ratio(-5, 3)).argument(), &int(5));
    }

    #[test]
    fn poly_heights() {
        assert_eq!(height_poly(&parse_poly("x0", 2).unwrap()).unwrap().argument(), &int(1));
        assert_eq!(height_poly(&parse_poly("2*x0 + 3*x1", 2).unwrap()).unwrap().argument(), &int(3));
        assert_eq!(height_poly(&parse_poly("1/2*x0 + x1", 2).unwrap()).unwrap().argument(), &int(2));
    }

    #[test]
    fn weil_examples() {
        let q = parse_poly("x0", 2).unwrap();
        let x = RationalPoint::from_i64(&[1, 2]).unwrap();
        assert_eq!(weil_function(&q, &x, Place::Infinite).unwrap().argument(), &int(2));
        assert_eq!(weil_function(&q, &x, Place::Finite(2)).unwrap().argument(), &int(1));
        let q1 = parse_poly("x1", 2).unwrap();
        let y = RationalPoint::from_i64(&[1, 0]).unwrap();
        assert!(matches!(weil_function(&q1, &y, Place::Infinite), Err(HeightsError::PointOnHypersurface { .. })));

        let q = parse_poly("3*x0^2 - 1/2*x1*x2 + 5*x2^2", 3).unwrap();
        let x = RationalPoint::from_i64(&[4, -6, 9]).unwrap();
        let id = weil_identity_check(&q, &x).unwrap();
        assert!(id.ok, "{id:?}");
    }

    #[test]
    fn margins() {
        let v = Variety::projective_space(1);
        let fam = HypersurfaceFamily::new(&v, ["x0", "x1", "x0 + x1"].iter().map(|s| parse_poly(s, 2).unwrap()).collect()).unwrap();
        let pts = vec![RationalPoint::from_i64(&[2, 3]).unwrap()];
        let s = subspace_margin(&v, &fam, &int(1), &ratio(1, 10), &[Place::Infinite], &pts, DISPLAY_DIGITS, Exec::Sequential).unwrap();
        let r = &s.reports[0];
        // ∞ only: (3/2)·(3/3)·(3/5) = 9/10
        assert_eq!(r.lhs_argument.argument(), &ratio(9, 10));
        assert_eq!(r.rhs_multiplier, ratio(21, 10));
        assert!(!r.negative_slack);
        assert!(s.negative_slack_points.is_empty());

        let fam2 = HypersurfaceFamily::new(&v, vec![parse_poly("x0 - x1", 2).unwrap()]).unwrap();
        let pts = vec![RationalPoint::from_i64(&[1, 1]).unwrap()];
        assert_eq!(
            subspace_margin(&v, &fam2, &int(1), &ratio(1, 2), &default_places(), &pts, DISPLAY_DIGITS, Exec::Sequential),
            Err(HeightsError::PointOnHypersurface { index: 0 })
        );
    }

    #[test]
    fn sampling_shells() {
        let v = Variety::projective_space(1);
        let pts = sample_points(&v, 1, 3, 100);
        let strs: Vec<String> = pts.iter().map(ToString::to_string).collect();
        assert_eq!(strs[..4], ["(0:1)", "(1:-1)", "(1:0)", "(1:1)"]);
        assert!(pts.iter().all(|p| p.coords().iter().fold(BigInt::zero(), |g, c| g.gcd(c)).is_one()));
        let conic = Variety::new(3, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap();
        for p in sample_points(&conic, 1, 4, 50) {
            assert!(conic.contains_point(&p.to_rationals()).unwrap());
        }
    }
}
