//! Hilbert weights, the chained Evertse–Ferretti lower bound, the
//! truncation level `M₀` and the table of prior defect bounds.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::Exec;
use crate::groebner::{groebner_basis, hilbert_function, standard_monomials, GroebnerBasis, GroebnerError, MonomialOrder};
use crate::numeric::{floor_times_e_pow, CertifiedFloor};
use crate::poly::{monomials_of_degree, HomoPoly, Monomial};
use crate::position::{PositionError, Variety};
use crate::rational::{fmt_rat, int, pow, serde_rat, serde_rat_opt, Rational};

/// Default cap on the number of degree-`u` monomials the brute-force oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightsError {
    #[error("weight vector has {found} entries, ambient needs {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weights must be non-negative")]
    NegativeWeight,
    #[error("u must be positive")]
    ZeroU,
    #[error("oracle would enumerate subsets of {monomials} monomials (cap {cap})")]
    OracleTooLarge { monomials: usize, cap: usize },
    #[error("coordinate subset does not cut the variety to the empty set")]
    SubsetNotEmptyOnV,
    #[error("u = {u} must exceed the degree {delta}")]
    UTooSmall { u: u32, delta: u64 },
    #[error("expected {expected} distinct coordinates, got {found:?}")]
    BadSubset { expected: usize, found: Vec<usize> },
    #[error("invalid bound parameters: {0}")]
    InvalidParameters(String),
    #[error("floor of M0 not certified; enclosure [{lower}, {upper}]")]
    FloorAmbiguous { lower: String, upper: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Position(#[from] PositionError),
}

impl WeightsError {
    pub fn name(&self) -> &'static str {
        match self {
            WeightsError::LengthMismatch { .. } => "LengthMismatch",
            WeightsError::NegativeWeight => "NegativeWeight",
            WeightsError::ZeroU => "ZeroU",
            WeightsError::OracleTooLarge { .. } => "OracleTooLarge",
            WeightsError::SubsetNotEmptyOnV => "SubsetNotEmptyOnV",
            WeightsError::UTooSmall { .. } => "UTooSmall",
            WeightsError::BadSubset { .. } => "BadSubset",
            WeightsError::InvalidParameters(_) => "InvalidParameters",
            WeightsError::FloorAmbiguous { .. } => "FloorAmbiguous",
            WeightsError::Groebner(e) => e.name(),
            WeightsError::Position(e) => e.name(),
        }
    }
}

/// Non-negative rational weights `c_0, ..., c_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>, num_vars: usize) -> Result<Self, WeightsError> {
        if entries.len() != num_vars {
            return Err(WeightsError::LengthMismatch { expected: num_vars, found: entries.len() });
        }
        if entries.iter().any(Signed::is_negative) {
            return Err(WeightsError::NegativeWeight);
        }
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn max(&self) -> Rational {
        self.0.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, lambda: &Rational) -> WeightVector {
        WeightVector(self.0.iter().map(|c| c * lambda).collect())
    }

    /// `a · c`.
    pub fn dot(&self, m: &Monomial) -> Rational {
        m.exponents().iter().zip(&self.0).map(|(&e, c)| c * int(e as i64)).sum()
    }
}

fn check_u(v: &Variety, u: u32, c: &WeightVector) -> Result<(), WeightsError> {
    if u == 0 {
        return Err(WeightsError::ZeroU);
    }
    if c.0.len() != v.num_vars() {
        return Err(WeightsError::LengthMismatch { expected: v.num_vars(), found: c.0.len() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertWeightReport {
    pub u: u32,
    #[serde(with = "serde_rat")]
    pub weight: Rational,
    /// Exponent vectors of the maximizing monomials.
    pub basis: Vec<Vec<u32>>,
    pub hilbert: u64,
}

/// `S_X(u, c)` from the standard monomials of a basis under the weighted
/// order with weights `max(c) - c_i`. Smaller weight is smaller in that
/// order, so the standard monomials carry the largest total `c`-weight.
pub fn hilbert_weight(v: &Variety, u: u32, c: &WeightVector) -> Result<HilbertWeightReport, WeightsError> {
    check_u(v, u, c)?;
    let top = c.max();
    let w: Vec<Rational> = c.0.iter().map(|ci| &top - ci).collect();
    let gb = groebner_basis(v.num_vars(), v.generators(), &MonomialOrder::weighted(w)?)?;
    let basis = standard_monomials(&gb, u);
    let weight = basis.iter().map(|m| c.dot(m)).sum();
    Ok(HilbertWeightReport {
        u,
        weight,
        hilbert: basis.len() as u64,
        basis: basis.iter().map(|m| m.exponents().to_vec()).collect(),
    })
}

/// Rank of the residues of `monomials` modulo the variety's ideal.
pub fn residue_rank(gb: &GroebnerBasis, monomials: &[Monomial]) -> usize {
    let rows = residue_rows(gb, monomials);
    rank(rows)
}

fn residue_rows(gb: &GroebnerBasis, monomials: &[Monomial]) -> Vec<Vec<Rational>> {
    let u = monomials.first().map(Monomial::degree).unwrap_or(0);
    let cols = standard_monomials(gb, u);
    monomials
        .iter()
        .map(|m| {
            let nf = gb
                .normal_form(&HomoPoly::monomial(m.clone(), Rational::one()))
                .expect("same ambient");
            cols.iter().map(|s| nf.coeff(s)).collect()
        })
        .collect()
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Exhaustive maximum over all `H(u)`-subsets of degree-`u` monomials whose
/// residues are independent. Ties go to the lexicographically least subset.
pub fn hilbert_weight_bruteforce(
    v: &Variety,
    u: u32,
    c: &WeightVector,
    cap: usize,
    exec: Exec,
) -> Result<HilbertWeightReport, WeightsError> {
    check_u(v, u, c)?;
    let monos = monomials_of_degree(v.num_vars(), u);
    if monos.len() > cap {
        return Err(WeightsError::OracleTooLarge { monomials: monos.len(), cap });
    }
    let gb = v.basis();
    let h = hilbert_function(gb, u) as usize;
    let rows = residue_rows(gb, &monos);
    let subsets: Vec<Vec<usize>> = (0..monos.len()).combinations(h).collect();
    let scores = exec.map(&subsets, |s| {
        let sub: Vec<Vec<Rational>> = s.iter().map(|&i| rows[i].clone()).collect();
        (rank(sub) == h).then(|| s.iter().map(|&i| c.dot(&monos[i])).sum::<Rational>())
    });
    let mut best: Option<(Rational, usize)> = None;
    for (i, sc) in scores.into_iter().enumerate() {
        if let Some(w) = sc {
            if best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, i));
            }
        }
    }
    let (weight, i) = best.expect("standard monomials always form a basis");
    Ok(HilbertWeightReport {
        u,
        weight,
        hilbert: h as u64,
        basis: subsets[i].iter().map(|&j| monos[j].exponents().to_vec()).collect(),
    })
}

/// Both sides of `S/(uH) >= Σ_j c_{i_j}/(n+1) - (2n+1)δ·max(c)/u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EfVerdict {
    pub holds: bool,
    #[serde(with = "serde_rat")]
    pub lhs: Rational,
    #[serde(with = "serde_rat")]
    pub rhs: Rational,
    #[serde(with = "serde_rat")]
    pub weight: Rational,
    pub hilbert: u64,
    pub u: u32,
    pub degree: u64,
    pub n: usize,
}

pub fn ef_lower_bound_check(
    v: &Variety,
    u: u32,
    c: &WeightVector,
    coord_subset: &[usize],
) -> Result<EfVerdict, WeightsError> {
    check_u(v, u, c)?;
    let n = v.dim();
    let distinct = coord_subset.iter().unique().count() == coord_subset.len();
    if coord_subset.len() != n + 1 || !distinct || coord_subset.iter().any(|&i| i >= v.num_vars()) {
        return Err(WeightsError::BadSubset { expected: n + 1, found: coord_subset.to_vec() });
    }
    let delta = v.degree();
    if (u as u64) <= delta {
        return Err(WeightsError::UTooSmall { u, delta });
    }
    let vars: Vec<HomoPoly> = coord_subset.iter().map(|&i| HomoPoly::var(i, v.num_vars())).collect();
    if !v.cut_dimension(&vars.iter().collect::<Vec<_>>())?.is_empty() {
        return Err(WeightsError::SubsetNotEmptyOnV);
    }
    let rep = hilbert_weight(v, u, c)?;
    let uh = int(u as i64) * int(rep.hilbert as i64);
    let lhs = &rep.weight / uh;
    let csum: Rational = coord_subset.iter().map(|&i| c.0[i].clone()).sum();
    let rhs = csum / int(n as i64 + 1)
        - int(2 * n as i64 + 1) * int(delta as i64) * c.max() / int(u as i64);
    Ok(EfVerdict { holds: lhs >= rhs, lhs, rhs, weight: rep.weight, hilbert: rep.hilbert, u, degree: delta, n })
}

/// Which published truncation level to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum M0Variant {
    /// `[d^{n²+n} deg(V)^{n+1} eⁿ Δⁿ (2n+4)ⁿ (n+1)ⁿ (q!)ⁿ ε^{-n}]`.
    Distributive,
    /// `[deg(V)^{n+1} eⁿ d^{n²+n} (l-n+1)ⁿ (2n+4)ⁿ (q!)ⁿ ε^{-n}]`, the
    /// earlier `l`-subgeneral form.
    Subgeneral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "ser_big")]
    pub m0: BigInt,
    pub variant: M0Variant,
    /// Everything except `eⁿ`.
    #[serde(with = "serde_rat")]
    pub prefactor: Rational,
    #[serde(with = "serde_rat")]
    pub defect_total: Rational,
    #[serde(with = "serde_rat")]
    pub coefficient: Rational,
}

fn ser_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

fn factorial(q: u64) -> BigInt {
    (1..=q).fold(BigInt::one(), |acc, i| acc * i)
}

fn positive(name: &str, v: &Rational) -> Result<(), WeightsError> {
    if !v.is_positive() {
        return Err(WeightsError::InvalidParameters(format!("{name} must be positive")));
    }
    Ok(())
}

/// `q - Δ(n+1) - ε`; `ε = 0` is allowed here.
pub fn truncation_coefficient(n: u32, delta: &Rational, q: u64, eps: &Rational) -> Rational {
    int(q as i64) - delta * int(n as i64 + 1) - eps
}

const MAX_E_TERMS: u32 = 1 << 12;

fn certified(prefactor: &Rational, n: u32) -> Result<BigInt, WeightsError> {
    match floor_times_e_pow(prefactor, n, MAX_E_TERMS) {
        CertifiedFloor::Exact(v) => Ok(v),
        CertifiedFloor::Ambiguous { lower, upper } => {
            Err(WeightsError::FloorAmbiguous { lower: fmt_rat(&lower), upper: fmt_rat(&upper) })
        }
    }
}

pub fn truncation_m0(
    n: u32,
    d: u32,
    deg_v: u64,
    delta: &Rational,
    q: u64,
    eps: &Rational,
) -> Result<BoundReport, WeightsError> {
    if n == 0 || d == 0 || deg_v == 0 || q == 0 {
        return Err(WeightsError::InvalidParameters("n, d, deg_v and q must be positive".into()));
    }
    positive("delta", delta)?;
    positive("eps", eps)?;
    let nn = n as u64;
    let prefactor = pow(&int(d as i64), nn * nn + nn)
        * pow(&int(deg_v as i64), nn + 1)
        * pow(delta, nn)
        * pow(&int(2 * n as i64 + 4), nn)
        * pow(&int(n as i64 + 1), nn)
        * pow(&Rational::from_integer(factorial(q)), nn)
        / pow(eps, nn);
    Ok(BoundReport {
        m0: certified(&prefactor, n)?,
        variant: M0Variant::Distributive,
        prefactor,
        defect_total: delta * int(n as i64 + 1),
        coefficient: truncation_coefficient(n, delta, q, eps),
    })
}

pub fn truncation_m0_subgeneral(
    n: u32,
    d: u32,
    deg_v: u64,
    l: u32,
    q: u64,
    eps: &Rational,
) -> Result<BoundReport, WeightsError> {
    if n == 0 || d == 0 || deg_v == 0 || q == 0 || l < n {
        return Err(WeightsError::InvalidParameters("need positive n, d, deg_v, q and l >= n".into()));
    }
    positive("eps", eps)?;
    let nn = n as u64;
    let excess = int(l as i64 - n as i64 + 1);
    let prefactor = pow(&int(deg_v as i64), nn + 1)
        * pow(&int(d as i64), nn * nn + nn)
        * pow(&excess, nn)
        * pow(&int(2 * n as i64 + 4), nn)
        * pow(&Rational::from_integer(factorial(q)), nn)
        / pow(eps, nn);
    let defect_total = excess * int(n as i64 + 1);
    Ok(BoundReport {
        m0: certified(&prefactor, n)?,
        variant: M0Variant::Subgeneral,
        prefactor,
        coefficient: int(q as i64) - &defect_total - eps,
        defect_total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    /// Upper bound on the total defect, `None` where the formula is undefined.
    #[serde(with = "serde_rat_opt")]
    pub total: Option<Rational>,
    /// `q` minus the total.
    #[serde(with = "serde_rat_opt")]
    pub coefficient: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonTable {
    pub entries: BTreeMap<String, BoundEntry>,
    /// `((l-n+κ)/κ)(n+1)`.
    #[serde(with = "serde_rat")]
    pub delta_bound: Rational,
    /// Names of the bounds the Δ-bound strictly beats.
    pub strictly_better_than: Vec<String>,
}

pub fn compare_bounds(n: u32, big_n: u32, l: u32, kappa: u32, q: u64) -> Result<ComparisonTable, WeightsError> {
    if n == 0 || l < n || kappa == 0 || big_n < n {
        return Err(WeightsError::InvalidParameters("need 1 <= n <= l, n <= N and kappa >= 1".into()));
    }
    let (n, big_n, l, k) = (n as i64, big_n as i64, l as i64, kappa as i64);
    let n1 = int(n + 1);
    let mut totals: Vec<(&str, Option<Rational>)> = vec![
        ("nochka", Some(int(2 * big_n - n + 1))),
        ("eremenko_sodin", Some(int(2 * big_n))),
        ("ru", Some(n1.clone())),
        ("replacing_subgeneral", Some(int(l - n + 1) * &n1)),
        ("jyy_index", Some((int(l - n) / int((l - n).min(k).max(1)) + int(1)) * &n1)),
        ("chen_ru_yan", Some(int(l) * &n1)),
        ("giang", Some(int(l) * &n1)),
    ];
    let shi_ru = (l + n - 2 != 0).then(|| int(l * (l - 1)) * &n1 / int(l + n - 2));
    totals.push(("shi_ru", shi_ru));
    let delta_bound = Rational::new((l - n + k).into(), k.into()) * &n1;
    let qr = int(q as i64);
    let mut strictly_better_than: Vec<String> = totals
        .iter()
        .filter(|(_, t)| t.as_ref().is_some_and(|t| delta_bound < *t))
        .map(|(name, _)| name.to_string())
        .collect();
    strictly_better_than.sort();
    let entries = totals
        .into_iter()
        .map(|(name, t)| {
            let coefficient = t.as_ref().map(|t| &qr - t);
            (name.to_string(), BoundEntry { total: t, coefficient })
        })
        .collect();
    Ok(ComparisonTable { entries, delta_bound, strictly_better_than })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::ratio;

    fn wv(c: &[i64]) -> WeightVector {
        WeightVector::new(c.iter().map(|&x| int(x)).collect(), c.len()).unwrap()
    }

    fn conic() -> Variety {
        Variety::new(3, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap()
    }

    #[test]
    fn p1_forced_basis() {
        let v = Variety::projective_space(1);
        let r = hilbert_weight(&v, 2, &wv(&[1, 0])).unwrap();
        assert_eq!(r.weight, int(3));
        assert_eq!(r.hilbert, 3);
        let b = hilbert_weight_bruteforce(&v, 2, &wv(&[1, 0]), DEFAULT_ORACLE_CAP, Exec::Sequential).unwrap();
        assert_eq!(b.weight, int(3));
    }

    #[test]
    fn zero_weights_and_linear_forms() {
        let v = conic();
        assert_eq!(hilbert_weight(&v, 2, &wv(&[0, 0, 0])).unwrap().weight, int(0));
        let b = hilbert_weight_bruteforce(&v, 1, &wv(&[1, 1, 0]), DEFAULT_ORACLE_CAP, Exec::Sequential).unwrap();
        assert_eq!(b.weight, int(2));
        let p2 = Variety::projective_space(2);
        let b = hilbert_weight_bruteforce(&p2, 1, &wv(&[3, 1, 2]), DEFAULT_ORACLE_CAP, Exec::Parallel).unwrap();
        assert_eq!(b.weight, int(6));
    }

    #[test]
    fn conic_matches_oracle() {
        let v = conic();
        for c in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 3, 1], [1, 5, 2]] {
            let fast = hilbert_weight(&v, 2, &wv(&c)).unwrap();
            let slow = hilbert_weight_bruteforce(&v, 2, &wv(&c), DEFAULT_ORACLE_CAP, Exec::Parallel).unwrap();
            assert_eq!(fast.weight, slow.weight, "c = {c:?}");
            let monos: Vec<Monomial> = fast.basis.iter().map(|e| Monomial::new(e.clone())).collect();
            assert_eq!(residue_rank(v.basis(), &monos), 5);
        }
    }

    #[test]
    fn literal_weight_order_gives_minimum() {
        // the weighted order with weight c itself picks a minimum-weight basis
        let v = conic();
        let c = wv(&[0, 5, 0]);
        let gb = groebner_basis(3, v.generators(), &MonomialOrder::weighted(c.entries().to_vec()).unwrap()).unwrap();
        let low: Rational = standard_monomials(&gb, 2).iter().map(|m| c.dot(m)).sum();
        assert_eq!(low, int(10));
        assert_eq!(hilbert_weight(&v, 2, &c).unwrap().weight, int(20));
    }

    #[test]
    fn ef_examples() {
        let v = Variety::projective_space(1);
        let r = ef_lower_bound_check(&v, 2, &wv(&[1, 1]), &[0, 1]).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(1), ratio(-1, 2)));
        assert!(r.holds);
        let r = ef_lower_bound_check(&v, 2, &wv(&[0, 0]), &[0, 1]).unwrap();
        assert!(r.holds && r.lhs.is_zero() && r.rhs.is_zero());

        let c = conic();
        for w in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 3, 1], [4, 1, 3]] {
            assert!(ef_lower_bound_check(&c, 3, &wv(&w), &[0, 2]).unwrap().holds);
        }
        assert_eq!(ef_lower_bound_check(&c, 2, &wv(&[1, 1, 1]), &[0, 2]), Err(WeightsError::UTooSmall { u: 2, delta: 2 }));
        let line = Variety::new(3, vec![parse_poly("x0", 3).unwrap()]).unwrap();
        assert_eq!(ef_lower_bound_check(&line, 2, &wv(&[1, 1, 1]), &[0, 1]), Err(WeightsError::SubsetNotEmptyOnV));
    }

    #[test]
    fn m0_examples() {
        let r = truncation_m0(1, 1, 1, &int(1), 3, &int(6)).unwrap();
        assert_eq!(r.m0, BigInt::from(32));
        assert_eq!(r.prefactor, int(12));
        assert_eq!(r.defect_total, int(2));
        assert_eq!(truncation_coefficient(1, &int(1), 3, &int(0)), int(1));
        for n in 1..5 {
            assert_eq!(truncation_m0(n, 1, 1, &int(1), 3, &int(1)).unwrap().defect_total, int(n as i64 + 1));
        }
        let s = truncation_m0_subgeneral(1, 1, 1, 1, 3, &int(6)).unwrap();
        assert_eq!(s.prefactor, int(6));
        assert_eq!(s.m0, BigInt::from(16));
        assert!(truncation_m0(1, 1, 1, &int(1), 3, &int(0)).is_err());
    }

    #[test]
    fn comparisons() {
        let t = compare_bounds(2, 2, 2, 2, 10).unwrap();
        assert_eq!(t.delta_bound, int(3));
        assert_eq!(t.entries["chen_ru_yan"].total, Some(int(6)));
        assert!(t.strictly_better_than.contains(&"chen_ru_yan".to_string()));

        let t = compare_bounds(2, 4, 4, 1, 10).unwrap();
        assert_eq!(t.delta_bound, int(9));
        assert_eq!(t.entries["shi_ru"].total, Some(int(9)));
        assert!(!t.strictly_better_than.contains(&"shi_ru".to_string()));

        let t = compare_bounds(2, 5, 5, 3, 10).unwrap();
        assert_eq!(t.delta_bound, int(6));
        assert_eq!(t.entries["jyy_index"].total, Some(int(6)));

        assert_eq!(compare_bounds(1, 1, 1, 1, 3).unwrap().entries["shi_ru"].total, None);
        assert!(compare_bounds(3, 3, 2, 1, 3).is_err());
    }
}
