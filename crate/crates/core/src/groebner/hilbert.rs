use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroebnerBasis, GroebnerError};
use crate::poly::{monomials_of_degree, Monomial};

/// Projective dimension, with a distinct value for the empty set.
///
/// `Empty` sorts below every `Dim(_)`. It is never converted to an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjDim {
    Empty,
    Dim(usize),
}

impl ProjDim {
    pub fn is_empty(self) -> bool {
        self == ProjDim::Empty
    }

    /// `self <= bound`, where a negative bound is met only by `Empty`.
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            ProjDim::Empty => true,
            ProjDim::Dim(d) => (d as i64) <= bound,
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Empty => f.write_str("EMPTY"),
            ProjDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for ProjDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ProjDim::Empty => s.serialize_str("EMPTY"),
            ProjDim::Dim(d) => s.serialize_u64(*d as u64),
        }
    }
}

impl<'de> Deserialize<'de> for ProjDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "EMPTY" => Ok(ProjDim::Empty),
            serde_json::Value::Number(n) if n.as_u64().is_some() => Ok(ProjDim::Dim(n.as_u64().unwrap() as usize)),
            other => Err(serde::de::Error::custom(format!("bad dimension {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealProfile {
    pub projective_dimension: ProjDim,
    /// Degree of the projective scheme; 0 when it is empty.
    pub degree: u64,
    /// First `u` from which the Hilbert function is polynomial.
    pub regularity_start: u32,
    /// Hilbert values used for the interpolation.
    pub hilbert_values: BTreeMap<u32, u64>,
}

fn lead_minimal(gb: &GroebnerBasis) -> Vec<Monomial> {
    minimalize(gb.leading_monomials())
}

fn minimalize(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by_key(Monomial::degree);
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Krull dimension of the affine cone: the size of the largest set of
/// variables containing the support of no leading monomial.
fn cone_dimension(num_vars: usize, lead: &[Monomial]) -> usize {
    assert!(num_vars < 64, "too many variables");
    let supports: Vec<u64> = lead.iter().map(Monomial::support_mask).collect();
    let mut best = 0;
    for s in 0u64..(1u64 << num_vars) {
        let size = s.count_ones() as usize;
        if size > best && supports.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    best
}

pub fn projective_dimension(gb: &GroebnerBasis) -> ProjDim {
    let lead = lead_minimal(gb);
    match cone_dimension(gb.num_vars(), &lead) {
        0 => ProjDim::Empty,
        d => ProjDim::Dim(d - 1),
    }
}

/// Degree-`u` monomials outside the leading-term ideal, in descending order
/// under the basis' monomial order.
pub fn standard_monomials(gb: &GroebnerBasis, u: u32) -> Vec<Monomial> {
    let lead = lead_minimal(gb);
    let mut out: Vec<Monomial> = monomials_of_degree(gb.num_vars(), u)
        .into_iter()
        .filter(|m| !lead.iter().any(|l| l.divides(m)))
        .collect();
    out.sort_by(|a, b| gb.order().cmp(b, a));
    out
}

pub fn hilbert_function(gb: &GroebnerBasis, u: u32) -> u64 {
    let lead = lead_minimal(gb);
    count_standard(gb.num_vars(), &lead, u)
}

fn count_standard(num_vars: usize, lead: &[Monomial], u: u32) -> u64 {
    monomials_of_degree(num_vars, u)
        .iter()
        .filter(|m| !lead.iter().any(|l| l.divides(m)))
        .count() as u64
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

/// Numerator `K(t)` of the Hilbert series `K(t) / (1 - t)^(N+1)` of the
/// monomial ideal generated by `lead`.
fn numerator_rec(num_vars: usize, gens: Vec<Monomial>) -> Vec<i128> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, m| poly_mul(&acc, &one_minus_t_pow(m.degree())));
    }
    // pivot on the variable shared by the most non-linear generators
    let mut counts = vec![0usize; num_vars];
    for m in gens.iter().filter(|m| m.degree() > 1) {
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..num_vars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let x = Monomial::var(var, num_vars);
    let mut with_x = gens.clone();
    with_x.push(x.clone());
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|m| if x.divides(m) { m.div(&x) } else { m.clone() })
        .collect();
    let a = numerator_rec(num_vars, with_x);
    let b = numerator_rec(num_vars, quotient);
    let shifted: Vec<i128> = std::iter::once(0).chain(b).collect();
    poly_add(&a, &shifted)
}

/// Hilbert series numerator of `S / in(I)`, with respect to `(1-t)^(N+1)`.
pub fn hilbert_numerator(gb: &GroebnerBasis) -> Vec<i128> {
    numerator_rec(gb.num_vars(), lead_minimal(gb))
}

/// Divides by `(1 - t)` exactly, or returns `None`.
fn div_one_minus_t(p: &[i128]) -> Option<Vec<i128>> {
    if p.iter().sum::<i128>() != 0 {
        return None;
    }
    // p = (1 - t) q  =>  q_k = sum_{i<=k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    if q.is_empty() {
        q.push(0);
    }
    Some(q)
}

/// Dimension and degree of the projective scheme cut out by the ideal.
///
/// The dimension comes from the independent-set combinatorics of the
/// leading-term ideal. The degree is the `d`-th finite difference of the
/// Hilbert function, taken past the point where it becomes polynomial; that
/// point is read off the Hilbert series numerator, and the difference is
/// cross-checked against the numerator's value at `t = 1`.
pub fn ideal_profile(gb: &GroebnerBasis) -> Result<IdealProfile, GroebnerError> {
    let num_vars = gb.num_vars();
    let lead = lead_minimal(gb);
    let cone = cone_dimension(num_vars, &lead);
    let mut k = numerator_rec(num_vars, lead.clone());
    for _ in 0..(num_vars - cone) {
        k = div_one_minus_t(&k).expect("codimension matches the Hilbert series pole order");
    }
    let series_degree: i128 = k.iter().sum();

    if cone == 0 {
        // H(u) vanishes for u past the numerator's degree
        let start = k.len() as u32;
        let mut hilbert_values = BTreeMap::new();
        hilbert_values.insert(start, count_standard(num_vars, &lead, start));
        return Ok(IdealProfile {
            projective_dimension: ProjDim::Empty,
            degree: 0,
            regularity_start: start,
            hilbert_values,
        });
    }

    let dim = cone - 1;
    let deg_k = k.len() as i64 - 1;
    let start = (deg_k - cone as i64 + 1).max(0) as u32;
    let values: Vec<u64> = (start..=start + dim as u32 + 1)
        .map(|u| count_standard(num_vars, &lead, u))
        .collect();
    let diff = |slice: &[u64]| -> i128 {
        let mut v: Vec<i128> = slice.iter().map(|&x| x as i128).collect();
        for _ in 0..dim {
            v = v.windows(2).map(|w| w[1] - w[0]).collect();
        }
        v[0]
    };
    let first = diff(&values[..=dim]);
    let second = diff(&values[1..]);
    if first != second || first != series_degree {
        return Err(GroebnerError::DegreeMismatch { interpolated: first, series: series_degree });
    }
    let hilbert_values = (start..).zip(values).collect();
    Ok(IdealProfile {
        projective_dimension: ProjDim::Dim(dim),
        degree: first as u64,
        regularity_start: start,
        hilbert_values,
    })
}
