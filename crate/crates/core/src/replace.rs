//! Exponent schedules and the replacement of an ordered family by `n + 1`
//! linear combinations whose prefix intersections drop dimension at every
//! step.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::groebner::{groebner_basis, projective_dimension, GroebnerBasis, ProjDim};
use crate::poly::{poly_combine, HomoPoly};
use crate::position::{dimension_profile, DimensionProfile, HypersurfaceFamily, PositionError, Variety};
use crate::rational::{pow, serde_rat, serde_rat_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplaceError {
    #[error("t-values must be strictly increasing: {0:?}")]
    NotIncreasing(Vec<i64>),
    #[error("need at least two t-values")]
    TooShort,
    #[error("a-values must be non-increasing")]
    NotSorted,
    #[error("a-values must be at least 1")]
    BelowOne,
    #[error("expected {expected} a-values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("all members must share one degree; lift by lcm powers first")]
    SameDegreeRequired,
    #[error("no coefficient vector found for step {step} within pool bound {pool_bound}")]
    SearchExhausted { step: usize, pool_bound: i64 },
    #[error("profile does not match the family ordering")]
    InvalidProfile,
    #[error(transparent)]
    Position(#[from] PositionError),
}

impl ReplaceError {
    pub fn name(&self) -> &'static str {
        match self {
            ReplaceError::NotIncreasing(_) => "NotIncreasing",
            ReplaceError::TooShort => "TooShort",
            ReplaceError::NotSorted => "NotSorted",
            ReplaceError::BelowOne => "BelowOne",
            ReplaceError::LengthMismatch { .. } => "LengthMismatch",
            ReplaceError::SameDegreeRequired => "SameDegreeRequired",
            ReplaceError::SearchExhausted { .. } => "SearchExhausted",
            ReplaceError::InvalidProfile => "InvalidProfile",
            ReplaceError::Position(e) => e.name(),
        }
    }
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSchedule {
    pub t_values: Vec<i64>,
    /// `max_{1<=s<=n} (t_s - t_0) / s`.
    #[serde(with = "serde_rat")]
    pub delta: Rational,
    /// `m_n = Δ`, `m_u = t_{u+1} - t_u + max(0, m_{u+1} - Δ)`.
    #[serde(with = "serde_rat_vec")]
    pub m_values: Vec<Rational>,
    /// Largest `s` attaining the maximum.
    pub maximizing_index: usize,
}

fn check_increasing(t: &[i64]) -> Result<(), ReplaceError> {
    if t.len() < 2 {
        return Err(ReplaceError::TooShort);
    }
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ReplaceError::NotIncreasing(t.to_vec()));
    }
    Ok(())
}

/// Works for any `t_0`; only differences matter.
pub fn exponent_schedule(t: &[i64]) -> Result<ExponentSchedule, ReplaceError> {
    check_increasing(t)?;
    let n = t.len() - 1;
    let (maximizing_index, delta) = (1..=n)
        .map(|s| (s, Rational::new((t[s] - t[0]).into(), (s as i64).into())))
        .fold(None::<(usize, Rational)>, |best, (s, r)| match best {
            Some((_, ref b)) if r < *b => best,
            _ => Some((s, r)),
        })
        .expect("n >= 1");
    let mut m = vec![Rational::zero(); n + 1];
    m[n] = delta.clone();
    for u in (0..n).rev() {
        let excess = (&m[u + 1] - &delta).max(Rational::zero());
        m[u] = rat(t[u + 1] - t[u]) + excess;
    }
    Ok(ExponentSchedule { t_values: t.to_vec(), delta, m_values: m, maximizing_index })
}

/// Both sides of `a_0^{t_1-t_0} ... a_{n-1}^{t_n-t_{n-1}} <= (a_0 ... a_{n-1})^Δ`,
/// raised to the power `denom(Δ)` so the comparison is between rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerInequality {
    pub holds: bool,
    pub equality: bool,
    #[serde(with = "serde_rat")]
    pub delta: Rational,
    #[serde(with = "serde_rat")]
    pub lhs: Rational,
    /// `a_0 ... a_{n-1}`, to be raised to `Δ`.
    #[serde(with = "serde_rat")]
    pub rhs_base: Rational,
    #[serde(with = "serde_rat")]
    pub lhs_pow: Rational,
    #[serde(with = "serde_rat")]
    pub rhs_pow: Rational,
    pub denominator: u64,
}

fn check_a(t: &[i64], a: &[Rational]) -> Result<(), ReplaceError> {
    check_increasing(t)?;
    if a.len() != t.len() - 1 {
        return Err(ReplaceError::LengthMismatch { expected: t.len() - 1, found: a.len() });
    }
    if a.iter().any(|x| *x < Rational::one()) {
        return Err(ReplaceError::BelowOne);
    }
    if a.windows(2).any(|w| w[0] < w[1]) {
        return Err(ReplaceError::NotSorted);
    }
    Ok(())
}

/// `Π a_i^(e_i * q)` where every `e_i * q` is a non-negative integer.
fn scaled_product(a: &[Rational], exps: &[Rational], q: &BigInt) -> Rational {
    a.iter()
        .zip(exps)
        .map(|(x, e)| {
            let k = e * Rational::from_integer(q.clone());
            debug_assert!(k.is_integer() && !k.is_negative());
            pow(x, k.to_integer().to_u64().expect("small exponent"))
        })
        .fold(Rational::one(), |acc, v| acc * v)
}

pub fn verify_power_inequality(t: &[i64], a: &[Rational]) -> Result<PowerInequality, ReplaceError> {
    check_a(t, a)?;
    let sched = exponent_schedule(t)?;
    let q = sched.delta.denom().clone();
    let steps: Vec<Rational> = t.windows(2).map(|w| rat(w[1] - w[0])).collect();
    let lhs = scaled_product(a, &steps, &BigInt::one());
    let rhs_base = a.iter().fold(Rational::one(), |acc, x| acc * x);
    let lhs_pow = pow(&lhs, q.to_u64().expect("small denominator"));
    let rhs_pow = pow(&rhs_base, sched.delta.numer().to_u64().expect("small numerator"));
    Ok(PowerInequality {
        holds: lhs_pow <= rhs_pow,
        equality: lhs_pow == rhs_pow,
        delta: sched.delta,
        lhs,
        rhs_base,
        lhs_pow,
        rhs_pow,
        denominator: q.to_u64().expect("small denominator"),
    })
}

/// Walks the chain of intermediate products
/// `X_k = Π_{i<k} a_i^{t_{i+1}-t_i} · a_k^{m_k} · Π_{i>k} a_i^Δ`
/// from `k = n-1` down to `k = 0`, checking each is at most the next, that
/// `X_{n-1}` is the left-hand side and `X_0` the right-hand side.
pub fn verify_schedule_chain(t: &[i64], a: &[Rational]) -> Result<bool, ReplaceError> {
    check_a(t, a)?;
    let s = exponent_schedule(t)?;
    let n = t.len() - 1;
    let q = s.delta.denom().clone();
    let steps: Vec<Rational> = t.windows(2).map(|w| rat(w[1] - w[0])).collect();
    let stage = |k: usize| -> Rational {
        let exps: Vec<Rational> = (0..n)
            .map(|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => steps[i].clone(),
                std::cmp::Ordering::Equal => s.m_values[k].clone(),
                std::cmp::Ordering::Greater => s.delta.clone(),
            })
            .collect();
        scaled_product(a, &exps, &q)
    };
    let lhs = scaled_product(a, &steps, &q);
    let rhs = scaled_product(a, &vec![s.delta.clone(); n], &q);
    let stages: Vec<Rational> = (0..n).rev().map(stage).collect();
    Ok(stages[0] == lhs
        && stages.windows(2).all(|w| w[0] <= w[1])
        && *stages.last().unwrap() == rhs)
}

/// Tuning for the coefficient search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest absolute coefficient tried; shells 1, 2, 4, ... up to this.
    pub pool_bound: i64,
    /// Cap on deterministically enumerated candidates per step.
    pub max_enumerated: usize,
    /// Seeded random candidates tried after the enumeration.
    pub random_retries: usize,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { pool_bound: 8, max_enumerated: 4096, random_retries: 256, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacementSystem {
    /// `P_0, ..., P_n`.
    pub replacements: Vec<HomoPoly>,
    /// Row `u` holds `c_{u,0..=l}`; entries past `t_u` are zero.
    #[serde(serialize_with = "ser_matrix")]
    pub coeff_matrix: Vec<Vec<Rational>>,
    /// `Q_{order(0)}, ..., Q_{order(l)}`.
    pub sources: Vec<HomoPoly>,
    pub source_profile: DimensionProfile,
    /// Largest absolute coefficient used at each step.
    pub pool_used: Vec<i64>,
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let r: Vec<String> = row.iter().map(crate::rational::fmt_rat).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

/// Deterministic candidate list for a step with `k` columns: shells of
/// growing coefficient size; inside a shell fewer non-zeros first, later
/// columns first, then values `1, -1, 2, -2, ...`.
fn enumerate_candidates(k: usize, pool_bound: i64, cap: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut prev = 0;
    let mut bound = 1;
    while prev < pool_bound {
        let b = bound.min(pool_bound);
        let values: Vec<i64> = (1..=b).flat_map(|v| [v, -v]).collect();
        for nnz in 1..=k {
            for support in (0..k).rev().combinations(nnz) {
                for vals in std::iter::repeat_n(values.iter(), nnz).multi_cartesian_product() {
                    if vals.iter().all(|v| v.abs() <= prev) {
                        continue;
                    }
                    let mut c = vec![0; k];
                    for (&pos, &&v) in support.iter().zip(&vals) {
                        c[pos] = v;
                    }
                    out.push(c);
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
        prev = b;
        bound *= 2;
    }
    out
}

fn combine(coeffs: &[i64], sources: &[HomoPoly]) -> HomoPoly {
    let c: Vec<Rational> = coeffs.iter().map(|&v| rat(v)).collect();
    poly_combine(&c, &sources[..coeffs.len()]).expect("sources share one degree")
}

/// Builds `P_0 = Q_{order(0)}` and, for `u = 1..=n`, a combination `P_u` of
/// `Q_{order(0..=t_u)}` such that `V ∩ P_0 ∩ ... ∩ P_u` has dimension at most
/// `n - u - 1`. Every candidate is accepted only after that dimension check.
pub fn build_replacement(
    variety: &Variety,
    family: &HypersurfaceFamily,
    profile: &DimensionProfile,
    seed: u64,
    config: &SearchConfig,
) -> Result<ReplacementSystem, ReplaceError> {
    if !family.same_degree() {
        return Err(ReplaceError::SameDegreeRequired);
    }
    let fresh = dimension_profile(variety, family, &profile.ordering)?;
    if fresh.t_values != profile.t_values {
        return Err(ReplaceError::InvalidProfile);
    }
    let n = variety.dim();
    let l = profile.l_value;
    let sources: Vec<HomoPoly> =
        profile.ordering[..=l].iter().map(|&i| family.members()[i].clone()).collect();

    let mut replacements = vec![sources[0].clone()];
    let mut rows = vec![unit_row(0, l + 1)];
    let mut pool_used = vec![1];
    let mut base = extend(variety.basis(), &sources[0]);

    for u in 1..=n {
        let k = profile.t_values[u] + 1;
        let bound = n as i64 - u as i64 - 1;
        let accept = |c: &Vec<i64>| -> Option<GroebnerBasis> {
            let p = combine(c, &sources);
            if p.is_zero() {
                return None;
            }
            let gb = extend(&base, &p);
            projective_dimension(&gb).at_most(bound).then_some(gb)
        };
        let mut found: Option<(Vec<i64>, GroebnerBasis)> = None;
        let candidates = enumerate_candidates(k, config.pool_bound, config.max_enumerated);
        for chunk in candidates.chunks(64) {
            if let Some(i) = config.exec.position_first(chunk, |c| accept(c).is_some()) {
                let gb = accept(&chunk[i]).expect("accepted once");
                found = Some((chunk[i].clone(), gb));
                break;
            }
        }
        if found.is_none() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u as u64));
            let randoms: Vec<Vec<i64>> = (0..config.random_retries)
                .map(|_| (0..k).map(|_| rng.gen_range(-config.pool_bound..=config.pool_bound)).collect())
                .collect();
            for chunk in randoms.chunks(64) {
                if let Some(i) = config.exec.position_first(chunk, |c| accept(c).is_some()) {
                    let gb = accept(&chunk[i]).expect("accepted once");
                    found = Some((chunk[i].clone(), gb));
                    break;
                }
            }
        }
        let (c, gb) = found.ok_or(ReplaceError::SearchExhausted { step: u, pool_bound: config.pool_bound })?;
        let mut row: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
        row.resize(l + 1, Rational::zero());
        pool_used.push(c.iter().map(|v| v.abs()).max().unwrap_or(0));
        replacements.push(combine(&c, &sources));
        rows.push(row);
        base = gb;
    }
    Ok(ReplacementSystem {
        replacements,
        coeff_matrix: rows,
        sources,
        source_profile: profile.clone(),
        pool_used,
    })
}

fn unit_row(i: usize, len: usize) -> Vec<Rational> {
    let mut r = vec![Rational::zero(); len];
    r[i] = Rational::one();
    r
}

fn extend(base: &GroebnerBasis, p: &HomoPoly) -> GroebnerBasis {
    let mut gens = base.generators().to_vec();
    gens.push(p.clone());
    groebner_basis(base.num_vars(), &gens, base.order()).expect("same ambient")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacementVerdict {
    /// `dim (P_0 ∩ ... ∩ P_t) ∩ V` for `t = 0..=n`, recomputed from scratch.
    pub dims: Vec<ProjDim>,
    /// Whether step `t` meets the bound `n - t - 1`.
    pub steps: Vec<bool>,
    /// Rows reproduce the replacements and vanish past `t_u`.
    pub span_ok: bool,
    pub ok: bool,
}

pub fn verify_replacement(variety: &Variety, sys: &ReplacementSystem) -> ReplacementVerdict {
    let n = variety.dim();
    let mut dims = Vec::new();
    let mut steps = Vec::new();
    for t in 0..sys.replacements.len() {
        let mut gens = variety.generators().to_vec();
        gens.extend(sys.replacements[..=t].iter().cloned());
        let d = groebner_basis(variety.num_vars(), &gens, &crate::groebner::MonomialOrder::Grevlex)
            .map(|gb| projective_dimension(&gb))
            .unwrap_or(ProjDim::Dim(usize::MAX));
        steps.push(d.at_most(n as i64 - t as i64 - 1));
        dims.push(d);
    }
    let t_values = &sys.source_profile.t_values;
    let span_ok = sys.replacements.len() == n + 1
        && sys.coeff_matrix.len() == n + 1
        && sys.coeff_matrix.iter().zip(&sys.replacements).enumerate().all(|(u, (row, p))| {
            row.len() == sys.sources.len()
                && row[t_values[u] + 1..].iter().all(Zero::is_zero)
                && poly_combine(row, &sys.sources).is_ok_and(|c| c == *p)
        });
    let ok = span_ok && steps.iter().all(|&s| s);
    ReplacementVerdict { dims, steps, span_ok, ok }
}
