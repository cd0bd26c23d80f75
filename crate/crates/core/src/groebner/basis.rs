use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GroebnerError, MonomialOrder};
use crate::poly::{HomoPoly, Monomial};
use crate::rational::Rational;

type Term = (Monomial, Rational);

/// Terms sorted in descending order under some monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrderedPoly(Vec<Term>);

impl OrderedPoly {
    pub(crate) fn from_homo(p: &HomoPoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if !matches!(order, MonomialOrder::Grevlex) {
            terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        OrderedPoly(terms)
    }

    pub(crate) fn to_homo(&self, num_vars: usize) -> HomoPoly {
        let map: BTreeMap<Monomial, Rational> = self.0.iter().cloned().collect();
        HomoPoly::from_map_unchecked(num_vars, map)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.0[0].0
    }

    fn lc(&self) -> &Rational {
        &self.0[0].1
    }

    fn monic(&mut self) {
        let inv = self.lc().recip();
        for t in &mut self.0 {
            t.1 *= &inv;
        }
    }

    /// Rescale to coprime integer coefficients with positive leading term.
    fn make_primitive(&mut self) {
        let lcm_den = self.0.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let gcd_num = self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * (&lcm_den / c.denom()))));
        let mut f = Rational::new(lcm_den, gcd_num);
        if self.lc().is_negative() {
            f = -f;
        }
        for t in &mut self.0 {
            t.1 *= &f;
        }
    }
}

/// `p - c * m * g`, skipping the leading term of `p`, which the caller
/// guarantees cancels.
fn sub_mul_tail(p: &[Term], c: &Rational, m: &Monomial, g: &[Term], order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 1;
    let mut j = 1;
    while i < p.len() || j < g.len() {
        if j >= g.len() {
            out.push(p[i].clone());
            i += 1;
            continue;
        }
        let gm = m.mul(&g[j].0);
        if i >= p.len() {
            out.push((gm, -(c * &g[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(c * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &p[i].1 - c * &g[j].1;
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` modulo `divisors`.
fn reduce(p: &OrderedPoly, divisors: &[OrderedPoly], order: &MonomialOrder) -> OrderedPoly {
    let mut rem = Vec::new();
    let mut cur = p.0.clone();
    while !cur.is_empty() {
        let (lm, lc) = (&cur[0].0, &cur[0].1);
        match divisors.iter().find(|g| g.lm().divides(lm)) {
            Some(g) => {
                let m = lm.div(g.lm());
                let c = lc / g.lc();
                cur = sub_mul_tail(&cur, &c, &m, &g.0, order);
            }
            None => {
                rem.push(cur.remove(0));
            }
        }
    }
    OrderedPoly(rem)
}

pub(crate) fn s_poly(f: &OrderedPoly, g: &OrderedPoly, order: &MonomialOrder) -> OrderedPoly {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm());
    let mg = l.div(g.lm());
    let a: Vec<Term> = f.0.iter().map(|(m, c)| (m.mul(&mf), c / f.lc())).collect();
    let b: Vec<Term> = g.0.iter().map(|(m, c)| (m.mul(&mg), c / g.lc())).collect();
    // a - b, with matching leading terms cancelling
    let mut out = Vec::new();
    let (mut i, mut j) = (1, 1);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && order.cmp(&a[i].0, &b[j].0) == Ordering::Greater) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || order.cmp(&a[i].0, &b[j].0) == Ordering::Less {
            out.push((b[j].0.clone(), -b[j].1.clone()));
            j += 1;
        } else {
            let v = &a[i].1 - &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0.clone(), v));
            }
            i += 1;
            j += 1;
        }
    }
    OrderedPoly(out)
}

/// A reduced Gröbner basis of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    num_vars: usize,
    order: MonomialOrder,
    generators: Vec<HomoPoly>,
    reduced: bool,
    ordered: Vec<OrderedPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.order == other.order && self.generators == other.generators
    }
}

impl GroebnerBasis {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[HomoPoly] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ordered.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.ordered.iter().any(|g| g.lm().is_one())
    }

    /// The remainder of `p` on division by the basis; zero iff `p` lies in
    /// the ideal.
    pub fn normal_form(&self, p: &HomoPoly) -> Result<HomoPoly, GroebnerError> {
        if p.num_vars() != self.num_vars {
            return Err(GroebnerError::MixedAmbient { first: self.num_vars, second: p.num_vars() });
        }
        let op = OrderedPoly::from_homo(p, &self.order);
        Ok(reduce(&op, &self.ordered, &self.order).to_homo(self.num_vars))
    }

    pub fn contains(&self, p: &HomoPoly) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn buchberger_certificate(&self) -> bool {
        let g = &self.ordered;
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| reduce(&s_poly(&g[i], &g[j], &self.order), g, &self.order).is_zero())
        })
    }

    /// Reassembles a basis from stored generators (e.g. a cache entry)
    /// without recomputation. The caller vouches that they form a reduced
    /// Gröbner basis under `order`.
    pub fn from_reduced_generators(
        num_vars: usize,
        order: MonomialOrder,
        generators: Vec<HomoPoly>,
    ) -> Result<Self, GroebnerError> {
        order.check(num_vars)?;
        for g in &generators {
            if g.num_vars() != num_vars {
                return Err(GroebnerError::MixedAmbient { first: num_vars, second: g.num_vars() });
            }
        }
        let ordered = generators.iter().map(|g| OrderedPoly::from_homo(g, &order)).collect();
        Ok(GroebnerBasis { num_vars, order, generators, reduced: true, ordered })
    }
}

/// S-polynomial of two nonzero polynomials under `order`.
pub fn s_polynomial(f: &HomoPoly, g: &HomoPoly, order: &MonomialOrder) -> HomoPoly {
    let a = OrderedPoly::from_homo(f, order);
    let b = OrderedPoly::from_homo(g, order);
    s_poly(&a, &b, order).to_homo(f.num_vars())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of `<gens>` under `order`.
///
/// Buchberger's algorithm with the coprime and chain criteria, selecting
/// the pending pair with the smallest lcm. Zero generators are dropped.
pub fn groebner_basis(
    num_vars: usize,
    gens: &[HomoPoly],
    order: &MonomialOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    order.check(num_vars)?;
    for g in gens {
        if g.num_vars() != num_vars {
            return Err(GroebnerError::MixedAmbient { first: num_vars, second: g.num_vars() });
        }
    }

    let mut basis: Vec<OrderedPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut unit = false;

    let push = |h: OrderedPoly,
                basis: &mut Vec<OrderedPoly>,
                pairs: &mut Vec<Pair>,
                pending: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pairs.push(Pair { i, j: k, lcm: b.lm().lcm(h.lm()) });
            pending.insert((i, k));
        }
        basis.push(h);
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut h = reduce(&OrderedPoly::from_homo(g, order), &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        if h.lm().is_one() {
            unit = true;
            break;
        }
        push(h, &mut basis, &mut pairs, &mut pending);
    }

    while !unit && !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("non-empty");
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        if basis[i].lm().is_coprime(basis[j].lm()) {
            continue;
        }
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let mut h = reduce(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_primitive();
        if h.lm().is_one() {
            unit = true;
            break;
        }
        push(h, &mut basis, &mut pairs, &mut pending);
    }

    if unit {
        let one = HomoPoly::constant(num_vars, Rational::one());
        return GroebnerBasis::from_reduced_generators(num_vars, order.clone(), vec![one]);
    }

    // minimal basis: drop elements whose leading monomial is divisible by
    // another's (equal leading monomials keep the earliest)
    for g in &mut basis {
        g.monic();
    }
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h.lm().divides(g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    // interreduce tails
    for k in 0..minimal.len() {
        let others: Vec<OrderedPoly> =
            minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, g)| g.clone()).collect();
        let r = reduce(&minimal[k], &others, order);
        minimal[k] = r;
    }
    minimal.sort_by(|a, b| order.cmp(b.lm(), a.lm()));

    let generators = minimal.iter().map(|g| g.to_homo(num_vars)).collect();
    Ok(GroebnerBasis { num_vars, order: order.clone(), generators, reduced: true, ordered: minimal })
}
