#![allow(dead_code)]

use hyperdelta::poly::{monomials_of_degree, parse_poly};
use hyperdelta::position::{HypersurfaceFamily, Variety};
use hyperdelta::rational::int;
use hyperdelta::HomoPoly;
use proptest::prelude::*;
use rand::Rng;

/// Polynomial from integer coefficients over the degree-`d` monomials (descending).
pub fn poly_from_coeffs(nv: usize, d: u32, coeffs: &[i64]) -> HomoPoly {
    let monos = monomials_of_degree(nv, d);
    HomoPoly::from_terms(nv, monos.into_iter().zip(coeffs).map(|(m, &c)| (m, int(c)))).unwrap()
}

pub fn polys(nv: usize, list: &[&str]) -> Vec<HomoPoly> {
    list.iter().map(|s| parse_poly(s, nv).unwrap()).collect()
}

pub fn family(v: &Variety, list: &[&str]) -> HypersurfaceFamily {
    HypersurfaceFamily::new(v, polys(v.num_vars(), list)).unwrap()
}

fn n_monos(nv: usize, d: u32) -> usize {
    monomials_of_degree(nv, d).len()
}

/// Sparse small-integer coefficients, never all zero.
pub fn coeff_strategy(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], len)
        .prop_filter("non-zero", |c| c.iter().any(|&x| x != 0))
}

pub fn poly_strategy(nv: usize, max_deg: u32) -> impl Strategy<Value = HomoPoly> {
    (1..=max_deg).prop_flat_map(move |d| coeff_strategy(n_monos(nv, d)).prop_map(move |c| poly_from_coeffs(nv, d, &c)))
}

/// Families of hyperplanes and conics on projective space.
pub fn family_strategy(nv: usize, qmin: usize, qmax: usize, max_deg: u32) -> impl Strategy<Value = Vec<HomoPoly>> {
    prop::collection::vec(poly_strategy(nv, max_deg), qmin..=qmax)
}

/// Deterministic counterpart of [`coeff_strategy`].
pub fn random_coeffs<R: Rng>(rng: &mut R, len: usize) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..len).map(|_| if rng.gen_bool(0.6) { 0 } else { rng.gen_range(-2..=2) }).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

pub fn random_poly<R: Rng>(rng: &mut R, nv: usize, d: u32) -> HomoPoly {
    let c = random_coeffs(rng, n_monos(nv, d));
    poly_from_coeffs(nv, d, &c)
}
