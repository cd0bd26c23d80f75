//! Certified enclosures of `e` and fixed-point logarithms used only for
//! display.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{floor_to_bigint, pow, Rational};

/// `[Σ_{i<=k} 1/i!, Σ_{i<=k} 1/i! + 1/(k!·k)]`, an enclosure of `e` for `k >= 1`.
pub fn e_enclosure(k: u32) -> (Rational, Rational) {
    let k = k.max(1);
    let mut sum = Rational::zero();
    let mut fact = BigInt::one();
    for i in 0..=k {
        if i > 0 {
            fact *= i;
        }
        sum += Rational::new(BigInt::one(), fact.clone());
    }
    let tail = Rational::new(BigInt::one(), fact * k);
    (sum.clone(), sum + tail)
}

/// Outcome of a certified floor: either the floor is known or the last
/// enclosure straddles an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifiedFloor {
    Exact(BigInt),
    Ambiguous { lower: Rational, upper: Rational },
}

/// `floor(x · e^n)` for `x >= 0`, refining the enclosure of `e` until both
/// ends share a floor or the series length exceeds `max_terms`.
pub fn floor_times_e_pow(x: &Rational, n: u32, max_terms: u32) -> CertifiedFloor {
    let mut k = 8;
    loop {
        let (lo, hi) = e_enclosure(k);
        let lower = x * pow(&lo, n as u64);
        let upper = x * pow(&hi, n as u64);
        let fl = floor_to_bigint(&lower);
        if fl == floor_to_bigint(&upper) {
            return CertifiedFloor::Exact(fl);
        }
        if k >= max_terms {
            return CertifiedFloor::Ambiguous { lower, upper };
        }
        k *= 2;
    }
}

const GUARD: u32 = 12;

fn scale(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

/// `2·atanh(p/q)` scaled by `s`, for `0 <= p/q <= 1/3`.
fn two_atanh(p: &BigInt, q: &BigInt, s: &BigInt) -> BigInt {
    let p2 = p * p;
    let q2 = q * q;
    let mut power = s * p / q;
    let mut k: u32 = 0;
    let mut acc = BigInt::zero();
    while !power.is_zero() {
        acc += &power / BigInt::from(2 * k + 1);
        power = power * &p2 / &q2;
        k += 1;
    }
    acc * 2
}

fn ln_int_scaled(m: &BigInt, s: &BigInt, ln2: &BigInt) -> BigInt {
    debug_assert!(m.is_positive());
    let k = m.bits() - 1;
    let base = BigInt::one() << k;
    // m = 2^k · r with r in [1, 2); ln r = 2 atanh((r-1)/(r+1))
    let num = m - &base;
    let den = m + &base;
    ln2 * BigInt::from(k) + two_atanh(&num, &den, s)
}

/// `ln x` for positive rational `x`, as an integer scaled by `10^digits`
/// (truncated toward zero; error below one unit in the last place).
pub fn ln_fixed(x: &Rational, digits: u32) -> BigInt {
    assert!(x.is_positive(), "logarithm of a non-positive value");
    let s = scale(digits + GUARD);
    let ln2 = two_atanh(&BigInt::one(), &BigInt::from(3), &s);
    let v = ln_int_scaled(x.numer(), &s, &ln2) - ln_int_scaled(x.denom(), &s, &ln2);
    round_div(&v, &scale(GUARD))
}

/// Rational times logarithms: `Σ coef_i · ln(arg_i)`, scaled by `10^digits`.
pub fn ln_combination(terms: &[(Rational, Rational)], digits: u32) -> BigInt {
    let s = scale(digits + GUARD);
    let ln2 = two_atanh(&BigInt::one(), &BigInt::from(3), &s);
    let mut acc = Rational::zero();
    for (coef, arg) in terms {
        assert!(arg.is_positive(), "logarithm of a non-positive value");
        let l = ln_int_scaled(arg.numer(), &s, &ln2) - ln_int_scaled(arg.denom(), &s, &ln2);
        acc += coef * Rational::from_integer(l);
    }
    let v = floor_to_bigint(&(acc + Rational::new(BigInt::one(), BigInt::from(2))));
    round_div(&v, &scale(GUARD))
}

fn round_div(v: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = v.div_mod_floor(d);
    if r * 2 >= *d {
        q + 1
    } else {
        q
    }
}

/// Renders a value scaled by `10^digits` as a decimal string.
pub fn fmt_fixed(v: &BigInt, digits: u32) -> String {
    let s = scale(digits);
    let neg = v.sign() == Sign::Minus;
    let (ip, fp) = v.abs().div_rem(&s);
    let frac = fp.to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    if digits == 0 {
        return format!("{}{}", if neg { "-" } else { "" }, ip);
    }
    format!("{}{}.{}{}", if neg { "-" } else { "" }, ip, pad, frac)
}
