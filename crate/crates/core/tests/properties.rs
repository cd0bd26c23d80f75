mod common;

use common::*;
use hyperdelta::exec::Exec;
use hyperdelta::groebner::{groebner_basis, hilbert_function, projective_dimension, standard_monomials, MonomialOrder};
use hyperdelta::heights::{
    height_point, normalized_abs, product_formula_check, weil_function, weil_identity_check, Place, RationalPoint,
};
use hyperdelta::poly::{parse_poly, poly_combine};
use hyperdelta::position::{classify_position, distributive_constant, remark_bounds, HypersurfaceFamily, Variety};
use hyperdelta::rational::{int, pow, ratio, Rational};
use hyperdelta::replace::{exponent_schedule, verify_power_inequality, verify_schedule_chain};
use hyperdelta::weights::{hilbert_weight, hilbert_weight_bruteforce, truncation_m0, WeightVector};
use hyperdelta::HomoPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

const CAP: usize = 14;

fn delta_of(v: &Variety, members: Vec<HomoPoly>) -> Rational {
    let fam = HypersurfaceFamily::new(v, members).unwrap();
    distributive_constant(v, &fam, CAP, Exec::Sequential).unwrap().delta
}

fn rat_strategy() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn display_round_trips(p in poly_strategy(4, 3)) {
        let again = parse_poly(&p.to_string(), 4).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn json_round_trips(p in poly_strategy(3, 3)) {
        let s = serde_json::to_string(&p).unwrap();
        let back: HomoPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn evaluation_is_homogeneous(p in poly_strategy(3, 3), x in prop::collection::vec(rat_strategy(), 3), l in rat_strategy()) {
        let d = p.degree().unwrap() as u64;
        let scaled: Vec<Rational> = x.iter().map(|c| c * &l).collect();
        prop_assert_eq!(p.eval(&scaled).unwrap(), pow(&l, d) * p.eval(&x).unwrap());
    }

    #[test]
    fn combination_is_linear(
        a in prop::collection::vec(coeff_strategy(6), 3),
        c in prop::collection::vec(rat_strategy(), 3),
        x in prop::collection::vec(rat_strategy(), 3),
    ) {
        let ps: Vec<HomoPoly> = a.iter().map(|co| poly_from_coeffs(3, 2, co)).collect();
        let sum = poly_combine(&c, &ps).unwrap();
        let expect: Rational = c.iter().zip(&ps).map(|(ci, p)| ci * p.eval(&x).unwrap()).sum();
        prop_assert_eq!(sum.eval(&x).unwrap(), expect);
    }

    #[test]
    fn basis_is_certified(gens in family_strategy(3, 1, 3, 2), order in 0usize..3) {
        let order = match order {
            0 => MonomialOrder::Grevlex,
            1 => MonomialOrder::Lex,
            _ => MonomialOrder::weighted(vec![int(1), int(0), int(2)]).unwrap(),
        };
        let gb = groebner_basis(3, &gens, &order).unwrap();
        prop_assert!(gb.buchberger_certificate());
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent(gens in family_strategy(3, 1, 3, 2), p in poly_strategy(3, 3)) {
        let gb = groebner_basis(3, &gens, &MonomialOrder::Grevlex).unwrap();
        let r = gb.normal_form(&p).unwrap();
        prop_assert_eq!(gb.normal_form(&r).unwrap(), r.clone());
        // p - nf(p) lies in the ideal
        prop_assert!(gb.contains(&p.sub(&r).unwrap()).unwrap());
    }

    #[test]
    fn dimension_and_hilbert_function_do_not_depend_on_order(gens in family_strategy(4, 1, 3, 2)) {
        let orders = [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::weighted(vec![int(3), int(1), int(0), int(2)]).unwrap(),
        ];
        let gbs: Vec<_> = orders.iter().map(|o| groebner_basis(4, &gens, o).unwrap()).collect();
        for gb in &gbs[1..] {
            prop_assert_eq!(projective_dimension(gb), projective_dimension(&gbs[0]));
            for u in 0..5 {
                prop_assert_eq!(hilbert_function(gb, u), hilbert_function(&gbs[0], u));
            }
        }
    }

    #[test]
    fn delta_is_at_least_one_and_within_remark_bounds(members in family_strategy(3, 2, 5, 2)) {
        let v = Variety::projective_space(2);
        let fam = HypersurfaceFamily::new(&v, members).unwrap();
        let d = distributive_constant(&v, &fam, CAP, Exec::Sequential).unwrap().delta;
        prop_assert!(d >= Rational::one());
        let class = classify_position(&v, &fam, CAP, Exec::Sequential).unwrap();
        for b in remark_bounds(&class).all() {
            prop_assert!(d <= b, "delta {} above bound {}", d, b);
        }
    }

    #[test]
    fn delta_invariant_under_permutation_and_scaling(members in family_strategy(3, 2, 5, 2), seed in any::<u64>()) {
        let v = Variety::projective_space(2);
        let base = delta_of(&v, members.clone());
        let mut shuffled = members.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        shuffled.reverse();
        prop_assert_eq!(delta_of(&v, shuffled), base.clone());
        let scaled: Vec<HomoPoly> = members.iter().enumerate().map(|(i, p)| p.scale(&ratio(-(i as i64) - 1, 3))).collect();
        prop_assert_eq!(delta_of(&v, scaled), base);
    }

    #[test]
    fn delta_is_monotone_and_power_invariant(members in family_strategy(3, 2, 4, 2), extra in poly_strategy(3, 2), e in 2u32..4) {
        let v = Variety::projective_space(2);
        let base = delta_of(&v, members.clone());
        let mut more = members.clone();
        more.push(extra);
        prop_assert!(delta_of(&v, more) >= base);
        let powered: Vec<HomoPoly> = members.iter().map(|p| p.pow(e)).collect();
        prop_assert_eq!(delta_of(&v, powered), base.clone());
        let fam = HypersurfaceFamily::new(&v, members).unwrap();
        let lifted = fam.power_lifted(&v).unwrap();
        prop_assert_eq!(distributive_constant(&v, &lifted, CAP, Exec::Parallel).unwrap().delta, base);
    }

    #[test]
    fn delta_matches_between_executors(members in family_strategy(4, 2, 5, 1)) {
        let v = Variety::projective_space(3);
        let fam = HypersurfaceFamily::new(&v, members).unwrap();
        let a = distributive_constant(&v, &fam, CAP, Exec::Sequential).unwrap();
        let b = distributive_constant(&v, &fam, CAP, Exec::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn schedule_ends_at_delta(steps in prop::collection::vec(1i64..4, 1..5), t0 in 0i64..3) {
        let mut t = vec![t0];
        for s in steps {
            t.push(t.last().unwrap() + s);
        }
        let s = exponent_schedule(&t).unwrap();
        prop_assert_eq!(&s.m_values[0], &s.delta);
        prop_assert_eq!(s.m_values.last().unwrap(), &s.delta);
        let shifted: Vec<i64> = t.iter().map(|x| x + 5).collect();
        prop_assert_eq!(exponent_schedule(&shifted).unwrap().delta, s.delta);
    }

    #[test]
    fn power_inequality_and_chain(steps in prop::collection::vec(1i64..4, 1..4), raw in prop::collection::vec((1i64..6, 1i64..4), 3)) {
        let mut t = vec![0];
        for s in &steps {
            t.push(t.last().unwrap() + s);
        }
        let n = t.len() - 1;
        let mut a: Vec<Rational> = raw[..n].iter().map(|&(p, q)| ratio(p + q, q)).collect();
        a.sort_by(|x, y| y.cmp(x));
        prop_assert!(verify_power_inequality(&t, &a).unwrap().holds);
        prop_assert!(verify_schedule_chain(&t, &a).unwrap());
    }

    #[test]
    fn hilbert_weight_scales_and_beats_grevlex(gens in family_strategy(3, 1, 2, 2), c in prop::collection::vec(0i64..5, 3), lam in 1i64..5, u in 1u32..4) {
        let Ok(v) = Variety::new(3, gens) else { return Ok(()) };
        let w = WeightVector::new(c.iter().map(|&x| int(x)).collect(), 3).unwrap();
        let r = hilbert_weight(&v, u, &w).unwrap();
        let lam = ratio(lam, 2);
        let rs = hilbert_weight(&v, u, &w.scaled(&lam)).unwrap();
        prop_assert_eq!(&rs.weight, &(&r.weight * &lam));
        let grevlex: Rational = standard_monomials(v.basis(), u).iter().map(|m| w.dot(m)).sum();
        prop_assert!(r.weight >= grevlex);
    }

    #[test]
    fn hilbert_weight_matches_oracle(gens in family_strategy(3, 1, 2, 2), c in prop::collection::vec(0i64..4, 3), u in 1u32..3) {
        let Ok(v) = Variety::new(3, gens) else { return Ok(()) };
        let w = WeightVector::new(c.iter().map(|&x| int(x)).collect(), 3).unwrap();
        let fast = hilbert_weight(&v, u, &w).unwrap();
        let slow = hilbert_weight_bruteforce(&v, u, &w, 16, Exec::Parallel).unwrap();
        prop_assert_eq!(fast.weight, slow.weight);
    }

    #[test]
    fn m0_is_monotone(n in 1u32..3, d in 1u32..3, degv in 1u64..3, dn in 1i64..4, q in 2u64..5, e in 1i64..6) {
        let delta = ratio(dn + 2, 2);
        let eps = ratio(e, 2);
        let base = truncation_m0(n, d, degv, &delta, q, &eps).unwrap().m0;
        prop_assert!(truncation_m0(n, d + 1, degv, &delta, q, &eps).unwrap().m0 >= base);
        prop_assert!(truncation_m0(n, d, degv + 1, &delta, q, &eps).unwrap().m0 >= base);
        prop_assert!(truncation_m0(n, d, degv, &(&delta + ratio(1, 3)), q, &eps).unwrap().m0 >= base);
        prop_assert!(truncation_m0(n, d, degv, &delta, q + 1, &eps).unwrap().m0 >= base);
        prop_assert!(truncation_m0(n, d, degv, &delta, q, &(&eps / int(2))).unwrap().m0 >= base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_formula(a in -100_000i64..100_000, b in 1i64..100_000) {
        prop_assume!(a != 0);
        let r = product_formula_check(&ratio(a, b)).unwrap();
        prop_assert!(r.ok);
        prop_assert_eq!(r.product, int(1));
    }

    #[test]
    fn weil_identity_and_finite_positivity(coeffs in coeff_strategy(6), x in prop::collection::vec(-20i64..20, 3)) {
        let q = poly_from_coeffs(3, 2, &coeffs).scale(&ratio(3, 4));
        prop_assume!(x.iter().any(|&c| c != 0));
        let pt = RationalPoint::from_i64(&x).unwrap();
        prop_assume!(!q.eval(&pt.to_rationals()).unwrap().is_zero());
        let id = weil_identity_check(&q, &pt).unwrap();
        prop_assert!(id.ok);
        for p in [2, 3, 5, 7, 11, 13] {
            prop_assert!(weil_function(&q, &pt, Place::Finite(p)).unwrap().is_nonneg());
        }
    }

    #[test]
    fn height_ignores_rescaling(x in prop::collection::vec(-50i64..50, 3), k in -9i64..9) {
        prop_assume!(x.iter().any(|&c| c != 0) && k != 0);
        let p = RationalPoint::from_i64(&x).unwrap();
        let scaled: Vec<i64> = x.iter().map(|c| c * k).collect();
        let q = RationalPoint::from_i64(&scaled).unwrap();
        prop_assert_eq!(height_point(&p), height_point(&q));
        let h = height_point(&p);
        prop_assert!(h.is_nonneg());
        let unit = p.coords().iter().all(|c| *c <= BigInt::one() && *c >= BigInt::from(-1));
        prop_assert_eq!(h.argument().is_one(), unit);
    }

    #[test]
    fn abs_values_are_multiplicative(a in 1i64..5000, b in 1i64..5000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let v = Place::Finite(p);
        let x = int(a);
        let y = ratio(1, b);
        prop_assert_eq!(
            normalized_abs(&(&x * &y), v).unwrap(),
            normalized_abs(&x, v).unwrap() * normalized_abs(&y, v).unwrap()
        );
    }
}
