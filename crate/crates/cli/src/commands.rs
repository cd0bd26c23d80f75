//! Subcommand bodies. Each returns the JSON payload placed under `result`.
//! Family indices are 1-based here and 0-based in the library.

use std::path::Path;

use hyperdelta::exec::Exec;
use hyperdelta::groebner::{hilbert_function, hilbert_numerator, ideal_profile};
use hyperdelta::heights::{
    containing_member, height_point, height_poly, height_scalar, product_formula_check, sample_points,
    subspace_margin, weil_function, weil_identity_check, Place, RationalPoint,
};
use hyperdelta::poly::{parse_poly, PolyJson};
use hyperdelta::position::{
    classify_position, dimension_profile, distributive_from_lattice, intersection_dimension, remark_bounds,
    PositionError, SubsetLattice,
};
use hyperdelta::rational::{fmt_rat, parse_rat, Rational};
use hyperdelta::replace::{
    build_replacement, exponent_schedule, verify_power_inequality, verify_replacement, verify_schedule_chain,
    SearchConfig,
};
use hyperdelta::weights::{
    compare_bounds, ef_lower_bound_check, hilbert_weight, hilbert_weight_bruteforce, truncation_m0,
    truncation_m0_subgeneral, WeightVector,
};
use serde_json::{json, Value};

use crate::config::{Ctx, SessionConfig};
use crate::{CliError, Command};

type Out = Result<Value, CliError>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rat(s: &str) -> Result<Rational, CliError> {
    parse_rat(s).ok_or_else(|| CliError::Usage(format!("not a rational number: {s:?}")))
}

fn rats(list: &[String]) -> Result<Vec<Rational>, CliError> {
    list.iter().map(|s| rat(s)).collect()
}

fn zero_based(indices: &[usize], q: usize) -> Result<Vec<usize>, CliError> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > q {
                Err(PositionError::IndexOutOfRange { index: i, q }.into())
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn ordering(cli: &Option<Vec<usize>>, cfg: &SessionConfig, q: usize) -> Result<Vec<usize>, CliError> {
    match cli.as_ref().or(cfg.ordering.as_ref()) {
        Some(o) => zero_based(o, q),
        None => Ok((0..q).collect()),
    }
}

fn point(coords: &[String]) -> Result<RationalPoint, CliError> {
    Ok(RationalPoint::from_rationals(&rats(coords)?)?)
}

pub fn run(cmd: &Command, ctx: &mut Ctx, exec: Exec) -> Out {
    match cmd {
        Command::Parse { poly, ambient } => {
            let p = parse_poly(poly, ambient + 1)?;
            Ok(json!({
                "text": p.to_string(),
                "json": to_value(&PolyJson::from(&p)),
                "degree": p.degree()?,
                "primitive": p.primitive().to_string(),
            }))
        }
        Command::Dim { cfg, subset } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let gens = cfg.variety_polys()?;
            let gb = ctx.basis(cfg.num_vars(), &gens)?;
            let profile = ideal_profile(&gb)?;
            let mut out = json!({
                "variety": { "dimension": to_value(&profile.projective_dimension), "degree": profile.degree },
            });
            if !cfg.family.is_empty() {
                let v = ctx.variety(&cfg)?;
                let fam = ctx.family(&cfg, &v)?;
                let members: Vec<Value> = fam
                    .members()
                    .iter()
                    .map(|m| Ok(to_value(&v.cut_dimension(&[m])?)))
                    .collect::<Result<_, CliError>>()?;
                out["members"] = Value::Array(members);
                if let Some(s) = subset {
                    let idx = zero_based(s, fam.len())?;
                    out["subset"] = json!(s);
                    out["subset_dimension"] = to_value(&intersection_dimension(&v, &fam, &idx)?);
                }
            }
            Ok(out)
        }
        Command::Delta { cfg, table } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let fam = ctx.family(&cfg, &v)?;
            let lattice = SubsetLattice::build(&v, &fam, cfg.subset_cap(), exec)?;
            let rep = distributive_from_lattice(&lattice, *table);
            let mut out = json!({ "delta": fmt_rat(&rep.delta), "witness": one_based(&rep.witness) });
            if let Some(rows) = rep.per_subset {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|e| {
                        json!({
                            "subset": one_based(&e.subset),
                            "dim": to_value(&e.dim),
                            "ratio": e.ratio.as_ref().map(fmt_rat),
                        })
                    })
                    .collect();
                out["per_subset"] = Value::Array(rows);
                out["empty_subsets_excluded"] = json!(rep.empty_subsets_excluded);
            }
            Ok(out)
        }
        Command::Classify { cfg } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let fam = ctx.family(&cfg, &v)?;
            let class = classify_position(&v, &fam, cfg.subset_cap(), exec)?;
            let bounds = remark_bounds(&class);
            Ok(json!({ "class": to_value(&class), "bounds": to_value(&bounds) }))
        }
        Command::Profile { cfg, ordering: ord } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let fam = ctx.family(&cfg, &v)?;
            let order = ordering(ord, &cfg, fam.len())?;
            let prof = dimension_profile(&v, &fam, &order)?;
            let t: Vec<i64> = prof.t_values.iter().map(|&x| x as i64).collect();
            Ok(json!({
                "ordering": one_based(&prof.ordering),
                "t_values": prof.t_values,
                "l_value": prof.l_value,
                "prefix_dims": to_value(&prof.prefix_dims),
                "schedule": to_value(&exponent_schedule(&t)?),
            }))
        }
        Command::Replace { cfg, ordering: ord, seed, pool_bound } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let fam = ctx.family(&cfg, &v)?;
            let lifted = !fam.same_degree();
            let fam = if lifted { fam.power_lifted(&v)? } else { fam };
            let order = ordering(ord, &cfg, fam.len())?;
            let prof = dimension_profile(&v, &fam, &order)?;
            let seed = seed.or(cfg.seed).unwrap_or(0);
            let search = SearchConfig { pool_bound: *pool_bound, exec, ..SearchConfig::default() };
            let sys = build_replacement(&v, &fam, &prof, seed, &search)?;
            let verdict = verify_replacement(&v, &sys);
            let matrix: Vec<Vec<String>> =
                sys.coeff_matrix.iter().map(|row| row.iter().map(fmt_rat).collect()).collect();
            Ok(json!({
                "seed": seed,
                "pool_bound": pool_bound,
                "lifted": lifted,
                "source_ordering": one_based(&prof.ordering[..=prof.l_value]),
                "t_values": prof.t_values,
                "coeff_matrix": matrix,
                "replacements": sys.replacements.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "pool_used": sys.pool_used,
                "verdict": to_value(&verdict),
            }))
        }
        Command::Schedule { t } => Ok(to_value(&exponent_schedule(t)?)),
        Command::Ineq { t, a } => {
            let a = rats(a)?;
            let ineq = verify_power_inequality(t, &a)?;
            let chain = verify_schedule_chain(t, &a)?;
            Ok(json!({ "inequality": to_value(&ineq), "chain": chain }))
        }
        Command::Hilbert { cfg, u_max } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let gb = ctx.basis(cfg.num_vars(), &cfg.variety_polys()?)?;
            let profile = ideal_profile(&gb)?;
            let values: Vec<u64> = (0..=*u_max).map(|u| hilbert_function(&gb, u)).collect();
            Ok(json!({
                "dimension": to_value(&profile.projective_dimension),
                "degree": profile.degree,
                "regularity_start": profile.regularity_start,
                "hilbert": values,
                "numerator": hilbert_numerator(&gb),
            }))
        }
        Command::Hweight { cfg, u, c, oracle } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let w = WeightVector::new(rats(c)?, v.num_vars())?;
            let rep = hilbert_weight(&v, *u, &w)?;
            let mut out = to_value(&rep);
            if *oracle {
                let slow = hilbert_weight_bruteforce(&v, *u, &w, cfg.oracle_cap(), exec)?;
                out["oracle_weight"] = json!(fmt_rat(&slow.weight));
                out["oracle_agrees"] = json!(slow.weight == rep.weight);
            }
            Ok(out)
        }
        Command::Efcheck { cfg, u, c, subset } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let w = WeightVector::new(rats(c)?, v.num_vars())?;
            Ok(to_value(&ef_lower_bound_check(&v, *u, &w, subset)?))
        }
        Command::M0 { n, d, degv, delta, q, eps, l } => {
            let rep = truncation_m0(*n, *d, *degv, &rat(delta)?, *q, &rat(eps)?)?;
            let mut out = to_value(&rep);
            if let Some(l) = l {
                out["subgeneral"] = to_value(&truncation_m0_subgeneral(*n, *d, *degv, *l, *q, &rat(eps)?)?);
            }
            Ok(out)
        }
        Command::Compare { n, ambient, l, kappa, q } => Ok(to_value(&compare_bounds(*n, *ambient, *l, *kappa, *q)?)),
        Command::Height { point: pt, poly, ambient, x, digits } => {
            let given = [pt.is_some(), poly.is_some(), x.is_some()].iter().filter(|&&b| b).count();
            if given != 1 {
                return Err(CliError::Usage("give exactly one of --point, --poly, --x".into()));
            }
            let (kind, h, extra) = if let Some(pt) = pt {
                let p = point(pt)?;
                ("point", height_point(&p), json!(to_value(&p)))
            } else if let Some(poly) = poly {
                let a = ambient.ok_or_else(|| CliError::Usage("--poly needs --ambient".into()))?;
                let q = parse_poly(poly, a + 1)?;
                ("poly", height_poly(&q)?, json!(q.to_string()))
            } else {
                let v = rat(x.as_deref().expect("checked"))?;
                ("scalar", height_scalar(&v), json!(fmt_rat(&v)))
            };
            Ok(json!({ "kind": kind, "input": extra, "argument": to_value(&h), "approx": h.approx(*digits) }))
        }
        Command::Weil { poly, point: pt, place, digits } => {
            let p = point(pt)?;
            let q = parse_poly(poly, p.num_vars())?;
            if place == "all" {
                let id = weil_identity_check(&q, &p)?;
                let values: Vec<Value> = id
                    .places
                    .iter()
                    .map(|&v| {
                        let w = weil_function(&q, &p, v)?;
                        Ok(json!({ "place": to_value(&v), "argument": to_value(&w), "approx": w.approx(*digits) }))
                    })
                    .collect::<Result<_, CliError>>()?;
                Ok(json!({ "point": to_value(&p), "values": values, "identity": to_value(&id) }))
            } else {
                let v = parse_place(place)?;
                let w = weil_function(&q, &p, v)?;
                Ok(json!({ "point": to_value(&p), "place": to_value(&v), "argument": to_value(&w), "approx": w.approx(*digits) }))
            }
        }
        Command::Pfcheck { x } => {
            let r = product_formula_check(&rat(x)?)?;
            Ok(json!({ "product": fmt_rat(&r.product), "ok": r.ok }))
        }
        Command::Margin { cfg, points, sample, min_norm, max_norm, eps, primes, delta } => {
            let cfg = ctx.load_config(&cfg.config)?;
            let v = ctx.variety(&cfg)?;
            let fam = ctx.family(&cfg, &v)?;
            let eps = rat(eps)?;
            let delta = match delta {
                Some(d) => rat(d)?,
                None => distributive_from_lattice(&SubsetLattice::build(&v, &fam, cfg.subset_cap(), exec)?, false).delta,
            };
            let places: Vec<Place> = std::iter::once(Ok(Place::Infinite))
                .chain(primes.iter().map(|&p| Place::finite(p)))
                .collect::<Result<_, _>>()?;
            let mut skipped = 0;
            let pts = match (points, sample) {
                (Some(path), None) => read_points(ctx, path)?,
                (None, Some(count)) => {
                    let mut pts = Vec::new();
                    for p in sample_points(&v, *min_norm, *max_norm, usize::MAX) {
                        if pts.len() >= *count {
                            break;
                        }
                        if containing_member(&fam, &p)?.is_none() {
                            pts.push(p);
                        } else {
                            skipped += 1;
                        }
                    }
                    pts
                }
                _ => return Err(CliError::Usage("give exactly one of --points, --sample".into())),
            };
            let summary = subspace_margin(&v, &fam, &delta, &eps, &places, &pts, cfg.precision(), exec)?;
            let mut out = to_value(&summary);
            out["delta"] = json!(fmt_rat(&delta));
            out["eps"] = json!(fmt_rat(&eps));
            out["places"] = to_value(&places);
            out["skipped_on_hypersurfaces"] = json!(skipped);
            Ok(out)
        }
    }
}

fn parse_place(s: &str) -> Result<Place, CliError> {
    match s {
        "inf" | "infinity" => Ok(Place::Infinite),
        p => {
            let p: u64 = p.parse().map_err(|_| CliError::Usage(format!("not a place: {s:?}")))?;
            Ok(Place::finite(p)?)
        }
    }
}

fn read_points(ctx: &mut Ctx, path: &Path) -> Result<Vec<RationalPoint>, CliError> {
    let text = ctx.read(path)?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let coords: Vec<String> = l.split(',').map(|s| s.trim().to_string()).collect();
            point(&coords)
        })
        .collect()
}
