//! Varieties, hypersurface families and their position invariants.
//!
//! All intersection dimensions are projective dimensions of
//! `V ∩ Q*_j ∩ ...`, computed from the Gröbner basis of
//! `I(V) + <Q_j, ...>`. The dimension of a scheme equals the dimension of its
//! support, so no radical is ever taken. Indices into a family are 0-based.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::groebner::{
    groebner_basis, ideal_profile, projective_dimension, GroebnerBasis, GroebnerError, MonomialOrder,
    ProjDim,
};
use crate::poly::{lcm_degree, HomoPoly, PolyError};
use crate::rational::{serde_rat, serde_rat_opt, Rational};

/// Default upper bound on the family size for exhaustive subset enumeration.
pub const DEFAULT_SUBSET_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error("the variety is empty")]
    EmptyVariety,
    #[error("the variety is zero-dimensional; a positive dimension is required")]
    ZeroDimensional,
    #[error("family member {index} vanishes on a top-dimensional part of the variety")]
    VanishesOnVariety { index: usize },
    #[error("the family is empty")]
    EmptyFamily,
    #[error("index {index} out of range for a family of {q}")]
    IndexOutOfRange { index: usize, q: usize },
    #[error("the subset is empty")]
    EmptySubset,
    #[error("family of {q} exceeds the subset enumeration cap {cap}; raise the cap to proceed")]
    SubsetCapExceeded { q: usize, cap: usize },
    #[error("{0:?} is not a permutation of the family indices")]
    InvalidOrdering(Vec<usize>),
    #[error("no prefix of the ordered family has empty intersection with the variety")]
    NeverEmpty,
    #[error("prefix dimensions {0:?} do not follow the unit-step profile")]
    IrregularProfile(Vec<ProjDim>),
    #[error("ambient mismatch: variety has {expected} variables, polynomial has {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl PositionError {
    pub fn name(&self) -> &'static str {
        match self {
            PositionError::EmptyVariety => "EmptyVariety",
            PositionError::ZeroDimensional => "ZeroDimensional",
            PositionError::VanishesOnVariety { .. } => "VanishesOnVariety",
            PositionError::EmptyFamily => "EmptyFamily",
            PositionError::IndexOutOfRange { .. } => "IndexOutOfRange",
            PositionError::EmptySubset => "EmptySubset",
            PositionError::SubsetCapExceeded { .. } => "SubsetCapExceeded",
            PositionError::InvalidOrdering(_) => "InvalidOrdering",
            PositionError::NeverEmpty => "NeverEmpty",
            PositionError::IrregularProfile(_) => "IrregularProfile",
            PositionError::AmbientMismatch { .. } => "AmbientMismatch",
            PositionError::Groebner(e) => e.name(),
            PositionError::Poly(e) => e.name(),
        }
    }
}

/// A projective variety given by homogeneous generators of its ideal.
///
/// Smoothness and irreducibility are not checked.
#[derive(Clone, Debug)]
pub struct Variety {
    num_vars: usize,
    generators: Vec<HomoPoly>,
    gb: GroebnerBasis,
    dim: usize,
    degree: u64,
}

impl Variety {
    pub fn new(num_vars: usize, generators: Vec<HomoPoly>) -> Result<Self, PositionError> {
        let gb = groebner_basis(num_vars, &generators, &MonomialOrder::Grevlex)?;
        Self::with_basis(generators, gb)
    }

    /// Uses an already computed reduced grevlex basis of `<generators>`.
    pub fn with_basis(generators: Vec<HomoPoly>, gb: GroebnerBasis) -> Result<Self, PositionError> {
        let profile = ideal_profile(&gb)?;
        let dim = match profile.projective_dimension {
            ProjDim::Empty => return Err(PositionError::EmptyVariety),
            ProjDim::Dim(0) => return Err(PositionError::ZeroDimensional),
            ProjDim::Dim(d) => d,
        };
        Ok(Variety { num_vars: gb.num_vars(), generators, gb, dim, degree: profile.degree })
    }

    pub fn projective_space(n: usize) -> Self {
        Self::new(n + 1, Vec::new()).expect("projective space of positive dimension")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[HomoPoly] {
        &self.generators
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Does the point (given by coordinates, not all zero) lie on the variety?
    pub fn contains_point(&self, point: &[Rational]) -> Result<bool, PositionError> {
        for g in self.gb.generators() {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Projective dimension of `V ∩ {p = 0 for p in extra}`.
    pub fn cut_dimension(&self, extra: &[&HomoPoly]) -> Result<ProjDim, PositionError> {
        Ok(projective_dimension(&self.cut_basis(extra)?))
    }

    fn cut_basis(&self, extra: &[&HomoPoly]) -> Result<GroebnerBasis, PositionError> {
        extend_basis(&self.gb, extra)
    }
}

fn extend_basis(base: &GroebnerBasis, extra: &[&HomoPoly]) -> Result<GroebnerBasis, PositionError> {
    let mut gens: Vec<HomoPoly> = base.generators().to_vec();
    gens.extend(extra.iter().map(|p| (*p).clone()));
    Ok(groebner_basis(base.num_vars(), &gens, base.order())?)
}

/// Hypersurfaces `Q_1, ..., Q_q`, none containing a top-dimensional part of
/// the variety they were validated against.
#[derive(Clone, Debug)]
pub struct HypersurfaceFamily {
    members: Vec<HomoPoly>,
    degrees: Vec<u32>,
    lcm_degree: u32,
}

impl HypersurfaceFamily {
    pub fn new(variety: &Variety, members: Vec<HomoPoly>) -> Result<Self, PositionError> {
        if members.is_empty() {
            return Err(PositionError::EmptyFamily);
        }
        for (i, m) in members.iter().enumerate() {
            if m.num_vars() != variety.num_vars() {
                return Err(PositionError::AmbientMismatch { expected: variety.num_vars(), found: m.num_vars() });
            }
            if m.is_zero() || variety.cut_dimension(&[m])? == ProjDim::Dim(variety.dim()) {
                return Err(PositionError::VanishesOnVariety { index: i });
            }
        }
        let lcm = lcm_degree(&members)?;
        let degrees = members.iter().map(|m| m.degree()).collect::<Result<Vec<_>, _>>()?;
        Ok(HypersurfaceFamily { members, degrees, lcm_degree: lcm.lcm })
    }

    pub fn members(&self) -> &[HomoPoly] {
        &self.members
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn lcm_degree(&self) -> u32 {
        self.lcm_degree
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn same_degree(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    /// Every member raised to `lcm / d_i`; supports are unchanged.
    pub fn power_lifted(&self, variety: &Variety) -> Result<Self, PositionError> {
        let lifted = self
            .members
            .iter()
            .zip(&self.degrees)
            .map(|(m, &d)| m.pow(self.lcm_degree / d.max(1)))
            .collect();
        Self::new(variety, lifted)
    }

    fn check_indices(&self, subset: &[usize]) -> Result<(), PositionError> {
        for &i in subset {
            if i >= self.members.len() {
                return Err(PositionError::IndexOutOfRange { index: i, q: self.members.len() });
            }
        }
        Ok(())
    }
}

/// `dim (∩_{j ∈ subset} Q*_j) ∩ V`.
pub fn intersection_dimension(
    variety: &Variety,
    family: &HypersurfaceFamily,
    subset: &[usize],
) -> Result<ProjDim, PositionError> {
    if subset.is_empty() {
        return Err(PositionError::EmptySubset);
    }
    family.check_indices(subset)?;
    let extra: Vec<&HomoPoly> = subset.iter().map(|&i| &family.members[i]).collect();
    variety.cut_dimension(&extra)
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Intersection dimensions of every subset of a family, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct SubsetLattice {
    n: usize,
    q: usize,
    dims: Vec<ProjDim>,
}

impl SubsetLattice {
    /// Enumerates all `2^q` subsets level by level. Each subset's ideal
    /// extends the memoised basis of the subset without its largest index;
    /// subsets of an empty intersection are marked empty without any work.
    pub fn build(
        variety: &Variety,
        family: &HypersurfaceFamily,
        cap: usize,
        exec: Exec,
    ) -> Result<Self, PositionError> {
        let q = family.len();
        if q > cap || q > 30 {
            return Err(PositionError::SubsetCapExceeded { q, cap: cap.min(30) });
        }
        let mut dims = vec![ProjDim::Empty; 1 << q];
        dims[0] = ProjDim::Dim(variety.dim());
        let mut prev: HashMap<u32, GroebnerBasis> = HashMap::new();
        prev.insert(0, variety.gb.clone());
        for size in 1..=q as u32 {
            let level: Vec<u32> = (1u32..(1 << q)).filter(|m| m.count_ones() == size).collect();
            let results = exec.map(&level, |&mask| -> Result<(ProjDim, Option<GroebnerBasis>), PositionError> {
                let hi = 31 - mask.leading_zeros();
                let parent = mask & !(1 << hi);
                match prev.get(&parent) {
                    None => Ok((ProjDim::Empty, None)),
                    Some(base) => {
                        let gb = extend_basis(base, &[&family.members[hi as usize]])?;
                        let d = projective_dimension(&gb);
                        Ok((d, (!d.is_empty()).then_some(gb)))
                    }
                }
            });
            let mut next = HashMap::new();
            for (mask, r) in level.into_iter().zip(results) {
                let (d, gb) = r?;
                dims[mask as usize] = d;
                if let Some(gb) = gb {
                    next.insert(mask, gb);
                }
            }
            prev = next;
        }
        Ok(SubsetLattice { n: variety.dim(), q, dims })
    }

    pub fn dim_of(&self, subset: &[usize]) -> ProjDim {
        let mask = subset.iter().fold(0usize, |m, &i| m | (1 << i));
        self.dims[mask]
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Non-empty subsets in (size, lexicographic index set) order.
    fn ordered_masks(&self) -> Vec<u32> {
        let mut masks: Vec<u32> = (1u32..(1 << self.q)).collect();
        masks.sort_by_cached_key(|&m| (m.count_ones(), mask_indices(m)));
        masks
    }

    /// Largest intersection dimension over all subsets of the given size.
    pub fn max_dim_of_size(&self, size: usize) -> ProjDim {
        (1u32..(1 << self.q))
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| self.dims[m as usize])
            .max()
            .unwrap_or(ProjDim::Empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetEntry {
    pub subset: Vec<usize>,
    pub size: usize,
    pub dim: ProjDim,
    /// `|Γ| / (n - dim)`, absent for subsets with empty trace on `V`.
    #[serde(with = "serde_rat_opt")]
    pub ratio: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributiveReport {
    #[serde(with = "serde_rat")]
    pub delta: Rational,
    /// Maximising subset; ties go to the smaller, then lexicographically
    /// smallest, index set.
    pub witness: Vec<usize>,
    pub n: usize,
    pub q: usize,
    /// Subsets whose intersection with `V` is empty contribute nothing
    /// (the empty set has dimension minus infinity).
    pub empty_subsets_excluded: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_subset: Option<Vec<SubsetEntry>>,
}

/// The distributive constant `max_Γ |Γ| / (n - dim(∩_{j∈Γ} Q*_j ∩ V))`.
pub fn distributive_constant(
    variety: &Variety,
    family: &HypersurfaceFamily,
    cap: usize,
    exec: Exec,
) -> Result<DistributiveReport, PositionError> {
    let lattice = SubsetLattice::build(variety, family, cap, exec)?;
    Ok(distributive_from_lattice(&lattice, false))
}

pub fn distributive_from_lattice(lattice: &SubsetLattice, table: bool) -> DistributiveReport {
    let n = lattice.n;
    let mut best: Option<(Rational, u32)> = None;
    let mut excluded = 0;
    let mut entries = Vec::new();
    for mask in lattice.ordered_masks() {
        let d = lattice.dims[mask as usize];
        let size = mask.count_ones() as usize;
        let ratio = match d {
            ProjDim::Empty => {
                excluded += 1;
                None
            }
            ProjDim::Dim(e) => {
                // family validation guarantees e < n for non-empty subsets
                let r = Rational::new((size as i64).into(), ((n - e) as i64).into());
                if best.as_ref().is_none_or(|(b, _)| r > *b) {
                    best = Some((r.clone(), mask));
                }
                Some(r)
            }
        };
        if table {
            entries.push(SubsetEntry { subset: mask_indices(mask), size, dim: d, ratio });
        }
    }
    let (delta, mask) = best.unwrap_or((Rational::one(), 1));
    DistributiveReport {
        delta,
        witness: mask_indices(mask),
        n,
        q: lattice.q,
        empty_subsets_excluded: excluded,
        per_subset: table.then_some(entries),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionClass {
    pub n: usize,
    pub q: usize,
    /// Size of the largest subset with non-empty trace on `V`.
    pub max_nonempty_size: usize,
    /// Least `l` with every `(l+1)`-subset empty on `V`; `None` when the
    /// whole family has a common point on `V`.
    pub l: Option<usize>,
    pub general_position: bool,
    /// Largest `κ ≤ n` such that every `s`-subset, `s ≤ κ`, cuts `V` to
    /// dimension at most `n - s`. Only reported when `l` exists.
    pub kappa: Option<usize>,
    /// Componentwise least `(t_1, ..., t_n)`: every `t_s + 1` members cut
    /// `V` to dimension at most `n - s - 1`. `t_s = q` is vacuously valid.
    pub t_vector: Vec<usize>,
}

pub fn classify_position(
    variety: &Variety,
    family: &HypersurfaceFamily,
    cap: usize,
    exec: Exec,
) -> Result<PositionClass, PositionError> {
    let lattice = SubsetLattice::build(variety, family, cap, exec)?;
    Ok(classify_from_lattice(&lattice))
}

pub fn classify_from_lattice(lattice: &SubsetLattice) -> PositionClass {
    let (n, q) = (lattice.n, lattice.q);
    let max_dims: Vec<ProjDim> = (0..=q).map(|k| lattice.max_dim_of_size(k)).collect();
    let max_nonempty_size = (1..=q).rev().find(|&k| !max_dims[k].is_empty()).unwrap_or(0);
    let l = (max_nonempty_size < q).then_some(max_nonempty_size.max(n));
    let general_position = l == Some(n);
    let kappa = l.map(|_| {
        (0..=n)
            .take_while(|&k| (1..=k.min(q)).all(|s| max_dims[s].at_most(n as i64 - s as i64)))
            .last()
            .unwrap_or(0)
    });
    let t_vector = (1..=n)
        .map(|s| {
            (0..=q)
                .find(|&t| t + 1 > q || max_dims[t + 1].at_most(n as i64 - s as i64 - 1))
                .unwrap_or(q)
        })
        .collect();
    PositionClass { n, q, max_nonempty_size, l, general_position, kappa, t_vector }
}

/// Upper bounds on the distributive constant implied by a position class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    /// `1` under general position.
    #[serde(with = "serde_rat_opt")]
    pub general: Option<Rational>,
    /// `l - n + 1` under `l`-subgeneral position.
    #[serde(with = "serde_rat_opt")]
    pub subgeneral: Option<Rational>,
    /// `max_k t_k / k`.
    #[serde(with = "serde_rat")]
    pub t_vector: Rational,
    /// `(l - n + κ) / κ` under `l`-subgeneral position with index `κ`.
    #[serde(with = "serde_rat_opt")]
    pub index: Option<Rational>,
}

impl BoundSet {
    pub fn all(&self) -> Vec<Rational> {
        [&self.general, &self.subgeneral, &Some(self.t_vector.clone()), &self.index]
            .into_iter()
            .flatten()
            .cloned()
            .collect()
    }
}

pub fn remark_bounds(class: &PositionClass) -> BoundSet {
    let r = |a: usize, b: usize| Rational::new((a as i64).into(), (b as i64).into());
    let n = class.n;
    let general = class.general_position.then(Rational::one);
    let subgeneral = class.l.map(|l| r(l - n + 1, 1));
    let t_vector = class
        .t_vector
        .iter()
        .enumerate()
        .map(|(k, &t)| r(t, k + 1))
        .max()
        .unwrap_or_else(Rational::one);
    let index = match (class.l, class.kappa) {
        (Some(l), Some(k)) if k >= 1 => Some(r(l - n + k, k)),
        _ => None,
    };
    BoundSet { general, subgeneral, t_vector, index }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionProfile {
    pub ordering: Vec<usize>,
    /// `0 = t_0 < t_1 < ... < t_n = l`.
    pub t_values: Vec<usize>,
    pub l_value: usize,
    /// Dimension after each prefix `0..=s`, up to and including the first
    /// empty one.
    pub prefix_dims: Vec<ProjDim>,
}

/// Breakpoints at which the prefix intersections of the ordered family drop
/// dimension on `V`.
pub fn dimension_profile(
    variety: &Variety,
    family: &HypersurfaceFamily,
    ordering: &[usize],
) -> Result<DimensionProfile, PositionError> {
    let q = family.len();
    let mut seen = vec![false; q];
    if ordering.len() != q || ordering.iter().any(|&i| i >= q || std::mem::replace(&mut seen[i], true)) {
        return Err(PositionError::InvalidOrdering(ordering.to_vec()));
    }
    let n = variety.dim();
    let mut gb = variety.gb.clone();
    let mut prefix_dims = Vec::new();
    for &i in ordering {
        gb = extend_basis(&gb, &[&family.members[i]])?;
        let d = projective_dimension(&gb);
        prefix_dims.push(d);
        if d.is_empty() {
            break;
        }
    }
    if !prefix_dims.last().is_some_and(|d| d.is_empty()) {
        return Err(PositionError::NeverEmpty);
    }
    let mut t_values = vec![0];
    for u in 1..=n {
        let t = prefix_dims
            .iter()
            .position(|d| d.at_most(n as i64 - u as i64 - 1))
            .ok_or_else(|| PositionError::IrregularProfile(prefix_dims.clone()))?;
        t_values.push(t);
    }
    // each stretch t_{u-1} <= s < t_u must sit at exactly n - u
    let regular = (1..=n).all(|u| {
        t_values[u - 1] < t_values[u]
            && (t_values[u - 1]..t_values[u]).all(|s| prefix_dims[s] == ProjDim::Dim(n - u))
    });
    if !regular {
        return Err(PositionError::IrregularProfile(prefix_dims));
    }
    let l_value = t_values[n];
    Ok(DimensionProfile { ordering: ordering.to_vec(), t_values, l_value, prefix_dims })
}

/// `true` when the family's total intersection with the variety is empty.
pub fn total_intersection_empty(variety: &Variety, family: &HypersurfaceFamily) -> Result<bool, PositionError> {
    let all: Vec<usize> = (0..family.len()).collect();
    Ok(intersection_dimension(variety, family, &all)?.is_empty())
}
