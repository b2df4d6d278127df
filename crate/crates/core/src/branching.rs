//! Restriction of irreducible modules along an embedding of a reductive
//! subalgebra, and decomposition of the restriction into irreducibles.
//!
//! An embedding is described by a rational projection matrix acting on
//! flattened weight coordinates: the Dynkin labels of every simple factor,
//! concatenated in order, followed by the charges of the central circle
//! factors. Projection matrices are data (see the catalog); nothing here
//! derives them from abstract embeddings.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{as_integer, qi, Q};
use crate::reps::{self, WeightSystem};

mod flat;
use crate::rootsys::{RootDatum, Weight};

/// A compact reductive Lie algebra: simple factors plus central circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductiveDatum {
    pub factors: Vec<RootDatum>,
    pub abelian_rank: usize,
}

/// Weight of a reductive algebra: labels per simple factor and a charge per
/// circle factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReductiveWeight {
    pub labels: Vec<Weight>,
    pub charges: Vec<Q>,
}

/// Weights with multiplicities over a [`ReductiveDatum`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductiveWeightSystem {
    pub entries: BTreeMap<ReductiveWeight, u64>,
}

/// Normalization of the ambient invariant form on each factor of a
/// reductive algebra: the Casimir of a product module is
/// `sum_f factor[f] * <l_f, l_f + 2 rho_f> + sum_j charge[j] * q_j^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirScales {
    pub factors: Vec<Q>,
    pub charges: Vec<Q>,
}

impl CasimirScales {
    pub fn unit(datum: &ReductiveDatum) -> Self {
        CasimirScales {
            factors: vec![Q::one(); datum.factors.len()],
            charges: vec![Q::one(); datum.abelian_rank],
        }
    }
}

impl ReductiveWeight {
    pub fn simple(w: Weight) -> Self {
        ReductiveWeight {
            labels: vec![w],
            charges: Vec::new(),
        }
    }

    pub fn coords(&self) -> Vec<Q> {
        self.labels
            .iter()
            .flat_map(|w| w.0.iter().map(|&x| qi(x)))
            .chain(self.charges.iter().copied())
            .collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(Weight::is_dominant)
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.iter().all(Weight::is_zero) && self.charges.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ReductiveWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w}")?;
        }
        if !self.charges.is_empty() {
            write!(f, " q=")?;
            for (i, c) in self.charges.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        write!(f, "]")
    }
}

impl ReductiveWeightSystem {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, w: &ReductiveWeight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }
}

impl ReductiveDatum {
    pub fn simple(datum: RootDatum) -> Self {
        ReductiveDatum {
            factors: vec![datum],
            abelian_rank: 0,
        }
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(RootDatum::rank).sum()
    }

    pub fn total_rank(&self) -> usize {
        self.semisimple_rank() + self.abelian_rank
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(RootDatum::dimension).sum::<usize>() + self.abelian_rank
    }

    pub fn zero_weight(&self) -> ReductiveWeight {
        ReductiveWeight {
            labels: self.factors.iter().map(|d| Weight::zero(d.rank())).collect(),
            charges: vec![Q::zero(); self.abelian_rank],
        }
    }

    pub fn name(&self) -> String {
        let mut parts: Vec<String> = self.factors.iter().map(RootDatum::name).collect();
        for _ in 0..self.abelian_rank {
            parts.push("U1".into());
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join("x")
    }

    pub fn check_weight(&self, w: &ReductiveWeight) -> Result<()> {
        if w.labels.len() != self.factors.len() {
            return Err(Error::RankMismatch {
                expected: self.factors.len(),
                found: w.labels.len(),
            });
        }
        for (d, l) in self.factors.iter().zip(&w.labels) {
            d.check_rank(l)?;
        }
        if w.charges.len() != self.abelian_rank {
            return Err(Error::RankMismatch {
                expected: self.abelian_rank,
                found: w.charges.len(),
            });
        }
        Ok(())
    }

    fn check_dominant(&self, w: &ReductiveWeight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            let flat: Vec<i64> = w.labels.iter().flat_map(|l| l.0.iter().copied()).collect();
            return Err(Error::NotDominant(flat));
        }
        Ok(())
    }

    /// Splits flattened coordinates back into a weight. Label coordinates
    /// must be integers.
    pub fn from_coords(&self, coords: &[Q]) -> Option<ReductiveWeight> {
        if coords.len() != self.total_rank() {
            return None;
        }
        let mut labels = Vec::with_capacity(self.factors.len());
        let mut at = 0;
        for d in &self.factors {
            let mut l = Vec::with_capacity(d.rank());
            for x in &coords[at..at + d.rank()] {
                l.push(as_integer(x)?);
            }
            labels.push(Weight(l));
            at += d.rank();
        }
        Some(ReductiveWeight {
            labels,
            charges: coords[at..].to_vec(),
        })
    }

    pub fn dimension_of(&self, w: &ReductiveWeight) -> Result<u64> {
        self.check_dominant(w)?;
        Ok(self
            .factors
            .iter()
            .zip(&w.labels)
            .map(|(d, l)| reps::dimension_unchecked(d, l))
            .product())
    }

    pub fn casimir(&self, w: &ReductiveWeight, scales: &CasimirScales) -> Result<Q> {
        self.check_dominant(w)?;
        Ok(self.casimir_unchecked(w, scales))
    }

    fn casimir_unchecked(&self, w: &ReductiveWeight, scales: &CasimirScales) -> Q {
        let semisimple = self
            .factors
            .iter()
            .zip(&w.labels)
            .zip(&scales.factors)
            .fold(Q::zero(), |acc, ((d, l), s)| {
                acc + reps::casimir_unchecked(d, &l.0, *s)
            });
        w.charges
            .iter()
            .zip(&scales.charges)
            .fold(semisimple, |acc, (c, s)| acc + *s * *c * *c)
    }

    /// Sum of per-factor heights `<mu_f, rho_f>`.
    pub fn height(&self, w: &ReductiveWeight) -> Q {
        self.factors
            .iter()
            .zip(&w.labels)
            .fold(Q::zero(), |acc, (d, l)| acc + d.height(&l.0))
    }

    pub fn weight_system(&self, highest: &ReductiveWeight) -> Result<ReductiveWeightSystem> {
        self.check_dominant(highest)?;
        let mut systems = Vec::with_capacity(self.factors.len());
        for (d, l) in self.factors.iter().zip(&highest.labels) {
            systems.push(reps::weight_system(d, l)?);
        }
        Ok(product_system(&systems, &highest.charges))
    }

    /// Dominant weights with Casimir at most `bound`. Charges run over
    /// `steps[j] * Z`. Sorted by Casimir, then by weight.
    pub fn enumerate_dominant(
        &self,
        scales: &CasimirScales,
        steps: &[Q],
        bound: Q,
    ) -> Vec<(ReductiveWeight, Q)> {
        let mut out = Vec::new();
        if bound.is_negative() {
            return out;
        }
        let per_factor: Vec<Vec<(Weight, Q)>> = self
            .factors
            .iter()
            .zip(&scales.factors)
            .map(|(d, s)| {
                reps::enumerate_dominant(d, bound, *s)
                    .into_iter()
                    .map(|(w, c)| (w, c.0))
                    .collect()
            })
            .collect();
        let mut labels = Vec::new();
        self.enumerate_rec(&per_factor, scales, steps, bound, Q::zero(), &mut labels, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_rec(
        &self,
        per_factor: &[Vec<(Weight, Q)>],
        scales: &CasimirScales,
        steps: &[Q],
        bound: Q,
        used: Q,
        labels: &mut Vec<Weight>,
        out: &mut Vec<(ReductiveWeight, Q)>,
    ) {
        let f = labels.len();
        if f < per_factor.len() {
            for (w, c) in &per_factor[f] {
                if used + *c > bound {
                    break;
                }
                labels.push(w.clone());
                self.enumerate_rec(per_factor, scales, steps, bound, used + *c, labels, out);
                labels.pop();
            }
            return;
        }
        let mut charges = Vec::with_capacity(self.abelian_rank);
        charge_rec(scales, steps, bound, used, &mut charges, &mut |charges, total| {
            out.push((
                ReductiveWeight {
                    labels: labels.clone(),
                    charges: charges.to_vec(),
                },
                total,
            ));
        });
    }
}

fn charge_rec(
    scales: &CasimirScales,
    steps: &[Q],
    bound: Q,
    used: Q,
    charges: &mut Vec<Q>,
    emit: &mut dyn FnMut(&[Q], Q),
) {
    let j = charges.len();
    if j == scales.charges.len() {
        emit(charges, used);
        return;
    }
    let s = scales.charges[j];
    let step = steps.get(j).copied().unwrap_or_else(Q::one);
    // s * (k step)^2 <= bound - used
    let room = bound - used;
    let kmax = crate::rational::floor_sqrt(&(room / (s * step * step)));
    for k in -kmax..=kmax {
        let c = step * qi(k);
        let cost = s * c * c;
        if used + cost > bound {
            continue;
        }
        charges.push(c);
        charge_rec(scales, steps, bound, used + cost, charges, emit);
        charges.pop();
    }
}

fn product_system(systems: &[WeightSystem], charges: &[Q]) -> ReductiveWeightSystem {
    let mut acc: Vec<(Vec<Weight>, u64)> = vec![(Vec::new(), 1)];
    for ws in systems {
        let mut next = Vec::with_capacity(acc.len() * ws.entries.len());
        for (prefix, m) in &acc {
            for (w, k) in &ws.entries {
                let mut p = prefix.clone();
                p.push(w.clone());
                next.push((p, m * k));
            }
        }
        acc = next;
    }
    ReductiveWeightSystem {
        entries: acc
            .into_iter()
            .map(|(labels, m)| {
                (
                    ReductiveWeight {
                        labels,
                        charges: charges.to_vec(),
                    },
                    m,
                )
            })
            .collect(),
    }
}

/// `K ⊂ G`: a projection from weights of `source` to weights of `target`,
/// together with the ambient normalization of the source's Casimir and the
/// lattice of source charges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingData {
    pub source: ReductiveDatum,
    pub target: ReductiveDatum,
    /// `target.total_rank()` rows by `source.total_rank()` columns.
    pub projection: Vec<Vec<Q>>,
    pub scales: CasimirScales,
    /// Spacing of allowed charges for each source circle factor.
    pub charge_steps: Vec<Q>,
}

impl EmbeddingData {
    /// Validates shapes and lattice integrality. Integrality is checked on
    /// generators of the source lattice (fundamental weights and charge
    /// steps), which covers every source weight by linearity.
    pub fn new(
        source: ReductiveDatum,
        target: ReductiveDatum,
        projection: Vec<Vec<Q>>,
        scales: CasimirScales,
        charge_steps: Vec<Q>,
    ) -> Result<Self> {
        let rows = target.total_rank();
        let cols = source.total_rank();
        if projection.len() != rows || projection.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidSpec(format!(
                "projection must be {rows}x{cols} for {} -> {}",
                source.name(),
                target.name()
            )));
        }
        if scales.factors.len() != source.factors.len()
            || scales.charges.len() != source.abelian_rank
            || scales.factors.iter().chain(&scales.charges).any(|s| !s.is_positive())
        {
            return Err(Error::InvalidSpec(
                "casimir scales must be positive, one per source factor and circle".into(),
            ));
        }
        if charge_steps.len() != source.abelian_rank || charge_steps.iter().any(|s| !s.is_positive()) {
            return Err(Error::InvalidSpec(
                "charge steps must be positive, one per source circle".into(),
            ));
        }
        let emb = EmbeddingData {
            source,
            target,
            projection,
            scales,
            charge_steps,
        };
        let semisimple = emb.source.semisimple_rank();
        for k in 0..cols {
            let mut gen = vec![Q::zero(); cols];
            gen[k] = if k < semisimple {
                Q::one()
            } else {
                emb.charge_steps[k - semisimple]
            };
            if emb.project_coords(&gen).is_none() {
                let weight = emb
                    .source
                    .from_coords(&gen)
                    .map(|w| format!("{w}"))
                    .unwrap_or_else(|| format!("{gen:?}"));
                return Err(Error::NonIntegralProjection { weight });
            }
        }
        Ok(emb)
    }

    fn project_coords(&self, coords: &[Q]) -> Option<ReductiveWeight> {
        let image: Vec<Q> = self
            .projection
            .iter()
            .map(|row| {
                row.iter()
                    .zip(coords)
                    .fold(Q::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect();
        self.target.from_coords(&image)
    }

    pub fn project(&self, w: &ReductiveWeight) -> Result<ReductiveWeight> {
        self.source.check_weight(w)?;
        self.project_coords(&w.coords())
            .ok_or_else(|| Error::NonIntegralProjection {
                weight: format!("{w}"),
            })
    }

    pub fn casimir(&self, w: &ReductiveWeight) -> Result<Q> {
        self.source.casimir(w, &self.scales)
    }

    pub fn enumerate_source(&self, bound: Q) -> Vec<(ReductiveWeight, Q)> {
        self.source
            .enumerate_dominant(&self.scales, &self.charge_steps, bound)
    }
}

/// Image of the source weight system under the projection.
pub fn restrict(emb: &EmbeddingData, highest: &ReductiveWeight) -> Result<ReductiveWeightSystem> {
    let ws = emb.source.weight_system(highest)?;
    let mut out = ReductiveWeightSystem::default();
    for (w, m) in ws.entries {
        let image = emb.project(&w)?;
        *out.entries.entry(image).or_insert(0) += m;
    }
    Ok(out)
}

/// Decomposes the restriction into target irreducibles by highest-weight
/// peeling. Output is sorted by target weight.
pub fn decompose(emb: &EmbeddingData, highest: &ReductiveWeight) -> Result<Vec<(ReductiveWeight, u64)>> {
    emb.source.check_dominant(highest)?;
    match flat::decompose(emb, highest) {
        Ok(result) => result,
        Err(flat::Fallback) => decompose_exact(emb, highest),
    }
}

/// Same result as [`decompose`], computed on rational weights throughout.
pub fn decompose_exact(emb: &EmbeddingData, highest: &ReductiveWeight) -> Result<Vec<(ReductiveWeight, u64)>> {
    let restricted = restrict(emb, highest)?;
    decompose_system(&emb.target, &restricted)
}

/// Peels irreducibles off an arbitrary weight multiset. Weights are visited
/// once in order of decreasing total height; subtracting a constituent only
/// lowers weights of strictly smaller height, so each visited weight with a
/// positive remainder is a highest weight and must be dominant.
pub fn decompose_system(
    target: &ReductiveDatum,
    system: &ReductiveWeightSystem,
) -> Result<Vec<(ReductiveWeight, u64)>> {
    let mut remaining: BTreeMap<ReductiveWeight, i64> = system
        .entries
        .iter()
        .map(|(w, &m)| (w.clone(), m as i64))
        .collect();
    let mut order: Vec<(Q, &ReductiveWeight)> = system.entries.keys().map(|w| (target.height(w), w)).collect();
    order.sort_by(|a, b| b.cmp(a));
    let mut cache: BTreeMap<(usize, Weight), WeightSystem> = BTreeMap::new();
    let mut out: BTreeMap<ReductiveWeight, u64> = BTreeMap::new();

    for (_, top) in order {
        let mult = remaining.get(top).copied().unwrap_or(0);
        if mult == 0 {
            continue;
        }
        if !top.is_dominant() {
            return Err(Error::InconsistentBranching {
                weight: format!("{top}"),
            });
        }

        let mut systems = Vec::with_capacity(target.factors.len());
        for (f, (d, l)) in target.factors.iter().zip(&top.labels).enumerate() {
            let key = (f, l.clone());
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), reps::weight_system(d, l)?);
            }
            systems.push(cache[&key].clone());
        }
        let irreducible = product_system(&systems, &top.charges);
        for (w, m) in irreducible.entries {
            let slot = remaining.entry(w.clone()).or_insert(0);
            *slot -= mult * m as i64;
            if *slot < 0 {
                return Err(Error::NegativeMultiplicity {
                    weight: format!("{w}"),
                });
            }
        }
        out.insert(top.clone(), mult as u64);
    }
    debug_assert!(remaining.values().all(|&m| m == 0));
    Ok(out.into_iter().collect())
}

/// Multiplicity of the target irreducible `module` in the restriction of the
/// source irreducible `highest`.
pub fn contains_module(
    emb: &EmbeddingData,
    highest: &ReductiveWeight,
    module: &ReductiveWeight,
) -> Result<u64> {
    emb.target.check_weight(module)?;
    Ok(decompose(emb, highest)?
        .into_iter()
        .find(|(w, _)| w == module)
        .map_or(0, |(_, m)| m))
}
