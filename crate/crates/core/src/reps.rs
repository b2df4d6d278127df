//! Irreducible representations: Weyl dimension, Casimir eigenvalues,
//! Freudenthal weight systems and bounded enumeration of dominant weights.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootsys::{Family, RootDatum, Weight};

/// Default ceiling on the number of root levels walked by
/// [`weight_system`]. Large enough for every module of dimension in the
/// millions at rank <= 8.
pub const DEFAULT_LEVEL_CEILING: usize = 4096;

/// Eigenvalue of the Casimir operator on an irreducible module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CasimirValue(pub Q);

impl CasimirValue {
    pub fn value(&self) -> Q {
        self.0
    }
}

impl core::fmt::Display for CasimirValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All weights of an irreducible module with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest: Weight,
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn dominant_entries(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.entries.iter().filter(|(w, _)| w.is_dominant())
    }
}

fn require_dominant(datum: &RootDatum, w: &Weight) -> Result<()> {
    datum.check_rank(w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.0.clone()));
    }
    Ok(())
}

/// Weyl dimension formula, exactly.
pub fn dimension(datum: &RootDatum, highest: &Weight) -> Result<u64> {
    require_dominant(datum, highest)?;
    Ok(dimension_unchecked(datum, highest))
}

pub(crate) fn dimension_unchecked(datum: &RootDatum, highest: &Weight) -> u64 {
    if datum.family() == Family::A && datum.rank() == 1 {
        return highest.0[0] as u64 + 1;
    }
    let rho = datum.weyl_vector();
    let shifted = highest.add(&rho);
    let mut num = Q::one();
    for root in datum.pos_roots() {
        num *= datum.pair_with_root(&shifted.0, root) / datum.pair_with_root(&rho.0, root);
    }
    debug_assert!(num.is_integer());
    *num.numer() as u64
}

/// `scale * <lambda, lambda + 2 rho>`.
pub fn casimir(datum: &RootDatum, highest: &Weight, scale: Q) -> Result<CasimirValue> {
    require_dominant(datum, highest)?;
    Ok(CasimirValue(casimir_unchecked(datum, &highest.0, scale)))
}

pub(crate) fn casimir_unchecked(datum: &RootDatum, labels: &[i64], scale: Q) -> Q {
    let norm = datum.inner_unchecked(labels, labels);
    scale * (norm + qi(2) * datum.height(labels))
}

pub fn weight_system(datum: &RootDatum, highest: &Weight) -> Result<WeightSystem> {
    weight_system_with_ceiling(datum, highest, DEFAULT_LEVEL_CEILING)
}

/// Freudenthal recursion, level by level down from the highest weight.
///
/// Dominant multiplicities come from
/// `(|l+rho|^2 - |m+rho|^2) m_mu = 2 sum_{a>0} sum_{k>=1} m_{mu+ka} <mu+ka, a>`;
/// the rest are filled in by Weyl invariance. Every weight below the top is
/// reachable from a weight one level higher by subtracting a simple root.
pub fn weight_system_with_ceiling(
    datum: &RootDatum,
    highest: &Weight,
    ceiling: usize,
) -> Result<WeightSystem> {
    require_dominant(datum, highest)?;
    if datum.family() == Family::A && datum.rank() == 1 {
        return string_a1(highest, ceiling);
    }
    let n = datum.rank();
    let rho = datum.weyl_vector();
    let top = highest.add(&rho);
    let top_norm = datum.inner_unchecked(&top.0, &top.0);

    // (root in labels, |alpha|^2)
    let roots: Vec<(Weight, Q)> = datum
        .pos_roots()
        .iter()
        .map(|r| {
            let w = datum.root_to_weight(r);
            let len = datum.inner_unchecked(&w.0, &w.0);
            (w, len)
        })
        .collect();
    let simple: Vec<Weight> = (0..n).map(|i| datum.simple_root(i)).collect();

    let mut entries: BTreeMap<Weight, u64> = BTreeMap::new();
    entries.insert(highest.clone(), 1);
    let mut layer: Vec<Weight> = vec![highest.clone()];
    let mut level = 0usize;

    while !layer.is_empty() {
        level += 1;
        if level > ceiling {
            return Err(Error::LevelCeiling {
                highest: highest.0.clone(),
                ceiling,
            });
        }
        let candidates: BTreeSet<Weight> = layer
            .iter()
            .flat_map(|w| simple.iter().map(move |a| w.sub(a)))
            .collect();
        let mut next = Vec::new();
        for mu in candidates {
            if entries.contains_key(&mu) {
                continue;
            }
            let m = if mu.is_dominant() {
                freudenthal(datum, &entries, &roots, &mu, &rho, &top_norm)
            } else {
                let (dom, _) = datum.to_dominant_unchecked(&mu);
                entries.get(&dom).copied().unwrap_or(0)
            };
            if m > 0 {
                entries.insert(mu.clone(), m);
                next.push(mu);
            }
        }
        layer = next;
    }
    Ok(WeightSystem {
        highest: highest.clone(),
        entries,
    })
}

/// Closed form for rank one: `l, l-2, ..., -l`, each once.
fn string_a1(highest: &Weight, ceiling: usize) -> Result<WeightSystem> {
    let l = highest.0[0];
    if l as usize > ceiling {
        return Err(Error::LevelCeiling {
            highest: highest.0.clone(),
            ceiling,
        });
    }
    Ok(WeightSystem {
        highest: highest.clone(),
        entries: (0..=l).map(|k| (Weight(vec![l - 2 * k]), 1)).collect(),
    })
}

fn freudenthal(
    datum: &RootDatum,
    entries: &BTreeMap<Weight, u64>,
    roots: &[(Weight, Q)],
    mu: &Weight,
    rho: &Weight,
    top_norm: &Q,
) -> u64 {
    let shifted = mu.add(rho);
    let denom = *top_norm - datum.inner_unchecked(&shifted.0, &shifted.0);
    if !denom.is_positive() {
        return 0;
    }
    let mut sum = Q::zero();
    for (alpha, len) in roots {
        let base = datum.inner_unchecked(&mu.0, &alpha.0);
        let mut k = 1i64;
        let mut cur = mu.add(alpha);
        while let Some(&m) = entries.get(&cur) {
            sum += qi(m as i64) * (base + qi(k) * *len);
            k += 1;
            cur = cur.add(alpha);
        }
    }
    let m = qi(2) * sum / denom;
    debug_assert!(m.is_integer(), "non-integral Freudenthal multiplicity {m}");
    *m.numer() as u64
}

/// Every dominant weight with `scale * <l, l + 2 rho> <= bound`, sorted by
/// Casimir value and then by labels. A negative bound yields an empty list.
///
/// All entries of the form matrix are positive, so the Casimir of a partial
/// label vector bounds the Casimir of every completion from below; the search
/// prunes on that.
pub fn enumerate_dominant(datum: &RootDatum, bound: Q, scale: Q) -> Vec<(Weight, CasimirValue)> {
    let mut out = Vec::new();
    if bound.is_negative() || !scale.is_positive() {
        return out;
    }
    let mut cur = vec![0i64; datum.rank()];
    enumerate_rec(datum, &bound, &scale, 0, &mut cur, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn enumerate_rec(
    datum: &RootDatum,
    bound: &Q,
    scale: &Q,
    i: usize,
    cur: &mut Vec<i64>,
    out: &mut Vec<(Weight, CasimirValue)>,
) {
    if i == cur.len() {
        let c = casimir_unchecked(datum, cur, *scale);
        out.push((Weight(cur.clone()), CasimirValue(c)));
        return;
    }
    let mut v = 0i64;
    loop {
        cur[i] = v;
        if casimir_unchecked(datum, cur, *scale) > *bound {
            break;
        }
        enumerate_rec(datum, bound, scale, i + 1, cur, out);
        v += 1;
    }
    cur[i] = 0;
}

/// Per-label upper bound `bound / (2 scale <omega_i, rho>)` used as a
/// completeness certificate for the pruned search.
pub fn label_bounds(datum: &RootDatum, bound: Q, scale: Q) -> Vec<i64> {
    datum
        .rho_pairing()
        .iter()
        .map(|r| (bound / (qi(2) * scale * *r)).floor().to_integer() as i64)
        .collect()
}
