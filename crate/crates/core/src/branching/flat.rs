//! Integer-key restriction and peeling.
//!
//! Charges are central, so every weight of a source module has the same
//! charges and their image is a constant offset. Each target coordinate `i`
//! is held as an integer numerator over a fixed denominator `den[i]`; label
//! coordinates are divided out to plain integers, charge coordinates keep the
//! numerator. Keys are fixed-width arrays in a sorted vector, so the hot
//! loops do not allocate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{EmbeddingData, ReductiveWeight};
use crate::rational::Q;
use crate::reps;
use crate::rootsys::Weight;

pub(super) const MAX_RANK: usize = 8;

type Key = [i64; MAX_RANK];

/// `(labels or image vector, multiplicity)` for each weight of one factor.
type WeightList = Vec<(Vec<i64>, u64)>;

/// The fast path gave up; the caller reruns the exact rational path, which
/// reports the matching error.
pub(super) struct Fallback;

struct Layout {
    labels: usize,
    total: usize,
    den: Vec<i64>,
    offset: Vec<i64>,
    /// `cols[c][i]`: contribution of source label coordinate `c` to target
    /// numerator `i`.
    cols: Vec<Vec<i64>>,
    heights: Vec<i64>,
}

fn to_i64(x: i128) -> Option<i64> {
    i64::try_from(x).ok()
}

impl Layout {
    fn new(emb: &EmbeddingData, highest: &ReductiveWeight) -> Option<Self> {
        let labels = emb.target.semisimple_rank();
        let total = emb.target.total_rank();
        let src_labels = emb.source.semisimple_rank();
        if total > MAX_RANK {
            return None;
        }
        let mut den = Vec::with_capacity(total);
        let mut offset = Vec::with_capacity(total);
        let mut cols = vec![vec![0i64; total]; src_labels];
        for (i, row) in emb.projection.iter().enumerate() {
            let c: Q = row[src_labels..]
                .iter()
                .zip(&highest.charges)
                .fold(Q::from(0), |acc, (a, q)| acc + *a * *q);
            let d = row[..src_labels]
                .iter()
                .fold(*c.denom(), |acc, a| acc.lcm(a.denom()));
            for (j, a) in row[..src_labels].iter().enumerate() {
                cols[j][i] = to_i64(a.numer() * (d / a.denom()))?;
            }
            offset.push(to_i64(c.numer() * (d / c.denom()))?);
            den.push(to_i64(d)?);
        }
        let hden = emb
            .target
            .factors
            .iter()
            .flat_map(|f| f.rho_pairing().iter())
            .fold(1i128, |acc, h| acc.lcm(h.denom()));
        let heights = emb
            .target
            .factors
            .iter()
            .flat_map(|f| f.rho_pairing().iter())
            .map(|h| to_i64(h.numer() * (hden / h.denom())))
            .collect::<Option<Vec<_>>>()?;
        Some(Layout {
            labels,
            total,
            den,
            offset,
            cols,
            heights,
        })
    }

    fn key(&self, numer: &[i64]) -> Option<Key> {
        let mut k = [0i64; MAX_RANK];
        for i in 0..self.total {
            k[i] = if i < self.labels {
                if numer[i] % self.den[i] != 0 {
                    return None;
                }
                numer[i] / self.den[i]
            } else {
                numer[i]
            };
        }
        Some(k)
    }

    fn height(&self, k: &Key) -> i64 {
        self.heights.iter().zip(k).map(|(h, x)| h * x).sum()
    }

    fn weight(&self, emb: &EmbeddingData, k: &Key) -> ReductiveWeight {
        let mut at = 0;
        let labels = emb
            .target
            .factors
            .iter()
            .map(|f| {
                let w = Weight(k[at..at + f.rank()].to_vec());
                at += f.rank();
                w
            })
            .collect();
        let charges = (self.labels..self.total)
            .map(|i| Q::new(k[i] as i128, self.den[i] as i128))
            .collect();
        ReductiveWeight { labels, charges }
    }
}

/// Weight lists of each factor, as `(labels, multiplicity)`.
fn factor_lists(
    factors: &[crate::rootsys::RootDatum],
    labels: &[Weight],
) -> crate::error::Result<Vec<WeightList>> {
    factors
        .iter()
        .zip(labels)
        .map(|(d, l)| {
            Ok(reps::weight_system(d, l)?
                .entries
                .into_iter()
                .map(|(w, m)| (w.0, m))
                .collect())
        })
        .collect()
}

/// Calls `f` on every combination of one entry per list, passing the summed
/// image vectors and the product multiplicity.
fn for_each_product(
    images: &[&[(Vec<i64>, u64)]],
    acc: &mut Vec<i64>,
    mult: u64,
    f: &mut dyn FnMut(&[i64], u64) -> bool,
) -> bool {
    let Some((first, rest)) = images.split_first() else {
        return f(acc, mult);
    };
    for (img, m) in first.iter() {
        for (a, x) in acc.iter_mut().zip(img) {
            *a += x;
        }
        let ok = for_each_product(rest, acc, mult * m, f);
        for (a, x) in acc.iter_mut().zip(img) {
            *a -= x;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Largest bounding box of restricted numerators accumulated densely.
const MAX_CELLS: i64 = 1 << 20;

/// Sums the per-factor image lists on a dense grid over their bounding box.
/// Output is sorted by numerator.
fn convolve_dense(layout: &Layout, images: &[WeightList]) -> Option<Vec<(Key, i64)>> {
    let n = layout.total;
    let mut lo = layout.offset.clone();
    let mut hi = layout.offset.clone();
    for list in images {
        for i in 0..n {
            lo[i] += list.iter().map(|(img, _)| img[i]).min()?;
            hi[i] += list.iter().map(|(img, _)| img[i]).max()?;
        }
    }
    // Row-major strides, first coordinate most significant.
    let mut strides = vec![0i64; n];
    let mut cells = 1i64;
    for i in (0..n).rev() {
        strides[i] = cells;
        cells = cells.checked_mul(hi[i] - lo[i] + 1)?;
        if cells > MAX_CELLS {
            return None;
        }
    }
    let linear = |v: &[i64]| v.iter().zip(&strides).map(|(x, s)| x * s).sum::<i64>();
    let base: i64 = lo.iter().zip(&strides).map(|(x, s)| x * s).sum();

    let mut grid = vec![0i64; cells as usize];
    let mut current: Vec<(i64, i64)> = vec![(linear(&layout.offset) - base, 1)];
    let mut touched = Vec::new();
    for list in images {
        let shifts: Vec<(i64, i64)> = list.iter().map(|(img, m)| (linear(img), *m as i64)).collect();
        for &(at, k) in &current {
            for &(d, m) in &shifts {
                let cell = &mut grid[(at + d) as usize];
                if *cell == 0 {
                    touched.push(at + d);
                }
                *cell += k * m;
            }
        }
        current.clear();
        for &at in &touched {
            current.push((at, core::mem::take(&mut grid[at as usize])));
        }
        touched.clear();
    }
    current.sort_unstable();
    Some(
        current
            .into_iter()
            .map(|(mut at, m)| {
                let mut k = [0i64; MAX_RANK];
                for i in 0..n {
                    k[i] = lo[i] + at / strides[i];
                    at %= strides[i];
                }
                (k, m)
            })
            .collect(),
    )
}

/// Convolves one factor at a time, merging equal numerators after each step.
fn convolve_sorted(layout: &Layout, images: &[WeightList]) -> Vec<(Key, i64)> {
    let mut start = [0i64; MAX_RANK];
    start[..layout.total].copy_from_slice(&layout.offset);
    let mut merged: Vec<(Key, i64)> = vec![(start, 1)];
    for list in images {
        let mut next = Vec::with_capacity(merged.len() * list.len());
        for (acc, n) in &merged {
            for (img, m) in list {
                let mut k = *acc;
                for (a, x) in k.iter_mut().zip(img) {
                    *a += x;
                }
                next.push((k, n * *m as i64));
            }
        }
        merged = merge(next);
    }
    merged
}

/// Sorts by key and sums multiplicities of equal keys.
fn merge(mut v: Vec<(Key, i64)>) -> Vec<(Key, i64)> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(Key, i64)> = Vec::with_capacity(v.len());
    for (k, m) in v {
        match out.last_mut() {
            Some((last, n)) if *last == k => *n += m,
            _ => out.push((k, m)),
        }
    }
    out
}

/// Restricted weights as sorted `(key, multiplicity)` pairs.
fn restricted(
    emb: &EmbeddingData,
    layout: &Layout,
    highest: &ReductiveWeight,
) -> Result<crate::error::Result<Vec<(Key, i64)>>, Fallback> {
    let source = match factor_lists(&emb.source.factors, &highest.labels) {
        Ok(s) => s,
        Err(e) => return Ok(Err(e)),
    };

    // Per-factor images: each source factor's label block times its columns.
    let mut col = 0;
    let images: Vec<WeightList> = emb
        .source
        .factors
        .iter()
        .zip(&source)
        .map(|(d, list)| {
            let cols = &layout.cols[col..col + d.rank()];
            col += d.rank();
            list.iter()
                .map(|(w, m)| {
                    let mut img = vec![0i64; layout.total];
                    for (x, c) in w.iter().zip(cols) {
                        for (a, ci) in img.iter_mut().zip(c) {
                            *a += x * ci;
                        }
                    }
                    (img, *m)
                })
                .collect()
        })
        .collect();

    let merged = match convolve_dense(layout, &images) {
        Some(m) => m,
        None => convolve_sorted(layout, &images),
    };
    let mut remaining = Vec::with_capacity(merged.len());
    for (numer, m) in merged {
        let Some(k) = layout.key(&numer[..layout.total]) else {
            return Err(Fallback);
        };
        remaining.push((k, m));
    }
    Ok(Ok(merge(remaining)))
}

pub(super) fn decompose(
    emb: &EmbeddingData,
    highest: &ReductiveWeight,
) -> Result<crate::error::Result<Vec<(ReductiveWeight, u64)>>, Fallback> {
    let Some(layout) = Layout::new(emb, highest) else {
        return Err(Fallback);
    };
    let remaining = match restricted(emb, &layout, highest)? {
        Ok(r) => r,
        Err(e) => return Ok(Err(e)),
    };

    let out = match weyl_shifts(&emb.target.factors, layout.labels) {
        Some(shifts) => invert(emb, &layout, &remaining, &shifts)?,
        None => match peel(emb, &layout, remaining)? {
            Ok(out) => out,
            Err(e) => return Ok(Err(e)),
        },
    };
    Ok(Ok(out))
}

/// Largest target Weyl group handled by character inversion.
const MAX_WEYL: usize = 4096;

/// `(rho - w rho, sign of w)` over the target Weyl group, in label
/// coordinates, or `None` if the group is too large.
fn weyl_shifts(factors: &[crate::rootsys::RootDatum], labels: usize) -> Option<Vec<(Key, i64)>> {
    let mut shifts: Vec<(Key, i64)> = vec![([0; MAX_RANK], 1)];
    let mut at = 0;
    for d in factors {
        let rho = d.weyl_vector();
        let mut orbit: Vec<(Weight, i64)> = vec![(rho.clone(), 1)];
        let mut seen = BTreeSet::from([rho.clone()]);
        let mut i = 0;
        while i < orbit.len() {
            let (w, sign) = orbit[i].clone();
            for r in 0..d.rank() {
                let next = d.reflect(&w, r);
                if seen.insert(next.clone()) {
                    orbit.push((next, -sign));
                }
            }
            if shifts.len() * orbit.len() > MAX_WEYL {
                return None;
            }
            i += 1;
        }
        let rho = &rho;
        let orbit = &orbit;
        shifts = shifts
            .iter()
            .flat_map(|(k, s)| {
                orbit.iter().map(move |(w, sign)| {
                    let mut k = *k;
                    for (j, (x, y)) in rho.0.iter().zip(&w.0).enumerate() {
                        k[at + j] = x - y;
                    }
                    (k, s * sign)
                })
            })
            .collect();
        at += d.rank();
    }
    debug_assert_eq!(at, labels);
    Some(shifts)
}

/// Multiplicity of each dominant `mu` as `sum_w sign(w) m(mu + rho - w rho)`,
/// cross-checked against the total dimension.
fn invert(
    emb: &EmbeddingData,
    layout: &Layout,
    remaining: &[(Key, i64)],
    shifts: &[(Key, i64)],
) -> Result<Vec<(ReductiveWeight, u64)>, Fallback> {
    let lookup = |k: &Key| match remaining.binary_search_by(|e| e.0.cmp(k)) {
        Ok(i) => remaining[i].1,
        Err(_) => 0,
    };
    let total: i64 = remaining.iter().map(|e| e.1).sum();
    let mut covered: i64 = 0;
    let mut out = Vec::new();
    for (mu, _) in remaining {
        if mu[..layout.labels].iter().any(|&x| x < 0) {
            continue;
        }
        let mut n = 0;
        for (shift, sign) in shifts {
            let mut k = *mu;
            for (a, x) in k.iter_mut().zip(shift) {
                *a += x;
            }
            n += sign * lookup(&k);
        }
        if n < 0 {
            return Err(Fallback);
        }
        if n > 0 {
            let w = layout.weight(emb, mu);
            let dim: u64 = emb
                .target
                .factors
                .iter()
                .zip(&w.labels)
                .map(|(d, l)| reps::dimension_unchecked(d, l))
                .product();
            covered += n * dim as i64;
            out.push((w, n as u64));
        }
    }
    if covered != total {
        return Err(Fallback);
    }
    // Key order is the weight order: labels compare blockwise and each
    // charge has a fixed positive denominator.
    debug_assert!(out.is_sorted());
    Ok(out)
}

/// Peels highest weights in descending height.
fn peel(
    emb: &EmbeddingData,
    layout: &Layout,
    mut remaining: Vec<(Key, i64)>,
) -> Result<crate::error::Result<Vec<(ReductiveWeight, u64)>>, Fallback> {
    let mut order: Vec<(i64, usize)> = remaining
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (layout.height(k), i))
        .collect();
    order.sort_unstable_by(|a, b| b.cmp(a));

    let mut cache: BTreeMap<(usize, Vec<i64>), WeightList> = BTreeMap::new();
    let mut out: Vec<(ReductiveWeight, u64)> = Vec::new();
    for (_, slot) in order {
        let (top, mult) = remaining[slot];
        if mult == 0 {
            continue;
        }
        if top[..layout.labels].iter().any(|&x| x < 0) {
            return Err(Fallback);
        }
        let mut keys = Vec::with_capacity(emb.target.factors.len());
        let mut at = 0;
        for (f, d) in emb.target.factors.iter().enumerate() {
            let key = (f, top[at..at + d.rank()].to_vec());
            if !cache.contains_key(&key) {
                let ws = match reps::weight_system(d, &Weight(key.1.clone())) {
                    Ok(ws) => ws,
                    Err(e) => return Ok(Err(e)),
                };
                let list = ws
                    .entries
                    .into_iter()
                    .map(|(w, m)| {
                        let mut img = vec![0i64; layout.total];
                        img[at..at + d.rank()].copy_from_slice(&w.0);
                        (img, m)
                    })
                    .collect();
                cache.insert(key.clone(), list);
            }
            keys.push(key);
            at += d.rank();
        }
        let lists: Vec<&[(Vec<i64>, u64)]> = keys.iter().map(|k| cache[k].as_slice()).collect();
        let mut base = vec![0i64; layout.total];
        base[layout.labels..].copy_from_slice(&top[layout.labels..layout.total]);
        let mut consistent = true;
        for_each_product(&lists, &mut base, 1, &mut |w, m| {
            let mut k = [0i64; MAX_RANK];
            k[..layout.total].copy_from_slice(w);
            consistent = match remaining.binary_search_by(|e| e.0.cmp(&k)) {
                Ok(i) => {
                    remaining[i].1 -= mult * m as i64;
                    remaining[i].1 >= 0
                }
                Err(_) => false,
            };
            consistent
        });
        if !consistent {
            return Err(Fallback);
        }
        out.push((layout.weight(emb, &top), mult as u64));
    }
    out.sort();
    Ok(Ok(out))
}
