//! Root systems and weight-lattice arithmetic for the simple types A–G.
//!
//! Conventions:
//!
//! * Bourbaki node numbering for every family.
//! * `cartan[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`,
//!   so column `j` holds the Dynkin labels of the simple root `alpha_j`, and
//!   `diag(sym) * cartan` is the symmetric Gram matrix of the simple roots.
//! * The invariant form is normalized so that long roots (in particular the
//!   highest root) have squared length exactly 2.
//! * Weights are stored as Dynkin labels (coefficients on the fundamental
//!   weights); roots are stored in simple-root coordinates.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl Family {
    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Dimension of the simple Lie algebra of this type and rank.
    pub fn algebra_dimension(self, rank: usize) -> usize {
        let n = rank;
        match self {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Family::F => 52,
            Family::G => 14,
        }
    }

    /// Tabulated dual Coxeter number.
    pub fn dual_coxeter(self, rank: usize) -> usize {
        let n = rank;
        match self {
            Family::A => n + 1,
            Family::B => 2 * n - 1,
            Family::C => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 9,
            Family::G => 4,
        }
    }
}

/// Parses type names such as `G2`, `b3`, `E8`.
pub fn parse_type(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let mut chars = s.chars();
    let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        Some('D') => Family::D,
        Some('E') => Family::E,
        Some('F') => Family::F,
        Some('G') => Family::G,
        _ => return Err(Error::UnknownType(s.into())),
    };
    let rank = usize::from_str(chars.as_str()).map_err(|_| Error::UnknownType(s.into()))?;
    Ok((family, rank))
}

/// Integer Dynkin labels of a weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A simple Lie algebra's Cartan data and the exact invariant form on its
/// weight lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    sym: Vec<Q>,
    pos_roots: Vec<Vec<i64>>,
    form: Vec<Vec<Q>>,
    /// `form * rho`, i.e. `<omega_i, rho>` for each node.
    rho_pairing: Vec<Q>,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.is_valid_rank(rank) {
            return Err(Error::InvalidType { family, rank });
        }
        let gram = simple_root_gram(family, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = qi(2) * gram[i][j] / gram[i][i];
                        debug_assert!(v.is_integer());
                        *v.numer() as i64
                    })
                    .collect()
            })
            .collect();
        let sym: Vec<Q> = (0..rank).map(|i| gram[i][i] / qi(2)).collect();

        // F = diag(d) * A^{-1}
        let a: Vec<Vec<Q>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| qi(x)).collect())
            .collect();
        let inv = invert(&a);
        let form: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| sym[i] * inv[i][j]).collect())
            .collect();
        let rho_pairing = (0..rank)
            .map(|i| form[i].iter().fold(Q::zero(), |acc, x| acc + x))
            .collect();

        let pos_roots = generate_positive_roots(&cartan);
        Ok(RootDatum {
            family,
            rank,
            cartan,
            sym,
            pos_roots,
            form,
            rho_pairing,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrizer `d_i = (alpha_i, alpha_i) / 2`.
    pub fn sym(&self) -> &[Q] {
        &self.sym
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn pos_roots(&self) -> &[Vec<i64>] {
        &self.pos_roots
    }

    /// `form[i][j] = <omega_i, omega_j>`.
    pub fn form(&self) -> &[Vec<Q>] {
        &self.form
    }

    pub fn weyl_vector(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Dimension of the Lie algebra (`rank + 2 * #positive roots`).
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.pos_roots.len()
    }

    pub fn name(&self) -> alloc::string::String {
        alloc::format!("{}{}", self.family, self.rank)
    }

    pub(crate) fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(())
    }

    /// Exact `w1^T F w2`.
    pub fn inner_product(&self, w1: &Weight, w2: &Weight) -> Result<Q> {
        self.check_rank(w1)?;
        self.check_rank(w2)?;
        Ok(self.inner_unchecked(&w1.0, &w2.0))
    }

    pub(crate) fn inner_unchecked(&self, a: &[i64], b: &[i64]) -> Q {
        let mut acc = Q::zero();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let mut row = Q::zero();
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    row += self.form[i][j] * qi(bj);
                }
            }
            acc += row * qi(ai);
        }
        acc
    }

    /// `<w, rho>`; strictly increases along every positive root.
    pub fn height(&self, w: &[i64]) -> Q {
        w.iter()
            .zip(&self.rho_pairing)
            .fold(Q::zero(), |acc, (&x, r)| acc + *r * qi(x))
    }

    /// `<omega_i, rho>` for each node.
    pub fn rho_pairing(&self) -> &[Q] {
        &self.rho_pairing
    }

    /// Dynkin labels of a root given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * root[j]).sum())
                .collect(),
        )
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    /// `<w, alpha>` for a weight in labels and a root in simple-root
    /// coordinates, using `<omega_i, alpha_j> = delta_ij d_j`.
    pub fn pair_with_root(&self, w: &[i64], root: &[i64]) -> Q {
        (0..self.rank).fold(Q::zero(), |acc, j| {
            acc + self.sym[j] * qi(w[j] * root[j])
        })
    }

    pub fn root_length_sq(&self, root: &[i64]) -> Q {
        let w = self.root_to_weight(root);
        self.inner_unchecked(&w.0, &w.0)
    }

    /// Highest root in simple-root coordinates.
    pub fn highest_root(&self) -> &[i64] {
        self.pos_roots.last().expect("nonempty root system")
    }

    /// Highest root in Dynkin labels (the adjoint highest weight).
    pub fn adjoint_weight(&self) -> Weight {
        self.root_to_weight(self.highest_root())
    }

    /// `1 + <rho, theta^vee>`, computed from the root data.
    pub fn dual_coxeter_from_roots(&self) -> Q {
        let theta = self.highest_root();
        let len = self.root_length_sq(theta);
        Q::one() + qi(2) * self.pair_with_root(&self.weyl_vector().0, theta) / len
    }

    /// Simple reflection `s_i` under the ordinary action.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        Weight(
            w.0.iter()
                .enumerate()
                .map(|(k, &x)| x - c * self.cartan[k][i])
                .collect(),
        )
    }

    /// Reduces `w` into the dominant chamber under the ordinary action.
    /// Returns the dominant representative and `det` of the Weyl element used
    /// (`+1` or `-1`). For weights on a wall the representative is still
    /// unique; the sign then depends on the reduction path and only the
    /// dominant weight is meaningful.
    pub fn to_dominant(&self, w: &Weight) -> Result<(Weight, i8)> {
        self.check_rank(w)?;
        Ok(self.to_dominant_unchecked(w))
    }

    pub(crate) fn to_dominant_unchecked(&self, w: &Weight) -> (Weight, i8) {
        let mut cur = w.clone();
        let mut sign = 1i8;
        while let Some(i) = cur.0.iter().position(|&x| x < 0) {
            cur = self.reflect(&cur, i);
            sign = -sign;
        }
        (cur, sign)
    }

    /// Chamber reduction under the shifted action `w . x = w(x + rho) - rho`.
    /// Returns `None` when `w + rho` lies on a wall, i.e. when some reflection
    /// fixes it and the alternating sum over the orbit vanishes.
    pub fn to_dominant_shifted(&self, w: &Weight) -> Result<Option<(Weight, i8)>> {
        self.check_rank(w)?;
        let shifted = w.add(&self.weyl_vector());
        let (dom, sign) = self.to_dominant_unchecked(&shifted);
        if dom.0.contains(&0) {
            return Ok(None);
        }
        Ok(Some((dom.sub(&self.weyl_vector()), sign)))
    }
}

fn simple_root_gram(family: Family, n: usize) -> Vec<Vec<Q>> {
    let mut g = vec![vec![Q::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match family {
        Family::A | Family::B | Family::C => {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = qi(2);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, qi(-1));
            }
            if family == Family::B {
                g[n - 1][n - 1] = qi(1);
            }
            if family == Family::C {
                for (i, row) in g.iter_mut().enumerate().take(n - 1) {
                    row[i] = qi(1);
                }
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, q(-1, 2));
                }
                link(&mut g, n - 2, n - 1, qi(-1));
            }
        }
        Family::D => {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = qi(2);
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, qi(-1));
            }
            link(&mut g, n - 3, n - 1, qi(-1));
        }
        Family::E => {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = qi(2);
            }
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            link(&mut g, 0, 2, qi(-1));
            link(&mut g, 1, 3, qi(-1));
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, qi(-1));
            }
        }
        Family::F => {
            g[0][0] = qi(2);
            g[1][1] = qi(2);
            g[2][2] = qi(1);
            g[3][3] = qi(1);
            link(&mut g, 0, 1, qi(-1));
            link(&mut g, 1, 2, qi(-1));
            link(&mut g, 2, 3, q(-1, 2));
        }
        Family::G => {
            g[0][0] = q(2, 3);
            g[1][1] = qi(2);
            link(&mut g, 0, 1, qi(-1));
        }
    }
    g
}

/// Gauss–Jordan inverse over the rationals. The input is always a
/// nonsingular Cartan matrix.
fn invert(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Closure of the simple roots under root strings: `beta + alpha_i` is a root
/// iff `q = p - <beta, alpha_i^vee> > 0`, where `p` is the length of the
/// `alpha_i`-string below `beta`.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut ordered = Vec::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    for r in &layer {
        all.insert(r.clone());
    }
    while !layer.is_empty() {
        ordered.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let label: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - label > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        for r in &next {
            all.insert(r.clone());
        }
        layer = next.into_iter().collect();
    }
    ordered
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types(max_rank: usize) -> Vec<(Family, usize)> {
        let mut v = Vec::new();
        for n in 1..=max_rank {
            for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
                if f.is_valid_rank(n) {
                    v.push((f, n));
                }
            }
        }
        v
    }

    #[test]
    fn rejects_invalid_types() {
        for (f, n) in [(Family::B, 1), (Family::C, 2), (Family::D, 3), (Family::E, 5), (Family::G, 3), (Family::A, 0)] {
            let err = RootDatum::new(f, n).unwrap_err();
            assert_eq!(err, Error::InvalidType { family: f, rank: n });
            assert!(alloc::format!("{err}").contains("E6, E7, E8"));
        }
    }

    #[test]
    fn parses_type_names() {
        assert_eq!(parse_type("G2").unwrap(), (Family::G, 2));
        assert_eq!(parse_type("b3").unwrap(), (Family::B, 3));
        assert!(parse_type("X3").is_err());
        assert!(parse_type("A").is_err());
    }

    #[test]
    fn a1_form_and_roots() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(d.pos_roots().len(), 1);
        assert_eq!(d.form()[0][0], q(1, 2));
        let w = Weight(vec![1]);
        assert_eq!(d.inner_product(&w, &w).unwrap(), q(1, 2));
    }

    #[test]
    fn g2_form() {
        let d = RootDatum::new(Family::G, 2).unwrap();
        assert_eq!(d.pos_roots().len(), 6);
        assert_eq!(d.form()[0][0], q(2, 3));
        let w1 = Weight::fundamental(2, 0);
        assert_eq!(d.inner_product(&w1, &d.weyl_vector()).unwrap(), q(5, 3));
        assert_eq!(d.sym(), &[q(1, 3), qi(1)]);
    }

    #[test]
    fn b3_root_count() {
        assert_eq!(RootDatum::new(Family::B, 3).unwrap().pos_roots().len(), 9);
    }

    #[test]
    fn structural_invariants_all_types() {
        for (f, n) in all_types(8) {
            let d = RootDatum::new(f, n).unwrap();
            // |pos_roots| from the standard algebra dimension
            assert_eq!(d.pos_roots().len(), (f.algebra_dimension(n) - n) / 2, "{f}{n}");
            // diag(d) * cartan symmetric
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(d.sym()[i] * qi(d.cartan()[i][j]), d.sym()[j] * qi(d.cartan()[j][i]));
                }
            }
            // F symmetric
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(d.form()[i][j], d.form()[j][i]);
                    assert!(d.form()[i][j] > Q::zero());
                }
            }
            // theta has squared length 2, every root length in {2, 1, 2/3}
            assert_eq!(d.root_length_sq(d.highest_root()), qi(2), "{f}{n}");
            let mut max = Q::zero();
            for r in d.pos_roots() {
                let l = d.root_length_sq(r);
                assert!(l == qi(2) || l == qi(1) || l == q(2, 3), "{f}{n} {r:?}");
                if l > max {
                    max = l;
                }
            }
            assert_eq!(max, qi(2));
            // duality <omega_i, alpha_j^vee> = delta_ij
            for i in 0..n {
                for j in 0..n {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    let a = d.simple_root(j);
                    let len = d.inner_product(&a, &a).unwrap();
                    let v = qi(2) * d.inner_product(&Weight::fundamental(n, i), &a).unwrap() / len;
                    assert_eq!(v, if i == j { Q::one() } else { Q::zero() });
                }
            }
            // dual Coxeter number
            assert_eq!(d.dual_coxeter_from_roots(), qi(f.dual_coxeter(n) as i64), "{f}{n}");
        }
    }

    #[test]
    fn to_dominant_examples() {
        let a1 = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(a1.to_dominant(&Weight(vec![-2])).unwrap(), (Weight(vec![2]), -1));
        assert_eq!(a1.to_dominant(&Weight(vec![3])).unwrap(), (Weight(vec![3]), 1));
        let a2 = RootDatum::new(Family::A, 2).unwrap();
        assert_eq!(a2.to_dominant(&Weight(vec![-1, 2])).unwrap().0, Weight(vec![1, 1]));
        assert!(a2.to_dominant(&Weight(vec![1])).is_err());
    }

    #[test]
    fn shifted_action() {
        let a1 = RootDatum::new(Family::A, 1).unwrap();
        // -1 + rho = 0 sits on the wall
        assert_eq!(a1.to_dominant_shifted(&Weight(vec![-1])).unwrap(), None);
        // s . (-3) = 1
        assert_eq!(a1.to_dominant_shifted(&Weight(vec![-3])).unwrap(), Some((Weight(vec![1]), -1)));
    }
}
