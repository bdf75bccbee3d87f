//! Finite posets on dense indices `0..n`, with the order relation cached
//! as bit rows.

mod io;
mod iso;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::par::{self, Exec};
use crate::poly::{binomial_t, ExactPoly, Rat};

pub use io::{read_poset, write_poset};
pub use iso::{find_isomorphism, is_isomorphic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("cover relation contains a cycle")]
    Cycle,
    #[error("poset has no least element")]
    NoLeastElement,
    #[error("poset has no greatest element")]
    NoGreatestElement,
    #[error("elements {0} and {1} are not in order")]
    NotBelow(usize, usize),
    #[error("poset needs at least {0} elements")]
    TooSmall(usize),
    #[error("duplicate set in family")]
    DuplicateSet,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite poset. Immutable once built; all caches are filled eagerly.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    rank: Vec<usize>,
    topo: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds from cover pairs `(x, y)` meaning `y` covers `x`. Redundant
    /// pairs are dropped by transitive reduction.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(x, y) in covers {
            for v in [x, y] {
                if v >= n {
                    return Err(PosetError::OutOfRange(v));
                }
            }
            if x == y {
                return Err(PosetError::Cycle);
            }
            succ[x].push(y);
            indeg[y] += 1;
        }
        // Kahn's algorithm doubles as the cycle check.
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(PosetError::Cycle);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(v);
            for &w in &succ[v] {
                row.union_with(&up[w]);
            }
            up[v] = row;
        }
        Ok(Self::from_up_sets(up))
    }

    /// Builds from reflexive, transitive, antisymmetric up-set rows
    /// (`up[x]` contains every `y >= x`). Not validated.
    pub(crate) fn from_up_sets(up: Vec<FixedBitSet>) -> Poset {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        // x < y forces |down(x)| < |down(y)|, so this is a linear extension.
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&x| (down[x].count_ones(..), x));
        let mut pos = vec![0; n];
        for (i, &x) in topo.iter().enumerate() {
            pos[x] = i;
        }
        let up_covers = par::map_range(Exec::default(), n, |x| {
            let mut strict: Vec<usize> = up[x].ones().filter(|&y| y != x).collect();
            strict.sort_by_key(|&y| pos[y]);
            let mut reached = FixedBitSet::with_capacity(n);
            let mut covers = Vec::new();
            for z in strict {
                if !reached.contains(z) {
                    covers.push(z);
                    reached.union_with(&up[z]);
                }
            }
            covers.sort_unstable();
            covers
        });
        let mut down_covers = vec![Vec::new(); n];
        for (x, cs) in up_covers.iter().enumerate() {
            for &y in cs {
                down_covers[y].push(x);
            }
        }
        let mut rank = vec![0usize; n];
        for &x in &topo {
            rank[x] = down_covers[x]
                .iter()
                .map(|&y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        Poset {
            n,
            up_covers,
            down_covers,
            up,
            down,
            rank,
            topo,
            labels: None,
        }
    }

    /// `x <= y` given as a predicate. The predicate must define a partial
    /// order.
    pub fn from_relation(n: usize, le: impl Fn(usize, usize) -> bool + Sync + Send) -> Poset {
        let up = par::map_range(Exec::default(), n, |x| {
            let mut row = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if x == y || le(x, y) {
                    row.insert(y);
                }
            }
            row
        });
        Self::from_up_sets(up)
    }

    /// Family of distinct sets ordered by inclusion.
    pub fn from_sets(sets: &[FixedBitSet]) -> Result<Poset, PosetError> {
        let distinct: BTreeSet<&FixedBitSet> = sets.iter().collect();
        if distinct.len() != sets.len() {
            return Err(PosetError::DuplicateSet);
        }
        Ok(Self::from_relation(sets.len(), |x, y| {
            sets[x].is_subset(&sets[y])
        }))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of `x`, falling back to its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn find_label(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// `{y : y >= x}`
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = (0..self.n)
            .flat_map(|x| self.up_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn cover_count(&self) -> usize {
        self.up_covers.iter().map(Vec::len).sum()
    }

    /// Length of the longest chain ending at `x`.
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Quasi-rank of the poset (0 for the empty poset).
    pub fn height(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// A linear extension.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn elements_of_rank(&self, k: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.rank[x] == k).collect()
    }

    /// Element counts per quasi-rank, `0..=height`.
    pub fn rank_profile(&self) -> Vec<usize> {
        let mut v = vec![0; if self.n == 0 { 0 } else { self.height() + 1 }];
        for &r in &self.rank {
            v[r] += 1;
        }
        v
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.down_covers[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.up_covers[x].is_empty())
            .collect()
    }

    /// Least element, if any.
    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements()[..] {
            [b] => Some(b),
            _ => None,
        }
    }

    /// Greatest element, if any.
    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements()[..] {
            [t] => Some(t),
            _ => None,
        }
    }

    /// Every cover raises the quasi-rank by exactly one.
    pub fn is_graded(&self) -> bool {
        (0..self.n).all(|x| {
            self.up_covers[x]
                .iter()
                .all(|&y| self.rank[y] == self.rank[x] + 1)
        })
    }

    /// Induced subposet on `elems` (in the given order). Labels carry over;
    /// unlabelled parents contribute their indices as labels.
    pub fn induced(&self, elems: &[usize]) -> Poset {
        let m = elems.len();
        let up = elems
            .iter()
            .map(|&x| {
                let mut row = FixedBitSet::with_capacity(m);
                for (j, &y) in elems.iter().enumerate() {
                    if self.le(x, y) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self::from_up_sets(up).with_labels(elems.iter().map(|&x| self.label(x)).collect())
    }

    /// `[x, y]`
    pub fn interval(&self, x: usize, y: usize) -> Result<Poset, PosetError> {
        if !self.le(x, y) {
            return Err(PosetError::NotBelow(x, y));
        }
        let mut s = self.up[x].clone();
        s.intersect_with(&self.down[y]);
        Ok(self.induced(&s.ones().collect::<Vec<_>>()))
    }

    /// `⟨y⟩ = {z : z <= y}`
    pub fn principal_down(&self, y: usize) -> Poset {
        self.induced(&self.down[y].ones().collect::<Vec<_>>())
    }

    /// Elements strictly between the bottom and top.
    pub fn proper_part(&self) -> Result<Poset, PosetError> {
        let b = self.bottom().ok_or(PosetError::NoLeastElement)?;
        let t = self.top().ok_or(PosetError::NoGreatestElement)?;
        let keep: Vec<usize> = (0..self.n).filter(|&x| x != b && x != t).collect();
        Ok(self.induced(&keep))
    }

    pub fn without(&self, x: usize) -> Poset {
        let keep: Vec<usize> = (0..self.n).filter(|&y| y != x).collect();
        self.induced(&keep)
    }

    /// Subposet on elements whose quasi-rank lies in `s`.
    pub fn rank_selected(&self, s: &BTreeSet<usize>) -> Poset {
        let keep: Vec<usize> = (0..self.n).filter(|&x| s.contains(&self.rank[x])).collect();
        self.induced(&keep)
    }

    /// `τ(P)`: drops quasi-rank `ρ(P) − 1`.
    pub fn truncation(&self) -> Poset {
        let h = self.height();
        if h == 0 {
            return self.clone();
        }
        let s: BTreeSet<usize> = (0..h).filter(|&k| k + 1 != h).chain([h]).collect();
        self.rank_selected(&s)
    }

    pub fn dual(&self) -> Poset {
        let p = Self::from_up_sets(self.down.clone());
        match &self.labels {
            Some(l) => p.with_labels(l.clone()),
            None => p,
        }
    }

    /// `P ⊕ Q`: every element of `P` below every element of `Q`. Indices of
    /// `Q` are shifted by `|P|`.
    pub fn ordinal_sum(p: &Poset, q: &Poset) -> Poset {
        let (a, b) = (p.n, q.n);
        let n = a + b;
        let mut up = Vec::with_capacity(n);
        for x in 0..a {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(p.up[x].ones());
            row.insert_range(a..n);
            up.push(row);
        }
        for y in 0..b {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(q.up[y].ones().map(|z| z + a));
            up.push(row);
        }
        let labels = (0..a)
            .map(|x| p.label(x))
            .chain((0..b).map(|y| q.label(y)))
            .collect();
        Self::from_up_sets(up).with_labels(labels)
    }

    /// Componentwise order on pairs; `(i, j)` sits at index `i·|Q| + j`.
    pub fn direct_product(p: &Poset, q: &Poset) -> Poset {
        let (a, b) = (p.n, q.n);
        let n = a * b;
        let up = (0..n)
            .map(|ij| {
                let (i, j) = (ij / b, ij % b);
                let mut row = FixedBitSet::with_capacity(n);
                for k in p.up[i].ones() {
                    row.extend(q.up[j].ones().map(|l| k * b + l));
                }
                row
            })
            .collect();
        let labels = (0..n)
            .map(|ij| format!("({},{})", p.label(ij / b), q.label(ij % b)))
            .collect();
        Self::from_up_sets(up).with_labels(labels)
    }

    /// Chain counts `c_0, c_1, …` (dynamic programme over strict down-sets).
    pub fn chain_profile(&self) -> ChainProfile {
        self.chain_profile_with(Exec::default())
    }

    pub fn chain_profile_with(&self, exec: Exec) -> ChainProfile {
        match self.chain_profile_u128(exec) {
            Some(c) => ChainProfile {
                counts: c.into_iter().map(BigInt::from).collect(),
            },
            None => self.chain_profile_big(exec),
        }
    }

    fn chain_profile_u128(&self, exec: Exec) -> Option<Vec<u128>> {
        let mut counts = vec![1u128];
        if self.n == 0 {
            return Some(counts);
        }
        let mut level = vec![1u128; self.n];
        counts.push(self.n as u128);
        loop {
            let next: Vec<Option<u128>> = par::map_range(exec, self.n, |x| {
                self.down[x]
                    .ones()
                    .filter(|&y| y != x)
                    .try_fold(0u128, |acc, y| acc.checked_add(level[y]))
            });
            let next: Vec<u128> = next.into_iter().collect::<Option<_>>()?;
            let total = next.iter().try_fold(0u128, |acc, &v| acc.checked_add(v))?;
            if total == 0 {
                break;
            }
            counts.push(total);
            level = next;
        }
        Some(counts)
    }

    fn chain_profile_big(&self, exec: Exec) -> ChainProfile {
        let mut counts = vec![BigInt::from(1)];
        if self.n == 0 {
            return ChainProfile { counts };
        }
        let mut level = vec![BigInt::from(1); self.n];
        counts.push(BigInt::from(self.n));
        loop {
            let next: Vec<BigInt> = par::map_range(exec, self.n, |x| {
                self.down[x]
                    .ones()
                    .filter(|&y| y != x)
                    .map(|y| &level[y])
                    .sum()
            });
            let total: BigInt = next.iter().sum();
            if total.is_zero() {
                break;
            }
            counts.push(total);
            level = next;
        }
        ChainProfile { counts }
    }

    /// `c_P(t) = Σ_k c_k(P) t^k`.
    pub fn chain_polynomial(&self) -> ExactPoly {
        self.chain_profile().to_poly()
    }

    /// `f_P(t) = Σ_x t^{ρ(x)}`; needs a least element.
    pub fn quasi_rank_generating_polynomial(&self) -> Result<ExactPoly, PosetError> {
        self.bottom().ok_or(PosetError::NoLeastElement)?;
        Ok(rank_poly(self.rank.iter().copied()))
    }

    /// `Σ_{z <= y} t^{ρ(z)}`
    pub fn down_rank_polynomial(&self, y: usize) -> ExactPoly {
        rank_poly(self.down[y].ones().map(|z| self.rank[z]))
    }

    /// `μ(x, y)` for every `y >= x` (`None` elsewhere).
    pub fn mobius_row(&self, x: usize) -> Vec<Option<i64>> {
        let mut mu = vec![None; self.n];
        let mut above: Vec<usize> = self.up[x].ones().collect();
        above.sort_by_key(|&y| self.down[y].count_ones(..));
        for y in above {
            if y == x {
                mu[y] = Some(1);
                continue;
            }
            let s: i64 = self.down[y]
                .ones()
                .filter(|&z| z != y && self.le(x, z))
                .map(|z| mu[z].expect("interval processed in order"))
                .sum();
            mu[y] = Some(-s);
        }
        mu
    }

    /// `μ(z, y)` for every `z <= y` (`None` elsewhere).
    pub fn mobius_col(&self, y: usize) -> Vec<Option<i64>> {
        let mut mu = vec![None; self.n];
        let mut below: Vec<usize> = self.down[y].ones().collect();
        below.sort_by_key(|&z| self.up[z].count_ones(..));
        for z in below {
            if z == y {
                mu[z] = Some(1);
                continue;
            }
            let s: i64 = self.up[z]
                .ones()
                .filter(|&w| w != z && self.le(w, y))
                .map(|w| mu[w].expect("interval processed in order"))
                .sum();
            mu[z] = Some(-s);
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        if !self.le(x, y) {
            return Err(PosetError::NotBelow(x, y));
        }
        Ok(self.mobius_row(x)[y].unwrap())
    }

    /// `Z_P(n) = Σ_k w_k C(n, k+1)` as a polynomial in `n`.
    pub fn zeta_polynomial(&self) -> Result<ExactPoly, PosetError> {
        self.bottom().ok_or(PosetError::NoLeastElement)?;
        self.top().ok_or(PosetError::NoGreatestElement)?;
        if self.n == 1 {
            return Ok(ExactPoly::one());
        }
        let w = self.proper_part()?.chain_profile();
        let mut z = ExactPoly::zero();
        for (k, c) in w.counts.iter().enumerate() {
            z = &z + &binomial_t(k + 1).scale(&Rat::from_integer(c.clone()));
        }
        Ok(z)
    }

    /// `p_P(t) = Σ_j |{0̂ = x_0 < … < x_{j+1} = 1̂}| t^{j+1}`.
    pub fn p_polynomial(&self) -> Result<ExactPoly, PosetError> {
        self.bottom().ok_or(PosetError::NoLeastElement)?;
        self.top().ok_or(PosetError::NoGreatestElement)?;
        if self.n < 2 {
            return Err(PosetError::TooSmall(2));
        }
        Ok(self.proper_part()?.chain_polynomial().shift(1))
    }
}

fn rank_poly(ranks: impl Iterator<Item = usize>) -> ExactPoly {
    let mut c: Vec<i64> = Vec::new();
    for r in ranks {
        if c.len() <= r {
            c.resize(r + 1, 0);
        }
        c[r] += 1;
    }
    ExactPoly::from_ints(c)
}

/// Chain counts `c_0(P), c_1(P), …` with trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainProfile {
    pub counts: Vec<BigInt>,
}

impl ChainProfile {
    pub fn to_poly(&self) -> ExactPoly {
        ExactPoly::from_bigints(self.counts.iter().cloned())
    }

    pub fn as_u64(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(|c| c.to_u64()).collect()
    }
}

/// `f ◇ g = ℰ(ℰ⁻¹(f)·ℰ⁻¹(g))` where `ℰ` sends `C(t, k)` to `t^k`.
pub fn diamond_product(f: &ExactPoly, g: &ExactPoly) -> ExactPoly {
    let ef = ExactPoly::from_binomial_basis(f.coeffs());
    let eg = ExactPoly::from_binomial_basis(g.coeffs());
    ExactPoly::new((&ef * &eg).to_binomial_basis())
}

/// `((1 + t)^2 / t) · p`, the chain polynomial recovered from `p_P`.
pub fn chain_from_p_polynomial(p: &ExactPoly) -> Option<ExactPoly> {
    let num = &ExactPoly::from_ints([1, 1]).pow(2) * p;
    num.div_exact(&ExactPoly::monomial(1))
}

/// A chain of `n` elements `0 < 1 < … < n−1`.
pub fn chain(n: usize) -> Poset {
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_covers(n, &covers).expect("chain is acyclic")
}

/// Coefficient helper for tests and reports.
pub fn poly_ints(p: &ExactPoly) -> Vec<i64> {
    p.coeffs()
        .iter()
        .map(|c| c.to_integer().to_i64().expect("small integer coefficient"))
        .collect()
}

/// `(1 + t)^k`
pub fn one_plus_t_pow(k: u32) -> ExactPoly {
    ExactPoly::from_ints([1, 1]).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn boolean(n: usize) -> Poset {
        let sets: Vec<FixedBitSet> = (0..1usize << n)
            .map(|m| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|i| m >> i & 1 == 1));
                s
            })
            .collect();
        Poset::from_sets(&sets).unwrap()
    }

    #[test]
    fn builds_and_reduces_covers() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.ranks(), &[0, 1, 2]);
        assert!(p.le(0, 2));
        assert_eq!(
            Poset::from_covers(2, &[(0, 1), (1, 0)]).unwrap_err(),
            PosetError::Cycle
        );
        assert_eq!(
            Poset::from_covers(2, &[(0, 5)]).unwrap_err(),
            PosetError::OutOfRange(5)
        );
    }

    #[test]
    fn chain_polynomial_examples() {
        assert_eq!(poly_ints(&boolean(2).chain_polynomial()), vec![1, 4, 5, 2]);
        assert_eq!(poly_ints(&chain(2).chain_polynomial()), vec![1, 2, 1]);
        assert_eq!(poly_ints(&chain(3).chain_polynomial()), vec![1, 3, 3, 1]);
        assert_eq!(
            poly_ints(&Poset::from_covers(0, &[]).unwrap().chain_polynomial()),
            vec![1]
        );
        // rank-2 lattice with m = 3 coatoms: (1 + 3t)(1 + t)^2
        let m3 = Poset::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let expect = &ExactPoly::from_ints([1, 3]) * &one_plus_t_pow(2);
        assert_eq!(m3.chain_polynomial(), expect);
    }

    #[test]
    fn sequential_and_parallel_dp_agree() {
        let b = boolean(5);
        assert_eq!(
            b.chain_profile_with(Exec::Sequential),
            b.chain_profile_with(Exec::Parallel)
        );
        assert_eq!(b.chain_profile_big(Exec::Sequential), b.chain_profile());
    }

    #[test]
    fn quasi_rank_polynomial() {
        assert_eq!(
            boolean(3).quasi_rank_generating_polynomial().unwrap(),
            one_plus_t_pow(3)
        );
        assert_eq!(
            chain(1).quasi_rank_generating_polynomial().unwrap(),
            ExactPoly::one()
        );
        let v = Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            v.quasi_rank_generating_polynomial(),
            Err(PosetError::NoLeastElement)
        );
    }

    #[test]
    fn rank_selection_and_truncation() {
        let b3 = boolean(3);
        let t = b3.rank_selected(&[0, 1, 3].into_iter().collect());
        assert_eq!(t.rank_profile(), vec![1, 3, 1]);
        assert!(is_isomorphic(&t, &b3.truncation()));
        assert!(is_isomorphic(&b3.rank_selected(&(0..4).collect()), &b3));
        assert!(b3.rank_selected(&[7].into_iter().collect()).is_empty());
    }

    #[test]
    fn dual_examples() {
        let b2 = boolean(2);
        assert!(is_isomorphic(&b2.dual(), &b2));
        assert!(is_isomorphic(&chain(3).dual(), &chain(3)));
        let v = Poset::from_covers(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert!(is_isomorphic(&v.dual().dual(), &v));
        assert_eq!(v.dual().chain_polynomial(), v.chain_polynomial());
    }

    #[test]
    fn sums_and_products() {
        assert!(is_isomorphic(
            &Poset::ordinal_sum(&chain(1), &chain(1)),
            &chain(2)
        ));
        let b1 = boolean(1);
        let prod = Poset::direct_product(&b1, &b1);
        assert!(is_isomorphic(&prod, &boolean(2)));
        let p = Poset::direct_product(&boolean(2), &chain(3));
        assert_eq!(p.len(), 12);
    }

    #[test]
    fn mobius_examples() {
        let b3 = boolean(3);
        let (bot, top) = (b3.bottom().unwrap(), b3.top().unwrap());
        assert_eq!(b3.mobius(bot, top).unwrap(), -1);
        assert_eq!(boolean(4).mobius(0, 15).unwrap(), 1);
        assert_eq!(b3.mobius(3, 3).unwrap(), 1);
        let col = b3.mobius_col(top);
        assert_eq!(col[bot], b3.mobius_row(bot)[top]);
        assert_eq!(chain(3).mobius(0, 2).unwrap(), 0);
        let v = Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(v.mobius(1, 2), Err(PosetError::NotBelow(1, 2)));
    }

    #[test]
    fn zeta_and_p_polynomials() {
        let n = ExactPoly::monomial(1);
        assert_eq!(chain(2).zeta_polynomial().unwrap(), n);
        let expect = &n + &binomial_t(2).scale(&rat(2));
        assert_eq!(boolean(2).zeta_polynomial().unwrap(), expect);
        assert_eq!(
            chain(2).p_polynomial().unwrap(),
            ExactPoly::from_ints([0, 1])
        );
        let pb2 = boolean(2).p_polynomial().unwrap();
        assert_eq!(pb2, ExactPoly::from_ints([0, 1, 2]));
        assert_eq!(
            chain_from_p_polynomial(&pb2).unwrap(),
            boolean(2).chain_polynomial()
        );
        assert_eq!(chain(1).p_polynomial(), Err(PosetError::TooSmall(2)));
        assert_eq!(chain(1).zeta_polynomial().unwrap(), ExactPoly::one());
        for p in [boolean(3), chain(4)] {
            assert_eq!(p.zeta_polynomial().unwrap().eval(&rat(1)), rat(1));
        }
    }

    #[test]
    fn diamond_examples() {
        let t = ExactPoly::monomial(1);
        assert_eq!(diamond_product(&t, &t), ExactPoly::from_ints([0, 1, 2]));
        let f = ExactPoly::from_ints([0, 1, 6, 6]);
        assert_eq!(diamond_product(&ExactPoly::one(), &f), f);
    }
}
