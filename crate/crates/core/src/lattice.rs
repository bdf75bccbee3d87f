//! Finite lattices: join/meet tables, the structural predicates, and the
//! incidence-algebra element `R_L = f_L μ`.

use std::collections::HashMap;

use serde_json::json;
use thiserror::Error;

use crate::par::{self, Exec};
use crate::poly::ExactPoly;
use crate::poset::Poset;
use crate::report::{CheckReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a lattice: {0} and {1} have no join")]
    NoJoin(usize, usize),
    #[error("not a lattice: {0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("not a lattice: empty poset")]
    Empty,
    #[error("interval [{0}, {1}] is not graded")]
    Ungraded(usize, usize),
    #[error("lattice is not geometric")]
    NotGeometric,
}

/// A poset known to be a lattice, with precomputed join and meet tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    join: Vec<u32>,
    meet: Vec<u32>,
}

fn least_of(p: &Poset, pos: &[usize], set: &fixedbitset::FixedBitSet) -> Option<usize> {
    let z = set.ones().min_by_key(|&z| pos[z])?;
    p.up_set(z).is_superset(set).then_some(z)
}

impl Lattice {
    pub fn new(poset: Poset) -> Result<Lattice, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut pos = vec![0; n];
        for (i, &x) in poset.linear_extension().iter().enumerate() {
            pos[x] = i;
        }
        let mut rpos = vec![0; n];
        for (i, &x) in poset.linear_extension().iter().rev().enumerate() {
            rpos[x] = i;
        }
        let dual = poset.dual();
        let rows: Vec<Result<(Vec<u32>, Vec<u32>), LatticeError>> =
            par::map_range(Exec::default(), n, |x| {
                let mut j = vec![0u32; n];
                let mut m = vec![0u32; n];
                for y in 0..n {
                    let mut u = poset.up_set(x).clone();
                    u.intersect_with(poset.up_set(y));
                    j[y] = least_of(&poset, &pos, &u).ok_or(LatticeError::NoJoin(x, y))? as u32;
                    let mut d = poset.down_set(x).clone();
                    d.intersect_with(poset.down_set(y));
                    m[y] = least_of(&dual, &rpos, &d).ok_or(LatticeError::NoMeet(x, y))? as u32;
                }
                Ok((j, m))
            });
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for r in rows {
            let (j, m) = r?;
            join.extend(j);
            meet.extend(m);
        }
        Ok(Lattice { poset, join, meet })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    pub fn bottom(&self) -> usize {
        self.poset
            .bottom()
            .expect("finite lattice has a least element")
    }

    pub fn top(&self) -> usize {
        self.poset
            .top()
            .expect("finite lattice has a greatest element")
    }

    pub fn rank(&self, x: usize) -> usize {
        self.poset.rank(x)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(self.bottom()).to_vec()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower_covers(self.top()).to_vec()
    }

    pub fn is_graded(&self) -> bool {
        self.poset.is_graded()
    }

    fn rank_inequality(&self, cmp: impl Fn(usize, usize) -> bool + Sync) -> bool {
        let n = self.len();
        self.is_graded()
            && par::all_range(Exec::default(), n, |x| {
                (x..n).all(|y| {
                    let lhs = self.rank(x) + self.rank(y);
                    let rhs = self.rank(self.meet(x, y)) + self.rank(self.join(x, y));
                    cmp(lhs, rhs)
                })
            })
    }

    /// Graded and `ρ(x) + ρ(y) >= ρ(x ∧ y) + ρ(x ∨ y)`.
    pub fn is_semimodular(&self) -> bool {
        self.rank_inequality(|l, r| l >= r)
    }

    pub fn is_modular(&self) -> bool {
        self.rank_inequality(|l, r| l == r)
    }

    /// Every element other than `0̂` is the join of the atoms below it.
    pub fn is_atomistic(&self) -> bool {
        let bot = self.bottom();
        let atoms = self.atoms();
        par::all_range(Exec::default(), self.len(), |x| {
            x == bot
                || atoms
                    .iter()
                    .filter(|&&a| self.poset.le(a, x))
                    .fold(bot, |acc, &a| self.join(acc, a))
                    == x
        })
    }

    pub fn is_geometric(&self) -> bool {
        self.is_semimodular() && self.is_atomistic()
    }

    /// Atom sets `{a atom : a <= x}`, indexed by position in `atoms()`.
    pub fn atom_sets(&self) -> Vec<fixedbitset::FixedBitSet> {
        let atoms = self.atoms();
        (0..self.len())
            .map(|x| {
                let mut s = fixedbitset::FixedBitSet::with_capacity(atoms.len());
                s.extend(
                    atoms
                        .iter()
                        .enumerate()
                        .filter(|&(_, &a)| self.poset.le(a, x))
                        .map(|(i, _)| i),
                );
                s
            })
            .collect()
    }

    /// Geometric and the number of atoms below `x` depends only on `ρ(x)`.
    pub fn is_perfect_matroid_design(&self) -> Result<bool, LatticeError> {
        if !self.is_geometric() {
            return Err(LatticeError::NotGeometric);
        }
        let atoms = self.atoms();
        let mut by_rank: HashMap<usize, usize> = HashMap::new();
        for x in 0..self.len() {
            let c = atoms.iter().filter(|&&a| self.poset.le(a, x)).count();
            if *by_rank.entry(self.rank(x)).or_insert(c) != c {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `R_L(x, y) = Σ_{z ∨ x = y} t^{ρ(z)}`.
    pub fn incidence_r(&self, x: usize, y: usize) -> Option<ExactPoly> {
        if !self.poset.le(x, y) {
            return None;
        }
        let mut c = vec![0i64; self.rank(y) + 1];
        for z in self.poset.down_set(y).ones() {
            if self.join(z, x) == y {
                c[self.rank(z)] += 1;
            }
        }
        Some(ExactPoly::from_ints(c))
    }

    /// All of `R_L(x, ·)` at once: each `z` lands in the fibre of `z ∨ x`.
    pub fn r_table(&self) -> RTable {
        let n = self.len();
        let width = self.poset.height() + 1;
        let rows = par::map_range(Exec::default(), n, |x| {
            let mut row = vec![0i64; n * width];
            for z in 0..n {
                let w = self.join(z, x);
                row[w * width + self.rank(z)] += 1;
            }
            row
        });
        RTable {
            n,
            width,
            data: rows.concat(),
        }
    }
}

/// Coefficient table of `R_L(x, y)` for every pair.
#[derive(Clone, Debug)]
pub struct RTable {
    n: usize,
    width: usize,
    data: Vec<i64>,
}

impl RTable {
    pub fn coeffs(&self, x: usize, y: usize) -> &[i64] {
        let off = (x * self.n + y) * self.width;
        &self.data[off..off + self.width]
    }

    pub fn poly(&self, x: usize, y: usize) -> ExactPoly {
        ExactPoly::from_ints(self.coeffs(x, y).iter().copied())
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn valuation(&self, x: usize, y: usize) -> Option<usize> {
        self.coeffs(x, y).iter().position(|&c| c != 0)
    }
}

/// `R_P(x, y) = Σ_{x <= z <= y} f_P(z) μ(z, y)` with `f_P(z) = Σ_{w <= z} t^{ρ(w)}`.
/// Works for any poset with a least element.
pub fn incidence_r_mobius(p: &Poset, x: usize, y: usize) -> Option<ExactPoly> {
    if !p.le(x, y) {
        return None;
    }
    p.bottom()?;
    let mu = p.mobius_col(y);
    let mut acc = ExactPoly::zero();
    for z in p.up_set(x).ones().filter(|&z| p.le(z, y)) {
        let m = mu[z].expect("z <= y");
        if m != 0 {
            acc = &acc + &p.down_rank_polynomial(z).scale(&crate::poly::rat(m));
        }
    }
    Some(acc)
}

/// Checks `R(x, y) = R(x', y) − Σ_w R(x, w)` over every `x ⋖ x' <= y`,
/// where `w` runs over the lower covers of `y` with `x <= w`, `x' ≰ w`.
pub fn check_rprec(l: &Lattice) -> CheckReport {
    let start = std::time::Instant::now();
    let table = l.r_table();
    let p = l.poset();
    let n = l.len();
    let per_x: Vec<(usize, Vec<(usize, usize, usize)>)> = par::map_range(Exec::default(), n, |x| {
        let mut triples = 0;
        let mut bad = Vec::new();
        for &xp in p.upper_covers(x) {
            for y in p.up_set(xp).ones() {
                triples += 1;
                let mut rhs: Vec<i64> = table.coeffs(xp, y).to_vec();
                for &w in p.lower_covers(y) {
                    if p.le(x, w) && !p.le(xp, w) {
                        for (r, c) in rhs.iter_mut().zip(table.coeffs(x, w)) {
                            *r -= c;
                        }
                    }
                }
                if rhs != table.coeffs(x, y) {
                    bad.push((x, xp, y));
                }
            }
        }
        (triples, bad)
    });
    let triples: usize = per_x.iter().map(|(t, _)| t).sum();
    let failures: Vec<(usize, usize, usize)> = per_x.into_iter().flat_map(|(_, b)| b).collect();
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let witness = json!({
        "triples": triples,
        "failures": failures.iter().take(10).map(|&(x, xp, y)| {
            json!({"x": p.label(x), "x_prime": p.label(xp), "y": p.label(y),
                   "lhs": table.poly(x, y).to_string()})
        }).collect::<Vec<_>>(),
    });
    CheckReport::new("incidence", "", "R(x,y) cover recursion", verdict, witness)
        .with_runtime(start.elapsed())
}

/// `|{z ∈ [x, y] : ρ(z) = j}|` depends only on `(ρ(x), j, ρ(y))`. Needs a
/// least element and every interval graded.
pub fn is_triangular(p: &Poset) -> Result<bool, LatticeError> {
    let bot = p.bottom().ok_or(LatticeError::Empty)?;
    for x in 0..p.len() {
        for &y in p.upper_covers(x) {
            if p.rank(y) != p.rank(x) + 1 {
                return Err(LatticeError::Ungraded(bot, y));
            }
        }
    }
    let n = p.len();
    let profiles: Vec<Vec<((usize, usize), Vec<usize>)>> =
        par::map_range(Exec::default(), n, |x| {
            p.up_set(x)
                .ones()
                .filter(|&y| y != x)
                .map(|y| {
                    let mut counts = vec![0; p.rank(y) - p.rank(x) + 1];
                    let mut s = p.up_set(x).clone();
                    s.intersect_with(p.down_set(y));
                    for z in s.ones() {
                        counts[p.rank(z) - p.rank(x)] += 1;
                    }
                    ((p.rank(x), p.rank(y)), counts)
                })
                .collect()
        });
    let mut seen: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (key, counts) in profiles.into_iter().flatten() {
        match seen.get(&key) {
            Some(c) if *c != counts => return Ok(false),
            Some(_) => {}
            None => {
                seen.insert(key, counts);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Poset {
        // 0 < a < b < 1, 0 < c < 1
        Poset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    fn diamond(m: usize) -> Poset {
        let mut covers = Vec::new();
        for i in 1..=m {
            covers.push((0, i));
            covers.push((i, m + 1));
        }
        Poset::from_covers(m + 2, &covers).unwrap()
    }

    #[test]
    fn non_lattice_detected() {
        // two tops share two lower bounds: bowtie
        let bowtie = Poset::from_covers(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (1, 4),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert!(matches!(
            Lattice::new(bowtie),
            Err(LatticeError::NoJoin(..))
        ));
    }

    #[test]
    fn pentagon_is_not_semimodular() {
        let l = Lattice::new(pentagon()).unwrap();
        assert!(!l.is_semimodular());
        assert!(!l.is_geometric());
        assert!(matches!(
            is_triangular(l.poset()),
            Err(LatticeError::Ungraded(..))
        ));
    }

    #[test]
    fn diamonds_are_modular_geometric() {
        let l = Lattice::new(diamond(3)).unwrap();
        assert!(l.is_modular());
        assert!(l.is_geometric());
        assert!(l.is_perfect_matroid_design().unwrap());
        assert!(is_triangular(l.poset()).unwrap());
        assert!(check_rprec(&l).verdict == Verdict::Pass);
    }

    #[test]
    fn incidence_r_routes_agree() {
        let l = Lattice::new(diamond(3)).unwrap();
        let t = l.r_table();
        for x in 0..l.len() {
            for y in 0..l.len() {
                if l.poset().le(x, y) {
                    let a = l.incidence_r(x, y).unwrap();
                    assert_eq!(a, incidence_r_mobius(l.poset(), x, y).unwrap());
                    assert_eq!(a, t.poly(x, y));
                }
            }
        }
        assert_eq!(l.incidence_r(0, 4).unwrap(), ExactPoly::monomial(2));
        // atom to top: the two other atoms
        assert_eq!(
            l.incidence_r(1, 4).unwrap(),
            ExactPoly::from_ints([0, 2, 1])
        );
    }
}
