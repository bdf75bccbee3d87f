use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{bitset, k_subsets, ConstructError, FlatLattice};
use crate::lattice::Lattice;
use crate::poset::Poset;

fn clause(clause: &'static str, msg: impl Into<String>) -> ConstructError {
    ConstructError::Clause {
        clause,
        msg: msg.into(),
    }
}

/// `P(H, y, d)`: the elements of `⟨y⟩` of quasi-rank at most `d − 1`, then
/// `H` as the new rank `d`, then `y` on top. Indices refer to `p`; the
/// result keeps the labels of `p`.
pub fn paving_construction(
    p: &Poset,
    h: &[usize],
    y: usize,
    d: usize,
) -> Result<Poset, ConstructError> {
    if y >= p.len() || h.iter().any(|&x| x >= p.len()) {
        return Err(ConstructError::Param("element out of range".into()));
    }
    p.bottom()
        .ok_or_else(|| ConstructError::Param("host needs a least element".into()))?;
    let n = p.rank(y);
    if d < 1 || d >= n {
        return Err(ConstructError::Param(format!(
            "need 1 <= d < ρ(y) = {n}, got d = {d}"
        )));
    }
    if let Some(&x) = h.iter().find(|&&x| !p.le(x, y)) {
        return Err(ConstructError::Param(format!(
            "{} is not below y",
            p.label(x)
        )));
    }
    if h.contains(&y) {
        return Err(clause("i", "y belongs to H"));
    }
    if let Some(&x) = h.iter().find(|&&x| p.rank(x) < d) {
        return Err(clause("ii", format!("ρ({}) < {d}", p.label(x))));
    }
    for (i, &a) in h.iter().enumerate() {
        for &b in &h[i + 1..] {
            if a == b || p.comparable(a, b) {
                return Err(clause(
                    "iii",
                    format!("{} and {} are comparable", p.label(a), p.label(b)),
                ));
            }
        }
    }
    let low: Vec<usize> = p.down_set(y).ones().filter(|&x| p.rank(x) < d).collect();
    if let Some(&x) = low.iter().find(|&&x| !h.iter().any(|&hh| p.le(x, hh))) {
        return Err(clause(
            "iv",
            format!("{} lies below no member of H", p.label(x)),
        ));
    }
    let mut keep = low;
    keep.extend_from_slice(h);
    keep.push(y);
    Ok(p.induced(&keep))
}

/// An `s-(n, k, λ)` design on `V = [n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub n: usize,
    pub blocks: Vec<FixedBitSet>,
    pub s: usize,
    pub k: usize,
    pub lambda: usize,
}

impl Design {
    pub fn new(n: usize, blocks: Vec<FixedBitSet>, s: usize) -> Result<Design, ConstructError> {
        let bad = |m: String| Err(ConstructError::InvalidDesign(m));
        if blocks.is_empty() {
            return bad("no blocks".into());
        }
        let k = blocks[0].count_ones(..);
        if blocks
            .iter()
            .any(|b| b.count_ones(..) != k || b.ones().any(|i| i >= n))
        {
            return bad("blocks must be k-subsets of [n]".into());
        }
        let distinct: HashSet<Vec<usize>> = blocks.iter().map(|b| b.ones().collect()).collect();
        if distinct.len() != blocks.len() {
            return bad("repeated block".into());
        }
        if s > k || k >= n {
            return bad(format!("need s <= k < n, got s = {s}, k = {k}, n = {n}"));
        }
        let mut lambda = None;
        for a in k_subsets(n, s) {
            let c = blocks.iter().filter(|b| a.is_subset(b)).count();
            match lambda {
                None => lambda = Some(c),
                Some(l) if l != c => return bad(format!("s-sets lie in {l} and {c} blocks")),
                _ => {}
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.grow(n);
                b
            })
            .collect();
        Ok(Design {
            n,
            blocks,
            s,
            k,
            lambda: lambda.unwrap_or(0),
        })
    }

    /// `([n], all k-subsets)`, a `(k−1)-(n, k, n−k+1)` design.
    pub fn complete(n: usize, k: usize) -> Result<Design, ConstructError> {
        if k == 0 {
            return Err(ConstructError::InvalidDesign("k must be positive".into()));
        }
        Self::new(n, k_subsets(n, k), k - 1)
    }

    /// The Steiner system `2-(7, 3, 1)`.
    pub fn fano() -> Design {
        Self::new(7, fano_blocks(), 2).expect("Fano plane is a 2-design")
    }

    /// Lines of the affine plane over `F_q` (`q` prime): a `2-(q², q, 1)`
    /// design.
    pub fn affine_plane(q: usize) -> Result<Design, ConstructError> {
        if !super::is_prime(q) {
            return Err(ConstructError::Param(format!("q = {q} is not prime")));
        }
        let pt = |x: usize, y: usize| x * q + y;
        let mut blocks = Vec::new();
        for m in 0..q {
            for c in 0..q {
                blocks.push(bitset(q * q, (0..q).map(|x| pt(x, (m * x + c) % q))));
            }
        }
        for c in 0..q {
            blocks.push(bitset(q * q, (0..q).map(|y| pt(c, y))));
        }
        Self::new(q * q, blocks, 2)
    }
}

pub fn fano_blocks() -> Vec<FixedBitSet> {
    [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ]
    .iter()
    .map(|b| bitset(7, b.iter().copied()))
    .collect()
}

/// `P(V, B)`: the sets of size below `s`, the blocks and `V`, under
/// inclusion. This is `Q(B, V, s)` for `Q = τ^{n−k−1}(B(V))`; keeping the
/// `s`-sets too gives `Q(B, V, s + 1)`, which need not be `[-1, 0]`-rooted
/// (see [`design_poset_with_s_sets`]).
pub fn design_poset(d: &Design) -> Result<FlatLattice, ConstructError> {
    let mut flats: Vec<FixedBitSet> = (0..d.s).flat_map(|i| k_subsets(d.n, i)).collect();
    flats.extend(d.blocks.iter().filter(|b| b.count_ones(..) >= d.s).cloned());
    flats.push(bitset(d.n, 0..d.n));
    FlatLattice::from_flats(d.n, flats)
}

/// `{A ⊆ V : |A| <= s or A = V} ∪ B`. For the Fano plane this has 37
/// elements, is not semimodular, and its chain polynomial has a root in
/// `(-3/2, -5/4)`.
pub fn design_poset_with_s_sets(d: &Design) -> Result<FlatLattice, ConstructError> {
    let mut flats: Vec<FixedBitSet> = (0..=d.s).flat_map(|i| k_subsets(d.n, i)).collect();
    flats.extend(d.blocks.iter().filter(|b| b.count_ones(..) > d.s).cloned());
    flats.push(bitset(d.n, 0..d.n));
    FlatLattice::from_flats(d.n, flats)
}

/// A `d`-partition `H` of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DPartition {
    pub n: usize,
    pub blocks: Vec<FixedBitSet>,
    pub d: usize,
}

impl DPartition {
    pub fn new(n: usize, blocks: Vec<FixedBitSet>, d: usize) -> Result<DPartition, ConstructError> {
        let bad = |m: String| Err(ConstructError::InvalidDPartition(m));
        if blocks.len() < 2 {
            return bad("need at least two blocks".into());
        }
        if d == 0 {
            return bad("d must be positive".into());
        }
        let blocks: Vec<FixedBitSet> = blocks
            .into_iter()
            .map(|mut b| {
                b.grow(n);
                b
            })
            .collect();
        if blocks.iter().any(|b| b.len() > n) {
            return bad("block outside [n]".into());
        }
        if let Some(b) = blocks.iter().find(|b| b.count_ones(..) < d) {
            return bad(format!(
                "block {} has fewer than {d} elements",
                super::set_label(b)
            ));
        }
        let mut union = FixedBitSet::with_capacity(n);
        for b in &blocks {
            union.union_with(b);
        }
        if union.count_ones(..) != n {
            return bad("blocks do not cover [n]".into());
        }
        for a in k_subsets(n, d) {
            let c = blocks.iter().filter(|b| a.is_subset(b)).count();
            if c != 1 {
                return bad(format!("{} lies in {c} blocks", super::set_label(&a)));
            }
        }
        Ok(DPartition { n, blocks, d })
    }

    /// All `d`-subsets of `[n]`.
    pub fn trivial(n: usize, d: usize) -> Result<DPartition, ConstructError> {
        Self::new(n, k_subsets(n, d), d)
    }
}

/// `B_n(H, [n], d)`: subsets of size below `d`, the blocks, and `[n]`.
pub fn paving_lattice_from_dpartition(dp: &DPartition) -> Result<FlatLattice, ConstructError> {
    let mut flats: Vec<FixedBitSet> = (0..dp.d).flat_map(|i| k_subsets(dp.n, i)).collect();
    flats.extend(dp.blocks.iter().cloned());
    flats.push(bitset(dp.n, 0..dp.n));
    let fl = FlatLattice::from_flats(dp.n, flats)?;
    if !fl.lattice()?.is_geometric() {
        return Err(ConstructError::NotGeometric);
    }
    Ok(fl)
}

/// Five 4-sets plus every 3-set of `[8]` not inside one of them.
pub fn vamos_blocks() -> Vec<FixedBitSet> {
    let t1: Vec<FixedBitSet> = [
        [1, 2, 3, 4],
        [1, 4, 5, 6],
        [2, 3, 5, 6],
        [1, 4, 7, 8],
        [2, 3, 7, 8],
    ]
    .iter()
    .map(|b| bitset(8, b.iter().map(|i| i - 1)))
    .collect();
    let t2 = k_subsets(8, 3)
        .into_iter()
        .filter(|s| !t1.iter().any(|b| s.is_subset(b)));
    t1.iter().cloned().chain(t2).collect()
}

pub fn vamos() -> FlatLattice {
    let dp = DPartition::new(8, vamos_blocks(), 3).expect("Vámos blocks form a 3-partition");
    paving_lattice_from_dpartition(&dp).expect("Vámos lattice is geometric")
}

/// Rank-3 lattice of flats of the Fano plane (points, lines, whole set).
pub fn fano_lattice() -> FlatLattice {
    let dp = DPartition::new(7, fano_blocks(), 2).expect("Fano lines form a 2-partition");
    paving_lattice_from_dpartition(&dp).expect("Fano lattice is geometric")
}

/// Conditions (i)–(iv) for a generalized `d`-partition of a geometric
/// lattice.
pub fn generalized_dpartition_check(
    l: &Lattice,
    h: &[usize],
    d: usize,
) -> Result<bool, ConstructError> {
    if !l.is_geometric() {
        return Err(ConstructError::NotGeometric);
    }
    let p = l.poset();
    if d == 0 || h.iter().any(|&x| x >= l.len()) {
        return Ok(false);
    }
    let top = l.top();
    let ok = !h.contains(&top)
        && h.iter().all(|&x| p.rank(x) >= d)
        && h.iter()
            .enumerate()
            .all(|(i, &a)| h[i + 1..].iter().all(|&b| !p.comparable(a, b)))
        && (0..l.len())
            .filter(|&x| p.rank(x) == d)
            .all(|x| h.iter().filter(|&&hh| p.le(x, hh)).count() == 1);
    Ok(ok)
}

/// `L(H, 1̂, d)` for a generalized `d`-partition; always geometric.
pub fn l_paving(l: &Lattice, h: &[usize], d: usize) -> Result<Poset, ConstructError> {
    if !generalized_dpartition_check(l, h, d)? {
        return Err(ConstructError::InvalidDPartition(
            "not a generalized d-partition".into(),
        ));
    }
    let q = paving_construction(l.poset(), h, l.top(), d)?;
    if !Lattice::new(q.clone())?.is_geometric() {
        return Err(ConstructError::NotGeometric);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean_lattice, subspace_lattice, truncated_boolean};
    use crate::poly::{
        is_unit_interval_rooted, ratio, sturm_real_root_count, ExactPoly, RootRange,
    };
    use crate::poset::is_isomorphic;

    #[test]
    fn complete_design_parameters() {
        let d = Design::complete(5, 3).unwrap();
        assert_eq!((d.s, d.k, d.lambda), (2, 3, 3));
        let f = Design::fano();
        assert_eq!((f.s, f.k, f.lambda), (2, 3, 1));
        let a = Design::affine_plane(3).unwrap();
        assert_eq!((a.n, a.k, a.lambda, a.blocks.len()), (9, 3, 1, 12));
    }

    #[test]
    fn design_poset_counts() {
        let p = design_poset(&Design::fano()).unwrap();
        assert_eq!(p.poset().rank_profile(), vec![1, 7, 7, 1]);
        assert!(is_isomorphic(p.poset(), fano_lattice().poset()));
        assert!(p.lattice().unwrap().is_geometric());
        // all 3-subsets of [5]: ranks 0, 1, 3, 5 of B_5
        let c = design_poset(&Design::complete(5, 3).unwrap()).unwrap();
        assert_eq!(c.poset().rank_profile(), vec![1, 5, 10, 1]);
        let a = design_poset(&Design::affine_plane(3).unwrap()).unwrap();
        assert_eq!(a.poset().rank_profile(), vec![1, 9, 12, 1]);
    }

    #[test]
    fn construction_matches_design_poset() {
        let d = Design::fano();
        let host = truncated_boolean(7, 3).unwrap();
        let h: Vec<usize> = d.blocks.iter().map(|b| host.index_of(b).unwrap()).collect();
        let q = paving_construction(host.poset(), &h, host.len() - 1, 2).unwrap();
        assert!(is_isomorphic(&q, design_poset(&d).unwrap().poset()));
    }

    #[test]
    fn keeping_the_pairs_breaks_rootedness() {
        // {1,2} ∨ {1,4} = V while {1,2} ∧ {1,4} = {1}
        let p = design_poset_with_s_sets(&Design::fano()).unwrap();
        assert_eq!(p.len(), 37);
        assert!(!p.lattice().unwrap().is_semimodular());
        let c = p.poset().chain_polynomial();
        assert_eq!(c, ExactPoly::from_ints([1, 37, 155, 245, 168, 42]));
        assert!(!is_unit_interval_rooted(&c).unwrap_or(false));
        assert_eq!(
            sturm_real_root_count(&c, &RootRange::HalfOpen(ratio(-3, 2), ratio(-5, 4))).unwrap(),
            1
        );
        // it is still a legal instance of the construction on B_7 with d = 3
        let host = boolean_lattice(7);
        let h: Vec<usize> = fano_blocks()
            .iter()
            .map(|b| host.index_of(b).unwrap())
            .collect();
        let q = paving_construction(host.poset(), &h, host.len() - 1, 3).unwrap();
        assert!(is_isomorphic(&q, p.poset()));
    }

    #[test]
    fn vamos_shape() {
        let v = vamos();
        assert_eq!(v.poset().rank_profile(), vec![1, 8, 28, 41, 1]);
        let l = v.lattice().unwrap();
        assert!(l.is_geometric());
        assert!(!l.is_perfect_matroid_design().unwrap());
    }

    #[test]
    fn construction_clauses() {
        let b = boolean_lattice(3);
        let p = b.poset();
        let top = b.index_of_items(&[0, 1, 2]).unwrap();
        let two: Vec<usize> = (0..p.len()).filter(|&x| p.rank(x) == 2).collect();
        let q = paving_construction(p, &two, top, 2).unwrap();
        assert!(is_isomorphic(&q, p));
        let err = |h: &[usize], d| match paving_construction(p, h, top, d) {
            Err(ConstructError::Clause { clause, .. }) => clause,
            other => panic!("{other:?}"),
        };
        assert_eq!(err(&[top], 2), "i");
        let atom = b.index_of_items(&[0]).unwrap();
        assert_eq!(err(&[atom, two[0]], 2), "ii");
        let a12 = b.index_of_items(&[0, 1]).unwrap();
        assert_eq!(err(&[a12, atom], 1), "iii");
        assert_eq!(err(&[a12], 2), "iv");
    }

    #[test]
    fn dpartitions() {
        assert!(DPartition::trivial(4, 2).is_ok());
        let bad = vec![bitset(4, [0, 1, 2]), bitset(4, [0, 1, 3])];
        assert!(matches!(
            DPartition::new(4, bad, 2),
            Err(ConstructError::InvalidDPartition(_))
        ));
        // singletons with d = 1 give τ(B_3); all 2-sets give B_3 back
        let one = paving_lattice_from_dpartition(&DPartition::trivial(3, 1).unwrap()).unwrap();
        assert!(is_isomorphic(
            one.poset(),
            truncated_boolean(3, 1).unwrap().poset()
        ));
        let two = paving_lattice_from_dpartition(&DPartition::trivial(3, 2).unwrap()).unwrap();
        assert!(is_isomorphic(two.poset(), boolean_lattice(3).poset()));
    }

    #[test]
    fn generalized_partitions() {
        let l = Lattice::new(subspace_lattice(3, 2).unwrap()).unwrap();
        let coatoms = l.coatoms();
        assert!(generalized_dpartition_check(&l, &coatoms, 2).unwrap());
        assert!(!generalized_dpartition_check(&l, &coatoms, 1).unwrap());
        let same = l_paving(&l, &coatoms, 2).unwrap();
        assert!(is_isomorphic(&same, l.poset()));
        let v = vamos().lattice().unwrap();
        assert!(generalized_dpartition_check(&v, &v.coatoms(), 3).unwrap());
        let b4 = boolean_lattice(4).lattice().unwrap();
        let atoms = b4.atoms();
        assert!(l_paving(&b4, &atoms, 1).is_ok());
    }
}
