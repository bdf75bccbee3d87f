use fixedbitset::FixedBitSet;

use super::{bitset, k_subsets, ConstructError, FlatLattice};
use crate::lattice::Lattice;

/// A set of elements of a geometric lattice, meant to be a modular cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularCut {
    pub members: FixedBitSet,
}

impl ModularCut {
    pub fn empty(host: &Lattice) -> ModularCut {
        ModularCut {
            members: FixedBitSet::with_capacity(host.len()),
        }
    }

    pub fn from_elements(host: &Lattice, elems: impl IntoIterator<Item = usize>) -> ModularCut {
        let mut members = FixedBitSet::with_capacity(host.len());
        members.extend(elems);
        ModularCut { members }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// Upward closed, and `x ∧ y ∈ M` whenever `x, y ∈ M` form a modular pair.
    pub fn validate(&self, host: &Lattice) -> Result<bool, ConstructError> {
        if !host.is_geometric() {
            return Err(ConstructError::NotGeometric);
        }
        let p = host.poset();
        if self.members.ones().any(|x| x >= host.len()) {
            return Ok(false);
        }
        let members: Vec<usize> = self.members.ones().collect();
        let upward = members
            .iter()
            .all(|&x| p.up_set(x).is_subset(&self.members));
        let meets = members.iter().all(|&x| {
            members.iter().all(|&y| {
                let (m, j) = (host.meet(x, y), host.join(x, y));
                p.rank(x) + p.rank(y) != p.rank(m) + p.rank(j) || self.members.contains(m)
            })
        });
        Ok(upward && meets)
    }
}

/// `x⁺ = {z : z >= x}`.
pub fn principal_cut(host: &Lattice, x: usize) -> Result<ModularCut, ConstructError> {
    if !host.is_geometric() {
        return Err(ConstructError::NotGeometric);
    }
    Ok(ModularCut {
        members: host.poset().up_set(x).clone(),
    })
}

/// `L +_M e` on atom sets; the new atom gets ground index `l.ground()`.
/// Flats: `X ∉ M`; `X ∪ e` for `X ∈ M`; `X ∪ e` for `X ∉ M` covered by no
/// member of `M`.
pub fn single_element_extension(
    l: &FlatLattice,
    mc: &ModularCut,
) -> Result<FlatLattice, ConstructError> {
    let host = l.lattice()?;
    if !mc.validate(&host)? {
        return Err(ConstructError::InvalidCut(
            "not upward closed or not closed under modular meets".into(),
        ));
    }
    let p = host.poset();
    let e = l.ground();
    let g = e + 1;
    let mut flats = Vec::new();
    for x in 0..l.len() {
        let mut with_e = l.flat(x).clone();
        with_e.grow(g);
        let plain = with_e.clone();
        with_e.insert(e);
        if mc.contains(x) {
            flats.push(with_e);
        } else {
            flats.push(plain);
            if !p.upper_covers(x).iter().any(|&y| mc.contains(y)) {
                flats.push(with_e);
            }
        }
    }
    let ext = FlatLattice::from_flats(g, flats)?;
    if !ext.lattice()?.is_geometric() {
        return Err(ConstructError::NotGeometric);
    }
    Ok(ext)
}

/// Co-atoms of `B(E) +_X e` with `|E| = n` and `e = n`, read through
/// `B(E) +_X e ≅ τ(B(X ∪ e)) × B(E ∖ X)`: the sets `A ∪ (E ∖ X)` with `A` a
/// co-atom of `τ(B(X ∪ e))`, and `X ∪ e ∪ B` with `B` a co-atom of
/// `B(E ∖ X)`. These are the flats truncation removes.
pub fn truncated_extension_coatoms(
    n: usize,
    x: &FixedBitSet,
) -> Result<Vec<FixedBitSet>, ConstructError> {
    let m = x.count_ones(..);
    if m == 0 || x.ones().any(|i| i >= n) {
        return Err(ConstructError::Param(
            "X must be a nonempty subset of E".into(),
        ));
    }
    let g = n + 1;
    let xe: Vec<usize> = x.ones().chain([n]).collect();
    let rest: Vec<usize> = (0..n).filter(|&i| !x.contains(i)).collect();
    let mut out = Vec::new();
    // co-atoms of τ(B(X ∪ e)) are its (m − 1)-subsets
    for a in k_subsets(m + 1, m - 1) {
        out.push(bitset(
            g,
            a.ones().map(|i| xe[i]).chain(rest.iter().copied()),
        ));
    }
    if !rest.is_empty() {
        for b in k_subsets(rest.len(), rest.len() - 1) {
            out.push(bitset(
                g,
                xe.iter().copied().chain(b.ones().map(|i| rest[i])),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean_lattice, set_label, truncated_boolean};
    use crate::poset::{is_isomorphic, Poset};

    fn labels(f: &FlatLattice) -> Vec<String> {
        let mut v: Vec<String> = f.flats().iter().map(set_label).collect();
        v.sort();
        v
    }

    fn sorted(v: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn boolean_extensions_by_small_cuts() {
        let b3 = boolean_lattice(3);
        let host = b3.lattice().unwrap();
        let m1 = principal_cut(&host, b3.index_of_items(&[0]).unwrap()).unwrap();
        let m2 = principal_cut(&host, b3.index_of_items(&[0, 1]).unwrap()).unwrap();
        assert!(m1.validate(&host).unwrap() && m2.validate(&host).unwrap());
        let e1 = single_element_extension(&b3, &m1).unwrap();
        assert_eq!(
            labels(&e1),
            sorted(&[
                "{}",
                "{2}",
                "{3}",
                "{1,4}",
                "{2,3}",
                "{1,2,4}",
                "{1,3,4}",
                "{1,2,3,4}"
            ])
        );
        let e2 = single_element_extension(&b3, &m2).unwrap();
        assert_eq!(
            labels(&e2),
            sorted(&[
                "{}",
                "{1}",
                "{2}",
                "{3}",
                "{4}",
                "{1,3}",
                "{2,3}",
                "{3,4}",
                "{1,2,4}",
                "{1,2,3,4}"
            ])
        );
    }

    #[test]
    fn trivial_cuts() {
        let b3 = boolean_lattice(3);
        let host = b3.lattice().unwrap();
        let none = single_element_extension(&b3, &ModularCut::empty(&host)).unwrap();
        assert!(is_isomorphic(none.poset(), boolean_lattice(4).poset()));
        let top = ModularCut::from_elements(&host, [host.top()]);
        let t = single_element_extension(&b3, &top).unwrap();
        assert!(is_isomorphic(
            t.poset(),
            truncated_boolean(4, 1).unwrap().poset()
        ));
        // not upward closed
        let bad = ModularCut::from_elements(&host, [b3.index_of_items(&[0]).unwrap()]);
        assert!(!bad.validate(&host).unwrap());
        assert!(single_element_extension(&b3, &bad).is_err());
    }

    #[test]
    fn extension_is_a_product() {
        let b4 = boolean_lattice(4);
        let host = b4.lattice().unwrap();
        let x = b4.index_of_items(&[0, 1]).unwrap();
        let ext = single_element_extension(&b4, &principal_cut(&host, x).unwrap()).unwrap();
        let prod = Poset::direct_product(
            truncated_boolean(3, 1).unwrap().poset(),
            boolean_lattice(2).poset(),
        );
        assert!(is_isomorphic(ext.poset(), &prod));
    }

    #[test]
    fn removed_coatoms_match_direct_extension() {
        let b4 = boolean_lattice(4);
        let host = b4.lattice().unwrap();
        for xs in [vec![0, 1], vec![0, 1, 2, 3], vec![2]] {
            let x = bitset(4, xs.iter().copied());
            let ext = single_element_extension(
                &b4,
                &principal_cut(&host, b4.index_of(&x).unwrap()).unwrap(),
            )
            .unwrap();
            let el = ext.lattice().unwrap();
            let mut direct: Vec<String> = el
                .coatoms()
                .iter()
                .map(|&c| set_label(ext.flat(c)))
                .collect();
            let mut formula: Vec<String> = truncated_extension_coatoms(4, &x)
                .unwrap()
                .iter()
                .map(set_label)
                .collect();
            direct.sort();
            formula.sort();
            assert_eq!(direct, formula, "X = {xs:?}");
        }
    }

    #[test]
    fn boolean_cuts_are_principal() {
        let b3 = boolean_lattice(3);
        let host = b3.lattice().unwrap();
        let n = host.len();
        for mask in 1u32..(1 << n) {
            let mc = ModularCut::from_elements(&host, (0..n).filter(|i| mask >> i & 1 == 1));
            if mc.validate(&host).unwrap() {
                let mins: Vec<usize> = mc
                    .members
                    .ones()
                    .filter(|&x| {
                        host.poset()
                            .lower_covers(x)
                            .iter()
                            .all(|&y| !mc.contains(y))
                    })
                    .collect();
                assert_eq!(mins.len(), 1, "cut {mask:b}");
            }
        }
    }
}
