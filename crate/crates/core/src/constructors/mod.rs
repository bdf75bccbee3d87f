//! Builders for the lattice families: Boolean algebras and their
//! truncations, subspace, affine and partition lattices, paving
//! constructions, Dowling rank rows, and single-element extensions.

mod dowling;
mod extension;
mod families;
mod paving;
pub mod random;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::lattice::{Lattice, LatticeError};
use crate::poset::{Poset, PosetError};

pub use dowling::{alpha_operator, dowling_rows, dowling_whitney, WhitneyMatrix};
pub use extension::{
    principal_cut, single_element_extension, truncated_extension_coatoms, ModularCut,
};
pub use families::{
    affine_lattice, boolean_lattice, is_prime, partition_lattice, subspace_lattice,
    truncated_boolean,
};
pub use paving::{
    design_poset, design_poset_with_s_sets, fano_blocks, fano_lattice,
    generalized_dpartition_check, l_paving, paving_construction, paving_lattice_from_dpartition,
    vamos, vamos_blocks, DPartition, Design,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("parameter out of range: {0}")]
    Param(String),
    #[error("condition ({clause}) fails: {msg}")]
    Clause { clause: &'static str, msg: String },
    #[error("invalid design: {0}")]
    InvalidDesign(String),
    #[error("invalid d-partition: {0}")]
    InvalidDPartition(String),
    #[error("invalid modular cut: {0}")]
    InvalidCut(String),
    #[error("host lattice is not geometric")]
    NotGeometric,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// `{1,3}` style label with 1-based elements.
pub fn set_label(s: &FixedBitSet) -> String {
    let items: Vec<String> = s.ones().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn bitset(n: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(items);
    s
}

/// `k`-subsets of `0..n` as bitsets, in colex order.
pub fn k_subsets(n: usize, k: usize) -> Vec<FixedBitSet> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(bitset(n, idx.iter().copied()));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A lattice whose elements are subsets of a ground set `0..ground`,
/// ordered by inclusion. For geometric lattices the sets are the atom sets
/// (flats).
#[derive(Clone, Debug)]
pub struct FlatLattice {
    ground: usize,
    flats: Vec<FixedBitSet>,
    index: HashMap<FixedBitSet, usize>,
    poset: Poset,
}

impl FlatLattice {
    /// Sorted by size, then lexicographically, so indices are reproducible.
    pub fn from_flats(
        ground: usize,
        mut flats: Vec<FixedBitSet>,
    ) -> Result<FlatLattice, ConstructError> {
        for f in &mut flats {
            f.grow(ground);
        }
        flats.sort_by(|a, b| {
            a.count_ones(..)
                .cmp(&b.count_ones(..))
                .then_with(|| a.ones().cmp(b.ones()))
        });
        let poset = Poset::from_sets(&flats)?.with_labels(flats.iter().map(set_label).collect());
        let index = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        Ok(FlatLattice {
            ground,
            flats,
            index,
            poset,
        })
    }

    /// Identifies every element with its set of atoms.
    pub fn from_lattice(l: &Lattice) -> Result<FlatLattice, ConstructError> {
        let ground = l.atoms().len();
        Self::from_flats(ground, l.atom_sets())
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn flats(&self) -> &[FixedBitSet] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &FixedBitSet {
        &self.flats[i]
    }

    pub fn index_of(&self, s: &FixedBitSet) -> Option<usize> {
        let mut s = s.clone();
        s.grow(self.ground);
        self.index.get(&s).copied()
    }

    pub fn index_of_items(&self, items: &[usize]) -> Option<usize> {
        self.index_of(&bitset(self.ground, items.iter().copied()))
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn lattice(&self) -> Result<Lattice, LatticeError> {
        Lattice::new(self.poset.clone())
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.poset.rank(i)
    }

    /// Smallest member containing `s`.
    pub fn closure(&self, s: &FixedBitSet) -> Option<usize> {
        (0..self.len())
            .filter(|&i| s.is_subset(&self.flats[i]))
            .min_by_key(|&i| self.flats[i].count_ones(..))
    }
}
