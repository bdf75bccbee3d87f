//! Independent recomputations used to cross-check the fast paths.

use num_bigint::BigInt;

use super::VerifyError;
use crate::lattice::Lattice;
use crate::poly::ExactPoly;
use crate::poset::{ChainProfile, Poset};

pub const ORACLE_MAX: usize = 20;

/// Counts chains by testing every subset for pairwise comparability.
/// Deliberately naive: no ranks, no DP, no linear extension.
pub fn brute_force_oracle(p: &Poset) -> Result<ChainProfile, VerifyError> {
    let n = p.len();
    if n > ORACLE_MAX {
        return Err(VerifyError::Param(format!(
            "oracle needs |P| <= {ORACLE_MAX}, got {n}"
        )));
    }
    // comp[x] has bit y set iff x and y are comparable (x included)
    let comp: Vec<u32> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| p.le(x, y) || p.le(y, x))
                .fold(0u32, |m, y| m | 1 << y)
        })
        .collect();
    let mut counts = vec![0u64; n + 1];
    for s in 0u32..(1u32 << n) {
        let is_chain = (0..n)
            .filter(|&x| s >> x & 1 == 1)
            .all(|x| s & !comp[x] == 0);
        if is_chain {
            counts[s.count_ones() as usize] += 1;
        }
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    Ok(ChainProfile {
        counts: counts.into_iter().map(BigInt::from).collect(),
    })
}

/// `(1 + (m1 + m2) t + e t²)(1 + t)²` from the atom count `m1`, co-atom
/// count `m2` and the number `e` of atom/co-atom incidences.
pub fn rank3_formula(l: &Poset) -> Result<ExactPoly, VerifyError> {
    let (m1, m2, e) = rank3_counts(l)?;
    let inner = ExactPoly::from_ints([1, (m1 + m2) as i64, e as i64]);
    Ok(&inner * &ExactPoly::from_ints([1, 2, 1]))
}

/// `(m1, m2, e)` for a bounded poset of height 3.
pub fn rank3_counts(l: &Poset) -> Result<(usize, usize, usize), VerifyError> {
    if l.height() != 3 || l.bottom().is_none() || l.top().is_none() || !l.is_graded() {
        return Err(VerifyError::Param(format!(
            "rank 3 formula needs a bounded graded poset of rank 3, got height {}",
            l.height()
        )));
    }
    let atoms = l.elements_of_rank(1);
    let coatoms = l.elements_of_rank(2);
    let e = atoms.iter().map(|&a| l.upper_covers(a).len()).sum();
    Ok((atoms.len(), coatoms.len(), e))
}

/// Cheap sanity bound used in the rank3 suite: `e <= m1·m2`, so the
/// discriminant `(m1 − m2)² + 4(m1 m2 − e)` of the quadratic factor is
/// nonnegative.
pub fn rank3_discriminant(l: &Lattice) -> Result<i64, VerifyError> {
    let (m1, m2, e) = rank3_counts(l.poset())?;
    let (m1, m2, e) = (m1 as i64, m2 as i64, e as i64);
    Ok((m1 - m2).pow(2) + 4 * (m1 * m2 - e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::random::near_pencil;
    use crate::constructors::{boolean_lattice, fano_lattice};
    use crate::poset::chain;

    fn ints(c: &ChainProfile) -> Vec<u64> {
        c.as_u64().unwrap()
    }

    #[test]
    fn hand_counted_profiles() {
        assert_eq!(
            ints(&brute_force_oracle(boolean_lattice(2).poset()).unwrap()),
            vec![1, 4, 5, 2]
        );
        assert_eq!(
            ints(&brute_force_oracle(&chain(3)).unwrap()),
            vec![1, 3, 3, 1]
        );
        assert!(brute_force_oracle(boolean_lattice(5).poset()).is_err());
    }

    #[test]
    fn rank3_examples() {
        let f = fano_lattice();
        assert_eq!(rank3_counts(f.poset()).unwrap(), (7, 7, 21));
        let expect = &ExactPoly::from_ints([1, 14, 21]) * &ExactPoly::from_ints([1, 2, 1]);
        assert_eq!(rank3_formula(f.poset()).unwrap(), expect);
        assert_eq!(f.poset().chain_polynomial(), expect);
        let np = near_pencil(4).unwrap();
        assert_eq!(rank3_counts(np.poset()).unwrap(), (4, 4, 9));
        assert_eq!(
            rank3_formula(np.poset()).unwrap(),
            np.poset().chain_polynomial()
        );
        assert!(rank3_formula(boolean_lattice(4).poset()).is_err());
    }
}
