//! Seeded random corpora. Every generator takes an explicit seed so that
//! reports can be replayed.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bitset, ConstructError, FlatLattice};
use crate::poset::Poset;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lattice of flats of a linear space on `points` points given by its
/// lines. Every pair of points must lie on exactly one line.
pub fn linear_space_lattice(
    points: usize,
    lines: &[FixedBitSet],
) -> Result<FlatLattice, ConstructError> {
    if points < 3 {
        return Err(ConstructError::Param(
            "a rank 3 linear space needs at least 3 points".into(),
        ));
    }
    for i in 0..points {
        for j in i + 1..points {
            let through = lines
                .iter()
                .filter(|l| l.contains(i) && l.contains(j))
                .count();
            if through != 1 {
                return Err(ConstructError::Param(format!(
                    "points {} and {} lie on {through} lines",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if lines
        .iter()
        .any(|l| l.count_ones(..) < 2 || l.count_ones(..) >= points)
    {
        return Err(ConstructError::Param(
            "lines need between 2 and n - 1 points".into(),
        ));
    }
    let mut flats = vec![FixedBitSet::with_capacity(points)];
    flats.extend((0..points).map(|i| bitset(points, [i])));
    flats.extend(lines.iter().cloned());
    flats.push(bitset(points, 0..points));
    FlatLattice::from_flats(points, flats)
}

/// One line through points `0..n-1`, the last point joined to each of them
/// by a two-point line.
pub fn near_pencil(n: usize) -> Result<FlatLattice, ConstructError> {
    if n < 3 {
        return Err(ConstructError::Param(format!(
            "near-pencil needs n >= 3, got {n}"
        )));
    }
    let mut lines = vec![bitset(n, 0..n - 1)];
    lines.extend((0..n - 1).map(|i| bitset(n, [i, n - 1])));
    linear_space_lattice(n, &lines)
}

/// Random linear space on `m` points: start from all two-point lines and
/// repeatedly grow a line by a point that currently meets each of its points
/// only in a two-point line. Lines stay below `m` points, so the rank is 3.
pub fn random_linear_space(m: usize, seed: u64) -> Result<Vec<FixedBitSet>, ConstructError> {
    if m < 3 {
        return Err(ConstructError::Param(format!("need m >= 3, got {m}")));
    }
    let mut r = rng(seed);
    let mut lines: Vec<FixedBitSet> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            lines.push(bitset(m, [i, j]));
        }
    }
    let steps = r.gen_range(0..=2 * m);
    for _ in 0..steps {
        let li = r.gen_range(0..lines.len());
        if lines[li].count_ones(..) + 1 >= m {
            continue;
        }
        let outside: Vec<usize> = (0..m).filter(|&p| !lines[li].contains(p)).collect();
        let p = *outside.choose(&mut r).expect("line is proper");
        let on_line: Vec<usize> = lines[li].ones().collect();
        let pairs: Vec<usize> = on_line
            .iter()
            .filter_map(|&q| lines.iter().position(|l| l.contains(p) && l.contains(q)))
            .collect();
        if pairs.iter().all(|&k| lines[k].count_ones(..) == 2) {
            lines[li].insert(p);
            let mut drop = pairs;
            drop.sort_unstable();
            for k in drop.into_iter().rev() {
                lines.swap_remove(k);
            }
        }
    }
    lines.sort_by(|a, b| a.ones().cmp(b.ones()));
    Ok(lines)
}

/// Seeded random rank-3 geometric lattice with 3 to 9 atoms.
pub fn random_rank3(seed: u64) -> Result<FlatLattice, ConstructError> {
    let m = rng(seed ^ 0x9e37_79b9_7f4a_7c15).gen_range(3..=9);
    linear_space_lattice(m, &random_linear_space(m, seed)?)
}

/// Random poset on `n` elements: a random relation compatible with the
/// order `0 < 1 < ... < n-1`, each pair kept with probability `density`,
/// then closed transitively.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Poset {
    let mut r = rng(seed);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(density.clamp(0.0, 1.0)) {
                covers.push((i, j));
            }
        }
    }
    Poset::from_covers(n, &covers).expect("forward edges are acyclic")
}

/// Random poset on `n - 2` elements with a new bottom and top (`n >= 2`).
pub fn random_bounded_poset(n: usize, seed: u64) -> Result<Poset, ConstructError> {
    if n < 2 {
        return Err(ConstructError::Param(format!(
            "bounded poset needs n >= 2, got {n}"
        )));
    }
    let density = rng(seed.wrapping_add(1)).gen_range(0.15..0.6);
    let inner = random_poset(n - 2, density, seed);
    let mut covers: Vec<(usize, usize)> = inner
        .cover_pairs()
        .iter()
        .map(|&(a, b)| (a + 1, b + 1))
        .collect();
    for x in 0..n - 2 {
        covers.push((0, x + 1));
        covers.push((x + 1, n - 1));
    }
    if n == 2 {
        covers.push((0, 1));
    }
    Ok(Poset::from_covers(n, &covers)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_pencil_counts() {
        let l = near_pencil(4).unwrap();
        assert_eq!(l.poset().rank_profile(), vec![1, 4, 4, 1]);
        assert!(l.lattice().unwrap().is_geometric());
    }

    #[test]
    fn random_rank3_is_geometric() {
        for seed in 0..40 {
            let l = random_rank3(seed).unwrap();
            let lat = l.lattice().unwrap();
            assert!(lat.is_geometric(), "seed {seed}");
            assert_eq!(l.poset().height(), 3);
        }
    }

    #[test]
    fn seeds_replay() {
        assert_eq!(
            random_linear_space(7, 3).unwrap(),
            random_linear_space(7, 3).unwrap()
        );
        let a = random_bounded_poset(7, 11).unwrap();
        let b = random_bounded_poset(7, 11).unwrap();
        assert_eq!(a.cover_pairs(), b.cover_pairs());
        assert!(a.bottom().is_some() && a.top().is_some());
    }

    #[test]
    fn rejects_non_linear_spaces() {
        let lines = vec![bitset(3, [0, 1]), bitset(3, [1, 2])];
        assert!(linear_space_lattice(3, &lines).is_err());
    }
}
