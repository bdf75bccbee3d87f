use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{bitset, k_subsets, ConstructError, FlatLattice};
use crate::poset::Poset;

/// `B_n`: all subsets of `[n]`.
pub fn boolean_lattice(n: usize) -> FlatLattice {
    truncated_boolean(n, 0).expect("k = 0 is always valid")
}

/// `τ^k(B_n)`: drops the subsets of sizes `n−1, …, n−k`, keeps `[n]`.
pub fn truncated_boolean(n: usize, k: usize) -> Result<FlatLattice, ConstructError> {
    if n > 20 {
        return Err(ConstructError::Param(format!("n = {n} too large")));
    }
    if k > 0 && k >= n {
        return Err(ConstructError::Param(format!(
            "need k <= n - 1, got n = {n}, k = {k}"
        )));
    }
    let mut flats = Vec::new();
    for size in 0..=n {
        if size == n || size + k < n {
            flats.extend(k_subsets(n, size));
        }
    }
    FlatLattice::from_flats(n, flats)
}

pub fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn check_field(n: usize, q: usize) -> Result<(), ConstructError> {
    if !is_prime(q) {
        return Err(ConstructError::Param(format!("q = {q} is not prime")));
    }
    if q.pow(n as u32) > 4096 {
        return Err(ConstructError::Param(format!("q^n = {q}^{n} too large")));
    }
    Ok(())
}

/// Vectors of `F_q^n` are encoded as base-`q` integers.
fn encode(v: &[usize], q: usize) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * q + c)
}

/// Every subspace of `F_q^n` as its set of vectors, via reduced row
/// echelon forms.
fn subspaces(n: usize, q: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in k_subsets(n, k) {
            let piv: Vec<usize> = pivots.ones().collect();
            // free positions: (row i, column j) with j > piv[i], j not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let piv = &piv;
                    (piv[i] + 1..n)
                        .filter(move |j| !piv.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let combos = q.pow(free.len() as u32);
            for mut c in 0..combos {
                let mut rows = vec![vec![0usize; n]; k];
                for (i, &p) in piv.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for &(i, j) in &free {
                    rows[i][j] = c % q;
                    c /= q;
                }
                out.push(rows);
            }
        }
    }
    out
}

fn span(rows: &[Vec<usize>], n: usize, q: usize) -> Vec<Vec<usize>> {
    let k = rows.len();
    (0..q.pow(k as u32))
        .map(|mut c| {
            let mut v = vec![0usize; n];
            for r in rows {
                let a = c % q;
                c /= q;
                for (vj, rj) in v.iter_mut().zip(r) {
                    *vj = (*vj + a * rj) % q;
                }
            }
            v
        })
        .collect()
}

/// `B_n(q)`: subspaces of `F_q^n` under inclusion (`q` prime).
pub fn subspace_lattice(n: usize, q: usize) -> Result<Poset, ConstructError> {
    check_field(n, q)?;
    let size = q.pow(n as u32);
    let sets: Vec<FixedBitSet> = subspaces(n, q)
        .iter()
        .map(|rows| bitset(size, span(rows, n, q).iter().map(|v| encode(v, q))))
        .collect();
    Ok(Poset::from_sets(&sets)?)
}

/// `A_n(q)`: affine subspaces of `F_q^n` plus the empty set.
pub fn affine_lattice(n: usize, q: usize) -> Result<Poset, ConstructError> {
    check_field(n, q)?;
    let size = q.pow(n as u32);
    let all: Vec<Vec<usize>> = (0..size)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let c = x % q;
                    x /= q;
                    c
                })
                .collect()
        })
        .collect();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert(Vec::new());
    for rows in subspaces(n, q) {
        let s = span(&rows, n, q);
        for v in &all {
            let mut coset: Vec<usize> = s
                .iter()
                .map(|w| {
                    let sum: Vec<usize> = v.iter().zip(w).map(|(a, b)| (a + b) % q).collect();
                    encode(&sum, q)
                })
                .collect();
            coset.sort_unstable();
            sets.insert(coset);
        }
    }
    let sets: Vec<FixedBitSet> = sets.into_iter().map(|c| bitset(size, c)).collect();
    Ok(Poset::from_sets(&sets)?)
}

/// `Π_n`: set partitions of `[n]` ordered by refinement (`n <= 8`).
pub fn partition_lattice(n: usize) -> Result<Poset, ConstructError> {
    if n == 0 || n > 8 {
        return Err(ConstructError::Param(format!(
            "partition lattice needs 1 <= n <= 8, got {n}"
        )));
    }
    // Restricted growth strings.
    let mut rgs = vec![vec![0usize]];
    for _ in 1..n {
        rgs = rgs
            .into_iter()
            .flat_map(|s| {
                let m = s.iter().max().unwrap() + 1;
                (0..=m).map(move |b| {
                    let mut t = s.clone();
                    t.push(b);
                    t
                })
            })
            .collect();
    }
    let pair = |i: usize, j: usize| i * n + j;
    let sets: Vec<FixedBitSet> = rgs
        .iter()
        .map(|s| {
            let mut b = FixedBitSet::with_capacity(n * n);
            for i in 0..n {
                for j in i + 1..n {
                    if s[i] == s[j] {
                        b.insert(pair(i, j));
                    }
                }
            }
            b
        })
        .collect();
    let labels = rgs
        .iter()
        .map(|s| {
            let m = s.iter().max().unwrap() + 1;
            (0..m)
                .map(|b| {
                    (0..n)
                        .filter(|&i| s[i] == b)
                        .map(|i| (i + 1).to_string())
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    Ok(Poset::from_sets(&sets)?.with_labels(labels))
}
