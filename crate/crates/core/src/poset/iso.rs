//! Isomorphism by colour refinement plus backtracking on the order relation.

use std::collections::BTreeMap;

use super::Poset;

/// Stable colouring: start from (rank, |down|, |up|) and refine by the
/// multisets of colours of upper and lower covers until nothing splits.
fn refine(ps: &[&Poset]) -> Vec<Vec<usize>> {
    let mut colours: Vec<Vec<usize>> = {
        let keys: Vec<Vec<(usize, usize, usize)>> = ps
            .iter()
            .map(|p| {
                (0..p.len())
                    .map(|x| {
                        (
                            p.rank(x),
                            p.down_set(x).count_ones(..),
                            p.up_set(x).count_ones(..),
                        )
                    })
                    .collect()
            })
            .collect();
        relabel(&keys)
    };
    let mut classes = count_classes(&colours);
    loop {
        let keys: Vec<Vec<(usize, Vec<usize>, Vec<usize>)>> = ps
            .iter()
            .zip(&colours)
            .map(|(p, col)| {
                (0..p.len())
                    .map(|x| {
                        let mut u: Vec<usize> = p.upper_covers(x).iter().map(|&y| col[y]).collect();
                        let mut d: Vec<usize> = p.lower_covers(x).iter().map(|&y| col[y]).collect();
                        u.sort_unstable();
                        d.sort_unstable();
                        (col[x], u, d)
                    })
                    .collect()
            })
            .collect();
        let next = relabel(&keys);
        let c = count_classes(&next);
        colours = next;
        if c == classes {
            return colours;
        }
        classes = c;
    }
}

fn relabel<K: Ord + Clone>(keys: &[Vec<K>]) -> Vec<Vec<usize>> {
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    for ks in keys {
        for k in ks {
            ids.entry(k.clone()).or_insert(0);
        }
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    keys.iter()
        .map(|ks| ks.iter().map(|k| ids[k]).collect())
        .collect()
}

fn count_classes(c: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = c.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// An order isomorphism `p → q` as a vector `phi[x]`, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len()
        || p.cover_count() != q.cover_count()
        || p.rank_profile() != q.rank_profile()
    {
        return None;
    }
    let col = refine(&[p, q]);
    let (cp, cq) = (&col[0], &col[1]);
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    // Most constrained elements first: small colour classes, low ranks.
    let mut class_size = BTreeMap::new();
    for &c in cp {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = p.linear_extension().to_vec();
    order.sort_by_key(|&x| (class_size[&cp[x]], p.rank(x)));
    let mut phi = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    let ok = search(p, q, cp, cq, &order, 0, &mut phi, &mut used);
    ok.then_some(phi)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &Poset,
    q: &Poset,
    cp: &[usize],
    cq: &[usize],
    order: &[usize],
    i: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(i) else {
        return true;
    };
    for y in 0..q.len() {
        if used[y] || cq[y] != cp[x] {
            continue;
        }
        let consistent = order[..i].iter().all(|&z| {
            let w = phi[z];
            p.le(z, x) == q.le(w, y) && p.le(x, z) == q.le(y, w)
        });
        if !consistent {
            continue;
        }
        phi[x] = y;
        used[y] = true;
        if search(p, q, cp, cq, order, i + 1, phi, used) {
            return true;
        }
        used[y] = false;
        phi[x] = usize::MAX;
    }
    false
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}
