use latchain::constructors::{
    design_poset, design_poset_with_s_sets, paving_lattice_from_dpartition, vamos, DPartition,
    Design,
};
use latchain::dsl::{build, parse_dpartition, write_dpartition};
use latchain::poly::{interlaces, is_unit_interval_rooted, ExactPoly};
use latchain::poset::is_isomorphic;
use latchain::verify::{brute_force_oracle, counterexample_search, eulerian, q_eulerian};

fn gaussian(n: u64, k: u64, q: u64) -> u64 {
    let num: u64 = (0..k).map(|i| q.pow((n - i) as u32) - 1).product();
    let den: u64 = (0..k).map(|i| q.pow((i + 1) as u32) - 1).product();
    num / den
}

fn stirling2(n: u64, k: u64) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) | (0, _) => 0,
        _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
    }
}

fn profile(s: &str) -> Vec<usize> {
    build(s).unwrap().poset().unwrap().rank_profile()
}

#[test]
fn subspace_lattices_count_gaussian_binomials() {
    for (n, q) in [(3, 2), (4, 2), (2, 3), (3, 3)] {
        let want: Vec<usize> = (0..=n).map(|k| gaussian(n, k, q) as usize).collect();
        assert_eq!(
            profile(&format!("subspace:{n}:{q}")),
            want,
            "subspace:{n}:{q}"
        );
    }
}

#[test]
fn partition_lattices_count_stirling_numbers() {
    for n in 1..=6u64 {
        let want: Vec<usize> = (0..n).map(|r| stirling2(n, n - r) as usize).collect();
        assert_eq!(profile(&format!("partition:{n}")), want, "partition:{n}");
    }
}

#[test]
fn constructed_lattices_are_geometric() {
    for s in [
        "boolean:5",
        "trunc-boolean:6:2",
        "subspace:3:2",
        "affine:2:3",
        "partition:5",
        "vamos",
        "fano-design",
    ] {
        let l = build(s).unwrap().poset().unwrap().clone();
        let lat = latchain::lattice::Lattice::new(l).unwrap();
        assert!(lat.is_geometric(), "{s}");
    }
}

#[test]
fn dp_agrees_with_brute_force_on_small_families() {
    for s in [
        "boolean:4",
        "partition:4",
        "subspace:3:2",
        "fano",
        "near-pencil:5",
    ] {
        let p = build(s).unwrap().into_poset().unwrap();
        assert_eq!(p.chain_profile(), brute_force_oracle(&p).unwrap(), "{s}");
    }
}

#[test]
fn vamos_is_a_paving_lattice_from_its_blocks() {
    let v = vamos();
    assert_eq!(v.poset().rank_profile(), vec![1, 8, 28, 41, 1]);
    let dp = parse_dpartition(&write_dpartition(&vamos_partition())).unwrap();
    let l = paving_lattice_from_dpartition(&dp).unwrap();
    assert!(is_isomorphic(l.poset(), v.poset()));
}

fn vamos_partition() -> DPartition {
    let text = "dpartition 8 3\n\
        block 1 2 3 4\nblock 1 4 5 6\nblock 2 3 5 6\nblock 1 4 7 8\nblock 2 3 7 8\n";
    let mut dp = parse_dpartition(&format!("{text}{}", remaining_triples(text))).unwrap();
    dp.blocks.sort_by(|a, b| a.ones().cmp(b.ones()));
    dp
}

/// 3-subsets of [8] not inside any of the listed 4-sets.
fn remaining_triples(text: &str) -> String {
    let quads: Vec<Vec<usize>> = text
        .lines()
        .filter_map(|l| l.strip_prefix("block "))
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    let mut out = String::new();
    for a in 1..=8 {
        for b in a + 1..=8 {
            for c in b + 1..=8 {
                if !quads
                    .iter()
                    .any(|q| [a, b, c].iter().all(|x| q.contains(x)))
                {
                    out.push_str(&format!("block {a} {b} {c}\n"));
                }
            }
        }
    }
    out
}

#[test]
fn steiner_design_poset_is_the_paving_lattice_of_its_blocks() {
    let d = Design::fano();
    let p = design_poset(&d).unwrap();
    let dp = DPartition::new(7, d.blocks.clone(), 2).unwrap();
    assert!(is_isomorphic(
        p.poset(),
        paving_lattice_from_dpartition(&dp).unwrap().poset()
    ));
    assert!(is_unit_interval_rooted(&p.poset().chain_polynomial()).unwrap());
}

#[test]
fn affine_plane_with_its_pairs_leaves_the_unit_interval_too() {
    let wide = design_poset_with_s_sets(&Design::affine_plane(3).unwrap()).unwrap();
    let c = wide.poset().chain_polynomial();
    assert_eq!(c, ExactPoly::from_ints([1, 59, 259, 417, 288, 72]));
    assert!(!is_unit_interval_rooted(&c).unwrap_or(false));
}

#[test]
fn eulerian_values() {
    assert_eq!(eulerian(3).unwrap(), ExactPoly::from_ints([1, 4, 1]));
    assert_eq!(eulerian(4).unwrap(), ExactPoly::from_ints([1, 11, 11, 1]));
    // A_3(t; q) = 1 + (2q + 2q^2) t + q^3 t^2
    let q2 = q_eulerian(3, &latchain::poly::rat(2)).unwrap();
    assert_eq!(q2, ExactPoly::from_ints([1, 12, 8]));
    let a = eulerian(3).unwrap();
    assert!(interlaces(&a, &q_eulerian(3, &latchain::poly::rat(8)).unwrap()).unwrap());
    assert!(!interlaces(&a, &q_eulerian(3, &latchain::poly::rat(9)).unwrap()).unwrap());
}

#[test]
fn counterexample_search_reports_first_failure() {
    let s = counterexample_search(3, 20).unwrap();
    let (q, _, _) = s.failure.expect("fails below 20");
    assert_eq!(q, 9);
    assert!(counterexample_search(3, 8).unwrap().failure.is_none());
}
