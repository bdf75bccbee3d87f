use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::{
    brute_force_oracle, chain_check, counterexample_search, poly_witness, rank3_discriminant,
    rank3_formula, rooted_check, Checker, PermStats, VerifyError,
};
use crate::constructors::random::rng;
use crate::constructors::{
    alpha_operator, bitset, boolean_lattice, design_poset, dowling_whitney, paving_construction,
    principal_cut, set_label, single_element_extension, subspace_lattice, truncated_boolean,
    truncated_extension_coatoms, Design, FlatLattice, ModularCut,
};
use crate::dsl::{build, Built, DslError};
use crate::lattice::{check_rprec, incidence_r_mobius, is_triangular, Lattice};
use crate::poly::{h_from_f, interlaces, is_real_rooted, rat, ExactPoly, Rat};
use crate::poset::{diamond_product, is_isomorphic, Poset};
use crate::tn::{
    all_minors_nonnegative, chain_polys_from_rmatrix, is_quasi_rank_uniform, ordinal_sum_rows,
    resolve, subdivision_operator, RMatrix,
};

type Runner = fn(&str, &mut Checker) -> Result<(), VerifyError>;

pub(super) fn runner(suite: &str) -> Option<Runner> {
    Some(match suite {
        "rank3" => rank3,
        "paving" => paving,
        "dowling" => dowling,
        "designs" => designs,
        "triangular" => triangular,
        "ordinal-sum" => ordinal_sum,
        "see" => see,
        "diamond" => diamond,
        "counterexample" => counterexample,
        "incidence" => incidence,
        "oracle" => oracle,
        _ => return None,
    })
}

/// The seeded corpus each suite runs when no instance list is given.
pub fn default_instances(suite: &str, seed: u64) -> Result<Vec<String>, VerifyError> {
    let v: Vec<String> = match suite {
        "rank3" => (0..200)
            .map(|i| format!("rank3-random:{}", seed + i))
            .collect(),
        "paving" => {
            let mut v: Vec<String> = ["vamos", "fano", "fano-design"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            for n in 2..=7 {
                for d in 1..n {
                    v.push(format!("trunc-boolean:{n}:{}", n - d - 1));
                }
            }
            v
        }
        "dowling" => (1..=3).map(|m| format!("dowling-rows:m={m}:N=6")).collect(),
        "designs" => [
            "fano-design",
            "affine-design:3",
            "complete-design:5:3",
            "complete-design:6:2",
            "complete-design:6:4",
            "complete-design:7:3",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        "triangular" => triangular_corpus(),
        "ordinal-sum" => ordinal_pairs(seed, 24),
        "see" => see_corpus(5),
        "diamond" => diamond_pairs(seed, 50, 7),
        "counterexample" => vec!["eulerian:3:qmax=200".into(), "eulerian:4:qmax=200".into()],
        "incidence" => incidence_corpus(seed),
        "oracle" => oracle_corpus(seed, 200, 14),
        _ => return Err(VerifyError::UnknownSuite(suite.to_string())),
    };
    Ok(v)
}

fn triangular_corpus() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("boolean:{n}")).collect();
    for n in 3..=6 {
        for k in 1..n {
            v.push(format!("trunc-boolean:{n}:{k}"));
        }
    }
    v.extend((1..=4).map(|n| format!("subspace:{n}:2")));
    v.extend([
        "subspace:2:3".into(),
        "subspace:3:3".into(),
        "affine:2:3".into(),
        "affine:3:2".into(),
    ]);
    v.extend((2..=6).map(|n| format!("partition:{n}")));
    v
}

/// Rank-uniform TN posets with a top and a bottom, used as summands.
const SUMMANDS: &[&str] = &[
    "chain:1",
    "chain:2",
    "chain:4",
    "boolean:1",
    "boolean:2",
    "boolean:3",
    "boolean:4",
    "trunc-boolean:4:1",
    "trunc-boolean:5:2",
    "subspace:2:2",
    "subspace:3:2",
    "subspace:2:3",
    "fano",
    "dual:partition:4",
];

fn ordinal_pairs(seed: u64, count: usize) -> Vec<String> {
    let mut r = rng(seed);
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        let a = SUMMANDS.choose(&mut r).unwrap();
        let b = SUMMANDS.choose(&mut r).unwrap();
        seen.insert(format!("{a}+{b}"));
    }
    seen.into_iter().collect()
}

fn diamond_pairs(seed: u64, count: usize, max: usize) -> Vec<String> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let (n1, n2) = (r.gen_range(2..=max), r.gen_range(2..=max));
            let (s1, s2): (u32, u32) = (r.gen(), r.gen());
            format!("random-bounded:{n1}:{s1}*random-bounded:{n2}:{s2}")
        })
        .collect()
}

fn items(s: &FixedBitSet) -> String {
    s.ones()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Every principal cut (and the empty cut) of `B(E)` and `τ(B(E))` for
/// `|E| <= max`.
pub(super) fn see_corpus(max: usize) -> Vec<String> {
    let mut v = Vec::new();
    for n in 2..=max {
        v.push(format!("see:boolean:{n}:cut=none"));
        for mask in 1u32..(1 << n) {
            let x = bitset(n, (0..n).filter(|i| mask >> i & 1 == 1));
            v.push(format!("see:boolean:{n}:cut={}", items(&x)));
        }
        if n >= 3 {
            v.push(format!("see:trunc-boolean:{n}:1:cut=none"));
            for mask in 1u32..(1 << n) {
                let size = mask.count_ones() as usize;
                if size <= n - 2 || size == n {
                    let x = bitset(n, (0..n).filter(|i| mask >> i & 1 == 1));
                    v.push(format!("see:trunc-boolean:{n}:1:cut={}", items(&x)));
                }
            }
        }
    }
    v
}

fn incidence_corpus(seed: u64) -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("boolean:{n}")).collect();
    v.extend(
        [
            "trunc-boolean:5:1",
            "trunc-boolean:6:2",
            "trunc-boolean:7:3",
        ]
        .map(String::from),
    );
    v.extend(
        [
            "subspace:2:2",
            "subspace:3:2",
            "subspace:4:2",
            "subspace:2:3",
            "subspace:3:3",
        ]
        .map(String::from),
    );
    v.extend(["affine:2:3", "affine:3:2", "affine:2:5"].map(String::from));
    v.extend((3..=6).map(|n| format!("partition:{n}")));
    v.extend(["vamos", "fano", "chain:5"].map(String::from));
    v.extend((4..=7).map(|n| format!("near-pencil:{n}")));
    v.extend((0..20).map(|i| format!("rank3-random:{}", seed + i)));
    v.extend(
        [
            "see:boolean:4:cut=1,2",
            "see:boolean:5:cut=1,2,3",
            "see:trunc-boolean:5:1:cut=1",
        ]
        .map(String::from),
    );
    v
}

pub(super) fn oracle_corpus(seed: u64, count: usize, max: usize) -> Vec<String> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=max);
            let s: u32 = r.gen();
            if i % 2 == 0 {
                format!("random:{n}:{s}")
            } else {
                format!("random-bounded:{}:{s}", n.max(2))
            }
        })
        .collect()
}

fn poset_of(inst: &str) -> Result<Poset, VerifyError> {
    build(inst)?
        .into_poset()
        .ok_or_else(|| VerifyError::Param(format!("`{inst}` has no poset")))
}

fn lattice_of(c: &mut Checker, p: &Poset) -> Option<Lattice> {
    match Lattice::new(p.clone()) {
        Ok(l) => Some(l),
        Err(e) => {
            c.check("lattice", || Err(e.to_string()));
            None
        }
    }
}

fn interlace_check(g: &ExactPoly, f: &ExactPoly) -> Result<(bool, Value), String> {
    let ok = interlaces(g, f).map_err(|e| e.to_string())?;
    Ok((ok, json!({"g": poly_witness(g), "f": poly_witness(f)})))
}

/// Both sides of `c_P = c_τ(P) + t Σ_{ρ(h) = ρ(P) − 1} c_⟨h⟩`, for a bounded
/// poset of quasi-rank at least 2.
pub fn truncation_identity(p: &Poset) -> Option<(ExactPoly, ExactPoly)> {
    p.bottom()?;
    p.top()?;
    let d1 = p.height();
    if d1 < 2 {
        return None;
    }
    let mut sum = ExactPoly::zero();
    for h in p.elements_of_rank(d1 - 1) {
        sum = &sum + &p.principal_down(h).chain_polynomial();
    }
    let rhs = &p.truncation().chain_polynomial() + &sum.shift(1);
    Some((p.chain_polynomial(), rhs))
}

fn identity_check(p: &Poset) -> Result<(bool, Value), String> {
    let (lhs, rhs) = truncation_identity(p).ok_or("needs a bounded poset of rank >= 2")?;
    Ok((
        lhs == rhs,
        json!({"lhs": lhs.to_string(), "rhs": rhs.to_string()}),
    ))
}

/// `c_⟨h⟩ ⪯ c_τ(P)` for every `h` of quasi-rank `ρ(P) − 1`.
fn coatom_interlacing(p: &Poset) -> Result<(bool, Value), String> {
    let ct = p.truncation().chain_polynomial();
    let mut seen = BTreeMap::new();
    for h in p.elements_of_rank(p.height().saturating_sub(1)) {
        let ch = p.principal_down(h).chain_polynomial();
        seen.entry(ch.to_string()).or_insert(ch);
    }
    for ch in seen.values() {
        let (ok, w) = interlace_check(ch, &ct)?;
        if !ok {
            return Ok((false, w));
        }
    }
    Ok((
        true,
        json!({"truncation": ct.to_string(), "distinct_coatom_polys": seen.len()}),
    ))
}

/// Every rank selection `S ∋ 0` of `{0, …, ρ(P)}` has a `[-1, 0]`-rooted
/// chain polynomial.
fn rank_selections(p: &Poset) -> Result<(bool, Value), String> {
    let h = p.height();
    let mut count = 0;
    for mask in 0u32..(1 << h) {
        let s: BTreeSet<usize> = std::iter::once(0)
            .chain((1..=h).filter(|k| mask >> (k - 1) & 1 == 1))
            .collect();
        let (ok, w) = rooted_check(&p.rank_selected(&s).chain_polynomial())?;
        count += 1;
        if !ok {
            return Ok((false, json!({"selection": s, "chain": w})));
        }
    }
    Ok((true, json!({"selections": count})))
}

fn rank3(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let p = poset_of(inst)?;
    let Some(l) = lattice_of(c, &p) else {
        return Ok(());
    };
    let geometric = c.check("geometric-rank3", || {
        Ok((
            l.is_geometric() && p.height() == 3,
            json!({"profile": p.rank_profile()}),
        ))
    });
    if !geometric {
        return Ok(());
    }
    let cp = p.chain_polynomial();
    c.check("chain-polynomial [-1,0]-rooted", || rooted_check(&cp));
    c.check("rank3-formula", || {
        let f = rank3_formula(&p).map_err(|e| e.to_string())?;
        Ok((
            f == cp,
            json!({"formula": f.to_string(), "dp": cp.to_string()}),
        ))
    });
    c.check("discriminant", || {
        let d = rank3_discriminant(&l).map_err(|e| e.to_string())?;
        Ok((d >= 0, json!({"discriminant": d})))
    });
    Ok(())
}

fn paving(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let p = poset_of(inst)?;
    c.check("chain-polynomial [-1,0]-rooted", || chain_check(&p));
    c.check("truncation-identity", || identity_check(&p));
    c.check("coatom-interlacing", || coatom_interlacing(&p));
    if p.height() <= 6 {
        c.check("rank-selections", || rank_selections(&p));
    }
    Ok(())
}

fn rows_checks(c: &mut Checker, r: &RMatrix) -> Option<Vec<ExactPoly>> {
    let resolved = c.check("resolve", || match resolve(r) {
        Ok(w) => Ok((w.verify(r), w.to_json())),
        Err(f) => Ok((false, serde_json::to_value(&f).unwrap())),
    });
    if r.order() <= 8 {
        c.check("total-nonnegativity", || {
            let tn = all_minors_nonnegative(&r.dense()).ok_or("order too large")?;
            Ok((
                tn == resolved,
                json!({"all_minors_nonnegative": tn, "resolvable": resolved}),
            ))
        });
    }
    if !resolved {
        return None;
    }
    let ps = chain_polys_from_rmatrix(r);
    c.check("p_n [-1,0]-rooted", || {
        for (n, p) in ps.iter().enumerate() {
            let (ok, w) = rooted_check(p)?;
            if !ok {
                return Ok((false, json!({"n": n, "p": w})));
            }
        }
        Ok((
            true,
            json!({"p": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()}),
        ))
    });
    c.check("p_n interlaces p_n+1", || {
        for (n, w) in ps.windows(2).enumerate() {
            let (ok, wit) = interlace_check(&w[0], &w[1])?;
            if !ok {
                return Ok((false, json!({"n": n, "pair": wit})));
            }
        }
        Ok((true, json!({"pairs": ps.len().saturating_sub(1)})))
    });
    Some(ps)
}

fn dowling(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let (m, rows) = match build(inst)? {
        Built::Rows { m, rows } => (m, rows),
        _ => return Err(DslError::Malformed(inst.into(), "expected dowling-rows".into()).into()),
    };
    c.check("operator-identity", || {
        let w = dowling_whitney(m, rows.order());
        let ends = (0..=rows.order()).all(|n| w.get(n, 0) == &1.into() && w.get(n, n) == &1.into());
        for n in 1..=rows.order() {
            let expect = alpha_operator(m, &rows.row_poly(n - 1));
            if rows.row_poly(n) != expect {
                return Ok((false, json!({"n": n, "row": rows.row_poly(n).to_string(), "expected": expect.to_string()})));
            }
        }
        Ok((ends, json!({"rows": rows.to_string()})))
    });
    rows_checks(c, &rows);
    if m == 1 && rows.order() <= 6 {
        c.check("partition-dual-rows", || {
            let p = crate::constructors::partition_lattice(rows.order() + 1)
                .map_err(|e| e.to_string())?;
            let r = is_quasi_rank_uniform(&p.dual()).map_err(|e| e.to_string())?;
            Ok((
                r.as_ref() == Some(&rows),
                json!({"dual_rows": r.map(|r| r.to_string())}),
            ))
        });
    }
    Ok(())
}

fn parse_design(inst: &str) -> Result<Design, VerifyError> {
    let bad = || {
        VerifyError::Dsl(DslError::Malformed(
            inst.into(),
            "expected a design family".into(),
        ))
    };
    let mut it = inst.split(':');
    let num = |s: Option<&str>| s.and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad);
    let d = match it.next() {
        Some("fano-design") => Design::fano(),
        Some("complete-design") => {
            Design::complete(num(it.next())?, num(it.next())?).map_err(DslError::from)?
        }
        Some("affine-design") => Design::affine_plane(num(it.next())?).map_err(DslError::from)?,
        _ => return Err(bad()),
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok(d)
}

fn designs(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let d = parse_design(inst)?;
    c.check("design-parameters", || {
        let ok = Design::new(d.n, d.blocks.clone(), d.s).is_ok_and(|x| x.lambda == d.lambda);
        Ok((
            ok,
            json!({"s": d.s, "n": d.n, "k": d.k, "lambda": d.lambda, "blocks": d.blocks.len()}),
        ))
    });
    let fl = design_poset(&d).map_err(DslError::from)?;
    let p = fl.poset();
    c.check("construction-isomorphism", || {
        let host = truncated_boolean(d.n, d.n - d.k - 1).map_err(|e| e.to_string())?;
        let h: Vec<usize> = d.blocks.iter().map(|b| host.index_of(b).unwrap()).collect();
        let top = host.len() - 1;
        let q = paving_construction(host.poset(), &h, top, d.s).map_err(|e| e.to_string())?;
        Ok((
            is_isomorphic(p, &q),
            json!({"size": p.len(), "construction_size": q.len()}),
        ))
    });
    if d.k == d.s + 1 && d.blocks.len() == crate::constructors::k_subsets(d.n, d.k).len() {
        // all k-sets: the Boolean algebra with rank k - 1 removed
        c.check("complete-design-rank-selection", || {
            let s: BTreeSet<usize> = (0..d.k - 1).chain([d.k, d.n]).collect();
            let b = boolean_lattice(d.n);
            Ok((
                is_isomorphic(p, &b.poset().rank_selected(&s)),
                json!({"ranks": s}),
            ))
        });
    }
    c.check("chain-polynomial [-1,0]-rooted", || chain_check(p));
    c.check("truncation-identity", || identity_check(p));
    if p.height() <= 6 {
        c.check("rank-selections", || rank_selections(p));
    }
    Ok(())
}

fn triangular(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let p = poset_of(inst)?;
    let Some(l) = lattice_of(c, &p) else {
        return Ok(());
    };
    // Triangular semimodular lattices carry R(P) themselves; geometric
    // lattices whose duals are rank uniform (partition lattices) carry it on
    // the dual.
    let mut source = None;
    c.check("hypothesis", || {
        let tri = is_triangular(&p).unwrap_or(false);
        if l.is_semimodular() && tri {
            source = Some(p.clone());
            return Ok((true, json!({"case": "triangular semimodular"})));
        }
        let dual = p.dual();
        if l.is_geometric() && is_quasi_rank_uniform(&dual).ok().flatten().is_some() {
            source = Some(dual);
            return Ok((true, json!({"case": "geometric with rank-uniform dual"})));
        }
        Ok((
            false,
            json!({"semimodular": l.is_semimodular(), "triangular": tri}),
        ))
    });
    let Some(q) = source else { return Ok(()) };
    let Some(r) = is_quasi_rank_uniform(&q).map_err(|e| VerifyError::Param(e.to_string()))? else {
        c.check("rank-uniform", || Ok((false, json!({}))));
        return Ok(());
    };
    rows_checks(c, &r);
    c.check("chain-polynomial via subdivision", || {
        let f = q
            .quasi_rank_generating_polynomial()
            .map_err(|e| e.to_string())?;
        let e = subdivision_operator(&r, &f).map_err(|e| e.to_string())?;
        let via = &ExactPoly::from_ints([1, 1]) * &e;
        let cp = p.chain_polynomial();
        Ok((
            via == cp,
            json!({"dp": cp.to_string(), "subdivision": via.to_string()}),
        ))
    });
    c.check("chain-polynomial [-1,0]-rooted", || chain_check(&p));
    Ok(())
}

fn ordinal_sum(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let (a, b) = inst
        .split_once('+')
        .ok_or_else(|| DslError::Malformed(inst.into(), "expected `<P>+<Q>`".into()))?;
    let (p, q) = (poset_of(a)?, poset_of(b)?);
    let rows = |x: &Poset| is_quasi_rank_uniform(x).ok().flatten();
    let (Some(r), Some(s)) = (rows(&p), rows(&q)) else {
        c.check("inputs-rank-uniform", || Ok((false, json!({}))));
        return Ok(());
    };
    c.check("inputs-resolve", || {
        let ok = resolve(&r).is_ok() && resolve(&s).is_ok();
        Ok((ok, json!({"R": r.to_string(), "S": s.to_string()})))
    });
    let t = ordinal_sum_rows(&r, &s).map_err(|e| VerifyError::Param(e.to_string()))?;
    c.check("rst-resolves", || match resolve(&t) {
        Ok(w) => Ok((
            w.verify(&t),
            json!({"T": t.to_string(), "witness": w.to_json()}),
        )),
        Err(f) => Ok((false, json!({"T": t.to_string(), "failure": f}))),
    });
    let sum = Poset::ordinal_sum(&p, &q);
    c.check("rank-rows-match", || {
        let direct = rows(&sum);
        Ok((
            direct.as_ref() == Some(&t),
            json!({"direct": direct.map(|d| d.to_string())}),
        ))
    });
    c.check("chain-polynomial product", || {
        let cs = sum.chain_polynomial();
        let prod = &p.chain_polynomial() * &q.chain_polynomial();
        Ok((cs == prod, json!({"sum": cs.to_string()})))
    });
    c.check("chain-polynomial [-1,0]-rooted", || chain_check(&sum));
    Ok(())
}

/// Splits `see:<host>:cut=<items>`.
fn parse_see(inst: &str) -> Result<(FlatLattice, String, Option<FixedBitSet>), VerifyError> {
    let bad = |m: &str| VerifyError::Dsl(DslError::Malformed(inst.into(), m.into()));
    let rest = inst
        .strip_prefix("see:")
        .ok_or_else(|| bad("expected see:<host>:cut=..."))?;
    let (host_s, cut) = rest
        .rsplit_once(":cut=")
        .ok_or_else(|| bad("missing cut"))?;
    let host = match build(host_s)? {
        Built::Flats(f) => f,
        _ => return Err(bad("host must be a lattice of flats")),
    };
    let x = match cut {
        "none" => None,
        "top" => Some(bitset(host.ground(), 0..host.ground())),
        _ => {
            let items: Vec<usize> = cut
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1 && v <= host.ground())
                        .map(|v| v - 1)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad cut items"))?;
            Some(bitset(host.ground(), items))
        }
    };
    Ok((host, host_s.to_string(), x))
}

fn extend(host: &FlatLattice, x: Option<&FixedBitSet>) -> Result<FlatLattice, String> {
    let lat = host.lattice().map_err(|e| e.to_string())?;
    let mc = match x {
        None => ModularCut::empty(&lat),
        Some(x) => {
            let i = host.closure(x).ok_or("no closure")?;
            principal_cut(&lat, i).map_err(|e| e.to_string())?
        }
    };
    single_element_extension(host, &mc).map_err(|e| e.to_string())
}

fn see(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let (host, host_s, x) = parse_see(inst)?;
    let ext = match build(inst)? {
        Built::Flats(f) => f,
        _ => unreachable!("see strings build lattices of flats"),
    };
    let n = host.ground();
    let p = ext.poset();
    c.check("geometric", || {
        let l = ext.lattice().map_err(|e| e.to_string())?;
        Ok((l.is_geometric(), json!({"profile": p.rank_profile()})))
    });
    c.check("chain-polynomial [-1,0]-rooted", || chain_check(p));
    c.check("truncation-identity", || identity_check(p));
    let truncations = if host_s.starts_with("boolean:") {
        0
    } else {
        host_s
            .rsplit(':')
            .next()
            .and_then(|k| k.parse::<usize>().ok())
            .unwrap_or(0)
    };
    if truncations == 0 {
        if let Some(x) = &x {
            let m = x.count_ones(..);
            if m >= 2 && m < n {
                c.check("product-isomorphism", || {
                    let a = truncated_boolean(m + 1, 1).map_err(|e| e.to_string())?;
                    let b = boolean_lattice(n - m);
                    let prod = Poset::direct_product(a.poset(), b.poset());
                    let pp = p.p_polynomial().map_err(|e| e.to_string())?;
                    let pa = a.poset().p_polynomial().map_err(|e| e.to_string())?;
                    let pb = b.poset().p_polynomial().map_err(|e| e.to_string())?;
                    let dia = diamond_product(&pa, &pb);
                    Ok((
                        is_isomorphic(p, &prod) && dia == pp,
                        json!({"p": pp.to_string(), "diamond": dia.to_string()}),
                    ))
                });
            }
            c.check("coatom-formula", || {
                let l = ext.lattice().map_err(|e| e.to_string())?;
                let mut direct: Vec<String> = l
                    .coatoms()
                    .iter()
                    .map(|&h| set_label(ext.flat(h)))
                    .collect();
                let mut formula: Vec<String> = truncated_extension_coatoms(n, x)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(set_label)
                    .collect();
                direct.sort();
                formula.sort();
                Ok((
                    direct == formula,
                    json!({"coatoms": direct, "formula": formula}),
                ))
            });
        }
    } else {
        match &x {
            Some(xs) => {
                c.check("truncation-isomorphism", || {
                    let full = extend(&boolean_lattice(n), Some(xs))?;
                    let mut t = full.poset().clone();
                    for _ in 0..truncations {
                        t = t.truncation();
                    }
                    Ok((is_isomorphic(p, &t), json!({"sizes": [p.len(), t.len()]})))
                });
            }
            None if truncations == 1 => {
                c.check("empty-cut-paving", || {
                    let l = ext.lattice().map_err(|e| e.to_string())?;
                    let mut direct: Vec<String> = l
                        .coatoms()
                        .iter()
                        .map(|&h| set_label(ext.flat(h)))
                        .collect();
                    let mut expect: Vec<String> = vec![set_label(&bitset(n + 1, 0..n))];
                    for a in crate::constructors::k_subsets(n, n - 2) {
                        expect.push(set_label(&bitset(n + 1, a.ones().chain([n]))));
                    }
                    direct.sort();
                    expect.sort();
                    Ok((direct == expect, json!({"coatoms": direct})))
                });
            }
            None => {}
        }
    }
    Ok(())
}

fn diamond(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let (a, b) = inst
        .split_once('*')
        .ok_or_else(|| DslError::Malformed(inst.into(), "expected `<P>*<Q>`".into()))?;
    let (p, q) = (poset_of(a)?, poset_of(b)?);
    let prod = Poset::direct_product(&p, &q);
    c.check("product-diamond", || {
        let pp = p.p_polynomial().map_err(|e| e.to_string())?;
        let pq = q.p_polynomial().map_err(|e| e.to_string())?;
        let direct = prod.p_polynomial().map_err(|e| e.to_string())?;
        let dia = diamond_product(&pp, &pq);
        Ok((
            dia == direct,
            json!({"direct": direct.to_string(), "diamond": dia.to_string()}),
        ))
    });
    c.check("chain-p-relation", || {
        for x in [&p, &q, &prod] {
            let px = x.p_polynomial().map_err(|e| e.to_string())?;
            let lhs = x.chain_polynomial().shift(1);
            let rhs = &ExactPoly::from_ints([1, 2, 1]) * &px;
            if lhs != rhs {
                return Ok((
                    false,
                    json!({"c": x.chain_polynomial().to_string(), "p": px.to_string()}),
                ));
            }
        }
        Ok((true, json!({})))
    });
    Ok(())
}

fn counterexample(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let bad = || {
        VerifyError::Dsl(DslError::Malformed(
            inst.into(),
            "expected eulerian:<n>:qmax=<k>".into(),
        ))
    };
    let mut it = inst.split(':');
    if it.next() != Some("eulerian") {
        return Err(bad());
    }
    let n: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let q_max: u64 = it
        .next()
        .and_then(|s| s.strip_prefix("qmax="))
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad)?;
    if it.next().is_some() || n < 3 {
        return Err(bad());
    }
    let stats = PermStats::enumerate(n)?;
    let big = n * (n - 1) / 2;
    c.check("permutation-statistics", || {
        let fact: u64 = (1..=n as u64).product();
        let ranges = stats.table.len() == n && stats.table.iter().all(|r| r.len() == big + 1);
        Ok((
            stats.total() == fact && ranges,
            json!({"total": stats.total()}),
        ))
    });
    let a = stats.polynomial(&rat(1));
    c.check("q=1 specialization", || {
        let brute = crate::verify::eulerian(n).map_err(|e| e.to_string())?;
        Ok((brute == a, json!({"A_n": a.to_string()})))
    });
    c.check("self-interlacing", || interlace_check(&a, &a));
    c.check("limit", || {
        // only the reversal reaches inv = n(n-1)/2, and it has n-1 descents
        let top: Vec<u64> = stats.table.iter().map(|r| r[big]).collect();
        let mut expect = vec![0; n];
        expect[n - 1] = 1;
        Ok((top == expect, json!({"top_inversion_row": top})))
    });
    c.check("minimal failing q", || {
        let s = counterexample_search(n, q_max).map_err(|e| e.to_string())?;
        Ok((s.failure.is_some(), s.to_json()))
    });
    if n <= 3 {
        for q in [2usize, 3] {
            c.check(&format!("h of B_{n}({q})"), || {
                let l = subspace_lattice(n, q).map_err(|e| e.to_string())?;
                let proper = l.proper_part().map_err(|e| e.to_string())?;
                let h = h_from_f(&proper.chain_polynomial(), n - 1).map_err(|e| e.to_string())?;
                let aq = stats.polynomial(&Rat::from_integer((q as i64).into()));
                Ok((
                    h == aq,
                    json!({"h": h.to_string(), "A_n(t;q)": aq.to_string()}),
                ))
            });
        }
    }
    Ok(())
}

fn incidence(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let p = poset_of(inst)?;
    let Some(l) = lattice_of(c, &p) else {
        return Ok(());
    };
    let semi = c.check("semimodular", || {
        Ok((
            l.is_semimodular(),
            json!({"geometric": l.is_geometric(), "size": l.len()}),
        ))
    });
    if !semi || l.len() > 500 {
        return Ok(());
    }
    let table = l.r_table();
    let n = l.len();
    let bot = l.bottom();
    c.check("R(0,y) = t^rank(y)", || {
        let bad = (0..n).find(|&y| table.poly(bot, y) != ExactPoly::monomial(l.rank(y)));
        Ok((
            bad.is_none(),
            json!({"first_failure": bad.map(|y| p.label(y))}),
        ))
    });
    let geometric = l.is_geometric();
    c.check("divisibility bounds", || {
        for x in 0..n {
            for y in p.up_set(x).ones() {
                let gap = l.rank(y) - l.rank(x);
                let v = table.valuation(x, y);
                let ok = v.is_some_and(|v| v >= gap && (!geometric || v == gap));
                if !ok {
                    return Ok((false, json!({"x": p.label(x), "y": p.label(y), "R": table.poly(x, y).to_string()})));
                }
            }
        }
        Ok((true, json!({"exact_valuation": geometric})))
    });
    c.push(check_rprec(&l));
    if n <= 64 {
        c.check("mobius route", || {
            for x in 0..n {
                for y in p.up_set(x).ones() {
                    if incidence_r_mobius(&p, x, y).as_ref() != Some(&table.poly(x, y)) {
                        return Ok((false, json!({"x": p.label(x), "y": p.label(y)})));
                    }
                }
            }
            Ok((true, json!({})))
        });
    }
    Ok(())
}

fn oracle(inst: &str, c: &mut Checker) -> Result<(), VerifyError> {
    let p = poset_of(inst)?;
    c.check("dp = brute force", || {
        let brute = brute_force_oracle(&p).map_err(|e| e.to_string())?;
        let dp = p.chain_profile();
        Ok((
            brute.to_poly() == dp.to_poly(),
            json!({"dp": dp.to_poly().to_string()}),
        ))
    });
    if p.bottom().is_some() {
        // chain polynomials of posets are not always real-rooted; this is
        // recorded, not asserted
        let cp = p.chain_polynomial();
        let rr = is_real_rooted(&cp).unwrap_or(false);
        c.check("chain-polynomial recorded", || {
            Ok((true, json!({"real_rooted": rr, "chain": cp.to_string()})))
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_seeded() {
        assert_eq!(default_instances("rank3", 5).unwrap()[0], "rank3-random:5");
        assert_eq!(
            default_instances("diamond", 1).unwrap(),
            default_instances("diamond", 1).unwrap()
        );
        assert_eq!(default_instances("ordinal-sum", 1).unwrap().len(), 24);
        assert!(default_instances("nope", 0).is_err());
    }

    #[test]
    fn see_corpus_shape() {
        let v = see_corpus(3);
        assert!(v.contains(&"see:boolean:3:cut=1,2".to_string()));
        assert!(v.contains(&"see:trunc-boolean:3:1:cut=1".to_string()));
        assert!(!v.contains(&"see:trunc-boolean:3:1:cut=1,2".to_string()));
    }

    #[test]
    fn truncation_identity_on_boolean() {
        let (l, r) = truncation_identity(boolean_lattice(4).poset()).unwrap();
        assert_eq!(l, r);
    }
}
