//! Family strings used by the CLI and the suites, e.g. `boolean:4`,
//! `trunc-boolean:5:1`, `dowling-rows:m=2:N=6`, `see:boolean:4:cut=1,2`,
//! `dual:partition:5`, `file:poset.txt`.

use std::fs;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::constructors::random::{near_pencil, random_bounded_poset, random_poset, random_rank3};
use crate::constructors::{
    affine_lattice, bitset, boolean_lattice, design_poset, dowling_rows, fano_lattice,
    partition_lattice, paving_lattice_from_dpartition, principal_cut, single_element_extension,
    subspace_lattice, truncated_boolean, vamos, ConstructError, DPartition, Design, FlatLattice,
    ModularCut,
};
use crate::poset::{chain, read_poset, Poset, PosetError};
use crate::tn::RMatrix;

#[derive(Debug, Error)]
pub enum DslError {
    #[error("malformed family string `{0}`: {1}")]
    Malformed(String, String),
    #[error("unknown family `{0}`")]
    Unknown(String),
    #[error("{path}: {msg}")]
    File { path: String, msg: String },
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// What a family string builds.
#[derive(Debug, Clone)]
pub enum Built {
    /// A lattice whose elements carry their atom sets.
    Flats(FlatLattice),
    Poset(Poset),
    /// Rank rows only (Dowling lattices).
    Rows {
        m: u64,
        rows: RMatrix,
    },
}

impl Built {
    pub fn poset(&self) -> Option<&Poset> {
        match self {
            Built::Flats(f) => Some(f.poset()),
            Built::Poset(p) => Some(p),
            Built::Rows { .. } => None,
        }
    }

    pub fn into_poset(self) -> Option<Poset> {
        match self {
            Built::Flats(f) => Some(f.into_poset()),
            Built::Poset(p) => Some(p),
            Built::Rows { .. } => None,
        }
    }

    pub fn flats(&self) -> Option<&FlatLattice> {
        match self {
            Built::Flats(f) => Some(f),
            _ => None,
        }
    }
}

fn malformed(s: &str, msg: impl Into<String>) -> DslError {
    DslError::Malformed(s.to_string(), msg.into())
}

fn num<T: std::str::FromStr>(s: &str, field: Option<&str>) -> Result<T, DslError> {
    let f = field.ok_or_else(|| malformed(s, "missing parameter"))?;
    f.parse()
        .map_err(|_| malformed(s, format!("`{f}` is not a number")))
}

fn keyed<T: std::str::FromStr>(s: &str, field: Option<&str>, key: &str) -> Result<T, DslError> {
    let f = field.ok_or_else(|| malformed(s, format!("missing `{key}=`")))?;
    let v = f
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| malformed(s, format!("expected `{key}=<value>`, got `{f}`")))?;
    num(s, Some(v))
}

fn no_more<'a>(s: &str, mut rest: impl Iterator<Item = &'a str>) -> Result<(), DslError> {
    match rest.next() {
        Some(extra) => Err(malformed(s, format!("unexpected field `{extra}`"))),
        None => Ok(()),
    }
}

fn read_file(path: &str) -> Result<String, DslError> {
    fs::read_to_string(path).map_err(|e| DslError::File {
        path: path.to_string(),
        msg: e.to_string(),
    })
}

/// Parses a family string and builds the instance.
pub fn build(s: &str) -> Result<Built, DslError> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("dual:") {
        let p = build(inner)?
            .into_poset()
            .ok_or_else(|| malformed(s, "rank rows have no dual poset"))?;
        return Ok(Built::Poset(p.dual()));
    }
    if let Some(path) = s.strip_prefix("file:") {
        return Ok(Built::Poset(read_poset(&read_file(path)?)?));
    }
    if let Some(rest) = s.strip_prefix("paving:") {
        let path = rest
            .strip_prefix("file=")
            .ok_or_else(|| malformed(s, "expected `paving:file=<path>`"))?;
        let dp = parse_dpartition(&read_file(path)?).map_err(|msg| DslError::File {
            path: path.to_string(),
            msg,
        })?;
        return Ok(Built::Flats(paving_lattice_from_dpartition(&dp)?));
    }
    if let Some(rest) = s.strip_prefix("see:") {
        return build_see(s, rest);
    }
    let mut it = s.split(':');
    let head = it.next().unwrap_or_default();
    let built = match head {
        "boolean" => {
            let n: usize = num(s, it.next())?;
            if n > 12 {
                return Err(malformed(s, "n <= 12"));
            }
            Built::Flats(boolean_lattice(n))
        }
        "trunc-boolean" => {
            let n = num(s, it.next())?;
            let k = num(s, it.next())?;
            if n > 12 {
                return Err(malformed(s, "n <= 12"));
            }
            Built::Flats(truncated_boolean(n, k)?)
        }
        "subspace" => Built::Poset(subspace_lattice(num(s, it.next())?, num(s, it.next())?)?),
        "affine" => Built::Poset(affine_lattice(num(s, it.next())?, num(s, it.next())?)?),
        "partition" => Built::Poset(partition_lattice(num(s, it.next())?)?),
        "vamos" => Built::Flats(vamos()),
        "fano" => Built::Flats(fano_lattice()),
        "fano-design" => Built::Flats(design_poset(&Design::fano())?),
        "complete-design" => Built::Flats(design_poset(&Design::complete(
            num(s, it.next())?,
            num(s, it.next())?,
        )?)?),
        "affine-design" => Built::Flats(design_poset(&Design::affine_plane(num(s, it.next())?)?)?),
        "chain" => {
            let n: usize = num(s, it.next())?;
            if n > 5000 {
                return Err(malformed(s, "n <= 5000"));
            }
            Built::Poset(chain(n))
        }
        "dowling-rows" => {
            let m: u64 = keyed(s, it.next(), "m")?;
            let big_n: usize = keyed(s, it.next(), "N")?;
            if m == 0 || big_n > 12 {
                return Err(malformed(s, "need m >= 1 and N <= 12"));
            }
            Built::Rows {
                m,
                rows: dowling_rows(m, big_n),
            }
        }
        "rank3-random" => Built::Flats(random_rank3(num(s, it.next())?)?),
        "near-pencil" => Built::Flats(near_pencil(num(s, it.next())?)?),
        "random" => {
            let n: usize = num(s, it.next())?;
            let seed = num(s, it.next())?;
            if n > 20 {
                return Err(malformed(s, "n <= 20"));
            }
            Built::Poset(random_poset(n, 0.3, seed))
        }
        "random-bounded" => {
            let n: usize = num(s, it.next())?;
            let seed = num(s, it.next())?;
            if n > 20 {
                return Err(malformed(s, "n <= 20"));
            }
            Built::Poset(random_bounded_poset(n, seed)?)
        }
        _ => return Err(DslError::Unknown(s.to_string())),
    };
    no_more(s, it)?;
    Ok(built)
}

/// `see:<host>:cut=<items>` with `<items>` 1-based atoms joined by commas, or
/// `none` for the empty cut and `top` for `{1̂}`.
fn build_see(s: &str, rest: &str) -> Result<Built, DslError> {
    let (host, cut) = rest
        .rsplit_once(":cut=")
        .ok_or_else(|| malformed(s, "expected `see:<host>:cut=<items>`"))?;
    let host = match build(host)? {
        Built::Flats(f) => f,
        _ => return Err(malformed(s, "host must be a lattice of flats")),
    };
    let lat = host.lattice().map_err(ConstructError::from)?;
    let mc = match cut {
        "none" => ModularCut::empty(&lat),
        "top" => ModularCut::from_elements(&lat, [lat.top()]),
        items => {
            let items: Vec<usize> = items
                .split(',')
                .map(|i| match i.trim().parse::<usize>() {
                    Ok(v) if v >= 1 && v <= host.ground() => Ok(v - 1),
                    _ => Err(malformed(s, format!("bad atom `{i}`"))),
                })
                .collect::<Result<_, _>>()?;
            let x = host
                .closure(&bitset(host.ground(), items))
                .ok_or_else(|| malformed(s, "cut generator has no closure"))?;
            principal_cut(&lat, x)?
        }
    };
    Ok(Built::Flats(single_element_extension(&host, &mc)?))
}

/// ```text
/// dpartition 8 3
/// block 1 2 3 4
/// block 1 4 5 6
/// ```
/// Elements are 1-based; blank lines and `#` comments are ignored.
pub fn parse_dpartition(text: &str) -> Result<DPartition, String> {
    let mut header = None;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut w = line.split_whitespace();
        let nums = |w: std::str::SplitWhitespace| -> Result<Vec<usize>, String> {
            w.map(|x| {
                x.parse::<usize>()
                    .map_err(|e| format!("line {}: {e}", i + 1))
            })
            .collect()
        };
        match w.next() {
            Some("dpartition") if header.is_none() => {
                let v = nums(w)?;
                if v.len() != 2 {
                    return Err(format!("line {}: expected `dpartition <n> <d>`", i + 1));
                }
                header = Some((v[0], v[1]));
            }
            Some("block") if header.is_some() => {
                let v = nums(w)?;
                let n = header.unwrap().0;
                if v.iter().any(|&x| x == 0 || x > n) {
                    return Err(format!("line {}: element outside 1..={n}", i + 1));
                }
                blocks.push(v);
            }
            _ => return Err(format!("line {}: unexpected `{line}`", i + 1)),
        }
    }
    let (n, d) = header.ok_or("missing `dpartition <n> <d>` header")?;
    let blocks: Vec<FixedBitSet> = blocks
        .iter()
        .map(|b| bitset(n, b.iter().map(|x| x - 1)))
        .collect();
    DPartition::new(n, blocks, d).map_err(|e| e.to_string())
}

pub fn write_dpartition(dp: &DPartition) -> String {
    let mut out = format!("dpartition {} {}\n", dp.n, dp.d);
    for b in &dp.blocks {
        let items: Vec<String> = b.ones().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("block {}\n", items.join(" ")));
    }
    out
}
