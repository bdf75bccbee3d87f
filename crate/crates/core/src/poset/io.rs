//! Text format:
//!
//! ```text
//! poset 3
//! cover 0 1
//! cover 1 2
//! label 0 bottom
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::fmt::Write;

use super::{Poset, PosetError};

fn perr(line: usize, msg: impl Into<String>) -> PosetError {
    PosetError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn read_poset(text: &str) -> Result<Poset, PosetError> {
    let mut n = None;
    let mut covers = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut w = line.split_whitespace();
        let head = w.next().unwrap();
        let num = |s: Option<&str>| -> Result<usize, PosetError> {
            s.ok_or_else(|| perr(line_no, "missing field"))?
                .parse::<usize>()
                .map_err(|e| perr(line_no, e.to_string()))
        };
        match (head, n) {
            ("poset", None) => n = Some(num(w.next())?),
            ("poset", Some(_)) => return Err(perr(line_no, "duplicate header")),
            (_, None) => return Err(perr(line_no, "expected `poset <n>` header")),
            ("cover", Some(_)) => covers.push((num(w.next())?, num(w.next())?)),
            ("label", Some(_)) => {
                let x = num(w.next())?;
                let rest: Vec<&str> = w.by_ref().collect();
                if rest.is_empty() {
                    return Err(perr(line_no, "missing label"));
                }
                labels.push((x, rest.join(" ")));
                continue;
            }
            (other, _) => return Err(perr(line_no, format!("unknown directive `{other}`"))),
        }
        if w.next().is_some() {
            return Err(perr(line_no, "trailing fields"));
        }
    }
    let n = n.ok_or_else(|| perr(0, "empty input"))?;
    let mut p = Poset::from_covers(n, &covers)?;
    if !labels.is_empty() {
        let mut names: Vec<String> = (0..n).map(|x| x.to_string()).collect();
        for (x, l) in labels {
            if x >= n {
                return Err(PosetError::OutOfRange(x));
            }
            names[x] = l;
        }
        p = p.with_labels(names);
    }
    Ok(p)
}

pub fn write_poset(p: &Poset) -> String {
    let mut s = format!("poset {}\n", p.len());
    for (x, y) in p.cover_pairs() {
        writeln!(s, "cover {x} {y}").unwrap();
    }
    if let Some(labels) = p.labels() {
        for (x, l) in labels.iter().enumerate() {
            if *l != x.to_string() {
                writeln!(s, "label {x} {l}").unwrap();
            }
        }
    }
    s
}
