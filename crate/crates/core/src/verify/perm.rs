//! Descent and inversion statistics over the symmetric group.

use serde_json::json;

use super::{poly_witness, VerifyError};
use crate::poly::{interlaces, ExactPoly, PolyError, Rat};

/// Joint `(des, inv)` distribution over `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermStats {
    pub n: usize,
    /// `table[des][inv]` is the number of permutations with those statistics.
    pub table: Vec<Vec<u64>>,
}

pub const MAX_PERM_N: usize = 10;

impl PermStats {
    /// Direct enumeration of all `n!` permutations in lexicographic order.
    pub fn enumerate(n: usize) -> Result<PermStats, VerifyError> {
        if n == 0 || n > MAX_PERM_N {
            return Err(VerifyError::Param(format!(
                "need 1 <= n <= {MAX_PERM_N}, got {n}"
            )));
        }
        let max_inv = n * (n - 1) / 2;
        let mut table = vec![vec![0u64; max_inv + 1]; n];
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let des = perm.windows(2).filter(|w| w[0] > w[1]).count();
            let inv = (0..n)
                .map(|i| (i + 1..n).filter(|&j| perm[i] > perm[j]).count())
                .sum::<usize>();
            table[des][inv] += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(PermStats { n, table })
    }

    pub fn total(&self) -> u64 {
        self.table.iter().flatten().sum()
    }

    /// `Σ q^inv t^des`.
    pub fn polynomial(&self, q: &Rat) -> ExactPoly {
        let coeffs = self
            .table
            .iter()
            .map(|row| {
                let mut acc = Rat::from_integer(0.into());
                let mut qp = Rat::from_integer(1.into());
                for &c in row {
                    acc += &qp * Rat::from_integer(c.into());
                    qp *= q;
                }
                acc
            })
            .collect();
        ExactPoly::new(coeffs)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `A_n(t) = Σ_{σ ∈ S_n} t^{des σ}`.
pub fn eulerian(n: usize) -> Result<ExactPoly, VerifyError> {
    Ok(PermStats::enumerate(n)?.polynomial(&Rat::from_integer(1.into())))
}

/// `A_n(t; q) = Σ_{σ ∈ S_n} q^{inv σ} t^{des σ}`.
pub fn q_eulerian(n: usize, q: &Rat) -> Result<ExactPoly, VerifyError> {
    Ok(PermStats::enumerate(n)?.polynomial(q))
}

/// Outcome of scanning `q = 1, 2, …, q_max` for `A_n(t) ⋠ A_n(t; q)`.
#[derive(Debug, Clone)]
pub struct CounterexampleSearch {
    pub n: usize,
    pub q_max: u64,
    pub eulerian: ExactPoly,
    /// Least failing `q` with its `A_n(t; q)` and the reason interlacing
    /// fails.
    pub failure: Option<(u64, ExactPoly, String)>,
}

impl CounterexampleSearch {
    pub fn to_json(&self) -> serde_json::Value {
        match &self.failure {
            Some((q, h, reason)) => json!({
                "n": self.n,
                "q_max": self.q_max,
                "minimal_q": q,
                "reason": reason,
                "eulerian": poly_witness(&self.eulerian),
                "q_eulerian": poly_witness(h),
            }),
            None => json!({
                "n": self.n,
                "q_max": self.q_max,
                "minimal_q": null,
                "note": format!("no failure for q <= {}", self.q_max),
            }),
        }
    }
}

/// Scans `q = 1..=q_max` with the exact interlacing test.
pub fn counterexample_search(n: usize, q_max: u64) -> Result<CounterexampleSearch, VerifyError> {
    if n < 3 {
        return Err(VerifyError::Param(format!("need n >= 3, got {n}")));
    }
    let stats = PermStats::enumerate(n)?;
    let a = stats.polynomial(&Rat::from_integer(1.into()));
    let mut failure = None;
    for q in 1..=q_max {
        let h = stats.polynomial(&Rat::from_integer(q.into()));
        let reason = match interlaces(&a, &h) {
            Ok(true) => continue,
            Ok(false) => "roots of A_n(t) do not interlace those of A_n(t;q)".to_string(),
            Err(PolyError::NotRealRooted) => "A_n(t;q) is not real-rooted".to_string(),
            Err(e) => return Err(VerifyError::Poly(e)),
        };
        failure = Some((q, h, reason));
        break;
    }
    Ok(CounterexampleSearch {
        n,
        q_max,
        eulerian: a,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn small_eulerian() {
        assert_eq!(eulerian(3).unwrap(), ExactPoly::from_ints([1, 4, 1]));
        assert_eq!(eulerian(4).unwrap(), ExactPoly::from_ints([1, 11, 11, 1]));
        assert_eq!(
            q_eulerian(3, &rat(2)).unwrap(),
            ExactPoly::from_ints([1, 12, 8])
        );
        assert_eq!(q_eulerian(3, &rat(1)).unwrap(), eulerian(3).unwrap());
        assert!(eulerian(11).is_err());
    }

    #[test]
    fn permutation_count() {
        let s = PermStats::enumerate(5).unwrap();
        assert_eq!(s.total(), 120);
        assert_eq!(s.table.len(), 5);
        assert_eq!(s.table[4][10], 1);
        assert_eq!(s.table[0][0], 1);
    }
}
