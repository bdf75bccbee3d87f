//! Rank matrices `R(P)`, resolvability certificates, and the chain
//! polynomials and subdivision operator they determine.

use std::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{ExactPoly, Rat};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TnError {
    #[error("row {0} has {1} entries, expected {2}")]
    RowLength(usize, usize, usize),
    #[error("row {0} is not monic")]
    NotMonic(usize),
    #[error("row {0} has a negative entry")]
    NegativeEntry(usize),
    #[error("S_{0}(0) must be 1")]
    ConstantTerm(usize),
    #[error("degree {degree} exceeds matrix order {order}")]
    DegreeOverflow { degree: usize, order: usize },
    #[error("poset has no least element")]
    NoLeastElement,
    #[error("parse error on line {0}: {1}")]
    Parse(usize, String),
}

/// Lower-triangular nonnegative integer matrix with unit diagonal; row `n`
/// holds the coefficients of the monic degree-`n` polynomial `R_n(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl RMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<RMatrix, TnError> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(TnError::RowLength(n, row.len(), n + 1));
            }
            if !row[n].is_one() {
                return Err(TnError::NotMonic(n));
            }
            if row.iter().any(|c| c.is_negative()) {
                return Err(TnError::NegativeEntry(n));
            }
        }
        Ok(RMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<RMatrix, TnError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn from_polys(polys: &[ExactPoly]) -> Result<RMatrix, TnError> {
        let mut rows = Vec::with_capacity(polys.len());
        for (n, p) in polys.iter().enumerate() {
            let ints = p.integer_coeffs().ok_or(TnError::NotMonic(n))?;
            if p.degree() != Some(n) {
                return Err(TnError::NotMonic(n));
            }
            rows.push(ints);
        }
        Self::new(rows)
    }

    /// Largest row index `N`.
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row_poly(&self, n: usize) -> ExactPoly {
        ExactPoly::from_bigints(self.rows[n].iter().cloned())
    }

    pub fn row_polys(&self) -> Vec<ExactPoly> {
        (0..self.rows.len()).map(|n| self.row_poly(n)).collect()
    }

    /// Square matrix with zeros above the diagonal.
    pub fn dense(&self) -> Vec<Vec<BigInt>> {
        let m = self.rows.len();
        self.rows
            .iter()
            .map(|r| {
                (0..m)
                    .map(|k| r.get(k).cloned().unwrap_or_default())
                    .collect()
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> RMatrix {
        RMatrix {
            rows: self.rows[..=order].to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<RMatrix, TnError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: Result<Vec<BigInt>, _> = line.split_whitespace().map(str::parse).collect();
            rows.push(row.map_err(|e| TnError::Parse(i + 1, e.to_string()))?);
        }
        Self::new(rows)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let s: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// `R(P)` when `P` has a least element and is quasi-rank uniform.
pub fn is_quasi_rank_uniform(p: &Poset) -> Result<Option<RMatrix>, TnError> {
    p.bottom().ok_or(TnError::NoLeastElement)?;
    let mut rows: Vec<Option<Vec<BigInt>>> = vec![None; p.height() + 1];
    for x in 0..p.len() {
        let n = p.rank(x);
        let mut counts = vec![BigInt::zero(); n + 1];
        for z in p.down_set(x).ones() {
            counts[p.rank(z)] += 1;
        }
        match &rows[n] {
            Some(r) if *r != counts => return Ok(None),
            Some(_) => {}
            None => rows[n] = Some(counts),
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| r.expect("every rank is attained"))
        .collect();
    Ok(Some(RMatrix::new(rows)?))
}

/// Greedy certificate for `R_{n+1,k} = R_{n+1,k+1} + λ_{n,k} R_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionWitness {
    /// `r[n][k] = R_{n,k}(t)` for `0 <= k <= n <= N`.
    pub r: Vec<Vec<ExactPoly>>,
    /// `lambda[n][k]` for `0 <= k <= n < N`.
    pub lambda: Vec<Vec<Rat>>,
    /// Steps where both pivot and target were zero and `λ = 0` was chosen.
    pub zero_pivots: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ResolveFailure {
    #[error("negative multiplier at ({n},{k}): {lambda}")]
    NegativeMultiplier { n: usize, k: usize, lambda: String },
    #[error("divisibility failure at ({n},{k})")]
    Divisibility { n: usize, k: usize },
    #[error("nonzero residue in row {n}: {residue}")]
    NonzeroResidue { n: usize, residue: String },
}

impl ResolveFailure {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            ResolveFailure::NegativeMultiplier { n, k, .. }
            | ResolveFailure::Divisibility { n, k } => (n, k),
            ResolveFailure::NonzeroResidue { n, .. } => (n, n),
        }
    }
}

pub fn resolve(r: &RMatrix) -> Result<ResolutionWitness, ResolveFailure> {
    let big_n = r.order();
    let mut arr: Vec<Vec<ExactPoly>> = vec![vec![r.row_poly(0)]];
    let mut lambda = Vec::with_capacity(big_n);
    let mut zero_pivots = Vec::new();
    for n in 0..big_n {
        let mut cur = r.row_poly(n + 1);
        let mut row = vec![cur.clone()];
        let mut lam = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let target = cur.coeff(k);
            let pivot = arr[n][k].coeff(k);
            let l = if !pivot.is_zero() {
                &target / &pivot
            } else if target.is_zero() {
                zero_pivots.push((n, k));
                Rat::zero()
            } else {
                return Err(ResolveFailure::Divisibility { n, k });
            };
            if l.is_negative() {
                return Err(ResolveFailure::NegativeMultiplier {
                    n,
                    k,
                    lambda: l.to_string(),
                });
            }
            cur = &cur - &arr[n][k].scale(&l);
            if !cur.divisible_by_t_pow(k + 1) {
                return Err(ResolveFailure::Divisibility { n, k });
            }
            lam.push(l);
            row.push(cur.clone());
        }
        if cur != ExactPoly::monomial(n + 1) {
            return Err(ResolveFailure::NonzeroResidue {
                n: n + 1,
                residue: (&cur - &ExactPoly::monomial(n + 1)).to_string(),
            });
        }
        arr.push(row);
        lambda.push(lam);
    }
    Ok(ResolutionWitness {
        r: arr,
        lambda,
        zero_pivots,
    })
}

impl ResolutionWitness {
    /// Re-checks every defining condition from scratch.
    pub fn verify(&self, r: &RMatrix) -> bool {
        let big_n = r.order();
        if self.r.len() != big_n + 1 || self.lambda.len() != big_n {
            return false;
        }
        for n in 0..=big_n {
            if self.r[n].len() != n + 1
                || self.r[n][0] != r.row_poly(n)
                || self.r[n][n] != ExactPoly::monomial(n)
            {
                return false;
            }
            for k in 0..=n {
                if !self.r[n][k].divisible_by_t_pow(k) {
                    return false;
                }
            }
        }
        for n in 0..big_n {
            for k in 0..=n {
                let l = &self.lambda[n][k];
                if l.is_negative() {
                    return false;
                }
                if self.r[n + 1][k] != &self.r[n + 1][k + 1] + &self.r[n][k].scale(l) {
                    return false;
                }
            }
        }
        true
    }

    /// Audit listing: λ rows, then every `R_{n,k}`.
    pub fn to_report(&self) -> String {
        let mut s = String::new();
        for (n, row) in self.lambda.iter().enumerate() {
            let l: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(s, "lambda {n}: {}", l.join(" ")).unwrap();
        }
        for (n, row) in self.r.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                writeln!(s, "R {n} {k}: {p}").unwrap();
            }
        }
        for (n, k) in &self.zero_pivots {
            writeln!(s, "zero pivot {n} {k}").unwrap();
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": self.lambda.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "zero_pivots": self.zero_pivots,
        })
    }
}

/// Total nonnegativity by exhaustive minors. Test oracle for small orders.
pub fn all_minors_nonnegative(m: &[Vec<BigInt>]) -> Option<bool> {
    let rows = m.len();
    if rows > 9 {
        return None;
    }
    let cols = m.first().map_or(0, Vec::len);
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    };
    for k in 1..=rows.min(cols) {
        let cs = subsets(cols, k);
        for ri in subsets(rows, k) {
            for ci in &cs {
                let sub: Vec<Vec<Rat>> = ri
                    .iter()
                    .map(|&i| {
                        ci.iter()
                            .map(|&j| Rat::from_integer(m[i][j].clone()))
                            .collect()
                    })
                    .collect();
                if determinant(sub).is_negative() {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

fn determinant(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &f * &a[c][j];
                a[r][j] -= v;
            }
        }
    }
    det
}

/// `p_0 = 1`, `p_n = t Σ_{k<n} r_{n,k} p_k`.
pub fn chain_polys_from_rmatrix(r: &RMatrix) -> Vec<ExactPoly> {
    let mut p = vec![ExactPoly::one()];
    for n in 1..=r.order() {
        let mut acc = ExactPoly::zero();
        for (k, pk) in p.iter().enumerate() {
            let c = r.entry(n, k);
            if !c.is_zero() {
                acc = &acc + &pk.scale(&Rat::from_integer(c));
            }
        }
        p.push(acc.shift(1));
    }
    p
}

/// Linear extension of `t^n ↦ p_n`.
pub fn subdivision_operator(r: &RMatrix, f: &ExactPoly) -> Result<ExactPoly, TnError> {
    let Some(d) = f.degree() else {
        return Ok(ExactPoly::zero());
    };
    if d > r.order() {
        return Err(TnError::DegreeOverflow {
            degree: d,
            order: r.order(),
        });
    }
    let p = chain_polys_from_rmatrix(r);
    let mut acc = ExactPoly::zero();
    for (k, c) in f.coeffs().iter().enumerate() {
        acc = &acc + &p[k].scale(c);
    }
    Ok(acc)
}

/// `T_n = R_n` for `n <= N`, else `t^{N+1} S_{n−N−1} + R_N`.
pub fn ordinal_sum_rows(r: &RMatrix, s: &RMatrix) -> Result<RMatrix, TnError> {
    for (n, row) in s.rows().iter().enumerate() {
        if !row[0].is_one() {
            return Err(TnError::ConstantTerm(n));
        }
    }
    let big_n = r.order();
    let rn = r.row_poly(big_n);
    let mut polys = r.row_polys();
    for sp in s.row_polys() {
        polys.push(&sp.shift(big_n + 1) + &rn);
    }
    RMatrix::from_polys(&polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn boolean_rows(n: usize) -> RMatrix {
        let polys: Vec<ExactPoly> = (0..=n as u32)
            .map(|k| ExactPoly::from_ints([1, 1]).pow(k))
            .collect();
        RMatrix::from_polys(&polys).unwrap()
    }

    #[test]
    fn boolean_rows_resolve_with_unit_multipliers() {
        let r = boolean_rows(5);
        let w = resolve(&r).unwrap();
        assert!(w.verify(&r));
        for (n, row) in w.lambda.iter().enumerate() {
            assert!(row.iter().all(|l| *l == rat(1)), "row {n}");
        }
        for n in 0..=5 {
            for k in 0..=n {
                let expect = ExactPoly::from_ints([1, 1]).pow((n - k) as u32).shift(k);
                assert_eq!(w.r[n][k], expect);
            }
        }
    }

    #[test]
    fn non_tn_rows_fail_with_negative_multiplier() {
        let r = RMatrix::from_ints(&[&[1], &[1, 1], &[1, 3, 1], &[1, 2, 3, 1]]).unwrap();
        let err = resolve(&r).unwrap_err();
        assert_eq!(
            err,
            ResolveFailure::NegativeMultiplier {
                n: 2,
                k: 1,
                lambda: ratio(-1, 2).to_string()
            }
        );
        assert_eq!(all_minors_nonnegative(&r.dense()), Some(false));
        assert_eq!(all_minors_nonnegative(&boolean_rows(4).dense()), Some(true));
    }

    #[test]
    fn zero_pivot_with_nonzero_target_is_divisibility_failure() {
        // R_1 = t forces R_{1,0} = t with zero pivot at k = 0.
        let r = RMatrix::from_ints(&[&[1], &[0, 1], &[1, 0, 1]]).unwrap();
        assert_eq!(
            resolve(&r).unwrap_err(),
            ResolveFailure::Divisibility { n: 1, k: 0 }
        );
        let ok = RMatrix::from_ints(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let w = resolve(&ok).unwrap();
        assert!(w.zero_pivots.contains(&(1, 0)));
    }

    #[test]
    fn chain_polys_and_subdivision() {
        let r = boolean_rows(3);
        let p = chain_polys_from_rmatrix(&r);
        assert_eq!(p[1], ExactPoly::from_ints([0, 1]));
        assert_eq!(p[2], ExactPoly::from_ints([0, 1, 2]));
        assert_eq!(p[3], ExactPoly::from_ints([0, 1, 6, 6]));
        assert!(p[1..].iter().all(|q| q.coeff(0).is_zero()));
        assert_eq!(
            subdivision_operator(&r, &ExactPoly::one()).unwrap(),
            ExactPoly::one()
        );
        let f = ExactPoly::from_ints([0, 2, 3]);
        let expect = &p[1].scale(&rat(2)) + &p[2].scale(&rat(3));
        assert_eq!(subdivision_operator(&r, &f).unwrap(), expect);
        assert!(matches!(
            subdivision_operator(&r, &ExactPoly::monomial(4)),
            Err(TnError::DegreeOverflow {
                degree: 4,
                order: 3
            })
        ));
    }

    #[test]
    fn ordinal_sum_rows_of_two_points() {
        let b1 = boolean_rows(1);
        let t = ordinal_sum_rows(&b1, &b1).unwrap();
        let expect = RMatrix::from_ints(&[&[1], &[1, 1], &[1, 1, 1], &[1, 1, 1, 1]]).unwrap();
        assert_eq!(t, expect);
        assert!(resolve(&ordinal_sum_rows(&boolean_rows(3), &boolean_rows(2)).unwrap()).is_ok());
        let bad = RMatrix::from_ints(&[&[1], &[0, 1]]).unwrap();
        assert_eq!(ordinal_sum_rows(&b1, &bad), Err(TnError::ConstantTerm(1)));
    }

    #[test]
    fn text_round_trip_and_validation() {
        let r = boolean_rows(3);
        assert_eq!(RMatrix::parse(&r.to_string()).unwrap(), r);
        assert_eq!(
            RMatrix::from_ints(&[&[1], &[1, 2]]),
            Err(TnError::NotMonic(1))
        );
        assert!(resolve(&r).unwrap().to_report().contains("lambda 0: 1"));
    }

    #[test]
    fn uniformity() {
        let v = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        assert_eq!(is_quasi_rank_uniform(&v).unwrap().unwrap().order(), 2);
        // Two rank-2 elements, one over two atoms and one over a single atom.
        let w = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (0, 5), (5, 3)]).unwrap();
        assert_eq!(is_quasi_rank_uniform(&w).unwrap(), None);
    }
}
