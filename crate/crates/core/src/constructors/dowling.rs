use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{ExactPoly, Rat};
use crate::tn::RMatrix;

/// Whitney numbers `W_m(n, i)`, `0 <= i <= n <= N`, of the dual Dowling
/// lattice for a group of order `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyMatrix {
    pub m: u64,
    pub entries: Vec<Vec<BigInt>>,
}

impl WhitneyMatrix {
    pub fn get(&self, n: usize, i: usize) -> &BigInt {
        &self.entries[n][i]
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }
}

/// `W_m(n, i) = W_m(n−1, i−1) + (1 + m i) W_m(n−1, i)` with unit ends.
pub fn dowling_whitney(m: u64, big_n: usize) -> WhitneyMatrix {
    let mut entries: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=big_n {
        let prev = &entries[n - 1];
        let row: Vec<BigInt> = (0..=n)
            .map(|i| {
                let left = if i > 0 {
                    prev[i - 1].clone()
                } else {
                    BigInt::default()
                };
                let here = prev
                    .get(i)
                    .map_or_else(BigInt::default, |w| w * (1 + m * i as u64));
                left + here
            })
            .collect();
        entries.push(row);
    }
    WhitneyMatrix { m, entries }
}

pub fn dowling_rows(m: u64, big_n: usize) -> RMatrix {
    RMatrix::new(dowling_whitney(m, big_n).entries).expect("Whitney rows are monic")
}

/// `(t + α) f` where `α(t^i) = (1 + m i) t^i`.
pub fn alpha_operator(m: u64, f: &ExactPoly) -> ExactPoly {
    let alpha = ExactPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(1 + m * i as u64)))
            .collect(),
    );
    &f.shift(1) + &alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tn::resolve;

    #[test]
    fn recursion_values() {
        let w1 = dowling_whitney(1, 4);
        assert_eq!(w1.get(2, 1), &BigInt::from(3));
        let w2 = dowling_whitney(2, 4);
        assert_eq!(w2.get(2, 1), &BigInt::from(4));
        for n in 0..=4 {
            assert!(w2.get(n, 0).is_one() && w2.get(n, n).is_one());
        }
        // trivial group: Stirling numbers of the second kind S(n+1, i+1)
        assert_eq!(w1.entries[3], [1, 7, 6, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn rows_are_powers_of_the_operator() {
        for m in 1..=3 {
            let r = dowling_rows(m, 6);
            let mut f = ExactPoly::one();
            for n in 0..=6 {
                assert_eq!(r.row_poly(n), f);
                f = alpha_operator(m, &f);
            }
            assert!(resolve(&r).is_ok());
        }
    }
}
