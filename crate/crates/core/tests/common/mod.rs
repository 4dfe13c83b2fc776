//! Shared helpers for the integration suites: an independent
//! Fourier-Motzkin feasibility oracle, a deterministic pseudo-random
//! generator, and small constructors.

#![allow(dead_code)]

use kcsc_core::rat::rat_i64;
use kcsc_core::{Int, Rat, RatMatrix};
use num_traits::{Signed, Zero};

pub fn rat(n: i64) -> Rat {
    rat_i64(n)
}

pub fn rmat(rows: &[Vec<i64>]) -> RatMatrix {
    kcsc_core::simplex::rat_matrix_from_i64(rows)
}

pub fn imat(cols: &[Vec<i64>]) -> kcsc_core::IntMatrix {
    kcsc_core::matrix::Matrix::from_columns(
        &cols
            .iter()
            .map(|c| c.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

/// Deterministic xorshift generator; fixed seeds keep every run identical.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// One inequality `sum coeffs . x <= rhs`.
#[derive(Clone)]
struct Ineq {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

/// Independent feasibility oracle for `{ M x = 0, x >= 1 }` by
/// Fourier-Motzkin elimination. Exponential; intended for small instances
/// only.
pub fn feasible_by_fourier_motzkin(m: &RatMatrix) -> bool {
    let n = m.cols();
    let mut rows: Vec<Ineq> = Vec::new();
    for r in 0..m.rows() {
        let coeffs: Vec<Rat> = m.row(r).to_vec();
        rows.push(Ineq { coeffs: coeffs.clone(), rhs: Rat::zero() });
        rows.push(Ineq {
            coeffs: coeffs.iter().map(|x| -x.clone()).collect(),
            rhs: Rat::zero(),
        });
    }
    for j in 0..n {
        let mut coeffs = vec![Rat::zero(); n];
        coeffs[j] = -rat(1);
        rows.push(Ineq { coeffs, rhs: -rat(1) });
    }

    for var in 0..n {
        let mut kept: Vec<Ineq> = Vec::new();
        let mut pos: Vec<Ineq> = Vec::new();
        let mut neg: Vec<Ineq> = Vec::new();
        for row in rows.drain(..) {
            let c = row.coeffs[var].clone();
            if c.is_zero() {
                kept.push(row);
            } else if c.is_positive() {
                pos.push(row);
            } else {
                neg.push(row);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.coeffs[var].clone();
                let b = -q.coeffs[var].clone();
                // b * p + a * q eliminates the variable; both multipliers
                // positive, so the inequality direction is preserved
                let coeffs: Vec<Rat> = (0..n)
                    .map(|k| &b * &p.coeffs[k] + &a * &q.coeffs[k])
                    .collect();
                let rhs = &b * &p.rhs + &a * &q.rhs;
                kept.push(Ineq { coeffs, rhs });
            }
        }
        // drop exact duplicates to keep growth in check
        let mut dedup: Vec<Ineq> = Vec::new();
        for row in kept {
            if !dedup
                .iter()
                .any(|r| r.rhs == row.rhs && r.coeffs == row.coeffs)
            {
                dedup.push(row);
            }
        }
        rows = dedup;
    }
    rows.iter().all(|r| !r.rhs.is_negative())
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn oracle_agrees_on_simple_cases() {
        assert!(feasible_by_fourier_motzkin(&rmat(&[vec![1, -1]])));
        assert!(!feasible_by_fourier_motzkin(&rmat(&[vec![1, 1]])));
        assert!(feasible_by_fourier_motzkin(&rmat(&[
            vec![-1, -1, 1, 1],
            vec![-1, 1, -1, 1]
        ])));
        assert!(!feasible_by_fourier_motzkin(&rmat(&[vec![1], vec![2]])));
    }
}
