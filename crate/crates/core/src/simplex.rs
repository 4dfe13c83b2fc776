//! Exact rational feasibility solving for the positive-kernel question.
//!
//! `positive_nullspace_witness` decides, in exact arithmetic, whether a
//! rational matrix has a strictly positive kernel vector. Positivity is
//! scale invariant, so the question is reformulated as feasibility of
//! `{ M b = 0, b >= 1 }` and settled by a phase-1 simplex with Bland's
//! rule (no cycling, deterministic pivots). Instances here are tiny; the
//! point is exactness, not speed.

use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::{Rat, RatMatrix, RatVector};

/// Feasibility of `A y = d, y >= 0` by phase-1 simplex. Returns a feasible
/// `y` when one exists.
fn phase_one(a: &RatMatrix, d: &[Rat]) -> Option<RatVector> {
    let m = a.rows();
    let n = a.cols();
    // tableau rows: [ A | I | d ] with d >= 0, artificials start basic
    let mut tab: Vec<RatVector> = (0..m)
        .map(|r| {
            let negate = d[r].is_negative();
            let flip = |x: &Rat| if negate { -x.clone() } else { x.clone() };
            let mut row: RatVector = a.row(r).iter().map(flip).collect();
            row.extend((0..m).map(|j| if j == r { Rat::one() } else { Rat::zero() }));
            row.push(flip(&d[r]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs for minimizing the sum of artificials
    let mut cost: RatVector = vec![Rat::zero(); n + m + 1];
    for row in &tab {
        for (j, x) in row.iter().enumerate() {
            cost[j] = cost[j].clone() - x.clone();
        }
    }
    for c in cost[n..n + m].iter_mut() {
        *c = Rat::zero();
    }

    // Bland: entering = lowest-index column with negative reduced cost
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        // ratio test, ties broken by lowest basic variable index
        let mut leave: Option<(usize, Rat)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = row[n + m].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            // unbounded cannot happen for a phase-1 objective bounded below by 0
            return None;
        };
        pivot(&mut tab, &mut cost, &mut basis, lr, enter);
    }


    let objective = -cost[n + m].clone();
    if !objective.is_zero() {
        return None;
    }
    let mut y = vec![Rat::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = tab[r][n + m].clone();
        }
        // a leftover basic artificial sits at level zero and contributes nothing
    }
    Some(y)
}

fn pivot(tab: &mut [RatVector], cost: &mut RatVector, basis: &mut [usize], lr: usize, enter: usize) {
    let inv = Rat::one() / tab[lr][enter].clone();
    for x in tab[lr].iter_mut() {
        *x = x.clone() * inv.clone();
    }
    let pivot_row = tab[lr].clone();
    let eliminate = |row: &mut RatVector| {
        if row[enter].is_zero() {
            return;
        }
        let f = row[enter].clone();
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            *x = x.clone() - f.clone() * p.clone();
        }
    };
    for (r, row) in tab.iter_mut().enumerate() {
        if r != lr {
            eliminate(row);
        }
    }
    eliminate(cost);
    basis[lr] = enter;
}

/// A strictly positive `b` with `M b = 0`, normalized so the minimum
/// component equals one; `None` when no positive kernel vector exists.
pub fn positive_nullspace_witness(m: &RatMatrix) -> Option<RatVector> {
    let n = m.cols();
    if n == 0 {
        return None;
    }
    // substitute b = 1 + y, y >= 0:  M y = -M 1
    let ones = vec![Rat::one(); n];
    let d: RatVector = m.mul_vec(&ones).ok()?.into_iter().map(|x| -x).collect();
    let y = phase_one(m, &d)?;
    let mut b: RatVector = y.into_iter().map(|yi| yi + Rat::one()).collect();
    let min = b.iter().min().cloned().expect("nonempty");
    for x in b.iter_mut() {
        *x = x.clone() / min.clone();
    }
    debug_assert!(m.mul_vec(&b).unwrap().iter().all(|x| x.is_zero()));
    Some(b)
}

/// Convenience for building rational matrices in tests and fixtures.
pub fn rat_matrix_from_i64(rows: &[Vec<i64>]) -> RatMatrix {
    Matrix::from_rows(
        &rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rat::from_integer(crate::Int::from(x)))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    )
}
