//! Smith normal form over the integers (or any `num_integer::Integer`).
//!
//! Produces unimodular `U`, `V` with `U * A * V = D`, `D` diagonal with
//! nonnegative elementary divisors forming a divisibility chain. All
//! transformations are elementary (swaps, signed additions, sign flips), so
//! `|det U| = |det V| = 1` by construction.

use num_integer::Integer;
use num_traits::Signed;

use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Integer + Clone + Signed> SmithDecomposition<T> {
    /// Elementary divisors `d_1 | d_2 | ...`, zeros excluded.
    pub fn divisors(&self) -> Vec<T> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.at(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn add_row_multiple<T: Integer + Clone>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T) {
    for c in 0..m.cols() {
        let v = m.at(dst, c).clone() - q.clone() * m.at(src, c).clone();
        m.set(dst, c, v);
    }
}

fn add_col_multiple<T: Integer + Clone>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T) {
    for r in 0..m.rows() {
        let v = m.at(r, dst).clone() - q.clone() * m.at(r, src).clone();
        m.set(r, dst, v);
    }
}

fn negate_row<T: Integer + Clone + Signed>(m: &mut Matrix<T>, r: usize) {
    for c in 0..m.cols() {
        let v = -m.at(r, c).clone();
        m.set(r, c, v);
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form<T: Integer + Clone + Signed>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u: Matrix<T> = Matrix::identity(rows);
    let mut v: Matrix<T> = Matrix::identity(cols);

    let mut t = 0usize;
    while t < rows && t < cols {
        // pick the absolutely smallest nonzero entry of the trailing block as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !d.at(r, c).is_zero()
                    && pivot
                        .map(|(pr, pc)| d.at(r, c).abs() < d.at(pr, pc).abs())
                        .unwrap_or(true)
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        'reduce: loop {
            // clear column t below the pivot
            for r in t + 1..rows {
                if !d.at(r, t).is_zero() {
                    let (q, rem) = d.at(r, t).div_rem(d.at(t, t));
                    add_row_multiple(&mut d, r, t, &q);
                    add_row_multiple(&mut u, r, t, &q);
                    if !rem.is_zero() {
                        d.swap_rows(t, r);
                        u.swap_rows(t, r);
                        continue 'reduce;
                    }
                }
            }
            // clear row t right of the pivot
            for c in t + 1..cols {
                if !d.at(t, c).is_zero() {
                    let (q, rem) = d.at(t, c).div_rem(d.at(t, t));
                    add_col_multiple(&mut d, c, t, &q);
                    add_col_multiple(&mut v, c, t, &q);
                    if !rem.is_zero() {
                        d.swap_cols(t, c);
                        v.swap_cols(t, c);
                        continue 'reduce;
                    }
                }
            }
            // force the pivot to divide the rest of the block
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !d.at(r, c).clone().rem(d.at(t, t).clone()).is_zero() {
                        // fold row r into row t and restart the clearing pass
                        let minus_one = -T::one();
                        add_row_multiple(&mut d, t, r, &minus_one);
                        add_row_multiple(&mut u, t, r, &minus_one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if d.at(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    SmithDecomposition { u, d, v }
}
