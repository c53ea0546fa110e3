//! Smith normal form over the integers.
//!
//! Pivoting always picks the entry of least absolute value in the active
//! block, which keeps intermediate entries small at the sizes used here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `d`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    reduce(&mut d, Some((&mut u, &mut v)));
    SmithForm { u, d, v }
}

/// Diagonal of the Smith form without tracking the transforms.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    reduce(&mut d, None);
    let k = d.rows().min(d.cols());
    (0..k).map(|i| d[(i, i)].clone()).collect()
}

fn min_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn reduce(d: &mut IntMatrix, mut tr: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let (m, n) = (d.rows(), d.cols());
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_nonzero(d, t) else { break };
        swap_rows(d, &mut tr, t, pi);
        swap_cols(d, &mut tr, t, pj);
        loop {
            // clear column t and row t by Euclidean steps
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_row(d, &mut tr, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                add_col(d, &mut tr, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remainder into the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = &d[(i, t)];
                    if !x.is_zero() && x.abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = &d[(t, j)];
                    if !x.is_zero() && x.abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(d, &mut tr, t, best.0);
                swap_cols(d, &mut tr, t, best.1);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => add_row(d, &mut tr, t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some((u, _)) = tr.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

fn swap_rows(d: &mut IntMatrix, tr: &mut Option<(&mut IntMatrix, &mut IntMatrix)>, a: usize, b: usize) {
    d.swap_rows(a, b);
    if let Some((u, _)) = tr.as_mut() {
        u.swap_rows(a, b);
    }
}

fn swap_cols(d: &mut IntMatrix, tr: &mut Option<(&mut IntMatrix, &mut IntMatrix)>, a: usize, b: usize) {
    d.swap_cols(a, b);
    if let Some((_, v)) = tr.as_mut() {
        v.swap_cols(a, b);
    }
}

fn add_row(d: &mut IntMatrix, tr: &mut Option<(&mut IntMatrix, &mut IntMatrix)>, dst: usize, src: usize, c: &BigInt) {
    d.add_row_multiple(dst, src, c);
    if let Some((u, _)) = tr.as_mut() {
        u.add_row_multiple(dst, src, c);
    }
}

fn add_col(d: &mut IntMatrix, tr: &mut Option<(&mut IntMatrix, &mut IntMatrix)>, dst: usize, src: usize, c: &BigInt) {
    d.add_col_multiple(dst, src, c);
    if let Some((_, v)) = tr.as_mut() {
        v.add_col_multiple(dst, src, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::big;
    use num_traits::One;

    fn check_contract(a: &IntMatrix) -> SmithForm {
        let s = snf(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check_contract(&IntMatrix::identity(2));
        assert!(s.u.is_identity() && s.v.is_identity());
        assert_eq!(s.diagonal(), vec![big(1), big(1)]);
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = check_contract(&a);
        // d1 = gcd of entries, d1*d2 = |det|
        assert_eq!(s.diagonal(), vec![big(2), big(4)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check_contract(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(smith_diagonal(&IntMatrix::zeros(2, 3)), vec![big(0), big(0)]);
    }

    #[test]
    fn needs_divisibility_fix() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(check_contract(&a).diagonal(), vec![big(1), big(6)]);
    }

    #[test]
    fn rectangular_and_negative() {
        let a = IntMatrix::from_rows(&[[-4, 6, 2], [0, -9, 12]]);
        let s = check_contract(&a);
        assert_eq!(smith_diagonal(&a), s.diagonal());
    }
}
