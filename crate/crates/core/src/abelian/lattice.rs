//! Row lattices in `ℤⁿ`: Hermite normal form, kernels, preimages and
//! subquotients `L / M` for sublattices `M ⊆ L`.
//!
//! Vectors are rows throughout this file.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::FinAbGroup;
use super::matrix::IntMatrix;
use super::snf::snf;
use crate::error::{Error, Result};

/// Row-style Hermite normal form; zero rows are dropped, so the result is a
/// basis of the row lattice of `a` in echelon form with positive pivots.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| m[(i, col)].abs() < m[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            has_pivot = true;
            m.swap_rows(r, b);
            let mut clean = true;
            for i in r + 1..rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let q = m[(i, col)].div_floor(&m[(r, col)]);
                m.add_row_multiple(i, r, &-q);
                if !m[(i, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if m[(r, col)].is_negative() {
            m.negate_row(r);
        }
        let p = m[(r, col)].clone();
        for i in 0..r {
            let q = m[(i, col)].div_floor(&p);
            m.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    let idx: Vec<usize> = (0..r).collect();
    m.select_rows(&idx)
}

/// Coefficients `c` with `c · basis = x`, for `basis` in Hermite normal form.
pub fn solve_in_basis(x: &[BigInt], basis: &IntMatrix) -> Option<Vec<BigInt>> {
    let mut rem = x.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let p = row.iter().position(|e| !e.is_zero()).expect("hnf rows are nonzero");
        let (q, r) = rem[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (a, b) in rem.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &q * b;
                }
            }
        }
        coeffs.push(q);
    }
    rem.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Basis (rows) of the left kernel `{ y : y·m = 0 }`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let k = m.rows();
    let n = m.cols();
    if k == 0 {
        return IntMatrix::empty(0);
    }
    let aug = m.hstack(&IntMatrix::identity(k)).expect("same row count");
    let h = hnf(&aug);
    let mut out = IntMatrix::empty(k);
    for i in 0..h.rows() {
        if h.row(i)[..n].iter().all(Zero::is_zero) {
            out.push_row(h.row(i)[n..].to_vec());
        }
    }
    out
}

/// Basis of `{ x ∈ ℤᵏ : x·m ∈ rowspace(rel) }` for `m: k×n`, `rel: r×n`.
pub fn preimage(m: &IntMatrix, rel: &IntMatrix) -> Result<IntMatrix> {
    let k = m.rows();
    if rel.rows() > 0 && rel.cols() != m.cols() {
        return Err(Error::Dimension("preimage: column mismatch".into()));
    }
    if k == 0 {
        return Ok(IntMatrix::empty(0));
    }
    let stacked = m.vstack(rel)?;
    let ker = left_kernel(&stacked);
    let idx: Vec<usize> = (0..k).collect();
    let proj = ker.select_cols(&idx);
    Ok(hnf(&proj))
}

/// Some `x` with `x · a = c`, if one exists.
pub fn solve_left(a: &IntMatrix, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = a.rows();
    let n = a.cols();
    if k == 0 {
        return c.iter().all(Zero::is_zero).then(Vec::new);
    }
    let h = hnf(&a.hstack(&IntMatrix::identity(k)).expect("same row count"));
    let r = (0..h.rows()).take_while(|&i| h.row(i)[..n].iter().any(|e| !e.is_zero())).count();
    let left = h.select_rows(&(0..r).collect::<Vec<_>>()).select_cols(&(0..n).collect::<Vec<_>>());
    let right = h.select_rows(&(0..r).collect::<Vec<_>>()).select_cols(&(n..n + k).collect::<Vec<_>>());
    let y = solve_in_basis(c, &left)?;
    Some(if r == 0 { vec![BigInt::zero(); k] } else { right.apply_row(&y) })
}

/// Whether row vector `x` lies in the row lattice of `rel`.
pub fn in_rowspace(x: &[BigInt], rel: &IntMatrix) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    if rel.rows() == 0 {
        return false;
    }
    solve_in_basis(x, &hnf(rel)).is_some()
}

/// A subquotient `L / M` of `ℤⁿ` in Smith coordinates.
///
/// Group coordinates list the torsion cyclic factors first (ascending
/// divisibility) and the free factors after them, matching
/// [`FinAbGroup`]'s ordering.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    basis: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    invariants: Vec<BigInt>,
    positions: Vec<usize>,
    group: FinAbGroup,
}

impl Subquotient {
    /// `numerator` spans `L` (any generating rows), `denominators` span `M ⊆ L`.
    pub fn new(ambient: usize, numerator: &IntMatrix, denominators: &IntMatrix) -> Result<Self> {
        let basis = if numerator.rows() == 0 { IntMatrix::empty(ambient) } else { hnf(numerator) };
        if basis.rows() > 0 && basis.cols() != ambient {
            return Err(Error::Dimension("subquotient: numerator width".into()));
        }
        let k = basis.rows();
        let mut s = IntMatrix::empty(k);
        for i in 0..denominators.rows() {
            let c = solve_in_basis(denominators.row(i), &basis).ok_or(Error::NotInLattice)?;
            s.push_row(c);
        }
        let (v, invariants) = if s.rows() == 0 {
            (IntMatrix::identity(k), vec![BigInt::zero(); k])
        } else {
            let sf = snf(&s);
            let mut inv = sf.diagonal();
            inv.resize(k, BigInt::zero());
            (sf.v, inv)
        };
        let v_inv = v.unimodular_inverse()?;
        let positions: Vec<usize> = (0..k).filter(|&i| !invariants[i].is_one()).collect();
        let group = FinAbGroup::from_invariants(positions.iter().map(|&i| invariants[i].clone()))?;
        Ok(Subquotient { ambient, basis, v, v_inv, invariants, positions, group })
    }

    /// The full quotient `ℤⁿ / rowspace(rel)`.
    pub fn quotient(ambient: usize, rel: &IntMatrix) -> Result<Self> {
        Self::new(ambient, &IntMatrix::identity(ambient), rel)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Hermite basis of the numerator lattice.
    pub fn numerator_basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Number of cyclic factors (torsion plus free).
    pub fn ngens(&self) -> usize {
        self.positions.len()
    }

    /// Order of the `j`-th cyclic factor, `0` for a free factor.
    pub fn cyclic_order(&self, j: usize) -> &BigInt {
        &self.invariants[self.positions[j]]
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        solve_in_basis(x, &self.basis).is_some()
    }

    /// Group coordinates of an ambient vector of `L`.
    pub fn coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.ambient {
            return Err(Error::Dimension("subquotient coordinates: vector length".into()));
        }
        let c = solve_in_basis(x, &self.basis).ok_or(Error::NotInLattice)?;
        let w = if c.is_empty() { Vec::new() } else { self.v.apply_row(&c) };
        Ok(self
            .positions
            .iter()
            .map(|&i| {
                let d = &self.invariants[i];
                if d.is_zero() { w[i].clone() } else { w[i].mod_floor(d) }
            })
            .collect())
    }

    /// Ambient representative of the `j`-th generator.
    pub fn generator(&self, j: usize) -> Vec<BigInt> {
        let row = self.v_inv.row(self.positions[j]);
        self.basis.apply_row(row)
    }

    /// Ambient representative of the element with the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(self.generator(j)) {
                *o += c * g;
            }
        }
        out
    }

    /// Reduces group coordinates into canonical range.
    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let d = self.cyclic_order(j);
                if d.is_zero() { c.clone() } else { c.mod_floor(d) }
            })
            .collect()
    }

    /// Diagonal relation matrix of the group in these coordinates.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::empty(n);
        for j in 0..n {
            let d = self.cyclic_order(j);
            if !d.is_zero() {
                let mut r = vec![BigInt::zero(); n];
                r[j] = d.clone();
                m.push_row(r);
            }
        }
        m
    }

    /// Enumerates every element's coordinates; `None` when the group is infinite
    /// or larger than `cap`.
    pub fn enumerate(&self, cap: usize) -> Option<Vec<Vec<BigInt>>> {
        if self.group.free_rank() > 0 {
            return None;
        }
        let order = self.group.order()?;
        if order > BigInt::from(cap) {
            return None;
        }
        let mut all = vec![Vec::new()];
        for j in 0..self.ngens() {
            let d = self.cyclic_order(j).clone();
            let mut next = Vec::new();
            for prefix in &all {
                let mut c = BigInt::zero();
                while c < d {
                    let mut e = prefix.clone();
                    e.push(c.clone());
                    next.push(e);
                    c += 1;
                }
            }
            all = next;
        }
        Some(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::{big, big_vec};

    #[test]
    fn hnf_basis_and_solve() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8], [4, 4]]);
        let h = hnf(&a);
        assert_eq!(h.rows(), 2);
        assert!(solve_in_basis(&big_vec(&[6, 8]), &h).is_some());
        assert!(solve_in_basis(&big_vec(&[1, 0]), &h).is_none());
    }

    #[test]
    fn solve_left_combination() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3], [1, 1]]);
        let c = big_vec(&[5, 7]);
        let x = solve_left(&a, &c).unwrap();
        assert_eq!(a.apply_row(&x), c);
        assert!(solve_left(&IntMatrix::from_rows(&[[2, 2]]), &big_vec(&[1, 1])).is_none());
    }

    #[test]
    fn left_kernel_of_rank_one() {
        let m = IntMatrix::from_rows(&[[1, 1], [1, 1]]);
        let k = left_kernel(&m);
        assert_eq!(k.rows(), 1);
        assert!(m.transpose().apply(k.row(0)).iter().all(Zero::is_zero));
    }

    #[test]
    fn subquotient_coordinates() {
        // 2Z / 8Z = Z/4
        let sq = Subquotient::new(1, &IntMatrix::from_rows(&[[2]]), &IntMatrix::from_rows(&[[8]])).unwrap();
        assert_eq!(sq.group(), &FinAbGroup::cyclic(4));
        assert_eq!(sq.coords(&[big(6)]).unwrap(), vec![big(3)]);
        assert!(sq.coords(&[big(3)]).is_err());
        assert_eq!(sq.coords(&sq.generator(0)).unwrap(), vec![big(1)]);
    }

    #[test]
    fn quotient_mixed() {
        let sq = Subquotient::quotient(3, &IntMatrix::from_rows(&[[2, 0, 0], [0, 3, 0]])).unwrap();
        assert_eq!(sq.group(), &FinAbGroup::new(1, vec![big(6)]).unwrap());
        let x = big_vec(&[1, 1, 5]);
        let c = sq.coords(&x).unwrap();
        let back = sq.element(&c);
        let diff: Vec<BigInt> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
        assert!(sq.coords(&diff).unwrap().iter().all(Zero::is_zero));
    }
}
