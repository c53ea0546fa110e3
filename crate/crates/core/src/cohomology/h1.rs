use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::cochain::{check_cocycle, Cocycle1};
use crate::abelian::lattice::{hnf, left_kernel, preimage, Subquotient};
use crate::abelian::{smith_diagonal, FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::galois::{FiniteGroup, Subgroup};
use crate::gmodule::{invariants, relations_or_empty, GammaModule, SubmoduleResult};

/// `H¹(Γ, M)` with explicit generators and a class map.
///
/// Internally cochains are flattened in the diagonal coordinates of `M`
/// (`index = g·t + j`); `sq` is `Z¹ / B¹` inside that lattice.
#[derive(Clone, Debug)]
pub struct H1Result {
    pub group: FinAbGroup,
    module: GammaModule,
    sq: Subquotient,
}

impl H1Result {
    pub fn module(&self) -> &GammaModule {
        &self.module
    }

    pub fn ngens(&self) -> usize {
        self.sq.ngens()
    }

    /// Order of the `j`-th cyclic generator (`0` if free).
    pub fn generator_order(&self, j: usize) -> &BigInt {
        self.sq.cyclic_order(j)
    }

    /// One cocycle per cyclic generator of `group`.
    pub fn representatives(&self) -> Vec<Cocycle1> {
        (0..self.sq.ngens()).map(|j| self.unflatten(&self.sq.generator(j))).collect()
    }

    /// A cocycle in the class with the given coordinates.
    pub fn cocycle_of(&self, coords: &[BigInt]) -> Cocycle1 {
        self.unflatten(&self.sq.element(coords))
    }

    /// Coordinates of the class of `z`; fails if `z` is not a cocycle.
    pub fn class_of(&self, z: &Cocycle1) -> Result<Vec<BigInt>> {
        check_cocycle(&self.module, &z.values)?;
        self.sq.coords(&self.flatten(z))
    }

    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.sq.normalize(coords)
    }

    pub fn is_zero_class(&self, coords: &[BigInt]) -> bool {
        self.normalize(coords).iter().all(Zero::is_zero)
    }

    /// Every class, as coordinates; `None` if infinite or above `cap`.
    pub fn enumerate(&self, cap: usize) -> Option<Vec<Vec<BigInt>>> {
        self.sq.enumerate(cap)
    }

    /// Diagonal relations of `group` in these coordinates.
    pub fn relation_matrix(&self) -> IntMatrix {
        self.sq.relation_matrix()
    }

    fn flatten(&self, z: &Cocycle1) -> Vec<BigInt> {
        let d = self.module.diagonal();
        z.values.iter().flat_map(|v| d.to_diag(v)).collect()
    }

    fn unflatten(&self, flat: &[BigInt]) -> Cocycle1 {
        let d = self.module.diagonal();
        let t = d.len();
        let values = (0..self.module.group().order())
            .map(|g| {
                let mut c = flat[g * t..(g + 1) * t].to_vec();
                d.reduce(&mut c);
                d.from_diag(&c)
            })
            .collect();
        Cocycle1 { values }
    }
}

/// `H¹(Γ, M)` for `M` finite or free; mixed coefficients are rejected.
pub fn h1(m: &GammaModule) -> Result<H1Result> {
    let u = m.underlying();
    if u.free_rank() > 0 && !u.torsion().is_empty() {
        return Err(Error::MixedCoefficients);
    }
    h1_any(m)
}

/// `H¹` for any finitely generated coefficients.
pub(crate) fn h1_any(m: &GammaModule) -> Result<H1Result> {
    let g = m.group();
    let d = m.diagonal();
    let n = g.order();
    let t = d.len();
    let big_n = n * t;
    let z1 = cocycle_lattice(g, &d.moduli, &d.action);
    let mut bnd = IntMatrix::empty(big_n);
    for j in 0..t {
        // coboundary of the j-th diagonal generator
        let mut row = vec![BigInt::zero(); big_n];
        for x in g.elements() {
            for i in 0..t {
                let mut v = d.action[x][(i, j)].clone();
                if i == j {
                    v -= 1;
                }
                row[x * t + i] = v;
            }
        }
        bnd.push_row(row);
    }
    for x in g.elements() {
        for (j, dj) in d.moduli.iter().enumerate() {
            if !dj.is_zero() {
                let mut row = vec![BigInt::zero(); big_n];
                row[x * t + j] = dj.clone();
                bnd.push_row(row);
            }
        }
    }
    let sq = Subquotient::new(big_n, &z1, &bnd)?;
    Ok(H1Result { group: sq.group().clone(), module: m.clone(), sq })
}

/// Hermite basis of the lattice of integer cochains whose reduction is a
/// cocycle, built by imposing one congruence at a time.
fn cocycle_lattice(g: &FiniteGroup, moduli: &[BigInt], action: &[IntMatrix]) -> IntMatrix {
    let n = g.order();
    let t = moduli.len();
    let mut basis = IntMatrix::identity(n * t);
    let e = g.identity();
    for a in g.elements() {
        for b in g.elements() {
            if (a == e) != (b == e) {
                continue;
            }
            let ab = g.mul(a, b);
            for i in 0..t {
                // z(ab)_i − z(a)_i − Σ_j action[a][i,j]·z(b)_j ≡ 0 mod moduli[i]
                let mut form: Vec<(usize, BigInt)> = vec![(ab * t + i, BigInt::from(1)), (a * t + i, BigInt::from(-1))];
                for j in 0..t {
                    let c = &action[a][(i, j)];
                    if !c.is_zero() {
                        form.push((b * t + j, -c));
                    }
                }
                impose(&mut basis, &form, &moduli[i]);
            }
        }
    }
    basis
}

/// Replaces `basis` by a basis of `{x ∈ span(basis) : form(x) ≡ 0 mod d}`.
fn impose(basis: &mut IntMatrix, form: &[(usize, BigInt)], d: &BigInt) {
    let r = basis.rows();
    let mut v: Vec<BigInt> = (0..r)
        .map(|row| form.iter().map(|(c, w)| &basis[(row, *c)] * w).sum::<BigInt>())
        .collect();
    if !d.is_zero() {
        for x in v.iter_mut() {
            *x = x.mod_floor(d);
        }
    }
    if v.iter().all(Zero::is_zero) {
        return;
    }
    let mut col = IntMatrix::empty(1);
    for x in &v {
        col.push_row(vec![x.clone()]);
    }
    if !d.is_zero() {
        col.push_row(vec![d.clone()]);
    }
    let ker = left_kernel(&col);
    let idx: Vec<usize> = (0..r).collect();
    let k = ker.select_cols(&idx);
    *basis = hnf(&k.mul(basis).expect("shapes"));
}

/// `H⁰(Γ, M) = M^Γ`.
pub fn h0(m: &GammaModule) -> Result<SubmoduleResult> {
    invariants(m, &Subgroup::whole(m.group()))
}

/// Options for the 2-cochain computation.
#[derive(Clone, Copy, Debug)]
pub struct H2Options {
    pub max_order: usize,
}

impl Default for H2Options {
    fn default() -> Self {
        H2Options { max_order: 12 }
    }
}

/// `H²(Γ, L)` for a lattice `L`, as the torsion of `C² / d(C¹)`: cocycles
/// are saturated in `C²` and `H²` is finite, so the torsion of the cokernel
/// of `d: C¹ → C²` is exactly `Z²/B²`.
pub fn h2_lattice(m: &GammaModule, opts: H2Options) -> Result<FinAbGroup> {
    let g = m.group();
    let n = g.order();
    if n > opts.max_order {
        return Err(Error::OrderCap { order: n, cap: opts.max_order });
    }
    if !m.is_free() {
        return Err(Error::NotFree);
    }
    let d = m.diagonal();
    let k = d.len();
    // row (x, j) of d1 is the coboundary of the 1-cochain e_{x,j}
    let mut d1 = IntMatrix::zeros(n * k, n * n * k);
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            let base = (a * n + b) * k;
            for i in 0..k {
                // (df)(a,b) = a·f(b) − f(ab) + f(a)
                for j in 0..k {
                    let c = &d.action[a][(i, j)];
                    if !c.is_zero() {
                        d1[(b * k + j, base + i)] += c;
                    }
                }
                d1[(ab * k + i, base + i)] -= 1;
                d1[(a * k + i, base + i)] += 1;
            }
        }
    }
    let diag = smith_diagonal(&d1);
    FinAbGroup::from_invariants(diag.into_iter().filter(|x| !x.is_zero()))
}

/// `ker N / im(σ − 1)` for a cyclic group generated by `gen`.
pub fn tate_h1_cyclic(m: &GammaModule, gen: usize) -> Result<FinAbGroup> {
    let (norm, sigma_minus) = cyclic_maps(m, gen)?;
    let rel = relations_or_empty(m);
    let k = m.gens();
    let ker_n = if k == 0 { IntMatrix::empty(0) } else { preimage(&norm.transpose(), &rel)? };
    let den = sigma_minus.transpose().vstack(&rel)?;
    Ok(Subquotient::new(k, &ker_n, &den)?.group().clone())
}

/// `M^Γ / N·M` for a cyclic group generated by `gen`.
pub fn tate_h2_cyclic(m: &GammaModule, gen: usize) -> Result<FinAbGroup> {
    let (norm, sigma_minus) = cyclic_maps(m, gen)?;
    let rel = relations_or_empty(m);
    let k = m.gens();
    let fixed = if k == 0 { IntMatrix::empty(0) } else { preimage(&sigma_minus.transpose(), &rel)? };
    let den = norm.transpose().vstack(&rel)?;
    Ok(Subquotient::new(k, &fixed, &den)?.group().clone())
}

fn cyclic_maps(m: &GammaModule, gen: usize) -> Result<(IntMatrix, IntMatrix)> {
    let g = m.group();
    if gen >= g.order() || g.element_order(gen) != g.order() {
        return Err(Error::InvalidGroup(format!("{gen} does not generate the group")));
    }
    let k = m.gens();
    let mut norm = IntMatrix::zeros(k, k);
    for x in g.elements() {
        norm = norm.add(m.action(x))?;
    }
    let sigma_minus = m.action(gen).sub(&IntMatrix::identity(k))?;
    Ok((norm, sigma_minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::catalog;
    use crate::gmodule::{permutation_module, trivial_cyclic};

    #[test]
    fn sign_lattice() {
        let g = FiniteGroup::cyclic(2);
        let m = GammaModule::cyclic_character(g, 0, &[1, -1]).unwrap();
        let h = h1(&m).unwrap();
        assert_eq!(h.group, FinAbGroup::cyclic(2));
        let reps = h.representatives();
        assert_eq!(h.class_of(&reps[0]).unwrap(), vec![BigInt::from(1)]);
    }

    #[test]
    fn trivial_integers_vanish() {
        for (_, g) in catalog::catalog(8) {
            assert!(h1(&trivial_cyclic(&g, 0)).unwrap().group.is_trivial());
        }
    }

    #[test]
    fn shapiro_c3() {
        let g = FiniteGroup::cyclic(3);
        let m = permutation_module(&g, &Subgroup::trivial(&g)).unwrap();
        assert!(h1(&m).unwrap().group.is_trivial());
    }

    #[test]
    fn homs_into_trivial_modules() {
        let g = catalog::klein_four();
        assert_eq!(h1(&trivial_cyclic(&g, 2)).unwrap().group, FinAbGroup::from_invariants([2, 2].map(BigInt::from)).unwrap());
        let q = catalog::quaternion();
        assert_eq!(h1(&trivial_cyclic(&q, 4)).unwrap().group.order().unwrap(), BigInt::from(4));
    }

    #[test]
    fn mixed_rejected() {
        let g = FiniteGroup::cyclic(2);
        let m = crate::gmodule::direct_sum(&trivial_cyclic(&g, 0), &trivial_cyclic(&g, 2)).unwrap();
        assert!(matches!(h1(&m), Err(Error::MixedCoefficients)));
    }

    #[test]
    fn h2_examples() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!(h2_lattice(&trivial_cyclic(&g, 0), H2Options::default()).unwrap(), FinAbGroup::cyclic(2));
        let sign = GammaModule::cyclic_character(g.clone(), 0, &[1, -1]).unwrap();
        assert!(h2_lattice(&sign, H2Options::default()).unwrap().is_trivial());
        let v4 = catalog::klein_four();
        // H²(V₄, ℤ) = Hom(V₄, ℚ/ℤ) ≅ (ℤ/2)²
        assert_eq!(h2_lattice(&trivial_cyclic(&v4, 0), H2Options::default()).unwrap().order().unwrap(), BigInt::from(4));
        assert!(matches!(
            h2_lattice(&trivial_cyclic(&v4, 0), H2Options { max_order: 2 }),
            Err(Error::OrderCap { order: 4, cap: 2 })
        ));
    }

    #[test]
    fn tate_forms() {
        let g = FiniteGroup::cyclic(2);
        let sign = GammaModule::cyclic_character(g.clone(), 0, &[1, -1]).unwrap();
        assert_eq!(tate_h1_cyclic(&sign, 1).unwrap(), FinAbGroup::cyclic(2));
        assert!(tate_h2_cyclic(&sign, 1).unwrap().is_trivial());
        assert_eq!(tate_h2_cyclic(&trivial_cyclic(&g, 0), 1).unwrap(), FinAbGroup::cyclic(2));
    }
}
