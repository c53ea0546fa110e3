//! `H¹(Γ, L ⊗ ℂ×)` for a lattice `L`, computed two independent ways.

use num_bigint::BigInt;

use super::cochain::Cocycle1;
use super::h1::{h2_lattice, H1Result, H2Options};
use super::maps::connecting_delta0;
use crate::abelian::lattice::Subquotient;
use crate::abelian::{FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::gmodule::{reduce_mod, GammaModule, ModuleMap, ShortExactSeq};

/// `H¹(Γ, L ⊗ ℂ×)`. Classes are represented by cocycles with values in
/// `L/m = L ⊗ μ_m` at the working level `m`.
#[derive(Clone, Debug)]
pub struct TorusH1 {
    pub group: FinAbGroup,
    /// `H²(Γ, L)` from the 2-cochain computation.
    pub h2: FinAbGroup,
    pub level: u64,
    pub finite: H1Result,
    quotient: Subquotient,
}

impl TorusH1 {
    /// Coordinates in `group` of a cocycle with values in `L/m`.
    pub fn class_of(&self, z: &Cocycle1) -> Result<Vec<BigInt>> {
        self.quotient.coords(&self.finite.class_of(z)?)
    }

    pub fn ngens(&self) -> usize {
        self.quotient.ngens()
    }

    /// A level-`m` cocycle for each cyclic generator of `group`.
    pub fn representatives(&self) -> Vec<Cocycle1> {
        (0..self.quotient.ngens()).map(|j| self.finite.cocycle_of(&self.quotient.generator(j))).collect()
    }

    pub fn cocycle_of(&self, coords: &[BigInt]) -> Cocycle1 {
        self.finite.cocycle_of(&self.quotient.element(coords))
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        self.quotient.relation_matrix()
    }

    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.quotient.normalize(coords)
    }

    pub fn enumerate(&self, cap: usize) -> Option<Vec<Vec<BigInt>>> {
        self.quotient.enumerate(cap)
    }
}

/// `H¹(Γ, L ⊗ ℂ×)` for a lattice `L`, at level `m = |Γ|`.
pub fn h1_torus_coeffs(l: &GammaModule, opts: H2Options) -> Result<TorusH1> {
    let n = l.group().order() as u64;
    h1_torus_coeffs_at(l, n.max(2), opts)
}

/// As [`h1_torus_coeffs`] at a chosen level `m`, which must be a multiple
/// of `|Γ|` (so that `m` kills the answer).
///
/// Path 1: `H²(Γ, L)`, via `0 → L → L ⊗ ℚ → L ⊗ ℚ/ℤ → 0`.
/// Path 2: `H¹(Γ, L/m)` modulo the kernel of `H¹(L/m) → H¹(L ⊗ ℂ×)`; that
/// kernel equals the image of `δ: H⁰(Γ, L/n) → H¹(Γ, L/m)` for
/// `0 → L/m →(×n) L/mn → L/n → 0` with `n = |Γ|`, because a coboundary
/// `g ↦ g·s/s` into `L ⊗ μ_m` can be realized with `s` of order dividing
/// `m·|Γ|`. The two results must agree.
pub fn h1_torus_coeffs_at(l: &GammaModule, m: u64, opts: H2Options) -> Result<TorusH1> {
    if !l.is_free() || l.presentation().relations.rows() > 0 {
        return Err(Error::NotFree);
    }
    let n = l.group().order() as u64;
    if m < 2 || m % n != 0 {
        return Err(Error::BadModulus(m as i64));
    }
    let h2 = h2_lattice(l, opts)?;
    // any multiplier divisible by |Γ| gives the same kernel
    let n = n.max(2);
    let k = l.gens();
    let a = reduce_mod(l, m)?;
    let b = reduce_mod(l, m * n)?;
    let c = reduce_mod(l, n)?;
    let inc = ModuleMap::new(a, b.clone(), IntMatrix::scalar(k, &BigInt::from(n)))?;
    let proj = ModuleMap::new(b, c, IntMatrix::identity(k))?;
    let ses = ShortExactSeq::new(inc, proj)?;
    let delta = connecting_delta0(&ses)?;
    let finite = delta.h1_a.clone();
    let rel = finite.relation_matrix().vstack(&delta.images)?;
    let quotient = Subquotient::quotient(finite.ngens(), &rel)?;
    let group = quotient.group().clone();
    if group != h2 {
        return Err(Error::Mismatch(format!("H²(Γ, L) = {h2} but H¹(Γ, L/{m}) / δ = {group}")));
    }
    Ok(TorusH1 { group, h2, level: m, finite, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::big;
    use crate::galois::{catalog, FiniteGroup};

    fn sign_lattice(g: &FiniteGroup, chi: &[i64]) -> GammaModule {
        GammaModule::cyclic_character(g.clone(), 0, chi).unwrap()
    }

    #[test]
    fn characters_of_cyclic_groups() {
        for n in 1..=6 {
            let g = FiniteGroup::cyclic(n);
            let t = h1_torus_coeffs(&sign_lattice(&g, &vec![1; n]), H2Options::default()).unwrap();
            assert_eq!(t.group, FinAbGroup::cyclic(n as u64));
        }
    }

    #[test]
    fn norm_one_torus_has_trivial_h1() {
        let g = FiniteGroup::cyclic(2);
        let t = h1_torus_coeffs(&sign_lattice(&g, &[1, -1]), H2Options::default()).unwrap();
        assert!(t.group.is_trivial());
    }

    #[test]
    fn klein_four_characters() {
        let g = catalog::klein_four();
        let t = h1_torus_coeffs(&sign_lattice(&g, &[1; 4]), H2Options::default()).unwrap();
        assert_eq!(t.group.order(), Some(big(4)));
        // every level-m representative is a cocycle with a class
        for z in t.representatives() {
            assert!(t.class_of(&z).is_ok());
        }
    }

    #[test]
    fn level_must_be_multiple_of_order() {
        let g = FiniteGroup::cyclic(3);
        assert!(matches!(
            h1_torus_coeffs_at(&sign_lattice(&g, &[1; 3]), 4, H2Options::default()),
            Err(Error::BadModulus(4))
        ));
        let t = h1_torus_coeffs_at(&sign_lattice(&g, &[1; 3]), 6, H2Options::default()).unwrap();
        assert_eq!(t.group, FinAbGroup::cyclic(3));
    }
}
