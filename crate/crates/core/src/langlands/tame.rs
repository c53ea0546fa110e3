//! Frobenius-stable classes in `H¹(I_t, Hom(Π, ℂ×))` for the tame inertia
//! `I_t`, modeled at level `n` by the cyclic quotient `C_n` on which
//! Frobenius acts by `τ ↦ τ^q`.
//!
//! For `C_n = ⟨τ⟩` and a finite module `A`, `H¹ = ker(N_τ) / (τ − 1)A`.
//! Divisible coefficients are reached through `A = Hom(Π, ℤ/m)`, modulo the
//! classes that die in `Hom(Π, ℤ/m²)`; with `m` a multiple of `n` times the
//! torsion exponent of `Π` this is `H¹(C_n, Hom(Π, ℂ×))`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::abelian::lattice::{preimage, solve_in_basis, Subquotient};
use crate::abelian::{FinAbGroup, IntMatrix};
use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::galois::LocalGaloisDatum;
use crate::gmodule::{hom_to_cyclic, hom_to_cyclic_basis, relations_or_empty, GammaModule};

/// Order of an integer matrix, if at most `cap`.
pub(crate) fn matrix_order(a: &IntMatrix, cap: usize) -> Option<usize> {
    let mut p = a.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(a).ok()?;
    }
    None
}

/// `Σ_{i<j} tⁱ` for `t` of order `o`.
fn partial_sum(t: &IntMatrix, j: u64, o: usize) -> Result<IntMatrix> {
    let k = t.rows();
    let o = o as u64;
    let mut full = IntMatrix::zeros(k, k);
    let mut head = IntMatrix::zeros(k, k);
    let mut p = IntMatrix::identity(k);
    for i in 0..o {
        if i < j % o {
            head = head.add(&p)?;
        }
        full = full.add(&p)?;
        p = p.mul(t)?;
    }
    full.scale(&BigInt::from(j / o)).add(&head)
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (i128::from(n), i128::from(a % n));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(i128::from(n)) as u64)
}

/// Numerator (cocycle values) and denominator (coboundaries plus relations)
/// lattices of `H¹(C_n, A)` with `τ` acting as the element `tau`.
fn cyclic_h1_lattices(a: &GammaModule, tau: usize, n: u64) -> Result<(IntMatrix, IntMatrix)> {
    let rel = relations_or_empty(a);
    let t = a.action(tau);
    let o = matrix_order(t, 1 << 12).ok_or_else(|| Error::InvalidModule("inertia acts with infinite order".into()))?;
    let norm = partial_sum(t, o as u64, o)?.scale(&BigInt::from(n / o as u64));
    let num = preimage(&norm.transpose(), &rel)?;
    let den = t.sub(&IntMatrix::identity(a.gens()))?.transpose().vstack(&rel)?;
    Ok((num, den))
}

/// The inclusion `Hom(Π, ℤ/m) → Hom(Π, ℤ/mk)`, `φ ↦ kφ`, in generator
/// coordinates.
fn inclusion(pi: &GammaModule, m: u64, mk: u64) -> Result<IntMatrix> {
    let b = hom_to_cyclic_basis(pi, m)?;
    let b2 = hom_to_cyclic_basis(pi, mk)?;
    let k = pi.gens();
    let scaled = b.scale(&BigInt::from(mk / m));
    let rows: Vec<Vec<BigInt>> =
        (0..k).map(|i| solve_in_basis(scaled.row(i), &b2).ok_or(Error::NotInLattice)).collect::<Result<_>>()?;
    Ok(IntMatrix::from_big_rows(rows, k)?.transpose())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertialLevel {
    pub level: u64,
    /// `H¹(C_n, Hom(Π, ℂ×))`.
    pub h1: FinAbGroup,
    /// Its Frobenius-stable classes.
    pub stable: FinAbGroup,
}

fn tame_generator(d: &LocalGaloisDatum) -> Result<usize> {
    let (quot, proj) = d.mod_wild()?;
    let e = d.tame_index();
    d.inertia
        .elements()
        .iter()
        .copied()
        .find(|&x| quot.element_order(proj[x]) == e)
        .ok_or(Error::LocalDatum { name: "tame-quotient-cyclic", detail: "I/P is not cyclic".into() })
}

/// Stable classes at level `n`; `n` must be a multiple of the tame index
/// and prime to `q`. `Π` is a module over the datum's group on which wild
/// inertia acts trivially.
pub fn inertial_classes_at(pi: &GammaModule, d: &LocalGaloisDatum, n: u64) -> Result<InertialLevel> {
    if pi.first_nontrivial(d.wild.elements()).is_some() {
        return Err(Error::WildAction);
    }
    let e = d.tame_index() as u64;
    if n == 0 || n % e != 0 || gcd(n, d.q) != 1 {
        return Err(Error::BadModulus(n as i64));
    }
    let k = pi.gens();
    if k == 0 {
        let t = FinAbGroup::trivial();
        return Ok(InertialLevel { level: n, h1: t.clone(), stable: t });
    }
    let tau = tame_generator(d)?;
    let exponent = pi.underlying().exponent().to_u64().ok_or_else(|| Error::ResourceCap("torsion exponent".into()))?;
    let cap = || Error::ResourceCap(format!("coefficient level for n = {n}"));
    let m = n.checked_mul(exponent).ok_or_else(cap)?.max(2);
    let mk = m.checked_mul(m).ok_or_else(cap)?;

    let a = hom_to_cyclic(pi, m)?;
    let a2 = hom_to_cyclic(pi, mk)?;
    let (num, den) = cyclic_h1_lattices(&a, tau, n)?;
    let (_, den2) = cyclic_h1_lattices(&a2, tau, n)?;
    let dying = preimage(&inclusion(pi, m, mk)?.transpose(), &den2)?;
    let den = den.vstack(&dying)?;
    let h1 = Subquotient::new(k, &num, &den)?;

    // (F·z)(τ) = F·z(F⁻¹τF) = F·z(τ^{q'}) with q·q' ≡ 1 mod n
    let q_inv = if n == 1 { 1 } else { inverse_mod(d.q, n).ok_or(Error::BadModulus(n as i64))? };
    let t = a.action(tau);
    let o = matrix_order(t, 1 << 12).expect("checked in cyclic_h1_lattices");
    let phi = a.action(d.frob).mul(&partial_sum(t, q_inv, o)?)?.sub(&IntMatrix::identity(k))?;
    let basis = h1.numerator_basis();
    let y = preimage(&basis.mul(&phi.transpose())?, &den)?;
    let fixed = if y.rows() == 0 { IntMatrix::empty(k) } else { y.mul(basis)? };
    let stable = Subquotient::new(k, &fixed, &den)?;
    Ok(InertialLevel { level: n, h1: h1.group().clone(), stable: stable.group().clone() })
}

fn smallest_prime_not_dividing(q: u64) -> u64 {
    (2..).find(|&l| is_prime(l) && q % l != 0).expect("infinitely many primes")
}

/// The two levels at which [`depth_zero_classes`] computes:
/// `n₀ = e·(q^f − 1)` with `f` the order of Frobenius in `Γ/P`, and
/// `n₀·e` (or `n₀·ℓ` for the least prime `ℓ ∤ q` when `e = 1`).
pub fn stabilization_levels(d: &LocalGaloisDatum) -> Result<(u64, u64)> {
    let (quot, proj) = d.mod_wild()?;
    let f = quot.element_order(proj[d.frob]) as u32;
    let e = d.tame_index() as u64;
    let base = d.q.checked_pow(f).ok_or_else(|| Error::ResourceCap(format!("q^{f} overflows")))? - 1;
    let n0 = e.checked_mul(base.max(1)).ok_or_else(|| Error::ResourceCap("level overflows".into()))?;
    let bump = if e > 1 { e } else { smallest_prime_not_dividing(d.q) };
    let n1 = n0.checked_mul(bump).ok_or_else(|| Error::ResourceCap("level overflows".into()))?;
    Ok((n0, n1))
}

/// Frobenius-stable inertial classes, checked to agree at both
/// [`stabilization_levels`].
pub fn depth_zero_classes(pi: &GammaModule, d: &LocalGaloisDatum) -> Result<FinAbGroup> {
    let (n0, n1) = stabilization_levels(d)?;
    let a = inertial_classes_at(pi, d, n0)?;
    let b = inertial_classes_at(pi, d, n1)?;
    if a.stable != b.stable {
        return Err(Error::NotStable(format!("{} at level {n0}, {} at level {n1}", a.stable, b.stable)));
    }
    Ok(a.stable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{h1_torus_coeffs, H2Options};
    use crate::galois::{FiniteGroup, Subgroup};
    use crate::gmodule::{dual_lattice, inflate_action};

    #[test]
    fn inverses() {
        assert_eq!(inverse_mod(3, 8), Some(3));
        assert_eq!(inverse_mod(2, 8), None);
        assert_eq!(inverse_mod(5, 1), Some(0));
    }

    #[test]
    fn partial_sums() {
        let t = IntMatrix::from_rows(&[[-1]]);
        assert_eq!(partial_sum(&t, 5, 2).unwrap(), IntMatrix::from_rows(&[[1]]));
        assert_eq!(partial_sum(&t, 4, 2).unwrap(), IntMatrix::from_rows(&[[0]]));
    }

    /// `H¹(C_n, T∨)` before Frobenius agrees with the two-path torus
    /// computation on the cyclic group itself.
    #[test]
    fn matches_torus_coefficients_on_small_levels() {
        let g = FiniteGroup::cyclic(2);
        let d = LocalGaloisDatum::new(g.clone(), Subgroup::whole(&g), Subgroup::trivial(&g), 0, 5, 5).unwrap();
        for chi in [[1i64, 1], [1, -1]] {
            let x = GammaModule::cyclic_character(g.clone(), 0, &chi).unwrap();
            for n in [2u64, 4, 6, 8, 12] {
                let lvl = inertial_classes_at(&x, &d, n).unwrap();
                let cn = FiniteGroup::cyclic(n as usize);
                let proj: Vec<usize> = (0..n as usize).map(|a| a % 2).collect();
                let lifted = inflate_action(&dual_lattice(&x).unwrap(), &cn, &proj).unwrap();
                let oracle = h1_torus_coeffs(&lifted, H2Options::default()).unwrap();
                assert_eq!(lvl.h1, oracle.group, "χ = {chi:?}, n = {n}");
            }
        }
    }

    #[test]
    fn level_must_be_prime_to_q() {
        let d = LocalGaloisDatum::unramified(1, 3, 3).unwrap();
        let x = GammaModule::cyclic_character(d.gamma.clone(), 0, &[1]).unwrap();
        assert!(matches!(inertial_classes_at(&x, &d, 6), Err(Error::BadModulus(6))));
        assert_eq!(inertial_classes_at(&x, &d, 8).unwrap().stable, FinAbGroup::cyclic(2));
    }
}
