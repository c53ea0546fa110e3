//! Named tori for sweeps.

use super::torus::TorusDatum;
use crate::abelian::IntMatrix;
use crate::error::Result;
use crate::galois::{catalog as groups, FiniteGroup, LocalGaloisDatum, Subgroup};
use crate::gmodule::family::finite_order_matrices;
use crate::gmodule::{permutation_module, GammaModule};
use crate::abelian::Presentation;

/// A prime `q ≡ 1 mod e`, used for totally tamely ramified data where
/// Frobenius is trivial on `Γ`.
fn residue_prime(e: usize) -> u64 {
    match e {
        1 | 2 => 3,
        3 | 6 => 7,
        4 => 5,
        _ => (2u64..).find(|&p| crate::arith::is_prime(p) && p % e as u64 == 1).expect("Dirichlet"),
    }
}

fn element_of_order(g: &FiniteGroup, n: usize) -> usize {
    g.elements().find(|&x| g.element_order(x) == n).expect("element of requested order")
}

/// `Γ = C_e = I`, Frobenius trivial, `X_*` with the generator acting by `sigma`.
pub fn totally_ramified(sigma: &IntMatrix, e: usize) -> Result<TorusDatum> {
    let g = FiniteGroup::cyclic(e);
    let q = residue_prime(e);
    let field = LocalGaloisDatum::new(g.clone(), Subgroup::whole(&g), Subgroup::trivial(&g), 0, q, q)?;
    let gens: Vec<(usize, IntMatrix)> = if e > 1 { vec![(1, sigma.clone())] } else { Vec::new() };
    let cochar = GammaModule::from_generators(g, Presentation::free(sigma.rows()), &gens)?;
    TorusDatum::new(field, cochar)
}

fn named(name: impl Into<String>, t: Result<TorusDatum>) -> (String, TorusDatum) {
    let name = name.into();
    let t = t.unwrap_or_else(|e| panic!("catalog torus {name}: {e:?}"));
    (name, t)
}

/// Split, unramified (every finite-order `σ` of rank ≤ 3 at `q = 3`),
/// totally tamely ramified, non-abelian tame, and wildly ramified tori.
pub fn torus_catalog() -> Vec<(String, TorusDatum)> {
    let mut out = Vec::new();
    let neg = IntMatrix::from_rows(&[[-1]]);
    let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);

    out.push(named("split-Gm", TorusDatum::unramified(&IntMatrix::identity(1), 3, 3)));
    out.push(named("norm-one-unramified", TorusDatum::unramified(&neg, 3, 3)));
    out.push(named("norm-one-ramified", totally_ramified(&neg, 2)));
    out.push(named("restriction-unramified-quadratic", TorusDatum::unramified(&swap, 2, 2)));

    for r in 1..=3 {
        for (i, s) in finite_order_matrices(r).iter().enumerate() {
            out.push(named(format!("unramified-r{r}-{i}"), TorusDatum::unramified(s, 3, 3)));
        }
    }
    for e in [2usize, 3, 4, 6] {
        for r in 1..=2 {
            for (i, s) in finite_order_matrices(r).iter().enumerate() {
                if s.pow(e as u32).map(|p| p.is_identity()).unwrap_or(false) {
                    out.push(named(format!("ramified-C{e}-r{r}-{i}"), totally_ramified(s, e)));
                }
            }
        }
    }

    // S₃ = C₃ ⋊ ⟨F⟩ with q ≡ 2 mod 3, and D₄ = C₄ ⋊ ⟨F⟩ with q ≡ 3 mod 4
    let s3 = groups::symmetric(3);
    let i3 = Subgroup::generated(&s3, &[element_of_order(&s3, 3)]);
    let f3 = element_of_order(&s3, 2);
    let d_s3 = || LocalGaloisDatum::new(s3.clone(), i3.clone(), Subgroup::trivial(&s3), f3, 5, 5);
    let sign: Vec<i64> = s3.elements().map(|x| if i3.contains(x) { 1 } else { -1 }).collect();
    out.push(named("tame-S3-sign", d_s3().and_then(|d| TorusDatum::new(d, GammaModule::cyclic_character(s3.clone(), 0, &sign)?))));
    let c2 = Subgroup::generated(&s3, &[f3]);
    out.push(named("tame-S3-permutation", d_s3().and_then(|d| TorusDatum::new(d, permutation_module(&s3, &c2)?))));

    let d4 = groups::dihedral(4);
    let rot = element_of_order(&d4, 4);
    let refl = d4.elements().find(|&x| d4.element_order(x) == 2 && !Subgroup::generated(&d4, &[rot]).contains(x)).expect("reflection");
    let i4 = Subgroup::generated(&d4, &[rot]);
    let plane = GammaModule::from_generators(
        d4.clone(),
        Presentation::free(2),
        &[(rot, IntMatrix::from_rows(&[[0, -1], [1, 0]])), (refl, IntMatrix::from_rows(&[[1, 0], [0, -1]]))],
    );
    out.push(named(
        "tame-D4-plane",
        LocalGaloisDatum::new(d4.clone(), i4, Subgroup::trivial(&d4), refl, 3, 3).and_then(|d| TorusDatum::new(d, plane?)),
    ));

    // V₄ = I × ⟨F⟩: inertia by −1, Frobenius swapping
    let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
    let (tau, frob) = (2usize, 1usize);
    let mixed = GammaModule::from_generators(
        v4.clone(),
        Presentation::free(2),
        &[(tau, IntMatrix::from_rows(&[[-1, 0], [0, -1]])), (frob, swap.clone())],
    );
    out.push(named(
        "tame-V4-mixed",
        LocalGaloisDatum::new(v4.clone(), Subgroup::generated(&v4, &[tau]), Subgroup::trivial(&v4), frob, 3, 3)
            .and_then(|d| TorusDatum::new(d, mixed?)),
    ));

    // wild inertia C₂ at p = 2, acting trivially or by −1
    let c2g = FiniteGroup::cyclic(2);
    let wild = || LocalGaloisDatum::new(c2g.clone(), Subgroup::whole(&c2g), Subgroup::whole(&c2g), 0, 2, 2);
    out.push(named("wild-C2-split", wild().map(|d| TorusDatum::split(d, 1))));
    out.push(named(
        "wild-C2-norm-one",
        wild().and_then(|d| TorusDatum::new(d, GammaModule::cyclic_character(c2g.clone(), 0, &[1, -1])?)),
    ));
    out
}

/// Finite-order matrices of rank `1..=max_rank`.
pub fn sigma_catalog(max_rank: usize) -> Vec<IntMatrix> {
    (1..=max_rank).flat_map(finite_order_matrices).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds() {
        let c = torus_catalog();
        assert!(c.len() > 20);
        let mut names: Vec<&str> = c.iter().map(|(n, _)| n.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
        assert!(c.iter().any(|(_, t)| !t.is_tame()));
    }

    #[test]
    fn depth_zero_over_catalog() {
        for (name, t) in torus_catalog() {
            let r = super::super::verify_depth_zero_match(&t).unwrap_or_else(|e| panic!("{name}: {e:?}"));
            assert!(r.passed(), "{name}: {r:?}");
            if t.is_unramified() {
                assert!(r.fully_verified(), "{name}");
            }
        }
    }
}
