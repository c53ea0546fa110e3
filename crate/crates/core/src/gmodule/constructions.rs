use num_bigint::BigInt;
use num_traits::Zero;

use super::module::{cyclic_pres, relations_or_empty, GammaModule};
use crate::abelian::lattice::{preimage, solve_in_basis, Subquotient};
use crate::abelian::{AbHom, FinAbGroup, IntMatrix, Presentation};
use crate::error::{Error, Result};
use crate::galois::{quotient_group, FiniteGroup, LeftCosets, Subgroup};

/// `ℤ[G/H]`: basis the left cosets of `H` (in representative order), with
/// `G` permuting them by left multiplication.
pub fn permutation_module(g: &FiniteGroup, h: &Subgroup) -> Result<GammaModule> {
    let cosets = LeftCosets::new(g, h)?;
    let k = cosets.len();
    let action = g
        .elements()
        .map(|x| {
            let mut m = IntMatrix::zeros(k, k);
            for (j, &r) in cosets.reps.iter().enumerate() {
                m[(cosets.coset_of[g.mul(x, r)], j)] = BigInt::from(1);
            }
            m
        })
        .collect();
    GammaModule::new(g.clone(), Presentation::free(k), action)
}

/// A subgroup of a module, with generators in the module's coordinates.
#[derive(Clone, Debug)]
pub struct SubmoduleResult {
    pub group: FinAbGroup,
    pub sq: Subquotient,
}

impl SubmoduleResult {
    /// Module-coordinate representatives of the cyclic generators of `group`.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        (0..self.sq.ngens()).map(|j| self.sq.generator(j)).collect()
    }
}

/// A quotient of a module, with the projection given by [`Subquotient::coords`].
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub group: FinAbGroup,
    pub sq: Subquotient,
}

impl QuotientResult {
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.sq.coords(x).expect("ambient vector")
    }
}

fn check_acting(m: &GammaModule, s: &Subgroup) -> Result<()> {
    s.check(m.group())
}

/// `M^S`: the elements fixed by every `s ∈ S`.
pub fn invariants(m: &GammaModule, s: &Subgroup) -> Result<SubmoduleResult> {
    check_acting(m, s)?;
    let k = m.gens();
    let rel = relations_or_empty(m);
    let id = IntMatrix::identity(k);
    let elems = s.elements();
    // x ↦ ((a_s − 1) x)_s, as a row map into ⊕_s M
    let mut big_map = IntMatrix::empty(0);
    let mut big_rel = IntMatrix::empty(k * elems.len());
    for (i, &g) in elems.iter().enumerate() {
        let block = m.action(g).sub(&id)?.transpose();
        big_map = if i == 0 { block } else { big_map.hstack(&block)? };
        for r in 0..rel.rows() {
            let mut row = vec![BigInt::zero(); k * elems.len()];
            row[i * k..(i + 1) * k].clone_from_slice(rel.row(r));
            big_rel.push_row(row);
        }
    }
    let lattice = if k == 0 { IntMatrix::empty(0) } else { preimage(&big_map, &big_rel)? };
    let sq = Subquotient::new(k, &lattice, &rel)?;
    Ok(SubmoduleResult { group: sq.group().clone(), sq })
}

/// `M_S = M / ⟨s·x − x⟩`.
pub fn coinvariants(m: &GammaModule, s: &Subgroup) -> Result<QuotientResult> {
    check_acting(m, s)?;
    let sq = Subquotient::quotient(m.gens(), &coinvariant_relations(m, s.elements())?)?;
    Ok(QuotientResult { group: sq.group().clone(), sq })
}

pub(crate) fn coinvariant_relations(m: &GammaModule, elems: &[usize]) -> Result<IntMatrix> {
    let k = m.gens();
    let id = IntMatrix::identity(k);
    let mut rel = relations_or_empty(m);
    for &g in elems {
        rel = rel.vstack(&m.action(g).sub(&id)?.transpose())?;
    }
    Ok(rel)
}

/// The raw norm `x ↦ Σ_{γ ∈ G/H} γ̄·x` over the smallest coset
/// representatives, as an endomorphism of the underlying group.
pub fn norm_sum(m: &GammaModule, h: &Subgroup) -> Result<AbHom> {
    let g = m.group();
    let reps = LeftCosets::new(g, h)?.reps;
    let k = m.gens();
    let mut sum = IntMatrix::zeros(k, k);
    for &r in &reps {
        sum = sum.add(m.action(r))?;
    }
    AbHom::new(m.presentation().clone(), m.presentation().clone(), sum)
}

/// The norm as a map `M_H → M_G`. Its construction checks that the raw sum
/// respects the `H`-coinvariant relations, i.e. that it is well defined on
/// `H`-coinvariants regardless of the representatives.
pub fn norm_on_coinvariants(m: &GammaModule, h: &Subgroup) -> Result<AbHom> {
    let raw = norm_sum(m, h)?;
    let all: Vec<usize> = m.group().elements().collect();
    let source = Presentation::new(m.gens(), coinvariant_relations(m, h.elements())?)?;
    let target = Presentation::new(m.gens(), coinvariant_relations(m, &all)?)?;
    AbHom::new(source, target, raw.matrix)
}

/// The module viewed over a subgroup; the returned embedding sends local
/// indices of the subgroup to elements of the ambient group.
pub fn restrict_action(m: &GammaModule, h: &Subgroup) -> Result<(GammaModule, Vec<usize>)> {
    h.check(m.group())?;
    let (hg, embed) = h.as_group(m.group());
    let action = embed.iter().map(|&x| m.action(x).clone()).collect();
    Ok((m.with_action(hg, action), embed))
}

/// Pulls a module over `Q` back along a surjection `proj: G → Q`.
pub fn inflate_action(m: &GammaModule, g: &FiniteGroup, proj: &[usize]) -> Result<GammaModule> {
    if !g.is_hom_to(m.group(), proj) {
        return Err(Error::InvalidModule("inflation map is not a homomorphism".into()));
    }
    let action = proj.iter().map(|&q| m.action(q).clone()).collect();
    Ok(m.with_action(g.clone(), action))
}

/// The module as a module over `G/N`; fails if `N` acts nontrivially.
pub fn descend_action(m: &GammaModule, n: &Subgroup) -> Result<(GammaModule, Vec<usize>)> {
    if let Some(x) = m.first_nontrivial(n.elements()) {
        return Err(Error::NontrivialAction(x));
    }
    let (q, proj) = quotient_group(m.group(), n)?;
    let mut action: Vec<Option<IntMatrix>> = vec![None; q.order()];
    for x in m.group().elements() {
        action[proj[x]].get_or_insert_with(|| m.action(x).clone());
    }
    let action = action.into_iter().map(|a| a.expect("projection is onto")).collect();
    Ok((m.with_action(q, action), proj))
}

/// `M / mM`.
pub fn reduce_mod(m: &GammaModule, modulus: u64) -> Result<GammaModule> {
    if modulus < 2 {
        return Err(Error::BadModulus(modulus as i64));
    }
    let k = m.gens();
    let rel = relations_or_empty(m).vstack(&IntMatrix::scalar(k, &BigInt::from(modulus)))?;
    GammaModule::new(m.group().clone(), Presentation::new(k, rel)?, m.actions().to_vec())
}

/// The dual lattice `Hom(X, ℤ)` with `(g·φ)(x) = φ(g⁻¹x)`, i.e. matrices
/// `(a_{g⁻¹})ᵀ`. For a lattice of cocharacters this is the character lattice.
pub fn dual_lattice(x: &GammaModule) -> Result<GammaModule> {
    if x.presentation().relations.rows() > 0 {
        return Err(Error::NotFree);
    }
    let g = x.group();
    let action = g.elements().map(|e| x.action(g.inv(e)).transpose()).collect();
    GammaModule::new(g.clone(), Presentation::free(x.gens()), action)
}

/// `Hom(X, ℤ/m)`, i.e. the `m`-torsion of `Hom(X, ℂ×)`, with
/// `(g·φ)(x) = φ(g⁻¹x)`.
///
/// For a lattice the generators are the dual basis. Otherwise they are a
/// basis of `{φ ∈ ℤᵏ : R·φ ≡ 0 mod m}` for the relation rows `R`, and
/// [`hom_to_cyclic_basis`] returns it.
pub fn hom_to_cyclic(x: &GammaModule, m: u64) -> Result<GammaModule> {
    if x.presentation().relations.rows() == 0 {
        return reduce_mod(&dual_lattice(x)?, m);
    }
    if m < 2 {
        return Err(Error::BadModulus(m as i64));
    }
    let basis = hom_to_cyclic_basis(x, m)?;
    let k = x.gens();
    let g = x.group();
    let solve = |v: &[BigInt]| solve_in_basis(v, &basis).expect("lattice contains m·ℤᵏ and is Γ-stable");
    let mut rel = IntMatrix::empty(k);
    for i in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[i] = BigInt::from(m);
        rel.push_row(solve(&e));
    }
    let action = g
        .elements()
        .map(|e| {
            let d = x.action(g.inv(e)).transpose();
            let moved = basis.mul(&d.transpose()).expect("square");
            let rows: Vec<Vec<BigInt>> = (0..k).map(|i| solve(moved.row(i))).collect();
            IntMatrix::from_big_rows(rows, k).expect("square").transpose()
        })
        .collect();
    GammaModule::new(g.clone(), Presentation::new(k, rel)?, action)
}

/// Rows: the lattice of integer vectors `φ` that define homomorphisms
/// `X → ℤ/m`, in the coordinates of `X`'s generators.
pub fn hom_to_cyclic_basis(x: &GammaModule, m: u64) -> Result<IntMatrix> {
    let k = x.gens();
    let rel = relations_or_empty(x);
    if rel.rows() == 0 {
        return Ok(IntMatrix::identity(k));
    }
    preimage(&rel.transpose(), &IntMatrix::scalar(rel.rows(), &BigInt::from(m)))
}

/// `M ⊕ N` over the same group.
pub fn direct_sum(a: &GammaModule, b: &GammaModule) -> Result<GammaModule> {
    if a.group() != b.group() {
        return Err(Error::InvalidModule("modules over different groups".into()));
    }
    let (ka, kb) = (a.gens(), b.gens());
    let k = ka + kb;
    let mut rel = IntMatrix::empty(k);
    for (m, off) in [(a, 0), (b, ka)] {
        let r = relations_or_empty(m);
        for i in 0..r.rows() {
            let mut row = vec![BigInt::zero(); k];
            row[off..off + m.gens()].clone_from_slice(r.row(i));
            rel.push_row(row);
        }
    }
    let action = a
        .group()
        .elements()
        .map(|g| {
            let mut out = IntMatrix::zeros(k, k);
            for (m, off) in [(a, 0), (b, ka)] {
                let s = m.action(g);
                for i in 0..m.gens() {
                    for j in 0..m.gens() {
                        out[(off + i, off + j)] = s[(i, j)].clone();
                    }
                }
            }
            out
        })
        .collect();
    GammaModule::new(a.group().clone(), Presentation::new(k, rel)?, action)
}

/// `ℤ/m` (`ℤ` for `m = 0`) with trivial action.
pub fn trivial_cyclic(g: &FiniteGroup, m: u64) -> GammaModule {
    GammaModule::trivial(g.clone(), cyclic_pres(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::catalog;

    #[test]
    fn permutation_modules() {
        let g = FiniteGroup::cyclic(2);
        let m = permutation_module(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(m.gens(), 1);
        assert!(m.action(1).is_identity());
        let m = permutation_module(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(m.action(1), &IntMatrix::from_rows(&[[0, 1], [1, 0]]));
    }

    #[test]
    fn invariants_and_coinvariants() {
        let g = FiniteGroup::cyclic(2);
        let all = Subgroup::whole(&g);
        let sign = GammaModule::cyclic_character(g.clone(), 0, &[1, -1]).unwrap();
        assert!(invariants(&sign, &all).unwrap().group.is_trivial());
        assert_eq!(coinvariants(&sign, &all).unwrap().group, FinAbGroup::cyclic(2));
        let swap = permutation_module(&g, &Subgroup::trivial(&g)).unwrap();
        let inv = invariants(&swap, &all).unwrap();
        assert_eq!(inv.group, FinAbGroup::free(1));
        let v = &inv.generators()[0];
        assert_eq!(v[0], v[1]);
        assert_eq!(coinvariants(&swap, &all).unwrap().group, FinAbGroup::free(1));
    }

    #[test]
    fn norms() {
        let g = FiniteGroup::cyclic(2);
        let swap = permutation_module(&g, &Subgroup::trivial(&g)).unwrap();
        let n = norm_sum(&swap, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(n.matrix, IntMatrix::from_rows(&[[1, 1], [1, 1]]));
        // ℤ/4 acting on ℤ through ℤ/2 by −1
        let g4 = FiniteGroup::cyclic(4);
        let m = GammaModule::cyclic_character(g4.clone(), 0, &[1, -1, 1, -1]).unwrap();
        let h = Subgroup::new(&g4, &[0, 2]).unwrap();
        assert!(norm_sum(&m, &h).unwrap().matrix.is_zero());
        assert!(norm_on_coinvariants(&m, &h).is_ok());
    }

    #[test]
    fn descend_and_inflate() {
        let g = FiniteGroup::cyclic(4);
        let m = GammaModule::cyclic_character(g.clone(), 0, &[1, -1, 1, -1]).unwrap();
        let n = Subgroup::new(&g, &[0, 2]).unwrap();
        let (q, proj) = descend_action(&m, &n).unwrap();
        assert_eq!(q.group().order(), 2);
        let back = inflate_action(&q, &g, &proj).unwrap();
        assert_eq!(back, m);
        let bad = descend_action(&m, &Subgroup::whole(&g));
        assert!(matches!(bad, Err(Error::NontrivialAction(1))));
    }

    #[test]
    fn restriction_to_trivial() {
        let g = catalog::symmetric(3);
        let m = permutation_module(&g, &Subgroup::trivial(&g)).unwrap();
        let (r, embed) = restrict_action(&m, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(embed.len(), 1);
        assert!(r.action(0).is_identity());
    }

    #[test]
    fn duals() {
        let g = FiniteGroup::cyclic(4);
        let rot = IntMatrix::from_rows(&[[0, -1], [1, 0]]);
        let x = GammaModule::from_generators(g, Presentation::free(2), &[(1, rot)]).unwrap();
        let d = dual_lattice(&x).unwrap();
        assert_eq!(dual_lattice(&d).unwrap(), x);
        assert_eq!(hom_to_cyclic(&x, 3).unwrap().underlying().order().unwrap(), BigInt::from(9));
    }

    #[test]
    fn homs_out_of_torsion() {
        let g = FiniteGroup::cyclic(2);
        let z2 = trivial_cyclic(&g, 2);
        assert_eq!(hom_to_cyclic(&z2, 4).unwrap().underlying(), FinAbGroup::cyclic(2));
        assert_eq!(hom_to_cyclic(&z2, 3).unwrap().underlying(), FinAbGroup::trivial());
        // ℤ/2 ⊕ ℤ₋ : the sign acts on the free part
        let sign = GammaModule::cyclic_character(g.clone(), 0, &[1, -1]).unwrap();
        let x = direct_sum(&z2, &sign).unwrap();
        let h = hom_to_cyclic(&x, 6).unwrap();
        assert_eq!(h.underlying(), FinAbGroup::from_invariants([BigInt::from(2), BigInt::from(6)]).unwrap());
        // invariants of Hom(ℤ₋, ℤ/6) are the 2-torsion
        let inv = invariants(&h, &Subgroup::whole(&g)).unwrap();
        assert_eq!(inv.group, FinAbGroup::from_invariants([BigInt::from(2), BigInt::from(2)]).unwrap());
    }
}
