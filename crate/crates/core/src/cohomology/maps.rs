use num_bigint::BigInt;

use super::cochain::Cocycle1;
use super::h1::{h0, h1_any, H1Result};
use crate::abelian::lattice::{in_rowspace, preimage, solve_left};
use crate::abelian::{hom_kernel_image, AbHom, IntMatrix, Presentation};
use crate::error::{Error, Result};
use crate::galois::{FiniteGroup, LeftCosets, Subgroup};
use crate::gmodule::{relations_or_empty, GammaModule, ModuleMap, ShortExactSeq, SubmoduleResult};

fn pos(h: &Subgroup, x: usize) -> usize {
    h.elements().binary_search(&x).expect("element of subgroup")
}

fn check_chain(g: &FiniteGroup, big: &Subgroup, small: &Subgroup) -> Result<()> {
    big.check(g)?;
    small.check(g)?;
    if !small.is_subgroup_of(big) {
        return Err(Error::Chain("subgroup is not contained in the larger group".into()));
    }
    Ok(())
}

fn add_into(acc: &mut [BigInt], v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// Left cosets of `small` inside `big`, smallest representative first;
/// returns the representatives and, for every element of `G`, the
/// representative of its coset (or `usize::MAX` outside `big`).
fn cosets_within(g: &FiniteGroup, big: &Subgroup, small: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut rep_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &x in big.elements() {
        if rep_of[x] != usize::MAX {
            continue;
        }
        for &h in small.elements() {
            rep_of[g.mul(x, h)] = x;
        }
        reps.push(x);
    }
    (reps, rep_of)
}

/// Restricts a cocycle on `big` to `small ≤ big`.
pub fn restrict(m: &GammaModule, big: &Subgroup, small: &Subgroup, z: &Cocycle1) -> Result<Cocycle1> {
    check_chain(m.group(), big, small)?;
    Ok(Cocycle1 { values: small.elements().iter().map(|&x| z.values[pos(big, x)].clone()).collect() })
}

/// Which of the two corestriction expressions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorFormula {
    /// `Σ γ̄₁·z(γ̄₁⁻¹ w γ̄₂)` over pairs of cosets with `w γ̄₂ ∈ γ̄₁ H`.
    DoubleCoset,
    /// `Σ_{γ₃} γ̄₃·z(γ̄₃⁻¹ w \overline{γ₄γ₃})` with `w γ̄₄ ∈ H`; needs `H` normal.
    Normal,
}

/// Corestriction of a cocycle on `small` to a cocycle on `big`, using the
/// smallest coset representatives.
pub fn corestrict(
    m: &GammaModule,
    big: &Subgroup,
    small: &Subgroup,
    z: &Cocycle1,
    formula: CorFormula,
) -> Result<Cocycle1> {
    let g = m.group();
    check_chain(g, big, small)?;
    let (reps, rep_of) = cosets_within(g, big, small);
    if formula == CorFormula::Normal && !big.elements().iter().all(|&b| small.elements().iter().all(|&h| small.contains(g.conj(b, h)))) {
        return Err(Error::NotNormal);
    }
    let values = big
        .elements()
        .iter()
        .map(|&w| {
            let mut acc = m.zero();
            match formula {
                CorFormula::DoubleCoset => {
                    for &g2 in &reps {
                        let wg2 = g.mul(w, g2);
                        let g1 = rep_of[wg2];
                        let arg = g.mul(g.inv(g1), wg2);
                        add_into(&mut acc, &m.act(g1, &z.values[pos(small, arg)]));
                    }
                }
                CorFormula::Normal => {
                    let g4 = rep_of[g.inv(w)];
                    for &g3 in &reps {
                        let g43 = rep_of[g.mul(g4, g3)];
                        let arg = g.mul(g.mul(g.inv(g3), w), g43);
                        add_into(&mut acc, &m.act(g3, &z.values[pos(small, arg)]));
                    }
                }
            }
            acc
        })
        .collect();
    Ok(Cocycle1 { values })
}

/// `(γ·z)(w) = γ̄·z(γ̄⁻¹ w γ̄)` for a cocycle on a subgroup normalized by `gamma`.
pub fn conjugate(m: &GammaModule, n: &Subgroup, gamma: usize, z: &Cocycle1) -> Result<Cocycle1> {
    let g = m.group();
    n.check(g)?;
    let gi = g.inv(gamma);
    if !n.elements().iter().all(|&x| n.contains(g.conj(gi, x))) {
        return Err(Error::NotNormal);
    }
    let values = n
        .elements()
        .iter()
        .map(|&w| m.act(gamma, &z.values[pos(n, g.conj(gi, w))]))
        .collect();
    Ok(Cocycle1 { values })
}

/// The averaging map `z ↦ [w ↦ Σ_{γ ∈ G/H_E} γ̄·z(γ̄⁻¹ w γ̄)]` on cocycles of
/// `H_K`, for `H_K ⊴ G` and `H_K ≤ H_E ≤ G`.
pub fn averaging_map(m: &GammaModule, h_e: &Subgroup, h_k: &Subgroup, z: &Cocycle1) -> Result<Cocycle1> {
    let g = m.group();
    check_chain(g, h_e, h_k)?;
    if !h_k.is_normal_in(g) {
        return Err(Error::Chain("inner subgroup is not normal in the group".into()));
    }
    let reps = LeftCosets::new(g, h_e)?.reps;
    let mut acc = Cocycle1 { values: vec![m.zero(); h_k.order()] };
    for &gamma in &reps {
        acc = acc.add(&conjugate(m, h_k, gamma, z)?);
    }
    Ok(acc)
}

/// Matrix of the map on `H¹` induced by a map of cocycle tables: column `j`
/// holds the target coordinates of the image of the `j`-th source generator.
pub fn class_map(
    src: &H1Result,
    tgt: &H1Result,
    f: impl Fn(&Cocycle1) -> Result<Cocycle1>,
) -> Result<IntMatrix> {
    let reps = src.representatives();
    let mut out = IntMatrix::zeros(tgt.ngens(), src.ngens());
    for (j, z) in reps.iter().enumerate() {
        let c = tgt.class_of(&f(z)?)?;
        for (i, x) in c.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    Ok(out)
}

/// The class map as a homomorphism of presented groups (checks well-definedness).
pub fn class_hom(src: &H1Result, tgt: &H1Result, matrix: IntMatrix) -> Result<AbHom> {
    AbHom::new(
        Presentation::new(src.ngens(), src.relation_matrix())?,
        Presentation::new(tgt.ngens(), tgt.relation_matrix())?,
        matrix,
    )
}

/// `H¹(Γ, A) → H¹(Γ, B)` induced by a module map.
pub fn induced_map(f: &ModuleMap, src: &H1Result, tgt: &H1Result) -> Result<IntMatrix> {
    class_map(src, tgt, |z| Ok(Cocycle1 { values: z.values.iter().map(|v| f.apply(v)).collect() }))
}

/// The connecting map `δ: H⁰(Γ, C) → H¹(Γ, A)` of a short exact sequence,
/// with the exactness of `H⁰(C) → H¹(A) → H¹(B)` checked.
#[derive(Clone, Debug)]
pub struct Delta0 {
    pub h0_c: SubmoduleResult,
    pub h1_a: H1Result,
    pub h1_b: H1Result,
    /// Row `i`: coordinates in `H¹(A)` of `δ` of the `i`-th generator of `H⁰(C)`.
    pub images: IntMatrix,
}

impl Delta0 {
    /// `δ(c)` for an invariant `c ∈ C^Γ`, as a cocycle on `A`.
    pub fn delta(ses: &ShortExactSeq, c: &[BigInt]) -> Result<Cocycle1> {
        let b_mod = &ses.inc.target;
        let c_mod = &ses.proj.target;
        let a_mod = &ses.inc.source;
        let lift_sys = ses.proj.matrix.transpose().vstack(&relations_or_empty(c_mod))?;
        let x = solve_left(&lift_sys, c).ok_or_else(|| Error::NotExact("element does not lift".into()))?;
        let b: Vec<BigInt> = x[..b_mod.gens()].to_vec();
        let inc_sys = ses.inc.matrix.transpose().vstack(&relations_or_empty(b_mod))?;
        let values = b_mod
            .group()
            .elements()
            .map(|g| {
                let gb: Vec<BigInt> = b_mod.act(g, &b).iter().zip(&b).map(|(p, q)| p - q).collect();
                let y = solve_left(&inc_sys, &gb).ok_or_else(|| Error::NotExact("g·b − b is not in A".into()))?;
                Ok(y[..a_mod.gens()].to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cocycle1 { values })
    }
}

pub fn connecting_delta0(ses: &ShortExactSeq) -> Result<Delta0> {
    let h0_c = h0(&ses.proj.target)?;
    let h1_a = h1_any(&ses.inc.source)?;
    let h1_b = h1_any(&ses.inc.target)?;
    let mut images = IntMatrix::empty(h1_a.ngens());
    for c in h0_c.generators() {
        let z = Delta0::delta(ses, &c)?;
        images.push_row(h1_a.normalize(&h1_a.class_of(&z)?));
    }
    let d = Delta0 { h0_c, h1_a, h1_b, images };
    d.check_exactness(ses)?;
    Ok(d)
}

impl Delta0 {
    /// `im δ = ker(H¹(A) → H¹(B))`, compared as subgroups of `H¹(A)`.
    fn check_exactness(&self, ses: &ShortExactSeq) -> Result<()> {
        let m = induced_map(&ses.inc, &self.h1_a, &self.h1_b)?;
        let hom = class_hom(&self.h1_a, &self.h1_b, m)?;
        let ki = hom_kernel_image(&hom)?;
        let rel = self.h1_a.relation_matrix();
        let n = self.h1_a.ngens();
        let ker_lattice = preimage(&hom.matrix.transpose(), &hom.target.relations)?;
        let image = self.images.vstack(&rel)?;
        let image_in_ker = (0..image.rows()).all(|i| in_rowspace(image.row(i), &ker_lattice));
        let ker_in_image = (0..ker_lattice.rows()).all(|i| in_rowspace(ker_lattice.row(i), &image));
        if n > 0 && !(image_in_ker && ker_in_image) {
            return Err(Error::Mismatch(format!(
                "image of the connecting map differs from ker(H¹(A) → H¹(B)) = {}",
                ki.kernel
            )));
        }
        Ok(())
    }

    /// Whether `δ` is the zero map.
    pub fn is_zero(&self) -> bool {
        (0..self.images.rows()).all(|i| self.h1_a.is_zero_class(self.images.row(i)))
    }
}

/// Reduces every column of a class-level matrix into canonical range.
pub(crate) fn normalize_columns(tgt: &H1Result, m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for j in 0..m.cols() {
        let c = tgt.normalize(&m.col_vec(j));
        for (i, x) in c.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::h1::h1;
    use crate::gmodule::{restrict_action, trivial_cyclic};

    #[test]
    fn restriction_kills_doubled_character() {
        let g = FiniteGroup::cyclic(4);
        let m = trivial_cyclic(&g, 2);
        let whole = Subgroup::whole(&g);
        let h = Subgroup::new(&g, &[0, 2]).unwrap();
        let hg = h1(&m).unwrap();
        let (mh, _) = restrict_action(&m, &h).unwrap();
        let hh = h1(&mh).unwrap();
        let r = class_map(&hg, &hh, |z| restrict(&m, &whole, &h, z)).unwrap();
        assert!(normalize_columns(&hh, &r).is_zero());
    }

    #[test]
    fn corestriction_is_transfer() {
        // ℤ/4 ⊃ {0,2}, trivial ℤ/2: the transfer sends 1 ↦ 2, so cor is an isomorphism
        let g = FiniteGroup::cyclic(4);
        let m = trivial_cyclic(&g, 2);
        let whole = Subgroup::whole(&g);
        let h = Subgroup::new(&g, &[0, 2]).unwrap();
        let (mh, _) = restrict_action(&m, &h).unwrap();
        let hh = h1(&mh).unwrap();
        let hg = h1(&m).unwrap();
        for f in [CorFormula::DoubleCoset, CorFormula::Normal] {
            let c = class_map(&hh, &hg, |z| corestrict(&m, &whole, &h, z, f)).unwrap();
            assert!(!normalize_columns(&hg, &c).is_zero());
        }
    }

    #[test]
    fn delta_examples() {
        let g = FiniteGroup::cyclic(2);
        let z = trivial_cyclic(&g, 0);
        let z2 = trivial_cyclic(&g, 2);
        let z4 = trivial_cyclic(&g, 4);
        let ses = ShortExactSeq::new(
            ModuleMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[2]])).unwrap(),
            ModuleMap::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[[1]])).unwrap(),
        )
        .unwrap();
        assert!(connecting_delta0(&ses).unwrap().is_zero());
        let ses = ShortExactSeq::new(
            ModuleMap::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[[2]])).unwrap(),
            ModuleMap::new(z4, z2, IntMatrix::from_rows(&[[1]])).unwrap(),
        )
        .unwrap();
        let d = connecting_delta0(&ses).unwrap();
        assert!(d.is_zero());
    }
}
