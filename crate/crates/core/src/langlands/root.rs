use num_bigint::BigInt;

use super::tame::depth_zero_classes;
use super::torus::{frobenius_invariants_of_coinvariants, TorusDatum};
use crate::abelian::lattice::{solve_in_basis, Subquotient};
use crate::abelian::{big_vec, dual_group, FinAbGroup, IntMatrix, Presentation};
use crate::cohomology::{h1, induced_map, H1Result};
use crate::error::{Error, Result};
use crate::galois::{FiniteGroup, LocalGaloisDatum};
use crate::gmodule::{coinvariant_relations, hom_to_cyclic, hom_to_cyclic_basis, GammaModule, ModuleMap};

/// A root datum with an action of the finite Galois quotient: characters
/// `X^*`, cocharacters `X_*`, roots in `X^*`, coroots in `X_*` (paired by
/// index) and the perfect pairing `⟨x, y⟩ = xᵀ·P·y`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDatumGamma {
    pub x_star: GammaModule,
    pub x_costar: GammaModule,
    pub roots: Vec<Vec<BigInt>>,
    pub coroots: Vec<Vec<BigInt>>,
    pub pairing: IntMatrix,
}

fn err(msg: impl Into<String>) -> Error {
    Error::RootDatum(msg.into())
}

impl RootDatumGamma {
    pub fn new(
        x_star: GammaModule,
        x_costar: GammaModule,
        roots: Vec<Vec<BigInt>>,
        coroots: Vec<Vec<BigInt>>,
        pairing: IntMatrix,
    ) -> Result<Self> {
        let r = RootDatumGamma { x_star, x_costar, roots, coroots, pairing };
        r.validate()?;
        Ok(r)
    }

    fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        x.iter().zip(self.pairing.apply(y)).map(|(a, b)| a * b).sum()
    }

    fn validate(&self) -> Result<()> {
        let n = self.x_star.gens();
        if self.x_star.group() != self.x_costar.group() {
            return Err(err("character and cocharacter lattices over different groups"));
        }
        if self.x_star.presentation().relations.rows() > 0 || self.x_costar.presentation().relations.rows() > 0 {
            return Err(err("character and cocharacter lattices must be free"));
        }
        if self.x_costar.gens() != n || self.pairing.rows() != n || self.pairing.cols() != n {
            return Err(err("rank mismatch between lattices and pairing"));
        }
        if !self.pairing.is_unimodular() {
            return Err(err("pairing is not perfect"));
        }
        if self.roots.len() != self.coroots.len() {
            return Err(err("roots and coroots differ in number"));
        }
        if self.roots.iter().chain(&self.coroots).any(|v| v.len() != n) {
            return Err(err("root of the wrong length"));
        }
        for (i, (a, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            if self.pair(a, c) != BigInt::from(2) {
                return Err(err(format!("⟨α, α∨⟩ ≠ 2 for root {i}")));
            }
        }
        let root_index = |v: &[BigInt]| self.roots.iter().position(|r| r == v);
        let coroot_index = |v: &[BigInt]| self.coroots.iter().position(|r| r == v);
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            for (b, d) in self.roots.iter().zip(&self.coroots) {
                let s: Vec<BigInt> = b.iter().zip(a).map(|(x, y)| x - self.pair(b, c) * y).collect();
                let sv: Vec<BigInt> = d.iter().zip(c).map(|(x, y)| x - self.pair(a, d) * y).collect();
                if root_index(&s).is_none() || coroot_index(&sv).is_none() {
                    return Err(err("reflections do not permute the roots"));
                }
            }
        }
        let g = self.x_star.group();
        for e in g.elements() {
            let a = self.x_star.action(e);
            let b = self.x_costar.action(e);
            if a.transpose().mul(&self.pairing)?.mul(b)? != self.pairing {
                return Err(err(format!("element {e} does not preserve the pairing")));
            }
            for (x, y) in self.roots.iter().zip(&self.coroots) {
                match (root_index(&a.apply(x)), coroot_index(&b.apply(y))) {
                    (Some(i), Some(j)) if i == j => {}
                    _ => return Err(err(format!("element {e} does not permute the roots"))),
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.x_star.gens()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.x_star.group()
    }

    fn rank_one(g: &FiniteGroup, root: i64, coroot: i64) -> Self {
        let t = GammaModule::trivial(g.clone(), Presentation::free(1));
        RootDatumGamma::new(
            t.clone(),
            t,
            vec![big_vec(&[root]), big_vec(&[-root])],
            vec![big_vec(&[coroot]), big_vec(&[-coroot])],
            IntMatrix::identity(1),
        )
        .expect("rank one datum")
    }

    /// `SL₂` with trivial Galois action.
    pub fn sl2(g: &FiniteGroup) -> Self {
        Self::rank_one(g, 2, 1)
    }

    /// `PGL₂` with trivial Galois action.
    pub fn pgl2(g: &FiniteGroup) -> Self {
        Self::rank_one(g, 1, 2)
    }

    /// `GL₂` with trivial Galois action.
    pub fn gl2(g: &FiniteGroup) -> Self {
        let t = GammaModule::trivial(g.clone(), Presentation::free(2));
        let a = big_vec(&[1, -1]);
        let neg = big_vec(&[-1, 1]);
        RootDatumGamma::new(t.clone(), t, vec![a.clone(), neg.clone()], vec![a, neg], IntMatrix::identity(2))
            .expect("GL₂ datum")
    }

    /// A torus (no roots) with the given cocharacter lattice.
    pub fn torus(x_costar: GammaModule) -> Result<Self> {
        let x_star = crate::gmodule::dual_lattice(&x_costar)?;
        RootDatumGamma::new(x_star, x_costar.clone(), Vec::new(), Vec::new(), IntMatrix::identity(x_costar.gens()))
    }
}

/// `π₁ = X_*/ℤΦ∨` with the induced action; its `ℂ×`-dual is `Z(G∨)`.
pub fn center_dual(r: &RootDatumGamma) -> Result<GammaModule> {
    let n = r.rank();
    let rel = IntMatrix::from_big_rows(r.coroots.clone(), n)?;
    let pres = Presentation::new(n, rel)?;
    GammaModule::new(r.group().clone(), pres, r.x_costar.actions().to_vec())
        .map_err(|e| err(format!("coroots not Γ-stable: {e}")))
}

/// The map `H¹(Γ, Z(G∨)[m]) → H¹(Γ, T∨[m])` induced by a Γ-equivariant
/// surjection `f: X_*(T) → π₁` (columns: images of the basis of `X_*(T)`).
#[derive(Clone, Debug)]
pub struct CenterToTorus {
    pub level: u64,
    pub source: H1Result,
    pub target: H1Result,
    /// Target coordinates of the image of each source generator.
    pub matrix: IntMatrix,
    pub coefficients: ModuleMap,
}

pub fn center_to_torus_map(r: &RootDatumGamma, t: &TorusDatum, f: &IntMatrix, level: u64) -> Result<CenterToTorus> {
    let pi = center_dual(r)?;
    if pi.group() != t.group() {
        return Err(err("root datum and torus over different groups"));
    }
    ModuleMap::new(t.cochar.clone(), pi.clone(), f.clone())?;
    let rel = crate::gmodule::relations_or_empty(&pi).vstack(&f.transpose())?;
    if !Subquotient::quotient(pi.gens(), &rel)?.group().is_trivial() {
        return Err(err("cocharacter map does not surject onto π₁"));
    }
    let zm = hom_to_cyclic(&pi, level)?;
    let tm = hom_to_cyclic(&t.cochar, level)?;
    let bz = hom_to_cyclic_basis(&pi, level)?;
    let bt = hom_to_cyclic_basis(&t.cochar, level)?;
    // φ ↦ φ ∘ f
    let pulled = bz.mul(f)?;
    let rows: Vec<Vec<BigInt>> = (0..pulled.rows())
        .map(|i| solve_in_basis(pulled.row(i), &bt).ok_or(Error::NotInLattice))
        .collect::<Result<_>>()?;
    let m = IntMatrix::from_big_rows(rows, t.rank())?.transpose();
    let coefficients = ModuleMap::new(zm, tm, m)?;
    let source = h1(&coefficients.source)?;
    let target = h1(&coefficients.target)?;
    let matrix = induced_map(&coefficients, &source, &target)?;
    Ok(CenterToTorus { level, source, target, matrix, coefficients })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CenterClasses {
    /// `H¹(W_F/I_F, Z(G∨)^I)`.
    pub unramified: FinAbGroup,
    /// Frobenius-stable classes on tame inertia.
    pub inertial: FinAbGroup,
    /// Direct sum of the two graded pieces.
    pub total: FinAbGroup,
}

/// `π₁` made `P`-coinvariant, as a module over `Γ`.
pub fn wild_coinvariant_center(r: &RootDatumGamma, d: &LocalGaloisDatum) -> Result<GammaModule> {
    if r.group() != &d.gamma {
        return Err(err("root datum and local datum over different groups"));
    }
    let pi = center_dual(r)?;
    let rel = coinvariant_relations(&pi, d.wild.elements())?;
    GammaModule::new(pi.group().clone(), Presentation::new(pi.gens(), rel)?, pi.actions().to_vec())
}

/// The graded pieces of `H¹(W_F/P_F, Z(G∨)^P)`.
pub fn depth_zero_center_pieces(r: &RootDatumGamma, d: &LocalGaloisDatum) -> Result<CenterClasses> {
    let pi = wild_coinvariant_center(r, d)?;
    if pi.underlying().is_trivial() {
        let t = FinAbGroup::trivial();
        return Ok(CenterClasses { unramified: t.clone(), inertial: t.clone(), total: t });
    }
    let unramified = dual_group(&frobenius_invariants_of_coinvariants(&pi, d)?);
    let inertial = depth_zero_classes(&pi, d)?;
    let total = unramified.direct_sum(&inertial);
    Ok(CenterClasses { unramified, inertial, total })
}

pub fn depth_zero_center_classes(r: &RootDatumGamma, d: &LocalGaloisDatum) -> Result<FinAbGroup> {
    Ok(depth_zero_center_pieces(r, d)?.total)
}

/// The finite model `C_n ⋊ C_l` of `W_F/P_F`, with `τ ↦ τ^q` under
/// Frobenius, and its projection to `Γ/P`. Element `(a, b) = τᵃFᵇ` has
/// index `a + n·b`.
#[derive(Clone, Debug)]
pub struct WeilModel {
    pub group: FiniteGroup,
    pub tame_quotient: FiniteGroup,
    /// `Γ → Γ/P`.
    pub mod_wild: Vec<usize>,
    /// `C_n ⋊ C_l → Γ/P`.
    pub to_quotient: Vec<usize>,
}

pub fn weil_model(d: &LocalGaloisDatum, n: usize, l: usize) -> Result<WeilModel> {
    let bad = || Error::BadModulus(n as i64);
    if n == 0 || l == 0 {
        return Err(bad());
    }
    let qn = (d.q % n as u64) as usize;
    let mut qpow = vec![1 % n; l + 1];
    for b in 1..=l {
        qpow[b] = qpow[b - 1] * qn % n;
    }
    if qpow[l] != 1 % n || crate::arith::gcd(d.q, n as u64) != 1 {
        return Err(bad());
    }
    let idx = |a: usize, b: usize| a + n * b;
    let mut table = vec![vec![0; n * l]; n * l];
    for b1 in 0..l {
        for a1 in 0..n {
            for b2 in 0..l {
                for a2 in 0..n {
                    table[idx(a1, b1)][idx(a2, b2)] = idx((a1 + qpow[b1] * a2) % n, (b1 + b2) % l);
                }
            }
        }
    }
    let group = FiniteGroup::new(table, 0)?;
    let (quot, proj) = d.mod_wild()?;
    let e = d.tame_index();
    let tau = d
        .inertia
        .elements()
        .iter()
        .map(|&x| proj[x])
        .find(|&x| quot.element_order(x) == e)
        .ok_or_else(|| Error::LocalDatum { name: "tame-quotient-cyclic", detail: "I/P is not cyclic".into() })?;
    let frob = proj[d.frob];
    let to_quotient: Vec<usize> = (0..n * l)
        .map(|i| quot.mul(quot.pow(tau, (i % n) as u64), quot.pow(frob, (i / n) as u64)))
        .collect();
    if !group.is_hom_to(&quot, &to_quotient) {
        return Err(Error::InvalidGroup(format!("C_{n} ⋊ C_{l} does not map to Γ/P")));
    }
    Ok(WeilModel { group, tame_quotient: quot, mod_wild: proj, to_quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{FiniteGroup, Subgroup};

    #[test]
    fn centers_of_rank_one_groups() {
        let g = FiniteGroup::cyclic(2);
        assert!(center_dual(&RootDatumGamma::sl2(&g)).unwrap().underlying().is_trivial());
        assert_eq!(center_dual(&RootDatumGamma::pgl2(&g)).unwrap().underlying(), FinAbGroup::cyclic(2));
        assert_eq!(center_dual(&RootDatumGamma::gl2(&g)).unwrap().underlying(), FinAbGroup::free(1));
    }

    #[test]
    fn invalid_data() {
        let g = FiniteGroup::cyclic(1);
        let t = GammaModule::trivial(g.clone(), Presentation::free(1));
        let bad = RootDatumGamma::new(t.clone(), t.clone(), vec![big_vec(&[1])], vec![big_vec(&[1])], IntMatrix::identity(1));
        assert!(matches!(bad, Err(Error::RootDatum(_))));
        // swapping the two coordinates of GL₂ is fine; negating one is not
        let g2 = FiniteGroup::cyclic(2);
        let flip = GammaModule::from_generators(g2.clone(), Presentation::free(2), &[(1, IntMatrix::from_rows(&[[-1, 0], [0, 1]]))])
            .unwrap();
        let a = big_vec(&[1, -1]);
        let n = big_vec(&[-1, 1]);
        let r = RootDatumGamma::new(flip.clone(), flip, vec![a.clone(), n.clone()], vec![a, n], IntMatrix::identity(2));
        assert!(matches!(r, Err(Error::RootDatum(_))));
    }

    #[test]
    fn center_classes_small() {
        let d = LocalGaloisDatum::unramified(2, 3, 3).unwrap();
        let sl2 = RootDatumGamma::sl2(&d.gamma);
        assert!(depth_zero_center_classes(&sl2, &d).unwrap().is_trivial());
        let pgl2 = RootDatumGamma::pgl2(&d.gamma);
        let c = depth_zero_center_pieces(&pgl2, &d).unwrap();
        assert_eq!(c.unramified, FinAbGroup::cyclic(2));
        assert_eq!(c.inertial, FinAbGroup::cyclic(2));
        let gl2 = RootDatumGamma::gl2(&d.gamma);
        let c = depth_zero_center_pieces(&gl2, &d).unwrap();
        assert_eq!(c.unramified, FinAbGroup::free(1));
        assert_eq!(c.inertial, FinAbGroup::cyclic(2));
    }

    #[test]
    fn center_to_split_torus() {
        let g = FiniteGroup::cyclic(2);
        let d = LocalGaloisDatum::unramified(2, 3, 3).unwrap();
        let t = TorusDatum::split(d, 1);
        let m = center_to_torus_map(&RootDatumGamma::pgl2(&g), &t, &IntMatrix::identity(1), 2).unwrap();
        assert_eq!(m.source.group, FinAbGroup::cyclic(2));
        // μ₂ ⊂ ℂ× is the 2-torsion, so the map is an isomorphism at level 2
        assert_eq!(m.target.group, FinAbGroup::cyclic(2));
        assert_eq!(m.matrix, IntMatrix::identity(1));
        let zero = center_to_torus_map(&RootDatumGamma::sl2(&g), &t, &IntMatrix::identity(1), 2).unwrap();
        assert!(zero.source.group.is_trivial());
        // not surjective onto π₁ = ℤ/2
        assert!(center_to_torus_map(&RootDatumGamma::pgl2(&g), &t, &IntMatrix::from_rows(&[[2]]), 2).is_err());
    }

    #[test]
    fn weil_models() {
        let d = LocalGaloisDatum::unramified(2, 3, 3).unwrap();
        let w = weil_model(&d, 8, 2).unwrap();
        assert_eq!(w.group.order(), 16);
        assert!(!w.group.is_abelian());
        assert!(weil_model(&d, 5, 2).is_err());
        let sub = Subgroup::generated(&w.group, &[1]);
        assert_eq!(sub.order(), 8);
    }
}
