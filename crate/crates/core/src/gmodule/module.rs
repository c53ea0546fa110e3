use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::lattice::{hnf, preimage, solve_in_basis, Subquotient};
use crate::abelian::{AbHom, FinAbGroup, IntMatrix, Presentation};
use crate::error::{Error, Result};
use crate::galois::FiniteGroup;

/// A finitely generated abelian group with an action of a finite group.
///
/// Elements are integer vectors on the generators, read modulo the
/// relations. `action[g]` is a square matrix acting on column vectors, so
/// `g·x = action[g] · x` and `action[gh] = action[g] · action[h]` modulo
/// relations.
#[derive(Clone, Debug)]
pub struct GammaModule {
    group: FiniteGroup,
    pres: Presentation,
    action: Vec<IntMatrix>,
    diag: OnceLock<DiagonalForm>,
}

impl PartialEq for GammaModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.pres == other.pres && self.action == other.action
    }
}

impl GammaModule {
    pub fn new(group: FiniteGroup, pres: Presentation, action: Vec<IntMatrix>) -> Result<Self> {
        let k = pres.gens;
        let n = group.order();
        if action.len() != n {
            return Err(Error::InvalidModule(format!("{} action matrices for a group of order {n}", action.len())));
        }
        if let Some(g) = action.iter().position(|a| a.rows() != k || a.cols() != k) {
            return Err(Error::InvalidModule(format!("action matrix of element {g} is not {k}x{k}")));
        }
        let rel = hnf(&pres.relations);
        let zero_mod = |m: &IntMatrix| (0..m.cols()).all(|j| is_rel(&m.col_vec(j), &rel));
        for (g, a) in action.iter().enumerate() {
            for i in 0..pres.relations.rows() {
                if !is_rel(&a.apply(pres.relations.row(i)), &rel) {
                    return Err(Error::InvalidModule(format!("element {g} does not preserve relation {i}")));
                }
            }
        }
        if !zero_mod(&action[group.identity()].sub(&IntMatrix::identity(k))?) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let prod = action[g].mul(&action[h])?;
                if !zero_mod(&action[group.mul(g, h)].sub(&prod)?) {
                    return Err(Error::InvalidModule(format!("action({g}·{h}) ≠ action({g})·action({h})")));
                }
            }
        }
        Ok(GammaModule { group, pres, action, diag: OnceLock::new() })
    }

    /// Extends images of generators of the group to an action, then validates.
    pub fn from_generators(group: FiniteGroup, pres: Presentation, gens: &[(usize, IntMatrix)]) -> Result<Self> {
        let n = group.order();
        let k = pres.gens;
        let mut action: Vec<Option<IntMatrix>> = vec![None; n];
        action[group.identity()] = Some(IntMatrix::identity(k));
        let mut stack = vec![group.identity()];
        while let Some(x) = stack.pop() {
            for (s, m) in gens {
                if *s >= n {
                    return Err(Error::InvalidModule(format!("generator {s} out of range")));
                }
                let y = group.mul(x, *s);
                if action[y].is_none() {
                    action[y] = Some(action[x].as_ref().expect("visited").mul(m)?);
                    stack.push(y);
                }
            }
        }
        let action: Option<Vec<IntMatrix>> = action.into_iter().collect();
        let action = action.ok_or_else(|| Error::InvalidModule("generators do not generate the group".into()))?;
        GammaModule::new(group, pres, action)
    }

    /// `ℤʳ` with the given matrices.
    pub fn lattice(group: FiniteGroup, action: Vec<IntMatrix>) -> Result<Self> {
        let r = action.first().map_or(0, IntMatrix::rows);
        GammaModule::new(group, Presentation::free(r), action)
    }

    /// A group with trivial action.
    pub fn trivial(group: FiniteGroup, pres: Presentation) -> Self {
        let k = pres.gens;
        let action = vec![IntMatrix::identity(k); group.order()];
        GammaModule { group, pres, action, diag: OnceLock::new() }
    }

    /// `ℤ/m` (`m = 0` for `ℤ`) on which `g` acts by multiplication by `chi[g]`.
    pub fn cyclic_character(group: FiniteGroup, m: u64, chi: &[i64]) -> Result<Self> {
        let pres = cyclic_pres(m);
        let action = chi.iter().map(|&c| IntMatrix::from_rows(&[[c]])).collect();
        GammaModule::new(group, pres, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn gens(&self) -> usize {
        self.pres.gens
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn act(&self, g: usize, x: &[BigInt]) -> Vec<BigInt> {
        self.action[g].apply(x)
    }

    pub fn underlying(&self) -> FinAbGroup {
        self.diagonal().sq.group().clone()
    }

    pub fn is_free(&self) -> bool {
        self.underlying().torsion().is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.underlying().is_finite()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.gens()]
    }

    /// Whether `x` represents zero.
    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.diagonal().to_diag(x).iter().all(Zero::is_zero)
    }

    pub fn elem_eq(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// The first element of `elems` that acts nontrivially, if any.
    pub fn first_nontrivial(&self, elems: &[usize]) -> Option<usize> {
        let id = IntMatrix::identity(self.gens());
        elems.iter().copied().find(|&g| {
            let d = self.action[g].sub(&id).expect("square");
            (0..d.cols()).any(|j| !self.is_zero(&d.col_vec(j)))
        })
    }

    /// Diagonal coordinates `⊕ ℤ/dᵢ`, computed once.
    pub fn diagonal(&self) -> &DiagonalForm {
        self.diag.get_or_init(|| DiagonalForm::of(self))
    }

    /// The same module with a different acting group, given the matrices.
    pub(crate) fn with_action(&self, group: FiniteGroup, action: Vec<IntMatrix>) -> GammaModule {
        GammaModule { group, pres: self.pres.clone(), action, diag: OnceLock::new() }
    }
}

fn is_rel(x: &[BigInt], rel_hnf: &IntMatrix) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    rel_hnf.rows() > 0 && solve_in_basis(x, rel_hnf).is_some()
}

pub(crate) fn cyclic_pres(m: u64) -> Presentation {
    if m == 0 {
        Presentation::free(1)
    } else {
        Presentation::new(1, IntMatrix::from_rows(&[[m as i64]])).expect("one generator")
    }
}

/// A module rewritten as `⊕ ℤ/dᵢ` (`dᵢ = 0` for a free factor), with
/// matrices of the action in these coordinates.
#[derive(Clone, Debug)]
pub struct DiagonalForm {
    pub moduli: Vec<BigInt>,
    pub action: Vec<IntMatrix>,
    pub sq: Subquotient,
}

impl DiagonalForm {
    fn of(m: &GammaModule) -> DiagonalForm {
        let k = m.gens();
        let rel = if m.pres.relations.rows() == 0 { IntMatrix::empty(k) } else { m.pres.relations.clone() };
        let sq = Subquotient::quotient(k, &rel).expect("presentation");
        let t = sq.ngens();
        let moduli: Vec<BigInt> = (0..t).map(|j| sq.cyclic_order(j).clone()).collect();
        let gens: Vec<Vec<BigInt>> = (0..t).map(|j| sq.generator(j)).collect();
        let action = m
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<BigInt>> = gens.iter().map(|v| sq.coords(&a.apply(v)).expect("in ambient")).collect();
                let mut out = IntMatrix::zeros(t, t);
                for (j, c) in cols.iter().enumerate() {
                    for i in 0..t {
                        out[(i, j)] = c[i].clone();
                    }
                }
                out
            })
            .collect();
        DiagonalForm { moduli, action, sq }
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn to_diag(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.sq.coords(x).expect("module element")
    }

    pub fn from_diag(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.sq.element(c)
    }

    pub fn reduce(&self, c: &mut [BigInt]) {
        for (x, d) in c.iter_mut().zip(&self.moduli) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }

    pub fn act(&self, g: usize, c: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.action[g].apply(c);
        self.reduce(&mut y);
        y
    }
}

/// A `Γ`-equivariant homomorphism; `matrix` maps source generators to
/// target generators (columns are images).
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GammaModule,
    pub target: GammaModule,
    pub matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(source: GammaModule, target: GammaModule, matrix: IntMatrix) -> Result<Self> {
        if source.group != target.group {
            return Err(Error::InvalidModule("modules over different groups".into()));
        }
        AbHom::new(source.pres.clone(), target.pres.clone(), matrix.clone())?;
        for g in source.group.elements() {
            let lhs = matrix.mul(source.action(g))?;
            let rhs = target.action(g).mul(&matrix)?;
            let d = lhs.sub(&rhs)?;
            if (0..d.cols()).any(|j| !target.is_zero(&d.col_vec(j))) {
                return Err(Error::NotEquivariant(g));
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(x)
    }

    pub fn as_hom(&self) -> AbHom {
        AbHom { source: self.source.pres.clone(), target: self.target.pres.clone(), matrix: self.matrix.clone() }
    }

    pub fn compose(&self, after: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix)?)
    }
}

/// `0 → A → B → C → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub inc: ModuleMap,
    pub proj: ModuleMap,
}

impl ShortExactSeq {
    pub fn new(inc: ModuleMap, proj: ModuleMap) -> Result<Self> {
        if inc.target != proj.source {
            return Err(Error::NotExact("middle modules differ".into()));
        }
        let b = &inc.target;
        let kb = b.gens();
        let rel_b = relations_or_empty(b);
        let rel_c = relations_or_empty(&proj.target);
        // injectivity: preimage of B's relations under inc is A's relations
        let pre_a = preimage(&inc.matrix.transpose(), &rel_b)?;
        let kernel_inc = Subquotient::new(inc.source.gens(), &pre_a, &relations_or_empty(&inc.source))?;
        if !kernel_inc.group().is_trivial() {
            return Err(Error::NotExact(format!("inclusion has kernel {}", kernel_inc.group())));
        }
        let coker = Subquotient::quotient(proj.target.gens(), &rel_c.vstack(&proj.matrix.transpose())?)?;
        if !coker.group().is_trivial() {
            return Err(Error::NotExact(format!("projection has cokernel {}", coker.group())));
        }
        let comp = proj.matrix.mul(&inc.matrix)?;
        if (0..comp.cols()).any(|j| !proj.target.is_zero(&comp.col_vec(j))) {
            return Err(Error::NotExact("projection ∘ inclusion ≠ 0".into()));
        }
        let ker_p = preimage(&proj.matrix.transpose(), &rel_c)?;
        let image = inc.matrix.transpose().vstack(&rel_b)?;
        let homology = Subquotient::new(kb, &ker_p, &image)?;
        if !homology.group().is_trivial() {
            return Err(Error::NotExact(format!("ker/im = {}", homology.group())));
        }
        Ok(ShortExactSeq { inc, proj })
    }
}

pub(crate) fn relations_or_empty(m: &GammaModule) -> IntMatrix {
    let r = &m.presentation().relations;
    if r.rows() == 0 { IntMatrix::empty(m.gens()) } else { r.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_module() {
        let g = FiniteGroup::cyclic(2);
        let m = GammaModule::cyclic_character(g.clone(), 0, &[1, -1]).unwrap();
        assert!(m.is_free());
        assert!(GammaModule::cyclic_character(g, 0, &[1, 2]).is_err());
    }

    #[test]
    fn action_mod_relations() {
        // ℤ/4 with generator acting by 5 ≡ 1
        let g = FiniteGroup::cyclic(2);
        let m = GammaModule::cyclic_character(g, 4, &[1, 5]).unwrap();
        assert_eq!(m.underlying(), FinAbGroup::cyclic(4));
        assert_eq!(m.first_nontrivial(&[0, 1]), None);
    }

    #[test]
    fn generators_extend() {
        let g = FiniteGroup::cyclic(4);
        let s = IntMatrix::from_rows(&[[0, -1], [1, 0]]);
        let m = GammaModule::from_generators(g, Presentation::free(2), &[(1, s.clone())]).unwrap();
        assert_eq!(m.action(2), &s.mul(&s).unwrap());
    }

    #[test]
    fn non_equivariant_map() {
        let g = FiniteGroup::cyclic(2);
        let sign = GammaModule::cyclic_character(g.clone(), 0, &[1, -1]).unwrap();
        let triv = GammaModule::trivial(g, Presentation::free(1));
        assert!(matches!(ModuleMap::new(sign, triv, IntMatrix::from_rows(&[[1]])), Err(Error::NotEquivariant(1))));
    }

    #[test]
    fn exact_sequences() {
        let g = FiniteGroup::cyclic(2);
        let z = GammaModule::trivial(g.clone(), Presentation::free(1));
        let z2 = GammaModule::trivial(g.clone(), cyclic_pres(2));
        let inc = ModuleMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        let proj = ModuleMap::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[[1]])).unwrap();
        assert!(ShortExactSeq::new(inc, proj).is_ok());
        let inc3 = ModuleMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[4]])).unwrap();
        let proj = ModuleMap::new(z.clone(), z2, IntMatrix::from_rows(&[[1]])).unwrap();
        assert!(matches!(ShortExactSeq::new(inc3, proj), Err(Error::NotExact(_))));
    }
}
