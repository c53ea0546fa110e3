use num_bigint::BigInt;
use num_traits::Zero;

use super::group::FinAbGroup;
use super::lattice::{in_rowspace, preimage, Subquotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `ℤⁿ / rowspace(relations)`: generators plus one relation vector per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() > 0 && relations.cols() != gens {
            return Err(Error::Dimension(format!(
                "relations have {} columns for {gens} generators",
                relations.cols()
            )));
        }
        let relations = if relations.rows() == 0 { IntMatrix::empty(gens) } else { relations };
        Ok(Presentation { gens, relations })
    }

    pub fn free(gens: usize) -> Self {
        Presentation { gens, relations: IntMatrix::empty(gens) }
    }

    /// Diagonal presentation of a group in canonical form.
    pub fn of_group(g: &FinAbGroup) -> Self {
        let inv = g.invariants();
        let n = inv.len();
        let mut rel = IntMatrix::empty(n);
        for (i, d) in inv.iter().enumerate() {
            if !d.is_zero() {
                let mut r = vec![BigInt::zero(); n];
                r[i] = d.clone();
                rel.push_row(r);
            }
        }
        Presentation { gens: n, relations: rel }
    }

    pub fn group(&self) -> Result<FinAbGroup> {
        cokernel(&self.relations_or_empty())
    }

    fn relations_or_empty(&self) -> IntMatrix {
        if self.relations.rows() == 0 { IntMatrix::empty(self.gens) } else { self.relations.clone() }
    }

    pub fn subquotient(&self) -> Result<Subquotient> {
        Subquotient::quotient(self.gens, &self.relations_or_empty())
    }

    /// Whether the vector represents zero.
    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        in_rowspace(x, &self.relations)
    }
}

/// A homomorphism of presented groups. Column `j` of `matrix` is the image
/// of source generator `j`, so `matrix` is `target.gens × source.gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: Presentation,
    pub target: Presentation,
    pub matrix: IntMatrix,
}

impl AbHom {
    /// Checks well-definedness: every source relation maps into the target relations.
    pub fn new(source: Presentation, target: Presentation, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens,
                source.gens
            )));
        }
        for i in 0..source.relations.rows() {
            let img = matrix.apply(source.relations.row(i));
            if !target.is_zero(&img) {
                return Err(Error::IllDefinedHom { relation: i });
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(x)
    }
}

/// Kernel, image and cokernel of a homomorphism, with the subquotients that
/// realize them (kernel generators live in the source's generator coordinates).
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: FinAbGroup,
    pub image: FinAbGroup,
    pub cokernel: FinAbGroup,
    pub kernel_sq: Subquotient,
    pub cokernel_sq: Subquotient,
}

/// `ℤ^cols / rowspace(a)`.
pub fn cokernel(a: &IntMatrix) -> Result<FinAbGroup> {
    Ok(Subquotient::quotient(a.cols(), a)?.group().clone())
}

pub fn hom_kernel_image(f: &AbHom) -> Result<KernelImage> {
    let n = f.source.gens;
    let m_rows = f.matrix.transpose();
    // x ↦ x·fᵀ lands in the target relations exactly on the preimage lattice
    let pre = preimage(&m_rows, &f.target.relations)?;
    let kernel_sq = Subquotient::new(n, &pre, &f.source.relations)?;
    let image = Subquotient::new(n, &IntMatrix::identity(n), &pre)?.group().clone();
    let coker_rel = f.target.relations.vstack(&m_rows)?;
    let cokernel_sq = Subquotient::quotient(f.target.gens, &coker_rel)?;
    Ok(KernelImage {
        kernel: kernel_sq.group().clone(),
        image,
        cokernel: cokernel_sq.group().clone(),
        kernel_sq,
        cokernel_sq,
    })
}

/// Character group `Hom(G, ℂ×)`.
///
/// Finite cyclic factors are self-dual. A free factor `ℤ` dualizes to `ℂ×`,
/// which is not finitely generated; it is recorded symbolically as a free
/// factor of the result, so free rank `r` stands for `(ℂ×)ʳ`.
pub fn dual_group(g: &FinAbGroup) -> FinAbGroup {
    g.clone()
}

/// `L ⊗ ℤ/m` for a presented group `L`.
pub fn tensor_mod_m(l: &Presentation, m: i64) -> Result<FinAbGroup> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let scaled = IntMatrix::scalar(l.gens, &BigInt::from(m));
    cokernel(&l.relations.vstack(&scaled)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::big;

    fn cyc(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_rows(&[[2]])).unwrap(), cyc(2));
        // qσ − 1 with q = 3, σ = −1
        assert_eq!(cokernel(&IntMatrix::from_rows(&[[-4]])).unwrap(), cyc(4));
        assert_eq!(cokernel(&IntMatrix::empty(3)).unwrap(), FinAbGroup::free(3));
    }

    #[test]
    fn times_two_on_z() {
        let f = AbHom::new(Presentation::free(1), Presentation::free(1), IntMatrix::from_rows(&[[2]])).unwrap();
        let ki = hom_kernel_image(&f).unwrap();
        assert_eq!(ki.kernel, FinAbGroup::trivial());
        assert_eq!(ki.image, FinAbGroup::free(1));
        assert_eq!(ki.cokernel, cyc(2));
    }

    #[test]
    fn zero_map_on_z6() {
        let z6 = Presentation::of_group(&cyc(6));
        let f = AbHom::new(z6.clone(), z6, IntMatrix::zeros(1, 1)).unwrap();
        let ki = hom_kernel_image(&f).unwrap();
        assert_eq!(ki.kernel, cyc(6));
        assert_eq!(ki.image, FinAbGroup::trivial());
        assert_eq!(ki.cokernel, cyc(6));
    }

    #[test]
    fn all_ones_on_z2() {
        let f = AbHom::new(
            Presentation::free(2),
            Presentation::free(2),
            IntMatrix::from_rows(&[[1, 1], [1, 1]]),
        )
        .unwrap();
        let ki = hom_kernel_image(&f).unwrap();
        assert_eq!(ki.kernel, FinAbGroup::free(1));
        assert_eq!(ki.image, FinAbGroup::free(1));
        assert_eq!(ki.cokernel, FinAbGroup::free(1));
    }

    #[test]
    fn ill_defined_rejected() {
        // ℤ/2 → ℤ/3 sending 1 ↦ 1 is not a homomorphism
        let r = AbHom::new(
            Presentation::of_group(&cyc(2)),
            Presentation::of_group(&cyc(3)),
            IntMatrix::from_rows(&[[1]]),
        );
        assert!(matches!(r, Err(Error::IllDefinedHom { relation: 0 })));
    }

    #[test]
    fn finite_order_identity() {
        // ℤ/4 ⊕ ℤ/6 → ℤ/12 sending generators to 3 and 2
        let src = Presentation::new(2, IntMatrix::from_rows(&[[4, 0], [0, 6]])).unwrap();
        let tgt = Presentation::of_group(&cyc(12));
        let f = AbHom::new(src.clone(), tgt, IntMatrix::from_rows(&[[3, 2]])).unwrap();
        let ki = hom_kernel_image(&f).unwrap();
        let src_order = src.group().unwrap().order().unwrap();
        assert_eq!(src_order, ki.kernel.order().unwrap() * ki.image.order().unwrap());
    }

    #[test]
    fn duals_and_tensors() {
        assert_eq!(dual_group(&cyc(6)), cyc(6));
        assert_eq!(dual_group(&FinAbGroup::free(1)), FinAbGroup::free(1));
        let g = FinAbGroup::new(2, vec![big(4)]).unwrap();
        assert_eq!(dual_group(&g), g);
        assert_eq!(
            tensor_mod_m(&Presentation::free(2), 3).unwrap(),
            FinAbGroup::from_invariants([big(3), big(3)]).unwrap()
        );
        assert_eq!(tensor_mod_m(&Presentation::of_group(&cyc(2)), 4).unwrap(), cyc(2));
        assert_eq!(tensor_mod_m(&Presentation::free(0), 5).unwrap(), FinAbGroup::trivial());
        assert!(matches!(tensor_mod_m(&Presentation::free(1), 1), Err(Error::BadModulus(1))));
    }
}
