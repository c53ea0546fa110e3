use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmodule::GammaModule;

/// A 1-cochain `Γ → M` as a table: `values[g]` is `z(g)` in the module's
/// generator coordinates. Tables over a subgroup are indexed by position
/// in the subgroup's sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle1 {
    pub values: Vec<Vec<BigInt>>,
}

impl Cocycle1 {
    /// Checks `z(gh) = z(g) + g·z(h)` for every pair.
    pub fn new(m: &GammaModule, values: Vec<Vec<BigInt>>) -> Result<Self> {
        check_cocycle(m, &values)?;
        Ok(Cocycle1 { values })
    }

    pub fn zero(m: &GammaModule) -> Self {
        Cocycle1 { values: vec![m.zero(); m.group().order()] }
    }

    /// `g ↦ g·x − x`.
    pub fn coboundary(m: &GammaModule, x: &[BigInt]) -> Self {
        let values = m
            .group()
            .elements()
            .map(|g| m.act(g, x).iter().zip(x).map(|(a, b)| a - b).collect())
            .collect();
        Cocycle1 { values }
    }

    pub fn add(&self, other: &Cocycle1) -> Cocycle1 {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Cocycle1 { values }
    }

    pub fn scale(&self, c: &BigInt) -> Cocycle1 {
        Cocycle1 { values: self.values.iter().map(|v| v.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn neg(&self) -> Cocycle1 {
        self.scale(&BigInt::from(-1))
    }

    /// Values reduced to canonical representatives of the module.
    pub fn normalized(&self, m: &GammaModule) -> Cocycle1 {
        let d = m.diagonal();
        Cocycle1 { values: self.values.iter().map(|v| d.from_diag(&d.to_diag(v))).collect() }
    }

    pub fn equals(&self, other: &Cocycle1, m: &GammaModule) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| m.elem_eq(a, b))
    }

    /// The table as plain integers, for reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.values.iter().map(|v| v.iter().map(BigInt::to_string).collect()).collect()
    }
}

fn check_shape(m: &GammaModule, values: &[Vec<BigInt>]) -> Result<()> {
    if values.len() != m.group().order() {
        return Err(Error::Dimension(format!("cochain has {} values for {} elements", values.len(), m.group().order())));
    }
    if let Some(v) = values.iter().find(|v| v.len() != m.gens()) {
        return Err(Error::Dimension(format!("cochain value of length {} for {} generators", v.len(), m.gens())));
    }
    Ok(())
}

pub(crate) fn check_cocycle(m: &GammaModule, values: &[Vec<BigInt>]) -> Result<()> {
    check_shape(m, values)?;
    match cocycle_failure(m, values) {
        None => Ok(()),
        Some((g, h)) => Err(Error::NotACocycle(g, h)),
    }
}

/// First pair `(g, h)` violating the cocycle identity, if any.
pub fn cocycle_failure(m: &GammaModule, values: &[Vec<BigInt>]) -> Option<(usize, usize)> {
    let g = m.group();
    for a in g.elements() {
        for b in g.elements() {
            let gz = m.act(a, &values[b]);
            let diff: Vec<BigInt> =
                values[g.mul(a, b)].iter().zip(&values[a]).zip(&gz).map(|((ab, x), y)| ab - x - y).collect();
            if diff.iter().any(|x| !x.is_zero()) && !m.is_zero(&diff) {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::big;
    use crate::galois::FiniteGroup;

    #[test]
    fn homs_are_cocycles() {
        let g = FiniteGroup::cyclic(4);
        let m = crate::gmodule::trivial_cyclic(&g, 2);
        let chi: Vec<Vec<BigInt>> = (0..4).map(|k| vec![big(k % 2)]).collect();
        assert!(Cocycle1::new(&m, chi).is_ok());
        let bad: Vec<Vec<BigInt>> = vec![vec![big(0)], vec![big(1)], vec![big(1)], vec![big(0)]];
        assert!(matches!(Cocycle1::new(&m, bad), Err(Error::NotACocycle(..))));
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let g = FiniteGroup::cyclic(3);
        let m = crate::gmodule::permutation_module(&g, &crate::galois::Subgroup::trivial(&g)).unwrap();
        let b = Cocycle1::coboundary(&m, &[big(1), big(-2), big(5)]);
        assert!(cocycle_failure(&m, &b.values).is_none());
    }
}
