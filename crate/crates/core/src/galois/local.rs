use serde::Serialize;

use super::group::{quotient_group, FiniteGroup, Subgroup};
use crate::arith::{gcd, is_power_of, is_prime, prime_power};
use crate::error::{Error, Result};

/// A finite quotient `Γ` of the Weil group of a local field together with the
/// images of wild inertia `P ⊴ I ⊴ Γ`, a Frobenius element, the residue
/// characteristic `p` and the residue field size `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGaloisDatum {
    pub gamma: FiniteGroup,
    pub inertia: Subgroup,
    pub wild: Subgroup,
    pub frob: usize,
    pub p: u64,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl LocalGaloisDatum {
    /// Builds and validates; the error names the first violated condition.
    pub fn new(gamma: FiniteGroup, inertia: Subgroup, wild: Subgroup, frob: usize, p: u64, q: u64) -> Result<Self> {
        let d = LocalGaloisDatum { gamma, inertia, wild, frob, p, q };
        let report = validate_local_datum(&d);
        match report.first_failure() {
            None => Ok(d),
            Some(c) => Err(Error::LocalDatum { name: c.name, detail: c.detail.clone() }),
        }
    }

    /// `Γ = ⟨frob⟩ ≅ ℤ/n` with trivial inertia.
    pub fn unramified(n: usize, p: u64, q: u64) -> Result<Self> {
        let g = FiniteGroup::cyclic(n);
        let t = Subgroup::trivial(&g);
        Self::new(g, t.clone(), t, if n > 1 { 1 } else { 0 }, p, q)
    }

    pub fn is_unramified(&self) -> bool {
        self.inertia.order() == 1
    }

    pub fn is_tame(&self) -> bool {
        self.wild.order() == 1
    }

    /// Order of the tame inertia quotient `I/P`.
    pub fn tame_index(&self) -> usize {
        self.inertia.order() / self.wild.order()
    }

    /// `Γ/P` with its projection.
    pub fn mod_wild(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        quotient_group(&self.gamma, &self.wild)
    }

    /// `Γ/I` with its projection.
    pub fn mod_inertia(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        quotient_group(&self.gamma, &self.inertia)
    }
}

/// Checks every structural condition on a datum and reports each by name.
pub fn validate_local_datum(d: &LocalGaloisDatum) -> ValidationReport {
    let g = &d.gamma;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check { name, passed, detail: if passed { String::new() } else { detail } });
    };

    push("p-prime", is_prime(d.p), format!("p = {} is not prime", d.p));
    push("q-prime-power", prime_power(d.q).is_some(), format!("q = {} is not a prime power", d.q));

    let frob_ok = d.frob < g.order();
    push("frobenius-in-group", frob_ok, format!("frobenius {} is not an element", d.frob));

    let inertia_ok = d.inertia.check(g).is_ok();
    let wild_ok = d.wild.check(g).is_ok();
    push("inertia-subgroup", inertia_ok, "inertia is not a subgroup".into());
    push("wild-subgroup", wild_ok, "wild inertia is not a subgroup".into());
    if !(inertia_ok && wild_ok && frob_ok) {
        return ValidationReport { checks };
    }

    let nested = d.wild.is_subgroup_of(&d.inertia);
    push("wild-subgroup-of-inertia", nested, "wild inertia is not contained in inertia".into());
    let i_normal = d.inertia.is_normal_in(g);
    let p_normal = d.wild.is_normal_in(g);
    push("inertia-normal", i_normal, "inertia is not normal".into());
    push("wild-normal", p_normal, "wild inertia is not normal".into());
    push(
        "wild-inertia-order",
        is_power_of(d.wild.order() as u64, d.p),
        format!("|P| = {} is not a power of p = {}", d.wild.order(), d.p),
    );
    if !(nested && i_normal && p_normal) {
        return ValidationReport { checks };
    }
    let e = d.tame_index() as u64;
    push("tame-index-coprime", d.p >= 2 && gcd(e, d.p) == 1, format!("[I:P] = {e} is divisible by p = {}", d.p));

    let (gi, proj_i) = quotient_group(g, &d.inertia).expect("normal");
    push(
        "unramified-quotient-cyclic",
        gi.element_order(proj_i[d.frob]) == gi.order(),
        "Γ/I is not generated by the image of frobenius".into(),
    );

    let (gp, proj_p) = quotient_group(g, &d.wild).expect("normal");
    let tame = d.inertia.map_through(&proj_p);
    let tame_cyclic = tame.elements().iter().any(|&x| gp.element_order(x) == tame.order());
    push("tame-quotient-cyclic", tame_cyclic, "I/P is not cyclic".into());

    let f = proj_p[d.frob];
    let q_red = d.q % (gp.order() as u64).max(1);
    let bad = tame.elements().iter().copied().find(|&x| gp.conj(f, x) != gp.pow(x, q_red));
    push(
        "tame-frobenius-relation",
        bad.is_none(),
        bad.map(|x| format!("frob·x·frob⁻¹ ≠ x^q for x = {x} in Γ/P")).unwrap_or_default(),
    );
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unramified_quadratic() {
        let d = LocalGaloisDatum::unramified(2, 2, 3).unwrap();
        assert!(validate_local_datum(&d).passed());
    }

    #[test]
    fn tame_quadratic() {
        let g = FiniteGroup::cyclic(2);
        let d = LocalGaloisDatum::new(g.clone(), Subgroup::whole(&g), Subgroup::trivial(&g), 0, 3, 3);
        assert!(d.is_ok());
    }

    #[test]
    fn wild_order_violation_is_named() {
        let g = FiniteGroup::cyclic(2);
        let r = LocalGaloisDatum::new(g.clone(), Subgroup::whole(&g), Subgroup::whole(&g), 0, 3, 3);
        match r {
            Err(Error::LocalDatum { name, .. }) => assert_eq!(name, "wild-inertia-order"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn frobenius_relation_checked() {
        // ℤ/3 tame inertia with trivial frobenius conjugation needs q ≡ 1 mod 3
        let g = FiniteGroup::cyclic(3);
        let ok = LocalGaloisDatum::new(g.clone(), Subgroup::whole(&g), Subgroup::trivial(&g), 0, 7, 7);
        assert!(ok.is_ok());
        let bad = LocalGaloisDatum::new(g.clone(), Subgroup::whole(&g), Subgroup::trivial(&g), 0, 5, 5);
        assert!(matches!(bad, Err(Error::LocalDatum { name: "tame-frobenius-relation", .. })));
    }
}
