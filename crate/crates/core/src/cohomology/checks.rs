//! Class-level verification of corestriction identities and of the
//! compatibility `cor_{K→E} ∘ avg = res_E ∘ cor_{K→G}`.

use num_bigint::BigInt;
use serde::Serialize;

use super::cochain::Cocycle1;
use super::h1::{h1, H1Result};
use super::maps::{averaging_map, class_map, conjugate, corestrict, normalize_columns, restrict, CorFormula};
use crate::abelian::lattice::in_rowspace;
use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::galois::Subgroup;
use crate::gmodule::{restrict_action, GammaModule};

/// Upper bound on the number of classes enumerated by the exhaustive checks.
pub const DEFAULT_CLASS_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub class: Vec<String>,
    pub cocycle: Vec<Vec<String>>,
    pub lhs: Vec<Vec<String>>,
    pub rhs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub classes: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn merge(&mut self, other: CheckReport) {
        self.classes += other.classes;
        self.counterexamples.extend(other.counterexamples);
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn same_class(h: &H1Result, a: &Cocycle1, b: &Cocycle1) -> Result<bool> {
    let ca = h.class_of(a)?;
    let cb = h.class_of(b)?;
    let d: Vec<BigInt> = ca.iter().zip(&cb).map(|(x, y)| x - y).collect();
    Ok(h.is_zero_class(&d))
}

fn all_classes(h: &H1Result, cap: usize) -> Result<Vec<Vec<BigInt>>> {
    h.enumerate(cap)
        .ok_or_else(|| Error::ResourceCap(format!("H¹ = {} is infinite or has more than {cap} classes", h.group)))
}

/// For every class `z ∈ H¹(H_K, M)`, compares `cor_{K→E}(avg(z))` with
/// `res_E(cor_{K→G}(z))` in `H¹(H_E, M)`.
pub fn verify_prop18(m: &GammaModule, h_e: &Subgroup, h_k: &Subgroup, cap: usize) -> Result<CheckReport> {
    let g = m.group();
    let whole = Subgroup::whole(g);
    if !h_k.is_subgroup_of(h_e) || !h_k.is_normal_in(g) {
        return Err(Error::Chain("need H_K normal in G and H_K ≤ H_E".into()));
    }
    h_e.check(g)?;
    let hk1 = h1(&restrict_action(m, h_k)?.0)?;
    let he1 = h1(&restrict_action(m, h_e)?.0)?;
    let mut report = CheckReport { classes: 0, counterexamples: Vec::new() };
    for c in all_classes(&hk1, cap)? {
        let z = hk1.cocycle_of(&c);
        let avg = averaging_map(m, h_e, h_k, &z)?;
        let lhs = corestrict(m, h_e, h_k, &avg, CorFormula::DoubleCoset)?;
        let rhs = restrict(m, &whole, h_e, &corestrict(m, &whole, h_k, &z, CorFormula::DoubleCoset)?)?;
        report.classes += 1;
        if !same_class(&he1, &lhs, &rhs)? {
            report.counterexamples.push(Counterexample {
                check: "cor(avg(z)) = res(cor(z))".into(),
                class: strings(&c),
                cocycle: z.to_strings(),
                lhs: lhs.to_strings(),
                rhs: rhs.to_strings(),
            });
        }
    }
    Ok(report)
}

/// Whether the averaging map is compatible with passing to
/// `H_E/H_K`-coinvariants and factors through `G/H_K`-coinvariants:
/// `avg(γ·z) − avg(z)` lies in the span of `{h·z − z : h ∈ H_E}` for all
/// `γ ∈ G` and generators `z`.
pub fn averaging_factors_through_coinvariants(m: &GammaModule, h_e: &Subgroup, h_k: &Subgroup) -> Result<bool> {
    let g = m.group();
    let hk1 = h1(&restrict_action(m, h_k)?.0)?;
    let reps = hk1.representatives();
    let class = |z: &Cocycle1| -> Result<Vec<BigInt>> { hk1.class_of(z) };
    let diff = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let mut span = hk1.relation_matrix();
    if span.rows() == 0 {
        span = IntMatrix::empty(hk1.ngens());
    }
    for z in &reps {
        let cz = class(z)?;
        for &h in h_e.elements() {
            span.push_row(diff(&class(&conjugate(m, h_k, h, z)?)?, &cz));
        }
    }
    for z in &reps {
        let base = class(&averaging_map(m, h_e, h_k, z)?)?;
        for x in g.elements() {
            let moved = class(&averaging_map(m, h_e, h_k, &conjugate(m, h_k, x, z)?)?)?;
            if !in_rowspace(&diff(&moved, &base), &span) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Corestriction identities for `H ≤ G` on every class:
/// `cor ∘ res = [G:H]` on `H¹(G)`; when `H ⊴ G`, the two corestriction
/// expressions agree and `res ∘ cor = Σ_{γ ∈ G/H} γ·(−)` on `H¹(H)`.
pub fn verify_corestriction(m: &GammaModule, h: &Subgroup, cap: usize) -> Result<CheckReport> {
    let g = m.group();
    let whole = Subgroup::whole(g);
    h.check(g)?;
    let hg = h1(m)?;
    let hh = h1(&restrict_action(m, h)?.0)?;
    let index = BigInt::from(h.index_in(g));
    let mut report = CheckReport { classes: 0, counterexamples: Vec::new() };

    for c in all_classes(&hg, cap)? {
        let z = hg.cocycle_of(&c);
        let back = corestrict(m, &whole, h, &restrict(m, &whole, h, &z)?, CorFormula::DoubleCoset)?;
        let want = z.scale(&index);
        report.classes += 1;
        if !same_class(&hg, &back, &want)? {
            report.counterexamples.push(Counterexample {
                check: "cor(res(z)) = [G:H]·z".into(),
                class: strings(&c),
                cocycle: z.to_strings(),
                lhs: back.to_strings(),
                rhs: want.to_strings(),
            });
        }
    }

    if h.is_normal_in(g) {
        let reps = crate::galois::coset_reps(g, h)?;
        for c in all_classes(&hh, cap)? {
            let z = hh.cocycle_of(&c);
            let a = corestrict(m, &whole, h, &z, CorFormula::DoubleCoset)?;
            let b = corestrict(m, &whole, h, &z, CorFormula::Normal)?;
            report.classes += 1;
            if !same_class(&hg, &a, &b)? {
                report.counterexamples.push(Counterexample {
                    check: "double-coset and normal corestriction agree".into(),
                    class: strings(&c),
                    cocycle: z.to_strings(),
                    lhs: a.to_strings(),
                    rhs: b.to_strings(),
                });
            }
            let rc = restrict(m, &whole, h, &a)?;
            let mut sum = Cocycle1 { values: vec![m.zero(); h.order()] };
            for &gamma in &reps {
                sum = sum.add(&conjugate(m, h, gamma, &z)?);
            }
            if !same_class(&hh, &rc, &sum)? {
                report.counterexamples.push(Counterexample {
                    check: "res(cor(z)) = Σ γ·z".into(),
                    class: strings(&c),
                    cocycle: z.to_strings(),
                    lhs: rc.to_strings(),
                    rhs: sum.to_strings(),
                });
            }
        }
    }
    Ok(report)
}

/// Runs [`verify_prop18`] over every chain `H_K ⊴ G`, `H_K ≤ H_E ≤ G`.
pub fn verify_prop18_all_chains(m: &GammaModule, cap: usize) -> Result<(usize, CheckReport)> {
    let g = m.group();
    let subs = g.all_subgroups();
    let mut total = CheckReport { classes: 0, counterexamples: Vec::new() };
    let mut chains = 0;
    for h_k in subs.iter().filter(|s| s.is_normal_in(g)) {
        for h_e in subs.iter().filter(|s| h_k.is_subgroup_of(s)) {
            chains += 1;
            total.merge(verify_prop18(m, h_e, h_k, cap)?);
        }
    }
    Ok((chains, total))
}

/// The matrix of `cor: H¹(H) → H¹(G)` in generator coordinates.
pub fn corestriction_matrix(m: &GammaModule, h: &Subgroup, formula: CorFormula) -> Result<(H1Result, H1Result, IntMatrix)> {
    let whole = Subgroup::whole(m.group());
    let hh = h1(&restrict_action(m, h)?.0)?;
    let hg = h1(m)?;
    let mat = class_map(&hh, &hg, |z| corestrict(m, &whole, h, z, formula))?;
    let mat = normalize_columns(&hg, &mat);
    Ok((hh, hg, mat))
}
