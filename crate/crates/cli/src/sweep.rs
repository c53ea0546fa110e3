//! Catalog-wide verification sweep.

use depthzero::abelian::FinAbGroup;
use depthzero::arith::prime_power;
use depthzero::cohomology::{h1, tate_h1_cyclic, verify_corestriction, verify_prop18_all_chains, DEFAULT_CLASS_CAP};
use depthzero::galois::{catalog, Subgroup};
use depthzero::gmodule::family::{cyclic_family, finite_order_matrices, general_family};
use depthzero::gmodule::{permutation_module, GammaModule};
use depthzero::langlands::archimedean::{random_datum, random_sample};
use depthzero::langlands::catalog::torus_catalog;
use depthzero::langlands::{archimedean_norm_check, ArchimedeanReport, TorusDatum};
use depthzero::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{arch_case, depth_zero_cases};
use crate::report::{Case, CaseVerdict, Report};

#[derive(Clone, Debug, Serialize)]
pub struct SweepOptions {
    pub max_order: usize,
    pub q: Vec<u64>,
    pub max_rank: usize,
    pub seed: u64,
    pub samples: usize,
    pub class_cap: usize,
    /// Largest finite module used in the corestriction and chain checks.
    pub max_module_order: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_order: 12,
            q: vec![2, 3, 4, 5, 7],
            max_rank: 3,
            seed: 0,
            samples: 1000,
            class_cap: DEFAULT_CLASS_CAP,
            max_module_order: 27,
        }
    }
}

/// Resource caps become skipped cases; other engine errors fail the case.
fn guarded(key: String, f: impl FnOnce(String) -> Result<Vec<Case>, Error>) -> Vec<Case> {
    match f(key.clone()) {
        Ok(c) => c,
        Err(e @ (Error::ResourceCap(_) | Error::OrderCap { .. })) => vec![Case::new(key, CaseVerdict::Skipped).detail(e.to_string())],
        Err(e) => vec![Case::new(key, CaseVerdict::Fail).detail(format!("engine error: {e}"))],
    }
}

fn small_finite(m: &GammaModule, bound: u64) -> bool {
    m.is_finite() && m.underlying().order().is_some_and(|n| n <= bound.into())
}

fn cyclic_closed_forms(o: &SweepOptions, out: &mut Vec<Case>) {
    for n in 2..=o.max_order.min(8) {
        for (i, (name, m)) in cyclic_family(n).into_iter().enumerate() {
            out.extend(guarded(format!("cyclic/C{n}/{i:03} {name}"), |key| {
                let engine = h1(&m)?.group;
                let closed = tate_h1_cyclic(&m, 1)?;
                Ok(vec![Case::compare(key, "cocycles vs ker N / im(σ − 1)", ("h1", &engine), ("closed_form", &closed))])
            }));
        }
    }
}

fn shapiro(o: &SweepOptions, out: &mut Vec<Case>) {
    for (name, g) in catalog::catalog(o.max_order) {
        out.extend(guarded(format!("shapiro/{name}"), |key| {
            let regular = permutation_module(&g, &Subgroup::trivial(&g))?;
            let h = h1(&regular)?.group;
            Ok(vec![Case::compare(key, "H¹(G, ℤ[G]) = 0", ("h1", &h), ("expected", &FinAbGroup::trivial()))])
        }));
    }
}

fn corestriction_and_chains(o: &SweepOptions, out: &mut Vec<Case>) {
    for (gname, g) in catalog::catalog(o.max_order) {
        let family: Vec<_> =
            general_family(&g).into_iter().filter(|(_, m)| small_finite(m, o.max_module_order)).collect();
        let subs = g.all_subgroups();
        for (i, (mname, m)) in family.iter().enumerate() {
            for (j, h) in subs.iter().enumerate() {
                out.extend(guarded(format!("cor/{gname}/{i:03} {mname}/H{j:02}"), |key| {
                    let r = verify_corestriction(m, h, o.class_cap)?;
                    Ok(vec![Case::from_counterexamples(key, r.classes, r.counterexamples)])
                }));
            }
            out.extend(guarded(format!("chains/{gname}/{i:03} {mname}"), |key| {
                let (chains, r) = verify_prop18_all_chains(m, o.class_cap)?;
                Ok(vec![Case::from_counterexamples(key, r.classes, r.counterexamples).detail(format!("{chains} chains"))])
            }));
        }
    }
}

fn unramified_tori(o: &SweepOptions, out: &mut Vec<Case>) {
    for r in 1..=o.max_rank {
        for (i, s) in finite_order_matrices(r).iter().enumerate() {
            for &q in &o.q {
                out.extend(guarded(format!("unramified/r{r}-{i}/q{q}"), |key| {
                    let p = prime_power(q).map(|(p, _)| p).ok_or(Error::NotPrime(q))?;
                    let t = TorusDatum::unramified(s, p, q)?;
                    if t.group().order() > o.max_order {
                        return Ok(Vec::new());
                    }
                    depth_zero_cases(&key, &t)
                }));
            }
        }
    }
}

fn catalog_tori(o: &SweepOptions, out: &mut Vec<Case>) {
    for (name, t) in torus_catalog() {
        if t.group().order() <= o.max_order {
            out.extend(guarded(format!("torus/{name}"), |key| depth_zero_cases(&key, &t)));
        }
    }
}

/// Real tori: `Γ = Gal(ℂ/ℝ)` of order 2.
fn archimedean(o: &SweepOptions, out: &mut Vec<Case>) {
    if o.max_order < 2 || o.samples == 0 || o.max_rank == 0 {
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut worst: Vec<Option<(ArchimedeanReport, _, _)>> = vec![None; o.max_rank];
    let mut counts = vec![0usize; o.max_rank];
    for i in 0..o.samples {
        let r = 1 + i % o.max_rank;
        let a = random_datum(&mut rng, r);
        let y = random_sample(&mut rng, r, 5.0);
        counts[r - 1] += 1;
        match archimedean_norm_check(&a, std::slice::from_ref(&y)) {
            Ok(rep) => {
                let slot = &mut worst[r - 1];
                if slot.as_ref().is_none_or(|(w, _, _)| rep.max_relative_deviation > w.max_relative_deviation) {
                    *slot = Some((rep, a.norm_side(&y), a.parameter_side(&y)));
                }
            }
            Err(e) => out.push(Case::new(format!("archimedean/r{r}/{i}"), CaseVerdict::Fail).detail(e.to_string())),
        }
    }
    for (k, w) in worst.into_iter().enumerate() {
        if let Some((mut rep, lhs, rhs)) = w {
            rep.samples = counts[k];
            out.push(arch_case(&format!("archimedean/r{}", k + 1), &rep, Some(lhs), Some(rhs)));
        }
    }
}

/// Runs every check over the catalog within the bounds. Cases are sorted by
/// key; an empty catalog is a vacuous pass.
pub fn sweep(o: &SweepOptions) -> Report {
    let mut cases = Vec::new();
    cyclic_closed_forms(o, &mut cases);
    shapiro(o, &mut cases);
    corestriction_and_chains(o, &mut cases);
    unramified_tori(o, &mut cases);
    catalog_tori(o, &mut cases);
    archimedean(o, &mut cases);
    cases.sort_by(|a, b| a.key.cmp(&b.key));
    Report::new("sweep", serde_json::to_value(o).expect("options serialize"), cases)
}
