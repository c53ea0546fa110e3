use depthzero::abelian::dual_group;
use depthzero::arith::prime_power;
use depthzero::cohomology::{
    h1, h1_torus_coeffs, tate_h1_cyclic, verify_corestriction, verify_prop18, verify_prop18_all_chains, Counterexample,
    H2Options, DEFAULT_CLASS_CAP,
};
use depthzero::galois::{LocalGaloisDatum, Subgroup};
use depthzero::gmodule::GammaModule;
use depthzero::langlands::archimedean::{random_sample, ArchimedeanReport};
use depthzero::langlands::{
    archimedean_norm_check, center_dual, depth_zero_center_pieces, verify_depth_zero_match, weakly_unramified_ways,
    TorusDatum, Verdict as PieceVerdict, ARCH_TOL,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::input::{Coefficients, InputDocument};
use crate::report::{Case, CaseVerdict, Report};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    H1,
    CorCheck,
    Prop18Check,
    DepthZero,
    Wur,
    Center,
    ArchCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::H1 => "h1",
            Command::CorCheck => "cor-check",
            Command::Prop18Check => "prop18-check",
            Command::DepthZero => "depth-zero",
            Command::Wur => "wur",
            Command::Center => "center",
            Command::ArchCheck => "arch-check",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub max_order: Option<usize>,
    /// Replaces the residue field size of the local datum, one case per entry.
    pub q: Option<Vec<u64>>,
}

fn engine(context: &str) -> impl Fn(depthzero::Error) -> CliError + '_ {
    move |e| CliError::Engine { context: context.to_string(), source: e }
}

fn elements(s: &Subgroup) -> String {
    format!("{:?}", s.elements())
}

fn module(doc: &InputDocument) -> Result<&GammaModule, CliError> {
    doc.module.as_ref().ok_or(CliError::Missing("module"))
}

fn local(doc: &InputDocument) -> Result<&LocalGaloisDatum, CliError> {
    doc.local_datum.as_ref().ok_or(CliError::Missing("local_datum"))
}

/// The local datum once per requested `q`, or as given.
fn fields(doc: &InputDocument, opts: &RunOptions) -> Result<Vec<(String, LocalGaloisDatum)>, CliError> {
    let d = local(doc)?;
    let Some(qs) = &opts.q else {
        return Ok(vec![(format!("q={}", d.q), d.clone())]);
    };
    qs.iter()
        .map(|&q| {
            let p = prime_power(q).map(|(p, _)| p).ok_or_else(|| CliError::Options(format!("q = {q} is not a prime power")))?;
            let f = LocalGaloisDatum::new(d.gamma.clone(), d.inertia.clone(), d.wild.clone(), d.frob, p, q)
                .map_err(engine("local datum with --q"))?;
            Ok((format!("q={q}"), f))
        })
        .collect()
}

fn torus(doc: &InputDocument, field: LocalGaloisDatum) -> Result<TorusDatum, CliError> {
    TorusDatum::new(field, module(doc)?.clone()).map_err(engine("torus"))
}

fn run_h1(doc: &InputDocument) -> Result<Vec<Case>, CliError> {
    let m = module(doc)?;
    let g = m.group();
    if doc.task.coefficients == Coefficients::Torus {
        let t = h1_torus_coeffs(m, H2Options::default()).map_err(engine("H¹ with torus coefficients"))?;
        return Ok(vec![Case::new("H1(G, T∨)", CaseVerdict::Pass).group("h1", t.group)]);
    }
    let h = h1(m).map_err(engine("H¹"))?.group;
    match g.cyclic_generator() {
        Some(gen) if g.order() > 1 => {
            let tate = tate_h1_cyclic(m, gen).map_err(engine("cyclic closed form"))?;
            Ok(vec![Case::compare("H1(G, M)", "cocycles vs ker N / im(σ − 1)", ("h1", &h), ("closed_form", &tate))])
        }
        _ => Ok(vec![Case::new("H1(G, M)", CaseVerdict::Pass).group("h1", h)]),
    }
}

fn run_cor(doc: &InputDocument, cap: usize) -> Result<Vec<Case>, CliError> {
    let m = module(doc)?;
    let subs = match &doc.task.h {
        Some(h) => vec![h.clone()],
        None => m.group().all_subgroups(),
    };
    subs.iter()
        .map(|h| {
            let r = verify_corestriction(m, h, cap).map_err(engine("corestriction"))?;
            Ok(Case::from_counterexamples(format!("H={}", elements(h)), r.classes, r.counterexamples))
        })
        .collect()
}

fn run_prop18(doc: &InputDocument, cap: usize) -> Result<Vec<Case>, CliError> {
    let m = module(doc)?;
    match (&doc.task.h_e, &doc.task.h_k) {
        (Some(e), Some(k)) => {
            let r = verify_prop18(m, e, k, cap).map_err(engine("chain"))?;
            let key = format!("H_E={} H_K={}", elements(e), elements(k));
            Ok(vec![Case::from_counterexamples(key, r.classes, r.counterexamples)])
        }
        (None, None) => {
            let (chains, r) = verify_prop18_all_chains(m, cap).map_err(engine("all chains"))?;
            let c = Case::from_counterexamples("all chains", r.classes, r.counterexamples);
            Ok(vec![c.detail(format!("{chains} chains"))])
        }
        _ => Err(CliError::Missing("task.h_e and task.h_k (both or neither)")),
    }
}

/// One case per graded piece.
pub fn depth_zero_cases(key: &str, t: &TorusDatum) -> Result<Vec<Case>, depthzero::Error> {
    let r = verify_depth_zero_match(t)?;
    Ok(r.pieces
        .into_iter()
        .map(|p| {
            let k = format!("{key}/{}", p.name);
            let mut c = match (&p.character_side, &p.parameter_side) {
                (Some(a), Some(b)) => Case::compare(k, p.name, ("characters", a), ("parameters", b)),
                _ => {
                    let mut c = Case::new(k, CaseVerdict::Unverified);
                    if let Some(a) = p.character_side {
                        c = c.group("characters", a);
                    }
                    if let Some(b) = p.parameter_side {
                        c = c.group("parameters", b);
                    }
                    c
                }
            };
            debug_assert_eq!(c.verdict == CaseVerdict::Fail, p.verdict == PieceVerdict::Fail);
            if let Some(n) = p.note {
                c = c.detail(n);
            }
            c
        })
        .collect())
}

pub fn wur_case(key: &str, t: &TorusDatum) -> Result<Case, depthzero::Error> {
    let (a, b) = weakly_unramified_ways(t)?;
    Ok(Case::compare(key, "weakly unramified characters", ("duality", &a), ("frobenius_coinvariants", &b)))
}

fn run_center(doc: &InputDocument) -> Result<Vec<Case>, CliError> {
    let r = doc.root_datum.as_ref().ok_or(CliError::Missing("root_datum"))?;
    let pi1 = center_dual(r).map_err(engine("center"))?.underlying();
    let mut cases =
        vec![Case::new("center", CaseVerdict::Pass).group("pi1", pi1.clone()).group("center_dual", dual_group(&pi1))];
    if let Some(d) = &doc.local_datum {
        let p = depth_zero_center_pieces(r, d).map_err(engine("depth-zero central classes"))?;
        cases.push(
            Case::new("depth-zero-classes", CaseVerdict::Pass)
                .group("unramified", p.unramified)
                .group("inertial", p.inertial)
                .group("total", p.total),
        );
    }
    Ok(cases)
}

pub fn arch_case(key: &str, report: &ArchimedeanReport, lhs: Option<Complex64>, rhs: Option<Complex64>) -> Case {
    let detail = format!("{} samples, max relative deviation {:.3e}", report.samples, report.max_relative_deviation);
    if report.passed(ARCH_TOL) {
        return Case::new(key, CaseVerdict::Pass).detail(detail);
    }
    let show = |z: Option<Complex64>| vec![vec![z.map_or_else(String::new, |z| z.to_string())]];
    let cex = Counterexample {
        check: "χ(N(exp y)) = exp(⟨μ, y⟩ + ⟨ν, ȳ⟩)".into(),
        class: report.worst_sample.iter().map(|i| format!("sample {i}")).collect(),
        cocycle: Vec::new(),
        lhs: show(lhs),
        rhs: show(rhs),
    };
    Case { verdict: CaseVerdict::Fail, counterexamples: vec![cex], ..Case::new(key, CaseVerdict::Fail).detail(detail) }
}

fn run_arch(doc: &InputDocument, opts: &RunOptions) -> Result<Vec<Case>, CliError> {
    let a = doc.archimedean.as_ref().ok_or(CliError::Missing("archimedean"))?;
    let samples = match &a.samples {
        Some(s) => s.clone(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let radius = doc.task.radius.unwrap_or(5.0);
            (0..doc.task.samples.unwrap_or(1000)).map(|_| random_sample(&mut rng, a.datum.rank(), radius)).collect()
        }
    };
    let r = archimedean_norm_check(&a.datum, &samples).map_err(engine("archimedean"))?;
    let worst = r.worst_sample.map(|i| &samples[i]);
    Ok(vec![arch_case(
        "norm identity",
        &r,
        worst.map(|y| a.datum.norm_side(y)),
        worst.map(|y| a.datum.parameter_side(y)),
    )])
}

pub fn run_command(cmd: Command, doc: &InputDocument, opts: &RunOptions) -> Result<Report, CliError> {
    if let (Some(cap), Some(g)) = (opts.max_order, &doc.group) {
        if g.order() > cap {
            return Err(CliError::Engine {
                context: "group".into(),
                source: depthzero::Error::OrderCap { order: g.order(), cap },
            });
        }
    }
    let cap = doc.task.class_cap.unwrap_or(DEFAULT_CLASS_CAP);
    let cases = match cmd {
        Command::H1 => run_h1(doc)?,
        Command::CorCheck => run_cor(doc, cap)?,
        Command::Prop18Check => run_prop18(doc, cap)?,
        Command::DepthZero => {
            let mut cases = Vec::new();
            for (key, f) in fields(doc, opts)? {
                cases.extend(depth_zero_cases(&key, &torus(doc, f)?).map_err(engine("depth zero"))?);
            }
            cases
        }
        Command::Wur => fields(doc, opts)?
            .into_iter()
            .map(|(key, f)| wur_case(&key, &torus(doc, f)?).map_err(engine("weakly unramified characters")))
            .collect::<Result<_, _>>()?,
        Command::Center => run_center(doc)?,
        Command::ArchCheck => run_arch(doc, opts)?,
    };
    Ok(Report::new(cmd.name(), doc.echo.clone(), cases))
}
