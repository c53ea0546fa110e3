//! The input document: a JSON object with optional sections, parsed into
//! validated engine objects.

use std::collections::BTreeMap;
use std::fmt;

use depthzero::abelian::{IntMatrix, Presentation};
use depthzero::arith::prime_power;
use depthzero::galois::{catalog, FiniteGroup, LocalGaloisDatum, Subgroup};
use depthzero::gmodule::GammaModule;
use depthzero::langlands::{ArchimedeanCharDatum, RootDatumGamma};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A schema or invariant violation at a dotted location in the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

fn err(location: impl Into<String>, message: impl fmt::Display) -> SchemaError {
    SchemaError { location: location.into(), message: message.to_string() }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<RawGroup>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_datum: Option<RawLocal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<RawModule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_datum: Option<RawRoot>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub archimedean: Option<RawArch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<RawTask>,
}

/// Either a catalog name (`C4`, `V4`, `S3`, `D4`, `Q8`, ...) or an explicit
/// multiplication table.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum SubgroupRef {
    Name(String),
    Elements(Vec<usize>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawLocal {
    pub inertia: SubgroupRef,
    pub wild: SubgroupRef,
    pub frobenius: usize,
    /// Defaults to the prime dividing `q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub q: u64,
}

/// A module over the document group: free of `rank`, `⊕ ℤ/dᵢ` for
/// `torsion`, or `gens` generators with `relations` rows. `action` maps group
/// elements (as decimal strings) to matrices acting on columns; elements not
/// listed are generated from the listed ones.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

/// `kind` is one of `SL2`, `PGL2`, `GL2` (trivial Galois action); otherwise
/// explicit lattices with roots and coroots as rows and the pairing matrix.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawRoot {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_star: Option<RawModule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_costar: Option<RawModule>,
    #[serde(default)]
    pub roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub coroots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<Vec<i64>>>,
}

/// A complex number as `x` or `[re, im]`.
#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RawComplex {
    Real(f64),
    Pair([f64; 2]),
}

impl RawComplex {
    fn value(self) -> Complex64 {
        match self {
            RawComplex::Real(x) => Complex64::new(x, 0.0),
            RawComplex::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawArch {
    pub sigma: Vec<Vec<i64>>,
    pub mu: Vec<RawComplex>,
    pub nu: Vec<RawComplex>,
    pub h: Vec<RawComplex>,
    /// Explicit sample points `y`; random ones are drawn when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Vec<RawComplex>>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawTask {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<SubgroupRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_e: Option<SubgroupRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_k: Option<SubgroupRef>,
    /// `module` (default) or `torus` for `H¹(G, T∨)` with `T∨ = Hom(L, ℂ×)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Module,
    Torus,
}

#[derive(Clone, Debug)]
pub struct TaskParams {
    pub h: Option<Subgroup>,
    pub h_e: Option<Subgroup>,
    pub h_k: Option<Subgroup>,
    pub coefficients: Coefficients,
    pub class_cap: Option<usize>,
    pub samples: Option<usize>,
    pub radius: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ArchimedeanInput {
    pub datum: ArchimedeanCharDatum,
    pub samples: Option<Vec<Vec<Complex64>>>,
}

/// A fully validated document.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub group: Option<FiniteGroup>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub local_datum: Option<LocalGaloisDatum>,
    pub module: Option<GammaModule>,
    pub root_datum: Option<RootDatumGamma>,
    pub archimedean: Option<ArchimedeanInput>,
    pub task: TaskParams,
    /// The document re-serialized in canonical key order.
    pub echo: serde_json::Value,
}

impl InputDocument {
    /// The document group, or the trivial group when absent.
    pub fn group_or_trivial(&self) -> FiniteGroup {
        self.group.clone().unwrap_or_else(|| FiniteGroup::cyclic(1))
    }
}

fn matrix(rows: &[Vec<i64>], cols: usize, loc: &str) -> Result<IntMatrix, SchemaError> {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_big_rows(big, cols).map_err(|e| err(loc, e))
}

fn square(rows: &[Vec<i64>], loc: &str) -> Result<IntMatrix, SchemaError> {
    matrix(rows, rows.len(), loc)
}

fn build_group(g: &RawGroup) -> Result<FiniteGroup, SchemaError> {
    let group = match (&g.name, &g.table) {
        (Some(name), None) => catalog::by_name(name).ok_or_else(|| err("group.name", format!("unknown group {name:?}")))?,
        (None, Some(table)) => {
            let id = g.identity.ok_or_else(|| err("group.identity", "required with an explicit table"))?;
            FiniteGroup::new(table.clone(), id).map_err(|e| err("group.table", e))?
        }
        _ => return Err(err("group", "give exactly one of `name` and `table`")),
    };
    if let Some(n) = g.order {
        if n != group.order() {
            return Err(err("group.order", format!("declared order {n}, table has order {}", group.order())));
        }
    }
    Ok(group)
}

fn resolve(
    r: &SubgroupRef,
    g: &FiniteGroup,
    named: &BTreeMap<String, Subgroup>,
    loc: &str,
) -> Result<Subgroup, SchemaError> {
    match r {
        SubgroupRef::Name(n) => named.get(n).cloned().ok_or_else(|| err(loc, format!("unknown subgroup {n:?}"))),
        SubgroupRef::Elements(e) => Subgroup::new(g, e).map_err(|e| err(loc, e)),
    }
}

pub fn build_module(m: &RawModule, g: &FiniteGroup, loc: &str) -> Result<GammaModule, SchemaError> {
    let pres = match (m.rank, &m.torsion, m.gens) {
        (Some(r), None, None) if m.relations.is_none() => Presentation::free(r),
        (None, Some(t), None) if m.relations.is_none() => {
            let k = t.len();
            let rows: Vec<Vec<i64>> =
                t.iter().enumerate().map(|(i, &d)| (0..k).map(|j| if i == j { d } else { 0 }).collect()).collect();
            Presentation::new(k, matrix(&rows, k, &format!("{loc}.torsion"))?).map_err(|e| err(format!("{loc}.torsion"), e))?
        }
        (None, None, Some(k)) => {
            let rel = matrix(m.relations.as_deref().unwrap_or(&[]), k, &format!("{loc}.relations"))?;
            Presentation::new(k, rel).map_err(|e| err(format!("{loc}.relations"), e))?
        }
        _ => return Err(err(loc, "give exactly one of `rank`, `torsion` and `gens` (with `relations`)")),
    };
    let k = pres.gens;
    let mut given: Vec<(usize, IntMatrix)> = Vec::new();
    for (key, rows) in &m.action {
        let at = format!("{loc}.action.{key}");
        let x: usize = key.parse().map_err(|_| err(&at, "keys must be group element indices"))?;
        if x >= g.order() {
            return Err(err(&at, format!("element {x} out of range for a group of order {}", g.order())));
        }
        let a = square(rows, &at)?;
        if a.rows() != k {
            return Err(err(&at, format!("expected a {k}×{k} matrix")));
        }
        given.push((x, a));
    }
    let built = if given.is_empty() {
        Ok(GammaModule::trivial(g.clone(), pres))
    } else if given.len() == g.order() {
        given.sort_by_key(|(x, _)| *x);
        GammaModule::new(g.clone(), pres, given.into_iter().map(|(_, a)| a).collect())
    } else {
        GammaModule::from_generators(g.clone(), pres, &given)
    };
    built.map_err(|e| err(format!("{loc}.action"), e))
}

fn build_root(r: &RawRoot, g: &FiniteGroup) -> Result<RootDatumGamma, SchemaError> {
    if let Some(kind) = &r.kind {
        if r.x_star.is_some() || r.x_costar.is_some() || r.pairing.is_some() || !r.roots.is_empty() || !r.coroots.is_empty() {
            return Err(err("root_datum", "`kind` excludes explicit lattices"));
        }
        return match kind.to_ascii_uppercase().as_str() {
            "SL2" => Ok(RootDatumGamma::sl2(g)),
            "PGL2" => Ok(RootDatumGamma::pgl2(g)),
            "GL2" => Ok(RootDatumGamma::gl2(g)),
            _ => Err(err("root_datum.kind", format!("unknown kind {kind:?}; expected SL2, PGL2 or GL2"))),
        };
    }
    let xc = r.x_costar.as_ref().ok_or_else(|| err("root_datum.x_costar", "required"))?;
    let x_costar = build_module(xc, g, "root_datum.x_costar")?;
    let Some(xs) = &r.x_star else {
        if !r.roots.is_empty() || !r.coroots.is_empty() {
            return Err(err("root_datum.x_star", "required when roots are given"));
        }
        return RootDatumGamma::torus(x_costar).map_err(|e| err("root_datum", e));
    };
    let x_star = build_module(xs, g, "root_datum.x_star")?;
    let big = |rows: &[Vec<i64>]| rows.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let pairing = match &r.pairing {
        Some(p) => square(p, "root_datum.pairing")?,
        None => IntMatrix::identity(x_star.gens()),
    };
    RootDatumGamma::new(x_star, x_costar, big(&r.roots), big(&r.coroots), pairing).map_err(|e| err("root_datum", e))
}

fn build_arch(a: &RawArch) -> Result<ArchimedeanInput, SchemaError> {
    let v = |xs: &[RawComplex]| xs.iter().map(|z| z.value()).collect::<Vec<_>>();
    let datum = ArchimedeanCharDatum::new(a.sigma.clone(), v(&a.mu), v(&a.nu), v(&a.h)).map_err(|e| err("archimedean", e))?;
    let samples = a.samples.as_ref().map(|s| s.iter().map(|y| v(y)).collect());
    Ok(ArchimedeanInput { datum, samples })
}

/// Parses and validates a document, collecting every error that can be
/// detected independently.
pub fn parse_input(text: &str) -> Result<InputDocument, Vec<SchemaError>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        vec![err(if path == "." { String::new() } else { path }, e.into_inner())]
    })?;
    build_document(&raw)
}

pub fn build_document(raw: &RawDocument) -> Result<InputDocument, Vec<SchemaError>> {
    let mut errors = Vec::new();
    let group = match raw.group.as_ref().map(build_group).transpose() {
        Ok(g) => g,
        Err(e) => return Err(vec![e]),
    };
    let g = group.clone().unwrap_or_else(|| FiniteGroup::cyclic(1));

    let mut subgroups = BTreeMap::new();
    for (name, elems) in &raw.subgroups {
        match Subgroup::new(&g, elems) {
            Ok(s) => {
                subgroups.insert(name.clone(), s);
            }
            Err(e) => errors.push(err(format!("subgroups.{name}"), e)),
        }
    }

    let mut local_datum = None;
    if let Some(l) = &raw.local_datum {
        if group.is_none() {
            errors.push(err("local_datum", "requires a `group` section"));
        } else {
            let inertia = resolve(&l.inertia, &g, &subgroups, "local_datum.inertia");
            let wild = resolve(&l.wild, &g, &subgroups, "local_datum.wild");
            let p = l.p.or_else(|| prime_power(l.q).map(|(p, _)| p));
            match (inertia, wild, p) {
                (Ok(i), Ok(w), Some(p)) => match LocalGaloisDatum::new(g.clone(), i, w, l.frobenius, p, l.q) {
                    Ok(d) => local_datum = Some(d),
                    Err(e) => errors.push(err("local_datum", e)),
                },
                (i, w, p) => {
                    errors.extend(i.err());
                    errors.extend(w.err());
                    if p.is_none() {
                        errors.push(err("local_datum.q", format!("q = {} is not a prime power", l.q)));
                    }
                }
            }
        }
    }

    let module = raw.module.as_ref().and_then(|m| build_module(m, &g, "module").map_err(|e| errors.push(e)).ok());
    let root_datum = raw.root_datum.as_ref().and_then(|r| build_root(r, &g).map_err(|e| errors.push(e)).ok());
    let archimedean = raw.archimedean.as_ref().and_then(|a| build_arch(a).map_err(|e| errors.push(e)).ok());

    let t = raw.task.clone().unwrap_or_default();
    let mut sub = |r: &Option<SubgroupRef>, loc: &str| {
        r.as_ref().and_then(|r| resolve(r, &g, &subgroups, loc).map_err(|e| errors.push(e)).ok())
    };
    let h = sub(&t.h, "task.h");
    let h_e = sub(&t.h_e, "task.h_e");
    let h_k = sub(&t.h_k, "task.h_k");
    let coefficients = match t.coefficients.as_deref() {
        None | Some("module") => Coefficients::Module,
        Some("torus") => Coefficients::Torus,
        Some(other) => {
            errors.push(err("task.coefficients", format!("expected `module` or `torus`, got {other:?}")));
            Coefficients::Module
        }
    };
    if let Some(r) = t.radius {
        if !(r.is_finite() && r > 0.0) {
            errors.push(err("task.radius", "must be positive and finite"));
        }
    }
    let task = TaskParams { h, h_e, h_k, coefficients, class_cap: t.class_cap, samples: t.samples, radius: t.radius };

    if !errors.is_empty() {
        return Err(errors);
    }
    let echo = serde_json::to_value(raw).expect("raw documents serialize");
    Ok(InputDocument { group, subgroups, local_datum, module, root_datum, archimedean, task, echo })
}
