//! JSON formats and workspace loading.
//!
//! Group elements are integer identifiers (0 is the identity). Rationals
//! are `["num", "den"]` decimal strings so no precision is lost.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, GradedAlgebra};
use crate::cohomology::{is_cocycle, ExpCocycle, ExpFunction, H2Description};
use crate::cyclo::{rational_from_pair, rational_to_pair, CycloField, CycloNumber};
use crate::embeddings::{DecisionReport, MatrixEmbedWitness, TowerReport, Witness};
use crate::error::{Error, Result};
use crate::graded_matrix::{GradedMatrixAlgebra, LambdaWitness};
use crate::group::{build_group_with_cap, FiniteGroup, GroupSpec, Subgroup, DEFAULT_ORDER_CAP};
use crate::maps::MonomialMap;
use crate::pi::{ContainmentReport, GradedMultilinearPoly, IdentitySpace, DEFAULT_BUDGET, DEFAULT_DEGREE_CAP};
use crate::twisted::TwistedGroupAlgebra;

/// A group given by its multiplication table (element 0 is the identity).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A group by name (workspace entry or spec such as `C2xC2`) or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycloJson {
    #[serde(rename = "M")]
    pub modulus: u64,
    pub coeffs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub group: GroupRef,
    /// Members of the domain subgroup; the whole group when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    pub modulus: u64,
    pub exponents: Vec<Vec<u64>>,
}

/// A cocycle by workspace name or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleRef {
    Name(String),
    Inline(CocycleJson),
}

/// `M_k(F^sigma[H])` graded by `theta`; `k = 1`, `theta = (e, ..., e)` and the
/// trivial cocycle are the defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleRef>,
    pub group: GroupRef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub g: usize,
    pub c: CycloJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub algebra: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl ConfigJson {
    /// Fields of `over` win where set.
    pub fn merged(&self, over: &ConfigJson) -> ConfigJson {
        ConfigJson {
            order_cap: over.order_cap.or(self.order_cap),
            modulus: over.modulus.or(self.modulus),
            degree_cap: over.degree_cap.or(self.degree_cap),
            budget: over.budget.or(self.budget),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceJson {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupRef>,
    #[serde(default)]
    pub cocycles: BTreeMap<String, CocycleJson>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraJson>,
    #[serde(default)]
    pub config: ConfigJson,
}

/// Effective limits after defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub order_cap: usize,
    pub modulus: Option<u64>,
    pub degree_cap: usize,
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self { order_cap: DEFAULT_ORDER_CAP, modulus: None, degree_cap: DEFAULT_DEGREE_CAP, budget: DEFAULT_BUDGET }
    }
}

impl Config {
    pub fn overlay(mut self, c: &ConfigJson) -> Self {
        if let Some(v) = c.order_cap {
            self.order_cap = v;
        }
        if c.modulus.is_some() {
            self.modulus = c.modulus;
        }
        if let Some(v) = c.degree_cap {
            self.degree_cap = v;
        }
        if let Some(v) = c.budget {
            self.budget = v;
        }
        self
    }
}

/// Validated named objects.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub cocycles: BTreeMap<String, ExpCocycle>,
    pub algebras: BTreeMap<String, GradedMatrixAlgebra>,
    pub config: Config,
}


fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {}", path.display(), parse_err(e))))
}

pub fn parse_workspace_str(text: &str) -> Result<Workspace> {
    let raw: WorkspaceJson = serde_json::from_str(text).map_err(parse_err)?;
    Workspace::from_json(&raw, Config::default())
}

pub fn parse_workspace(path: impl AsRef<Path>) -> Result<Workspace> {
    let raw: WorkspaceJson = read_json(path)?;
    Workspace::from_json(&raw, Config::default())
}

impl Workspace {
    /// Resolves and re-validates every entry. `base` supplies defaults that
    /// the workspace's own config overrides.
    pub fn from_json(raw: &WorkspaceJson, base: Config) -> Result<Self> {
        let mut ws = Workspace { config: base.overlay(&raw.config), ..Default::default() };
        for (name, g) in &raw.groups {
            let group = match g {
                GroupRef::Name(spec) => build_group_with_cap(&GroupSpec::parse(spec)?, ws.config.order_cap)?,
                GroupRef::Inline(j) => group_from_json(j, ws.config.order_cap)?,
            };
            ws.groups.insert(name.clone(), group);
        }
        for (name, c) in &raw.cocycles {
            let sigma = ws.cocycle(c).map_err(|e| Error::Validation(format!("cocycle `{name}`: {e}")))?;
            ws.cocycles.insert(name.clone(), sigma);
        }
        for (name, a) in &raw.algebras {
            let alg = ws.algebra(a).map_err(|e| Error::Validation(format!("algebra `{name}`: {e}")))?;
            ws.algebras.insert(name.clone(), alg);
        }
        Ok(ws)
    }

    pub fn group(&self, r: &GroupRef) -> Result<Arc<FiniteGroup>> {
        match r {
            GroupRef::Name(n) => match self.groups.get(n) {
                Some(g) => Ok(g.clone()),
                None => build_group_with_cap(&GroupSpec::parse(n)?, self.config.order_cap),
            },
            GroupRef::Inline(j) => group_from_json(j, self.config.order_cap),
        }
    }

    pub fn cocycle(&self, c: &CocycleJson) -> Result<ExpCocycle> {
        let g = self.group(&c.group)?;
        let h = match &c.subgroup {
            Some(m) => Subgroup::new(&g, m.iter().copied())?,
            None => Subgroup::full(&g),
        };
        let sigma = ExpCocycle::new(g, h, c.modulus, c.exponents.clone())?;
        if !is_cocycle(&sigma) {
            return Err(Error::NotACocycle("table fails the cocycle identity".into()));
        }
        Ok(sigma)
    }

    pub fn cocycle_ref(&self, c: &CocycleRef) -> Result<ExpCocycle> {
        match c {
            CocycleRef::Name(n) => {
                self.cocycles.get(n).cloned().ok_or_else(|| Error::Validation(format!("unknown cocycle `{n}`")))
            }
            CocycleRef::Inline(j) => self.cocycle(j),
        }
    }

    pub fn algebra(&self, a: &AlgebraJson) -> Result<GradedMatrixAlgebra> {
        let g = self.group(&a.group)?;
        let sigma = match &a.cocycle {
            Some(c) => {
                let s = self.cocycle_ref(c)?;
                if **s.group() != *g {
                    return Err(Error::Validation("cocycle is over a different group".into()));
                }
                s
            }
            None => {
                let h = match &a.subgroup {
                    Some(m) => Subgroup::new(&g, m.iter().copied())?,
                    None => Subgroup::full(&g),
                };
                ExpCocycle::trivial(g.clone(), h, 1)
            }
        };
        if let Some(m) = &a.subgroup {
            if Subgroup::new(&g, m.iter().copied())? != *sigma.subgroup() {
                return Err(Error::Validation("algebra subgroup differs from the cocycle's domain".into()));
            }
        }
        let theta = match (&a.theta, a.k) {
            (Some(t), Some(k)) if t.len() != k => return Err(Error::LengthMismatch { expected: k, got: t.len() }),
            (Some(t), _) => t.clone(),
            (None, k) => vec![0; k.unwrap_or(1)],
        };
        GradedMatrixAlgebra::new(TwistedGroupAlgebra::new(sigma)?, theta)
    }

    /// Algebra by workspace name or from a JSON file path.
    pub fn algebra_named_or_file(&self, name: &str) -> Result<GradedMatrixAlgebra> {
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.clone());
        }
        let raw: AlgebraJson = read_json(name)?;
        self.algebra(&raw)
    }

    /// Cocycle by workspace name or from a JSON file path.
    pub fn cocycle_named_or_file(&self, name: &str) -> Result<ExpCocycle> {
        if let Some(c) = self.cocycles.get(name) {
            return Ok(c.clone());
        }
        let raw: CocycleJson = read_json(name)?;
        self.cocycle(&raw)
    }
}

pub fn group_from_json(j: &GroupJson, cap: usize) -> Result<Arc<FiniteGroup>> {
    if j.order != j.mul.len() {
        return Err(Error::SpecMalformed(format!("order {} but {} rows", j.order, j.mul.len())));
    }
    if j.order > cap {
        return Err(Error::OrderCapExceeded { order: j.order, cap });
    }
    Ok(Arc::new(FiniteGroup::from_table(j.name.clone(), j.mul.clone(), j.labels.clone())?))
}

pub fn group_to_json(g: &FiniteGroup) -> GroupJson {
    GroupJson { name: g.name().to_string(), order: g.order(), mul: g.table(), labels: Some(g.labels().to_vec()) }
}

pub fn cyclo_to_json(x: &CycloNumber) -> CycloJson {
    CycloJson { modulus: x.field().modulus(), coeffs: x.coeffs().iter().map(rational_to_pair).collect() }
}

pub fn cyclo_from_json(j: &CycloJson) -> Result<CycloNumber> {
    if j.modulus == 0 {
        return Err(Error::Validation("cyclotomic modulus must be positive".into()));
    }
    let f = CycloField::new(j.modulus);
    let coeffs = j.coeffs.iter().map(rational_from_pair).collect::<Result<Vec<_>>>()?;
    Ok(f.from_coeffs(coeffs))
}

/// Cocycle JSON with the group inline, so the document stands alone.
pub fn cocycle_to_json(s: &ExpCocycle) -> CocycleJson {
    CocycleJson {
        group: GroupRef::Inline(group_to_json(s.group())),
        subgroup: Some(s.subgroup().members().to_vec()),
        modulus: s.modulus(),
        exponents: s.matrix(),
    }
}

/// Cocycle JSON referring to the group by name.
pub fn cocycle_to_json_named(s: &ExpCocycle, group: &str) -> CocycleJson {
    CocycleJson { group: GroupRef::Name(group.to_string()), ..cocycle_to_json(s) }
}

pub fn algebra_to_json(a: &GradedMatrixAlgebra) -> AlgebraJson {
    let sigma = a.base().sigma();
    AlgebraJson {
        k: Some(a.k()),
        theta: Some(a.theta().to_vec()),
        subgroup: Some(sigma.subgroup().members().to_vec()),
        cocycle: Some(CocycleRef::Inline(cocycle_to_json(sigma))),
        group: GroupRef::Inline(group_to_json(a.ambient())),
    }
}

pub fn element_to_json(a: &GradedMatrixAlgebra, x: &Element, algebra: &str) -> ElementJson {
    let h = a.base().subgroup();
    let terms = x
        .terms()
        .iter()
        .map(|(&b, c)| {
            let (i, j, p) = a.decode(b);
            let (i, j) = if a.k() == 1 { (None, None) } else { (Some(i), Some(j)) };
            TermJson { i, j, g: h.members()[p], c: cyclo_to_json(c) }
        })
        .collect();
    ElementJson { algebra: algebra.to_string(), terms }
}

pub fn element_from_json(a: &GradedMatrixAlgebra, j: &ElementJson) -> Result<Element> {
    let terms = j
        .terms
        .iter()
        .map(|t| {
            let b = a.basis_index(t.i.unwrap_or(0), t.j.unwrap_or(0), t.g)?;
            let c = cyclo_from_json(&t.c)?;
            if c.field() != a.field() {
                return Err(Error::FieldMismatch(c.field().modulus(), a.field().modulus()));
            }
            Ok((b, c))
        })
        .collect::<Result<Vec<_>>>()?;
    a.element(terms)
}

pub fn h2_to_json(d: &H2Description) -> Value {
    json!({
        "group": d.group.name(),
        "subgroup": d.subgroup.members(),
        "order": d.order,
        "invariant_factors": d.invariant_factors,
        "working_modulus": d.working_modulus,
        "representatives": d.representatives.iter().map(|r| cocycle_to_json_named(r, d.group.name())).collect::<Vec<_>>(),
    })
}

pub fn function_to_json(f: &ExpFunction) -> Value {
    json!({ "subgroup": f.subgroup().members(), "modulus": f.modulus(), "values": f.values() })
}

pub fn map_to_json(m: &MonomialMap) -> Value {
    json!({ "modulus": m.modulus, "images": m.images })
}

fn matrix_witness_json(w: &MatrixEmbedWitness) -> Value {
    json!({
        "kind": "matrix",
        "delta": w.delta,
        "alpha": w.alpha,
        "xis": w.xis,
        "f": function_to_json(&w.f),
        "map": map_to_json(&w.map),
    })
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::Tga(t) => json!({ "kind": "tga", "f": function_to_json(&t.f), "map": map_to_json(&t.map) }),
        Witness::Matrix(m) => matrix_witness_json(m),
        Witness::Product(ws) => {
            json!({ "kind": "product", "components": ws.iter().map(matrix_witness_json).collect::<Vec<_>>() })
        }
    }
}

pub fn report_to_json(r: &DecisionReport) -> Value {
    let mut v = json!({
        "verdict": r.verdict,
        "reasons": r.reasons,
        "witness": r.witness.as_ref().map(witness_to_json),
        "notes": r.notes,
    });
    if let Some(a) = &r.assignment {
        v["assignment"] = json!(a);
    }
    v
}

pub fn lambda_witness_to_json(w: &LambdaWitness) -> Value {
    json!({ "target": w.target(), "delta": w.delta(), "alpha": w.alpha(), "xis": w.xis() })
}

pub fn tower_to_json(t: &TowerReport) -> Value {
    let s = &t.square;
    json!({
        "cocycles": t.cocycles.iter().map(|c| cocycle_to_json_named(c, c.group().name())).collect::<Vec<_>>(),
        "dims": t.algebras.iter().map(|a| a.dim()).collect::<Vec<_>>(),
        "embeddings": t.embeddings.iter().map(map_to_json).collect::<Vec<_>>(),
        "square": {
            "small": algebra_to_json(&s.small),
            "big": algebra_to_json(&s.big),
            "top": map_to_json(&s.top),
            "left": map_to_json(&s.left),
            "right": map_to_json(&s.right),
            "bottom": map_to_json(&s.bottom),
            "commutes": s.commutes,
        },
    })
}

pub fn poly_to_json(p: &GradedMultilinearPoly) -> Value {
    json!({
        "degrees": p.assignment().degs(),
        "terms": p.coeffs().iter().map(|(w, c)| json!({
            "monomial": w.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "c": cyclo_to_json(c),
        })).collect::<Vec<_>>(),
    })
}

pub fn identity_space_to_json(s: &IdentitySpace) -> Value {
    json!({
        "degrees": s.assignment.degs(),
        "dimension": s.dim(),
        "evaluation_rank": s.rank,
        "basis": s.basis.iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn containment_to_json(r: &ContainmentReport) -> Value {
    json!({
        "n_max": r.n_max,
        "contained": r.contained,
        "scope": format!("multilinear identities of degree at most {}", r.n_max),
        "results": r.results.iter().map(|x| json!({
            "degrees": x.assignment.degs(),
            "dim_a": x.dim_a,
            "dim_b": x.dim_b,
            "contained": x.contained,
            "separating": x.separating.as_ref().map(poly_to_json),
        })).collect::<Vec<_>>(),
        "skipped": r.skipped.iter().map(|d| d.degs().to_vec()).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline; key order follows struct fields and
/// `serde_json`'s sorted maps, so equal inputs give identical bytes.
pub fn to_pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
