// SPDX-License-Identifier: Apache-2.0

//! JSON encodings for matrices, groupoids, representations and pipeline
//! output.
//!
//! Matrices are `{"dim": n, "rows": [[[re, im], ...], ...]}` in row-major
//! order. Groupoids are either `{"kind": "action", ...}` built from a group
//! action or `{"kind": "explicit", ...}` with full tables. Floats are written
//! in shortest round-trip form, so re-reading a file reproduces every value
//! bit for bit.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::circumcenter::CircumcenterResult;
use crate::error::{Error, Result};
use crate::groupoid::{ActionGroupoidSpec, Arrow, FiniteGroup, FiniteMeasuredGroupoid};
use crate::linalg::{Complex, ComplexMatrix};
use crate::representation::{Representation, SimilarityCheck, Unitarization, UnitaryGroupRep, Violation};

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(parse_err)
}

/// Pretty-printed text with a trailing newline.
pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn typed<T: for<'de> Deserialize<'de>>(value: &Value) -> Result<T> {
    T::deserialize(value).map_err(parse_err)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    let rows = m.rows().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    serde_json::to_value(MatrixJson { dim: m.dim(), rows }).expect("matrix serializes")
}

/// Rejects ragged rows, non-finite entries and a `dim` that disagrees with
/// the rows.
pub fn matrix_from_json(value: &Value) -> Result<ComplexMatrix> {
    let raw: MatrixJson = typed(value)?;
    let rows: Vec<Vec<Complex>> = raw
        .rows
        .into_iter()
        .map(|r| r.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
        .collect();
    let m = ComplexMatrix::from_rows(rows)?;
    if m.dim() != raw.dim {
        return Err(Error::DimensionMismatch {
            expected: raw.dim,
            found: m.dim(),
        });
    }
    Ok(m)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupJson {
    Table {
        elements: Vec<String>,
        mult_table: Vec<Vec<usize>>,
        identity: usize,
        inverses: Vec<usize>,
    },
    Cyclic {
        cyclic: usize,
    },
    Symmetric {
        symmetric: usize,
    },
}

#[derive(Deserialize)]
struct SpaceJson {
    units: Vec<String>,
    mu: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ActionTableJson {
    Table(Vec<Vec<usize>>),
    /// `"trivial"`, or `"permutation"` for a permutation group acting on
    /// its letters.
    Named(String),
}

#[derive(Deserialize)]
struct ActionJson {
    group: GroupJson,
    space: SpaceJson,
    action: ActionTableJson,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct ExplicitJson {
    units: Vec<String>,
    mu: Vec<f64>,
    arrows: Vec<ArrowJson>,
    inverse: Vec<usize>,
    composition: Vec<Vec<Option<usize>>>,
}

/// A groupoid as described in a file: either an action or explicit tables.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupoidDoc {
    Action(ActionGroupoidSpec),
    Explicit(FiniteMeasuredGroupoid),
}

impl GroupoidDoc {
    pub fn build(&self) -> Result<FiniteMeasuredGroupoid> {
        match self {
            GroupoidDoc::Action(spec) => spec.build(),
            GroupoidDoc::Explicit(g) => Ok(g.clone()),
        }
    }

    pub fn action_spec(&self) -> Option<&ActionGroupoidSpec> {
        match self {
            GroupoidDoc::Action(spec) => Some(spec),
            GroupoidDoc::Explicit(_) => None,
        }
    }
}

fn group_from_json(raw: GroupJson) -> Result<FiniteGroup> {
    match raw {
        GroupJson::Table {
            elements,
            mult_table,
            identity,
            inverses,
        } => FiniteGroup::new(elements, mult_table, identity, inverses),
        GroupJson::Cyclic { cyclic } if cyclic >= 1 => Ok(FiniteGroup::cyclic(cyclic)),
        GroupJson::Symmetric { symmetric } if (1..=8).contains(&symmetric) => Ok(FiniteGroup::symmetric(symmetric)),
        _ => Err(Error::InvalidGroup("group size out of range".into())),
    }
}

pub fn groupoid_from_json(value: &Value) -> Result<GroupoidDoc> {
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("groupoid needs a string field \"kind\"".into()))?;
    match kind {
        "action" => {
            let raw: ActionJson = typed(value)?;
            let group = group_from_json(raw.group)?;
            let k = raw.space.units.len();
            let action = match raw.action {
                ActionTableJson::Table(t) => t,
                ActionTableJson::Named(name) => named_action(&group, &name, k)?,
            };
            let spec = ActionGroupoidSpec::new(group, raw.space.units, raw.space.mu, action)?;
            Ok(GroupoidDoc::Action(spec))
        }
        "explicit" => {
            let raw: ExplicitJson = typed(value)?;
            Ok(GroupoidDoc::Explicit(explicit_from_raw(raw)?))
        }
        other => Err(Error::Parse(format!("unknown groupoid kind {other:?}"))),
    }
}

fn named_action(group: &FiniteGroup, name: &str, units: usize) -> Result<Vec<Vec<usize>>> {
    match name {
        "trivial" => Ok(vec![(0..units).collect(); group.order()]),
        "permutation" => (0..group.order())
            .map(|a| match group.permutation(a) {
                Some(p) if p.len() == units => Ok(p),
                _ => Err(Error::InvalidAction(format!(
                    "element {} is not a permutation of {units} letters",
                    group.labels()[a]
                ))),
            })
            .collect(),
        other => Err(Error::Parse(format!("unknown named action {other:?}"))),
    }
}

fn explicit_from_raw(raw: ExplicitJson) -> Result<FiniteMeasuredGroupoid> {
    let unit_index: HashMap<&str, usize> = raw.units.iter().enumerate().map(|(i, u)| (u.as_str(), i)).collect();
    if unit_index.len() != raw.units.len() {
        return Err(Error::InvalidGroupoid("duplicate unit label".into()));
    }
    let lookup = |u: &str| {
        unit_index
            .get(u)
            .copied()
            .ok_or_else(|| Error::UnknownUnit(u.to_string()))
    };
    let arrows = raw
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow {
                id: a.id.clone(),
                src: lookup(&a.src)?,
                tgt: lookup(&a.tgt)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = arrows.len();
    if raw.composition.len() != n || raw.composition.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidGroupoid(format!("composition table must be {n}x{n}")));
    }
    let mut composition = HashMap::new();
    for (h, row) in raw.composition.iter().enumerate() {
        for (g, entry) in row.iter().enumerate() {
            if let Some(hg) = entry {
                composition.insert((h, g), *hg);
            }
        }
    }
    FiniteMeasuredGroupoid::new(raw.units, raw.mu, arrows, raw.inverse, composition)
}

fn group_to_json(group: &FiniteGroup) -> Value {
    json!({
        "elements": group.labels(),
        "mult_table": group.mult_table(),
        "identity": group.identity(),
        "inverses": group.inverses(),
    })
}

pub fn explicit_groupoid_to_json(g: &FiniteMeasuredGroupoid) -> Value {
    let n = g.arrow_count();
    let mut composition = vec![vec![None; n]; n];
    for (h, a, ha) in g.composable_pairs() {
        composition[h][a] = Some(ha);
    }
    let raw = ExplicitJson {
        units: g.units().to_vec(),
        mu: g.mu().to_vec(),
        arrows: g
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                id: a.id.clone(),
                src: g.units()[a.src].clone(),
                tgt: g.units()[a.tgt].clone(),
            })
            .collect(),
        inverse: g.inverse_table().to_vec(),
        composition,
    };
    let mut v = serde_json::to_value(raw).expect("groupoid serializes");
    v.as_object_mut()
        .expect("object")
        .insert("kind".into(), Value::from("explicit"));
    v
}

pub fn groupoid_to_json(doc: &GroupoidDoc) -> Value {
    match doc {
        GroupoidDoc::Action(spec) => json!({
            "kind": "action",
            "group": group_to_json(&spec.group),
            "space": { "units": spec.units, "mu": spec.mu },
            "action": spec.action,
        }),
        GroupoidDoc::Explicit(g) => explicit_groupoid_to_json(g),
    }
}

/// A representation together with the groupoid description it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationDoc {
    pub groupoid: GroupoidDoc,
    pub rep: Representation,
}

/// Reads `{"groupoid", "dim", "arrows"}` and validates the representation.
/// A string in place of the groupoid object is a reference handed to
/// `resolve`. Extra top-level fields are ignored, so pipeline output reads
/// back as its unitary representation.
pub fn representation_from_json(value: &Value, resolve: &dyn Fn(&str) -> Result<Value>) -> Result<RepresentationDoc> {
    let (groupoid, dim, matrices) = representation_parts(value, resolve)?;
    let rep = Representation::new(groupoid.build()?, dim, matrices)?;
    Ok(RepresentationDoc { groupoid, rep })
}

/// Like [`representation_from_json`] but only checks shapes and finiteness,
/// leaving the identities to [`crate::representation::check_representation`].
pub fn representation_from_json_unchecked(
    value: &Value,
    resolve: &dyn Fn(&str) -> Result<Value>,
) -> Result<RepresentationDoc> {
    let (groupoid, dim, matrices) = representation_parts(value, resolve)?;
    let rep = Representation::unchecked(groupoid.build()?, dim, matrices)?;
    Ok(RepresentationDoc { groupoid, rep })
}

fn representation_parts(
    value: &Value,
    resolve: &dyn Fn(&str) -> Result<Value>,
) -> Result<(GroupoidDoc, usize, Vec<ComplexMatrix>)> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("representation must be an object".into()))?;
    let groupoid = match obj.get("groupoid") {
        Some(Value::String(reference)) => groupoid_from_json(&resolve(reference)?)?,
        Some(v) => groupoid_from_json(v)?,
        None => return Err(Error::Parse("missing field \"groupoid\"".into())),
    };
    let dim: usize = typed(
        obj.get("dim")
            .ok_or_else(|| Error::Parse("missing field \"dim\"".into()))?,
    )?;
    let arrows = obj
        .get("arrows")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("missing object \"arrows\"".into()))?;
    let g = groupoid.build()?;
    let mut matrices = Vec::with_capacity(g.arrow_count());
    for a in g.arrows() {
        let m = arrows.get(&a.id).ok_or_else(|| Error::MissingArrow(a.id.clone()))?;
        matrices.push(matrix_from_json(m).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("arrow {}: {msg}", a.id)),
            other => other,
        })?);
    }
    if let Some(extra) = arrows.keys().find(|k| g.arrow_index(k).is_none()) {
        return Err(Error::InvalidRepresentation(format!("unknown arrow {extra}")));
    }
    Ok((groupoid, dim, matrices))
}

/// Reads a representation whose groupoid must be inline.
pub fn representation_from_value(value: &Value) -> Result<RepresentationDoc> {
    representation_from_json(value, &|r| {
        Err(Error::Parse(format!(
            "groupoid reference {r:?} cannot be resolved here"
        )))
    })
}

fn arrows_to_json(g: &FiniteMeasuredGroupoid, matrices: &[ComplexMatrix]) -> Value {
    let map: Map<String, Value> = g
        .arrows()
        .iter()
        .zip(matrices)
        .map(|(a, m)| (a.id.clone(), matrix_to_json(m)))
        .collect();
    Value::Object(map)
}

pub fn representation_to_json(groupoid: &GroupoidDoc, rep: &Representation) -> Value {
    json!({
        "groupoid": groupoid_to_json(groupoid),
        "dim": rep.dim(),
        "arrows": arrows_to_json(rep.groupoid(), rep.matrices()),
    })
}

fn certificate_to_json(r: &CircumcenterResult) -> Value {
    json!({
        "radius_at_center": r.radius_at_center,
        "radius_lower_bound": r.radius_lower_bound,
        "center_error_bound": r.center_error_bound,
        "iterations": r.iterations,
        "converged": r.converged,
    })
}

/// The unitary representation `u` with `ψ`, `σ`, certificates and report.
pub fn unitarization_to_json(groupoid: &GroupoidDoc, out: &Unitarization) -> Value {
    let g = out.unitary.groupoid();
    let per_unit = |ms: Vec<Value>| -> Value { Value::Object(g.units().iter().cloned().zip(ms).collect()) };
    let report = &out.report;
    json!({
        "groupoid": groupoid_to_json(groupoid),
        "dim": out.unitary.dim(),
        "arrows": arrows_to_json(g, out.unitary.matrices()),
        "psi": per_unit(out.witness.psi.iter().map(|p| matrix_to_json(p.as_matrix())).collect()),
        "sigma": per_unit(out.witness.sigma.iter().map(|p| matrix_to_json(p.as_matrix())).collect()),
        "certificates": per_unit(
            out.witness
                .certificates
                .iter()
                .map(|c| c.as_ref().map_or(Value::Null, certificate_to_json))
                .collect()
        ),
        "report": {
            "max_unitarity_residual": report.max_unitarity_residual,
            "max_equivariance_residual": report.max_equivariance_residual,
            "max_certificate_bound": report.max_certificate_bound,
            "uniform_bound": report.uniform_bound,
            "threshold": report.threshold,
            "passed": report.passed(),
            "unconverged_units": report
                .unconverged_units
                .iter()
                .map(|&x| g.units()[x].clone())
                .collect::<Vec<_>>(),
            "per_arrow": report
                .per_arrow
                .iter()
                .map(|r| json!({
                    "arrow": g.arrows()[r.arrow].id,
                    "unitarity": r.unitarity,
                    "equivariance": r.equivariance,
                }))
                .collect::<Vec<_>>(),
        },
    })
}

/// The `"psi"` block of pipeline output, ordered by unit, if present.
pub fn psi_from_json(value: &Value, groupoid: &FiniteMeasuredGroupoid) -> Result<Option<Vec<ComplexMatrix>>> {
    let Some(psi) = value.get("psi") else {
        return Ok(None);
    };
    let psi = psi
        .as_object()
        .ok_or_else(|| Error::Parse("\"psi\" must be an object keyed by unit".into()))?;
    groupoid
        .units()
        .iter()
        .map(|u| {
            psi.get(u)
                .ok_or_else(|| Error::UnknownUnit(format!("{u} missing from psi")))
                .and_then(matrix_from_json)
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

pub fn violations_to_json(violations: &[Violation]) -> Value {
    Value::Array(
        violations
            .iter()
            .map(|v| {
                json!({
                    "kind": format!("{:?}", v.kind).to_lowercase(),
                    "arrows": v.arrows,
                    "residual": v.residual,
                })
            })
            .collect(),
    )
}

pub fn similarity_to_json(check: &SimilarityCheck, groupoid: &FiniteMeasuredGroupoid) -> Value {
    json!({
        "passed": check.passed,
        "max_residual": check.max_residual,
        "per_arrow": check
            .per_arrow
            .iter()
            .map(|&(a, r)| json!({ "arrow": groupoid.arrows()[a].id, "residual": r }))
            .collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum BaseRepJson {
    Trivial { dim: Option<usize> },
    Regular,
    Permutation,
    Character { k: usize },
    Matrices { matrices: Vec<Value> },
    Sum { parts: Vec<Value> },
}

/// Base unitary representation of `group`, e.g. `{"kind": "regular"}` or
/// `{"kind": "sum", "parts": [...]}`.
pub fn base_rep_from_json(value: &Value, group: &FiniteGroup) -> Result<UnitaryGroupRep> {
    match typed::<BaseRepJson>(value)? {
        BaseRepJson::Trivial { dim } => UnitaryGroupRep::trivial(group.clone(), dim.unwrap_or(1)),
        BaseRepJson::Regular => Ok(UnitaryGroupRep::regular(group.clone())),
        BaseRepJson::Permutation => UnitaryGroupRep::permutation(group.clone()),
        BaseRepJson::Character { k } => {
            let chi = UnitaryGroupRep::cyclic_character(group.order(), k);
            if chi.group() != group {
                return Err(Error::InvalidBaseRep(
                    "characters need the standard cyclic group".into(),
                ));
            }
            Ok(chi)
        }
        BaseRepJson::Matrices { matrices } => {
            let ms = matrices.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
            UnitaryGroupRep::new(group.clone(), ms)
        }
        BaseRepJson::Sum { parts } => {
            let mut it = parts.iter();
            let first = it.next().ok_or_else(|| Error::InvalidBaseRep("empty sum".into()))?;
            it.try_fold(base_rep_from_json(first, group)?, |acc, p| {
                acc.direct_sum(&base_rep_from_json(p, group)?)
            })
        }
    }
}
