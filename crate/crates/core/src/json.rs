//! JSON schemas: algebra presentations and space specs in, versioned
//! reports out. All scalars travel as exact strings ("3", "-1/2"); reports
//! carry `"schema": "emss-loop/1"`.

use crate::algebra::{
    AlgebraKind, AlgebraMorphism, AlgebraPresentation, Element, GeneratorSpec, ModuleSpec,
    Monomial, Relation,
};
use crate::complex::CohomologyResult;
use crate::emss::{CollapseCertificate, E2Page};
use crate::error::{Error, Result};
use crate::extension::LoopHomologyResult;
use crate::hochschild::HHPresentation;
use crate::scalar::FieldSpec;
use crate::series::Bidegree;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "emss-loop/1";

#[derive(Debug, Deserialize)]
pub struct RawGenerator {
    pub name: String,
    pub degree: i64,
    #[serde(default)]
    pub bound: Option<u32>,
    #[serde(default)]
    pub bidegree: Option<(u32, i64)>,
}

#[derive(Debug, Deserialize)]
pub struct RawTerm {
    pub coeff: String,
    pub monomial: BTreeMap<String, u32>,
}

#[derive(Debug, Deserialize)]
pub struct RawRelation {
    pub lead: BTreeMap<String, u32>,
    #[serde(default)]
    pub rhs: Vec<RawTerm>,
}

#[derive(Debug, Deserialize)]
pub struct RawAlgebra {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    pub generators: Vec<RawGenerator>,
    #[serde(default)]
    pub relations: Vec<RawRelation>,
    #[serde(default)]
    pub kind: Option<String>,
}

#[derive(Debug, Deserialize)]
pub struct RawSpace {
    pub cohomology: RawAlgebra,
    #[serde(default)]
    pub dim: Option<i64>,
    #[serde(default)]
    pub name: Option<String>,
}

fn parse_kind(k: Option<&str>) -> Result<AlgebraKind> {
    Ok(match k {
        None | Some("general") => AlgebraKind::General,
        Some("polynomial") => AlgebraKind::Polynomial,
        Some("truncated_polynomial") => AlgebraKind::TruncatedPolynomial,
        Some("exterior") => AlgebraKind::Exterior,
        Some("tensor") => AlgebraKind::Tensor,
        Some(other) => {
            return Err(Error::InvalidInput(format!("unknown algebra kind `{other}`")))
        }
    })
}

fn monomial_from_names(
    names: &BTreeMap<String, u32>,
    gens: &[GeneratorSpec],
    context: &str,
) -> Result<Monomial> {
    let mut exps = vec![0u32; gens.len()];
    for (name, e) in names {
        let idx = gens
            .iter()
            .position(|g| g.name == *name)
            .ok_or_else(|| Error::InvalidInput(format!("{context}: unknown generator `{name}`")))?;
        exps[idx] = *e;
    }
    Ok(Monomial(exps))
}

pub fn element_from_terms(
    terms: &[RawTerm],
    field: FieldSpec,
    gens: &[GeneratorSpec],
    context: &str,
) -> Result<Element> {
    let mut out = Element::zero();
    for t in terms {
        let c = field.parse(&t.coeff)?;
        let mon = monomial_from_names(&t.monomial, gens, context)?;
        out.add_term(mon, c);
    }
    Ok(out)
}

impl RawAlgebra {
    /// Resolves the raw data against an optional field override. When both
    /// the JSON and the override name a field they must agree.
    pub fn into_presentation(self, field_override: Option<FieldSpec>) -> Result<AlgebraPresentation> {
        let field = match (self.field, field_override) {
            (Some(f), Some(o)) if f != o => {
                return Err(Error::InvalidInput(format!(
                    "field mismatch: JSON says characteristic {}, flag says {}",
                    f.characteristic, o.characteristic
                )))
            }
            (Some(f), _) => FieldSpec::new(f.characteristic)?,
            (None, Some(o)) => o,
            (None, None) => {
                return Err(Error::InvalidInput(
                    "no field: set \"field\" in the JSON or pass --char".into(),
                ))
            }
        };
        let gens: Vec<GeneratorSpec> = self
            .generators
            .iter()
            .map(|g| GeneratorSpec {
                name: g.name.clone(),
                degree: g.degree,
                bound: g.bound,
                bidegree: g.bidegree.map(|(p, q)| Bidegree::new(p, q)),
            })
            .collect();
        let mut relations = Vec::new();
        for r in &self.relations {
            let lead = monomial_from_names(&r.lead, &gens, "relation lead")?;
            let rhs = element_from_terms(&r.rhs, field, &gens, "relation rhs")?;
            relations.push(Relation { lead, rhs });
        }
        AlgebraPresentation::new(field, gens, relations, parse_kind(self.kind.as_deref())?)
    }
}

pub fn parse_algebra(text: &str, field_override: Option<FieldSpec>) -> Result<AlgebraPresentation> {
    let raw: RawAlgebra = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("algebra JSON: {e}")))?;
    raw.into_presentation(field_override)
}

pub struct SpaceSpec {
    pub cohomology: AlgebraPresentation,
    pub dim: Option<i64>,
    pub name: String,
}

pub fn parse_space(text: &str, field_override: Option<FieldSpec>) -> Result<SpaceSpec> {
    let raw: RawSpace = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("space JSON: {e}")))?;
    let name = raw.name.clone().unwrap_or_else(|| "space".into());
    Ok(SpaceSpec {
        cohomology: raw.cohomology.into_presentation(field_override)?,
        dim: raw.dim,
        name,
    })
}

/// A module map file: ring generator name -> element of the coefficients.
pub fn parse_module(
    ring: &AlgebraPresentation,
    coefficients: &AlgebraPresentation,
    text: &str,
) -> Result<ModuleSpec> {
    #[derive(Deserialize)]
    struct RawMap {
        images: BTreeMap<String, Vec<RawTerm>>,
    }
    let raw: RawMap = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("map JSON: {e}")))?;
    let mut images = Vec::new();
    for g in &ring.generators {
        let terms = raw.images.get(&g.name).ok_or_else(|| {
            Error::InvalidInput(format!("map JSON: no image for ring generator `{}`", g.name))
        })?;
        images.push(element_from_terms(
            terms,
            ring.field,
            &coefficients.generators,
            "map image",
        )?);
    }
    let action = AlgebraMorphism::new(ring.clone(), coefficients.clone(), images)?;
    ModuleSpec::new(ring.clone(), coefficients.clone(), action)
}

pub fn presentation_to_json(p: &AlgebraPresentation) -> Value {
    let gens: Vec<Value> = p
        .generators
        .iter()
        .map(|g| {
            let mut m = Map::new();
            m.insert("name".into(), json!(g.name));
            m.insert("degree".into(), json!(g.degree));
            if let Some(b) = g.bound {
                m.insert("bound".into(), json!(b));
            }
            if let Some(b) = g.bidegree {
                m.insert("bidegree".into(), json!([b.p, b.q]));
            }
            Value::Object(m)
        })
        .collect();
    let rels: Vec<Value> = p
        .relations
        .iter()
        .map(|r| {
            json!({
                "lead": monomial_to_json(p, &r.lead),
                "rhs": element_to_json(p, &r.rhs),
            })
        })
        .collect();
    json!({
        "field": {"characteristic": p.field.characteristic},
        "generators": gens,
        "relations": rels,
        "kind": p.kind,
        "display": p.describe(),
    })
}

fn monomial_to_json(p: &AlgebraPresentation, m: &Monomial) -> Value {
    let mut out = Map::new();
    for (e, g) in m.0.iter().zip(&p.generators) {
        if *e > 0 {
            out.insert(g.name.clone(), json!(e));
        }
    }
    Value::Object(out)
}

fn element_to_json(p: &AlgebraPresentation, e: &Element) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|(m, c)| {
            json!({
                "coeff": c.to_string(),
                "monomial": monomial_to_json(p, m),
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn hh_to_json(h: &HHPresentation) -> Value {
    json!({
        "schema": SCHEMA,
        "presentation": presentation_to_json(&h.presentation),
        "ring": presentation_to_json(&h.ring),
        "certificate": serde_json::to_value(&h.certificate).unwrap(),
    })
}

pub fn dims_to_json(dims: &BTreeMap<Bidegree, usize>) -> Value {
    Value::Array(
        dims.iter()
            .filter(|(_, n)| **n > 0)
            .map(|(b, n)| json!({"p": b.p, "q": b.q, "dim": n}))
            .collect(),
    )
}

pub fn cohomology_to_json(h: &CohomologyResult) -> Value {
    Value::Array(
        h.nonzero()
            .map(|((p, q), d)| json!({"p": p, "q": q, "dim": d}))
            .collect(),
    )
}

pub fn page_to_json(page: &E2Page, dims: &BTreeMap<Bidegree, usize>) -> Value {
    json!({
        "schema": SCHEMA,
        "spaces": {"target": page.space_labels.0, "source": page.space_labels.1},
        "shift": page.shift,
        "presentation": presentation_to_json(page.presentation()),
        "dims": dims_to_json(dims),
        "certificate": serde_json::to_value(&page.hh.certificate).unwrap(),
    })
}

pub fn collapse_to_json(c: &CollapseCertificate) -> Value {
    serde_json::to_value(c).unwrap()
}

pub fn loop_result_to_json(r: &LoopHomologyResult) -> Value {
    json!({
        "schema": SCHEMA,
        "presentation": presentation_to_json(&r.presentation),
        "collapse": collapse_to_json(&r.collapse),
        "extension_reports": serde_json::to_value(&r.reports).unwrap(),
        "resolutions": r.resolutions.iter().map(|(k, v)| {
            json!({"check": k, "by": serde_json::to_value(v).unwrap()})
        }).collect::<Vec<_>>(),
        "imported_by_zero_column_lift": r.imported,
        "unresolved": r.unresolved,
        "complete": r.is_complete(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let text = r#"{
            "field": {"characteristic": 0},
            "generators": [{"name": "x", "degree": 2, "bound": 2}],
            "relations": [],
            "kind": "truncated_polynomial"
        }"#;
        let a = parse_algebra(text, None).unwrap();
        assert_eq!(a.generators.len(), 1);
        let v = presentation_to_json(&a);
        let back = parse_algebra(&v.to_string(), None).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn presentation_with_relations_and_bidegrees_round_trips() {
        // The char-2 closed form carries a binomial rewrite and bidegrees.
        let f = FieldSpec::new(2).unwrap();
        let a = AlgebraPresentation::truncated(f, "x", 2, 1).unwrap();
        let hh = crate::hochschild::hh_ring(&a, 3).unwrap();
        let v = presentation_to_json(&hh.presentation);
        let back = parse_algebra(&v.to_string(), None).unwrap();
        assert_eq!(back, hh.presentation);
    }

    #[test]
    fn field_override_must_agree() {
        let text = r#"{"field": {"characteristic": 2},
                       "generators": [{"name": "x", "degree": 3, "bound": 1}]}"#;
        assert!(parse_algebra(text, Some(FieldSpec::new(3).unwrap())).is_err());
        assert!(parse_algebra(text, Some(FieldSpec::new(2).unwrap())).is_ok());
    }

    #[test]
    fn relation_terms_parse_with_rational_coefficients() {
        let text = r#"{
            "field": {"characteristic": 0},
            "generators": [
                {"name": "x", "degree": 2, "bound": 1},
                {"name": "v", "degree": -1},
                {"name": "t", "degree": -2}
            ],
            "relations": [{"lead": {"v": 2}, "rhs": [{"coeff": "1/2", "monomial": {"t": 1}}]}]
        }"#;
        let a = parse_algebra(text, None).unwrap();
        assert_eq!(a.relations.len(), 1);
    }

    #[test]
    fn composite_characteristic_in_json_is_rejected() {
        let text = r#"{"field": {"characteristic": 6},
                       "generators": [{"name": "x", "degree": 2, "bound": 1}]}"#;
        assert!(parse_algebra(text, None).is_err());
    }
}
