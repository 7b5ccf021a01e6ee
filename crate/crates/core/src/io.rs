//! JSON curve descriptions and text rendering of closed points.
//!
//! ```json
//! {"field": {"p": 3, "m": 1}, "model": {"kind": "double_cover", "f": [0, 1, 0, 1], "h": []}}
//! ```
//!
//! Coefficient lists are low degree first. Over F_p an entry is an integer
//! (reduced mod p); over F_{p^m} an entry may also be the list of its
//! coordinates over F_p in the power basis of the modulus.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curve::{validate, ClosedPoint, Curve, CurveModel, Fibre, PointData};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Vector(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    ProjectiveLine,
    DoubleCover {
        f: Vec<Coeff>,
        #[serde(default)]
        h: Vec<Coeff>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub field: FieldSpec,
    pub model: ModelSpec,
}

fn element(field: &Field, c: &Coeff) -> Result<Fe> {
    match c {
        Coeff::Int(n) => Ok(field.from_int(*n)),
        Coeff::Vector(v) => field.from_coeffs(v),
    }
}

fn poly(field: &Field, cs: &[Coeff]) -> Result<Poly> {
    Ok(Poly::from_vec(
        cs.iter()
            .map(|c| element(field, c))
            .collect::<Result<_>>()?,
    ))
}

impl CurveSpec {
    pub fn build(&self) -> Result<Curve> {
        let field = Field::new(self.field.p, self.field.m, self.field.modulus.as_deref())?;
        let model = match &self.model {
            ModelSpec::ProjectiveLine => CurveModel::ProjectiveLine { field },
            ModelSpec::DoubleCover { f, h } => CurveModel::DoubleCover {
                f: poly(&field, f)?,
                h: poly(&field, h)?,
                field,
            },
        };
        validate(model)
    }

    pub fn from_curve(curve: &Curve) -> CurveSpec {
        let field = curve.field();
        let fs = FieldSpec {
            p: field.p(),
            m: field.m(),
            modulus: (field.m() > 1).then(|| field.modulus().to_vec()),
        };
        let coeffs = |a: &Poly| -> Vec<Coeff> {
            a.coeffs()
                .iter()
                .map(|&c| {
                    if field.m() == 1 {
                        Coeff::Int(c.code() as i64)
                    } else {
                        Coeff::Vector(field.coeffs(c))
                    }
                })
                .collect()
        };
        let model = match curve.model() {
            CurveModel::ProjectiveLine { .. } => ModelSpec::ProjectiveLine,
            CurveModel::DoubleCover { f, h, .. } => ModelSpec::DoubleCover {
                f: coeffs(f),
                h: coeffs(h),
            },
        };
        CurveSpec { field: fs, model }
    }
}

pub fn parse_curve(text: &str) -> Result<Curve> {
    let spec: CurveSpec =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    spec.build()
}

pub fn element_json(field: &Field, c: Fe) -> Value {
    if field.m() == 1 {
        json!(c.code())
    } else {
        json!(field.coeffs(c))
    }
}

pub fn poly_json(field: &Field, a: &Poly) -> Value {
    Value::Array(a.coeffs().iter().map(|&c| element_json(field, c)).collect())
}

fn fibre_text(field: &Field, fibre: &Fibre) -> String {
    match fibre {
        Fibre::Line => "-".into(),
        Fibre::Split(y) => poly_json(field, y).to_string(),
        Fibre::Ramified(_) => "ramified".into(),
        Fibre::Inert => "inert".into(),
    }
}

/// `id degree pi-coefficients y-data`; points at infinity show `inf` for pi.
pub fn point_line(field: &Field, pt: &ClosedPoint) -> String {
    let (base, fibre) = match &pt.data {
        PointData::Affine { pi, fibre } => (poly_json(field, pi).to_string(), fibre),
        PointData::Infinity { fibre, .. } => ("inf".into(), fibre),
    };
    format!(
        "{} {} {} {}",
        pt.id,
        pt.degree,
        base,
        fibre_text(field, fibre)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn parses_examples() {
        let c = parse_curve(
            r#"{"field": {"p":3,"m":1}, "model": {"kind":"double_cover", "f":[0,1,0,1], "h":[]}}"#,
        )
        .unwrap();
        assert_eq!(c.genus(), 1);
        assert_eq!(c.points_at_infinity().len(), 1);
        let c = parse_curve(r#"{"field": {"p":2}, "model": {"kind":"projective_line"}}"#).unwrap();
        assert_eq!(c.genus(), 0);
        let c = parse_curve(r#"{"field": {"p":2,"m":2}, "model": {"kind":"double_cover", "f":[[0,1],0,0,1], "h":[1]}}"#)
            .unwrap();
        assert_eq!(c.q(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_curve("{}"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_curve(r#"{"field": {"p":3,"x":1}, "model": {"kind":"projective_line"}}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_curve(r#"{"field": {"p":3}, "model": {"kind":"double_cover", "f":[0,0,1]}}"#),
            Err(Error::SingularModel(_))
        ));
        assert!(matches!(
            parse_curve(r#"{"field": {"p":4}, "model": {"kind":"projective_line"}}"#),
            Err(Error::NonPrimeCharacteristic(4))
        ));
    }

    #[test]
    fn round_trip() {
        let text =
            r#"{"field":{"p":5,"m":1},"model":{"kind":"double_cover","f":[0,3,0,1],"h":[]}}"#;
        let c = parse_curve(text).unwrap();
        assert_eq!(
            serde_json::to_string(&CurveSpec::from_curve(&c)).unwrap(),
            text
        );
    }

    #[test]
    fn point_lines() {
        let c = parse_curve(r#"{"field": {"p":2}, "model": {"kind":"projective_line"}}"#).unwrap();
        let lines: Vec<String> = c
            .closed_points(2, &Budget::default())
            .unwrap()
            .iter()
            .map(|pt| point_line(c.field(), pt))
            .collect();
        assert_eq!(
            lines,
            [
                "d1#0 1 [0,1] -",
                "d1#1 1 [1,1] -",
                "d1#inf0 1 inf -",
                "d2#0 2 [1,1,1] -"
            ]
        );
    }
}
