//! JSON input documents: a weighted ring, an ideal and a structure.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use leafalg::vfields::{BracketMatrix, JacobiStructure, VectorField};
use leafalg::{PolyRing, Polynomial, Structure, Variety};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub ring: Arc<PolyRing>,
    pub ideal: Vec<Polynomial>,
    pub structure: Structure,
    pub warnings: Vec<String>,
}

impl InputDocument {
    pub fn variety(&self) -> Result<Variety, CliError> {
        Variety::new(&self.ring, self.ideal.clone(), self.structure.clone())
            .map_err(|e| CliError::input("$.ideal", e.to_string()))
    }

    /// Canonical JSON form (polynomials re-printed, weights explicit).
    pub fn to_json(&self) -> Value {
        let polys = |ps: &[Polynomial]| -> Value { ps.iter().map(|p| p.to_string()).collect() };
        let matrix = |pi: &BracketMatrix| -> Value { pi.entries().iter().map(|row| polys(row)).collect() };
        let structure = match &self.structure {
            Structure::None => json!({"kind": "none"}),
            Structure::Jacobian => json!({"kind": "jacobian"}),
            Structure::Bracket(pi) => json!({"kind": "bracket", "matrix": matrix(pi)}),
            Structure::Jacobi(j) => {
                json!({"kind": "jacobi", "matrix": matrix(&j.pi), "u": polys(j.u.coefficients())})
            }
            Structure::VectorFields(v) => json!({
                "kind": "vector-fields",
                "generators": v.iter().map(|f| polys(f.coefficients())).collect::<Vec<_>>(),
            }),
        };
        json!({
            "ring": {"vars": self.ring.vars(), "weights": self.ring.weights()},
            "ideal": polys(&self.ideal),
            "structure": structure,
        })
    }
}

pub fn load_input(path: &str) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input("$", format!("cannot read {path}: {e}")))?;
    parse_document(&text)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::input(path, format!("missing key \"{key}\"")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| CliError::input(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::input(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| CliError::input(path, "expected a string"))
}

fn poly(ring: &Arc<PolyRing>, v: &Value, path: &str) -> Result<Polynomial, CliError> {
    ring.parse(string(v, path)?)
        .map_err(|e| CliError::input(path, e.to_string()))
}

fn poly_list(ring: &Arc<PolyRing>, v: &Value, path: &str) -> Result<Vec<Polynomial>, CliError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| poly(ring, p, &format!("{path}[{i}]")))
        .collect()
}

fn matrix(ring: &Arc<PolyRing>, v: &Value, path: &str) -> Result<BracketMatrix, CliError> {
    let rows = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| poly_list(ring, row, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    BracketMatrix::new(ring, rows).map_err(|e| CliError::input(path, e.to_string()))
}

fn field_of(ring: &Arc<PolyRing>, v: &Value, path: &str) -> Result<VectorField, CliError> {
    VectorField::new(ring, poly_list(ring, v, path)?).map_err(|e| CliError::input(path, e.to_string()))
}

pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::input("$", format!("invalid JSON: {e}")))?;
    let root = object(&root, "$")?;
    let mut warnings = Vec::new();

    let ring_obj = object(field(root, "ring", "$")?, "$.ring")?;
    let vars = array(field(ring_obj, "vars", "$.ring")?, "$.ring.vars")?
        .iter()
        .enumerate()
        .map(|(i, v)| string(v, &format!("$.ring.vars[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let weights = match ring_obj.get("weights") {
        None | Some(Value::Null) => {
            warnings.push("$.ring.weights missing; all weights default to 1".to_string());
            vec![1; vars.len()]
        }
        Some(w) => array(w, "$.ring.weights")?
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| CliError::input(&format!("$.ring.weights[{i}]"), "expected a non-negative integer"))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let ring = PolyRing::new(&vars, &weights).map_err(|e| CliError::input("$.ring", e.to_string()))?;

    let ideal = match root.get("ideal") {
        None => Vec::new(),
        Some(v) => poly_list(&ring, v, "$.ideal")?,
    };

    let structure = match root.get("structure") {
        None | Some(Value::Null) => Structure::None,
        Some(s) => {
            let obj = object(s, "$.structure")?;
            let kind = string(field(obj, "kind", "$.structure")?, "$.structure.kind")?;
            match kind {
                "none" => Structure::None,
                "jacobian" => Structure::Jacobian,
                "bracket" => Structure::Bracket(matrix(
                    &ring,
                    field(obj, "matrix", "$.structure")?,
                    "$.structure.matrix",
                )?),
                "jacobi" => {
                    let pi = matrix(&ring, field(obj, "matrix", "$.structure")?, "$.structure.matrix")?;
                    let u = field_of(&ring, field(obj, "u", "$.structure")?, "$.structure.u")?;
                    Structure::Jacobi(JacobiStructure::new(pi, u).map_err(|e| CliError::input("$.structure", e.to_string()))?)
                }
                "vector-fields" => {
                    let gens = array(field(obj, "generators", "$.structure")?, "$.structure.generators")?
                        .iter()
                        .enumerate()
                        .map(|(i, g)| field_of(&ring, g, &format!("$.structure.generators[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    Structure::VectorFields(gens)
                }
                other => {
                    return Err(CliError::input(
                        "$.structure.kind",
                        format!("unknown kind \"{other}\" (expected jacobian, bracket, jacobi, vector-fields)"),
                    ))
                }
            }
        }
    };

    let doc = InputDocument {
        ring,
        ideal,
        structure,
        warnings,
    };
    doc.variety()?;
    Ok(doc)
}
