//! JSON encodings. Rationals are written as strings `"p/q"` and read from
//! strings or JSON integers. Object keys are emitted in sorted order.

use serde_json::{json, Map, Value};

use crate::battery::BatteryReport;
use crate::ehrhart::{DilateCounts, DualityReport, EhrhartFit, IdentityRow};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, LatticeVector, Rational, Vector};
use crate::polytope::{v_to_h, AffineMap, CombinatorialFingerprint, HPolytope, Halfspace, VPolytope};
use crate::toric::{FacetLabel, Fan, FanFingerprint, SingularityReport};
use crate::weights::{ChartedSlice, SideData};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn lattice_vector(v: &LatticeVector) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

fn halfspace(h: &Halfspace) -> Value {
    json!({ "a": vector(&h.normal), "b": rational(&h.rhs) })
}

pub fn hpolytope(p: &HPolytope) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "ineqs": p.inequalities().iter().map(halfspace).collect::<Vec<_>>(),
        "eqs": p.equalities().iter().map(halfspace).collect::<Vec<_>>(),
    })
}

pub fn vpolytope(v: &VPolytope) -> Value {
    json!({
        "dim": v.ambient_dim(),
        "vertices": v.vertices().iter().map(|p| vector(p)).collect::<Vec<_>>(),
    })
}

pub fn side_data(s: &SideData) -> Value {
    json!({ "m": s.m(), "r": vector(s.r()), "P": rational(s.p()) })
}

pub fn affine_map(f: &AffineMap) -> Value {
    json!({
        "linear": f.linear().row_vecs().iter().map(|r| vector(r)).collect::<Vec<_>>(),
        "offset": vector(f.offset()),
    })
}

pub fn charted_slice(c: &ChartedSlice) -> Value {
    json!({
        "side": side_data(&c.side),
        "coordinates": c.layout.labels(),
        "entry_chart": hpolytope(&c.entry_chart),
        "diag_chart": hpolytope(&c.diag_chart),
        "entry_to_diag": affine_map(&c.entry_to_diag),
        "lattice_note": c.lattice_note,
    })
}

pub fn fan(f: &Fan, report: &SingularityReport) -> Value {
    let cones: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "vertex": vector(&e.vertex),
                "rays": e.rays.iter().map(lattice_vector).collect::<Vec<_>>(),
                "index": e.index.to_string(),
                "status": e.status.label(),
            })
        })
        .collect();
    json!({ "dim": f.ambient_dim, "cones": cones })
}

pub fn facet_labels(labels: &[FacetLabel]) -> Value {
    Value::Array(
        labels
            .iter()
            .map(|l| {
                json!({
                    "facet": halfspace(&l.facet),
                    "equation": l.facet.to_string(),
                    "tags": l.tags.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn dilate_counts(c: &DilateCounts) -> Value {
    json!({ "period": c.period, "counts": c.counts })
}

pub fn ehrhart_fit(f: &EhrhartFit) -> Value {
    json!({
        "mode": if f.is_polynomial() { "polynomial" } else { "quasi" },
        "period": f.period,
        "degree": f.degree,
        "coefficients": f.coefficients.iter().map(|c| vector(c)).collect::<Vec<_>>(),
    })
}

pub fn identity_rows(rows: &[IdentityRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "dilate": r.dilate,
                    "lattice_count": r.lattice_count,
                    "multiplicity": r.multiplicity.to_string(),
                    "pass": r.pass,
                })
            })
            .collect(),
    )
}

pub fn duality_report(d: &DualityReport) -> Value {
    json!({
        "primal": side_data(&d.primal),
        "dual": side_data(&d.dual),
        "pass": d.pass(),
        "checks": d.checks.iter().map(|c| json!({
            "name": c.name,
            "primal": c.primal,
            "dual": c.dual,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

pub fn combinatorial_fingerprint(f: &CombinatorialFingerprint) -> Value {
    serde_json::to_value(f).expect("fingerprint serializes")
}

pub fn fan_fingerprint(f: &FanFingerprint) -> Value {
    serde_json::to_value(f).expect("fingerprint serializes")
}

pub fn battery_report(b: &BatteryReport) -> Value {
    json!({
        "passed": b.passed(),
        "total": b.claims.len(),
        "claims": b.claims.iter().map(|c| json!({
            "id": c.id,
            "input": c.input,
            "expected": c.expected,
            "computed": c.computed,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

pub fn error(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

/// Canonical text form: pretty-printed with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn parse_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("i64").into())),
        other => Err(err(format!("expected rational, found {other}"))),
    }
}

fn parse_vector(v: &Value) -> Result<Vector> {
    v.as_array()
        .ok_or_else(|| err("expected array"))?
        .iter()
        .map(parse_value)
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(format!("missing field \"{key}\"")))
}

fn parse_halfspaces(v: Option<&Value>, dim: usize) -> Result<Vec<Halfspace>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    v.as_array()
        .ok_or_else(|| err("constraints must be an array"))?
        .iter()
        .map(|h| {
            let obj = h.as_object().ok_or_else(|| err("constraint must be an object"))?;
            let a = parse_vector(field(obj, "a")?)?;
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.len(),
                });
            }
            Ok(Halfspace::new(a, parse_value(field(obj, "b")?)?))
        })
        .collect()
}

fn parse_dim(obj: &Map<String, Value>) -> Result<usize> {
    field(obj, "dim")?
        .as_u64()
        .map(|d| d as usize)
        .ok_or_else(|| err("\"dim\" must be a nonnegative integer"))
}

/// Reads either `{"dim","ineqs","eqs"}` or `{"dim","vertices"}`.
pub fn parse_polytope(text: &str) -> Result<HPolytope> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| err("expected a JSON object"))?;
    let dim = parse_dim(obj)?;
    if let Some(vs) = obj.get("vertices") {
        let points = vs
            .as_array()
            .ok_or_else(|| err("\"vertices\" must be an array"))?
            .iter()
            .map(parse_vector)
            .collect::<Result<Vec<_>>>()?;
        return Ok(v_to_h(&VPolytope::new(dim, points)?));
    }
    HPolytope::new(
        dim,
        parse_halfspaces(obj.get("ineqs"), dim)?,
        parse_halfspaces(obj.get("eqs"), dim)?,
    )
}

/// Reads `{"m": 1, "r": ["3", ...]}`.
pub fn parse_side_data(text: &str) -> Result<SideData> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| err("expected a JSON object"))?;
    let m = field(obj, "m")?
        .as_u64()
        .ok_or_else(|| err("\"m\" must be a positive integer"))?;
    SideData::new(m as usize, parse_vector(field(obj, "r")?)?)
}
