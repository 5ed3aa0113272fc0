//! JSON interchange for graphs, parameters, labels, multidegrees and classes.
//!
//! Rationals are written as `"p/q"` strings (or `"p"` when integral) and read
//! from strings or JSON integers. Boundary pairs are written normalized to
//! `1 ∈ S`; entries given for the complementary pair are converted on input.

use serde_json::{json, Map, Value};

use crate::divisor_classes::DivisorClass;
use crate::error::{Error, Result};
use crate::graphs::{BoundaryPair, MarkedGraph};
use crate::multidegrees::TorsionFreeDegree;
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::stability::{PolytopeLabel, StabilityParameter};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| malformed(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(format!("{what} must be an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| malformed(format!("{what} must be an object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| malformed(format!("{what} must be a string")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| malformed(format!("{what} must be an integer")))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    as_i64(v, what)?
        .try_into()
        .map_err(|_| malformed(format!("{what} out of range")))
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    as_i64(v, what)?
        .try_into()
        .map_err(|_| malformed(format!("{what} out of range")))
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| malformed(e.0)),
        Value::Number(_) => Ok(int(as_i64(v, "rational")?)),
        _ => Err(malformed("rational must be a \"p/q\" string or an integer")),
    }
}

/// `j` in `"j"` keys, 1-based.
fn marking_key(key: &str, n: usize) -> Result<usize> {
    match key.parse::<usize>() {
        Ok(j) if (1..=n).contains(&j) => Ok(j),
        _ => Err(malformed(format!("marking key {key:?} is not in 1..={n}"))),
    }
}

fn pair_from_json(obj: &Value) -> Result<BoundaryPair> {
    let i = as_u32(field(obj, "i")?, "i")?;
    let markings = as_array(field(obj, "S")?, "S")?
        .iter()
        .map(|j| as_index(j, "marking"))
        .collect::<Result<Vec<_>>>()?;
    if markings.iter().any(|&j| j == 0 || j > 64) {
        return Err(malformed("markings must lie in 1..=64"));
    }
    Ok(BoundaryPair::new(i, markings))
}

fn pair_fields(p: BoundaryPair) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("i".into(), json!(p.i));
    m.insert("S".into(), json!(p.markings()));
    m
}

fn read_gn(obj: &Value) -> Result<(u32, usize)> {
    Ok((as_u32(field(obj, "g")?, "g")?, as_index(field(obj, "n")?, "n")?))
}

pub fn graph_to_json(graph: &MarkedGraph) -> Value {
    let vertices: Vec<Value> = (0..graph.num_vertices())
        .map(|v| json!({"id": graph.id(v), "genus": graph.vertex_genus(v)}))
        .collect();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|&(a, b)| json!([graph.id(a), graph.id(b)]))
        .collect();
    let mut markings = Map::new();
    for j in 1..=graph.n() {
        markings.insert(j.to_string(), json!(graph.id(graph.marking(j))));
    }
    json!({"vertices": vertices, "edges": edges, "markings": markings})
}

pub fn graph_from_json(v: &Value) -> Result<MarkedGraph> {
    let vertices = as_array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(|x| {
            let id = as_str(field(x, "id")?, "vertex id")?.to_string();
            Ok((id, as_u32(field(x, "genus")?, "genus")?))
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = as_array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| match as_array(e, "edge")?.as_slice() {
            [a, b] => Ok((as_str(a, "endpoint")?.to_string(), as_str(b, "endpoint")?.to_string())),
            _ => Err(malformed("an edge is a pair of vertex ids")),
        })
        .collect::<Result<Vec<_>>>()?;
    let marks = as_object(field(v, "markings")?, "markings")?;
    let n = marks.len();
    let mut markings = vec![String::new(); n];
    for (key, id) in marks {
        markings[marking_key(key, n)? - 1] = as_str(id, "marking target")?.to_string();
    }
    MarkedGraph::new(vertices, edges, markings)
}

pub fn parameter_to_json(phi: &StabilityParameter) -> Value {
    let coords: Vec<Value> = phi
        .coords()
        .iter()
        .map(|(&p, q)| {
            let mut m = pair_fields(p);
            m.insert("phi_plus".into(), rational_to_json(q));
            Value::Object(m)
        })
        .collect();
    json!({"g": phi.g(), "n": phi.n(), "coords": coords})
}

pub fn parameter_from_json(v: &Value) -> Result<StabilityParameter> {
    let (g, n) = read_gn(v)?;
    let coords = as_array(field(v, "coords")?, "coords")?
        .iter()
        .map(|c| Ok((pair_from_json(c)?, rational_from_json(field(c, "phi_plus")?)?)))
        .collect::<Result<Vec<_>>>()?;
    StabilityParameter::new(g, n, coords)
}

pub fn label_to_json(label: &PolytopeLabel) -> Value {
    let coords: Vec<Value> = label
        .entries()
        .iter()
        .map(|(&p, &d)| {
            let mut m = pair_fields(p);
            m.insert("d".into(), json!(d));
            Value::Object(m)
        })
        .collect();
    json!({"g": label.g(), "n": label.n(), "coords": coords})
}

pub fn label_from_json(v: &Value) -> Result<PolytopeLabel> {
    let (g, n) = read_gn(v)?;
    let coords = as_array(field(v, "coords")?, "coords")?
        .iter()
        .map(|c| Ok((pair_from_json(c)?, as_i64(field(c, "d")?, "d")?)))
        .collect::<Result<Vec<_>>>()?;
    PolytopeLabel::new(g, n, coords)
}

pub fn multidegree_to_json(sheaf: &TorsionFreeDegree) -> Value {
    let graph = sheaf.graph();
    let mut deg = Map::new();
    for (v, &d) in sheaf.norm_degrees().iter().enumerate() {
        deg.insert(graph.id(v).to_string(), json!(d));
    }
    let failures: Vec<Value> = sheaf
        .failures()
        .iter()
        .map(|&e| {
            let (a, b) = graph.edge(e);
            json!([graph.id(a), graph.id(b)])
        })
        .collect();
    json!({"deg": deg, "failures": failures})
}

/// Failures are listed by endpoints; parallel edges are consumed in order.
pub fn multidegree_from_json(v: &Value, graph: &MarkedGraph) -> Result<TorsionFreeDegree> {
    let degs = as_object(field(v, "deg")?, "deg")?;
    if degs.len() != graph.num_vertices() {
        return Err(Error::LengthMismatch { expected: graph.num_vertices(), found: degs.len() });
    }
    let mut deg = vec![0; graph.num_vertices()];
    for (id, d) in degs {
        let vtx = graph
            .vertex_index(id)
            .ok_or_else(|| malformed(format!("unknown vertex {id:?}")))?;
        deg[vtx] = as_i64(d, "degree")?;
    }
    let mut used = vec![false; graph.num_edges()];
    let mut failures = Vec::new();
    if let Some(list) = v.get("failures") {
        for f in as_array(list, "failures")? {
            let ends = match as_array(f, "failure")?.as_slice() {
                [a, b] => [as_str(a, "endpoint")?, as_str(b, "endpoint")?],
                _ => return Err(malformed("a failure is a pair of vertex ids")),
            };
            let [a, b] = ends.map(|id| graph.vertex_index(id));
            let (Some(a), Some(b)) = (a, b) else {
                return Err(malformed(format!("unknown endpoint in failure {f}")));
            };
            let key = (a.min(b), a.max(b));
            let e = (0..graph.num_edges())
                .find(|&e| !used[e] && graph.edge(e) == key)
                .ok_or_else(|| malformed(format!("no free edge between {} and {}", ends[0], ends[1])))?;
            used[e] = true;
            failures.push(e);
        }
    }
    TorsionFreeDegree::new(graph.clone(), deg, &failures)
}

pub fn class_to_json(class: &DivisorClass) -> Value {
    let mut psi = Map::new();
    for j in 1..=class.n() {
        psi.insert(j.to_string(), rational_to_json(&class.psi(j)));
    }
    let delta: Vec<Value> = class
        .delta_terms()
        .iter()
        .map(|(&p, c)| {
            let mut m = pair_fields(p);
            m.insert("c".into(), rational_to_json(c));
            Value::Object(m)
        })
        .collect();
    json!({
        "g": class.g(),
        "n": class.n(),
        "lambda": rational_to_json(&class.lambda()),
        "psi": psi,
        "delta_irr": rational_to_json(&class.delta_irr()),
        "delta": delta,
    })
}

/// Missing `psi` keys and missing `delta_irr` read as zero.
pub fn class_from_json(v: &Value) -> Result<DivisorClass> {
    let (g, n) = read_gn(v)?;
    let lambda = rational_from_json(field(v, "lambda")?)?;
    let mut psi = vec![Rational::from_integer(0); n];
    if let Some(obj) = v.get("psi") {
        for (key, c) in as_object(obj, "psi")? {
            psi[marking_key(key, n)? - 1] = rational_from_json(c)?;
        }
    }
    let delta_irr = match v.get("delta_irr") {
        Some(c) => rational_from_json(c)?,
        None => Rational::from_integer(0),
    };
    let delta = match v.get("delta") {
        Some(list) => as_array(list, "delta")?
            .iter()
            .map(|t| Ok((pair_from_json(t)?, rational_from_json(field(t, "c")?)?)))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    DivisorClass::new(g, n, lambda, psi, delta_irr, delta)
}

pub fn to_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
