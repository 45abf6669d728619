//! JSON formats. Vertices are numbered from 1; rationals are strings
//! `"n/d"`, prime-field scalars are residues.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::derived::{FormalComplex, RawComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::homalg::ProjMap;
use crate::orthopair::FiveTermSequence;
use crate::perpalg::{LocalizationData, PerpAlgebra};
use crate::quiverrep::{Arrow, Morphism, Quiver, Representation};

fn err(at: &str, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {what}"))
}

fn field_of<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(at, format!("missing field {key:?}")))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(at, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(at, "expected an array"))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(at, "expected an object"))
}

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rationals => json!({"kind": "Q"}),
        Field::Prime(p) => json!({"kind": "Fp", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match field_of(v, "kind", "field")?.as_str() {
        Some("Q") => Ok(Field::Rationals),
        Some("Fp") => Field::prime(field_of(v, "p", "field")?.as_u64().ok_or_else(|| err("field.p", "expected an integer"))?),
        _ => Err(err("field.kind", "expected \"Q\" or \"Fp\"")),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(_) => Value::String(s.to_string()),
        Scalar::Mod(v) => json!(v),
    }
}

pub fn scalar_from_json(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(err(at, "expected a scalar string or integer")),
    };
    field.parse_scalar(&text).map_err(|e| err(at, e))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect())).collect())
}

pub fn matrix_from_json(field: Field, rows: usize, cols: usize, v: &Value, at: &str) -> Result<Matrix> {
    let rs = as_array(v, at)?;
    if rs.len() != rows {
        return Err(err(at, format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in rs.iter().enumerate() {
        let at_r = format!("{at}[{r}]");
        let cs = as_array(row, &at_r)?;
        if cs.len() != cols {
            return Err(err(&at_r, format!("expected {cols} entries, found {}", cs.len())));
        }
        for (c, x) in cs.iter().enumerate() {
            data.push(scalar_from_json(field, x, &format!("{at_r}[{c}]"))?);
        }
    }
    Matrix::from_vec(field, rows, cols, data)
}

pub fn vector_to_json(m: &Matrix) -> Value {
    Value::Array(m.column(0).iter().map(scalar_to_json).collect())
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    let arrows: Vec<Value> =
        q.arrows().iter().map(|a| json!({"id": a.id, "source": a.source + 1, "target": a.target + 1})).collect();
    json!({"vertices": q.vertex_count(), "arrows": arrows})
}

pub fn quiver_from_json(v: &Value) -> Result<Arc<Quiver>> {
    let n = as_usize(field_of(v, "vertices", "quiver")?, "quiver.vertices")?;
    let mut arrows = Vec::new();
    for (k, a) in as_array(field_of(v, "arrows", "quiver")?, "quiver.arrows")?.iter().enumerate() {
        let at = format!("quiver.arrows[{k}]");
        let id = field_of(a, "id", &at)?.as_str().ok_or_else(|| err(&at, "id must be a string"))?.to_string();
        let end = |key: &str| -> Result<usize> {
            let x = as_usize(field_of(a, key, &at)?, &format!("{at}.{key}"))?;
            if x == 0 || x > n {
                return Err(err(&format!("{at}.{key}"), format!("vertex {x} outside 1..={n}")));
            }
            Ok(x - 1)
        };
        arrows.push(Arrow { id, source: end("source")?, target: end("target")? });
    }
    Quiver::new(n, arrows)
}

pub fn rep_to_json(m: &Representation) -> Value {
    let matrices: Map<String, Value> =
        m.quiver().arrows().iter().zip(m.maps()).map(|(a, mat)| (a.id.clone(), matrix_to_json(mat))).collect();
    json!({"field": field_to_json(m.field()), "dims": m.dims(), "matrices": matrices})
}

pub fn rep_from_json(q: &Arc<Quiver>, v: &Value) -> Result<Representation> {
    let field = field_from_json(field_of(v, "field", "representation")?)?;
    let dims = as_array(field_of(v, "dims", "representation")?, "dims")?
        .iter()
        .enumerate()
        .map(|(k, d)| as_usize(d, &format!("dims[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    if dims.len() != q.vertex_count() {
        return Err(err("dims", format!("expected {} entries, found {}", q.vertex_count(), dims.len())));
    }
    let empty = Map::new();
    let mats = match v.get("matrices") {
        Some(m) => as_object(m, "matrices")?,
        None => &empty,
    };
    for key in mats.keys() {
        if q.arrow_index(key).is_none() {
            return Err(err("matrices", format!("unknown arrow {key:?}")));
        }
    }
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (rows, cols) = (dims[a.target], dims[a.source]);
            match mats.get(&a.id) {
                Some(m) => matrix_from_json(field, rows, cols, m, &format!("matrices.{}", a.id)),
                None if rows == 0 || cols == 0 => Ok(Matrix::zeros(field, rows, cols)),
                None => Err(err("matrices", format!("missing matrix for arrow {:?}", a.id))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, field, dims, maps)
}

pub fn morphism_to_json(f: &Morphism) -> Value {
    let maps: Map<String, Value> =
        f.maps().iter().enumerate().map(|(v, m)| ((v + 1).to_string(), matrix_to_json(m))).collect();
    json!({"vertexMaps": maps})
}

pub fn morphism_from_json(source: &Representation, target: &Representation, v: &Value) -> Result<Morphism> {
    let maps = as_object(field_of(v, "vertexMaps", "morphism")?, "vertexMaps")?;
    let field = source.field();
    let m = (0..source.quiver().vertex_count())
        .map(|j| {
            let (rows, cols) = (target.dim(j), source.dim(j));
            match maps.get(&(j + 1).to_string()) {
                Some(x) => matrix_from_json(field, rows, cols, x, &format!("vertexMaps.{}", j + 1)),
                None if rows == 0 || cols == 0 => Ok(Matrix::zeros(field, rows, cols)),
                None => Err(err("vertexMaps", format!("missing map at vertex {}", j + 1))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, target, m)
}

pub fn five_term_to_json(e: &FiveTermSequence) -> Value {
    json!({
        "M": rep_to_json(&e.module),
        "terms": {
            "Y_M": rep_to_json(&e.y_lower),
            "X_M": rep_to_json(&e.x_lower),
            "Yup": rep_to_json(&e.y_upper),
            "Xup": rep_to_json(&e.x_upper),
        },
        "maps": e.maps.iter().map(morphism_to_json).collect::<Vec<_>>(),
    })
}

pub fn perp_algebra_to_json(pa: &PerpAlgebra) -> Value {
    let structure: Vec<Value> = pa
        .structure_constants()
        .iter()
        .map(|row| Value::Array(row.iter().map(|c| Value::Array(c.iter().map(scalar_to_json).collect())).collect()))
        .collect();
    let q = pa.l().sum.quiver();
    let (fv, fa) = pa.f_images();
    let vertices: Map<String, Value> = fv.iter().enumerate().map(|(i, e)| (format!("e_{}", i + 1), vector_to_json(e))).collect();
    let arrows: Map<String, Value> = q.arrows().iter().zip(fa).map(|(a, x)| (a.id.clone(), vector_to_json(x))).collect();
    let mut f = vertices;
    f.insert("arrows".into(), Value::Object(arrows));
    json!({
        "dimB": pa.dim(),
        "basis": pa.basis_labels(),
        "structure": structure,
        "f": f,
        "L": rep_to_json(&pa.l().sum),
    })
}

fn proj_map_to_json(q: &Quiver, s: &ProjMap) -> Value {
    let label = |vs: &[usize]| vs.iter().map(|v| format!("P({})", v + 1)).collect::<Vec<_>>();
    let terms: Vec<Value> = s
        .terms
        .iter()
        .map(|t| {
            json!({
                "row": t.row + 1,
                "col": t.col + 1,
                "path": q.path_label(s.target[t.row], &t.path),
                "coeff": scalar_to_json(&t.coeff),
            })
        })
        .collect();
    json!({"source": label(&s.source), "target": label(&s.target), "terms": terms})
}

pub fn localization_to_json(q: &Quiver, data: &LocalizationData) -> Value {
    Value::Array(data.sigma.iter().map(|s| proj_map_to_json(q, s)).collect())
}

pub fn formal_complex_to_json(c: &FormalComplex) -> Value {
    let terms: Map<String, Value> = c.terms().iter().map(|(n, m)| (n.to_string(), rep_to_json(m))).collect();
    json!({"terms": terms})
}

fn degree(key: &str, at: &str) -> Result<i32> {
    key.parse().map_err(|_| err(at, format!("degree {key:?} is not an integer")))
}

pub fn formal_complex_from_json(q: &Arc<Quiver>, field: Field, v: &Value) -> Result<FormalComplex> {
    let terms = as_object(field_of(v, "terms", "complex")?, "terms")?;
    let parsed = terms
        .iter()
        .map(|(k, m)| Ok((degree(k, "terms")?, rep_from_json(q, m).map_err(|e| err(&format!("terms.{k}"), e))?)))
        .collect::<Result<Vec<_>>>()?;
    FormalComplex::from_terms(q, field, parsed)
}

pub fn raw_complex_to_json(c: &RawComplex) -> Value {
    let objects: Map<String, Value> = c
        .objects()
        .iter()
        .enumerate()
        .map(|(k, m)| ((c.start() + k as i32).to_string(), rep_to_json(m)))
        .collect();
    let diffs: Map<String, Value> = c
        .differentials()
        .iter()
        .enumerate()
        .map(|(k, d)| ((c.start() + k as i32).to_string(), morphism_to_json(d)))
        .collect();
    json!({"objects": objects, "differentials": diffs})
}

/// Objects must occupy consecutive degrees; the differential keyed `n`
/// leaves degree `n`.
pub fn raw_complex_from_json(q: &Arc<Quiver>, v: &Value) -> Result<RawComplex> {
    let objs = as_object(field_of(v, "objects", "complex")?, "objects")?;
    let mut by_degree = BTreeMap::new();
    for (k, m) in objs {
        by_degree.insert(degree(k, "objects")?, rep_from_json(q, m).map_err(|e| err(&format!("objects.{k}"), e))?);
    }
    let start = *by_degree.keys().next().ok_or_else(|| err("objects", "complex has no objects"))?;
    let objects: Vec<Representation> = by_degree.values().cloned().collect();
    if by_degree.keys().zip(start..).any(|(&d, e)| d != e) {
        return Err(err("objects", "degrees must be consecutive"));
    }
    let diffs = match v.get("differentials") {
        Some(d) => as_object(d, "differentials")?.clone(),
        None => Map::new(),
    };
    let differentials = (0..objects.len().saturating_sub(1))
        .map(|k| {
            let n = start + k as i32;
            match diffs.get(&n.to_string()) {
                Some(d) => morphism_from_json(&objects[k], &objects[k + 1], d)
                    .map_err(|e| err(&format!("differentials.{n}"), e)),
                None => Ok(Morphism::zero(&objects[k], &objects[k + 1])),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    RawComplex::new(start, objects, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopair::{five_term, make_pair};
    use crate::quiverrep::corpus::{a2, kronecker};
    use crate::quiverrep::{projective, simple};

    #[test]
    fn round_trips() {
        let q = kronecker();
        let qj = quiver_to_json(&q);
        assert_eq!(*quiver_from_json(&qj).unwrap(), *q);
        for field in [Field::Rationals, Field::Prime(5)] {
            let m = crate::quiverrep::corpus::kronecker_preinjective(field, 2).unwrap();
            let back = rep_from_json(&q, &rep_to_json(&m)).unwrap();
            assert_eq!(back, m);
            let id = Morphism::identity(&m);
            assert_eq!(morphism_from_json(&m, &m, &morphism_to_json(&id)).unwrap(), id);
        }
        let half = Field::Rationals.from_ratio(-1, 2).unwrap();
        assert_eq!(scalar_to_json(&half), json!("-1/2"));
    }

    #[test]
    fn diagnostics_name_the_location() {
        let q = a2();
        let bad = json!({"field": {"kind": "Q"}, "dims": [1, 1], "matrices": {"a": [["x"]]}});
        let msg = rep_from_json(&q, &bad).unwrap_err().to_string();
        assert!(msg.contains("matrices.a[0][0]"), "{msg}");
        let bad = json!({"vertices": 2, "arrows": [{"id": "a", "source": 1, "target": 3}]});
        assert!(quiver_from_json(&bad).unwrap_err().to_string().contains("arrows[0].target"));
    }

    #[test]
    fn sequences_and_complexes() {
        let q = a2();
        let s2 = simple(&q, Field::Rationals, 1).unwrap();
        let p1 = projective(&q, Field::Rationals, 0).unwrap();
        let pair = make_pair(&s2).unwrap();
        let e = five_term(&pair, &p1).unwrap();
        let v = five_term_to_json(&e);
        assert_eq!(v["terms"]["Yup"]["dims"], json!([1, 0]));
        let pa = pair.perp_algebra().unwrap();
        assert_eq!(perp_algebra_to_json(pa)["dimB"], json!(1));

        let raw = crate::derived::perfect_presentation(&p1).unwrap();
        let back = raw_complex_from_json(&q, &raw_complex_to_json(&raw)).unwrap();
        assert_eq!(back.objects(), raw.objects());
        let c = crate::derived::cohomology(&raw).unwrap();
        assert_eq!(formal_complex_from_json(&q, Field::Rationals, &formal_complex_to_json(&c)).unwrap(), c);
    }
}
