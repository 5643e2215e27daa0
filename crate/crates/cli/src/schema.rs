//! JSON encodings of the core types (schema version 1).
//!
//! Rationals travel as decimal-free strings (`"3/4"`, `"-2"`); plain JSON
//! integers are accepted on input and normalized to strings on output.
//! Matrices are row-major arrays of rows. A lattice lists its generators as
//! vectors, one per row.

use std::fmt;

use serde_json::{json, Map, Value};

use wmtrop_core::monodromy::Filtration;
use wmtrop_core::rational::{format_rational, parse_rational};
use wmtrop_core::ratlin::Matrix;
use wmtrop_core::tropbundle::{AffineFunction, BundleData, TropicalSection};
use wmtrop_core::troplattice::{CellWidth, TropicalLattice};
use wmtrop_core::Rational;

pub const SCHEMA_VERSION: u64 = 1;

/// Input that does not match the schema; `field` is a path such as
/// `bundle.lattice.generators[0][1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub field: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for SchemaError {}

pub type SchemaResult<T> = Result<T, SchemaError>;

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Object with a fixed key set; unknown keys are rejected.
pub struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Obj<'a> {
    pub fn new(v: &'a Value, path: &str, allowed: &[&str]) -> SchemaResult<Self> {
        let map = v.as_object().ok_or_else(|| SchemaError::new(field_name(path), "expected an object"))?;
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(SchemaError::new(join(path, k), "unknown field"));
        }
        Ok(Obj { map, path: path.to_string() })
    }

    pub fn path(&self, key: &str) -> String {
        join(&self.path, key)
    }

    pub fn get(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }

    pub fn req(&self, key: &str) -> SchemaResult<&'a Value> {
        self.get(key).ok_or_else(|| SchemaError::new(self.path(key), "missing required field"))
    }

    pub fn i64(&self, key: &str) -> SchemaResult<i64> {
        self.req(key)?.as_i64().ok_or_else(|| SchemaError::new(self.path(key), "expected an integer"))
    }

    pub fn u64(&self, key: &str) -> SchemaResult<u64> {
        self.req(key)?.as_u64().ok_or_else(|| SchemaError::new(self.path(key), "expected a non-negative integer"))
    }

    pub fn opt_u64(&self, key: &str) -> SchemaResult<Option<u64>> {
        self.get(key).map(|_| self.u64(key)).transpose()
    }

    pub fn u32(&self, key: &str) -> SchemaResult<u32> {
        u32::try_from(self.u64(key)?).map_err(|_| SchemaError::new(self.path(key), "integer too large"))
    }

    pub fn opt_u32(&self, key: &str) -> SchemaResult<Option<u32>> {
        self.get(key).map(|_| self.u32(key)).transpose()
    }

    pub fn opt_bool(&self, key: &str) -> SchemaResult<Option<bool>> {
        self.get(key)
            .map(|v| v.as_bool().ok_or_else(|| SchemaError::new(self.path(key), "expected a boolean")))
            .transpose()
    }

    pub fn rational(&self, key: &str) -> SchemaResult<Rational> {
        parse_rational_value(self.req(key)?, &self.path(key))
    }

    pub fn opt_rational(&self, key: &str) -> SchemaResult<Option<Rational>> {
        self.get(key).map(|v| parse_rational_value(v, &self.path(key))).transpose()
    }
}

fn field_name(path: &str) -> String {
    if path.is_empty() {
        "<root>".to_string()
    } else {
        path.to_string()
    }
}

/// Checks `schema_version` on a top-level job object.
pub fn check_version(obj: &Obj<'_>) -> SchemaResult<()> {
    match obj.u64("schema_version")? {
        SCHEMA_VERSION => Ok(()),
        v => Err(SchemaError::new(obj.path("schema_version"), format!("unsupported version {v} (expected 1)"))),
    }
}

pub fn parse_rational_value(v: &Value, path: &str) -> SchemaResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| SchemaError::new(path, e.to_string())),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|e| SchemaError::new(path, e.to_string()))
        }
        Value::Number(_) => Err(SchemaError::new(path, "floats are not accepted; use a string such as \"3/4\"")),
        _ => Err(SchemaError::new(path, "expected a rational string or integer")),
    }
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn parse_vector(v: &Value, path: &str) -> SchemaResult<Vec<Rational>> {
    let arr = v.as_array().ok_or_else(|| SchemaError::new(path, "expected an array"))?;
    arr.iter().enumerate().map(|(i, x)| parse_rational_value(x, &format!("{path}[{i}]"))).collect()
}

pub fn parse_matrix(v: &Value, path: &str) -> SchemaResult<Matrix> {
    let rows = v.as_array().ok_or_else(|| SchemaError::new(path, "expected an array of rows"))?;
    let parsed: Vec<Vec<Rational>> =
        rows.iter().enumerate().map(|(i, r)| parse_vector(r, &format!("{path}[{i}]"))).collect::<Result<_, _>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if let Some(i) = parsed.iter().position(|r| r.len() != cols) {
        return Err(SchemaError::new(
            format!("{path}[{i}]"),
            format!("ragged matrix: row has {} entries, expected {cols}", parsed[i].len()),
        ));
    }
    Matrix::from_rows(parsed, cols).map_err(|e| SchemaError::new(path, e.to_string()))
}

pub fn parse_square(v: &Value, path: &str) -> SchemaResult<Matrix> {
    let m = parse_matrix(v, path)?;
    if !m.is_square() {
        return Err(SchemaError::new(path, format!("expected a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector_to_json(r)).collect())
}

/// `{rank, generators}`, generators given as vectors (rows).
pub fn parse_lattice(v: &Value, path: &str) -> SchemaResult<TropicalLattice> {
    let o = Obj::new(v, path, &["rank", "generators"])?;
    let rank = o.u64("rank")? as usize;
    let gens = parse_matrix(o.req("generators")?, &o.path("generators"))?;
    if gens.rows() != rank || gens.cols() != rank {
        return Err(SchemaError::new(
            o.path("generators"),
            format!("expected {rank} generators of length {rank}, got {}x{}", gens.rows(), gens.cols()),
        ));
    }
    if rank == 0 {
        return Err(SchemaError::new(o.path("rank"), "rank must be positive"));
    }
    TropicalLattice::new(gens.transpose()).map_err(|e| SchemaError::new(o.path("generators"), e.to_string()))
}

pub fn lattice_to_json(lat: &TropicalLattice) -> Value {
    json!({ "rank": lat.rank(), "generators": matrix_to_json(&lat.generators().transpose()) })
}

pub fn parse_width(v: &Value, path: &str) -> SchemaResult<CellWidth> {
    CellWidth::new(parse_rational_value(v, path)?).map_err(|e| SchemaError::new(path, e.to_string()))
}

/// `{lattice, sigma, chi, abelian_part_ample?}`; `sigma` is the integer
/// matrix of σ and `chi` the valuations `ℓ(χ(mᵢ))`.
pub fn parse_bundle(v: &Value, path: &str) -> SchemaResult<BundleData> {
    let o = Obj::new(v, path, &["lattice", "sigma", "chi", "abelian_part_ample"])?;
    let lattice = parse_lattice(o.req("lattice")?, &o.path("lattice"))?;
    let sigma = parse_matrix(o.req("sigma")?, &o.path("sigma"))?;
    let chi = parse_vector(o.req("chi")?, &o.path("chi"))?;
    let r = lattice.rank();
    if sigma.rows() != r || sigma.cols() != r {
        return Err(SchemaError::new(o.path("sigma"), format!("expected {r}x{r}, got {}x{}", sigma.rows(), sigma.cols())));
    }
    if chi.len() != r {
        return Err(SchemaError::new(o.path("chi"), format!("expected {r} values, got {}", chi.len())));
    }
    let mut b = BundleData::new(lattice, sigma, chi).map_err(|e| SchemaError::new(o.path("sigma"), e.to_string()))?;
    if let Some(a) = o.opt_bool("abelian_part_ample")? {
        b.abelian_part_ample = a;
    }
    Ok(b)
}

pub fn bundle_to_json(b: &BundleData) -> Value {
    json!({
        "lattice": lattice_to_json(b.lattice()),
        "sigma": matrix_to_json(b.sigma()),
        "chi": vector_to_json(b.chi_vals()),
        "abelian_part_ample": b.abelian_part_ample,
    })
}

/// `{alpha, slopes, base_value?, lambda?, slope_increment?, value_increment?}`.
/// Omitted periodicity data is taken from the bundle when one is given.
pub fn parse_section(v: &Value, path: &str, defaults: Option<(&Rational, &Rational, &Rational)>) -> SchemaResult<TropicalSection> {
    let o = Obj::new(v, path, &["alpha", "lambda", "slopes", "base_value", "slope_increment", "value_increment"])?;
    let alpha = parse_width(o.req("alpha")?, &o.path("alpha"))?;
    let slopes = parse_vector(o.req("slopes")?, &o.path("slopes"))?;
    if slopes.is_empty() {
        return Err(SchemaError::new(o.path("slopes"), "at least one cell is required"));
    }
    let pick = |key: &str, default: Option<&Rational>| -> SchemaResult<Rational> {
        match (o.opt_rational(key)?, default) {
            (Some(x), _) => Ok(x),
            (None, Some(d)) => Ok(d.clone()),
            (None, None) => Err(SchemaError::new(o.path(key), "missing required field")),
        }
    };
    Ok(TropicalSection {
        lambda: pick("lambda", defaults.map(|d| d.0))?,
        slope_increment: pick("slope_increment", defaults.map(|d| d.1))?,
        value_increment: pick("value_increment", defaults.map(|d| d.2))?,
        base_value: o.opt_rational("base_value")?.unwrap_or_default(),
        alpha,
        slopes,
    })
}

pub fn section_to_json(f: &TropicalSection) -> Value {
    json!({
        "alpha": rational_to_json(f.alpha.value()),
        "lambda": rational_to_json(&f.lambda),
        "slopes": vector_to_json(&f.slopes),
        "base_value": rational_to_json(&f.base_value),
        "slope_increment": rational_to_json(&f.slope_increment),
        "value_increment": rational_to_json(&f.value_increment),
    })
}

pub fn affine_to_json(a: &AffineFunction) -> Value {
    json!({ "slope": vector_to_json(&a.slope), "constant": rational_to_json(&a.constant) })
}

pub fn filtration_to_json(f: &Filtration) -> Value {
    let pieces: Vec<Value> = (f.lo()..=f.hi())
        .map(|j| {
            let p = f.piece(j);
            json!({ "index": j, "dim": p.dim(), "basis": matrix_to_json(p.basis()) })
        })
        .collect();
    let graded: Vec<Value> = f.jumps().iter().map(|&j| json!({ "index": j, "dim": f.graded_dim(j) })).collect();
    json!({ "ambient_dim": f.ambient_dim(), "pieces": pieces, "graded": graded })
}
