//! JSON structure files: sparse tensors as (multi-index, scalar) triplets.
//!
//! Serialization is canonical: entries in row-major index order, zeros
//! dropped, scalars in lowest terms, object keys sorted.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::bialgebroid::{Bialgebroid, HopfAlgebroid};
use crate::bimodule::{BaseAlgebra, FiniteSpace};
use crate::category::{CoupledHopfCategory, Enrichment, FiniteLinearCategory, PairMap};
use crate::constructions::{Character, GroupoidArrow, GroupoidPresentation, HopfAlgebraData, WeakHopfData};
use crate::error::FileError;
use crate::galois::ComoduleAlgebra;
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::ring::{Algebra, Side};

pub const SCHEMA_VERSION: u64 = 1;
pub const DEFAULT_MAX_DIM: usize = 128;

/// Cap on every declared dimension, from `HOPFOID_MAX_DIM`.
pub fn max_dim() -> usize {
    std::env::var("HOPFOID_MAX_DIM").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    HopfAlgebra(HopfAlgebraData),
    HopfAlgebroid(HopfAlgebroid),
    WeakHopf(WeakHopfData),
    Groupoid(GroupoidPresentation),
    Category(CoupledHopfCategory),
    ComoduleAlgebra(ComoduleAlgebra),
    Character(Character),
    Subalgebra(Subspace),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::HopfAlgebra(_) => "hopf-algebra",
            Structure::HopfAlgebroid(_) => "hopf-algebroid",
            Structure::WeakHopf(_) => "weak-hopf",
            Structure::Groupoid(_) => "groupoid",
            Structure::Category(_) => "category",
            Structure::ComoduleAlgebra(_) => "comodule-algebra",
            Structure::Character(_) => "character",
            Structure::Subalgebra(_) => "subalgebra",
        }
    }
}

pub const KINDS: [&str; 8] =
    ["hopf-algebra", "hopf-algebroid", "weak-hopf", "groupoid", "category", "comodule-algebra", "character", "subalgebra"];

// ---- writing ----

fn tensor(m: &Matrix, shape: &[usize], row_axes: usize) -> Value {
    let unravel = |mut i: usize, dims: &[usize]| {
        let mut out = vec![0; dims.len()];
        for (slot, d) in out.iter_mut().zip(dims).rev() {
            *slot = i % d;
            i /= d;
        }
        out
    };
    let (rdims, cdims) = shape.split_at(row_axes);
    let mut entries = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                let mut idx = unravel(r, rdims);
                idx.extend(unravel(c, cdims));
                entries.push(json!([idx, v.to_string()]));
            }
        }
    }
    json!({ "shape": shape, "entries": entries })
}

fn vector(v: &[Scalar]) -> Value {
    tensor(&Matrix::column_vector(v.to_vec()), &[v.len()], 1)
}

fn pair_key(name: &str, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
    format!("{name}:{}", parts.join(","))
}

fn algebra_tensors(t: &mut Map<String, Value>, a: &Algebra) {
    let n = a.dim();
    t.insert("mul".into(), tensor(a.mul_tensor(), &[n, n, n], 1));
    t.insert("unit".into(), vector(a.unit()));
}

fn hopf_tensors(a: &Algebra, delta: &Matrix, counit: &[Scalar], antipode: &Matrix) -> Map<String, Value> {
    let n = a.dim();
    let mut t = Map::new();
    algebra_tensors(&mut t, a);
    t.insert("delta".into(), tensor(delta, &[n, n, n], 2));
    t.insert("counit".into(), vector(counit));
    t.insert("antipode".into(), tensor(antipode, &[n, n], 1));
    t
}

fn document(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("kind".into(), json!(kind));
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

pub fn to_json(s: &Structure) -> Value {
    match s {
        Structure::HopfAlgebra(h) => {
            document(s.kind(), vec![("dim", json!(h.dim())), ("tensors", Value::Object(hopf_tensors(&h.algebra, &h.delta, &h.counit, &h.antipode)))])
        }
        Structure::WeakHopf(h) => {
            document(s.kind(), vec![("dim", json!(h.dim())), ("tensors", Value::Object(hopf_tensors(&h.algebra, &h.delta, &h.counit, &h.antipode)))])
        }
        Structure::HopfAlgebroid(h) => {
            let (n, k) = (h.dim(), h.base().dim());
            let mut t = Map::new();
            algebra_tensors(&mut t, h.algebra());
            t.insert("antipode".into(), tensor(&h.antipode, &[n, n], 1));
            for (name, b) in [("left", &h.left), ("right", &h.right)] {
                t.insert(format!("{name}.source"), tensor(&b.source, &[n, k], 1));
                t.insert(format!("{name}.target"), tensor(&b.target, &[n, k], 1));
                t.insert(format!("{name}.delta"), tensor(&b.delta, &[n, n, n], 2));
                t.insert(format!("{name}.counit"), tensor(&b.counit, &[k, n], 1));
            }
            document(s.kind(), vec![("base", json!(h.base().space().labels())), ("dim", json!(n)), ("tensors", Value::Object(t))])
        }
        Structure::Groupoid(g) => {
            let compose: Vec<Value> = g.compose.iter().map(|(&(f, h), &fh)| json!([f, h, fh])).collect();
            document(
                s.kind(),
                vec![
                    ("objects", json!(g.objects)),
                    ("arrows", json!(g.arrows)),
                    ("identities", json!(g.identities)),
                    ("inverses", json!(g.inverses)),
                    ("compose", json!(compose)),
                ],
            )
        }
        Structure::Category(c) => {
            let cat = &c.category;
            let mut t = Map::new();
            for (&(x, y, z), m) in &cat.compose {
                t.insert(pair_key("compose", &[x, y, z]), tensor(m, &[cat.dim(x, z), cat.dim(x, y), cat.dim(y, z)], 1));
            }
            for (x, id) in cat.identities.iter().enumerate() {
                t.insert(pair_key("identity", &[x]), vector(id));
            }
            for (name, e) in [("left", &c.left), ("right", &c.right)] {
                for (&(x, y), m) in &e.delta {
                    let d = cat.dim(x, y);
                    t.insert(pair_key(&format!("{name}.delta"), &[x, y]), tensor(m, &[d, d, d], 2));
                }
                for (&(x, y), v) in &e.counit {
                    t.insert(pair_key(&format!("{name}.counit"), &[x, y]), vector(v));
                }
            }
            for (&(x, y), m) in &c.coupling {
                t.insert(pair_key("coupling", &[x, y]), tensor(m, &[cat.dim(y, x), cat.dim(x, y)], 1));
            }
            document(s.kind(), vec![("objects", json!(cat.objects.labels())), ("dims", json!(cat.dims)), ("tensors", Value::Object(t))])
        }
        Structure::ComoduleAlgebra(m) => {
            let (d, k) = (m.dim(), m.unit_map.cols());
            let n = m.rho_right.rows() / d.max(1);
            let mut t = Map::new();
            algebra_tensors(&mut t, &m.algebra);
            t.insert("unit_map".into(), tensor(&m.unit_map, &[d, k], 1));
            for (x, a) in m.right_r.iter().enumerate() {
                t.insert(pair_key("right_r", &[x]), tensor(a, &[d, d], 1));
            }
            for (x, a) in m.right_l.iter().enumerate() {
                t.insert(pair_key("right_l", &[x]), tensor(a, &[d, d], 1));
            }
            t.insert("rho_right".into(), tensor(&m.rho_right, &[d, n, d], 2));
            t.insert("rho_left".into(), tensor(&m.rho_left, &[d, n, d], 2));
            document(s.kind(), vec![("base_dim", json!(k)), ("dim", json!(d)), ("coefficient_dim", json!(n)), ("tensors", Value::Object(t))])
        }
        Structure::Character(c) => {
            let mut t = Map::new();
            t.insert("values".into(), vector(&c.values));
            document(s.kind(), vec![("dim", json!(c.values.len())), ("tensors", Value::Object(t))])
        }
        Structure::Subalgebra(sub) => {
            let n = sub.ambient_dim();
            let mut t = Map::new();
            t.insert("basis".into(), tensor(sub.basis(), &[sub.dim(), n], 1));
            document(s.kind(), vec![("dim", json!(n)), ("tensors", Value::Object(t))])
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_string(s: &Structure) -> String {
    let mut out = serde_json::to_string_pretty(&to_json(s)).expect("values serialize");
    out.push('\n');
    out
}

// ---- reading ----

#[derive(Clone, Copy)]
struct Node<'a> {
    v: &'a Value,
    path: &'a str,
}

struct Reader {
    limit: usize,
}

fn schema(path: &str, msg: impl Into<String>) -> FileError {
    FileError::schema(path, msg)
}

impl Reader {
    fn dim(&self, _path: &str, d: usize) -> Result<usize, FileError> {
        if d > self.limit {
            return Err(FileError::TooLarge { dim: d, limit: self.limit });
        }
        Ok(d)
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, FileError> {
    obj.get(key).ok_or_else(|| schema(path, format!("missing field `{key}`")))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FileError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FileError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, FileError> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_string(v: &Value, path: &str) -> Result<String, FileError> {
    v.as_str().map(str::to_string).ok_or_else(|| schema(path, "expected a string"))
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>, FileError> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| as_usize(x, &format!("{path}[{i}]"))).collect()
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>, FileError> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| as_string(x, &format!("{path}[{i}]"))).collect()
}

fn only_fields(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), FileError> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(schema(&format!("{path}.{k}"), "unknown field"));
        }
    }
    Ok(())
}

/// The tensor table, consumed key by key so leftovers can be reported.
struct Tensors<'a> {
    map: BTreeMap<&'a str, &'a Value>,
    path: String,
}

impl<'a> Tensors<'a> {
    fn new(obj: &'a Map<String, Value>, path: &str) -> Result<Self, FileError> {
        let t = as_object(field(obj, path, "tensors")?, &format!("{path}.tensors"))?;
        Ok(Tensors { map: t.iter().map(|(k, v)| (k.as_str(), v)).collect(), path: format!("{path}.tensors") })
    }

    fn take(&mut self, key: &str, shape: &[usize], row_axes: usize) -> Result<Matrix, FileError> {
        let path = format!("{}.{key}", self.path);
        let v = self.map.remove(key).ok_or_else(|| schema(&self.path, format!("missing tensor `{key}`")))?;
        read_tensor(Node { v, path: &path }, shape, row_axes)
    }

    fn take_vector(&mut self, key: &str, n: usize) -> Result<Vec<Scalar>, FileError> {
        Ok(self.take(key, &[n], 1)?.column(0))
    }

    fn finish(self) -> Result<(), FileError> {
        match self.map.keys().next() {
            Some(k) => Err(schema(&format!("{}.{k}", self.path), "unexpected tensor")),
            None => Ok(()),
        }
    }
}

fn read_tensor(node: Node<'_>, shape: &[usize], row_axes: usize) -> Result<Matrix, FileError> {
    let path = node.path;
    let obj = as_object(node.v, path)?;
    only_fields(obj, path, &["shape", "entries"])?;
    let declared = usize_list(field(obj, path, "shape")?, &format!("{path}.shape"))?;
    if declared != shape {
        return Err(schema(&format!("{path}.shape"), format!("expected shape {shape:?}, found {declared:?}")));
    }
    let rows: usize = shape[..row_axes].iter().product();
    let cols: usize = shape[row_axes..].iter().product();
    let mut m = Matrix::zeros(rows, cols);
    let mut seen = std::collections::BTreeSet::new();
    for (e, entry) in as_array(field(obj, path, "entries")?, &format!("{path}.entries"))?.iter().enumerate() {
        let ep = format!("{path}.entries[{e}]");
        let pair = as_array(entry, &ep)?;
        if pair.len() != 2 {
            return Err(schema(&ep, "expected [index, scalar]"));
        }
        let idx = usize_list(&pair[0], &format!("{ep}[0]"))?;
        if idx.len() != shape.len() {
            return Err(schema(&format!("{ep}[0]"), format!("index needs {} components", shape.len())));
        }
        for (a, (&i, &d)) in idx.iter().zip(shape).enumerate() {
            if i >= d {
                return Err(schema(&format!("{ep}[0][{a}]"), format!("index {i} out of range 0..{d}")));
            }
        }
        if !seen.insert(idx.clone()) {
            return Err(schema(&format!("{ep}[0]"), "duplicate index"));
        }
        let sp = format!("{ep}[1]");
        let raw = as_string(&pair[1], &sp)?;
        let value: Scalar = raw.parse().map_err(|source| FileError::Scalar { path: sp, source })?;
        let ravel = |ix: &[usize], dims: &[usize]| ix.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i);
        let r = ravel(&idx[..row_axes], &shape[..row_axes]);
        let c = ravel(&idx[row_axes..], &shape[row_axes..]);
        m.set(r, c, value);
    }
    Ok(m)
}

fn read_algebra(t: &mut Tensors<'_>, n: usize) -> Result<Algebra, FileError> {
    let mul = t.take("mul", &[n, n, n], 1)?;
    let unit = t.take_vector("unit", n)?;
    Ok(Algebra::new(mul, unit)?)
}

fn parse_pair_key(key: &str, prefix: &str, arity: usize, k: usize, path: &str) -> Result<Option<Vec<usize>>, FileError> {
    let Some(rest) = key.strip_prefix(prefix).and_then(|r| r.strip_prefix(':')) else {
        return Ok(None);
    };
    let idx: Result<Vec<usize>, _> = rest.split(',').map(str::parse).collect();
    match idx {
        Ok(v) if v.len() == arity && v.iter().all(|&i| i < k) => Ok(Some(v)),
        _ => Err(schema(&format!("{path}.{key}"), format!("expected {prefix}:{} with objects below {k}", vec!["i"; arity].join(",")))),
    }
}

pub fn parse_structure(bytes: &[u8]) -> Result<Structure, FileError> {
    parse_structure_with_limit(bytes, max_dim())
}

pub fn parse_structure_with_limit(bytes: &[u8], limit: usize) -> Result<Structure, FileError> {
    let value: Value = serde_json::from_slice(bytes)?;
    from_json(&value, limit)
}

pub fn from_json(value: &Value, limit: usize) -> Result<Structure, FileError> {
    let r = Reader { limit };
    let root = "$";
    let obj = as_object(value, root)?;
    let kind = as_string(field(obj, root, "kind")?, "$.kind")?;
    let version = as_usize(field(obj, root, "schema_version")?, "$.schema_version")?;
    if version as u64 != SCHEMA_VERSION {
        return Err(schema("$.schema_version", format!("unsupported version {version}, expected {SCHEMA_VERSION}")));
    }
    let common = ["schema_version", "kind"];
    let allow = |extra: &[&'static str]| -> Vec<&'static str> { common.iter().chain(extra).copied().collect() };
    let dim = |key: &str| -> Result<usize, FileError> {
        let p = format!("$.{key}");
        r.dim(&p, as_usize(field(obj, root, key)?, &p)?)
    };
    match kind.as_str() {
        "hopf-algebra" | "weak-hopf" => {
            only_fields(obj, root, &allow(&["dim", "tensors"]))?;
            let n = dim("dim")?;
            let mut t = Tensors::new(obj, root)?;
            let algebra = read_algebra(&mut t, n)?;
            let delta = t.take("delta", &[n, n, n], 2)?;
            let counit = t.take_vector("counit", n)?;
            let antipode = t.take("antipode", &[n, n], 1)?;
            t.finish()?;
            Ok(if kind == "weak-hopf" {
                Structure::WeakHopf(WeakHopfData { algebra, delta, counit, antipode })
            } else {
                Structure::HopfAlgebra(HopfAlgebraData { algebra, delta, counit, antipode })
            })
        }
        "hopf-algebroid" => {
            only_fields(obj, root, &allow(&["base", "dim", "tensors"]))?;
            let labels = string_list(field(obj, root, "base")?, "$.base")?;
            let k = r.dim("$.base", labels.len())?;
            let n = dim("dim")?;
            let base = BaseAlgebra::new(FiniteSpace::new(labels).map_err(|e| schema("$.base", e.to_string()))?);
            let mut t = Tensors::new(obj, root)?;
            let algebra = read_algebra(&mut t, n)?;
            let antipode = t.take("antipode", &[n, n], 1)?;
            let mut side = |name: &str, s: Side| -> Result<Bialgebroid, FileError> {
                let source = t.take(&format!("{name}.source"), &[n, k], 1)?;
                let target = t.take(&format!("{name}.target"), &[n, k], 1)?;
                let delta = t.take(&format!("{name}.delta"), &[n, n, n], 2)?;
                let counit = t.take(&format!("{name}.counit"), &[k, n], 1)?;
                Ok(Bialgebroid::new(s, base.clone(), algebra.clone(), source, target, delta, counit)?)
            };
            let left = side("left", Side::Left)?;
            let right = side("right", Side::Right)?;
            t.finish()?;
            Ok(Structure::HopfAlgebroid(HopfAlgebroid::new(left, right, antipode)?))
        }
        "groupoid" => {
            only_fields(obj, root, &allow(&["objects", "arrows", "identities", "inverses", "compose"]))?;
            let objects = string_list(field(obj, root, "objects")?, "$.objects")?;
            r.dim("$.objects", objects.len())?;
            let mut arrows = Vec::new();
            for (i, a) in as_array(field(obj, root, "arrows")?, "$.arrows")?.iter().enumerate() {
                let p = format!("$.arrows[{i}]");
                let ao = as_object(a, &p)?;
                only_fields(ao, &p, &["name", "source", "target"])?;
                arrows.push(GroupoidArrow {
                    name: as_string(field(ao, &p, "name")?, &format!("{p}.name"))?,
                    source: as_usize(field(ao, &p, "source")?, &format!("{p}.source"))?,
                    target: as_usize(field(ao, &p, "target")?, &format!("{p}.target"))?,
                });
            }
            r.dim("$.arrows", arrows.len())?;
            let identities = usize_list(field(obj, root, "identities")?, "$.identities")?;
            let inverses = usize_list(field(obj, root, "inverses")?, "$.inverses")?;
            let mut compose = BTreeMap::new();
            for (i, c) in as_array(field(obj, root, "compose")?, "$.compose")?.iter().enumerate() {
                let p = format!("$.compose[{i}]");
                let t = usize_list(c, &p)?;
                if t.len() != 3 {
                    return Err(schema(&p, "expected [f, g, f∘g]"));
                }
                if compose.insert((t[0], t[1]), t[2]).is_some() {
                    return Err(schema(&p, "duplicate composite"));
                }
            }
            let g = GroupoidPresentation { objects, arrows, identities, inverses, compose };
            g.validate()?;
            Ok(Structure::Groupoid(g))
        }
        "category" => {
            only_fields(obj, root, &allow(&["objects", "dims", "tensors"]))?;
            let labels = string_list(field(obj, root, "objects")?, "$.objects")?;
            let k = r.dim("$.objects", labels.len())?;
            let rows = as_array(field(obj, root, "dims")?, "$.dims")?;
            if rows.len() != k {
                return Err(schema("$.dims", format!("expected {k} rows")));
            }
            let mut dims = Vec::new();
            for (x, row) in rows.iter().enumerate() {
                let p = format!("$.dims[{x}]");
                let row = usize_list(row, &p)?;
                if row.len() != k {
                    return Err(schema(&p, format!("expected {k} entries")));
                }
                for (y, &d) in row.iter().enumerate() {
                    r.dim(&format!("{p}[{y}]"), d)?;
                }
                dims.push(row);
            }
            let objects = FiniteSpace::new(labels).map_err(|e| schema("$.objects", e.to_string()))?;
            let mut t = Tensors::new(obj, root)?;
            let keys: Vec<String> = t.map.keys().map(|s| s.to_string()).collect();
            let tp = t.path.clone();
            let mut compose = BTreeMap::new();
            let mut identities = vec![None; k];
            let (mut left, mut right) = (Enrichment::default(), Enrichment::default());
            let mut coupling: PairMap<Matrix> = PairMap::new();
            for key in &keys {
                if let Some(i) = parse_pair_key(key, "compose", 3, k, &tp)? {
                    let (x, y, z) = (i[0], i[1], i[2]);
                    compose.insert((x, y, z), t.take(key, &[dims[x][z], dims[x][y], dims[y][z]], 1)?);
                } else if let Some(i) = parse_pair_key(key, "identity", 1, k, &tp)? {
                    identities[i[0]] = Some(t.take_vector(key, dims[i[0]][i[0]])?);
                } else if let Some(i) = parse_pair_key(key, "coupling", 2, k, &tp)? {
                    let (x, y) = (i[0], i[1]);
                    coupling.insert((x, y), t.take(key, &[dims[y][x], dims[x][y]], 1)?);
                } else {
                    for (name, e) in [("left", &mut left), ("right", &mut right)] {
                        if let Some(i) = parse_pair_key(key, &format!("{name}.delta"), 2, k, &tp)? {
                            let d = dims[i[0]][i[1]];
                            e.delta.insert((i[0], i[1]), t.take(key, &[d, d, d], 2)?);
                        } else if let Some(i) = parse_pair_key(key, &format!("{name}.counit"), 2, k, &tp)? {
                            e.counit.insert((i[0], i[1]), t.take_vector(key, dims[i[0]][i[1]])?);
                        }
                    }
                }
            }
            t.finish()?;
            let identities = identities
                .into_iter()
                .enumerate()
                .map(|(x, v)| v.ok_or_else(|| schema(&tp, format!("missing tensor `identity:{x}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let category = FiniteLinearCategory::new(objects, dims, compose, identities)?;
            left.validate(&category)?;
            right.validate(&category)?;
            Ok(Structure::Category(CoupledHopfCategory { category, left, right, coupling }))
        }
        "comodule-algebra" => {
            only_fields(obj, root, &allow(&["base_dim", "dim", "coefficient_dim", "tensors"]))?;
            let k = dim("base_dim")?;
            let d = dim("dim")?;
            let n = dim("coefficient_dim")?;
            let mut t = Tensors::new(obj, root)?;
            let algebra = read_algebra(&mut t, d)?;
            let unit_map = t.take("unit_map", &[d, k], 1)?;
            let right_r = (0..k).map(|x| t.take(&pair_key("right_r", &[x]), &[d, d], 1)).collect::<Result<Vec<_>, _>>()?;
            let right_l = (0..k).map(|x| t.take(&pair_key("right_l", &[x]), &[d, d], 1)).collect::<Result<Vec<_>, _>>()?;
            let rho_right = t.take("rho_right", &[d, n, d], 2)?;
            let rho_left = t.take("rho_left", &[d, n, d], 2)?;
            t.finish()?;
            Ok(Structure::ComoduleAlgebra(ComoduleAlgebra { algebra, unit_map, right_r, right_l, rho_right, rho_left }))
        }
        "character" => {
            only_fields(obj, root, &allow(&["dim", "tensors"]))?;
            let n = dim("dim")?;
            let mut t = Tensors::new(obj, root)?;
            let values = t.take_vector("values", n)?;
            t.finish()?;
            Ok(Structure::Character(Character { values }))
        }
        "subalgebra" => {
            only_fields(obj, root, &allow(&["dim", "tensors"]))?;
            let n = dim("dim")?;
            let t = Tensors::new(obj, root)?;
            let rows = match t.map.get("basis") {
                Some(v) => {
                    let p = format!("{}.basis", t.path);
                    let shape = as_object(v, &p).ok().and_then(|o| o.get("shape")).and_then(|s| s.as_array()).and_then(|a| a.first()).and_then(Value::as_u64);
                    r.dim(&p, shape.unwrap_or(0) as usize)?
                }
                None => 0,
            };
            let mut t = t;
            let basis = t.take("basis", &[rows, n], 1)?;
            t.finish()?;
            Ok(Structure::Subalgebra(Subspace::from_rows(&basis)))
        }
        other => Err(schema("$.kind", format!("unknown kind {other:?}, expected one of {}", KINDS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{library, matrix_hopf_algebroid, HopfAlgebraData};
    use crate::correspondence::algebroid_to_category;

    fn round_trip(s: &Structure) {
        let text = to_string(s);
        let back = parse_structure_with_limit(text.as_bytes(), DEFAULT_MAX_DIM).unwrap();
        assert_eq!(&back, s);
        assert_eq!(to_string(&back), text);
    }

    #[test]
    fn matrix_two_is_a_fixpoint() {
        round_trip(&Structure::HopfAlgebroid(matrix_hopf_algebroid(2).unwrap()));
    }

    #[test]
    fn every_kind_round_trips() {
        let h = matrix_hopf_algebroid(2).unwrap();
        round_trip(&Structure::HopfAlgebra(HopfAlgebraData::cyclic_group(4)));
        round_trip(&Structure::WeakHopf(WeakHopfData::matrix(2).unwrap()));
        round_trip(&Structure::Groupoid(GroupoidPresentation::pair(2).disjoint_union(&GroupoidPresentation::cyclic_group(2))));
        round_trip(&Structure::Category(algebroid_to_category(&h).unwrap().category));
        round_trip(&Structure::ComoduleAlgebra(ComoduleAlgebra::regular(&h)));
        round_trip(&Structure::Character(Character { values: vec![Scalar::one(), Scalar::i()] }));
        round_trip(&Structure::Subalgebra(Subspace::span(4, &[crate::linalg::unit_vec(4, 0)])));
        for (_, h) in library() {
            round_trip(&Structure::HopfAlgebroid(h));
        }
    }

    #[test]
    fn zero_denominator_is_reported_at_its_path() {
        let mut v = to_json(&Structure::HopfAlgebra(HopfAlgebraData::cyclic_group(2)));
        v["tensors"]["counit"]["entries"][0][1] = json!("1/0");
        let err = from_json(&v, DEFAULT_MAX_DIM).unwrap_err();
        match err {
            FileError::Scalar { path, .. } => assert_eq!(path, "$.tensors.counit.entries[0][1]"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn empty_object_misses_kind() {
        let err = parse_structure(b"{}").unwrap_err();
        assert!(err.to_string().contains("missing field `kind`"), "{err}");
    }

    #[test]
    fn bad_inputs() {
        let base = to_json(&Structure::HopfAlgebra(HopfAlgebraData::cyclic_group(2)));
        let mut v = base.clone();
        v["tensors"]["mul"]["entries"][0][0] = json!([0, 0, 5]);
        assert!(from_json(&v, 128).unwrap_err().to_string().contains("out of range"));
        let mut v = base.clone();
        v["tensors"].as_object_mut().unwrap().remove("delta");
        assert!(from_json(&v, 128).unwrap_err().to_string().contains("missing tensor `delta`"));
        let mut v = base.clone();
        v["kind"] = json!("monoid");
        assert!(from_json(&v, 128).unwrap_err().to_string().contains("unknown kind"));
        assert!(matches!(from_json(&base, 1), Err(FileError::TooLarge { dim: 2, limit: 1 })));
        assert!(matches!(parse_structure(b"{"), Err(FileError::Json(_))));
    }
}
