//! File formats: complexes, facet lists, hypergraphs, signals, labels,
//! trajectories, tensors, and decomposition reports.
//!
//! Readers go through serde_json and accept anything structurally valid.
//! Writers emit bytes deterministically: fixed key order, no maps with
//! unstable iteration, and every float printed with 17 significant digits
//! (`{:.16e}`), which round-trips f64 exactly.

use std::fmt::Write as _;
use std::path::Path;

use ndarray::{Array1, Array2};
use serde_json::Value;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hodge::HodgeDecomposition;
use crate::hypergraph::Hypergraph;
use crate::tensor::SymTensor;

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), source }
}

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::Malformed { path: path.display().to_string(), reason: reason.into() }
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

/// Deterministic float formatting: 17 significant digits, valid JSON.
pub fn fmt_f64(x: f64) -> String {
    debug_assert!(x.is_finite(), "refusing to serialize non-finite float");
    format!("{x:.16e}")
}

fn parse_json(path: &Path, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(path, e.to_string()))
}

fn field<'v>(path: &Path, value: &'v Value, name: &str) -> Result<&'v Value> {
    value.get(name).ok_or_else(|| malformed(path, format!("missing field '{name}'")))
}

fn as_usize(path: &Path, value: &Value, what: &str) -> Result<usize> {
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| malformed(path, format!("{what} must be a non-negative integer")))
}

fn as_f64(path: &Path, value: &Value, what: &str) -> Result<f64> {
    value.as_f64().ok_or_else(|| malformed(path, format!("{what} must be a number")))
}

fn as_index_array(path: &Path, value: &Value, what: &str) -> Result<Vec<usize>> {
    let arr = value
        .as_array()
        .ok_or_else(|| malformed(path, format!("{what} must be an array")))?;
    arr.iter().map(|v| as_usize(path, v, what)).collect()
}

// ---------------------------------------------------------------------------
// simplicial complexes
// ---------------------------------------------------------------------------

pub fn complex_to_json(x: &SimplicialComplex) -> String {
    let mut out = String::from("{\"n_vertices\": ");
    let _ = write!(out, "{}", x.n_vertices());
    out.push_str(", \"simplices\": {");
    for k in 0..=x.top_order() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "\"{k}\": [");
        for (i, s) in x.simplices(k).iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        out.push(']');
    }
    out.push_str("}}\n");
    out
}

pub fn write_complex(path: &Path, x: &SimplicialComplex) -> Result<()> {
    write_string(path, &complex_to_json(x))
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let (n_vertices, lists) = read_complex_lists(path)?;
    SimplicialComplex::from_simplex_lists(n_vertices, lists)
        .map_err(|e| malformed(path, e.to_string()))
}

/// The raw per-order lists of a complex file, no validation applied.
pub fn read_complex_lists(path: &Path) -> Result<(usize, Vec<Vec<Vec<usize>>>)> {
    let value = parse_json(path, &read_to_string(path)?)?;
    let n_vertices = as_usize(path, field(path, &value, "n_vertices")?, "n_vertices")?;
    let simplices_obj = field(path, &value, "simplices")?
        .as_object()
        .ok_or_else(|| malformed(path, "'simplices' must be an object keyed by order"))?;
    let mut lists: Vec<Vec<Vec<usize>>> = Vec::new();
    for (key, list) in simplices_obj {
        let k: usize = key
            .parse()
            .map_err(|_| malformed(path, format!("order key '{key}' is not an integer")))?;
        let tuples = list
            .as_array()
            .ok_or_else(|| malformed(path, format!("simplices[{key}] must be an array")))?;
        while lists.len() <= k {
            lists.push(Vec::new());
        }
        for tuple in tuples {
            lists[k].push(as_index_array(path, tuple, "simplex tuple")?);
        }
    }
    Ok((n_vertices, lists))
}

pub fn facets_to_json(facets: &[Vec<usize>], n_vertices: usize) -> String {
    let mut out = String::from("{\"n_vertices\": ");
    let _ = write!(out, "{n_vertices}");
    out.push_str(", \"facets\": [");
    for (i, f) in facets.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        let _ = write!(out, "[{}]", parts.join(", "));
    }
    out.push_str("]}\n");
    out
}

pub fn write_facets(path: &Path, facets: &[Vec<usize>], n_vertices: usize) -> Result<()> {
    write_string(path, &facets_to_json(facets, n_vertices))
}

pub fn read_facets(path: &Path) -> Result<(Vec<Vec<usize>>, usize)> {
    let value = parse_json(path, &read_to_string(path)?)?;
    let n_vertices = as_usize(path, field(path, &value, "n_vertices")?, "n_vertices")?;
    let facets = field(path, &value, "facets")?
        .as_array()
        .ok_or_else(|| malformed(path, "'facets' must be an array"))?
        .iter()
        .map(|f| as_index_array(path, f, "facet"))
        .collect::<Result<Vec<_>>>()?;
    Ok((facets, n_vertices))
}

// ---------------------------------------------------------------------------
// signals and labels (CSV)
// ---------------------------------------------------------------------------

pub fn signal_to_csv(values: &Array1<f64>) -> String {
    let mut out = String::from("index,value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{i},{}", fmt_f64(*v));
    }
    out
}

pub fn write_signal_csv(path: &Path, values: &Array1<f64>) -> Result<()> {
    write_string(path, &signal_to_csv(values))
}

/// Signal CSV must cover indices 0..n contiguously (canonical order).
pub fn read_signal_csv(path: &Path) -> Result<Array1<f64>> {
    let text = read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header.trim() == "index,value" => {}
        _ => return Err(malformed(path, "expected header 'index,value'")),
    }
    let mut rows: Vec<(usize, f64)> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (idx, val) = parse_two_columns(path, line, lineno + 2)?;
        rows.push((idx, val));
    }
    rows.sort_by_key(|&(i, _)| i);
    for (expected, &(i, _)) in rows.iter().enumerate() {
        if i != expected {
            return Err(malformed(path, format!("indices must cover 0..n; got {i} at rank {expected}")));
        }
    }
    Ok(Array1::from(rows.into_iter().map(|(_, v)| v).collect::<Vec<_>>()))
}

fn parse_two_columns(path: &Path, line: &str, lineno: usize) -> Result<(usize, f64)> {
    let mut parts = line.split(',');
    let idx = parts
        .next()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| malformed(path, format!("line {lineno}: bad index")))?;
    let val = parts
        .next()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .ok_or_else(|| malformed(path, format!("line {lineno}: bad value")))?;
    if parts.next().is_some() {
        return Err(malformed(path, format!("line {lineno}: expected two columns")));
    }
    Ok((idx, val))
}

pub fn labels_to_csv(key_header: &str, pairs: &[(usize, f64)]) -> String {
    let mut out = format!("{key_header},value\n");
    for &(i, v) in pairs {
        let _ = writeln!(out, "{i},{}", fmt_f64(v));
    }
    out
}

pub fn write_labels_csv(path: &Path, key_header: &str, pairs: &[(usize, f64)]) -> Result<()> {
    write_string(path, &labels_to_csv(key_header, pairs))
}

/// Sparse labels: any subset of indices, strictly two columns.
pub fn read_labels_csv(path: &Path, key_header: &str) -> Result<Vec<(usize, f64)>> {
    let text = read_to_string(path)?;
    let mut lines = text.lines();
    let expected = format!("{key_header},value");
    match lines.next() {
        Some(header) if header.trim() == expected => {}
        _ => return Err(malformed(path, format!("expected header '{expected}'"))),
    }
    let mut pairs = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        pairs.push(parse_two_columns(path, line, lineno + 2)?);
    }
    Ok(pairs)
}

// ---------------------------------------------------------------------------
// trajectories
// ---------------------------------------------------------------------------

pub fn trajectory_to_json(vertices: &[usize]) -> String {
    let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    format!("{{\"vertices\": [{}]}}\n", parts.join(", "))
}

pub fn write_trajectory(path: &Path, vertices: &[usize]) -> Result<()> {
    write_string(path, &trajectory_to_json(vertices))
}

pub fn read_trajectory(path: &Path) -> Result<Vec<usize>> {
    let value = parse_json(path, &read_to_string(path)?)?;
    as_index_array(path, field(path, &value, "vertices")?, "vertices")
}

// ---------------------------------------------------------------------------
// hypergraphs
// ---------------------------------------------------------------------------

pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    let mut out = String::from("{\"n_vertices\": ");
    let _ = write!(out, "{}", h.n_vertices());
    out.push_str(", \"hyperedges\": [");
    for (i, e) in h.hyperedges().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let parts: Vec<String> = e.vertices.iter().map(|v| v.to_string()).collect();
        let _ = write!(out, "{{\"nodes\": [{}], \"weight\": {}}}", parts.join(", "), fmt_f64(e.weight));
    }
    out.push_str("]}\n");
    out
}

pub fn write_hypergraph(path: &Path, h: &Hypergraph) -> Result<()> {
    write_string(path, &hypergraph_to_json(h))
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let value = parse_json(path, &read_to_string(path)?)?;
    let n_vertices = as_usize(path, field(path, &value, "n_vertices")?, "n_vertices")?;
    let edges_json = field(path, &value, "hyperedges")?
        .as_array()
        .ok_or_else(|| malformed(path, "'hyperedges' must be an array"))?;
    let mut edges = Vec::with_capacity(edges_json.len());
    for e in edges_json {
        let nodes = as_index_array(path, field(path, e, "nodes")?, "nodes")?;
        let weight = match e.get("weight") {
            Some(w) => as_f64(path, w, "weight")?,
            None => 1.0,
        };
        edges.push((nodes, weight));
    }
    Hypergraph::new(n_vertices, &edges).map_err(|e| malformed(path, e.to_string()))
}

// ---------------------------------------------------------------------------
// tensors
// ---------------------------------------------------------------------------

pub fn tensor_to_json(t: &SymTensor) -> String {
    let mut out = String::from("{\"order\": ");
    let _ = write!(out, "{}", t.order);
    let _ = write!(out, ", \"dim\": {}", t.dim);
    out.push_str(", \"entries\": [");
    for (i, (key, value)) in t.entries().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let parts: Vec<String> = key.iter().map(|v| v.to_string()).collect();
        let _ = write!(out, "{{\"key\": [{}], \"value\": {}}}", parts.join(", "), fmt_f64(*value));
    }
    out.push_str("]}\n");
    out
}

pub fn write_tensor(path: &Path, t: &SymTensor) -> Result<()> {
    write_string(path, &tensor_to_json(t))
}

pub fn read_tensor(path: &Path) -> Result<SymTensor> {
    let value = parse_json(path, &read_to_string(path)?)?;
    let order = as_usize(path, field(path, &value, "order")?, "order")?;
    let dim = as_usize(path, field(path, &value, "dim")?, "dim")?;
    let entries_json = field(path, &value, "entries")?
        .as_array()
        .ok_or_else(|| malformed(path, "'entries' must be an array"))?;
    let mut entries = Vec::with_capacity(entries_json.len());
    for e in entries_json {
        let key = as_index_array(path, field(path, e, "key")?, "key")?;
        let val = as_f64(path, field(path, e, "value")?, "value")?;
        entries.push((key, val));
    }
    SymTensor::from_entries(order, dim, &entries).map_err(|e| malformed(path, e.to_string()))
}

// ---------------------------------------------------------------------------
// matrices, decompositions, points
// ---------------------------------------------------------------------------

pub fn vector_json(values: &Array1<f64>) -> String {
    let parts: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn matrix_to_json(m: &Array2<f64>) -> String {
    let mut out = String::from("{\"rows\": ");
    let _ = write!(out, "{}", m.nrows());
    let _ = write!(out, ", \"cols\": {}", m.ncols());
    out.push_str(", \"data\": [");
    for (i, row) in m.rows().into_iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let parts: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        let _ = write!(out, "[{}]", parts.join(", "));
    }
    out.push_str("]}\n");
    out
}

pub fn write_matrix(path: &Path, m: &Array2<f64>) -> Result<()> {
    write_string(path, &matrix_to_json(m))
}

pub fn read_matrix(path: &Path) -> Result<Array2<f64>> {
    let value = parse_json(path, &read_to_string(path)?)?;
    let rows = as_usize(path, field(path, &value, "rows")?, "rows")?;
    let cols = as_usize(path, field(path, &value, "cols")?, "cols")?;
    let data = field(path, &value, "data")?
        .as_array()
        .ok_or_else(|| malformed(path, "'data' must be an array of rows"))?;
    if data.len() != rows {
        return Err(malformed(path, "row count mismatch"));
    }
    let mut m = Array2::<f64>::zeros((rows, cols));
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| malformed(path, format!("row {i} must be an array")))?;
        if row.len() != cols {
            return Err(malformed(path, format!("row {i} has wrong length")));
        }
        for (j, v) in row.iter().enumerate() {
            m[[i, j]] = as_f64(path, v, "matrix entry")?;
        }
    }
    Ok(m)
}

pub fn decomposition_to_json(d: &HodgeDecomposition) -> String {
    let mut out = String::from("{\"gradient\": ");
    out.push_str(&vector_json(&d.gradient.values));
    out.push_str(", \"curl\": ");
    out.push_str(&vector_json(&d.curl.values));
    out.push_str(", \"harmonic\": ");
    out.push_str(&vector_json(&d.harmonic.values));
    out.push_str(", \"node_potentials\": ");
    out.push_str(&vector_json(&d.node_potentials));
    out.push_str(", \"triangle_potentials\": ");
    out.push_str(&vector_json(&d.triangle_potentials));
    out.push_str("}\n");
    out
}

pub fn write_decomposition(path: &Path, d: &HodgeDecomposition) -> Result<()> {
    write_string(path, &decomposition_to_json(d))
}

pub fn points_to_json(points: &[[f64; 2]]) -> String {
    let mut out = String::from("{\"points\": [");
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "[{}, {}]", fmt_f64(p[0]), fmt_f64(p[1]));
    }
    out.push_str("]}\n");
    out
}

pub fn write_points(path: &Path, points: &[[f64; 2]]) -> Result<()> {
    write_string(path, &points_to_json(points))
}

pub fn read_points(path: &Path) -> Result<Vec<[f64; 2]>> {
    let value = parse_json(path, &read_to_string(path)?)?;
    let arr = field(path, &value, "points")?
        .as_array()
        .ok_or_else(|| malformed(path, "'points' must be an array"))?;
    let mut out = Vec::with_capacity(arr.len());
    for p in arr {
        let pair = p
            .as_array()
            .ok_or_else(|| malformed(path, "each point must be [x, y]"))?;
        if pair.len() != 2 {
            return Err(malformed(path, "each point must be [x, y]"));
        }
        out.push([as_f64(path, &pair[0], "x")?, as_f64(path, &pair[1], "y")?]);
    }
    Ok(out)
}
