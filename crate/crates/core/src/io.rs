//! File formats: network JSON, matrix CSV, split-system JSON, Plücker JSON,
//! reconstruction reports and Graphviz DOT.
//!
//! Node ids are 1-based in every external format. Edge indices in an
//! embedding are 0-based positions in the `edges` array.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::grassmann::{PluckerVector, Sign, SignCertificate};
use crate::linalg::Matrix;
use crate::metrics::{CircularOrder, Split, WeightedSplitSystem};
use crate::netcore::{Edge, WeightedGraph};
use crate::reconstruct::StrandPermutation;
use crate::scalar::{format_scalar, parse_scalar, Scalar};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Accepts `"p/q"`, decimal strings, and JSON numbers (read from their
/// literal text, so `0.1` is exactly `1/10`).
pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => parse_scalar(&n.to_string()),
        other => Err(parse_err(format!("expected a number, found {other}"))),
    }
}

pub fn scalar_to_json(v: &Scalar) -> Value {
    Value::String(format_scalar(v))
}

fn id_from_json(v: &Value, what: &str) -> Result<usize> {
    match v.as_u64() {
        Some(id) if id >= 1 => Ok(id as usize - 1),
        _ => Err(parse_err(format!("{what} must be a positive integer id, found {v}"))),
    }
}

fn ids_from_json(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array of ids")))?
        .iter()
        .map(|x| id_from_json(x, what))
        .collect()
}

fn ids_to_json(ids: &[usize]) -> Value {
    Value::Array(ids.iter().map(|&v| json!(v + 1)).collect())
}

/// `{"n", "vertices"?, "boundary", "edges": [{"u","v","c"}], "embedding"?}`.
/// `n` is the number of boundary nodes; `vertices` defaults to the largest
/// id mentioned.
pub fn network_from_json(v: &Value) -> Result<WeightedGraph> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("network must be a JSON object"))?;
    for key in obj.keys() {
        if !["n", "vertices", "boundary", "edges", "embedding"].contains(&key.as_str()) {
            return Err(parse_err(format!("unknown network field {key:?}")));
        }
    }
    let boundary = ids_from_json(
        obj.get("boundary").ok_or_else(|| parse_err("missing \"boundary\""))?,
        "boundary",
    )?;
    if let Some(n) = obj.get("n") {
        if n.as_u64() != Some(boundary.len() as u64) {
            return Err(parse_err(format!(
                "\"n\" is {n} but the boundary lists {} nodes",
                boundary.len()
            )));
        }
    }
    let mut edges = Vec::new();
    let raw_edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"edges\" array"))?;
    for (k, e) in raw_edges.iter().enumerate() {
        let eo = e
            .as_object()
            .ok_or_else(|| parse_err(format!("edge {k} must be an object")))?;
        let u = id_from_json(eo.get("u").unwrap_or(&Value::Null), "edge endpoint")?;
        let w = id_from_json(eo.get("v").unwrap_or(&Value::Null), "edge endpoint")?;
        let c = scalar_from_json(eo.get("c").ok_or_else(|| parse_err(format!("edge {k} has no \"c\"")))?)?;
        edges.push(Edge::new(u, w, c));
    }
    let largest = boundary
        .iter()
        .chain(edges.iter().flat_map(|e| [&e.u, &e.v]))
        .max()
        .map_or(0, |m| m + 1);
    let vertex_count = match obj.get("vertices") {
        Some(x) => x
            .as_u64()
            .map(|x| x as usize)
            .filter(|&x| x >= largest)
            .ok_or_else(|| parse_err(format!("\"vertices\" must be at least {largest}")))?,
        None => largest,
    };
    let g = WeightedGraph::new(vertex_count, boundary, edges)?;
    match obj.get("embedding") {
        None | Some(Value::Null) => Ok(g),
        Some(Value::Object(map)) => {
            let mut lists = vec![Vec::new(); vertex_count];
            for (key, list) in map {
                let id: usize = key
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&x: &usize| x >= 1 && x <= vertex_count)
                    .ok_or_else(|| parse_err(format!("bad embedding key {key:?}")))?;
                lists[id - 1] = list
                    .as_array()
                    .ok_or_else(|| parse_err("embedding entries must be arrays of edge indices"))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|x| x as usize)
                            .ok_or_else(|| parse_err("bad edge index"))
                    })
                    .collect::<Result<_>>()?;
            }
            g.with_embedding(lists)
        }
        Some(_) => Err(parse_err("\"embedding\" must be an object")),
    }
}

pub fn network_to_json(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"u": e.u + 1, "v": e.v + 1, "c": format_scalar(&e.conductance)}))
        .collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(g.n()));
    obj.insert("vertices".into(), json!(g.vertex_count()));
    obj.insert("boundary".into(), ids_to_json(g.boundary()));
    obj.insert("edges".into(), Value::Array(edges));
    if let Some(rot) = g.edge_rotation() {
        let mut emb = Map::new();
        for (v, list) in rot.iter().enumerate() {
            emb.insert((v + 1).to_string(), json!(list));
        }
        obj.insert("embedding".into(), Value::Object(emb));
    }
    Value::Object(obj)
}

/// Parses a matrix: one row per line, entries separated by commas (or
/// whitespace). Blank lines and lines starting with `#` are skipped.
pub fn matrix_from_csv(text: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = if line.contains(',') {
            line.split(',').collect()
        } else {
            line.split_whitespace().collect()
        };
        let row = cells
            .iter()
            .map(|c| parse_scalar(c).map_err(|e| parse_err(format!("line {}: {e}", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err("empty matrix"));
    }
    let width = rows[0].len();
    if let Some(k) = rows.iter().position(|r| r.len() != width) {
        return Err(parse_err(format!(
            "row {} has {} entries, expected {width}",
            k + 1,
            rows[k].len()
        )));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn matrix_to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(format_scalar).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

/// Parses `"1,2,3,4"` into a 0-based order.
pub fn order_from_text(text: &str) -> Result<CircularOrder> {
    let ids = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&x| x >= 1)
                .map(|x| x - 1)
                .ok_or_else(|| parse_err(format!("bad node id {t:?} in order")))
        })
        .collect::<Result<Vec<_>>>()?;
    CircularOrder::new(ids)
}

pub fn order_to_json(o: &CircularOrder) -> Value {
    ids_to_json(o.nodes())
}

/// `{"order": [ids], "splits": [{"A": [ids], "B": [ids], "w": "p/q"}]}`.
/// A bare array of splits is read with the identity order.
pub fn splits_from_json(v: &Value) -> Result<WeightedSplitSystem> {
    let (order, list) = match v {
        Value::Array(list) => (None, list),
        Value::Object(obj) => (
            obj.get("order").map(|o| ids_from_json(o, "order")).transpose()?,
            obj.get("splits")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("missing \"splits\" array"))?,
        ),
        _ => return Err(parse_err("split system must be an object or an array")),
    };
    let mut parsed = Vec::new();
    let mut n = 0;
    for (k, s) in list.iter().enumerate() {
        let so = s
            .as_object()
            .ok_or_else(|| parse_err(format!("split {k} must be an object")))?;
        let a = ids_from_json(so.get("A").unwrap_or(&Value::Null), "split block A")?;
        let b = ids_from_json(so.get("B").unwrap_or(&Value::Null), "split block B")?;
        let w = scalar_from_json(
            so.get("w")
                .ok_or_else(|| parse_err(format!("split {k} has no \"w\"")))?,
        )?;
        n = n.max(a.len() + b.len());
        parsed.push((a, b, w));
    }
    let order = match order {
        Some(o) => CircularOrder::new(o)?,
        None => CircularOrder::identity(n),
    };
    let n = order.len();
    let mut splits = Vec::new();
    for (a, b, w) in parsed {
        let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(parse_err("split blocks must partition the nodes of the order"));
        }
        splits.push((Split::new(&a, n)?, w));
    }
    WeightedSplitSystem::new(order, splits)
}

pub fn splits_to_json(s: &WeightedSplitSystem) -> Value {
    let splits: Vec<Value> = s
        .splits()
        .iter()
        .map(|(sp, w)| json!({"A": ids_to_json(sp.a()), "B": ids_to_json(sp.b()), "w": format_scalar(w)}))
        .collect();
    json!({"order": order_to_json(s.order()), "splits": splits})
}

pub fn subset_key(subset: &[usize]) -> String {
    subset.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `"2,4,6"` into a 0-based column subset.
pub fn subset_from_text(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&x| x >= 1)
                .map(|x| x - 1)
                .ok_or_else(|| parse_err(format!("bad column {t:?}")))
        })
        .collect()
}

pub fn plucker_to_json(p: &PluckerVector, cert: Option<&SignCertificate>) -> Value {
    let mut coords = Map::new();
    for (s, v) in p.coords() {
        coords.insert(subset_key(s), scalar_to_json(v));
    }
    let sign = match cert.map(|c| c.sign) {
        Some(Sign::Plus) => "+",
        Some(Sign::Minus) => "-",
        Some(Sign::Mixed) => "mixed",
        None => "zero",
    };
    let witness = match cert.and_then(|c| c.witness.as_ref()) {
        Some((a, b)) => json!([subset_key(a), subset_key(b)]),
        None => json!([]),
    };
    json!({
        "n": p.n(),
        "deleted_row": p.deleted_row() + 1,
        "coords": Value::Object(coords),
        "sign": sign,
        "witness": witness,
    })
}

pub fn strands_to_json(s: &StrandPermutation) -> Value {
    json!({
        "g": s.g().iter().map(|x| x + 1).collect::<Vec<_>>(),
        "tau": s.pairs().iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
    })
}

pub fn report_to_json(
    strands: &StrandPermutation,
    network: &WeightedGraph,
    tree: Option<&WeightedGraph>,
    round_trip: bool,
) -> Value {
    let s = strands_to_json(strands);
    json!({
        "g": s["g"],
        "tau": s["tau"],
        "network": network_to_json(network),
        "tree": tree.map_or(Value::Null, network_to_json),
        "round_trip": round_trip,
    })
}

/// Graphviz rendering; boundary nodes are boxes labelled by their 1-based
/// position.
pub fn network_to_dot(g: &WeightedGraph) -> String {
    let mut out = String::from("graph network {\n");
    for v in 0..g.vertex_count() {
        match g.boundary_position(v) {
            Some(p) => {
                let _ = writeln!(out, "  v{} [label=\"{}\", shape=box];", v + 1, p + 1);
            }
            None => {
                let _ = writeln!(out, "  v{} [label=\"\", shape=circle, width=0.15];", v + 1);
            }
        }
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  v{} -- v{} [label=\"{}\"];",
            e.u + 1,
            e.v + 1,
            format_scalar(&e.conductance)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::examples::four_leaf_tree;
    use crate::scalar::frac;

    #[test]
    fn network_round_trip() {
        let g = four_leaf_tree();
        let v = network_to_json(&g);
        assert_eq!(network_from_json(&v).unwrap(), g);
        let text =
            r#"{"n": 2, "boundary": [1, 2], "edges": [{"u": 1, "v": 2, "c": 0.25}, {"u": 1, "v": 2, "c": "3/4"}]}"#;
        let g = network_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(g.edges()[0].conductance, frac(1, 4));
        assert_eq!(g.rotation(), None);
        let bad = r#"{"n": 3, "boundary": [1, 2], "edges": []}"#;
        assert!(network_from_json(&serde_json::from_str(bad).unwrap()).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let m = matrix_from_csv("0, 1/2\n0.5, 0\n").unwrap();
        assert_eq!(m[(0, 1)], m[(1, 0)]);
        assert_eq!(matrix_to_csv(&m), "0,1/2\n1/2,0\n");
        assert!(matrix_from_csv("1,2\n3\n").is_err());
        assert!(matrix_from_csv("1,x\n").is_err());
    }

    #[test]
    fn splits_round_trip() {
        let text = r#"{"order": [1, 2, 3, 4], "splits": [{"A": [1, 2], "B": [3, 4], "w": "2/3"}]}"#;
        let s = splits_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(splits_from_json(&splits_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn order_and_subset_text() {
        assert_eq!(order_from_text("1,3,2").unwrap().nodes(), &[0, 2, 1]);
        assert!(order_from_text("1,1,2").is_err());
        assert_eq!(subset_from_text("2,4,6").unwrap(), vec![1, 3, 5]);
        assert_eq!(subset_key(&[1, 3, 5]), "2,4,6");
    }
}
