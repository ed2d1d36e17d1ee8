use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use ohmgraph_core::grassmann::{
    build_omega_resistance, build_omega_response, certify_nonnegative, indicator_subset,
    is_electrical_via_grassmannian_capped, plucker_capped, OmegaForm, OmegaMatrix,
};
use ohmgraph_core::io::{
    matrix_from_csv, matrix_to_csv, matrix_to_json, network_from_json, network_to_dot, network_to_json,
    order_from_text, order_to_json, plucker_to_json, report_to_json, scalar_to_json, splits_from_json, splits_to_json,
    strands_to_json, subset_from_text, subset_key,
};
use ohmgraph_core::metrics::{
    find_circular_order_capped, gromov_transform, is_electrical_via_dual, kalmanson_check, m_of_d, metric_from_splits,
    resistance_from_dual_response, split_weights, MinorFailure,
};
use ohmgraph_core::netcore::{
    dual_network, resistance_matrix, resistance_oracle_capped, response_matrix, simplify, transform, Move,
};
use ohmgraph_core::reconstruct::{
    fit_tree_weights, network_strands, reconstruct, recover_tree, strands_of, triangles_to_stars,
};
use ohmgraph_core::{CircularOrder, DistanceMatrix, Error, Matrix, ResponseMatrix, WeightedGraph};

use crate::config::{Config, Format};
use crate::{Command, Method, MetricArgs, PointArgs, SourceArgs};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }

    fn verdict(value: &Value, holds: bool) -> Self {
        Output {
            stdout: pretty(value),
            code: if holds { 0 } else { 1 },
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())).into())
}

fn read_network(path: &Path) -> Result<WeightedGraph> {
    Ok(network_from_json(&read_json(path)?)?)
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    Ok(matrix_from_csv(&read_input(path)?)?)
}

fn read_metric(path: &Path) -> Result<DistanceMatrix> {
    Ok(DistanceMatrix::new(read_matrix(path)?)?)
}

fn parse_order(text: Option<&str>, n: usize) -> Result<CircularOrder> {
    let order = match text {
        Some(t) => order_from_text(t)?,
        None => CircularOrder::identity(n),
    };
    if order.len() != n {
        return Err(Error::InvalidInput(format!("order has {} nodes, matrix has {n}", order.len())).into());
    }
    Ok(order)
}

fn metric_and_order(args: &MetricArgs) -> Result<(DistanceMatrix, CircularOrder)> {
    let d = read_metric(&args.metric)?;
    let order = parse_order(args.order.as_deref(), d.order())?;
    Ok((d, order))
}

fn emit_matrix(m: &Matrix, format: Format) -> Result<Output> {
    match format {
        Format::Json => Ok(Output::ok(pretty(&json!({ "matrix": matrix_to_json(m) })))),
        Format::Csv => Ok(Output::ok(matrix_to_csv(m))),
        Format::Dot => Err(Error::InvalidInput("a matrix has no DOT rendering".into()).into()),
    }
}

fn emit_network(g: &WeightedGraph, format: Format) -> Result<Output> {
    match format {
        Format::Json => Ok(Output::ok(pretty(&network_to_json(g)))),
        Format::Dot => Ok(Output::ok(network_to_dot(g))),
        Format::Csv => Err(Error::InvalidInput("a network has no CSV rendering".into()).into()),
    }
}

fn json_only(format: Format) -> Result<()> {
    if format != Format::Json {
        return Err(Error::InvalidInput("this command only writes JSON".into()).into());
    }
    Ok(())
}

fn ids(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn omega_of(args: &PointArgs) -> Result<OmegaMatrix> {
    match (&args.metric, &args.response) {
        (Some(m), _) => {
            let d = read_metric(m)?;
            let order = parse_order(args.order.as_deref(), d.order())?;
            Ok(build_omega_resistance(&d, &order)?)
        }
        (None, Some(r)) => Ok(build_omega_response(&ResponseMatrix::new(read_matrix(r)?)?)?),
        (None, None) => bail!(Error::InvalidInput("need --metric or --response".into())),
    }
}

fn form_name(form: OmegaForm) -> &'static str {
    match form {
        OmegaForm::Response => "response",
        OmegaForm::Resistance => "resistance",
    }
}

fn minor_failure_json(f: &MinorFailure) -> Value {
    match f {
        MinorFailure::Precondition { reason } => json!({"kind": "precondition", "reason": reason}),
        MinorFailure::NegativeMinor { p, q, signed_det } => json!({
            "kind": "negative_minor",
            "p": ids(p),
            "q": ids(q),
            "signed_det": scalar_to_json(signed_det),
        }),
        MinorFailure::Rank { rank, expected } => json!({"kind": "rank", "rank": rank, "expected": expected}),
    }
}

fn parse_move(name: &str, site: &str) -> Result<Move> {
    let nums: Vec<usize> = site
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad site entry {t:?}")))
        })
        .collect::<std::result::Result<_, _>>()?;
    let vertex = || -> Result<usize> {
        match nums.as_slice() {
            [v] if *v >= 1 => Ok(v - 1),
            _ => Err(Error::InvalidInput(format!("{name} needs one 1-based vertex id")).into()),
        }
    };
    let mv = match name {
        "remove_loop" => match nums.as_slice() {
            [e] => Move::RemoveLoop { edge: *e },
            _ => bail!(Error::InvalidInput("remove_loop needs one edge index".into())),
        },
        "remove_pendant" => Move::RemovePendant { vertex: vertex()? },
        "series" => Move::Series { vertex: vertex()? },
        "parallel" => match nums.as_slice() {
            [a, b] => Move::Parallel { first: *a, second: *b },
            _ => bail!(Error::InvalidInput("parallel needs two edge indices".into())),
        },
        "star_to_triangle" => Move::StarToTriangle { vertex: vertex()? },
        "triangle_to_star" => match nums.as_slice() {
            [a, b, c] => Move::TriangleToStar { edges: [*a, *b, *c] },
            _ => bail!(Error::InvalidInput("triangle_to_star needs three edge indices".into())),
        },
        other => bail!(Error::InvalidInput(format!("unknown move {other:?}"))),
    };
    Ok(mv)
}

pub fn run(command: &Command, config: &Config) -> Result<Output> {
    let format = config.format;
    match command {
        Command::Response(a) => emit_matrix(response_matrix(&read_network(&a.network)?)?.matrix(), format),
        Command::Resistance(a) => emit_matrix(resistance_matrix(&read_network(&a.network)?)?.matrix(), format),
        Command::OracleResistance { net, pair } => {
            let g = read_network(&net.network)?;
            let cap = config.spanning_tree_edge_cap;
            match pair {
                Some(p) => {
                    json_only(format)?;
                    let &[i, j] = subset_from_text(p)?.as_slice() else {
                        bail!(Error::InvalidInput("--pair needs exactly two ids".into()));
                    };
                    if i.max(j) >= g.n() {
                        bail!(Error::InvalidInput("--pair names a node outside the boundary".into()));
                    }
                    let r = resistance_oracle_capped(&g, i, j, cap)?;
                    Ok(Output::ok(pretty(
                        &json!({"i": i + 1, "j": j + 1, "resistance": scalar_to_json(&r)}),
                    )))
                }
                None => {
                    let n = g.n();
                    let mut m = Matrix::zeros(n, n);
                    for i in 0..n {
                        for j in i + 1..n {
                            let r = resistance_oracle_capped(&g, i, j, cap)?;
                            m[(i, j)] = r.clone();
                            m[(j, i)] = r;
                        }
                    }
                    emit_matrix(&m, format)
                }
            }
        }
        Command::Kalmanson(a) => {
            json_only(format)?;
            let (d, order) = metric_and_order(a)?;
            let w = kalmanson_check(&d, &order)?;
            let v = match &w {
                None => json!({"kalmanson": true, "order": order_to_json(&order)}),
                Some(w) => json!({
                    "kalmanson": false,
                    "order": order_to_json(&order),
                    "witness": {"quadruple": ids(&w.quadruple), "inequality": w.inequality},
                }),
            };
            Ok(Output::verdict(&v, w.is_none()))
        }
        Command::FindOrder { metric } => {
            json_only(format)?;
            let d = read_metric(metric)?;
            let found = find_circular_order_capped(&d, config.order_search_cap)?;
            let v = json!({"order": found.as_ref().map_or(Value::Null, order_to_json)});
            Ok(Output::verdict(&v, found.is_some()))
        }
        Command::SplitDecompose(a) => {
            json_only(format)?;
            let (d, order) = metric_and_order(a)?;
            Ok(Output::ok(pretty(&splits_to_json(&split_weights(&d, &order)?))))
        }
        Command::SplitsToMetric { splits } => {
            let sys = splits_from_json(&read_json(splits)?)?;
            emit_matrix(metric_from_splits(&sys).matrix(), format)
        }
        Command::Gromov { metric, base } => {
            let d = read_metric(metric)?;
            let base = match base {
                Some(b) if (1..=d.order()).contains(b) => b - 1,
                Some(b) => bail!(Error::InvalidInput(format!("base {b} is not a node"))),
                None => d.order().saturating_sub(1),
            };
            emit_matrix(&gromov_transform(&d, base)?, format)
        }
        Command::MOfD(a) => {
            let (d, order) = metric_and_order(a)?;
            emit_matrix(m_of_d(&d, &order)?.matrix(), format)
        }
        Command::Omega(a) => {
            let o = omega_of(a)?;
            match format {
                Format::Json => Ok(Output::ok(pretty(&json!({
                    "form": form_name(o.form()),
                    "deleted_row": o.deleted_row() + 1,
                    "matrix": matrix_to_json(o.matrix()),
                })))),
                _ => emit_matrix(o.matrix(), format),
            }
        }
        Command::Plucker(a) => {
            json_only(format)?;
            let o = omega_of(a)?;
            let p = plucker_capped(&o, config.plucker_n_cap)?;
            let cert = match certify_nonnegative(&p) {
                Ok(c) => Some(c),
                Err(Error::AllZero) => None,
                Err(e) => return Err(e.into()),
            };
            let mut v = plucker_to_json(&p, cert.as_ref());
            v["form"] = json!(form_name(o.form()));
            Ok(Output::ok(pretty(&v)))
        }
        Command::IsElectrical { metric, method } => {
            json_only(format)?;
            let (d, order) = metric_and_order(metric)?;
            if let Some(w) = kalmanson_check(&d, &order)? {
                let v = json!({
                    "electrical": false,
                    "reason": "not_kalmanson",
                    "witness": {"quadruple": ids(&w.quadruple), "inequality": w.inequality},
                });
                return Ok(Output::verdict(&v, false));
            }
            let mut v = json!({"electrical": true});
            let mut yes = true;
            if matches!(method, Method::Grassmann | Method::Both) {
                let g = is_electrical_via_grassmannian_capped(&d, &order, config.plucker_n_cap)?;
                yes &= g.electrical;
                let subset = indicator_subset(order.len(), OmegaForm::Resistance);
                v["grassmann"] = json!({
                    "electrical": g.electrical,
                    "sign": g.certificate.as_ref().map(|c| c.sign),
                    "witness": g.certificate.as_ref().and_then(|c| c.witness.as_ref())
                        .map(|(a, b)| json!([subset_key(a), subset_key(b)])),
                    "indicator": {"subset": subset_key(&subset), "value": scalar_to_json(&g.indicator)},
                });
            }
            if matches!(method, Method::Dual | Method::Both) {
                let dv = is_electrical_via_dual(&d, &order)?;
                yes &= dv.electrical;
                v["dual"] = json!({
                    "electrical": dv.electrical,
                    "m": matrix_to_json(&dv.m),
                    "failure": dv.failure.as_ref().map(minor_failure_json),
                    "note": dv.note,
                });
            }
            v["electrical"] = json!(yes);
            Ok(Output::verdict(&v, yes))
        }
        Command::DualResponse { response, order } => {
            let x = ResponseMatrix::new(read_matrix(response)?)?;
            let order = parse_order(order.as_deref(), x.order())?;
            emit_matrix(resistance_from_dual_response(&x, &order)?.matrix(), format)
        }
        Command::Dualize(a) => emit_network(&dual_network(&read_network(&a.network)?)?, format),
        Command::Strands(a) => {
            json_only(format)?;
            let s = strands_from(a)?;
            Ok(Output::ok(pretty(&strands_to_json(&s))))
        }
        Command::Reconstruct { metric, medial } => {
            let (d, order) = metric_and_order(metric)?;
            let rec = reconstruct(&d, &order)?;
            match format {
                Format::Dot if *medial => Ok(Output::ok(rec.arrangement.to_dot())),
                Format::Dot => Ok(Output::ok(network_to_dot(&rec.network))),
                Format::Csv => bail!(Error::InvalidInput("reconstruct writes JSON or DOT".into())),
                Format::Json => {
                    let round_trip = network_strands(&rec.network)? == rec.strands;
                    let reduced = triangles_to_stars(&rec.network)?;
                    let tree = if reduced.edge_count() + 1 == reduced.vertex_count() {
                        fit_tree_weights(&reduced, &order.arrange(&d)?).ok()
                    } else {
                        None
                    };
                    let v = report_to_json(&rec.strands, &rec.network, tree.as_ref(), round_trip);
                    Ok(Output::verdict(&v, round_trip))
                }
            }
        }
        Command::FitTree { metric, tree } => {
            let (d, order) = metric_and_order(metric)?;
            let fitted = match tree {
                Some(path) => fit_tree_weights(&read_network(path)?, &order.arrange(&d)?)?,
                None => recover_tree(&d, &order)?
                    .tree
                    .ok_or_else(|| Error::Inconsistent("the reconstructed topology is not a tree".into()))?,
            };
            emit_network(&fitted, format)
        }
        Command::Reduce {
            net,
            r#move,
            site,
            stars,
        } => {
            let g = read_network(&net.network)?;
            let h = match (r#move, site) {
                (Some(name), Some(site)) => transform(&g, parse_move(name, site)?)?,
                _ if *stars => triangles_to_stars(&simplify(&g))?,
                _ => simplify(&g),
            };
            emit_network(&h, format)
        }
        Command::Verify(a) => {
            json_only(format)?;
            let (d, order) = metric_and_order(a)?;
            let rec = reconstruct(&d, &order)?;
            let back = network_strands(&rec.network)?;
            let ok = back == rec.strands;
            let v = json!({
                "round_trip": ok,
                "tau": strands_to_json(&rec.strands)["tau"],
                "reconstructed_tau": strands_to_json(&back)["tau"],
            });
            Ok(Output::verdict(&v, ok))
        }
    }
}

fn strands_from(a: &SourceArgs) -> Result<ohmgraph_core::reconstruct::StrandPermutation> {
    match (&a.metric, &a.network) {
        (Some(m), _) => {
            let d = read_metric(m)?;
            let order = parse_order(a.order.as_deref(), d.order())?;
            Ok(strands_of(&d, &order)?)
        }
        (None, Some(n)) => Ok(network_strands(&read_network(n)?)?),
        (None, None) => Err(anyhow!(Error::InvalidInput("need --metric or --network".into()))),
    }
}

fn core_error(e: &anyhow::Error) -> Option<&Error> {
    e.chain().find_map(|c| c.downcast_ref::<Error>())
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    match core_error(e) {
        None => 2,
        Some(err) => match err {
            Error::TooLarge { .. } => 3,
            Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::InvalidResponse(_)
            | Error::InteriorSingular { .. }
            | Error::Disconnected { .. }
            | Error::BadSite { .. }
            | Error::NotEmbedded
            | Error::NotPlanar(_) => 2,
            Error::NotKalmanson(_)
            | Error::NotElectrical(_)
            | Error::AllZero
            | Error::Degenerate(_)
            | Error::NotInvolution(_)
            | Error::ColoringFailure(_)
            | Error::BoundaryDegenerate(_)
            | Error::NotTerminated { .. }
            | Error::Inconsistent(_)
            | Error::NonPositiveWeight { .. } => 1,
        },
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::InvalidInput(_) => "invalid_input",
        Error::InteriorSingular { .. } => "interior_singular",
        Error::Disconnected { .. } => "disconnected",
        Error::TooLarge { .. } => "too_large",
        Error::BadSite { .. } => "bad_site",
        Error::NotEmbedded => "not_embedded",
        Error::NotPlanar(_) => "not_planar",
        Error::NotKalmanson(_) => "not_kalmanson",
        Error::NotElectrical(_) => "not_electrical",
        Error::InvalidResponse(_) => "invalid_response",
        Error::AllZero => "all_zero",
        Error::Degenerate(_) => "degenerate",
        Error::NotInvolution(_) => "not_involution",
        Error::ColoringFailure(_) => "coloring_failure",
        Error::BoundaryDegenerate(_) => "boundary_degenerate",
        Error::NotTerminated { .. } => "not_terminated",
        Error::Inconsistent(_) => "inconsistent",
        Error::NonPositiveWeight { .. } => "non_positive_weight",
    }
}

/// Machine-readable form of a property failure.
pub fn error_json(e: &anyhow::Error) -> String {
    let v = match core_error(e) {
        Some(err) => json!({"error": error_kind(err), "message": err.to_string()}),
        None => json!({"error": "other", "message": format!("{e:#}")}),
    };
    serde_json::to_string_pretty(&v).expect("serializable")
}
