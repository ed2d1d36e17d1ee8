//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails other than those listed in `KNOWN_RED`.

use std::panic::{self, AssertUnwindSafe};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ohmgraph_core::gen::{random_conductance, random_minimal_network, random_planar_network, random_split_system};
use ohmgraph_core::grassmann::{
    build_omega_resistance, certify_nonnegative, is_electrical_via_grassmannian, plucker, plucker_coordinate, Sign,
};
use ohmgraph_core::metrics::{
    circular_minor_test, is_electrical_via_dual, kalmanson_check, m_of_d, metric_from_splits, split_weights,
};
use ohmgraph_core::netcore::examples::{four_leaf_tree, unit_star};
use ohmgraph_core::netcore::{dual_network, resistance_matrix, resistance_oracle, response_matrix, transform, Move};
use ohmgraph_core::reconstruct::{network_strands, reconstruct, recover_tree, strands_of, verify_round_trip};
use ohmgraph_core::scalar::{frac, int};
use ohmgraph_core::{CircularOrder, DistanceMatrix, Edge, Matrix, Scalar, Split, WeightedGraph};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Criteria whose stated closed form is contradicted by exact computation.
/// They still run and still print FAIL.
const KNOWN_RED: &[usize] = &[6];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tree_d() -> DistanceMatrix {
    DistanceMatrix::from_i64(&[&[0, 3, 3, 2], &[3, 0, 2, 3], &[3, 2, 0, 3], &[2, 3, 3, 0]]).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn golden_response() -> Outcome {
    let m = response_matrix(&four_leaf_tree()).map_err(|e| e.to_string())?;
    let (a, b, c) = (frac(5, 8), frac(-1, 8), frac(-3, 8));
    let expected = Matrix::from_rows(vec![
        vec![a.clone(), b.clone(), b.clone(), c.clone()],
        vec![b.clone(), a.clone(), c.clone(), b.clone()],
        vec![b.clone(), c.clone(), a.clone(), b.clone()],
        vec![c, b.clone(), b, a],
    ]);
    ensure(m.matrix() == &expected, || {
        format!("got {:?}", m.matrix().to_f64_rows())
    })
}

fn golden_resistance() -> Outcome {
    let d = resistance_matrix(&four_leaf_tree()).map_err(|e| e.to_string())?;
    ensure(d == tree_d(), || format!("got {:?}", d.matrix().to_f64_rows()))
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(3);
    for case in 0..100 {
        let n = r.gen_range(2..=5);
        let g = random_planar_network(&mut r, n, 12);
        let d = resistance_matrix(&g).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                let o = resistance_oracle(&g, i, j).map_err(|e| e.to_string())?;
                ensure(&o == d.get(i, j), || format!("case {case}: pair ({i},{j}) differs"))?;
            }
        }
    }
    Ok(())
}

/// Random network without embedding, plus the move to test on it.
fn move_site(r: &mut ChaCha8Rng, kind: usize) -> (WeightedGraph, Move) {
    let n = r.gen_range(2..=5);
    let base = random_planar_network(r, n, 10).without_embedding();
    let mut vcount = base.vertex_count();
    let mut edges = base.edges().to_vec();
    let boundary = base.boundary().to_vec();
    let pick = |r: &mut ChaCha8Rng, count: usize| r.gen_range(0..count);
    let mv = match kind {
        0 => {
            let v = pick(r, vcount);
            edges.push(Edge::new(v, v, random_conductance(r)));
            Move::RemoveLoop { edge: edges.len() - 1 }
        }
        1 => {
            let v = pick(r, vcount);
            edges.push(Edge::new(v, vcount, random_conductance(r)));
            vcount += 1;
            Move::RemovePendant { vertex: vcount - 1 }
        }
        2 => {
            let e = pick(r, edges.len());
            let old = edges[e].clone();
            edges[e] = Edge::new(old.u, vcount, random_conductance(r));
            edges.push(Edge::new(vcount, old.v, random_conductance(r)));
            vcount += 1;
            Move::Series { vertex: vcount - 1 }
        }
        3 => {
            let e = pick(r, edges.len());
            let old = edges[e].clone();
            edges.push(Edge::new(old.v, old.u, random_conductance(r)));
            Move::Parallel {
                first: e,
                second: edges.len() - 1,
            }
        }
        4 => {
            let mut ends: Vec<usize> = (0..vcount).collect();
            ends.shuffle(r);
            let centre = vcount;
            vcount += 1;
            for &t in ends.iter().cycle().take(3) {
                edges.push(Edge::new(centre, t, random_conductance(r)));
            }
            Move::StarToTriangle { vertex: centre }
        }
        _ => {
            // A triangle through a fresh interior vertex when fewer than three
            // vertices exist.
            if vcount < 3 {
                vcount += 1;
            }
            let mut ends: Vec<usize> = (0..vcount).collect();
            ends.shuffle(r);
            let (a, b, c) = (ends[0], ends[1], ends[2]);
            let k = edges.len();
            edges.push(Edge::new(a, b, random_conductance(r)));
            edges.push(Edge::new(b, c, random_conductance(r)));
            edges.push(Edge::new(c, a, random_conductance(r)));
            Move::TriangleToStar {
                edges: [k, k + 1, k + 2],
            }
        }
    };
    let g = WeightedGraph::new(vcount, boundary, edges).expect("valid site");
    (g, mv)
}

fn transformation_invariance() -> Outcome {
    let mut r = rng(4);
    for kind in 0..6 {
        let mut done = 0;
        let mut attempts = 0;
        while done < 50 {
            attempts += 1;
            ensure(attempts < 500, || format!("move kind {kind}: too few usable sites"))?;
            let (g, mv) = move_site(&mut r, kind);
            // A star whose centre was attached to only two distinct vertices,
            // for instance, still has three spokes; the site is valid either way.
            let before = match response_matrix(&g) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let h = transform(&g, mv).map_err(|e| format!("{mv}: {e}"))?;
            let after = response_matrix(&h).map_err(|e| format!("{mv}: {e}"))?;
            ensure(before == after, || format!("{mv} changed the response"))?;
            done += 1;
        }
    }
    Ok(())
}

fn kalmanson_property() -> Outcome {
    let mut r = rng(5);
    for case in 0..100 {
        let n = r.gen_range(4..=6);
        let g = random_planar_network(&mut r, n, 14);
        let d = resistance_matrix(&g).map_err(|e| e.to_string())?;
        let w = kalmanson_check(&d, &CircularOrder::identity(n)).map_err(|e| e.to_string())?;
        ensure(w.is_none(), || format!("case {case}: witness {w:?}"))?;
    }
    Ok(())
}

/// The closed form printed for the columns {5,6,7} is the second Kalmanson
/// gap, but on the matrix as displayed those columns give the first gap
/// (the same value as {1,2,3}); the second gap sits on {3,4,5}. The
/// criterion stays red when the printed form is contradicted; every identity
/// that does hold is checked first.
fn minor_identities() -> Outcome {
    let mut r = rng(6);
    let half = frac(1, 2);
    let mut contradicted = None;
    for case in 0..20 {
        let g = random_planar_network(&mut r, 4, 12);
        let d = resistance_matrix(&g).map_err(|e| e.to_string())?;
        let omega = build_omega_resistance(&d, &CircularOrder::identity(4)).map_err(|e| e.to_string())?;
        let at = |i: usize, j: usize| d.get(i - 1, j - 1).clone();
        let minor = |cols: [usize; 3]| plucker_coordinate(&omega, &cols.map(|c| c - 1)).map_err(|e| e.to_string());
        let first = &half * (at(1, 3) + at(2, 4) - at(2, 3) - at(1, 4));
        let second = &half * (at(1, 3) + at(2, 4) - at(1, 2) - at(3, 4));
        let (d123, d345, d567) = (minor([1, 2, 3])?, minor([3, 4, 5])?, minor([5, 6, 7])?);
        ensure(d123 == first, || {
            format!("case {case}: {{1,2,3}} = {d123}, expected {first}")
        })?;
        ensure(d345 == second, || {
            format!("case {case}: {{3,4,5}} = {d345}, expected {second}")
        })?;
        ensure(d567 == first, || {
            format!("case {case}: {{5,6,7}} = {d567}, expected {first}")
        })?;
        if d567 != second && contradicted.is_none() {
            contradicted = Some(format!(
                "printed {{5,6,7}} form contradicted (case {case}: minor {d567}, printed form {second}); \
                 {{1,2,3}} and {{3,4,5}} identities hold on all 20 cases"
            ));
        }
    }
    contradicted.map_or(Ok(()), Err)
}

fn positivity() -> Outcome {
    let omega = build_omega_resistance(&tree_d(), &CircularOrder::identity(4)).map_err(|e| e.to_string())?;
    let p = plucker(&omega).map_err(|e| e.to_string())?;
    ensure(p.coords().len() == 56, || format!("{} coordinates", p.coords().len()))?;
    ensure(p.coords().iter().all(|(_, v)| *v >= Scalar::zero()), || {
        "negative coordinate".into()
    })?;
    ensure(p.get(&[1, 3, 5]).is_some_and(|v| *v > Scalar::zero()), || {
        "indicator not positive".into()
    })?;
    let cert = certify_nonnegative(&p).map_err(|e| e.to_string())?;
    ensure(cert.sign == Sign::Plus && cert.is_nonnegative(), || format!("{cert:?}"))
}

fn split_decomposition() -> Outcome {
    let order = CircularOrder::identity(4);
    let sys = split_weights(&tree_d(), &order).map_err(|e| e.to_string())?;
    let expected: Vec<Split> = [&[1][..], &[1, 2], &[0], &[2], &[3]]
        .iter()
        .map(|side| Split::new(side, 4).unwrap())
        .collect();
    ensure(sys.splits().len() == 5, || format!("{} splits", sys.splits().len()))?;
    for s in &expected {
        ensure(sys.weight_of(s) == Some(&Scalar::one()), || {
            format!("split {s} weight {:?}", sys.weight_of(s))
        })?;
    }
    ensure(metric_from_splits(&sys) == tree_d(), || {
        "metric_from_splits does not invert".into()
    })
}

fn duality() -> Outcome {
    let order = CircularOrder::identity(4);
    let m = m_of_d(&tree_d(), &order).map_err(|e| e.to_string())?.into_matrix();
    let printed = Matrix::from_i64(&[&[-3, 1, 1, 1], &[1, -2, 1, 0], &[1, 1, -3, 1], &[1, 0, 1, -2]]);
    ensure(m == printed.scale(&int(-1)), || {
        "M(D) differs from the printed dual response".into()
    })?;
    let dual = dual_network(&four_leaf_tree()).map_err(|e| e.to_string())?;
    let dm = response_matrix(&dual).map_err(|e| e.to_string())?;
    ensure(dm.matrix() == &m, || "dual network response differs".into())?;
    ensure(circular_minor_test(&m).is_none(), || "circular minor test fails".into())
}

fn detector_agreement() -> Outcome {
    let mut r = rng(10);
    let mut yes = 0;
    for case in 0..200 {
        let n = r.gen_range(3..=5);
        let d = if case % 2 == 0 {
            resistance_matrix(&random_planar_network(&mut r, n, 10)).map_err(|e| e.to_string())?
        } else {
            metric_from_splits(&random_split_system(&mut r, n))
        };
        let order = CircularOrder::identity(n);
        let a = is_electrical_via_grassmannian(&d, &order).map(|v| v.electrical);
        let b = is_electrical_via_dual(&d, &order).map(|v| v.electrical);
        let (a, b) = match (a, b) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => return Err(format!("case {case}: detector error {a:?} / {b:?}")),
        };
        ensure(a == b, || format!("case {case}: grassmannian {a}, dual {b}"))?;
        ensure(case % 2 == 1 || a, || format!("case {case}: network matrix rejected"))?;
        if a {
            yes += 1;
            let ok = verify_round_trip(&d, &order).map_err(|e| format!("case {case}: {e}"))?;
            ensure(ok, || format!("case {case}: round trip failed"))?;
        }
    }
    ensure(yes >= 100, || format!("only {yes} accepted"))
}

fn strands() -> Outcome {
    let s = strands_of(&tree_d(), &CircularOrder::identity(4)).map_err(|e| e.to_string())?;
    let g1: Vec<usize> = s.g().iter().map(|x| x + 1).collect();
    ensure(g1 == [4, 6, 5, 7, 8, 2, 1, 3], || format!("g = {g1:?}"))?;
    ensure(s.to_string() == "(1 5)(2 7)(3 6)(4 8)", || format!("tau = {s}"))?;
    let star = resistance_matrix(&unit_star()).map_err(|e| e.to_string())?;
    let t = strands_of(&star, &CircularOrder::identity(3)).map_err(|e| e.to_string())?;
    ensure(t.to_string() == "(1 4)(2 5)(3 6)", || format!("star tau = {t}"))
}

fn reconstruction_round_trip() -> Outcome {
    let mut r = rng(12);
    for case in 0..50 {
        let n = r.gen_range(2..=5);
        let (tau, g) = random_minimal_network(&mut r, n);
        let d = resistance_matrix(&g).map_err(|e| e.to_string())?;
        let rec = reconstruct(&d, &CircularOrder::identity(n)).map_err(|e| format!("case {case}: {e}"))?;
        let back = network_strands(&rec.network).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == tau, || format!("case {case}: {back} != {tau}"))?;
        ensure(rec.network.edge_count() <= n * (n - 1) / 2, || {
            format!("case {case}: {} edges for n = {n}", rec.network.edge_count())
        })?;
    }
    Ok(())
}

fn tree_recovery() -> Outcome {
    let rec = recover_tree(&tree_d(), &CircularOrder::identity(4)).map_err(|e| e.to_string())?;
    let tree = rec.tree.ok_or("no tree recovered")?;
    ensure(tree.edge_count() == 5 && tree.vertex_count() == 6, || {
        "wrong tree shape".into()
    })?;
    ensure(tree.edges().iter().all(|e| e.conductance == int(1)), || {
        "non-unit conductance".into()
    })?;
    // Interior vertices 4 and 5 each carry two leaves: {1,4} and {2,3}.
    let mut cherries: Vec<Vec<usize>> = tree
        .interior_vertices()
        .iter()
        .map(|&v| {
            let mut leaves: Vec<usize> = tree
                .incident_edges(v)
                .iter()
                .map(|&e| tree.edges()[e].other(v))
                .filter(|&w| tree.is_boundary(w))
                .collect();
            leaves.sort_unstable();
            leaves
        })
        .collect();
    cherries.sort();
    ensure(cherries == vec![vec![0, 3], vec![1, 2]], || {
        format!("cherries {cherries:?}")
    })?;
    ensure(resistance_matrix(&tree).map_err(|e| e.to_string())? == tree_d(), || {
        "resistance differs".into()
    })
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("golden response", golden_response),
        ("golden resistance", golden_resistance),
        ("oracle equivalence", oracle_equivalence),
        ("transformation invariance", transformation_invariance),
        ("kalmanson property", kalmanson_property),
        ("n=4 minor identities", minor_identities),
        ("positivity", positivity),
        ("split decomposition", split_decomposition),
        ("duality", duality),
        ("detector agreement", detector_agreement),
        ("strands", strands),
        ("reconstruction round trip", reconstruction_round_trip),
        ("tree recovery", tree_recovery),
    ];
    let mut failed = 0;
    let mut unexpected = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name}", k + 1),
            Err(why) => {
                failed += 1;
                let known = KNOWN_RED.contains(&(k + 1));
                if !known {
                    unexpected += 1;
                }
                let tag = if known { " (known)" } else { "" };
                println!("criterion {:>2} FAIL{tag}  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
