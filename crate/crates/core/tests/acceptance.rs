//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singraph::analysis::{analyze, chi_correction};
use singraph::covering::{component_count, standard_covering, verify_local_degrees, CoveringData};
use singraph::fixtures;
use singraph::graph::{MultiGraph, NodeId};
use singraph::hj::{compute_string, hull_oracle, StringSpec};
use singraph::pipeline::{k_min, resolve, stable_hash, ResolveOptions};
use singraph::resgraph::{euler_check, milnor_from_plane_graph};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn e8() -> Check {
    let start = Instant::now();
    let res = resolve(&fixtures::cusp(), 5, ResolveOptions::default()).map_err(|e| e.to_string())?;
    let g = &res.minimal;
    ensure(g.vertex_count() == 8, || format!("{} vertices", g.vertex_count()))?;
    ensure(g.graph().nodes().all(|(_, v)| v.genus == 0 && v.self_intersection == -2), || {
        format!("decorations {:?}", g.self_intersections())
    })?;
    let arms = common::arms(g);
    ensure(arms == Some(vec![1, 2, 4]), || format!("arms {arms:?}"))?;
    within(start, Duration::from_secs(1), "E8")
}

fn e8_intermediate() -> Check {
    let res = resolve(&fixtures::cusp(), 5, ResolveOptions::default()).map_err(|e| e.to_string())?;
    let mut got: Vec<i64> = res.embedded.curves().map(|(_, c)| c.multiplicity).collect();
    let mut want = vec![2, 3, 6, 2, 4, 3, 3, 5, 4, 3, 2];
    got.sort();
    want.sort();
    ensure(got == want, || format!("multiplicities {got:?}"))?;
    let bad = euler_check(&res.embedded).map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), || format!("Euler relation fails: {bad:?}"))
}

fn a_series() -> Check {
    let start = Instant::now();
    let node = fixtures::node();
    for k in 2..=50 {
        let res = resolve(&node, k, ResolveOptions::default()).map_err(|e| format!("k={k}: {e}"))?;
        ensure(common::is_a_chain(&res.minimal, (k - 1) as usize), || {
            format!("k={k}: {:?}", res.minimal.self_intersections())
        })?;
    }
    within(start, Duration::from_secs(1), "A-series")
}

fn d4() -> Check {
    let res = resolve(&fixtures::three_lines(), 2, ResolveOptions::default()).map_err(|e| e.to_string())?;
    let g = &res.minimal;
    ensure(g.vertex_count() == 4, || format!("{} vertices", g.vertex_count()))?;
    ensure(g.graph().nodes().all(|(_, v)| v.genus == 0 && v.self_intersection == -2), || {
        format!("decorations {:?}", g.self_intersections())
    })?;
    let arms = common::arms(g);
    ensure(arms == Some(vec![1, 1, 1]), || format!("arms {arms:?}"))
}

fn simple_elliptic() -> Check {
    let res = resolve(&fixtures::cusp(), 6, ResolveOptions::default()).map_err(|e| e.to_string())?;
    let g = res.minimal.graph();
    let nodes: Vec<_> = g.nodes().map(|(_, v)| (v.genus, v.self_intersection)).collect();
    ensure(nodes == vec![(1, -1)] && g.edge_count() == 0, || format!("{nodes:?}"))
}

fn transversal_round_trip() -> Check {
    let classical = common::classical_milnor();
    let mut names: Vec<String> = fixtures::PLANE_CURVES.iter().map(|s| s.to_string()).collect();
    names.extend((4..=6).map(|d| format!("lines:{d}")));
    for name in &names {
        let plane = fixtures::plane_curve(name).unwrap();
        let an = analyze(&fixtures::fixture(name).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        let mu = milnor_from_plane_graph(&plane).map_err(|e| e.to_string())?;
        let expected = classical.get(name.as_str()).copied().unwrap_or_else(|| {
            let d: i64 = name[6..].parse().unwrap();
            (d - 1) * (d - 1)
        });
        ensure(mu == expected, || format!("{name}: A'Campo gives {mu}, expected {expected}"))?;
        if mu == 0 {
            ensure(an.branches.is_empty(), || format!("{name}: smooth germ has a singular locus"))?;
            continue;
        }
        ensure(an.branches.len() == 1, || format!("{name}: {} branches", an.branches.len()))?;
        let b = &an.branches[0];
        ensure(b.d == 1, || format!("{name}: d = {}", b.d))?;
        ensure(b.milnor == mu, || format!("{name}: μ = {}", b.milnor))?;
        ensure(b.graph.tree_form() == plane.tree_form(), || {
            format!("{name}: {:?} vs {:?}", b.graph.tree_form(), plane.tree_form())
        })?;
    }
    Ok(())
}

fn chi_corrections() -> Check {
    let classical = common::classical_milnor();
    for (name, mu) in classical {
        let g = fixtures::fixture(name).unwrap();
        for k in 2..=20 {
            // F_{f'} x C against the fibre of f' + z^k, whose μ is μ(f')(k - 1)
            let expected = (1 + mu * (k - 1)) - (1 - mu);
            let got = chi_correction(&g, k).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{name}, k={k}: {got} vs {expected}"))?;
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for m in 1..=60i64 {
        for alpha in 1..=60i64 {
            for beta in 1..=60i64 {
                if common::gcd(common::gcd(alpha, beta), m) != 1 {
                    continue;
                }
                for (a, b, c) in [(0, 0, 1), (1, 0, 0), (1, 2, 0)] {
                    let s = StringSpec::new(alpha, beta, m, a, b, c);
                    let fast = compute_string(&s).map_err(|e| e.to_string())?;
                    let slow = hull_oracle(&s).map_err(|e| e.to_string())?;
                    ensure(fast == slow, || format!("{s}: {:?} vs {:?}", fast.points, slow.points))?;
                    count += 1;
                }
            }
        }
    }
    ensure(count > 0, || "no cases".into())?;
    within(start, Duration::from_secs(30), "oracle equivalence")
}

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..200 {
        let g = common::random_input(&mut rng);
        let arrowheads = g.arrowheads().count();
        let lo = k_min(&g);
        let mut hashes = BTreeSet::new();
        for k in lo..=lo + 5 {
            let ctx = || format!("case {case}, k={k}");
            let res = resolve(&g, k, ResolveOptions::default()).map_err(|e| format!("{}: {e}", ctx()))?;
            let bad = euler_check(&res.embedded).map_err(|e| e.to_string())?;
            ensure(bad.is_empty(), || format!("{}: Euler relation fails {bad:?}", ctx()))?;
            let stripped = res.embedded.strip().map_err(|e| e.to_string())?;
            let before = stripped.intersection_matrix();
            let after = res.minimal.intersection_matrix();
            ensure(after.is_negative_definite(), || format!("{}: not negative definite", ctx()))?;
            ensure(before.det_abs() == after.det_abs(), || {
                format!("{}: |det| {} -> {}", ctx(), before.det_abs(), after.det_abs())
            })?;
            ensure(res.embedded.arrow_count() == arrowheads, || {
                format!("{}: {} arrows, input has {arrowheads}", ctx(), res.embedded.arrow_count())
            })?;
            hashes.insert(stable_hash(&res));
        }
        ensure(hashes.len() == 1, || format!("case {case}: stable part changes with k"))?;
    }
    Ok(())
}

fn check_covering(base: &MultiGraph<(), ()>, data: &CoveringData) -> Check {
    let cover = standard_covering(base, data).map_err(|e| e.to_string())?;
    verify_local_degrees(base, data, &cover)?;
    let expected = data.vertex.values().fold(0, |acc, &n| common::gcd(acc, n));
    let formula = component_count(base, data).map_err(|e| e.to_string())?;
    let actual = cover.component_count() as i64;
    ensure(formula == expected && actual == expected, || {
        format!("data {data:?}: {actual} components, gcd {expected}")
    })
}

fn covering_engine() -> Check {
    const MAX: i64 = 6;
    for n in 1..=7 {
        for edges in common::unlabeled_trees(n) {
            let base = common::graph_from_edges(n, &edges);
            let ids: Vec<NodeId> = base.node_ids().collect();
            let mut vertex = vec![1i64; n];
            loop {
                // smallest compatible edge data, then the largest multiples up to MAX
                let lcms: Vec<i64> = edges
                    .iter()
                    .map(|&(a, b)| vertex[a] / common::gcd(vertex[a], vertex[b]) * vertex[b])
                    .collect();
                if lcms.iter().all(|&l| l <= MAX) {
                    let mut data = CoveringData {
                        vertex: ids.iter().zip(&vertex).map(|(v, n)| (*v, *n)).collect(),
                        edge: base.edges().zip(&lcms).map(|((e, _), l)| (e, *l)).collect(),
                    };
                    check_covering(&base, &data)?;
                    if lcms.iter().any(|&l| l * 2 <= MAX) {
                        for ((_, n), l) in data.edge.iter_mut().zip(&lcms) {
                            *n = MAX / l * l;
                        }
                        check_covering(&base, &data)?;
                    }
                }
                let Some(i) = (0..n).find(|&i| vertex[i] < MAX) else { break };
                vertex[i] += 1;
                vertex[..i].fill(1);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let n = rng.gen_range(2..=12);
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let base = common::prufer_tree(&code);
        let vertex: std::collections::BTreeMap<NodeId, i64> =
            base.node_ids().map(|v| (v, rng.gen_range(1..=12))).collect();
        let edge = base
            .edges()
            .map(|(e, r)| {
                let (a, b) = (vertex[&r.ends[0]], vertex[&r.ends[1]]);
                (e, a / common::gcd(a, b) * b * rng.gen_range(1..=2))
            })
            .collect();
        check_covering(&base, &CoveringData { vertex, edge })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("E8 from the cusp at k = 5", e8),
        ("embedded graph of the cusp at k = 5", e8_intermediate),
        ("A-series from the node, k = 2..50", a_series),
        ("D4 from three lines at k = 2", d4),
        ("simple elliptic from the cusp at k = 6", simple_elliptic),
        ("transversal round trip", transversal_round_trip),
        ("Euler characteristic correction, k = 2..20", chi_corrections),
        ("string computation against the hull oracle", oracle_equivalence),
        ("invariants on 200 random inputs", property_suite),
        ("covering engine", covering_engine),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({t:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
