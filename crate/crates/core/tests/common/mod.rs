#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::Rng;
use singraph::analysis::from_plane_curve_graph;
use singraph::fixtures;
use singraph::gammac::GammaC;
use singraph::graph::{MultiGraph, NodeId};
use singraph::resgraph::{PlumbingGraph, ResGraph};

/// Embedded resolution graph of a plane curve built by blowing up `blowups`
/// random points (free points or corners) of the exceptional divisor, then
/// putting `1..=max_arrows` transverse curvettes at generic points.
/// Multiplicities come from solving the Euler relation with exact rationals.
pub fn random_plane_curve<R: Rng>(rng: &mut R, blowups: usize, max_arrows: usize) -> ResGraph {
    build_plane_curve(random_blowups(rng, blowups, max_arrows))
}

/// Like [`random_plane_curve`], then contracts every (-1)-curve meeting at
/// most two other curves or arrows, keeping at least one curve. The result
/// is the minimal embedded resolution of the curve it describes.
pub fn random_minimal_plane_curve<R: Rng>(rng: &mut R, blowups: usize, max_arrows: usize) -> ResGraph {
    let mut c = random_blowups(rng, blowups, max_arrows);
    while c.selfint.len() > 1 {
        let valence = |c: &Config, i: usize| c.edges.iter().filter(|&&(a, b)| a == i || b == i).count() as i64 + c.arrows[i];
        let Some(i) = (0..c.selfint.len()).find(|&i| c.selfint[i] == -1 && valence(&c, i) <= 2) else {
            break;
        };
        let nbrs: Vec<usize> = c
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect();
        for &w in &nbrs {
            c.selfint[w] += 1;
        }
        if let [w] = nbrs[..] {
            c.arrows[w] += c.arrows[i];
        }
        c.edges.retain(|&(a, b)| a != i && b != i);
        if let [a, b] = nbrs[..] {
            c.edges.push((a, b));
        }
        // drop index i
        c.selfint.remove(i);
        c.arrows.remove(i);
        let shift = |v: usize| if v > i { v - 1 } else { v };
        c.edges = c.edges.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
    }
    build_plane_curve(c)
}

struct Config {
    selfint: Vec<i64>,
    edges: Vec<(usize, usize)>,
    arrows: Vec<i64>,
}

fn random_blowups<R: Rng>(rng: &mut R, blowups: usize, max_arrows: usize) -> Config {
    let mut selfint = vec![-1i64];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..blowups {
        let new = selfint.len();
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let (a, b) = edges.swap_remove(rng.gen_range(0..edges.len()));
            selfint[a] -= 1;
            selfint[b] -= 1;
            edges.push((a, new));
            edges.push((b, new));
        } else {
            let a = rng.gen_range(0..selfint.len());
            selfint[a] -= 1;
            edges.push((a, new));
        }
        selfint.push(-1);
    }
    let n = selfint.len();
    let mut arrows = vec![0i64; n];
    for _ in 0..rng.gen_range(1..=max_arrows) {
        arrows[rng.gen_range(0..n)] += 1;
    }
    Config { selfint, edges, arrows }
}

fn build_plane_curve(c: Config) -> ResGraph {
    let n = c.selfint.len();
    let mult = solve_multiplicities(&c.selfint, &c.edges, &c.arrows);
    let mut g = ResGraph::new();
    let ids: Vec<NodeId> = (0..n).map(|i| g.add_curve(mult[i], 0, Some(c.selfint[i]))).collect();
    for &(a, b) in &c.edges {
        g.connect(ids[a], ids[b]).unwrap();
    }
    for (i, &count) in c.arrows.iter().enumerate() {
        for _ in 0..count {
            g.add_arrow(ids[i], 1).unwrap();
        }
    }
    g
}

/// Solves `e_i m_i + sum_{j ~ i} m_j + a_i = 0` by Gauss-Jordan elimination.
fn solve_multiplicities(selfint: &[i64], edges: &[(usize, usize)], arrows: &[i64]) -> Vec<i64> {
    let n = selfint.len();
    let mut a = vec![vec![Ratio::from_integer(0i128); n + 1]; n];
    for i in 0..n {
        a[i][i] = Ratio::from_integer(selfint[i] as i128);
        a[i][n] = Ratio::from_integer(-arrows[i] as i128);
    }
    for &(x, y) in edges {
        a[x][y] += 1;
        a[y][x] += 1;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0)).expect("unimodular");
        a.swap(col, piv);
        let p = a[col][col];
        for c in 0..=n {
            a[col][c] /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                for c in 0..=n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            let v = a[i][n];
            assert!(v.is_integer() && *v.numer() > 0, "multiplicity {v}");
            *v.numer() as i64
        })
        .collect()
}

/// A valid random input: usually a converted random plane curve, sometimes a
/// pencil family member.
pub fn random_input<R: Rng>(rng: &mut R) -> GammaC {
    if rng.gen_ratio(1, 5) {
        fixtures::pencil(rng.gen_range(2..=4))
    } else {
        let blowups = rng.gen_range(0..=8);
        from_plane_curve_graph(&random_plane_curve(rng, blowups, 4)).unwrap()
    }
}

/// Tree on `code.len() + 2` vertices from its Prüfer code.
pub fn prufer_tree(code: &[usize]) -> MultiGraph<(), ()> {
    let n = code.len() + 2;
    let mut g = MultiGraph::new();
    let ids: Vec<NodeId> = (0..n).map(|_| g.add_node(())).collect();
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    for &c in code {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        g.add_edge(ids[leaf], ids[c], ()).unwrap();
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    g.add_edge(ids[rest[0]], ids[rest[1]], ()).unwrap();
    g
}

/// All Prüfer codes of length `len` over `0..n`.
pub fn prufer_codes(n: usize) -> Vec<Vec<usize>> {
    let len = n.saturating_sub(2);
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..n).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out
}

/// One representative per isomorphism class of trees on `n` vertices, as
/// edge lists, found by canonical parenthesis strings of Prüfer trees.
pub fn unlabeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for code in prufer_codes(n) {
        let edges = prufer_edges(&code);
        let key = tree_key(n, &edges);
        if seen.insert(key) {
            out.push(edges);
        }
    }
    out
}

fn prufer_edges(code: &[usize]) -> Vec<(usize, usize)> {
    let g = prufer_tree(code);
    g.edges().map(|(_, r)| (r.ends[0].0 as usize, r.ends[1].0 as usize)).collect()
}

/// Minimum over all roots of the sorted-children parenthesis encoding.
fn tree_key(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![vec![]; n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn enc(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| enc(w, v, adj)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| enc(r, usize::MAX, &adj)).min().unwrap()
}

/// Graph with nodes `0..n` and the given edges.
pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> MultiGraph<(), ()> {
    let mut g = MultiGraph::new();
    let ids: Vec<NodeId> = (0..n).map(|_| g.add_node(())).collect();
    for &(a, b) in edges {
        g.add_edge(ids[a], ids[b], ()).unwrap();
    }
    g
}

/// Sorted arm lengths of a star-shaped tree, or `None` unless there is
/// exactly one node of degree >= 3.
pub fn arms(g: &PlumbingGraph) -> Option<Vec<usize>> {
    let gr = g.graph();
    let branch: Vec<NodeId> = gr.node_ids().filter(|v| gr.degree(*v) >= 3).collect();
    if branch.len() != 1 || !gr.is_tree() {
        return None;
    }
    let centre = branch[0];
    let mut lens = Vec::new();
    for start in gr.neighbors(centre) {
        let (mut prev, mut cur, mut len) = (centre, start, 1);
        loop {
            let next: Vec<NodeId> = gr.neighbors(cur).into_iter().filter(|w| *w != prev).collect();
            match next[..] {
                [] => break,
                [w] => {
                    (prev, cur) = (cur, w);
                    len += 1;
                }
                _ => return None,
            }
        }
        lens.push(len);
    }
    lens.sort();
    Some(lens)
}

/// True if `g` is a chain of `len` rational (-2)-curves.
pub fn is_a_chain(g: &PlumbingGraph, len: usize) -> bool {
    let gr = g.graph();
    gr.node_count() == len
        && (len == 0 || gr.is_tree())
        && gr.node_ids().all(|v| gr.degree(v) <= 2)
        && gr.nodes().all(|(_, n)| n.genus == 0 && n.self_intersection == -2)
}

/// Boundary of the convex hull of the nonzero lattice points of
/// `{α x + β y ≡ 0 mod M}` in the closed quadrant, from `(X, 0)` to `(0, Y)`,
/// by gift wrapping over every lattice point in the box. Only vertices
/// of the hull and the lattice points on its edges are kept.
pub fn boundary_by_gift_wrapping(alpha: i64, beta: i64, m: i64) -> Vec<(i64, i64)> {
    let x_len = m / gcd(m, alpha);
    let y_len = m / gcd(m, beta);
    let pts: Vec<(i64, i64)> = (0..=x_len)
        .flat_map(|x| (0..=y_len).map(move |y| (x, y)))
        .filter(|&(x, y)| (x, y) != (0, 0) && (alpha * x + beta * y) % m == 0)
        .collect();
    let mut out = vec![(x_len, 0)];
    let mut cur = (x_len, 0);
    while cur != (0, y_len) {
        // next hull vertex: the point making the smallest turn, nearest on ties
        let mut best: Option<(i64, i64)> = None;
        for &p in &pts {
            if p.0 >= cur.0 || p == cur {
                continue;
            }
            best = Some(match best {
                None => p,
                Some(b) => {
                    let cr = (b.0 - cur.0) * (p.1 - cur.1) - (b.1 - cur.1) * (p.0 - cur.0);
                    let closer = (p.0 - cur.0).abs() < (b.0 - cur.0).abs();
                    if cr > 0 || (cr == 0 && closer) {
                        p
                    } else {
                        b
                    }
                }
            });
        }
        cur = best.unwrap();
        out.push(cur);
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Classical Milnor numbers of the built-in plane curves.
pub fn classical_milnor() -> BTreeMap<&'static str, i64> {
    BTreeMap::from([("smooth", 0), ("node", 1), ("cusp", 2), ("tacnode", 3), ("three-lines", 4)])
}
