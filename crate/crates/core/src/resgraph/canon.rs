use std::collections::BTreeMap;

use crate::graph::{MultiGraph, NodeId};

/// Canonical string of a vertex-labelled tree: equal strings iff the trees
/// are isomorphic as labelled trees. `None` when `g` is not a tree.
pub fn canonical_tree_form<N, E>(g: &MultiGraph<N, E>, label: impl Fn(NodeId, &N) -> String) -> Option<String> {
    if !g.is_tree() {
        return None;
    }
    centers(g)
        .into_iter()
        .map(|c| encode_rooted(g, c, &label))
        .min()
}

pub fn isomorphic_trees<N, E, M, F>(
    a: &MultiGraph<N, E>,
    la: impl Fn(NodeId, &N) -> String,
    b: &MultiGraph<M, F>,
    lb: impl Fn(NodeId, &M) -> String,
) -> bool {
    match (canonical_tree_form(a, la), canonical_tree_form(b, lb)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

fn centers<N, E>(g: &MultiGraph<N, E>) -> Vec<NodeId> {
    let mut degree: BTreeMap<NodeId, usize> = g.node_ids().map(|v| (v, g.degree(v))).collect();
    let mut removed = std::collections::BTreeSet::new();
    let mut layer: Vec<NodeId> = degree.iter().filter(|(_, d)| **d <= 1).map(|(v, _)| *v).collect();
    let mut remaining = g.node_count();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for v in layer {
            removed.insert(v);
            for u in g.neighbors(v) {
                if removed.contains(&u) {
                    continue;
                }
                let d = degree.get_mut(&u).unwrap();
                *d -= 1;
                if *d == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    g.node_ids().filter(|v| !removed.contains(v)).collect()
}

fn encode_rooted<N, E>(g: &MultiGraph<N, E>, root: NodeId, label: &impl Fn(NodeId, &N) -> String) -> String {
    // iterative post-order so long chains do not exhaust the stack
    let mut order = Vec::new();
    let mut parent = BTreeMap::new();
    let mut stack = vec![root];
    parent.insert(root, root);
    while let Some(v) = stack.pop() {
        order.push(v);
        for u in g.neighbors(v) {
            if !parent.contains_key(&u) {
                parent.insert(u, v);
                stack.push(u);
            }
        }
    }
    let mut code: BTreeMap<NodeId, String> = BTreeMap::new();
    for &v in order.iter().rev() {
        let mut children: Vec<String> = g
            .neighbors(v)
            .into_iter()
            .filter(|u| parent[u] == v && *u != v)
            .map(|u| code.remove(&u).unwrap())
            .collect();
        children.sort();
        let mut s = String::from("(");
        s.push_str(&label(v, g.node(v).unwrap()));
        for c in children {
            s.push_str(&c);
        }
        s.push(')');
        code.insert(v, s);
    }
    code.remove(&root).unwrap()
}
