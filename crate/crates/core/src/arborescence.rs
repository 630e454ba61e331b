//! Minimum-cost spanning arborescence (Chu-Liu/Edmonds).

use crate::metric::Millis;

#[derive(Debug, Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    cost: Millis,
    id: usize,
}

/// Minimum-cost out-arborescence rooted at `root` spanning nodes `0..n` of a
/// complete digraph with arc costs `cost(u, v)`.
///
/// Returns the parent of each node (`None` for the root) and the total cost.
/// Ties between equal in-arcs go to the smaller source index, which keeps the
/// result deterministic.
pub fn min_arborescence<F>(n: usize, root: usize, cost: F) -> (Vec<Option<usize>>, Millis)
where
    F: Fn(usize, usize) -> Millis,
{
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1));
    for u in 0..n {
        for v in 0..n {
            if u != v && v != root {
                arcs.push(Arc { from: u, to: v, cost: cost(u, v), id: arcs.len() });
            }
        }
    }
    let original = arcs.clone();
    let chosen = contract(n, root, arcs);
    let mut parent = vec![None; n];
    let mut total = 0;
    for id in chosen {
        let a = original[id];
        parent[a.to] = Some(a.from);
        total += a.cost;
    }
    (parent, total)
}

/// One round of Edmonds: cheapest in-arcs, contract a cycle, recurse, expand.
/// Returns ids of the selected arcs.
fn contract(n: usize, root: usize, arcs: Vec<Arc>) -> Vec<usize> {
    let mut best_in: Vec<Option<Arc>> = vec![None; n];
    for a in &arcs {
        if a.from == a.to || a.to == root {
            continue;
        }
        let slot = &mut best_in[a.to];
        let replace = match slot {
            None => true,
            Some(b) => (a.cost, a.from, a.id) < (b.cost, b.from, b.id),
        };
        if replace {
            *slot = Some(*a);
        }
    }

    // Find cycles among the chosen in-arcs.
    let mut comp = vec![usize::MAX; n];
    let mut mark = vec![usize::MAX; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        let mut v = start;
        while v != root && mark[v] == usize::MAX && comp[v] == usize::MAX {
            mark[v] = start;
            match best_in[v] {
                Some(a) => v = a.from,
                None => break,
            }
        }
        if v != root && mark[v] == start && comp[v] == usize::MAX {
            let mut cyc = vec![v];
            let mut u = best_in[v].expect("on a cycle").from;
            while u != v {
                cyc.push(u);
                u = best_in[u].expect("on a cycle").from;
            }
            let c = cycles.len();
            for &u in &cyc {
                comp[u] = c;
            }
            cycles.push(cyc);
        }
    }
    if cycles.is_empty() {
        return best_in.iter().flatten().map(|a| a.id).collect();
    }

    // Contract: cycles become nodes 0..c, other nodes follow.
    let mut next = cycles.len();
    let mut label = vec![0; n];
    for v in 0..n {
        label[v] = if comp[v] != usize::MAX {
            comp[v]
        } else {
            next += 1;
            next - 1
        };
    }
    let reduced: Vec<Arc> = arcs
        .iter()
        .filter(|a| label[a.from] != label[a.to])
        .map(|a| {
            let cost = if comp[a.to] != usize::MAX {
                a.cost - best_in[a.to].expect("cycle node has an in-arc").cost
            } else {
                a.cost
            };
            Arc { from: label[a.from], to: label[a.to], cost, id: a.id }
        })
        .collect();
    let inner = contract(next, label[root], reduced);

    // Expand: keep every inner arc; inside each cycle keep all arcs except the
    // one into the node where the chosen entering arc lands.
    let by_id: std::collections::HashMap<usize, Arc> = arcs.iter().map(|a| (a.id, *a)).collect();
    let mut out = inner.clone();
    for (c, cyc) in cycles.iter().enumerate() {
        let entry = inner
            .iter()
            .map(|id| by_id[id])
            .find(|a| comp[a.to] == c && comp[a.from] != c)
            .expect("contracted cycle has an entering arc");
        for &u in cyc {
            if u != entry.to {
                out.push(best_in[u].expect("cycle node has an in-arc").id);
            }
        }
    }
    out
}
