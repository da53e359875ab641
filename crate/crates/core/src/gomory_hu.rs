//! Gomory-Hu cut trees with exact rational weights.
//!
//! This is the classic contraction-based construction (one max-flow per
//! split, components of the partial tree shrunk to single vertices), so the
//! result is a genuine cut tree: removing a tree edge induces a cut in the
//! original graph whose capacity equals the tree edge weight, and that cut is
//! a minimum cut between the edge's endpoints. Both properties are needed by
//! the odd-cut machinery built on top.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::Error;
use crate::maxflow::{flow_on_edges, scale_edges, CapacitatedGraph, FlowCap, IntEdges};
use crate::rat::Rat;

/// Spanning tree on the same vertex set whose path bottlenecks equal
/// all-pairs min-cut values and whose fundamental cuts realize them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GomoryHuTree {
    n: usize,
    edges: Vec<(usize, usize, Rat)>,
}

impl GomoryHuTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Rat)] {
        &self.edges
    }

    /// Minimum s-t cut value: the smallest weight on the s-t tree path.
    pub fn min_cut_value(&self, s: usize, t: usize) -> Result<Rat, Error> {
        if s == t || s >= self.n || t >= self.n {
            return Err(Error::invalid_argument("bad terminal pair"));
        }
        let adj = self.adjacency();
        // DFS from s remembering the bottleneck so far.
        let mut best: Vec<Option<Rat>> = vec![None; self.n];
        best[s] = Some(Rat::new(BigInt::from(0), BigInt::from(1)));
        let mut stack = vec![s];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &(v, ref w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    let b = match &best[u] {
                        Some(b) if u != s && b < w => b.clone(),
                        _ => w.clone(),
                    };
                    best[v] = Some(b);
                    stack.push(v);
                }
            }
        }
        best[t]
            .clone()
            .ok_or_else(|| Error::invariant("tree is not spanning"))
    }

    /// All fundamental cuts: for each tree edge, the split it induces and its
    /// weight. Each side is reported as the component not containing vertex 0,
    /// sorted ascending.
    pub fn fundamental_cuts(&self) -> Vec<(Vec<usize>, Rat)> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, (u, v, _)) in self.edges.iter().enumerate() {
            adj[*u].push((*v, id));
            adj[*v].push((*u, id));
        }
        self.edges
            .iter()
            .enumerate()
            .map(|(skip, (u, v, w))| {
                // Component of `u` when edge `skip` is removed.
                let mut seen = vec![false; self.n];
                seen[*u] = true;
                let mut stack = vec![*u];
                while let Some(a) = stack.pop() {
                    for &(b, id) in &adj[a] {
                        if id != skip && !seen[b] {
                            seen[b] = true;
                            stack.push(b);
                        }
                    }
                }
                debug_assert!(!seen[*v]);
                let side: Vec<usize> = if seen[0] {
                    (0..self.n).filter(|&x| !seen[x]).collect()
                } else {
                    (0..self.n).filter(|&x| seen[x]).collect()
                };
                (side, w.clone())
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, Rat)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v, w) in &self.edges {
            adj[*u].push((*v, w.clone()));
            adj[*v].push((*u, w.clone()));
        }
        adj
    }
}

/// Build the Gomory-Hu cut tree. Disconnected inputs are fine; absent
/// connections show up as 0-weight tree edges.
pub fn gomory_hu_tree(g: &CapacitatedGraph) -> GomoryHuTree {
    let (scaled, scale) = scale_edges(g.edges());
    let tree = match &scaled {
        IntEdges::Small(es) => gomory_hu_int(g.n(), es),
        IntEdges::Big(es) => gomory_hu_int(g.n(), es),
    };
    let scale = BigInt::from(scale);
    GomoryHuTree {
        n: g.n(),
        edges: tree
            .into_iter()
            .map(|(u, v, w)| (u, v, Rat::new(w, scale.clone())))
            .collect(),
    }
}

fn gomory_hu_int<T: FlowCap>(n: usize, edges: &[(usize, usize, T)]) -> Vec<(usize, usize, BigInt)> {
    if n <= 1 {
        return Vec::new();
    }
    // Partial tree over groups of vertices; split one multi-vertex group per
    // round with a max-flow in the graph whose off-group tree components are
    // contracted to single vertices.
    let mut groups: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut tree: Vec<(usize, usize, BigInt)> = Vec::new();

    while let Some(gi) = groups.iter().position(|g| g.len() > 1) {
        let s = groups[gi][0];
        let t = groups[gi][1];

        // Components of the partial tree after removing group `gi`.
        let mut comp = vec![usize::MAX; groups.len()];
        let mut ncomp = 0;
        for start in 0..groups.len() {
            if start == gi || comp[start] != usize::MAX {
                continue;
            }
            comp[start] = ncomp;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for (x, y, _) in &tree {
                    for (from, to) in [(*x, *y), (*y, *x)] {
                        if from == a && to != gi && comp[to] == usize::MAX {
                            comp[to] = ncomp;
                            stack.push(to);
                        }
                    }
                }
            }
            ncomp += 1;
        }

        // Quotient vertex ids: group members first, then one per component.
        let k = groups[gi].len();
        let mut qmap = vec![usize::MAX; n];
        for (i, &v) in groups[gi].iter().enumerate() {
            qmap[v] = i;
        }
        for (idx, grp) in groups.iter().enumerate() {
            if idx == gi {
                continue;
            }
            for &v in grp {
                qmap[v] = k + comp[idx];
            }
        }

        let mut merged: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (u, v, c) in edges {
            let (qu, qv) = (qmap[*u], qmap[*v]);
            if qu == qv {
                continue;
            }
            let key = (qu.min(qv), qu.max(qv));
            match merged.get_mut(&key) {
                Some(acc) => acc.add_in(c),
                None => {
                    merged.insert(key, c.clone());
                }
            }
        }
        let qedges: Vec<(usize, usize, T)> =
            merged.into_iter().map(|((u, v), c)| (u, v, c)).collect();
        let (flow, side) = flow_on_edges(k + ncomp, &qedges, qmap[s], qmap[t]);

        // Split the group along the cut.
        let (s_side, t_side): (Vec<usize>, Vec<usize>) =
            groups[gi].iter().partition(|&&v| side[qmap[v]]);
        debug_assert!(!s_side.is_empty() && !t_side.is_empty());
        let ti = groups.len();
        groups[gi] = s_side;
        groups.push(t_side);

        // Re-hang tree edges whose contracted component fell on the t-side.
        for e in tree.iter_mut() {
            for end in [0, 1] {
                let other = if end == 0 { e.0 } else { e.1 };
                let this = if end == 0 { e.1 } else { e.0 };
                if this == gi && !side[k + comp[other]] {
                    if end == 0 {
                        e.1 = ti;
                    } else {
                        e.0 = ti;
                    }
                }
            }
        }
        tree.push((gi, ti, flow.to_bigint()));
    }

    // All groups are singletons now; translate group ids to vertices.
    let vertex_of: Vec<usize> = groups.iter().map(|g| g[0]).collect();
    tree.into_iter()
        .map(|(a, b, w)| (vertex_of[a], vertex_of[b], w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_edge_tree() {
        let g = CapacitatedGraph::new(2, [(0, 1, rat(3, 7))]).unwrap();
        let tree = gomory_hu_tree(&g);
        assert_eq!(tree.edges().len(), 1);
        assert_eq!(tree.min_cut_value(0, 1).unwrap(), rat(3, 7));
    }

    #[test]
    fn star_tree_is_the_star() {
        let g = CapacitatedGraph::new(
            4,
            [(0, 1, rat(1, 1)), (0, 2, rat(1, 1)), (0, 3, rat(1, 1))],
        )
        .unwrap();
        let tree = gomory_hu_tree(&g);
        for leaf in 1..4 {
            assert_eq!(tree.min_cut_value(0, leaf).unwrap(), rat(1, 1));
        }
        // Every tree edge must touch the hub with weight 1.
        for (u, v, w) in tree.edges() {
            assert!(*u == 0 || *v == 0);
            assert_eq!(w, &rat(1, 1));
        }
    }

    /// Brute-force all-pairs min cut by enumerating every subset split.
    fn brute_all_pairs(g: &CapacitatedGraph) -> Vec<Vec<Rat>> {
        let n = g.n();
        let mut best = vec![vec![Option::<Rat>::None; n]; n];
        for mask in 1u32..(1 << (n - 1)) {
            // Vertex n-1 always on the co-side, so each split appears once.
            let inside = |v: usize| mask >> v & 1 == 1;
            let mut cap = rat(0, 1);
            for (u, v, c) in g.edges() {
                if inside(*u) != inside(*v) {
                    cap += c;
                }
            }
            for s in 0..n {
                for t in 0..n {
                    if s != t && inside(s) && !inside(t) {
                        let slot = &mut best[s][t];
                        if slot.as_ref().map_or(true, |b| cap < *b) {
                            *slot = Some(cap.clone());
                        }
                    }
                }
            }
        }
        (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        if s == t {
                            rat(0, 1)
                        } else {
                            best[s][t].clone().or_else(|| best[t][s].clone()).unwrap()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn g1_tree_matches_brute_force() {
        let x = crate::fixtures::g1_third();
        let g = CapacitatedGraph::from_support(&x);
        let tree = gomory_hu_tree(&g);
        let brute = brute_all_pairs(&g);
        for s in 0..6 {
            for t in 0..6 {
                if s != t {
                    assert_eq!(tree.min_cut_value(s, t).unwrap(), brute[s][t]);
                }
            }
        }
    }

    #[test]
    fn random_trees_match_brute_force_and_cut_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for round in 0..60 {
            let n = rng.gen_range(2..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.55) {
                        edges.push((u, v, rat(rng.gen_range(0..=6), rng.gen_range(1..=4))));
                    }
                }
            }
            let g = CapacitatedGraph::new(n, edges).unwrap();
            let tree = gomory_hu_tree(&g);
            assert_eq!(tree.edges().len(), n - 1, "round {round}");
            let brute = brute_all_pairs(&g);
            for s in 0..n {
                for t in (s + 1)..n {
                    assert_eq!(
                        tree.min_cut_value(s, t).unwrap(),
                        brute[s][t],
                        "round {round} pair ({s},{t})"
                    );
                }
            }
            // Cut-tree property: each fundamental cut's capacity in the
            // original graph equals the tree edge weight.
            for (side, w) in tree.fundamental_cuts() {
                let mut mask = vec![false; n];
                for &v in &side {
                    mask[v] = true;
                }
                let mut cap = rat(0, 1);
                for (u, v, c) in g.edges() {
                    if mask[*u] != mask[*v] {
                        cap += c;
                    }
                }
                assert_eq!(cap, w, "round {round} fundamental cut {side:?}");
            }
        }
    }
}
