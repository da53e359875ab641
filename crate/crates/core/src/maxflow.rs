//! Exact s-t maximum flow / minimum cut on undirected capacitated graphs.
//!
//! Capacities are rationals. Internally everything is scaled by the lcm of
//! the capacity denominators and the flow runs over plain integers: `i128`
//! when the scaled capacities comfortably fit, arbitrary-precision `BigInt`
//! otherwise. The algorithm is Edmonds-Karp (shortest augmenting paths),
//! chosen because its step count is independent of capacity magnitudes.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::frac::FracMatching;
use crate::rat::{denominator_lcm, Rat};

/// Undirected graph with nonnegative rational edge capacities. Parallel
/// edges are merged on construction by summing capacities; self-loops are
/// discarded (they never cross a cut).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedGraph {
    n: usize,
    edges: Vec<(usize, usize, Rat)>,
}

impl CapacitatedGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Rat)>,
    ) -> Result<Self, Error> {
        let mut merged: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for (u, v, c) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid_argument(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if c.is_negative() {
                return Err(Error::invalid_argument(format!(
                    "negative capacity {c} on edge ({u},{v})"
                )));
            }
            if u == v {
                continue;
            }
            *merged.entry((u.min(v), u.max(v))).or_insert_with(Rat::zero) += c;
        }
        Ok(CapacitatedGraph {
            n,
            edges: merged.into_iter().map(|((u, v), c)| (u, v, c)).collect(),
        })
    }

    /// The support of a fractional matching viewed as a capacitated graph.
    pub fn from_support(x: &FracMatching) -> Self {
        let edges = x.support_edges().into_iter().map(|e| {
            let (u, v) = x.graph().endpoints(e);
            (u, v, x.value(e).clone())
        });
        CapacitatedGraph::new(x.graph().n(), edges).expect("support edges are valid")
    }

    /// Internal constructor for edge lists already canonical (no self-loops,
    /// no duplicates, nonnegative capacities).
    pub(crate) fn from_merged_unchecked(n: usize, edges: Vec<(usize, usize, Rat)>) -> Self {
        CapacitatedGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Rat)] {
        &self.edges
    }
}

/// Exact s-t minimum cut: the cut value and the side containing `s`.
pub fn max_flow_min_cut(
    g: &CapacitatedGraph,
    s: usize,
    t: usize,
) -> Result<(Rat, Vec<usize>), Error> {
    if s == t {
        return Err(Error::invalid_argument("source equals sink"));
    }
    if s >= g.n || t >= g.n {
        return Err(Error::invalid_argument("terminal out of range"));
    }
    let (scaled, scale) = scale_edges(&g.edges);
    let (value, side) = match &scaled {
        IntEdges::Small(es) => {
            let (v, side) = flow_on_edges(g.n, es, s, t);
            (BigInt::from(v), side)
        }
        IntEdges::Big(es) => flow_on_edges(g.n, es, s, t),
    };
    let value = Rat::new(value, BigInt::from(scale));
    let members = (0..g.n).filter(|&v| side[v]).collect();
    Ok((value, members))
}

// ---------------------------------------------------------------------------
// Integer flow internals, shared with the Gomory-Hu construction.

/// Integer arithmetic needed by the flow and tree code. Implemented for
/// `i128` (fast path) and `BigInt` (unbounded fallback).
pub(crate) trait FlowCap: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn is_positive_cap(&self) -> bool;
    fn add_in(&mut self, other: &Self);
    fn sub_in(&mut self, other: &Self);
    fn to_bigint(&self) -> BigInt;
}

impl FlowCap for i128 {
    fn zero() -> Self {
        0
    }
    fn is_positive_cap(&self) -> bool {
        *self > 0
    }
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_in(&mut self, other: &Self) {
        *self -= other;
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl FlowCap for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn is_positive_cap(&self) -> bool {
        self.is_positive()
    }
    fn add_in(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_in(&mut self, other: &Self) {
        *self -= other;
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Capacity lists after clearing denominators.
pub(crate) enum IntEdges {
    Small(Vec<(usize, usize, i128)>),
    Big(Vec<(usize, usize, BigInt)>),
}

/// Clear denominators across all capacities. Returns the integer edge list
/// and the common scale. Falls back to `BigInt` unless the total scaled
/// capacity leaves ample headroom in `i128`.
pub(crate) fn scale_edges(edges: &[(usize, usize, Rat)]) -> (IntEdges, BigUint) {
    let scale = denominator_lcm(edges.iter().map(|(_, _, c)| c));
    let scale_int = BigInt::from(scale.clone());
    let big: Vec<(usize, usize, BigInt)> = edges
        .iter()
        .map(|(u, v, c)| {
            let scaled = c.numer() * (&scale_int / c.denom());
            (*u, *v, scaled)
        })
        .collect();
    let total: BigInt = big.iter().map(|(_, _, c)| c).sum();
    if total <= BigInt::from(i128::MAX >> 2) {
        let small = big
            .into_iter()
            .map(|(u, v, c)| (u, v, i128::try_from(c).expect("bounded by total")))
            .collect();
        (IntEdges::Small(small), scale)
    } else {
        (IntEdges::Big(big), scale)
    }
}

/// Residual-arc network for one flow computation.
struct Network<T> {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    res: Vec<T>,
}

impl<T: FlowCap> Network<T> {
    fn new(n: usize, edges: &[(usize, usize, T)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut to = Vec::with_capacity(edges.len() * 2);
        let mut res = Vec::with_capacity(edges.len() * 2);
        for (u, v, c) in edges {
            adj[*u].push(to.len());
            to.push(*v);
            res.push(c.clone());
            adj[*v].push(to.len());
            to.push(*u);
            res.push(c.clone());
        }
        Network { adj, to, res }
    }

    /// BFS over positive-residual arcs; returns parent arcs, or `None` if
    /// `t` is unreachable. The final unreachable BFS doubles as the cut side.
    fn bfs(&self, s: usize, t: usize, parent: &mut [usize]) -> (bool, Vec<bool>) {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        let mut queue = std::collections::VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if !seen[v] && self.res[a].is_positive_cap() {
                    seen[v] = true;
                    parent[v] = a;
                    if v == t {
                        return (true, seen);
                    }
                    queue.push_back(v);
                }
            }
        }
        (false, seen)
    }

    fn max_flow(&mut self, s: usize, t: usize) -> (T, Vec<bool>) {
        let n = self.adj.len();
        let mut total = T::zero();
        let mut parent = vec![usize::MAX; n];
        loop {
            let (reached, seen) = self.bfs(s, t, &mut parent);
            if !reached {
                return (total, seen);
            }
            // Bottleneck along the augmenting path.
            let mut bottleneck: Option<T> = None;
            let mut v = t;
            while v != s {
                let a = parent[v];
                if bottleneck.as_ref().map_or(true, |b| self.res[a] < *b) {
                    bottleneck = Some(self.res[a].clone());
                }
                v = self.to[a ^ 1];
            }
            let push = bottleneck.expect("path has at least one arc");
            let mut v = t;
            while v != s {
                let a = parent[v];
                self.res[a].sub_in(&push);
                self.res[a ^ 1].add_in(&push);
                v = self.to[a ^ 1];
            }
            total.add_in(&push);
        }
    }
}

/// Exact max flow over an integer-capacitated undirected edge list.
pub(crate) fn flow_on_edges<T: FlowCap>(
    n: usize,
    edges: &[(usize, usize, T)],
    s: usize,
    t: usize,
) -> (T, Vec<bool>) {
    Network::new(n, edges).max_flow(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn single_edge_cut() {
        let g = CapacitatedGraph::new(2, [(0, 1, rat(5, 7))]).unwrap();
        let (value, side) = max_flow_min_cut(&g, 0, 1).unwrap();
        assert_eq!(value, rat(5, 7));
        assert_eq!(side, vec![0]);
    }

    #[test]
    fn path_bottleneck() {
        let g = CapacitatedGraph::new(3, [(0, 1, rat(1, 1)), (1, 2, rat(1, 2))]).unwrap();
        let (value, side) = max_flow_min_cut(&g, 0, 2).unwrap();
        assert_eq!(value, rat(1, 2));
        assert_eq!(side, vec![0, 1]);
    }

    #[test]
    fn petersen_uniform_is_three_edge_connected() {
        let x = crate::fixtures::petersen_third();
        let g = CapacitatedGraph::from_support(&x);
        for s in 0..10 {
            for t in (s + 1)..10 {
                let (value, _) = max_flow_min_cut(&g, s, t).unwrap();
                assert_eq!(value, rat(1, 1), "pair ({s},{t})");
            }
        }
    }

    #[test]
    fn rejects_equal_terminals_and_negative_caps() {
        let g = CapacitatedGraph::new(2, [(0, 1, rat(1, 1))]).unwrap();
        assert!(max_flow_min_cut(&g, 0, 0).is_err());
        assert!(CapacitatedGraph::new(2, [(0, 1, rat(-1, 2))]).is_err());
    }

    #[test]
    fn merges_parallel_edges_and_drops_self_loops() {
        let g = CapacitatedGraph::new(
            2,
            [
                (0, 1, rat(1, 3)),
                (1, 0, rat(1, 6)),
                (0, 0, rat(7, 1)),
            ],
        )
        .unwrap();
        assert_eq!(g.edges(), &[(0, 1, rat(1, 2))]);
    }

    #[test]
    fn disconnected_terminals_have_zero_cut() {
        let g = CapacitatedGraph::new(4, [(0, 1, rat(1, 1)), (2, 3, rat(1, 1))]).unwrap();
        let (value, side) = max_flow_min_cut(&g, 0, 2).unwrap();
        assert!(value.is_zero());
        assert_eq!(side, vec![0, 1]);
    }

    #[test]
    fn big_capacities_take_bigint_path() {
        // Denominators chosen so the scaled sum exceeds the i128 headroom.
        let huge = Rat::new(BigInt::from(1), BigInt::from(10).pow(40));
        let one = Rat::new(
            BigInt::from(10).pow(39) * 3,
            BigInt::from(10).pow(40),
        );
        let g = CapacitatedGraph::new(
            3,
            [
                (0, 1, huge.clone()),
                (1, 2, one.clone()),
                (0, 2, huge.clone()),
            ],
        )
        .unwrap();
        let (scaled, _) = scale_edges(g.edges());
        assert!(matches!(scaled, IntEdges::Big(_)));
        let (value, _) = max_flow_min_cut(&g, 0, 2).unwrap();
        assert_eq!(value, huge * rat(2, 1));
    }
}
