//! Undirected simple graphs, odd vertex sets and perfect matchings.
//!
//! Vertices are dense integers `0..n-1`. Edges are canonicalized as
//! `(min(u,v), max(u,v))` and indexed densely by insertion order; edge-indexed
//! vectors over different graphs are therefore incomparable by construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;

/// Undirected simple graph on vertices `0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl Graph {
    /// Build a graph from unordered endpoint pairs. Rejects self-loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        let mut canon = Vec::new();
        let mut index = BTreeMap::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid_argument(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::invalid_argument(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if index.insert(e, canon.len()).is_some() {
                return Err(Error::invalid_argument(format!(
                    "duplicate edge ({},{})",
                    e.0, e.1
                )));
            }
            canon.push(e);
        }
        Ok(Graph {
            n,
            edges: canon,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Adjacency lists as `(neighbor, edge id)` pairs, ordered by edge id.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        adj
    }

    /// 2-coloring of every connected component, or `None` if some component
    /// contains an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut color = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &(v, _) in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }
}

/// Odd-cardinality vertex subset, stored sorted.
///
/// The paper-style odd sets additionally require `|S| >= 3`; operations that
/// need that enforce it at the call site, so singletons remain representable
/// (they show up as cut sides of minimum odd cuts).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddSet {
    members: Vec<usize>,
}

impl OddSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        if m.is_empty() {
            return Err(Error::invalid_argument("odd set must be nonempty"));
        }
        if m.len() % 2 == 0 {
            return Err(Error::invalid_argument(format!(
                "set has even cardinality {}",
                m.len()
            )));
        }
        Ok(OddSet { members: m })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Complement within `0..n`; also odd whenever `n` is even.
    pub fn complement(&self, n: usize) -> Result<OddSet, Error> {
        OddSet::new((0..n).filter(|v| !self.contains(*v)))
    }

    /// Membership indicator for dense scans.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.members {
            m[v] = true;
        }
        m
    }

    /// Tie-break order used everywhere a canonical odd set must be chosen:
    /// smaller cardinality first, then lexicographically smaller member list.
    pub fn tie_break_key(&self) -> (usize, &[usize]) {
        (self.members.len(), &self.members)
    }
}

impl fmt::Display for OddSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Perfect matching, stored as canonical sorted vertex pairs covering
/// `0..n-1` exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectMatching {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PerfectMatching {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        let mut covered = vec![false; n];
        let mut canon = Vec::new();
        for (u, v) in pairs {
            if u == v || u >= n || v >= n {
                return Err(Error::invalid_argument(format!(
                    "bad matching pair ({u},{v}) for n={n}"
                )));
            }
            for w in [u, v] {
                if covered[w] {
                    return Err(Error::invalid_argument(format!(
                        "vertex {w} covered twice"
                    )));
                }
                covered[w] = true;
            }
            canon.push((u.min(v), u.max(v)));
        }
        if let Some(miss) = covered.iter().position(|c| !c) {
            return Err(Error::invalid_argument(format!(
                "vertex {miss} not covered by matching"
            )));
        }
        canon.sort_unstable();
        Ok(PerfectMatching { n, pairs: canon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.pairs.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Edge ids of this matching within `g`, or `None` if some pair is not an
    /// edge of `g`.
    pub fn edge_ids(&self, g: &Graph) -> Option<Vec<usize>> {
        self.pairs
            .iter()
            .map(|&(u, v)| g.edge_index(u, v))
            .collect()
    }

    /// Number of matching edges crossing the cut of `set`. Always odd when
    /// the set is odd, since each pair covers two vertices.
    pub fn crossings(&self, set: &OddSet) -> usize {
        self.pairs
            .iter()
            .filter(|&&(u, v)| set.contains(u) != set.contains(v))
            .count()
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({u},{v})")?;
        }
        Ok(())
    }
}
