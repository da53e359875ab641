//! Exact minimum-weight perfect matching on general graphs with nonnegative
//! integer edge weights.
//!
//! The engine is Edmonds' blossom method in the primal-dual formulation of
//! Galil's survey, following the well-known O(n^3) implementation by Joris
//! van Rantwijk (also the basis of several Rust and Python ports). Vertex
//! dual variables are stored doubled so that every quantity stays an exact
//! integer when edge weights are integers; optimality is re-verified from
//! the duals after every solve.
//!
//! Minimum-weight perfect matching is obtained by negating the weights and
//! running the maximum-weight matching in maximum-cardinality mode: among
//! maximum-cardinality matchings the solver maximizes total weight, so when
//! a perfect matching exists the result is a perfect matching of minimum
//! original weight.

use crate::error::Error;
use crate::graph::{Graph, PerfectMatching};

/// Graph with nonnegative integer edge weights, indexed like the graph's
/// edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u64>) -> Result<Self, Error> {
        if weights.len() != graph.edge_count() {
            return Err(Error::invalid_argument(format!(
                "{} weights for {} edges",
                weights.len(),
                graph.edge_count()
            )));
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

/// A perfect matching of minimum total weight, or `None` when the graph has
/// no perfect matching at all.
pub fn min_weight_perfect_matching(
    wg: &WeightedGraph,
) -> Result<Option<PerfectMatching>, Error> {
    let n = wg.graph.n();
    if n % 2 != 0 {
        return Err(Error::invalid_argument(
            "perfect matchings need an even vertex count",
        ));
    }
    if n == 0 {
        return Ok(Some(PerfectMatching::new(0, [])?));
    }
    let edges: Vec<(usize, usize, i64)> = wg
        .graph
        .edges()
        .iter()
        .zip(&wg.weights)
        .map(|(&(u, v), &w)| {
            let w = i64::try_from(w)
                .map_err(|_| Error::invalid_argument("edge weight too large"))?;
            Ok((u, v, -w))
        })
        .collect::<Result<_, Error>>()?;
    let mate = max_weight_matching(n, &edges, true)?;
    if mate.iter().any(|m| m.is_none()) {
        return Ok(None);
    }
    let pairs = (0..n)
        .filter_map(|v| {
            let m = mate[v].unwrap();
            (v < m).then_some((v, m))
        })
        .collect::<Vec<_>>();
    Ok(Some(PerfectMatching::new(n, pairs)?))
}

/// Whether the graph admits a perfect matching (zero-weight call into the
/// same machinery).
pub fn has_perfect_matching(g: &Graph) -> bool {
    if g.n() % 2 != 0 {
        return false;
    }
    if g.n() == 0 {
        return true;
    }
    let edges: Vec<(usize, usize, i64)> =
        g.edges().iter().map(|&(u, v)| (u, v, 0)).collect();
    match max_weight_matching(g.n(), &edges, true) {
        Ok(mate) => mate.iter().all(|m| m.is_some()),
        Err(_) => false,
    }
}

const SENTINEL: usize = usize::MAX;

/// Maximum-weight matching; with `maxcardinality` the solver restricts
/// attention to maximum-cardinality matchings. Returns `mate[v]`, the partner
/// of `v` or `None`. Deterministic for a fixed edge order.
pub(crate) fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    maxcardinality: bool,
) -> Result<Vec<Option<usize>>, Error> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut solver = Solver::new(n, edges, maxcardinality);
    solver.solve()?;
    // After solve, mate[] has been translated from endpoints to vertices.
    Ok(solver
        .mate
        .iter()
        .map(|&p| (p != SENTINEL).then_some(p))
        .collect())
}

/// State of one matching computation.
///
/// Vertices are `0..n`; non-trivial blossoms are `n..2n`. Edge endpoints are
/// numbered `0..2m` with endpoints `2k` and `2k+1` belonging to edge `k`.
/// `dualvar[v]` holds `2*u(v)` for vertices (doubled to stay integral) and
/// `z(b)` for blossoms. Terms like S-vertex and T-blossom are Galil's.
struct Solver {
    nvertex: usize,
    nedge: usize,
    maxcardinality: bool,
    // Edge weights, pre-doubled so all slacks stay even.
    edges: Vec<(usize, usize, i64)>,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl Solver {
    fn new(n: usize, edges: &[(usize, usize, i64)], maxcardinality: bool) -> Solver {
        let doubled: Vec<(usize, usize, i64)> =
            edges.iter().map(|&(i, j, w)| (i, j, 2 * w)).collect();
        let nedge = doubled.len();
        let maxweight = doubled.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let endpoint = (0..2 * nedge)
            .map(|p| {
                if p % 2 == 0 {
                    doubled[p / 2].0
                } else {
                    doubled[p / 2].1
                }
            })
            .collect();
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in doubled.iter().enumerate() {
            assert!(i != j && i < n && j < n);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.extend(vec![SENTINEL; n]);
        let mut dualvar = vec![maxweight; n];
        dualvar.extend(vec![0; n]);
        Solver {
            nvertex: n,
            nedge,
            maxcardinality,
            edges: doubled,
            endpoint,
            neighbend,
            mate: vec![SENTINEL; n],
            label: vec![0; 2 * n],
            labelend: vec![SENTINEL; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![SENTINEL; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![SENTINEL; 2 * n],
            blossombestedges: vec![Vec::new(); 2 * n],
            unusedblossoms: (n..2 * n).collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    // 2 * slack of edge k (not meaningful inside blossoms).
    fn slack(&self, k: usize) -> i64 {
        let (i, j, wt) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * wt
    }

    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        if b < self.nvertex {
            leaves.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                if t < self.nvertex {
                    leaves.push(t);
                } else {
                    leaves.extend(self.blossom_leaves(t));
                }
            }
        }
        leaves
    }

    /// Assign label `t` to the top-level blossom containing vertex `w`,
    /// reached through the edge with remote endpoint `p`.
    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        if t == 1 {
            // S-blossom: its vertices join the scan queue.
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else if t == 2 {
            // T-blossom: label its mate (through the base) with S.
            let base = self.blossombase[b];
            assert!(self.mate[base] != SENTINEL);
            let mbase = self.mate[base];
            let ep = self.endpoint[mbase];
            self.assign_label(ep, 1, mbase ^ 1);
        }
    }

    /// Trace back from vertices v and w to find either a new blossom's base
    /// or an augmenting path (SENTINEL).
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = SENTINEL;
        let (mut v, mut w) = (v, w);
        while v != SENTINEL || w != SENTINEL {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            assert!(self.label[b] == 1);
            path.push(b);
            self.label[b] = 5;
            assert!(self.labelend[b] == self.mate[self.blossombase[b]]);
            if self.labelend[b] == SENTINEL {
                v = SENTINEL;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                assert!(self.label[b] == 2);
                assert!(self.labelend[b] != SENTINEL);
                v = self.endpoint[self.labelend[b]];
            }
            if w != SENTINEL {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    /// Construct a new S-blossom with the given base around edge k.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("free blossom id");
        self.blossombase[b] = base;
        self.blossomparent[b] = SENTINEL;
        self.blossomparent[bb] = b;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            self.blossomchilds[b].push(bv);
            self.blossomendps[b].push(self.labelend[bv]);
            assert!(
                self.label[bv] == 2
                    || (self.label[bv] == 1
                        && self.labelend[bv] == self.mate[self.blossombase[bv]])
            );
            assert!(self.labelend[bv] != SENTINEL);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        self.blossomchilds[b].push(bb);
        self.blossomchilds[b].reverse();
        self.blossomendps[b].reverse();
        self.blossomendps[b].push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            self.blossomchilds[b].push(bw);
            self.blossomendps[b].push(self.labelend[bw] ^ 1);
            assert!(
                self.label[bw] == 2
                    || (self.label[bw] == 1
                        && self.labelend[bw] == self.mate[self.blossombase[bw]])
            );
            assert!(self.labelend[bw] != SENTINEL);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        assert!(self.label[bb] == 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        for v in self.blossom_leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }
        // Recompute the least-slack edges to neighbouring S-blossoms.
        let mut bestedgeto = vec![SENTINEL; 2 * self.nvertex];
        for bv in self.blossomchilds[b].clone() {
            let nblists: Vec<Vec<usize>> = if self.blossombestedges[bv].is_empty() {
                self.blossom_leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossombestedges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == SENTINEL
                            || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv] = Vec::new();
            self.bestedge[bv] = SENTINEL;
        }
        self.blossombestedges[b] = bestedgeto
            .into_iter()
            .filter(|&k| k != SENTINEL)
            .collect();
        self.bestedge[b] = SENTINEL;
        for k in self.blossombestedges[b].clone() {
            if self.bestedge[b] == SENTINEL || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
    }

    /// Expand the given top-level blossom.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = SENTINEL;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.blossom_leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        // A T-blossom expanded during a stage must relabel its sub-blossoms.
        if !endstage && self.label[b] == 2 {
            assert!(self.labelend[b] != SENTINEL);
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&r| r == entrychild)
                .unwrap() as i64;
            let (jstep, endptrick): (i64, usize) = if j & 1 != 0 {
                j -= self.blossomchilds[b].len() as i64;
                (1, 0)
            } else {
                (-1, 1)
            };
            // Walk to the base, relabeling T- and S-sub-blossoms in turn.
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = wrap(&self.blossomendps[b], j - endptrick as i64) ^ endptrick ^ 1;
                self.label[self.endpoint[q]] = 0;
                let ep = self.endpoint[p ^ 1];
                self.assign_label(ep, 2, p);
                self.allowedge[wrap(&self.blossomendps[b], j - endptrick as i64) / 2] = true;
                j += jstep;
                p = wrap(&self.blossomendps[b], j - endptrick as i64) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            // Relabel the base T-sub-blossom without stepping to its mate.
            let bv = wrap(&self.blossomchilds[b], j);
            self.label[self.endpoint[p ^ 1]] = 2;
            self.label[bv] = 2;
            self.labelend[self.endpoint[p ^ 1]] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = SENTINEL;
            // The remaining sub-blossoms keep whatever reachability they got
            // from outside the expanding blossom.
            j += jstep;
            while wrap(&self.blossomchilds[b], j) != entrychild {
                let bv = wrap(&self.blossomchilds[b], j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut v = SENTINEL;
                for t in self.blossom_leaves(bv) {
                    v = t;
                    if self.label[v] != 0 {
                        break;
                    }
                }
                if v != SENTINEL && self.label[v] != 0 {
                    assert!(self.label[v] == 2);
                    assert!(self.inblossom[v] == bv);
                    self.label[v] = 0;
                    self.label[self.endpoint[self.mate[self.blossombase[bv]]]] = 0;
                    let lblend = self.labelend[v];
                    self.assign_label(v, 2, lblend);
                }
                j += jstep;
            }
        }
        self.label[b] = 0;
        self.labelend[b] = SENTINEL;
        self.blossombase[b] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        self.blossombestedges[b] = Vec::new();
        self.unusedblossoms.push(b);
    }

    /// Swap matched and unmatched edges along the alternating path through
    /// blossom b from vertex v to the base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nvertex {
            self.augment_blossom(t, v);
        }
        let i = self.blossomchilds[b].iter().position(|&r| r == t).unwrap();
        let mut j = i as i64;
        let (jstep, endptrick): (i64, usize) = if i & 1 != 0 {
            j -= self.blossomchilds[b].len() as i64;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = wrap(&self.blossomchilds[b], j);
            let p = wrap(&self.blossomendps[b], j - endptrick as i64) ^ endptrick;
            if t >= self.nvertex {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = wrap(&self.blossomchilds[b], j);
            if t >= self.nvertex {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        assert!(self.blossombase[b] == v);
    }

    /// Augment along the path through edge k between two S-vertices.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                assert!(self.label[bs] == 1);
                assert!(self.labelend[bs] == self.mate[self.blossombase[bs]]);
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == SENTINEL {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                assert!(self.label[bt] == 2);
                assert!(self.labelend[bt] != SENTINEL);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                assert!(self.blossombase[bt] == t);
                if bt >= self.nvertex {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    /// Re-derive optimality from the duals: nonnegative slacks everywhere,
    /// zero slack on matched edges, zero dual on single vertices, positive
    /// blossoms full.
    fn verify_optimum(&self) -> Result<(), Error> {
        let vdualoffset = if self.maxcardinality {
            (-self.dualvar[..self.nvertex].iter().min().unwrap_or(&0)).max(0)
        } else {
            0
        };
        for k in 0..self.nedge {
            let (i, j, _) = self.edges[k];
            let mut s = self.slack(k);
            let mut iblossoms = vec![i];
            let mut jblossoms = vec![j];
            while self.blossomparent[*iblossoms.last().unwrap()] != SENTINEL {
                iblossoms.push(self.blossomparent[*iblossoms.last().unwrap()]);
            }
            while self.blossomparent[*jblossoms.last().unwrap()] != SENTINEL {
                jblossoms.push(self.blossomparent[*jblossoms.last().unwrap()]);
            }
            iblossoms.reverse();
            jblossoms.reverse();
            for (&bi, &bj) in iblossoms.iter().zip(jblossoms.iter()) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dualvar[bi];
            }
            if s < 0 {
                return Err(Error::invariant("matching dual has negative slack"));
            }
            if (self.mate[i] / 2 == k || self.mate[j] / 2 == k)
                && (self.mate[i] / 2 != k || self.mate[j] / 2 != k || s != 0)
            {
                return Err(Error::invariant("matched edge with nonzero slack"));
            }
        }
        for v in 0..self.nvertex {
            if self.mate[v] == SENTINEL && self.dualvar[v] + vdualoffset != 0 {
                return Err(Error::invariant("single vertex with nonzero dual"));
            }
        }
        for b in self.nvertex..2 * self.nvertex {
            if self.blossombase[b] != SENTINEL && self.dualvar[b] > 0 {
                if self.blossomendps[b].len() % 2 != 1 {
                    return Err(Error::invariant("positive blossom of even length"));
                }
                for (ix, &p) in self.blossomendps[b].iter().enumerate() {
                    if ix % 2 == 1
                        && (self.mate[self.endpoint[p]] != p ^ 1
                            || self.mate[self.endpoint[p ^ 1]] != p)
                    {
                        return Err(Error::invariant("positive blossom is not full"));
                    }
                }
            }
        }
        Ok(())
    }

    fn solve(&mut self) -> Result<(), Error> {
        if self.nedge == 0 {
            return Ok(());
        }
        for _stage in 0..self.nvertex {
            // A stage looks for one augmenting path.
            self.label = vec![0; 2 * self.nvertex];
            self.bestedge = vec![SENTINEL; 2 * self.nvertex];
            for b in self.nvertex..2 * self.nvertex {
                self.blossombestedges[b] = Vec::new();
            }
            self.allowedge = vec![false; self.nedge];
            self.queue = Vec::new();
            for v in 0..self.nvertex {
                if self.mate[v] == SENTINEL && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, SENTINEL);
                }
            }
            let mut augmented = false;
            loop {
                // A substage: scan, then pump slack out of the duals.
                while !self.queue.is_empty() && !augmented {
                    let v = self.queue.pop().unwrap();
                    assert!(self.label[self.inblossom[v]] == 1);
                    for p in self.neighbend[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != SENTINEL {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                assert!(self.label[self.inblossom[w]] == 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == SENTINEL
                                || kslack < self.slack(self.bestedge[b])
                            {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == SENTINEL
                                || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // Choose the smallest admissible dual change.
                let mut deltatype = -1;
                let mut delta = 0;
                let mut deltaedge = 0;
                let mut deltablossom = 0;
                if !self.maxcardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..self.nvertex].iter().min().unwrap();
                }
                for v in 0..self.nvertex {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != SENTINEL {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * self.nvertex {
                    if self.blossomparent[b] == SENTINEL
                        && self.label[b] == 1
                        && self.bestedge[b] != SENTINEL
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        // Slack between S-blossoms stays even with integer
                        // weights; the halving below is exact.
                        assert!(kslack % 2 == 0);
                        let d = kslack / 2;
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL
                        && self.blossomparent[b] == SENTINEL
                        && self.label[b] == 2
                        && (deltatype == -1 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == -1 {
                    // Max-cardinality optimum reached; final clamp makes the
                    // duals verifiable.
                    assert!(self.maxcardinality);
                    deltatype = 1;
                    delta = (*self.dualvar[..self.nvertex].iter().min().unwrap()).max(0);
                }

                for v in 0..self.nvertex {
                    match self.label[self.inblossom[v]] {
                        0 => {}
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => unreachable!("bad label"),
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL && self.blossomparent[b] == SENTINEL {
                        match self.label[b] {
                            0 => {}
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => unreachable!("bad label"),
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        let (mut i, j, _) = self.edges[deltaedge];
                        self.allowedge[deltaedge] = true;
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        assert!(self.label[self.inblossom[i]] == 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        assert!(self.label[self.inblossom[i]] == 1);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(deltablossom, false),
                    _ => unreachable!("bad delta type"),
                }
            }

            if !augmented {
                break;
            }
            for b in self.nvertex..2 * self.nvertex {
                if self.blossomparent[b] == SENTINEL
                    && self.blossombase[b] != SENTINEL
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
        self.verify_optimum()?;
        for v in 0..self.nvertex {
            if self.mate[v] != SENTINEL {
                self.mate[v] = self.endpoint[self.mate[v]];
            }
        }
        for v in 0..self.nvertex {
            assert!(self.mate[v] == SENTINEL || self.mate[self.mate[v]] == v);
        }
        Ok(())
    }
}

/// Python-style indexing: negative indices count from the back.
fn wrap(v: &[usize], index: i64) -> usize {
    if index >= 0 {
        v[index as usize]
    } else {
        v[v.len() - (-index) as usize]
    }
}
