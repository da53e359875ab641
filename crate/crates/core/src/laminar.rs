//! Maximal laminar families of tight odd alpha-cuts, their containment tree,
//! the grow-only update between phases, and the derived edge weights.

use std::collections::VecDeque;

use crate::error::Error;
use crate::frac::FracMatching;
use crate::graph::{Graph, OddSet, PerfectMatching};
use crate::maxflow::CapacitatedGraph;
use crate::oddcut::{validate_fractional_pm, SweepCounts, TightCutSearch, Validity};
use crate::rat::Rat;

/// Laminar family of tight odd alpha-cuts, stored with the containment tree
/// rooted at the whole vertex set. Members keep their insertion order; the
/// family only ever grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarFamily {
    n: usize,
    alpha: Rat,
    members: Vec<OddSet>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root_children: Vec<usize>,
}

impl LaminarFamily {
    pub fn empty(n: usize, alpha: Rat) -> Self {
        LaminarFamily {
            n,
            alpha,
            members: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
            root_children: Vec::new(),
        }
    }

    /// Build a family from explicit member sets, checking laminarity and the
    /// size bound. Members must already be tight for whatever vector the
    /// family will be used with; that is the caller's contract.
    pub fn from_sets(
        n: usize,
        alpha: Rat,
        sets: impl IntoIterator<Item = OddSet>,
    ) -> Result<Self, Error> {
        let mut fam = LaminarFamily::empty(n, alpha);
        for s in sets {
            if !fam.insert(s)? {
                return Err(Error::invalid_argument(
                    "sets are not laminar or not distinct",
                ));
            }
        }
        fam.check_invariants()?;
        Ok(fam)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    /// The same family re-labeled for a new scale; members must be tight at
    /// the new alpha (this is the phase transition of the decomposition
    /// loop, where every member loses exactly the subtracted coefficient).
    pub fn with_alpha(mut self, alpha: Rat) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in insertion order.
    pub fn sets(&self) -> &[OddSet] {
        &self.members
    }

    /// Member indices of the children of `member`, or of the root when
    /// `member` is `None`.
    pub fn children_of(&self, member: Option<usize>) -> &[usize] {
        match member {
            Some(i) => &self.children[i],
            None => &self.root_children,
        }
    }

    /// Number of members whose cut contains each edge of `g`:
    /// `w(e) = |cuts(e)|`.
    pub fn edge_weights(&self, g: &Graph) -> Vec<u64> {
        let masks: Vec<Vec<bool>> = self.members.iter().map(|s| s.mask(self.n)).collect();
        g.edges()
            .iter()
            .map(|&(u, v)| {
                masks
                    .iter()
                    .filter(|mask| mask[u] != mask[v])
                    .count() as u64
            })
            .collect()
    }

    /// Whether `set` can be added: distinct from all members and laminar
    /// (disjoint or nested) with each of them.
    pub fn is_compatible(&self, set: &OddSet) -> bool {
        self.members.iter().all(|m| {
            if m == set {
                return false;
            }
            let both: usize = set.members().iter().filter(|v| m.contains(**v)).count();
            both == 0 || both == set.len() || both == m.len()
        })
    }

    /// Insert a compatible set, restructuring the tree. Returns false when
    /// the set is already present or crosses a member.
    fn insert(&mut self, set: OddSet) -> Result<bool, Error> {
        if set.len() < 3 || set.len() + 3 > self.n {
            return Err(Error::invalid_argument(format!(
                "member {set} outside the odd-set window for n={}",
                self.n
            )));
        }
        if set.members().iter().any(|&v| v >= self.n) {
            return Err(Error::invalid_argument("member out of range"));
        }
        if !self.is_compatible(&set) {
            return Ok(false);
        }
        // Parent: the smallest member strictly containing the set.
        let parent = self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                m.len() > set.len() && set.members().iter().all(|v| m.contains(*v))
            })
            .min_by_key(|(_, m)| m.len())
            .map(|(i, _)| i);
        let idx = self.members.len();
        // Children of the parent now inside the new set move under it.
        let siblings: Vec<usize> = match parent {
            Some(p) => std::mem::take(&mut self.children[p]),
            None => std::mem::take(&mut self.root_children),
        };
        let (mine, keep): (Vec<usize>, Vec<usize>) = siblings
            .into_iter()
            .partition(|&c| self.members[c].members().iter().all(|v| set.contains(*v)));
        for &c in &mine {
            self.parent[c] = Some(idx);
        }
        let slot = match parent {
            Some(p) => &mut self.children[p],
            None => &mut self.root_children,
        };
        *slot = keep;
        slot.push(idx);
        self.members.push(set);
        self.parent.push(parent);
        self.children.push(mine);
        Ok(true)
    }

    /// Runtime audit: pairwise laminarity, tree consistency and the size
    /// bound `|L| <= n/2 - 1`.
    pub fn check_invariants(&self) -> Result<(), Error> {
        if self.n >= 2 && self.members.len() + 1 > self.n / 2 {
            return Err(Error::invariant(format!(
                "laminar family has {} members, above the n/2 - 1 = {} bound",
                self.members.len(),
                self.n / 2 - 1
            )));
        }
        for i in 0..self.members.len() {
            for j in (i + 1)..self.members.len() {
                let (a, b) = (&self.members[i], &self.members[j]);
                let both = a.members().iter().filter(|v| b.contains(**v)).count();
                if !(both == 0 || both == a.len() || both == b.len()) || a == b {
                    return Err(Error::invariant(format!(
                        "members {a} and {b} violate laminarity"
                    )));
                }
            }
        }
        for (i, p) in self.parent.iter().enumerate() {
            let listed = match p {
                Some(pi) => self.children[*pi].contains(&i),
                None => self.root_children.contains(&i),
            };
            if !listed {
                return Err(Error::invariant("containment tree is inconsistent"));
            }
        }
        Ok(())
    }
}

/// `|delta(S) ∩ M|`: how often a matching crosses the cut of an odd set.
pub fn crossings(set: &OddSet, matching: &PerfectMatching) -> usize {
    matching.crossings(set)
}

/// Build a maximal laminar family of tight odd alpha-cuts of `x`.
pub fn build_maximal_laminar(x: &FracMatching) -> Result<LaminarFamily, Error> {
    match validate_fractional_pm(x)? {
        Validity::Valid => {}
        Validity::Violated(v) => return Err(Error::Infeasible(v)),
    }
    update_laminar(
        &LaminarFamily::empty(x.graph().n(), x.alpha().clone()),
        x,
    )
}

/// Grow `l` into a family that is maximal for `x` at `x.alpha`, keeping every
/// existing member. Existing members must still be tight; anything else is an
/// upstream algorithmic bug and reported as an invariant violation.
pub fn update_laminar(l: &LaminarFamily, x: &FracMatching) -> Result<LaminarFamily, Error> {
    update_laminar_counted(l, x, &mut SweepCounts::default())
}

pub(crate) fn update_laminar_counted(
    l: &LaminarFamily,
    x: &FracMatching,
    counts: &mut SweepCounts,
) -> Result<LaminarFamily, Error> {
    let n = x.graph().n();
    if n != l.n() {
        return Err(Error::invalid_argument("family and vector disagree on n"));
    }
    for m in l.sets() {
        let cap = x.cut_capacity(m)?;
        if &cap != x.alpha() {
            return Err(Error::invariant(format!(
                "laminar member {m} has capacity {cap} != alpha {}",
                x.alpha()
            )));
        }
    }
    let mut fam = l.clone();
    fam.alpha = x.alpha().clone();
    if n < 6 {
        return Ok(fam);
    }

    // First sweep the uncontracted instance and greedily insert everything
    // compatible, smallest sets first. The contracted tree-walk below then
    // certifies maximality and reveals cuts that are masked until crossing
    // cuts are shrunk away.
    let g = CapacitatedGraph::from_support(x);
    let search = TightCutSearch::new(&g, x.alpha(), vec![1; n])?;
    let (mut pool, c) = search.run()?;
    counts.add(c);
    pool.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    for side in pool {
        let set = OddSet::new(side)?;
        if fam.is_compatible(&set) {
            confirm_tight(x, &set)?;
            fam.insert(set)?;
        }
    }
    if fam.is_empty() {
        // Nothing found on the uncontracted graph and nothing to contract:
        // the tree walk would repeat the identical sweep.
        return Ok(fam);
    }

    // Tree walk, parent before child, revisiting each node until it yields
    // nothing new; newly created nodes are walked too.
    let mut queue: VecDeque<Option<usize>> = VecDeque::from([None]);
    while let Some(node) = queue.pop_front() {
        loop {
            let candidates = search_node(&fam, node, x, counts)?;
            let mut inserted = false;
            for side in candidates {
                let set = OddSet::new(side)?;
                if fam.is_compatible(&set) {
                    confirm_tight(x, &set)?;
                    fam.insert(set)?;
                    inserted = true;
                }
            }
            if !inserted {
                break;
            }
        }
        for &c in fam.children_of(node) {
            queue.push_back(Some(c));
        }
    }
    fam.check_invariants()?;
    Ok(fam)
}

fn confirm_tight(x: &FracMatching, set: &OddSet) -> Result<(), Error> {
    let cap = x.cut_capacity(set)?;
    if &cap != x.alpha() {
        return Err(Error::invariant(format!(
            "candidate {set} has capacity {cap} != alpha {}",
            x.alpha()
        )));
    }
    Ok(())
}

/// Search for new tight odd cuts strictly inside `node` (root = whole vertex
/// set): contract everything outside the node and each child to single
/// vertices, sweep the contracted graph, and expand the qualifying sides back
/// to original vertex sets.
fn search_node(
    fam: &LaminarFamily,
    node: Option<usize>,
    x: &FracMatching,
    counts: &mut SweepCounts,
) -> Result<Vec<Vec<usize>>, Error> {
    let n = x.graph().n();
    let inside: Vec<bool> = match node {
        Some(i) => fam.sets()[i].mask(n),
        None => vec![true; n],
    };
    let children = fam.children_of(node);

    // Quotient ids: interior vertices ascending, then one per child, then one
    // for the outside (when not at the root).
    let mut qmap = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut interior_of = Vec::new();
    for v in 0..n {
        if inside[v] && !children.iter().any(|&c| fam.sets()[c].contains(v)) {
            qmap[v] = sizes.len();
            interior_of.push(v);
            sizes.push(1);
        }
    }
    let child_base = sizes.len();
    for &c in children {
        for &v in fam.sets()[c].members() {
            qmap[v] = sizes.len();
        }
        sizes.push(fam.sets()[c].len());
    }
    let outside_id = if node.is_some() {
        for v in 0..n {
            if !inside[v] {
                qmap[v] = sizes.len();
            }
        }
        sizes.push(n - inside.iter().filter(|b| **b).count());
        Some(sizes.len() - 1)
    } else {
        None
    };
    let qn = sizes.len();
    if qn < 4 {
        // No room for a cut with both expanded sides of size >= 3 that is
        // also new (supervertices alone reproduce existing sets).
        return Ok(Vec::new());
    }

    let edges = x.support_edges().into_iter().map(|e| {
        let (u, v) = x.graph().endpoints(e);
        (qmap[u], qmap[v], x.value(e).clone())
    });
    let qg = CapacitatedGraph::new(qn, edges)?;
    let search = TightCutSearch::new(&qg, x.alpha(), sizes)?;
    let (sides, c) = search.run()?;
    counts.add(c);
    let mut expanded: Vec<Vec<usize>> = Vec::new();
    for side in sides {
        if let Some(out) = outside_id {
            if side.contains(&out) {
                continue;
            }
        }
        let mut t = Vec::new();
        for q in side {
            if q < child_base {
                t.push(interior_of[q]);
            } else {
                let child = children[q - child_base];
                t.extend_from_slice(fam.sets()[child].members());
            }
        }
        t.sort_unstable();
        expanded.push(t);
    }
    expanded.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    expanded.dedup();
    Ok(expanded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::rat;

    #[test]
    fn g1_family_is_both_triangle_sides() {
        let fam = build_maximal_laminar(&fixtures::g1_third()).unwrap();
        let sets: Vec<_> = fam.sets().iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn petersen_family_is_empty() {
        let fam = build_maximal_laminar(&fixtures::petersen_third()).unwrap();
        assert!(fam.is_empty());
    }

    #[test]
    fn c6_family_is_two_opposite_triples() {
        let x = fixtures::c6_half();
        let fam = build_maximal_laminar(&x).unwrap();
        let sets: Vec<_> = fam.sets().iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        // Brute maximality: no other tight odd cut can be added laminarly.
        for mask in 0u32..(1 << 6) {
            let members: Vec<usize> = (0..6).filter(|v| mask >> v & 1 == 1).collect();
            if members.len() % 2 == 0 || members.len() < 3 || members.len() > 3 {
                continue;
            }
            let set = OddSet::new(members).unwrap();
            if x.cut_capacity(&set).unwrap() == rat(1, 1) {
                assert!(
                    !fam.is_compatible(&set),
                    "tight cut {set} could still be added"
                );
            }
        }
    }

    #[test]
    fn petersen_after_spoke_term_gains_the_inner_cycle() {
        let y = fixtures::petersen_third()
            .subtract_matching(&fixtures::petersen_spokes(), &rat(1, 6))
            .unwrap();
        let fam = build_maximal_laminar(&y).unwrap();
        let inner = OddSet::new([5, 6, 7, 8, 9]).unwrap();
        assert!(fam.sets().contains(&inner), "family {:?}", fam.sets());
        for s in fam.sets() {
            assert_eq!(y.cut_capacity(s).unwrap(), rat(5, 6));
        }
    }

    #[test]
    fn update_is_idempotent_and_matches_build() {
        let x = fixtures::g1_third();
        let built = build_maximal_laminar(&x).unwrap();
        let again = update_laminar(&built, &x).unwrap();
        assert_eq!(built, again);

        let from_empty =
            update_laminar(&LaminarFamily::empty(6, rat(1, 1)), &x).unwrap();
        assert_eq!(built, from_empty);
    }

    #[test]
    fn update_rejects_stale_members() {
        let x = fixtures::g1_third();
        let fam = LaminarFamily::from_sets(
            6,
            rat(1, 1),
            [OddSet::new([0, 1, 2]).unwrap()],
        )
        .unwrap();
        // {0,1,2} has capacity 5/3 under x, not 1.
        assert!(matches!(
            update_laminar(&fam, &x),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn edge_weights_examples() {
        let g = fixtures::g1();
        let fam = build_maximal_laminar(&fixtures::g1_third()).unwrap();
        let w = fam.edge_weights(&g);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let expect = if matches!((u, v), (0, 1) | (2, 3) | (4, 5)) {
                2
            } else {
                0
            };
            assert_eq!(w[e], expect, "edge ({u},{v})");
        }

        let empty = LaminarFamily::empty(6, rat(1, 1));
        assert!(empty.edge_weights(&g).iter().all(|w| *w == 0));

        let p = fixtures::petersen();
        let fam = LaminarFamily::from_sets(
            10,
            rat(5, 6),
            [OddSet::new([5, 6, 7, 8, 9]).unwrap()],
        )
        .unwrap();
        let w = fam.edge_weights(&p);
        for (e, &(u, v)) in p.edges().iter().enumerate() {
            let is_spoke = fixtures::petersen_spokes().contains_edge(u, v);
            assert_eq!(w[e], u64::from(is_spoke), "edge ({u},{v})");
        }
    }

    #[test]
    fn crossings_examples() {
        let spokes = fixtures::petersen_spokes();
        let inner = OddSet::new([5, 6, 7, 8, 9]).unwrap();
        assert_eq!(crossings(&inner, &spokes), 5);

        let m = PerfectMatching::new(6, [(0, 1), (2, 4), (3, 5)]).unwrap();
        let s = OddSet::new([0, 2, 4]).unwrap();
        assert_eq!(crossings(&s, &m), 1);
    }

    #[test]
    fn from_sets_rejects_bad_families() {
        // Crossing pair.
        let crossing = LaminarFamily::from_sets(
            8,
            rat(1, 1),
            [
                OddSet::new([0, 1, 2]).unwrap(),
                OddSet::new([2, 3, 4]).unwrap(),
            ],
        );
        assert!(crossing.is_err());
        // Outside the [3, n-3] window.
        let too_big = LaminarFamily::from_sets(8, rat(1, 1), [OddSet::new(0..7).unwrap()]);
        assert!(too_big.is_err());
        let singleton = LaminarFamily::from_sets(8, rat(1, 1), [OddSet::new([0]).unwrap()]);
        assert!(singleton.is_err());
        // Nested chains are fine.
        let nested = LaminarFamily::from_sets(
            12,
            rat(1, 1),
            [
                OddSet::new([0, 1, 2]).unwrap(),
                OddSet::new(0..5).unwrap(),
                OddSet::new(0..7).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(nested.len(), 3);
        assert_eq!(nested.children_of(None), &[2]);
        assert_eq!(nested.children_of(Some(2)), &[1]);
        assert_eq!(nested.children_of(Some(1)), &[0]);
    }
}
