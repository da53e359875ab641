//! Fractional matching vectors, cuts, decompositions and the arithmetic-only
//! validity checks.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graph::{Graph, OddSet, PerfectMatching};
use crate::rat::{max_denom, Rat};

/// An edge-indexed rational vector over a graph, together with the scale
/// `alpha` it is supposed to satisfy. Construction only enforces structural
/// facts (lengths, `0 <= alpha <= 1`); whether the vector actually is an
/// alpha-fractional perfect matching is decided by `validate_fractional_pm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracMatching {
    graph: Graph,
    values: Vec<Rat>,
    alpha: Rat,
}

impl FracMatching {
    pub fn new(graph: Graph, values: Vec<Rat>, alpha: Rat) -> Result<Self, Error> {
        if values.len() != graph.edge_count() {
            return Err(Error::invalid_argument(format!(
                "{} values for {} edges",
                values.len(),
                graph.edge_count()
            )));
        }
        if alpha.is_negative() || alpha > Rat::one() {
            return Err(Error::invalid_argument(format!(
                "alpha {alpha} outside [0, 1]"
            )));
        }
        Ok(FracMatching {
            graph,
            values,
            alpha,
        })
    }

    /// Vector with the same value on every edge.
    pub fn uniform(graph: Graph, value: Rat, alpha: Rat) -> Result<Self, Error> {
        let m = graph.edge_count();
        FracMatching::new(graph, vec![value; m], alpha)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, edge: usize) -> &Rat {
        &self.values[edge]
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Edge ids with strictly positive value.
    pub fn support_edges(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&e| self.values[e].is_positive())
            .collect()
    }

    /// Number of support edges (the quantity `m` of the input instance).
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| v.is_positive()).count()
    }

    /// Subgraph of edges with strictly positive value.
    pub fn support(&self) -> Graph {
        let edges = self
            .support_edges()
            .into_iter()
            .map(|e| self.graph.endpoints(e));
        Graph::new(self.graph.n(), edges).expect("support of a valid graph is valid")
    }

    /// Exact capacity of the cut of `set`: the sum of values over edges with
    /// exactly one endpoint in the set.
    pub fn cut_capacity(&self, set: &OddSet) -> Result<Rat, Error> {
        let n = self.graph.n();
        if set.members().iter().any(|&v| v >= n) {
            return Err(Error::invalid_argument("set member out of range"));
        }
        if set.len() >= n {
            return Err(Error::invalid_argument("set must be a proper subset"));
        }
        let mask = set.mask(n);
        let mut total = Rat::zero();
        for (e, val) in self.values.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let (u, v) = self.graph.endpoints(e);
            if mask[u] != mask[v] {
                total += val;
            }
        }
        Ok(total)
    }

    /// Per-vertex sums of incident edge values.
    pub fn degree_sums(&self) -> Vec<Rat> {
        let mut sums = vec![Rat::zero(); self.graph.n()];
        for (e, val) in self.values.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let (u, v) = self.graph.endpoints(e);
            sums[u] += val;
            sums[v] += val;
        }
        sums
    }

    /// `y - b*M`, lowering alpha by `b`. Requires `M` inside the support and
    /// `b` at most the smallest value on `M`.
    pub fn subtract_matching(&self, m: &PerfectMatching, b: &Rat) -> Result<FracMatching, Error> {
        if b.is_negative() {
            return Err(Error::invalid_argument("coefficient must be nonnegative"));
        }
        let ids = m.edge_ids(&self.graph).ok_or_else(|| {
            Error::invalid_argument("matching uses an edge outside the graph")
        })?;
        for &e in &ids {
            if !self.values[e].is_positive() && b.is_positive() {
                return Err(Error::invalid_argument(
                    "matching uses an edge outside the support",
                ));
            }
            if *b > self.values[e] {
                let (u, v) = self.graph.endpoints(e);
                return Err(Error::invalid_argument(format!(
                    "coefficient {b} exceeds value {} on edge ({u},{v})",
                    self.values[e]
                )));
            }
        }
        let mut values = self.values.clone();
        for &e in &ids {
            values[e] -= b;
        }
        let alpha = &self.alpha - b;
        if alpha.is_negative() {
            return Err(Error::invalid_argument("coefficient exceeds alpha"));
        }
        Ok(FracMatching {
            graph: self.graph.clone(),
            values,
            alpha,
        })
    }

    /// Largest reduced-form denominator over the support (the instance
    /// quantity `d`); 1 for the zero vector.
    pub fn max_denominator(&self) -> BigUint {
        max_denom(self.values.iter().filter(|v| v.is_positive()))
    }
}

/// Certificate for why a vector fails to be an alpha-fractional perfect
/// matching: the offending edge, vertex, or odd set with its exact capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NegativeValue {
        edge: (usize, usize),
        value: Rat,
    },
    DegreeMismatch {
        vertex: usize,
        sum: Rat,
        alpha: Rat,
    },
    OddCutBelow {
        set: OddSet,
        capacity: Rat,
        alpha: Rat,
    },
    NoPerfectMatching {
        support_edges: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeValue { edge, value } => {
                write!(f, "edge ({},{}) has negative value {}", edge.0, edge.1, value)
            }
            Violation::DegreeMismatch { vertex, sum, alpha } => {
                write!(f, "vertex {vertex} has degree sum {sum} != alpha {alpha}")
            }
            Violation::OddCutBelow {
                set,
                capacity,
                alpha,
            } => write!(
                f,
                "odd set {set} has cut capacity {capacity} < alpha {alpha}"
            ),
            Violation::NoPerfectMatching { support_edges } => write!(
                f,
                "support ({support_edges} edges) has no perfect matching"
            ),
        }
    }
}

/// Ordered list of `(coefficient, matching)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    terms: Vec<(Rat, PerfectMatching)>,
}

impl Decomposition {
    pub fn new(terms: Vec<(Rat, PerfectMatching)>) -> Self {
        Decomposition { terms }
    }

    pub fn terms(&self) -> &[(Rat, PerfectMatching)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> Rat {
        self.terms.iter().map(|(c, _)| c).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::rat;

    #[test]
    fn support_of_uniform_g1_keeps_all_edges() {
        let x = fixtures::g1_third();
        assert_eq!(x.support().edge_count(), 9);
        assert_eq!(x.support_size(), 9);
    }

    #[test]
    fn support_of_zero_vector_is_empty() {
        let g = fixtures::g1();
        let x = FracMatching::uniform(g, rat(0, 1), Rat::one()).unwrap();
        assert_eq!(x.support().edge_count(), 0);
        assert_eq!(x.max_denominator(), 1u32.into());
    }

    #[test]
    fn support_after_subtracting_a_matching_drops_its_edges() {
        let x = fixtures::g1_third();
        // Matching {(a,b),(c,e),(d,f)} = {(0,1),(2,4),(3,5)} subtracted at 1/3.
        let m = PerfectMatching::new(6, [(0, 1), (2, 4), (3, 5)]).unwrap();
        let y = x.subtract_matching(&m, &rat(1, 3)).unwrap();
        let support = y.support();
        assert_eq!(support.edge_count(), 6);
        for (u, v) in m.pairs() {
            assert!(!support.has_edge(*u, *v));
        }
        assert_eq!(y.alpha(), &rat(2, 3));
    }

    #[test]
    fn cut_capacity_examples() {
        let x = fixtures::g1_third();
        // {a,c,e} = {0,2,4}: cut is the three matching edges, capacity 1.
        let s = OddSet::new([0, 2, 4]).unwrap();
        assert_eq!(x.cut_capacity(&s).unwrap(), rat(1, 1));

        let p = fixtures::petersen_third();
        // Outer 5-cycle {a..e} = {0..4}: the 5 spokes cross, capacity 5/3.
        let outer = OddSet::new([0, 1, 2, 3, 4]).unwrap();
        assert_eq!(p.cut_capacity(&outer).unwrap(), rat(5, 3));

        // Singleton cut capacity equals alpha for a fractional PM.
        let single = OddSet::new([7]).unwrap();
        assert_eq!(p.cut_capacity(&single).unwrap(), rat(1, 1));
    }

    #[test]
    fn cut_capacity_rejects_improper_sets() {
        let x = fixtures::g1_third();
        let all = OddSet::new([0, 1, 2, 3, 4, 5]);
        assert!(all.is_err()); // even, not constructible
        let s = OddSet::new([0, 1, 2, 3, 4, 6]);
        assert!(s.is_err());
        let oob = OddSet::new([7]).unwrap();
        assert!(x.cut_capacity(&oob).is_err());
    }

    #[test]
    fn degree_sums_examples() {
        let x = fixtures::g1_third();
        assert!(x.degree_sums().iter().all(|s| *s == rat(1, 1)));

        let zero = FracMatching::uniform(fixtures::g1(), rat(0, 1), Rat::one()).unwrap();
        assert!(zero.degree_sums().iter().all(|s| s.is_zero()));

        // K4 with 1/3 on all six edges: three incident edges per vertex.
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let x = FracMatching::uniform(k4, rat(1, 3), Rat::one()).unwrap();
        assert!(x.degree_sums().iter().all(|s| *s == rat(1, 1)));
    }

    #[test]
    fn subtract_matching_examples() {
        let p = fixtures::petersen_third();
        let spokes = fixtures::petersen_spokes();
        let y = p.subtract_matching(&spokes, &rat(1, 6)).unwrap();
        assert_eq!(y.alpha(), &rat(5, 6));
        for e in 0..y.graph().edge_count() {
            let (u, v) = y.graph().endpoints(e);
            let expect = if spokes.contains_edge(u, v) {
                rat(1, 6)
            } else {
                rat(1, 3)
            };
            assert_eq!(y.value(e), &expect);
        }

        // b = 0 leaves the vector unchanged.
        let same = p.subtract_matching(&spokes, &rat(0, 1)).unwrap();
        assert_eq!(same, p);

        // Exceeding the minimum edge value is an argument error.
        assert!(p.subtract_matching(&spokes, &rat(1, 2)).is_err());
    }

    #[test]
    fn subtract_then_add_back_roundtrips() {
        let p = fixtures::petersen_third();
        let spokes = fixtures::petersen_spokes();
        let b = rat(1, 6);
        let y = p.subtract_matching(&spokes, &b).unwrap();
        let ids = spokes.edge_ids(p.graph()).unwrap();
        let mut values = y.values().to_vec();
        for e in ids {
            values[e] += &b;
        }
        let restored =
            FracMatching::new(p.graph().clone(), values, y.alpha() + &b).unwrap();
        assert_eq!(restored, p);
    }

    #[test]
    fn max_denominator_examples() {
        let x = fixtures::g1_third();
        assert_eq!(x.max_denominator(), 3u32.into());

        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = FracMatching::new(
            g.clone(),
            vec![rat(1, 2), rat(1, 3), rat(1, 6)],
            Rat::one(),
        )
        .unwrap();
        assert_eq!(x.max_denominator(), 6u32.into());

        let ints = FracMatching::new(g, vec![rat(1, 1), rat(0, 1), rat(1, 1)], Rat::one()).unwrap();
        assert_eq!(ints.max_denominator(), 1u32.into());
    }
}
