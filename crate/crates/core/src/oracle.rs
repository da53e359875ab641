//! Brute-force ground truth for small instances: perfect-matching
//! enumeration, odd-cut enumeration over all subsets, exact linear-algebra
//! decompositions, and all-pairs min cuts. Everything here shares the same
//! exact rational arithmetic as the rest of the crate; the only difference
//! from the production code paths is exponential cost, which the size limits
//! keep in check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::frac::{Decomposition, FracMatching};
use crate::graph::{Graph, OddSet, PerfectMatching};
use crate::maxflow::CapacitatedGraph;
use crate::oddcut::OddCutResult;
use crate::rat::{denominator_lcm, Rat};

/// Hard ceilings for the exponential searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n_enumeration: usize,
    pub max_n_subsets: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_n_enumeration: 14,
            max_n_subsets: 12,
        }
    }
}

fn check_limit(n: usize, limit: usize, what: &str) -> Result<(), Error> {
    if n > limit {
        return Err(Error::size_limit(format!(
            "{what} supports n <= {limit}, got {n}"
        )));
    }
    Ok(())
}

/// All perfect matchings of `g`, in a fixed order (vertices matched lowest
/// first, partner edges tried in edge-id order).
pub fn enumerate_perfect_matchings(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<Vec<PerfectMatching>, Error> {
    check_limit(g.n(), limits.max_n_enumeration, "matching enumeration")?;
    if g.n() % 2 != 0 {
        return Ok(Vec::new());
    }
    let adj = g.adjacency();
    let mut covered = vec![false; g.n()];
    let mut current = Vec::new();
    let mut out = Vec::new();
    fn recurse(
        n: usize,
        adj: &[Vec<(usize, usize)>],
        covered: &mut [bool],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<PerfectMatching>,
    ) {
        let Some(u) = (0..n).find(|&v| !covered[v]) else {
            out.push(PerfectMatching::new(n, current.iter().copied()).unwrap());
            return;
        };
        covered[u] = true;
        for &(v, _) in &adj[u] {
            if !covered[v] {
                covered[v] = true;
                current.push((u, v));
                recurse(n, adj, covered, current, out);
                current.pop();
                covered[v] = false;
            }
        }
        covered[u] = false;
    }
    recurse(g.n(), &adj, &mut covered, &mut current, &mut out);
    Ok(out)
}

/// Scaled integer edge list for fast subset sweeps: (u, v, value * scale).
fn scaled_values(x: &FracMatching) -> (Vec<(usize, usize, i128)>, BigInt) {
    let scale = BigInt::from(denominator_lcm(x.values().iter()));
    let edges = x
        .support_edges()
        .into_iter()
        .map(|e| {
            let (u, v) = x.graph().endpoints(e);
            let scaled = x.value(e).numer() * (&scale / x.value(e).denom());
            (
                u,
                v,
                i128::try_from(scaled).expect("oracle instances stay small"),
            )
        })
        .collect();
    (edges, scale)
}

/// Exact minimum over all odd subsets with `min_size <= |S| <= n-1`, same
/// tie-break as the production minimum odd cut (capacity, then size, then
/// lexicographic members).
pub fn brute_min_odd_cut(
    x: &FracMatching,
    min_size: usize,
    limits: &OracleLimits,
) -> Result<OddCutResult, Error> {
    let n = x.graph().n();
    check_limit(n, limits.max_n_subsets, "odd-cut enumeration")?;
    if n < 2 || n % 2 != 0 {
        return Err(Error::invalid_argument("need an even vertex count"));
    }
    let (edges, scale) = scaled_values(x);
    let mut best: Option<(i128, Vec<usize>)> = None;
    for mask in 1u32..(1 << n) - 1 {
        let size = mask.count_ones() as usize;
        if size % 2 == 0 || size < min_size {
            continue;
        }
        let cap: i128 = edges
            .iter()
            .filter(|(u, v, _)| (mask >> u & 1) != (mask >> v & 1))
            .map(|(_, _, c)| c)
            .sum();
        let better = match &best {
            None => true,
            Some((bcap, bmembers)) => {
                if cap != *bcap {
                    cap < *bcap
                } else if size != bmembers.len() {
                    size < bmembers.len()
                } else {
                    let members: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                    members < *bmembers
                }
            }
        };
        if better {
            best = Some((cap, (0..n).filter(|v| mask >> v & 1 == 1).collect()));
        }
    }
    let (cap, members) = best.ok_or_else(|| Error::invalid_argument("no odd set in range"))?;
    Ok(OddCutResult {
        set: OddSet::new(members)?,
        capacity: Rat::new(BigInt::from(cap), scale),
    })
}

/// Exact minimum of `(y(delta(S)) - alpha) / (|delta(S) ∩ M| - 1)` over odd
/// sets `S` (|S| >= 3) crossed by the matching more than once; `None` when no
/// such set exists.
pub fn brute_gamma(
    alpha: &Rat,
    y: &FracMatching,
    m: &PerfectMatching,
    limits: &OracleLimits,
) -> Result<Option<Rat>, Error> {
    let n = y.graph().n();
    check_limit(n, limits.max_n_subsets, "gamma enumeration")?;
    let (edges, scale) = scaled_values(y);
    let matching: Vec<(usize, usize)> = m.pairs().to_vec();
    let mut best: Option<Rat> = None;
    for mask in 1u32..(1 << n) - 1 {
        let size = mask.count_ones() as usize;
        if size % 2 == 0 || size < 3 {
            continue;
        }
        let crossings = matching
            .iter()
            .filter(|(u, v)| (mask >> u & 1) != (mask >> v & 1))
            .count();
        if crossings <= 1 {
            continue;
        }
        let cap: i128 = edges
            .iter()
            .filter(|(u, v, _)| (mask >> u & 1) != (mask >> v & 1))
            .map(|(_, _, c)| c)
            .sum();
        let capacity = Rat::new(BigInt::from(cap), scale.clone());
        let gamma = (capacity - alpha) / Rat::from_integer(BigInt::from(crossings as i64 - 1));
        if best.as_ref().map_or(true, |b| gamma < *b) {
            best = Some(gamma);
        }
    }
    Ok(best)
}

/// Exact all-pairs min cut by subset enumeration.
pub fn brute_all_pairs_min_cut(
    g: &CapacitatedGraph,
    limits: &OracleLimits,
) -> Result<Vec<Vec<Rat>>, Error> {
    let n = g.n();
    check_limit(n, limits.max_n_subsets, "all-pairs cut enumeration")?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = BigInt::from(denominator_lcm(g.edges().iter().map(|(_, _, c)| c)));
    let edges: Vec<(usize, usize, i128)> = g
        .edges()
        .iter()
        .map(|(u, v, c)| {
            let s = c.numer() * (&scale / c.denom());
            (*u, *v, i128::try_from(s).expect("oracle instances stay small"))
        })
        .collect();
    let mut best = vec![vec![Option::<i128>::None; n]; n];
    for mask in 1u32..(1 << (n - 1)) {
        // The highest vertex stays on the co-side so each split appears once.
        let cap: i128 = edges
            .iter()
            .filter(|(u, v, _)| (mask >> u & 1) != (mask >> v & 1))
            .map(|(_, _, c)| c)
            .sum();
        for s in 0..n {
            if mask >> s & 1 == 0 {
                continue;
            }
            for t in 0..n {
                if mask >> t & 1 == 1 {
                    continue;
                }
                let slot = &mut best[s][t];
                if slot.map_or(true, |b| cap < b) {
                    *slot = Some(cap);
                }
            }
        }
    }
    Ok((0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    if s == t {
                        Rat::zero()
                    } else {
                        let v = best[s][t].or(best[t][s]).expect("some split separates");
                        Rat::new(BigInt::from(v), scale.clone())
                    }
                })
                .collect()
        })
        .collect())
}

/// Exact decomposition by linear programming over all enumerated perfect
/// matchings: solves `sum a_i M_i = x`, `a_i >= 0` with a phase-1 simplex in
/// exact rational arithmetic (Bland's rule, so it terminates). Returns `None`
/// exactly when the system is infeasible, i.e. `x` is not in the perfect
/// matching polytope scaled by alpha.
pub fn brute_decompose(
    x: &FracMatching,
    limits: &OracleLimits,
) -> Result<Option<Decomposition>, Error> {
    let n = x.graph().n();
    check_limit(n, limits.max_n_enumeration, "decomposition oracle")?;
    if x.is_zero() {
        return Ok(if x.alpha().is_zero() {
            Some(Decomposition::new(Vec::new()))
        } else {
            None
        });
    }
    let support = x.support();
    let matchings = enumerate_perfect_matchings(&support, limits)?;
    if matchings.is_empty() {
        return Ok(None);
    }
    // Rows: one per support edge plus the total-mass row.
    let support_ids = x.support_edges();
    let rows = support_ids.len() + 1;
    let cols = matchings.len();
    let mut a = vec![vec![Rat::zero(); cols]; rows];
    let mut b = Vec::with_capacity(rows);
    for (r, &e) in support_ids.iter().enumerate() {
        let (u, v) = x.graph().endpoints(e);
        for (c, m) in matchings.iter().enumerate() {
            if m.contains_edge(u, v) {
                a[r][c] = Rat::one();
            }
        }
        b.push(x.value(e).clone());
    }
    for c in 0..cols {
        a[rows - 1][c] = Rat::one();
    }
    b.push(x.alpha().clone());

    let Some(solution) = phase_one_simplex(&a, &b) else {
        return Ok(None);
    };
    let terms: Vec<(Rat, PerfectMatching)> = solution
        .into_iter()
        .zip(matchings)
        .filter(|(coeff, _)| coeff.is_positive())
        .collect();
    Ok(Some(Decomposition::new(terms)))
}

/// Phase-1 simplex for `A x = b`, `x >= 0`, `b >= 0`: returns a basic
/// feasible solution or `None` when infeasible. Dense exact tableau with
/// Bland's anti-cycling rule.
fn phase_one_simplex(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = a[0].len();
    let total = cols + rows; // real variables then one artificial per row
    let mut t = vec![vec![Rat::zero(); total + 1]; rows];
    for r in 0..rows {
        debug_assert!(!b[r].is_negative());
        for c in 0..cols {
            t[r][c] = a[r][c].clone();
        }
        t[r][cols + r] = Rat::one();
        t[r][total] = b[r].clone();
    }
    let mut basis: Vec<usize> = (cols..total).collect();
    // Reduced costs for minimizing the sum of artificials: z[j] = sum of the
    // column over rows whose basic variable is artificial.
    loop {
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = if j >= cols { Rat::one() } else { Rat::zero() };
            for r in 0..rows {
                if basis[r] >= cols {
                    reduced -= &t[r][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else { break };
        // Ratio test; Bland tie-break by smallest basis variable.
        let mut leaving: Option<(usize, Rat)> = None;
        for r in 0..rows {
            if t[r][j].is_positive() {
                let ratio = &t[r][total] / &t[r][j];
                let better = match &leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let (r, _) = leaving?; // unbounded cannot happen in phase 1
        let pivot = t[r][j].clone();
        for c in 0..=total {
            t[r][c] /= &pivot;
        }
        for rr in 0..rows {
            if rr != r && !t[rr][j].is_zero() {
                let factor = t[rr][j].clone();
                for c in 0..=total {
                    let delta = &t[r][c] * &factor;
                    t[rr][c] -= delta;
                }
            }
        }
        basis[r] = j;
    }
    // Feasible iff all artificial variables are zero.
    let infeasibility: Rat = (0..rows)
        .filter(|&r| basis[r] >= cols)
        .map(|r| t[r][total].clone())
        .sum();
    if !infeasibility.is_zero() {
        return None;
    }
    let mut solution = vec![Rat::zero(); cols];
    for r in 0..rows {
        if basis[r] < cols {
            solution[basis[r]] = t[r][total].clone();
        }
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::verify_decomposition;
    use crate::fixtures;
    use crate::rat::rat;

    #[test]
    fn petersen_has_exactly_six_perfect_matchings() {
        let all =
            enumerate_perfect_matchings(&fixtures::petersen(), &OracleLimits::default()).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.contains(&fixtures::petersen_spokes()));
        // Every non-spoke matching uses exactly one spoke.
        for m in &all {
            let spokes = m
                .pairs()
                .iter()
                .filter(|(u, v)| fixtures::petersen_spokes().contains_edge(*u, *v))
                .count();
            assert!(spokes == 5 || spokes == 1);
        }
    }

    #[test]
    fn k2_has_one_matching_and_triangles_none() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(
            enumerate_perfect_matchings(&k2, &OracleLimits::default())
                .unwrap()
                .len(),
            1
        );
        assert!(enumerate_perfect_matchings(&fixtures::two_triangles(), &OracleLimits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumeration_respects_size_limit() {
        let g = Graph::new(16, (0..8).map(|i| (2 * i, 2 * i + 1))).unwrap();
        assert!(matches!(
            enumerate_perfect_matchings(&g, &OracleLimits::default()),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn brute_min_odd_cut_examples() {
        let limits = OracleLimits::default();
        let g1 = fixtures::g1_third();
        assert_eq!(
            brute_min_odd_cut(&g1, 3, &limits).unwrap().capacity,
            rat(1, 1)
        );
        let p = fixtures::petersen_third();
        assert_eq!(
            brute_min_odd_cut(&p, 3, &limits).unwrap().capacity,
            rat(5, 3)
        );
        // Singletons reach alpha for any valid vector.
        assert_eq!(
            brute_min_odd_cut(&p, 1, &limits).unwrap().capacity,
            rat(1, 1)
        );
        assert_eq!(
            brute_min_odd_cut(&p, 1, &limits).unwrap().set.members(),
            &[0]
        );
    }

    #[test]
    fn brute_decompose_examples() {
        let limits = OracleLimits::default();
        let g1 = fixtures::g1_third();
        let d = brute_decompose(&g1, &limits).unwrap().unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.terms().iter().all(|(c, _)| *c == rat(1, 3)));
        assert!(verify_decomposition(&g1, &d).is_ok());

        let p = fixtures::petersen_third();
        let d = brute_decompose(&p, &limits).unwrap().unwrap();
        assert_eq!(d.len(), 6);
        assert!(d.terms().iter().all(|(c, _)| *c == rat(1, 6)));
        assert!(verify_decomposition(&p, &d).is_ok());

        // A single-matching indicator decomposes into itself.
        let g = Graph::new(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let x = FracMatching::new(
            g,
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
            rat(1, 1),
        )
        .unwrap();
        let d = brute_decompose(&x, &limits).unwrap().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.terms()[0].0, rat(1, 1));

        // Petersen minus spokes is infeasible.
        assert!(brute_decompose(&fixtures::petersen_minus_spokes(), &limits)
            .unwrap()
            .is_none());
    }

    #[test]
    fn brute_gamma_examples() {
        let limits = OracleLimits::default();
        let p = fixtures::petersen_third();
        let gamma = brute_gamma(&rat(1, 1), &p, &fixtures::petersen_spokes(), &limits)
            .unwrap()
            .unwrap();
        assert_eq!(gamma, rat(1, 6));

        // G1 with a valid matching crossing every tight cut once: the only
        // odd sets crossed twice or more are slack, so gamma is positive.
        let g1 = fixtures::g1_third();
        let m = PerfectMatching::new(6, [(0, 1), (2, 4), (3, 5)]).unwrap();
        let gamma = brute_gamma(&rat(1, 1), &g1, &m, &limits).unwrap().unwrap();
        assert!(gamma.is_positive());

        // K2: no odd set with |S| >= 3 exists at all.
        let k2 = fixtures::k2_one();
        let m = PerfectMatching::new(2, [(0, 1)]).unwrap();
        assert_eq!(brute_gamma(&rat(1, 1), &k2, &m, &limits).unwrap(), None);
    }

    #[test]
    fn all_pairs_cut_examples() {
        let limits = OracleLimits::default();
        let g = CapacitatedGraph::new(2, [(0, 1, rat(5, 7))]).unwrap();
        let m = brute_all_pairs_min_cut(&g, &limits).unwrap();
        assert_eq!(m[0][1], rat(5, 7));

        let path = CapacitatedGraph::new(3, [(0, 1, rat(1, 1)), (1, 2, rat(1, 2))]).unwrap();
        let m = brute_all_pairs_min_cut(&path, &limits).unwrap();
        assert_eq!(m[0][2], rat(1, 2));
        assert_eq!(m[0][1], rat(1, 1));
    }
}
