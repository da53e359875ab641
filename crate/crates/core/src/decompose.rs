//! The decomposition loop, verification, the bipartite baseline, and the
//! seeded sampler.
//!
//! Each phase picks a minimum-weight perfect matching under the laminar
//! edge weights (so it crosses every recorded tight cut exactly once),
//! subtracts as much of it as the smallest edge allows, and checks the
//! minimum odd cut of the residual. If nothing dropped below the new scale
//! the phase keeps the full coefficient (Type 1, at least one support edge
//! vanishes); otherwise the coefficient is reduced to the largest feasible
//! value (Type 2, a new tight odd cut appears and joins the family).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;

use crate::blossom::{min_weight_perfect_matching, WeightedGraph};
use crate::error::Error;
use crate::frac::{Decomposition, FracMatching, Violation};
use crate::gamma::{find_gamma_bisect_counted, find_gamma_counted};
use crate::graph::{Graph, OddSet, PerfectMatching};
use crate::laminar::{update_laminar_counted, LaminarFamily};
use crate::oddcut::{min_odd_cut, validate_fractional_pm, SweepCounts, Validity};
use crate::rat::{denominator_lcm, Rat};

/// How Type-2 coefficients are computed. The iterative search is the
/// production path; bisection is the cross-check route and must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaMethod {
    #[default]
    Iterative,
    Bisection,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub gamma: GammaMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseType {
    /// The full coefficient was kept; at least one support edge vanished.
    Type1,
    /// The coefficient was cut back; a new tight odd cut joined the family.
    Type2,
}

impl fmt::Display for PhaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseType::Type1 => write!(f, "type1"),
            PhaseType::Type2 => write!(f, "type2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseRecord {
    pub phase_index: usize,
    pub phase_type: PhaseType,
    pub matching: PerfectMatching,
    pub coeff: Rat,
    pub alpha_before: Rat,
    pub alpha_after: Rat,
    pub new_tight_cut: Option<OddSet>,
}

/// Work counters and the denominator audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub max_flow_calls: u64,
    pub padberg_rao_calls: u64,
    /// Largest common denominator of the working vector (with its alpha)
    /// seen at any phase boundary.
    pub max_denominator: BigUint,
}

impl Default for Stats {
    fn default() -> Self {
        Stats {
            max_flow_calls: 0,
            padberg_rao_calls: 0,
            max_denominator: BigUint::one(),
        }
    }
}

impl Stats {
    pub(crate) fn count_min_odd_cut(&mut self, n: usize) {
        self.padberg_rao_calls += 1;
        self.max_flow_calls += n.saturating_sub(1) as u64;
    }

    fn absorb(&mut self, counts: SweepCounts) {
        self.padberg_rao_calls += counts.padberg_rao;
        self.max_flow_calls += counts.max_flows;
    }

    fn observe_denominator(&mut self, d: BigUint) {
        if d > self.max_denominator {
            self.max_denominator = d;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTrace {
    pub terms: Decomposition,
    pub phases: Vec<PhaseRecord>,
    pub stats: Stats,
}

/// Decompose a fractional perfect matching (`alpha` must be exactly 1) into
/// an exact convex combination of perfect matchings with at most `m` terms.
pub fn decompose(x: &FracMatching) -> Result<DecompositionTrace, Error> {
    decompose_with(x, &DecomposeOptions::default())
}

pub fn decompose_with(
    x: &FracMatching,
    opts: &DecomposeOptions,
) -> Result<DecompositionTrace, Error> {
    if !x.alpha().is_one() {
        return Err(Error::invalid_argument(format!(
            "decompose expects alpha = 1, got {}",
            x.alpha()
        )));
    }
    match validate_fractional_pm(x)? {
        Validity::Valid => {}
        Validity::Violated(v) => return Err(Error::Infeasible(v)),
    }

    let n = x.graph().n();
    let m_support = x.support_size();
    let mut stats = Stats::default();
    stats.observe_denominator(common_denominator(x));
    // Lemma-style ceiling d^m * n^(n/2) on every denominator encountered.
    let ceiling = x.max_denominator().pow(m_support as u32)
        * BigUint::from(n.max(1)).pow((n / 2) as u32);

    let mut counts = SweepCounts::default();
    let mut fam = update_laminar_counted(
        &LaminarFamily::empty(n, x.alpha().clone()),
        x,
        &mut counts,
    )?;
    stats.absorb(counts);

    let mut y = x.clone();
    let mut terms: Vec<(Rat, PerfectMatching)> = Vec::new();
    let mut phases: Vec<PhaseRecord> = Vec::new();
    let phase_cap = 2 * m_support + n + 4;

    while !y.is_zero() {
        if phases.len() >= phase_cap {
            return Err(Error::invariant(format!(
                "phase count exceeded the cap of {phase_cap}"
            )));
        }
        let alpha = y.alpha().clone();
        let support_ids = y.support_edges();

        // Step 2(a)-(b): weights from the laminar family, then a
        // minimum-weight perfect matching of the support.
        let weights_full = fam.edge_weights(y.graph());
        let support_graph = Graph::new(
            n,
            support_ids.iter().map(|&e| y.graph().endpoints(e)),
        )?;
        let support_weights: Vec<u64> =
            support_ids.iter().map(|&e| weights_full[e]).collect();
        let wg = WeightedGraph::new(support_graph, support_weights)?;
        let matching = min_weight_perfect_matching(&wg)?.ok_or_else(|| {
            Error::invariant("support of a feasible vector lost all perfect matchings")
        })?;

        // Lemma checks: the matching weighs |L| and crosses each member once.
        let matching_ids = matching
            .edge_ids(y.graph())
            .ok_or_else(|| Error::invariant("matching left the graph"))?;
        let weight: u64 = matching_ids.iter().map(|&e| weights_full[e]).sum();
        if weight != fam.len() as u64 {
            return Err(Error::invariant(format!(
                "matching weight {weight} != |L| = {}",
                fam.len()
            )));
        }
        for member in fam.sets() {
            if matching.crossings(member) != 1 {
                return Err(Error::invariant(format!(
                    "matching crosses {member} more than once"
                )));
            }
        }

        // Step 2(c): the greedy coefficient.
        let beta = matching_ids
            .iter()
            .map(|&e| y.value(e))
            .min()
            .expect("perfect matchings are nonempty")
            .clone();
        if !beta.is_positive() {
            return Err(Error::invariant("zero coefficient on a support matching"));
        }

        // Steps 2(d)-(e): subtract, then find the minimum odd cut.
        let reduced = y.subtract_matching(&matching, &beta)?;
        let target = &alpha - &beta;
        let violated = if reduced.is_zero() {
            None
        } else {
            let cut = min_odd_cut(&reduced)?;
            stats.count_min_odd_cut(n);
            (cut.capacity < target).then_some(cut)
        };

        let record = match violated {
            None => {
                // Step 2(f): the whole coefficient is kept.
                let support_after = reduced.support_size();
                if support_after >= support_ids.len() {
                    return Err(Error::invariant(
                        "type-1 phase failed to drop a support edge",
                    ));
                }
                fam = fam.with_alpha(target.clone());
                for member in fam.sets() {
                    let cap = reduced.cut_capacity(member)?;
                    if cap != target {
                        return Err(Error::invariant(format!(
                            "member {member} has capacity {cap} != alpha {target}"
                        )));
                    }
                }
                let record = PhaseRecord {
                    phase_index: phases.len(),
                    phase_type: PhaseType::Type1,
                    matching: matching.clone(),
                    coeff: beta.clone(),
                    alpha_before: alpha.clone(),
                    alpha_after: target.clone(),
                    new_tight_cut: None,
                };
                terms.push((beta, matching));
                y = reduced;
                record
            }
            Some(cut) => {
                // Step 2(g): shrink the coefficient to the feasibility
                // boundary and grow the laminar family.
                let gamma = match opts.gamma {
                    GammaMethod::Iterative => {
                        let (g, _witness) = find_gamma_counted(
                            &alpha, &y, &matching, &beta, &cut.set, &mut stats,
                        )?;
                        g
                    }
                    GammaMethod::Bisection => find_gamma_bisect_counted(
                        &alpha, &y, &matching, &beta, &mut stats,
                    )?,
                };
                if !gamma.is_positive() || gamma >= beta {
                    return Err(Error::invariant(format!(
                        "type-2 coefficient {gamma} outside (0, {beta})"
                    )));
                }
                let next = y.subtract_matching(&matching, &gamma)?;
                let old_len = fam.len();
                let mut counts = SweepCounts::default();
                fam = update_laminar_counted(&fam, &next, &mut counts)?;
                stats.absorb(counts);
                if fam.len() <= old_len {
                    return Err(Error::invariant(
                        "type-2 phase did not create a new tight odd cut",
                    ));
                }
                let record = PhaseRecord {
                    phase_index: phases.len(),
                    phase_type: PhaseType::Type2,
                    matching: matching.clone(),
                    coeff: gamma.clone(),
                    alpha_before: alpha.clone(),
                    alpha_after: next.alpha().clone(),
                    new_tight_cut: Some(fam.sets()[old_len].clone()),
                };
                terms.push((gamma, matching));
                y = next;
                record
            }
        };

        // Degree sums track the scale after every subtraction.
        let alpha_now = y.alpha().clone();
        for (v, sum) in y.degree_sums().into_iter().enumerate() {
            if sum != alpha_now {
                return Err(Error::invariant(format!(
                    "vertex {v} has degree sum {sum} != alpha {alpha_now} after subtraction"
                )));
            }
        }
        let denom = common_denominator(&y);
        if denom > ceiling {
            return Err(Error::invariant(format!(
                "denominator {denom} exceeded the d^m n^(n/2) ceiling {ceiling}"
            )));
        }
        stats.observe_denominator(denom);
        phases.push(record);
    }

    if !y.alpha().is_zero() {
        return Err(Error::invariant("vector vanished before alpha reached 0"));
    }
    if terms.len() > m_support {
        return Err(Error::invariant(format!(
            "{} terms exceed the support bound m = {m_support}",
            terms.len()
        )));
    }
    let type2 = phases
        .iter()
        .filter(|p| p.phase_type == PhaseType::Type2)
        .count();
    if n >= 2 && type2 + 1 > n / 2 {
        return Err(Error::invariant(format!(
            "{type2} type-2 phases exceed the n/2 - 1 bound"
        )));
    }
    let decomposition = Decomposition::new(terms);
    verify_decomposition(x, &decomposition)
        .map_err(|f| Error::invariant(format!("self-check failed: {f}")))?;
    Ok(DecompositionTrace {
        terms: decomposition,
        phases,
        stats,
    })
}

/// Common denominator of a vector's entries and its alpha.
fn common_denominator(x: &FracMatching) -> BigUint {
    denominator_lcm(x.values().iter().chain([x.alpha()]))
}

/// Why a claimed decomposition fails verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    NonPositiveCoefficient { index: usize, coeff: Rat },
    TotalMismatch { total: Rat, alpha: Rat },
    WrongVertexCount { index: usize },
    NotAGraphEdge { index: usize, edge: (usize, usize) },
    OutsideSupport { index: usize, edge: (usize, usize) },
    ComponentMismatch { edge: (usize, usize), combined: Rat, expected: Rat },
    UnequalWeights { index: usize, weight: Rat, first_weight: Rat },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::NonPositiveCoefficient { index, coeff } => {
                write!(f, "term {index} has non-positive coefficient {coeff}")
            }
            VerifyFailure::TotalMismatch { total, alpha } => {
                write!(f, "coefficients sum to {total}, expected {alpha}")
            }
            VerifyFailure::WrongVertexCount { index } => {
                write!(f, "term {index} is a matching on the wrong vertex count")
            }
            VerifyFailure::NotAGraphEdge { index, edge } => write!(
                f,
                "term {index} uses ({},{}) which is not a graph edge",
                edge.0, edge.1
            ),
            VerifyFailure::OutsideSupport { index, edge } => write!(
                f,
                "term {index} uses ({},{}) which has value 0",
                edge.0, edge.1
            ),
            VerifyFailure::ComponentMismatch {
                edge,
                combined,
                expected,
            } => write!(
                f,
                "edge ({},{}) combines to {combined}, expected {expected}",
                edge.0, edge.1
            ),
            VerifyFailure::UnequalWeights {
                index,
                weight,
                first_weight,
            } => write!(
                f,
                "term {index} weighs {weight}, first term weighs {first_weight}"
            ),
        }
    }
}

/// Exact verification of the defining equation: positive coefficients
/// summing to alpha, every term a perfect matching inside the support, and
/// componentwise equality of the weighted sum with `x`.
pub fn verify_decomposition(x: &FracMatching, d: &Decomposition) -> Result<(), VerifyFailure> {
    for (i, (coeff, _)) in d.terms().iter().enumerate() {
        if !coeff.is_positive() {
            return Err(VerifyFailure::NonPositiveCoefficient {
                index: i,
                coeff: coeff.clone(),
            });
        }
    }
    let total = d.total();
    if &total != x.alpha() {
        return Err(VerifyFailure::TotalMismatch {
            total,
            alpha: x.alpha().clone(),
        });
    }
    let mut combined = vec![Rat::zero(); x.graph().edge_count()];
    for (i, (coeff, m)) in d.terms().iter().enumerate() {
        if m.n() != x.graph().n() {
            return Err(VerifyFailure::WrongVertexCount { index: i });
        }
        for &(u, v) in m.pairs() {
            let Some(e) = x.graph().edge_index(u, v) else {
                return Err(VerifyFailure::NotAGraphEdge {
                    index: i,
                    edge: (u, v),
                });
            };
            if !x.value(e).is_positive() {
                return Err(VerifyFailure::OutsideSupport {
                    index: i,
                    edge: (u, v),
                });
            }
            combined[e] += coeff;
        }
    }
    for (e, got) in combined.into_iter().enumerate() {
        if &got != x.value(e) {
            return Err(VerifyFailure::ComponentMismatch {
                edge: x.graph().endpoints(e),
                combined: got,
                expected: x.value(e).clone(),
            });
        }
    }
    Ok(())
}

/// For decompositions of minimum-weight fractional perfect matchings: all
/// terms must have equal weight under `w` (one weight per edge of `g`).
pub fn verify_min_weight_property(
    d: &Decomposition,
    g: &Graph,
    w: &[Rat],
) -> Result<(), VerifyFailure> {
    let mut first: Option<Rat> = None;
    for (i, (_, m)) in d.terms().iter().enumerate() {
        let mut weight = Rat::zero();
        for &(u, v) in m.pairs() {
            let Some(e) = g.edge_index(u, v) else {
                return Err(VerifyFailure::NotAGraphEdge {
                    index: i,
                    edge: (u, v),
                });
            };
            weight += &w[e];
        }
        match &first {
            None => first = Some(weight),
            Some(fw) => {
                if weight != *fw {
                    return Err(VerifyFailure::UnequalWeights {
                        index: i,
                        weight,
                        first_weight: fw.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Greedy Birkhoff-von-Neumann on a bipartite support: take any perfect
/// matching of the support and subtract it maximally, repeating until the
/// vector is exhausted.
pub fn bvn_bipartite(x: &FracMatching) -> Result<Decomposition, Error> {
    let support = x.support();
    if support.bipartition().is_none() {
        return Err(Error::invalid_argument(
            "support is not bipartite; use the general decomposition",
        ));
    }
    for (v, sum) in x.degree_sums().into_iter().enumerate() {
        if &sum != x.alpha() {
            return Err(Error::Infeasible(Violation::DegreeMismatch {
                vertex: v,
                sum,
                alpha: x.alpha().clone(),
            }));
        }
    }
    let n = x.graph().n();
    let m_support = x.support_size();
    let mut y = x.clone();
    let mut terms = Vec::new();
    while !y.is_zero() {
        let support_ids = y.support_edges();
        let sgraph = Graph::new(n, support_ids.iter().map(|&e| y.graph().endpoints(e)))?;
        let wg = WeightedGraph::new(sgraph, vec![0; support_ids.len()])?;
        let matching = min_weight_perfect_matching(&wg)?.ok_or_else(|| {
            Error::Infeasible(Violation::NoPerfectMatching {
                support_edges: support_ids.len(),
            })
        })?;
        let ids = matching
            .edge_ids(y.graph())
            .ok_or_else(|| Error::invariant("matching left the graph"))?;
        let beta = ids
            .iter()
            .map(|&e| y.value(e))
            .min()
            .expect("matching is nonempty")
            .clone();
        if !beta.is_positive() {
            return Err(Error::invariant("zero coefficient in the greedy loop"));
        }
        y = y.subtract_matching(&matching, &beta)?;
        terms.push((beta, matching));
        if terms.len() > m_support {
            return Err(Error::invariant("greedy loop exceeded the term bound"));
        }
    }
    let d = Decomposition::new(terms);
    verify_decomposition(x, &d)
        .map_err(|f| Error::invariant(format!("greedy self-check failed: {f}")))?;
    Ok(d)
}

/// Draw one matching from the decomposition, term `i` with probability
/// `coeff_i / total`, using exact rational thresholds: the random draw is a
/// uniform integer below the common denominator of the normalized
/// coefficients, so probabilities are exact, and a fixed seed fixes the
/// outcome.
pub fn sample_matching(d: &Decomposition, seed: u64) -> Result<PerfectMatching, Error> {
    if d.is_empty() {
        return Err(Error::invalid_argument("empty decomposition"));
    }
    let total = d.total();
    if !total.is_positive() {
        return Err(Error::invalid_argument("coefficients sum to zero"));
    }
    let probs: Vec<Rat> = d.terms().iter().map(|(c, _)| c / &total).collect();
    let lcm = denominator_lcm(probs.iter());
    let lcm_int = BigInt::from(lcm.clone());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draw = num_bigint::RandBigInt::gen_biguint_below(&mut rng, &lcm);
    let draw = BigInt::from(draw);
    let mut acc = BigInt::zero();
    for (p, (_, m)) in probs.iter().zip(d.terms()) {
        // p * lcm is integral by construction.
        acc += p.numer() * (&lcm_int / p.denom());
        if draw < acc {
            return Ok(m.clone());
        }
    }
    // The thresholds accumulate to exactly lcm, so we cannot fall through.
    Err(Error::invariant("sampling thresholds did not cover the draw"))
}
