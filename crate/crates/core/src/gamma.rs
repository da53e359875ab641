//! The coefficient search for phases that create a new tight odd cut.
//!
//! `find_gamma` is the iterative procedure: starting from the violated cut,
//! repeatedly recompute the candidate coefficient from the currently most
//! violated odd cut; the candidate strictly decreases, so the loop
//! terminates, and its limit is exactly the largest `b` such that
//! `y - b*M` is an `(alpha - b)`-fractional perfect matching.
//!
//! `find_gamma_bisect` reaches the same value by bisecting on that
//! feasibility predicate and snapping the final bracket to the unique
//! rational with a provably bounded denominator (continued fractions).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::decompose::Stats;
use crate::error::Error;
use crate::frac::FracMatching;
use crate::graph::{OddSet, PerfectMatching};
use crate::oddcut::min_odd_cut;
use crate::rat::{denominator_lcm, simplest_rational_between, Rat};

/// Iterative coefficient search. `s` is the minimum odd cut of `y - beta*M`
/// found violated (capacity < alpha - beta); it must be crossed by the
/// matching at least twice. Returns the coefficient and the witness set that
/// becomes tight at `alpha - gamma`.
pub fn find_gamma(
    alpha: &Rat,
    y: &FracMatching,
    m: &PerfectMatching,
    beta: &Rat,
    s: &OddSet,
) -> Result<(Rat, OddSet), Error> {
    let mut stats = Stats::default();
    find_gamma_counted(alpha, y, m, beta, s, &mut stats)
}

pub(crate) fn find_gamma_counted(
    alpha: &Rat,
    y: &FracMatching,
    m: &PerfectMatching,
    beta: &Rat,
    s: &OddSet,
    stats: &mut Stats,
) -> Result<(Rat, OddSet), Error> {
    let k = m.crossings(s);
    if k < 2 {
        return Err(Error::invalid_argument(format!(
            "cut {s} is crossed {k} times; the gamma step needs at least 2"
        )));
    }
    let mut witness = s.clone();
    let mut gamma = gamma_for(alpha, y, &witness, k)?;
    if gamma >= *beta || !gamma.is_positive() {
        return Err(Error::invariant(format!(
            "initial gamma {gamma} outside (0, beta={beta})"
        )));
    }
    let cap = 10 * y.support_size().max(1);
    for _ in 0..cap {
        let reduced = y.subtract_matching(m, &gamma)?;
        let cut = min_odd_cut(&reduced)?;
        stats.count_min_odd_cut(y.graph().n());
        let target = alpha - &gamma;
        if cut.capacity >= target {
            return Ok((gamma, witness));
        }
        let k = m.crossings(&cut.set);
        if k < 2 {
            return Err(Error::invariant(format!(
                "violated cut {} crossed only {k} times",
                cut.set
            )));
        }
        let next = gamma_for(alpha, y, &cut.set, k)?;
        if next >= gamma {
            return Err(Error::invariant(format!(
                "gamma failed to decrease: {next} after {gamma}"
            )));
        }
        witness = cut.set;
        gamma = next;
    }
    Err(Error::IterationCap(format!(
        "gamma search exceeded {cap} iterations; no polynomial bound is known for this loop"
    )))
}

/// `(y(delta(T)) - alpha) / (k - 1)` for a cut crossed `k >= 2` times.
fn gamma_for(alpha: &Rat, y: &FracMatching, t: &OddSet, k: usize) -> Result<Rat, Error> {
    let capacity = y.cut_capacity(t)?;
    Ok((capacity - alpha) / Rat::from_integer(BigInt::from(k as i64 - 1)))
}

/// Binary-search version of the coefficient search over `[0, beta]`.
///
/// The feasibility predicate is one minimum-odd-cut computation; once the
/// bracket is narrower than `1/(2 D^2)`, where `D` bounds the coefficient's
/// denominator (current common denominator times n), the unique rational
/// with denominator at most `D` inside the bracket is recovered exactly by a
/// continued-fraction walk.
pub fn find_gamma_bisect(
    alpha: &Rat,
    y: &FracMatching,
    m: &PerfectMatching,
    beta: &Rat,
) -> Result<Rat, Error> {
    let mut stats = Stats::default();
    find_gamma_bisect_counted(alpha, y, m, beta, &mut stats)
}

pub(crate) fn find_gamma_bisect_counted(
    alpha: &Rat,
    y: &FracMatching,
    m: &PerfectMatching,
    beta: &Rat,
    stats: &mut Stats,
) -> Result<Rat, Error> {
    if !beta.is_positive() {
        return Err(Error::invalid_argument("beta must be positive"));
    }
    let n = y.graph().n();
    let feasible = |b: &Rat, stats: &mut Stats| -> Result<bool, Error> {
        let reduced = y.subtract_matching(m, b)?;
        let cut = min_odd_cut(&reduced)?;
        stats.count_min_odd_cut(n);
        Ok(cut.capacity >= alpha - b)
    };
    if feasible(beta, stats)? {
        // Degenerate: the caller should have taken the plain-subtraction
        // branch; beta itself is the answer.
        return Ok(beta.clone());
    }
    // Denominator bound: gamma = (y(delta(T)) - alpha) / (k - 1) has
    // denominator dividing L * (k - 1) <= L * n for L the common denominator
    // of the current vector and alpha.
    let lcm = BigInt::from(denominator_lcm(y.values().iter().chain([alpha])));
    let dmax = lcm * BigInt::from(n);
    let width_target = Rat::new(BigInt::one(), 2 * &dmax * &dmax);

    let mut lo = Rat::zero();
    let mut hi = beta.clone();
    while &hi - &lo >= width_target {
        let mid = (&hi + &lo) / Rat::from_integer(BigInt::from(2));
        if feasible(&mid, stats)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let snapped = simplest_rational_between(&lo, &hi);
    if snapped.denom() > &dmax {
        return Err(Error::invariant(format!(
            "bisection bracket contains no rational with denominator <= {dmax}"
        )));
    }
    if !feasible(&snapped, stats)? {
        return Err(Error::invariant(format!(
            "reconstructed gamma {snapped} is infeasible"
        )));
    }
    Ok(snapped)
}
