//! Runtime-selectable decomposition strategies.
//!
//! Every way of turning a fractional perfect matching into a convex
//! combination of perfect matchings sits behind one trait, registered by
//! name: the general odd-cut algorithm (with either coefficient search), the
//! greedy bipartite baseline, and the brute-force oracle for desk checks.

use crate::decompose::{bvn_bipartite, decompose_with, DecomposeOptions, GammaMethod};
use crate::error::Error;
use crate::frac::{Decomposition, FracMatching};
use crate::oracle::{brute_decompose, OracleLimits};

pub trait DecomposeStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn decompose(&self, x: &FracMatching) -> Result<Decomposition, Error>;
}

/// The main algorithm on general graphs.
pub struct GeneralStrategy {
    pub gamma: GammaMethod,
}

impl DecomposeStrategy for GeneralStrategy {
    fn name(&self) -> &'static str {
        "general"
    }

    fn description(&self) -> &'static str {
        "odd-cut guided decomposition for general graphs"
    }

    fn decompose(&self, x: &FracMatching) -> Result<Decomposition, Error> {
        let opts = DecomposeOptions { gamma: self.gamma };
        Ok(decompose_with(x, &opts)?.terms)
    }
}

/// Greedy subtraction; only valid when the support is bipartite.
pub struct BipartiteStrategy;

impl DecomposeStrategy for BipartiteStrategy {
    fn name(&self) -> &'static str {
        "bipartite"
    }

    fn description(&self) -> &'static str {
        "greedy Birkhoff-von-Neumann baseline for bipartite supports"
    }

    fn decompose(&self, x: &FracMatching) -> Result<Decomposition, Error> {
        bvn_bipartite(x)
    }
}

/// Exact linear-programming oracle over enumerated matchings (small n only).
pub struct OracleStrategy {
    pub limits: OracleLimits,
}

impl DecomposeStrategy for OracleStrategy {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn description(&self) -> &'static str {
        "brute-force decomposition by matching enumeration and exact LP"
    }

    fn decompose(&self, x: &FracMatching) -> Result<Decomposition, Error> {
        brute_decompose(x, &self.limits)?.ok_or_else(|| {
            Error::Infeasible(crate::frac::Violation::NoPerfectMatching {
                support_edges: x.support_size(),
            })
        })
    }
}

/// All registered strategies, in presentation order.
pub fn registry() -> Vec<Box<dyn DecomposeStrategy>> {
    vec![
        Box::new(GeneralStrategy {
            gamma: GammaMethod::Iterative,
        }),
        Box::new(BipartiteStrategy),
        Box::new(OracleStrategy {
            limits: OracleLimits::default(),
        }),
    ]
}

/// Look a strategy up by name.
pub fn lookup(name: &str) -> Option<Box<dyn DecomposeStrategy>> {
    registry().into_iter().find(|s| s.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::verify_decomposition;
    use crate::fixtures;

    #[test]
    fn registry_names_are_stable() {
        let names: Vec<_> = registry().iter().map(|s| s.name()).collect();
        assert_eq!(names, vec!["general", "bipartite", "oracle"]);
        assert!(lookup("general").is_some());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn all_strategies_agree_on_feasible_instances() {
        let x = fixtures::petersen_third();
        for strategy in registry() {
            if strategy.name() == "bipartite" {
                continue; // Petersen is not bipartite
            }
            let d = strategy.decompose(&x).unwrap();
            assert!(
                verify_decomposition(&x, &d).is_ok(),
                "strategy {}",
                strategy.name()
            );
        }

        let c4 = fixtures::c4_half();
        for strategy in registry() {
            let d = strategy.decompose(&c4).unwrap();
            assert!(verify_decomposition(&c4, &d).is_ok());
        }
    }
}
