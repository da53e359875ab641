//! Well-known example instances used across tests and shipped as CLI
//! fixtures. Vertex names a,b,c,... map to indices 0,1,2,...

use num_traits::One;

use crate::frac::FracMatching;
use crate::graph::{Graph, PerfectMatching};
use crate::rat::{rat, Rat};

/// Two triangles a-c-e and b-d-f joined by the matching (a,b),(c,d),(e,f).
pub fn g1() -> Graph {
    Graph::new(
        6,
        [
            (0, 2),
            (2, 4),
            (0, 4), // triangle a,c,e
            (1, 3),
            (3, 5),
            (1, 5), // triangle b,d,f
            (0, 1),
            (2, 3),
            (4, 5), // joining matching
        ],
    )
    .unwrap()
}

pub fn g1_third() -> FracMatching {
    FracMatching::uniform(g1(), rat(1, 3), Rat::one()).unwrap()
}

/// The Petersen graph: outer cycle a-b-c-d-e (0..4), inner pentagram
/// f-h-j-g-i (5,7,9,6,8), spokes a-f, b-g, c-h, d-i, e-j.
pub fn petersen() -> Graph {
    Graph::new(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0), // outer cycle
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5), // inner pentagram
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9), // spokes
        ],
    )
    .unwrap()
}

pub fn petersen_third() -> FracMatching {
    FracMatching::uniform(petersen(), rat(1, 3), Rat::one()).unwrap()
}

/// The five spokes of the Petersen graph.
pub fn petersen_spokes() -> PerfectMatching {
    PerfectMatching::new(10, [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]).unwrap()
}

/// Petersen vector with the spokes at zero and both 5-cycles at 1/3; a
/// 2/3-feasibility counterexample (the inner cycle is a violated odd set).
pub fn petersen_minus_spokes() -> FracMatching {
    let g = petersen();
    let values = (0..g.edge_count())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            if petersen_spokes().contains_edge(u, v) {
                rat(0, 1)
            } else {
                rat(1, 3)
            }
        })
        .collect();
    FracMatching::new(g, values, rat(2, 3)).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn c6_half() -> FracMatching {
    FracMatching::uniform(cycle(6), rat(1, 2), Rat::one()).unwrap()
}

pub fn c4_half() -> FracMatching {
    FracMatching::uniform(cycle(4), rat(1, 2), Rat::one()).unwrap()
}

pub fn k2_one() -> FracMatching {
    let g = Graph::new(2, [(0, 1)]).unwrap();
    FracMatching::uniform(g, Rat::one(), Rat::one()).unwrap()
}

/// Two vertex-disjoint triangles; has no perfect matching.
pub fn two_triangles() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
}
