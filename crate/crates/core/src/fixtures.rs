//! Named example graphs and matrices used by tests, the acceptance suite
//! and the CLI documentation.
//!
//! Edge lists are written with 1-based labels `v_1..v_n` and converted to
//! 0-based vertices on construction.

use crate::graph::{Graph, IntMatrix};

fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().map(|&(a, b)| (a - 1, b - 1))).expect("fixture is valid")
}

/// Two disjoint triangles `v1 v2 v3` and `v4 v5 v6`.
pub fn two_triangles() -> Graph {
    from_one_based(6, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)])
}

/// The 6-cycle `v1 v5 v3 v4 v2 v6`, labeled so that its square equals the
/// square of [`two_triangles`] entrywise.
pub fn hexagon() -> Graph {
    from_one_based(6, &[(1, 5), (5, 3), (3, 4), (4, 2), (2, 6), (6, 1)])
}

/// 4-regular graph on 12 vertices (24 edges). Its square is
/// permutation-similar, but not equal, to the square of [`twelve_h`],
/// although the two graphs are not isomorphic.
pub const TWELVE_G_EDGES: [(usize, usize); 24] = [
    (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (4, 6), (2, 5), (3, 6),
    (5, 7), (5, 8), (6, 7), (7, 8), (7, 9), (6, 9), (8, 10), (10, 11), (10, 12),
    (8, 11), (9, 10), (9, 12), (11, 1), (12, 1), (2, 11), (3, 12),
];

/// Partner of [`TWELVE_G_EDGES`]; also 4-regular on 12 vertices.
pub const TWELVE_H_EDGES: [(usize, usize); 24] = [
    (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (4, 6),
    (5, 7), (6, 7), (7, 8), (7, 9), (8, 10), (10, 11), (10, 12),
    (9, 10), (11, 1), (12, 1), (2, 8), (3, 9),
    (5, 11), (6, 12),
    (2, 3), (5, 6), (8, 9), (11, 12),
];

pub fn twelve_g() -> Graph {
    from_one_based(12, &TWELVE_G_EDGES)
}

pub fn twelve_h() -> Graph {
    from_one_based(12, &TWELVE_H_EDGES)
}

/// A symmetric 4×4 candidate that passes every test except the row-sum
/// multiset test: row 2 sums to 5 with `s_22 = 2`, so `v_2` would need
/// neighbours of average degree 5/2 while no other diagonal entry exceeds 2.
pub fn rejection_example() -> IntMatrix {
    IntMatrix::from_rows(&[[2, 1, 1, 0], [1, 2, 1, 1], [1, 1, 1, 0], [0, 1, 0, 1]])
        .expect("4x4 rows")
}
