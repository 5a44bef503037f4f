//! Graphs that share a square: disjoint unions, bipartite double covers and
//! the duplication family, together with the isomorphism and similarity
//! tests that certify them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, IntMatrix, Permutation};
use crate::iso::{find_matrix_isomorphism, IsoBudget, IsoError};

/// `G ⊔ H`, with `H`'s vertices shifted up by `|G|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.vertex_count();
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(h.edges().iter().map(|&(a, b)| (a + shift, b + shift)));
    Graph::from_edges(shift + h.vertex_count(), edges).expect("shifted edges stay in range")
}

/// Disjoint union of a sequence of graphs, in order.
pub fn disjoint_union_all<'a>(parts: impl IntoIterator<Item = &'a Graph>) -> Graph {
    parts
        .into_iter()
        .fold(Graph::empty(0), |acc, g| disjoint_union(&acc, g))
}

/// A proper 2-colouring (`false`/`true` per vertex) if `G` is bipartite.
///
/// Each component is coloured by BFS from its smallest vertex, which gets
/// colour `false`. Edgeless graphs are bipartite with every vertex coloured
/// `false`.
pub fn is_bipartite(g: &Graph) -> Option<Vec<bool>> {
    let adj = g.neighbors();
    let mut color: Vec<Option<bool>> = vec![None; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..g.vertex_count() {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Order that lists colour class `false` first, then class `true`; under
/// it the adjacency matrix takes the form `[[0, Bᵀ], [B, 0]]`.
pub fn bipartite_order(coloring: &[bool]) -> Permutation {
    let order: Vec<usize> = (0..coloring.len())
        .filter(|&v| !coloring[v])
        .chain((0..coloring.len()).filter(|&v| coloring[v]))
        .collect();
    Permutation::new(order).expect("each vertex listed once")
}

/// Kronecker cover `G × K2`: vertex `i` is adjacent to `n + j` whenever
/// `{i, j}` is an edge, so `A = [[0, A(G)], [A(G), 0]]`.
pub fn bipartite_double_cover(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let edges = g
        .edges()
        .iter()
        .flat_map(|&(a, b)| [(a, n + b), (b, n + a)]);
    Graph::from_edges(2 * n, edges).expect("cover edges stay in range")
}

/// `Some(p)` with `p` mapping each vertex of `g` to its image in `h`
/// (so `g.relabel(p) == h`), `None` if the graphs are not isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Permutation>, IsoError> {
    are_isomorphic_with(g, h, IsoBudget::default())
}

pub fn are_isomorphic_with(
    g: &Graph,
    h: &Graph,
    budget: IsoBudget,
) -> Result<Option<Permutation>, IsoError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let found = find_matrix_isomorphism(&g.adjacency_matrix(), &h.adjacency_matrix(), budget)?;
    if let Some(p) = &found {
        assert_eq!(&g.relabel(p), h, "isomorphism does not map edges onto edges");
    }
    Ok(found)
}

/// `Some(p)` with `apply_similarity(s1, p) == s2`, i.e. `s2 = P⁻¹ s1 P`.
pub fn permutation_similar(s1: &IntMatrix, s2: &IntMatrix) -> Result<Option<Permutation>, IsoError> {
    permutation_similar_with(s1, s2, IsoBudget::default())
}

pub fn permutation_similar_with(
    s1: &IntMatrix,
    s2: &IntMatrix,
    budget: IsoBudget,
) -> Result<Option<Permutation>, IsoError> {
    // find_matrix_isomorphism(x, y) gives x[i][j] = y[p(i)][p(j)].
    let found = find_matrix_isomorphism(s2, s1, budget)?;
    if let Some(p) = &found {
        let conjugated = s1.apply_similarity(p).expect("dimensions checked");
        assert_eq!(&conjugated, s2, "similarity witness does not conjugate s1 onto s2");
    }
    Ok(found)
}

/// Whether `A(G ⊔ G)` is permutation-similar to `A(double cover of G)`.
/// This holds exactly when `G` is bipartite; the value is computed by the
/// similarity search, not derived from bipartiteness.
pub fn verify_bip_copy(g: &Graph) -> Result<bool, IsoError> {
    let doubled = disjoint_union(g, g).adjacency_matrix();
    let cover = bipartite_double_cover(g).adjacency_matrix();
    Ok(permutation_similar(&doubled, &cover)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("base graph is bipartite; a duplication family needs an odd cycle")]
    Bipartite,
    #[error("k must be at least 1")]
    ZeroCopies,
    #[error("certification failed: {0}")]
    Certification(String),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

/// Pairwise non-isomorphism verdict between two family members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub first: usize,
    pub second: usize,
    pub isomorphic: bool,
}

/// `k + 1` pairwise non-isomorphic graphs on `2kn` vertices with one
/// common square.
///
/// Member `t - 1` (for `t = 1..=k`) replaces the first `t` pairs of `G`
/// blocks by double covers, the block layout obtained by swapping adjacent
/// row blocks of `diag(A(G), ..., A(G))`. The last member is `2k` copies of
/// `G`. Every member's square equals `shared_square` entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicationFamily {
    pub base: Graph,
    pub k: usize,
    pub shared_square: IntMatrix,
    pub members: Vec<Graph>,
    /// `verify(member, shared_square)` per member, in order.
    pub member_verified: Vec<bool>,
    /// One verdict per unordered pair of members.
    pub pairs: Vec<PairVerdict>,
}

impl DuplicationFamily {
    pub fn certified(&self) -> bool {
        self.member_verified.iter().all(|&ok| ok) && self.pairs.iter().all(|p| !p.isomorphic)
    }
}

/// Builds and certifies the duplication family for a nonbipartite `G`.
pub fn duplication_family(g: &Graph, k: usize) -> Result<DuplicationFamily, FamilyError> {
    if k == 0 {
        return Err(FamilyError::ZeroCopies);
    }
    if is_bipartite(g).is_some() {
        return Err(FamilyError::Bipartite);
    }
    let cover = bipartite_double_cover(g);
    let base_square = g.square_matrix();
    let blocks: Vec<&IntMatrix> = std::iter::repeat_n(&base_square, 2 * k).collect();
    let shared_square = IntMatrix::block_diagonal(&blocks);

    let mut members = Vec::with_capacity(k + 1);
    for t in 1..=k {
        let parts = std::iter::repeat_n(&cover, t)
            .chain(std::iter::repeat_n(g, 2 * (k - t)));
        members.push(disjoint_union_all(parts));
    }
    members.push(disjoint_union_all(std::iter::repeat_n(g, 2 * k)));

    let member_verified: Vec<bool> = members
        .iter()
        .map(|m| crate::realize::verify(m, &shared_square).unwrap_or(false))
        .collect();
    if let Some(bad) = member_verified.iter().position(|&ok| !ok) {
        return Err(FamilyError::Certification(format!("member {} has a different square", bad + 1)));
    }

    let mut pairs = Vec::new();
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            let isomorphic = are_isomorphic(&members[a], &members[b])?.is_some();
            if isomorphic {
                return Err(FamilyError::Certification(format!(
                    "members {} and {} are isomorphic",
                    a + 1,
                    b + 1
                )));
            }
            pairs.push(PairVerdict { first: a, second: b, isomorphic });
        }
    }

    Ok(DuplicationFamily { base: g.clone(), k, shared_square, members, member_verified, pairs })
}
