//! Brute-force oracles. They work from raw edge lists and never call the
//! library's matrix, search or refinement code.

#![allow(dead_code)]

use square_graphic::Graph;

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |mask| Graph::from_mask(n, mask))
}

/// Every labeled graph on at most `max_n` vertices.
pub fn all_graphs_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
    (0..=max_n).flat_map(all_graphs)
}

fn adjacency_sets(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

/// Number of walks `i -> m -> j`, by looping over the middle vertex.
pub fn two_walks(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let adj = adjacency_sets(g);
    let mut out = vec![vec![0; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for m in 0..n {
                if adj[i][m] && adj[m][j] {
                    *cell += 1;
                }
            }
        }
    }
    out
}

/// `(is bipartite, component count)` by BFS 2-colouring.
pub fn bipartite_and_components(g: &Graph) -> (bool, usize) {
    let n = g.vertex_count();
    let adj = adjacency_sets(g);
    let mut color = vec![-1i32; n];
    let mut bipartite = true;
    let mut components = 0;
    for root in 0..n {
        if color[root] >= 0 {
            continue;
        }
        components += 1;
        color[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if !adj[v][w] {
                    continue;
                }
                if color[w] < 0 {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    bipartite = false;
                }
            }
        }
    }
    (bipartite, components)
}

/// Distinct 4-cycles: closed walks `a b c d a` on four distinct vertices,
/// each cycle counted 8 times (4 starts × 2 directions).
pub fn four_cycles(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let adj = adjacency_sets(g);
    let mut walks = 0;
    for a in 0..n {
        for b in (0..n).filter(|&b| adj[a][b]) {
            for c in (0..n).filter(|&c| c != a && adj[b][c]) {
                for d in (0..n).filter(|&d| d != a && d != b && adj[c][d]) {
                    if adj[d][a] {
                        walks += 1;
                    }
                }
            }
        }
    }
    assert_eq!(walks % 8, 0);
    walks / 8
}

pub fn degrees(g: &Graph) -> Vec<u64> {
    let mut d = vec![0; g.vertex_count()];
    for &(a, b) in g.edges() {
        d[a] += 1;
        d[b] += 1;
    }
    d
}

/// `Σ_{v ∈ Γ(i)} deg(v)` for each `i`.
pub fn neighbor_degree_sums(g: &Graph) -> Vec<u64> {
    let deg = degrees(g);
    let mut out = vec![0; g.vertex_count()];
    for &(a, b) in g.edges() {
        out[a] += deg[b];
        out[b] += deg[a];
    }
    out
}

/// All labeled graphs on `n` vertices whose two-walk matrix equals `s`.
pub fn brute_force_realizations(s: &[Vec<u64>]) -> Vec<Graph> {
    let n = s.len();
    all_graphs(n).filter(|g| two_walks(g) == s).collect()
}

/// Whether `p` maps the edges of `g` exactly onto the edges of `h`.
pub fn maps_edges(g: &Graph, h: &Graph, p: &[usize]) -> bool {
    let mut image: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
        .collect();
    image.sort_unstable();
    image == h.edges()
}
