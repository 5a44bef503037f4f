//! Exact value types: simple undirected graphs, nonnegative integer matrices
//! and permutations acting on them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("integer overflow while multiplying matrices")]
    Overflow,
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized (`i < j`), sorted and deduplicated, so two
/// graphs compare equal exactly when they have the same labeled edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from unordered pairs. Duplicates and reversed pairs
    /// collapse; loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    /// Cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::from_edges(n, pairs).unwrap()
    }

    /// Star with centre 0 and `leaves` pendant vertices.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// Graph whose edge set is the bit pattern `mask` over the pairs
    /// `(i, j)`, `i < j`, in row-major order. Used for exhaustive enumeration.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Sorted neighbour lists.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Vertex degrees sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = self.degrees();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        deg
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n);
        for &(a, b) in &self.edges {
            m.set(a, b, 1);
            m.set(b, a, 1);
        }
        m
    }

    /// `A(G)²`. Entries are bounded by `n - 1`, so this never overflows.
    pub fn square_matrix(&self) -> IntMatrix {
        self.adjacency_matrix()
            .square()
            .expect("adjacency entries are 0/1")
    }

    /// The graph with vertex `v` renamed to `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Self {
        assert_eq!(p.len(), self.n, "permutation size must match the graph");
        Graph::from_edges(self.n, self.edges.iter().map(|&(a, b)| (p.apply(a), p.apply(b))))
            .unwrap()
    }

    /// Connected component label per vertex, labels numbered in order of
    /// first appearance.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let adj = self.neighbors();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }
}

/// Dense square matrix of nonnegative integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_diagonal(diag: &[u64]) -> Self {
        let mut m = IntMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(MatrixError::Ragged { row, len: r.len(), expected: n });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { n, data })
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diagonal(blocks: &[&IntMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = IntMatrix::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(offset + i, offset + j, b.get(i, j));
                }
            }
            offset += b.n;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Sum of the diagonal, `None` on overflow.
    pub fn trace(&self) -> Option<u64> {
        (0..self.n).try_fold(0u64, |acc, i| acc.checked_add(self.get(i, i)))
    }

    /// First `(i, j)` with `m[i][j] != m[j][i]`, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn ensure_symmetric(&self) -> Result<(), MatrixError> {
        match self.asymmetry() {
            Some((i, j)) => Err(MatrixError::NotSymmetric(i, j)),
            None => Ok(()),
        }
    }

    /// Symmetric 0/1 matrix with zero diagonal.
    pub fn is_adjacency(&self) -> bool {
        self.is_symmetric()
            && (0..self.n).all(|i| self.get(i, i) == 0)
            && self.data.iter().all(|&x| x <= 1)
    }

    /// Interprets the matrix as an adjacency matrix.
    pub fn to_graph(&self) -> Option<Graph> {
        if !self.is_adjacency() {
            return None;
        }
        let pairs = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) == 1);
        Graph::from_edges(self.n, pairs).ok()
    }

    /// Exact product `self · other`; overflow is reported, never wrapped.
    pub fn multiply(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let term = a.checked_mul(b).ok_or(MatrixError::Overflow)?;
                    let slot = &mut out.data[i * n + j];
                    *slot = slot.checked_add(term).ok_or(MatrixError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// `M²`. For an adjacency matrix, entry `(i, j)` counts the two-walks
    /// from `i` to `j` and the diagonal holds the degrees.
    pub fn square(&self) -> Result<IntMatrix, MatrixError> {
        self.multiply(self)
    }

    /// Conjugation by a permutation: `result[i][j] = self[p(i)][p(j)]`.
    ///
    /// With `P` the permutation matrix sending `e_i` to `e_{p(i)}` this is
    /// `P⁻¹ M P`. It is a right action:
    /// `apply_similarity(apply_similarity(M, p), q) == apply_similarity(M, p ∘ q)`
    /// where `(p ∘ q)(i) = p(q(i))`.
    pub fn apply_similarity(&self, p: &Permutation) -> Result<IntMatrix, MatrixError> {
        if p.len() != self.n {
            return Err(MatrixError::DimensionMismatch(self.n, p.len()));
        }
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            let pi = p.apply(i);
            for j in 0..n {
                out.data[i * n + j] = self.get(pi, p.apply(j));
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.n).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u64>>::deserialize(deserializer)?;
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a permutation of 0..{0}")]
pub struct NotAPermutation(pub usize);

/// A bijection on `0..n`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self, NotAPermutation> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(NotAPermutation(n));
            }
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cyclic_shift(n: usize) -> Self {
        Permutation((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut m: Vec<usize> = (0..n).collect();
        m.swap(a, b);
        Permutation(m)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint-cycle notation with 1-indexed labels, e.g. `(1 3)(2 5 4)`.
    /// Fixed points are omitted; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let mapping = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(mapping).map_err(serde::de::Error::custom)
    }
}
