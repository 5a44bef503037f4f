//! Exact decision procedure for "is `S` the square of an adjacency matrix?"
//!
//! The decision variables are the potential edges `(i, j)`, `i < j`, taken
//! row by row: all of `(0, ·)`, then `(1, ·)`, and so on. Each variable is
//! tried absent first, then present. Two readings of `S` drive the pruning:
//! `s_ii` is the degree of `i`, and `s_ij` is the number of common
//! neighbours of `i` and `j`.
//!
//! * Degrees never exceed `s_ii` and must remain reachable with the
//!   undecided pairs left.
//! * Partial common-neighbour counts never exceed `s_ij`.
//! * Once rows `i` and `u` are both complete, their count is final and must
//!   equal `s_iu` exactly.
//! * For a complete row `u` and an open vertex `v`, the common neighbours
//!   still attainable must be able to reach `s_uv`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::analysis::necessary_conditions;
use crate::formats::{decode_graph6, encode_graph6};
use crate::graph::{Graph, IntMatrix, MatrixError};

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: Some(100_000_000), max_time: Some(Duration::from_secs(60)) }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: None, max_time: None }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// A graph whose square is the input was found.
    Realized,
    /// Proven impossible: a necessary condition failed or the whole search
    /// space was exhausted.
    Infeasible,
    /// The budget ran out first; nothing is proven.
    Aborted,
}

mod graph6_opt {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Option<Graph>, s: S) -> Result<S::Ok, S::Error> {
        g.as_ref().map(encode_graph6).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Graph>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| decode_graph6(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

mod graph6_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(gs: &[Graph], s: S) -> Result<S::Ok, S::Error> {
        gs.iter().map(encode_graph6).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Graph>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| decode_graph6(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod millis {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        (d.as_millis() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

/// Result of [`realize`]. Serializes as
/// `{verdict, witness (graph6 or null), nodes_explored, elapsed_ms, reason}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationOutcome {
    pub verdict: Verdict,
    #[serde(with = "graph6_opt")]
    pub witness: Option<Graph>,
    pub nodes_explored: u64,
    #[serde(rename = "elapsed_ms", with = "millis")]
    pub elapsed: Duration,
    pub reason: Option<String>,
}

/// Result of [`realize_all`]: labeled witnesses in search order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub verdict: Verdict,
    #[serde(with = "graph6_list")]
    pub witnesses: Vec<Graph>,
    /// True when every labeled solution is in `witnesses`.
    pub complete: bool,
    pub nodes_explored: u64,
    #[serde(rename = "elapsed_ms", with = "millis")]
    pub elapsed: Duration,
    pub reason: Option<String>,
}

/// Whether `square(A(G)) == S` entrywise.
pub fn verify(g: &Graph, s: &IntMatrix) -> Result<bool, MatrixError> {
    if g.vertex_count() != s.dim() {
        return Err(MatrixError::DimensionMismatch(g.vertex_count(), s.dim()));
    }
    Ok(&g.square_matrix() == s)
}

/// Searches for one graph whose adjacency matrix squares to `s`.
pub fn realize(s: &IntMatrix, budget: Budget) -> RealizationOutcome {
    let e = realize_all(s, 1, budget);
    RealizationOutcome {
        verdict: e.verdict,
        witness: e.witnesses.into_iter().next(),
        nodes_explored: e.nodes_explored,
        elapsed: e.elapsed,
        reason: e.reason,
    }
}

/// Enumerates up to `limit` labeled graphs `G` with `A(G)² = s`, in the
/// fixed search order.
pub fn realize_all(s: &IntMatrix, limit: usize, budget: Budget) -> Enumeration {
    let start = Instant::now();
    let report = necessary_conditions(s);
    if !report.overall {
        return Enumeration {
            verdict: Verdict::Infeasible,
            witnesses: Vec::new(),
            complete: true,
            nodes_explored: 0,
            elapsed: start.elapsed(),
            reason: Some(format!("failed necessary conditions: {}", report.failed().join(", "))),
        };
    }

    let mut search = Search::new(s, limit, budget, start);
    let flow = if limit == 0 { Flow::Stop } else { search.run(0, 1) };
    let witnesses = std::mem::take(&mut search.found);
    for w in &witnesses {
        assert_eq!(verify(w, s), Ok(true), "realization search produced a non-witness");
    }
    let aborted = search.aborted;
    let (verdict, reason) = match (witnesses.is_empty(), aborted) {
        (false, _) => (Verdict::Realized, None),
        (true, false) => (Verdict::Infeasible, Some("search exhausted".to_string())),
        (true, true) => (Verdict::Aborted, Some(search.abort_reason())),
    };
    Enumeration {
        verdict,
        witnesses,
        complete: flow == Flow::Continue && !aborted,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
        reason,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct Search<'a> {
    s: &'a IntMatrix,
    n: usize,
    words: usize,
    /// Adjacency rows as bitsets, `words` u64 per vertex.
    adj: Vec<u64>,
    degree: Vec<u64>,
    /// Common-neighbour counts so far, `n × n`.
    common: Vec<u64>,
    found: Vec<Graph>,
    limit: usize,
    nodes: u64,
    budget: Budget,
    start: Instant,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(s: &'a IntMatrix, limit: usize, budget: Budget, start: Instant) -> Self {
        let n = s.dim();
        let words = n.div_ceil(64).max(1);
        Search {
            s,
            n,
            words,
            adj: vec![0; n * words],
            degree: vec![0; n],
            common: vec![0; n * n],
            found: Vec::new(),
            limit,
            nodes: 0,
            budget,
            start,
            aborted: false,
        }
    }

    fn abort_reason(&self) -> String {
        match self.budget.max_nodes {
            Some(max) if self.nodes > max => format!("node budget of {max} exhausted"),
            _ => format!(
                "time budget of {:?} exhausted",
                self.budget.max_time.unwrap_or_default()
            ),
        }
    }

    #[inline]
    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn toggle_edge(&mut self, a: usize, b: usize) {
        self.adj[a * self.words + b / 64] ^= 1 << (b % 64);
        self.adj[b * self.words + a / 64] ^= 1 << (a % 64);
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        let row = &self.adj[v * self.words..(v + 1) * self.words];
        let mut out = Vec::new();
        for (w, &word) in row.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    fn over_budget(&mut self) -> bool {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.aborted = true;
            }
        }
        if let Some(max) = self.budget.max_time {
            if self.nodes.is_multiple_of(1024) && self.start.elapsed() > max {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// Decides pair `(i, j)`, then everything after it.
    fn run(&mut self, i: usize, j: usize) -> Flow {
        if i >= self.n {
            return self.record();
        }
        if j >= self.n {
            if !self.row_complete(i) {
                return Flow::Continue;
            }
            return self.run(i + 1, i + 2);
        }
        if self.over_budget() {
            return Flow::Stop;
        }
        let s = self.s;
        let n = self.n;

        // Edge absent: both endpoints must still be able to reach their degree.
        let left_i = (n - j - 1) as u64;
        let left_j = ((j - i - 1) + (n - j - 1)) as u64;
        if self.degree[i] + left_i >= s.get(i, i) && self.degree[j] + left_j >= s.get(j, j)
            && self.run(i, j + 1) == Flow::Stop {
                return Flow::Stop;
            }

        // Edge present.
        if self.degree[i] < s.get(i, i) && self.degree[j] < s.get(j, j) {
            if let Some(touched) = self.add_edge(i, j) {
                let flow = self.run(i, j + 1);
                self.remove_edge(i, j, &touched);
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
            }
        }
        Flow::Continue
    }

    /// Inserts edge `(i, j)` if no common-neighbour count would exceed its
    /// target. Returns the neighbourhoods needed to undo it.
    fn add_edge(&mut self, i: usize, j: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        // j becomes a common neighbour of i and each neighbour of j, and
        // symmetrically for i.
        let touched_i = self.neighbors(j);
        let touched_j = self.neighbors(i);
        if !self.bump(i, &touched_i) {
            return None;
        }
        if !self.bump(j, &touched_j) {
            self.unbump(i, &touched_i);
            return None;
        }
        self.toggle_edge(i, j);
        self.degree[i] += 1;
        self.degree[j] += 1;
        Some((touched_i, touched_j))
    }

    fn remove_edge(&mut self, i: usize, j: usize, touched: &(Vec<usize>, Vec<usize>)) {
        self.degree[i] -= 1;
        self.degree[j] -= 1;
        self.toggle_edge(i, j);
        self.unbump(i, &touched.0);
        self.unbump(j, &touched.1);
    }

    /// Adds one common neighbour to `(v, k)` for each `k` in `others`,
    /// rolling back and returning false if any count would exceed `s_vk`.
    fn bump(&mut self, v: usize, others: &[usize]) -> bool {
        let n = self.n;
        for (idx, &k) in others.iter().enumerate() {
            if k == v {
                continue;
            }
            if self.common[v * n + k] + 1 > self.s.get(v, k) {
                self.unbump(v, &others[..idx]);
                return false;
            }
            self.common[v * n + k] += 1;
            self.common[k * n + v] += 1;
        }
        true
    }

    fn unbump(&mut self, v: usize, others: &[usize]) {
        let n = self.n;
        for &k in others {
            if k == v {
                continue;
            }
            self.common[v * n + k] -= 1;
            self.common[k * n + v] -= 1;
        }
    }

    /// Checks made once every pair touching vertex `i` is decided.
    fn row_complete(&self, i: usize) -> bool {
        let s = self.s;
        let n = self.n;
        if self.degree[i] != s.get(i, i) {
            return false;
        }
        // Counts between complete rows are final.
        if (0..i).any(|u| self.common[i * n + u] != s.get(i, u)) {
            return false;
        }
        // Open vertices: degree still reachable, common neighbours with
        // complete rows still attainable.
        for v in i + 1..n {
            let open = (n - i - 2) as u64;
            if self.degree[v] + open < s.get(v, v) {
                return false;
            }
        }
        for u in 0..=i {
            let reachable: Vec<usize> = self.neighbors(u).into_iter().filter(|&w| w > i).collect();
            for v in i + 1..n {
                let extra = reachable.iter().filter(|&&w| w != v).count() as u64;
                if self.common[u * n + v] + extra < s.get(u, v) {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self) -> Flow {
        let n = self.n;
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect();
        self.found.push(Graph::from_edges(n, edges).expect("search edges are valid"));
        if self.found.len() >= self.limit {
            Flow::Stop
        } else {
            Flow::Continue
        }
    }
}
