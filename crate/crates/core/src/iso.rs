//! Exact isomorphism of integer matrices viewed as complete edge-weighted
//! digraphs: find `p` with `x[i][j] == y[p(i)][p(j)]` for all `i, j`.
//!
//! The search is individualization-refinement. Both matrices are refined
//! together with one shared colour table: a vertex's new colour is its old
//! colour plus the multiset of `(weight out, weight in, neighbour colour)`
//! over its nonzero off-diagonal entries, and the diagonal seeds the first
//! colouring. When the colourings stop splitting, one vertex of the
//! smallest non-trivial class of `x` is individualized against each
//! candidate of the same class in `y` in turn. Any leaf is checked entry
//! by entry, so the answer is exact.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{IntMatrix, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoBudget {
    /// Maximum number of individualization branches explored.
    pub max_nodes: u64,
}

impl Default for IsoBudget {
    fn default() -> Self {
        IsoBudget { max_nodes: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("isomorphism search gave up after {0} branches")]
    BudgetExceeded(u64),
}

type Colors = Vec<u32>;

struct Search<'a> {
    x: &'a IntMatrix,
    y: &'a IntMatrix,
    nodes: u64,
    budget: IsoBudget,
}

/// Finds `p` with `x[i][j] == y[p(i)][p(j)]`, or proves none exists.
pub fn find_matrix_isomorphism(
    x: &IntMatrix,
    y: &IntMatrix,
    budget: IsoBudget,
) -> Result<Option<Permutation>, IsoError> {
    if x.dim() != y.dim() {
        return Err(IsoError::DimensionMismatch(x.dim(), y.dim()));
    }
    let mut search = Search { x, y, nodes: 0, budget };
    let (xc, yc) = initial_colors(x, y);
    let found = search.descend(xc, yc)?;
    if let Some(p) = &found {
        assert!(is_matrix_isomorphism(x, y, p), "isomorphism engine returned a non-witness");
    }
    Ok(found)
}

/// Checks `x[i][j] == y[p(i)][p(j)]` entrywise.
pub fn is_matrix_isomorphism(x: &IntMatrix, y: &IntMatrix, p: &Permutation) -> bool {
    let n = x.dim();
    n == y.dim()
        && p.len() == n
        && (0..n).all(|i| (0..n).all(|j| x.get(i, j) == y.get(p.apply(i), p.apply(j))))
}

fn initial_colors(x: &IntMatrix, y: &IntMatrix) -> (Colors, Colors) {
    let mut values: Vec<u64> = x.diagonal().into_iter().chain(y.diagonal()).collect();
    values.sort_unstable();
    values.dedup();
    let color = |m: &IntMatrix| -> Colors {
        m.diagonal()
            .iter()
            .map(|d| values.binary_search(d).unwrap() as u32)
            .collect()
    };
    (color(x), color(y))
}

fn class_count(c: &Colors) -> usize {
    let mut seen: Vec<u32> = c.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn histogram(c: &Colors) -> Vec<u32> {
    let mut h = c.clone();
    h.sort_unstable();
    h
}

type Signature = (u32, Vec<(u64, u64, u32)>);

fn signature(m: &IntMatrix, c: &Colors, v: usize) -> Signature {
    let mut around: Vec<(u64, u64, u32)> = (0..m.dim())
        .filter(|&j| j != v)
        .filter_map(|j| {
            let (out, inn) = (m.get(v, j), m.get(j, v));
            (out != 0 || inn != 0).then_some((out, inn, c[j]))
        })
        .collect();
    around.sort_unstable();
    (c[v], around)
}

/// Refines both colourings jointly to a stable partition. Returns `None`
/// as soon as the colour histograms of the two sides diverge.
fn refine(x: &IntMatrix, y: &IntMatrix, mut xc: Colors, mut yc: Colors) -> Option<(Colors, Colors)> {
    if histogram(&xc) != histogram(&yc) {
        return None;
    }
    let mut classes = class_count(&xc);
    loop {
        let xs: Vec<Signature> = (0..x.dim()).map(|v| signature(x, &xc, v)).collect();
        let ys: Vec<Signature> = (0..y.dim()).map(|v| signature(y, &yc, v)).collect();
        let mut distinct: Vec<&Signature> = xs.iter().chain(ys.iter()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let ids: HashMap<&Signature, u32> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
        xc = xs.iter().map(|s| ids[s]).collect();
        yc = ys.iter().map(|s| ids[s]).collect();
        if histogram(&xc) != histogram(&yc) {
            return None;
        }
        let now = class_count(&xc);
        if now == classes {
            return Some((xc, yc));
        }
        classes = now;
    }
}

impl Search<'_> {
    fn descend(&mut self, xc: Colors, yc: Colors) -> Result<Option<Permutation>, IsoError> {
        let Some((xc, yc)) = refine(self.x, self.y, xc, yc) else {
            return Ok(None);
        };
        let n = xc.len();

        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for &c in &xc {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes
            .iter()
            .filter(|(_, &size)| size > 1)
            .min_by_key(|(&color, &size)| (size, color))
            .map(|(&color, _)| color);

        let Some(target) = target else {
            // Discrete partition: the colours determine the map.
            let mut y_of_color = HashMap::new();
            for (w, &c) in yc.iter().enumerate() {
                y_of_color.insert(c, w);
            }
            let p = Permutation::new((0..n).map(|v| y_of_color[&xc[v]]).collect())
                .expect("discrete colourings match one to one");
            return Ok(is_matrix_isomorphism(self.x, self.y, &p).then_some(p));
        };

        let v = xc.iter().position(|&c| c == target).unwrap();
        let fresh = xc.iter().chain(yc.iter()).max().map_or(0, |m| m + 1);
        for w in (0..n).filter(|&w| yc[w] == target) {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(IsoError::BudgetExceeded(self.budget.max_nodes));
            }
            let mut xi = xc.clone();
            let mut yi = yc.clone();
            xi[v] = fresh;
            yi[w] = fresh;
            if let Some(p) = self.descend(xi, yi)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}
