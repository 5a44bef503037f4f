//! Structural facts and necessary conditions for a candidate square
//! `S = A(G)²`.
//!
//! Everything here relies on two readings of `S` when it really is a square:
//! `s_ii` is the degree of vertex `i`, and `s_ij` (for `i != j`) is the
//! number of common neighbours of `i` and `j`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::graph::{IntMatrix, MatrixError};

/// Exact nonnegative rational, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        Ratio { num: num / g, den: den / g }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Labels of the connected components of the support graph of `S`
/// (indices joined wherever an off-diagonal entry is nonzero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexPartition {
    pub component_of: Vec<usize>,
    pub component_count: usize,
}

impl IndexPartition {
    /// Indices of each component, in label order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (i, &c) in self.component_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// Connected components of the off-diagonal support of `S`. Diagonal
/// entries are ignored. Labels follow the order of each component's
/// smallest index.
pub fn support_components(s: &IntMatrix) -> Result<IndexPartition, MatrixError> {
    s.ensure_symmetric()?;
    let n = s.dim();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        label[root] = count;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j != i && s.get(i, j) != 0 && label[j] == usize::MAX {
                    label[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    Ok(IndexPartition { component_of: label, component_count: count })
}

/// For `S = A(G)²`: true exactly when `G` is bipartite or disconnected,
/// which is when `S` splits into at least two support components.
pub fn is_bipartite_or_disconnected(s: &IntMatrix) -> Result<bool, MatrixError> {
    Ok(support_components(s)?.component_count >= 2)
}

/// Result of the four-cycle formula `¼ Σ_{i≠j} C(s_ij, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4Count {
    /// `Σ_{i≠j} C(s_ij, 2)` over ordered pairs.
    pub pair_sum: u128,
    /// `pair_sum / 4` in lowest terms.
    pub value: Ratio,
    pub divisible_by_4: bool,
}

impl C4Count {
    /// The integer count, when the sum divides evenly.
    pub fn count(&self) -> Option<u128> {
        self.divisible_by_4.then_some(self.pair_sum / 4)
    }
}

fn c4_pair_sum(s: &IntMatrix) -> u128 {
    let n = s.dim();
    let mut sum = 0u128;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let x = s.get(i, j) as u128;
                sum += x * x.saturating_sub(1) / 2;
            }
        }
    }
    sum
}

/// Number of distinct 4-cycles of `G` when `s = A(G)²`: each 4-cycle is
/// seen once per ordered diagonal pair of opposite vertices, four times in
/// total. For arbitrary candidates the exact rational is kept.
pub fn count_c4(s: &IntMatrix) -> Result<C4Count, MatrixError> {
    s.ensure_symmetric()?;
    let pair_sum = c4_pair_sum(s);
    Ok(C4Count {
        pair_sum,
        value: Ratio::new(pair_sum, 4),
        divisible_by_4: pair_sum.is_multiple_of(4),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSumEntry {
    pub index: usize,
    pub row_sum: u128,
    pub diagonal: u64,
    /// `row_sum / s_ii`; absent when `s_ii = 0`.
    pub avg_neighbor_degree: Option<Ratio>,
    pub multiset_feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSumReport {
    pub rows: Vec<RowSumEntry>,
}

impl RowSumReport {
    pub fn all_feasible(&self) -> bool {
        self.rows.iter().all(|r| r.multiset_feasible)
    }

    pub fn first_infeasible(&self) -> Option<&RowSumEntry> {
        self.rows.iter().find(|r| !r.multiset_feasible)
    }
}

fn row_sum(s: &IntMatrix, i: usize) -> u128 {
    s.row(i).iter().map(|&x| x as u128).sum()
}

/// Whether some sub-multiset of `items` with exactly `size` elements sums
/// to `target`. Dynamic programming over (count, sum) with bitset rows;
/// memory is proportional to `size · target`.
pub fn sub_multiset_sum_exists(items: &[u64], size: usize, target: u128) -> bool {
    if size > items.len() {
        return false;
    }
    let max_total: u128 = {
        let mut sorted = items.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted.iter().take(size).map(|&x| x as u128).sum()
    };
    if target > max_total {
        return false;
    }
    let target = target as usize;
    let words = target / 64 + 1;
    // reach[c] has bit t set when some c items sum to t.
    let mut reach = vec![vec![0u64; words]; size + 1];
    reach[0][0] = 1;
    for &item in items {
        if item as u128 > target as u128 {
            continue;
        }
        let shift = item as usize;
        for c in (0..size).rev() {
            let (lo, hi) = reach.split_at_mut(c + 1);
            shift_or(&lo[c], &mut hi[0], shift);
        }
    }
    reach[size][target / 64] >> (target % 64) & 1 == 1
}

/// `dst |= src << shift`, truncated to `dst`'s length.
fn shift_or(src: &[u64], dst: &mut [u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    for k in (word_shift..dst.len()).rev() {
        let from = k - word_shift;
        let mut v = src[from] << bit_shift;
        if bit_shift != 0 && from > 0 {
            v |= src[from - 1] >> (64 - bit_shift);
        }
        dst[k] |= v;
    }
}

/// Row-sum diagnostics for a symmetric candidate square.
///
/// When `S = A(G)²` the sum of row `i` is the total degree of the
/// neighbours of `i`. So there must be a sub-multiset of the diagonal, with
/// one copy of `s_ii` removed and exactly `s_ii` members, summing to the
/// full row sum. A zero diagonal entry forces an all-zero row.
pub fn row_sum_report(s: &IntMatrix) -> Result<RowSumReport, MatrixError> {
    s.ensure_symmetric()?;
    Ok(row_sum_report_unchecked(s))
}

fn row_sum_report_unchecked(s: &IntMatrix) -> RowSumReport {
    let diag = s.diagonal();
    let rows = (0..s.dim())
        .map(|i| {
            let sum = row_sum(s, i);
            let d = diag[i];
            // A neighbour's degree is at most n - 1, so larger diagonal
            // values can never be members of the neighbour-degree multiset.
            let max_degree = s.dim().saturating_sub(1) as u64;
            let mut others = diag.clone();
            others.remove(i);
            others.retain(|&x| x <= max_degree);
            let feasible = usize::try_from(d)
                .map(|size| sub_multiset_sum_exists(&others, size, sum))
                .unwrap_or(false);
            RowSumEntry {
                index: i,
                row_sum: sum,
                diagonal: d,
                avg_neighbor_degree: (d != 0).then(|| Ratio::new(sum, d as u128)),
                multiset_feasible: feasible,
            }
        })
        .collect();
    RowSumReport { rows }
}

/// Outcome of the regular-graph row-sum test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularCheck {
    /// Diagonal constant `k` and every row sums to `k²`.
    Holds { k: u64 },
    /// Diagonal constant `k` but some row does not sum to `k²`.
    Fails { k: u64, row: usize },
    /// Diagonal not constant; the test says nothing.
    NotRegular,
}

impl RegularCheck {
    pub fn passed(&self) -> bool {
        !matches!(self, RegularCheck::Fails { .. })
    }
}

/// If every diagonal entry is some `k`, every row of a genuine square sums
/// to `k²`.
pub fn regular_row_sum_check(s: &IntMatrix) -> RegularCheck {
    let n = s.dim();
    if n == 0 {
        return RegularCheck::NotRegular;
    }
    let k = s.get(0, 0);
    if (1..n).any(|i| s.get(i, i) != k) {
        return RegularCheck::NotRegular;
    }
    let k_sq = k as u128 * k as u128;
    match (0..n).find(|&i| row_sum(s, i) != k_sq) {
        Some(row) => RegularCheck::Fails { k, row },
        None => RegularCheck::Holds { k },
    }
}

/// One named necessary condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    pub reason: String,
}

impl Check {
    fn pass(reason: impl Into<String>) -> Self {
        Check { passed: true, reason: reason.into() }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Check { passed: false, reason: reason.into() }
    }

    fn from(passed: bool, ok: impl Into<String>, bad: impl FnOnce() -> String) -> Self {
        if passed {
            Check::pass(ok)
        } else {
            Check::fail(bad())
        }
    }
}

/// The full rejection battery. `overall = false` proves `S` is not the
/// square of any simple graph; `overall = true` is necessary only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub symmetric: Check,
    pub nonneg_integer: Check,
    pub zero_free_diagonal_ok: Check,
    pub common_neighbor_bound: Check,
    pub trace_even: Check,
    pub c4_divisible_by_4: Check,
    pub rowsum_multiset_feasible: Check,
    pub overall: bool,
}

impl ConditionReport {
    /// `(field name, check)` pairs in a stable order.
    pub fn checks(&self) -> [(&'static str, &Check); 7] {
        [
            ("symmetric", &self.symmetric),
            ("nonneg_integer", &self.nonneg_integer),
            ("zero_free_diagonal_ok", &self.zero_free_diagonal_ok),
            ("common_neighbor_bound", &self.common_neighbor_bound),
            ("trace_even", &self.trace_even),
            ("c4_divisible_by_4", &self.c4_divisible_by_4),
            ("rowsum_multiset_feasible", &self.rowsum_multiset_feasible),
        ]
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks()
            .into_iter()
            .filter(|(_, c)| !c.passed)
            .map(|(name, _)| name)
            .collect()
    }
}

/// Runs every necessary condition. Never errors: a malformed candidate
/// simply fails checks. Indices in reasons are 1-based (`v_1..v_n`).
pub fn necessary_conditions(s: &IntMatrix) -> ConditionReport {
    let n = s.dim();

    let symmetric = match s.asymmetry() {
        None => Check::pass("matrix is symmetric"),
        Some((i, j)) => Check::fail(format!(
            "s[{}][{}] = {} but s[{}][{}] = {}",
            i + 1,
            j + 1,
            s.get(i, j),
            j + 1,
            i + 1,
            s.get(j, i)
        )),
    };

    // IntMatrix only holds nonnegative integers.
    let nonneg_integer = Check::pass("all entries are nonnegative integers");

    let bad_diag = (0..n).find(|&i| s.get(i, i) > n.saturating_sub(1) as u64);
    let zero_free_diagonal_ok = Check::from(
        bad_diag.is_none(),
        "every diagonal entry is at most n - 1",
        || {
            let i = bad_diag.unwrap();
            format!("s[{0}][{0}] = {1} exceeds n - 1 = {2}", i + 1, s.get(i, i), n.saturating_sub(1))
        },
    );

    let bad_pair = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && s.get(i, j) > s.get(i, i).min(s.get(j, j)));
    let common_neighbor_bound = Check::from(
        bad_pair.is_none(),
        "every s_ij is at most min(s_ii, s_jj)",
        || {
            let (i, j) = bad_pair.unwrap();
            format!(
                "s[{}][{}] = {} exceeds min(s_ii, s_jj) = {}",
                i + 1,
                j + 1,
                s.get(i, j),
                s.get(i, i).min(s.get(j, j))
            )
        },
    );

    let trace: u128 = (0..n).map(|i| s.get(i, i) as u128).sum();
    let trace_even = Check::from(trace.is_multiple_of(2), format!("trace {trace} is even"), || {
        format!("trace {trace} is odd, but it must equal twice the edge count")
    });

    let pair_sum = c4_pair_sum(s);
    let c4_divisible_by_4 = Check::from(
        pair_sum.is_multiple_of(4),
        format!("sum of C(s_ij, 2) over i != j is {pair_sum}, divisible by 4"),
        || format!("sum of C(s_ij, 2) over i != j is {pair_sum}, not divisible by 4"),
    );

    let rows = row_sum_report_unchecked(s);
    let infeasible: Vec<String> = rows
        .rows
        .iter()
        .filter(|r| !r.multiset_feasible)
        .map(|r| {
            let avg = r
                .avg_neighbor_degree
                .map(|a| format!(", average neighbour degree {a}"))
                .unwrap_or_default();
            format!(
                "v_{} (needs {} other diagonal entries summing to {}{})",
                r.index + 1,
                r.diagonal,
                r.row_sum,
                avg
            )
        })
        .collect();
    let rowsum_multiset_feasible = Check::from(
        infeasible.is_empty(),
        "every row sum is a sum of s_ii other diagonal entries",
        || format!("no neighbour-degree multiset for {}", infeasible.join("; ")),
    );

    let overall = [
        &symmetric,
        &nonneg_integer,
        &zero_free_diagonal_ok,
        &common_neighbor_bound,
        &trace_even,
        &c4_divisible_by_4,
        &rowsum_multiset_feasible,
    ]
    .iter()
    .all(|c| c.passed);

    ConditionReport {
        symmetric,
        nonneg_integer,
        zero_free_diagonal_ok,
        common_neighbor_bound,
        trace_even,
        c4_divisible_by_4,
        rowsum_multiset_feasible,
        overall,
    }
}
