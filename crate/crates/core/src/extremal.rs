//! Exhaustive search for the connected threshold graphs of order `n` and
//! size `m` with the largest spectral radius, and reconciliation of the
//! results with the known extremal families.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{binomial2, CompositionSpec, ThresholdGraph};
use crate::spectral::spectral_radius;

/// Maximizers are all census members within this distance of the maximum.
pub const TIE_TOL: f64 = 1e-9;
/// Non-maximizers closer than this to the maximum are listed as near ties.
pub const NEAR_TIE_TOL: f64 = 1e-6;
/// Tolerance for each spectral radius computed during a search.
pub const SEARCH_TOL: f64 = 1e-10;
/// Largest order accepted by [`verify_table`].
pub const MAX_VERIFY_ORDER: usize = 24;

/// Nonincreasing tuples of exactly `parts` integers in `[1, max_part]`
/// summing to `total`, in lexicographically decreasing order.
pub fn bounded_partitions(total: usize, parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(
        remaining: usize,
        slots: usize,
        cap: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // each remaining slot needs at least 1 and at most `cap`
        if remaining < slots || remaining > slots * cap {
            return;
        }
        let hi = cap.min(remaining - (slots - 1));
        for part in (1..=hi).rev() {
            prefix.push(part);
            go(remaining - part, slots - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max_part, &mut Vec::with_capacity(parts), &mut out);
    out
}

fn connected_census(n: usize, m: usize) -> Vec<ThresholdGraph> {
    let mut out = Vec::new();
    if n == 0 || m > binomial2(n) {
        return out;
    }
    for c in 1..=n {
        let base = binomial2(c);
        if base > m {
            break;
        }
        let z = n - c;
        if z == 0 {
            if m == base {
                out.push(ThresholdGraph::from_bzp(c, &[]).expect("complete graph"));
            }
            continue;
        }
        if c < 2 {
            continue;
        }
        for b in bounded_partitions(m - base, z, c - 1) {
            out.push(ThresholdGraph::from_bzp(c, &b).expect("partition is a valid BZP"));
        }
    }
    out
}

/// One graph per isomorphism class with order `n` and size `m`, sorted by
/// generating sequence.
///
/// Connected graphs come from `(c, b)` pairs with `b` a bounded partition of
/// `m - C(c,2)`. Disconnected ones are a connected graph on fewer vertices
/// padded with isolated vertices.
pub fn enumerate_threshold_graphs(n: usize, m: usize, connected_only: bool) -> Vec<ThresholdGraph> {
    let mut out = connected_census(n, m);
    if !connected_only {
        for core in 1..n {
            for h in connected_census(core, m) {
                let mut bits = h.generating().bits().to_vec();
                bits.resize(n, false);
                out.push(ThresholdGraph::from_generating_sequence(&bits).expect("nonempty"));
            }
        }
    }
    out.sort();
    out
}

/// A census member with its spectral radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedGraph {
    pub graph: ThresholdGraph,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalResult {
    pub n: usize,
    pub m: usize,
    pub maximizers: Vec<ThresholdGraph>,
    pub rho_max: f64,
    pub near_ties: Vec<RankedGraph>,
    pub census_size: usize,
    /// Every census member in enumeration order.
    pub census: Vec<RankedGraph>,
}

impl ExtremalResult {
    pub fn is_maximizer(&self, g: &ThresholdGraph) -> bool {
        self.maximizers.contains(g)
    }
}

pub fn find_extremal(n: usize, m: usize) -> Result<ExtremalResult> {
    if n == 0 || m + 1 < n || m > binomial2(n) {
        return Err(Error::Infeasible { n, m });
    }
    let census = enumerate_threshold_graphs(n, m, true)
        .into_par_iter()
        .map(|graph| spectral_radius(&graph, SEARCH_TOL).map(|rho| RankedGraph { graph, rho }))
        .collect::<Result<Vec<_>>>()?;
    let rho_max = census
        .iter()
        .map(|r| r.rho)
        .fold(f64::NEG_INFINITY, f64::max);
    let maximizers = census
        .iter()
        .filter(|r| rho_max - r.rho <= TIE_TOL)
        .map(|r| r.graph.clone())
        .collect();
    let near_ties = census
        .iter()
        .filter(|r| {
            let gap = rho_max - r.rho;
            gap > TIE_TOL && gap < NEAR_TIE_TOL
        })
        .cloned()
        .collect();
    Ok(ExtremalResult {
        n,
        m,
        maximizers,
        rho_max,
        near_ties,
        census_size: census.len(),
        census,
    })
}

/// Rows of the table of known extremal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "row", rename_all = "snake_case")]
pub enum TableRow {
    /// `m = n - 1`: `G{n-1,1}`
    Tree,
    /// `m = n`: `G{2,n-3,1}`
    Unicyclic,
    /// `m = n + 1`: `G{2,1,n-4,1}`
    Bicyclic,
    /// `m = n + 2`: `G{3,n-4,1}`
    Tricyclic,
    /// `m = n + t`, `t >= 3`, only claimed for sufficiently large `n`:
    /// `G{t+1,1,n-3-t,1}`
    LargeOrder { t: usize },
    /// `m = n + C(k,2) - 1`, `k >= 4`: `G{k,n-1-k,1}` and/or
    /// `G{C(k,2),1,n-2-C(k,2),1}`
    CliquePlusPendant { k: usize },
    /// `m = n + C(k,2) - 2` with `2n <= m < C(n,2) - 1`
    AlmostClique { k: usize },
    /// Unsettled cells `m = n - 1 + C(k,2) + t`, `3 <= k <= n - 2`,
    /// `1 <= t < k`
    Conjecture { k: usize, t: usize },
}

impl TableRow {
    /// Rows whose prediction is a proven claim at every feasible order.
    pub fn is_asserted(&self) -> bool {
        !matches!(self, TableRow::LargeOrder { .. } | TableRow::Conjecture { .. })
    }
}

/// A table row instantiated at `(n, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub row: TableRow,
    pub candidates: Vec<ThresholdGraph>,
}

impl Prediction {
    pub fn compositions(&self) -> Vec<CompositionSpec> {
        self.candidates.iter().map(|g| g.to_composition()).collect()
    }
}

/// Expands alternating blocks that end in ones (first block ones for an odd
/// count). Zero-width inner blocks simply vanish; negative widths mean the
/// family does not exist at this order.
fn family(blocks: &[i64]) -> Option<ThresholdGraph> {
    if blocks.iter().any(|&p| p < 0) {
        return None;
    }
    let odd = blocks.len() % 2 == 1;
    let mut bits = Vec::new();
    for (i, &p) in blocks.iter().enumerate() {
        let ones = (i % 2 == 0) == odd;
        bits.extend(std::iter::repeat_n(ones, p as usize));
    }
    ThresholdGraph::from_generating_sequence(&bits).ok()
}

/// Both candidates for an unsettled cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjecturePair {
    pub k: usize,
    pub t: usize,
    /// `G{k-t,1,t,n-2-k,1}`
    pub candidate_a: Option<ThresholdGraph>,
    /// `G{C(k,2)+t,1,n-2-C(k,2)-t,1}`
    pub candidate_b: Option<ThresholdGraph>,
}

impl ConjecturePair {
    pub fn new(n: usize, k: usize, t: usize) -> Self {
        let (n, ki, ti) = (n as i64, k as i64, t as i64);
        let ck = ki * (ki - 1) / 2;
        Self {
            k,
            t,
            candidate_a: family(&[ki - ti, 1, ti, n - 2 - ki, 1]),
            candidate_b: family(&[ck + ti, 1, n - 2 - ck - ti, 1]),
        }
    }

    pub fn candidates(&self) -> Vec<ThresholdGraph> {
        let mut out: Vec<ThresholdGraph> = self
            .candidate_a
            .iter()
            .chain(self.candidate_b.iter())
            .cloned()
            .collect();
        out.dedup();
        out
    }
}

fn conjecture_cell(n: usize, m: usize) -> Option<(usize, usize)> {
    let excess = (m + 1).checked_sub(n)?;
    (3..=n.saturating_sub(2)).find_map(|k| {
        let t = excess.checked_sub(binomial2(k))?;
        (t >= 1 && t < k).then_some((k, t))
    })
}

/// Every table row that applies at `(n, m)`; empty when none does.
pub fn table_one_prediction(n: usize, m: usize) -> Vec<Prediction> {
    let mut out = Vec::new();
    if n == 0 || m + 1 < n || m > binomial2(n) {
        return out;
    }
    let ni = n as i64;
    let mut push = |row: TableRow, graphs: Vec<Option<ThresholdGraph>>| {
        let mut candidates: Vec<ThresholdGraph> = graphs
            .into_iter()
            .flatten()
            .filter(|g| g.n() == n && g.m() == m && g.is_connected())
            .collect();
        candidates.sort();
        candidates.dedup();
        if !candidates.is_empty() {
            out.push(Prediction { row, candidates });
        }
    };

    match m as i64 - ni {
        -1 => push(TableRow::Tree, vec![family(&[ni - 1, 1])]),
        0 => push(TableRow::Unicyclic, vec![family(&[2, ni - 3, 1])]),
        1 => push(TableRow::Bicyclic, vec![family(&[2, 1, ni - 4, 1])]),
        2 => push(TableRow::Tricyclic, vec![family(&[3, ni - 4, 1])]),
        t if t >= 3 => push(
            TableRow::LargeOrder { t: t as usize },
            vec![family(&[t + 1, 1, ni - 3 - t, 1])],
        ),
        _ => {}
    }

    for k in 4..=n {
        let ck = binomial2(k);
        let ki = k as i64;
        let cki = ck as i64;
        if n + ck - 1 == m {
            push(
                TableRow::CliquePlusPendant { k },
                vec![
                    family(&[ki, ni - 1 - ki, 1]),
                    family(&[cki, 1, ni - 2 - cki, 1]),
                ],
            );
        }
        // the family G{2,k-2,n-1-k,1} has exactly n + C(k,2) - 2 edges
        if n + ck == m + 2 && 2 * n <= m && m + 1 < binomial2(n) {
            push(
                TableRow::AlmostClique { k },
                vec![family(&[2, ki - 2, ni - 1 - ki, 1])],
            );
        }
    }

    if let Some((k, t)) = conjecture_cell(n, m) {
        push(
            TableRow::Conjecture { k, t },
            ConjecturePair::new(n, k, t)
                .candidates()
                .into_iter()
                .map(Some)
                .collect(),
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// Asserted row, empirical maximizers inside the predicted set.
    Match,
    /// Asserted row, some maximizer outside the predicted set.
    Mismatch,
    /// Unasserted row; empirical maximizer agrees with a candidate.
    EvidenceFor,
    /// Unasserted row; no candidate is among the maximizers.
    EvidenceAgainst,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub m: usize,
    #[serde(flatten)]
    pub row: TableRow,
    pub predicted: Vec<String>,
    pub empirical: Vec<String>,
    pub rho_max: f64,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub cells: Vec<CellReport>,
    pub mismatches: usize,
}

/// Checks every `(n, m)` cell in range that some table row covers.
/// Mismatches are reported, never raised.
pub fn verify_table(orders: std::ops::RangeInclusive<usize>) -> Result<VerifyReport> {
    let mut cells = Vec::new();
    for n in orders {
        if n > MAX_VERIFY_ORDER {
            return Err(Error::TooLarge {
                order: n,
                max: MAX_VERIFY_ORDER,
            });
        }
        if n == 0 {
            continue;
        }
        for m in n - 1..=binomial2(n) {
            let predictions = table_one_prediction(n, m);
            if predictions.is_empty() {
                continue;
            }
            let result = find_extremal(n, m)?;
            let empirical: Vec<String> =
                result.maximizers.iter().map(|g| g.to_string()).collect();
            for p in predictions {
                let inside = result.maximizers.iter().all(|g| p.candidates.contains(g));
                let overlap = result.maximizers.iter().any(|g| p.candidates.contains(g));
                let status = match (p.row.is_asserted(), inside, overlap) {
                    (true, true, _) => CellStatus::Match,
                    (true, false, _) => CellStatus::Mismatch,
                    (false, _, true) => CellStatus::EvidenceFor,
                    (false, _, false) => CellStatus::EvidenceAgainst,
                };
                cells.push(CellReport {
                    n,
                    m,
                    row: p.row,
                    predicted: p.candidates.iter().map(|g| g.to_string()).collect(),
                    empirical: empirical.clone(),
                    rho_max: result.rho_max,
                    status,
                });
            }
        }
    }
    let mismatches = cells
        .iter()
        .filter(|c| c.status == CellStatus::Mismatch)
        .count();
    Ok(VerifyReport { cells, mismatches })
}
