//! Exact counting engines.
//!
//! Two independent engines compute the number `p(m,n)` of multiple
//! self-avoiding polygons in the m×n grid:
//!
//! * [`brute_force_count`] enumerates every edge subset of the grid graph
//!   and keeps those in which each vertex has degree 0 or 2. It is the
//!   oracle: slow, simple, and with a failure mode disjoint from the DP.
//! * [`count_polygon_mosaics`] runs a column-sweep profile DP over mosaic
//!   tiles, carrying one connection-point bit per exposed edge.
//!
//! [`count_quasimosaics`] and [`growth_ratios`] run a third engine: a DP
//! along the anti-diagonal scan order whose per-step totals are the
//! quasimosaic counts |Q(i,j)|, giving the exact growth ratios r(i,j).

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tiles::{cp_mask, tiles_matching};
use crate::{BigCount, ExactRational};

/// Resource limits for the counting engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum bit width of a DP state index (2^bits states).
    pub state_bits: u64,
    /// Maximum number of grid-graph edges the subset oracle enumerates.
    pub oracle_edges: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // state: profile width min(m,n)+1 <= 23, i.e. min(m,n) <= 22
        Budget {
            state_bits: 23,
            oracle_edges: 26,
        }
    }
}

/// The anti-diagonal total order on tile positions:
/// (1,1), (1,2), (2,1), (1,3), (2,2), (3,1), ..., (m,n).
#[derive(Debug, Clone)]
pub struct ScanOrder {
    rows: usize,
    cols: usize,
    seq: Vec<(usize, usize)>,
    // position of the first cell of each anti-diagonal d = i+j, indexed d-2
    diag_start: Vec<usize>,
}

impl ScanOrder {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain(format!(
                "scan order needs positive dimensions, got {rows}x{cols}"
            )));
        }
        let mut seq = Vec::with_capacity(rows * cols);
        let mut diag_start = Vec::with_capacity(rows + cols - 1);
        for d in 2..=(rows + cols) {
            diag_start.push(seq.len());
            for i in diag_first_row(cols, d)..=diag_last_row(rows, d) {
                seq.push((i, d - i));
            }
        }
        Ok(ScanOrder {
            rows,
            cols,
            seq,
            diag_start,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn sequence(&self) -> &[(usize, usize)] {
        &self.seq
    }

    fn check_bounds(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return Err(Error::Domain(format!(
                "position ({i},{j}) out of bounds for {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Index of (i,j) within the sequence, in O(1).
    pub fn index_of(&self, i: usize, j: usize) -> Result<usize> {
        self.check_bounds(i, j)?;
        let d = i + j;
        Ok(self.diag_start[d - 2] + (i - diag_first_row(self.cols, d)))
    }

    /// The predecessor a(i,j) of a position, `None` for (1,1).
    ///
    /// (i,j) follows (i-1,j+1) when i > 1 and j < n; otherwise it follows
    /// the last cell of the previous anti-diagonal: (i+j-2, 1) when that
    /// row exists, else (m, i+j-m-1).
    pub fn predecessor(&self, i: usize, j: usize) -> Result<Option<(usize, usize)>> {
        self.check_bounds(i, j)?;
        if (i, j) == (1, 1) {
            return Ok(None);
        }
        if i > 1 && j < self.cols {
            return Ok(Some((i - 1, j + 1)));
        }
        let s = i + j - 2;
        if s <= self.rows {
            Ok(Some((s, 1)))
        } else {
            Ok(Some((self.rows, i + j - self.rows - 1)))
        }
    }
}

fn diag_first_row(cols: usize, d: usize) -> usize {
    d.saturating_sub(cols).max(1)
}

fn diag_last_row(rows: usize, d: usize) -> usize {
    rows.min(d - 1)
}

/// Number of edges of the m×n grid graph: m(n-1) horizontal + n(m-1)
/// vertical. Zero for degenerate dimensions.
pub fn grid_edge_count(m: usize, n: usize) -> u64 {
    (m * n.saturating_sub(1) + n * m.saturating_sub(1)) as u64
}

/// Oracle count of multiple self-avoiding polygons in the m×n grid graph:
/// enumerates all 2^E edge subsets and keeps the nonempty ones in which
/// every vertex has degree 0 or 2.
pub fn brute_force_count(m: usize, n: usize, budget: Budget) -> Result<BigCount> {
    if m == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "grid dimensions must be positive, got {m}x{n}"
        )));
    }
    let edges = grid_edge_count(m, n);
    if edges > budget.oracle_edges {
        return Err(Error::BudgetExceeded {
            what: "oracle edge enumeration",
            needed: edges,
            allowed: budget.oracle_edges,
        });
    }

    // incidence mask per vertex, vertices row-major
    let h_edges = m * (n - 1);
    let mut incident = vec![0u64; m * n];
    for r in 0..m {
        for c in 0..n - 1 {
            let e = r * (n - 1) + c;
            incident[r * n + c] |= 1 << e;
            incident[r * n + c + 1] |= 1 << e;
        }
    }
    for r in 0..m - 1 {
        for c in 0..n {
            let e = h_edges + r * n + c;
            incident[r * n + c] |= 1 << e;
            incident[(r + 1) * n + c] |= 1 << e;
        }
    }

    let mut count: u64 = 0;
    'masks: for mask in 1u64..(1u64 << edges) {
        for &inc in &incident {
            let deg = (mask & inc).count_ones();
            if deg != 0 && deg != 2 {
                continue 'masks;
            }
        }
        count += 1;
    }
    Ok(BigCount::from(count))
}

/// Exact number of polygon (m,n)-mosaics excluding the trivial all-blank
/// mosaic; equals the number of multiple self-avoiding polygons in the
/// m×n grid. Symmetric in (m,n); the profile is swept across the larger
/// dimension so the state width is min(m,n)+1 bits.
pub fn count_polygon_mosaics(m: usize, n: usize, budget: Budget) -> Result<BigCount> {
    if m == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "grid dimensions must be positive, got {m}x{n}"
        )));
    }
    let (rows, cols) = if m <= n { (m, n) } else { (n, m) };
    let total = count_mosaics_oriented(rows, cols, budget)?;
    Ok(total - BigCount::one())
}

/// Profile DP in the given orientation (columns swept left to right,
/// profile over `rows` + one carry bit). Counts all polygon mosaics
/// including the trivial one.
pub(crate) fn count_mosaics_oriented(rows: usize, cols: usize, budget: Budget) -> Result<BigCount> {
    let need_bits = rows as u64 + 1;
    if need_bits > budget.state_bits || need_bits >= usize::BITS as u64 {
        return Err(Error::BudgetExceeded {
            what: "profile DP state bits",
            needed: need_bits,
            allowed: budget.state_bits.min(usize::BITS as u64 - 1),
        });
    }
    let m = rows;
    let full = 1usize << (m + 1);
    // state = vmask | (h << m); bit i-1 of vmask is the connection point
    // on the exposed vertical edge in row i, h the one on the horizontal
    // edge below the last placed tile
    let mut dp = vec![BigCount::zero(); full];
    let mut next = vec![BigCount::zero(); full];
    dp[0] = BigCount::one();
    for j in 1..=cols {
        for i in 1..=m {
            for (s, cell) in dp.iter_mut().enumerate() {
                if cell.is_zero() {
                    continue;
                }
                let count = std::mem::take(cell);
                let vmask = s & ((1 << m) - 1);
                let h = (s >> m) & 1;
                let l = (vmask >> (i - 1)) & 1 == 1;
                let t = h == 1;
                debug_assert!(i > 1 || !t, "top boundary must be cp-free");
                for &tile in tiles_matching(l, t) {
                    let mask = cp_mask(tile);
                    if j == cols && mask.r {
                        continue;
                    }
                    if i == m && mask.b {
                        continue;
                    }
                    let mut nv = vmask & !(1 << (i - 1));
                    if mask.r {
                        nv |= 1 << (i - 1);
                    }
                    let ns = nv | ((mask.b as usize) << m);
                    next[ns] += &count;
                }
            }
            std::mem::swap(&mut dp, &mut next);
        }
    }
    Ok(std::mem::take(&mut dp[0]))
}

// Anti-diagonal DP state packing: low 32 bits hold the pending (l,t)
// input pairs of the current diagonal (2 bits per cell, consumed as the
// diagonal is processed), high bits accumulate the inputs of the next
// diagonal.
const NEXT_SHIFT: u32 = 32;

fn quasi_state_check(m: usize, n: usize, budget: Budget) -> Result<()> {
    let need_bits = 2 * m.min(n) as u64 + 2;
    let allowed = budget.state_bits.min(NEXT_SHIFT as u64 + 2);
    if need_bits > allowed {
        return Err(Error::BudgetExceeded {
            what: "quasimosaic DP staircase bits",
            needed: need_bits,
            allowed,
        });
    }
    Ok(())
}

/// |Q(i,j)| for every position along the scan order, in scan order.
/// `upto` stops the sweep after that sequence index when given.
fn quasimosaic_counts_upto(
    order: &ScanOrder,
    budget: Budget,
    upto: Option<usize>,
) -> Result<Vec<BigCount>> {
    let (m, n) = (order.rows(), order.cols());
    quasi_state_check(m, n, budget)?;
    let stop = upto.unwrap_or(m * n - 1);

    let mut states: HashMap<u64, BigCount> = HashMap::new();
    states.insert(0, BigCount::one());
    let mut out = Vec::with_capacity(stop + 1);
    let mut index = 0usize;

    for d in 2..=(m + n) {
        let first = diag_first_row(n, d);
        let last = diag_last_row(m, d);
        let next_first = diag_first_row(n, d + 1);
        for i in first..=last {
            let j = d - i;
            let c = (i - first) as u32;
            let mut next_states: HashMap<u64, BigCount> = HashMap::with_capacity(states.len() * 2);
            for (s, cnt) in &states {
                let l = (s >> (2 * c)) & 1 == 1;
                let t = (s >> (2 * c + 1)) & 1 == 1;
                for &tile in tiles_matching(l, t) {
                    let mask = cp_mask(tile);
                    if j == n && mask.r {
                        continue;
                    }
                    if i == m && mask.b {
                        continue;
                    }
                    let mut ns = s & !(0b11 << (2 * c));
                    if mask.r && j < n {
                        // feeds the left input of (i, j+1) in the next diagonal
                        let cr = (i - next_first) as u32;
                        ns |= 1 << (NEXT_SHIFT + 2 * cr);
                    }
                    if mask.b && i < m {
                        // feeds the top input of (i+1, j) in the next diagonal
                        let cd = (i + 1 - next_first) as u32;
                        ns |= 1 << (NEXT_SHIFT + 2 * cd + 1);
                    }
                    *next_states.entry(ns).or_default() += cnt;
                }
            }
            states = next_states;
            let mut total = BigCount::zero();
            for cnt in states.values() {
                total += cnt;
            }
            out.push(total);
            if index == stop {
                return Ok(out);
            }
            index += 1;
        }
        // next diagonal becomes current; all pending bits were consumed
        states = states
            .into_iter()
            .map(|(s, cnt)| {
                debug_assert_eq!(s & ((1 << NEXT_SHIFT) - 1), 0);
                (s >> NEXT_SHIFT, cnt)
            })
            .collect();
    }
    Ok(out)
}

/// Exact |Q(i,j)|: the number of suitably connected partial mosaics
/// covering the scan-order prefix ending at (i,j), with every placed
/// boundary edge cp-free. |Q(m,n)| = p(m,n) + 1.
pub fn count_quasimosaics(
    m: usize,
    n: usize,
    i: usize,
    j: usize,
    budget: Budget,
) -> Result<BigCount> {
    let order = ScanOrder::new(m, n)?;
    let idx = order.index_of(i, j)?;
    let counts = quasimosaic_counts_upto(&order, budget, Some(idx))?;
    Ok(counts.into_iter().last().expect("nonempty prefix"))
}

/// All |Q| values along the scan order.
pub fn quasimosaic_counts(m: usize, n: usize, budget: Budget) -> Result<Vec<BigCount>> {
    let order = ScanOrder::new(m, n)?;
    quasimosaic_counts_upto(&order, budget, None)
}

/// Exact growth ratios r(i,j) = |Q(i,j)| / |Q(a(i,j))|, with the
/// convention that the ratio at (1,1) has denominator 1.
#[derive(Debug, Clone)]
pub struct GrowthRatioMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>, // row-major
}

impl GrowthRatioMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Ratio at (row, col), 1-indexed.
    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j));
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    /// Product of all entries; equals |Q(m,n)| = p(m,n) + 1.
    pub fn product(&self) -> ExactRational {
        let mut acc = ExactRational::one();
        for r in &self.entries {
            acc *= r;
        }
        acc
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &ExactRational)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, r)| ((k / cols + 1, k % cols + 1), r))
    }
}

/// Growth ratios for the whole grid, from one anti-diagonal DP sweep.
pub fn growth_ratios(m: usize, n: usize, budget: Budget) -> Result<GrowthRatioMatrix> {
    let order = ScanOrder::new(m, n)?;
    let counts = quasimosaic_counts_upto(&order, budget, None)?;
    let mut entries = vec![ExactRational::zero(); m * n];
    let mut prev = BigCount::one();
    for (k, &(i, j)) in order.sequence().iter().enumerate() {
        let cur = &counts[k];
        entries[(i - 1) * n + (j - 1)] =
            ExactRational::new(cur.clone().into(), prev.clone().into());
        prev = cur.clone();
    }
    Ok(GrowthRatioMatrix {
        rows: m,
        cols: n,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn scan_order_first_six_and_tail() {
        let order = ScanOrder::new(3, 3).unwrap();
        assert_eq!(
            order.sequence()[..6],
            [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)]
        );
        assert_eq!(order.sequence().last(), Some(&(3, 3)));
        assert_eq!(order.sequence().len(), 9);
    }

    #[test]
    fn scan_order_visits_each_position_once() {
        for (m, n) in [(1, 1), (1, 5), (4, 2), (4, 6)] {
            let order = ScanOrder::new(m, n).unwrap();
            let mut seen = vec![false; m * n];
            for &(i, j) in order.sequence() {
                let k = (i - 1) * n + (j - 1);
                assert!(!seen[k], "({i},{j}) repeated");
                seen[k] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn predecessor_follows_the_rule() {
        for (m, n) in [(3, 3), (4, 5), (5, 4)] {
            let order = ScanOrder::new(m, n).unwrap();
            assert_eq!(order.predecessor(2, 2).unwrap(), Some((1, 3)));
            let seq = order.sequence();
            for w in seq.windows(2) {
                let (i, j) = w[1];
                assert_eq!(order.predecessor(i, j).unwrap(), Some(w[0]));
            }
            assert_eq!(order.predecessor(1, 1).unwrap(), None);
        }
        let order = ScanOrder::new(3, 3).unwrap();
        assert_eq!(order.predecessor(2, 3).unwrap(), Some((3, 1)));
    }

    #[test]
    fn index_of_matches_sequence() {
        let order = ScanOrder::new(4, 6).unwrap();
        for (k, &(i, j)) in order.sequence().iter().enumerate() {
            assert_eq!(order.index_of(i, j).unwrap(), k);
        }
        assert!(order.index_of(5, 1).is_err());
        assert!(order.index_of(0, 1).is_err());
    }

    #[test]
    fn oracle_small_values() {
        let b = Budget::default();
        assert_eq!(brute_force_count(2, 2, b).unwrap(), big(1));
        for n in 1..=6 {
            assert_eq!(brute_force_count(1, n, b).unwrap(), big(0));
        }
        assert_eq!(brute_force_count(3, 3, b).unwrap(), big(13));
        assert_eq!(brute_force_count(3, 4, b).unwrap(), big(49));
    }

    #[test]
    fn oracle_budget_guard() {
        let err = brute_force_count(5, 5, Budget::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 40, .. }));
    }

    // Third route, independent of both engines: the even subgraphs of a
    // planar grid graph form the cycle space, of size 2^((m-1)(n-1)).
    // Polygon configurations are exactly the even subgraphs with no
    // degree-4 vertex, so splitting the cycle space by max degree must
    // reproduce the count.
    #[test]
    fn cycle_space_identity() {
        for (m, n) in [(2, 2), (2, 4), (3, 3), (3, 4), (4, 4)] {
            let h_edges = m * (n - 1);
            let edges = h_edges + n * (m - 1);
            let mut incident = vec![0u64; m * n];
            for r in 0..m {
                for c in 0..n - 1 {
                    let e = r * (n - 1) + c;
                    incident[r * n + c] |= 1 << e;
                    incident[r * n + c + 1] |= 1 << e;
                }
            }
            for r in 0..m - 1 {
                for c in 0..n {
                    let e = h_edges + r * n + c;
                    incident[r * n + c] |= 1 << e;
                    incident[(r + 1) * n + c] |= 1 << e;
                }
            }
            let mut even = 0u64;
            let mut deg_two_max = 0u64;
            for mask in 0u64..(1 << edges) {
                let mut all_even = true;
                let mut capped = true;
                for &inc in &incident {
                    let deg = (mask & inc).count_ones();
                    if deg % 2 != 0 {
                        all_even = false;
                        break;
                    }
                    if deg == 4 {
                        capped = false;
                    }
                }
                if all_even {
                    even += 1;
                    if capped {
                        deg_two_max += 1;
                    }
                }
            }
            assert_eq!(even, 1 << ((m - 1) * (n - 1)), "cycle space at {m}x{n}");
            let p = count_polygon_mosaics(m, n, Budget::default()).unwrap();
            assert_eq!(
                p + big(1),
                big(deg_two_max),
                "degree-capped even subgraphs at {m}x{n}"
            );
        }
    }

    #[test]
    fn dp_matches_oracle_on_small_grids() {
        let b = Budget::default();
        for m in 1..=4 {
            for n in m..=4 {
                let dp = count_polygon_mosaics(m, n, b).unwrap();
                let oracle = brute_force_count(m, n, b).unwrap();
                assert_eq!(dp, oracle, "disagreement at {m}x{n}");
            }
        }
    }

    #[test]
    fn dp_closed_form_two_rows() {
        let b = Budget::default();
        for n in 2..=12 {
            let expect = (big(2).pow(n as u32 - 1)) - big(1);
            assert_eq!(count_polygon_mosaics(2, n, b).unwrap(), expect);
        }
    }

    #[test]
    fn oriented_sweeps_agree_with_transpose() {
        let b = Budget::default();
        for (m, n) in [(2, 5), (3, 5), (4, 5), (3, 6)] {
            assert_eq!(
                count_mosaics_oriented(m, n, b).unwrap(),
                count_mosaics_oriented(n, m, b).unwrap()
            );
        }
    }

    #[test]
    fn quasimosaic_known_prefix() {
        let b = Budget::default();
        for (m, n) in [(4, 4), (5, 5), (4, 6), (6, 4)] {
            let counts = quasimosaic_counts(m, n, b).unwrap();
            assert_eq!(
                &counts[..6],
                &[big(2), big(4), big(8), big(16), big(28), big(56)],
                "prefix wrong for {m}x{n}"
            );
        }
        assert_eq!(
            count_quasimosaics(5, 5, 2, 2, Budget::default()).unwrap(),
            big(28)
        );
    }

    #[test]
    fn quasimosaic_total_is_count_plus_one() {
        let b = Budget::default();
        for (m, n) in [(2, 2), (3, 3), (3, 5), (4, 4), (2, 7)] {
            let q = count_quasimosaics(m, n, m, n, b).unwrap();
            let p = count_polygon_mosaics(m, n, b).unwrap();
            assert_eq!(q, p + big(1), "Q total wrong at {m}x{n}");
        }
    }

    #[test]
    fn quasimosaic_counts_monotone_along_scan() {
        let counts = quasimosaic_counts(4, 5, Budget::default()).unwrap();
        for w in counts.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn growth_ratio_values() {
        let g = growth_ratios(5, 5, Budget::default()).unwrap();
        assert_eq!(g.get(1, 1), &rat(2, 1));
        assert_eq!(g.get(1, 2), &rat(2, 1));
        assert_eq!(g.get(2, 1), &rat(2, 1));
        assert_eq!(g.get(2, 2), &rat(7, 4));
    }

    #[test]
    fn growth_ratio_boundaries() {
        for (m, n) in [(3, 3), (3, 5), (4, 4), (5, 6)] {
            let g = growth_ratios(m, n, Budget::default()).unwrap();
            for j in 1..n {
                assert_eq!(g.get(1, j), &rat(2, 1), "r(1,{j}) at {m}x{n}");
            }
            for i in 1..m {
                assert_eq!(g.get(i, 1), &rat(2, 1), "r({i},1) at {m}x{n}");
            }
            for j in 1..=n {
                assert_eq!(g.get(m, j), &rat(1, 1), "r({m},{j}) at {m}x{n}");
            }
            for i in 1..=m {
                assert_eq!(g.get(i, n), &rat(1, 1), "r({i},{n}) at {m}x{n}");
            }
        }
    }

    #[test]
    fn growth_ratios_within_rough_bounds_and_product_identity() {
        let b = Budget::default();
        for (m, n) in [(2, 2), (3, 4), (4, 4), (5, 6)] {
            let g = growth_ratios(m, n, b).unwrap();
            for ((i, j), r) in g.iter() {
                assert!(
                    r >= &rat(1, 1) && r <= &rat(2, 1),
                    "r({i},{j}) = {r} out of [1,2] at {m}x{n}"
                );
            }
            let p = count_polygon_mosaics(m, n, b).unwrap();
            let expect = ExactRational::from_integer(p.into()) + ExactRational::one();
            assert_eq!(g.product(), expect, "product identity at {m}x{n}");
        }
    }

    #[test]
    fn quasi_budget_guard() {
        let err = growth_ratios(16, 16, Budget::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn degenerate_single_row_or_column() {
        let b = Budget::default();
        assert_eq!(count_polygon_mosaics(1, 7, b).unwrap(), big(0));
        assert_eq!(count_polygon_mosaics(7, 1, b).unwrap(), big(0));
        assert_eq!(count_polygon_mosaics(1, 1, b).unwrap(), big(0));
    }
}
