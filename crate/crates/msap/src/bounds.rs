//! Bound formulas, the position-class growth-ratio table, sandwich
//! verification, and the square-grid root scan.
//!
//! Two families of rigorous bounds on p(m,n) are evaluated exactly:
//!
//! * the *uniform* family (serialized as `theorem`):
//!   2^(m+n-3) (17/10)^((m-2)(n-2)) <= p <= 2^(m+n-3) (31/16)^((m-2)(n-2))
//!   for m,n >= 3 — a brief form that drops a trailing "-1", so its lower
//!   bound can exceed the exact count at the smallest sizes; that
//!   discrepancy is what [`verify_sandwich`] reports as a finding;
//! * the *case-split* family (serialized as `lemma4`) with separate
//!   m=3, m=4 and m>=5 expressions, each ending in "-1".
//!
//! All verdicts come from exact rational comparison. Floating point is
//! never consulted; even the root scan of [`limit_estimate`] uses scaled
//! integer roots.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::clingratios::{cp_ratio_pairs, ratio_interval, ClingKind, RatioPair};
use crate::enumeration::{count_polygon_mosaics, growth_ratios, Budget};
use crate::error::{Error, Result};
use crate::{BigCount, ExactRational};

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

fn rat_pow(base: &ExactRational, exp: usize) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        sq = &sq * &sq;
        e >>= 1;
    }
    acc
}

/// The uniform bound pair for m,n >= 3:
/// 2^(m+n-3) (17/10)^((m-2)(n-2)) and 2^(m+n-3) (31/16)^((m-2)(n-2)).
pub fn theorem_bounds(m: usize, n: usize) -> Result<(ExactRational, ExactRational)> {
    if m < 3 || n < 3 {
        return Err(Error::Domain(format!(
            "uniform bounds need m,n >= 3, got {m}x{n}"
        )));
    }
    let prefactor = rat_pow(&rat(2, 1), m + n - 3);
    let e = (m - 2) * (n - 2);
    Ok((
        &prefactor * rat_pow(&rat(17, 10), e),
        &prefactor * rat_pow(&rat(31, 16), e),
    ))
}

/// The case-split bound pair for 3 <= m <= n:
///
/// * m = 3:  14 (7/2)^(n-3) - 1  <=  p  <=  14 (11/3)^(n-3) - 1
/// * m = 4:  8 (49/8)^(n-2) - 1  <=  p  <=  (9520/27) (155/22)^(n-4) - 1
/// * m >= 5: 8 · 6^(m-4) (49/8)^(n-2) (17/10)^((m-4)(n-4)) - 1  <=  p
///   and  p <= (337280/1863) (2645/192)^(m-4) (2415/176)^(n-4)
///   (31/16)^((m-5)(n-5)) - 1
///
/// Callers with m > n must transpose first (counts are symmetric).
pub fn lemma4_bounds(m: usize, n: usize) -> Result<(ExactRational, ExactRational)> {
    if m < 3 || m > n {
        return Err(Error::Domain(format!(
            "case-split bounds need 3 <= m <= n, got {m}x{n}"
        )));
    }
    let one = ExactRational::one();
    let (lo, hi) = match m {
        3 => (
            rat(14, 1) * rat_pow(&rat(7, 2), n - 3),
            rat(14, 1) * rat_pow(&rat(11, 3), n - 3),
        ),
        4 => (
            rat(8, 1) * rat_pow(&rat(49, 8), n - 2),
            rat(9520, 27) * rat_pow(&rat(155, 22), n - 4),
        ),
        _ => (
            rat(8, 1)
                * rat_pow(&rat(6, 1), m - 4)
                * rat_pow(&rat(49, 8), n - 2)
                * rat_pow(&rat(17, 10), (m - 4) * (n - 4)),
            rat(337280, 1863)
                * rat_pow(&rat(2645, 192), m - 4)
                * rat_pow(&rat(2415, 176), n - 4)
                * rat_pow(&rat(31, 16), (m - 5) * (n - 5)),
        ),
    };
    Ok((lo - &one, hi - one))
}

/// Cling kinds of the general chart at an interior position
/// (2 <= i <= m-1, 2 <= j <= n-1), for 5 <= m <= n.
///
/// The l-cling kind depends on the column (how much of the three-cell
/// layout is cut off by the left wall, and whether row m forces the
/// lower cell's bottom edge); the t-cling kind on the row and on the
/// distance to the right wall.
pub fn cling_kinds_at(m: usize, n: usize, i: usize, j: usize) -> Result<(ClingKind, ClingKind)> {
    use ClingKind::*;
    if m < 5 || m > n {
        return Err(Error::Domain(format!(
            "general chart needs 5 <= m <= n, got {m}x{n}"
        )));
    }
    if !(2..=m - 1).contains(&i) || !(2..=n - 1).contains(&j) {
        return Err(Error::Domain(format!(
            "({i},{j}) is not interior to {m}x{n}"
        )));
    }
    let u = match j {
        2 => U5,
        3 => {
            if i == m - 1 {
                U4
            } else {
                U3
            }
        }
        _ => {
            if i == m - 1 {
                U2
            } else {
                U1
            }
        }
    };
    let v = match i {
        2 => {
            if j == n - 1 {
                V8
            } else {
                V7
            }
        }
        3 => {
            if j == n - 1 {
                V6
            } else if j == n - 2 {
                V4
            } else {
                V3
            }
        }
        _ => {
            if j == n - 1 {
                V5
            } else if j == n - 2 {
                V2
            } else {
                V1
            }
        }
    };
    Ok((u, v))
}

/// One row of the growth-ratio table: the positions sharing one ratio
/// behavior, with the exact interval and tile count.
#[derive(Debug, Clone)]
pub struct RatioClass {
    pub label: String,
    /// Cling pair for interior classes; `None` for the two fixed
    /// boundary classes (ratio exactly 2 resp. exactly 1).
    pub pair: Option<(ClingKind, ClingKind)>,
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub tile_count: u64,
}

/// The position-class table for the general chart.
#[derive(Debug, Clone)]
pub struct RatioTable {
    pub m: usize,
    pub n: usize,
    pub classes: Vec<RatioClass>,
}

impl RatioTable {
    pub fn total_tiles(&self) -> u64 {
        self.classes.iter().map(|c| c.tile_count).sum()
    }
}

// canonical interior row order and labels of the general chart
const CHART_ROWS: [(ClingKind, ClingKind, &str); 18] = [
    (ClingKind::U1, ClingKind::V1, "4<=i<=m-2 and 4<=j<=n-3"),
    (ClingKind::U5, ClingKind::V7, "(2,2)"),
    (ClingKind::U3, ClingKind::V7, "(2,3)"),
    (ClingKind::U1, ClingKind::V7, "i=2 and 4<=j<=n-2"),
    (ClingKind::U1, ClingKind::V8, "(2,n-1)"),
    (ClingKind::U5, ClingKind::V3, "(3,2)"),
    (ClingKind::U3, ClingKind::V3, "(3,3)"),
    (ClingKind::U1, ClingKind::V3, "i=3 and 4<=j<=n-3"),
    (ClingKind::U1, ClingKind::V4, "(3,n-2)"),
    (ClingKind::U1, ClingKind::V6, "(3,n-1)"),
    (ClingKind::U5, ClingKind::V1, "4<=i<=m-1 and j=2"),
    (ClingKind::U3, ClingKind::V1, "4<=i<=m-2 and j=3"),
    (ClingKind::U1, ClingKind::V2, "4<=i<=m-2 and j=n-2"),
    (ClingKind::U1, ClingKind::V5, "4<=i<=m-2 and j=n-1"),
    (ClingKind::U4, ClingKind::V1, "(m-1,3)"),
    (ClingKind::U2, ClingKind::V1, "i=m-1 and 4<=j<=n-3"),
    (ClingKind::U2, ClingKind::V2, "(m-1,n-2)"),
    (ClingKind::U2, ClingKind::V5, "(m-1,n-1)"),
];

/// Builds the growth-ratio table for 5 <= m <= n by classifying every
/// position of the grid: the two boundary classes (ratio 2 on the first
/// row/column except its far corners, ratio 1 on the last row/column)
/// and one class per cling pair occurring in the interior. For m < n the
/// interior classes are exactly the eighteen canonical chart rows; for
/// m = n a few wall-distance cases merge into extra pairs that get
/// generated labels.
pub fn ratio_table(m: usize, n: usize) -> Result<RatioTable> {
    if m < 5 || m > n {
        return Err(Error::Domain(format!(
            "ratio table needs 5 <= m <= n, got {m}x{n}"
        )));
    }
    let pairs: BTreeMap<ClingKind, RatioPair> = cp_ratio_pairs().into_iter().collect();

    let mut interior_counts: BTreeMap<(ClingKind, ClingKind), u64> = BTreeMap::new();
    for i in 2..=m - 1 {
        for j in 2..=n - 1 {
            let key = cling_kinds_at(m, n, i, j)?;
            *interior_counts.entry(key).or_default() += 1;
        }
    }

    let mut classes = vec![
        RatioClass {
            label: "i=1 or j=1 except (1,n),(m,1)".to_string(),
            pair: None,
            lo: rat(2, 1),
            hi: rat(2, 1),
            tile_count: (m + n - 3) as u64,
        },
        RatioClass {
            label: "i=m or j=n".to_string(),
            pair: None,
            lo: rat(1, 1),
            hi: rat(1, 1),
            tile_count: (m + n - 1) as u64,
        },
    ];
    for &(u, v, label) in &CHART_ROWS {
        let (lo, hi) = ratio_interval(&pairs[&u], &pairs[&v]);
        classes.push(RatioClass {
            label: label.to_string(),
            pair: Some((u, v)),
            lo,
            hi,
            tile_count: interior_counts.remove(&(u, v)).unwrap_or(0),
        });
    }
    // pairs outside the canonical rows occur only when m = n merges
    // wall-distance cases
    for ((u, v), count) in interior_counts {
        let (lo, hi) = ratio_interval(&pairs[&u], &pairs[&v]);
        classes.push(RatioClass {
            label: format!("{}*{}", u.as_str(), v.as_str()),
            pair: Some((u, v)),
            lo,
            hi,
            tile_count: count,
        });
    }
    Ok(RatioTable { m, n, classes })
}

/// Outcome of one exact comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Unchecked,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Unchecked => "unchecked",
        }
    }
}

/// An interior growth ratio that escaped its chart interval.
#[derive(Debug, Clone)]
pub struct RatioViolation {
    pub i: usize,
    pub j: usize,
    pub r: ExactRational,
    pub lo: ExactRational,
    pub hi: ExactRational,
}

/// Per-(m,n) record of the exact count, both bound pairs, and the
/// verdicts of exact comparison.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub m: usize,
    pub n: usize,
    /// Exact count, absent when the DP budget was exceeded.
    pub exact: Option<BigCount>,
    pub lemma4_lo: ExactRational,
    pub lemma4_hi: ExactRational,
    pub theorem_lo: ExactRational,
    pub theorem_hi: ExactRational,
    pub lemma4_verdict: Verdict,
    pub theorem_verdict: Verdict,
    /// True when the interior ratios were compared against the chart
    /// (requires 5 <= m <= n and the staircase DP within budget).
    pub lemma3_checked: bool,
    pub lemma3_violations: Vec<RatioViolation>,
}

#[derive(Serialize)]
struct ViolationJson {
    i: usize,
    j: usize,
    r: String,
    interval: [String; 2],
}

#[derive(Serialize)]
struct ReportJson {
    m: usize,
    n: usize,
    exact: Option<String>,
    lemma4: [String; 2],
    theorem: [String; 2],
    lemma4_verdict: &'static str,
    theorem_verdict: &'static str,
    lemma3_violations: Vec<ViolationJson>,
}

impl BoundsReport {
    fn json_value(&self) -> ReportJson {
        ReportJson {
            m: self.m,
            n: self.n,
            exact: self.exact.as_ref().map(|p| p.to_string()),
            lemma4: [self.lemma4_lo.to_string(), self.lemma4_hi.to_string()],
            theorem: [self.theorem_lo.to_string(), self.theorem_hi.to_string()],
            lemma4_verdict: self.lemma4_verdict.as_str(),
            theorem_verdict: self.theorem_verdict.as_str(),
            lemma3_violations: self
                .lemma3_violations
                .iter()
                .map(|v| ViolationJson {
                    i: v.i,
                    j: v.j,
                    r: v.r.to_string(),
                    interval: [v.lo.to_string(), v.hi.to_string()],
                })
                .collect(),
        }
    }

    /// Stable-keyed JSON rendering of the report.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_value()).expect("report serialization")
    }

    /// Single-row CSV with a header; violations joined by ';' as
    /// i:j:r:lo:hi.
    pub fn to_csv(&self) -> String {
        let violations = self
            .lemma3_violations
            .iter()
            .map(|v| format!("{}:{}:{}:{}:{}", v.i, v.j, v.r, v.lo, v.hi))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "m,n,exact,lemma4_lo,lemma4_hi,theorem_lo,theorem_hi,lemma4_verdict,theorem_verdict,lemma3_violations\n{},{},{},{},{},{},{},{},{},{}\n",
            self.m,
            self.n,
            self.exact.as_ref().map(|p| p.to_string()).unwrap_or_default(),
            self.lemma4_lo,
            self.lemma4_hi,
            self.theorem_lo,
            self.theorem_hi,
            self.lemma4_verdict.as_str(),
            self.theorem_verdict.as_str(),
            violations,
        )
    }
}

fn sandwich_verdict(exact: Option<&BigCount>, lo: &ExactRational, hi: &ExactRational) -> Verdict {
    match exact {
        None => Verdict::Unchecked,
        Some(p) => {
            let p = ExactRational::from_integer(p.clone().into());
            if lo <= &p && &p <= hi {
                Verdict::Holds
            } else {
                Verdict::Violated
            }
        }
    }
}

/// Computes the exact count (budget permitting), evaluates both bound
/// pairs, and compares exactly.
///
/// For min(m,n) = 2 the closed form 2^(max-1) - 1 stands in for both
/// bound pairs, turning the report into a closed-form self-check. For
/// 5 <= m <= n within the staircase budget, every interior growth ratio
/// is additionally checked against its chart interval.
pub fn verify_sandwich(m: usize, n: usize, budget: Budget) -> Result<BoundsReport> {
    if m < 2 || n < 2 {
        return Err(Error::Domain(format!(
            "sandwich verification needs m,n >= 2, got {m}x{n}"
        )));
    }
    let exact = match count_polygon_mosaics(m, n, budget) {
        Ok(p) => Some(p),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    let (lemma4, theorem) = if m.min(n) == 2 {
        let closed = rat_pow(&rat(2, 1), m.max(n) - 1) - ExactRational::one();
        ((closed.clone(), closed.clone()), (closed.clone(), closed))
    } else {
        (lemma4_bounds(m.min(n), m.max(n))?, theorem_bounds(m, n)?)
    };

    let mut report = BoundsReport {
        m,
        n,
        lemma4_verdict: sandwich_verdict(exact.as_ref(), &lemma4.0, &lemma4.1),
        theorem_verdict: sandwich_verdict(exact.as_ref(), &theorem.0, &theorem.1),
        lemma4_lo: lemma4.0,
        lemma4_hi: lemma4.1,
        theorem_lo: theorem.0,
        theorem_hi: theorem.1,
        exact,
        lemma3_checked: false,
        lemma3_violations: Vec::new(),
    };

    if m >= 5 && m <= n {
        if let Ok(ratios) = growth_ratios(m, n, budget) {
            let pairs: BTreeMap<ClingKind, RatioPair> = cp_ratio_pairs().into_iter().collect();
            report.lemma3_checked = true;
            for i in 2..=m - 1 {
                for j in 2..=n - 1 {
                    let (u, v) = cling_kinds_at(m, n, i, j)?;
                    let (lo, hi) = ratio_interval(&pairs[&u], &pairs[&v]);
                    let r = ratios.get(i, j);
                    if r < &lo || r > &hi {
                        report.lemma3_violations.push(RatioViolation {
                            i,
                            j,
                            r: r.clone(),
                            lo,
                            hi,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Where a root sits relative to the window [17/10, 31/16].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowPosition {
    Below,
    Inside,
    Above,
}

impl WindowPosition {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowPosition::Below => "below",
            WindowPosition::Inside => "inside",
            WindowPosition::Above => "above",
        }
    }
}

/// One point of the square-grid root scan.
#[derive(Debug, Clone)]
pub struct LimitPoint {
    pub n: usize,
    pub count: BigCount,
    /// Decimal approximation of count^(1/n²) with 14 digits after the
    /// point (floor of the scaled integer root, so every digit is exact).
    pub root: String,
    pub window: WindowPosition,
}

/// Root scan of p(n,n)^(1/n²) together with the reference window.
#[derive(Debug, Clone)]
pub struct LimitScan {
    pub window_lo: ExactRational,
    pub window_hi: ExactRational,
    pub points: Vec<LimitPoint>,
    /// True when the root sequence strictly increases from n = 4 on
    /// (decided by exact integer comparison, not on the printed digits).
    pub monotone_from_4: bool,
}

const ROOT_DIGITS: u32 = 14;

fn root_string(p: &BigCount, k: u32) -> String {
    let scaled = p * BigCount::from(10u32).pow(ROOT_DIGITS * k);
    let v = scaled.nth_root(k);
    let s = v.to_string();
    let split = s.len() - ROOT_DIGITS as usize;
    format!("{}.{}", &s[..split], &s[split..])
}

fn window_position(p: &BigCount, k: u32) -> WindowPosition {
    // root < 17/10  <=>  p·10^k < 17^k ;  root > 31/16  <=>  p·16^k > 31^k
    if p * BigCount::from(10u32).pow(k) < BigCount::from(17u32).pow(k) {
        WindowPosition::Below
    } else if p * BigCount::from(16u32).pow(k) > BigCount::from(31u32).pow(k) {
        WindowPosition::Above
    } else {
        WindowPosition::Inside
    }
}

/// Exact-count root scan for n = 2..n_max.
pub fn limit_estimate(n_max: usize, budget: Budget) -> Result<LimitScan> {
    if n_max < 2 {
        return Err(Error::Domain(format!(
            "root scan needs n_max >= 2, got {n_max}"
        )));
    }
    let mut points = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let p = count_polygon_mosaics(n, n, budget)?;
        let k = (n * n) as u32;
        points.push(LimitPoint {
            n,
            root: root_string(&p, k),
            window: window_position(&p, k),
            count: p,
        });
    }
    // p(a,a)^(1/a²) < p(b,b)^(1/b²)  <=>  p(a,a)^(b²) < p(b,b)^(a²)
    let monotone_from_4 = points.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        if a.n < 4 {
            return true;
        }
        let ka = (a.n * a.n) as u32;
        let kb = (b.n * b.n) as u32;
        a.count.pow(kb) < b.count.pow(ka)
    });
    Ok(LimitScan {
        window_lo: rat(17, 10),
        window_hi: rat(31, 16),
        points,
        monotone_from_4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_bound_examples() {
        assert_eq!(theorem_bounds(3, 3).unwrap(), (rat(68, 5), rat(31, 2)));
        assert_eq!(theorem_bounds(3, 4).unwrap(), (rat(1156, 25), rat(961, 16)));
        assert!(theorem_bounds(2, 5).is_err());
        for m in 3..=30 {
            for n in 3..=30 {
                let (lo, hi) = theorem_bounds(m, n).unwrap();
                assert!(lo <= hi);
            }
        }
    }

    #[test]
    fn case_split_bound_examples() {
        assert_eq!(lemma4_bounds(3, 3).unwrap(), (rat(13, 1), rat(13, 1)));
        assert_eq!(lemma4_bounds(3, 4).unwrap(), (rat(48, 1), rat(151, 3)));
        assert_eq!(lemma4_bounds(4, 4).unwrap(), (rat(2393, 8), rat(9493, 27)));
        assert!(lemma4_bounds(4, 3).is_err());
        assert!(lemma4_bounds(2, 5).is_err());
        for m in 3..=9 {
            for n in m..=12 {
                let (lo, hi) = lemma4_bounds(m, n).unwrap();
                assert!(lo <= hi, "case-split bounds inverted at {m}x{n}");
            }
        }
    }

    #[test]
    fn chart_positions() {
        use ClingKind::*;
        let at = |m, n, i, j| cling_kinds_at(m, n, i, j).unwrap();
        assert_eq!(at(5, 6, 2, 2), (U5, V7));
        assert_eq!(at(5, 6, 2, 3), (U3, V7));
        assert_eq!(at(5, 6, 3, 2), (U5, V3));
        assert_eq!(at(5, 6, 2, 5), (U1, V8));
        assert_eq!(at(6, 7, 4, 4), (U1, V1));
        assert_eq!(at(6, 7, 5, 4), (U2, V1));
        assert_eq!(at(6, 7, 5, 3), (U4, V1));
        assert_eq!(at(6, 7, 4, 5), (U1, V2));
        assert_eq!(at(6, 7, 4, 6), (U1, V5));
        // m = n merges wall distances
        assert_eq!(at(5, 5, 3, 3), (U3, V4));
        assert_eq!(at(5, 5, 4, 3), (U4, V2));
        assert!(cling_kinds_at(4, 6, 2, 2).is_err());
        assert!(cling_kinds_at(6, 5, 2, 2).is_err());
        assert!(cling_kinds_at(5, 6, 1, 2).is_err());
        assert!(cling_kinds_at(5, 6, 2, 6).is_err());
    }

    // the tile-count column of the general chart as polynomials in (m,n)
    fn chart_polynomial_counts(m: u64, n: u64) -> Vec<u64> {
        vec![
            (m - 5) * (n - 6),
            1,
            1,
            n - 5,
            1,
            1,
            1,
            n - 6,
            1,
            1,
            m - 4,
            m - 5,
            m - 5,
            m - 5,
            1,
            n - 6,
            1,
            1,
        ]
    }

    #[test]
    fn table_reproduces_chart_counts_for_general_case() {
        for (m, n) in [(5, 6), (5, 7), (6, 7), (6, 9), (7, 10)] {
            let table = ratio_table(m, n).unwrap();
            assert_eq!(table.total_tiles(), (m * n) as u64, "total at {m}x{n}");
            assert_eq!(table.classes[0].tile_count, (m + n - 3) as u64);
            assert_eq!(table.classes[1].tile_count, (m + n - 1) as u64);
            let expected = chart_polynomial_counts(m as u64, n as u64);
            let interior: Vec<u64> = table.classes[2..20].iter().map(|c| c.tile_count).collect();
            assert_eq!(interior, expected, "interior counts at {m}x{n}");
            assert_eq!(table.classes.len(), 20, "no merged classes expected");
        }
    }

    #[test]
    fn table_handles_square_grids() {
        for (m, n) in [(5, 5), (6, 6), (7, 7)] {
            let table = ratio_table(m, n).unwrap();
            assert_eq!(table.total_tiles(), (m * n) as u64, "total at {m}x{n}");
        }
        // every chart interval sits inside [17/10, 31/16]
        let table = ratio_table(5, 5).unwrap();
        for class in &table.classes[2..] {
            assert!(class.lo >= rat(17, 10) && class.hi <= rat(31, 16));
        }
    }

    #[test]
    fn table_interval_examples() {
        let table = ratio_table(6, 8).unwrap();
        let by_label = |label: &str| {
            table
                .classes
                .iter()
                .find(|c| c.label == label)
                .unwrap_or_else(|| panic!("class {label} missing"))
        };
        let c = by_label("(2,3)");
        assert_eq!((c.lo.clone(), c.hi.clone()), (rat(7, 4), rat(11, 6)));
        let c = by_label("(2,2)");
        assert_eq!((c.lo.clone(), c.hi.clone()), (rat(7, 4), rat(7, 4)));
        let c = by_label("4<=i<=m-2 and 4<=j<=n-3");
        assert_eq!((c.lo.clone(), c.hi.clone()), (rat(17, 10), rat(31, 16)));
    }

    #[test]
    fn sandwich_closed_form_row() {
        let report = verify_sandwich(2, 7, Budget::default()).unwrap();
        assert_eq!(report.exact, Some(BigCount::from(63u32)));
        assert_eq!(report.lemma4_lo, rat(63, 1));
        assert_eq!(report.lemma4_verdict, Verdict::Holds);
        assert_eq!(report.theorem_verdict, Verdict::Holds);
    }

    #[test]
    fn sandwich_reports_uniform_shortfall_at_3x3() {
        let report = verify_sandwich(3, 3, Budget::default()).unwrap();
        assert_eq!(report.exact, Some(BigCount::from(13u32)));
        assert_eq!(report.lemma4_verdict, Verdict::Holds);
        assert_eq!(report.theorem_lo, rat(68, 5));
        assert_eq!(report.theorem_verdict, Verdict::Violated);
        let json = report.to_json();
        assert!(json.contains("\"theorem\":[\"68/5\",\"31/2\"]"), "{json}");
        assert!(json.contains("\"theorem_verdict\":\"violated\""), "{json}");
        assert!(json.contains("\"exact\":\"13\""), "{json}");
    }

    #[test]
    fn sandwich_flags_unchecked_when_over_budget() {
        let tiny = Budget {
            state_bits: 3,
            oracle_edges: 4,
        };
        let report = verify_sandwich(6, 6, tiny).unwrap();
        assert_eq!(report.exact, None);
        assert_eq!(report.lemma4_verdict, Verdict::Unchecked);
        assert_eq!(report.theorem_verdict, Verdict::Unchecked);
        assert!(!report.lemma3_checked);
        let json = report.to_json();
        assert!(json.contains("\"exact\":null"), "{json}");
    }

    #[test]
    fn sandwich_checks_interior_ratios_in_general_case() {
        let report = verify_sandwich(5, 6, Budget::default()).unwrap();
        assert!(report.lemma3_checked);
        assert!(
            report.lemma3_violations.is_empty(),
            "unexpected violations: {:?}",
            report.lemma3_violations
        );
    }

    #[test]
    fn csv_shape() {
        let report = verify_sandwich(3, 4, Budget::default()).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "m,n,exact,lemma4_lo,lemma4_hi,theorem_lo,theorem_hi,lemma4_verdict,theorem_verdict,lemma3_violations"
        );
        assert_eq!(
            lines.next().unwrap(),
            "3,4,49,48,151/3,1156/25,961/16,holds,holds,"
        );
    }

    #[test]
    fn root_scan_small_values() {
        let scan = limit_estimate(4, Budget::default()).unwrap();
        assert_eq!(scan.window_lo, rat(17, 10));
        assert_eq!(scan.window_hi, rat(31, 16));
        assert_eq!(scan.points[0].n, 2);
        assert_eq!(scan.points[0].root, "1.00000000000000");
        assert_eq!(scan.points[1].root, "1.32975454563978");
        assert_eq!(scan.points[0].window, WindowPosition::Below);
    }

    #[test]
    fn root_scan_rejects_degenerate_max() {
        assert!(limit_estimate(1, Budget::default()).is_err());
    }
}
