//! Command-line front end for the msap toolkit.
//!
//! Exit codes: 0 success, 1 verification violation (including engine
//! disagreement under `count --method both`), 2 domain or usage errors,
//! 3 budget exceeded.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use msap::bounds::{lemma4_bounds, limit_estimate, theorem_bounds, verify_sandwich};
use msap::clingratios::{
    counting_matrices, cp_ratio_pairs, expected_counting_matrices, expected_pairs,
};
use msap::enumeration::{
    brute_force_count, count_polygon_mosaics, grid_edge_count, growth_ratios, quasimosaic_counts,
    Budget, ScanOrder,
};
use msap::tiles::MosaicGrid;
use msap::{Error, ExactRational};

#[derive(Parser)]
#[command(
    name = "msap",
    version,
    about = "Exact enumeration and bound verification for multiple self-avoiding polygons in a rectangular grid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// DP state budget in bits (overrides MSAP_BUDGET_BITS).
    #[arg(long, global = true)]
    budget_bits: Option<u64>,

    /// Edge budget for the brute-force oracle.
    #[arg(long, global = true)]
    oracle_edges: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Dp,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Count multiple self-avoiding polygons in an m x n grid.
    Count {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
    },
    /// Quasimosaic counts |Q(i,j)| along the anti-diagonal scan order.
    Quasi {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Exact growth ratios r(i,j).
    Ratios {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Cling-mosaic cp-ratio pairs and counting matrices.
    Cling {
        /// Compare every pair and matrix against the expected values;
        /// exit 1 on any mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Bounds report for one grid: exact count, both bound pairs,
    /// verdicts, and interior ratio checks where applicable.
    Bounds {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Run the invariant battery; exit 1 on any hard violation.
    /// Shortfalls of the brief uniform bound at small sizes are reported
    /// as findings, not violations.
    Verify {
        /// Largest row count in the sweep.
        #[arg(long, default_value_t = 5)]
        max_rows: usize,
        /// Largest column count in the sweep.
        #[arg(long, default_value_t = 8)]
        max_cols: usize,
    },
    /// Root scan: p(n,n)^(1/n^2) for n = 2..max.
    Limit {
        #[arg(long)]
        max: usize,
    },
    /// Classify a grid read from a file (or standard input).
    Check { file: Option<PathBuf> },
}

struct Failure {
    exit: u8,
    reason: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            exit,
            reason: e.to_string(),
        }
    }
}

fn fail(exit: u8, reason: impl Into<String>) -> Failure {
    Failure {
        exit,
        reason: reason.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = resolve_budget(&cli);
    let format = cli.format;

    let result = match &cli.command {
        Command::Count { rows, cols, method } => run_count(*rows, *cols, *method, budget, format),
        Command::Quasi { rows, cols } => run_quasi(*rows, *cols, budget, format),
        Command::Ratios { rows, cols } => run_ratios(*rows, *cols, budget, format),
        Command::Cling { verify } => run_cling(*verify, format),
        Command::Bounds { rows, cols } => run_bounds(*rows, *cols, budget, format),
        Command::Verify { max_rows, max_cols } => run_verify(*max_rows, *max_cols, budget, format),
        Command::Limit { max } => run_limit(*max, budget, format),
        Command::Check { file } => run_check(file.as_deref(), format),
    };

    match result {
        Ok((report, exit)) => {
            let report = if report.ends_with('\n') {
                report
            } else {
                report + "\n"
            };
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{report}");
            }
            ExitCode::from(exit)
        }
        Err(f) => {
            eprintln!("error: {}", f.reason);
            ExitCode::from(f.exit)
        }
    }
}

fn resolve_budget(cli: &Cli) -> Budget {
    let mut budget = Budget::default();
    if let Ok(env) = std::env::var("MSAP_BUDGET_BITS") {
        if let Ok(bits) = env.parse::<u64>() {
            budget.state_bits = bits;
        }
    }
    if let Some(bits) = cli.budget_bits {
        budget.state_bits = bits;
    }
    if let Some(edges) = cli.oracle_edges {
        budget.oracle_edges = edges;
    }
    budget
}

type CmdResult = Result<(String, u8), Failure>;

#[derive(Serialize)]
struct CountReport {
    m: usize,
    n: usize,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<String>,
    agree: bool,
}

fn run_count(
    rows: usize,
    cols: usize,
    method: Method,
    budget: Budget,
    format: Format,
) -> CmdResult {
    let dp = match method {
        Method::Dp | Method::Both => Some(count_polygon_mosaics(rows, cols, budget)?),
        Method::Brute => None,
    };
    let brute = match method {
        Method::Brute | Method::Both => Some(brute_force_count(rows, cols, budget)?),
        Method::Dp => None,
    };
    let agree = match (&dp, &brute) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    let report = CountReport {
        m: rows,
        n: cols,
        method: match method {
            Method::Dp => "dp",
            Method::Brute => "brute",
            Method::Both => "both",
        },
        dp: dp.map(|v| v.to_string()),
        brute: brute.map(|v| v.to_string()),
        agree,
    };
    let text = match format {
        Format::Json => serde_json::to_string(&report).unwrap(),
        Format::Csv => format!(
            "m,n,method,dp,brute,agree\n{},{},{},{},{},{}",
            report.m,
            report.n,
            report.method,
            report.dp.clone().unwrap_or_default(),
            report.brute.clone().unwrap_or_default(),
            report.agree
        ),
        Format::Plain => match (&report.dp, &report.brute) {
            (Some(d), Some(b)) => format!("dp {d}\nbrute {b}\nagree {}", report.agree),
            (Some(d), None) => d.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!(),
        },
    };
    Ok((text, if agree { 0 } else { 1 }))
}

#[derive(Serialize)]
struct SequenceEntry {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Serialize)]
struct SequenceReport {
    m: usize,
    n: usize,
    entries: Vec<SequenceEntry>,
}

fn sequence_text(report: &SequenceReport, column: &str, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).unwrap(),
        Format::Csv => {
            let mut out = format!("i,j,{column}\n");
            for e in &report.entries {
                out.push_str(&format!("{},{},{}\n", e.i, e.j, e.value));
            }
            out
        }
        Format::Plain => {
            let mut out = format!("i j {column}\n");
            for e in &report.entries {
                out.push_str(&format!("{} {} {}\n", e.i, e.j, e.value));
            }
            out
        }
    }
}

fn run_quasi(rows: usize, cols: usize, budget: Budget, format: Format) -> CmdResult {
    let order = ScanOrder::new(rows, cols)?;
    let counts = quasimosaic_counts(rows, cols, budget)?;
    let entries = order
        .sequence()
        .iter()
        .zip(counts.iter())
        .map(|(&(i, j), q)| SequenceEntry {
            i,
            j,
            value: q.to_string(),
        })
        .collect();
    let report = SequenceReport {
        m: rows,
        n: cols,
        entries,
    };
    Ok((sequence_text(&report, "q", format), 0))
}

fn run_ratios(rows: usize, cols: usize, budget: Budget, format: Format) -> CmdResult {
    let order = ScanOrder::new(rows, cols)?;
    let ratios = growth_ratios(rows, cols, budget)?;
    let entries = order
        .sequence()
        .iter()
        .map(|&(i, j)| SequenceEntry {
            i,
            j,
            value: ratios.get(i, j).to_string(),
        })
        .collect();
    let report = SequenceReport {
        m: rows,
        n: cols,
        entries,
    };
    Ok((sequence_text(&report, "r", format), 0))
}

#[derive(Serialize)]
struct ClingPairReport {
    kind: &'static str,
    computed: [String; 2],
    expected: [String; 2],
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct ClingMatrixReport {
    name: String,
    computed: Vec<Vec<u64>>,
    expected: Vec<Vec<u64>>,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct ClingReport {
    pairs: Vec<ClingPairReport>,
    matrices: Vec<ClingMatrixReport>,
    ok: bool,
}

fn run_cling(verify: bool, format: Format) -> CmdResult {
    let computed_pairs = cp_ratio_pairs();
    let expected = expected_pairs();
    let pairs: Vec<ClingPairReport> = computed_pairs
        .iter()
        .zip(expected.iter())
        .map(|((kind, got), (_, want))| ClingPairReport {
            kind: kind.as_str(),
            computed: [got.min.to_string(), got.max.to_string()],
            expected: [want.min.to_string(), want.max.to_string()],
            matches: got == want,
        })
        .collect();
    let matrices: Vec<ClingMatrixReport> = counting_matrices()
        .into_iter()
        .zip(expected_counting_matrices())
        .map(|(got, want)| ClingMatrixReport {
            matches: got.entries == want.entries,
            name: got.name,
            computed: got.entries,
            expected: want.entries,
        })
        .collect();
    let ok = pairs.iter().all(|p| p.matches) && matrices.iter().all(|m| m.matches);
    let report = ClingReport {
        pairs,
        matrices,
        ok,
    };

    let text = match format {
        Format::Json => serde_json::to_string(&report).unwrap(),
        Format::Csv => {
            let mut out = String::from("kind,min,max,expected_min,expected_max,match\n");
            for p in &report.pairs {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    p.kind, p.computed[0], p.computed[1], p.expected[0], p.expected[1], p.matches
                ));
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for p in &report.pairs {
                out.push_str(&format!(
                    "{} min {} max {}{}\n",
                    p.kind,
                    p.computed[0],
                    p.computed[1],
                    if verify {
                        if p.matches {
                            " ok"
                        } else {
                            " MISMATCH"
                        }
                    } else {
                        ""
                    }
                ));
            }
            if verify {
                for m in &report.matrices {
                    out.push_str(&format!(
                        "{} {}\n",
                        m.name,
                        if m.matches { "ok" } else { "MISMATCH" }
                    ));
                }
            }
            out
        }
    };
    let exit = if verify && !report.ok { 1 } else { 0 };
    Ok((text, exit))
}

fn run_bounds(rows: usize, cols: usize, budget: Budget, format: Format) -> CmdResult {
    let report = verify_sandwich(rows, cols, budget)?;
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Plain => {
            let mut out = format!(
                "grid {}x{}\nexact {}\nlemma4 [{}, {}] {}\ntheorem [{}, {}] {}\n",
                report.m,
                report.n,
                report
                    .exact
                    .as_ref()
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "unavailable".to_string()),
                report.lemma4_lo,
                report.lemma4_hi,
                report.lemma4_verdict.as_str(),
                report.theorem_lo,
                report.theorem_hi,
                report.theorem_verdict.as_str(),
            );
            if report.lemma3_checked {
                out.push_str(&format!(
                    "interior ratio violations: {}\n",
                    report.lemma3_violations.len()
                ));
            }
            out
        }
    };
    Ok((text, 0))
}

#[derive(Serialize)]
struct CheckItem {
    name: String,
    ok: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    hard: Vec<CheckItem>,
    findings: Vec<CheckItem>,
    ok: bool,
}

fn run_verify(max_rows: usize, max_cols: usize, budget: Budget, format: Format) -> CmdResult {
    if max_rows < 2 || max_cols < max_rows {
        return Err(fail(2, "verify needs 2 <= max-rows <= max-cols"));
    }
    let mut hard = Vec::new();
    let mut findings = Vec::new();

    // closed form for two-row grids
    {
        let mut ok = true;
        let mut detail = String::new();
        for n in 2..=max_cols.max(13) {
            let p = count_polygon_mosaics(2, n, budget)?;
            let expect =
                (msap::BigCount::from(2u32).pow(n as u32 - 1)) - msap::BigCount::from(1u32);
            if p != expect {
                ok = false;
                detail = format!("2x{n}: dp {p} != closed form {expect}");
                break;
            }
        }
        hard.push(CheckItem {
            name: "closed_form_2xn".into(),
            ok,
            detail,
        });
    }

    // the two engines agree wherever the oracle budget allows
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut checked = 0usize;
        for m in 1..=max_rows {
            for n in m..=max_cols {
                if grid_edge_count(m, n) > budget.oracle_edges {
                    continue;
                }
                let dp = count_polygon_mosaics(m, n, budget)?;
                let oracle = brute_force_count(m, n, budget)?;
                checked += 1;
                if dp != oracle {
                    ok = false;
                    detail = format!("{m}x{n}: dp {dp} != oracle {oracle}");
                }
            }
        }
        if ok {
            detail = format!("{checked} grids");
        }
        hard.push(CheckItem {
            name: "oracle_equivalence".into(),
            ok,
            detail,
        });
    }

    // cp-ratio pairs and counting matrices
    {
        let pairs_ok = cp_ratio_pairs() == expected_pairs();
        hard.push(CheckItem {
            name: "cling_pairs".into(),
            ok: pairs_ok,
            detail: String::new(),
        });
        let matrices_ok = counting_matrices() == expected_counting_matrices();
        hard.push(CheckItem {
            name: "cling_matrices".into(),
            ok: matrices_ok,
            detail: String::new(),
        });
    }

    // case-split sandwich and the uniform-bound findings
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut checked = 0usize;
        for m in 3..=max_rows {
            for n in m..=max_cols {
                let p = match count_polygon_mosaics(m, n, budget) {
                    Ok(p) => p,
                    Err(Error::BudgetExceeded { .. }) => continue,
                    Err(e) => return Err(e.into()),
                };
                let p_rat = ExactRational::from_integer(p.clone().into());
                let (lo, hi) = lemma4_bounds(m, n)?;
                checked += 1;
                if !(lo <= p_rat && p_rat <= hi) {
                    ok = false;
                    detail = format!("{m}x{n}: p {p} escapes [{lo}, {hi}]");
                }
                let (tlo, thi) = theorem_bounds(m, n)?;
                if !(tlo <= p_rat && p_rat <= thi) {
                    findings.push(CheckItem {
                        name: format!("theorem_form_{m}x{n}"),
                        ok: false,
                        detail: format!(
                            "uniform bound [{tlo}, {thi}] misses exact {p} (brief form drops -1)"
                        ),
                    });
                }
            }
        }
        if ok {
            detail = format!("{checked} grids");
        }
        hard.push(CheckItem {
            name: "lemma4_sandwich".into(),
            ok,
            detail,
        });
    }

    // growth-ratio product identity and rough bounds
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut checked = 0usize;
        for m in 2..=max_rows {
            for n in m..=max_cols {
                let ratios = match growth_ratios(m, n, budget) {
                    Ok(r) => r,
                    Err(Error::BudgetExceeded { .. }) => continue,
                    Err(e) => return Err(e.into()),
                };
                let p = count_polygon_mosaics(m, n, budget)?;
                let expect =
                    ExactRational::from_integer(p.into()) + ExactRational::new(1.into(), 1.into());
                checked += 1;
                if ratios.product() != expect {
                    ok = false;
                    detail = format!("{m}x{n}: ratio product != count + 1");
                }
                let one = ExactRational::new(1.into(), 1.into());
                let two = ExactRational::new(2.into(), 1.into());
                for ((i, j), r) in ratios.iter() {
                    if r < &one || r > &two {
                        ok = false;
                        detail = format!("{m}x{n}: r({i},{j}) = {r} out of [1,2]");
                    }
                }
            }
        }
        if ok {
            detail = format!("{checked} grids");
        }
        hard.push(CheckItem {
            name: "ratio_identity".into(),
            ok,
            detail,
        });
    }

    // interior ratios against the chart where the general chart applies
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut checked = 0usize;
        for m in 5..=max_rows {
            for n in m..=max_cols {
                let report = verify_sandwich(m, n, budget)?;
                if report.lemma3_checked {
                    checked += 1;
                    if !report.lemma3_violations.is_empty() {
                        ok = false;
                        let v = &report.lemma3_violations[0];
                        detail = format!(
                            "{m}x{n}: r({},{}) = {} escapes [{}, {}]",
                            v.i, v.j, v.r, v.lo, v.hi
                        );
                    }
                }
            }
        }
        if ok {
            detail = format!("{checked} grids");
        }
        hard.push(CheckItem {
            name: "chart_containment".into(),
            ok,
            detail,
        });
    }

    let ok = hard.iter().all(|c| c.ok);
    let report = VerifyReport { hard, findings, ok };
    let text = match format {
        Format::Json => serde_json::to_string(&report).unwrap(),
        Format::Csv => {
            let mut out = String::from("section,name,ok,detail\n");
            for c in &report.hard {
                out.push_str(&format!("hard,{},{},{}\n", c.name, c.ok, c.detail));
            }
            for c in &report.findings {
                out.push_str(&format!("finding,{},{},{}\n", c.name, c.ok, c.detail));
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for c in &report.hard {
                out.push_str(&format!(
                    "{} {}{}\n",
                    if c.ok { "ok" } else { "VIOLATED" },
                    c.name,
                    if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", c.detail)
                    }
                ));
            }
            for c in &report.findings {
                out.push_str(&format!("finding {} ({})\n", c.name, c.detail));
            }
            out.push_str(if report.ok { "ok\n" } else { "VIOLATED\n" });
            out
        }
    };
    Ok((text, if report.ok { 0 } else { 1 }))
}

#[derive(Serialize)]
struct LimitPointJson {
    n: usize,
    count: String,
    root: String,
    window: &'static str,
}

#[derive(Serialize)]
struct LimitJson {
    window: [String; 2],
    monotone_from_4: bool,
    points: Vec<LimitPointJson>,
}

// exact decimal expansion of a terminating rational, e.g. 31/16 -> 1.9375
fn exact_decimal(r: &ExactRational) -> Option<String> {
    use num_bigint::BigInt;
    let ten = BigInt::from(10);
    let mut digits = String::new();
    let mut rem = r.numer() % r.denom();
    let int_part = r.numer() / r.denom();
    for _ in 0..32 {
        if rem == BigInt::from(0) {
            return Some(if digits.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{digits}")
            });
        }
        rem *= &ten;
        digits.push_str(&(&rem / r.denom()).to_string());
        rem %= r.denom();
    }
    None
}

fn run_limit(max: usize, budget: Budget, format: Format) -> CmdResult {
    let scan = limit_estimate(max, budget)?;
    let report = LimitJson {
        window: [scan.window_lo.to_string(), scan.window_hi.to_string()],
        monotone_from_4: scan.monotone_from_4,
        points: scan
            .points
            .iter()
            .map(|p| LimitPointJson {
                n: p.n,
                count: p.count.to_string(),
                root: p.root.clone(),
                window: p.window.as_str(),
            })
            .collect(),
    };
    let text = match format {
        Format::Json => serde_json::to_string(&report).unwrap(),
        Format::Csv => {
            let mut out = String::from("n,count,root,window\n");
            for p in &report.points {
                out.push_str(&format!("{},{},{},{}\n", p.n, p.count, p.root, p.window));
            }
            out
        }
        Format::Plain => {
            let lo = exact_decimal(&scan.window_lo).unwrap_or_else(|| report.window[0].clone());
            let hi = exact_decimal(&scan.window_hi).unwrap_or_else(|| report.window[1].clone());
            let mut out = format!(
                "window [{lo}, {hi}]\nmonotone from n=4: {}\n",
                report.monotone_from_4
            );
            for p in &report.points {
                out.push_str(&format!("n={} root {} ({})\n", p.n, p.root, p.window));
            }
            out
        }
    };
    Ok((text, 0))
}

#[derive(Serialize)]
struct CheckReport {
    class: &'static str,
}

fn run_check(file: Option<&std::path::Path>, format: Format) -> CmdResult {
    let text = match file {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| fail(2, format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    let grid: MosaicGrid = text.parse()?;
    let class = grid.classify().as_str();
    let out = match format {
        Format::Json => serde_json::to_string(&CheckReport { class }).unwrap(),
        Format::Csv => format!("class\n{class}"),
        Format::Plain => class.to_string(),
    };
    Ok((out, 0))
}
