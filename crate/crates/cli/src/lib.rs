//! Command dispatch for the `unidiff` binary.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! the text written to stdout and stderr, so the whole surface is testable
//! without spawning processes.

use std::fmt::Write as _;
use std::fs;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use unidiff::certificate::{
    block_gram_inequality_check, bound_audit, build_system, certify_all_systems, path_gram_det,
    path_matrix, smith_normal_form, type1_graph, verify_snf_theorem, CertificateError,
    MinorSampling, SnfCertificate,
};
use unidiff::cyclotomic::{cassels_identity_check, parse_cycint, weil_hypothesis_check};
use unidiff::fp::parse_brace_list;
use unidiff::matrix::gram_det;
use unidiff::search::{find_no_unique_difference, SearchConfig, SearchError};
use unidiff::{
    compute_f, compute_g, diff_table, sum_table, unique_difference, unique_sum, GenSet, IntMatrix,
    Prime, ResidueSet, SetLiteral, SymSet, Witness,
};

/// Environment variable capping `--workers`.
pub const MAX_WORKERS_ENV: &str = "UNIDIFF_MAX_WORKERS";

/// Tables for primes above this are summarized unless `--full` is given.
const FULL_TABLE_LIMIT: u64 = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CONTRADICTION: i32 = 4;

#[derive(Serialize)]
struct CheckOutput {
    unique_difference: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unique_sum: Option<Option<Witness>>,
}

#[derive(Serialize)]
struct SetOutput {
    p: u64,
    elements: Vec<u64>,
}

#[derive(Serialize)]
struct TableSummary {
    min: u64,
    max: u64,
}

#[derive(Serialize)]
struct TableOutput {
    set: SetOutput,
    kind: &'static str,
    unique_positions: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<TableSummary>,
}

#[derive(Serialize)]
struct WitnessOutput {
    p: u64,
    size: usize,
    symmetric: bool,
    witness: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct GramPathOutput {
    path_edges: usize,
    signs: Vec<i8>,
    closed_form: String,
    materialized: String,
    agree: bool,
}

#[derive(Serialize)]
struct GramMatrixOutput {
    rows: usize,
    cols: usize,
    gram_det: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "unidiff",
    version,
    about = "Unique differences in subsets of F_p"
)]
struct Cli {
    /// Emit human-readable text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report the smallest unique difference of a set.
    Check {
        #[command(flatten)]
        set: SetArgs,
        /// Also report the smallest unique sum.
        #[arg(long)]
        sums: bool,
    },
    /// Print the difference (or sum) table of a set.
    Table {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        sums: bool,
        /// Print all counts even for large p.
        #[arg(long)]
        full: bool,
    },
    /// Compute f(p) by exhaustive search.
    SearchF(SearchArgs),
    /// Compute g(p) by exhaustive search over symmetric sets.
    SearchG(SearchArgs),
    /// Find a set of a given size without a unique difference.
    Witness {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        symmetric: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build the linear system of a symmetric set and certify it.
    Certify {
        #[command(flatten)]
        set: SetArgs,
        /// Certify every admissible equation choice.
        #[arg(long)]
        all_systems: bool,
        /// Cap on the number of systems for --all-systems.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        /// Print the determinant bound audit instead of the certificate.
        #[arg(long, conflicts_with = "all_systems")]
        audit: bool,
        #[arg(long, default_value_t = 1000)]
        sample_minors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gram determinants: a path block, a matrix, or stacked blocks.
    Gram {
        /// Number of edges of a type-1 path.
        #[arg(long, conflicts_with_all = ["matrix", "blocks"])]
        path: Option<usize>,
        /// Signs of the path rows, e.g. `+,-,+`.
        #[arg(long, requires = "path")]
        signs: Option<String>,
        /// A matrix as JSON rows, e.g. `[[3,1],[0,3]]`.
        #[arg(long, conflicts_with = "blocks")]
        matrix: Option<String>,
        /// A JSON list of matrices, stacked for the product bound.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Smith Normal Form of an integer matrix.
    Snf {
        /// The matrix as JSON rows.
        #[arg(long)]
        matrix: String,
        /// Also test divisibility of d_r and sampled minors by p.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        sample_minors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the hypotheses on (p, q, b, r) for Weil numbers of norm q^b.
    Weil {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        r: u64,
    },
    /// Cassels' identity for an element of Z[zeta_m], m = p m'.
    Cassels {
        /// Element literal `m=12; [c0,c1,...]`, or `@path`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Args)]
struct SetArgs {
    /// Prime modulus; optional when --set carries `p=`.
    #[arg(long)]
    p: Option<u64>,
    /// Set literal (`p=13; A={1,3,4,-1,-3,-4}`, `p=13; half={1,3,4}; zero=false`,
    /// or `{1,3,4}` with --p), or `@path` to read it from a file.
    #[arg(long, conflicts_with = "half")]
    set: Option<String>,
    /// Half-orbit representatives of a symmetric set, comma separated.
    #[arg(long)]
    half: Option<String>,
    /// With --half: the set contains 0.
    #[arg(long, requires = "half")]
    zero: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Cap on candidate sets evaluated.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Accepted for interface uniformity; the search is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Do not reduce by dilations.
    #[arg(long)]
    no_dilation: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Primes to search, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "up_to")]
    p: Vec<u64>,
    /// Search every prime from 3 up to this bound.
    #[arg(long, conflicts_with = "p")]
    up_to: Option<u64>,
    /// Largest set size to try.
    #[arg(long)]
    max_size: Option<usize>,
    #[command(flatten)]
    run: RunArgs,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Invalid(String),
    /// Budget ran out; partial output is still printed.
    Budget(String),
    Contradiction(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::Contradiction(_) => EXIT_CONTRADICTION,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Budget(m) | Failure::Contradiction(m) => m,
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

fn certificate_failure(e: CertificateError) -> Failure {
    match e {
        CertificateError::LemmaViolation(_) | CertificateError::TheoremViolation(_) => {
            Failure::Contradiction(e.to_string())
        }
        _ => Failure::Invalid(e.to_string()),
    }
}

struct Emitter {
    text: bool,
    out: String,
}

impl Emitter {
    fn json<T: Serialize>(&mut self, value: &T) {
        let line = serde_json::to_string(value).expect("outputs are serializable");
        self.out.push_str(&line);
        self.out.push('\n');
    }

    /// JSON in JSON mode, otherwise the given text.
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) {
        if self.text {
            self.out.push_str(&text());
            if !self.out.ends_with('\n') {
                self.out.push('\n');
            }
        } else {
            self.json(value);
        }
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut em = Emitter {
        text: cli.text,
        out: String::new(),
    };
    match dispatch(cli.command, &mut em) {
        Ok(()) => Outcome {
            code: EXIT_OK,
            stdout: em.out,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code(),
            stdout: em.out,
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

fn read_arg(value: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| invalid(format!("cannot read {path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

fn parse_prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(invalid)
}

fn parse_set(args: &SetArgs) -> Result<SetLiteral, Failure> {
    if let Some(half) = &args.half {
        let p = parse_prime(args.p.ok_or_else(|| invalid("--half needs --p"))?)?;
        let values = parse_brace_list(&format!(
            "{{{}}}",
            half.trim_matches(|c| c == '{' || c == '}')
        ))
        .map_err(invalid)?;
        return SymSet::new(p, &values, args.zero)
            .map(SetLiteral::Symmetric)
            .map_err(invalid);
    }
    let text = read_arg(
        args.set
            .as_deref()
            .ok_or_else(|| invalid("give --set or --half"))?,
    )?;
    if text.contains('=') {
        let lit = SetLiteral::parse(&text).map_err(invalid)?;
        if let Some(p) = args.p {
            if p != lit.prime().get() {
                return Err(invalid(format!(
                    "--p {p} disagrees with the literal's p = {}",
                    lit.prime()
                )));
            }
        }
        return Ok(lit);
    }
    let p = parse_prime(
        args.p
            .ok_or_else(|| invalid("a bare element list needs --p"))?,
    )?;
    let body = text.trim();
    let braced = if body.starts_with('{') {
        body.to_string()
    } else {
        format!("{{{body}}}")
    };
    let values = parse_brace_list(&braced).map_err(invalid)?;
    GenSet::new(p, &values)
        .map(SetLiteral::General)
        .map_err(invalid)
}

fn workers(requested: usize) -> usize {
    let cap = std::env::var(MAX_WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    let w = requested.max(1);
    cap.map_or(w, |c| w.min(c.max(1)))
}

fn search_config(run: &RunArgs, max_size: Option<usize>) -> SearchConfig {
    SearchConfig {
        max_size,
        canonicalize_dilation: !run.no_dilation,
        parallel_width: workers(run.workers),
        budget: run.budget,
    }
}

fn parse_matrix(text: &str) -> Result<IntMatrix, Failure> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(&read_arg(text)?).map_err(|e| invalid(format!("bad matrix: {e}")))?;
    check_rectangular(&rows)?;
    Ok(IntMatrix::from_rows(&rows))
}

fn check_rectangular(rows: &[Vec<i64>]) -> Result<(), Failure> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(invalid(
            "a matrix needs at least one row, all rows of equal nonzero length",
        ));
    }
    Ok(())
}

fn dispatch(command: Command, em: &mut Emitter) -> Result<(), Failure> {
    match command {
        Command::Check { set, sums } => check(&parse_set(&set)?, sums, em),
        Command::Table { set, sums, full } => table(&parse_set(&set)?, sums, full, em),
        Command::SearchF(args) => search(&args, false, em),
        Command::SearchG(args) => search(&args, true, em),
        Command::Witness {
            p,
            size,
            symmetric,
            run,
        } => {
            let prime = parse_prime(p)?;
            let cfg = search_config(&run, None);
            let found =
                find_no_unique_difference(prime, size, symmetric, &cfg).map_err(|e| match e {
                    SearchError::Undecided { .. } => Failure::Budget(e.to_string()),
                    other => invalid(other),
                })?;
            let value = WitnessOutput {
                p,
                size,
                symmetric,
                witness: found.clone(),
            };
            em.emit(&value, || match &found {
                Some(w) => format!("p={p} size={size}: {w:?} has no unique difference"),
                None => format!("p={p} size={size}: every set has a unique difference"),
            });
            Ok(())
        }
        Command::Certify {
            set,
            all_systems,
            limit,
            audit,
            sample_minors,
            seed,
        } => {
            let sym = parse_set(&set)?.to_symmetric().map_err(invalid)?;
            let sampling = MinorSampling {
                samples: sample_minors,
                seed,
                ..MinorSampling::default()
            };
            certify(&sym, all_systems, limit, audit, &sampling, em)
        }
        Command::Gram {
            path,
            signs,
            matrix,
            blocks,
        } => gram(path, signs, matrix, blocks, em),
        Command::Snf {
            matrix,
            p,
            sample_minors,
            seed,
        } => {
            let m = parse_matrix(&matrix)?;
            match p {
                None => {
                    let snf = smith_normal_form(&m);
                    let diag: Vec<String> = snf.diagonal.iter().map(ToString::to_string).collect();
                    em.emit(&snf, || {
                        format!("rank {}, diagonal [{}]", snf.rank, diag.join(", "))
                    });
                }
                Some(p) => {
                    let sampling = MinorSampling {
                        samples: sample_minors,
                        seed,
                        ..MinorSampling::default()
                    };
                    let cert = SnfCertificate::new(&m, parse_prime(p)?, &sampling);
                    em.emit(&cert, || certificate_text(&cert));
                }
            }
            Ok(())
        }
        Command::Weil { p, q, b, r } => {
            let report = weil_hypothesis_check(p, q, b, r).map_err(invalid)?;
            em.emit(&report, || {
                format!(
                    "ord_{p}({q}) = {} ({}), p^2 > 3^n: {}, p > n^2+n+1: {}\n{}",
                    report.ord_p_q,
                    if report.ord_even { "even" } else { "odd" },
                    report.exceeds_three_pow_half_n,
                    report.exceeds_n_squared_bound,
                    report.conclusion
                )
            });
            Ok(())
        }
        Command::Cassels { x, p } => {
            let x = parse_cycint(&read_arg(&x)?).map_err(invalid)?;
            let report = cassels_identity_check(&x, p).map_err(invalid)?;
            em.emit(&report, || {
                format!(
                    "(p-1)M(X) = {}, sum M(X_i - X_j) = {}, holds: {}",
                    report.lhs, report.rhs, report.holds
                )
            });
            Ok(())
        }
    }
}

fn set_output(set: &SetLiteral) -> SetOutput {
    SetOutput {
        p: set.prime().get(),
        elements: set.residues(),
    }
}

fn check(set: &SetLiteral, sums: bool, em: &mut Emitter) -> Result<(), Failure> {
    let diff = unique_difference(set);
    let value = CheckOutput {
        unique_difference: diff,
        unique_sum: sums.then(|| unique_sum(set)),
    };
    em.emit(&value, || {
        let mut s = match diff {
            Some(w) => format!("unique difference {} = {} - {}", w.x, w.a, w.b),
            None => "no unique difference".to_string(),
        };
        if sums {
            s += &match unique_sum(set) {
                Some(w) => format!("\nunique sum {} = {} + {}", w.x, w.a, w.b),
                None => "\nno unique sum".to_string(),
            };
        }
        s
    });
    Ok(())
}

fn table(set: &SetLiteral, sums: bool, full: bool, em: &mut Emitter) -> Result<(), Failure> {
    let t = if sums {
        sum_table(set)
    } else {
        diff_table(set)
    };
    let p = set.prime().get();
    let kind = if sums { "sum" } else { "difference" };
    let unique = t.unique_positions();
    let summarize = !full && p > FULL_TABLE_LIMIT;
    let value = TableOutput {
        set: set_output(set),
        kind,
        unique_positions: unique.clone(),
        counts: (!summarize).then(|| t.counts().to_vec()),
        summary: summarize.then(|| TableSummary {
            min: t.counts().iter().min().copied().unwrap_or(0),
            max: t.counts().iter().max().copied().unwrap_or(0),
        }),
    };
    em.emit(&value, || {
        let mut s = String::new();
        for (x, c) in t.counts().iter().enumerate().filter(|(_, &c)| c > 0) {
            let _ = writeln!(s, "{x:>6} {c}");
        }
        let _ = write!(s, "unique positions: {unique:?}");
        s
    });
    Ok(())
}

fn search(args: &SearchArgs, symmetric: bool, em: &mut Emitter) -> Result<(), Failure> {
    let primes: Vec<u64> = match args.up_to {
        Some(n) => (3..=n).filter(|&k| unidiff::is_prime(k)).collect(),
        None => args.p.clone(),
    };
    let cfg = search_config(&args.run, args.max_size);
    for p in primes {
        let prime = parse_prime(p)?;
        let res = if symmetric {
            compute_g(prime, &cfg)
        } else {
            compute_f(prime, &cfg)
        };
        match res {
            Ok(r) => em.emit(&r, || extremal_text(&r)),
            Err(SearchError::BudgetExhausted(partial)) => {
                em.emit(&*partial, || extremal_text(&partial));
                return Err(Failure::Budget(format!(
                    "budget exhausted at p = {p}; sizes up to {} verified",
                    partial.value
                )));
            }
            Err(e) => return Err(invalid(e)),
        }
    }
    Ok(())
}

fn extremal_text(r: &unidiff::ExtremalResult) -> String {
    let bound = if r.complete { "=" } else { ">=" };
    match &r.witness {
        Some(w) => format!(
            "{}({}) {bound} {}  witness {:?}  ({} sets)",
            r.kind, r.p, r.value, w, r.sets_examined
        ),
        None => format!(
            "{}({}) {bound} {}  ({} sets)",
            r.kind, r.p, r.value, r.sets_examined
        ),
    }
}

fn certificate_text(c: &SnfCertificate) -> String {
    let diag: Vec<String> = c.diagonal.iter().map(ToString::to_string).collect();
    format!(
        "rank {}, diagonal [{}], p | d_r: {}, minors checked: {} ({}), all divisible: {}",
        c.rank,
        diag.join(", "),
        c.divisibility_verdict,
        c.sampled_minors.len(),
        if c.minors_exhaustive {
            "exhaustive"
        } else {
            "sampled"
        },
        c.all_minors_divisible()
    )
}

fn certify(
    set: &SymSet,
    all: bool,
    limit: usize,
    audit: bool,
    sampling: &MinorSampling,
    em: &mut Emitter,
) -> Result<(), Failure> {
    let sys = build_system(set).map_err(certificate_failure)?;
    type1_graph(&sys).map_err(certificate_failure)?;
    if all {
        let report = certify_all_systems(set, limit, sampling).map_err(certificate_failure)?;
        em.emit(&report, || {
            format!(
                "{} systems{}, ranks {:?}, all divisible: {}",
                report.systems,
                if report.truncated { " (truncated)" } else { "" },
                report.ranks,
                report.all_divisible
            )
        });
        if !report.all_divisible {
            return Err(Failure::Contradiction(
                "some system has a minor not divisible by p".into(),
            ));
        }
    } else if audit {
        let a = bound_audit(set).map_err(certificate_failure)?;
        em.emit(&a, || {
            let mut s = format!(
                "rank {}, |det N| = {}, 3^r = {}\n",
                a.rank, a.det_n, a.bound_3r
            );
            for c in &a.checks {
                let _ = writeln!(
                    s,
                    "{:<20} {} {} {}  {}",
                    c.name, c.lhs, c.relation, c.rhs, c.holds
                );
            }
            s
        });
    } else {
        let cert = verify_snf_theorem(set, sampling).map_err(certificate_failure)?;
        em.emit(&cert, || certificate_text(&cert));
    }
    Ok(())
}

fn parse_signs(text: &str, v: usize) -> Result<Vec<i8>, Failure> {
    let signs: Vec<i8> = text
        .split(',')
        .map(|s| match s.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => Err(invalid(format!("bad sign `{other}`"))),
        })
        .collect::<Result<_, _>>()?;
    if signs.len() != v {
        return Err(invalid(format!(
            "{} signs for a path with {v} edges",
            signs.len()
        )));
    }
    Ok(signs)
}

fn gram(
    path: Option<usize>,
    signs: Option<String>,
    matrix: Option<String>,
    blocks: Option<String>,
    em: &mut Emitter,
) -> Result<(), Failure> {
    if let Some(v) = path {
        if v == 0 {
            return Err(invalid("a path has at least one edge"));
        }
        let signs = match signs {
            Some(s) => parse_signs(&s, v)?,
            None => vec![1; v],
        };
        let closed = path_gram_det(v);
        let direct = gram_det(&path_matrix(&signs));
        let value = GramPathOutput {
            path_edges: v,
            signs: signs.clone(),
            closed_form: closed.to_string(),
            materialized: direct.to_string(),
            agree: closed == direct,
        };
        em.emit(&value, || {
            format!("det(BB^T) = {direct}, closed form {closed}")
        });
        return Ok(());
    }
    if let Some(m) = matrix {
        let m = parse_matrix(&m)?;
        let det = gram_det(&m);
        let value = GramMatrixOutput {
            rows: m.rows(),
            cols: m.cols(),
            gram_det: det.to_string(),
        };
        em.emit(&value, || format!("det(AA^T) = {det}"));
        return Ok(());
    }
    if let Some(b) = blocks {
        let raw: Vec<Vec<Vec<i64>>> = serde_json::from_str(&read_arg(&b)?)
            .map_err(|e| invalid(format!("bad blocks: {e}")))?;
        if raw.is_empty() {
            return Err(invalid("no blocks given"));
        }
        for block in &raw {
            check_rectangular(block)?;
        }
        if raw.iter().any(|b| b[0].len() != raw[0][0].len()) {
            return Err(invalid("blocks must have the same number of columns"));
        }
        let mats: Vec<IntMatrix> = raw.iter().map(|b| IntMatrix::from_rows(b)).collect();
        let report = block_gram_inequality_check(&mats);
        em.emit(&report, || {
            format!(
                "det(CC^T) = {} <= {} : {}",
                report.stacked, report.product, report.holds
            )
        });
        return Ok(());
    }
    Err(invalid("give one of --path, --matrix or --blocks"))
}
