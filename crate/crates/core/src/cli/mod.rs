//! The `lrb` command line. Every subcommand builds one serializable report;
//! JSON, CSV and the human table are all rendered from it.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
//! arguments or refused inputs.

mod grid;
mod table;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub use grid::{run_criterion, run_grid, Check, CriterionReport, VerificationGrid, VerifyReport, CRITERIA};
pub use table::Table;

use crate::error::{Error, Result};
use crate::exactalg::Rat;
use crate::fqlinalg::random_invertible;
use crate::lrb::{act_gl, act_perm, FlagMonoid, Monoid, MonoidKind, WordMonoid};
use crate::qnums::{
    derangement_number, q_int, q_stirling, stirling2, verify_change_of_basis, ChangeOfBasisReport, QPoly,
    StirlingVariant,
};
use crate::spectra::{
    check_guard, minpoly_verify, orbit_sums, predicted_invariant_matrix, random_to_top, spectral_report,
    x_matrix_on_invariants, Space,
};
use crate::symfun::{derangement_qsym, derangement_sf, DsfDefinition, QSymVector, SchurVector};

/// Seed for sampled group elements unless `--seed` says otherwise.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "lrb", version, about = "Exact spectra of the invariant generator on free left-regular bands")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; `text` is a table for reading, `json` and `csv` are for machines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Record the wall-clock time in JSON reports (off by default, so
    /// identical invocations give identical bytes).
    #[arg(long, global = true)]
    timestamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Target {
    /// Number of letters, or the dimension of the ambient space for flags.
    #[arg(long)]
    n: usize,
    /// Work with flags over F_q (q prime) instead of words.
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit sums, the matrix of x on them, and invariance under sampled group elements.
    Invariants {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of sampled group elements.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Stirling triangles and the power-to-falling-factorial identities.
    Stirling {
        #[arg(long)]
        n: usize,
        /// Also evaluate the q-analogues at this q.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Check that Π(X − λ_j) is the minimal polynomial of x on the whole algebra.
    Minpoly(Target),
    /// Eigenspace dimensions, and Schur images for words, against the predictions.
    Spectrum {
        #[command(flatten)]
        target: Target,
        /// full, chamber, or stratum:L
        #[arg(long, default_value = "full")]
        space: Space,
    },
    /// The derangement symmetric function under each of its definitions.
    Dsf {
        #[arg(long)]
        n: usize,
        /// Comma-separated definition letters.
        #[arg(long, value_delimiter = ',', default_value = "A,B,C,D,E,F,G")]
        defs: Vec<DsfDefinition>,
    },
    /// The random-to-top shuffle x/n on the orderings of n cards.
    Rtt {
        #[arg(long)]
        n: usize,
    },
    /// Run the verification grid; exits 1 if any check fails.
    Verify {
        /// Include flags with n = 4 over F_2 in the flag spectrum criteria.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = VerificationGrid::default().n_max_words)]
        words_max: usize,
        #[arg(long, default_value_t = VerificationGrid::default().n_max_flags)]
        flags_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u32>,
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<u8>>,
    },
}

/// A rendered subcommand result.
struct Output {
    report: Value,
    table: Table,
    /// Lines printed after the table in text mode.
    summary: Vec<String>,
    /// Text mode prints only the summary.
    summary_only: bool,
    pass: bool,
    /// Printed to standard error when the run fails.
    failures: Option<Value>,
}

impl Output {
    fn new(report: impl Serialize, table: Table, pass: bool) -> Self {
        Output {
            report: serde_json::to_value(report).expect("reports serialize"),
            table,
            summary: Vec::new(),
            summary_only: false,
            pass,
            failures: None,
        }
    }

    fn verdict(pass: bool) -> &'static str {
        if pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let invocation: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let output = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if is_verification_error(&e) {
                return 1;
            }
            let _ = writeln!(stderr, "run `lrb --help` for usage");
            return 2;
        }
    };
    let rendered = match cli.format {
        Format::Text => render_text(&output),
        Format::Csv => output.table.to_csv(),
        Format::Json => {
            let envelope = envelope(&output.report, &invocation, cli.timestamp);
            serde_json::to_string_pretty(&envelope).expect("reports serialize") + "\n"
        }
    };
    let written = match &cli.out {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout.write_all(rendered.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if output.pass {
        return 0;
    }
    if let Some(failures) = &output.failures {
        let _ = writeln!(stderr, "{}", serde_json::to_string_pretty(failures).expect("reports serialize"));
    }
    1
}

/// Errors that mean a computation contradicted the theory, as opposed to
/// a refused input.
fn is_verification_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NonDistinctSpectrum
            | Error::NonIntegerTrace(_)
            | Error::NotAnnihilated(_)
            | Error::NotInOrbitSpan(_)
            | Error::NotVirtualCharacter { .. }
    )
}

fn envelope(report: &Value, invocation: &[String], timestamp: bool) -> Value {
    let mut out = Map::new();
    out.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("invocation".into(), json!(invocation));
    let stamp = timestamp.then(|| humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string());
    out.insert("timestamp".into(), json!(stamp));
    match report {
        Value::Object(fields) => out.extend(fields.clone()),
        other => {
            out.insert("report".into(), other.clone());
        }
    }
    Value::Object(out)
}

fn render_text(output: &Output) -> String {
    let mut text = String::new();
    if !output.summary_only && !output.table.header.is_empty() {
        text.push_str(&output.table.to_text());
    }
    for line in &output.summary {
        text.push_str(line);
        text.push('\n');
    }
    text
}

fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Invariants { target, seed, samples } => invariants(target.n, target.q, *seed, *samples),
        Command::Stirling { n, q } => stirling(*n, *q),
        Command::Minpoly(target) => minpoly(target.n, target.q),
        Command::Spectrum { target, space } => spectrum(target.n, target.q, *space),
        Command::Dsf { n, defs } => dsf(*n, defs),
        Command::Rtt { n } => rtt(*n),
        Command::Verify { extended, words_max, flags_max, primes, checks } => {
            let mut grid = VerificationGrid {
                n_max_words: *words_max,
                n_max_flags: *flags_max,
                primes: primes.clone(),
                extended: *extended,
                ..VerificationGrid::default()
            };
            if let Some(checks) = checks {
                grid.checks = checks.clone();
            }
            verify(&grid)
        }
    }
}

#[derive(Serialize)]
struct InvariantsReport {
    monoid: MonoidKind,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    orbit_sizes: Vec<usize>,
    predicted_orbit_sizes: Vec<i128>,
    /// Matrix of `x` on `x_0, …, x_n`, computed in the algebra.
    matrix: Vec<Vec<Rat>>,
    predicted_matrix: Vec<Vec<Rat>>,
    seed: u64,
    samples: usize,
    invariant_under_samples: bool,
    all_pass: bool,
}

fn invariants(n: usize, q: Option<u32>, seed: u64, samples: usize) -> Result<Output> {
    check_guard(n, q, Space::Full)?;
    let report = match q {
        None => {
            let m = WordMonoid::new(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut invariant = true;
            for _ in 0..samples {
                let mut g: Vec<usize> = (1..=n).collect();
                g.shuffle(&mut rng);
                invariant &= strata_invariant(&m, |e| act_perm(&g, e))?;
            }
            invariants_report(&m, seed, samples, invariant)?
        }
        Some(p) => {
            let m = FlagMonoid::new(n, p)?;
            let mut invariant = true;
            for s in 0..samples as u64 {
                let g = random_invertible(n, p, seed.wrapping_add(s))?;
                invariant &= strata_invariant(&m, |e| act_gl(&g, e))?;
            }
            invariants_report(&m, seed, samples, invariant)?
        }
    };
    let mut table = Table::new(["ℓ", "orbit size", "predicted", "x·x_ℓ on x_ℓ", "x·x_ℓ on x_(ℓ+1)"]);
    for l in 0..=n {
        let next = report.matrix.get(l + 1).map_or("-".to_string(), |row| row[l].to_string());
        table.push([
            l.to_string(),
            report.orbit_sizes[l].to_string(),
            report.predicted_orbit_sizes[l].to_string(),
            report.matrix[l][l].to_string(),
            next,
        ]);
    }
    let pass = report.all_pass;
    let mut out = Output::new(&report, table, pass);
    out.summary.push(format!(
        "invariant under {samples} sampled group elements (seed {seed}): {}",
        if report.invariant_under_samples { "yes" } else { "no" }
    ));
    out.summary.push(Output::verdict(pass).to_string());
    Ok(out)
}

/// Does `g` permute every length stratum?
fn strata_invariant<M: Monoid>(m: &M, g: impl Fn(&M::Elem) -> Result<M::Elem>) -> Result<bool> {
    for l in 0..=m.rank() {
        let stratum = m.stratum(l);
        let images = stratum.iter().map(&g).collect::<Result<BTreeSet<_>>>()?;
        if images != stratum.iter().cloned().collect() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn invariants_report<M: Monoid>(m: &M, seed: u64, samples: usize, invariant: bool) -> Result<InvariantsReport> {
    let n = m.rank();
    let orbit_sizes: Vec<usize> = orbit_sums(m).iter().map(|s| s.support_len()).collect();
    let predicted_orbit_sizes: Vec<i128> = (0..=n)
        .map(|l| {
            (0..l)
                .map(|i| match m.modulus() {
                    None => (n - i) as i128,
                    Some(p) => q_int(n - i).eval(p as i128),
                })
                .product()
        })
        .collect();
    let matrix = x_matrix_on_invariants(m)?.to_dense();
    let predicted_matrix = predicted_invariant_matrix(n, m.modulus()).to_dense();
    let sizes_match = orbit_sizes.iter().zip(&predicted_orbit_sizes).all(|(&a, &b)| a as i128 == b);
    let all_pass = sizes_match && matrix == predicted_matrix && invariant;
    Ok(InvariantsReport {
        monoid: m.kind(),
        n,
        q: m.modulus(),
        orbit_sizes,
        predicted_orbit_sizes,
        matrix,
        predicted_matrix,
        seed,
        samples,
        invariant_under_samples: invariant,
        all_pass,
    })
}

#[derive(Serialize)]
struct StirlingEntry {
    m: usize,
    k: usize,
    s: i128,
    s_q: QPoly,
    s_tilde: QPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_q_at: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_tilde_at: Option<i128>,
    /// `S_q(m,k) = q^{C(k,2)} S̃_q(m,k)` and both specialize to `S(m,k)` at `q = 1`.
    consistent: bool,
}

#[derive(Serialize)]
struct StirlingReport {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    entries: Vec<StirlingEntry>,
    change_of_basis: ChangeOfBasisReport,
    all_pass: bool,
}

fn stirling(n: usize, q: Option<u32>) -> Result<Output> {
    if let Some(p) = q {
        crate::fqlinalg::check_prime(p)?;
    }
    let change_of_basis = verify_change_of_basis(n)?;
    let mut entries = Vec::new();
    for m in 0..=n {
        for k in 0..=m {
            let s = stirling2(m, k);
            let s_q = q_stirling(m, k, StirlingVariant::Plain);
            let s_tilde = q_stirling(m, k, StirlingVariant::Tilde);
            let consistent = s_q == &s_tilde * &QPoly::q_pow(k * k.saturating_sub(1) / 2)
                && s_q.eval(1) == s
                && s_tilde.eval(1) == s;
            entries.push(StirlingEntry {
                m,
                k,
                s,
                s_q_at: q.map(|p| s_q.eval(p as i128)),
                s_tilde_at: q.map(|p| s_tilde.eval(p as i128)),
                s_q,
                s_tilde,
                consistent,
            });
        }
    }
    let all_pass = change_of_basis.all_pass && entries.iter().all(|e| e.consistent);
    let mut header = vec!["m", "k", "S", "S_q", "S~_q"];
    if q.is_some() {
        header.extend(["S_q at q", "S~_q at q"]);
    }
    let mut table = Table::new(header);
    for e in &entries {
        let mut row = vec![e.m.to_string(), e.k.to_string(), e.s.to_string(), e.s_q.to_string(), e.s_tilde.to_string()];
        if let (Some(a), Some(b)) = (e.s_q_at, e.s_tilde_at) {
            row.extend([a.to_string(), b.to_string()]);
        }
        table.push(row);
    }
    let report = StirlingReport { n, q, entries, change_of_basis, all_pass };
    let mut out = Output::new(&report, table, all_pass);
    for row in &report.change_of_basis.rows {
        let ok = row.classical && row.tilde && row.laurent;
        out.summary.push(format!("t^{} in falling factorials: {}", row.n, Output::verdict(ok)));
    }
    Ok(out)
}

fn minpoly(n: usize, q: Option<u32>) -> Result<Output> {
    let report = minpoly_verify(n, q)?;
    let mut table = Table::new(["deleted root", "remaining factor annihilates"]);
    for d in &report.deletions {
        table.push([d.root.to_string(), d.annihilates.to_string()]);
    }
    let mut out = Output::new(&report, table, report.pass);
    out.summary.push(report.to_string());
    out.summary_only = true;
    Ok(out)
}

fn spectrum(n: usize, q: Option<u32>, space: Space) -> Result<Output> {
    let report = spectral_report(n, q, space)?;
    let with_schur = report.eigenvalues.iter().any(|e| e.schur.is_some());
    let mut header = vec!["j", "eigenvalue", "dim", "predicted"];
    if with_schur {
        header.extend(["schur", "predicted schur"]);
    }
    header.push("pass");
    let mut table = Table::new(header);
    for e in &report.eigenvalues {
        let mut row = vec![e.j.to_string(), e.eigenvalue.to_string(), e.dim.to_string(), e.predicted_dim.to_string()];
        if with_schur {
            let show = |s: &Option<SchurVector>| s.as_ref().map_or(String::new(), ToString::to_string);
            row.extend([show(&e.schur), show(&e.predicted_schur)]);
        }
        row.push(Output::verdict(e.pass).to_string());
        table.push(row);
    }
    let mut out = Output::new(&report, table, report.all_pass);
    out.summary.push(format!(
        "{} n={}{} {}: dimension {}, {}",
        report.monoid,
        report.n,
        report.q.map_or(String::new(), |p| format!(" q={p}")),
        report.space,
        report.total_dim,
        Output::verdict(report.all_pass)
    ));
    Ok(out)
}

#[derive(Serialize)]
struct DsfEntry {
    definition: DsfDefinition,
    #[serde(skip_serializing_if = "Option::is_none")]
    schur: Option<SchurVector>,
    qsym: QSymVector,
}

#[derive(Serialize)]
struct DsfReport {
    n: usize,
    derangements: i128,
    entries: Vec<DsfEntry>,
    /// The Schur forms agree and have dimension `d_n`.
    schur_agree: bool,
    qsym_agree: bool,
    all_pass: bool,
}

fn dsf(n: usize, defs: &[DsfDefinition]) -> Result<Output> {
    if defs.is_empty() {
        return Err(Error::InvalidArgument("--defs needs at least one definition".into()));
    }
    let defs: BTreeSet<DsfDefinition> = defs.iter().copied().collect();
    let entries = defs
        .iter()
        .map(|&def| {
            let schur = if def.has_schur_form() { Some(derangement_sf(n, def)?) } else { None };
            Ok(DsfEntry { definition: def, schur, qsym: derangement_qsym(n, def)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let derangements = derangement_number(n);
    let schurs: Vec<&SchurVector> = entries.iter().filter_map(|e| e.schur.as_ref()).collect();
    let schur_agree = schurs.windows(2).all(|w| w[0] == w[1]) && schurs.iter().all(|s| s.dimension() == derangements);
    let qsym_agree = entries.windows(2).all(|w| w[0].qsym == w[1].qsym);
    let all_pass = schur_agree && qsym_agree;
    let mut table = Table::new(["definition", "schur", "quasisymmetric"]);
    for e in &entries {
        table.push([
            e.definition.to_string(),
            e.schur.as_ref().map_or(String::new(), ToString::to_string),
            e.qsym.to_string(),
        ]);
    }
    let report = DsfReport { n, derangements, entries, schur_agree, qsym_agree, all_pass };
    let mut out = Output::new(&report, table, all_pass);
    out.summary.push(format!(
        "n={n}: Schur forms {}, quasisymmetric forms {}, {}",
        if schur_agree { "agree" } else { "differ" },
        if qsym_agree { "agree" } else { "differ" },
        Output::verdict(all_pass)
    ));
    Ok(out)
}

fn rtt(n: usize) -> Result<Output> {
    let report = random_to_top(n)?;
    let mut table = Table::new(["eigenvalue", "multiplicity", "predicted", "pass"]);
    for e in &report.eigenvalues {
        table.push([
            e.eigenvalue.to_string(),
            e.multiplicity.to_string(),
            e.predicted.to_string(),
            Output::verdict(e.pass).to_string(),
        ]);
    }
    let mut out = Output::new(&report, table, report.all_pass);
    out.summary.push(format!(
        "{} orderings; column stochastic: {}; uniform stationary distribution: {}; {}",
        report.dim,
        report.column_stochastic,
        report.stationary_uniform,
        Output::verdict(report.all_pass)
    ));
    Ok(out)
}

fn verify(grid: &VerificationGrid) -> Result<Output> {
    let report = run_grid(grid)?;
    let mut table = Table::new(["criterion", "label", "expected", "actual", "pass"]);
    for c in &report.criteria {
        for check in &c.checks {
            table.push([
                c.id.to_string(),
                check.label.clone(),
                check.expected.to_string(),
                check.actual.to_string(),
                Output::verdict(check.pass).to_string(),
            ]);
        }
    }
    let mut out = Output::new(&report, table, report.all_pass);
    out.summary_only = true;
    for c in &report.criteria {
        out.summary.push(format!(
            "criterion {:>2} ({}): {} checks, {}",
            c.id,
            c.name,
            c.checks.len(),
            Output::verdict(c.pass)
        ));
        for f in c.failures() {
            out.summary.push(format!("    {}: expected {}, got {}", f.label, f.expected, f.actual));
        }
    }
    out.summary.push(format!("verify: {}", Output::verdict(report.all_pass)));
    if !report.all_pass {
        out.failures = Some(serde_json::to_value(report.failures_only()).expect("reports serialize"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("lrb").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn minpoly_line() {
        let (code, out, _) = run_str(&["minpoly", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "X(X-1)(X-2)(X-3): minimal — PASS\n");
        let (code, out, _) = run_str(&["minpoly", "--n", "2", "--q", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "X(X-1)(X-3): minimal — PASS\n");
    }

    #[test]
    fn spectrum_json_envelope() {
        let (code, out, _) = run_str(&["spectrum", "--n", "2", "--space", "full", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(v["timestamp"], Value::Null);
        assert_eq!(v["invocation"], json!(["spectrum", "--n", "2", "--space", "full", "--format", "json"]));
        assert_eq!(v["eigenvalues"][0]["schur"], "s(2)+s(1,1)");
        assert_eq!(v["space"], "full");
    }

    #[test]
    fn bad_arguments_exit_2() {
        assert_eq!(run_str(&["spectrum", "--n", "2", "--space", "sideways"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["minpoly", "--n", "2", "--q", "4"]).0, 2);
        let (code, _, err) = run_str(&["minpoly", "--n", "9"]);
        assert_eq!(code, 2);
        assert!(err.contains("guard"), "{err}");
        assert_eq!(run_str(&["dsf", "--n", "3", "--defs", "Z"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn deterministic_output() {
        let args = ["invariants", "--n", "3", "--q", "2", "--seed", "7", "--format", "json"];
        let first = run_str(&args);
        assert_eq!(first.0, 0, "{}", first.2);
        assert_eq!(first, run_str(&args));
    }

    #[test]
    fn csv_and_timestamp() {
        let (code, out, _) = run_str(&["rtt", "--n", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("eigenvalue,multiplicity,predicted,pass"));
        assert!(out.contains("2/3,0,0,PASS"));
        let (_, out, _) = run_str(&["rtt", "--n", "2", "--format", "json", "--timestamp"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["timestamp"].is_string());
    }

    #[test]
    fn other_subcommands() {
        let (code, out, _) = run_str(&["dsf", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("s(3,1)+s(2,2)+s(2,1,1)+s(1,1,1,1)"), "{out}");
        let (code, out, _) = run_str(&["stirling", "--n", "4", "--q", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("t^4 in falling factorials: PASS"));
        let (code, out, _) = run_str(&["invariants", "--n", "3"]);
        assert_eq!(code, 0, "{out}");
        let (code, _, _) = run_str(&["verify", "--checks", "10,11", "--format", "json"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn out_file() {
        let dir = std::env::temp_dir().join(format!("lrb-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("spectrum.csv");
        let (code, out, _) = run_str(&[
            "spectrum",
            "--n",
            "3",
            "--space",
            "chamber",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        let written = std::fs::read_to_string(&path).unwrap();
        assert!(
            written.starts_with("j,eigenvalue,dim,predicted,schur,predicted schur,pass\n0,0,2,2,\"s(2,1)\""),
            "{written}"
        );
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
