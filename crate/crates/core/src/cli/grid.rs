//! The verification grid behind `lrb verify` and the acceptance target.
//! Each criterion becomes a list of checks carrying the expected and the
//! computed value side by side.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lrb::{verify_remark_monoids, FlagMonoid, WordMonoid};
use crate::qnums::{
    binomial, derangement_number, factorial, q_binomial, q_derangement, q_factorial, q_int, verify_change_of_basis,
    QPoly,
};
use crate::spectra::{
    filtration_decomposition, flag_algebra_size, minpoly_verify, power_expansion, predicted_dimension,
    predicted_power_expansion, predicted_schur, render_polynomial, spectral_report, verify_operator_identities,
    word_spectrum, Space, IDENTITY_FLAGS_GUARD, IDENTITY_WORDS_GUARD,
};
use crate::symfun::{
    classfn_to_schur, derangement_qsym, derangement_sf, h1_power, pieri_h, DsfDefinition, SchurVector,
};

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "minimal polynomials"),
    (2, "Stirling expansions"),
    (3, "chamber spectrum, words"),
    (4, "chamber spectrum, flags"),
    (5, "full-algebra Schur images, words"),
    (6, "full-algebra dimensions, flags"),
    (7, "derangement symmetric function equivalences"),
    (8, "operator identities"),
    (9, "filtration"),
    (10, "identities battery"),
    (11, "remark monoids"),
];

/// Which part of the grid to run. Bounds that a criterion fixes on its own
/// (chamber words up to 6, derangement functions up to 7, and so on) are
/// not configurable; `n_max_words` and `n_max_flags` cap the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationGrid {
    pub n_max_words: usize,
    pub n_max_flags: usize,
    pub primes: Vec<u32>,
    pub checks: Vec<u8>,
    /// Adds `n = 4, p = 2` to the flag spectrum criteria.
    pub extended: bool,
}

impl Default for VerificationGrid {
    fn default() -> Self {
        VerificationGrid {
            n_max_words: IDENTITY_WORDS_GUARD,
            n_max_flags: IDENTITY_FLAGS_GUARD,
            primes: vec![2, 3],
            checks: CRITERIA.iter().map(|&(id, _)| id).collect(),
            extended: false,
        }
    }
}

impl VerificationGrid {
    pub fn extended() -> Self {
        VerificationGrid { extended: true, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max_words > IDENTITY_WORDS_GUARD {
            return Err(Error::GuardExceeded(format!(
                "the grid allows words up to n = {IDENTITY_WORDS_GUARD}, got {}",
                self.n_max_words
            )));
        }
        if self.n_max_flags > IDENTITY_FLAGS_GUARD {
            return Err(Error::GuardExceeded(format!(
                "the grid allows flags up to n = {IDENTITY_FLAGS_GUARD}, got {}",
                self.n_max_flags
            )));
        }
        for &p in &self.primes {
            if p != 2 && p != 3 {
                return Err(Error::InvalidArgument(format!("the grid runs over p ∈ {{2, 3}}, got {p}")));
            }
        }
        if let Some(bad) = self.checks.iter().find(|c| !(1..=11).contains(*c)) {
            return Err(Error::InvalidArgument(format!("no criterion {bad}; criteria are 1..=11")));
        }
        Ok(())
    }

    fn flag_cases(&self) -> Vec<(usize, u32)> {
        let mut cases: Vec<(usize, u32)> =
            self.primes.iter().flat_map(|&p| (1..=self.n_max_flags).map(move |n| (n, p))).collect();
        if self.extended && self.primes.contains(&2) {
            cases.push((4, 2));
        }
        cases.sort_unstable_by_key(|&(n, p)| (p, n));
        cases
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    /// Passes when both sides serialize to the same JSON.
    pub fn equal(label: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
        let (expected, actual) = (to_value(expected), to_value(actual));
        let pass = expected == actual;
        Check { label: label.into(), expected, actual, pass }
    }

    fn failed(label: impl Into<String>, expected: impl Serialize, err: &Error) -> Self {
        Check {
            label: label.into(),
            expected: to_value(expected),
            actual: json!({ "error": err.to_string() }),
            pass: false,
        }
    }

    /// Runs `f`; an error becomes a failing check instead of aborting the grid.
    fn guarded(label: impl Into<String>, expected: impl Serialize, f: impl FnOnce() -> Result<Value>) -> Self {
        let label = label.into();
        match f() {
            Ok(actual) => Check::equal(label, expected, actual),
            Err(e) => Check::failed(label, expected, &e),
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl CriterionReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub grid: VerificationGrid,
    pub criteria: Vec<CriterionReport>,
    pub all_pass: bool,
}

impl VerifyReport {
    /// The same report restricted to failing checks.
    pub fn failures_only(&self) -> VerifyReport {
        let criteria = self
            .criteria
            .iter()
            .filter(|c| !c.pass)
            .map(|c| CriterionReport { checks: c.failures().cloned().collect(), ..c.clone() })
            .collect();
        VerifyReport { grid: self.grid.clone(), criteria, all_pass: self.all_pass }
    }
}

/// Runs the selected criteria in order.
pub fn run_grid(grid: &VerificationGrid) -> Result<VerifyReport> {
    grid.validate()?;
    let criteria: Vec<CriterionReport> = CRITERIA
        .iter()
        .filter(|(id, _)| grid.checks.contains(id))
        .map(|&(id, name)| {
            run_criterion(id, grid).map(|checks| {
                let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
                CriterionReport { id, name, checks, pass }
            })
        })
        .collect::<Result<_>>()?;
    let all_pass = criteria.iter().all(|c| c.pass);
    Ok(VerifyReport { grid: grid.clone(), criteria, all_pass })
}

pub fn run_criterion(id: u8, grid: &VerificationGrid) -> Result<Vec<Check>> {
    Ok(match id {
        1 => minimal_polynomials(grid),
        2 => stirling_expansions(grid),
        3 => chamber_words(),
        4 => chamber_flags(grid),
        5 => full_words(grid),
        6 => full_flags(grid),
        7 => derangement_functions(),
        8 => operator_identities(grid),
        9 => filtration(grid),
        10 => identities_battery(),
        11 => remark_monoids(grid),
        other => return Err(Error::InvalidArgument(format!("no criterion {other}"))),
    })
}

fn minimal_polynomials(grid: &VerificationGrid) -> Vec<Check> {
    // The minimal polynomial criterion always covers n = 4 at p = 2.
    let mut cases: Vec<(usize, Option<u32>)> = (1..=grid.n_max_words).map(|n| (n, None)).collect();
    for &p in &grid.primes {
        let top = if p == 2 { 4 } else { grid.n_max_flags };
        cases.extend((1..=top).map(|n| (n, Some(p))));
    }
    cases
        .into_iter()
        .map(|(n, p)| {
            let expected = json!({ "annihilates": true, "minimal": true });
            Check::guarded(format!("{} {}", case_label(n, p), polynomial_for(n, p)), expected, || {
                let r = minpoly_verify(n, p)?;
                Ok(json!({ "annihilates": r.annihilates, "minimal": r.minimal }))
            })
        })
        .collect()
}

fn case_label(n: usize, p: Option<u32>) -> String {
    match p {
        None => format!("words n={n}"),
        Some(p) => format!("flags n={n} p={p}"),
    }
}

fn stirling_expansions(grid: &VerificationGrid) -> Vec<Check> {
    let mut checks = Vec::new();
    let words = WordMonoid::new(6);
    for m in 0..=6 {
        checks.push(Check::guarded(format!("words n=6 m={m}"), predicted_power_expansion(6, m, None), || {
            Ok(to_value(power_expansion(&words, m)?))
        }));
    }
    for &p in &grid.primes {
        for n in 1..=4 {
            let flags = match FlagMonoid::new(n, p) {
                Ok(f) => f,
                Err(e) => {
                    checks.push(Check::failed(case_label(n, Some(p)), Value::Null, &e));
                    continue;
                }
            };
            for m in 0..=n {
                checks.push(Check::guarded(
                    format!("flags n={n} p={p} m={m}"),
                    predicted_power_expansion(n, m, Some(p)),
                    || Ok(to_value(power_expansion(&flags, m)?)),
                ));
            }
        }
    }
    checks
}

fn dims_check(n: usize, p: Option<u32>, space: Space) -> Check {
    let label = format!("{} {space}", case_label(n, p));
    let expected: Result<Vec<i128>> = (0..=n).map(|j| predicted_dimension(n, j, p, space)).collect();
    let expected = match expected {
        Ok(e) => e,
        Err(e) => return Check::failed(label, Value::Null, &e),
    };
    Check::guarded(label, expected, || {
        let r = spectral_report(n, p, space)?;
        let total: i128 = r.eigenvalues.iter().map(|e| e.dim).sum();
        if total != r.total_dim as i128 {
            return Ok(
                json!({ "dims": r.eigenvalues.iter().map(|e| e.dim).collect::<Vec<_>>(), "total": total, "space_dim": r.total_dim }),
            );
        }
        Ok(to_value(r.eigenvalues.iter().map(|e| e.dim).collect::<Vec<_>>()))
    })
}

fn polynomial_for(n: usize, p: Option<u32>) -> String {
    let roots: Vec<i128> = (0..=n)
        .map(|j| match p {
            None => j as i128,
            Some(p) => q_int(j).eval(p as i128),
        })
        .collect();
    render_polynomial(&roots)
}

fn schur_check(n: usize, space: Space) -> Check {
    let label = format!("words n={n} {space} schur");
    let expected: Result<Vec<String>> = (0..=n).map(|j| predicted_schur(n, j, space).map(|s| s.to_string())).collect();
    let expected = match expected {
        Ok(e) => e,
        Err(e) => return Check::failed(label, Value::Null, &e),
    };
    Check::guarded(label, expected, || {
        let spectrum = word_spectrum(n, space, true)?;
        let images = spectrum
            .characters
            .iter()
            .map(|c| classfn_to_schur(c).map(|s| s.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok(to_value(images))
    })
}

fn chamber_words() -> Vec<Check> {
    (1..=6).flat_map(|n| [dims_check(n, None, Space::Chamber), schur_check(n, Space::Chamber)]).collect()
}

fn chamber_flags(grid: &VerificationGrid) -> Vec<Check> {
    grid.flag_cases().into_iter().map(|(n, p)| dims_check(n, Some(p), Space::Chamber)).collect()
}

/// The two example tables of eigenspace images, one row per `j` and one
/// cell per filtration stratum `ℓ = j..=n`, in this crate's printed form
/// (partitions in decreasing lexicographic order).
const EXAMPLE_TABLES: [(usize, &[&[&str]]); 2] = [
    (2, &[&["s(2)", "0", "s(1,1)"], &["s(2)+s(1,1)", "0"], &["s(2)"]]),
    (
        3,
        &[
            &["s(3)", "0", "s(2,1)+s(1,1,1)", "s(2,1)"],
            &["s(3)+s(2,1)", "0", "s(2,1)+s(1,1,1)"],
            &["s(3)+s(2,1)", "0"],
            &["s(3)"],
        ],
    ),
];

const EXAMPLE_ROWS: [(usize, &[&str]); 2] = [
    (2, &["s(2)+s(1,1)", "s(2)+s(1,1)", "s(2)"]),
    (3, &["s(3)+2s(2,1)+s(1,1,1)", "s(3)+2s(2,1)+s(1,1,1)", "s(3)+s(2,1)", "s(3)"]),
];

fn full_words(grid: &VerificationGrid) -> Vec<Check> {
    let mut checks: Vec<Check> =
        (1..=grid.n_max_words).flat_map(|n| [dims_check(n, None, Space::Full), schur_check(n, Space::Full)]).collect();
    for (n, rows) in EXAMPLE_TABLES {
        for (j, cells) in rows.iter().enumerate() {
            for (cell, l) in cells.iter().zip(j..=n) {
                checks.push(Check::guarded(format!("table n={n} j={j} ℓ={l}"), cell, || {
                    let spectrum = word_spectrum(n, Space::Stratum(l), true)?;
                    Ok(to_value(classfn_to_schur(&spectrum.characters[j])?.to_string()))
                }));
            }
        }
    }
    for (n, rows) in EXAMPLE_ROWS {
        checks.push(Check::guarded(format!("table n={n} rows"), rows, || {
            let spectrum = word_spectrum(n, Space::Full, true)?;
            let images = spectrum
                .characters
                .iter()
                .map(|c| classfn_to_schur(c).map(|s| s.to_string()))
                .collect::<Result<Vec<_>>>()?;
            Ok(to_value(images))
        }));
    }
    checks
}

fn full_flags(grid: &VerificationGrid) -> Vec<Check> {
    let mut checks = Vec::new();
    for (n, p) in grid.flag_cases() {
        checks.push(dims_check(n, Some(p), Space::Full));
        checks.push(Check::guarded(format!("flags n={n} p={p} total"), flag_algebra_size(n, p) as i128, || {
            let r = spectral_report(n, Some(p), Space::Full)?;
            Ok(to_value(r.eigenvalues.iter().map(|e| e.dim).sum::<i128>()))
        }));
    }
    checks
}

/// Entries of the desarrangement table, as printed there.
const DSF_TABLE: [(usize, &str); 3] = [(2, "s(1,1)"), (3, "s(2,1)"), (4, "s(1,1,1,1)+s(2,1,1)+s(2,2)+s(3,1)")];

fn derangement_functions() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 0..=7 {
        let reference = derangement_sf(n, DsfDefinition::A).map(|s| s.to_string());
        for def in [DsfDefinition::B, DsfDefinition::C, DsfDefinition::D] {
            let label = format!("n={n} schur A={def}");
            match &reference {
                Ok(r) => checks.push(Check::guarded(label, r, || Ok(to_value(derangement_sf(n, def)?.to_string())))),
                Err(e) => checks.push(Check::failed(label, Value::Null, e)),
            }
        }
        let reference = derangement_qsym(n, DsfDefinition::D).map(|s| s.to_string());
        for def in [DsfDefinition::E, DsfDefinition::F, DsfDefinition::G] {
            let label = format!("n={n} qsym D={def}");
            match &reference {
                Ok(r) => checks.push(Check::guarded(label, r, || Ok(to_value(derangement_qsym(n, def)?.to_string())))),
                Err(e) => checks.push(Check::failed(label, Value::Null, e)),
            }
        }
    }
    for (n, printed) in DSF_TABLE {
        let label = format!("table 𝔡_{n}");
        let check = SchurVector::parse(printed, n).and_then(|expected| {
            let actual = derangement_sf(n, DsfDefinition::D)?;
            Ok(Check {
                label: label.clone(),
                expected: json!(printed),
                actual: json!(actual.to_string()),
                pass: actual == expected,
            })
        });
        checks.push(check.unwrap_or_else(|e| Check::failed(label, printed, &e)));
    }
    checks
}

fn operator_identities(grid: &VerificationGrid) -> Vec<Check> {
    let mut cases: Vec<(usize, Option<u32>)> = (1..=grid.n_max_words).map(|n| (n, None)).collect();
    if grid.primes.contains(&2) {
        cases.extend((1..=grid.n_max_flags).map(|n| (n, Some(2))));
    }
    cases
        .into_iter()
        .map(|(n, p)| {
            let label = case_label(n, p);
            let expected: Result<Vec<Value>> = (0..=n)
                .map(|j| {
                    let d = predicted_dimension(n, j, p, Space::Chamber)?;
                    Ok(json!({ "j": j, "identity_failures": 0, "eigenvector_failures": 0, "psi_rank": d, "eigenspace_dim": d }))
                })
                .collect();
            match expected {
                Ok(expected) => Check::guarded(label, expected, || {
                    let r = verify_operator_identities(n, p)?;
                    Ok(to_value(
                        r.rows
                            .iter()
                            .map(|row| {
                                json!({
                                    "j": row.j,
                                    "identity_failures": row.identity_failures,
                                    "eigenvector_failures": row.eigenvector_failures,
                                    "psi_rank": row.psi_rank,
                                    "eigenspace_dim": row.eigenspace_dim,
                                })
                            })
                            .collect::<Vec<_>>(),
                    ))
                }),
                Err(e) => Check::failed(label, Value::Null, &e),
            }
        })
        .collect()
}

fn filtration(grid: &VerificationGrid) -> Vec<Check> {
    let mut cases: Vec<(usize, Option<u32>)> = (0..=4).map(|n| (n, None)).collect();
    if grid.primes.contains(&2) {
        cases.extend((1..=grid.n_max_flags).map(|n| (n, Some(2))));
    }
    let mut checks = Vec::new();
    for (n, p) in cases {
        let label = case_label(n, p);
        match filtration_decomposition(n, p) {
            Ok(r) => {
                let strata = |f: fn(&crate::spectra::StratumCheck) -> bool| r.strata.iter().all(f);
                checks.push(Check::equal(
                    label,
                    json!({ "block_diagonal": true, "blocks_match": true, "block_counts": true, "dims": r.full_dims }),
                    json!({
                        "block_diagonal": strata(|s| s.block_diagonal),
                        "blocks_match": strata(|s| s.blocks_match),
                        "block_counts": strata(|s| s.blocks as i128 == s.expected_blocks),
                        "dims": r.dims_from_blocks,
                    }),
                ));
                if let Some(ok) = r.annihilation_example {
                    checks.push(Check::equal(format!("words n={n} (3)·(1,2) ≡ 0"), true, ok));
                }
            }
            Err(e) => checks.push(Check::failed(label, Value::Null, &e)),
        }
    }
    checks
}

fn identities_battery() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 0..=7 {
        checks.push(Check::guarded(format!("h_1^{n} = Σ 𝔡_j h_(n-j)"), h1_power(n).to_string(), || {
            let sum = (0..=n).try_fold(SchurVector::zero(n), |acc, j| {
                acc.add(&pieri_h(&derangement_sf(j, DsfDefinition::C)?, n - j))
            })?;
            Ok(to_value(sum.to_string()))
        }));
    }
    for n in 0..=8 {
        let sum: i128 = (0..=n).map(|j| derangement_number(n - j) * binomial(n, j)).sum();
        checks.push(Check::equal(format!("{n}! = Σ d_(n-j) C(n,j)"), factorial(n), sum));
    }
    for n in 0..=6 {
        let sum: QPoly = (0..=n).map(|j| &q_derangement(n - j) * &q_binomial(n, j)).sum();
        checks.push(Check::equal(
            format!("[{n}]!_q = Σ d_(n-j)(q) qbin(n,j)"),
            q_factorial(n).to_string(),
            sum.to_string(),
        ));
    }
    match verify_change_of_basis(8) {
        Ok(r) => checks.extend(r.rows.iter().map(|row| {
            Check::equal(
                format!("t^{} change of basis", row.n),
                json!({ "classical": true, "tilde": true, "laurent": true }),
                json!({ "classical": row.classical, "tilde": row.tilde, "laurent": row.laurent }),
            )
        })),
        Err(e) => checks.push(Check::failed("change of basis", Value::Null, &e)),
    }
    checks
}

fn remark_monoids(grid: &VerificationGrid) -> Vec<Check> {
    let p = if grid.primes.contains(&2) { Some(2) } else { None };
    let mut checks = Vec::new();
    for n in 1..=3 {
        match verify_remark_monoids(n, p) {
            Ok(r) => checks.extend(r.checks.iter().map(|c| Check {
                label: format!("n={n} {} ℓ={}", c.name, c.ell),
                expected: to_value(&c.expected),
                actual: to_value(&c.actual),
                pass: c.pass,
            })),
            Err(e) => checks.push(Check::failed(case_label(n, p), Value::Null, &e)),
        }
    }
    checks
}
