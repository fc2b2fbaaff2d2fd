//! One PASS/FAIL line per acceptance criterion. Each criterion runs its
//! part of the verification grid (extended flag case included) plus a few
//! values frozen by hand or by brute-force enumeration outside this crate.

use std::process::ExitCode;
use std::time::Instant;

use lrb_core::cli::{run_criterion, VerificationGrid, CRITERIA};
use lrb_core::exactalg::Rat;
use lrb_core::lrb::verify_remark_monoids;
use lrb_core::lrb::{FlagMonoid, WordMonoid};
use lrb_core::qnums::{q_binomial, q_derangement, q_factorial, QPoly};
use lrb_core::spectra::{
    eigenspace_dimensions, eigenspace_schur, filtration_decomposition, minpoly_verify, power_expansion,
    verify_operator_identities, Space,
};
use lrb_core::symfun::{derangement_qsym, derangement_sf, DsfDefinition};

type Frozen = Vec<(&'static str, Result<bool, String>)>;

fn check<T: PartialEq + std::fmt::Debug>(got: lrb_core::Result<T>, want: T) -> Result<bool, String> {
    match got {
        Ok(g) if g == want => Ok(true),
        Ok(g) => Err(format!("expected {want:?}, got {g:?}")),
        Err(e) => Err(e.to_string()),
    }
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_int(x)).collect()
}

fn frozen(id: u8) -> Frozen {
    match id {
        1 => vec![
            (
                "words n=3 polynomial",
                check(minpoly_verify(3, None).map(|r| r.to_string()), "X(X-1)(X-2)(X-3): minimal — PASS".into()),
            ),
            ("flags n=2 p=2 polynomial", check(minpoly_verify(2, Some(2)).map(|r| r.polynomial), "X(X-1)(X-3)".into())),
            (
                "flags n=4 p=2 polynomial",
                check(minpoly_verify(4, Some(2)).map(|r| r.polynomial), "X(X-1)(X-3)(X-7)(X-15)".into()),
            ),
        ],
        2 => vec![
            ("x^4 for n=6", check(power_expansion(&WordMonoid::new(6), 4), ints(&[0, 1, 7, 6, 1, 0, 0]))),
            (
                "(x^(2))^3 for n=3",
                check(
                    FlagMonoid::new(3, 2).and_then(|m| power_expansion(&m, 3)).map(|c| c[3].clone()),
                    Rat::from_int(8),
                ),
            ),
        ],
        3 => vec![
            ("n=4", check(eigenspace_dimensions(4, None, Space::Chamber), vec![9, 8, 6, 0, 1])),
            ("n=3", check(eigenspace_dimensions(3, None, Space::Chamber), vec![2, 3, 0, 1])),
            ("n=6 kernel", check(eigenspace_dimensions(6, None, Space::Chamber).map(|d| d[0]), 265)),
        ],
        4 => vec![
            ("n=2 p=2", check(eigenspace_dimensions(2, Some(2), Space::Chamber), vec![2, 0, 1])),
            ("n=4 p=2", check(eigenspace_dimensions(4, Some(2), Space::Chamber), vec![154, 90, 70, 0, 1])),
        ],
        5 => vec![
            ("n=2 j=0", check(eigenspace_schur(2, 0, Space::Full).map(|s| s.to_string()), "s(2)+s(1,1)".into())),
            (
                "n=3 j=1",
                check(eigenspace_schur(3, 1, Space::Full).map(|s| s.to_string()), "s(3)+2s(2,1)+s(1,1,1)".into()),
            ),
            ("n=3 chamber j=0", check(eigenspace_schur(3, 0, Space::Chamber).map(|s| s.to_string()), "s(2,1)".into())),
        ],
        6 => vec![
            ("n=2 p=2", check(eigenspace_dimensions(2, Some(2), Space::Full), vec![3, 3, 1])),
            (
                "n=4 p=2 total",
                check(eigenspace_dimensions(4, Some(2), Space::Full).map(|d| d.iter().sum::<i128>()), 751),
            ),
        ],
        7 => vec![
            (
                "𝔡_4",
                check(
                    derangement_sf(4, DsfDefinition::B).map(|s| s.to_string()),
                    "s(3,1)+s(2,2)+s(2,1,1)+s(1,1,1,1)".into(),
                ),
            ),
            ("𝔡_3 by (G)", check(derangement_qsym(3, DsfDefinition::G).map(|s| s.to_string()), "L{1}+L{2}".into())),
        ],
        8 => vec![(
            "n=3 Ψ ranks",
            check(
                verify_operator_identities(3, None).map(|r| r.rows.iter().map(|row| row.psi_rank).collect()),
                vec![2, 3, 0, 1],
            ),
        )],
        9 => vec![
            ("(3)·(1,2) ≡ 0", check(filtration_decomposition(3, None).map(|r| r.annihilation_example), Some(true))),
            ("n=3 ℓ=2 blocks", check(filtration_decomposition(3, None).map(|r| r.strata[2].blocks), 3)),
        ],
        10 => vec![(
            "[4]!_q",
            check(
                Ok::<_, lrb_core::Error>((0..=4).map(|j| &q_derangement(4 - j) * &q_binomial(4, j)).sum::<QPoly>()),
                q_factorial(4),
            ),
        )],
        11 => vec![(
            "fiber count ℓ=2 p=2 over 3 flags",
            check(
                verify_remark_monoids(2, Some(2))
                    .map(|r| r.checks.iter().find(|c| c.name == "fiber count" && c.ell == 2).map(|c| c.actual.clone())),
                Some(ints(&[2, 3])),
            ),
        )],
        _ => Vec::new(),
    }
}

fn main() -> ExitCode {
    let grid = VerificationGrid::extended();
    let mut all_pass = true;
    for (id, name) in CRITERIA {
        let start = Instant::now();
        let mut problems = Vec::new();
        let mut count = 0;
        match run_criterion(id, &grid) {
            Ok(checks) => {
                count += checks.len();
                for c in checks.iter().filter(|c| !c.pass) {
                    problems.push(format!("{}: expected {}, got {}", c.label, c.expected, c.actual));
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        for (label, result) in frozen(id) {
            count += 1;
            match result {
                Ok(true) => {}
                Ok(false) => problems.push(format!("{label}: failed")),
                Err(e) => problems.push(format!("{label}: {e}")),
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        all_pass &= problems.is_empty();
        println!("{verdict} criterion {id:>2} ({name}): {count} checks in {:.1?}", start.elapsed());
        for p in problems {
            println!("     {p}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
