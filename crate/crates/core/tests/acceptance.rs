//! Acceptance suite: one test per criterion over the reference instance
//! a = b = −1, all assertions exact. Each test prints its own pass/fail
//! line (visible with --nocapture) before asserting.

use wittconic::arith::{QuadExt, Rational};
use wittconic::conic::ConicInstance;
use wittconic::error::Result;
use wittconic::field::Field;
use wittconic::forms::{SymmetricForm, WittVerdict};
use wittconic::linalg;
use wittconic::rng::SplitMix64;
use wittconic::suite::{run_suite, SuiteConfig, SuiteReport};

fn reference_config(suites: &[&str]) -> SuiteConfig {
    SuiteConfig {
        a: Rational::from_int(-1),
        b: Rational::from_int(-1),
        seed: 0,
        trials: 20,
        suites: suites.iter().map(|s| s.to_string()).collect(),
        ..Default::default()
    }
}

fn report_line(criterion: &str, passed: bool, detail: &str) {
    println!(
        "{criterion}: {} - {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
}

fn run_and_assert(criterion: &str, suite: &str, detail: &str) {
    let report = run_suite(&reference_config(&[suite])).expect("suite runs");
    let passed = report.passed();
    report_line(criterion, passed, detail);
    if !passed {
        for f in report.failures() {
            println!("  failed: {}/{}: {}", f.suite, f.name, f.detail);
        }
    }
    assert!(passed, "{criterion} failed");
}

fn records_passed(report: &SuiteReport, names: &[&str]) -> bool {
    names.iter().all(|n| {
        report
            .records
            .iter()
            .find(|r| r.name == *n)
            .map(|r| r.passed)
            .unwrap_or(false)
    })
}

#[test]
fn criterion_01_algebraic_identities() {
    run_and_assert(
        "criterion 1 (algebraic identities)",
        "algebraic-identities",
        "e-relations identical in F; fiber identities at 5 points x 100 trials, exact",
    );
}

#[test]
fn criterion_02_coherent_functional() {
    run_and_assert(
        "criterion 2 (coherent functional)",
        "coherence",
        "s(1)=0, s(theta)=1 at p0; triangle on spanning sets; 20 scalar-unit invariance cases each",
    );
}

#[test]
fn criterion_03_nullity() {
    run_and_assert(
        "criterion 3 (nullity)",
        "nullity",
        "corpus {x, y, 1+y, x*y, 3 random products} certified; f = x gives <ij> and <-ij>",
    );
    // Independent re-verification of a shipped certificate.
    let conic = wittconic::conic::make_conic(Rational::from_int(-1), Rational::from_int(-1))
        .unwrap();
    let f = conic.x().mul(&conic.y());
    let report = wittconic::residues::nullity_certify(&conic, &f).unwrap();
    assert!(report.total_form.verify_lagrangian(&report.lagrangian));
}

#[test]
fn criterion_04_surjectivity() {
    run_and_assert(
        "criterion 4 (surjectivity)",
        "surjectivity",
        "50 seeded pure quaternions of height <= 10 solved with exact Gram equality",
    );
}

#[test]
fn criterion_05_sequence_13() {
    run_and_assert(
        "criterion 5 (sequence 1.3 instances)",
        "sequence13",
        "delta'(rho<q>) trivial for 5 named q; reciprocity into W(D) for 20 psi; 10 ext_D witnesses",
    );
}

#[test]
fn criterion_06_sequence_12() {
    let report = run_suite(&reference_config(&["sequence12"])).expect("suite runs");
    let passed = records_passed(
        &report,
        &[
            "delta-ext-f-vanishes",
            "norm-form-hyperbolic-over-f",
            "s-d-ext-d-is-norm-multiplication",
        ],
    );
    report_line(
        "criterion 6 (sequence 1.2 instances)",
        passed,
        "delta(ext_F(phi)) = 0 for 20 seeded phi; norm form split from (y, x, 1, 0); n_D multisets",
    );
    assert!(passed);
}

#[test]
fn criterion_07_octagon() {
    run_and_assert(
        "criterion 7 (octagon)",
        "octagon",
        "all 8 consecutive composites vanish; W-(D) targets carry verified Lagrangians",
    );
}

#[test]
fn criterion_08_commuting_diagrams() {
    run_and_assert(
        "criterion 8 (commuting diagrams)",
        "morita",
        "t_inf = sigma2 . Psi on 20 generators; pi1 . t_p = Theta . (s_p)_* entrywise at 3 points",
    );
}

#[test]
fn criterion_10_lifting() {
    let report = run_suite(&reference_config(&["sequence12"])).expect("suite runs");
    let passed = records_passed(&report, &["lifting-into-delta-image"]);
    report_line(
        "criterion 10 (lifting)",
        passed,
        "10 seeded (lambda, u) pairs reproduce their residue vectors; auxiliary residues vanish",
    );
    assert!(passed);
}

// ---------------------------------------------------------------------------
// Criterion 9: the decision engine against an independent brute-force oracle.

/// Brute-force Witt-zero oracle for diagonal forms with small integer
/// entries, dimension <= 4. Integer isotropy search plus exact plane
/// splitting; completely independent of the Hasse-invariant machinery.
fn oracle_witt_zero(diag: &[i64]) -> bool {
    match diag.len() {
        0 => true,
        2 => neg_product_is_square(Rational::from_int(diag[0]), Rational::from_int(diag[1])),
        4 => {
            for bound in [4i64, 8, 16, 32] {
                if let Some(v) = isotropic_vector(diag, bound) {
                    return complement_is_hyperbolic(diag, &v);
                }
            }
            false
        }
        _ => false, // odd ranks are never Witt-zero
    }
}

fn neg_product_is_square(a: Rational, b: Rational) -> bool {
    wittconic::arith::is_square_rational(&-&(&a * &b))
}

fn isotropic_vector(diag: &[i64], bound: i64) -> Option<Vec<i64>> {
    for x0 in 0..=bound {
        for x1 in -bound..=bound {
            for x2 in -bound..=bound {
                for x3 in -bound..=bound {
                    if x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0 {
                        continue;
                    }
                    let q = diag[0] * x0 * x0
                        + diag[1] * x1 * x1
                        + diag[2] * x2 * x2
                        + diag[3] * x3 * x3;
                    if q == 0 {
                        return Some(vec![x0, x1, x2, x3]);
                    }
                }
            }
        }
    }
    None
}

/// With v isotropic, the class equals that of the rank-2 complement of the
/// hyperbolic plane through v; a binary form is Witt-zero iff −det is square.
fn complement_is_hyperbolic(diag: &[i64], v: &[i64]) -> bool {
    let form = SymmetricForm::from_diagonal(
        &diag.iter().map(|&d| Rational::from_int(d)).collect::<Vec<_>>(),
    );
    let vr: Vec<Rational> = v.iter().map(|&c| Rational::from_int(c)).collect();
    // Partner u with B(v, u) != 0.
    let n = 4;
    let mut partner = None;
    for idx in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[idx] = Rational::one();
        if !form.pairing(&vr, &e).is_zero() {
            partner = Some(e);
            break;
        }
    }
    let u = partner.expect("nondegenerate");
    let rows = vec![
        (0..n)
            .map(|idx| {
                let mut e = vec![Rational::zero(); n];
                e[idx] = Rational::one();
                form.pairing(&vr, &e)
            })
            .collect::<Vec<_>>(),
        (0..n)
            .map(|idx| {
                let mut e = vec![Rational::zero(); n];
                e[idx] = Rational::one();
                form.pairing(&u, &e)
            })
            .collect::<Vec<_>>(),
    ];
    let comp = linalg::kernel(&rows);
    assert_eq!(comp.len(), 2);
    let g11 = form.pairing(&comp[0], &comp[0]);
    let g12 = form.pairing(&comp[0], &comp[1]);
    let g22 = form.pairing(&comp[1], &comp[1]);
    let det = &(&g11 * &g22) - &(&g12 * &g12);
    wittconic::arith::is_square_rational(&-&det)
}

#[test]
fn criterion_09_decision_engine_soundness() {
    let entries = [1i64, -1, 2, -2, 3, -3, 5, -5, 6, -6];
    let mut rng = SplitMix64::for_check(0, "acceptance/criterion-9");
    let mut zero_count = 0;
    let mut mismatch = None;
    for trial in 0..100 {
        let dim = if rng.below(2) == 0 { 2 } else { 4 };
        let diag: Vec<i64> = (0..dim)
            .map(|_| entries[rng.below(entries.len() as u64) as usize])
            .collect();
        let form = SymmetricForm::from_diagonal(
            &diag.iter().map(|&d| Rational::from_int(d)).collect::<Vec<_>>(),
        );
        let verdict = wittconic::forms::witt_zero_q(&form).expect("decision");
        let oracle = oracle_witt_zero(&diag);
        if verdict.is_zero() != oracle {
            mismatch = Some(format!("trial {trial}: {diag:?} impl={} oracle={oracle}", verdict.is_zero()));
            break;
        }
        if oracle {
            zero_count += 1;
        }
        // Certificates re-verify: decisions are pure, so re-running must
        // reproduce the verdict; Lagrangian-style certificates are checked
        // structurally where they occur.
        match verdict {
            WittVerdict::Zero(_) => assert!(wittconic::forms::witt_zero_q(&form).unwrap().is_zero()),
            WittVerdict::NonZero(_) => {
                assert!(wittconic::forms::witt_zero_q(&form).unwrap().is_nonzero())
            }
            WittVerdict::Unknown(_) => panic!("complete decision returned unknown"),
        }
    }
    // Structured draws exercise the Witt-zero side of the oracle harder:
    // shapes ⟨c, −c, d, −d⟩ and ⟨c, d, −cd-scaled⟩ are often hyperbolic.
    let mut structured_zeros = 0;
    for trial in 0..40 {
        let c = entries[rng.below(entries.len() as u64) as usize];
        let d = entries[rng.below(entries.len() as u64) as usize];
        let diag = if trial % 2 == 0 {
            vec![c, -c, d, -d]
        } else {
            vec![c, d, -c, -d]
        };
        let form = SymmetricForm::from_diagonal(
            &diag.iter().map(|&n| Rational::from_int(n)).collect::<Vec<_>>(),
        );
        let verdict = wittconic::forms::witt_zero_q(&form).expect("decision");
        let oracle = oracle_witt_zero(&diag);
        if verdict.is_zero() != oracle {
            mismatch = Some(format!(
                "structured trial {trial}: {diag:?} impl={} oracle={oracle}",
                verdict.is_zero()
            ));
            break;
        }
        if oracle {
            structured_zeros += 1;
        }
    }
    let passed = mismatch.is_none();
    report_line(
        "criterion 9 (decision-engine soundness)",
        passed,
        &format!(
            "100 random + 40 structured forms vs brute-force isotropy oracle \
             ({zero_count} + {structured_zeros} hyperbolic)"
        ),
    );
    if let Some(m) = mismatch {
        panic!("{m}");
    }
    // A hand-checked Lagrangian certificate re-verifies independently.
    let conic = wittconic::conic::make_conic(Rational::from_int(-1), Rational::from_int(-1))
        .unwrap();
    let report = wittconic::residues::nullity_certify(&conic, &conic.x()).unwrap();
    assert!(report.total_form.verify_lagrangian(&report.lagrangian));
    assert!(matches!(report.verdict, WittVerdict::Zero(_)));
}

// ---------------------------------------------------------------------------
// The full reference campaign must pass end to end.

#[test]
fn full_reference_campaign() {
    let cfg = reference_config(&[]);
    let report = run_suite(&cfg).expect("runs");
    let passed = report.passed();
    report_line(
        "full campaign (all nine suites, a = b = -1, seed 0)",
        passed,
        &format!("{} checks", report.records.len()),
    );
    if !passed {
        println!("{}", report.render(false));
    }
    assert!(passed);
    // Byte-identical determinism.
    let report2 = run_suite(&cfg).expect("runs");
    assert_eq!(report.render(false), report2.render(false));
}

// ---------------------------------------------------------------------------
// Spot checks of frozen values used throughout the criteria.

#[test]
fn frozen_reference_values() {
    let conic: ConicInstance =
        wittconic::conic::make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap();
    let alg = wittconic::quaternion::algebra_q(&conic);
    let p0 = wittconic::residues::point_x_zero(&conic);
    let pair = wittconic::conic::coherent_functional(&p0).unwrap();
    let theta = QuadExt::generator(&Rational::from_int(-1));
    // t_p0(<1>) = <ij>, t_p0(<theta>) = <-i>, t_inf(<1>) = <-ij>, t_inf(<theta>) = <j>
    let check: Result<bool> = (|| {
        let one = QuadExt::one(&Rational::from_int(-1));
        Ok(
            wittconic::residues::transfer_tp_rank_one(&conic, &pair, &one)? == alg.ij()
                && wittconic::residues::transfer_tp_rank_one(&conic, &pair, &theta)?
                    == alg.i().neg()
                && wittconic::residues::transfer_tinfty_rank_one(&conic, &one) == alg.ij().neg()
                && wittconic::residues::transfer_tinfty_rank_one(&conic, &theta) == alg.j(),
        )
    })();
    let passed = check.unwrap_or(false);
    report_line(
        "frozen transfer values",
        passed,
        "t_p0(<1>)=<ij>, t_p0(<theta>)=<-i>, t_inf(<1>)=<-ij>, t_inf(<theta>)=<j>",
    );
    assert!(passed);
}
