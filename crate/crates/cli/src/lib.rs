//! Scenario drivers and report machinery for the `verify` command-line
//! front end. Each scenario executes a fixed sequence of checks against the
//! bundled fixtures (or operator-supplied overrides) and produces a
//! deterministic machine-readable report.

pub mod d12;
pub mod fixdata;
pub mod report;
pub mod s3;

use report::{Report, ReportBuilder, Status};
use serde_json::json;
use shadowcert_core::certify::stoll::{stoll_check, ExclusionVerdict};
use shadowcert_core::shadow::{parse_cover_file, Classification};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("singular fiber: {0}")]
    SingularFiber(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("{0}")]
    Parameter(String),
    #[error("io error: {0}")]
    Io(String),
}

/// Run the formal-engine checks for every cover in a fixture file.
pub fn run_shadow(text: &str, with_timings: bool, origin: &str) -> Result<Report, ScenarioError> {
    let covers = parse_cover_file(text).map_err(|e| ScenarioError::Fixture(e.to_string()))?;
    let scenario = json!({ "kind": "shadow", "fixture": origin });
    let mut rb = ReportBuilder::new(scenario, with_timings);
    for cover in &covers {
        rb.timed(|rb| {
            let name = cover.name.clone();
            match cover.rh_check() {
                Ok(()) => rb.push(
                    &format!("{name}.riemann-hurwitz"),
                    Status::Pass,
                    format!(
                        "2g-2 = {} = d(2g'-2) + deg R with d = {}, deg R = {}",
                        2 * cover.genus_src - 2,
                        cover.degree,
                        cover.deg_ram()
                    ),
                ),
                Err(e) => {
                    rb.push(&format!("{name}.riemann-hurwitz"), Status::Fail, e.to_string());
                    return;
                }
            }
            match cover.shadow() {
                Ok(s) => {
                    let class = match s.classification {
                        Classification::IdenticallyZero => "identically-zero",
                        Classification::PullbackClass => "pullback-class",
                        Classification::General => "general",
                    };
                    let zero_consistent = match s.classification {
                        Classification::IdenticallyZero => s.divisor.is_zero(),
                        _ => true,
                    };
                    rb.pass_check(
                        &format!("{name}.shadow"),
                        zero_consistent,
                        format!("D = {} [{class}]", s.divisor),
                    );
                }
                Err(e) => rb.push(&format!("{name}.shadow"), Status::Fail, e.to_string()),
            }
            match cover.shadow_pushforward() {
                Ok(pf) => rb.push(
                    &format!("{name}.pushforward"),
                    Status::Pass,
                    format!("closed form = term-by-term = {pf}"),
                ),
                Err(e) => rb.push(&format!("{name}.pushforward"), Status::Fail, e.to_string()),
            }
            if cover.galois {
                match cover.galois_identity_check() {
                    Ok(None) => rb.push(
                        &format!("{name}.galois-identity"),
                        Status::Pass,
                        "d(2g'-2)R - deg(R) phi*K' = (2g-2)R - deg(R)K under RH",
                    ),
                    Ok(Some(w)) => rb.push(
                        &format!("{name}.galois-identity"),
                        Status::Fail,
                        format!("mismatch witness {w}"),
                    ),
                    Err(e) => {
                        rb.push(&format!("{name}.galois-identity"), Status::Fail, e.to_string())
                    }
                }
            }
        });
    }
    Ok(rb.finish())
}

/// Run the exclusion-lemma computation; `list_text` is the operator's list
/// file when provided.
pub fn run_stoll(
    list_text: Option<&str>,
    with_timings: bool,
    origin: &str,
) -> Result<Report, ScenarioError> {
    let scenario = json!({ "kind": "stoll", "list": origin });
    let mut rb = ReportBuilder::new(scenario, with_timings);
    rb.timed(|rb| {
        let r = stoll_check(list_text);
        rb.pass_check(
            "legendre-normalization",
            r.psi_sends_v1_to_0 && r.psi_sends_v2_to_1,
            "the fractional linear map sends 2 to infinity, v1 to 0, v2 to 1",
        );
        rb.pass_check(
            "alpha-closed-form",
            r.alpha_matches_closed_form,
            "alpha = psi(1) = (c+z3)(c-z3)^2 / ((z3^2-z3) c (c-1))",
        );
        rb.pass_check(
            "beta-closed-form",
            r.beta_matches_closed_form,
            "beta = psi(-1) = (2z3+1)(c-z3)^3 / (9 c (c+1))",
        );
        rb.pass_check(
            "relation-vanishes",
            r.f_vanishes_at_alpha_beta,
            "F(alpha, beta) = 0 identically in c",
        );
        rb.pass_check(
            "constraints",
            r.alpha_nonconstant && r.beta_nonconstant && r.alpha_beta_distinct && r.avoid_zero_and_one,
            "alpha, beta nonconstant, distinct, and outside {0, 1}",
        );
        rb.push(
            "legendre-parameter",
            Status::Note,
            format!("lambda = psi(v3) recorded: {}", r.lambda),
        );
        match &r.q_irreducibility {
            Some(cert) if cert.content_trivial && cert.specialization_rootless => rb.push(
                "relation-irreducible-over-Q",
                Status::Pass,
                format!(
                    "content in a trivial; b = {} specializes to a rootless cubic",
                    cert.witness_b0
                ),
            ),
            _ => rb.push(
                "relation-irreducible-over-Q",
                Status::Unverified,
                "no irreducibility certificate found",
            ),
        }
        rb.push(
            "absolute-irreducibility",
            Status::Note,
            if r.abs_irreducibility_by_smoothness {
                "established: the projective closure is smooth".to_string()
            } else {
                "not established by the smoothness witness (the closure is singular at infinity); informational only".to_string()
            },
        );
        for (line, msg) in &r.parse_errors {
            rb.push(
                &format!("list-line-{line}"),
                Status::Fail,
                format!("parse error: {msg}"),
            );
        }
        for e in &r.entries {
            if e.divisible_by_f || e.divisible_by_f_swapped {
                rb.push(
                    &format!("list-line-{}", e.line),
                    Status::Fail,
                    format!(
                        "divisible by F{}{}",
                        if e.scalar_multiple_of_f { " (scalar multiple)" } else { "" },
                        if e.divisible_by_f_swapped { " [variable swap]" } else { "" },
                    ),
                );
            }
        }
        match r.exclusion {
            ExclusionVerdict::Excluded => rb.push(
                "exclusion",
                Status::Pass,
                format!("no entry of the supplied list is divisible by F ({} entries)", r.entries.len()),
            ),
            ExclusionVerdict::UnverifiedNoList => rb.push(
                "exclusion",
                Status::Unverified,
                "UNVERIFIED-NO-LIST: supply the published list file to settle the exclusion",
            ),
            ExclusionVerdict::Fails { line } => rb.push(
                "exclusion",
                Status::Fail,
                format!("list line {line} is divisible by F"),
            ),
        }
    });
    Ok(rb.finish())
}

/// The full verification chain: the one-parameter family at t = 7/9, the
/// two-parameter family at (u, w) = (2, 1), the bundled cover fixtures, and
/// the exclusion computation.
pub fn run_suite(
    list_text: Option<&str>,
    primes: &[u64],
    sieve_bound: i64,
    with_timings: bool,
) -> Result<Report, ScenarioError> {
    let t = shadowcert_core::exactalg::rat(7, 9);
    let u = shadowcert_core::exactalg::rat_int(2);
    let w = shadowcert_core::exactalg::rat_int(1);
    let d12 = d12::run_d12(&t, primes, sieve_bound, with_timings, None, None)?;
    let s3 = s3::run_s3(&u, &w, primes, sieve_bound, with_timings, None)?;
    let mut shadow_text = String::new();
    for part in [
        fixdata::ETALE_COVER,
        fixdata::GENUS0_COVER,
        fixdata::GENUS1_COVER,
        fixdata::S3_DOUBLE_COVER,
    ] {
        shadow_text.push_str(part);
        shadow_text.push('\n');
    }
    let shadow = run_shadow(&shadow_text, with_timings, "bundled")?;
    let stoll = run_stoll(list_text, with_timings, if list_text.is_some() { "supplied" } else { "none" })?;
    let scenario = json!({
        "kind": "suite",
        "t": "7/9",
        "u": "2",
        "w": "1",
    });
    Ok(Report::merged(
        scenario,
        vec![
            ("d12".into(), d12),
            ("s3".into(), s3),
            ("shadow".into(), shadow),
            ("stoll".into(), stoll),
        ],
    ))
}
