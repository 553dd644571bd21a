//! Subcommand implementations, shared by the binary and the test harness.

use std::fmt;
use std::path::Path;
use std::time::Instant;

use divpow_core::{
    build_identity_sums, cech::syzygy_to_cocycle, commuting_check, derive_via_operator,
    frobenius_power_relation, generate_identity, is_prime, lucas_vanishing_check,
    mod_p_specialize, verify_identity, MatrixMinors, Polynomial,
};

use crate::jobspec::load_job;
use crate::report::Report;

/// How many terms of a nonzero cleared polynomial to print before
/// falling back to a summary.
const RENDER_TERM_LIMIT: usize = 12;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or a bad job file; exits with status 2.
    Usage(String),
    /// An internal engine failure; exits with status 3.
    Engine(divpow_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Engine(e) => write!(f, "engine error: {e}"),
        }
    }
}

impl From<divpow_core::Error> for CliError {
    fn from(e: divpow_core::Error) -> CliError {
        CliError::Engine(e)
    }
}

/// A finished command: the machine report plus the human-readable text.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub human: String,
}

/// Exit status: 0 verified, 1 verification failure, 2 usage error,
/// 3 engine error.
pub fn exit_status(result: &Result<Outcome, CliError>) -> u8 {
    match result {
        Ok(o) if o.report.verified => 0,
        Ok(_) => 1,
        Err(CliError::Usage(_)) => 2,
        Err(CliError::Engine(_)) => 3,
    }
}

fn render_cleared(p: &Polynomial) -> String {
    if p.term_count() <= RENDER_TERM_LIMIT {
        p.to_string()
    } else {
        format!("<nonzero, {} terms>", p.term_count())
    }
}

fn check_prime_power(p: u64, e: u32, limit: u64) -> Result<(), CliError> {
    if !is_prime(p) {
        return Err(CliError::Usage(format!("--p must be prime; {p} is not")));
    }
    match p.checked_pow(e) {
        Some(q) if q <= limit => Ok(()),
        _ => Err(CliError::Usage(format!(
            "{p}^{e} exceeds the power limit {limit} (raise --power-limit to override)"
        ))),
    }
}

pub fn cmd_verify(k: u32, k_limit: u32) -> Result<Outcome, CliError> {
    if k > k_limit {
        return Err(CliError::Usage(format!(
            "--k {k} exceeds the limit {k_limit} (raise --k-limit to override)"
        )));
    }
    let start = Instant::now();
    let r = verify_identity(k);
    let mut report = Report::new("verify").param("k", k);
    report.verified = r.verified;
    report.cleared_is_zero = r.cleared.is_zero();
    report.term_counts = r.term_counts.to_vec();
    report.timing_ms = start.elapsed().as_millis();
    let human = format!(
        "verify k={k}\n  term counts: {:?}\n  cleared polynomial: {}\n  verified: {}",
        r.term_counts,
        render_cleared(&r.cleared),
        r.verified
    );
    Ok(Outcome { report, human })
}

pub fn cmd_derive(k: u32, k_limit: u32) -> Result<Outcome, CliError> {
    if k > k_limit {
        return Err(CliError::Usage(format!(
            "--k {k} exceeds the limit {k_limit} (raise --k-limit to override)"
        )));
    }
    let start = Instant::now();
    let r = derive_via_operator(k)?;
    let total = r.derived[0].add(&r.derived[1]).add(&r.derived[2]);
    let total_zero = total.is_zero();
    let mut report = Report::new("derive").param("k", k);
    report.verified = total_zero;
    report.cleared_is_zero = total_zero;
    report.term_counts = r.term_counts.to_vec();
    report.timing_ms = start.elapsed().as_millis();
    let human = format!(
        "derive k={k}\n  operator images match the literal sums: true\n  \
         term counts: {:?}\n  image total clears to zero: {total_zero}\n  verified: {total_zero}",
        r.term_counts
    );
    Ok(Outcome { report, human })
}

pub fn cmd_modp(p: u64, e: u32, power_limit: u64) -> Result<Outcome, CliError> {
    check_prime_power(p, e, power_limit)?;
    let start = Instant::now();
    let r = mod_p_specialize(p, e, power_limit)?;
    let sums = build_identity_sums(r.k);
    let mut report = Report::new("modp").param("p", p).param("e", e);
    report.verified = r.verified;
    report.cleared_is_zero = r.power_sum_zero_mod_p;
    report.term_counts = sums.iter().map(|s| s.term_count()).collect();
    report.timing_ms = start.elapsed().as_millis();
    let human = format!(
        "modp p={p} e={e} (k = {})\n  identity sums reduce to the power terms mod {p}: {}\n  \
         cleared power sum is zero mod {p}: {}\n  verified: {}",
        r.k, r.reduction_matches, r.power_sum_zero_mod_p, r.verified
    );
    Ok(Outcome { report, human })
}

pub fn cmd_lucas(p: u64, e: u32, power_limit: u64) -> Result<Outcome, CliError> {
    check_prime_power(p, e, power_limit)?;
    let start = Instant::now();
    let ok = lucas_vanishing_check(p, e, power_limit)?;
    let mut report = Report::new("lucas").param("p", p).param("e", e);
    report.verified = ok;
    report.cleared_is_zero = ok;
    report.timing_ms = start.elapsed().as_millis();
    let human = format!(
        "lucas p={p} e={e} (k = {})\n  all coefficients with (i,j) != (0,0) vanish mod {p}: {ok}\n  verified: {ok}",
        p.pow(e) - 1
    );
    Ok(Outcome { report, human })
}

pub fn cmd_generate(job_path: &Path) -> Result<Outcome, CliError> {
    let job = load_job(job_path).map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let mut lines = vec![format!("generate from {}", job_path.display())];
    let mut term_counts = Vec::new();
    let mut all_ok = true;
    for (i, syzygy) in job.syzygies.iter().enumerate() {
        let generated = generate_identity(syzygy, &job.operator)?;
        all_ok &= generated.verified;
        term_counts.push(generated.term_count);
        lines.push(format!(
            "  syzygy[{i}]: cocycle with {} terms; cleared coboundary: {}; verified: {}",
            generated.term_count,
            render_cleared(&generated.cleared),
            generated.verified
        ));
    }
    lines.push(format!("  verified: {all_ok}"));
    let mut report = Report::new("generate")
        .param("job", job_path.display().to_string())
        .param("syzygies", job.syzygies.len());
    report.verified = all_ok;
    report.cleared_is_zero = all_ok;
    report.term_counts = term_counts;
    report.timing_ms = start.elapsed().as_millis();
    Ok(Outcome { report, human: lines.join("\n") })
}

pub fn cmd_selftest() -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut all_ok = true;
    let mut note = |ok: bool, what: String| {
        all_ok &= ok;
        lines.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        ok
    };

    for k in 0..=8 {
        let r = verify_identity(k);
        note(r.verified, format!("verify k={k}"));
    }
    for k in 0..=5 {
        let ok = derive_via_operator(k).is_ok();
        note(ok, format!("derive k={k}"));
    }
    note(commuting_check(), "commuting operator pair on u/(d2 d3)".into());

    let scene = MatrixMinors::new();
    for (name, syzygy) in [
        ("top row", scene.syzygy_top_row()),
        ("bottom row", scene.syzygy_bottom_row()),
    ] {
        let ok = syzygy_to_cocycle(&syzygy)
            .and_then(|c| c.is_cocycle())
            .unwrap_or(false);
        note(ok, format!("{name} syzygy cocycle"));
    }

    for (p, e) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1), (7, 1)] {
        let ok = lucas_vanishing_check(p, e, 32).unwrap_or(false);
        note(ok, format!("lucas p={p} e={e}"));
        let ok = mod_p_specialize(p, e, 32).map(|r| r.verified).unwrap_or(false);
        note(ok, format!("modp p={p} e={e}"));
    }

    for p in [2u64, 3, 5] {
        for (name, syzygy) in [
            ("top row", scene.syzygy_top_row()),
            ("bottom row", scene.syzygy_bottom_row()),
        ] {
            let ok = frobenius_power_relation(&syzygy, p, 1, 32).unwrap_or(false);
            note(ok, format!("frobenius {name} p={p}"));
        }
    }

    lines.push(format!("selftest verified: {all_ok}"));
    let mut report = Report::new("selftest");
    report.verified = all_ok;
    report.cleared_is_zero = all_ok;
    report.timing_ms = start.elapsed().as_millis();
    Ok(Outcome { report, human: lines.join("\n") })
}
