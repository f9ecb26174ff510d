//! The pipeline: parse, flag, generators, verification.

use std::time::Instant;

use arithgroup::group::{structural_check, verify, verify_generators, VerificationReport};
use arithgroup::nilpotent::{compute_flag, require_valid};
use arithgroup::{compute_generators_with, Options, TSequenceResult};

use crate::error::{CliError, Result};
use crate::problem::{
    matrix_to_text, LevelCounts, ProblemFile, ResultFile, Timing, VerificationFile,
};

/// Seed and trial count of the randomized structural checks.
pub const STRUCTURAL_SEED: u64 = 0x5eed;
pub const STRUCTURAL_TRIALS: usize = 3;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides the file's `support_optimization` when set.
    pub support_optimization: Option<bool>,
    /// Forces verification on.
    pub verify: bool,
}

/// Runs a problem. A failed verification is recorded in the result, not
/// returned as an error.
pub fn run(file: &ProblemFile, opts: RunOptions) -> Result<(ResultFile, TSequenceResult)> {
    let start = Instant::now();
    let problem = file.parse()?;
    let mut timing = Timing {
        parse: start.elapsed().as_secs_f64(),
        ..Timing::default()
    };

    let start = Instant::now();
    require_valid(&problem.lie_algebra)?;
    let flag = match &problem.flag {
        Some(f) => {
            f.check_stable(&problem.lie_algebra)
                .map_err(|e| CliError::Flag(e.to_string()))?;
            f.clone()
        }
        None => compute_flag(&problem.lie_algebra)?,
    };
    timing.flag = start.elapsed().as_secs_f64();

    let options = Options {
        support_optimization: opts
            .support_optimization
            .unwrap_or(problem.options.support_optimization),
    };
    let start = Instant::now();
    let result = compute_generators_with(&problem.lattice, &problem.lie_algebra, &flag, &options)?;
    timing.generators = start.elapsed().as_secs_f64();

    let verification = if opts.verify || problem.options.verify {
        let start = Instant::now();
        let report = verify(&result);
        let structural = structural_check(&result, STRUCTURAL_SEED, STRUCTURAL_TRIALS);
        timing.verify = start.elapsed().as_secs_f64();
        let mut v = verification_file(&report);
        v.structural_checks = structural.checks;
        v.passed &= structural.passed();
        v.failures.extend(structural.failures);
        Some(v)
    } else {
        None
    };

    let out = ResultFile {
        problem: file.clone(),
        generators: result.generators.iter().map(matrix_to_text).collect(),
        hirsch_length: result.hirsch_length(),
        central_count: result.central_count(),
        levels: result
            .level_summary()
            .into_iter()
            .map(|(k, l)| LevelCounts { k, l })
            .collect(),
        verification,
        timing,
    };
    Ok((out, result))
}

fn verification_file(report: &VerificationReport) -> VerificationFile {
    VerificationFile {
        passed: report.all_pass(),
        preserves_lattice: report.preserves_lattice,
        hirsch_length: report.hirsch_length,
        log_span: report.log_span,
        central: report.central,
        structural_checks: 0,
        failures: report.failures.clone(),
    }
}

/// Re-checks a result file against the problem it embeds.
pub fn verify_result_file(file: &ResultFile) -> Result<VerificationFile> {
    let problem = file.problem.parse()?;
    let generators = file.parse_generators()?;
    let report = verify_generators(
        &problem.lattice,
        &problem.lie_algebra,
        &generators,
        file.central_count,
    );
    let mut v = verification_file(&report);
    if file.hirsch_length != generators.len() {
        v.passed = false;
        v.failures.push(format!(
            "hirsch_length is {} but {} generators are listed",
            file.hirsch_length,
            generators.len()
        ));
    }
    Ok(v)
}

/// Error for a failed verification, for callers that treat it as fatal.
pub fn require_passed(v: &VerificationFile) -> Result<()> {
    if v.passed {
        Ok(())
    } else {
        Err(CliError::Verification(v.failures.join("; ")))
    }
}
