//! Timing table for the test families.

use std::fmt::Write;
use std::time::Instant;

use crate::error::Result;
use crate::families::{gen_family, Family};
use crate::run::{run, RunOptions};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub seconds: f64,
    pub hirsch_length: usize,
    pub expected: usize,
}

/// Runs `family` for `from..=to`; an empty range gives no rows.
pub fn bench(family: Family, from: usize, to: usize, opts: RunOptions) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in from..=to {
        let file = gen_family(family, n)?;
        let start = Instant::now();
        let (result, _) = run(&file, opts)?;
        rows.push(BenchRow {
            n,
            seconds: start.elapsed().as_secs_f64(),
            hirsch_length: result.hirsch_length,
            expected: family.dimension(n),
        });
    }
    Ok(rows)
}

pub fn format_table(family: Family, rows: &[BenchRow]) -> String {
    let mut out = String::new();
    writeln!(out, "| n | time {family} (s) | hirsch length |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    for r in rows {
        writeln!(out, "| {} | {:.3} | {} |", r.n, r.seconds, r.hirsch_length).unwrap();
    }
    out
}
