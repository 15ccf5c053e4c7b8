//! The `bench` subcommand: wall-clock medians per method over a grid of
//! `(n, s)` cells, with a digest of each result so runs can be compared.

use std::fmt::Write as _;
use std::time::Instant;

use sha2::{Digest, Sha256};
use widthone::{DenseTensor, DimVector, Limits};
use widthone_bench::{n_sweep, s_sweep, shape_label};

use crate::commands::{join, oracle_fits, run_method, Method};
use crate::error::CliError;

pub const CSV_HEADER: &str = "n,s,method,median_ns,result_digest";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    SSweep,
    NSweep,
    Both,
    None,
}

impl Preset {
    pub fn cells(self) -> Vec<(DimVector, usize)> {
        match self {
            Preset::SSweep => s_sweep(),
            Preset::NSweep => n_sweep(),
            Preset::Both => s_sweep().into_iter().chain(n_sweep()).collect(),
            Preset::None => Vec::new(),
        }
    }
}

/// Parse a cell such as `2,2:10`.
pub fn parse_cell(text: &str) -> Result<(DimVector, usize), String> {
    let (dims, s) = text
        .split_once(':')
        .ok_or_else(|| format!("cell `{text}` must look like `2,2:10`"))?;
    let dims = crate::parse_list(dims)?;
    let s = s.trim().parse::<usize>().map_err(|e| format!("bad s in `{text}`: {e}"))?;
    let n = DimVector::new(dims).map_err(|e| e.to_string())?;
    Ok((n, s))
}

/// SHA-256 of the canonical text form: shape, sum, then the row-major
/// decimal entries, separated by `;` and `,`.
pub fn result_digest(n: &DimVector, s: usize, t: &DenseTensor) -> String {
    let canonical = format!("{};{};{}", join(n.dims(), ","), s, t.to_decimal_strings().join(","));
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: DimVector,
    pub s: usize,
    pub method: Method,
    pub median_ns: u128,
    pub digest: String,
}

pub fn cmd_bench(
    cells: &[(DimVector, usize)],
    warmup: usize,
    reps: usize,
    limits: &Limits,
) -> Result<Vec<BenchRow>, CliError> {
    let reps = reps.max(1);
    let mut rows = Vec::new();
    for (n, s) in cells {
        let mut methods = vec![Method::Tableaux, Method::Hpoly];
        if oracle_fits(n, *s, limits) {
            methods.push(Method::Oracle);
        }
        let mut cell_rows: Vec<BenchRow> = Vec::new();
        for m in methods {
            for _ in 0..warmup {
                run_method(m, n, *s, limits)?;
            }
            let mut times = Vec::with_capacity(reps);
            let mut last = None;
            for _ in 0..reps {
                let start = Instant::now();
                let t = run_method(m, n, *s, limits)?;
                times.push(start.elapsed().as_nanos());
                last = Some(t);
            }
            times.sort_unstable();
            let t = last.expect("reps >= 1");
            cell_rows.push(BenchRow {
                n: n.clone(),
                s: *s,
                method: m,
                median_ns: times[times.len() / 2],
                digest: result_digest(n, *s, &t),
            });
        }
        if let Some(bad) = cell_rows.iter().find(|r| r.digest != cell_rows[0].digest) {
            return Err(CliError::Disagreement(format!(
                "n = {n}, s = {s}: {} and {} produce different digests",
                cell_rows[0].method.name(),
                bad.method.name()
            )));
        }
        rows.extend(cell_rows);
    }
    Ok(rows)
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            shape_label(&r.n),
            r.s,
            r.method.name(),
            r.median_ns,
            r.digest
        );
    }
    out
}
