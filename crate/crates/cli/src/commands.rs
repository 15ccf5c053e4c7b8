//! `sum`, `eulerian`, `hvector` and `enumerate`.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;
use widthone::eulerian::{eulerian_degree, eulerian_poly_brute, eulerian_poly_closed};
use widthone::oracle::{count_members, enumerate_row_tuples, row_tuple_to_tensor, sigma_oracle};
use widthone::shelling::{f_vector, h_poly_shelling, verify_lemma_hpoly};
use widthone::sigma::{sigma_hpoly, sigma_tableaux};
use widthone::{DenseTensor, DimVector, Limits, MultiIndex, Multiplicity};

use crate::error::CliError;
use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Tableaux,
    Hpoly,
    Oracle,
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Tableaux => "tableaux",
            Method::Hpoly => "hpoly",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

pub fn run_method(method: Method, n: &DimVector, s: usize, limits: &Limits) -> widthone::Result<DenseTensor> {
    match method {
        Method::Tableaux => sigma_tableaux(n, s, limits),
        Method::Hpoly => sigma_hpoly(n, s, limits),
        Method::Oracle => sigma_oracle(n, s, limits),
        Method::All => unreachable!("`all` is expanded by the caller"),
    }
}

/// True if the oracle's enumeration fits under the guard.
pub fn oracle_fits(n: &DimVector, s: usize, limits: &Limits) -> bool {
    count_members(n, s) <= BigUint::from(limits.max_enum)
}

#[derive(Debug, Clone)]
pub struct SumReport {
    pub n: DimVector,
    pub s: usize,
    pub method: Method,
    pub tensor: DenseTensor,
    pub agreement: bool,
    pub timings: Vec<(Method, Duration)>,
    pub skipped: Vec<Method>,
}

#[derive(Serialize)]
struct EntryJson {
    index: Vec<usize>,
    value: String,
}

#[derive(Serialize)]
struct SumJson<'a> {
    n: &'a [usize],
    s: usize,
    method: &'a str,
    entries: Vec<EntryJson>,
    total: String,
    agreement: bool,
}

pub fn cmd_sum(n: &DimVector, s: usize, method: Method, limits: &Limits) -> Result<SumReport, CliError> {
    let mut methods = match method {
        Method::All => vec![Method::Tableaux, Method::Hpoly, Method::Oracle],
        m => vec![m],
    };
    let mut skipped = Vec::new();
    if method == Method::All && !oracle_fits(n, s, limits) {
        methods.retain(|&m| m != Method::Oracle);
        skipped.push(Method::Oracle);
    }

    let mut results: Vec<(Method, DenseTensor)> = Vec::new();
    let mut timings = Vec::new();
    for m in methods {
        let start = Instant::now();
        let t = run_method(m, n, s, limits)?;
        timings.push((m, start.elapsed()));
        results.push((m, t));
    }
    let (first_method, first) = &results[0];
    for (m, t) in &results[1..] {
        if t != first {
            let at = first
                .iter()
                .zip(t.entries())
                .find(|((_, a), b)| a != b)
                .map(|((x, a), b)| format!("at {x}: {} gives {a}, {} gives {b}", first_method.name(), m.name()))
                .unwrap_or_default();
            return Err(CliError::Disagreement(format!("n = {n}, s = {s}, {at}")));
        }
    }
    let tensor = results.swap_remove(0).1;
    Ok(SumReport {
        n: n.clone(),
        s,
        method,
        tensor,
        agreement: true,
        timings,
        skipped,
    })
}

impl SumReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = SumJson {
                    n: self.n.dims(),
                    s: self.s,
                    method: self.method.name(),
                    entries: self
                        .tensor
                        .iter()
                        .map(|(x, v)| EntryJson {
                            index: x.coords().to_vec(),
                            value: v.to_str_radix(10),
                        })
                        .collect(),
                    total: self.tensor.total().to_str_radix(10),
                    agreement: self.agreement,
                };
                pretty(&doc)
            }
            Format::Csv => {
                let mut out = coordinate_header(self.n.rank());
                out.push_str(",value\n");
                for (x, v) in self.tensor.iter() {
                    let _ = writeln!(out, "{},{}", join(x.coords(), ","), v);
                }
                out
            }
            Format::Plain => {
                let mut out = format!("Sigma for n = {}, s = {} ({})\n", self.n, self.s, self.method.name());
                for (x, v) in self.tensor.iter() {
                    let _ = writeln!(out, "  {x}  {v}");
                }
                let _ = writeln!(out, "total: {}", self.tensor.total());
                let _ = writeln!(out, "agreement: {}", self.agreement);
                out.push_str(&self.timing_lines());
                out
            }
        }
    }

    /// Human-readable per-method wall times.
    pub fn timing_lines(&self) -> String {
        let mut out = String::new();
        for (m, d) in &self.timings {
            let _ = writeln!(out, "time {}: {} ns", m.name(), d.as_nanos());
        }
        for m in &self.skipped {
            let _ = writeln!(out, "time {}: skipped (enumeration guard)", m.name());
        }
        out
    }
}

#[derive(Serialize)]
struct EulerianJson<'a> {
    p: &'a [usize],
    coefficients: Vec<String>,
    degree: usize,
    brute_agrees: Option<bool>,
}

pub struct EulerianReport {
    pub p: Multiplicity,
    pub poly: widthone::IntPolynomial,
    pub brute_agrees: Option<bool>,
}

pub fn cmd_eulerian(p: &Multiplicity, limits: &Limits) -> Result<EulerianReport, CliError> {
    let poly = eulerian_poly_closed(p);
    let brute_agrees = if p.total() <= limits.max_word_len {
        Some(eulerian_poly_brute(p, limits)? == poly)
    } else {
        None
    };
    if brute_agrees == Some(false) {
        return Err(CliError::Disagreement(format!("brute force and closed form differ for p = {p}")));
    }
    Ok(EulerianReport {
        p: p.clone(),
        poly,
        brute_agrees,
    })
}

impl EulerianReport {
    pub fn render(&self, format: Format) -> String {
        let coeffs = self.poly.to_decimal_strings();
        match format {
            Format::Json => pretty(&EulerianJson {
                p: self.p.parts(),
                coefficients: coeffs,
                degree: eulerian_degree(&self.p),
                brute_agrees: self.brute_agrees,
            }),
            Format::Csv => {
                let mut out = String::from("k,coefficient\n");
                for (k, c) in coeffs.iter().enumerate() {
                    let _ = writeln!(out, "{k},{c}");
                }
                out
            }
            Format::Plain => format!("A_{}(t) = {}\n", self.p, self.poly),
        }
    }
}

#[derive(Serialize)]
struct HvectorJson<'a> {
    x: &'a [usize],
    f: Vec<String>,
    h: Vec<String>,
    lemma_ok: bool,
}

pub struct HvectorReport {
    pub x: MultiIndex,
    pub f: widthone::shelling::FVector,
    pub h: widthone::IntPolynomial,
    pub lemma_ok: bool,
}

pub fn cmd_hvector(x: &MultiIndex, limits: &Limits) -> Result<HvectorReport, CliError> {
    Ok(HvectorReport {
        x: x.clone(),
        f: f_vector(x, limits)?,
        h: h_poly_shelling(x, limits)?,
        lemma_ok: verify_lemma_hpoly(x, limits)?,
    })
}

impl HvectorReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(&HvectorJson {
                x: self.x.coords(),
                f: self.f.to_decimal_strings(),
                h: self.h.to_decimal_strings(),
                lemma_ok: self.lemma_ok,
            }),
            Format::Csv => {
                // row i holds f_{i-1} and h_i
                let mut out = String::from("i,f,h\n");
                for (i, f) in self.f.counts().iter().enumerate() {
                    let _ = writeln!(out, "{i},{f},{}", self.h.coeff(i));
                }
                out
            }
            Format::Plain => format!(
                "x = {}\nf = {}\nh(t) = {}\nlemma_ok: {}\n",
                self.x,
                self.f.to_decimal_strings().join(" "),
                self.h,
                self.lemma_ok
            ),
        }
    }
}

#[derive(Serialize)]
struct MemberJson {
    rows: Vec<Vec<usize>>,
    entries: Vec<String>,
}

#[derive(Serialize)]
struct EnumerateJson<'a> {
    n: &'a [usize],
    s: usize,
    count: String,
    members: Vec<MemberJson>,
}

pub struct EnumerateReport {
    pub n: DimVector,
    pub s: usize,
    pub members: Vec<(Vec<Vec<usize>>, DenseTensor)>,
}

pub fn cmd_enumerate(n: &DimVector, s: usize, limits: &Limits) -> Result<EnumerateReport, CliError> {
    let mut members = Vec::new();
    for rt in enumerate_row_tuples(n, s, limits)? {
        let t = row_tuple_to_tensor(&rt, n, limits)?;
        members.push((rt.rows().to_vec(), t));
    }
    Ok(EnumerateReport {
        n: n.clone(),
        s,
        members,
    })
}

impl EnumerateReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(&EnumerateJson {
                n: self.n.dims(),
                s: self.s,
                count: self.members.len().to_string(),
                members: self
                    .members
                    .iter()
                    .map(|(rows, t)| MemberJson {
                        rows: rows.clone(),
                        entries: t.to_decimal_strings(),
                    })
                    .collect(),
            }),
            Format::Csv => {
                let mut out = String::from("member,");
                out.push_str(&coordinate_header(self.n.rank()));
                out.push_str(",value\n");
                for (i, (_, t)) in self.members.iter().enumerate() {
                    for (x, v) in t.iter().filter(|(_, v)| **v != BigUint::from(0u32)) {
                        let _ = writeln!(out, "{},{},{}", i + 1, join(x.coords(), ","), v);
                    }
                }
                out
            }
            Format::Plain => {
                let mut out = format!("{} width-one tensors for n = {}, s = {}\n", self.members.len(), self.n, self.s);
                for (rows, t) in &self.members {
                    let support: Vec<String> = t
                        .iter()
                        .filter(|(_, v)| **v != BigUint::from(0u32))
                        .map(|(x, v)| format!("{x}:{v}"))
                        .collect();
                    let rows: Vec<String> = rows.iter().map(|r| join(r, "")).collect();
                    let _ = writeln!(out, "  [{}]  {}", rows.join(" | "), support.join(" "));
                }
                out
            }
        }
    }
}

pub(crate) fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
    s.push('\n');
    s
}

pub(crate) fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn coordinate_header(d: usize) -> String {
    (1..=d).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")
}
