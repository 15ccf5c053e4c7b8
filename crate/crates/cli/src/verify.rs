//! The `verify` property grid: every identity the closed forms rest on,
//! checked exhaustively over a bounded grid of shapes.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Value};
use widthone::eulerian::{eulerian_degree, eulerian_poly_brute, eulerian_poly_closed, macmahon_check};
use widthone::oracle::{count_members, enumerate_row_tuples, sigma_oracle, sigma_oracle_by_filter, FILTER_MAX_SUM, FILTER_MAX_VOLUME};
use widthone::shelling::{
    facet_count, facets, h_from_f, f_vector, h_poly_shelling, hilbert_series, hilbert_series_check, reference_restrictions,
    restriction_set, verify_exponent_count, verify_facet_coeff,
};
use widthone::sigma::{omega, sigma_hpoly, sigma_tableaux};
use widthone::{binomial, DenseTensor, DimVector, Limits, MultiIndex, Multiplicity};

use crate::commands::{oracle_fits, pretty};
use crate::error::CliError;
use crate::Format;

/// Largest word length used by the brute-force Eulerian check.
pub const BRUTE_MAX_WORD: usize = 8;
/// Largest word length used by the MacMahon check.
pub const MACMAHON_MAX_WORD: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyScope {
    pub max_d: usize,
    pub max_n: usize,
    pub max_s: usize,
    pub series_len: usize,
    /// Restrict every grid to exactly this many dimensions.
    pub only_d: Option<usize>,
    /// Self-test hook: the harness's own expected values use `C(m, k) + 1`.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub corrupt_binomial: bool,
}

impl Default for VerifyScope {
    fn default() -> Self {
        VerifyScope {
            max_d: 3,
            max_n: 3,
            max_s: 4,
            series_len: 10,
            only_d: None,
            corrupt_binomial: false,
        }
    }
}

impl VerifyScope {
    fn ranks(&self) -> Vec<usize> {
        match self.only_d {
            Some(d) => vec![d],
            None => (1..=self.max_d).collect(),
        }
    }

    /// Every shape with an allowed rank and `1 <= n_i <= max_n`.
    pub fn shapes(&self) -> Vec<DimVector> {
        self.ranks()
            .into_iter()
            .flat_map(|d| boxes(d, 1, self.max_n))
            .map(|v| DimVector::new(v).expect("grid shapes are valid"))
            .collect()
    }

    /// Multiplicities with an allowed number of parts, parts in `0..=max_n`,
    /// and total at most `max_total`.
    fn multiplicities(&self, max_total: usize) -> Vec<Multiplicity> {
        self.ranks()
            .into_iter()
            .flat_map(|d| boxes(d, 0, self.max_n))
            .filter(|p| p.iter().sum::<usize>() <= max_total)
            .map(|p| Multiplicity::new(p).expect("nonempty"))
            .collect()
    }

    fn binomial(&self, m: u64, k: i64) -> BigUint {
        let b = binomial(m, k);
        if self.corrupt_binomial && k >= 1 && k < m as i64 {
            b + 1u32
        } else {
            b
        }
    }
}

/// All vectors of length `d` with entries in `lo..=hi`, lexicographic.
fn boxes(d: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<Value>,
}

struct Tally {
    name: &'static str,
    cases: u64,
    counterexample: Option<Value>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(payload());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.counterexample.is_none(),
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub scope: VerifyScope,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn tensor_payload(t: &DenseTensor) -> Vec<String> {
    t.to_decimal_strings()
}

pub fn cmd_verify(scope: &VerifyScope, limits: &Limits) -> Result<VerifyReport, CliError> {
    let shapes = scope.shapes();
    let mut checks = Vec::new();

    // Sigma tensors for the whole grid, computed once.
    let mut grid: Vec<(DimVector, usize, DenseTensor)> = Vec::new();
    let mut agree = Tally::new("three_way_agreement");
    for n in &shapes {
        for s in 0..=scope.max_s {
            let t = sigma_tableaux(n, s, limits)?;
            let h = sigma_hpoly(n, s, limits)?;
            let o = if oracle_fits(n, s, limits) {
                Some(sigma_oracle(n, s, limits)?)
            } else {
                None
            };
            let ok = t == h && o.as_ref().is_none_or(|o| *o == t);
            agree.record(ok, || {
                json!({
                    "n": n.dims(), "s": s,
                    "tableaux": tensor_payload(&t),
                    "hpoly": tensor_payload(&h),
                    "oracle": o.as_ref().map(tensor_payload),
                })
            });
            grid.push((n.clone(), s, t));
        }
    }
    checks.push(agree.finish());

    let mut mass = Tally::new("mass_identity");
    for (n, s, t) in &grid {
        let members: BigUint = n
            .dims()
            .iter()
            .map(|&ni| scope.binomial((s + ni - 1) as u64, *s as i64))
            .product();
        let expected = members * *s;
        let total = t.total();
        mass.record(total == expected, || {
            json!({"n": n.dims(), "s": s, "total": total.to_string(), "expected": expected.to_string()})
        });
    }
    checks.push(mass.finish());

    let mut ones = Tally::new("unit_sum_is_all_ones");
    for (n, s, t) in grid.iter().filter(|(_, s, _)| *s == 1) {
        let ok = t.entries().iter().all(|v| *v == BigUint::from(1u32));
        ones.record(ok, || json!({"n": n.dims(), "s": s, "entries": tensor_payload(t)}));
    }
    checks.push(ones.finish());

    let mut line = Tally::new("one_dimensional_closed_form");
    for (n, s, t) in grid.iter().filter(|(n, s, _)| n.rank() == 1 && *s >= 1) {
        let expected = scope.binomial((n.dims()[0] + s - 1) as u64, (*s - 1) as i64);
        let ok = t.entries().iter().all(|v| *v == expected);
        line.record(ok, || {
            json!({"n": n.dims(), "s": s, "entries": tensor_payload(t), "expected": expected.to_string()})
        });
    }
    checks.push(line.finish());

    let mut reflect = Tally::new("reflection_symmetry");
    for (n, s, t) in &grid {
        for (x, v) in t.iter() {
            let r = x.reflect(n)?;
            let w = t.get(&r)?;
            reflect.record(v == w, || {
                json!({"n": n.dims(), "s": s, "x": x.coords(), "value": v.to_string(),
                       "reflected": r.coords(), "reflected_value": w.to_string()})
            });
        }
    }
    checks.push(reflect.finish());

    let mut axes = Tally::new("axis_permutation");
    for (n, s, t) in &grid {
        let d = n.rank();
        for i in 0..d {
            for j in i + 1..d {
                if n.dims()[i] != n.dims()[j] {
                    continue;
                }
                let mut perm: Vec<usize> = (0..d).collect();
                perm.swap(i, j);
                let ok = t.iter().all(|(x, v)| t.get(&x.permute(&perm)).is_ok_and(|w| w == v));
                axes.record(ok, || json!({"n": n.dims(), "s": s, "swap": [i + 1, j + 1]}));
            }
        }
    }
    checks.push(axes.finish());

    let mut filter = Tally::new("bijection_filter_oracle");
    for (n, s, t) in &grid {
        if n.volume().is_some_and(|v| v <= FILTER_MAX_VOLUME) && *s <= FILTER_MAX_SUM {
            let f = sigma_oracle_by_filter(n, *s, limits)?;
            filter.record(f == *t, || {
                json!({"n": n.dims(), "s": s, "filter": tensor_payload(&f), "sigma": tensor_payload(t)})
            });
        }
    }
    checks.push(filter.finish());

    let mut eulerian = Tally::new("eulerian_brute_equals_closed");
    for p in scope.multiplicities(BRUTE_MAX_WORD.min(limits.max_word_len)) {
        let brute = eulerian_poly_brute(&p, limits)?;
        let closed = eulerian_poly_closed(&p);
        let ok = brute == closed
            && closed.degree() == eulerian_degree(&p)
            && closed.is_nonnegative()
            && closed.coeff_sum() == p.multinomial().into();
        eulerian.record(ok, || {
            json!({"p": p.parts(), "brute": brute.to_decimal_strings(), "closed": closed.to_decimal_strings()})
        });
    }
    checks.push(eulerian.finish());

    let mut macmahon = Tally::new("macmahon_series");
    for p in scope.multiplicities(MACMAHON_MAX_WORD) {
        macmahon.record(macmahon_check(&p, scope.series_len), || {
            json!({"p": p.parts(), "len": scope.series_len})
        });
    }
    checks.push(macmahon.finish());

    let mut lemma = Tally::new("shelling_h_polynomial");
    for n in &shapes {
        let x = n.top();
        let shelled = h_poly_shelling(&x, limits)?;
        let closed = eulerian_poly_closed(&Multiplicity::new(x.minus_ones())?);
        let from_f = h_from_f(&f_vector(&x, limits)?);
        let facet_total: BigUint = facet_count(&x);
        let degree_ok = closed.degree() == x.total() + 1 - x.max_coord() - x.rank();
        let ok = shelled == closed
            && closed == from_f
            && degree_ok
            && shelled.coeff_sum() == facet_total.clone().into();
        lemma.record(ok, || {
            json!({"x": x.coords(), "shelling": shelled.to_decimal_strings(),
                   "eulerian": closed.to_decimal_strings(), "from_f": from_f.to_decimal_strings(),
                   "facets": facet_total.to_string()})
        });
    }
    checks.push(lemma.finish());

    let mut reference = Tally::new("restriction_is_descent_set");
    for dims in [vec![2, 2], vec![2, 2, 2]] {
        let x = MultiIndex::new(dims)?;
        for (f, r) in reference_restrictions(&x, limits)? {
            let mut expected = restriction_set(&f);
            expected.sort();
            let got = r.map(|mut r| {
                r.sort();
                r
            });
            reference.record(got.as_ref() == Some(&expected), || {
                json!({"x": x.coords(), "word": f.word().to_string(),
                       "reference": got.map(|g| g.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
                       "descents": expected.iter().map(|p| p.to_string()).collect::<Vec<_>>()})
            });
        }
    }
    checks.push(reference.finish());

    let mut exponent = Tally::new("exponent_count");
    let mut facet = Tally::new("facet_coefficient");
    for n in &shapes {
        for x in n.points() {
            let w = omega(n, &x)?;
            for k in 0..=w {
                for s in 0..=scope.max_s {
                    let ok = verify_exponent_count(n, s, k, limits)?;
                    exponent.record(ok, || json!({"n": n.dims(), "s": s, "k": k}));
                }
                let ok = verify_facet_coeff(n, &x, k, limits)?;
                facet.record(ok, || json!({"n": n.dims(), "x": x.coords(), "k": k}));
            }
        }
    }
    checks.push(exponent.finish());
    checks.push(facet.finish());

    let mut hilbert = Tally::new("hilbert_series");
    for n in &shapes {
        let closed_ok = hilbert_series_check(n, scope.series_len)?;
        // coefficient l against an actual enumeration of the sum-l tensors
        let series = hilbert_series(n, scope.series_len)?;
        let mut mismatch = None;
        for (l, coeff) in series.iter().enumerate().take(scope.max_s + 1) {
            if !oracle_fits(n, l, limits) {
                break;
            }
            let counted = enumerate_row_tuples(n, l, limits)?.count();
            if *coeff != BigInt::from(counted) || BigUint::from(counted) != count_members(n, l) {
                mismatch = Some((l, coeff.to_string(), counted));
                break;
            }
        }
        hilbert.record(closed_ok && mismatch.is_none(), || {
            json!({"n": n.dims(), "len": scope.series_len,
                   "series": series.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                   "enumerated_mismatch": mismatch})
        });
    }
    checks.push(hilbert.finish());

    // facet enumeration sanity: streamed count equals the multinomial
    let mut facet_counts = Tally::new("facet_count");
    for n in &shapes {
        let x = n.top();
        let streamed = facets(&x, limits)?.count();
        facet_counts.record(BigUint::from(streamed) == facet_count(&x), || {
            json!({"x": x.coords(), "streamed": streamed})
        });
    }
    checks.push(facet_counts.finish());

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        scope: scope.clone(),
        checks,
        passed,
    })
}

impl VerifyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(self),
            Format::Csv => {
                let mut out = String::from("check,passed,cases,counterexample\n");
                for c in &self.checks {
                    let ce = c
                        .counterexample
                        .as_ref()
                        .map(|v| format!("\"{}\"", v.to_string().replace('"', "\"\"")))
                        .unwrap_or_default();
                    let _ = writeln!(out, "{},{},{},{}", c.name, c.passed, c.cases, ce);
                }
                out
            }
            Format::Plain => {
                let mut out = format!(
                    "verify: d <= {}{}, n_i <= {}, s <= {}, series length {}\n",
                    self.scope.max_d,
                    self.scope.only_d.map(|d| format!(" (only d = {d})")).unwrap_or_default(),
                    self.scope.max_n,
                    self.scope.max_s,
                    self.scope.series_len
                );
                for c in &self.checks {
                    let _ = writeln!(
                        out,
                        "[{}] {} ({} cases)",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.cases
                    );
                    if let Some(v) = &c.counterexample {
                        let _ = writeln!(out, "    counterexample: {v}");
                    }
                }
                let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "FAILED" });
                out
            }
        }
    }

    pub fn failed_names(&self) -> String {
        join_names(self.checks.iter().filter(|c| !c.passed).map(|c| c.name))
    }
}

fn join_names<'a>(it: impl Iterator<Item = &'a str>) -> String {
    it.collect::<Vec<_>>().join(", ")
}
