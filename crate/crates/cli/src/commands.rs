use std::collections::BTreeMap;
use std::fmt::Write as _;

use qrm_core::distill::{accepted_enumerator, distill_map, log_grid, threshold as find_threshold};
use qrm_core::gates::{max_transversal_degree, mu_equivalence_classes, transversality_check};
use qrm_core::{is_prime, oracle, Method, QrmCode};
use serde::Serialize;

use crate::output::emit;
use crate::{CliResult, DataFormat, Failure, InfoFormat, MAX_D};

const DEFAULT_EPS: [f64; 11] = [0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5];
const ORACLE_EPS: [f64; 5] = [0.05, 0.1, 0.2, 0.3, 0.5];

pub fn check_d(d: u32) -> CliResult {
    if !is_prime(d) {
        return Err(Failure::usage(format!("d = {d} is not prime")));
    }
    if d < 5 {
        return Err(Failure::usage(format!(
            "d = {d} is too small; the codes need a prime d >= 5"
        )));
    }
    if d > MAX_D {
        return Err(Failure {
            code: 3,
            message: format!(
                "d = {d} is beyond the exactly computed range (d <= {MAX_D}); `figure 1b` lists formula-only values"
            ),
        });
    }
    Ok(())
}

pub fn build_code(d: u32, r: Option<u32>) -> CliResult<QrmCode> {
    check_d(d)?;
    let r = match r {
        Some(r) => r,
        None => max_transversal_degree(d)?,
    };
    Ok(QrmCode::new(d, r)?)
}

/// ln(n) / ln(D) for the code at hand.
pub fn code_gamma(code: &QrmCode) -> f64 {
    (code.n() as f64).ln() / (code.design_distance() as f64).ln()
}

fn format_classes(classes: &[Vec<u32>]) -> String {
    classes
        .iter()
        .map(|c| {
            format!(
                "{{{}}}",
                c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct CodeInfo {
    d: u32,
    n: usize,
    k: u32,
    r: u32,
    distance: usize,
    gamma: f64,
    x_stabilizers: usize,
    z_stabilizers: usize,
    transversal_m: bool,
    mu_classes: Vec<Vec<u32>>,
}

pub fn code_info(d: u32, r: Option<u32>, format: InfoFormat) -> CliResult {
    let code = build_code(d, r)?;
    let info = CodeInfo {
        d,
        n: code.n(),
        k: 1,
        r: code.r(),
        distance: code.design_distance(),
        gamma: code_gamma(&code),
        x_stabilizers: code.x_stabilizers().len(),
        z_stabilizers: code.z_stabilizers().len(),
        transversal_m: code.supports_transversal_m(),
        mu_classes: mu_equivalence_classes(d)?.classes,
    };
    let text = match format {
        InfoFormat::Json => serde_json::to_string_pretty(&info).expect("serializable") + "\n",
        InfoFormat::Text => {
            let mut s = String::new();
            writeln!(s, "[[{},{},{}]]_{}", info.n, info.k, info.distance, d).unwrap();
            writeln!(s, "d              {}", info.d).unwrap();
            writeln!(s, "n              {}", info.n).unwrap();
            writeln!(s, "k              {}", info.k).unwrap();
            writeln!(s, "r              {}", info.r).unwrap();
            writeln!(s, "D              {}", info.distance).unwrap();
            writeln!(s, "gamma          {:.6}", info.gamma).unwrap();
            writeln!(s, "x_stabilizers  {}", info.x_stabilizers).unwrap();
            writeln!(s, "z_stabilizers  {}", info.z_stabilizers).unwrap();
            writeln!(s, "transversal_m  {}", info.transversal_m).unwrap();
            writeln!(s, "mu_classes     {}", format_classes(&info.mu_classes)).unwrap();
            s
        }
    };
    emit(None, &text)
}

struct Checks {
    failed: Vec<String>,
}

impl Checks {
    fn record(&mut self, name: &str, ok: bool, detail: impl std::fmt::Display) {
        let status = if ok { "pass" } else { "FAIL" };
        println!("{status}  {name}: {detail}");
        if !ok {
            self.failed.push(name.to_string());
        }
    }
}

pub fn verify(d: u32, r: Option<u32>, mu: u32) -> CliResult {
    let code = build_code(d, r)?;
    let r = code.r();
    let mu = mu % d;
    let mut checks = Checks { failed: Vec::new() };
    println!(
        "code [[{},1,{}]]_{d} (r = {r}), mu = {mu}",
        code.n(),
        code.design_distance()
    );

    let report = transversality_check(&code, mu)?;
    match &report.witness {
        None => checks.record(
            "transversality",
            true,
            format!("{} polynomials give phase w^(mu k^3)", report.checked),
        ),
        Some(w) => checks.record(
            "transversality",
            false,
            format!(
                "witness F(x) = {} (k = {}): sum of F(x)^3 = {}, expected {}",
                w.polynomial, w.k, w.power_sum, w.expected
            ),
        ),
    }

    let z = code.z_distance()?;
    checks.record(
        "z_distance",
        z == r as usize + 1,
        format!("{z} (expected {})", r + 1),
    );

    let classes = mu_equivalence_classes(d)?;
    checks.record("mu_classes", true, format_classes(&classes.classes));

    if d <= 7 {
        checks.record(
            "oracle.stabilizers",
            oracle::verify_stabilizers(&code)?,
            "generators fix |k_L>",
        );
        checks.record(
            "oracle.logical_operators",
            oracle::verify_logical_operators(&code)?,
            "X|k_L> = |k+1_L>, Z|k_L> = w^k|k_L>",
        );
        let err = oracle::transversal_phase_error(&code, mu)?;
        checks.record(
            "oracle.transversal_phase",
            err < oracle::GATE_TOL,
            format!("max error {err:.3e}"),
        );
        let gates = oracle::verify_gate_identities(d)?;
        checks.record("oracle.gate_identities", gates.all(), format!("{gates:?}"));
        let conj = oracle::verify_conjugation_identities(d)?;
        checks.record("oracle.conjugation_identities", conj.all(), format!("{conj:?}"));
    }

    if d == 5 && code.supports_transversal_m() && mu != 0 {
        let sim = oracle::OracleDistillation::new(&code, mu)?;
        let table = accepted_enumerator(&code, Method::Auto)?;
        let mut worst: f64 = 0.0;
        for eps in ORACLE_EPS {
            let a = sim.outcome(eps)?;
            let b = distill_map(&table, eps)?;
            worst = worst
                .max((a.p_accept - b.p_accept).abs())
                .max((a.eps_out - b.eps_out).abs());
        }
        checks.record(
            "oracle.distillation",
            worst < oracle::END_TO_END_TOL,
            format!("state vector vs enumerator, max difference {worst:.3e}"),
        );
    }

    if checks.failed.is_empty() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "failed: {}",
            checks.failed.join(", ")
        )))
    }
}

fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Failure::usage(format!("--eps-grid expects LO:HI:COUNT, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi >= lo && count >= 1) {
        return Err(bad());
    }
    Ok(log_grid(lo, hi, count))
}

pub fn distill(
    d: u32,
    r: Option<u32>,
    eps: &[f64],
    grid: Option<&str>,
    method: Method,
    output: Option<&str>,
    format: DataFormat,
) -> CliResult {
    let code = build_code(d, r)?;
    let points = match grid {
        Some(g) => parse_grid(g)?,
        None if eps.is_empty() => DEFAULT_EPS.to_vec(),
        None => eps.to_vec(),
    };
    if let Some(bad) = points.iter().find(|e| !(0.0..1.0).contains(*e)) {
        return Err(Failure::usage(format!("epsilon {bad} outside [0, 1)")));
    }
    let table = accepted_enumerator(&code, method)?;
    let text = match format {
        DataFormat::Json => table.to_json() + "\n",
        DataFormat::Csv => {
            let gamma = code_gamma(&code);
            let mut s = String::from("d,r,D,gamma,epsilon,p_accept,eps_out\n");
            for e in points {
                let out = distill_map(&table, e)?;
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    d,
                    code.r(),
                    code.design_distance(),
                    gamma,
                    e,
                    out.p_accept,
                    out.eps_out
                )
                .unwrap();
            }
            s
        }
    };
    emit(output, &text)
}

pub struct ThresholdRow {
    pub d: u32,
    pub r: u32,
    pub eps_star: Option<f64>,
}

pub fn threshold_rows(ds: &[u32], tol: f64, method: Method) -> CliResult<Vec<ThresholdRow>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::usage(format!("--tol must be positive, got {tol}")));
    }
    ds.iter()
        .map(|&d| {
            let code = build_code(d, None)?;
            let table = accepted_enumerator(&code, method)?;
            let res = find_threshold(&table, tol)?;
            Ok(ThresholdRow {
                d,
                r: code.r(),
                eps_star: res.map(|t| t.eps_star),
            })
        })
        .collect()
}

/// One line per residue class d mod 3 saying whether ε* increases with d.
pub fn monotonicity_summary(rows: &[ThresholdRow]) -> Vec<String> {
    let mut classes: BTreeMap<u32, Vec<&ThresholdRow>> = BTreeMap::new();
    for row in rows {
        classes.entry(row.d % 3).or_default().push(row);
    }
    let mut lines = Vec::new();
    for (residue, mut members) in classes {
        members.sort_by_key(|r| r.d);
        members.dedup_by_key(|r| r.d);
        if members.len() < 2 {
            continue;
        }
        let increasing = members.windows(2).all(|w| match (w[0].eps_star, w[1].eps_star) {
            (Some(a), Some(b)) => b > a,
            _ => false,
        });
        let chain = members
            .iter()
            .map(|r| r.d.to_string())
            .collect::<Vec<_>>()
            .join(" -> ");
        let verdict = if increasing {
            "strictly increasing"
        } else {
            "NOT increasing"
        };
        lines.push(format!("d = {residue} mod 3: {chain}: eps_star {verdict}"));
    }
    lines
}

pub fn threshold(ds: &[u32], tol: f64, method: Method, output: Option<&str>) -> CliResult {
    let rows = threshold_rows(ds, tol, method)?;
    let mut s = String::from("d,r,eps_star,tol\n");
    for row in &rows {
        let eps = row.eps_star.map_or_else(|| "none".to_string(), |e| e.to_string());
        writeln!(s, "{},{},{},{}", row.d, row.r, eps, tol).unwrap();
    }
    emit(output, &s)?;
    for line in monotonicity_summary(&rows) {
        eprintln!("{line}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_checks() {
        assert!(check_d(5).is_ok());
        assert_eq!(check_d(9).unwrap_err().code, 2);
        assert_eq!(check_d(2).unwrap_err().code, 2);
        assert_eq!(check_d(19).unwrap_err().code, 3);
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("1e-4:1e-2:3").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0], 1e-4);
        assert!((g[1] - 1e-3).abs() < 1e-15);
        assert!(parse_grid("0:1:3").is_err());
        assert!(parse_grid("1e-3:1e-4:3").is_err());
        assert!(parse_grid("1e-3").is_err());
    }

    #[test]
    fn summary_lines() {
        let row = |d, eps| ThresholdRow {
            d,
            r: 1,
            eps_star: eps,
        };
        let lines = monotonicity_summary(&[
            row(5, Some(0.3)),
            row(11, Some(0.5)),
            row(7, Some(0.2)),
            row(13, None),
        ]);
        assert_eq!(
            lines,
            vec![
                "d = 1 mod 3: 7 -> 13: eps_star NOT increasing".to_string(),
                "d = 2 mod 3: 5 -> 11: eps_star strictly increasing".to_string(),
            ]
        );
    }

    #[test]
    fn gamma_of_code() {
        let code = build_code(11, None).unwrap();
        assert!((code_gamma(&code) - 10f64.ln() / 4f64.ln()).abs() < 1e-12);
    }
}
