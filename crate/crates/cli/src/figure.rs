use std::fmt::Write as _;

use qrm_core::distill::{gamma_curves, optimal_distance, GammaPoint};
use qrm_core::{is_prime, Method, QrmCode};

use crate::commands::{monotonicity_summary, threshold_rows};
use crate::output::emit;
use crate::{CliResult, Failure, Figure, MAX_D};

// Extra large primes for the formula-only curve, beyond the dense range.
const FAR_PRIMES: [u32; 3] = [10_007, 100_003, 1_000_003];
const DENSE_LIMIT: u32 = 1_000;

pub fn run(which: Figure, output: Option<&str>, svg: Option<&str>, tol: f64) -> CliResult {
    let (csv, chart) = match which {
        Figure::GammaSmall => gamma_figure(MAX_D, &[])?,
        Figure::GammaLarge => gamma_figure(DENSE_LIMIT, &FAR_PRIMES)?,
        Figure::Thresholds => threshold_figure(tol)?,
    };
    emit(output, &csv)?;
    if let Some(path) = svg {
        emit(Some(path), &chart)?;
    }
    Ok(())
}

fn primes(from: u32, to: u32) -> Vec<u32> {
    (from..=to).filter(|&d| is_prime(d)).collect()
}

fn gamma_figure(limit: u32, extra: &[u32]) -> CliResult<(String, String)> {
    let mut ds = primes(5, limit);
    ds.extend_from_slice(extra);
    let points = gamma_curves(&ds)?;
    let mut s = String::from("d,residue,r,D,gamma,kind\n");
    for p in &points {
        let kind = if p.d <= MAX_D {
            // Cross-check the formula distance against the constructed code.
            let code = QrmCode::new(p.d, p.r_max)?;
            if code.z_distance()? != p.distance as usize || optimal_distance(p.d) != p.distance {
                return Err(Failure::verification(format!("distance mismatch at d = {}", p.d)));
            }
            "exact"
        } else {
            "formula-only"
        };
        writeln!(
            s,
            "{},{},{},{},{},{}",
            p.d, p.residue, p.r_max, p.distance, p.gamma, kind
        )
        .unwrap();
    }
    Ok((s, gamma_svg(&points)))
}

fn threshold_figure(tol: f64) -> CliResult<(String, String)> {
    let rows = threshold_rows(&primes(5, MAX_D), tol, Method::Auto)?;
    let mut s = String::from("# theoretical-maximum bars from other constructions are not reproduced\n");
    s.push_str("d,r,residue,eps_star\n");
    for row in &rows {
        let eps = row.eps_star.map_or_else(|| "none".to_string(), |e| e.to_string());
        writeln!(s, "{},{},{},{}", row.d, row.r, row.d % 3, eps).unwrap();
    }
    for line in monotonicity_summary(&rows) {
        eprintln!("{line}");
    }
    let bars: Vec<(String, f64)> = rows
        .iter()
        .map(|r| (r.d.to_string(), r.eps_star.unwrap_or(0.0)))
        .collect();
    Ok((s, bar_svg(&bars, "threshold eps*")))
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 50.0;

fn svg_open(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" text-anchor=\"middle\">{title}</text>\n\
         <line x1=\"{PAD}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{}\" stroke=\"black\"/>\n",
        W / 2.0,
        H - PAD,
        W - PAD,
        H - PAD,
        H - PAD
    )
}

/// γ against log10(d), one polyline per residue class.
fn gamma_svg(points: &[GammaPoint]) -> String {
    let xs: Vec<f64> = points.iter().map(|p| (p.d as f64).log10()).collect();
    let (x0, x1) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(0.0, f64::max),
    );
    let (y0, y1) = (1.0, points.iter().map(|p| p.gamma).fold(2.0, f64::max));
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0).max(1e-9) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut s = svg_open("gamma vs d (log scale)");
    for (residue, color) in [(1, "#1f77b4"), (2, "#d62728")] {
        let path: Vec<String> = points
            .iter()
            .filter(|p| p.residue == residue)
            .map(|p| format!("{:.2},{:.2}", sx((p.d as f64).log10()), sy(p.gamma)))
            .collect();
        writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"{color}\" points=\"{}\"/>\n<text x=\"{}\" y=\"{}\" fill=\"{color}\">d = {residue} mod 3</text>",
            path.join(" "),
            W - PAD - 90.0,
            PAD + 15.0 * residue as f64
        )
        .unwrap();
    }
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\">gamma = 1</text>",
        PAD + 5.0,
        sy(1.0) - 4.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}

fn bar_svg(bars: &[(String, f64)], title: &str) -> String {
    let mut s = svg_open(title);
    let slot = (W - 2.0 * PAD) / bars.len().max(1) as f64;
    for (i, (label, value)) in bars.iter().enumerate() {
        let h = value * (H - 2.0 * PAD);
        let x = PAD + slot * i as f64 + slot * 0.15;
        writeln!(
            s,
            "<rect x=\"{x:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"#4c72b0\"/>\n\
             <text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">d={label}</text>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{value:.3}</text>",
            H - PAD - h,
            slot * 0.7,
            x + slot * 0.35,
            H - PAD + 15.0,
            x + slot * 0.35,
            H - PAD - h - 4.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
