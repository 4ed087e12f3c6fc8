//! Magic state distillation with the QRM codes under depolarizing noise.
//!
//! Transversality lets the analysis run on noisy |+> inputs instead of the
//! magic states themselves. Depolarizing noise of infidelity ε becomes an
//! independent Z^k error on each qudit with p(0) = 1 - ε and
//! p(k) = ε/(d-1) otherwise. Only the X-type checks reject: an error
//! pattern e is accepted iff its polynomial has degree <= d-2-r, and then it
//! leaves the output with logical Z^m, m = Σ_x e(x).
//!
//! Everything downstream therefore only needs the table N[w][m] of accepted
//! error patterns by Hamming weight and logical class.

use serde::{Deserialize, Serialize};

use crate::code::QrmCode;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gates::max_transversal_degree;
use crate::sweep::{monomial_basis, Sweep};

/// `method = auto` uses brute force up to this many accepted patterns.
pub const AUTO_BRUTEFORCE_LIMIT: u64 = 100_000_000;
pub const BRUTEFORCE_LIMIT: u64 = 1_000_000_000;
pub const CHARSUM_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Bruteforce,
    Charsum,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "bruteforce" => Ok(Method::Bruteforce),
            "charsum" => Ok(Method::Charsum),
            other => Err(Error::Parameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    d: u32,
    epsilon: f64,
}

impl NoiseModel {
    pub fn new(d: u32, epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::Parameter(format!("epsilon {epsilon} outside [0, 1]")));
        }
        Ok(NoiseModel { d, epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Probability of the single-qudit error Z^k.
    pub fn class_probability(&self, k: u32) -> f64 {
        if k.is_multiple_of(self.d) {
            1.0 - self.epsilon
        } else {
            self.epsilon / (self.d - 1) as f64
        }
    }
}

/// Counts of accepted Z-error patterns by weight `w` and logical class `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptedEnumerator {
    d: u32,
    r: u32,
    counts: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct EnumeratorJson {
    d: u32,
    r: u32,
    counts: Vec<(usize, u32, u64)>,
}

impl AcceptedEnumerator {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.d as usize - 1
    }

    /// `counts()[w][m]`.
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn count(&self, w: usize, m: u32) -> u64 {
        self.counts[w][m as usize]
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().flatten().map(|&c| c as u128).sum()
    }

    /// Smallest weight of an accepted pattern with m != 0.
    pub fn min_logical_weight(&self) -> Option<usize> {
        self.counts.iter().position(|row| row[1..].iter().any(|&c| c > 0))
    }

    /// `{"d":..,"r":..,"counts":[[w,m,N],...]}`, every (w, m) cell in order.
    pub fn to_json(&self) -> String {
        let counts = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(w, row)| row.iter().enumerate().map(move |(m, &c)| (w, m as u32, c)))
            .collect();
        serde_json::to_string(&EnumeratorJson {
            d: self.d,
            r: self.r,
            counts,
        })
        .expect("enumerator serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: EnumeratorJson =
            serde_json::from_str(s).map_err(|e| Error::Parameter(format!("bad enumerator json: {e}")))?;
        let n = raw.d as usize - 1;
        let mut counts = vec![vec![0u64; raw.d as usize]; n + 1];
        for (w, m, c) in raw.counts {
            if w > n || m >= raw.d {
                return Err(Error::Parameter(format!("cell ({w}, {m}) out of range")));
            }
            counts[w][m as usize] = c;
        }
        Ok(AcceptedEnumerator {
            d: raw.d,
            r: raw.r,
            counts,
        })
    }
}

pub fn accepted_enumerator(code: &QrmCode, method: Method) -> Result<AcceptedEnumerator> {
    accepted_enumerator_with(code, method, Execution::default())
}

pub fn accepted_enumerator_with(
    code: &QrmCode,
    method: Method,
    exec: Execution,
) -> Result<AcceptedEnumerator> {
    match method {
        Method::Bruteforce => accepted_enumerator_bruteforce_with(code, exec),
        Method::Charsum => accepted_enumerator_charsum_with(code, exec),
        Method::Auto => {
            if accepted_space_size(code) <= AUTO_BRUTEFORCE_LIMIT as f64 {
                accepted_enumerator_bruteforce_with(code, exec)
            } else {
                accepted_enumerator_charsum_with(code, exec)
            }
        }
    }
}

/// d^{d-1-r}, as a float since it overflows u64 for large d.
pub fn accepted_space_size(code: &QrmCode) -> f64 {
    (code.d() as f64).powi(code.max_z_degree() as i32 + 1)
}

pub fn accepted_enumerator_bruteforce(code: &QrmCode) -> Result<AcceptedEnumerator> {
    accepted_enumerator_bruteforce_with(code, Execution::default())
}

/// Walks every coefficient vector (g_0, ..., g_{d-2-r}) of an accepted error
/// polynomial, evaluates it on F_d^*, and tallies weight and Σ_x e(x).
pub fn accepted_enumerator_bruteforce_with(code: &QrmCode, exec: Execution) -> Result<AcceptedEnumerator> {
    let size = accepted_space_size(code);
    if size > BRUTEFORCE_LIMIT as f64 {
        return Err(Error::Capacity {
            what: "brute-force enumeration",
            size,
            limit: BRUTEFORCE_LIMIT as f64,
            hint: Some("use method=charsum"),
        });
    }
    let f = code.field();
    let d = f.modulus();
    let n = code.n();
    let total = size as u64;
    let basis = monomial_basis(f, 0..=code.max_z_degree() as u64);
    let width = d as usize;

    let table = exec::fold_chunks(
        exec,
        exec::chunk_ranges(total, exec::chunk_len(total, d as u64)),
        || vec![0u64; (n + 1) * width],
        |table, range| {
            let mut sweep = Sweep::new(f, &basis, n, range.start);
            for _ in range {
                let mut weight = 0;
                let mut class = 0;
                for &v in sweep.values() {
                    weight += (v != 0) as usize;
                    class += v;
                }
                table[weight * width + (class % d) as usize] += 1;
                sweep.step();
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );

    Ok(AcceptedEnumerator {
        d,
        r: code.r(),
        counts: table.chunks(width).map(<[u64]>::to_vec).collect(),
    })
}

pub fn accepted_enumerator_charsum(code: &QrmCode) -> Result<AcceptedEnumerator> {
    accepted_enumerator_charsum_with(code, Execution::default())
}

/// Same table through the character sum over the dual of the detecting
/// checks.
///
/// With A(x) = Σ_{q=1}^{r} a_q x^q ranging over the X-check span and b
/// tracking the class,
///
/// N[w][m] = d^{-(r+1)} Σ_{a,b} ω^{-bm} [z^w] Π_x (1 + z Σ_{e≠0} ω^{(A(x)+b)e}),
///
/// and each factor is 1 + (d-1)z when A(x) = -b, else 1 - z. So the inner
/// product only depends on k(a, b) = #{x : A(x) = -b}, and the z^w
/// coefficient is the Krawtchouk value K_w(k). Scaling A by c != 0 maps the
/// b slice bijectively onto the cb slice, so every b != 0 yields the same
/// histogram and Σ_b ω^{-bm} collapses to integers: 1 term for b = 0 and
/// (d[m=0] - 1) times the common b != 0 term. All arithmetic is exact.
pub fn accepted_enumerator_charsum_with(code: &QrmCode, exec: Execution) -> Result<AcceptedEnumerator> {
    let f = code.field();
    let d = f.modulus();
    let n = code.n();
    let r = code.r();
    let dual = (d as f64).powi(r as i32);
    if dual > CHARSUM_LIMIT as f64 {
        return Err(Error::Capacity {
            what: "character-sum enumeration",
            size: dual,
            limit: CHARSUM_LIMIT as f64,
            hint: Some("use method=bruteforce"),
        });
    }
    let total = dual as u64;
    let basis = monomial_basis(f, 1..=r as u64);
    let width = n + 1;

    // hist[b * width + k] = #{a : #{x : A(x) = -b} = k}
    let hist = exec::fold_chunks(
        exec,
        exec::chunk_ranges(total, exec::chunk_len(total, d as u64)),
        || vec![0u64; d as usize * width],
        |hist, range| {
            let mut sweep = Sweep::new(f, &basis, n, range.start);
            let mut value_counts = vec![0usize; d as usize];
            for _ in range {
                value_counts.iter_mut().for_each(|c| *c = 0);
                for &v in sweep.values() {
                    value_counts[v as usize] += 1;
                }
                for b in 0..d {
                    let k = value_counts[f.neg(b) as usize];
                    hist[b as usize * width + k] += 1;
                }
                sweep.step();
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );

    let slice = |b: usize| &hist[b * width..(b + 1) * width];
    for b in 2..d as usize {
        if slice(b) != slice(1) {
            return Err(Error::Consistency(format!(
                "character histogram for b = {b} differs from b = 1"
            )));
        }
    }

    let kraw = krawtchouk_table(d, n);
    let transform = |b: usize| -> Vec<i128> {
        (0..=n)
            .map(|w| {
                slice(b)
                    .iter()
                    .enumerate()
                    .map(|(k, &h)| h as i128 * kraw[w][k])
                    .sum()
            })
            .collect()
    };
    let t0 = transform(0);
    let t1 = transform(1);
    let norm = (d as i128).pow(r + 1);

    let mut counts = vec![vec![0u64; d as usize]; n + 1];
    for w in 0..=n {
        for m in 0..d {
            let character = if m == 0 { d as i128 - 1 } else { -1 };
            let numerator = t0[w] + t1[w] * character;
            let residual = numerator.rem_euclid(norm);
            if residual != 0 || numerator < 0 {
                return Err(Error::NumericPrecision {
                    residual,
                    weight: w,
                    class: m,
                });
            }
            counts[w][m as usize] = (numerator / norm) as u64;
        }
    }
    Ok(AcceptedEnumerator { d, r, counts })
}

/// `table[w][k]` = coefficient of z^w in (1 + (d-1)z)^k (1 - z)^{n-k}.
fn krawtchouk_table(d: u32, n: usize) -> Vec<Vec<i128>> {
    let mut binom = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
        }
    }
    let q = d as i128 - 1;
    (0..=n)
        .map(|w| {
            (0..=n)
                .map(|k| {
                    (0..=w.min(k))
                        .filter(|&i| w - i <= n - k)
                        .map(|i| {
                            let sign = if (w - i) % 2 == 0 { 1 } else { -1 };
                            binom[k][i] * q.pow(i as u32) * binom[n - k][w - i] * sign
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistillationOutcome {
    pub epsilon: f64,
    pub p_accept: f64,
    /// P(m | accept) for m = 0..d.
    pub logical_dist: Vec<f64>,
    /// P(m != 0 | accept).
    pub eps_out: f64,
}

/// One round of distillation at input infidelity ε.
pub fn distill_map(n_table: &AcceptedEnumerator, epsilon: f64) -> Result<DistillationOutcome> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Parameter(format!("epsilon {epsilon} outside [0, 1)")));
    }
    let d = n_table.d();
    let n = n_table.n();
    let noise = NoiseModel::new(d, epsilon)?;
    let ok = noise.class_probability(0);
    let bad = noise.class_probability(1);
    let weights: Vec<f64> = (0..=n)
        .map(|w| ok.powi((n - w) as i32) * bad.powi(w as i32))
        .collect();
    let joint: Vec<f64> = (0..d as usize)
        .map(|m| {
            n_table
                .counts()
                .iter()
                .zip(&weights)
                .map(|(row, &p)| row[m] as f64 * p)
                .sum()
        })
        .collect();
    let p_accept: f64 = joint.iter().sum();
    let logical_dist: Vec<f64> = joint.iter().map(|&p| p / p_accept).collect();
    let eps_out = joint[1..].iter().sum::<f64>() / p_accept;
    Ok(DistillationOutcome {
        epsilon,
        p_accept,
        logical_dist,
        eps_out,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub eps_star: f64,
    pub bracket: (f64, f64),
    pub iterations: u32,
}

impl ThresholdResult {
    /// eps_out(lo) < lo and eps_out(hi) >= hi.
    pub fn certificate_holds(&self, n_table: &AcceptedEnumerator) -> Result<bool> {
        let (lo, hi) = self.bracket;
        let below = distill_map(n_table, lo)?.eps_out < lo;
        let above = distill_map(n_table, hi)?.eps_out >= hi;
        Ok(below && above)
    }
}

pub const THRESHOLD_SCAN_STEP: f64 = 0.01;
pub const DEFAULT_THRESHOLD_TOL: f64 = 1e-6;

/// Smallest ε > 0 where one round stops improving, i.e. eps_out(ε) >= ε.
/// Returns `None` if no crossing lies in (0, 1 - 1/d].
pub fn threshold(n_table: &AcceptedEnumerator, tol: f64) -> Result<Option<ThresholdResult>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parameter(format!("tolerance {tol} must be positive")));
    }
    let d = n_table.d() as f64;
    let upper = 1.0 - 1.0 / d;
    let crosses = |eps: f64| -> Result<bool> { Ok(distill_map(n_table, eps)?.eps_out >= eps) };

    let mut lo = 0.0;
    let mut hi = None;
    let mut i = 1;
    loop {
        let eps = (i as f64 * THRESHOLD_SCAN_STEP).min(upper);
        if crosses(eps)? {
            hi = Some(eps);
            break;
        }
        lo = eps;
        if eps >= upper {
            break;
        }
        i += 1;
    }
    let Some(mut hi) = hi else {
        return Ok(None);
    };

    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if crosses(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(Some(ThresholdResult {
        eps_star: 0.5 * (lo + hi),
        bracket: (lo, hi),
        iterations,
    }))
}

/// ⌊(d+1)/3⌋, the distance at the largest transversal degree.
pub fn optimal_distance(d: u32) -> u32 {
    (d + 1) / 3
}

/// γ = log(d-1) / log(D) with D = ⌊(d+1)/3⌋.
pub fn gamma(d: u32) -> Result<f64> {
    if d < 5 {
        return Err(Error::UnsupportedDimension(d));
    }
    if !crate::field::is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    Ok(((d - 1) as f64).ln() / (optimal_distance(d) as f64).ln())
}

/// Least-squares slope of log eps_out against log ε.
pub fn scaling_exponent(n_table: &AcceptedEnumerator, grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::Parameter("need at least two grid points".into()));
    }
    let mut points = Vec::with_capacity(grid.len());
    for &eps in grid {
        if eps <= 0.0 {
            return Err(Error::Parameter(format!("grid point {eps} must be positive")));
        }
        let out = distill_map(n_table, eps)?.eps_out;
        if out.is_nan() || out <= 0.0 || out.is_infinite() {
            return Err(Error::Underflow(eps));
        }
        points.push((eps.ln(), out.ln()));
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => return Vec::new(),
        1 => return vec![lo],
        _ => {}
    }
    let (a, b) = (lo.ln(), hi.ln());
    let last = count - 1;
    (0..count)
        .map(|i| match i {
            0 => lo,
            i if i == last => hi,
            i => (a + (b - a) * i as f64 / last as f64).exp(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaPoint {
    pub d: u32,
    pub r_max: u32,
    pub distance: u32,
    pub gamma: f64,
    /// d mod 3, which picks one of the two γ curves.
    pub residue: u32,
}

pub fn gamma_curves(d_list: &[u32]) -> Result<Vec<GammaPoint>> {
    d_list
        .iter()
        .map(|&d| {
            Ok(GammaPoint {
                d,
                r_max: max_transversal_degree_any(d)?,
                distance: optimal_distance(d),
                gamma: gamma(d)?,
                residue: d % 3,
            })
        })
        .collect()
}

// max_transversal_degree without the u16 field bound, for formula-only use.
fn max_transversal_degree_any(d: u32) -> Result<u32> {
    if d <= u16::MAX as u32 {
        return max_transversal_degree(d);
    }
    if !crate::field::is_prime(d) {
        return Err(Error::NotPrime(d));
    }
    Ok((d - 2) / 3)
}
