//! Error norms, convergence orders, theoretical order predictors, the
//! `q_s` helper analysis behind the recommended `α_s`, and oscillation
//! metrics.

use crate::error::{Error, Result};
use crate::field::{CellField, Mesh};
use crate::mapping::{map_weight, MappingKind};
use crate::reconstruction::SmoothnessData;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

impl ErrorNorms {
    pub fn get(&self, norm: Norm) -> f64 {
        match norm {
            Norm::L1 => self.l1,
            Norm::L2 => self.l2,
            Norm::LInf => self.linf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

/// `L1 = Σ h|e|`, `L2 = sqrt(Σ h e²)`, `L∞ = max|e|` with cell measure `h`.
pub fn norms_of(numeric: &[f64], exact: &[f64], h: f64) -> Result<ErrorNorms> {
    if numeric.len() != exact.len() {
        return Err(Error::GridMismatch(format!(
            "{} numeric values against {} exact values",
            numeric.len(),
            exact.len()
        )));
    }
    let mut n = ErrorNorms::default();
    let mut sq = 0.0;
    for (a, b) in numeric.iter().zip(exact) {
        let e = (a - b).abs();
        n.l1 += h * e;
        sq += h * e * e;
        n.linf = n.linf.max(e);
    }
    n.l2 = sq.sqrt();
    Ok(n)
}

/// Norms of the first component over the interior cells.
pub fn norms(numeric: &CellField, exact: &CellField) -> Result<ErrorNorms> {
    if numeric.mesh() != exact.mesh() {
        return Err(Error::GridMismatch("fields live on different meshes".into()));
    }
    let h = match numeric.mesh() {
        Mesh::Line(g) => g.dx,
        Mesh::Plane(g) => g.x.dx * g.y.dx,
    };
    norms_of(&numeric.interior_component(0), &exact.interior_component(0), h)
}

/// `log2(e_N / e_2N)`.
pub fn empirical_order(e_coarse: f64, e_fine: f64) -> Result<f64> {
    if !(e_coarse > 0.0 && e_fine > 0.0) {
        return Err(Error::ZeroError);
    }
    Ok((e_coarse / e_fine).log2())
}

fn check_r(r: u32, n_cp: u32) -> Result<()> {
    if !(2..=9).contains(&r) || n_cp > r - 1 {
        return Err(Error::OutOfRange(format!("r = {r}, n_cp = {n_cp}")));
    }
    Ok(())
}

/// `⌈a / b⌉` for `b > 0`.
fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Convergence order of WENO-JS of order `2r - 1` at a critical point of
/// order `n_cp`.
pub fn predict_order_js(r: u32, n_cp: u32) -> Result<u32> {
    check_r(r, n_cp)?;
    Ok(if n_cp == 0 { 2 * r - 1 } else { 2 * r - 2 - n_cp })
}

/// Convergence order of WENO-M with the mapping applied `n` times.
pub fn predict_order_m(r: u32, n_cp: u32, n: u32) -> Result<u32> {
    check_r(r, n_cp)?;
    if n == 0 {
        return Err(Error::OutOfRange("mapping count must be at least 1".into()));
    }
    let p = 3i64.pow(n);
    let (r, c) = (r as i64, n_cp as i64);
    // floor(((3^n - 1)/3^n) r - 1)
    let threshold = ((p - 1) * r - p).div_euclid(p);
    Ok(if c <= threshold {
        (2 * r - 1) as u32
    } else {
        ((p + 1) * (r - 1) - p * c) as u32
    })
}

/// `⌈r/(r-1-n_cp) - 2⌉`, the quantity whose parity decides the minimal
/// MAIM `k`.
fn maim_ceiling(r: u32, n_cp: u32) -> i64 {
    let q = (r - 1 - n_cp) as i64;
    ceil_div(r as i64 - 2 * q, q)
}

/// Smallest `k` for which WENO-MAIMi attains order `2r - 1` at a critical
/// point of order `n_cp`.
pub fn k_maim_min(r: u32, n_cp: u32) -> Result<u32> {
    check_r(r, n_cp)?;
    if n_cp >= r - 1 {
        return Err(Error::OutOfRange(format!(
            "n_cp = {n_cp} leaves no optimal order for r = {r}"
        )));
    }
    let c = maim_ceiling(r, n_cp);
    let even = c.rem_euclid(2) == 0;
    Ok((c + if even { 1 } else { 0 }) as u32)
}

/// Smallest even `k` for which WENO-IM(k, A) attains order `2r - 1`.
pub fn k_im_min(r: u32, n_cp: u32) -> Result<u32> {
    check_r(r, n_cp)?;
    if n_cp >= r - 1 {
        return Err(Error::OutOfRange(format!(
            "n_cp = {n_cp} leaves no optimal order for r = {r}"
        )));
    }
    let q = (r - 1 - n_cp) as i64;
    let c = ceil_div(r as i64 - q, q);
    let odd = c.rem_euclid(2) == 1;
    Ok((c + if odd { 1 } else { 0 }) as u32)
}

/// Order for the IM or MAIM families: `2r - 1` with the minimal `k`, or
/// `r - 1` without a bound on `k` when `n_cp = r - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyOrder {
    pub order: u32,
    pub k_min: Option<u32>,
}

impl std::fmt::Display for FamilyOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.k_min {
            Some(k) => write!(f, "{}(k>={k})", self.order),
            None => write!(f, "{}", self.order),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderPrediction {
    pub r: u32,
    pub n_cp: u32,
    pub js: u32,
    pub m1: u32,
    pub m2: u32,
    pub im: FamilyOrder,
    pub maim: FamilyOrder,
}

pub fn predict_orders(r: u32, n_cp: u32) -> Result<OrderPrediction> {
    let family = |k: Result<u32>| match k {
        Ok(k) => FamilyOrder {
            order: 2 * r - 1,
            k_min: Some(k),
        },
        Err(_) => FamilyOrder {
            order: r - 1,
            k_min: None,
        },
    };
    Ok(OrderPrediction {
        r,
        n_cp,
        js: predict_order_js(r, n_cp)?,
        m1: predict_order_m(r, n_cp, 1)?,
        m2: predict_order_m(r, n_cp, 2)?,
        im: family(k_im_min(r, n_cp)),
        maim: family(k_maim_min(r, n_cp)),
    })
}

/// All `(r, n_cp)` rows for `r = 2..=9`.
pub fn table1() -> Vec<OrderPrediction> {
    (2..=9)
        .flat_map(|r| (0..r).map(move |c| predict_orders(r, c).expect("in range")))
        .collect()
}

pub fn table1_csv() -> String {
    let mut out = String::from("r,n_cp,js,m1,m2,im,maim\n");
    for p in table1() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.r, p.n_cp, p.js, p.m1, p.m2, p.im, p.maim
        ));
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Optimal linear weights `d_0..d_{r-1}` of the order `2r - 1` scheme as
/// exact fractions `(num, den)`, `d_0` belonging to the leftmost stencil.
pub fn optimal_weight_fractions(r: u32) -> Vec<(u64, u64)> {
    let r = r as u64;
    let den = binomial(2 * r - 1, r - 1);
    (0..r)
        .map(|s| {
            let num = binomial(r, s) * binomial(r - 1, s);
            let g = gcd(num, den);
            (num / g, den / g)
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn optimal_weights(r: u32) -> Vec<f64> {
    optimal_weight_fractions(r)
        .into_iter()
        .map(|(n, d)| n as f64 / d as f64)
        .collect()
}

/// `q_s(ω) = (ω - d)[(d/ω²)(1 - ln ω) + ((1 - d)/(1 - ω)²)(ln(1 - ω) - 1)]`.
pub fn q_s(omega: f64, d: f64) -> f64 {
    (omega - d) * bracket(omega, d)
}

fn bracket(omega: f64, d: f64) -> f64 {
    let w1 = 1.0 - omega;
    d / (omega * omega) * (1.0 - omega.ln()) + (1.0 - d) / (w1 * w1) * (w1.ln() - 1.0)
}

pub fn q_s_prime(omega: f64, d: f64) -> f64 {
    let w1 = 1.0 - omega;
    let (lw, lw1) = (omega.ln(), w1.ln());
    let w3 = omega * omega * omega;
    let w13 = w1 * w1 * w1;
    let dbracket = -2.0 * d / w3 * (1.0 - lw) - d / w3 + 2.0 * (1.0 - d) / w13 * (lw1 - 1.0) - (1.0 - d) / w13;
    bracket(omega, d) + (omega - d) * dbracket
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsAnalysis {
    /// Unique interior zero of `q_s'`; `None` when `q_s` is monotone.
    pub omega_crit: Option<f64>,
    /// Supremum of `q_s` on `(0, 1)`.
    pub q_max: f64,
    /// `q_max` rounded up at the fourth decimal, at least `1e-4`.
    pub alpha: f64,
}

const SCAN_POINTS: usize = 1_000_000;

/// Locate the maximum of `q_s` by a dense scan of `q_s'` followed by
/// bisection on the bracketing cell.
pub fn q_s_analysis(d: f64) -> QsAnalysis {
    let h = 1.0 / SCAN_POINTS as f64;
    let mut bracket_at = None;
    let mut prev = q_s_prime(h, d);
    for i in 2..SCAN_POINTS {
        let w = i as f64 * h;
        let cur = q_s_prime(w, d);
        if prev > 0.0 && cur <= 0.0 {
            bracket_at = Some((w - h, w));
            break;
        }
        prev = cur;
    }
    match bracket_at {
        Some((mut a, mut b)) => {
            while b - a >= 1e-12 {
                let mid = 0.5 * (a + b);
                if q_s_prime(mid, d) > 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let w = 0.5 * (a + b);
            let q_max = q_s(w, d);
            QsAnalysis {
                omega_crit: Some(w),
                q_max,
                alpha: recommended_alpha(q_max),
            }
        }
        None => {
            let q_max = (1..SCAN_POINTS)
                .map(|i| q_s(i as f64 * h, d))
                .fold(f64::NEG_INFINITY, f64::max);
            QsAnalysis {
                omega_crit: None,
                q_max,
                alpha: recommended_alpha(q_max),
            }
        }
    }
}

fn recommended_alpha(q_max: f64) -> f64 {
    if q_max <= 0.0 {
        1e-4
    } else {
        ((q_max * 1e4).ceil() / 1e4).max(1e-4)
    }
}

/// Whether `q_s'` is positive left of `omega_crit` and negative right of
/// it on the scan grid.
pub fn q_s_sign_structure(d: f64, omega_crit: f64) -> bool {
    let h = 1.0 / SCAN_POINTS as f64;
    (1..SCAN_POINTS).all(|i| {
        let w = i as f64 * h;
        let p = q_s_prime(w, d);
        if (w - omega_crit).abs() < 2.0 * h {
            true
        } else if w < omega_crit {
            p > 0.0
        } else {
            p < 0.0
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppendixRow {
    pub r: u32,
    pub s: u32,
    pub d: (u64, u64),
    pub analysis: QsAnalysis,
}

/// The `q_s` analysis for every optimal weight with `r = 1..=9`.
pub fn appendix_a() -> Vec<AppendixRow> {
    let mut rows = vec![AppendixRow {
        r: 1,
        s: 0,
        d: (1, 1),
        analysis: q_s_analysis(1.0),
    }];
    for r in 2..=9 {
        for (s, (n, den)) in optimal_weight_fractions(r).into_iter().enumerate() {
            rows.push(AppendixRow {
                r,
                s: s as u32,
                d: (n, den),
                analysis: q_s_analysis(n as f64 / den as f64),
            });
        }
    }
    rows
}

pub fn appendix_a_csv() -> String {
    let mut out = String::from("r,s,d_s,omega_crit,q_max,alpha\n");
    for row in appendix_a() {
        let a = row.analysis;
        let crit = a.omega_crit.map_or("-".to_string(), |w| format!("{w:.9}"));
        out.push_str(&format!(
            "{},{},{}/{},{},{:.9},{:.4}\n",
            row.r, row.s, row.d.0, row.d.1, crit, a.q_max, a.alpha
        ));
    }
    out
}

/// `T_s(ω) = ω^{d/(m ω)} (1 - ω)^{(1-d)/(m(1-ω))}`.
pub fn t_s(omega: f64, d: f64, m: f64) -> f64 {
    omega.powf(d / (m * omega)) * (1.0 - omega).powf((1.0 - d) / (m * (1.0 - omega)))
}

/// `Q_s(ω) = k + 1 - q_s(ω)/m`.
pub fn cap_q_s(omega: f64, d: f64, m: f64, k: u32) -> f64 {
    (k + 1) as f64 - q_s(omega, d) / m
}

/// `P_s = T_s Q_s`.
pub fn p_s(omega: f64, d: f64, m: f64, k: u32) -> f64 {
    t_s(omega, d, m) * cap_q_s(omega, d, m, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OscillationMetrics {
    pub overshoot: f64,
    pub undershoot: f64,
    pub total_variation: f64,
}

/// Excursions beyond `[lo, hi]` and total variation of a sequence.
pub fn oscillation_metrics_of(values: &[f64], lo: f64, hi: f64) -> OscillationMetrics {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    OscillationMetrics {
        overshoot: (max - hi).max(0.0),
        undershoot: (lo - min).max(0.0),
        total_variation: values.windows(2).map(|w| (w[1] - w[0]).abs()).sum(),
    }
}

/// Oscillation metrics of the first component of a field.
pub fn oscillation_metrics(field: &CellField, bounds: (f64, f64)) -> OscillationMetrics {
    oscillation_metrics_of(&field.interior_component(0), bounds.0, bounds.1)
}

/// One `(ω_s^JS, g_s)` pair observed at an interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingSample {
    pub stencil: usize,
    pub omega: f64,
    pub mapped: f64,
}

/// Evaluate the mapping at every left-biased interface of a periodic
/// scalar sequence, each interface with its own context.
pub fn mapping_samples(values: &[f64], kind: &MappingKind) -> Vec<MappingSample> {
    let n = values.len();
    let at = |j: isize| values[j.rem_euclid(n as isize) as usize];
    let mut out = Vec::with_capacity(3 * n);
    for j in 0..n as isize {
        let w = [at(j - 2), at(j - 1), at(j), at(j + 1), at(j + 2)];
        let ctx = SmoothnessData::of(&w).context();
        for s in 0..3 {
            let omega = ctx.omega_js[s];
            out.push(MappingSample {
                stencil: s,
                omega,
                mapped: map_weight(kind, omega, s, &ctx),
            });
        }
    }
    out
}

/// Two samples of one stencil with `ω_a < ω_b` but `g_a > g_b + tol`, if
/// any: evidence that the sampled curve is not monotone.
pub fn nonmonotone_witness(samples: &[MappingSample], tol: f64) -> Option<(MappingSample, MappingSample)> {
    for s in 0..3 {
        let mut pts: Vec<MappingSample> = samples.iter().copied().filter(|p| p.stencil == s).collect();
        pts.sort_by(|a, b| a.omega.total_cmp(&b.omega));
        // running maximum of g over smaller ω
        let mut best: Option<MappingSample> = None;
        for p in pts {
            if let Some(b) = best {
                if b.omega < p.omega && b.mapped > p.mapped + tol {
                    return Some((b, p));
                }
                if p.mapped > b.mapped {
                    best = Some(p);
                }
            } else {
                best = Some(p);
            }
        }
    }
    None
}
